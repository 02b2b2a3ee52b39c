use num_complex::Complex64;

/// Finite set of complex points, deduplicated at `match_tol`.
///
/// Every joint-spectrum element has the form `(0, λ)`; only `λ` is stored.
/// Multiplicities count how many raw inputs collapsed onto each point and
/// are informational only.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSet {
    points: Vec<Complex64>,
    multiplicities: Vec<usize>,
    match_tol: f64,
}

fn cmp_points(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl SpectrumSet {
    pub fn empty(match_tol: f64) -> Self {
        Self {
            points: Vec::new(),
            multiplicities: Vec::new(),
            match_tol,
        }
    }

    /// Greedy clustering: a point within `match_tol` of an already kept point
    /// is merged into it; otherwise it starts a new cluster. Output is sorted
    /// by real then imaginary part.
    pub fn from_points(points: impl IntoIterator<Item = Complex64>, match_tol: f64) -> Self {
        let mut set = Self::empty(match_tol);
        for z in points {
            set.insert(z, 1);
        }
        set.sort();
        set
    }

    fn insert(&mut self, z: Complex64, mult: usize) {
        match self.points.iter().position(|w| (w - z).norm() <= self.match_tol) {
            Some(i) => self.multiplicities[i] += mult,
            None => {
                self.points.push(z);
                self.multiplicities.push(mult);
            }
        }
    }

    fn sort(&mut self) {
        let mut pairs: Vec<(Complex64, usize)> = self
            .points
            .iter()
            .copied()
            .zip(self.multiplicities.iter().copied())
            .collect();
        pairs.sort_by(|a, b| cmp_points(&a.0, &b.0));
        (self.points, self.multiplicities) = pairs.into_iter().unzip();
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn match_tol(&self) -> f64 {
        self.match_tol
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.points.iter().any(|w| (w - z).norm() <= self.match_tol)
    }

    pub fn union(&self, other: &SpectrumSet) -> SpectrumSet {
        let mut out = self.clone();
        for (&z, &m) in other.points.iter().zip(&other.multiplicities) {
            out.insert(z, m);
        }
        out.sort();
        out
    }

    pub fn translated(&self, c: Complex64) -> SpectrumSet {
        let mut out = self.clone();
        for z in &mut out.points {
            *z += c;
        }
        out.sort();
        out
    }

    pub fn is_subset_of(&self, other: &SpectrumSet) -> bool {
        self.points.iter().all(|&z| other.contains(z))
    }
}

/// Outcome of matching two point sets symmetrically.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchReport {
    pub matched: bool,
    /// Points of the left set with no partner in the right set.
    pub unmatched_left: Vec<Complex64>,
    pub unmatched_right: Vec<Complex64>,
}

/// Set equality up to `match_tol`: every point on each side has a partner
/// within `match_tol` on the other side.
pub fn set_compare(a: &SpectrumSet, b: &SpectrumSet, match_tol: f64) -> MatchReport {
    let near = |z: &Complex64, set: &SpectrumSet| set.points().iter().any(|w| (w - z).norm() <= match_tol);
    let unmatched_left: Vec<Complex64> = a.points().iter().filter(|z| !near(z, b)).copied().collect();
    let unmatched_right: Vec<Complex64> = b.points().iter().filter(|z| !near(z, a)).copied().collect();
    MatchReport {
        matched: unmatched_left.is_empty() && unmatched_right.is_empty(),
        unmatched_left,
        unmatched_right,
    }
}
