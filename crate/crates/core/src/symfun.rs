//! Elementary symmetric functions, polynomial evaluation and Vandermonde
//! determinants over `F_p`.
//!
//! The slice-level functions accept points in any order; only the Vandermonde
//! determinants are order sensitive (the sign follows the given order).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeModulus};
use crate::linalg::Matrix;

/// A canonical (ascending) sequence of distinct identities.
///
/// Identities are integer labels reduced mod `p` for arithmetic. Labels lie in
/// `[1, p]`; the label `p` stands for the residue 0 and is accepted only by
/// [`Track::from_labels`], since a zero identity would leak `f(0)` in a scheme.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Track {
    labels: Vec<u64>,
    elements: Vec<FieldElement>,
}

impl PartialOrd for Track {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on labels.
impl Ord for Track {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.labels.cmp(&other.labels)
    }
}

impl Track {
    /// Builds a track of nonzero residues `1..p`, sorting the input.
    pub fn new(labels: &[u64], p: PrimeModulus) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l >= p.value()) {
            return Err(Error::param(format!(
                "identity {bad} is not a nonzero residue mod {p}"
            )));
        }
        Self::from_labels(labels, p)
    }

    /// Like [`Track::new`] but also admits the label `p` (residue 0).
    pub fn from_labels(labels: &[u64], p: PrimeModulus) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::param("a track needs at least one element"));
        }
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::param(format!("duplicate identity {}", w[0])));
        }
        if let Some(&bad) = sorted.iter().find(|&&l| l == 0 || l > p.value()) {
            return Err(Error::param(format!("label {bad} outside [1, {p}]")));
        }
        Ok(Self::from_sorted_unchecked(sorted, p))
    }

    /// Caller guarantees strictly ascending labels in `[1, p]`.
    pub(crate) fn from_sorted_unchecked(labels: Vec<u64>, p: PrimeModulus) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let elements = labels.iter().map(|&l| p.elem(l)).collect();
        Track { labels, elements }
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.elements[0].modulus()
    }

    pub fn contains(&self, label: u64) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    pub fn is_subset_of(&self, other: &Track) -> bool {
        self.labels.iter().all(|&l| other.contains(l))
    }

    /// The track with the element at `idx` removed, or `None` if that would
    /// leave it empty.
    pub fn without(&self, idx: usize) -> Option<Track> {
        if self.len() <= 1 {
            return None;
        }
        let mut labels = self.labels.clone();
        labels.remove(idx);
        Some(Track::from_sorted_unchecked(labels, self.modulus()))
    }

    /// Every non-empty proper sub-track.
    pub fn proper_subtracks(&self) -> impl Iterator<Item = Track> + '_ {
        let n = self.len();
        let full = (1u64 << n) - 1;
        let p = self.modulus();
        (1..full).map(move |mask| {
            let labels = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| self.labels[i])
                .collect();
            Track::from_sorted_unchecked(labels, p)
        })
    }

    pub fn tau(&self, omega: usize) -> FieldElement {
        elem_sym(self.modulus(), &self.elements, omega)
    }

    pub fn tau_all(&self) -> Vec<FieldElement> {
        elem_sym_all(self.modulus(), &self.elements)
    }
}

impl fmt::Display for Track {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Polynomial coefficients in ascending powers: index `j` holds the
/// coefficient of `x^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffVector(pub Vec<FieldElement>);

impl CoeffVector {
    pub fn from_values(values: &[u64], p: PrimeModulus) -> Self {
        CoeffVector(values.iter().map(|&v| p.elem(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn values(&self) -> Vec<u64> {
        self.0.iter().map(|c| c.value()).collect()
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        poly_eval(self, x)
    }
}

/// `tau_0, ..., tau_r` of `xs`, read off `prod (x + x_i)` built one linear
/// factor at a time: `tau_w` is the coefficient of `x^{r-w}`.
pub fn elem_sym_all(p: PrimeModulus, xs: &[FieldElement]) -> Vec<FieldElement> {
    let mut c = Vec::with_capacity(xs.len() + 1);
    c.push(p.one());
    for &l in xs {
        c.push(p.zero());
        for w in (1..c.len()).rev() {
            c[w] = c[w] + l * c[w - 1];
        }
    }
    c
}

/// `tau_omega(xs)`, with `tau_0 = 1` and `tau_omega = 0` for `omega > len`.
pub fn elem_sym(p: PrimeModulus, xs: &[FieldElement], omega: usize) -> FieldElement {
    if omega > xs.len() {
        return p.zero();
    }
    // Only the first omega+1 ladder entries are needed.
    let mut c = vec![p.zero(); omega + 1];
    c[0] = p.one();
    for (k, &l) in xs.iter().enumerate() {
        for w in (1..=omega.min(k + 1)).rev() {
            c[w] = c[w] + l * c[w - 1];
        }
    }
    c[omega]
}

/// Horner evaluation of `sum a_v x^v`.
pub fn poly_eval(a: &CoeffVector, x: FieldElement) -> FieldElement {
    let p = x.modulus();
    a.0.iter().rev().fold(p.zero(), |acc, &c| acc * x + c)
}

/// `prod_{i<k} (x_k - x_i)` in the given order.
pub fn vandermonde_det(p: PrimeModulus, xs: &[FieldElement]) -> FieldElement {
    let mut acc = p.one();
    for k in 1..xs.len() {
        for i in 0..k {
            acc = acc * (xs[k] - xs[i]);
        }
    }
    acc
}

/// `det(x_mu^{c_nu})` for strictly increasing exponents `c`, by elimination.
pub fn generalized_vandermonde_det(
    p: PrimeModulus,
    xs: &[FieldElement],
    exponents: &[u64],
) -> Result<FieldElement> {
    if xs.len() != exponents.len() {
        return Err(Error::param(format!(
            "{} points but {} exponents",
            xs.len(),
            exponents.len()
        )));
    }
    if exponents.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("exponents must be strictly increasing"));
    }
    Matrix::generalized_powers(xs, exponents, p).determinant()
}
