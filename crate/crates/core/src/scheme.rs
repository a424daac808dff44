//! The multi-secret scheme: `t-1` secrets sit in the low coefficients of
//! `f(x) = s_0 + ... + s_{t-2} x^{t-2} + a_{t-1} x^{t-1}` and participant `i`
//! holds `f(l_i)`. Secret `s_j` is recoverable by any `t` participants and by
//! every `(t, j)`-privileged coalition.

use std::collections::HashSet;

use rand::Rng;

use crate::coalition::{determines_coefficient, KSubsets};
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeModulus};
use crate::linalg::Matrix;
use crate::symfun::{elem_sym, poly_eval, vandermonde_det, CoeffVector, Track};

/// Upper bound on subsets examined while deriving an access structure.
pub const MAX_ACCESS_SUBSETS: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeConfig {
    t: usize,
    p: PrimeModulus,
    identities: Track,
}

impl SchemeConfig {
    pub fn new(t: usize, p: PrimeModulus, identities: &[u64]) -> Result<Self> {
        if t < 2 {
            return Err(Error::param(format!(
                "threshold t = {t} must be at least 2"
            )));
        }
        let identities = Track::new(identities, p)?;
        let n = identities.len();
        if n < t {
            return Err(Error::param(format!(
                "need at least t = {t} participants, got {n}"
            )));
        }
        Ok(SchemeConfig { t, p, identities })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn identities(&self) -> &Track {
        &self.identities
    }

    pub fn n(&self) -> usize {
        self.identities.len()
    }

    /// Number of secrets, `t - 1`.
    pub fn secret_count(&self) -> usize {
        self.t - 1
    }
}

/// Secrets `s_0..s_{t-2}` plus the nonzero blinding coefficient `a_{t-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretVector {
    secrets: Vec<FieldElement>,
    blinding: FieldElement,
}

impl SecretVector {
    pub fn new(secrets: Vec<FieldElement>, blinding: FieldElement) -> Result<Self> {
        if blinding.is_zero() {
            return Err(Error::param("blinding coefficient a_{t-1} must be nonzero"));
        }
        if secrets.iter().any(|s| s.modulus() != blinding.modulus()) {
            return Err(Error::param(
                "secrets and blinding live in different fields",
            ));
        }
        Ok(SecretVector { secrets, blinding })
    }

    pub fn from_values(secrets: &[u64], blinding: u64, p: PrimeModulus) -> Result<Self> {
        Self::new(
            secrets.iter().map(|&s| p.elem(s)).collect(),
            p.elem(blinding),
        )
    }

    /// Secrets uniform over `F_p`, blinding uniform over `F_p^*`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, t: usize, p: PrimeModulus) -> Self {
        let secrets = (0..t - 1)
            .map(|_| p.elem(rng.gen_range(0..p.value())))
            .collect();
        let blinding = p.elem(rng.gen_range(1..p.value()));
        SecretVector { secrets, blinding }
    }

    pub fn secrets(&self) -> &[FieldElement] {
        &self.secrets
    }

    pub fn blinding(&self) -> FieldElement {
        self.blinding
    }

    pub fn coefficients(&self) -> CoeffVector {
        let mut c = self.secrets.clone();
        c.push(self.blinding);
        CoeffVector(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Share {
    pub id: u64,
    pub value: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareTable {
    pub t: usize,
    pub p: PrimeModulus,
    pub shares: Vec<Share>,
}

impl ShareTable {
    pub fn get(&self, id: u64) -> Option<Share> {
        self.shares.iter().copied().find(|s| s.id == id)
    }

    /// Shares of the listed participants, in the order given.
    pub fn select(&self, ids: &[u64]) -> Result<Vec<Share>> {
        ids.iter()
            .map(|&id| {
                self.get(id)
                    .ok_or_else(|| Error::param(format!("participant {id} holds no share")))
            })
            .collect()
    }
}

/// Evaluates the dealt polynomial at every identity.
pub fn deal(cfg: &SchemeConfig, sv: &SecretVector) -> Result<ShareTable> {
    if sv.secrets.len() != cfg.secret_count() {
        return Err(Error::param(format!(
            "expected {} secrets for t = {}, got {}",
            cfg.secret_count(),
            cfg.t,
            sv.secrets.len()
        )));
    }
    if sv.blinding.modulus() != cfg.p {
        return Err(Error::ModulusMismatch(
            cfg.p.value(),
            sv.blinding.modulus().value(),
        ));
    }
    let f = sv.coefficients();
    let shares = cfg
        .identities
        .labels()
        .iter()
        .zip(cfg.identities.elements())
        .map(|(&id, &x)| Share {
            id,
            value: poly_eval(&f, x),
        })
        .collect();
    Ok(ShareTable {
        t: cfg.t,
        p: cfg.p,
        shares,
    })
}

/// Draws a secret vector from `rng` and deals it.
pub fn deal_random<R: Rng + ?Sized>(cfg: &SchemeConfig, rng: &mut R) -> (SecretVector, ShareTable) {
    let sv = SecretVector::random(rng, cfg.t, cfg.p);
    let table = deal(cfg, &sv).expect("random secret vector matches config");
    (sv, table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetKind {
    /// Any `t` participants (the family for `s_0`).
    Threshold,
    /// A minimal privileged coalition, fewer than `t` members.
    Privileged,
    /// A `t`-set containing no privileged coalition.
    Unextended,
}

impl SetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SetKind::Threshold => "threshold",
            SetKind::Privileged => "privileged",
            SetKind::Unextended => "unextended",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthorizedSet {
    pub members: Track,
    pub kind: SetKind,
}

/// Minimal authorized sets per secret index `j = 0..=t-2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessStructure {
    pub t: usize,
    pub p: PrimeModulus,
    pub families: Vec<Vec<AuthorizedSet>>,
}

impl AccessStructure {
    pub fn family(&self, j: usize) -> &[AuthorizedSet] {
        &self.families[j]
    }

    pub fn unextended_count(&self) -> usize {
        self.families
            .iter()
            .flatten()
            .filter(|s| s.kind == SetKind::Unextended)
            .count()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn mask_of(idx: &[u64]) -> u64 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

pub fn derive_access_structure(cfg: &SchemeConfig) -> Result<AccessStructure> {
    let (t, p) = (cfg.t, cfg.p);
    let n = cfg.n();
    if n > 63 {
        return Err(Error::Capacity(format!(
            "{n} participants exceed the 63 supported"
        )));
    }
    let work: u64 = (1..=t as u64).map(|k| binomial(n as u64, k)).sum();
    if work > MAX_ACCESS_SUBSETS {
        return Err(Error::Capacity(format!(
            "{work} candidate subsets exceed the bound {MAX_ACCESS_SUBSETS}"
        )));
    }
    let labels = cfg.identities.labels();
    let elems = cfg.identities.elements();
    let subset_track = |idx: &[u64]| {
        let ls: Vec<u64> = idx.iter().map(|&i| labels[i as usize]).collect();
        Track::new(&ls, p).expect("sub-track of a valid track")
    };
    let last = n as u64 - 1;

    let mut families = Vec::with_capacity(t - 1);
    families.push(
        KSubsets::new(0, last, t)
            .map(|idx| AuthorizedSet {
                members: subset_track(&idx),
                kind: SetKind::Threshold,
            })
            .collect(),
    );

    for j in 1..t - 1 {
        let mut privileged: HashSet<u64> = HashSet::new();
        let mut family = Vec::new();
        for k in 1..=t {
            for idx in KSubsets::new(0, last, k) {
                let mask = mask_of(&idx);
                // Privilege is upward closed, so a privileged proper subset
                // exists iff some one-smaller subset is privileged.
                let contains_privileged = k > 1
                    && idx
                        .iter()
                        .any(|&i| privileged.contains(&(mask & !(1 << i))));
                if k == t {
                    if !contains_privileged {
                        family.push(AuthorizedSet {
                            members: subset_track(&idx),
                            kind: SetKind::Unextended,
                        });
                    }
                    continue;
                }
                let pts: Vec<FieldElement> = idx.iter().map(|&i| elems[i as usize]).collect();
                if contains_privileged || determines_coefficient(p, &pts, t, j) {
                    privileged.insert(mask);
                    if !contains_privileged {
                        family.push(AuthorizedSet {
                            members: subset_track(&idx),
                            kind: SetKind::Privileged,
                        });
                    }
                }
            }
        }
        family.sort_by(|a, b| a.members.labels().cmp(b.members.labels()));
        for s in &family {
            if !determines_coefficient(p, s.members.elements(), t, j) {
                return Err(Error::Internal(format!(
                    "{} listed for s_{j} but not authorized",
                    s.members
                )));
            }
        }
        families.push(family);
    }
    Ok(AccessStructure { t, p, families })
}

/// Validates shares as distinct nonzero identities in `F_p`; returns them
/// sorted by identity.
fn canonical_shares(shares: &[Share], p: PrimeModulus) -> Result<(Track, Vec<FieldElement>)> {
    if shares.is_empty() {
        return Err(Error::param("no shares supplied"));
    }
    if let Some(s) = shares.iter().find(|s| s.value.modulus() != p) {
        return Err(Error::ModulusMismatch(p.value(), s.value.modulus().value()));
    }
    let ids: Vec<u64> = shares.iter().map(|s| s.id).collect();
    let track = Track::new(&ids, p)?;
    let ys = track
        .labels()
        .iter()
        .map(|&id| shares.iter().find(|s| s.id == id).unwrap().value)
        .collect();
    Ok((track, ys))
}

/// Solves the `t x t` Vandermonde system for every coefficient.
pub fn interpolate(shares: &[Share], t: usize, p: PrimeModulus) -> Result<CoeffVector> {
    if shares.len() != t {
        return Err(Error::param(format!(
            "full recovery needs exactly t = {t} shares, got {}",
            shares.len()
        )));
    }
    let (track, ys) = canonical_shares(shares, p)?;
    let a = Matrix::powers(track.elements(), t, p);
    a.solve(&ys)?
        .map(CoeffVector)
        .ok_or_else(|| Error::Internal(format!("Vandermonde system on {track} is singular")))
}

pub fn recover_full(shares: &[Share], t: usize, j: usize, p: PrimeModulus) -> Result<FieldElement> {
    if j >= t {
        return Err(Error::param(format!(
            "coefficient index j = {j} outside 0..{t}"
        )));
    }
    Ok(interpolate(shares, t, p)?.0[j])
}

/// The `t - r` smallest nonzero residues not used by the coalition.
pub fn default_extension(coalition: &Track, t: usize) -> Result<Vec<u64>> {
    let p = coalition.modulus();
    let need = t.saturating_sub(coalition.len());
    let ext: Vec<u64> = (1..p.value())
        .filter(|&x| !coalition.elements().contains(&p.elem(x)))
        .take(need)
        .collect();
    if ext.len() < need {
        return Err(Error::param(format!(
            "F_{p} has too few residues to extend a {}-coalition to t = {t}",
            coalition.len()
        )));
    }
    Ok(ext)
}

/// Recovers `s_j` from a privileged coalition, extending it with the
/// smallest free residues.
pub fn recover_privileged(
    shares: &[Share],
    t: usize,
    j: usize,
    p: PrimeModulus,
) -> Result<FieldElement> {
    let (track, _) = canonical_shares(shares, p)?;
    let ext = default_extension(&track, t)?;
    recover_privileged_with_extension(shares, &ext, t, j, p)
}

/// Cramer's rule on `L || u` expanded along column `j`.
///
/// The cofactor of row `k` is `(-1)^{k+j+1} V(x without x_k) tau_{t-1-j}(x
/// without x_k)`. For a privileged `L` the cofactors of the extension rows
/// vanish, so the unknown values `f(u_m)` never enter; that vanishing is
/// checked here and reported as an internal error if it fails.
pub fn recover_privileged_with_extension(
    shares: &[Share],
    extension: &[u64],
    t: usize,
    j: usize,
    p: PrimeModulus,
) -> Result<FieldElement> {
    let (track, ys) = canonical_shares(shares, p)?;
    let r = track.len();
    if r >= t {
        return Err(Error::param(format!(
            "a privileged coalition has fewer than t = {t} members, got {r}"
        )));
    }
    if j >= t {
        return Err(Error::param(format!(
            "coefficient index j = {j} outside 0..{t}"
        )));
    }
    if !determines_coefficient(p, track.elements(), t, j) {
        return Err(Error::Unauthorized {
            subset: track.labels().to_vec(),
            j,
        });
    }
    if extension.len() != t - r {
        return Err(Error::param(format!(
            "extension has length {} but t-r = {}",
            extension.len(),
            t - r
        )));
    }
    let ext = Track::new(extension, p)?;
    if let Some(x) = ext.labels().iter().find(|&&x| track.contains(x)) {
        return Err(Error::param(format!(
            "extension overlaps the coalition at {x}"
        )));
    }

    let mut points: Vec<FieldElement> = track.elements().to_vec();
    points.extend_from_slice(ext.elements());
    let omega = t - 1 - j;
    let mut minor = Vec::with_capacity(t - 1);
    let mut cofactor = |k: usize| {
        minor.clear();
        minor.extend(
            points
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &x)| x),
        );
        let c = vandermonde_det(p, &minor) * elem_sym(p, &minor, omega);
        // 0-based k: (-1)^{(k+1)+j+1} = (-1)^{k+j}
        if (k + j).is_multiple_of(2) {
            c
        } else {
            -c
        }
    };

    for k in r..t {
        if !cofactor(k).is_zero() {
            return Err(Error::Internal(format!(
                "cofactor of extension point {} is nonzero for privileged {track}",
                points[k]
            )));
        }
    }
    let numerator = (0..r).fold(p.zero(), |acc, k| acc + cofactor(k) * ys[k]);
    numerator.checked_div(vandermonde_det(p, &points))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    /// Solved the full system on these `t` identities.
    Full { used: Vec<u64> },
    /// Used the privileged coalition with the given extension residues.
    Privileged {
        coalition: Vec<u64>,
        extension: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovery {
    pub value: FieldElement,
    pub route: Route,
}

/// Recovers `s_j` from any authorized subset of the participants.
pub fn recover(cfg: &SchemeConfig, shares: &[Share], j: usize) -> Result<Recovery> {
    let (t, p) = (cfg.t, cfg.p);
    if j + 1 >= t {
        return Err(Error::param(format!(
            "secret index j = {j} outside 0..={}",
            t - 2
        )));
    }
    let (track, ys) = canonical_shares(shares, p)?;
    if let Some(&id) = track
        .labels()
        .iter()
        .find(|&&id| !cfg.identities.contains(id))
    {
        return Err(Error::param(format!("{id} is not a participant")));
    }
    if track.len() >= t {
        let used: Vec<Share> = track
            .labels()
            .iter()
            .zip(&ys)
            .take(t)
            .map(|(&id, &value)| Share { id, value })
            .collect();
        let value = recover_full(&used, t, j, p)?;
        return Ok(Recovery {
            value,
            route: Route::Full {
                used: used.iter().map(|s| s.id).collect(),
            },
        });
    }
    if !determines_coefficient(p, track.elements(), t, j) {
        return Err(Error::Unauthorized {
            subset: track.labels().to_vec(),
            j,
        });
    }
    let extension = default_extension(&track, t)?;
    let value = recover_privileged_with_extension(shares, &extension, t, j, p)?;
    Ok(Recovery {
        value,
        route: Route::Privileged {
            coalition: track.labels().to_vec(),
            extension,
        },
    })
}
