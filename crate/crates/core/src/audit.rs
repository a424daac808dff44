//! Exhaustive information-theoretic audit on small instances.
//!
//! Every coefficient vector of the chosen domain is enumerated (uniform prior).
//! For each participant subset `A`, secret index `j` and set `T` of other
//! secret indices, the conditional histogram of `s_j` given `A`'s shares and
//! the values of `s_T` is compared, with exact integer counts, against the
//! histogram given `s_T` alone.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::coalition::{determines_coefficient, KSubsets};
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeModulus};
use crate::scheme::{SchemeConfig, Share};
use crate::symfun::CoeffVector;

/// Exhaustive enumeration is refused above this many coefficient vectors.
pub const MAX_ENUMERATION: u64 = 100_000_000;

/// Which coefficient vectors the dealer may draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Secrets anywhere in `F_p`, blinding coefficient nonzero.
    FullField,
    /// Every coefficient nonzero.
    AllNonzero,
    /// All of `F_p^t`, blinding coefficient included.
    Unrestricted,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::FullField => "full-field",
            Domain::AllNonzero => "all-nonzero",
            Domain::Unrestricted => "unrestricted",
        }
    }

    /// Deviations from uniformity are reported but do not fail the audit.
    pub fn is_informational(self) -> bool {
        self == Domain::AllNonzero
    }

    fn lower_bounds(self, t: usize) -> Vec<u64> {
        match self {
            Domain::FullField => {
                let mut lo = vec![0; t];
                lo[t - 1] = 1;
                lo
            }
            Domain::AllNonzero => vec![1; t],
            Domain::Unrestricted => vec![0; t],
        }
    }

    /// Number of coefficient vectors of length `t`.
    pub fn size(self, t: usize, p: PrimeModulus) -> u128 {
        self.lower_bounds(t)
            .iter()
            .map(|&lo| (p.value() - lo) as u128)
            .product()
    }
}

impl std::str::FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-field" => Ok(Domain::FullField),
            "all-nonzero" => Ok(Domain::AllNonzero),
            "unrestricted" => Ok(Domain::Unrestricted),
            other => Err(Error::param(format!("unknown domain {other:?}"))),
        }
    }
}

pub fn check_capacity(t: usize, p: PrimeModulus) -> Result<()> {
    let bound = (p.value() as u128).checked_pow(t as u32);
    match bound {
        Some(b) if b <= MAX_ENUMERATION as u128 => Ok(()),
        _ => Err(Error::Capacity(format!(
            "p^t = {}^{} exceeds the exhaustive bound 10^8",
            p.value(),
            t
        ))),
    }
}

/// Odometer over a domain, lowest coefficient varying fastest.
struct DomainIter {
    p: u64,
    lo: Vec<u64>,
    cur: Option<Vec<u64>>,
}

impl DomainIter {
    fn new(domain: Domain, t: usize, p: PrimeModulus) -> Self {
        let lo = domain.lower_bounds(t);
        let cur = if lo.iter().all(|&l| l < p.value()) {
            Some(lo.clone())
        } else {
            None
        };
        DomainIter {
            p: p.value(),
            lo,
            cur,
        }
    }
}

impl Iterator for DomainIter {
    type Item = Vec<u64>;
    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.cur.take()?;
        let mut next = out.clone();
        for i in 0..next.len() {
            if next[i] + 1 < self.p {
                next[i] += 1;
                self.cur = Some(next);
                break;
            }
            next[i] = self.lo[i];
        }
        Some(out)
    }
}

fn eval_raw(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

fn validate_shares(cfg: &SchemeConfig, shares: &[Share]) -> Result<()> {
    let mut seen = Vec::with_capacity(shares.len());
    for s in shares {
        if !cfg.identities().contains(s.id) {
            return Err(Error::param(format!("{} is not a participant", s.id)));
        }
        if s.value.modulus() != cfg.p() {
            return Err(Error::ModulusMismatch(
                cfg.p().value(),
                s.value.modulus().value(),
            ));
        }
        if seen.contains(&s.id) {
            return Err(Error::param(format!("duplicate share for {}", s.id)));
        }
        seen.push(s.id);
    }
    Ok(())
}

fn matches_shares(coeffs: &[u64], shares: &[Share], p: u64) -> bool {
    shares
        .iter()
        .all(|s| eval_raw(coeffs, s.id % p, p) == s.value.value())
}

/// Every coefficient vector of `domain` whose evaluations agree with `shares`.
pub fn consistent_polynomials(
    cfg: &SchemeConfig,
    shares: &[Share],
    domain: Domain,
) -> Result<Vec<CoeffVector>> {
    let (t, p) = (cfg.t(), cfg.p());
    check_capacity(t, p)?;
    validate_shares(cfg, shares)?;
    Ok(DomainIter::new(domain, t, p)
        .filter(|c| matches_shares(c, shares, p.value()))
        .map(|c| CoeffVector::from_values(&c, p))
        .collect())
}

/// Exact counts of a secret's value over consistent polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Histogram(pub Vec<u64>);

impl Histogram {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The single value carrying all the mass, if there is one.
    pub fn point_mass(&self) -> Option<u64> {
        let mut nz = self.0.iter().enumerate().filter(|(_, &c)| c > 0);
        match (nz.next(), nz.next()) {
            (Some((v, _)), None) => Some(v as u64),
            _ => None,
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// `self` and `other` describe the same distribution.
    pub fn proportional_to(&self, other: &Histogram) -> bool {
        let (a, b) = (self.total(), other.total());
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&x, &y)| x as u128 * b as u128 == y as u128 * a as u128)
    }
}

/// Histogram of `s_j` given `shares` and the secrets listed in `known`.
pub fn conditional_distribution(
    cfg: &SchemeConfig,
    shares: &[Share],
    j: usize,
    known: &[(usize, FieldElement)],
    domain: Domain,
) -> Result<Histogram> {
    let (t, p) = (cfg.t(), cfg.p());
    check_capacity(t, p)?;
    validate_shares(cfg, shares)?;
    if j + 1 >= t {
        return Err(Error::param(format!(
            "secret index j = {j} outside 0..={}",
            t - 2
        )));
    }
    for (idx, &(k, v)) in known.iter().enumerate() {
        if k == j || k + 1 >= t || known[..idx].iter().any(|&(o, _)| o == k) {
            return Err(Error::param(format!("invalid conditioning index {k}")));
        }
        if v.modulus() != p {
            return Err(Error::ModulusMismatch(p.value(), v.modulus().value()));
        }
    }
    let pv = p.value();
    let mut hist = vec![0u64; pv as usize];
    for c in DomainIter::new(domain, t, p) {
        if known.iter().all(|&(k, v)| c[k] == v.value()) && matches_shares(&c, shares, pv) {
            hist[c[j] as usize] += 1;
        }
    }
    let h = Histogram(hist);
    if h.total() == 0 {
        return Err(Error::InconsistentShares);
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Every consistent polynomial agrees on `s_j`.
    Determined,
    /// The shares carry no information about `s_j` beyond the known secrets.
    /// For product domains this means the conditional is exactly uniform.
    Uniform,
    /// Some share values shift the conditional distribution of `s_j`.
    Leaky,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Determined => "determined",
            Verdict::Uniform => "uniform",
            Verdict::Leaky => "leaky",
        }
    }
}

/// One observed conditional that differs from the reference distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeakWitness {
    pub known_indices: Vec<usize>,
    pub known_values: Vec<u64>,
    pub share_values: Vec<u64>,
    pub histogram: Histogram,
    pub reference: Histogram,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub subset: Vec<u64>,
    pub j: usize,
    pub authorized: bool,
    pub verdict: Verdict,
    pub witness: Option<LeakWitness>,
}

impl AuditEntry {
    /// Correctness: authorized sets determine the secret, others never do.
    pub fn correct(&self) -> bool {
        self.authorized == (self.verdict == Verdict::Determined)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub t: usize,
    pub p: u64,
    pub identities: Vec<u64>,
    pub domain: Domain,
    pub conditioning: Conditioning,
    pub polynomials: u64,
    pub entries: Vec<AuditEntry>,
    pub correctness_failures: usize,
    pub leaky: usize,
    pub pass: bool,
}

/// Which sets `T` of other secrets a subset is assumed to know.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conditioning {
    /// Secrets the subset can already compute from its own shares.
    Computable,
    /// Every subset of the other secrets, with arbitrary values.
    AllSubsets,
}

impl Conditioning {
    pub fn as_str(self) -> &'static str {
        match self {
            Conditioning::Computable => "computable",
            Conditioning::AllSubsets => "all-subsets",
        }
    }
}

impl std::str::FromStr for Conditioning {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "computable" => Ok(Conditioning::Computable),
            "all-subsets" => Ok(Conditioning::AllSubsets),
            other => Err(Error::param(format!("unknown conditioning {other:?}"))),
        }
    }
}

/// Conditioning plans: a target index `j` and a set `T` of other indices.
#[derive(Debug, Clone)]
struct Plan {
    j: usize,
    known: Vec<usize>,
    mask: u32,
}

fn all_plans(t: usize) -> Vec<Plan> {
    let mut plans = Vec::new();
    for j in 0..t - 1 {
        for mask in 0..1u32 << (t - 1) {
            if mask >> j & 1 == 1 {
                continue;
            }
            let known = (0..t - 1).filter(|&k| mask >> k & 1 == 1).collect();
            plans.push(Plan { j, known, mask });
        }
    }
    plans
}

type Groups = HashMap<u64, Vec<u64>>;

/// Groups the domain by (shares at `points`, known secrets) for each plan.
fn tally(domain: Domain, t: usize, p: u64, points: &[u64], plans: &[&Plan]) -> Vec<Groups> {
    let pm = PrimeModulus::new(p).expect("validated modulus");
    let mut groups: Vec<Groups> = vec![HashMap::new(); plans.len()];
    for c in DomainIter::new(domain, t, pm) {
        let share_key = points.iter().fold(0u64, |k, &x| k * p + eval_raw(&c, x, p));
        for (g, plan) in groups.iter_mut().zip(plans) {
            let key = plan.known.iter().fold(share_key, |k, &i| k * p + c[i]);
            let h = g.entry(key).or_insert_with(|| vec![0; p as usize]);
            h[c[plan.j] as usize] += 1;
        }
    }
    groups
}

fn decode_key(mut key: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = key % p;
        key /= p;
    }
    out
}

/// Audits every subset of at most `t` participants against every secret.
pub fn perfectness_report(
    cfg: &SchemeConfig,
    domain: Domain,
    conditioning: Conditioning,
) -> Result<AuditReport> {
    let (t, p) = (cfg.t(), cfg.p());
    check_capacity(t, p)?;
    let pv = p.value();
    let n = cfg.n();
    if n > 63 {
        return Err(Error::Capacity(format!(
            "{n} participants exceed the 63 supported"
        )));
    }

    let plans = all_plans(t);
    let all_refs: Vec<&Plan> = plans.iter().collect();
    let reference = tally(domain, t, pv, &[], &all_refs);
    let ref_index = |j: usize, mask: u32| {
        plans
            .iter()
            .position(|pl| pl.j == j && pl.mask == mask)
            .expect("every plan is tallied")
    };

    let labels = cfg.identities().labels().to_vec();
    let subsets: Vec<Vec<u64>> = (0..=t.min(n))
        .flat_map(|k| KSubsets::new(0, n as u64 - 1, k).collect::<Vec<_>>())
        .map(|idx| idx.iter().map(|&i| labels[i as usize]).collect())
        .collect();

    let entries: Vec<Vec<AuditEntry>> = subsets
        .par_iter()
        .map(|members| {
            let points: Vec<u64> = members.iter().map(|&l| l % pv).collect();
            let elems: Vec<FieldElement> = points.iter().map(|&x| p.elem(x)).collect();
            let authorized: Vec<bool> = (0..t - 1)
                .map(|j| members.len() >= t || determines_coefficient(p, &elems, t, j))
                .collect();
            let computable: u32 = (0..t - 1)
                .filter(|&k| authorized[k])
                .fold(0, |m, k| m | 1 << k);
            let chosen: Vec<&Plan> = plans
                .iter()
                .filter(|pl| match conditioning {
                    Conditioning::AllSubsets => true,
                    Conditioning::Computable => pl.mask & !computable == 0,
                })
                .collect();
            let observed = tally(domain, t, pv, &points, &chosen);
            (0..t - 1)
                .map(|j| {
                    let mine: Vec<(u32, &Groups, &Groups)> = chosen
                        .iter()
                        .zip(&observed)
                        .filter(|(pl, _)| pl.j == j)
                        .map(|(pl, g)| (pl.mask, g, &reference[ref_index(j, pl.mask)]))
                        .collect();
                    classify(members, j, authorized[j], &mine, pv)
                })
                .collect()
        })
        .collect();
    let entries: Vec<AuditEntry> = entries.into_iter().flatten().collect();

    let correctness_failures = entries.iter().filter(|e| !e.correct()).count();
    let leaky = entries
        .iter()
        .filter(|e| e.verdict == Verdict::Leaky)
        .count();
    let pass = correctness_failures == 0 && (domain.is_informational() || leaky == 0);
    let polynomials = u64::try_from(domain.size(t, p)).expect("bounded by capacity check");
    Ok(AuditReport {
        t,
        p: pv,
        identities: labels,
        domain,
        conditioning,
        polynomials,
        entries,
        correctness_failures,
        leaky,
        pass,
    })
}

fn classify(
    members: &[u64],
    j: usize,
    authorized: bool,
    plans: &[(u32, &Groups, &Groups)],
    p: u64,
) -> AuditEntry {
    let entry = |verdict, witness| AuditEntry {
        subset: members.to_vec(),
        j,
        authorized,
        verdict,
        witness,
    };
    let (_, base, _) = plans
        .iter()
        .find(|(mask, _, _)| *mask == 0)
        .expect("T = {} plan");
    if base
        .values()
        .all(|h| Histogram(h.clone()).point_mass().is_some())
    {
        return entry(Verdict::Determined, None);
    }
    for &(mask, observed, reference) in plans {
        let known: Vec<usize> = (0..32).filter(|&k| mask >> k & 1 == 1).collect();
        let scale = p.pow(known.len() as u32);
        let mut keys: Vec<&u64> = observed.keys().collect();
        keys.sort_unstable();
        for &key in keys {
            let h = Histogram(observed[&key].clone());
            // the reference is keyed by the known secrets only
            let r = Histogram(reference[&(key % scale)].clone());
            if !h.proportional_to(&r) {
                let witness = LeakWitness {
                    known_values: decode_key(key % scale, p, known.len()),
                    known_indices: known,
                    share_values: decode_key(key / scale, p, members.len()),
                    histogram: h,
                    reference: r,
                };
                return entry(Verdict::Leaky, Some(witness));
            }
        }
    }
    entry(Verdict::Uniform, None)
}

/// True iff every share space and every secret space has the same size.
pub fn is_ideal(share_space_sizes: &[u64], secret_space_sizes: &[u64]) -> bool {
    let mut all = share_space_sizes.iter().chain(secret_space_sizes);
    match all.next() {
        Some(&first) => all.all(|&s| s == first),
        None => true,
    }
}

/// Each participant holds one element of `F_p` and each secret is one element
/// of `F_p`.
pub fn ideality_check(cfg: &SchemeConfig) -> bool {
    let p = cfg.p().value();
    is_ideal(&vec![p; cfg.n()], &vec![p; cfg.secret_count()])
}
