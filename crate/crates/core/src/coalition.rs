//! Privileged coalitions: tracks of fewer than `t` identities whose shares
//! already pin down the coefficient `a_j` of a degree `t-1` polynomial.
//!
//! Two independent characterizations are provided and kept separate:
//!
//! * [`is_privileged`]: vanishing of `tau_w(L)` for every `w` in the window
//!   `{r-j, ..., t-1-j}` (cheap, used for enumeration);
//! * [`privileged_rank_oracle`]: `e_j` lies in the row space of the `r x t`
//!   power matrix of `L` (total, used for minimality and sub-track tests).

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeModulus};
use crate::linalg::Matrix;
use crate::symfun::{elem_sym, Track};

/// Lexicographic iterator over the `k`-subsets of `lo..=hi`.
#[derive(Debug, Clone)]
pub struct KSubsets {
    hi: u64,
    current: Option<Vec<u64>>,
}

impl KSubsets {
    pub fn new(lo: u64, hi: u64, k: usize) -> Self {
        let fits = lo
            .checked_add(k as u64)
            .is_some_and(|end| end <= hi.saturating_add(1));
        let current = if fits || k == 0 {
            Some((0..k as u64).map(|i| lo + i).collect())
        } else {
            None
        };
        KSubsets { hi, current }
    }
}

impl Iterator for KSubsets {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still be incremented
        let mut i = k;
        while i > 0 {
            i -= 1;
            let max_here = self.hi - (k - 1 - i) as u64;
            if next[i] < max_here {
                next[i] += 1;
                for m in i + 1..k {
                    next[m] = next[m - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// All `C(n, r)` tracks of length `r` over labels `1..=n`, lexicographic.
pub fn enumerate_tracks(r: usize, n: u64, p: PrimeModulus) -> Result<impl Iterator<Item = Track>> {
    if r == 0 {
        return Err(Error::param("track length r must be at least 1"));
    }
    if r as u64 > n {
        return Err(Error::param(format!("violated r <= N (r = {r}, N = {n})")));
    }
    if n > p.value() {
        return Err(Error::param(format!("violated N <= p (N = {n}, p = {p})")));
    }
    Ok(KSubsets::new(1, n, r).map(move |labels| Track::from_sorted_unchecked(labels, p)))
}

/// Tracks of length `r` over `1..=n` whose first label is `first`.
fn tracks_with_first(first: u64, r: usize, n: u64, p: PrimeModulus) -> impl Iterator<Item = Track> {
    KSubsets::new(first + 1, n, r - 1).map(move |rest| {
        let mut labels = Vec::with_capacity(r);
        labels.push(first);
        labels.extend(rest);
        Track::from_sorted_unchecked(labels, p)
    })
}

/// Parameters of one enumeration: threshold `t`, coefficient `j`, length `r`,
/// field `F_p` and identity bound `n` (labels `1..=n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoalitionQuery {
    t: usize,
    j: usize,
    r: usize,
    p: PrimeModulus,
    n: u64,
}

/// Upper bound on tracks scanned by one query.
pub const MAX_TRACKS: u64 = 1_000_000_000;

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_threshold(t: usize, p: PrimeModulus, n: u64) -> Result<()> {
    if t < 3 {
        return Err(Error::param(format!("violated t >= 3 (t = {t})")));
    }
    if t as u64 > p.value() {
        return Err(Error::param(format!("violated t <= p (t = {t}, p = {p})")));
    }
    if n > p.value() {
        return Err(Error::param(format!("violated N <= p (N = {n}, p = {p})")));
    }
    Ok(())
}

impl CoalitionQuery {
    pub fn new(t: usize, j: usize, r: usize, p: PrimeModulus, n: u64) -> Result<Self> {
        check_threshold(t, p, n)?;
        if 2 * r < t + 1 {
            return Err(Error::param(format!(
                "violated (t+1)/2 <= r (t = {t}, r = {r})"
            )));
        }
        if r + 1 > t {
            return Err(Error::param(format!(
                "violated r <= t-1 (t = {t}, r = {r})"
            )));
        }
        if t - r > j {
            return Err(Error::param(format!(
                "violated t-r <= j (t = {t}, r = {r}, j = {j})"
            )));
        }
        if j + 1 > r {
            return Err(Error::param(format!(
                "violated j <= r-1 (j = {j}, r = {r})"
            )));
        }
        if r as u64 > n {
            return Err(Error::param(format!("violated r <= N (r = {r}, N = {n})")));
        }
        let tracks = binomial(n, r as u64);
        if tracks > MAX_TRACKS as u128 {
            return Err(Error::Capacity(format!(
                "C({n}, {r}) = {tracks} tracks exceed the bound {MAX_TRACKS}"
            )));
        }
        Ok(CoalitionQuery { t, j, r, p, n })
    }

    pub fn t(&self) -> usize {
        self.t
    }
    pub fn j(&self) -> usize {
        self.j
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn p(&self) -> PrimeModulus {
        self.p
    }
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The index window `J = {r-j, ..., t-1-j}`.
    pub fn window(&self) -> RangeInclusive<usize> {
        self.r - self.j..=self.t - 1 - self.j
    }
}

/// Coalition lengths `r` for which `(t, j, r)` is a valid query.
pub fn valid_lengths(t: usize, j: usize) -> RangeInclusive<usize> {
    // ceil((t+1)/2) = t/2 + 1
    let lo = (t / 2 + 1).max(j + 1).max(t.saturating_sub(j));
    lo..=t.saturating_sub(1)
}

fn check_predicate_args(len: usize, t: usize, j: usize, p: PrimeModulus) -> Result<()> {
    if len >= t {
        return Err(Error::param(format!(
            "a coalition has fewer than t members (r = {len}, t = {t})"
        )));
    }
    if j >= t {
        return Err(Error::param(format!(
            "violated j <= t-1 (j = {j}, t = {t})"
        )));
    }
    if t as u64 > p.value() {
        return Err(Error::param(format!("violated t <= p (t = {t}, p = {p})")));
    }
    Ok(())
}

/// Window test: `tau_w(L) = 0` for every `w` in `{r-j, ..., t-1-j}`.
pub fn is_privileged(l: &Track, t: usize, j: usize) -> Result<bool> {
    let r = l.len();
    check_predicate_args(r, t, j, l.modulus())?;
    if j == 0 || j == t - 1 || j + r < t || j >= r {
        return Ok(false);
    }
    let taus = l.tau_all();
    Ok((r - j..=t - 1 - j).all(|w| w > r || taus[w].is_zero()))
}

/// True iff `a_j` is uniquely determined by the values of a degree `< t`
/// polynomial at `points`. Defined for any number of distinct points.
pub fn determines_coefficient(
    p: PrimeModulus,
    points: &[FieldElement],
    t: usize,
    j: usize,
) -> bool {
    if points.is_empty() {
        return false;
    }
    Matrix::powers(points, t, p).row_space_contains_unit(j)
}

/// Linear-algebra oracle for privilege: `e_j` in the row space of `A(L)`.
pub fn privileged_rank_oracle(l: &Track, t: usize, j: usize) -> Result<bool> {
    check_predicate_args(l.len(), t, j, l.modulus())?;
    Ok(determines_coefficient(l.modulus(), l.elements(), t, j))
}

/// True iff `tau_{t-1-j}(L || u without u_m) = 0` for every `m`, where `u` is a
/// disjoint track of length `t - r`. Equivalent to the window test.
pub fn extension_condition(l: &Track, u: &Track, t: usize, j: usize) -> Result<bool> {
    let r = l.len();
    check_predicate_args(r, t, j, l.modulus())?;
    if u.modulus() != l.modulus() {
        return Err(Error::ModulusMismatch(
            l.modulus().value(),
            u.modulus().value(),
        ));
    }
    if u.len() != t - r {
        return Err(Error::param(format!(
            "extension has length {} but t-r = {}",
            u.len(),
            t - r
        )));
    }
    if let Some(x) = u.elements().iter().find(|x| l.elements().contains(x)) {
        return Err(Error::param(format!(
            "extension overlaps the coalition at residue {x}"
        )));
    }
    Ok(extension_condition_points(
        l.modulus(),
        l.elements(),
        u.elements(),
        t,
        j,
    ))
}

pub(crate) fn extension_condition_points(
    p: PrimeModulus,
    l: &[FieldElement],
    u: &[FieldElement],
    t: usize,
    j: usize,
) -> bool {
    let omega = t - 1 - j;
    let mut seq: Vec<FieldElement> = Vec::with_capacity(l.len() + u.len());
    (0..u.len()).all(|m| {
        seq.clear();
        seq.extend_from_slice(l);
        seq.extend(
            u.iter()
                .enumerate()
                .filter(|&(i, _)| i != m)
                .map(|(_, &x)| x),
        );
        elem_sym(p, &seq, omega).is_zero()
    })
}

/// Privileged (window test) and no proper sub-track determines `a_j`.
pub fn is_minimal_privileged(l: &Track, t: usize, j: usize) -> Result<bool> {
    if !is_privileged(l, t, j)? {
        return Ok(false);
    }
    Ok(!has_privileged_proper_subtrack(l, t, j))
}

fn has_privileged_proper_subtrack(l: &Track, t: usize, j: usize) -> bool {
    let p = l.modulus();
    l.proper_subtracks()
        .any(|s| determines_coefficient(p, s.elements(), t, j))
}

/// A length-`t` track with no privileged proper sub-track: a minimal
/// authorized `t`-set for `s_j`.
pub fn is_unextended(l: &Track, t: usize, j: usize) -> Result<bool> {
    if l.len() != t {
        return Err(Error::param(format!(
            "unextended tracks have length t = {t}, got {}",
            l.len()
        )));
    }
    if j >= t {
        return Err(Error::param(format!(
            "violated j <= t-1 (j = {j}, t = {t})"
        )));
    }
    Ok(!has_privileged_proper_subtrack(l, t, j))
}

/// Result of an enumeration. `r` is `None` for multi-length sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionReport {
    pub t: usize,
    pub j: usize,
    pub r: Option<usize>,
    pub p: PrimeModulus,
    pub n: u64,
    pub minimal: bool,
    pub coalitions: Vec<Track>,
    pub r_min: Option<usize>,
    pub n_min: Option<usize>,
}

impl CoalitionReport {
    pub fn count(&self) -> usize {
        self.coalitions.len()
    }

    pub fn per_length_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.coalitions {
            *m.entry(c.len()).or_insert(0) += 1;
        }
        m
    }

    fn fill_shortest(&mut self) {
        self.r_min = self.coalitions.iter().map(Track::len).min();
        self.n_min = self
            .r_min
            .map(|r| self.coalitions.iter().filter(|c| c.len() == r).count());
    }
}

/// Filters the length-`r` tracks in parallel, partitioned by first label;
/// partitions are concatenated in label order, so output is lexicographic.
fn filter_tracks<F>(q: &CoalitionQuery, keep: F) -> Vec<Track>
where
    F: Fn(&Track) -> bool + Sync,
{
    let (r, n, p) = (q.r, q.n, q.p);
    let firsts: Vec<u64> = (1..=n + 1 - r as u64).collect();
    firsts
        .par_iter()
        .map(|&first| {
            tracks_with_first(first, r, n, p)
                .filter(|l| keep(l))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Every `(t, j)`-privileged track of length `r` over `1..=N`.
pub fn privileged_coalitions(q: &CoalitionQuery) -> CoalitionReport {
    let window = q.window();
    let coalitions = filter_tracks(q, |l| {
        let taus = l.tau_all();
        window.clone().all(|w| taus[w].is_zero())
    });
    CoalitionReport {
        t: q.t,
        j: q.j,
        r: Some(q.r),
        p: q.p,
        n: q.n,
        minimal: false,
        coalitions,
        r_min: None,
        n_min: None,
    }
}

/// The privileged tracks of length `r` that contain no privileged sub-track.
pub fn minimal_privileged_coalitions(q: &CoalitionQuery) -> CoalitionReport {
    let mut report = privileged_coalitions(q);
    report.coalitions = report
        .coalitions
        .into_par_iter()
        .filter(|l| !has_privileged_proper_subtrack(l, q.t, q.j))
        .collect();
    report.minimal = true;
    report
}

fn sweep_queries(t: usize, j: usize, p: PrimeModulus, n: u64) -> Result<Vec<CoalitionQuery>> {
    check_threshold(t, p, n)?;
    let lengths = valid_lengths(t, j);
    if lengths.is_empty() {
        return Err(Error::param(format!(
            "no coalition length satisfies (t+1)/2 <= r <= t-1 and t-r <= j <= r-1 (t = {t}, j = {j})"
        )));
    }
    lengths
        .filter(|&r| r as u64 <= n)
        .map(|r| CoalitionQuery::new(t, j, r, p, n))
        .collect()
}

/// Privileged (or minimal privileged) coalitions across all valid lengths,
/// with `r_min` / `N_min` filled in.
pub fn sweep(
    t: usize,
    j: usize,
    p: PrimeModulus,
    n: u64,
    minimal: bool,
) -> Result<CoalitionReport> {
    let mut coalitions = Vec::new();
    for q in sweep_queries(t, j, p, n)? {
        let rep = if minimal {
            minimal_privileged_coalitions(&q)
        } else {
            privileged_coalitions(&q)
        };
        coalitions.extend(rep.coalitions);
    }
    coalitions.sort();
    let mut report = CoalitionReport {
        t,
        j,
        r: None,
        p,
        n,
        minimal,
        coalitions,
        r_min: None,
        n_min: None,
    };
    report.fill_shortest();
    Ok(report)
}

/// The privileged coalitions of the shortest length that has any.
pub fn shortest_privileged(t: usize, j: usize, p: PrimeModulus, n: u64) -> Result<CoalitionReport> {
    let mut report = CoalitionReport {
        t,
        j,
        r: None,
        p,
        n,
        minimal: false,
        coalitions: Vec::new(),
        r_min: None,
        n_min: None,
    };
    for q in sweep_queries(t, j, p, n)? {
        let rep = privileged_coalitions(&q);
        if !rep.coalitions.is_empty() {
            report.r = Some(q.r);
            report.coalitions = rep.coalitions;
            break;
        }
    }
    report.fill_shortest();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn tr(v: &[u64], p: u64) -> Track {
        Track::new(v, pm(p)).unwrap()
    }

    fn labels(rep: &CoalitionReport) -> Vec<Vec<u64>> {
        rep.coalitions.iter().map(|c| c.labels().to_vec()).collect()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn oversized_query_is_a_capacity_error() {
        let p = PrimeModulus::new(1_000_003).unwrap();
        assert!(matches!(
            CoalitionQuery::new(7, 3, 5, p, 100_000),
            Err(Error::Capacity(_))
        ));
        assert_eq!(super::binomial(13, 4), 715);
        assert_eq!(super::binomial(3, 5), 0);
    }

    #[test]
    fn enumerate_examples() {
        let p = pm(13);
        let got: Vec<Vec<u64>> = enumerate_tracks(2, 3, p)
            .unwrap()
            .map(|t| t.labels().to_vec())
            .collect();
        assert_eq!(got, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        let got: Vec<_> = enumerate_tracks(3, 3, p).unwrap().collect();
        assert_eq!(got.len(), 1);
        let all: Vec<_> = enumerate_tracks(4, 13, p).unwrap().collect();
        assert_eq!(all.len() as u64, binomial(13, 4));
        assert_eq!(all[0].labels(), &[1, 2, 3, 4]);
        assert_eq!(all.last().unwrap().labels(), &[10, 11, 12, 13]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(enumerate_tracks(4, 3, p).is_err());
        assert!(enumerate_tracks(2, 14, p).is_err());
    }

    #[test]
    fn ksubsets_edge_cases() {
        assert_eq!(
            KSubsets::new(1, 0, 0).collect::<Vec<_>>(),
            vec![Vec::<u64>::new()]
        );
        assert_eq!(KSubsets::new(5, 4, 1).count(), 0);
        assert_eq!(KSubsets::new(3, 9, 3).count() as u64, binomial(7, 3));
    }

    #[test]
    fn prefix_partition_covers_stream() {
        let p = pm(17);
        let q = CoalitionQuery::new(7, 3, 5, p, 13).unwrap();
        let par = filter_tracks(&q, |_| true);
        let seq: Vec<_> = enumerate_tracks(5, 13, p).unwrap().collect();
        assert_eq!(par, seq);
    }

    #[test]
    fn is_privileged_examples() {
        assert!(is_privileged(&tr(&[1, 2, 4], 7), 5, 2).unwrap());
        assert!(is_privileged(&tr(&[1, 2, 5, 6], 7), 5, 1).unwrap());
        assert!(!is_privileged(&tr(&[1, 2, 3], 7), 5, 2).unwrap());
        assert!(!is_privileged(&tr(&[1, 2, 4], 7), 5, 0).unwrap());
        assert!(!is_privileged(&tr(&[1, 2, 4, 5], 7), 5, 4).unwrap());
        assert!(is_privileged(&tr(&[1, 2, 3, 4, 5], 7), 5, 2).is_err());
        assert!(is_privileged(&tr(&[1, 2], 7), 5, 5).is_err());
        assert!(is_privileged(&tr(&[1, 2], 3), 5, 2).is_err());
    }

    #[test]
    fn rank_oracle_examples() {
        assert!(privileged_rank_oracle(&tr(&[1, 2, 4], 7), 5, 2).unwrap());
        assert!(privileged_rank_oracle(&tr(&[1, 2, 4, 5], 7), 5, 2).unwrap());
        assert!(!privileged_rank_oracle(&tr(&[1, 2, 3], 7), 5, 2).unwrap());
        assert!(privileged_rank_oracle(&tr(&[1, 2, 3, 4, 5], 7), 5, 2).is_err());
    }

    #[test]
    fn rank_oracle_kernel_argument() {
        // (x-1)(x-2)(x-4)(x-5) spans the kernel of A(1,2,4,5) for t = 5;
        // its x^2 coefficient is tau_2(1,2,4,5) = 2+4+5+8+10+20 = 49 = 0 mod 7.
        let l = tr(&[1, 2, 4, 5], 7);
        assert!(l.tau(2).is_zero());
    }

    #[test]
    fn extension_condition_examples() {
        assert!(extension_condition(&tr(&[1, 2, 4], 7), &tr(&[3, 5], 7), 5, 2).unwrap());
        assert!(!extension_condition(&tr(&[1, 2, 3], 7), &tr(&[4, 5], 7), 5, 2).unwrap());
        // t - r = 1: reduces to tau_{t-1-j}(L) = 0
        let l = tr(&[1, 2, 5, 6], 7);
        assert_eq!(
            extension_condition(&l, &tr(&[3], 7), 5, 1).unwrap(),
            l.tau(3).is_zero()
        );
        assert!(extension_condition(&tr(&[1, 2, 4], 7), &tr(&[2, 5], 7), 5, 2).is_err());
        assert!(extension_condition(&tr(&[1, 2, 4], 7), &tr(&[3], 7), 5, 2).is_err());
    }

    #[test]
    fn query_validation_names_inequality() {
        let p = pm(7);
        let err = CoalitionQuery::new(5, 1, 3, p, 6).unwrap_err();
        assert!(err.to_string().contains("t-r <= j"), "{err}");
        let err = CoalitionQuery::new(5, 2, 2, p, 6).unwrap_err();
        assert!(err.to_string().contains("(t+1)/2 <= r"), "{err}");
        let err = CoalitionQuery::new(5, 3, 3, p, 6).unwrap_err();
        assert!(err.to_string().contains("j <= r-1"), "{err}");
        let err = CoalitionQuery::new(2, 1, 1, p, 6).unwrap_err();
        assert!(err.to_string().contains("t >= 3"), "{err}");
        let err = CoalitionQuery::new(5, 2, 3, p, 8).unwrap_err();
        assert!(err.to_string().contains("N <= p"), "{err}");
        let err = CoalitionQuery::new(11, 5, 6, p, 7).unwrap_err();
        assert!(err.to_string().contains("t <= p"), "{err}");
        let q = CoalitionQuery::new(7, 3, 4, pm(13), 13).unwrap();
        assert_eq!(q.window(), 1..=3);
    }

    #[test]
    fn valid_lengths_matches_inequalities() {
        for t in 3..10 {
            for j in 0..t {
                let brute: Vec<usize> = (1..t)
                    .filter(|&r| 2 * r > t && t - r <= j && j < r)
                    .collect();
                let got: Vec<usize> = valid_lengths(t, j).collect();
                assert_eq!(got, brute, "t={t} j={j}");
            }
        }
    }

    #[test]
    fn privileged_coalitions_examples() {
        let q = CoalitionQuery::new(7, 3, 4, pm(13), 13).unwrap();
        assert_eq!(
            labels(&privileged_coalitions(&q)),
            vec![vec![1, 5, 8, 12], vec![2, 3, 10, 11], vec![4, 6, 7, 9]]
        );
        let q = CoalitionQuery::new(7, 3, 4, pm(17), 13).unwrap();
        assert_eq!(labels(&privileged_coalitions(&q)), vec![vec![6, 7, 10, 11]]);
        let q = CoalitionQuery::new(5, 2, 3, pm(7), 6).unwrap();
        let rep = privileged_coalitions(&q);
        assert_eq!(labels(&rep), vec![vec![1, 2, 4], vec![3, 5, 6]]);
        assert_eq!(rep.count(), 2);
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimal_privileged(&tr(&[1, 2, 4], 7), 5, 2).unwrap());
        assert!(!is_minimal_privileged(&tr(&[1, 2, 4, 5], 7), 5, 2).unwrap());
        assert!(is_minimal_privileged(&tr(&[1, 5, 8, 12], 13), 7, 3).unwrap());

        let q = CoalitionQuery::new(5, 2, 4, pm(7), 6).unwrap();
        assert!(minimal_privileged_coalitions(&q).coalitions.is_empty());

        let rep = sweep(7, 1, pm(13), 13, true).unwrap();
        assert_eq!(rep.count(), 72);
        let rep = sweep(7, 5, pm(67), 13, true).unwrap();
        assert_eq!(rep.count(), 0);
        assert_eq!(rep.r_min, None);
    }

    #[test]
    fn minimal_members_have_no_privileged_subset() {
        let rep = sweep(7, 3, pm(13), 13, true).unwrap();
        for c in &rep.coalitions {
            for s in c.proper_subtracks() {
                assert!(
                    !determines_coefficient(s.modulus(), s.elements(), 7, 3),
                    "{c} ⊃ {s}"
                );
            }
        }
        assert_eq!(rep.r_min, Some(4));
        assert_eq!(rep.n_min, Some(3));
    }

    #[test]
    fn unextended_examples() {
        assert!(!is_unextended(&tr(&[1, 2, 3, 4, 5], 7), 5, 2).unwrap());
        assert!(!is_unextended(&tr(&[2, 3, 4, 5, 6], 7), 5, 1).unwrap());
        assert!(is_unextended(&tr(&[1, 2, 3, 4, 5, 6, 7], 22787), 7, 3).unwrap());
        assert!(is_unextended(&tr(&[1, 2, 3], 7), 5, 2).is_err());
    }

    #[test]
    fn j_boundary_never_privileged() {
        let p = pm(11);
        for t in 4..=6 {
            for r in 1..t {
                for l in enumerate_tracks(r, 10, p).unwrap() {
                    assert!(!is_privileged(&l, t, 0).unwrap());
                    assert!(!is_privileged(&l, t, t - 1).unwrap());
                    assert!(!privileged_rank_oracle(&l, t, 0).unwrap());
                    assert!(!privileged_rank_oracle(&l, t, t - 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn superset_closure() {
        let p = pm(13);
        let (t, j) = (7, 3);
        let base = sweep(t, j, p, 12, false).unwrap();
        for l in base.coalitions.iter().filter(|l| l.len() < t - 1) {
            for extra in 1..=12u64 {
                if l.contains(extra) {
                    continue;
                }
                let mut v = l.labels().to_vec();
                v.push(extra);
                let sup = Track::new(&v, p).unwrap();
                assert!(privileged_rank_oracle(&sup, t, j).unwrap(), "{sup}");
            }
        }
    }
}
