//! Macaulay bounds, lex-segment ideals and the Eliahou–Kervaire resolution.
//!
//! Lex ideals are built in h₁ variables (the Artinian reduction of a
//! one-dimensional ideal with the same Betti numbers). "Initial segment"
//! means initial in degree-lex order with y₁ > y₂ > ….

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::apolar::monomials_desc;
use crate::graded::BettiTable;
use crate::polyring::{binomial, monomial_count, Monomial, MonomialOrder};
use crate::{Error, Result};

/// The t-th Macaulay representation h = C(a_t, t) + C(a_{t−1}, t−1) + … + C(a_s, s)
/// with a_t > a_{t−1} > … > a_s ≥ s ≥ 1, as (a_i, i) pairs.
pub fn macaulay_representation(mut h: u64, t: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut i = t;
    while h > 0 && i >= 1 {
        let mut a = i;
        while binomial(a + 1, i) <= h {
            a += 1;
        }
        h -= binomial(a, i);
        out.push((a, i));
        i -= 1;
    }
    out
}

/// h^⟨t⟩, the largest possible value of h_{t+1} given h_t = h.
pub fn macaulay_next(h: u64, t: u64) -> u64 {
    assert!(t >= 1, "Macaulay bound needs t ≥ 1");
    macaulay_representation(h, t)
        .into_iter()
        .map(|(a, i)| binomial(a + 1, i + 1))
        .sum()
}

/// A Hilbert function h₀, h₁, … of a standard graded Artinian algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(pub Vec<u64>);

impl HVector {
    /// Checks h₀ = 1 and Macaulay growth at every index.
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        let ok = entries.first() == Some(&1)
            && entries
                .windows(2)
                .enumerate()
                .all(|(t, w)| t == 0 || w[1] <= macaulay_next(w[0], t as u64));
        if !ok {
            return Err(Error::InadmissibleHVector(entries));
        }
        Ok(HVector(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// h_t, zero past the end.
    pub fn get(&self, t: usize) -> u64 {
        self.0.get(t).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for HVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All h-vectors (1, n−1, h₂, …) of positive entries summing to `degree`
/// that satisfy Macaulay growth and are nonincreasing from the first index
/// t with h_t ≤ t on.
pub fn enumerate_hvectors(embedding_dim: usize, degree: usize) -> Result<Vec<HVector>> {
    if embedding_dim < 1 || degree < embedding_dim {
        return Err(Error::Infeasible(format!(
            "degree {degree} is below the embedding dimension {embedding_dim}"
        )));
    }
    let start = vec![1u64, embedding_dim as u64 - 1];
    let used: u64 = start.iter().sum();
    let mut out = Vec::new();
    fn rec(h: &mut Vec<u64>, remaining: u64, out: &mut Vec<HVector>) {
        if remaining == 0 {
            out.push(HVector(h.clone()));
            return;
        }
        let t = h.len() - 1;
        let last = h[t];
        let mut bound = macaulay_next(last, t as u64);
        if (1..=t).any(|s| h[s] <= s as u64) {
            bound = bound.min(last);
        }
        for next in (1..=bound.min(remaining)).rev() {
            h.push(next);
            rec(h, remaining - next, out);
            h.pop();
        }
    }
    let mut h = start;
    if embedding_dim == 1 {
        h.pop();
        if degree == 1 {
            return Ok(vec![HVector(h)]);
        }
        return Ok(Vec::new());
    }
    rec(&mut h, degree as u64 - used, &mut out);
    Ok(out)
}

/// The lex-segment ideal with a given Hilbert function, in m = h₁ variables.
#[derive(Clone, Debug)]
pub struct LexIdeal {
    pub n_vars: usize,
    pub hvector: HVector,
    /// `segments[t]` lists the degree-t monomials of the ideal for
    /// t ≤ len(h); every monomial of degree ≥ len(h) belongs to the ideal.
    pub segments: Vec<Vec<Monomial>>,
    pub generators: Vec<Monomial>,
}

impl LexIdeal {
    pub fn contains(&self, m: &Monomial) -> bool {
        let t = m.degree() as usize;
        t >= self.segments.len() || self.segments[t].contains(m)
    }

    /// Hilbert function of the quotient, through degree len(h).
    pub fn quotient_hilbert_function(&self) -> Vec<u64> {
        (0..self.segments.len())
            .map(|t| (monomial_count(self.n_vars, t as u32) - self.segments[t].len()) as u64)
            .collect()
    }

    /// For each generator u and y_j | u, checks u·y_i/y_j ∈ L for all i < j.
    pub fn check_strongly_stable(&self) -> Result<()> {
        for u in &self.generators {
            for j in 0..self.n_vars {
                if u.exp(j) == 0 {
                    continue;
                }
                let base = Monomial::var(self.n_vars, j).quotient_of(u).unwrap();
                for i in 0..j {
                    let v = base.mul_var(i);
                    if !self.contains(&v) {
                        return Err(Error::NotStronglyStable(format!("{u}: {v} missing")));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn lex_segment_ideal(h: &HVector) -> Result<LexIdeal> {
    let h = HVector::new(h.0.clone())?;
    if h.0.len() < 2 {
        return Err(Error::InadmissibleHVector(h.0));
    }
    let m = h.0[1] as usize;
    let top = h.0.len();
    let mut segments = Vec::with_capacity(top + 1);
    for t in 0..=top {
        let all = monomials_desc(m, t as u32, MonomialOrder::DegLex);
        let keep = all.len() - h.get(t) as usize;
        segments.push(all[..keep].to_vec());
    }
    let sets: Vec<HashSet<Monomial>> = segments
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    for t in 1..=top {
        for u in &segments[t - 1] {
            for k in 0..m {
                if !sets[t].contains(&u.mul_var(k)) {
                    return Err(Error::InadmissibleHVector(h.0));
                }
            }
        }
    }
    let mut generators = Vec::new();
    for t in 1..=top {
        for u in &segments[t] {
            let reducible = (0..m).any(|k| {
                Monomial::var(m, k)
                    .quotient_of(u)
                    .is_some_and(|v| sets[t - 1].contains(&v))
            });
            if !reducible {
                generators.push(*u);
            }
        }
    }
    let ideal = LexIdeal {
        n_vars: m,
        hvector: h,
        segments,
        generators,
    };
    ideal.check_strongly_stable()?;
    Ok(ideal)
}

/// Betti numbers of T/L by the Eliahou–Kervaire formula:
/// β_{i+1, i+1+j}(T/L) = Σ_{generators u of degree j} C(max(u) − 1, i).
pub fn ek_betti(l: &LexIdeal) -> Result<BettiTable> {
    l.check_strongly_stable()?;
    let mut table = BettiTable::new(
        format!("lex ideal with h-vector {}", l.hvector),
        "combinatorial",
    );
    table.set(0, 0, 1);
    for u in &l.generators {
        let j = u.degree() as usize;
        let mx = u.max_var() as u64;
        for i in 0..mx as usize {
            let v = binomial(mx - 1, i as u64) as usize;
            let key = (i + 1, i + j);
            let cur = table.get(key.0, key.1);
            table.set(key.0, key.1, cur + v);
        }
    }
    Ok(table)
}

/// max(0, β_{i,i+1}(T/L) − β_{i−1,i+1}(T/L)) for the lex ideal L of h.
pub fn peeva_lower_bound(h: &HVector, i: usize) -> Result<u64> {
    Ok(peeva_terms(h, i)?.2)
}

fn peeva_terms(h: &HVector, i: usize) -> Result<(u64, u64, u64)> {
    if i == 0 {
        return Err(Error::OutOfRange {
            what: "homological degree",
            detail: "0".into(),
        });
    }
    let t = ek_betti(&lex_segment_ideal(h)?)?;
    let a = t.get(i, i + 1) as u64;
    let b = t.get(i - 1, i + 1) as u64;
    Ok((a, b, a.saturating_sub(b)))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HVectorBound {
    pub h: HVector,
    pub beta_i_i1: u64,
    pub beta_im1_i1: u64,
    pub bound: u64,
}

/// Lower bound on β_{i,i+1} for every one-dimensional saturated ideal of
/// the given degree containing no linear form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub embedding_dim: usize,
    pub degree: usize,
    pub strand_i: usize,
    pub hvectors: Vec<HVectorBound>,
    pub threshold: u64,
    pub argmin_h: HVector,
    /// Every h-vector attaining the threshold.
    pub attained_by: Vec<HVector>,
}

pub fn strand_threshold_report(
    embedding_dim: usize,
    degree: usize,
    i: usize,
) -> Result<ThresholdReport> {
    let hs = enumerate_hvectors(embedding_dim, degree)?;
    if hs.is_empty() {
        return Err(Error::Infeasible(format!(
            "no admissible h-vector of degree {degree}"
        )));
    }
    let mut rows = Vec::with_capacity(hs.len());
    for h in hs {
        let (a, b, bound) = peeva_terms(&h, i)?;
        rows.push(HVectorBound {
            h,
            beta_i_i1: a,
            beta_im1_i1: b,
            bound,
        });
    }
    let threshold = rows.iter().map(|r| r.bound).min().unwrap();
    let attained_by: Vec<HVector> = rows
        .iter()
        .filter(|r| r.bound == threshold)
        .map(|r| r.h.clone())
        .collect();
    Ok(ThresholdReport {
        embedding_dim,
        degree,
        strand_i: i,
        hvectors: rows,
        threshold,
        argmin_h: attained_by[0].clone(),
        attained_by,
    })
}

pub fn strand_threshold(embedding_dim: usize, degree: usize, i: usize) -> Result<u64> {
    Ok(strand_threshold_report(embedding_dim, degree, i)?.threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(v: &[u64]) -> HVector {
        HVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn macaulay_bounds() {
        assert_eq!(macaulay_next(3, 2), 4);
        assert_eq!(macaulay_next(8, 1), 36);
        assert_eq!(macaulay_next(0, 5), 0);
        assert_eq!(macaulay_next(1, 3), 1);
        // 5 = C(3,2) + C(2,1) → C(4,3) + C(3,2) = 7
        assert_eq!(macaulay_next(5, 2), 7);
    }

    /// Oracle: h^⟨t⟩ is the number of degree-(t+1) monomials in the lex
    /// order ideal generated by the last h degree-t monomials.
    #[test]
    fn macaulay_matches_lex_counting() {
        for n in 2..5usize {
            for t in 1..4u32 {
                let all = monomials_desc(n, t, MonomialOrder::DegLex);
                for hv in 0..=all.len() {
                    let lex_gen: HashSet<Monomial> =
                        all[..all.len() - hv].iter().copied().collect();
                    let in_ideal = monomials_desc(n, t + 1, MonomialOrder::DegLex)
                        .into_iter()
                        .filter(|m| {
                            (0..n).any(|k| {
                                Monomial::var(n, k)
                                    .quotient_of(m)
                                    .is_some_and(|q| lex_gen.contains(&q))
                            })
                        })
                        .count();
                    let expected = monomial_count(n, t + 1) - in_ideal;
                    assert_eq!(
                        macaulay_next(hv as u64, t as u64),
                        expected as u64,
                        "n={n} t={t} h={hv}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumerations() {
        let got = enumerate_hvectors(9, 13).unwrap();
        let want: Vec<HVector> = [
            vec![1, 8, 4],
            vec![1, 8, 3, 1],
            vec![1, 8, 2, 2],
            vec![1, 8, 2, 1, 1],
            vec![1, 8, 1, 1, 1, 1],
        ]
        .into_iter()
        .map(HVector)
        .collect();
        assert_eq!(got, want);
        assert_eq!(enumerate_hvectors(9, 10).unwrap(), vec![h(&[1, 8, 1])]);
        assert_eq!(enumerate_hvectors(3, 4).unwrap(), vec![h(&[1, 2, 1])]);
        assert!(enumerate_hvectors(9, 8).is_err());
    }

    #[test]
    fn lex_ideals() {
        let l = lex_segment_ideal(&h(&[1, 2, 1])).unwrap();
        let gens: Vec<String> = l.generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, vec!["x1^2", "x1*x2", "x2^3"]);
        let l = lex_segment_ideal(&h(&[1, 8, 4])).unwrap();
        assert_eq!(l.quotient_hilbert_function(), vec![1, 8, 4, 0]);
        let l = lex_segment_ideal(&h(&[1, 8, 1, 1, 1, 1])).unwrap();
        let y8sq = Monomial::new(&[0, 0, 0, 0, 0, 0, 0, 2]).unwrap();
        assert!(!l.contains(&y8sq));
        assert_eq!(l.segments[2].len(), 35);
        assert!(HVector::new(vec![1, 2, 4]).is_err());
    }

    #[test]
    fn ek_tables_match_strand_values() {
        let t = ek_betti(&lex_segment_ideal(&h(&[1, 8, 4])).unwrap()).unwrap();
        assert_eq!((t.get(5, 6), t.get(4, 6)), (300, 160));
        let t = ek_betti(&lex_segment_ideal(&h(&[1, 8, 3, 1])).unwrap()).unwrap();
        assert_eq!((t.get(5, 6), t.get(4, 6)), (335, 90));
        let t = ek_betti(&lex_segment_ideal(&h(&[1, 8, 1, 1, 1, 1])).unwrap()).unwrap();
        assert_eq!((t.get(5, 6), t.get(4, 6)), (385, 0));
    }

    /// Σ_i (−1)^i β_{i,j} equals the coefficient of t^j in h(t)(1 − t)^m.
    #[test]
    fn k_polynomial_identity() {
        for hv in enumerate_hvectors(9, 13)
            .unwrap()
            .into_iter()
            .chain(enumerate_hvectors(5, 9).unwrap())
        {
            let l = lex_segment_ideal(&hv).unwrap();
            let t = ek_betti(&l).unwrap();
            let m = l.n_vars as i64;
            let top = hv.0.len() + m as usize + 1;
            for j in 0..top {
                let mut expected = 0i64;
                for (s, &hs) in hv.0.iter().enumerate() {
                    if s <= j && j - s <= m as usize {
                        let k = (j - s) as u64;
                        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
                        expected += sign * hs as i64 * binomial(m as u64, k) as i64;
                    }
                }
                let alt: i64 = (0..=m as usize)
                    .map(|i| {
                        if i % 2 == 0 {
                            t.get(i, j) as i64
                        } else {
                            -(t.get(i, j) as i64)
                        }
                    })
                    .sum();
                assert_eq!(alt, expected, "h={hv} j={j}");
            }
        }
    }

    #[test]
    fn thresholds() {
        let r = strand_threshold_report(9, 13, 5).unwrap();
        assert_eq!(r.threshold, 140);
        assert_eq!(r.attained_by, vec![h(&[1, 8, 4])]);
        assert_eq!(strand_threshold(9, 14, 5).unwrap(), 70);
        assert_eq!(peeva_lower_bound(&h(&[1, 8, 3, 1]), 5).unwrap(), 245);
        assert_eq!(peeva_lower_bound(&h(&[1, 8, 1, 1, 1, 1]), 5).unwrap(), 385);
    }

    /// Rows r = j − i of the published tables, entries for i = 1..=8.
    fn published(hv: &[u64]) -> Vec<(usize, [usize; 8])> {
        let full = [1, 7, 21, 35, 35, 21, 7, 1];
        match hv {
            [1, 8, 4] => vec![
                (1, [32, 141, 300, 379, 300, 147, 41, 5]),
                (2, [5, 34, 99, 160, 155, 90, 29, 4]),
            ],
            [1, 8, 3, 1] => vec![
                (1, [33, 148, 321, 414, 335, 168, 48, 6]),
                (2, [3, 20, 57, 90, 85, 48, 15, 2]),
                (3, full),
            ],
            [1, 8, 2, 2] => vec![
                (1, [34, 154, 336, 434, 350, 174, 49, 6]),
                (3, [2, 14, 42, 70, 70, 42, 14, 2]),
            ],
            [1, 8, 2, 1, 1] => vec![
                (1, [34, 154, 336, 434, 350, 174, 49, 6]),
                (2, full),
                (4, full),
            ],
            [1, 8, 1, 1, 1, 1] => vec![(1, [35, 161, 357, 469, 385, 195, 56, 7]), (5, full)],
            _ => unreachable!(),
        }
    }

    fn published_table(hv: &[u64]) -> BettiTable {
        let mut t = BettiTable::new("", "");
        t.set(0, 0, 1);
        for (r, row) in published(hv) {
            for (k, &v) in row.iter().enumerate() {
                t.set(k + 1, k + 1 + r, v);
            }
        }
        t
    }

    #[test]
    fn five_published_tables() {
        for hv in enumerate_hvectors(9, 13).unwrap() {
            let got = ek_betti(&lex_segment_ideal(&hv).unwrap()).unwrap();
            assert_eq!(got.nonzero(), published_table(&hv.0).nonzero(), "h={hv}");
        }
        let totals = ek_betti(&lex_segment_ideal(&h(&[1, 8, 4])).unwrap())
            .unwrap()
            .totals();
        assert_eq!(totals, vec![1, 37, 175, 399, 539, 455, 237, 70, 9]);
    }

    /// The combinatorial formula agrees with Koszul homology of T/L.
    #[test]
    fn ek_agrees_with_koszul_homology() {
        use crate::graded::{algebra_from_monomial_quotient, betti_table_over, RankField};
        use crate::scalars::Rational;
        for hv in [
            h(&[1, 8, 4]),
            h(&[1, 8, 2, 1, 1]),
            h(&[1, 3, 4, 2]),
            h(&[1, 4, 3, 3, 1]),
        ] {
            let l = lex_segment_ideal(&hv).unwrap();
            let alg =
                algebra_from_monomial_quotient::<Rational>(&l.generators, l.n_vars, hv.0.len() + 1)
                    .unwrap();
            let koszul =
                betti_table_over(&alg, l.n_vars, l.n_vars + hv.0.len(), RankField::Exact).unwrap();
            assert_eq!(koszul.nonzero(), ek_betti(&l).unwrap().nonzero(), "h={hv}");
        }
    }
}
