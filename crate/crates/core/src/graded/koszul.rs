use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::algebra::{densify, GradedAlgebra, RingElem, Weight};
use crate::linalg::{SpanSolver, SparseRow};
use crate::polyring::binomial;
use crate::scalars::Scalar;
use crate::{Error, Result};

/// Bases of the exterior powers Λ^i V, dim V = n: strictly increasing index
/// tuples in lexicographic order, stored as bit masks.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    pub n: usize,
    pub by_size: Vec<Vec<u32>>,
    index: Vec<u32>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        assert!(n <= 20, "too many variables for an exterior basis");
        let mut by_size = vec![Vec::new(); n + 1];
        fn rec(n: usize, start: usize, mask: u32, size: usize, out: &mut Vec<Vec<u32>>) {
            out[size].push(mask);
            for s in start..n {
                rec(n, s + 1, mask | (1 << s), size + 1, out);
            }
        }
        rec(n, 0, 0, 0, &mut by_size);
        let mut index = vec![0u32; 1 << n];
        for list in &by_size {
            for (i, &m) in list.iter().enumerate() {
                index[m as usize] = i as u32;
            }
        }
        ExteriorBasis { n, by_size, index }
    }

    pub fn dim(&self, i: usize) -> usize {
        self.by_size.get(i).map_or(0, |v| v.len())
    }

    pub fn index(&self, mask: u32) -> usize {
        self.index[mask as usize] as usize
    }
}

fn elements(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |s| mask & (1 << s) != 0)
}

/// The Koszul differential Λ^i ⊗ A_a → Λ^{i−1} ⊗ A_{a+1}, split into blocks
/// that are homogeneous for the algebra's multigrading.
#[derive(Clone, Debug)]
pub struct StrandMap<E> {
    pub source_dim: usize,
    pub target_dim: usize,
    pub blocks: Vec<(Vec<SparseRow<E>>, usize)>,
}

/// e_S ⊗ b ↦ Σ_p (−1)^p e_{S∖s_p} ⊗ y_{s_p} b, with s_0 < s_1 < … the
/// elements of S. Target columns are numbered (index of S∖s_p)·dim + c,
/// where c is the ambient coordinate in degree a + 1.
pub fn strand_map<E: RingElem>(
    alg: &GradedAlgebra<E>,
    ext: &ExteriorBasis,
    i: usize,
    a: usize,
) -> Result<StrandMap<E>> {
    let source_pieces = alg.dim(a).ok_or_else(|| Error::OutOfRange {
        what: "graded piece",
        detail: format!("degree {a} not computed"),
    })?;
    if i == 0 || i > alg.n_vars || source_pieces == 0 {
        return Ok(StrandMap {
            source_dim: ext.dim(i) * source_pieces,
            target_dim: 0,
            blocks: Vec::new(),
        });
    }
    let piece = alg.piece(a)?;
    let prod = alg.products(a)?;
    let weights = &alg.variable_weights;
    let tdim = prod.target_dim;
    let sources = &ext.by_size[i];

    let rows: Vec<(Weight, SparseRow<E>)> = sources
        .par_iter()
        .flat_map_iter(|&mask| {
            let mut sw: Weight = vec![0; alg.weight_rank()];
            for s in elements(mask) {
                for (x, y) in sw.iter_mut().zip(&weights[s]) {
                    *x += y;
                }
            }
            (0..piece.dim()).map(move |b| {
                let w: Weight = sw
                    .iter()
                    .zip(&piece.basis_weights[b])
                    .map(|(x, y)| x + y)
                    .collect();
                let mut row = Vec::new();
                for (p, s) in elements(mask).enumerate() {
                    let base = ext.index(mask & !(1 << s)) * tdim;
                    for (c, v) in &prod.rows[b][s] {
                        let v = if p % 2 == 1 { v.elem_neg() } else { v.clone() };
                        row.push(((base + *c as usize) as u32, v));
                    }
                }
                row.sort_by_key(|x| x.0);
                (w, row)
            })
        })
        .collect();

    let mut grouped: BTreeMap<Weight, Vec<SparseRow<E>>> = BTreeMap::new();
    for (w, row) in rows {
        if !row.is_empty() {
            grouped.entry(w).or_default().push(row);
        }
    }
    let blocks = grouped
        .into_values()
        .map(|rows| {
            let mut cols: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|x| x.0)).collect();
            cols.sort_unstable();
            cols.dedup();
            let rows = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(c, v)| (cols.binary_search(&c).unwrap() as u32, v))
                        .collect()
                })
                .collect();
            (rows, cols.len())
        })
        .collect();
    Ok(StrandMap {
        source_dim: sources.len() * piece.dim(),
        target_dim: ext.dim(i - 1) * tdim,
        blocks,
    })
}

/// Which field ranks are taken over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankField {
    /// The algebra's own scalar field.
    #[default]
    Exact,
    /// Reduction modulo a prime; a preview and cross-check only.
    Prime(u64),
}

impl RankField {
    pub fn name<C: Scalar>(self) -> String {
        match self {
            RankField::Exact => C::DOMAIN.to_string(),
            RankField::Prime(p) => format!("fp:{p}"),
        }
    }
}

pub fn strand_rank<C: Scalar>(map: StrandMap<C>, field: RankField) -> Result<usize> {
    let ranks: Vec<Result<usize>> = map
        .blocks
        .into_par_iter()
        .map(|(rows, ncols)| match field {
            RankField::Exact => Ok(C::sparse_rank(rows, ncols)),
            RankField::Prime(p) => C::sparse_rank_mod_p(rows, ncols, p),
        })
        .collect();
    ranks.into_iter().sum()
}

fn map_rank<C: Scalar>(
    alg: &GradedAlgebra<C>,
    ext: &ExteriorBasis,
    i: usize,
    a: usize,
    field: RankField,
) -> Result<usize> {
    strand_rank(strand_map(alg, ext, i, a)?, field)
}

/// β_{i,j} of the algebra as a T-module, over the algebra's own field.
pub fn koszul_strand_betti<C: Scalar>(alg: &GradedAlgebra<C>, i: usize, j: usize) -> Result<usize> {
    koszul_strand_betti_over(alg, i, j, RankField::Exact)
}

/// β_{i,j} = dim Λ^i ⊗ A_{j−i} − rank d_i − rank d_{i+1}.
pub fn koszul_strand_betti_over<C: Scalar>(
    alg: &GradedAlgebra<C>,
    i: usize,
    j: usize,
    field: RankField,
) -> Result<usize> {
    let n = alg.n_vars;
    if i > n {
        return Err(Error::OutOfRange {
            what: "homological degree",
            detail: format!("{i} > {n}"),
        });
    }
    if j < i {
        return Ok(0);
    }
    let a = j - i;
    let dim_a = alg.dim(a).ok_or_else(|| Error::OutOfRange {
        what: "graded piece",
        detail: format!("degree {a} not computed"),
    })?;
    if dim_a == 0 {
        return Ok(0);
    }
    let ext = ExteriorBasis::new(n);
    let out = map_rank(alg, &ext, i, a, field)?;
    let inc = if a >= 1 && i < n {
        map_rank(alg, &ext, i + 1, a - 1, field)?
    } else {
        0
    };
    Ok(ext.dim(i) * dim_a - out - inc)
}

/// Graded Betti numbers β_{i,j}, keyed by (i, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, usize), usize>,
    pub description: String,
    pub field: String,
}

#[derive(Serialize, Deserialize)]
struct Triple {
    i: usize,
    j: usize,
    value: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiRepr {
    description: String,
    field: String,
    entries: Vec<Triple>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiRepr {
            description: self.description.clone(),
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .filter(|(_, &v)| v != 0)
                .map(|(&(i, j), &value)| Triple { i, j, value })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BettiRepr::deserialize(d)?;
        Ok(BettiTable {
            description: r.description,
            field: r.field,
            entries: r
                .entries
                .into_iter()
                .map(|t| ((t.i, t.j), t.value))
                .collect(),
        })
    }
}

impl BettiTable {
    pub fn new(description: impl Into<String>, field: impl Into<String>) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            description: description.into(),
            field: field.into(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: usize) {
        self.entries.insert((i, j), v);
    }

    /// Largest homological degree with a nonzero entry.
    pub fn max_i(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, &v)| v != 0)
            .map(|(k, _)| k.0)
            .max()
            .unwrap_or(0)
    }

    /// Column sums Σ_j β_{i,j} for i = 0..=max_i.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.max_i() + 1];
        for (&(i, _), &v) in self.entries.iter().filter(|(_, &v)| v != 0) {
            t[i] += v;
        }
        t
    }

    /// Nonzero entries as (i, j, value).
    pub fn nonzero(&self) -> Vec<(usize, usize, usize)> {
        self.entries
            .iter()
            .filter(|(_, &v)| v != 0)
            .map(|(&(i, j), &v)| (i, j, v))
            .collect()
    }

    /// Rows indexed by j − i, columns by i, dots for zeros, with a totals row.
    pub fn render_text(&self) -> String {
        let cols = self.max_i() + 1;
        let max_row = self
            .entries
            .iter()
            .filter(|(_, &v)| v != 0)
            .map(|(&(i, j), _)| j.saturating_sub(i))
            .max()
            .unwrap_or(0);
        let mut cells: Vec<Vec<String>> = Vec::new();
        cells.push(
            std::iter::once(String::new())
                .chain((0..cols).map(|i| i.to_string()))
                .collect(),
        );
        cells.push(
            std::iter::once("total:".to_string())
                .chain(self.totals().into_iter().map(|v| v.to_string()))
                .collect(),
        );
        for r in 0..=max_row {
            let mut row = vec![format!("{r}:")];
            for i in 0..cols {
                let v = self.get(i, i + r);
                row.push(if v == 0 { ".".into() } else { v.to_string() });
            }
            cells.push(row);
        }
        let ncols = cols + 1;
        let widths: Vec<usize> = (0..ncols)
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in &cells {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{cell:>w$}", w = widths[c]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// All β_{i,j} with i ≤ i_max and j ≤ j_max that the stored pieces determine.
pub fn betti_table<C: Scalar>(
    alg: &GradedAlgebra<C>,
    i_max: usize,
    j_max: usize,
) -> Result<BettiTable> {
    betti_table_over(alg, i_max, j_max, RankField::Exact)
}

pub fn betti_table_over<C: Scalar>(
    alg: &GradedAlgebra<C>,
    i_max: usize,
    j_max: usize,
    field: RankField,
) -> Result<BettiTable> {
    let n = alg.n_vars;
    let i_max = i_max.min(n);
    let ext = ExteriorBasis::new(n);
    let degrees: Vec<usize> = (0..alg.pieces.len())
        .filter(|&a| alg.pieces[a].dim() > 0)
        .collect();
    // rank of d_i out of Λ^i ⊗ A_a, for every pair some entry needs
    let mut needed: Vec<(usize, usize)> = Vec::new();
    for &a in &degrees {
        for i in 0..=i_max {
            if i + a > j_max {
                continue;
            }
            if alg.piece(a)?.products.is_none() && i > 0 {
                continue;
            }
            needed.push((i, a));
            if a >= 1 && i < n {
                needed.push((i + 1, a - 1));
            }
        }
    }
    needed.sort_unstable();
    needed.dedup();
    let ranks: Vec<Result<((usize, usize), usize)>> = needed
        .par_iter()
        .map(|&(i, a)| Ok(((i, a), map_rank(alg, &ext, i, a, field)?)))
        .collect();
    let ranks: HashMap<(usize, usize), usize> = ranks.into_iter().collect::<Result<_>>()?;
    let mut table = BettiTable::new(alg.description.clone(), field.name::<C>());
    for &a in &degrees {
        for i in 0..=i_max {
            if i + a > j_max || !ranks.contains_key(&(i, a)) {
                continue;
            }
            let out = ranks[&(i, a)];
            let inc = if a >= 1 && i < n {
                ranks[&(i + 1, a - 1)]
            } else {
                0
            };
            table.set(i, i + a, ext.dim(i) * alg.pieces[a].dim() - out - inc);
        }
    }
    Ok(table)
}

/// Checks d_i ∘ d_{i+1} = 0 on Λ^{i+1} ⊗ A_{a−1} → Λ^{i−1} ⊗ A_{a+1}.
pub fn koszul_square_is_zero<C: Scalar>(
    alg: &GradedAlgebra<C>,
    i: usize,
    a: usize,
) -> Result<bool> {
    let n = alg.n_vars;
    if i == 0 || i + 1 > n || a == 0 {
        return Ok(true);
    }
    let ext = ExteriorBasis::new(n);
    let lower = alg.piece(a - 1)?;
    let lower_prod = alg.products(a - 1)?;
    let mid = alg.piece(a)?;
    let mid_prod = alg.products(a)?;
    let basis: Vec<Vec<C>> = mid
        .basis
        .iter()
        .map(|r| densify(r, mid.ambient_dim))
        .collect();
    let solver =
        SpanSolver::new(&basis).ok_or_else(|| Error::Degenerate("dependent basis".into()))?;
    for &mask in &ext.by_size[i + 1] {
        for b in 0..lower.dim() {
            let mut image: BTreeMap<u32, Vec<C>> = BTreeMap::new();
            for (p, s) in elements(mask).enumerate() {
                let v = densify(&lower_prod.rows[b][s], lower_prod.target_dim);
                let v: Vec<C> = if p % 2 == 1 {
                    v.into_iter().map(|x| -x).collect()
                } else {
                    v
                };
                let slot = image
                    .entry(mask & !(1 << s))
                    .or_insert_with(|| vec![C::zero(); lower_prod.target_dim]);
                for (x, y) in slot.iter_mut().zip(v) {
                    *x = x.clone() + &y;
                }
            }
            let mut out: HashMap<(u32, u32), C> = HashMap::new();
            for (sub, v) in image {
                let Some(coords) = solver.coordinates(&v) else {
                    return Ok(false);
                };
                for (bb, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (p, s) in elements(sub).enumerate() {
                        for (col, e) in &mid_prod.rows[bb][s] {
                            let mut t = c.clone() * e;
                            if p % 2 == 1 {
                                t = -t;
                            }
                            let slot = out.entry((sub & !(1 << s), *col)).or_insert_with(C::zero);
                            *slot = slot.clone() + &t;
                        }
                    }
                }
            }
            if out.values().any(|v| !v.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// dim Λ^i V for dim V = n.
pub fn exterior_dim(n: usize, i: usize) -> usize {
    binomial(n as u64, i as u64) as usize
}
