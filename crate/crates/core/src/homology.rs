//! Exact integer linear algebra: Smith normal form, chain homology and
//! finitely generated abelian groups.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_t`
/// with `d_1 | d_2 | … | d_t` and every `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic(0, &[order])
    }

    /// Builds the group `Z^free ⊕ ⊕ Z/orders[i]` in invariant-factor form.
    /// Orders equal to 1 are dropped; an order of 0 contributes a free summand.
    pub fn from_cyclic(free: usize, orders: &[u64]) -> Self {
        let mut free_rank = free;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &m in orders {
            if m == 0 {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(m) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            // largest powers go to the last invariant factors
            for (slot, q) in torsion.iter_mut().rev().zip(powers.iter().rev()) {
                *slot *= q;
            }
        }
        torsion.retain(|&d| d > 1);
        FinAbGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.torsion.len() <= 1
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        FinAbGroup::from_cyclic(self.free_rank + other.free_rank, &orders)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Tensor product of finitely generated abelian groups, expanded bilinearly
/// with `Z/m ⊗ Z/n = Z/gcd(m, n)`.
pub fn tensor_finab(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    let mut orders = Vec::new();
    for _ in 0..b.free_rank {
        orders.extend_from_slice(&a.torsion);
    }
    for _ in 0..a.free_rank {
        orders.extend_from_slice(&b.torsion);
    }
    for &d in &a.torsion {
        for &e in &b.torsion {
            orders.push(d.gcd(&e));
        }
    }
    FinAbGroup::from_cyclic(a.free_rank * b.free_rank, &orders)
}

/// Sparse integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: i64) {
        let v = self.get(i, j) + x;
        self.set(i, j, v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), x) in &self.entries {
            out[i][j] = x.clone();
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for (&(i, j), x) in &self.entries {
            t.entries.insert((j, i), x.clone());
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(i, j), x) in &other.entries {
            by_row[i].push((j, x));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(i, k), x) in &self.entries {
            for &(j, y) in &by_row[k] {
                *acc.entry((i, j)).or_default() += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        IntMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    /// Applies a permutation to rows and columns: entry `(i, j)` moves to
    /// `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for (&(i, j), x) in &self.entries {
            out.entries.insert((row_perm[i], col_perm[j]), x.clone());
        }
        out
    }
}

/// Smith normal form `U·M·V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `D`, each dividing the next.
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_dense();
    let mut u = IntMatrix::identity(rows).to_dense();
    let mut v = IntMatrix::identity(cols).to_dense();
    let divisors = diagonalize(&mut a, Some((&mut u, &mut v)));
    SmithForm {
        u: IntMatrix::from_dense(rows, rows, &u),
        d: IntMatrix::from_dense(rows, cols, &a),
        v: IntMatrix::from_dense(cols, cols, &v),
        divisors,
    }
}

type Transforms<'a> = (&'a mut Vec<Vec<BigInt>>, &'a mut Vec<Vec<BigInt>>);

/// In-place dense Smith reduction; returns the nonzero diagonal.
fn diagonalize(a: &mut [Vec<BigInt>], mut tr: Option<Transforms<'_>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return divisors;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            if let Some((u, v)) = tr.as_mut() {
                u.swap(t, pi);
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(a, i, t, &q);
                if let Some((u, _)) = tr.as_mut() {
                    row_axpy(u, i, t, &q);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(a, j, t, &q);
                if let Some((_, v)) = tr.as_mut() {
                    col_axpy(v, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            if let Some(i) = bad {
                let minus_one = -BigInt::one();
                row_axpy(a, t, i, &minus_one);
                if let Some((u, _)) = tr.as_mut() {
                    row_axpy(u, t, i, &minus_one);
                }
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            if let Some((u, _)) = tr.as_mut() {
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        divisors.push(a[t][t].clone());
    }
    divisors
}

/// row[dst] -= q * row[src]
fn row_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (d, s) = if dst < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        if !row[src].is_zero() {
            let delta = q * &row[src];
            row[dst] -= delta;
        }
    }
}

/// Nonzero Smith invariants of `m`, without transforms.
///
/// Unit pivots are eliminated sparsely first; whatever is left over goes
/// through the dense reduction.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    match sparse_unit_reduce(m) {
        Some((units, mut residual)) => {
            let mut out = vec![BigInt::one(); units];
            out.extend(diagonalize(&mut residual, None));
            out
        }
        None => diagonalize(&mut m.to_dense(), None),
    }
}

/// Sparse ±1-pivot elimination. Returns the number of unit pivots and the
/// dense residual, or `None` if an entry leaves the `i64` range.
fn sparse_unit_reduce(m: &IntMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<Option<Vec<(usize, i64)>>> = vec![Some(Vec::new()); m.rows];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.cols];
    for (&(i, j), x) in &m.entries {
        rows[i].as_mut().unwrap().push((j, x.to_i64()?));
        col_rows[j].push(i);
    }
    let mut order: Vec<usize> = (0..m.cols).collect();
    order.sort_by_key(|&j| (col_rows[j].len(), j));
    let mut dead_col = vec![false; m.cols];
    let mut units = 0;
    let mut progress = true;
    while progress {
        progress = false;
        for &c in &order {
            if dead_col[c] {
                continue;
            }
            let mut live: Vec<usize> = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r].as_ref().is_some_and(|row| entry(row, c).is_some()))
                .collect();
            live.sort_unstable();
            live.dedup();
            col_rows[c] = live.clone();
            if live.is_empty() {
                dead_col[c] = true;
                continue;
            }
            let pivot = live
                .iter()
                .copied()
                .filter(|&r| entry(rows[r].as_ref().unwrap(), c).unwrap().abs() == 1)
                .min_by_key(|&r| (rows[r].as_ref().unwrap().len(), r));
            let Some(p) = pivot else { continue };
            let prow = rows[p].take().unwrap();
            let pc = entry(&prow, c).unwrap();
            for &r in &live {
                if r == p {
                    continue;
                }
                let row = rows[r].as_ref().unwrap();
                let f = entry(row, c).unwrap().checked_mul(pc)?;
                let merged = merge_sub(row, &prow, f)?;
                for &(j, _) in &merged {
                    if entry(row, j).is_none() {
                        col_rows[j].push(r);
                    }
                }
                rows[r] = Some(merged);
            }
            dead_col[c] = true;
            units += 1;
            progress = true;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows)
        .filter(|&r| rows[r].as_ref().is_some_and(|row| !row.is_empty()))
        .collect();
    let mut live_cols: Vec<usize> = live_rows
        .iter()
        .flat_map(|&r| rows[r].as_ref().unwrap().iter().map(|&(j, _)| j))
        .collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let col_pos: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut residual = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (k, &r) in live_rows.iter().enumerate() {
        for &(j, x) in rows[r].as_ref().unwrap() {
            residual[k][col_pos[&j]] = BigInt::from(x);
        }
    }
    Some((units, residual))
}

fn entry(row: &[(usize, i64)], c: usize) -> Option<i64> {
    row.binary_search_by_key(&c, |&(j, _)| j).ok().map(|k| row[k].1)
}

/// `row - f * pivot`, dropping zeros; `None` on overflow.
fn merge_sub(row: &[(usize, i64)], pivot: &[(usize, i64)], f: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ja = row.get(a).map_or(usize::MAX, |e| e.0);
        let jb = pivot.get(b).map_or(usize::MAX, |e| e.0);
        let (j, x) = if ja < jb {
            a += 1;
            (ja, row[a - 1].1)
        } else if jb < ja {
            b += 1;
            (jb, pivot[b - 1].1.checked_mul(f)?.checked_neg()?)
        } else {
            a += 1;
            b += 1;
            (ja, row[a - 1].1.checked_sub(pivot[b - 1].1.checked_mul(f)?)?)
        };
        if x != 0 {
            out.push((j, x));
        }
    }
    Some(out)
}

/// Homology of the chain complex `0 → C_N → … → C_1 → C_0 → 0`.
///
/// `boundaries[k]` is `∂_{k+1}: C_{k+1} → C_k`, a `dim C_k × dim C_{k+1}`
/// matrix. Returns `H_0, …, H_N`.
pub fn chain_homology(boundaries: &[IntMatrix]) -> Result<Vec<FinAbGroup>> {
    if boundaries.is_empty() {
        return Ok(Vec::new());
    }
    for (k, pair) in boundaries.windows(2).enumerate() {
        if pair[0].cols != pair[1].rows {
            return Err(Error::Precondition(format!(
                "boundary dimensions disagree at degree {}",
                k + 1
            )));
        }
        if !pair[0].mul(&pair[1]).is_zero() {
            return Err(Error::NotAComplex(k + 1));
        }
    }
    let mut dims = vec![boundaries[0].rows];
    dims.extend(boundaries.iter().map(|b| b.cols));
    let divisors: Vec<Vec<BigInt>> = boundaries.iter().map(elementary_divisors).collect();
    let rank = |k: usize| -> usize {
        // rank of ∂_k : C_k → C_{k-1}
        if k == 0 || k > boundaries.len() {
            0
        } else {
            divisors[k - 1].len()
        }
    };
    let mut out = Vec::with_capacity(dims.len());
    for (k, &dim) in dims.iter().enumerate() {
        let free = dim - rank(k) - rank(k + 1);
        let torsion: Vec<u64> = if k < boundaries.len() {
            divisors[k]
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("torsion coefficient exceeds u64"))
                .collect()
        } else {
            Vec::new()
        };
        out.push(FinAbGroup::from_cyclic(free, &torsion));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[i64]) -> Vec<BigInt> {
        d.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_identity_and_zero() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.divisors, diag(&[1, 1, 1]));
        let z = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert!(z.divisors.is_empty());
        assert!(z.d.is_zero());
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, diag(&[1, 6]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_transforms_reconstruct() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, diag(&[2, 6, 12]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn group_normal_form() {
        assert_eq!(FinAbGroup::from_cyclic(0, &[2, 3]), FinAbGroup::cyclic(6));
        assert_eq!(FinAbGroup::from_cyclic(1, &[4, 6]).torsion, vec![2, 12]);
        assert_eq!(FinAbGroup::from_cyclic(0, &[1, 1]), FinAbGroup::trivial());
        assert_eq!(FinAbGroup::from_cyclic(2, &[2, 2]).to_string(), "Z^2 + (Z/2)^2");
    }

    #[test]
    fn tensor_examples() {
        let z2 = FinAbGroup::cyclic(2);
        assert_eq!(tensor_finab(&z2, &z2), z2);
        let v4 = FinAbGroup::from_cyclic(0, &[2, 2]);
        assert_eq!(tensor_finab(&v4, &v4), FinAbGroup::from_cyclic(0, &[2, 2, 2, 2]));
        assert!(tensor_finab(&z2, &FinAbGroup::cyclic(3)).is_trivial());
        assert_eq!(tensor_finab(&FinAbGroup::free(2), &z2), FinAbGroup::from_cyclic(0, &[2, 2]));
    }

    #[test]
    fn circle_homology() {
        let h = chain_homology(&[IntMatrix::zeros(1, 1)]).unwrap();
        assert_eq!(h, vec![FinAbGroup::free(1), FinAbGroup::free(1)]);
    }

    /// Simplicial boundary matrices for the faces of a vertex list.
    fn boundary(faces_hi: &[Vec<usize>], faces_lo: &[Vec<usize>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(faces_lo.len(), faces_hi.len());
        for (j, s) in faces_hi.iter().enumerate() {
            for k in 0..s.len() {
                let mut f = s.clone();
                f.remove(k);
                let i = faces_lo.iter().position(|x| *x == f).unwrap();
                m.add_to(i, j, if k % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                out.push((0..n).filter(|&i| mask & (1 << i) != 0).collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn tetrahedron_boundary_is_sphere() {
        let v = subsets(4, 1);
        let e = subsets(4, 2);
        let t = subsets(4, 3);
        let h = chain_homology(&[boundary(&e, &v), boundary(&t, &e)]).unwrap();
        assert_eq!(h, vec![FinAbGroup::free(1), FinAbGroup::trivial(), FinAbGroup::free(1)]);
    }

    #[test]
    fn rp2_six_vertices() {
        let tris: Vec<Vec<usize>> = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ]
        .iter()
        .map(|t| t.to_vec())
        .collect();
        let mut edges: Vec<Vec<usize>> = tris
            .iter()
            .flat_map(|t| [vec![t[0], t[1]], vec![t[0], t[2]], vec![t[1], t[2]]])
            .collect();
        edges.sort();
        edges.dedup();
        let verts = subsets(6, 1);
        let h = chain_homology(&[boundary(&edges, &verts), boundary(&tris, &edges)]).unwrap();
        assert_eq!(h[0], FinAbGroup::free(1));
        assert_eq!(h[1], FinAbGroup::cyclic(2));
        assert!(h[2].is_trivial());
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_rows(&[vec![1]]);
        let d2 = IntMatrix::from_rows(&[vec![1]]);
        assert_eq!(chain_homology(&[d1, d2]), Err(Error::NotAComplex(1)));
    }

    #[test]
    fn sparse_and_dense_agree() {
        let m = IntMatrix::from_rows(&[
            vec![1, 2, 0, 3],
            vec![0, 4, 1, 0],
            vec![2, 0, 6, 1],
            vec![3, 6, 9, 12],
        ]);
        let dense = smith_normal_form(&m).divisors;
        assert_eq!(elementary_divisors(&m), dense);
    }
}
