//! Weighted projective spaces `CP(w) = S^{2r+1}/S¹_w`: homology, degrees of
//! the quotient and inclusion maps, the Spin stability degrees and the
//! coordinate map from alcove points.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::alcove::AlcoveGeometry;
use crate::arith::{gcd_all, lcm_all, Q};
use crate::error::{Error, Result};
use crate::homology::FinAbGroup;
use crate::rootdatum::{from_cartan, Family, LieType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedProjectiveSpace {
    weights: Vec<u64>,
}

impl WeightedProjectiveSpace {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(Error::Precondition(format!("weights must be positive, got {weights:?}")));
        }
        Ok(WeightedProjectiveSpace { weights })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Complex dimension `r`.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }
}

/// `H_k(CP(w); Z)`: `Z` for even `k ≤ 2r`, zero otherwise.
pub fn kawasaki_homology(w: &WeightedProjectiveSpace, k: usize) -> FinAbGroup {
    if k.is_multiple_of(2) && k <= 2 * w.dim() {
        FinAbGroup::free(1)
    } else {
        FinAbGroup::trivial()
    }
}

/// Degree on `H_{2k}` of `CP^r → CP(w)`: the lcm over `(k+1)`-subsets of
/// `∏ w_i / gcd w_i`.
pub fn proj_degree(w: &[u64], k: usize) -> Result<u64> {
    if k >= w.len() {
        return Err(Error::Precondition(format!("k = {k} exceeds dimension {}", w.len() as i64 - 1)));
    }
    let mut acc = 1u64;
    for_each_subset(w.len(), k + 1, &mut |idx| {
        let prod: u64 = idx.iter().map(|&i| w[i]).product();
        let g = gcd_all(idx.iter().map(|&i| w[i]));
        acc = lcm_all([acc, prod / g]);
    });
    Ok(acc)
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Degree on `H_{2k}` of the coordinate inclusion `CP(w_S) → CP(w)`. Both
/// routes around the square with the unweighted spaces agree, so it equals
/// `proj_degree(w, k) / proj_degree(w_S, k)`.
pub fn inclusion_degree(w: &[u64], subset: &[usize], k: usize) -> Result<u64> {
    if subset.len() < k + 1 {
        return Err(Error::Precondition(format!("|S| = {} is below k + 1 = {}", subset.len(), k + 1)));
    }
    if let Some(&i) = subset.iter().find(|&&i| i >= w.len()) {
        return Err(Error::Precondition(format!("index {i} out of range")));
    }
    let sub: Vec<u64> = subset.iter().map(|&i| w[i]).collect();
    let full = proj_degree(w, k)?;
    let part = proj_degree(&sub, k)?;
    if full % part != 0 {
        return Err(Error::InvariantBreach(format!("{part} does not divide {full} for w = {w:?}, S = {subset:?}")));
    }
    Ok(full / part)
}

/// Degree on `H_2` of `CP(1,1) → CP(1,…,1) → CP(w)` through the coordinates
/// `{0, j}`, computed around the other side of the square:
/// `CP(1,1) → CP(w_0, w_j) → CP(w)`.
pub fn composite_degree_h2(w: &[u64], j: usize) -> Result<u64> {
    if j == 0 || j >= w.len() {
        return Err(Error::Precondition(format!("node {j} must lie in 1..{}", w.len())));
    }
    let pair = [w[0], w[j]];
    Ok(proj_degree(&pair, 1)? * inclusion_degree(w, &[0, j], 1)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinParity {
    /// `Spin(2ℓ−2) → Spin(2ℓ)`, type `D_{ℓ−1} ⊂ D_ℓ`.
    Even,
    /// `Spin(2ℓ−1) → Spin(2ℓ+1)`, type `B_{ℓ−1} ⊂ B_ℓ`.
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinDegree {
    pub ell: usize,
    pub parity: SpinParity,
    pub homology_degree: usize,
    /// Absolute value of the degree.
    pub degree: u64,
    /// Both groups vanish (odd homology degree); `degree` is then 1.
    pub zero_groups: bool,
}

/// Coroot integers in Bourbaki numbering without canonicalizing low ranks.
pub fn raw_coroot_integers(family: Family, rank: usize) -> Result<Vec<u64>> {
    let t = LieType::new(family, rank)?;
    Ok(from_cartan(t, t.cartan())?.coroot_integers)
}

fn spin_family(parity: SpinParity) -> (Family, usize) {
    match parity {
        SpinParity::Even => (Family::D, 2),
        SpinParity::Odd => (Family::B, 1),
    }
}

/// Top homology degree covered by the stability statement.
pub fn spin_threshold(ell: usize, parity: SpinParity) -> usize {
    match parity {
        SpinParity::Even => (2 * ell).saturating_sub(6),
        SpinParity::Odd => (2 * ell).saturating_sub(4),
    }
}

/// Degree on `H_k` of the map `CP(n^∨_{ℓ−1}) → CP(n^∨_ℓ)` induced by the
/// Spin inclusion, obtained by factoring both coordinate inclusions of the
/// common sub-space spanned by the leading coordinates.
fn spin_ratio(ell: usize, parity: SpinParity, half: usize) -> Result<u64> {
    let (family, drop) = spin_family(parity);
    let big = raw_coroot_integers(family, ell)?;
    let small = raw_coroot_integers(family, ell - 1)?;
    let lead = ell - drop;
    if big[..lead] != small[..lead] {
        return Err(Error::InvariantBreach(format!("leading coroot integers differ: {big:?} vs {small:?}")));
    }
    let s: Vec<usize> = (0..lead).collect();
    let into_big = inclusion_degree(&big, &s, half)?;
    let into_small = inclusion_degree(&small, &s, half)?;
    if into_big % into_small != 0 {
        return Err(Error::InvariantBreach(format!("degree ratio {into_big}/{into_small} is not integral")));
    }
    Ok(into_big / into_small)
}

pub fn spin_stability_degree(ell: usize, parity: SpinParity, k: usize) -> Result<SpinDegree> {
    let min_ell = match parity {
        SpinParity::Even => 4,
        SpinParity::Odd => 3,
    };
    if ell < min_ell {
        return Err(Error::Precondition(format!("ℓ = {ell} is below {min_ell} for the {parity:?} case")));
    }
    let threshold = spin_threshold(ell, parity);
    if k > threshold {
        return Err(Error::Precondition(format!("homology degree {k} is above the stable range {threshold}")));
    }
    let mut out = SpinDegree { ell, parity, homology_degree: k, degree: 1, zero_groups: k % 2 == 1 };
    if k % 2 == 1 {
        return Ok(out);
    }
    out.degree = if ell == 3 && k == 2 {
        let chain = spin5_spin7_chain()?;
        let direct = spin_ratio(3, SpinParity::Odd, 1)?;
        if chain.composite != direct {
            return Err(Error::InvariantBreach(format!("Spin(5)→Spin(7): chain {} vs formula {direct}", chain.composite)));
        }
        chain.composite
    } else {
        spin_ratio(ell, parity, k / 2)?
    };
    Ok(out)
}

/// The degree of `Spin(5) → Spin(7)` on `H_2`, assembled from the
/// neighbouring stable maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinChain {
    pub deg_5_6: u64,
    pub deg_6_8: u64,
    pub deg_7_9: u64,
    pub deg_7_8: u64,
    pub deg_8_9: u64,
    pub deg_6_7: u64,
    pub composite: u64,
}

pub fn spin5_spin7_chain() -> Result<SpinChain> {
    let deg_6_8 = spin_ratio(4, SpinParity::Even, 1)?;
    let deg_7_9 = spin_ratio(4, SpinParity::Odd, 1)?;
    // deg(7→9) = deg(7→8)·deg(8→9) = 1 forces both factors to be 1
    if deg_7_9 != 1 {
        return Err(Error::InvariantBreach(format!("Spin(7)→Spin(9) has degree {deg_7_9}")));
    }
    let (deg_7_8, deg_8_9) = (1, 1);
    let deg_6_7 = deg_6_8 / deg_7_8;
    // Spin(5) ⊂ Spin(6) on the alcove level is CP(1,1,1) ⊂ CP(1,1,1,1)
    let b2 = raw_coroot_integers(Family::B, 2)?;
    let d3 = raw_coroot_integers(Family::D, 3)?;
    let deg_5_6 = proj_degree(&d3, 1)? / proj_degree(&b2, 1)?;
    Ok(SpinChain { deg_5_6, deg_6_8, deg_7_9, deg_7_8, deg_8_9, deg_6_7, composite: deg_5_6 * deg_6_7 })
}

/// Homogeneous coordinates of unit norm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WpsPoint {
    pub coords: Vec<Complex64>,
}

impl WpsPoint {
    /// Normalizes `(a_0, a_1 t_1, …, a_r t_r)`.
    pub fn from_parts(a: &[f64], t: &[Complex64]) -> Result<WpsPoint> {
        if a.len() != t.len() + 1 {
            return Err(Error::Precondition(format!("{} barycentric and {} torus coordinates", a.len(), t.len())));
        }
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::Precondition("zero coordinate vector".into()));
        }
        let mut coords = vec![Complex64::new(a[0] / norm, 0.0)];
        coords.extend(a[1..].iter().zip(t).map(|(x, z)| z * (x / norm)));
        Ok(WpsPoint { coords })
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

const PHASE_TOL: f64 = 1e-9;

fn check_phases(t: &[Complex64]) -> Result<()> {
    match t.iter().find(|z| (z.norm() - 1.0).abs() > PHASE_TOL) {
        Some(z) => Err(Error::Precondition(format!("torus coordinate {z} is not of unit modulus"))),
        None => Ok(()),
    }
}

/// `(a_0, a_1 t_1, …, a_r t_r)/|a|` with `a` the barycentric coordinates of
/// `x` and `t_i` the coordinates along the simple coroot circles.
pub fn rep_to_wps(geometry: &AlcoveGeometry, x: &[Q], t: &[Complex64]) -> Result<WpsPoint> {
    if x.len() != geometry.rank() || t.len() != geometry.rank() {
        return Err(Error::Precondition("dimension mismatch".into()));
    }
    check_phases(t)?;
    if !geometry.contains(x) {
        return Err(Error::OutsideAlcove(format!("{x:?}")));
    }
    let a: Vec<f64> = geometry.barycentric(x).iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect();
    WpsPoint::from_parts(&a, t)
}

/// Whether `q = λ·p` for some `λ ∈ S¹` acting with weights `w`.
pub fn orbit_equal(w: &[u64], p: &WpsPoint, q: &WpsPoint, tol: f64) -> Result<bool> {
    if tol <= 0.0 {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    if p.coords.len() != w.len() || q.coords.len() != w.len() {
        return Err(Error::Precondition("dimension mismatch".into()));
    }
    let (m, pm) = p
        .coords
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("nonempty");
    if pm.norm() < 1e-12 {
        return Err(Error::Precondition("point has no nonzero coordinate".into()));
    }
    let ratio = q.coords[m] / pm;
    if (ratio.norm() - 1.0).abs() > tol {
        return Ok(false);
    }
    let wm = w[m] as f64;
    let base = ratio.arg() / wm;
    for root in 0..w[m] {
        let lambda = Complex64::from_polar(1.0, base + std::f64::consts::TAU * root as f64 / wm);
        let close = p
            .coords
            .iter()
            .zip(&q.coords)
            .zip(w)
            .all(|((a, b), &wi)| (lambda.powu(wi as u32) * a - b).norm() <= tol);
        if close {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The alcove-level description of `Rep(Z², Spin(m)) → Rep(Z², Spin(m+2))`
/// as a map `CP(n^∨_{ℓ−1}) → CP(n^∨_ℓ)`. `a` are barycentric coordinates for
/// the smaller group and `t` its torus coordinates.
pub fn spin_stability_map(ell: usize, parity: SpinParity, a: &[f64], t: &[Complex64]) -> Result<WpsPoint> {
    spin_map_inner(ell, parity, a, t, None)
}

/// Both torus branches of the even map, `σ⁺` then `σ⁻`, regardless of the
/// ordering of `a_{ℓ−2}` and `a_{ℓ−1}`.
pub fn spin_even_branches(ell: usize, a: &[f64], t: &[Complex64]) -> Result<(WpsPoint, WpsPoint)> {
    Ok((
        spin_map_inner(ell, SpinParity::Even, a, t, Some(true))?,
        spin_map_inner(ell, SpinParity::Even, a, t, Some(false))?,
    ))
}

fn spin_map_inner(ell: usize, parity: SpinParity, a: &[f64], t: &[Complex64], plus: Option<bool>) -> Result<WpsPoint> {
    if ell < 4 {
        return Err(Error::Precondition(format!("ℓ = {ell} is below 4")));
    }
    if a.len() != ell || t.len() != ell - 1 {
        return Err(Error::Precondition(format!("expected {ell} barycentric and {} torus coordinates", ell - 1)));
    }
    check_phases(t)?;
    if a.iter().any(|&x| x < -1e-12) || (a.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::OutsideAlcove(format!("{a:?}")));
    }
    let (b, s) = match parity {
        SpinParity::Even => {
            let (x, y) = (a[ell - 2], a[ell - 1]);
            let gap = (y - x).abs() / 2.0;
            let mut b = a[..ell - 2].to_vec();
            b.extend([2.0 * x.min(y), gap, gap]);
            // t is indexed from 1 in the formulas
            let (t2, t1) = (t[ell - 2], t[ell - 3]);
            let mut s = t[..ell - 3].to_vec();
            let single = if plus.unwrap_or(x <= y) { t2 } else { t1 };
            s.extend([t2 * t1, single, single]);
            (b, s)
        }
        SpinParity::Odd => {
            let mut b = a.to_vec();
            b.push(0.0);
            let last = t[ell - 2];
            let mut s = t[..ell - 2].to_vec();
            s.extend([last * last, last]);
            (b, s)
        }
    };
    WpsPoint::from_parts(&b, &s)
}

/// Weights of the target of [`spin_stability_map`].
pub fn spin_target_weights(ell: usize, parity: SpinParity) -> Result<Vec<u64>> {
    raw_coroot_integers(spin_family(parity).0, ell)
}
