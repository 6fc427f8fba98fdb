//! Numerical model of the generator `β: ∂P → Hom(Z², SU(2))` on the
//! boundary of the prism `P = Δ × I`, its projected degree, and the
//! commutative cocycle on `S^4` built from it.
//!
//! Conventions: `Δ = {0 ≤ s ≤ t ≤ 1}` with side walls `s = 0`, `s = t` and
//! `t = 1`. The null homotopy of the loop `γ` tilts the latitude circle of
//! radius `1 − u` in the `(a, b, c)` sphere up to the pole and rotates it back
//! to the identity, so its image stays in `d = 0`.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Unit quaternion `(a, b, c, d)` for the matrix `[[a+bi, c+di], [−c+di, a−bi]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SU2Point {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SU2Point {
    pub const IDENTITY: SU2Point = SU2Point { a: 1.0, b: 0.0, c: 0.0, d: 0.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        SU2Point { a, b, c, d }
    }

    pub fn norm(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn normalized(&self) -> SU2Point {
        let n = self.norm();
        SU2Point::new(self.a / n, self.b / n, self.c / n, self.d / n)
    }

    /// Matrix product in the stated convention.
    pub fn mul(&self, o: &SU2Point) -> SU2Point {
        // α = a + bi, β = c + di; (α, β)(α', β') = (αα' − β·conj β', αβ' + β·conj α')
        let (ar, ai, br, bi) = (self.a, self.b, self.c, self.d);
        let (cr, ci, dr, di) = (o.a, o.b, o.c, o.d);
        SU2Point::new(
            ar * cr - ai * ci - (br * dr + bi * di),
            ar * ci + ai * cr - (bi * dr - br * di),
            ar * dr - ai * di + (br * cr + bi * ci),
            ar * di + ai * dr + (bi * cr - br * ci),
        )
    }

    pub fn inverse(&self) -> SU2Point {
        SU2Point::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn dist(&self, o: &SU2Point) -> f64 {
        SU2Point::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d).norm()
    }

    fn imag(&self) -> [f64; 3] {
        [self.b, self.c, self.d]
    }
}

/// `‖x y x⁻¹ y⁻¹ − 1‖`.
pub fn commutator_distance(x: &SU2Point, y: &SU2Point) -> f64 {
    x.mul(y).mul(&x.inverse()).mul(&y.inverse()).dist(&SU2Point::IDENTITY)
}

/// The loop `s ↦ diag(e^{2πis}, e^{−2πis})`.
pub fn gamma(s: f64) -> SU2Point {
    SU2Point::new((TAU * s).cos(), (TAU * s).sin(), 0.0, 0.0)
}

/// Based null homotopy of `γ`: `h(s, 0) = γ(s)`, `h(0, u) = h(1, u) = h(s, 1) = 1`.
pub fn null_homotopy_h(s: f64, u: f64) -> SU2Point {
    let r = 1.0 - u;
    let lift = (1.0 - r * r).max(0.0).sqrt();
    let (a, b, c) = (r * (TAU * s).cos(), r * (TAU * s).sin(), lift);
    // rotation of the (a, c)-plane taking (r, lift) to (1, 0)
    SU2Point::new(a * r + c * lift, b, -a * lift + c * r, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Facet {
    Bottom,
    Top,
    /// `s = 0`
    WallS0,
    /// `s = t`
    WallDiagonal,
    /// `t = 1`
    WallT1,
}

impl Facet {
    pub const ALL: [Facet; 5] = [Facet::Bottom, Facet::Top, Facet::WallS0, Facet::WallDiagonal, Facet::WallT1];

    fn outward(self) -> [f64; 3] {
        match self {
            Facet::Bottom => [0.0, 0.0, -1.0],
            Facet::Top => [0.0, 0.0, 1.0],
            Facet::WallS0 => [-1.0, 0.0, 0.0],
            Facet::WallDiagonal => [1.0, -1.0, 0.0],
            Facet::WallT1 => [0.0, 1.0, 0.0],
        }
    }

    fn slack(self, p: &PrismPoint) -> f64 {
        match self {
            Facet::Bottom => p.u.abs(),
            Facet::Top => (1.0 - p.u).abs(),
            Facet::WallS0 => p.s.abs(),
            Facet::WallDiagonal => (p.t - p.s).abs(),
            Facet::WallT1 => (1.0 - p.t).abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrismPoint {
    pub s: f64,
    pub t: f64,
    pub u: f64,
}

pub const BOUNDARY_TOL: f64 = 1e-12;

impl PrismPoint {
    pub fn new(s: f64, t: f64, u: f64) -> Self {
        PrismPoint { s, t, u }
    }

    fn inside(&self, tol: f64) -> bool {
        self.s >= -tol && self.t - self.s >= -tol && self.t <= 1.0 + tol && self.u >= -tol && self.u <= 1.0 + tol
    }

    /// Facets containing the point.
    pub fn facets(&self, tol: f64) -> Vec<Facet> {
        if !self.inside(tol) {
            return Vec::new();
        }
        Facet::ALL.into_iter().filter(|f| f.slack(self) <= tol).collect()
    }

    fn coords(&self) -> [f64; 3] {
        [self.s, self.t, self.u]
    }
}

/// `β` evaluated with the formula of one facet.
pub fn beta_on_facet(facet: Facet, p: &PrismPoint) -> (SU2Point, SU2Point) {
    match facet {
        Facet::Bottom => (gamma(p.s), gamma(p.t)),
        Facet::Top => (SU2Point::IDENTITY, SU2Point::IDENTITY),
        Facet::WallS0 => (SU2Point::IDENTITY, null_homotopy_h(p.t, p.u)),
        Facet::WallDiagonal => {
            let h = null_homotopy_h(p.t, p.u);
            (h, h)
        }
        Facet::WallT1 => (null_homotopy_h(p.s, p.u), SU2Point::IDENTITY),
    }
}

pub fn beta(p: &PrismPoint) -> Result<(SU2Point, SU2Point)> {
    match p.facets(BOUNDARY_TOL).first() {
        Some(&f) => Ok(beta_on_facet(f, p)),
        None => Err(Error::Precondition(format!("{p:?} is not on the boundary of the prism"))),
    }
}

const COMMUTE_TOL: f64 = 1e-9;

/// A commuting pair in `SU(2)` as a point of `Rep(Z², SU(2)) ≅ CP(1,1) = S²`:
/// common axis, angles reduced to the alcove, then the Hopf map of
/// `(a_0, a_1 t)`.
pub fn rep_project_su2(x: &SU2Point, y: &SU2Point) -> Result<[f64; 3]> {
    let comm = commutator_distance(x, y);
    if comm > COMMUTE_TOL {
        return Err(Error::Precondition(format!("pair does not commute (residual {comm:e})")));
    }
    let (ix, iy) = (x.imag(), y.imag());
    let len = |v: &[f64; 3]| v.iter().map(|c| c * c).sum::<f64>().sqrt();
    let dot = |v: &[f64; 3], w: &[f64; 3]| v.iter().zip(w).map(|(p, q)| p * q).sum::<f64>();
    let (lx, ly) = (len(&ix), len(&iy));
    let mut axis = if lx >= ly && lx > 0.0 {
        ix.map(|c| c / lx)
    } else if ly > 0.0 {
        iy.map(|c| c / ly)
    } else {
        [1.0, 0.0, 0.0]
    };
    // Weyl reflection flips the axis; fix it by asking x to rotate forwards
    if dot(&ix, &axis) < 0.0 {
        axis = axis.map(|c| -c);
    }
    let phase_x = dot(&ix, &axis).atan2(x.a) / TAU;
    let phase_y = dot(&iy, &axis).atan2(y.a) / TAU;
    let a1 = 2.0 * phase_x;
    let a0 = 1.0 - a1;
    let norm = (a0 * a0 + a1 * a1).sqrt();
    let (z0, z1r, z1i) = (a0 / norm, a1 / norm * (TAU * phase_y).cos(), a1 / norm * (TAU * phase_y).sin());
    // z0·conj(z1) with z0 real
    Ok([2.0 * z0 * z1r, -2.0 * z0 * z1i, z0 * z0 - (z1r * z1r + z1i * z1i)])
}

/// Triangulated `∂P` on the grid of mesh size `1/n`, with outward
/// orientation.
#[derive(Clone, Debug)]
pub struct BoundaryMesh {
    pub n: usize,
    pub points: Vec<PrismPoint>,
    pub triangles: Vec<[usize; 3]>,
}

impl BoundaryMesh {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("mesh size must be positive".into()));
        }
        let mut index = std::collections::HashMap::new();
        let mut points = Vec::new();
        let mut vid = |g: [usize; 3]| -> usize {
            *index.entry(g).or_insert_with(|| {
                let f = n as f64;
                points.push(PrismPoint::new(g[0] as f64 / f, g[1] as f64 / f, g[2] as f64 / f));
                points.len() - 1
            })
        };
        let mut tris: Vec<([[usize; 3]; 3], Facet)> = Vec::new();
        // bottom and top over Δ
        for (k, facet) in [(0, Facet::Bottom), (n, Facet::Top)] {
            for i in 0..n {
                tris.push(([[i, i, k], [i, i + 1, k], [i + 1, i + 1, k]], facet));
                for j in i + 1..n {
                    tris.push(([[i, j, k], [i + 1, j, k], [i + 1, j + 1, k]], facet));
                    tris.push(([[i, j, k], [i + 1, j + 1, k], [i, j + 1, k]], facet));
                }
            }
        }
        // side walls, each a square grid in (position along the edge, u)
        let walls: [(Facet, fn(usize, usize, usize) -> [usize; 3]); 3] = [
            (Facet::WallS0, |p, k, _| [0, p, k]),
            (Facet::WallDiagonal, |p, k, _| [p, p, k]),
            (Facet::WallT1, |p, k, n| [p, n, k]),
        ];
        for (facet, at) in walls {
            for p in 0..n {
                for k in 0..n {
                    let (a, b, c, d) = (at(p, k, n), at(p + 1, k, n), at(p + 1, k + 1, n), at(p, k + 1, n));
                    tris.push(([a, b, c], facet));
                    tris.push(([a, c, d], facet));
                }
            }
        }
        let mut triangles = Vec::with_capacity(tris.len());
        for (g, facet) in tris {
            let ids = [vid(g[0]), vid(g[1]), vid(g[2])];
            let to_f = |v: [usize; 3]| v.map(|x| x as f64);
            let (p0, p1, p2) = (to_f(g[0]), to_f(g[1]), to_f(g[2]));
            let normal = cross(&sub3(&p1, &p0), &sub3(&p2, &p0));
            if dot3(&normal, &facet.outward()) >= 0.0 {
                triangles.push(ids);
            } else {
                triangles.push([ids[0], ids[2], ids[1]]);
            }
        }
        Ok(BoundaryMesh { n, points, triangles })
    }
}

fn sub3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let n = dot3(&v, &v).sqrt();
    v.map(|c| c / n)
}

/// Neumaier-compensated sum in slice order.
fn compensated_sum(xs: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &x in xs {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + comp
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeEstimate {
    pub degree: i64,
    /// Total signed area divided by `4π`.
    pub raw: f64,
    pub residue: f64,
    /// Largest angular edge length among image triangles.
    pub max_diameter: f64,
    pub mesh: usize,
    pub triangles: usize,
}

pub const DEGREE_RESIDUE_TOL: f64 = 1e-3;

/// Degree of a map `∂P → S²` sampled on the mesh vertices, from the signed
/// spherical areas of the image triangles.
pub fn degree_to_s2(mesh: &BoundaryMesh, values: &[[f64; 3]]) -> Result<DegreeEstimate> {
    if values.len() != mesh.points.len() {
        return Err(Error::Precondition(format!("{} values for {} mesh points", values.len(), mesh.points.len())));
    }
    let unit: Vec<[f64; 3]> = values.iter().map(|v| normalize3(*v)).collect();
    let per_triangle: Vec<(f64, f64)> = mesh
        .triangles
        .par_iter()
        .map(|&[i, j, k]| {
            let (a, b, c) = (&unit[i], &unit[j], &unit[k]);
            let num = dot3(a, &cross(b, c));
            let den = 1.0 + dot3(a, b) + dot3(b, c) + dot3(c, a);
            let angle = |p: &[f64; 3], q: &[f64; 3]| dot3(p, q).clamp(-1.0, 1.0).acos();
            let diam = angle(a, b).max(angle(b, c)).max(angle(c, a));
            (2.0 * num.atan2(den), diam)
        })
        .collect();
    let areas: Vec<f64> = per_triangle.iter().map(|p| p.0).collect();
    let max_diameter = per_triangle.iter().map(|p| p.1).fold(0.0, f64::max);
    if max_diameter >= PI / 2.0 {
        return Err(Error::RefineMesh(format!("image triangle of diameter {max_diameter:.3}")));
    }
    let raw = compensated_sum(&areas) / (4.0 * PI);
    let degree = raw.round();
    let residue = (raw - degree).abs();
    if residue >= DEGREE_RESIDUE_TOL {
        return Err(Error::RefineMesh(format!("area sum {raw} is {residue:e} from an integer")));
    }
    Ok(DegreeEstimate { degree: degree as i64, raw, residue, max_diameter, mesh: mesh.n, triangles: mesh.triangles.len() })
}

pub fn map_degree<F>(n: usize, f: F) -> Result<DegreeEstimate>
where
    F: Fn(&PrismPoint) -> Result<[f64; 3]> + Sync,
{
    let mesh = BoundaryMesh::new(n)?;
    let values: Vec<[f64; 3]> = mesh.points.par_iter().map(&f).collect::<Result<_>>()?;
    degree_to_s2(&mesh, &values)
}

/// Centroid of the prism; `∂P` is identified with `S²` by rays from it.
pub const CENTROID: [f64; 3] = [1.0 / 3.0, 2.0 / 3.0, 0.5];

pub fn prism_to_sphere(p: &PrismPoint) -> [f64; 3] {
    normalize3(sub3(&p.coords(), &CENTROID))
}

/// Exit point of the ray from the centroid in direction `v`.
pub fn sphere_to_prism(v: &[f64; 3]) -> PrismPoint {
    let v = normalize3(*v);
    // constraints n·p + b ≥ 0
    let constraints: [([f64; 3], f64, Facet); 5] = [
        ([1.0, 0.0, 0.0], 0.0, Facet::WallS0),
        ([-1.0, 1.0, 0.0], 0.0, Facet::WallDiagonal),
        ([0.0, -1.0, 0.0], 1.0, Facet::WallT1),
        ([0.0, 0.0, 1.0], 0.0, Facet::Bottom),
        ([0.0, 0.0, -1.0], 1.0, Facet::Top),
    ];
    let (lambda, facet) = constraints
        .iter()
        .filter_map(|(n, b, f)| {
            let rate = dot3(n, &v);
            (rate < 0.0).then(|| ((dot3(n, &CENTROID) + b) / -rate, *f))
        })
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("bounded prism");
    let mut p = PrismPoint::new(CENTROID[0] + lambda * v[0], CENTROID[1] + lambda * v[1], CENTROID[2] + lambda * v[2]);
    // snap onto the exit facet
    match facet {
        Facet::WallS0 => p.s = 0.0,
        Facet::WallDiagonal => p.s = p.t,
        Facet::WallT1 => p.t = 1.0,
        Facet::Bottom => p.u = 0.0,
        Facet::Top => p.u = 1.0,
    }
    p
}

/// Point of `S^4 ⊂ R^5`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct S4Point(pub [f64; 5]);

pub const COVER_TOL: f64 = 1e-12;

impl S4Point {
    pub fn new(x: [f64; 5]) -> Result<Self> {
        let n = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n < 1e-300 {
            return Err(Error::Precondition("zero vector".into()));
        }
        Ok(S4Point(x.map(|c| c / n)))
    }

    /// Membership in `C_1 = {x_0 ≤ 0}`, `C_2 = {x_0 ≥ 0, x_4 ≥ 0}`,
    /// `C_3 = {x_0 ≥ 0, x_4 ≤ 0}`.
    pub fn in_cover(&self, i: usize) -> bool {
        let [x0, _, _, _, x4] = self.0;
        match i {
            1 => x0 <= COVER_TOL,
            2 => x0 >= -COVER_TOL && x4 >= -COVER_TOL,
            3 => x0 >= -COVER_TOL && x4 <= COVER_TOL,
            _ => false,
        }
    }

    fn ball(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }
}

const POLE: SU2Point = SU2Point { a: 0.0, b: 0.0, c: 0.0, d: -1.0 };

/// Extension of `β_k` (`k = 1, 2`) over the 3-ball: straight segment from
/// `β_k` on the boundary sphere towards `(0,0,0,−1)`, renormalized. Also
/// returns the length before normalization.
fn ball_extension(k: usize, ball: &[f64; 3]) -> (SU2Point, f64) {
    let r = dot3(ball, ball).sqrt().min(1.0);
    let v = 1.0 - r;
    let b = if r > 0.0 {
        let (b1, b2) = beta(&sphere_to_prism(ball)).expect("ray exit lies on the boundary");
        if k == 1 {
            b1
        } else {
            b2
        }
    } else {
        SU2Point::IDENTITY
    };
    let w = 1.0 - v;
    let raw = SU2Point::new(w * b.a + v * POLE.a, w * b.b + v * POLE.b, w * b.c + v * POLE.c, w * b.d + v * POLE.d);
    (raw.normalized(), raw.norm())
}

/// `(√(1 − |x|²), x_1, x_2, x_3, 0)`.
pub fn retraction(x: &S4Point) -> S4Point {
    let b = x.ball();
    S4Point([(1.0 - dot3(&b, &b)).max(0.0).sqrt(), b[0], b[1], b[2], 0.0])
}

fn rho_12(x: &S4Point) -> (SU2Point, f64) {
    ball_extension(1, &x.ball())
}

fn rho_23(x: &S4Point) -> (SU2Point, f64) {
    ball_extension(2, &x.ball())
}

fn rho_13(x: &S4Point) -> SU2Point {
    let [x0, x1, x2, x3, x4] = x.0;
    let mirror = S4Point([x0, x1, x2, x3, -x4]);
    rho_12(&mirror).0.mul(&rho_23(&retraction(&mirror)).0)
}

/// Transition function `ρ_{i,j}` on `C_i ∩ C_j`, with `ρ_{j,i} = ρ_{i,j}⁻¹`.
pub fn cocycle_s4(x: &S4Point, i: usize, j: usize) -> Result<SU2Point> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::Precondition(format!("cover index out of range: ({i}, {j})")));
    }
    if !x.in_cover(i) || !x.in_cover(j) {
        return Err(Error::Precondition(format!("{x:?} is not in C_{i} ∩ C_{j}")));
    }
    Ok(match (i, j) {
        _ if i == j => SU2Point::IDENTITY,
        (1, 2) => rho_12(x).0,
        (2, 3) => rho_23(x).0,
        (1, 3) => rho_13(x),
        _ => cocycle_s4(x, j, i)?.inverse(),
    })
}

/// The clutching function on the equator `C_1 ∩ (C_2 ∪ C_3)`.
pub fn clutching(x: &S4Point) -> Result<SU2Point> {
    if x.0[0].abs() > COVER_TOL {
        return Err(Error::Precondition(format!("{x:?} is off the equator x_0 = 0")));
    }
    if x.0[4] >= 0.0 {
        Ok(rho_12(x).0.mul(&rho_23(&retraction(x)).0))
    } else {
        cocycle_s4(x, 1, 3)
    }
}

/// Deterministic, roughly uniform points on `S²`.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaReport {
    pub samples: usize,
    pub seam_residual: f64,
    pub commutator_residual: f64,
    pub degree: DegreeEstimate,
    pub degree_refined: DegreeEstimate,
}

/// Seam agreement and commutativity of `β` on a grid of about `samples`
/// points, and the degree of `π∘β` at mesh `n` and `2n`.
pub fn beta_check(samples: usize, n: usize) -> Result<BetaReport> {
    let per_edge = (samples / 9).max(2);
    // the nine edges of ∂P as parametrized segments
    let edges: [fn(f64) -> PrismPoint; 9] = [
        |x| PrismPoint::new(0.0, x, 0.0),
        |x| PrismPoint::new(x, x, 0.0),
        |x| PrismPoint::new(x, 1.0, 0.0),
        |x| PrismPoint::new(0.0, x, 1.0),
        |x| PrismPoint::new(x, x, 1.0),
        |x| PrismPoint::new(x, 1.0, 1.0),
        |x| PrismPoint::new(0.0, 0.0, x),
        |x| PrismPoint::new(0.0, 1.0, x),
        |x| PrismPoint::new(1.0, 1.0, x),
    ];
    let seam_points: Vec<PrismPoint> =
        edges.iter().flat_map(|e| (0..=per_edge).map(move |k| e(k as f64 / per_edge as f64))).collect();
    let seam_residual = seam_points
        .par_iter()
        .map(|p| {
            let vals: Vec<(SU2Point, SU2Point)> = p.facets(BOUNDARY_TOL).into_iter().map(|f| beta_on_facet(f, p)).collect();
            vals.iter()
                .flat_map(|x| vals.iter().map(move |y| x.0.dist(&y.0).max(x.1.dist(&y.1))))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    let side = ((samples as f64 / 5.0).sqrt().ceil() as usize).max(2);
    let mesh = BoundaryMesh::new(side)?;
    let commutator_residual = mesh
        .points
        .par_iter()
        .map(|p| beta(p).map(|(x, y)| commutator_distance(&x, &y)))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let projected = |p: &PrismPoint| beta(p).and_then(|(x, y)| rep_project_su2(&x, &y));
    let degree = map_degree(n, projected)?;
    let degree_refined = map_degree(2 * n, projected)?;
    if degree.degree != degree_refined.degree {
        return Err(Error::InvariantBreach(format!("degree changed under refinement: {} vs {}", degree.degree, degree_refined.degree)));
    }
    Ok(BetaReport { samples: seam_points.len() + mesh.points.len(), seam_residual, commutator_residual, degree, degree_refined })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CocycleReport {
    pub samples: usize,
    pub cocycle_residual: f64,
    pub commutator_residual: f64,
    pub boundary_residual: f64,
    pub clutching_residual: f64,
    pub min_denominator: f64,
}

/// Cocycle identity, pairwise commutativity and agreement with `β` on the
/// triple overlap; clutching symmetry and the extension denominators on
/// the equatorial 3-balls.
pub fn cocycle_check(samples: usize) -> Result<CocycleReport> {
    let sphere = fibonacci_sphere(samples);
    let triple: Vec<[f64; 4]> = sphere
        .par_iter()
        .map(|v| -> Result<[f64; 4]> {
            let x = S4Point([0.0, v[0], v[1], v[2], 0.0]);
            let r12 = cocycle_s4(&x, 1, 2)?;
            let r23 = cocycle_s4(&x, 2, 3)?;
            let r13 = cocycle_s4(&x, 1, 3)?;
            let cocycle = r13.dist(&r12.mul(&r23));
            let comm = commutator_distance(&r12, &r23).max(commutator_distance(&r12, &r13)).max(commutator_distance(&r23, &r13));
            let (b1, b2) = beta(&sphere_to_prism(v))?;
            let boundary = r12.dist(&b1).max(r23.dist(&b2));
            let inverse = cocycle_s4(&x, 2, 1)?.mul(&r12).dist(&SU2Point::IDENTITY);
            Ok([cocycle, comm, boundary.max(inverse), 0.0])
        })
        .collect::<Result<_>>()?;
    // interior points of the equatorial ball: radius and direction sweep
    let interior: Vec<[f64; 2]> = sphere
        .par_iter()
        .enumerate()
        .map(|(k, v)| -> Result<[f64; 2]> {
            let radius = ((k as f64 + 0.5) / samples as f64).sqrt();
            let b = v.map(|c| c * radius);
            let x4 = (1.0 - radius * radius).max(0.0).sqrt();
            let up = S4Point([0.0, b[0], b[1], b[2], x4]);
            let down = S4Point([0.0, b[0], b[1], b[2], -x4]);
            let sym = clutching(&up)?.dist(&clutching(&down)?);
            let den = ball_extension(1, &b).1.min(ball_extension(2, &b).1);
            Ok([sym, den])
        })
        .collect::<Result<_>>()?;
    let max_col = |rows: &[[f64; 4]], c: usize| rows.iter().map(|r| r[c]).fold(0.0, f64::max);
    Ok(CocycleReport {
        samples: triple.len() + interior.len(),
        cocycle_residual: max_col(&triple, 0),
        commutator_residual: max_col(&triple, 1),
        boundary_residual: max_col(&triple, 2),
        clutching_residual: interior.iter().map(|r| r[0]).fold(0.0, f64::max),
        min_denominator: interior.iter().map(|r| r[1]).fold(f64::INFINITY, f64::min),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: &SU2Point, y: &SU2Point, tol: f64) -> bool {
        x.dist(y) < tol
    }

    /// The matrix of a quaternion in the stated convention.
    fn matrix(q: &SU2Point) -> [[(f64, f64); 2]; 2] {
        [[(q.a, q.b), (q.c, q.d)], [(-q.c, q.d), (q.a, -q.b)]]
    }

    fn cmul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
        (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
    }

    #[test]
    fn product_matches_matrices() {
        let p = SU2Point::new(0.1, 0.7, -0.3, 0.2).normalized();
        let q = SU2Point::new(-0.5, 0.1, 0.4, 0.6).normalized();
        let (mp, mq, mpq) = (matrix(&p), matrix(&q), matrix(&p.mul(&q)));
        for i in 0..2 {
            for j in 0..2 {
                let a = cmul(mp[i][0], mq[0][j]);
                let b = cmul(mp[i][1], mq[1][j]);
                assert!((a.0 + b.0 - mpq[i][j].0).abs() < 1e-15);
                assert!((a.1 + b.1 - mpq[i][j].1).abs() < 1e-15);
            }
        }
        assert!(close(&p.mul(&p.inverse()), &SU2Point::IDENTITY, 1e-15));
    }

    #[test]
    fn loop_and_homotopy() {
        assert!(close(&gamma(0.0), &SU2Point::IDENTITY, 1e-15));
        assert!(close(&gamma(0.5), &SU2Point::new(-1.0, 0.0, 0.0, 0.0), 1e-15));
        assert!(close(&gamma(0.25), &SU2Point::new(0.0, 1.0, 0.0, 0.0), 1e-15));
        for k in 0..=20 {
            let s = k as f64 / 20.0;
            assert!(close(&null_homotopy_h(s, 0.0), &gamma(s), 1e-15));
            assert!(close(&null_homotopy_h(s, 1.0), &SU2Point::IDENTITY, 1e-15));
            assert!(close(&null_homotopy_h(0.0, s), &SU2Point::IDENTITY, 1e-15));
            assert!(close(&null_homotopy_h(1.0, s), &SU2Point::IDENTITY, 1e-14));
            assert_eq!(null_homotopy_h(s, 0.3).d, 0.0);
        }
        assert!((null_homotopy_h(0.37, 1.0).dist(&SU2Point::IDENTITY)) < 1e-15);
        assert!((null_homotopy_h(0.25, 0.5).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn beta_faces() {
        let (x, y) = beta(&PrismPoint::new(0.1, 0.3, 0.0)).unwrap();
        assert!(close(&x, &gamma(0.1), 1e-15) && close(&y, &gamma(0.3), 1e-15));
        let (x, y) = beta(&PrismPoint::new(0.2, 0.6, 1.0)).unwrap();
        assert!(close(&x, &SU2Point::IDENTITY, 1e-15) && close(&y, &SU2Point::IDENTITY, 1e-15));
        let (x, y) = beta(&PrismPoint::new(0.0, 0.4, 0.7)).unwrap();
        assert!(close(&x, &SU2Point::IDENTITY, 1e-15) && close(&y, &null_homotopy_h(0.4, 0.7), 1e-15));
        assert!(beta(&PrismPoint::new(0.2, 0.5, 0.5)).is_err());
    }

    #[test]
    fn projection_examples() {
        let base = rep_project_su2(&SU2Point::IDENTITY, &SU2Point::IDENTITY).unwrap();
        assert!(dot3(&base, &[0.0, 0.0, 1.0]) > 1.0 - 1e-15);
        let minus = SU2Point::new(-1.0, 0.0, 0.0, 0.0);
        let v = rep_project_su2(&minus, &SU2Point::IDENTITY).unwrap();
        assert!(dot3(&v, &[0.0, 0.0, -1.0]) > 1.0 - 1e-15);
        assert!(rep_project_su2(&SU2Point::new(0.0, 1.0, 0.0, 0.0), &SU2Point::new(0.0, 0.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn projection_is_conjugation_invariant() {
        let g = SU2Point::new(0.3, -0.2, 0.9, 0.4).normalized();
        for k in 0..50 {
            let s = k as f64 / 50.0;
            let x = gamma(s);
            let y = gamma(0.37 + 0.61 * s);
            let p = rep_project_su2(&x, &y).unwrap();
            let conj = |z: &SU2Point| g.mul(z).mul(&g.inverse());
            let q = rep_project_su2(&conj(&x), &conj(&y)).unwrap();
            assert!(sub3(&p, &q).iter().all(|c| c.abs() < 1e-9), "{p:?} {q:?}");
        }
    }

    #[test]
    fn mesh_is_closed() {
        let mesh = BoundaryMesh::new(4).unwrap();
        // every oriented edge appears once in each direction
        let mut edges = std::collections::HashMap::new();
        for t in &mesh.triangles {
            for k in 0..3 {
                *edges.entry((t[k], t[(k + 1) % 3])).or_insert(0) += 1;
            }
        }
        for (&(a, b), &c) in &edges {
            assert_eq!(c, 1);
            assert_eq!(edges.get(&(b, a)), Some(&1));
        }
        // Euler characteristic of a sphere
        let v = mesh.points.len() as i64;
        let f = mesh.triangles.len() as i64;
        assert_eq!(v - edges.len() as i64 / 2 + f, 2);
    }

    #[test]
    fn degree_examples() {
        let constant = map_degree(8, |_| Ok([0.0, 0.0, 1.0])).unwrap();
        assert_eq!(constant.degree, 0);
        let identity = map_degree(8, |p| Ok(prism_to_sphere(p))).unwrap();
        assert_eq!(identity.degree, 1);
        let flipped = map_degree(8, |p| {
            let v = prism_to_sphere(p);
            Ok([v[0], v[1], -v[2]])
        })
        .unwrap();
        assert_eq!(flipped.degree, -1);
    }

    #[test]
    fn sphere_identification_round_trip() {
        for v in fibonacci_sphere(200) {
            let p = sphere_to_prism(&v);
            assert!(!p.facets(BOUNDARY_TOL).is_empty());
            let w = prism_to_sphere(&p);
            assert!(sub3(&v, &w).iter().all(|c| c.abs() < 1e-12));
        }
    }

    #[test]
    fn cocycle_basics() {
        let x = S4Point([0.0, 0.6, 0.0, 0.8, 0.0]);
        let (b1, b2) = beta(&sphere_to_prism(&[0.6, 0.0, 0.8])).unwrap();
        assert!(close(&cocycle_s4(&x, 1, 2).unwrap(), &b1, 1e-12));
        assert!(close(&cocycle_s4(&x, 2, 3).unwrap(), &b2, 1e-12));
        let inside = S4Point::new([-0.5, 0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!(cocycle_s4(&inside, 1, 2).is_err());
        let centre = S4Point([0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(close(&cocycle_s4(&centre, 1, 2).unwrap(), &POLE, 1e-15));
    }
}
