//! The fundamental alcove: vertices, barycenters, faces and the faces `A(m)`.
//!
//! Points live in simple-coroot coordinates. The alcove is cut out by
//! `α_j ≥ 0` for `j = 1..r` and `θ ≤ 1`; wall `0` is `θ = 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{qi, Q};
use crate::error::{Error, Result};
use crate::rootdatum::{from_cartan, FaceIndex, Family, LieType, RootDatum};

#[derive(Clone, Debug)]
pub struct AlcoveGeometry {
    pub datum: RootDatum,
    /// Fundamental coweights `ω_i^∨`, `i = 1..r`.
    pub coweights: Vec<Vec<Q>>,
    /// `v_0 = 0` and `v_i = ω_i^∨ / n_i`.
    pub vertices: Vec<Vec<Q>>,
}

impl AlcoveGeometry {
    pub fn new(datum: &RootDatum) -> Self {
        let r = datum.rank();
        let inv = invert(&datum.cartan);
        let coweights: Vec<Vec<Q>> = (0..r).map(|i| (0..r).map(|k| inv[k][i].clone()).collect()).collect();
        let mut vertices = vec![vec![Q::zero(); r]];
        for (i, w) in coweights.iter().enumerate() {
            let n = qi(datum.root_integers[i] as i64);
            vertices.push(w.iter().map(|x| x / &n).collect());
        }
        AlcoveGeometry { datum: datum.clone(), coweights, vertices }
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Barycentric coordinates `(a_0, …, a_r)` with respect to `v_0, …, v_r`:
    /// `a_i = n_i·α_i(x)` and `a_0 = 1 − θ(x)`.
    pub fn barycentric(&self, x: &[Q]) -> Vec<Q> {
        let mut a = vec![Q::one() - self.datum.eval_theta(x)];
        for i in 1..=self.rank() {
            a.push(self.datum.eval_root(i, x) * qi(self.datum.root_integers[i - 1] as i64));
        }
        a
    }

    pub fn from_barycentric(&self, a: &[Q]) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.rank()];
        for (ai, v) in a.iter().zip(&self.vertices) {
            for (xk, vk) in x.iter_mut().zip(v) {
                *xk += ai * vk;
            }
        }
        x
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.barycentric(x).iter().all(|a| !a.is_negative())
    }

    pub fn barycenter(&self, face: &FaceIndex) -> Vec<Q> {
        let verts = face.complement();
        let k = qi(verts.len() as i64);
        let mut b = vec![Q::zero(); self.rank()];
        for &i in &verts {
            for (bk, vk) in b.iter_mut().zip(&self.vertices[i]) {
                *bk += vk;
            }
        }
        b.iter().map(|x| x / &k).collect()
    }

    /// The walls containing `x`.
    pub fn face_of_point(&self, x: &[Q]) -> Result<FaceIndex> {
        let a = self.barycentric(x);
        if a.iter().any(Signed::is_negative) {
            return Err(Error::OutsideAlcove(format!("{x:?}")));
        }
        FaceIndex::new(self.rank(), (0..a.len()).filter(|&i| a[i].is_zero()))
    }

    /// `I_m = {j : m ∤ n_j^∨}`, the wall set of the face `A(m)`.
    pub fn face_a_of_m(&self, m: u64) -> Result<FaceIndex> {
        if m == 0 {
            return Err(Error::Precondition("m must be positive".into()));
        }
        let members = (0..=self.rank()).filter(|&j| !self.datum.coroot_integers[j].is_multiple_of(m));
        FaceIndex::new(self.rank(), members).map_err(|_| {
            Error::Precondition(format!("no coroot integer of {} is divisible by {m}", self.datum.lie_type))
        })
    }
}

/// Inverse of an integer matrix over the rationals (Gauss–Jordan).
pub(crate) fn invert(a: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| qi(x)).collect();
            r.extend((0..n).map(|j| qi(i64::from(i == j))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("singular matrix");
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row_c = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(row_c) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Vertices of the D-type alcoves `D_{ℓ−1} ⊂ D_ℓ` in the standard basis
/// `e_1, …, e_ℓ`, where `D_{ℓ−1}` sits on the coroots `α_2^∨, …, α_ℓ^∨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinVertexTable {
    pub ell: usize,
    /// `u_1, …, u_{ℓ−1}` (vertices of the smaller alcove).
    pub u: Vec<Vec<Q>>,
    /// `v_1, …, v_ℓ`.
    pub v: Vec<Vec<Q>>,
}

pub fn spin_vertex_table(ell: usize) -> Result<SpinVertexTable> {
    if ell < 4 {
        return Err(Error::Precondition(format!("vertex table needs ℓ ≥ 4, got {ell}")));
    }
    let half = Q::new(BigInt::one(), BigInt::from(2));
    // ½ Σ_{k ∈ [lo, hi]} e_k with an optional sign flip on the last entry
    let block = |lo: usize, hi: usize, flip_last: bool| -> Vec<Q> {
        let mut x = vec![Q::zero(); ell];
        for k in lo..=hi {
            x[k - 1] = half.clone();
        }
        if flip_last {
            x[hi - 1] = -half.clone();
        }
        x
    };
    let unit = |k: usize| -> Vec<Q> { (1..=ell).map(|j| qi(i64::from(j == k))).collect() };

    let mut u = vec![unit(2)];
    for i in 2..=ell - 3 {
        u.push(block(2, i + 1, false));
    }
    u.push(block(2, ell, true));
    u.push(block(2, ell, false));

    let mut v = vec![unit(1)];
    for i in 2..=ell - 2 {
        v.push(block(1, i, false));
    }
    v.push(block(1, ell, true));
    v.push(block(1, ell, false));
    Ok(SpinVertexTable { ell, u, v })
}

/// The same vertices computed from the root data, `ω_i^∨ / n_i` mapped to
/// the standard basis through `α_i^∨ = e_i − e_{i+1}`, `α_ℓ^∨ = e_{ℓ−1} + e_ℓ`.
pub fn spin_vertices_from_datum(ell: usize) -> Result<SpinVertexTable> {
    let to_e = |coords: &[Q], offset: usize| -> Vec<Q> {
        // D_m coroots in e_{offset+1} … e_{offset+m}
        let m = coords.len();
        let mut x = vec![Q::zero(); ell];
        for (i, c) in coords.iter().enumerate() {
            let node = i + 1;
            if node < m {
                x[offset + node - 1] += c;
                x[offset + node] -= c;
            } else {
                x[offset + m - 2] += c;
                x[offset + m - 1] += c;
            }
        }
        x
    };
    let vertices = |rank: usize| -> Result<Vec<Vec<Q>>> {
        let t = LieType::new(Family::D, rank)?;
        let datum = from_cartan(t, t.cartan())?;
        Ok(AlcoveGeometry::new(&datum).vertices[1..].to_vec())
    };
    let u = vertices(ell - 1)?.iter().map(|c| to_e(c, 1)).collect();
    let v = vertices(ell)?.iter().map(|c| to_e(c, 0)).collect();
    Ok(SpinVertexTable { ell, u, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdatum::build_root_datum;

    fn geo(s: &str) -> AlcoveGeometry {
        AlcoveGeometry::new(&build_root_datum(s.parse().unwrap()).unwrap())
    }

    #[test]
    fn vertices_hit_their_walls() {
        for t in ["A3", "B3", "C3", "G2", "F4", "E6"] {
            let g = geo(t);
            let r = g.rank();
            for j in 1..=r {
                let vj = &g.vertices[j];
                for i in 1..=r {
                    let want = if i == j { Q::one() / qi(g.datum.root_integers[j - 1] as i64) } else { Q::zero() };
                    assert_eq!(g.datum.eval_root(i, vj), want);
                }
                assert_eq!(g.datum.eval_theta(vj), Q::one());
                let face = g.face_of_point(vj).unwrap();
                assert_eq!(face.complement(), vec![j]);
            }
        }
    }

    #[test]
    fn barycenter_examples() {
        let g = geo("B3");
        let origin = FaceIndex::new(3, [1, 2, 3]).unwrap();
        assert!(g.barycenter(&origin).iter().all(Zero::is_zero));
        assert_eq!(g.face_of_point(&g.barycenter(&FaceIndex::new(3, []).unwrap())).unwrap().members(), &[] as &[usize]);
        assert!(g.face_of_point(&[qi(-1), qi(0), qi(0)]).is_err());
    }

    #[test]
    fn faces_a_of_m() {
        let g = geo("E8");
        assert_eq!(g.face_a_of_m(1).unwrap().members(), &[] as &[usize]);
        assert_eq!(g.face_a_of_m(5).unwrap().complement().len(), 1);
        assert!(g.face_a_of_m(7).is_err());
        let d6 = geo("D6");
        let twos = d6.datum.coroot_integers.iter().filter(|&&n| n == 2).count();
        assert_eq!(d6.face_a_of_m(2).unwrap().complement().len(), twos);
        assert_eq!(twos, 6 - 3);
    }

    #[test]
    fn a1_alcove() {
        let g = geo("A1");
        assert_eq!(g.vertices[1], vec![Q::new(BigInt::one(), BigInt::from(2))]);
    }
}
