use commhom::alcove::{spin_vertex_table, spin_vertices_from_datum};
use commhom::arith::q;
use commhom::homology::{elementary_divisors, smith_normal_form};
use commhom::weyl::alcove_reduce;
use commhom::wps::{
    inclusion_degree, orbit_equal, proj_degree, rep_to_wps, spin_even_branches, spin_stability_map, SpinParity,
};
use commhom::{build_root_datum, AlcoveGeometry, FaceIndex, IntMatrix, LieType, WpsPoint};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const SMALL_TYPES: [&str; 6] = ["A1", "A2", "C2", "G2", "A3", "C3"];

fn lie(i: usize) -> LieType {
    SMALL_TYPES[i % SMALL_TYPES.len()].parse().unwrap()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
}

fn weights() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..13, 2..7)
}

fn phases(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(0.0..std::f64::consts::TAU, n).prop_map(|v| v.into_iter().map(|a| Complex64::from_polar(1.0, a)).collect())
}

proptest! {
    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        for pair in s.divisors.windows(2) {
            prop_assert!(pair[0].is_positive());
            prop_assert!((&pair[1] % &pair[0]).is_zero());
        }
    }

    #[test]
    fn elementary_divisors_ignore_permutations(rows in matrix(), seed in any::<u64>()) {
        let m = IntMatrix::from_rows(&rows);
        let mut rp: Vec<usize> = (0..m.rows()).collect();
        let mut cp: Vec<usize> = (0..m.cols()).collect();
        rp.rotate_left(seed as usize % m.rows());
        cp.rotate_right((seed >> 8) as usize % m.cols());
        if seed & 1 == 1 {
            cp.reverse();
        }
        prop_assert_eq!(elementary_divisors(&m), elementary_divisors(&m.permuted(&rp, &cp)));
    }

    #[test]
    fn determinant_is_product_of_divisors(rows in prop::collection::vec(prop::collection::vec(-5i64..6, 3), 3)) {
        let det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
        let d = elementary_divisors(&IntMatrix::from_rows(&rows));
        if det == 0 {
            prop_assert!(d.len() < 3);
        } else {
            prop_assert_eq!(d.iter().product::<BigInt>(), BigInt::from(det.abs()));
        }
    }

    #[test]
    fn alcove_reduction_lands_in_alcove_and_is_idempotent(
        ti in 0usize..6,
        coords in prop::collection::vec((-40i64..41, 1i64..9), 3),
    ) {
        let d = build_root_datum(lie(ti)).unwrap();
        let geo = AlcoveGeometry::new(&d);
        let x: Vec<_> = coords[..d.rank()].iter().map(|&(n, m)| q(n, m)).collect();
        let red = alcove_reduce(&d, &x).unwrap();
        prop_assert!(geo.contains(&red.point));
        let image: Vec<_> = red.element.apply(&x).iter().zip(&red.translation).map(|(y, &t)| y + q(t, 1)).collect();
        prop_assert_eq!(&image, &red.point);
        let again = alcove_reduce(&d, &red.point).unwrap();
        prop_assert_eq!(&again.point, &red.point);
        prop_assert!(again.translation.iter().all(|&t| t == 0));
    }

    #[test]
    fn alcove_reduction_is_constant_on_affine_orbits(
        ti in 0usize..6,
        coords in prop::collection::vec((-30i64..31, 1i64..7), 3),
        shift in prop::collection::vec(-3i64..4, 3),
        word in prop::collection::vec(0usize..3, 0..6),
    ) {
        let d = build_root_datum(lie(ti)).unwrap();
        let r = d.rank();
        let x: Vec<_> = coords[..r].iter().map(|&(n, m)| q(n, m)).collect();
        // y = s_word(x) + λ with λ in the coroot lattice
        let mut y = x.clone();
        for &j in &word {
            let j = j % r;
            let a = d.eval_root(j + 1, &y);
            y[j] -= a;
        }
        for (yk, &s) in y.iter_mut().zip(&shift) {
            *yk += q(s, 1);
        }
        prop_assert_eq!(alcove_reduce(&d, &x).unwrap().point, alcove_reduce(&d, &y).unwrap().point);
    }

    #[test]
    fn barycentric_coordinates_round_trip(ti in 0usize..6, raw in prop::collection::vec(0i64..20, 4)) {
        let d = build_root_datum(lie(ti)).unwrap();
        let geo = AlcoveGeometry::new(&d);
        let r = d.rank();
        let total: i64 = raw[..=r].iter().sum::<i64>().max(1);
        let mut a: Vec<_> = raw[..=r].iter().map(|&v| q(v, total)).collect();
        if raw[..=r].iter().all(|&v| v == 0) {
            a[0] = q(1, 1);
        }
        let x = geo.from_barycentric(&a);
        prop_assert!(geo.contains(&x));
        prop_assert_eq!(geo.barycentric(&x), a.clone());
        let walls: Vec<usize> = (0..=r).filter(|&i| a[i].is_zero()).collect();
        let face = geo.face_of_point(&x).unwrap();
        prop_assert_eq!(face.members(), walls.as_slice());
    }

    #[test]
    fn proj_degree_ignores_weight_order(w in weights(), k in 0usize..4, rot in 0usize..7) {
        prop_assume!(k < w.len());
        let mut v = w.clone();
        v.rotate_left(rot % w.len());
        v.reverse();
        prop_assert_eq!(proj_degree(&w, k).unwrap(), proj_degree(&v, k).unwrap());
    }

    #[test]
    fn proj_degree_scales_with_common_factor(w in weights(), k in 0usize..4, c in 1u64..5) {
        prop_assume!(k < w.len());
        let scaled: Vec<u64> = w.iter().map(|x| x * c).collect();
        prop_assert_eq!(proj_degree(&scaled, k).unwrap(), c.pow(k as u32) * proj_degree(&w, k).unwrap());
    }

    #[test]
    fn sub_space_degree_divides(w in weights(), k in 0usize..3, mask in 1u32..128) {
        let s: Vec<usize> = (0..w.len()).filter(|&i| mask >> i & 1 == 1).collect();
        prop_assume!(s.len() > k);
        let sub: Vec<u64> = s.iter().map(|&i| w[i]).collect();
        let incl = inclusion_degree(&w, &s, k).unwrap();
        prop_assert_eq!(incl * proj_degree(&sub, k).unwrap(), proj_degree(&w, k).unwrap());
    }

    #[test]
    fn circle_action_preserves_the_orbit(w in weights(), angle in 0.0..std::f64::consts::TAU, seed in phases(7)) {
        let a: Vec<f64> = (0..w.len()).map(|i| 1.0 + i as f64).collect();
        let p = WpsPoint::from_parts(&a, &seed[..w.len() - 1]).unwrap();
        let lambda = Complex64::from_polar(1.0, angle);
        let moved = WpsPoint { coords: p.coords.iter().zip(&w).map(|(z, &k)| lambda.powu(k as u32) * z).collect() };
        prop_assert!(orbit_equal(&w, &p, &moved, 1e-9).unwrap());
        prop_assert!((moved.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rep_map_forgets_phases_on_walls(ti in 0usize..6, raw in prop::collection::vec(0i64..5, 4), t in phases(3), u in phases(3)) {
        let d = build_root_datum(lie(ti)).unwrap();
        let geo = AlcoveGeometry::new(&d);
        let r = d.rank();
        let mut a: Vec<_> = raw[..=r].iter().map(|&v| q(v, 1)).collect();
        a[0] += q(1, 1);
        let total = a.iter().fold(q(0, 1), |s, x| s + x);
        let a: Vec<_> = a.iter().map(|x| x / &total).collect();
        let x = geo.from_barycentric(&a);
        // swap in the phases of u wherever the barycentric coordinate vanishes
        let mixed: Vec<Complex64> = (0..r).map(|i| if a[i + 1].is_zero() { u[i] } else { t[i] }).collect();
        let p = rep_to_wps(&geo, &x, &t[..r]).unwrap();
        let p2 = rep_to_wps(&geo, &x, &mixed).unwrap();
        for (z1, z2) in p.coords.iter().zip(&p2.coords) {
            prop_assert!((z1 - z2).norm() < 1e-12);
        }
    }

    #[test]
    fn even_spin_branches_agree_on_the_seam(ell in 4usize..8, raw in prop::collection::vec(0.0f64..1.0, 8), t in phases(7)) {
        let mut a = raw[..ell].to_vec();
        a[ell - 1] = a[ell - 2];
        let s: f64 = a.iter().sum();
        prop_assume!(s > 1e-6);
        let a: Vec<f64> = a.iter().map(|x| x / s).collect();
        let (plus, minus) = spin_even_branches(ell, &a, &t[..ell - 1]).unwrap();
        for (z1, z2) in plus.coords.iter().zip(&minus.coords) {
            prop_assert!((z1 - z2).norm() < 1e-12);
        }
    }

    #[test]
    fn odd_spin_map_appends_a_zero_coordinate(ell in 4usize..8, raw in prop::collection::vec(0.01f64..1.0, 8), t in phases(7)) {
        let s: f64 = raw[..ell].iter().sum();
        let a: Vec<f64> = raw[..ell].iter().map(|x| x / s).collect();
        let p = spin_stability_map(ell, SpinParity::Odd, &a, &t[..ell - 1]).unwrap();
        prop_assert_eq!(p.coords.len(), ell + 1);
        prop_assert!(p.coords[ell].norm() < 1e-15);
        prop_assert!((p.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn face_barycenters_recover_their_faces() {
    for t in LieType::all_up_to(6) {
        let d = build_root_datum(t).unwrap();
        let geo = AlcoveGeometry::new(&d);
        for face in FaceIndex::all_proper(d.rank()) {
            let b = geo.barycenter(&face);
            assert_eq!(geo.face_of_point(&b).unwrap(), face, "{t}");
        }
    }
}

#[test]
fn spin_vertex_table_matches_the_root_datum() {
    for ell in 4..=8 {
        assert_eq!(spin_vertex_table(ell).unwrap(), spin_vertices_from_datum(ell).unwrap(), "ℓ = {ell}");
    }
}
