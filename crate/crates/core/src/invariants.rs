//! Theorem-level answers: `π_2` of the spaces of commuting pairs and
//! tuples, the quotient degree to the representation space, Bredon
//! fragments, the semisimple `H_2` extension and `π_4` of the commutative
//! classifying spaces. Every report says where its number came from.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{binomial, is_prime};
use crate::error::{Error, Result};
use crate::homology::{tensor_finab, FinAbGroup};
use crate::rootdatum::{build_root_datum, dynkin_index, Family, LieType, RootDatum};
use crate::weyl::{molien_poincare, WeylGroup};
use crate::wps::{kawasaki_homology, spin_stability_degree, SpinParity, WeightedProjectiveSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Evaluated from a closed formula.
    Formula,
    /// Assembled from other computations and checked against a formula.
    CrossDerived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub statement: &'static str,
    pub method: Method,
}

pub fn group_json(g: &FinAbGroup) -> Value {
    json!({ "rank": g.free_rank, "torsion": g.torsion })
}

fn datum(t: LieType) -> Result<RootDatum> {
    build_root_datum(t)
}

/// Number of coroot integers divisible by `p`.
pub fn count_divisible(d: &RootDatum, p: u64) -> usize {
    d.coroot_integers.iter().filter(|&&n| n % p == 0).count()
}

/// Primes dividing some coroot integer.
pub fn coroot_primes(d: &RootDatum) -> Vec<u64> {
    (2..=*d.coroot_integers.iter().max().unwrap()).filter(|&p| is_prime(p) && count_divisible(d, p) > 0).collect()
}

fn is_e7_or_e8(t: LieType) -> bool {
    t.family == Family::E && t.rank >= 7
}

/// The `p`-local Bredon homology of the locus where `p` divides the
/// component group of the centralizer.
pub fn bredon_e2_fragment(t: LieType, p: u64, k: usize) -> Result<FinAbGroup> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let d = datum(t)?;
    let ell = count_divisible(&d, p);
    if ell == 0 {
        return Ok(FinAbGroup::trivial());
    }
    if p == 2 && is_e7_or_e8(d.lie_type) {
        return match k {
            0 => Ok(FinAbGroup::cyclic(4)),
            1 => Ok(FinAbGroup::trivial()),
            _ => Err(Error::Precondition(format!("{} at p = 2 is only known for k ≤ 1", d.lie_type))),
        };
    }
    // homology with Z/p coefficients of a weighted projective space of
    // complex dimension ℓ − 1; the integral groups are free
    let weights: Vec<u64> = d.coroot_integers.iter().filter(|&&n| n % p == 0).map(|&n| n / p).collect();
    let cp = WeightedProjectiveSpace::new(weights)?;
    Ok(tensor_finab(&kawasaki_homology(&cp, k), &FinAbGroup::cyclic(p)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi2Report {
    pub lie_type: LieType,
    pub group: FinAbGroup,
    /// Degree of `π_2(Hom(Z², G)) → π_2(Rep(Z², G))`.
    pub quotient_degree: u64,
    pub prime_breakdown: BTreeMap<u64, u64>,
    pub provenance: Provenance,
}

impl Pi2Report {
    pub fn to_json(&self) -> Value {
        let breakdown: serde_json::Map<String, Value> =
            self.prime_breakdown.iter().map(|(p, c)| (p.to_string(), json!(c))).collect();
        json!({
            "type": self.lie_type.to_string(),
            "theorem": self.provenance.statement,
            "group": group_json(&self.group),
            "degree": self.quotient_degree,
            "breakdown": breakdown,
            "provenance": self.provenance,
        })
    }
}

/// `π_2(Hom(Z², G)) ≅ Z` and the degree of the map to the representation
/// space, assembled prime by prime from the Bredon fragments and checked
/// against the Dynkin index.
pub fn pi2_hom_pairs(t: LieType) -> Result<Pi2Report> {
    let d = datum(t)?;
    let mut breakdown = BTreeMap::new();
    let mut degree = 1u64;
    for p in coroot_primes(&d) {
        let g0 = bredon_e2_fragment(d.lie_type, p, 0)?;
        let g1 = bredon_e2_fragment(d.lie_type, p, 1)?;
        if g0.free_rank != 0 || !g1.is_trivial() {
            return Err(Error::InvariantBreach(format!("unexpected fragment at p = {p}: {g0}, {g1}")));
        }
        breakdown.insert(p, g0.torsion_order());
        degree *= g0.torsion_order();
    }
    let dyn_index = dynkin_index(&d);
    if degree != dyn_index {
        return Err(Error::InvariantBreach(format!("{}: prime assembly {degree} vs lcm {dyn_index}", d.lie_type)));
    }
    Ok(Pi2Report {
        lie_type: d.lie_type,
        group: FinAbGroup::free(1),
        quotient_degree: degree,
        prime_breakdown: breakdown,
        provenance: Provenance {
            statement: "commuting pairs: pi2 is Z, quotient degree is the Dynkin index",
            method: Method::CrossDerived,
        },
    })
}

/// Which clause of the unitary/symplectic formula applies to `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Classical {
    Unitary,
    Symplectic,
}

fn classical(t: LieType) -> Result<Classical> {
    let t = LieType::new(t.family, t.rank)?.canonical();
    match (t.family, t.rank) {
        // SU(2) = Sp(1)
        (Family::A, 1) | (Family::C, _) => Ok(Classical::Symplectic),
        (Family::A, _) => Ok(Classical::Unitary),
        _ => Err(Error::Precondition(format!("{t} is neither SU(m) nor Sp(k)"))),
    }
}

/// `π_2(Hom(Z^n, G))` for `G = SU(m)` or `Sp(k)`.
pub fn pi2_hom_n(t: LieType, n: u32) -> Result<FinAbGroup> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let n = u64::from(n);
    let rank = binomial(n, 2) as usize;
    match classical(t)? {
        Classical::Unitary => Ok(FinAbGroup::free(rank)),
        Classical::Symplectic => {
            let twos = (1u64 << n) - 1 - n - binomial(n, 2);
            Ok(FinAbGroup::from_cyclic(rank, &vec![2; twos as usize]))
        }
    }
}

/// Rank of `π_2(Hom(Z^n, G))`.
pub fn pi2_rank(t: LieType, n: u32) -> Result<u64> {
    LieType::new(t.family, t.rank)?;
    Ok(binomial(u64::from(n), 2))
}

/// [`pi2_rank`] checked against the `t²` coefficient of the Poincaré series.
pub fn pi2_rank_checked(w: &WeylGroup, n: u32) -> Result<u64> {
    let rank = pi2_rank(w.datum.lie_type, n)?;
    let series = molien_poincare(w, n, 2)?;
    if series[2] != rank {
        return Err(Error::InvariantBreach(format!("rank {rank} vs Poincaré coefficient {}", series[2])));
    }
    Ok(rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    /// `Z^s`, one summand per simple factor.
    pub kernel: FinAbGroup,
    /// `H_2(π_1(G)²; Z) ≅ π_1 ⊗ π_1`.
    pub quotient: FinAbGroup,
    pub s: usize,
    /// The quotient needs more generators than the kernel has, so the
    /// middle group cannot be free.
    pub forced_torsion: bool,
    pub provenance: Provenance,
}

/// `0 → Z^s → H_2(Hom(Z², G)_1; Z) → H_2(π_1(G)²; Z) → 0`.
pub fn h2_extension_semisimple(pi1: &FinAbGroup, s: usize) -> Result<ExtensionReport> {
    if pi1.free_rank != 0 {
        return Err(Error::Precondition(format!("π_1 = {pi1} must be finite")));
    }
    let quotient = tensor_finab(pi1, pi1);
    Ok(ExtensionReport {
        kernel: FinAbGroup::free(s),
        forced_torsion: quotient.torsion.len() > s,
        quotient,
        s,
        provenance: Provenance { statement: "second homology of commuting pairs, semisimple case", method: Method::Formula },
    })
}

/// `(π_4(E_com G_1), π_4(B_com G_1)) = (Z, Z²)` for simply-connected simple `G`.
pub fn pi4_commutative_classifying(t: LieType) -> Result<(FinAbGroup, FinAbGroup)> {
    LieType::new(t.family, t.rank)?;
    let e = FinAbGroup::free(1);
    // the sequence 0 → π_4(E_com) → π_4(B_com) → π_4(BG) = Z → 0 splits
    let b = e.direct_sum(&FinAbGroup::free(1));
    Ok((e, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinStabilityReport {
    pub m: usize,
    pub holds: bool,
    pub route: &'static str,
    /// `Spin(2ℓ−2) → Spin(2ℓ)` is the two-step map containing `m → m+1`.
    pub ell: Option<usize>,
    /// Degree on `π_2(Rep)`.
    pub rep_degree: Option<u64>,
    pub dynkin_small: Option<u64>,
    pub dynkin_big: Option<u64>,
    /// Degree on `π_2(Hom)` of the two-step map.
    pub hom_degree: Option<u64>,
}

/// Whether `π_2(Hom(Z², Spin(m))) → π_2(Hom(Z², Spin(m+1)))` is an
/// isomorphism, with the degree arithmetic behind the answer.
pub fn spin_pi2_stability(m: usize) -> Result<SpinStabilityReport> {
    if m < 5 {
        return Err(Error::Precondition(format!("m = {m} is below 5")));
    }
    if m == 5 {
        // Spin(5) = Sp(2) and Spin(6) = SU(4) both carry a long-root SU(2)
        // inducing isomorphisms on π_2(Hom)
        return Ok(SpinStabilityReport {
            m,
            holds: true,
            route: "exceptional isomorphisms",
            ell: None,
            rep_degree: None,
            dynkin_small: None,
            dynkin_big: None,
            hom_degree: None,
        });
    }
    let ell = m / 2 + 1;
    let rep = spin_stability_degree(ell, SpinParity::Even, 2)?.degree;
    let small = dynkin_index(&datum(LieType::new(Family::D, ell - 1)?)?);
    let big = dynkin_index(&datum(LieType::new(Family::D, ell)?)?);
    // deg(Hom map)·deg(π_big) = deg(π_small)·deg(Rep map)
    if !(rep * small).is_multiple_of(big) {
        return Err(Error::InvariantBreach(format!("degree {rep}·{small}/{big} is not integral")));
    }
    let hom = rep * small / big;
    Ok(SpinStabilityReport {
        m,
        holds: hom == 1,
        route: "weighted projective degrees",
        ell: Some(ell),
        rep_degree: Some(rep),
        dynkin_small: Some(small),
        dynkin_big: Some(big),
        hom_degree: Some(hom),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn fragments() {
        let f4 = bredon_e2_fragment(t("F4"), 3, 0).unwrap();
        assert_eq!(f4, FinAbGroup::cyclic(3));
        assert_eq!(count_divisible(&build_root_datum(t("F4")).unwrap(), 3), 1);
        assert!(bredon_e2_fragment(t("F4"), 3, 2).unwrap().is_trivial());
        assert_eq!(bredon_e2_fragment(t("E8"), 2, 0).unwrap(), FinAbGroup::cyclic(4));
        assert!(bredon_e2_fragment(t("E8"), 2, 1).unwrap().is_trivial());
        assert!(bredon_e2_fragment(t("D6"), 2, 3).unwrap().is_trivial());
        assert_eq!(bredon_e2_fragment(t("D6"), 2, 4).unwrap(), FinAbGroup::cyclic(2));
        assert!(bredon_e2_fragment(t("A4"), 5, 0).unwrap().is_trivial());
    }

    #[test]
    fn pairs() {
        assert_eq!(pi2_hom_pairs(t("E7")).unwrap().quotient_degree, 12);
        assert_eq!(pi2_hom_pairs(t("G2")).unwrap().quotient_degree, 2);
        assert_eq!(pi2_hom_pairs(t("A5")).unwrap().quotient_degree, 1);
        let e8 = pi2_hom_pairs(t("E8")).unwrap();
        assert_eq!(e8.quotient_degree, 60);
        assert_eq!(e8.prime_breakdown.values().product::<u64>(), 60);
    }

    #[test]
    fn tuples() {
        assert_eq!(pi2_hom_n(t("SU(5)"), 3).unwrap(), FinAbGroup::free(3));
        assert_eq!(pi2_hom_n(t("Sp(2)"), 3).unwrap(), FinAbGroup::from_cyclic(3, &[2]));
        assert!(pi2_hom_n(t("SU(4)"), 1).unwrap().is_trivial());
        assert!(pi2_hom_n(t("Sp(3)"), 1).unwrap().is_trivial());
        assert!(pi2_hom_n(t("G2"), 2).is_err());
        assert_eq!(pi2_rank(t("E6"), 4).unwrap(), 6);
    }

    #[test]
    fn extensions() {
        let so3 = h2_extension_semisimple(&FinAbGroup::cyclic(2), 1).unwrap();
        assert_eq!(so3.quotient, FinAbGroup::cyclic(2));
        assert!(!so3.forced_torsion);
        let pso = h2_extension_semisimple(&FinAbGroup::from_cyclic(0, &[2, 2]), 1).unwrap();
        assert_eq!(pso.quotient, FinAbGroup::from_cyclic(0, &[2, 2, 2, 2]));
        assert!(pso.forced_torsion);
        assert_eq!(h2_extension_semisimple(&FinAbGroup::trivial(), 3).unwrap().quotient, FinAbGroup::trivial());
    }

    #[test]
    fn spin_stability() {
        let six = spin_pi2_stability(6).unwrap();
        assert_eq!((six.rep_degree, six.dynkin_small, six.dynkin_big, six.hom_degree), (Some(2), Some(1), Some(2), Some(1)));
        let eight = spin_pi2_stability(8).unwrap();
        assert_eq!((eight.rep_degree, eight.hom_degree), (Some(1), Some(1)));
        assert_eq!(spin_pi2_stability(5).unwrap().route, "exceptional isomorphisms");
        assert!(spin_pi2_stability(4).is_err());
    }
}
