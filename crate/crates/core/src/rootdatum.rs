//! Root data of simple simply-connected compact Lie groups.
//!
//! Cartan matrices follow Bourbaki's plates, with `cartan[i][j] = ⟨α_i, α_j^∨⟩`.
//! Node numbering (1-based, node 0 is the lowest root `α_0 = −θ`):
//!
//! | family | diagram                                   | short roots      |
//! |--------|-------------------------------------------|------------------|
//! | A_r    | 1 – 2 – … – r                             | none             |
//! | B_r    | 1 – 2 – … – (r−1) ⇒ r                     | r                |
//! | C_r    | 1 – 2 – … – (r−1) ⇐ r                     | 1 … r−1          |
//! | D_r    | 1 – … – (r−2) – (r−1), (r−2) – r          | none             |
//! | E_r    | 1 – 3 – 4 – 5 – … – r, 2 – 4              | none             |
//! | F_4    | 1 – 2 ⇒ 3 – 4                             | 3, 4             |
//! | G_2    | 1 ⇛ 2                                     | 1                |
//!
//! Index `i` of a [`FaceIndex`] refers to this numbering, so face data is
//! reproducible across runs and across implementations using the same plates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{charpoly, cyclotomic, gcd_all, lcm_all, poly_div_exact, qi, Q};
use crate::error::{Error, Result};
use crate::homology::{smith_normal_form, FinAbGroup, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Lie type such as `E8` or `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InadmissibleType { family: family.letter(), rank })
        }
    }

    /// Resolves the low-rank coincidences `D3 = A3` and `B2 = C2`.
    pub fn canonical(self) -> LieType {
        match (self.family, self.rank) {
            (Family::D, 3) => LieType { family: Family::A, rank: 3 },
            (Family::B, 2) => LieType { family: Family::C, rank: 2 },
            _ => self,
        }
    }

    /// Every admissible type with rank at most `cap` (exceptional types included
    /// when their rank fits), canonical representatives only.
    pub fn all_up_to(cap: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for r in 1..=cap {
            for fam in [Family::A, Family::B, Family::C, Family::D] {
                if let Ok(t) = LieType::new(fam, r) {
                    if t.canonical() == t {
                        out.push(t);
                    }
                }
            }
        }
        for (fam, r) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
            if r <= cap {
                out.push(LieType { family: fam, rank: r });
            }
        }
        out.sort();
        out
    }

    /// The Cartan matrix in Bourbaki numbering.
    pub fn cartan(self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i - 1][j - 1] = aij;
            a[j - 1][i - 1] = aji;
        };
        match self.family {
            Family::A => (1..r).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (1..r - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(r - 1, r, -2, -1);
            }
            Family::C => {
                (1..r - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(r - 1, r, -1, -2);
            }
            Family::D => {
                (1..r - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(r - 2, r, -1, -1);
            }
            Family::E => {
                link(1, 3, -1, -1);
                link(2, 4, -1, -1);
                (3..r).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(1, 2, -1, -1);
                link(2, 3, -2, -1);
                link(3, 4, -1, -1);
            }
            Family::G => link(1, 2, -1, -3),
        }
        a
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl From<LieType> for String {
    fn from(t: LieType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for LieType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Accepts `A3`, `e8`, `SU(4)`, `Spin(9)`, `Sp(2)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownType(s.to_string());
        let t = s.trim();
        if let Some((name, rest)) = t.split_once('(') {
            let n: usize = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
            return match name.trim().to_ascii_lowercase().as_str() {
                "su" if n >= 2 => LieType::new(Family::A, n - 1),
                "sp" => match n {
                    1 => LieType::new(Family::A, 1),
                    _ => LieType::new(Family::C, n),
                },
                "spin" => match n {
                    3 => LieType::new(Family::A, 1),
                    n if n >= 5 && n % 2 == 1 => LieType::new(Family::B, (n - 1) / 2),
                    n if n >= 6 && n % 2 == 0 => LieType::new(Family::D, n / 2),
                    _ => Err(Error::Precondition(format!("{t} is not a simple group"))),
                },
                _ => Err(bad()),
            };
        }
        let mut chars = t.chars();
        let fam = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        LieType::new(fam, rank)
    }
}

/// A proper subset of the extended index set `{0, 1, …, r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceIndex {
    rank: usize,
    members: Vec<usize>,
}

impl FaceIndex {
    pub fn new(rank: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        let members: Vec<usize> = set.into_iter().collect();
        if members.len() > rank || members.iter().any(|&i| i > rank) {
            return Err(Error::ImproperFace(members));
        }
        Ok(FaceIndex { rank, members })
    }

    pub fn from_mask(rank: usize, mask: u32) -> Result<Self> {
        Self::new(rank, (0..=rank).filter(|&i| mask & (1 << i) != 0))
    }

    /// All proper subsets, ordered by bitmask.
    pub fn all_proper(rank: usize) -> impl Iterator<Item = FaceIndex> {
        let full = (1u32 << (rank + 1)) - 1;
        (0..full).map(move |m| FaceIndex::from_mask(rank, m).expect("proper mask"))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..=self.rank).filter(|&i| !self.contains(i)).collect()
    }

    pub fn mask(&self) -> u32 {
        self.members.iter().map(|&i| 1u32 << i).sum()
    }

    /// Dimension of the face cut out by the walls in this set.
    pub fn face_dim(&self) -> usize {
        self.rank - self.members.len()
    }
}

/// Root-system data derived from a Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub lie_type: LieType,
    pub cartan: Vec<Vec<i64>>,
    /// `d_i` with `d_i·a_ij = d_j·a_ji`, normalized so long roots get 1.
    pub symmetrizer: Vec<Q>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    pub alpha0: Vec<i64>,
    /// `(n_0^∨, …, n_r^∨)` with `n_0^∨ = 1`.
    pub coroot_integers: Vec<u64>,
    /// `(n_1, …, n_r)`: coefficients of `θ` in the simple roots.
    pub root_integers: Vec<u64>,
    pub degrees: Vec<u64>,
    pub weyl_order: u64,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Coxeter number.
    pub fn coxeter_number(&self) -> u64 {
        *self.degrees.iter().max().unwrap()
    }

    /// `α_i(x)` for a point `x` in simple-coroot coordinates, `i ≥ 1`.
    pub fn eval_root(&self, i: usize, x: &[Q]) -> Q {
        let row = &self.cartan[i - 1];
        row.iter().zip(x).fold(Q::zero(), |acc, (&a, xj)| acc + xj * qi(a))
    }

    /// `θ(x)` for a point in simple-coroot coordinates.
    pub fn eval_theta(&self, x: &[Q]) -> Q {
        (1..=self.rank()).fold(Q::zero(), |acc, i| acc + self.eval_root(i, x) * qi(self.theta[i - 1]))
    }

    /// Simple-coroot coordinates of `α_i^∨`, `i ∈ {0, …, r}`.
    pub fn coroot_vector(&self, i: usize) -> Vec<i64> {
        let r = self.rank();
        if i == 0 {
            self.coroot_integers[1..].iter().map(|&n| -(n as i64)).collect()
        } else {
            (1..=r).map(|j| i64::from(j == i)).collect()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.lie_type.to_string(),
            "cartan": self.cartan,
            "coroot_integers": self.coroot_integers,
            "root_integers": self.root_integers,
            "degrees": self.degrees,
            "weyl_order": self.weyl_order,
            "positive_roots": self.positive_roots.len(),
        })
    }
}

pub fn build_root_datum(t: LieType) -> Result<RootDatum> {
    let t = LieType::new(t.family, t.rank)?.canonical();
    from_cartan(t, t.cartan())
}

/// Builds the datum for an explicit Cartan matrix, without canonicalizing
/// the type label (so `D3` keeps its D-numbering).
pub fn from_cartan(lie_type: LieType, cartan: Vec<Vec<i64>>) -> Result<RootDatum> {
    let r = cartan.len();
    let breach = |msg: String| Error::InvariantBreach(format!("{lie_type}: {msg}"));

    // squared root lengths, propagated along the diagram
    let mut len2: Vec<Option<Q>> = vec![None; r];
    len2[0] = Some(Q::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..r {
            if j != i && cartan[i][j] != 0 && len2[j].is_none() {
                let l = len2[i].clone().unwrap() * qi(cartan[j][i]) / qi(cartan[i][j]);
                len2[j] = Some(l);
                queue.push_back(j);
            }
        }
    }
    let len2: Vec<Q> = len2.into_iter().map(|l| l.ok_or_else(|| breach("disconnected diagram".into()))).collect::<Result<_>>()?;
    let long = len2.iter().max().unwrap().clone();
    let symmetrizer: Vec<Q> = len2.iter().map(|l| &long / l).collect();
    for i in 0..r {
        for j in 0..r {
            if &symmetrizer[i] * qi(cartan[i][j]) != &symmetrizer[j] * qi(cartan[j][i]) {
                return Err(breach("symmetrizer failed".into()));
            }
        }
    }

    // roots by reflection closure
    let reflect = |beta: &[i64], i: usize| -> Vec<i64> {
        let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
        let mut out = beta.to_vec();
        out[i] -= pairing;
        out
    };
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let e: Vec<i64> = (0..r).map(|j| i64::from(i == j)).collect();
        roots.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            let b = reflect(&beta, i);
            if roots.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }
    let mut positive_roots: Vec<Vec<i64>> = roots.into_iter().filter(|b| b.iter().all(|&c| c >= 0)).collect();
    positive_roots.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    let top = positive_roots.last().unwrap().iter().sum::<i64>();
    let highest: Vec<&Vec<i64>> = positive_roots.iter().filter(|b| b.iter().sum::<i64>() == top).collect();
    if highest.len() != 1 {
        return Err(breach("highest root is not unique".into()));
    }
    let theta = highest[0].clone();
    let alpha0: Vec<i64> = theta.iter().map(|c| -c).collect();

    // θ^∨ = Σ n_i (|α_i|²/|θ|²) α_i^∨
    let mut coroot_integers = vec![1u64];
    for i in 0..r {
        let c = qi(theta[i]) * &len2[i] / &long;
        if !c.is_integer() {
            return Err(breach("non-integral coroot integer".into()));
        }
        coroot_integers.push(c.to_integer().to_u64().unwrap());
    }
    // θ(θ^∨) = 2
    let pairing: i64 = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .map(|(i, j)| theta[i] * cartan[i][j] * coroot_integers[j + 1] as i64)
        .sum();
    if pairing != 2 {
        return Err(breach(format!("θ(θ^∨) = {pairing}")));
    }
    let root_integers: Vec<u64> = theta.iter().map(|&c| c as u64).collect();

    let degrees = coxeter_degrees(&cartan, positive_roots.len())
        .ok_or_else(|| breach("Coxeter element spectrum".into()))?;
    if degrees.iter().map(|d| d - 1).sum::<u64>() != positive_roots.len() as u64 {
        return Err(breach("Σ(d_i − 1) ≠ |Φ⁺|".into()));
    }
    let weyl_order = degrees.iter().product();
    Ok(RootDatum {
        lie_type,
        cartan,
        symmetrizer,
        positive_roots,
        theta,
        alpha0,
        coroot_integers,
        root_integers,
        degrees,
        weyl_order,
    })
}

/// Simple reflection `s_i` (0-based) on simple-coroot coordinates.
pub fn simple_reflection(cartan: &[Vec<i64>], i: usize) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut m: Vec<Vec<i64>> = (0..r).map(|k| (0..r).map(|l| i64::from(k == l)).collect()).collect();
    for l in 0..r {
        m[i][l] -= cartan[i][l];
    }
    m
}

/// Degrees of W read off the eigenvalues `e^{2πi m/h}` of a Coxeter element.
fn coxeter_degrees(cartan: &[Vec<i64>], positive: usize) -> Option<Vec<u64>> {
    let r = cartan.len();
    let h = (2 * positive / r) as u64;
    let mut c: Vec<Vec<i64>> = (0..r).map(|k| (0..r).map(|l| i64::from(k == l)).collect()).collect();
    for i in 0..r {
        let s = simple_reflection(cartan, i);
        c = (0..r)
            .map(|k| (0..r).map(|l| (0..r).map(|m| c[k][m] * s[m][l]).sum()).collect())
            .collect();
    }
    let mut p = charpoly(&c);
    let mut exponents = Vec::new();
    for d in (1..=h).filter(|d| h.is_multiple_of(*d)) {
        let phi = cyclotomic(d);
        while let Some(quot) = poly_div_exact(&p, &phi) {
            p = quot;
            exponents.extend((1..h).filter(|m| h / m.gcd(&h) == d));
        }
    }
    if p != vec![1] || exponents.len() != r {
        return None;
    }
    let mut degrees: Vec<u64> = exponents.into_iter().map(|m| m + 1).collect();
    degrees.sort_unstable();
    Some(degrees)
}

/// Lcm of the coroot integers.
pub fn dynkin_index(datum: &RootDatum) -> u64 {
    lcm_all(datum.coroot_integers.iter().copied())
}

/// Gcd of the coroot integers off the face.
pub fn n_vee(datum: &RootDatum, face: &FaceIndex) -> u64 {
    gcd_all(face.complement().into_iter().map(|i| datum.coroot_integers[i]))
}

/// `(1/n^∨(I))·Σ_{i∉I} n_i^∨ α_i^∨`, as coefficients indexed by the
/// extended index set `0..=r`.
pub fn zeta_class(datum: &RootDatum, face: &FaceIndex) -> Vec<Q> {
    let n = n_vee(datum, face) as i64;
    (0..=datum.rank())
        .map(|i| if face.contains(i) { Q::zero() } else { Q::new(BigInt::from(datum.coroot_integers[i]), BigInt::from(n)) })
        .collect()
}

/// Rewrites extended coefficients in the simple-coroot basis using
/// `α_0^∨ = −Σ n_i^∨ α_i^∨`.
pub fn extended_to_simple(datum: &RootDatum, coeffs: &[Q]) -> Vec<Q> {
    (1..=datum.rank())
        .map(|i| &coeffs[i] - &coeffs[0] * qi(datum.coroot_integers[i] as i64))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeQuotient {
    pub free_rank: usize,
    pub torsion: FinAbGroup,
}

/// `Q^∨ / Q^∨(I)`, where `Q^∨(I)` is spanned by `α_i^∨` for `i ∈ I`, computed
/// by Smith normal form of the generators in the simple-coroot lattice.
pub fn lattice_quotient(datum: &RootDatum, face: &FaceIndex) -> LatticeQuotient {
    let r = datum.rank();
    let gens = face.members();
    let mut m = IntMatrix::zeros(r, gens.len());
    for (col, &i) in gens.iter().enumerate() {
        for (row, c) in datum.coroot_vector(i).into_iter().enumerate() {
            m.set(row, col, BigInt::from(c));
        }
    }
    let snf = smith_normal_form(&m);
    let torsion: Vec<u64> = snf.divisors.iter().map(|d| d.to_u64().expect("small divisor")).collect();
    LatticeQuotient {
        free_rank: r - snf.rank(),
        torsion: FinAbGroup::from_cyclic(0, &torsion),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        build_root_datum(s.parse().unwrap()).unwrap()
    }

    fn sorted(v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn parses_aliases() {
        assert_eq!("SU(3)".parse::<LieType>().unwrap().to_string(), "A2");
        assert_eq!("Spin(9)".parse::<LieType>().unwrap().to_string(), "B4");
        assert_eq!("Spin(10)".parse::<LieType>().unwrap().to_string(), "D5");
        assert_eq!("Sp(3)".parse::<LieType>().unwrap().to_string(), "C3");
        assert_eq!("e8".parse::<LieType>().unwrap().to_string(), "E8");
        assert!("E9".parse::<LieType>().is_err());
        assert!("Spin(4)".parse::<LieType>().is_err());
        assert!("B1".parse::<LieType>().is_err());
    }

    #[test]
    fn small_examples() {
        assert_eq!(datum("A2").coroot_integers, vec![1, 1, 1]);
        let g2 = datum("G2");
        assert_eq!(sorted(&g2.coroot_integers), vec![1, 1, 2]);
        assert_eq!(dynkin_index(&g2), 2);
        assert_eq!(g2.weyl_order, 12);
        assert_eq!(g2.theta, vec![3, 2]);
        let e8 = datum("E8");
        assert_eq!(sorted(&e8.coroot_integers), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
        assert_eq!(dynkin_index(&e8), 60);
        assert_eq!(e8.degrees, vec![2, 8, 12, 14, 18, 20, 24, 30]);
    }

    #[test]
    fn dynkin_examples() {
        assert_eq!(dynkin_index(&datum("Sp(4)")), 1);
        assert_eq!(dynkin_index(&datum("Spin(9)")), 2);
        assert_eq!(dynkin_index(&datum("F4")), 6);
    }

    #[test]
    fn classical_patterns() {
        assert_eq!(datum("B4").coroot_integers, vec![1, 1, 2, 2, 1]);
        assert_eq!(datum("D5").coroot_integers, vec![1, 1, 2, 2, 1, 1]);
        assert_eq!(datum("C3").coroot_integers, vec![1, 1, 1, 1]);
        assert_eq!(datum("D4").degrees, vec![2, 4, 4, 6]);
    }

    #[test]
    fn n_vee_and_zeta() {
        let g2 = datum("G2");
        let empty = FaceIndex::new(2, []).unwrap();
        assert_eq!(n_vee(&g2, &empty), 1);
        for j in 0..=2 {
            let face = FaceIndex::new(2, (0..=2).filter(|&i| i != j)).unwrap();
            assert_eq!(n_vee(&g2, &face), g2.coroot_integers[j]);
            let z = zeta_class(&g2, &face);
            for i in 0..=2 {
                assert_eq!(z[i], qi(i64::from(i == j)));
            }
        }
        // complement {0, 2}: coroot integers 1 and 2
        let face = FaceIndex::new(2, [1]).unwrap();
        assert_eq!(zeta_class(&g2, &face), vec![qi(1), qi(0), qi(2)]);
    }

    #[test]
    fn lattice_quotient_corners() {
        let e6 = datum("E6");
        let q = lattice_quotient(&e6, &FaceIndex::new(6, []).unwrap());
        assert_eq!((q.free_rank, q.torsion.is_trivial()), (6, true));
        for j in 0..=6 {
            let face = FaceIndex::new(6, (0..=6).filter(|&i| i != j)).unwrap();
            let q = lattice_quotient(&e6, &face);
            assert_eq!(q.free_rank, 0);
            assert_eq!(q.torsion, FinAbGroup::from_cyclic(0, &[e6.coroot_integers[j]]));
        }
    }

    #[test]
    fn face_index_rejects_full_set() {
        assert!(FaceIndex::new(2, [0, 1, 2]).is_err());
        assert_eq!(FaceIndex::all_proper(2).count(), 7);
    }
}
