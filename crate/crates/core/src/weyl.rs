//! The Weyl group as integer matrices on simple-coroot coordinates.
//!
//! Provides enumeration, Molien sums, face stabilizers, double cosets, the
//! cell census of `T^k/W` and reduction into the fundamental alcove.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcove::AlcoveGeometry;
use crate::arith::{charpoly, qi, Poly, Q};
use crate::error::{Error, Result};
use crate::rootdatum::{build_root_datum, simple_reflection, FaceIndex, LieType, RootDatum};

/// Enumeration cap used when callers do not supply one (E6 fits, E7 does not).
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// An `r×r` integer matrix acting on simple-coroot coordinates. Columns are
/// coroots, so every entry fits in an `i8`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    rank: usize,
    entries: Box<[i8]>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let entries = (0..rank * rank).map(|k| i8::from(k / rank == k % rank)).collect();
        WeylElement { rank, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rank = rows.len();
        let mut entries = Vec::with_capacity(rank * rank);
        for row in rows {
            if row.len() != rank {
                return Err(Error::Precondition("Weyl element must be square".into()));
            }
            for &x in row {
                entries.push(i8::try_from(x).map_err(|_| Error::Precondition(format!("entry {x} out of range")))?);
            }
        }
        Ok(WeylElement { rank, entries: entries.into() })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j] as i64
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let r = self.rank;
        let mut entries = vec![0i8; r * r];
        for i in 0..r {
            for j in 0..r {
                let s: i64 = (0..r).map(|k| self.get(i, k) * other.get(k, j)).sum();
                entries[i * r + j] = s as i8;
            }
        }
        WeylElement { rank: r, entries: entries.into() }
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        (0..self.rank)
            .map(|i| (0..self.rank).fold(Q::zero(), |acc, j| acc + &x[j] * qi(self.get(i, j))))
            .collect()
    }

    pub fn apply_int(&self, x: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.get(i, j) * x[j]).sum()).collect()
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.get(i, j) as f64 * x[j]).sum()).collect()
    }

    pub fn trace(&self) -> i64 {
        (0..self.rank).map(|i| self.get(i, i)).sum()
    }

    pub fn charpoly(&self) -> Poly {
        charpoly(&self.rows())
    }

    pub fn det(&self) -> i64 {
        let p = self.charpoly();
        if self.rank.is_multiple_of(2) {
            p[0]
        } else {
            -p[0]
        }
    }

    /// Row `i` minus `Σ_m a_im row_m`: left multiplication by `s_i`.
    fn reflect_left(&self, cartan: &[Vec<i64>], i: usize) -> Option<WeylElement> {
        let r = self.rank;
        let mut entries = self.entries.to_vec();
        for l in 0..r {
            let s: i64 = (0..r).map(|m| cartan[i][m] * self.get(m, l)).sum();
            entries[i * r + l] = i8::try_from(self.get(i, l) - s).ok()?;
        }
        Some(WeylElement { rank: r, entries: entries.into() })
    }
}

/// A fully enumerated Weyl group.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    /// Sorted by matrix entries, row-major.
    pub elements: Vec<WeylElement>,
    /// Characteristic polynomial (increasing degree) → multiplicity.
    pub charpoly_buckets: BTreeMap<Poly, u64>,
    pub order: u64,
    identity: usize,
    generators: Vec<usize>,
}

/// Enumerates W by breadth-first closure over the simple reflections.
pub fn generate(datum: &RootDatum, element_cap: usize) -> Result<WeylGroup> {
    if datum.weyl_order > element_cap as u64 {
        return Err(Error::ElementCap { required: datum.weyl_order as u128, cap: element_cap });
    }
    let r = datum.rank();
    let id = WeylElement::identity(r);
    let mut seen: HashSet<WeylElement> = HashSet::with_capacity(datum.weyl_order as usize);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for i in 0..r {
            let sw = w
                .reflect_left(&datum.cartan, i)
                .ok_or_else(|| Error::InvariantBreach("Weyl matrix entry overflow".into()))?;
            if !seen.contains(&sw) {
                if seen.len() >= element_cap {
                    return Err(Error::ElementCap { required: datum.weyl_order as u128, cap: element_cap });
                }
                seen.insert(sw.clone());
                queue.push_back(sw);
            }
        }
    }
    let mut elements: Vec<WeylElement> = seen.into_iter().collect();
    elements.par_sort_unstable();
    let buckets = charpoly_histogram(&elements);
    WeylGroup::assemble(datum.clone(), elements, buckets)
}

fn charpoly_histogram(elements: &[WeylElement]) -> BTreeMap<Poly, u64> {
    elements
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Poly, u64>, w| {
            *acc.entry(w.charpoly()).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        })
}

impl WeylGroup {
    fn assemble(datum: RootDatum, elements: Vec<WeylElement>, buckets: BTreeMap<Poly, u64>) -> Result<WeylGroup> {
        let order = elements.len() as u64;
        if order != datum.weyl_order {
            return Err(Error::PartialEnumeration { have: elements.len(), expected: datum.weyl_order as u128 });
        }
        if buckets.values().sum::<u64>() != order {
            return Err(Error::InvariantBreach("charpoly buckets do not sum to |W|".into()));
        }
        let r = datum.rank();
        let mut group = WeylGroup { datum, elements, charpoly_buckets: buckets, order, identity: 0, generators: Vec::new() };
        group.identity = group
            .index_of(&WeylElement::identity(r))
            .ok_or_else(|| Error::InvariantBreach("identity missing".into()))?;
        group.generators = (0..r)
            .map(|i| {
                let s = WeylElement::from_rows(&simple_reflection(&group.datum.cartan, i))?;
                group.index_of(&s).ok_or_else(|| Error::InvariantBreach("simple reflection missing".into()))
            })
            .collect::<Result<_>>()?;
        Ok(group)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.elements.binary_search(w).ok()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    /// Indices of the simple reflections `s_1, …, s_r`.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].mul(&self.elements[b]);
        self.index_of(&p).expect("W is closed under multiplication")
    }

    fn check_complete(&self) -> Result<()> {
        if self.elements.len() as u64 != self.datum.weyl_order {
            return Err(Error::PartialEnumeration { have: self.elements.len(), expected: self.datum.weyl_order as u128 });
        }
        Ok(())
    }

    /// Conjugacy class id of every element, classes numbered by first member.
    pub fn conjugacy_classes(&self) -> Vec<usize> {
        let n = self.elements.len();
        let mut class = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if class[start] != usize::MAX {
                continue;
            }
            class[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(w) = queue.pop_front() {
                for &s in &self.generators {
                    let c = self.mul(self.mul(s, w), s);
                    if class[c] == usize::MAX {
                        class[c] = next;
                        queue.push_back(c);
                    }
                }
            }
            next += 1;
        }
        class
    }

    pub fn to_cache_json(&self) -> serde_json::Value {
        let cache = WeylCache {
            format: CACHE_FORMAT.to_string(),
            version: CACHE_VERSION,
            lie_type: self.datum.lie_type.to_string(),
            order: self.order,
            elements: self.elements.iter().map(|w| w.entries.to_vec()).collect(),
            charpoly_histogram: self.charpoly_buckets.iter().map(|(p, &m)| (p.clone(), m)).collect(),
        };
        serde_json::to_value(cache).expect("cache serializes")
    }

    /// Rebuilds a group from [`WeylGroup::to_cache_json`] output, checking
    /// that the order equals the product of the degrees.
    pub fn from_cache_json(value: serde_json::Value) -> Result<WeylGroup> {
        let cache: WeylCache = serde_json::from_value(value).map_err(|e| Error::Cache(e.to_string()))?;
        if cache.format != CACHE_FORMAT || cache.version != CACHE_VERSION {
            return Err(Error::Cache(format!("unsupported cache {} v{}", cache.format, cache.version)));
        }
        let t: LieType = cache.lie_type.parse()?;
        let datum = build_root_datum(t)?;
        if cache.order != datum.weyl_order {
            return Err(Error::Cache(format!("order {} ≠ ∏ degrees {}", cache.order, datum.weyl_order)));
        }
        let r = datum.rank();
        let mut elements = Vec::with_capacity(cache.elements.len());
        for e in cache.elements {
            if e.len() != r * r {
                return Err(Error::Cache("element of wrong size".into()));
            }
            elements.push(WeylElement { rank: r, entries: e.into() });
        }
        if elements.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::Cache("elements not in canonical order".into()));
        }
        let buckets: BTreeMap<Poly, u64> = cache.charpoly_histogram.into_iter().collect();
        WeylGroup::assemble(datum, elements, buckets).map_err(|e| Error::Cache(e.to_string()))
    }
}

const CACHE_FORMAT: &str = "commhom-weyl";
const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct WeylCache {
    format: String,
    version: u32,
    #[serde(rename = "type")]
    lie_type: String,
    order: u64,
    elements: Vec<Vec<i8>>,
    charpoly_histogram: Vec<(Poly, u64)>,
}

/// Coefficients of `∏(1 − t^{2d_i})/|W| · Σ_w det(1+tw)^n / det(1−t²w)` up to
/// `t^max_deg`.
pub fn molien_poincare(w: &WeylGroup, n: u32, max_deg: usize) -> Result<Vec<u64>> {
    w.check_complete()?;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let len = max_deg + 1;
    let mut total = vec![BigInt::zero(); len];
    for (cp, &mult) in &w.charpoly_buckets {
        // det(1 − s·w) = Σ_k c_k s^{r−k}
        let r = cp.len() - 1;
        let d: Vec<i64> = (0..=r).map(|j| cp[r - j]).collect();
        let plus: Vec<BigInt> = d.iter().enumerate().map(|(j, &c)| BigInt::from(if j % 2 == 0 { c } else { -c })).collect();
        let mut num = vec![BigInt::one()];
        for _ in 0..n {
            num = series_mul(&num, &plus, len);
        }
        // 1 / det(1 − t²w), constant term 1
        let mut den = vec![BigInt::zero(); len];
        for (j, c) in d.iter().enumerate() {
            if 2 * j < len {
                den[2 * j] = BigInt::from(*c);
            }
        }
        let inv = series_inverse(&den, len);
        let term = series_mul(&num, &inv, len);
        for (t, x) in total.iter_mut().zip(term) {
            *t += x * BigInt::from(mult);
        }
    }
    for &deg in &w.datum.degrees {
        let mut factor = vec![BigInt::zero(); len];
        factor[0] = BigInt::one();
        if (2 * deg as usize) < len {
            factor[2 * deg as usize] = -BigInt::one();
        }
        total = series_mul(&total, &factor, len);
    }
    let order = BigInt::from(w.order);
    total
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let (q, rem) = c.div_rem(&order);
            if !rem.is_zero() || q.is_negative() {
                return Err(Error::InvariantBreach(format!("Poincaré coefficient of t^{k} is {c}/{order}")));
            }
            q.to_u64().ok_or_else(|| Error::Precondition(format!("coefficient of t^{k} exceeds u64")))
        })
        .collect()
}

fn series_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inverse(a: &[BigInt], len: usize) -> Vec<BigInt> {
    assert!(a[0].is_one(), "series must have constant term 1");
    let mut inv = vec![BigInt::zero(); len];
    inv[0] = BigInt::one();
    for k in 1..len {
        let mut s = BigInt::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &inv[k - j];
        }
        inv[k] = -s;
    }
    inv
}

/// `(1/|W|)·Σ_w tr(w)²`.
pub fn irreducibility_check(w: &WeylGroup) -> Result<BigRational> {
    w.check_complete()?;
    let mut s = BigInt::zero();
    for (cp, &mult) in &w.charpoly_buckets {
        let tr = -cp[cp.len() - 2];
        s += BigInt::from(tr * tr) * BigInt::from(mult);
    }
    Ok(BigRational::new(s, BigInt::from(w.order)))
}

/// `(1/|W|)·Σ_w det(1 − w)^k`, the Euler characteristic of `T^k/W`.
pub fn euler_char_rep(w: &WeylGroup, k: u32) -> Result<i64> {
    w.check_complete()?;
    let mut s = BigInt::zero();
    for (cp, &mult) in &w.charpoly_buckets {
        let det: i64 = cp.iter().sum();
        s += BigInt::from(det).pow(k) * BigInt::from(mult);
    }
    let (q, rem) = s.div_rem(&BigInt::from(w.order));
    if !rem.is_zero() {
        return Err(Error::InvariantBreach(format!("Lefschetz average {s}/{} not integral", w.order)));
    }
    q.to_i64().ok_or_else(|| Error::Precondition("Euler characteristic exceeds i64".into()))
}

/// Stabilizer of the barycenter of a face modulo the coroot lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerSubgroup {
    pub face: FaceIndex,
    /// Sorted element indices into [`WeylGroup::elements`].
    pub members: Vec<usize>,
}

impl StabilizerSubgroup {
    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// `{w : w·b(σ) − b(σ) ∈ Q^∨}` for the barycenter `b(σ)` of the face.
pub fn face_stabilizer(w: &WeylGroup, geometry: &AlcoveGeometry, face: &FaceIndex) -> StabilizerSubgroup {
    let b = geometry.barycenter(face);
    // b = num / den with a common denominator
    let den = b.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num: Vec<BigInt> = b.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let small = den.to_i64().zip(num.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>());
    let members: Vec<usize> = (0..w.elements.len())
        .into_par_iter()
        .filter(|&idx| {
            let e = &w.elements[idx];
            match &small {
                Some((d, nv)) => {
                    let moved = e.apply_int(nv);
                    moved.iter().zip(nv).all(|(m, x)| (m - x) % d == 0)
                }
                None => (0..e.rank()).all(|i| {
                    let m: BigInt = (0..e.rank()).map(|j| &num[j] * e.get(i, j)).sum();
                    ((m - &num[i]) % &den).is_zero()
                }),
            }
        })
        .collect();
    StabilizerSubgroup { face: face.clone(), members }
}

/// A small generating set of a subgroup given by its members.
fn subgroup_generators(w: &WeylGroup, members: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span: HashSet<usize> = HashSet::from([w.identity]);
    for &h in members {
        if span.contains(&h) {
            continue;
        }
        gens.push(h);
        let mut queue: VecDeque<usize> = span.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = w.mul(x, g);
                if span.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

/// Least representative of each double coset `H\W/K`, in canonical order.
pub fn double_cosets(w: &WeylGroup, h: &StabilizerSubgroup, k: &StabilizerSubgroup) -> Vec<WeylElement> {
    double_coset_indices(w, &h.members, &k.members)
        .into_iter()
        .map(|i| w.elements[i].clone())
        .collect()
}

fn double_coset_indices(w: &WeylGroup, h: &[usize], k: &[usize]) -> Vec<usize> {
    let hg = subgroup_generators(w, h);
    let kg = subgroup_generators(w, k);
    let mut seen = vec![false; w.elements.len()];
    let mut reps = Vec::new();
    for start in 0..w.elements.len() {
        if seen[start] {
            continue;
        }
        reps.push(start);
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let left = hg.iter().map(|&g| w.mul(g, x));
            let right = kg.iter().map(|&g| w.mul(x, g));
            let next: Vec<usize> = left.chain(right).collect();
            for y in next {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    reps
}

/// Number of cells of `T^k/W` in each dimension `0..=k·r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCensus {
    pub k: u32,
    pub counts: Vec<u64>,
}

impl CellCensus {
    pub fn euler_characteristic(&self) -> i64 {
        self.counts.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }
}

/// Cells of `T^k/W`: a tuple of faces `(σ_1, …, σ_k)` together with a
/// W-orbit on `W/W_{σ_1} × … × W/W_{σ_k}`. For `k = 2` orbits are counted by
/// explicit double cosets, otherwise by Burnside averaging.
pub fn cell_census(w: &WeylGroup, geometry: &AlcoveGeometry, k: u32) -> Result<CellCensus> {
    w.check_complete()?;
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let r = w.rank();
    let faces: Vec<FaceIndex> = FaceIndex::all_proper(r).collect();
    let stabs: Vec<StabilizerSubgroup> = faces.iter().map(|f| face_stabilizer(w, geometry, f)).collect();
    let mut counts = vec![0u64; k as usize * r + 1];
    if k == 2 {
        let mut memo: BTreeMap<(Vec<usize>, Vec<usize>), u64> = BTreeMap::new();
        for (f1, s1) in faces.iter().zip(&stabs) {
            for (f2, s2) in faces.iter().zip(&stabs) {
                let key = (s1.members.clone(), s2.members.clone());
                let n = *memo
                    .entry(key)
                    .or_insert_with(|| double_coset_indices(w, &s1.members, &s2.members).len() as u64);
                counts[f1.face_dim() + f2.face_dim()] += n;
            }
        }
    } else {
        counts = burnside_census(w, &faces, &stabs, k)?;
    }
    Ok(CellCensus { k, counts })
}

/// Orbit counts `(1/|W|)·Σ_w ∏_i fix(w, W/W_{σ_i})`, assembled per conjugacy
/// class as a polynomial in the cell dimension.
fn burnside_census(w: &WeylGroup, faces: &[FaceIndex], stabs: &[StabilizerSubgroup], k: u32) -> Result<Vec<u64>> {
    let r = w.rank();
    let class = w.conjugacy_classes();
    let nclass = class.iter().max().map_or(0, |m| m + 1);
    let mut class_size = vec![0u64; nclass];
    for &c in &class {
        class_size[c] += 1;
    }
    let mut total = vec![BigInt::zero(); k as usize * r + 1];
    // per class: Σ_σ fix · x^{dim σ}
    let mut per_class = vec![vec![BigInt::zero(); r + 1]; nclass];
    for (f, s) in faces.iter().zip(stabs) {
        let mut hits = vec![0u64; nclass];
        for &m in &s.members {
            hits[class[m]] += 1;
        }
        for c in 0..nclass {
            // fix(w, W/H) = |C_W(w)|·|cl(w) ∩ H| / |H|
            let centralizer = w.order / class_size[c];
            let num = centralizer * hits[c];
            if !num.is_multiple_of(s.order() as u64) {
                return Err(Error::InvariantBreach("non-integral fixed-coset count".into()));
            }
            per_class[c][f.face_dim()] += BigInt::from(num / s.order() as u64);
        }
    }
    for c in 0..nclass {
        let mut p = vec![BigInt::one()];
        for _ in 0..k {
            p = series_mul(&p, &per_class[c], k as usize * r + 1);
        }
        for (t, x) in total.iter_mut().zip(p) {
            *t += x * BigInt::from(class_size[c]);
        }
    }
    let order = BigInt::from(w.order);
    total
        .into_iter()
        .map(|c| {
            let (q, rem) = c.div_rem(&order);
            if !rem.is_zero() {
                return Err(Error::InvariantBreach("Burnside count not integral".into()));
            }
            q.to_u64().ok_or_else(|| Error::Precondition("cell count exceeds u64".into()))
        })
        .collect()
}

/// Result of reducing a point into the fundamental alcove:
/// `point = element·x + translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcoveReduction {
    pub point: Vec<Q>,
    pub element: WeylElement,
    pub translation: Vec<i64>,
}

const REDUCTION_CAP: usize = 100_000;

/// Reflects across violated walls (`α_j < 0`, or `θ > 1` via the affine
/// reflection) until the point lies in the alcove.
pub fn alcove_reduce(datum: &RootDatum, x: &[Q]) -> Result<AlcoveReduction> {
    let r = datum.rank();
    if x.len() != r {
        return Err(Error::Precondition(format!("point has {} coordinates, rank is {r}", x.len())));
    }
    let coroot_theta: Vec<i64> = datum.coroot_integers[1..].iter().map(|&n| n as i64).collect();
    let mut point = x.to_vec();
    let mut mat: Vec<Vec<i64>> = WeylElement::identity(r).rows();
    let mut trans = vec![0i64; r];
    for _ in 0..REDUCTION_CAP {
        let wall = (1..=r).find(|&j| datum.eval_root(j, &point).is_negative());
        if let Some(j) = wall {
            // s_j: y ↦ y − α_j(y)·α_j^∨ changes coordinate j only
            let row = &datum.cartan[j - 1];
            let a = datum.eval_root(j, &point);
            point[j - 1] -= a;
            let new_row: Vec<i64> = (0..r).map(|l| mat[j - 1][l] - (0..r).map(|m| row[m] * mat[m][l]).sum::<i64>()).collect();
            let shift: i64 = (0..r).map(|m| row[m] * trans[m]).sum();
            mat[j - 1] = new_row;
            trans[j - 1] -= shift;
            continue;
        }
        let th = datum.eval_theta(&point);
        if th > Q::one() {
            // y ↦ y − (θ(y) − 1)·θ^∨
            let excess = th - Q::one();
            for (p, &c) in point.iter_mut().zip(&coroot_theta) {
                *p -= &excess * qi(c);
            }
            let theta_row = |v: &[i64]| -> i64 {
                (0..r).map(|i| datum.theta[i] * (0..r).map(|m| datum.cartan[i][m] * v[m]).sum::<i64>()).sum()
            };
            for l in 0..r {
                let col: Vec<i64> = (0..r).map(|m| mat[m][l]).collect();
                let t = theta_row(&col);
                for m in 0..r {
                    mat[m][l] -= t * coroot_theta[m];
                }
            }
            let t = theta_row(&trans);
            for m in 0..r {
                trans[m] += coroot_theta[m] * (1 - t);
            }
            continue;
        }
        return Ok(AlcoveReduction { point, element: WeylElement::from_rows(&mat)?, translation: trans });
    }
    Err(Error::ReductionCap(REDUCTION_CAP))
}
