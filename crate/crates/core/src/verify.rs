//! The acceptance suite as a library routine, shared by the `verify`
//! command. Each criterion returns a pass/fail line with a short detail.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_traits::One;
use serde::Serialize;

use crate::alcove::AlcoveGeometry;
use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::geom::{beta_check, cocycle_check};
use crate::homology::FinAbGroup;
use crate::invariants::{
    bredon_e2_fragment, h2_extension_semisimple, pi2_hom_n, pi2_hom_pairs, pi4_commutative_classifying, spin_pi2_stability,
};
use crate::rootdatum::{build_root_datum, dynkin_index, lattice_quotient, n_vee, FaceIndex, Family, LieType, RootDatum};
use crate::simplicial::torus_quotient_homology;
use crate::weyl::{cell_census, euler_char_rep, irreducibility_check, molien_poincare, WeylGroup};
use crate::wps::{composite_degree_h2, spin5_spin7_chain, spin_stability_degree, spin_threshold, SpinParity};

pub const CRITERIA: usize = 11;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Largest rank for criteria that enumerate Weyl groups.
    pub rank_cap: usize,
    /// Sample count for the geometry checks.
    pub samples: usize,
    /// Mesh size for the degree of `π∘β`; it is also run at twice this size.
    pub mesh: usize,
    /// Residual threshold for the algebraic identities in the geometry checks.
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { rank_cap: 6, samples: 10_000, mesh: 50, tol: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    /// A cross-check inside the library failed, as opposed to a plain mismatch.
    pub breach: bool,
    pub detail: String,
    pub seconds: f64,
}

/// Source of enumerated Weyl groups, e.g. backed by an on-disk cache.
pub trait GroupSource {
    fn group(&mut self, datum: &RootDatum) -> Result<WeylGroup>;
}

/// Enumerates every group afresh.
pub struct Enumerate;

impl GroupSource for Enumerate {
    fn group(&mut self, datum: &RootDatum) -> Result<WeylGroup> {
        crate::weyl::generate(datum, crate::weyl::DEFAULT_ELEMENT_CAP)
    }
}

/// Reads enumerated groups from `dir`, writing them there on a miss. An
/// unreadable or stale entry is regenerated.
pub struct DiskCache {
    dir: PathBuf,
    pub hits: usize,
    pub misses: usize,
}

impl DiskCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(DiskCache { dir, hits: 0, misses: 0 })
    }

    pub fn path_for(&self, datum: &RootDatum) -> PathBuf {
        self.dir.join(format!("weyl-{}.json", datum.lie_type))
    }

    fn load(&self, datum: &RootDatum) -> Option<WeylGroup> {
        let text = fs::read_to_string(self.path_for(datum)).ok()?;
        let w = WeylGroup::from_cache_json(serde_json::from_str(&text).ok()?).ok()?;
        (w.datum.lie_type == datum.lie_type && w.datum.cartan == datum.cartan).then_some(w)
    }
}

impl GroupSource for DiskCache {
    fn group(&mut self, datum: &RootDatum) -> Result<WeylGroup> {
        if let Some(w) = self.load(datum) {
            self.hits += 1;
            return Ok(w);
        }
        self.misses += 1;
        let w = Enumerate.group(datum)?;
        let path = self.path_for(datum);
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string(&w.to_cache_json()).map_err(|e| Error::Cache(e.to_string()))?;
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, &path))
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Ok(w)
    }
}

pub fn title(id: usize) -> &'static str {
    match id {
        1 => "coroot integers and Dynkin indices",
        2 => "Poincaré series of commuting tuples",
        3 => "irreducibility of the reflection representation",
        4 => "lattice quotients by Smith normal form",
        5 => "prime assembly equals Dynkin index",
        6 => "cell census Euler identity",
        7 => "simplicial oracle for the torus quotient",
        8 => "Spin stability degrees",
        9 => "composite degree equals lcm",
        10 => "geometry of the generator and cocycle",
        11 => "theorem-table operations",
        _ => "unknown criterion",
    }
}

/// Outcome of one check: `Ok(detail)` when passing, `Err(message)` for a
/// mismatch.
type Check = std::result::Result<String, String>;

fn fail(msg: String) -> Result<Check> {
    Ok(Err(msg))
}

pub fn run_criterion(id: usize, opts: &VerifyOptions, groups: &mut dyn GroupSource) -> CriterionOutcome {
    let start = Instant::now();
    let result = match id {
        1 => coroot_table(),
        2 => poincare(opts, groups),
        3 => irreducibility(opts, groups),
        4 => lattice(opts),
        5 => prime_assembly(),
        6 => census(opts, groups),
        7 => simplicial_oracle(),
        8 => spin(),
        9 => composite(),
        10 => geometry(opts),
        11 => theorem_table(),
        _ => Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (passed, breach, detail) = match result {
        Ok(Ok(d)) => (true, false, d),
        Ok(Err(d)) => (false, false, d),
        Err(e) => (false, e.is_invariant_breach(), e.to_string()),
    };
    CriterionOutcome { id, title: title(id), passed, breach, detail, seconds }
}

pub fn run_all(opts: &VerifyOptions, groups: &mut dyn GroupSource) -> Vec<CriterionOutcome> {
    (1..=CRITERIA).map(|id| run_criterion(id, opts, groups)).collect()
}

/// The published table: coroot-integer sets and their lcm.
fn table_entry(t: LieType) -> (&'static [u64], u64) {
    match t.family {
        Family::A | Family::C => (&[1], 1),
        Family::B | Family::D => (&[1, 2], 2),
        Family::E if t.rank == 6 => (&[1, 2, 3], 6),
        Family::E if t.rank == 7 => (&[1, 2, 3, 4], 12),
        Family::E => (&[1, 2, 3, 4, 5, 6], 60),
        Family::F => (&[1, 2, 3], 6),
        Family::G => (&[1, 2], 2),
    }
}

fn coroot_table() -> Result<Check> {
    let types = LieType::all_up_to(8);
    for &t in &types {
        let d = build_root_datum(t)?;
        let mut set = d.coroot_integers.clone();
        set.sort_unstable();
        set.dedup();
        let (want, lcm) = table_entry(t);
        if set != want || dynkin_index(&d) != lcm {
            return fail(format!("{t}: set {set:?}, lcm {}", dynkin_index(&d)));
        }
    }
    Ok(Ok(format!("{} types", types.len())))
}

fn poincare(opts: &VerifyOptions, groups: &mut dyn GroupSource) -> Result<Check> {
    let mut cases = 0;
    for t in LieType::all_up_to(opts.rank_cap.min(4)) {
        let w = groups.group(&build_root_datum(t)?)?;
        for n in 1..=4u32 {
            let s = molien_poincare(&w, n, 6)?;
            if s[0] != 1 || s[1] != 0 || s[2] != binomial(u64::from(n), 2) {
                return fail(format!("{t}, n = {n}: {s:?}"));
            }
            cases += 1;
        }
    }
    let a1 = molien_poincare(&groups.group(&build_root_datum("A1".parse()?)?)?, 2, 3)?;
    if a1 != [1, 0, 1, 2] {
        return fail(format!("A1, n = 2: {a1:?}"));
    }
    Ok(Ok(format!("{cases} series, A1 n=2 gives 1 + t^2 + 2t^3")))
}

fn irreducibility(opts: &VerifyOptions, groups: &mut dyn GroupSource) -> Result<Check> {
    let types = LieType::all_up_to(opts.rank_cap.min(6));
    for &t in &types {
        let w = groups.group(&build_root_datum(t)?)?;
        let v = irreducibility_check(&w)?;
        if !v.is_one() {
            return fail(format!("{t}: {v}"));
        }
    }
    Ok(Ok(format!("{} groups", types.len())))
}

fn lattice(opts: &VerifyOptions) -> Result<Check> {
    let mut count = 0;
    for t in LieType::all_up_to(opts.rank_cap.min(6)) {
        let d = build_root_datum(t)?;
        for face in FaceIndex::all_proper(d.rank()) {
            let q = lattice_quotient(&d, &face);
            let want = FinAbGroup::cyclic(n_vee(&d, &face));
            if q.free_rank != face.complement().len() - 1 || q.torsion != want {
                return fail(format!("{t} {:?}: {q:?}", face.members()));
            }
            count += 1;
        }
    }
    Ok(Ok(format!("{count} subsets, 0 mismatches")))
}

fn prime_assembly() -> Result<Check> {
    let types = LieType::all_up_to(8);
    for &t in &types {
        // pi2_hom_pairs itself asserts the product equals the lcm
        let report = pi2_hom_pairs(t)?;
        let four = bredon_e2_fragment(t, 2, 0)? == FinAbGroup::cyclic(4);
        let e78 = t.family == Family::E && t.rank >= 7;
        if four != e78 {
            return fail(format!("{t}: Z/4 override {four}"));
        }
        if report.quotient_degree != dynkin_index(&build_root_datum(t)?) {
            return fail(format!("{t}: degree {}", report.quotient_degree));
        }
    }
    Ok(Ok(format!("{} types, Z/4 only for E7 and E8", types.len())))
}

fn census(opts: &VerifyOptions, groups: &mut dyn GroupSource) -> Result<Check> {
    let mut cases = 0;
    for t in LieType::all_up_to(opts.rank_cap.min(3)) {
        let d = build_root_datum(t)?;
        let w = groups.group(&d)?;
        let geo = AlcoveGeometry::new(&d);
        for k in 1..=3u32 {
            let c = cell_census(&w, &geo, k)?;
            let chi = euler_char_rep(&w, k)?;
            if c.euler_characteristic() != chi {
                return fail(format!("{t}, k = {k}: cells {:?} vs {chi}", c.counts));
            }
            if k == 2 && chi != d.rank() as i64 + 1 {
                return fail(format!("{t}: Euler characteristic {chi} at k = 2"));
            }
            cases += 1;
        }
    }
    let d = build_root_datum("A1".parse()?)?;
    let a1 = cell_census(&groups.group(&d)?, &AlcoveGeometry::new(&d), 2)?;
    if a1.counts != [4, 4, 2] {
        return fail(format!("A1 k = 2 census {:?}", a1.counts));
    }
    Ok(Ok(format!("{cases} censuses, A1 k=2 is (4,4,2)")))
}

fn simplicial_oracle() -> Result<Check> {
    let mut detail = Vec::new();
    for n in 1..=3u64 {
        let start = Instant::now();
        let h = torus_quotient_homology(n as usize)?;
        let h1 = h.get(1).cloned().unwrap_or_else(FinAbGroup::trivial);
        let h2 = h.get(2).cloned().unwrap_or_else(FinAbGroup::trivial);
        let c = binomial(n, 2);
        let twos = (1u64 << n) - 1 - n - c;
        let want = FinAbGroup::from_cyclic(c as usize, &vec![2; twos as usize]);
        if !h1.is_trivial() || h2 != want {
            return fail(format!("n = {n}: H1 = {h1}, H2 = {h2}"));
        }
        let secs = start.elapsed().as_secs_f64();
        if n == 3 && secs >= 120.0 {
            return fail(format!("n = 3 took {secs:.1} s"));
        }
        detail.push(format!("n={n}: H2 = {h2}"));
    }
    Ok(Ok(detail.join("; ")))
}

fn spin() -> Result<Check> {
    for ell in 4..=8 {
        for parity in [SpinParity::Even, SpinParity::Odd] {
            let top = spin_threshold(ell, parity);
            for k in (0..=top).step_by(2) {
                let deg = spin_stability_degree(ell, parity, k)?.degree;
                let want = if k == top { 2 } else { 1 };
                if deg != want {
                    return fail(format!("ℓ = {ell} {parity:?} k = {k}: {deg}"));
                }
            }
        }
    }
    let chain = spin5_spin7_chain()?;
    if chain.composite != 2 || spin_stability_degree(3, SpinParity::Odd, 2)?.degree != 2 {
        return fail(format!("Spin(5)→Spin(7) degree {}", chain.composite));
    }
    for m in 5..=16 {
        if !spin_pi2_stability(m)?.holds {
            return fail(format!("m = {m} not stable"));
        }
    }
    Ok(Ok("ℓ = 4..8 both parities, Spin(5)→Spin(7) has degree 2, m = 5..16 stable".into()))
}

fn composite() -> Result<Check> {
    let mut nodes = 0;
    for t in LieType::all_up_to(8) {
        let d = build_root_datum(t)?;
        let lcm = dynkin_index(&d);
        for j in 1..=d.rank() {
            let deg = composite_degree_h2(&d.coroot_integers, j)?;
            if deg != lcm {
                return fail(format!("{t} node {j}: {deg} vs {lcm}"));
            }
            nodes += 1;
        }
    }
    Ok(Ok(format!("{nodes} nodes")))
}

fn geometry(opts: &VerifyOptions) -> Result<Check> {
    let b = beta_check(opts.samples, opts.mesh)?;
    let c = cocycle_check(opts.samples)?;
    let checks = [
        ("seam", b.seam_residual),
        ("beta commutator", b.commutator_residual),
        ("cocycle", c.cocycle_residual),
        ("cocycle commutator", c.commutator_residual),
        ("clutching", c.clutching_residual),
    ];
    for (name, r) in checks {
        if r >= opts.tol {
            return fail(format!("{name} residual {r:e}"));
        }
    }
    if b.degree.degree.abs() != 1 || b.degree.residue >= 1e-3 || b.degree_refined.degree != b.degree.degree {
        return fail(format!("degree {:?} / {:?}", b.degree, b.degree_refined));
    }
    Ok(Ok(format!(
        "max residual {:.1e}, degree {} at meshes {} and {}",
        checks.iter().map(|c| c.1).fold(0.0, f64::max),
        b.degree.degree,
        b.degree.mesh,
        b.degree_refined.mesh
    )))
}

fn theorem_table() -> Result<Check> {
    // (type, n, free rank, number of Z/2 summands)
    let grid: [(&str, u32, usize, usize); 20] = [
        ("SU(3)", 1, 0, 0),
        ("SU(3)", 2, 1, 0),
        ("SU(3)", 3, 3, 0),
        ("SU(3)", 4, 6, 0),
        ("SU(3)", 5, 10, 0),
        ("SU(5)", 1, 0, 0),
        ("SU(5)", 2, 1, 0),
        ("SU(5)", 3, 3, 0),
        ("SU(5)", 4, 6, 0),
        ("SU(5)", 5, 10, 0),
        ("Sp(1)", 1, 0, 0),
        ("Sp(1)", 2, 1, 0),
        ("Sp(1)", 3, 3, 1),
        ("Sp(1)", 4, 6, 5),
        ("Sp(1)", 5, 10, 16),
        ("Sp(3)", 1, 0, 0),
        ("Sp(3)", 2, 1, 0),
        ("Sp(3)", 3, 3, 1),
        ("Sp(3)", 4, 6, 5),
        ("Sp(3)", 5, 10, 16),
    ];
    for (name, n, free, twos) in grid {
        let g = pi2_hom_n(name.parse()?, n)?;
        if g != FinAbGroup::from_cyclic(free, &vec![2; twos]) {
            return fail(format!("{name}, n = {n}: {g}"));
        }
    }
    let so3 = h2_extension_semisimple(&FinAbGroup::cyclic(2), 1)?;
    if so3.quotient != FinAbGroup::cyclic(2) || so3.forced_torsion {
        return fail(format!("SO(3): {:?}", so3.quotient));
    }
    let pso = h2_extension_semisimple(&FinAbGroup::from_cyclic(0, &[2, 2]), 1)?;
    if !pso.forced_torsion {
        return fail("PSO(4n) not flagged".into());
    }
    for t in LieType::all_up_to(8) {
        let (e, b) = pi4_commutative_classifying(t)?;
        if e != FinAbGroup::free(1) || b != FinAbGroup::free(2) {
            return fail(format!("{t}: π4 = ({e}, {b})"));
        }
    }
    Ok(Ok("20 tuple cases, SO(3) and PSO(4n) extensions, π4 for all types".into()))
}
