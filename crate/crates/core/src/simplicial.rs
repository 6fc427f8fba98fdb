//! Triangulated tori, barycentric subdivision, quotients by an involution and
//! their integral homology.
//!
//! Torus complexes are stored geometrically: every facet remembers lifted
//! integer coordinates of its vertices (in units of `1/scale`, period
//! `scale`), so two cells with the same vertex set but different position
//! on the torus stay distinct. The involution on such complexes is the
//! inversion `x ↦ −x`.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::homology::{chain_homology, FinAbGroup, IntMatrix};

#[derive(Clone, Debug)]
struct Embedding {
    scale: i64,
    coords: Vec<Vec<i64>>,
    /// per facet, lifted coordinates of its vertices in facet order
    lifts: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// Maximal simplices as sorted vertex tuples.
    facets: Vec<Vec<usize>>,
    embedding: Option<Embedding>,
}

/// A cell up to translation: sorted vertex ids and lifted offsets relative
/// to the first vertex (empty for abstract complexes).
type CellKey = (Vec<usize>, Vec<i64>);

impl SimplicialComplex {
    /// An abstract complex from its maximal simplices.
    pub fn from_facets(facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        for f in &facets {
            if f.is_empty() || f.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::Precondition(format!("degenerate simplex {f:?}")));
            }
        }
        facets.sort();
        facets.dedup();
        let vertex_count = facets.iter().flatten().max().map_or(0, |m| m + 1);
        Ok(SimplicialComplex { vertex_count, facets, embedding: None })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.len() - 1).max().unwrap_or(0)
    }

    fn facet_lift(&self, k: usize) -> Option<&Vec<Vec<i64>>> {
        self.embedding.as_ref().map(|e| &e.lifts[k])
    }

    /// All cells, grouped by dimension, each with its key and (for embedded
    /// complexes) lifted vertex positions relative to its first vertex.
    fn cells(&self) -> Vec<Vec<(CellKey, Vec<Vec<i64>>)>> {
        let dim = self.dim();
        let mut index: Vec<HashMap<CellKey, usize>> = vec![HashMap::new(); dim + 1];
        let mut out: Vec<Vec<(CellKey, Vec<Vec<i64>>)>> = vec![Vec::new(); dim + 1];
        for (k, f) in self.facets.iter().enumerate() {
            let lift = self.facet_lift(k);
            let n = f.len();
            for mask in 1u32..(1 << n) {
                let pos: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                let ids: Vec<usize> = pos.iter().map(|&i| f[i]).collect();
                let rel: Vec<Vec<i64>> = match lift {
                    Some(l) => pos.iter().map(|&i| sub(&l[i], &l[pos[0]])).collect(),
                    None => Vec::new(),
                };
                let key = (ids, rel.iter().skip(1).flatten().copied().collect());
                let d = pos.len() - 1;
                if !index[d].contains_key(&key) {
                    index[d].insert(key.clone(), out[d].len());
                    out[d].push((key, rel));
                }
            }
        }
        out
    }

    /// Number of cells in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.cells().iter().map(Vec::len).collect()
    }

    /// True when distinct cells have distinct vertex sets.
    pub fn is_simplicial(&self) -> bool {
        self.cells().iter().all(|level| {
            let mut ids: Vec<&Vec<usize>> = level.iter().map(|(k, _)| &k.0).collect();
            ids.sort();
            ids.windows(2).all(|p| p[0] != p[1])
        })
    }

    /// Simplicial boundary matrices `∂_1, …, ∂_dim`.
    pub fn boundary_matrices(&self) -> Vec<IntMatrix> {
        let cells = self.cells();
        let index: Vec<HashMap<&CellKey, usize>> = cells
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, (k, _))| (k, i)).collect())
            .collect();
        let mut out = Vec::new();
        for d in 1..cells.len() {
            let mut m = IntMatrix::zeros(cells[d - 1].len(), cells[d].len());
            for (j, ((ids, _), rel)) in cells[d].iter().enumerate() {
                for drop in 0..ids.len() {
                    let face_ids: Vec<usize> = ids.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                    let face_off: Vec<i64> = if rel.is_empty() {
                        Vec::new()
                    } else {
                        let keep: Vec<&Vec<i64>> = rel.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, r)| r).collect();
                        keep.iter().skip(1).flat_map(|r| sub(r, keep[0])).collect()
                    };
                    let row = index[d - 1][&(face_ids, face_off)];
                    m.add_to(row, j, if drop % 2 == 0 { 1 } else { -1 });
                }
            }
            out.push(m);
        }
        out
    }

    pub fn homology(&self) -> Result<Vec<FinAbGroup>> {
        let bd = self.boundary_matrices();
        if bd.is_empty() {
            return Ok(vec![FinAbGroup::free(self.vertex_count)]);
        }
        chain_homology(&bd)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A complex with a simplicial involution, given on vertices. On embedded
/// complexes the involution is the inversion, so lifted offsets are negated.
#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    pub complex: SimplicialComplex,
    pub involution: Vec<usize>,
}

/// `T^n = R^n/Z^n` triangulated by the Freudenthal simplices of the cubes of
/// the `(1/2)Z^n` grid, with the inversion `x ↦ −x`.
pub fn torus_triangulation(n: usize) -> Result<EquivariantComplex> {
    if !(1..=3).contains(&n) {
        return Err(Error::Precondition(format!("torus dimension must be 1..=3, got {n}")));
    }
    let scale = 2i64;
    let mut verts: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut coords = Vec::new();
    let mut id_of = |p: &[i64]| -> usize {
        let red: Vec<i64> = p.iter().map(|x| x.rem_euclid(scale)).collect();
        *verts.entry(red.clone()).or_insert_with(|| {
            coords.push(red);
            coords.len() - 1
        })
    };
    let mut cells: Vec<(Vec<usize>, Vec<Vec<i64>>)> = Vec::new();
    for base in 0..(1usize << n) {
        let corner: Vec<i64> = (0..n).map(|i| ((base >> i) & 1) as i64).collect();
        for perm in permutations(n) {
            let mut pts = vec![corner.clone()];
            for &axis in &perm {
                let mut p = pts.last().unwrap().clone();
                p[axis] += 1;
                pts.push(p);
            }
            let ids: Vec<usize> = pts.iter().map(|p| id_of(p)).collect();
            cells.push((ids, pts));
        }
    }
    let complex = embedded(scale, coords, cells)?;
    let involution = inversion_map(&complex);
    Ok(EquivariantComplex { complex, involution })
}

fn embedded(scale: i64, coords: Vec<Vec<i64>>, cells: Vec<(Vec<usize>, Vec<Vec<i64>>)>) -> Result<SimplicialComplex> {
    let mut facets = Vec::with_capacity(cells.len());
    let mut lifts = Vec::with_capacity(cells.len());
    for (ids, pts) in cells {
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by_key(|&i| ids[i]);
        let sorted: Vec<usize> = order.iter().map(|&i| ids[i]).collect();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::Precondition("simplex with repeated vertex".into()));
        }
        facets.push(sorted);
        lifts.push(order.iter().map(|&i| pts[i].clone()).collect());
    }
    let vertex_count = coords.len();
    Ok(SimplicialComplex { vertex_count, facets, embedding: Some(Embedding { scale, coords, lifts }) })
}

fn inversion_map(k: &SimplicialComplex) -> Vec<usize> {
    let e = k.embedding.as_ref().expect("embedded complex");
    let index: HashMap<&Vec<i64>, usize> = e.coords.iter().enumerate().map(|(i, c)| (c, i)).collect();
    e.coords
        .iter()
        .map(|c| {
            let neg: Vec<i64> = c.iter().map(|x| (-x).rem_euclid(e.scale)).collect();
            index[&neg]
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// First barycentric subdivision. Facets are split along every flag of
/// faces; vertices of the result are barycenters of cells of the input.
pub fn barycentric_subdivide(k: &SimplicialComplex) -> SimplicialComplex {
    subdivide_inner(k, None).0
}

/// Subdivides and transports the involution to the new vertices.
pub fn subdivide_equivariant(k: &EquivariantComplex) -> EquivariantComplex {
    let (complex, involution) = subdivide_inner(&k.complex, Some(&k.involution));
    EquivariantComplex { complex, involution: involution.expect("transported involution") }
}

fn subdivide_inner(k: &SimplicialComplex, sigma: Option<&[usize]>) -> (SimplicialComplex, Option<Vec<usize>>) {
    let dim = k.dim();
    let grow: i64 = (1..=dim as i64 + 1).fold(1, |a, b| a.lcm(&b));
    // new vertex per parent cell key
    let mut vertex_of: HashMap<CellKey, usize> = HashMap::new();
    let mut parents: Vec<CellKey> = Vec::new();
    let mut coords: Vec<Vec<i64>> = Vec::new();
    let mut cells: Vec<(Vec<usize>, Vec<Vec<i64>>)> = Vec::new();
    let mut abstract_facets: Vec<Vec<usize>> = Vec::new();
    for (fi, f) in k.facets.iter().enumerate() {
        let lift: Option<Vec<Vec<i64>>> =
            k.facet_lift(fi).map(|l| l.iter().map(|p| p.iter().map(|x| x * grow).collect()).collect());
        for perm in permutations(f.len()) {
            let mut ids = Vec::with_capacity(f.len());
            let mut pts = Vec::with_capacity(f.len());
            for j in 0..f.len() {
                let mut pos: Vec<usize> = perm[..=j].to_vec();
                pos.sort_unstable();
                let cell_ids: Vec<usize> = pos.iter().map(|&i| f[i]).collect();
                let (offsets, bary) = match &lift {
                    Some(l) => {
                        let off: Vec<i64> = pos.iter().skip(1).flat_map(|&i| sub(&l[i], &l[pos[0]])).collect();
                        let sum: Vec<i64> = (0..l[0].len()).map(|c| pos.iter().map(|&i| l[i][c]).sum()).collect();
                        let b: Vec<i64> = sum.iter().map(|x| x / pos.len() as i64).collect();
                        (off, Some(b))
                    }
                    None => (Vec::new(), None),
                };
                let key = (cell_ids, offsets);
                let id = *vertex_of.entry(key.clone()).or_insert_with(|| {
                    parents.push(key);
                    if let Some(b) = &bary {
                        let scale = k.embedding.as_ref().unwrap().scale * grow;
                        coords.push(b.iter().map(|x| x.rem_euclid(scale)).collect());
                    }
                    parents.len() - 1
                });
                ids.push(id);
                if let Some(b) = bary {
                    pts.push(b);
                }
            }
            if lift.is_some() {
                cells.push((ids, pts));
            } else {
                abstract_facets.push(ids);
            }
        }
    }
    let complex = match &k.embedding {
        Some(e) => embedded(e.scale * grow, coords, cells).expect("subdivision has distinct vertices"),
        None => SimplicialComplex::from_facets(abstract_facets).expect("subdivision is nondegenerate"),
    };
    let involution = sigma.map(|s| {
        parents
            .iter()
            .map(|(ids, off)| {
                let image = act_on_key(ids, off, s, k.embedding.is_some());
                vertex_of[&image]
            })
            .collect()
    });
    (complex, involution)
}

/// Image of a cell key under the involution; embedded offsets are negated.
fn act_on_key(ids: &[usize], off: &[i64], sigma: &[usize], negate: bool) -> CellKey {
    let n = ids.len();
    let width = if n > 1 { off.len() / (n - 1) } else { 0 };
    // relative positions, first vertex at the origin
    let mut rel: Vec<Vec<i64>> = vec![vec![0; width]];
    for i in 1..n {
        rel.push(off[(i - 1) * width..i * width].iter().map(|&x| if negate { -x } else { x }).collect());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| sigma[ids[i]]);
    let new_ids: Vec<usize> = order.iter().map(|&i| sigma[ids[i]]).collect();
    let new_off: Vec<i64> = if width == 0 {
        Vec::new()
    } else {
        order.iter().skip(1).flat_map(|&i| sub(&rel[i], &rel[order[0]])).collect()
    };
    (new_ids, new_off)
}

/// Orbit complex of an involution acting regularly on a simplicial complex.
pub fn quotient_by_involution(k: &EquivariantComplex) -> Result<SimplicialComplex> {
    let sigma = &k.involution;
    if sigma.len() != k.complex.vertex_count || (0..sigma.len()).any(|v| sigma[sigma[v]] != v) {
        return Err(Error::Precondition("vertex map is not an involution".into()));
    }
    if !k.complex.is_simplicial() {
        return Err(Error::IrregularAction("complex is not simplicial".into()));
    }
    let orbit: Vec<usize> = (0..sigma.len()).map(|v| v.min(sigma[v])).collect();
    let mut label: HashMap<usize, usize> = HashMap::new();
    for &o in &orbit {
        let next = label.len();
        label.entry(o).or_insert(next);
    }
    let orbit_set = |ids: &[usize]| -> Vec<usize> {
        let mut s: Vec<usize> = ids.iter().map(|&v| label[&orbit[v]]).collect();
        s.sort_unstable();
        s
    };
    // each orbit-vertex set must come from a single orbit of simplices
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for level in k.complex.cells() {
        for ((ids, _), _) in level {
            let os = orbit_set(&ids);
            if os.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::IrregularAction(format!("simplex {ids:?} meets an orbit twice")));
            }
            let mut image: Vec<usize> = ids.iter().map(|&v| sigma[v]).collect();
            image.sort_unstable();
            match seen.get(&os) {
                None => {
                    seen.insert(os, ids);
                }
                Some(prev) if *prev == ids || *prev == image => {}
                Some(prev) => {
                    return Err(Error::IrregularAction(format!("simplices {prev:?} and {ids:?} are not in one orbit")));
                }
            }
        }
    }
    let facets: Vec<Vec<usize>> = k.complex.facets.iter().map(|f| orbit_set(f)).collect();
    SimplicialComplex::from_facets(facets)
}

/// Homology of `(S^1)^n / (Z/2)` through two subdivisions and the orbit
/// complex.
pub fn torus_quotient_homology(n: usize) -> Result<Vec<FinAbGroup>> {
    let t = torus_triangulation(n)?;
    let twice = subdivide_equivariant(&subdivide_equivariant(&t));
    quotient_by_involution(&twice)?.homology()
}
