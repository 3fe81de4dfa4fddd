//! Turaev–Viro state sums on generalized triangulations.
//!
//! A triangulation is a set of tetrahedra with every face glued to exactly one
//! partner face (possibly of the same tetrahedron). Face `f` of a tetrahedron
//! is the one opposite vertex `f`; the gluing of face `f` of tet `t` to face
//! `g` of tet `u` is a vertex bijection `perm` with `perm[f] = g`.
//!
//! JSON format, tetrahedra and faces 0-based:
//!
//! ```json
//! { "tets": 1,
//!   "gluings": [[[0, 1, [1, 2, 3, 0]], [0, 0, [3, 0, 1, 2]],
//!                [0, 3, [0, 1, 3, 2]], [0, 2, [0, 1, 3, 2]]]] }
//! ```
//!
//! The state sum is `ω^{-2V} Σ_c Π_e ω_{c(e)}² Π_t |x01 x12 x02; x23 x03 x13|`
//! where `xij` is the color of the edge joining local vertices `i` and `j`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Deserialize;

use crate::arith::{tree_sum, ColorIndex, Scalar};
use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;
use crate::recoupling::RecouplingTable;
use crate::spinalg::{Z2Cohomology, Z2CohomologyClass, Z2Complex};

/// Local edges of a tetrahedron, by endpoint pair.
pub const TET_EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

fn local_edge(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    TET_EDGES.iter().position(|e| *e == [a, b]).unwrap()
}

/// Local edges of face `f` (the edges avoiding vertex `f`).
fn face_edges(f: usize) -> [usize; 3] {
    let v: Vec<usize> = (0..4).filter(|&x| x != f).collect();
    [local_edge(v[0], v[1]), local_edge(v[0], v[2]), local_edge(v[1], v[2])]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: [usize; 4],
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    /// Dense labels `0..k` in order of first appearance.
    fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut map = HashMap::new();
        let mut out = Vec::with_capacity(n);
        for x in 0..n {
            let r = self.find(x);
            let next = map.len();
            out.push(*map.entry(r).or_insert(next));
        }
        (out, map.len())
    }
}

#[derive(Clone, Debug)]
pub struct GeneralizedTriangulation {
    name: Option<String>,
    gluings: Vec<[Gluing; 4]>,
    vertices: usize,
    tet_edges: Vec<[usize; 6]>,
    face_edges: Vec<[usize; 3]>,
    complex: Z2Complex,
    cohomology: Z2Cohomology,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangulationJson {
    #[serde(default)]
    name: Option<String>,
    tets: usize,
    gluings: Vec<Vec<(usize, usize, Vec<usize>)>>,
}

impl GeneralizedTriangulation {
    pub fn new(gluings: Vec<[Gluing; 4]>) -> Result<Self> {
        let n = gluings.len();
        let bad = |t: usize, f: usize, m: String| {
            Error::InvalidTriangulation(format!("tet {t} face {f}: {m}"))
        };
        if n == 0 {
            return Err(Error::InvalidTriangulation("no tetrahedra".into()));
        }
        for (t, gs) in gluings.iter().enumerate() {
            for (f, g) in gs.iter().enumerate() {
                if g.tet >= n || g.face >= 4 {
                    return Err(bad(t, f, format!("partner ({}, {}) out of range", g.tet, g.face)));
                }
                let mut seen = [false; 4];
                for &p in &g.perm {
                    if p >= 4 || seen[p] {
                        return Err(bad(t, f, format!("{:?} is not a permutation", g.perm)));
                    }
                    seen[p] = true;
                }
                if g.perm[f] != g.face {
                    return Err(bad(t, f, format!("perm sends vertex {f} to {}, not {}", g.perm[f], g.face)));
                }
                if (g.tet, g.face) == (t, f) {
                    return Err(bad(t, f, "glued to itself".into()));
                }
                let back = gluings[g.tet][g.face];
                let inverse_ok = (0..4).all(|v| back.perm[g.perm[v]] == v);
                if (back.tet, back.face) != (t, f) || !inverse_ok {
                    return Err(bad(t, f, format!(
                        "partner ({}, {}) is not glued back by the inverse bijection",
                        g.tet, g.face
                    )));
                }
            }
        }

        let mut verts = UnionFind::new(4 * n);
        let mut edges = UnionFind::new(6 * n);
        let mut faces = UnionFind::new(4 * n);
        for (t, gs) in gluings.iter().enumerate() {
            for (f, g) in gs.iter().enumerate() {
                faces.union(4 * t + f, 4 * g.tet + g.face);
                for v in (0..4).filter(|&v| v != f) {
                    verts.union(4 * t + v, 4 * g.tet + g.perm[v]);
                }
                for e in face_edges(f) {
                    let [a, b] = TET_EDGES[e];
                    edges.union(6 * t + e, 6 * g.tet + local_edge(g.perm[a], g.perm[b]));
                }
            }
        }
        let (vl, vertices) = verts.labels();
        let (el, ne) = edges.labels();
        let (fl, nf) = faces.labels();

        let tet_edges: Vec<[usize; 6]> =
            (0..n).map(|t| std::array::from_fn(|e| el[6 * t + e])).collect();
        let mut edge_ends = vec![None; ne];
        let mut face_list = vec![None; nf];
        for t in 0..n {
            for (e, [a, b]) in TET_EDGES.iter().enumerate() {
                edge_ends[el[6 * t + e]].get_or_insert([vl[4 * t + a], vl[4 * t + b]]);
            }
            for f in 0..4 {
                face_list[fl[4 * t + f]].get_or_insert(face_edges(f).map(|e| el[6 * t + e]));
            }
        }
        let complex = Z2Complex {
            vertices,
            edges: edge_ends.into_iter().map(Option::unwrap).collect(),
            faces: face_list.into_iter().map(Option::unwrap).collect(),
        };
        let cohomology = Z2Cohomology::new(&complex);
        Ok(Self {
            name: None,
            face_edges: complex.faces.clone(),
            gluings,
            vertices,
            tet_edges,
            complex,
            cohomology,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: TriangulationJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidTriangulation(format!("line {} column {}: {e}", e.line(), e.column())))?;
        if raw.gluings.len() != raw.tets {
            return Err(Error::InvalidTriangulation(format!(
                "\"tets\" is {} but {} gluing rows are given",
                raw.tets,
                raw.gluings.len()
            )));
        }
        let mut gluings = Vec::with_capacity(raw.tets);
        for (t, row) in raw.gluings.iter().enumerate() {
            if row.len() != 4 {
                return Err(Error::InvalidTriangulation(format!(
                    "tet {t}: {} faces given, need 4",
                    row.len()
                )));
            }
            let mut gs = [Gluing { tet: 0, face: 0, perm: [0; 4] }; 4];
            for (f, (u, g, perm)) in row.iter().enumerate() {
                let perm: [usize; 4] = perm.as_slice().try_into().map_err(|_| {
                    Error::InvalidTriangulation(format!("tet {t} face {f}: perm must have 4 entries"))
                })?;
                gs[f] = Gluing { tet: *u, face: *g, perm };
            }
            gluings.push(gs);
        }
        let mut tri = Self::new(gluings)?;
        tri.name = raw.name;
        Ok(tri)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn tets(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.complex.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.complex.faces.len()
    }

    /// Edge orbits of the six local edges of tet `t`, in [`TET_EDGES`] order.
    pub fn tet_edges(&self, t: usize) -> [usize; 6] {
        self.tet_edges[t]
    }

    /// Edge orbits of each face orbit.
    pub fn face_edge_orbits(&self) -> &[[usize; 3]] {
        &self.face_edges
    }

    pub fn complex(&self) -> &Z2Complex {
        &self.complex
    }

    pub fn cohomology(&self) -> &Z2Cohomology {
        &self.cohomology
    }

    pub fn is_admissible(&self, table: &RecouplingTable, coloring: &[ColorIndex]) -> bool {
        coloring.len() == self.edge_count()
            && self
                .face_edges
                .iter()
                .all(|&[a, b, c]| table.admissible(coloring[a], coloring[b], coloring[c]))
    }
}

/// The `Z/2` edge cochain `e ↦ c(e) mod 2` of an admissible coloring.
///
/// Panics if the cochain fails the cocycle condition, which admissibility
/// rules out.
pub fn parity_cocycle(
    tri: &GeneralizedTriangulation,
    table: &RecouplingTable,
    coloring: &[ColorIndex],
) -> Result<Gf2Vec> {
    if !tri.is_admissible(table, coloring) {
        return Err(Error::InvalidParams(format!("coloring {coloring:?} is not admissible")));
    }
    let a: Gf2Vec = coloring.iter().map(|&c| (c % 2) as u8).collect();
    assert!(tri.complex().is_cocycle(&a), "parity cochain of an admissible coloring is not closed");
    Ok(a)
}

struct Search<'a> {
    tri: &'a GeneralizedTriangulation,
    table: &'a RecouplingTable,
    /// Faces whose last edge (in enumeration order) is the given edge.
    closes: Vec<Vec<[usize; 3]>>,
}

impl<'a> Search<'a> {
    fn new(tri: &'a GeneralizedTriangulation, table: &'a RecouplingTable) -> Self {
        let mut closes = vec![Vec::new(); tri.edge_count()];
        for f in tri.face_edge_orbits() {
            closes[*f.iter().max().unwrap()].push(*f);
        }
        Self { tri, table, closes }
    }

    fn visit(&self, pos: usize, col: &mut Vec<ColorIndex>, leaf: &mut dyn FnMut(&[ColorIndex])) {
        if pos == col.len() {
            leaf(col);
            return;
        }
        for c in self.table.params().colors() {
            col[pos] = c;
            if self.closes[pos]
                .iter()
                .all(|&[a, b, d]| self.table.admissible(col[a], col[b], col[d]))
            {
                self.visit(pos + 1, col, leaf);
            }
        }
    }

    /// Every admissible coloring with edge 0 colored `first`.
    fn for_each(&self, first: ColorIndex, leaf: &mut dyn FnMut(&[ColorIndex])) {
        let mut col = vec![0; self.tri.edge_count()];
        col[0] = first;
        if self.closes[0].iter().all(|&[a, b, d]| self.table.admissible(col[a], col[b], col[d])) {
            self.visit(1, &mut col, leaf);
        }
    }

    fn weight(&self, col: &[ColorIndex]) -> Scalar {
        let p = self.table.params();
        let mut w = col.iter().fold(p.one(), |acc, &c| &acc * p.omega_sq(c));
        for t in 0..self.tri.tets() {
            let x = self.tri.tet_edges(t).map(|e| col[e]);
            // slots: x01 x12 x02 ; x23 x03 x13
            w = &w * self.table.sixj(x[0], x[3], x[1], x[5], x[2], x[4]);
        }
        w
    }
}

/// All admissible edge colorings, in lexicographic order.
pub fn admissible_colorings(
    tri: &GeneralizedTriangulation,
    table: &RecouplingTable,
) -> Vec<Vec<ColorIndex>> {
    let search = Search::new(tri, table);
    let mut out = Vec::new();
    for c in table.params().colors() {
        search.for_each(c, &mut |col| out.push(col.to_vec()));
    }
    out
}

fn class_index(h: &Z2CohomologyClass) -> usize {
    h.coords.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum()
}

/// Partial sums by cohomology class of the parity cocycle, indexed like
/// `class_index`, each already multiplied by `ω^{-2V}`.
fn class_sums(tri: &GeneralizedTriangulation, table: &RecouplingTable) -> Vec<Scalar> {
    let p = table.params();
    let coh = tri.cohomology();
    let nclass = 1usize << coh.rank();
    let search = Search::new(tri, table);
    let per_first: Vec<Vec<Vec<Scalar>>> = p
        .colors()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| {
            let mut buckets: Vec<Vec<Scalar>> = vec![Vec::new(); nclass];
            let mut memo: HashMap<Gf2Vec, usize> = HashMap::new();
            search.for_each(first, &mut |col| {
                let w = search.weight(col);
                if w.is_zero() {
                    return;
                }
                let a: Gf2Vec = col.iter().map(|&c| (c % 2) as u8).collect();
                let k = *memo.entry(a).or_insert_with_key(|a| {
                    class_index(&coh.class_of_cocycle(a).expect("parity cochain is closed"))
                });
                buckets[k].push(w);
            });
            buckets
        })
        .collect();
    let norm = p.omega_squared().powi(-(tri.vertex_count() as i64));
    (0..nclass)
        .map(|k| {
            let terms = per_first.iter().flat_map(|b| b[k].iter().cloned()).collect();
            &tree_sum(terms, p.precision()) * &norm
        })
        .collect()
}

pub fn tv_state_sum(tri: &GeneralizedTriangulation, table: &RecouplingTable) -> Scalar {
    tree_sum(class_sums(tri, table), table.params().precision())
}

/// The state sum restricted to colorings whose parity cocycle represents `h`.
pub fn tv_refined(
    tri: &GeneralizedTriangulation,
    h: &Z2CohomologyClass,
    table: &RecouplingTable,
) -> Result<Scalar> {
    if !tri.cohomology().owns(h) {
        return Err(Error::ForeignClass);
    }
    Ok(class_sums(tri, table).swap_remove(class_index(h)))
}

#[derive(Clone, Debug)]
pub struct RefinedStateSums {
    pub total: Scalar,
    pub by_class: Vec<(Z2CohomologyClass, Scalar)>,
    /// Classes whose value is not real and nonnegative within tolerance.
    pub sign_flags: Vec<Z2CohomologyClass>,
}

/// `Z(M, h)` for every class `h` in one enumeration.
pub fn tv_refined_all(tri: &GeneralizedTriangulation, table: &RecouplingTable) -> RefinedStateSums {
    let p = table.params();
    let sums = class_sums(tri, table);
    let by_class: Vec<(Z2CohomologyClass, Scalar)> = tri
        .cohomology()
        .classes()
        .into_iter()
        .map(|h| {
            let v = sums[class_index(&h)].clone();
            (h, v)
        })
        .collect();
    let tol = p.tolerance();
    let sign_flags = by_class
        .iter()
        .filter(|(_, v)| {
            let (re, im) = v.to_f64_pair();
            re < -tol || im.abs() > tol
        })
        .map(|(h, _)| h.clone())
        .collect();
    RefinedStateSums {
        total: tree_sum(sums, p.precision()),
        by_class,
        sign_flags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::TheoryParams;

    const S3_ONE: &str = include_str!("../data/triangulations/s3_one_tet.json");
    const S3_TWO: &str = include_str!("../data/triangulations/s3_two_tet.json");
    const S2XS1: &str = include_str!("../data/triangulations/s2xs1.json");
    const RP3: &str = include_str!("../data/triangulations/rp3.json");
    const L31: &str = include_str!("../data/triangulations/l31.json");

    fn table() -> RecouplingTable {
        RecouplingTable::new(&TheoryParams::new(8, 128, 1e-20).unwrap())
    }

    #[test]
    fn quotient_counts() {
        let counts = |s: &str| {
            let t = GeneralizedTriangulation::from_json_str(s).unwrap();
            (t.vertex_count(), t.edge_count(), t.face_count(), t.cohomology().rank())
        };
        assert_eq!(counts(S3_ONE), (1, 2, 2, 0));
        assert_eq!(counts(S3_TWO), (4, 6, 4, 0));
        assert_eq!(counts(S2XS1).3, 1);
        assert_eq!(counts(RP3).3, 1);
        assert_eq!(counts(L31).3, 0);
        for s in [S3_ONE, S3_TWO, S2XS1, RP3, L31] {
            let t = GeneralizedTriangulation::from_json_str(s).unwrap();
            // closed 3-manifold: χ = V - E + F - T = 0
            let chi = t.vertex_count() as i64 - t.edge_count() as i64 + t.face_count() as i64
                - t.tets() as i64;
            assert_eq!(chi, 0);
        }
    }

    #[test]
    fn rejects_bad_gluings() {
        let bad = [
            r#"{"tets": 1, "gluings": [[[0, 1, [1, 2, 3, 0]], [0, 0, [3, 0, 1, 2]], [0, 3, [0, 1, 3, 2]]]]}"#,
            r#"{"tets": 1, "gluings": [[[0, 1, [1, 2, 3, 0]], [0, 0, [3, 0, 1, 2]], [0, 3, [0, 1, 3, 2]], [0, 2, [0, 1, 2, 3]]]]}"#,
            r#"{"tets": 1, "gluings": [[[0, 1, [1, 1, 3, 0]], [0, 0, [3, 0, 1, 2]], [0, 3, [0, 1, 3, 2]], [0, 2, [0, 1, 3, 2]]]]}"#,
            r#"{"tets": 1, "gluings": [[[1, 1, [1, 2, 3, 0]], [0, 0, [3, 0, 1, 2]], [0, 3, [0, 1, 3, 2]], [0, 2, [0, 1, 3, 2]]]]}"#,
            r#"{"tets": 2, "gluings": []}"#,
            r#"{"tets": 1, "gluings": [], "extra": 1}"#,
        ];
        for s in bad {
            assert!(
                matches!(GeneralizedTriangulation::from_json_str(s), Err(Error::InvalidTriangulation(_))),
                "{s}"
            );
        }
    }

    #[test]
    fn sphere_and_s2xs1_sums() {
        let t = table();
        let p = t.params();
        let target = p.omega_squared().inv();
        for s in [S3_ONE, S3_TWO] {
            let tri = GeneralizedTriangulation::from_json_str(s).unwrap();
            assert!(tv_state_sum(&tri, &t).approx_eq(&target, 1e-20));
        }
        let tri = GeneralizedTriangulation::from_json_str(S2XS1).unwrap();
        let all = tv_refined_all(&tri, &t);
        assert!(all.total.approx_eq(&p.one(), 1e-20));
        let half = Scalar::from_ratio(p.precision(), 1, 2);
        for (_, v) in &all.by_class {
            assert!(v.approx_eq(&half, 1e-20));
        }
        assert!(all.sign_flags.is_empty());
    }

    #[test]
    fn parity_cocycles() {
        let t = table();
        let rp3 = GeneralizedTriangulation::from_json_str(RP3).unwrap();
        let zero = vec![0; rp3.edge_count()];
        assert!(gf2_zero(&parity_cocycle(&rp3, &t, &zero).unwrap()));
        let mut realized = std::collections::BTreeSet::new();
        for c in admissible_colorings(&rp3, &t) {
            let a = parity_cocycle(&rp3, &t, &c).unwrap();
            realized.insert(rp3.cohomology().class_of_cocycle(&a).unwrap().coords);
        }
        assert_eq!(realized.len(), 2);

        let s3 = GeneralizedTriangulation::from_json_str(S3_TWO).unwrap();
        for c in admissible_colorings(&s3, &t) {
            let a = parity_cocycle(&s3, &t, &c).unwrap();
            assert!(s3.cohomology().class_of_cocycle(&a).unwrap().is_zero());
        }
        let bad = vec![1; s3.edge_count()];
        assert!(parity_cocycle(&s3, &t, &bad).is_err());
    }

    fn gf2_zero(v: &[u8]) -> bool {
        crate::gf2::is_zero(v)
    }

    #[test]
    fn refined_rejects_foreign_class() {
        let t = table();
        let rp3 = GeneralizedTriangulation::from_json_str(RP3).unwrap();
        let s2 = GeneralizedTriangulation::from_json_str(S2XS1).unwrap();
        let h = s2.cohomology().classes().pop().unwrap();
        assert!(matches!(tv_refined(&rp3, &h, &t), Err(Error::ForeignClass)));
        let own = rp3.cohomology().zero_class();
        assert!(tv_refined(&rp3, &own, &t).is_ok());
    }
}
