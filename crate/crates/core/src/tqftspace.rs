//! Vector spaces of the genus-`g` surface: colorings of `G^g`, dimensions,
//! spin projectors on the cylinder, and the refined solid torus.
//!
//! `G^1` is a single circle carrying one color. For `g ≥ 2`, `G^g` is a
//! caterpillar: loop edges `e_1..e_g`, each closing up at its own vertex,
//! joined by a tree of connector edges `e_{g+1}..e_{3g-3}`. Loop `i` sits at
//! vertex `(e_i, e_i, c_i)`; for `g ≥ 3` the tree has `g - 2` internal
//! vertices on a path.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{tree_sum, ColorIndex, Scalar, TheoryParams};
use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Vec};
use crate::recoupling::{admissible, encircle_sum, Parity};
use crate::spinalg::{arf, SurfaceSpinStructure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusGraph {
    g: usize,
    edges: usize,
    /// Each trivalent vertex as its three incident edges (a loop edge
    /// appears twice).
    vertices: Vec<[usize; 3]>,
}

impl GenusGraph {
    pub fn new(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidGenus);
        }
        if g == 1 {
            return Ok(Self {
                g,
                edges: 1,
                vertices: Vec::new(),
            });
        }
        let mut vertices = Vec::with_capacity(2 * g - 2);
        if g == 2 {
            vertices.push([0, 0, 2]);
            vertices.push([1, 1, 2]);
        } else {
            // leaf connectors g..2g-1, path connectors 2g..3g-4
            let leaf = |i: usize| g + i;
            let path = |k: usize| 2 * g + k;
            for i in 0..g {
                vertices.push([i, i, leaf(i)]);
            }
            let internal = g - 2;
            for k in 0..internal {
                let left = if k == 0 { leaf(0) } else { path(k - 1) };
                let right = if k == internal - 1 { leaf(g - 1) } else { path(k) };
                vertices.push([left, leaf(k + 1), right]);
            }
        }
        Ok(Self {
            g,
            edges: 3 * g - 3,
            vertices,
        })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn vertices(&self) -> &[[usize; 3]] {
        &self.vertices
    }

    /// Number of loop edges (`e_1..e_g` come first in every coloring).
    pub fn loop_edges(&self) -> usize {
        self.g
    }

    pub fn is_admissible(&self, params: &TheoryParams, coloring: &[ColorIndex]) -> bool {
        coloring.len() == self.edges
            && coloring.iter().all(|&c| c <= params.max_color())
            && self
                .vertices
                .iter()
                .all(|&[a, b, c]| admissible(params, coloring[a], coloring[b], coloring[c]))
    }

    fn search(
        &self,
        params: &TheoryParams,
        closes: &[Vec<[usize; 3]>],
        pos: usize,
        col: &mut Vec<ColorIndex>,
        out: &mut Vec<Vec<ColorIndex>>,
    ) {
        if pos == col.len() {
            out.push(col.clone());
            return;
        }
        for c in params.colors() {
            col[pos] = c;
            if closes[pos]
                .iter()
                .all(|&[a, b, d]| admissible(params, col[a], col[b], col[d]))
            {
                self.search(params, closes, pos + 1, col, out);
            }
        }
    }
}

/// All admissible colorings of `G^g`, in lexicographic order.
pub fn enumerate_colorings(g: usize, params: &TheoryParams) -> Result<Vec<Vec<ColorIndex>>> {
    let graph = GenusGraph::new(g)?;
    let mut closes = vec![Vec::new(); graph.edges];
    for v in &graph.vertices {
        closes[*v.iter().max().unwrap()].push(*v);
    }
    let mut out = Vec::new();
    graph.search(params, &closes, 0, &mut vec![0; graph.edges], &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialColoringSet {
    pub s: Gf2Vec,
    pub colorings: Vec<Vec<ColorIndex>>,
}

/// Colorings whose loop colors have parities `s`.
pub fn enumerate_special(g: usize, s: &[u8], params: &TheoryParams) -> Result<SpecialColoringSet> {
    if s.len() != g {
        return Err(Error::InvalidParams(format!(
            "parity vector {} has length {}, genus is {g}",
            gf2::format_bits(s),
            s.len()
        )));
    }
    let colorings = enumerate_colorings(g, params)?
        .into_iter()
        .filter(|c| in_sector(c, s))
        .collect();
    Ok(SpecialColoringSet {
        s: s.to_vec(),
        colorings,
    })
}

fn in_sector(coloring: &[ColorIndex], s: &[u8]) -> bool {
    s.iter().enumerate().all(|(i, &b)| coloring[i] % 2 == b as usize)
}

fn nearest_integer(x: &Scalar, what: String, tol: f64) -> Result<u64> {
    let not_int = || Error::NotInteger {
        what: what.clone(),
        value: x.to_string(),
    };
    let n = x.round_re().ok_or_else(not_int)?;
    let scale = (n.unsigned_abs() as f64).max(1.0);
    if n < 0 || x.distance(&Scalar::from_int(x.prec(), n)) > tol * scale {
        return Err(not_int());
    }
    Ok(n as u64)
}

/// `ω^{2g-2} Σ_{a ∈ I} ω_a^{4-4g}`, checked to be an integer.
pub fn verlinde_dim(g: usize, params: &TheoryParams) -> Result<u64> {
    if g == 0 {
        return Err(Error::InvalidGenus);
    }
    let gi = g as i64;
    let terms = params
        .colors()
        .map(|a| params.omega_sq(a).powi(2 - 2 * gi))
        .collect();
    let v = &params.omega_squared().powi(gi - 1) * &tree_sum(terms, params.precision());
    nearest_integer(&v, format!("Verlinde dimension at genus {g}"), params.tolerance())
}

/// Dimension of the space of a genus-`g` surface with a spin structure of
/// the given Arf invariant.
pub fn spin_dim(g: usize, arf_invariant: u8, params: &TheoryParams) -> Result<u64> {
    let d = verlinde_dim(g, params)? as i128;
    let half = (params.r() / 2) as i128;
    let pow = half.pow(g as u32 - 1);
    let two_g = 1i128 << g;
    let num = if arf_invariant == 0 {
        d + pow * (two_g - 1)
    } else {
        d - pow * (two_g + 1)
    };
    let den = 1i128 << (2 * g);
    if num < 0 || num % den != 0 {
        return Err(Error::NotInteger {
            what: format!("spin dimension at genus {g}, Arf {arf_invariant}"),
            value: format!("{num}/{den}"),
        });
    }
    Ok((num / den) as u64)
}

/// A square matrix with entries `n / 2^exp`, `n` integral, stored sparsely
/// and kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicMatrix {
    dim: usize,
    exp: u32,
    entries: BTreeMap<(usize, usize), i64>,
}

impl DyadicMatrix {
    pub fn new(dim: usize, exp: u32, entries: BTreeMap<(usize, usize), i64>) -> Self {
        let mut m = Self { dim, exp, entries };
        m.normalize();
        m
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(dim, 0, BTreeMap::new())
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(dim, 0, (0..dim).map(|i| ((i, i), 1)).collect())
    }

    fn normalize(&mut self) {
        self.entries.retain(|_, v| *v != 0);
        while self.exp > 0 && self.entries.values().all(|v| v % 2 == 0) {
            self.exp -= 1;
            for v in self.entries.values_mut() {
                *v /= 2;
            }
        }
        if self.entries.is_empty() {
            self.exp = 0;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        let n = self.entries.get(&(i, j)).copied().unwrap_or(0);
        BigRational::new(BigInt::from(n), BigInt::one() << self.exp)
    }

    pub fn get_f64(&self, i: usize, j: usize) -> f64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0) as f64 / (1u64 << self.exp) as f64
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        let d = (1u64 << self.exp) as f64;
        self.entries.iter().map(move |(&k, &v)| (k, v as f64 / d))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn rescaled(&self, exp: u32) -> BTreeMap<(usize, usize), i64> {
        let s = exp - self.exp;
        self.entries.iter().map(|(&k, &v)| (k, v << s)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let exp = self.exp.max(other.exp);
        let mut out = self.rescaled(exp);
        for (k, v) in other.rescaled(exp) {
            *out.entry(k).or_insert(0) += v;
        }
        Self::new(self.dim, exp, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = Self {
            dim: other.dim,
            exp: other.exp,
            entries: other.entries.iter().map(|(&k, &v)| (k, -v)).collect(),
        };
        self.add(&neg)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut rows: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for (&(i, j), &v) in &other.entries {
            rows.entry(i).or_default().push((j, v));
        }
        let mut out: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (&(i, k), &a) in &self.entries {
            if let Some(row) = rows.get(&k) {
                for &(j, b) in row {
                    *out.entry((i, j)).or_insert(0) += a * b;
                }
            }
        }
        Self::new(self.dim, self.exp + other.exp, out)
    }

    pub fn trace(&self) -> BigRational {
        let n: i64 = (0..self.dim)
            .map(|i| self.entries.get(&(i, i)).copied().unwrap_or(0))
            .sum();
        BigRational::new(BigInt::from(n), BigInt::one() << self.exp)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.nonzeros().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }

    /// Rank over `Q`, by exact elimination on each block of the sparsity
    /// pattern.
    pub fn rank(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.dim).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(i, j) in self.entries.keys() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
        let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.dim {
            let r = find(&mut parent, i);
            blocks.entry(r).or_default().push(i);
        }
        blocks
            .values()
            .map(|idx| {
                let mut m: Vec<Vec<BigRational>> = idx
                    .iter()
                    .map(|&i| {
                        idx.iter()
                            .map(|&j| BigRational::from_integer(self.entries.get(&(i, j)).copied().unwrap_or(0).into()))
                            .collect()
                    })
                    .collect();
                rational_rank(&mut m)
            })
            .sum()
    }
}

fn rational_rank(m: &mut [Vec<BigRational>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let d = &f * &m[rank][k];
                    m[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The cylinder operator of a spin structure, on the basis of all admissible
/// colorings of `G^g`.
#[derive(Clone, Debug)]
pub struct SpinProjector {
    pub sigma: SurfaceSpinStructure,
    pub basis: Vec<Vec<ColorIndex>>,
    pub matrix: DyadicMatrix,
}

/// `2^{-g} Π_{i ≤ g} (δ_{e_i e'_i} + (-1)^{c_i + k_i/2} δ_{e_i ê'_i}) Π_{i > g} δ_{e_i e'_i}`
/// with `c = qa`, `ê = r - 2 - e`, `k_i` the connector color at the vertex of
/// loop `i` (`0` at genus 1), restricted to the parity sector `qb`.
/// Targets that are not admissible colorings are dropped.
///
/// The `(-1)^{k_i/2}` is the sign of the vertex coefficient picked up when an
/// `(r-2)`-colored circle parallel to loop `i` is fused into it; see
/// [`loop_fusion_coefficient`].
pub fn projector(sigma: &SurfaceSpinStructure, params: &TheoryParams) -> Result<SpinProjector> {
    let g = sigma.genus();
    let basis = enumerate_colorings(g, params)?;
    let index: HashMap<&[ColorIndex], usize> =
        basis.iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();
    let top = params.max_color();
    let graph = GenusGraph::new(g)?;
    let connector = |e: &[ColorIndex], i: usize| -> usize {
        if g == 1 {
            0
        } else {
            e[graph.vertices[i][2]]
        }
    };
    let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (row, e) in basis.iter().enumerate() {
        if !in_sector(e, &sigma.qb) {
            continue;
        }
        for mask in 0u32..1 << g {
            let mut target = e.clone();
            let mut sign = 1i64;
            for i in 0..g {
                if mask >> i & 1 == 1 {
                    target[i] = top - e[i];
                    if (sigma.qa[i] as usize + connector(e, i) / 2) % 2 == 1 {
                        sign = -sign;
                    }
                }
            }
            if let Some(&col) = index.get(target.as_slice()) {
                *entries.entry((row, col)).or_insert(0) += sign;
            }
        }
    }
    let matrix = DyadicMatrix::new(basis.len(), g as u32, entries);
    Ok(SpinProjector {
        sigma: sigma.clone(),
        basis,
        matrix,
    })
}

impl SpinProjector {
    pub fn genus(&self) -> usize {
        self.sigma.genus()
    }

    pub fn arf(&self) -> u8 {
        arf(&self.sigma)
    }

    pub fn trace(&self) -> BigRational {
        self.matrix.trace()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `‖P² - P‖_F`.
    pub fn idempotence_residual(&self) -> f64 {
        self.matrix.mul(&self.matrix).sub(&self.matrix).frobenius_norm()
    }
}

/// Coefficient of the `ê`-colored loop when an `(r-2)`-colored circle
/// running parallel to an `e`-colored loop at vertex `(e, e, k)` is fused
/// into it: `ω_ê² Tet(e,e,k; ê,ê,r-2) / (θ(e,r-2,ê) θ(ê,ê,k))`.
pub fn loop_fusion_coefficient(
    table: &crate::recoupling::RecouplingTable,
    e: ColorIndex,
    k: ColorIndex,
) -> Scalar {
    let p = table.params();
    let top = p.max_color();
    let eh = top - e;
    let num = p.omega_sq(eh) * table.tet(e, e, k, eh, eh, top);
    let den = table.theta(e, top, eh) * table.theta(eh, eh, k);
    &num / &den
}

/// Spin structure on the `S¹` factor of the solid torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircleSpin {
    Bounding,
    NonBounding,
}

/// Class in `H¹(D² × S¹; Z/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircleClass {
    Trivial,
    Nontrivial,
}

impl CircleSpin {
    pub const ALL: [CircleSpin; 2] = [CircleSpin::Bounding, CircleSpin::NonBounding];
}

impl CircleClass {
    pub const ALL: [CircleClass; 2] = [CircleClass::Trivial, CircleClass::Nontrivial];
}

/// Parities of the two annulus colors `(a, b)` for a given `(s, h)`.
fn annulus_parities(s: CircleSpin, h: CircleClass) -> (Parity, Parity) {
    match (s, h) {
        (CircleSpin::Bounding, CircleClass::Trivial) => (Parity::Even, Parity::Even),
        (CircleSpin::NonBounding, CircleClass::Trivial) => (Parity::Odd, Parity::Odd),
        (CircleSpin::Bounding, CircleClass::Nontrivial) => (Parity::Even, Parity::Odd),
        (CircleSpin::NonBounding, CircleClass::Nontrivial) => (Parity::Odd, Parity::Even),
    }
}

/// `¼ (δ_{i,0} ± δ_{i,r-2})(δ_{j,0} ± δ_{j,r-2})`, each sign `+` for an even
/// annulus color and `-` for an odd one.
pub fn solid_torus_closed(
    params: &TheoryParams,
    i: ColorIndex,
    j: ColorIndex,
    s: CircleSpin,
    h: CircleClass,
) -> Scalar {
    let (pa, pb) = annulus_parities(s, h);
    let top = params.max_color();
    let factor = |x: ColorIndex, p: Parity| -> i64 {
        let sign = if p == Parity::Even { 1 } else { -1 };
        (x == 0) as i64 + sign * (x == top) as i64
    };
    Scalar::from_ratio(params.precision(), factor(i, pa) * factor(j, pb), 4)
}

/// The same value from the parity-restricted Kirby colors: each side
/// contributes `ω⁻² Σ_{a} ω_a² ⟨a-circle around the boundary color⟩`.
pub fn solid_torus_annulus(
    params: &TheoryParams,
    i: ColorIndex,
    j: ColorIndex,
    s: CircleSpin,
    h: CircleClass,
) -> Scalar {
    let (pa, pb) = annulus_parities(s, h);
    let w2inv = params.omega_squared().inv();
    let left = &encircle_sum(params, pa, i) * &w2inv;
    let right = &encircle_sum(params, pb, j) * &w2inv;
    &left * &right
}

/// `Z_{ij}(D² × S¹, s, h)`; both routes are evaluated and must agree.
pub fn solid_torus_refined(
    params: &TheoryParams,
    i: ColorIndex,
    j: ColorIndex,
    s: CircleSpin,
    h: CircleClass,
) -> Result<Scalar> {
    params.check_color(i)?;
    params.check_color(j)?;
    let closed = solid_torus_closed(params, i, j, s, h);
    let annulus = solid_torus_annulus(params, i, j, s, h);
    assert!(
        closed.approx_eq(&annulus, params.tolerance()),
        "solid torus ({i}, {j}, {s:?}, {h:?}): {closed} vs {annulus}"
    );
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p8() -> TheoryParams {
        TheoryParams::new(8, 128, 1e-20).unwrap()
    }

    #[test]
    fn graph_shape() {
        assert_eq!(GenusGraph::new(0), Err(Error::InvalidGenus));
        for g in 2..7 {
            let gr = GenusGraph::new(g).unwrap();
            assert_eq!(gr.vertices().len(), 2 * g - 2);
            let mut degree = vec![0; gr.edge_count()];
            for v in gr.vertices() {
                for &e in v {
                    degree[e] += 1;
                }
            }
            assert!(degree.iter().all(|&d| d == 2), "g={g}: {degree:?}");
        }
    }

    #[test]
    fn coloring_counts() {
        let p = p8();
        assert_eq!(enumerate_colorings(1, &p).unwrap().len(), 7);
        assert_eq!(enumerate_special(1, &[0], &p).unwrap().colorings.len(), 4);
        for g in 1..=3 {
            let total = enumerate_colorings(g, &p).unwrap().len();
            assert_eq!(total as u64, verlinde_dim(g, &p).unwrap());
            let sectors: usize = (0u32..1 << g)
                .map(|m| {
                    let s: Vec<u8> = (0..g).map(|i| (m >> i & 1) as u8).collect();
                    enumerate_special(g, &s, &p).unwrap().colorings.len()
                })
                .sum();
            assert_eq!(sectors, total);
        }
    }

    #[test]
    fn dimensions() {
        let p = p8();
        assert_eq!(verlinde_dim(1, &p).unwrap(), 7);
        assert_eq!(verlinde_dim(1, &TheoryParams::new(12, 128, 1e-20).unwrap()).unwrap(), 11);
        assert_eq!(spin_dim(1, 0, &p).unwrap(), 2);
        assert_eq!(spin_dim(1, 1, &p).unwrap(), 1);
        for g in 1..=3 {
            let (n0, n1) = crate::spinalg::arf_census(g);
            let total = n0 * spin_dim(g, 0, &p).unwrap() + n1 * spin_dim(g, 1, &p).unwrap();
            assert_eq!(total, verlinde_dim(g, &p).unwrap());
        }
        assert_eq!(verlinde_dim(0, &p), Err(Error::InvalidGenus));
    }

    #[test]
    fn genus_one_projector() {
        let p = p8();
        let sigma = SurfaceSpinStructure::new(vec![1], vec![1]).unwrap();
        let pr = projector(&sigma, &p).unwrap();
        assert_eq!(pr.trace(), BigRational::one());
        assert_eq!(pr.rank(), 1);
    }

    #[test]
    fn projector_family() {
        let p = p8();
        for g in 1..=2 {
            let all: Vec<SpinProjector> = SurfaceSpinStructure::all(g)
                .iter()
                .map(|s| projector(s, &p).unwrap())
                .collect();
            let n = all[0].basis.len();
            let mut sum = DyadicMatrix::zeros(n);
            for (a, pa) in all.iter().enumerate() {
                assert_eq!(pa.matrix.mul(&pa.matrix), pa.matrix);
                for (b, pb) in all.iter().enumerate() {
                    if a != b {
                        assert!(pa.matrix.mul(&pb.matrix).is_zero());
                    }
                }
                let d = spin_dim(g, pa.arf(), &p).unwrap();
                assert_eq!(pa.trace(), BigRational::from_integer(d.into()));
                assert_eq!(pa.rank() as u64, d);
                sum = sum.add(&pa.matrix);
            }
            assert_eq!(sum, DyadicMatrix::identity(n));
        }
    }

    #[test]
    fn loop_fusion_sign() {
        for r in [8, 12] {
            let p = TheoryParams::new(r, 128, 1e-20).unwrap();
            let t = crate::recoupling::RecouplingTable::new(&p);
            for e in p.colors() {
                for k in (0..=p.max_color()).step_by(2) {
                    if !admissible(&p, e, e, k) {
                        continue;
                    }
                    let (re, im) = loop_fusion_coefficient(&t, e, k).to_f64_pair();
                    assert!(im.abs() < 1e-25);
                    assert_eq!(re > 0.0, k % 4 == 0, "r={r} e={e} k={k}: {re}");
                    if 2 * e == p.max_color() {
                        assert!((re.abs() - 1.0).abs() < 1e-25);
                    }
                }
            }
        }
    }

    #[test]
    fn genus_three_traces() {
        let p = p8();
        for s in SurfaceSpinStructure::all(3) {
            let pr = projector(&s, &p).unwrap();
            let d = spin_dim(3, arf(&s), &p).unwrap();
            assert_eq!(pr.trace(), BigRational::from_integer(d.into()), "{}", s.label());
        }
    }

    #[test]
    fn solid_torus_examples() {
        let p = p8();
        let quarter = Scalar::from_ratio(128, 1, 4);
        let v = solid_torus_refined(&p, 0, 0, CircleSpin::Bounding, CircleClass::Trivial).unwrap();
        assert!(v.approx_eq(&quarter, 1e-20));
        let v = solid_torus_refined(&p, 6, 0, CircleSpin::NonBounding, CircleClass::Trivial).unwrap();
        assert!(v.approx_eq(&-quarter, 1e-20));
        for i in p.colors() {
            for j in p.colors() {
                let mut terms = Vec::new();
                for s in CircleSpin::ALL {
                    for h in CircleClass::ALL {
                        terms.push(solid_torus_refined(&p, i, j, s, h).unwrap());
                    }
                }
                let total = tree_sum(terms, 128);
                let expect = if i == 0 && j == 0 { p.one() } else { p.zero() };
                assert!(total.approx_eq(&expect, 1e-20));
            }
        }
    }

    proptest! {
        #[test]
        fn dyadic_mul_is_associative(
            a in proptest::collection::btree_map((0usize..4, 0usize..4), -3i64..4, 0..10),
            b in proptest::collection::btree_map((0usize..4, 0usize..4), -3i64..4, 0..10),
            c in proptest::collection::btree_map((0usize..4, 0usize..4), -3i64..4, 0..10),
            ea in 0u32..3, eb in 0u32..3,
        ) {
            let (a, b, c) = (DyadicMatrix::new(4, ea, a), DyadicMatrix::new(4, eb, b), DyadicMatrix::new(4, 1, c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert_eq!(a.add(&b).trace(), a.trace() + b.trace());
        }
    }
}
