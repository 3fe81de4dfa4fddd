//! Spin structures and `Z/2` cohomology.
//!
//! On a manifold obtained by surgery on `L = L_1 ∪ ... ∪ L_m`, a spin
//! structure is a characteristic sublink `K`: a vector `x ∈ GF(2)^m` with
//! `Σ_j B_ij x_j ≡ B_ii (mod 2)` for every `i`. Here `x_i = 1` means
//! `L_i ⊂ K`, equivalently the spin structure does not extend over the
//! meridian disk of `L_i` (`s(m_i) = 0`).

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vec};
use crate::linkdata::LinkingMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacteristicSublink {
    pub x: Gf2Vec,
}

impl CharacteristicSublink {
    /// Checks the characteristic condition against `b`.
    pub fn new(b: &LinkingMatrix, x: Gf2Vec) -> Result<Self> {
        if x.len() != b.size() || !is_characteristic(b, &x) {
            return Err(Error::NotCharacteristic(gf2::format_bits(&x)));
        }
        Ok(Self { x })
    }

    pub fn from_bits(b: &LinkingMatrix, bits: &str) -> Result<Self> {
        let x = gf2::parse_bits(bits).ok_or_else(|| Error::NotCharacteristic(bits.to_string()))?;
        Self::new(b, x)
    }

    pub fn bits(&self) -> String {
        gf2::format_bits(&self.x)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.x[i] == 1
    }
}

pub fn is_characteristic(b: &LinkingMatrix, x: &[u8]) -> bool {
    let m = Gf2Matrix::from_int_rows(b.rows());
    let d: Gf2Vec = b.diag().iter().map(|v| v.rem_euclid(2) as u8).collect();
    x.len() == b.size() && m.mul_vec(x) == d
}

/// Every characteristic sublink of `b`, sorted by bit string.
pub fn characteristic_sublinks(b: &LinkingMatrix) -> Vec<CharacteristicSublink> {
    let m = Gf2Matrix::from_int_rows(b.rows());
    let d: Gf2Vec = b.diag().iter().map(|v| v.rem_euclid(2) as u8).collect();
    let sols = m.all_solutions(&d);
    // the diagonal of a symmetric form mod 2 is always in its image
    assert!(!sols.is_empty(), "no characteristic sublink for a symmetric matrix");
    sols.into_iter().map(|x| CharacteristicSublink { x }).collect()
}

/// Nullity of `b` over `GF(2)`.
pub fn gf2_nullity(b: &LinkingMatrix) -> usize {
    b.size() - Gf2Matrix::from_int_rows(b.rows()).rank()
}

/// A framed closed curve in the complement of the surgery link, recorded by
/// its self-linking (framing) and its linking numbers with the components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedCurve {
    pub framing: i64,
    pub linking: Vec<i64>,
}

impl FramedCurve {
    pub fn trivial(m: usize) -> Self {
        Self {
            framing: 0,
            linking: vec![0; m],
        }
    }

    /// A parallel copy of `L_i`: framing `B_ii`, linking row `i` of `B`.
    pub fn component(b: &LinkingMatrix, i: usize) -> Self {
        Self {
            framing: b.rows()[i][i],
            linking: b.rows()[i].clone(),
        }
    }
}

/// `s(γ) = 1 + γ·γ + Σ_j (γ·L_j)(1 + s(m_j))` mod 2, with `s(m_j) = 1 - x_j`.
pub fn spin_eval_curve(k: &CharacteristicSublink, gamma: &FramedCurve) -> u8 {
    let mut s = 1 + gamma.framing.rem_euclid(2);
    for (lk, &xj) in gamma.linking.iter().zip(&k.x) {
        let s_m = 1 - xj as i64;
        s += lk.rem_euclid(2) * (1 + s_m);
    }
    (s.rem_euclid(2)) as u8
}

/// A spin structure on a closed genus-`g` surface, recorded by the values of
/// its quadratic form on a symplectic basis `a_1, b_1, ..., a_g, b_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpinStructure {
    pub qa: Gf2Vec,
    pub qb: Gf2Vec,
}

impl SurfaceSpinStructure {
    pub fn new(qa: Gf2Vec, qb: Gf2Vec) -> Result<Self> {
        if qa.len() != qb.len() {
            return Err(Error::InvalidParams("qa and qb lengths differ".into()));
        }
        if qa.is_empty() {
            return Err(Error::InvalidGenus);
        }
        if qa.iter().chain(&qb).any(|&v| v > 1) {
            return Err(Error::InvalidParams("qa/qb entries must be 0 or 1".into()));
        }
        Ok(Self { qa, qb })
    }

    pub fn genus(&self) -> usize {
        self.qa.len()
    }

    /// All `4^g` structures; index bits `0..g` give `qa`, bits `g..2g` give `qb`.
    pub fn all(g: usize) -> Vec<Self> {
        (0u32..1 << (2 * g))
            .map(|mask| Self {
                qa: (0..g).map(|i| (mask >> i & 1) as u8).collect(),
                qb: (0..g).map(|i| (mask >> (g + i) & 1) as u8).collect(),
            })
            .collect()
    }

    pub fn label(&self) -> String {
        format!("qa={} qb={}", gf2::format_bits(&self.qa), gf2::format_bits(&self.qb))
    }
}

/// `Arf(σ) = Σ_i q(a_i) q(b_i)` mod 2.
pub fn arf(sigma: &SurfaceSpinStructure) -> u8 {
    gf2::dot(&sigma.qa, &sigma.qb)
}

/// Numbers of genus-`g` structures with Arf invariant 0 and 1.
pub fn arf_census(g: usize) -> (u64, u64) {
    let mut n = (0, 0);
    for s in SurfaceSpinStructure::all(g) {
        if arf(&s) == 0 {
            n.0 += 1;
        } else {
            n.1 += 1;
        }
    }
    n
}

/// Closed-form census counts `2^{g-1}(2^g + 1)` and `2^{g-1}(2^g - 1)`.
pub fn arf_census_formula(g: usize) -> (u64, u64) {
    let h = 1u64 << (g - 1);
    let t = 1u64 << g;
    (h * (t + 1), h * (t - 1))
}

/// A 2-dimensional cell complex with `Z/2` incidences: each edge has two
/// endpoint vertices, each face three boundary edges (repeats allowed and
/// counted mod 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z2Complex {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<[usize; 3]>,
}

impl Z2Complex {
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    fn d0(&self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.edges.len(), self.vertices);
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            m.flip(e, a);
            m.flip(e, b);
        }
        m
    }

    fn d1(&self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.faces.len(), self.edges.len());
        for (f, es) in self.faces.iter().enumerate() {
            for &e in es {
                m.flip(f, e);
            }
        }
        m
    }

    pub fn is_cocycle(&self, c: &[u8]) -> bool {
        c.len() == self.edges.len() && gf2::is_zero(&self.d1().mul_vec(c))
    }
}

/// `H¹(X; Z/2)` with a fixed basis of representative cocycles.
#[derive(Clone, Debug)]
pub struct Z2Cohomology {
    fingerprint: u64,
    complex: Z2Complex,
    coboundaries: Vec<Gf2Vec>,
    basis: Vec<Gf2Vec>,
}

/// A class in `H¹`, as coordinates in the basis of its complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z2CohomologyClass {
    pub coords: Gf2Vec,
    fingerprint: u64,
}

impl Z2CohomologyClass {
    pub fn is_zero(&self) -> bool {
        gf2::is_zero(&self.coords)
    }

    pub fn bits(&self) -> String {
        gf2::format_bits(&self.coords)
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

impl Z2Cohomology {
    pub fn new(complex: &Z2Complex) -> Self {
        let d0 = complex.d0();
        // image of d0: span of its columns
        let mut cols: Vec<Gf2Vec> = (0..d0.cols())
            .map(|j| (0..d0.rows()).map(|i| d0.get(i, j)).collect())
            .collect();
        let ne = complex.edges.len();
        let mut span = Gf2Matrix::from_rows(Vec::new(), ne);
        let mut coboundaries = Vec::new();
        for c in cols.drain(..) {
            if extends_rank(&span, &c) {
                span = push_row(&span, c.clone());
                coboundaries.push(c);
            }
        }
        let mut basis = Vec::new();
        for z in complex.d1().nullspace() {
            if extends_rank(&span, &z) {
                span = push_row(&span, z.clone());
                basis.push(z);
            }
        }
        Self {
            fingerprint: complex.fingerprint(),
            complex: complex.clone(),
            coboundaries,
            basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Gf2Vec] {
        &self.basis
    }

    pub fn complex(&self) -> &Z2Complex {
        &self.complex
    }

    /// The `2^rank` classes, ordered by coordinate bit string.
    pub fn classes(&self) -> Vec<Z2CohomologyClass> {
        let k = self.rank();
        let mut out: Vec<Z2CohomologyClass> = (0u32..1 << k)
            .map(|mask| Z2CohomologyClass {
                coords: (0..k).map(|i| (mask >> i & 1) as u8).collect(),
                fingerprint: self.fingerprint,
            })
            .collect();
        out.sort_by(|a, b| a.coords.cmp(&b.coords));
        out
    }

    pub fn zero_class(&self) -> Z2CohomologyClass {
        Z2CohomologyClass {
            coords: vec![0; self.rank()],
            fingerprint: self.fingerprint,
        }
    }

    pub fn class_from_coords(&self, coords: Gf2Vec) -> Result<Z2CohomologyClass> {
        if coords.len() != self.rank() {
            return Err(Error::OutOfRange {
                index: coords.len(),
                len: self.rank(),
            });
        }
        Ok(Z2CohomologyClass {
            coords,
            fingerprint: self.fingerprint,
        })
    }

    pub fn owns(&self, h: &Z2CohomologyClass) -> bool {
        h.fingerprint == self.fingerprint && h.coords.len() == self.rank()
    }

    pub fn representative(&self, h: &Z2CohomologyClass) -> Result<Gf2Vec> {
        if !self.owns(h) {
            return Err(Error::ForeignClass);
        }
        let mut v = vec![0u8; self.complex.edges.len()];
        for (c, b) in h.coords.iter().zip(&self.basis) {
            if *c == 1 {
                gf2::add_assign(&mut v, b);
            }
        }
        Ok(v)
    }

    /// Coordinates of the class of a cocycle.
    pub fn class_of_cocycle(&self, c: &[u8]) -> Result<Z2CohomologyClass> {
        if !self.complex.is_cocycle(c) {
            return Err(Error::NotCocycle);
        }
        let ne = self.complex.edges.len();
        let k0 = self.coboundaries.len();
        let gens: Vec<&Gf2Vec> = self.coboundaries.iter().chain(&self.basis).collect();
        let mut m = Gf2Matrix::zeros(ne, gens.len());
        for (j, g) in gens.iter().enumerate() {
            for i in 0..ne {
                m.set(i, j, g[i]);
            }
        }
        let y = m.solve(c).expect("cocycle outside the span of coboundaries and basis");
        Ok(Z2CohomologyClass {
            coords: y[k0..].to_vec(),
            fingerprint: self.fingerprint,
        })
    }
}

fn push_row(m: &Gf2Matrix, row: Gf2Vec) -> Gf2Matrix {
    let cols = m.cols();
    let mut rows: Vec<Gf2Vec> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    rows.push(row);
    Gf2Matrix::from_rows(rows, cols)
}

fn extends_rank(span: &Gf2Matrix, v: &[u8]) -> bool {
    if gf2::is_zero(v) {
        return false;
    }
    push_row(span, v.to_vec()).rank() > span.rank()
}
