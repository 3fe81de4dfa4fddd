//! Recoupling theory at the root of unity.
//!
//! Colored networks are evaluated in the Kauffman-bracket skein with
//! Jones–Wenzl cabling. A positive crossing (writhe `+1`, both strands going
//! up) expands as `A⁻¹·(vertical) + A·(horizontal)`, so one positive curl on
//! an `i`-colored strand multiplies by `q_i⁻²`.
//!
//! Closed forms (theta, tetrahedron, Hopf link) are the Kauffman–Lins
//! formulas and are checked against the diagram evaluator in the tests.
//!
//! The Turaev–Viro 6j symbol divides the tetrahedron by the principal complex
//! square roots of the four face thetas. Every theta of an admissible triple
//! is real; negative thetas contribute a factor `i`. The branch is a function
//! of the unordered triple only, so the symbol keeps the full tetrahedral
//! symmetry, and every state sum in which each face meets two tetrahedra
//! (or one twice) sees each square root squared.

pub mod braid;
pub mod sliced;
pub mod tl;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::{tree_sum, ColorIndex, Scalar, TheoryParams};
use crate::error::Result;

pub use braid::braid_closure_bracket;
pub use sliced::{bracket_eval, CabledBuilder, Slice, SlicedDiagram, DEFAULT_WIDTH_BOUND};
pub use tl::JonesWenzl;

/// Parity and triangle inequalities without the upper bound.
pub fn admissible_unbounded(i: usize, j: usize, k: usize) -> bool {
    (i + j + k) % 2 == 0 && i <= j + k && j <= i + k && k <= i + j
}

/// `(i, j, k)` is admissible: even sum, triangle inequalities,
/// `i + j + k ≤ 2(r - 2)`, all colors in `I`.
pub fn admissible(params: &TheoryParams, i: usize, j: usize, k: usize) -> bool {
    let m = params.max_color();
    i <= m && j <= m && k <= m && admissible_unbounded(i, j, k) && i + j + k <= 2 * m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(i: usize) -> Self {
        if i % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn from_bit(b: u8) -> Self {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn matches(self, i: usize) -> bool {
        Parity::of(i) == self
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Theta network with edges `a, b, c`; zero when inadmissible.
pub fn theta(params: &TheoryParams, a: ColorIndex, b: ColorIndex, c: ColorIndex) -> Scalar {
    if !admissible(params, a, b, c) {
        return params.zero();
    }
    let m = (a + b - c) / 2;
    let n = (b + c - a) / 2;
    let p = (a + c - b) / 2;
    let f = |k| params.quantum_factorial(k);
    let num = &(&(&f(m + n + p + 1) * &f(m)) * &f(n)) * &f(p);
    let den = &(&f(m + n) * &f(n + p)) * &f(m + p);
    &(&num / &den) * sign(m + n + p)
}

/// Tetrahedral network with faces `(a,b,e)`, `(c,d,e)`, `(a,d,f)`, `(b,c,f)`.
/// Opposite edge pairs are `{a,c}`, `{b,d}`, `{e,f}`.
pub fn tet(
    params: &TheoryParams,
    a: ColorIndex,
    b: ColorIndex,
    e: ColorIndex,
    c: ColorIndex,
    d: ColorIndex,
    f: ColorIndex,
) -> Scalar {
    let faces = [(a, b, e), (c, d, e), (a, d, f), (b, c, f)];
    if faces.iter().any(|&(x, y, z)| !admissible(params, x, y, z)) {
        return params.zero();
    }
    let ai: Vec<usize> = faces.iter().map(|&(x, y, z)| (x + y + z) / 2).collect();
    let bj = [(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2];
    let fact = |k: usize| params.quantum_factorial(k);

    let mut pre = params.one();
    for &bv in &bj {
        for &av in &ai {
            pre = &pre * &fact(bv - av);
        }
    }
    for x in [a, b, c, d, e, f] {
        pre = &pre / &fact(x);
    }

    let lo = *ai.iter().max().unwrap();
    let hi = *bj.iter().min().unwrap();
    let mut terms = Vec::new();
    for s in lo..=hi {
        let num = fact(s + 1);
        if num.is_zero() {
            continue;
        }
        let mut den = params.one();
        for &av in &ai {
            den = &den * &fact(s - av);
        }
        for &bv in &bj {
            den = &den * &fact(bv - s);
        }
        terms.push(&(&num / &den) * sign(s));
    }
    &pre * &tree_sum(terms, params.precision())
}

/// Turaev–Viro normalized 6j symbol `|a b e; c d f|`.
pub fn sixj_tv(
    params: &TheoryParams,
    a: ColorIndex,
    b: ColorIndex,
    e: ColorIndex,
    c: ColorIndex,
    d: ColorIndex,
    f: ColorIndex,
) -> Scalar {
    let t = tet(params, a, b, e, c, d, f);
    if t.is_zero() {
        return t;
    }
    let mut den = params.one();
    for (x, y, z) in [(a, b, e), (c, d, e), (a, d, f), (b, c, f)] {
        den = &den * &theta(params, x, y, z).sqrt();
    }
    &t / &den
}

/// 0-framed Hopf link with colors `i, j`: `(-1)^{i+j} [(i+1)(j+1)]`.
pub fn hopf(params: &TheoryParams, i: ColorIndex, j: ColorIndex) -> Scalar {
    &params.quantum_int(((i + 1) * (j + 1)) as i64) * sign(i + j)
}

/// `S_{ij} = ω⁻¹ · hopf(i, j)`.
pub fn s_matrix(params: &TheoryParams) -> Vec<Vec<Scalar>> {
    let winv = params.omega().inv();
    params
        .colors()
        .map(|i| params.colors().map(|j| &hopf(params, i, j) * &winv).collect())
        .collect()
}

/// Factor picked up by one positive curl on an `i`-colored strand: `q_i⁻²`.
pub fn twist(params: &TheoryParams, i: ColorIndex) -> Scalar {
    params.q_sq_pow(i, -1)
}

/// `Σ_{i of given parity} ω_i² hopf(i, j) / ω_j²`: a parity-restricted
/// Kirby color encircling a `j`-colored strand.
pub fn encircle_sum(params: &TheoryParams, parity: Parity, j: ColorIndex) -> Scalar {
    let terms = params
        .colors()
        .filter(|&i| parity.matches(i))
        .map(|i| params.omega_sq(i) * &hopf(params, i, j))
        .collect();
    &tree_sum(terms, params.precision()) / params.omega_sq(j)
}

/// `(ω²/2)(δ_{j,0} ± δ_{j,r-2})`, plus for even parity, minus for odd.
pub fn encircle_expected(params: &TheoryParams, parity: Parity, j: ColorIndex) -> Scalar {
    let half = params.omega_squared().mul_pow2(-1);
    let mut k = 0i64;
    if j == 0 {
        k += 1;
    }
    if j == params.max_color() {
        k += if parity == Parity::Even { 1 } else { -1 };
    }
    &half * k
}

/// Precomputed values for one `TheoryParams`. Inadmissible lookups return 0.
#[derive(Debug)]
pub struct RecouplingTable {
    params: TheoryParams,
    zero: Scalar,
    theta: Vec<Scalar>,
    sixj: HashMap<[u8; 6], Scalar>,
    tet: HashMap<[u8; 6], Scalar>,
    hopf: Vec<Scalar>,
    twist: Vec<Scalar>,
    jw: Arc<JonesWenzl>,
}

impl RecouplingTable {
    pub fn new(params: &TheoryParams) -> Self {
        let n = params.r() - 1;
        let theta_vals: Vec<Scalar> = (0..n * n * n)
            .into_par_iter()
            .map(|k| theta(params, k / (n * n), (k / n) % n, k % n))
            .collect();

        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |e| (a, b, e))))
            .filter(|&(a, b, e)| admissible(params, a, b, e))
            .collect();
        let entries: Vec<([u8; 6], Scalar, Scalar)> = triples
            .par_iter()
            .flat_map_iter(|&(a, b, e)| {
                let mut out = Vec::new();
                for c in 0..n {
                    for d in 0..n {
                        if !admissible(params, c, d, e) {
                            continue;
                        }
                        for f in 0..n {
                            if admissible(params, a, d, f) && admissible(params, b, c, f) {
                                let t = tet(params, a, b, e, c, d, f);
                                let s = sixj_tv(params, a, b, e, c, d, f);
                                let key = [a, b, e, c, d, f].map(|x| x as u8);
                                out.push((key, t, s));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let mut tet_map = HashMap::with_capacity(entries.len());
        let mut sixj_map = HashMap::with_capacity(entries.len());
        for (k, t, s) in entries {
            tet_map.insert(k, t);
            sixj_map.insert(k, s);
        }

        let hopf_vals = (0..n * n).map(|k| hopf(params, k / n, k % n)).collect();
        let twist_vals = params.colors().map(|i| twist(params, i)).collect();
        Self {
            params: params.clone(),
            zero: params.zero(),
            theta: theta_vals,
            sixj: sixj_map,
            tet: tet_map,
            hopf: hopf_vals,
            twist: twist_vals,
            jw: Arc::new(JonesWenzl::new(params)),
        }
    }

    pub fn params(&self) -> &TheoryParams {
        &self.params
    }

    pub fn jones_wenzl(&self) -> &Arc<JonesWenzl> {
        &self.jw
    }

    fn in_range(&self, xs: &[usize]) -> bool {
        xs.iter().all(|&x| x <= self.params.max_color())
    }

    pub fn admissible(&self, i: usize, j: usize, k: usize) -> bool {
        admissible(&self.params, i, j, k)
    }

    pub fn theta(&self, a: usize, b: usize, c: usize) -> &Scalar {
        if !self.in_range(&[a, b, c]) {
            return &self.zero;
        }
        let n = self.params.r() - 1;
        &self.theta[(a * n + b) * n + c]
    }

    pub fn tet(&self, a: usize, b: usize, e: usize, c: usize, d: usize, f: usize) -> &Scalar {
        if !self.in_range(&[a, b, e, c, d, f]) {
            return &self.zero;
        }
        let key = [a, b, e, c, d, f].map(|x| x as u8);
        self.tet.get(&key).unwrap_or(&self.zero)
    }

    pub fn sixj(&self, a: usize, b: usize, e: usize, c: usize, d: usize, f: usize) -> &Scalar {
        if !self.in_range(&[a, b, e, c, d, f]) {
            return &self.zero;
        }
        let key = [a, b, e, c, d, f].map(|x| x as u8);
        self.sixj.get(&key).unwrap_or(&self.zero)
    }

    pub fn hopf(&self, i: usize, j: usize) -> &Scalar {
        if !self.in_range(&[i, j]) {
            return &self.zero;
        }
        &self.hopf[i * (self.params.r() - 1) + j]
    }

    pub fn twist(&self, i: usize) -> &Scalar {
        &self.twist[i]
    }

    /// Number of admissible 6-tuples stored.
    pub fn sixj_len(&self) -> usize {
        self.sixj.len()
    }

    /// Kauffman bracket of a sliced diagram, using this table's projectors.
    pub fn bracket_eval(&self, diagram: &SlicedDiagram, width_bound: usize) -> Result<Scalar> {
        bracket_eval(diagram, &self.jw, width_bound)
    }
}

#[cfg(test)]
mod tests {
    use super::sliced::{braid_closure_diagram, tet_diagram, theta_diagram};
    use super::*;

    fn tp(r: usize) -> TheoryParams {
        TheoryParams::new(r, 128, 1e-20).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let p = tp(8);
        assert!(admissible(&p, 0, 0, 0));
        assert!(!admissible(&p, 0, 1, 2));
        assert!(!admissible(&p, 6, 6, 6));
        assert!(admissible(&p, 6, 6, 0));
        assert!(admissible(&p, 4, 4, 4));
        assert!(!admissible(&p, 1, 1, 4));
    }

    #[test]
    fn theta_examples() {
        let p = tp(8);
        for a in p.colors() {
            assert!(theta(&p, a, 0, a).approx_eq(p.omega_sq(a), 1e-25));
        }
        assert!(theta(&p, 1, 1, 1).is_zero());
    }

    #[test]
    fn theta_and_tet_against_diagrams() {
        let p = tp(8);
        let t = RecouplingTable::new(&p);
        let jw = t.jones_wenzl();
        let v = bracket_eval(&theta_diagram(1, 1, 2), jw, 14).unwrap();
        assert!(v.approx_eq(&theta(&p, 1, 1, 2), 1e-22));
        let v = bracket_eval(&tet_diagram(1, 1, 2, 1, 1, 2), jw, 14).unwrap();
        assert!(v.approx_eq(t.tet(1, 1, 2, 1, 1, 2), 1e-22));
        let v = bracket_eval(&tet_diagram(2, 1, 1, 2, 1, 1), jw, 14).unwrap();
        assert!(v.approx_eq(t.tet(2, 1, 1, 2, 1, 1), 1e-22));
    }

    #[test]
    fn hopf_examples() {
        let p = tp(8);
        for j in p.colors() {
            assert!(hopf(&p, 0, j).approx_eq(p.omega_sq(j), 1e-25));
        }
        assert!(hopf(&p, 1, 1).approx_eq(&p.quantum_int(4), 1e-25));
        let jw = JonesWenzl::new(&p);
        let v = bracket_eval(&braid_closure_diagram(&[1, 1], &[1, 1]), &jw, 14).unwrap();
        assert!(v.approx_eq(&hopf(&p, 1, 1), 1e-22));
    }

    #[test]
    fn s_matrix_unitary() {
        for r in [8, 12] {
            let p = tp(r);
            let s = s_matrix(&p);
            let n = s.len();
            for i in 0..n {
                for j in 0..n {
                    assert!(s[i][j].approx_eq(&s[j][i], 1e-25));
                    let sum = tree_sum(
                        (0..n).map(|k| &s[i][k] * &s[k][j].conj()).collect(),
                        128,
                    );
                    let expect = if i == j { p.one() } else { p.zero() };
                    assert!(sum.approx_eq(&expect, 1e-22), "r={r} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn s_matrix_against_parity_vectors() {
        // S_{a0} ± S_{a,r-2} = (1 ± (-1)^a) ω⁻¹ ω_a²
        let p = tp(8);
        let s = s_matrix(&p);
        let winv = p.omega().inv();
        let m = p.max_color();
        for a in p.colors() {
            let plus = &s[a][0] + &s[a][m];
            let minus = &s[a][0] - &s[a][m];
            let full = &(&winv * p.omega_sq(a)) * 2;
            let (ep, em) = if a % 2 == 0 {
                (full, p.zero())
            } else {
                (p.zero(), full)
            };
            assert!(plus.approx_eq(&ep, 1e-25), "a={a}");
            assert!(minus.approx_eq(&em, 1e-25), "a={a}");
        }
    }

    #[test]
    fn encircle_examples() {
        let p = tp(8);
        let half = p.omega_squared().mul_pow2(-1);
        assert!(encircle_sum(&p, Parity::Even, 0).approx_eq(&half, 1e-22));
        assert!(encircle_sum(&p, Parity::Odd, 6).approx_eq(&-half, 1e-22));
        assert!(encircle_sum(&p, Parity::Even, 2).approx_zero(1e-20));
        for j in p.colors() {
            for par in [Parity::Even, Parity::Odd] {
                assert!(encircle_sum(&p, par, j).approx_eq(&encircle_expected(&p, par, j), 1e-20));
            }
        }
    }

    #[test]
    fn sixj_anchor() {
        for r in [8, 12] {
            let p = tp(r);
            let h = r / 2 - 1;
            let v = sixj_tv(&p, h, r - 2, h, h, r - 2, h);
            let expect = -p.omega_sq(h).inv();
            assert!(v.approx_eq(&expect, 1e-22), "r={r}: {v:?}");
        }
    }

    #[test]
    fn table_lookups() {
        let p = tp(8);
        let t = RecouplingTable::new(&p);
        assert!(t.sixj(1, 1, 1, 1, 1, 1).is_zero());
        assert!(t.theta(9, 0, 9).is_zero());
        assert!(t.sixj(0, 0, 0, 0, 0, 0).approx_eq(&p.one(), 1e-25));
        assert!(t.hopf(2, 3).approx_eq(&hopf(&p, 2, 3), 1e-30));
        assert!(t.twist(1).approx_eq(&p.q_sq(1).inv(), 1e-25));
        assert!(t.sixj_len() > 0);
    }
}
