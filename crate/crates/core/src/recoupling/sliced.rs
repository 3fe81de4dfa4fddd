//! Generic Kauffman-bracket evaluator for diagrams given as horizontal slices.
//!
//! The diagram is read bottom to top. The state is a formal sum of planar
//! matchings of the points on the current level; cups and caps change the
//! number of points, crossings are resolved as they are met, and projector
//! boxes are replaced by their Jones–Wenzl expansions.

use std::collections::HashMap;

use crate::arith::{tree_sum, ColorIndex, Scalar};
use crate::error::{Error, Result};

use super::tl::{attach, generator, JonesWenzl, Matching};

pub const DEFAULT_WIDTH_BOUND: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slice {
    /// New arc whose ends become points `at` and `at + 1`.
    Cup { at: usize },
    /// Joins points `at` and `at + 1`.
    Cap { at: usize },
    /// Crossing of the strands at `at` and `at + 1`, braid-like with both
    /// strands oriented upward; `positive` is writhe `+1`.
    Cross { at: usize, positive: bool },
    /// Jones–Wenzl box on points `at..at + width`.
    Projector { at: usize, width: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SlicedDiagram {
    pub slices: Vec<Slice>,
}

impl SlicedDiagram {
    pub fn new(slices: Vec<Slice>) -> Self {
        Self { slices }
    }

    /// Number of points on each level, starting with the empty bottom.
    pub fn widths(&self) -> Result<Vec<usize>> {
        let mut w = 0usize;
        let mut out = vec![0];
        for (k, s) in self.slices.iter().enumerate() {
            let bad = |msg: &str| Error::InvalidDiagram(format!("slice {k}: {msg}"));
            match *s {
                Slice::Cup { at } => {
                    if at > w {
                        return Err(bad("cup outside the level"));
                    }
                    w += 2;
                }
                Slice::Cap { at } | Slice::Cross { at, .. } => {
                    if at + 1 >= w {
                        return Err(bad("needs two points"));
                    }
                    if matches!(s, Slice::Cap { .. }) {
                        w -= 2;
                    }
                }
                Slice::Projector { at, width } => {
                    if at + width > w {
                        return Err(bad("projector outside the level"));
                    }
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    pub fn max_width(&self) -> Result<usize> {
        Ok(self.widths()?.into_iter().max().unwrap_or(0))
    }
}

type State = HashMap<Matching, Scalar>;

fn add_to(state: &mut State, m: Matching, c: Scalar) {
    match state.get_mut(&m) {
        Some(v) => *v += &c,
        None => {
            state.insert(m, c);
        }
    }
}

fn cup(m: &[u8], at: usize) -> Matching {
    let shift = |x: u8| if (x as usize) >= at { x + 2 } else { x };
    let mut out = Vec::with_capacity(m.len() + 2);
    out.extend(m[..at].iter().map(|&x| shift(x)));
    out.push(at as u8 + 1);
    out.push(at as u8);
    out.extend(m[at..].iter().map(|&x| shift(x)));
    out
}

/// Returns the capped matching and whether a closed loop was formed.
fn cap(m: &[u8], at: usize) -> (Matching, bool) {
    let shift = |x: usize| if x > at + 1 { x - 2 } else { x };
    let a = m[at] as usize;
    let b = m[at + 1] as usize;
    let mut out: Matching = m
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != at && i != at + 1)
        .map(|(_, &x)| shift(x as usize) as u8)
        .collect();
    if a == at + 1 {
        return (out, true);
    }
    let (a, b) = (shift(a), shift(b));
    out[a] = b as u8;
    out[b] = a as u8;
    (out, false)
}

/// Evaluates the slices of `diagram`, starting from the empty level, and
/// returns the formal sum of matchings on the top level.
pub fn evaluate_open(
    diagram: &SlicedDiagram,
    jw: &JonesWenzl,
    width_bound: usize,
) -> Result<Vec<(Matching, Scalar)>> {
    let widths = diagram.widths()?;
    let needed = widths.iter().copied().max().unwrap_or(0);
    if needed > width_bound {
        return Err(Error::WidthExceeded {
            needed,
            bound: width_bound,
        });
    }
    let params = jw.params();
    let delta = params.loop_value();
    let a = params.a_pow(1);
    let a_inv = params.a_pow(-1);
    let e = generator(2, 0);

    let mut state: State = HashMap::new();
    state.insert(Vec::new(), params.one());
    for s in &diagram.slices {
        let mut next = State::with_capacity(state.len());
        match *s {
            Slice::Cup { at } => {
                for (m, c) in state {
                    next.insert(cup(&m, at), c);
                }
            }
            Slice::Cap { at } => {
                for (m, c) in state {
                    let (m2, closed) = cap(&m, at);
                    let c = if closed { &c * &delta } else { c };
                    add_to(&mut next, m2, c);
                }
            }
            Slice::Cross { at, positive } => {
                let (id_coef, e_coef) = if positive {
                    (&a_inv, &a)
                } else {
                    (&a, &a_inv)
                };
                for (m, c) in state {
                    let (m2, loops) = attach(&m, at, &e, 2);
                    let mut c2 = &c * e_coef;
                    for _ in 0..loops {
                        c2 = &c2 * &delta;
                    }
                    add_to(&mut next, m2, c2);
                    add_to(&mut next, m, &c * id_coef);
                }
            }
            Slice::Projector { at, width } => {
                let f = jw.expansion(width)?;
                for (m, c) in &state {
                    for (d, fc) in f.iter() {
                        let (m2, loops) = attach(m, at, d, width);
                        let mut c2 = c * fc;
                        c2 = &c2 * jw.loops().get(loops);
                        add_to(&mut next, m2, c2);
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        state = next;
    }
    let mut out: Vec<(Matching, Scalar)> = state.into_iter().collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Kauffman bracket of a closed sliced diagram. Each crossing contributes
/// `A^{∓1}` times the vertical smoothing plus `A^{±1}` times the horizontal
/// one, each loop contributes `δ = -A² - A⁻²`.
pub fn bracket_eval(diagram: &SlicedDiagram, jw: &JonesWenzl, width_bound: usize) -> Result<Scalar> {
    let widths = diagram.widths()?;
    if widths.last() != Some(&0) {
        return Err(Error::InvalidDiagram("diagram is not closed".into()));
    }
    let out = evaluate_open(diagram, jw, width_bound)?;
    let prec = jw.params().precision();
    Ok(tree_sum(out.into_iter().map(|(_, c)| c).collect(), prec))
}

/// Builds sliced diagrams of colored (cabled) networks. Each block is a
/// bundle of parallel strands standing for one colored edge.
#[derive(Clone, Debug, Default)]
pub struct CabledBuilder {
    blocks: Vec<ColorIndex>,
    slices: Vec<Slice>,
}

impl CabledBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn blocks(&self) -> &[ColorIndex] {
        &self.blocks
    }

    fn offset(&self, block: usize) -> usize {
        self.blocks[..block].iter().sum()
    }

    fn projector(&mut self, at: usize, width: usize) {
        if width >= 2 {
            self.slices.push(Slice::Projector { at, width });
        }
    }

    /// Inserts a `c`-colored arc whose two ends become blocks `i` and `i+1`.
    pub fn open(&mut self, i: usize, c: ColorIndex) -> &mut Self {
        let p = self.offset(i);
        for k in 0..c {
            self.slices.push(Slice::Cup { at: p + k });
        }
        self.projector(p, c);
        self.blocks.splice(i..i, [c, c]);
        self
    }

    /// Joins blocks `i` and `i+1`, which must carry the same color.
    pub fn close(&mut self, i: usize) -> &mut Self {
        let c = self.blocks[i];
        assert_eq!(c, self.blocks[i + 1], "closing blocks of different colors");
        let p = self.offset(i);
        for k in 0..c {
            self.slices.push(Slice::Cap { at: p + c - 1 - k });
        }
        self.blocks.drain(i..i + 2);
        self
    }

    /// Trivalent vertex: block `i` splits into blocks of colors `a`, `b`.
    pub fn split(&mut self, i: usize, a: ColorIndex, b: ColorIndex) -> &mut Self {
        let c = self.blocks[i];
        assert!(super::admissible_unbounded(a, b, c), "split ({a},{b},{c})");
        let m = (a + b - c) / 2;
        let p = self.offset(i);
        for k in 0..m {
            self.slices.push(Slice::Cup { at: p + a - m + k });
        }
        self.projector(p, a);
        self.projector(p + a, b);
        self.blocks.splice(i..i + 1, [a, b]);
        self
    }

    /// Trivalent vertex: blocks `i`, `i+1` fuse into one block of color `c`.
    pub fn fuse(&mut self, i: usize, c: ColorIndex) -> &mut Self {
        let (a, b) = (self.blocks[i], self.blocks[i + 1]);
        assert!(super::admissible_unbounded(a, b, c), "fuse ({a},{b},{c})");
        let m = (a + b - c) / 2;
        let p = self.offset(i);
        for k in 0..m {
            self.slices.push(Slice::Cap { at: p + a - 1 - k });
        }
        self.projector(p, c);
        self.blocks.splice(i..i + 2, [c]);
        self
    }

    /// Cabled crossing: block `i` passes to the right of block `i+1`.
    pub fn cross(&mut self, i: usize, positive: bool) -> &mut Self {
        let (a, b) = (self.blocks[i], self.blocks[i + 1]);
        let p = self.offset(i);
        for t in 0..b {
            for at in (p + t..p + a + t).rev() {
                self.slices.push(Slice::Cross { at, positive });
            }
        }
        self.blocks.swap(i, i + 1);
        self
    }

    /// A curl on block `i`, changing its blackboard framing by `±1`.
    pub fn kink(&mut self, i: usize, positive: bool) -> &mut Self {
        let c = self.blocks[i];
        self.open(i + 1, c);
        self.cross(i, positive);
        self.close(i + 1);
        self
    }

    pub fn projector_on(&mut self, i: usize) -> &mut Self {
        let p = self.offset(i);
        let w = self.blocks[i];
        self.projector(p, w);
        self
    }

    pub fn push_raw(&mut self, s: Slice) -> &mut Self {
        self.slices.push(s);
        self
    }

    pub fn build(&self) -> SlicedDiagram {
        SlicedDiagram::new(self.slices.clone())
    }
}

/// Cabled theta network with edges `a`, `b`, `c`.
pub fn theta_diagram(a: ColorIndex, b: ColorIndex, c: ColorIndex) -> SlicedDiagram {
    let mut cb = CabledBuilder::new();
    cb.open(0, c).split(0, a, b).fuse(0, c).close(0);
    cb.build()
}

/// Cabled tetrahedral network with faces `(a,b,e)`, `(c,d,e)`, `(a,d,f)`,
/// `(b,c,f)`.
pub fn tet_diagram(
    a: ColorIndex,
    b: ColorIndex,
    e: ColorIndex,
    c: ColorIndex,
    d: ColorIndex,
    f: ColorIndex,
) -> SlicedDiagram {
    let mut cb = CabledBuilder::new();
    cb.open(0, e)
        .split(0, d, c)
        .split(2, b, a)
        .fuse(1, f)
        .fuse(1, d)
        .close(0);
    cb.build()
}

/// Cabled closure of a braid on `colors.len()` strands, where `colors[k]` is
/// the color of the strand starting at position `k`. Generators are `±k`
/// for `σ_k^{±1}`, `k ≥ 1`.
pub fn braid_closure_diagram(colors: &[ColorIndex], word: &[i32]) -> SlicedDiagram {
    let n = colors.len();
    let mut cb = CabledBuilder::new();
    for (k, &c) in colors.iter().enumerate() {
        cb.open(k, c);
    }
    for &g in word {
        let k = g.unsigned_abs() as usize;
        cb.cross(k - 1, g > 0);
    }
    for k in (0..n).rev() {
        cb.close(k);
    }
    cb.build()
}

/// Cabled unknot of color `c` with `kinks` curls (sign gives handedness).
pub fn kinked_unknot_diagram(c: ColorIndex, kinks: i32) -> SlicedDiagram {
    let mut cb = CabledBuilder::new();
    cb.open(0, c);
    for _ in 0..kinks.unsigned_abs() {
        cb.kink(0, kinks > 0);
    }
    cb.close(0);
    cb.build()
}
