//! Bracket of cabled braid closures.
//!
//! Same skein expansion as the sliced evaluator, organized for braids: the
//! state is a formal sum of `TL_W` diagrams `D` (`W` the total cable width)
//! standing for `D ∘ F`, with `F` the tensor product of the strand projectors
//! placed at the bottom. Terms killed by `F` are dropped as soon as they
//! appear, and the closure `tr(F ∘ D)` is taken once per distinct surviving
//! diagram.

use std::collections::HashMap;

use crate::arith::{tree_sum, ColorIndex, Scalar};
use crate::error::{Error, Result};

use super::tl::{attach, generator, identity, trace_loops, JonesWenzl, Matching};

type State = HashMap<Matching, Scalar>;

fn add_to(state: &mut State, m: Matching, c: Scalar) {
    match state.get_mut(&m) {
        Some(v) => *v += &c,
        None => {
            state.insert(m, c);
        }
    }
}

/// Block index of every cable position.
fn block_of(widths: &[usize]) -> Vec<usize> {
    widths
        .iter()
        .enumerate()
        .flat_map(|(b, &w)| std::iter::repeat(b).take(w))
        .collect()
}

/// True if some arc joins two points of one block on the given side.
fn has_block_cap(m: &[u8], side_offset: usize, blocks: &[usize]) -> bool {
    let w = blocks.len();
    (0..w).any(|i| {
        let p = m[side_offset + i] as usize;
        p >= side_offset && p < side_offset + w && p > side_offset + i && blocks[p - side_offset] == blocks[i]
    })
}

/// Kauffman bracket (blackboard framing) of the closure of a braid whose
/// strand starting at position `k` carries color `colors[k]`.
///
/// `word` lists `±k` for `σ_k^{±1}`. The closure must be color-consistent:
/// the strand ending at position `k` must carry `colors[k]`.
pub fn braid_closure_bracket(
    colors: &[ColorIndex],
    word: &[i32],
    jw: &JonesWenzl,
    width_bound: usize,
) -> Result<Scalar> {
    let params = jw.params();
    let n = colors.len();
    let w: usize = colors.iter().sum();
    if 2 * w > width_bound {
        return Err(Error::WidthExceeded {
            needed: 2 * w,
            bound: width_bound,
        });
    }
    for &c in colors {
        params.check_color(c)?;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for &g in word {
        let k = g.unsigned_abs() as usize;
        if g == 0 || k >= n {
            return Err(Error::InvalidDiagram(format!("generator {g} on {n} strands")));
        }
        perm.swap(k - 1, k);
    }
    if (0..n).any(|k| colors[perm[k]] != colors[k]) {
        return Err(Error::InvalidDiagram(
            "closure joins strands of different colors".into(),
        ));
    }

    let delta = params.loop_value();
    let a = params.a_pow(1);
    let a_inv = params.a_pow(-1);
    let e = generator(2, 0);
    let bottom_blocks = block_of(colors);

    let mut widths: Vec<usize> = colors.to_vec();
    let mut state: State = HashMap::new();
    state.insert(identity(w), params.one());
    for &g in word {
        let k = g.unsigned_abs() as usize - 1;
        let positive = g > 0;
        let (id_coef, e_coef) = if positive { (&a_inv, &a) } else { (&a, &a_inv) };
        let (wa, wb) = (widths[k], widths[k + 1]);
        let p: usize = widths[..k].iter().sum();
        for t in 0..wb {
            for at in (p + t..p + wa + t).rev() {
                let mut next = State::with_capacity(2 * state.len());
                for (m, c) in state {
                    let (m2, loops) = attach(&m, w + at, &e, 2);
                    if !has_block_cap(&m2, 0, &bottom_blocks) {
                        let mut c2 = &c * e_coef;
                        if loops > 0 {
                            c2 = &c2 * &delta;
                        }
                        add_to(&mut next, m2, c2);
                    }
                    add_to(&mut next, m, &c * id_coef);
                }
                state = next;
            }
        }
        widths.swap(k, k + 1);
        let top_blocks = block_of(&widths);
        state.retain(|m, c| !c.is_zero() && !has_block_cap(m, w, &top_blocks));
    }

    let mut memo: HashMap<Matching, Scalar> = HashMap::new();
    let mut terms = Vec::with_capacity(state.len());
    let mut keys: Vec<&Matching> = state.keys().collect();
    keys.sort();
    for m in keys {
        let t = match memo.get(m) {
            Some(t) => t.clone(),
            None => {
                let t = closed_trace(m, &widths, w, jw)?;
                memo.insert(m.clone(), t.clone());
                t
            }
        };
        terms.push(&state[m] * &t);
    }
    Ok(tree_sum(terms, params.precision()))
}

/// `tr(F ∘ D)` with the projectors of `widths` attached on top of `d`.
fn closed_trace(d: &[u8], widths: &[usize], w: usize, jw: &JonesWenzl) -> Result<Scalar> {
    let params = jw.params();
    let mut cur: State = HashMap::new();
    cur.insert(d.to_vec(), params.one());
    let mut off = 0;
    for &bw in widths {
        if bw >= 2 {
            let f = jw.expansion(bw)?;
            let mut next = State::new();
            for (m, c) in &cur {
                for (fd, fc) in f.iter() {
                    let (m2, loops) = attach(m, w + off, fd, bw);
                    add_to(&mut next, m2, &(c * fc) * jw.loops().get(loops));
                }
            }
            cur = next;
        }
        off += bw;
    }
    Ok(tree_sum(
        cur.into_iter()
            .map(|(m, c)| &c * jw.loops().get(trace_loops(&m, w)))
            .collect(),
        params.precision(),
    ))
}
