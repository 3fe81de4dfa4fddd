//! Temperley–Lieb diagrams as planar matchings and the Jones–Wenzl idempotents.
//!
//! A diagram in `TL_n` is a partner array on `2n` boundary points: bottom
//! points `0..n` left to right, then top points `n..2n` left to right.
//! Products stack diagrams vertically; closed loops are returned as a count so
//! the caller can weight them by the loop value `δ`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::arith::{Scalar, TheoryParams};
use crate::error::{Error, Result};

pub type Matching = Vec<u8>;

/// Linear combination of matchings with a common point count.
pub type TlElement = HashMap<Matching, Scalar>;

pub fn identity(n: usize) -> Matching {
    let mut m = vec![0u8; 2 * n];
    for i in 0..n {
        m[i] = (n + i) as u8;
        m[n + i] = i as u8;
    }
    m
}

/// `e_i` in `TL_n`: a cap on bottom points `i, i+1` and a cup on top.
pub fn generator(n: usize, i: usize) -> Matching {
    assert!(i + 1 < n);
    let mut m = identity(n);
    m[i] = (i + 1) as u8;
    m[i + 1] = i as u8;
    m[n + i] = (n + i + 1) as u8;
    m[n + i + 1] = (n + i) as u8;
    m
}

/// Checks that a partner array is an involution without fixed points and
/// without crossing arcs.
pub fn is_planar_matching(m: &[u8]) -> bool {
    let k = m.len();
    for (i, &p) in m.iter().enumerate() {
        let p = p as usize;
        if p >= k || p == i || m[p] as usize != i {
            return false;
        }
    }
    // boundary read counterclockwise: bottom left to right, then top right to left
    let n = k / 2;
    let pos = |x: usize| if x < n { x } else { 3 * n - 1 - (x - n) };
    for i in 0..k {
        let (a, b) = sorted(pos(i), pos(m[i] as usize));
        for j in 0..k {
            let (c, d) = sorted(pos(j), pos(m[j] as usize));
            if a < c && c < b && b < d {
                return false;
            }
        }
    }
    true
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Glues the bottom of `d ∈ TL_n` onto the points `at..at+n` of `state`.
///
/// `state` is any partner array; the window points are replaced by the top
/// points of `d`. Returns the new partner array and the number of closed
/// loops formed.
pub fn attach(state: &[u8], at: usize, d: &[u8], n: usize) -> (Matching, u32) {
    let k = state.len();
    debug_assert!(at + n <= k && d.len() == 2 * n);
    let in_window = |x: usize| x >= at && x < at + n;
    let mut out = vec![u8::MAX; k];
    let mut seen = vec![false; n];

    // Follows a path entering the window at state point `x`; returns the
    // endpoint in output coordinates.
    let follow_from_state = |mut x: usize, seen: &mut Vec<bool>| -> usize {
        loop {
            let m = x - at;
            seen[m] = true;
            let q = d[m] as usize;
            if q >= n {
                return at + (q - n);
            }
            seen[q] = true;
            let s = state[at + q] as usize;
            if !in_window(s) {
                return s;
            }
            x = s;
        }
    };

    for x in 0..k {
        if in_window(x) || out[x] != u8::MAX {
            continue;
        }
        let p = state[x] as usize;
        let end = if in_window(p) {
            follow_from_state(p, &mut seen)
        } else {
            p
        };
        out[x] = end as u8;
        out[end] = x as u8;
    }
    for t in 0..n {
        let x = at + t;
        if out[x] != u8::MAX {
            continue;
        }
        let q = d[n + t] as usize;
        let end = if q >= n {
            at + (q - n)
        } else {
            seen[q] = true;
            let s = state[at + q] as usize;
            if in_window(s) {
                follow_from_state(s, &mut seen)
            } else {
                s
            }
        };
        out[x] = end as u8;
        out[end] = x as u8;
    }

    let mut loops = 0;
    for m0 in 0..n {
        if seen[m0] {
            continue;
        }
        loops += 1;
        let mut m = m0;
        loop {
            seen[m] = true;
            let s = state[at + m] as usize - at;
            seen[s] = true;
            let q = d[s] as usize;
            if q == m0 {
                break;
            }
            m = q;
        }
    }
    (out, loops)
}

/// `upper · lower`: `upper` stacked on top of `lower`, both in `TL_n`.
pub fn compose(upper: &[u8], lower: &[u8], n: usize) -> (Matching, u32) {
    attach(lower, n, upper, n)
}

/// `d ⊗ 1`: adds a through-strand on the right.
pub fn extend_right(d: &[u8], n: usize) -> Matching {
    let remap = |x: usize| if x < n { x } else { x + 1 };
    let mut m = vec![0u8; 2 * n + 2];
    for i in 0..2 * n {
        m[remap(i)] = remap(d[i] as usize) as u8;
    }
    m[n] = (2 * n + 1) as u8;
    m[2 * n + 1] = n as u8;
    m
}

/// Closes a diagram in `TL_n` by joining top `i` to bottom `i`; returns the
/// number of loops.
pub fn trace_loops(d: &[u8], n: usize) -> u32 {
    let mut seen = vec![false; 2 * n];
    let mut loops = 0;
    for s in 0..2 * n {
        if seen[s] {
            continue;
        }
        loops += 1;
        let mut x = s;
        loop {
            seen[x] = true;
            let p = d[x] as usize;
            seen[p] = true;
            x = if p < n { p + n } else { p - n };
            if x == s {
                break;
            }
        }
    }
    loops
}

/// Adds `c` to the coefficient of `m`.
pub fn accumulate(acc: &mut TlElement, m: Matching, c: Scalar) {
    match acc.get_mut(&m) {
        Some(v) => *v += &c,
        None => {
            acc.insert(m, c);
        }
    }
}

/// Powers `δ^0, ..., δ^max` of the loop value.
#[derive(Clone, Debug)]
pub struct LoopPowers {
    pows: Vec<Scalar>,
}

impl LoopPowers {
    pub fn new(params: &TheoryParams, max: usize) -> Self {
        let d = params.loop_value();
        let mut pows = vec![params.one()];
        for k in 1..=max {
            pows.push(&pows[k - 1] * &d);
        }
        Self { pows }
    }

    pub fn get(&self, k: u32) -> &Scalar {
        &self.pows[k as usize]
    }

    pub fn len(&self) -> usize {
        self.pows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pows.is_empty()
    }
}

/// Product of two elements of `TL_n`.
pub fn multiply(
    upper: &TlElement,
    lower: &TlElement,
    n: usize,
    loops: &LoopPowers,
) -> TlElement {
    let mut out = TlElement::new();
    for (u, cu) in upper {
        for (l, cl) in lower {
            let (m, k) = compose(u, l, n);
            let c = &(cu * cl) * loops.get(k);
            accumulate(&mut out, m, c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Lazily computed Jones–Wenzl expansions `f_0, ..., f_{r-2}`.
///
/// Recursion: `f_{n+1} = f_n ⊗ 1 + ([n]/[n+1]) (f_n ⊗ 1) e_n (f_n ⊗ 1)`.
#[derive(Debug)]
pub struct JonesWenzl {
    params: TheoryParams,
    loops: LoopPowers,
    cache: Vec<OnceLock<Arc<Vec<(Matching, Scalar)>>>>,
}

impl JonesWenzl {
    pub fn new(params: &TheoryParams) -> Self {
        let max = params.r();
        Self {
            params: params.clone(),
            loops: LoopPowers::new(params, 255),
            cache: (0..max).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn params(&self) -> &TheoryParams {
        &self.params
    }

    pub fn loops(&self) -> &LoopPowers {
        &self.loops
    }

    /// Expansion of `f_n` over the planar matchings of `TL_n`.
    pub fn expansion(&self, n: usize) -> Result<Arc<Vec<(Matching, Scalar)>>> {
        if n >= self.params.r() {
            return Err(Error::DegenerateColor(n));
        }
        if let Some(v) = self.cache[n].get() {
            return Ok(v.clone());
        }
        let value = if n <= 1 {
            Arc::new(vec![(identity(n), self.params.one())])
        } else {
            let prev = self.expansion(n - 1)?;
            Arc::new(self.next(&prev, n - 1)?)
        };
        Ok(self.cache[n].get_or_init(|| value).clone())
    }

    fn next(&self, prev: &[(Matching, Scalar)], n: usize) -> Result<Vec<(Matching, Scalar)>> {
        let qn1 = self.params.quantum_int(n as i64 + 1);
        if qn1.approx_zero(1e-30) {
            return Err(Error::DegenerateColor(n + 1));
        }
        let c = &self.params.quantum_int(n as i64) / &qn1;
        let big: TlElement = prev
            .iter()
            .map(|(m, v)| (extend_right(m, n), v.clone()))
            .collect();
        let e = generator(n + 1, n - 1);
        let mut e_big = TlElement::new();
        for (m, v) in &big {
            let (p, k) = compose(&e, m, n + 1);
            accumulate(&mut e_big, p, v * self.loops.get(k));
        }
        let mut out = multiply(&big, &e_big, n + 1, &self.loops);
        for v in out.values_mut() {
            *v = &*v * &c;
        }
        for (m, v) in big {
            accumulate(&mut out, m, v);
        }
        out.retain(|_, v| !v.is_zero());
        let mut terms: Vec<(Matching, Scalar)> = out.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(terms)
    }
}

/// Every planar matching of `TL_n`, in a fixed order.
pub fn all_matchings(n: usize) -> Vec<Matching> {
    // planar perfect matchings of 2n points on the boundary circle
    fn rec(points: &[usize], out: &mut Vec<Vec<(usize, usize)>>) {
        if points.is_empty() {
            out.push(Vec::new());
            return;
        }
        let first = points[0];
        for j in (1..points.len()).step_by(2) {
            let inner = &points[1..j];
            let outer = &points[j + 1..];
            let mut a = Vec::new();
            rec(inner, &mut a);
            let mut b = Vec::new();
            rec(outer, &mut b);
            for x in &a {
                for y in &b {
                    let mut v = vec![(first, points[j])];
                    v.extend_from_slice(x);
                    v.extend_from_slice(y);
                    out.push(v);
                }
            }
        }
    }
    let circle: Vec<usize> = (0..n).chain((n..2 * n).rev()).collect();
    let mut pairings = Vec::new();
    rec(&circle, &mut pairings);
    let mut res: Vec<Matching> = pairings
        .into_iter()
        .map(|pairs| {
            let mut m = vec![0u8; 2 * n];
            for (a, b) in pairs {
                m[a] = b as u8;
                m[b] = a as u8;
            }
            m
        })
        .collect();
    res.sort();
    res
}
