//! Framed colored surgery links.
//!
//! A link is either the closure of a braid or one of a few symbolic families
//! whose invariants have closed forms. Framings are integers per component;
//! braid diagrams are evaluated at their blackboard framing (the self-writhe
//! of each component) and corrected by `q_c^{-2(f_c - w_c)}`.
//!
//! JSON format (components are 1-based in files):
//!
//! ```json
//! { "braid": { "strands": 2, "word": [1, 1], "components": [1, 2] },
//!   "framings": [0, 0] }
//! { "family": { "kind": "hopf_chain", "params": { "length": 3, "clasps": [1, -1] } },
//!   "framings": [2, 0, -1] }
//! ```
//!
//! Family kinds: `unknot_chain` (`count` split unknots), `hopf_chain`
//! (`length` unknots, each clasped with the next; `clasps` gives the linking
//! numbers, default all `+1`) and `connected_sum` (`parts`, a list of family
//! descriptors placed far apart).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{ColorIndex, Scalar};
use crate::error::{Error, Result};
use crate::recoupling::{braid_closure_bracket, RecouplingTable};

/// Points-per-level bound used for braid closures.
pub const BRAID_WIDTH_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    UnknotChain { count: usize },
    HopfChain { clasps: Vec<i8> },
    ConnectedSum { parts: Vec<Family> },
}

impl Family {
    pub fn components(&self) -> usize {
        match self {
            Family::UnknotChain { count } => *count,
            Family::HopfChain { clasps } => clasps.len() + 1,
            Family::ConnectedSum { parts } => parts.iter().map(Family::components).sum(),
        }
    }

    fn write_linking(&self, offset: usize, b: &mut [Vec<i64>]) {
        match self {
            Family::UnknotChain { .. } => {}
            Family::HopfChain { clasps } => {
                for (k, &s) in clasps.iter().enumerate() {
                    b[offset + k][offset + k + 1] = s as i64;
                    b[offset + k + 1][offset + k] = s as i64;
                }
            }
            Family::ConnectedSum { parts } => {
                let mut off = offset;
                for p in parts {
                    p.write_linking(off, b);
                    off += p.components();
                }
            }
        }
    }

    /// Bracket of the 0-framed colored family.
    fn evaluate(&self, colors: &[ColorIndex], t: &RecouplingTable) -> Scalar {
        let p = t.params();
        match self {
            Family::UnknotChain { .. } => colors
                .iter()
                .fold(p.one(), |acc, &c| &acc * p.omega_sq(c)),
            Family::HopfChain { .. } => {
                let mut v = p.omega_sq(colors[0]).clone();
                for w in colors.windows(2) {
                    v = &v * t.hopf(w[0], w[1]);
                    v = &v / p.omega_sq(w[0]);
                }
                v
            }
            Family::ConnectedSum { parts } => {
                let mut off = 0;
                let mut v = p.one();
                for part in parts {
                    let m = part.components();
                    v = &v * &part.evaluate(&colors[off..off + m], t);
                    off += m;
                }
                v
            }
        }
    }

    fn mirror(&self) -> Family {
        match self {
            Family::UnknotChain { count } => Family::UnknotChain { count: *count },
            Family::HopfChain { clasps } => Family::HopfChain {
                clasps: clasps.iter().map(|s| -s).collect(),
            },
            Family::ConnectedSum { parts } => Family::ConnectedSum {
                parts: parts.iter().map(Family::mirror).collect(),
            },
        }
    }

    /// Braid word on `components()` strands, strand `k` belonging to
    /// component `k`, every component with self-writhe 0.
    fn braid_word(&self, offset: usize, word: &mut Vec<i32>) {
        match self {
            Family::UnknotChain { .. } => {}
            Family::HopfChain { clasps } => {
                for (k, &s) in clasps.iter().enumerate() {
                    let g = (offset + k + 1) as i32 * s as i32;
                    word.push(g);
                    word.push(g);
                }
            }
            Family::ConnectedSum { parts } => {
                let mut off = offset;
                for p in parts {
                    p.braid_word(off, word);
                    off += p.components();
                }
            }
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Family::UnknotChain { count } => {
                serde_json::json!({ "kind": "unknot_chain", "params": { "count": count } })
            }
            Family::HopfChain { clasps } => serde_json::json!({
                "kind": "hopf_chain",
                "params": { "length": clasps.len() + 1, "clasps": clasps }
            }),
            Family::ConnectedSum { parts } => serde_json::json!({
                "kind": "connected_sum",
                "params": { "parts": parts.iter().map(Family::to_json).collect::<Vec<_>>() }
            }),
        }
    }

    fn from_json(v: &FamilyJson) -> Result<Family> {
        let bad = |m: String| Error::InvalidLink(m);
        let get_usize = |key: &str| -> Result<usize> {
            v.params
                .get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| bad(format!("{}: missing integer params.{key}", v.kind)))
        };
        match v.kind.as_str() {
            "unknot_chain" => Ok(Family::UnknotChain {
                count: get_usize("count")?,
            }),
            "hopf_chain" => {
                let length = get_usize("length")?;
                if length < 2 {
                    return Err(bad("hopf_chain: length must be at least 2".into()));
                }
                let clasps = match v.params.get("clasps") {
                    None => vec![1; length - 1],
                    Some(c) => {
                        let c: Vec<i8> = serde_json::from_value(c.clone())
                            .map_err(|e| bad(format!("hopf_chain.clasps: {e}")))?;
                        if c.len() != length - 1 || c.iter().any(|&s| s != 1 && s != -1) {
                            return Err(bad(format!(
                                "hopf_chain.clasps: need {} entries of ±1",
                                length - 1
                            )));
                        }
                        c
                    }
                };
                Ok(Family::HopfChain { clasps })
            }
            "connected_sum" => {
                let parts: Vec<FamilyJson> = v
                    .params
                    .get("parts")
                    .cloned()
                    .map(serde_json::from_value)
                    .transpose()
                    .map_err(|e| bad(format!("connected_sum.parts: {e}")))?
                    .ok_or_else(|| bad("connected_sum: missing params.parts".into()))?;
                Ok(Family::ConnectedSum {
                    parts: parts.iter().map(Family::from_json).collect::<Result<_>>()?,
                })
            }
            other => Err(bad(format!("unknown family kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `components[k]` is the 0-based component of the strand starting at
    /// position `k`.
    Braid {
        strands: usize,
        word: Vec<i32>,
        components: Vec<usize>,
    },
    Family(Family),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredFramedLink {
    presentation: Presentation,
    framings: Vec<i64>,
    colors: Option<Vec<ColorIndex>>,
}

impl ColoredFramedLink {
    pub fn braid(
        strands: usize,
        word: Vec<i32>,
        components: Vec<usize>,
        framings: Vec<i64>,
    ) -> Result<Self> {
        let link = Self {
            presentation: Presentation::Braid {
                strands,
                word,
                components,
            },
            framings,
            colors: None,
        };
        link.validate()?;
        Ok(link)
    }

    pub fn family(family: Family, framings: Vec<i64>) -> Result<Self> {
        let link = Self {
            presentation: Presentation::Family(family),
            framings,
            colors: None,
        };
        link.validate()?;
        Ok(link)
    }

    /// Empty link.
    pub fn empty() -> Self {
        Self {
            presentation: Presentation::Family(Family::UnknotChain { count: 0 }),
            framings: Vec::new(),
            colors: None,
        }
    }

    /// `p`-framed unknot.
    pub fn unknot(p: i64) -> Self {
        Self::family(Family::UnknotChain { count: 1 }, vec![p]).unwrap()
    }

    pub fn with_colors(mut self, colors: Vec<ColorIndex>) -> Result<Self> {
        if colors.len() != self.components() {
            return Err(Error::InvalidLink(format!(
                "{} colors for {} components",
                colors.len(),
                self.components()
            )));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn colors(&self) -> Option<&[ColorIndex]> {
        self.colors.as_deref()
    }

    pub fn components(&self) -> usize {
        match &self.presentation {
            Presentation::Braid { components, .. } => {
                components.iter().max().map_or(0, |&c| c + 1)
            }
            Presentation::Family(f) => f.components(),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidLink(m));
        if let Presentation::Braid {
            strands,
            word,
            components,
        } = &self.presentation
        {
            if components.len() != *strands {
                return bad(format!(
                    "{} component labels for {} strands",
                    components.len(),
                    strands
                ));
            }
            for &g in word {
                if g == 0 || g.unsigned_abs() as usize >= *strands {
                    return bad(format!("generator {g} invalid on {strands} strands"));
                }
            }
            let m = self.components();
            let mut seen = vec![false; m];
            for &c in components {
                seen[c] = true;
            }
            if let Some(c) = seen.iter().position(|&s| !s) {
                return bad(format!("component {} has no strand", c + 1));
            }
            // each closure cycle must be exactly one component
            let perm = closure_permutation(*strands, word);
            let mut owner = vec![None; m];
            let mut visited = vec![false; *strands];
            for s in 0..*strands {
                if visited[s] {
                    continue;
                }
                let c = components[s];
                if owner[c].is_some() {
                    return bad(format!("component {} is not connected", c + 1));
                }
                owner[c] = Some(s);
                let mut x = s;
                while !visited[x] {
                    visited[x] = true;
                    if components[x] != c {
                        return bad(format!(
                            "strands {} and {} lie on one closed curve but have different components",
                            s + 1,
                            x + 1
                        ));
                    }
                    x = perm[x];
                }
            }
        }
        if self.framings.len() != self.components() {
            return bad(format!(
                "{} framings for {} components",
                self.framings.len(),
                self.components()
            ));
        }
        Ok(())
    }

    /// Self-writhe of each component in the braid diagram (zero for families).
    pub fn self_writhes(&self) -> Vec<i64> {
        let m = self.components();
        let mut w = vec![0i64; m];
        if let Presentation::Braid {
            strands,
            word,
            components,
        } = &self.presentation
        {
            for (a, b, s) in crossing_components(*strands, word, components) {
                if a == b {
                    w[a] += s;
                }
            }
        }
        w
    }

    /// Same link with every crossing and framing reversed.
    pub fn mirror(&self) -> Self {
        let presentation = match &self.presentation {
            Presentation::Braid {
                strands,
                word,
                components,
            } => Presentation::Braid {
                strands: *strands,
                word: word.iter().map(|g| -g).collect(),
                components: components.clone(),
            },
            Presentation::Family(f) => Presentation::Family(f.mirror()),
        };
        Self {
            presentation,
            framings: self.framings.iter().map(|f| -f).collect(),
            colors: self.colors.clone(),
        }
    }

    /// Braid presentation of the same framed link.
    pub fn to_braid(&self) -> Self {
        match &self.presentation {
            Presentation::Braid { .. } => self.clone(),
            Presentation::Family(f) => {
                let m = f.components();
                let mut word = Vec::new();
                f.braid_word(0, &mut word);
                Self {
                    presentation: Presentation::Braid {
                        strands: m,
                        word,
                        components: (0..m).collect(),
                    },
                    framings: self.framings.clone(),
                    colors: self.colors.clone(),
                }
            }
        }
    }

    /// Split union; components of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        match (&self.presentation, &other.presentation) {
            (Presentation::Family(a), Presentation::Family(b)) => {
                let mut parts = Vec::new();
                for f in [a, b] {
                    match f {
                        Family::ConnectedSum { parts: ps } => parts.extend(ps.iter().cloned()),
                        Family::UnknotChain { count: 0 } => {}
                        g => parts.push(g.clone()),
                    }
                }
                let mut framings = self.framings.clone();
                framings.extend_from_slice(&other.framings);
                Self {
                    presentation: Presentation::Family(Family::ConnectedSum { parts }),
                    framings,
                    colors: None,
                }
            }
            _ => {
                let a = self.to_braid();
                let b = other.to_braid();
                let (Presentation::Braid { strands: sa, word: wa, components: ca },
                     Presentation::Braid { strands: sb, word: wb, components: cb }) =
                    (&a.presentation, &b.presentation)
                else {
                    unreachable!()
                };
                let m = a.components();
                let mut word = wa.clone();
                word.extend(wb.iter().map(|g| g.signum() * (g.abs() + *sa as i32)));
                let mut components = ca.clone();
                components.extend(cb.iter().map(|c| c + m));
                let mut framings = a.framings.clone();
                framings.extend_from_slice(&b.framings);
                Self {
                    presentation: Presentation::Braid {
                        strands: sa + sb,
                        word,
                        components,
                    },
                    framings,
                    colors: None,
                }
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: LinkJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidLink(format!("JSON: {e}")))?;
        Self::from_json(raw)
    }

    fn from_json(raw: LinkJson) -> Result<Self> {
        let presentation = match (raw.braid, raw.family) {
            (Some(b), None) => {
                if b.components.iter().any(|&c| c == 0) {
                    return Err(Error::InvalidLink("braid.components are 1-based".into()));
                }
                Presentation::Braid {
                    strands: b.strands,
                    word: b.word,
                    components: b.components.iter().map(|c| c - 1).collect(),
                }
            }
            (None, Some(f)) => Presentation::Family(Family::from_json(&f)?),
            _ => {
                return Err(Error::InvalidLink(
                    "exactly one of \"braid\" or \"family\" is required".into(),
                ))
            }
        };
        let link = Self {
            presentation,
            framings: raw.framings,
            colors: None,
        };
        link.validate()?;
        match raw.colors {
            Some(c) => link.with_colors(c),
            None => Ok(link),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        match &self.presentation {
            Presentation::Braid {
                strands,
                word,
                components,
            } => {
                obj.insert(
                    "braid".into(),
                    serde_json::json!({
                        "strands": strands,
                        "word": word,
                        "components": components.iter().map(|c| c + 1).collect::<Vec<_>>(),
                    }),
                );
            }
            Presentation::Family(f) => {
                obj.insert("family".into(), f.to_json());
            }
        }
        obj.insert("framings".into(), serde_json::json!(self.framings));
        if let Some(c) = &self.colors {
            obj.insert("colors".into(), serde_json::json!(c));
        }
        Value::Object(obj)
    }
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct BraidJson {
    strands: usize,
    word: Vec<i32>,
    components: Vec<usize>,
}

#[derive(Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    kind: String,
    #[serde(default)]
    params: serde_json::Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkJson {
    #[serde(default)]
    braid: Option<BraidJson>,
    #[serde(default)]
    family: Option<FamilyJson>,
    framings: Vec<i64>,
    #[serde(default)]
    colors: Option<Vec<ColorIndex>>,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
}

/// Position `k` at the bottom ends at position `perm[k]` at the top.
fn closure_permutation(strands: usize, word: &[i32]) -> Vec<usize> {
    // at[p] = strand currently at position p
    let mut at: Vec<usize> = (0..strands).collect();
    for &g in word {
        let k = g.unsigned_abs() as usize;
        at.swap(k - 1, k);
    }
    let mut perm = vec![0; strands];
    for (p, &s) in at.iter().enumerate() {
        perm[s] = p;
    }
    perm
}

/// For each crossing: components of the two strands and the sign.
fn crossing_components(strands: usize, word: &[i32], components: &[usize]) -> Vec<(usize, usize, i64)> {
    let mut at: Vec<usize> = (0..strands).collect();
    let mut out = Vec::with_capacity(word.len());
    for &g in word {
        let k = g.unsigned_abs() as usize;
        let (a, b) = (components[at[k - 1]], components[at[k]]);
        out.push((a, b, g.signum() as i64));
        at.swap(k - 1, k);
    }
    out
}

/// Symmetric integer matrix with the framings on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingMatrix(pub Vec<Vec<i64>>);

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn diag(&self) -> Vec<i64> {
        (0..self.size()).map(|i| self.0[i][i]).collect()
    }

    pub fn negate(&self) -> Self {
        LinkingMatrix(
            self.0
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        self.0.iter().all(|r| r.len() == n)
            && (0..n).all(|i| (0..n).all(|j| self.0[i][j] == self.0[j][i]))
    }
}

pub fn linking_matrix(link: &ColoredFramedLink) -> LinkingMatrix {
    let m = link.components();
    let mut b = vec![vec![0i64; m]; m];
    match &link.presentation {
        Presentation::Braid {
            strands,
            word,
            components,
        } => {
            let mut twice = vec![vec![0i64; m]; m];
            for (x, y, s) in crossing_components(*strands, word, components) {
                if x != y {
                    twice[x][y] += s;
                    twice[y][x] += s;
                }
            }
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        debug_assert!(twice[i][j] % 2 == 0);
                        b[i][j] = twice[i][j] / 2;
                    }
                }
            }
        }
        Presentation::Family(f) => f.write_linking(0, &mut b),
    }
    for (i, &f) in link.framings.iter().enumerate() {
        b[i][i] = f;
    }
    LinkingMatrix(b)
}

/// Signature by exact rational congruence diagonalization.
pub fn signature(b: &LinkingMatrix) -> i64 {
    let n = b.size();
    let mut m: Vec<Vec<BigRational>> = b
        .0
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut sig = 0i64;
    for i in 0..n {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(i, j);
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                // row/column j added to row/column i: new (i,i) entry is 2 m[i][j]
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[i][k] += v;
                }
                for k in 0..n {
                    let v = m[k][j].clone();
                    m[k][i] += v;
                }
            } else {
                continue;
            }
        }
        let piv = m[i][i].clone();
        for k in i + 1..n {
            if m[k][i].is_zero() {
                continue;
            }
            let f = &m[k][i] / &piv;
            for l in 0..n {
                let v = &f * &m[i][l];
                m[k][l] -= v;
            }
            for l in 0..n {
                let v = &f * &m[l][i];
                m[l][k] -= v;
            }
        }
        sig += if m[i][i].is_positive() { 1 } else { -1 };
    }
    sig
}

/// `Z(L_c)`: the invariant of the framed link colored by `coloring`.
pub fn colored_invariant(
    link: &ColoredFramedLink,
    coloring: &[ColorIndex],
    table: &RecouplingTable,
) -> Result<Scalar> {
    let p = table.params();
    let m = link.components();
    if coloring.len() != m {
        return Err(Error::InvalidLink(format!(
            "{} colors for {m} components",
            coloring.len()
        )));
    }
    for &c in coloring {
        p.check_color(c)?;
    }
    let writhes = link.self_writhes();
    let body = match &link.presentation {
        Presentation::Family(f) => f.evaluate(coloring, table),
        Presentation::Braid {
            word, components, ..
        } => {
            let colors: Vec<ColorIndex> = components.iter().map(|&c| coloring[c]).collect();
            braid_closure_bracket(&colors, word, table.jones_wenzl(), BRAID_WIDTH_BOUND)?
        }
    };
    let mut v = body;
    for i in 0..m {
        let k = link.framings[i] - writhes[i];
        if k != 0 {
            v = &v * &p.q_sq_pow(coloring[i], -k);
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::TheoryParams;
    use crate::recoupling::{bracket_eval, hopf, sliced::kinked_unknot_diagram};

    fn table() -> RecouplingTable {
        RecouplingTable::new(&TheoryParams::new(8, 128, 1e-20).unwrap())
    }

    fn hopf_link() -> ColoredFramedLink {
        ColoredFramedLink::family(Family::HopfChain { clasps: vec![1] }, vec![0, 0]).unwrap()
    }

    #[test]
    fn linking_matrix_examples() {
        assert_eq!(linking_matrix(&ColoredFramedLink::unknot(0)).0, vec![vec![0]]);
        assert_eq!(linking_matrix(&hopf_link()).0, vec![vec![0, 1], vec![1, 0]]);
        let b = ColoredFramedLink::braid(2, vec![1, 1], vec![0, 1], vec![0, 0]).unwrap();
        assert_eq!(linking_matrix(&b).0, vec![vec![0, 1], vec![1, 0]]);
        let b = ColoredFramedLink::braid(2, vec![-1, -1, -1, -1], vec![0, 1], vec![3, 0]).unwrap();
        assert_eq!(linking_matrix(&b).0, vec![vec![3, -2], vec![-2, 0]]);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&LinkingMatrix(vec![vec![1]])), 1);
        assert_eq!(signature(&LinkingMatrix(vec![vec![0]])), 0);
        assert_eq!(signature(&LinkingMatrix(vec![vec![2, 1], vec![1, 2]])), 2);
        assert_eq!(signature(&LinkingMatrix(vec![vec![0, 1], vec![1, 0]])), 0);
        assert_eq!(signature(&LinkingMatrix(vec![])), 0);
        let b = LinkingMatrix(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, -3]]);
        assert_eq!(signature(&b), -1);
    }

    #[test]
    fn braid_validation() {
        assert!(ColoredFramedLink::braid(2, vec![1], vec![0, 1], vec![0, 0]).is_err());
        assert!(ColoredFramedLink::braid(2, vec![1], vec![0, 0], vec![0]).is_ok());
        assert!(ColoredFramedLink::braid(2, vec![2], vec![0, 0], vec![0]).is_err());
        assert!(ColoredFramedLink::braid(2, vec![], vec![0, 0], vec![0]).is_err());
        assert!(ColoredFramedLink::braid(2, vec![1, 1], vec![0, 2], vec![0, 0, 0]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let s = r#"{"braid":{"strands":2,"word":[1,1],"components":[1,2]},"framings":[0,1]}"#;
        let l = ColoredFramedLink::from_json_str(s).unwrap();
        assert_eq!(l.components(), 2);
        let back = ColoredFramedLink::from_json_str(&l.to_json().to_string()).unwrap();
        assert_eq!(back, l);
        let f = r#"{"family":{"kind":"connected_sum","params":{"parts":[
            {"kind":"hopf_chain","params":{"length":2,"clasps":[-1]}},
            {"kind":"unknot_chain","params":{"count":1}}]}},"framings":[1,2,3]}"#;
        let l = ColoredFramedLink::from_json_str(f).unwrap();
        assert_eq!(linking_matrix(&l).0, vec![vec![1, -1, 0], vec![-1, 2, 0], vec![0, 0, 3]]);
        let back = ColoredFramedLink::from_json_str(&l.to_json().to_string()).unwrap();
        assert_eq!(back, l);
        assert!(ColoredFramedLink::from_json_str(r#"{"framings":[]}"#).is_err());
        assert!(ColoredFramedLink::from_json_str(
            r#"{"family":{"kind":"trefoil","params":{}},"framings":[0]}"#
        )
        .is_err());
    }

    #[test]
    fn framed_unknot_values() {
        let t = table();
        let p = t.params();
        for fr in -2..=2i64 {
            for c in p.colors() {
                let v = colored_invariant(&ColoredFramedLink::unknot(fr), &[c], &t).unwrap();
                let expect = &p.q_sq_pow(c, -fr) * p.omega_sq(c);
                assert!(v.approx_eq(&expect, 1e-25));
            }
        }
        for c in 0..=3 {
            let kink = bracket_eval(&kinked_unknot_diagram(c, 1), t.jones_wenzl(), 24).unwrap();
            let v = colored_invariant(&ColoredFramedLink::unknot(1), &[c], &t).unwrap();
            assert!(v.approx_eq(&kink, 1e-22));
        }
    }

    #[test]
    fn unlink_and_hopf_values() {
        let t = table();
        let p = t.params();
        let unlink = ColoredFramedLink::family(Family::UnknotChain { count: 2 }, vec![0, 0]).unwrap();
        for i in 0..=3 {
            for j in 0..=3 {
                let v = colored_invariant(&unlink, &[i, j], &t).unwrap();
                assert!(v.approx_eq(&(p.omega_sq(i) * p.omega_sq(j)), 1e-25));
                let h = colored_invariant(&hopf_link(), &[i, j], &t).unwrap();
                assert!(h.approx_eq(&hopf(p, i, j), 1e-25));
                let hb = colored_invariant(&hopf_link().to_braid(), &[i, j], &t).unwrap();
                assert!(hb.approx_eq(&h, 1e-22));
                let hm = colored_invariant(&hopf_link().mirror(), &[i, j], &t).unwrap();
                assert!(hm.approx_eq(&h.conj(), 1e-25));
            }
        }
    }

    #[test]
    fn mirror_negates_signature() {
        let l = ColoredFramedLink::braid(3, vec![1, 1, 2, -2, -2, -2], vec![0, 1, 2], vec![2, -1, 3]).unwrap();
        let b = linking_matrix(&l);
        assert_eq!(linking_matrix(&l.mirror()), b.negate());
        assert_eq!(signature(&linking_matrix(&l.mirror())), -signature(&b));
        assert_eq!(ColoredFramedLink::unknot(3).mirror(), ColoredFramedLink::unknot(-3));
    }

    #[test]
    fn self_writhe_correction() {
        // closure of σ1 on two strands of one component is an unknot with writhe 1
        let t = table();
        let p = t.params();
        let l = ColoredFramedLink::braid(2, vec![1], vec![0, 0], vec![0]).unwrap();
        assert_eq!(l.self_writhes(), vec![1]);
        for c in 0..=3 {
            let v = colored_invariant(&l, &[c], &t).unwrap();
            assert!(v.approx_eq(p.omega_sq(c), 1e-22), "c={c}");
        }
    }
}
