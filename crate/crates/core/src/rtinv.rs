//! Closed 3-manifold invariants from surgery presentations.
//!
//! `τ(M) = (Δω⁻¹)^{σ(L)} ω^{-m-1} Σ_{c ∈ I^m} ω_c² Z(L_c)`, and the spin
//! refinement restricts the sum to colorings that are odd on the
//! characteristic sublink and even elsewhere.

use rayon::prelude::*;

use crate::arith::{tree_sum, ColorIndex, Scalar};
use crate::error::{Error, Result};
use crate::linkdata::{
    colored_invariant, linking_matrix, signature, ColoredFramedLink, Family, LinkingMatrix,
    Presentation,
};
use crate::recoupling::RecouplingTable;
use crate::spinalg::{characteristic_sublinks, CharacteristicSublink};

#[derive(Clone, Debug, PartialEq)]
pub struct SurgeryPresentation {
    link: ColoredFramedLink,
    b: LinkingMatrix,
}

impl SurgeryPresentation {
    pub fn new(link: ColoredFramedLink) -> Self {
        let b = linking_matrix(&link);
        Self { link, b }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(Self::new(ColoredFramedLink::from_json_str(s)?))
    }

    /// `S³` as surgery on the empty link.
    pub fn sphere() -> Self {
        Self::new(ColoredFramedLink::empty())
    }

    /// `L(p, 1)`: surgery on the `p`-framed unknot.
    pub fn lens(p: i64) -> Self {
        Self::new(ColoredFramedLink::unknot(p))
    }

    pub fn link(&self) -> &ColoredFramedLink {
        &self.link
    }

    pub fn linking_matrix(&self) -> &LinkingMatrix {
        &self.b
    }

    pub fn components(&self) -> usize {
        self.b.size()
    }

    pub fn signature(&self) -> i64 {
        signature(&self.b)
    }

    /// Presentation of `-M`.
    pub fn mirror(&self) -> Self {
        Self::new(self.link.mirror())
    }

    pub fn spin_structures(&self) -> Vec<CharacteristicSublink> {
        characteristic_sublinks(&self.b)
    }

    pub fn to_braid(&self) -> Self {
        Self::new(self.link.to_braid())
    }
}

/// `(Δω⁻¹)^σ ω^{-m-1}`.
fn prefactor(m: &SurgeryPresentation, table: &RecouplingTable) -> Scalar {
    let p = table.params();
    let dw = p.delta() / p.omega();
    let sig = m.signature();
    let base = dw.powi(sig);
    &base * &p.omega().powi(-(m.components() as i64) - 1)
}

/// Allowed colors per component: all of `I`, or one parity class.
fn color_lists(
    m: &SurgeryPresentation,
    table: &RecouplingTable,
    spin: Option<&CharacteristicSublink>,
) -> Vec<Vec<ColorIndex>> {
    let colors: Vec<ColorIndex> = table.params().colors().collect();
    (0..m.components())
        .map(|i| match spin {
            None => colors.clone(),
            Some(k) => {
                let odd = k.contains(i);
                colors.iter().copied().filter(|c| (c % 2 == 1) == odd).collect()
            }
        })
        .collect()
}

/// `Σ_c ω_c² Z(L_c)` over the product of the given color lists.
fn coloring_sum(
    link: &ColoredFramedLink,
    lists: &[Vec<ColorIndex>],
    table: &RecouplingTable,
) -> Result<Scalar> {
    let p = table.params();
    // split unions factor into independent sums
    if let Presentation::Family(Family::ConnectedSum { parts }) = link.presentation() {
        let mut off = 0;
        let mut acc = p.one();
        for part in parts {
            let k = part.components();
            let sub = ColoredFramedLink::family(part.clone(), link.framings()[off..off + k].to_vec())?;
            acc = &acc * &coloring_sum(&sub, &lists[off..off + k], table)?;
            off += k;
        }
        return Ok(acc);
    }
    let sizes: Vec<usize> = lists.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().product();
    let terms: Vec<Scalar> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut c = vec![0; lists.len()];
            for k in (0..lists.len()).rev() {
                c[k] = lists[k][idx % sizes[k]];
                idx /= sizes[k];
            }
            let w = c.iter().fold(p.one(), |acc, &ci| &acc * p.omega_sq(ci));
            Ok(&w * &colored_invariant(link, &c, table)?)
        })
        .collect::<Result<_>>()?;
    Ok(tree_sum(terms, p.precision()))
}

pub fn tau(m: &SurgeryPresentation, table: &RecouplingTable) -> Result<Scalar> {
    let lists = color_lists(m, table, None);
    let s = coloring_sum(&m.link, &lists, table)?;
    Ok(&prefactor(m, table) * &s)
}

pub fn tau_spin(
    m: &SurgeryPresentation,
    k: &CharacteristicSublink,
    table: &RecouplingTable,
) -> Result<Scalar> {
    if k.len() != m.components() || !crate::spinalg::is_characteristic(&m.b, &k.x) {
        return Err(Error::NotCharacteristic(k.bits()));
    }
    let lists = color_lists(m, table, Some(k));
    let s = coloring_sum(&m.link, &lists, table)?;
    Ok(&prefactor(m, table) * &s)
}

/// `τ(-M)`, evaluated as the complex conjugate of `τ(M)`.
pub fn tau_reversed(m: &SurgeryPresentation, table: &RecouplingTable) -> Result<Scalar> {
    Ok(tau(m, table)?.conj())
}

/// `τ(-M, s)` as the conjugate of `τ(M, s)`.
pub fn tau_spin_reversed(
    m: &SurgeryPresentation,
    k: &CharacteristicSublink,
    table: &RecouplingTable,
) -> Result<Scalar> {
    Ok(tau_spin(m, k, table)?.conj())
}

pub fn tau_all_spin(
    m: &SurgeryPresentation,
    table: &RecouplingTable,
) -> Result<Vec<(CharacteristicSublink, Scalar)>> {
    m.spin_structures()
        .into_iter()
        .map(|k| {
            let v = tau_spin(m, &k, table)?;
            Ok((k, v))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SplittingReport {
    pub tau: Scalar,
    pub summands: Vec<(CharacteristicSublink, Scalar)>,
    pub residual: f64,
    pub holds: bool,
}

/// Compares `τ(M)` with `Σ_s τ(M, s)`.
pub fn check_splitting(
    m: &SurgeryPresentation,
    table: &RecouplingTable,
    tolerance: f64,
) -> Result<SplittingReport> {
    let t = tau(m, table)?;
    let summands = tau_all_spin(m, table)?;
    let total = tree_sum(
        summands.iter().map(|(_, v)| v.clone()).collect(),
        table.params().precision(),
    );
    let residual = t.distance(&total);
    Ok(SplittingReport {
        holds: t.approx_eq(&total, tolerance),
        tau: t,
        summands,
        residual,
    })
}

/// `Σ_s τ(M, s) · conj(τ(M, s + h))`, with `h` given as a vector of the
/// mod-2 kernel of the linking matrix (the action of `H¹(M; Z/2)` on
/// characteristic sublinks).
pub fn spin_pairing(
    m: &SurgeryPresentation,
    h: &[u8],
    table: &RecouplingTable,
) -> Result<Scalar> {
    let bmod2 = crate::gf2::Gf2Matrix::from_int_rows(m.b.rows());
    if h.len() != m.components() || !crate::gf2::is_zero(&bmod2.mul_vec(h)) {
        return Err(Error::InvalidParams(format!(
            "{} is not in the mod-2 kernel of the linking matrix",
            crate::gf2::format_bits(h)
        )));
    }
    let all = tau_all_spin(m, table)?;
    let terms = all
        .iter()
        .map(|(k, v)| {
            let mut shifted = k.x.clone();
            crate::gf2::add_assign(&mut shifted, h);
            let w = &all.iter().find(|(k2, _)| k2.x == shifted).expect("shift of a spin structure").1;
            v * &w.conj()
        })
        .collect();
    Ok(tree_sum(terms, table.params().precision()))
}

/// Where the new `ε`-framed unknot goes in a refined blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowupSite {
    /// Split from the rest of the link.
    Disjoint,
    /// Encircles the braid strands at positions `start..start + len`.
    Strands { start: usize, len: usize },
}

/// Adds an `ε`-framed unknot `U` (as the last component) and returns the new
/// presentation with the induced characteristic sublink. When `U` encircles
/// strands, they also receive an `ε` full twist and each component `j`
/// passing `k_j` times through `U` has its framing shifted by `ε k_j²`. The
/// coefficient of `U` is `1 + lk(U, K)` mod 2.
pub fn refined_kirby_blowup(
    m: &SurgeryPresentation,
    k: &CharacteristicSublink,
    epsilon: i8,
    site: BlowupSite,
) -> Result<(SurgeryPresentation, CharacteristicSublink)> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::InvalidParams(format!("epsilon = {epsilon}, need ±1")));
    }
    if k.len() != m.components() || !crate::spinalg::is_characteristic(&m.b, &k.x) {
        return Err(Error::NotCharacteristic(k.bits()));
    }
    let eps = epsilon as i64;
    let new_link = match site {
        BlowupSite::Disjoint => m
            .link
            .disjoint_union(&ColoredFramedLink::unknot(eps)),
        BlowupSite::Strands { start, len } => {
            let braided = m.link.to_braid();
            let Presentation::Braid {
                strands,
                word,
                components,
            } = braided.presentation()
            else {
                unreachable!()
            };
            if len == 0 || start + len > *strands {
                return Err(Error::OutOfRange {
                    index: start + len,
                    len: *strands,
                });
            }
            let mc = m.components();
            let mut counts = vec![0i64; mc];
            for &c in &components[start..start + len] {
                counts[c] += 1;
            }
            let s = start as i32;
            let kk = len as i32;
            let mut w: Vec<i32> = Vec::new();
            // carry U over the strands left of the bundle
            w.extend(1..=s);
            // lasso around the bundle
            w.extend(s + 1..=s + kk);
            w.extend((s + 1..=s + kk).rev());
            w.extend((1..=s).rev().map(|g| -g));
            // ε full twist on the bundle, positions start+1 ..= start+len
            for _ in 0..kk {
                if epsilon > 0 {
                    w.extend(s + 2..=s + kk);
                } else {
                    w.extend((s + 2..=s + kk).rev().map(|g| -g));
                }
            }
            w.extend(word.iter().map(|g| g.signum() * (g.abs() + 1)));
            let mut comps = vec![mc];
            comps.extend_from_slice(components);
            let mut framings: Vec<i64> = braided
                .framings()
                .iter()
                .zip(&counts)
                .map(|(f, c)| f + eps * c * c)
                .collect();
            framings.push(eps);
            ColoredFramedLink::braid(strands + 1, w, comps, framings)?
        }
    };
    let lk: i64 = match site {
        BlowupSite::Disjoint => 0,
        BlowupSite::Strands { start, len } => {
            let braided = m.link.to_braid();
            let Presentation::Braid { components, .. } = braided.presentation() else {
                unreachable!()
            };
            components[start..start + len]
                .iter()
                .filter(|&&c| k.contains(c))
                .count() as i64
        }
    };
    let mut x = k.x.clone();
    x.push(((1 + lk) % 2) as u8);
    let new_m = SurgeryPresentation::new(new_link);
    let new_k = CharacteristicSublink::new(&new_m.b, x)?;
    Ok((new_m, new_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::TheoryParams;

    fn table() -> RecouplingTable {
        RecouplingTable::new(&TheoryParams::new(8, 128, 1e-20).unwrap())
    }

    #[test]
    fn sphere_values() {
        let t = table();
        let p = t.params();
        let winv = p.omega().inv();
        assert!(tau(&SurgeryPresentation::sphere(), &t).unwrap().approx_eq(&winv, 1e-22));
        for e in [1, -1] {
            let m = SurgeryPresentation::lens(e);
            assert!(tau(&m, &t).unwrap().approx_eq(&winv, 1e-22), "e={e}");
            let ks = m.spin_structures();
            assert_eq!(ks.len(), 1);
            assert!(tau_spin(&m, &ks[0], &t).unwrap().approx_eq(&winv, 1e-22));
        }
    }

    #[test]
    fn s2xs1_values() {
        let t = table();
        let p = t.params();
        let m = SurgeryPresentation::lens(0);
        assert!(tau(&m, &t).unwrap().approx_eq(&p.one(), 1e-22));
        let half = Scalar::from_ratio(128, 1, 2);
        for (k, v) in tau_all_spin(&m, &t).unwrap() {
            assert!(v.approx_eq(&half, 1e-22), "{}", k.bits());
        }
    }

    #[test]
    fn rejects_non_characteristic() {
        let t = table();
        let m = SurgeryPresentation::lens(1);
        let k = CharacteristicSublink { x: vec![0] };
        assert!(matches!(tau_spin(&m, &k, &t), Err(Error::NotCharacteristic(_))));
    }

    #[test]
    fn splitting_on_lens_spaces() {
        let t = table();
        for p in 2..=6 {
            let m = SurgeryPresentation::lens(p);
            let rep = check_splitting(&m, &t, 1e-20).unwrap();
            assert!(rep.holds, "p={p} residual {}", rep.residual);
            assert_eq!(rep.summands.len(), if p % 2 == 0 { 2 } else { 1 });
        }
    }

    #[test]
    fn mirror_conjugates() {
        let t = table();
        for p in [2, 3, 5] {
            let m = SurgeryPresentation::lens(p);
            let a = tau(&m.mirror(), &t).unwrap();
            assert!(a.approx_eq(&tau_reversed(&m, &t).unwrap(), 1e-22));
        }
    }

    #[test]
    fn blowup_coefficients() {
        let m = SurgeryPresentation::lens(3);
        let k = m.spin_structures().remove(0);
        assert_eq!(k.bits(), "1");
        let (m2, k2) = refined_kirby_blowup(&m, &k, 1, BlowupSite::Strands { start: 0, len: 1 }).unwrap();
        assert_eq!(k2.bits(), "10");
        assert_eq!(m2.linking_matrix().0, vec![vec![4, 1], vec![1, 1]]);
        let (_, k3) = refined_kirby_blowup(&m, &k, -1, BlowupSite::Disjoint).unwrap();
        assert_eq!(k3.bits(), "11");
        assert!(refined_kirby_blowup(&m, &k, 1, BlowupSite::Strands { start: 0, len: 2 }).is_err());
        assert!(refined_kirby_blowup(&m, &k, 2, BlowupSite::Disjoint).is_err());
    }

    #[test]
    fn blowup_preserves_invariants() {
        let t = table();
        let m = SurgeryPresentation::lens(2);
        let t0 = tau(&m, &t).unwrap();
        for k in m.spin_structures() {
            let s0 = tau_spin(&m, &k, &t).unwrap();
            for eps in [1, -1] {
                for site in [BlowupSite::Disjoint, BlowupSite::Strands { start: 0, len: 1 }] {
                    let (m2, k2) = refined_kirby_blowup(&m, &k, eps, site).unwrap();
                    assert!(tau(&m2, &t).unwrap().approx_eq(&t0, 1e-18), "{eps} {site:?}");
                    let s2 = tau_spin(&m2, &k2, &t).unwrap();
                    assert!(s2.approx_eq(&s0, 1e-18), "{} {eps} {site:?}", k.bits());
                }
            }
        }
    }
}
