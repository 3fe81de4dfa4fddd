//! Root-of-unity parameters and the scalar constants built from them.
//!
//! `A = exp(2πi / 4r)` is fixed once and for all. Every other constant is a
//! polynomial in `A^{±1}` except `ω`, the positive square root of `ω²`.

mod scalar;

pub use scalar::{tree_sum, Scalar};

use crate::error::{Error, Result};

/// A color is an element of `I = {0, ..., r-2}`.
pub type ColorIndex = usize;

pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_TOLERANCE: f64 = 1e-20;

/// The datum `(r, A)` with precision, tolerance and precomputed tables.
///
/// Immutable once built; share by reference or clone.
#[derive(Clone, Debug)]
pub struct TheoryParams {
    r: usize,
    precision: u32,
    tolerance: f64,
    /// `A^k` for `k = 0..4r`.
    a_pow: Vec<Scalar>,
    /// `[n]` for `n = 0..=2r`.
    qint: Vec<Scalar>,
    /// `[n]!` for `n = 0..=2r`; zero from `n = r` on.
    qfact: Vec<Scalar>,
    omega_sq: Vec<Scalar>,
    q_sq: Vec<Scalar>,
    omega2: Scalar,
    omega: Scalar,
    delta: Scalar,
    delta_bar: Scalar,
}

impl TheoryParams {
    pub fn new(r: usize, precision: u32, tolerance: f64) -> Result<Self> {
        if r < 4 {
            return Err(Error::InvalidParams(format!("r = {r} must be at least 4")));
        }
        if r % 4 != 0 {
            return Err(Error::InvalidParams(format!("r = {r} not ≡ 0 mod 4")));
        }
        if precision < 64 {
            return Err(Error::InvalidParams(format!(
                "precision {precision} below 64 bits"
            )));
        }
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(Error::InvalidParams(format!("tolerance {tolerance} invalid")));
        }
        let p = precision;
        let n4 = 4 * r as i64;

        let a = Scalar::unit_root(p, 2, n4);
        let mut a_pow = Vec::with_capacity(4 * r);
        let mut cur = Scalar::one(p);
        for k in 0..4 * r {
            // direct evaluation every 8 steps keeps the table free of drift
            if k % 8 == 0 {
                cur = Scalar::unit_root(p, 2 * k as i64, n4);
            }
            a_pow.push(cur.clone());
            cur = &cur * &a;
        }
        let apow = |k: i64| a_pow[k.rem_euclid(n4) as usize].clone();

        let denom = apow(2) - apow(-2);
        let qint: Vec<Scalar> = (0..=2 * r as i64)
            .map(|n| {
                let v = (apow(2 * n) - apow(-2 * n)) / &denom;
                Scalar::from_real(v.re().clone())
            })
            .collect();
        let mut qfact = Vec::with_capacity(qint.len());
        let mut acc = Scalar::one(p);
        for (n, qn) in qint.iter().enumerate() {
            if n > 0 {
                acc = &acc * qn;
            }
            if n >= r {
                qfact.push(Scalar::zero(p));
            } else {
                qfact.push(acc.clone());
            }
        }

        let omega_sq: Vec<Scalar> = (0..=r - 2)
            .map(|i| {
                let v = qint[i + 1].clone();
                if i % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let q_sq: Vec<Scalar> = (0..=r as i64 - 2)
            .map(|i| {
                let v = apow(i * i + 2 * i);
                if i % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect();

        let d2 = &denom * &denom;
        let omega2_c = &Scalar::from_int(p, -2 * r as i64) / &d2;
        let omega2 = Scalar::from_real(omega2_c.re().clone());
        let omega = omega2.sqrt();

        let w4: Vec<Scalar> = omega_sq.iter().map(|w| w * w).collect();
        let delta = tree_sum(q_sq.iter().zip(&w4).map(|(q, w)| q * w).collect(), p);
        let delta_bar = tree_sum(
            q_sq.iter().zip(&w4).map(|(q, w)| &q.inv() * w).collect(),
            p,
        );

        Ok(Self {
            r,
            precision,
            tolerance,
            a_pow,
            qint,
            qfact,
            omega_sq,
            q_sq,
            omega2,
            omega,
            delta,
            delta_bar,
        })
    }

    pub fn with_defaults(r: usize) -> Result<Self> {
        Self::new(r, DEFAULT_PRECISION, DEFAULT_TOLERANCE)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Largest color, `r - 2`.
    pub fn max_color(&self) -> ColorIndex {
        self.r - 2
    }

    pub fn colors(&self) -> std::ops::RangeInclusive<ColorIndex> {
        0..=self.r - 2
    }

    pub fn check_color(&self, c: ColorIndex) -> Result<()> {
        if c > self.r - 2 {
            Err(Error::ColorOutOfRange {
                color: c,
                max: self.r - 2,
            })
        } else {
            Ok(())
        }
    }

    pub fn a(&self) -> &Scalar {
        &self.a_pow[1]
    }

    /// `A^k` for any integer `k`.
    pub fn a_pow(&self, k: i64) -> Scalar {
        self.a_pow[k.rem_euclid(4 * self.r as i64) as usize].clone()
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.precision)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.precision)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(self.precision, n)
    }

    /// Loop value `δ = -A² - A⁻²`.
    pub fn loop_value(&self) -> Scalar {
        -(self.a_pow(2) + self.a_pow(-2))
    }

    /// `[n] = (A^{2n} - A^{-2n}) / (A² - A⁻²)`, real. Negative `n` gives `-[-n]`.
    pub fn quantum_int(&self, n: i64) -> Scalar {
        let m = n.unsigned_abs() as usize;
        let v = if m < self.qint.len() {
            self.qint[m].clone()
        } else {
            let num = self.a_pow(2 * m as i64) - self.a_pow(-2 * m as i64);
            let den = self.a_pow(2) - self.a_pow(-2);
            Scalar::from_real((num / den).re().clone())
        };
        if n < 0 {
            -v
        } else {
            v
        }
    }

    /// `[n]! = [1][2]...[n]`; vanishes for `n >= r`.
    pub fn quantum_factorial(&self, n: usize) -> Scalar {
        if n < self.qfact.len() {
            self.qfact[n].clone()
        } else {
            self.zero()
        }
    }

    /// `ω_i² = (-1)^i [i+1]`.
    pub fn omega_sq(&self, i: ColorIndex) -> &Scalar {
        &self.omega_sq[i]
    }

    /// `q_i² = (-1)^i A^{i² + 2i}`.
    pub fn q_sq(&self, i: ColorIndex) -> &Scalar {
        &self.q_sq[i]
    }

    /// `q_i^{2k}` for any integer `k`.
    pub fn q_sq_pow(&self, i: ColorIndex, k: i64) -> Scalar {
        let sign = if (i as i64 * k) % 2 != 0 { -1 } else { 1 };
        let e = (i * i + 2 * i) as i64 * k;
        let v = self.a_pow(e);
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    /// `ω² = -2r / (A² - A⁻²)²`, positive real.
    pub fn omega_squared(&self) -> &Scalar {
        &self.omega2
    }

    /// Positive square root of `ω²`.
    pub fn omega(&self) -> &Scalar {
        &self.omega
    }

    /// `Δ = Σ_i q_i² ω_i⁴`.
    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    /// `Δ̄ = Σ_i q_i⁻² ω_i⁴`.
    pub fn delta_bar(&self) -> &Scalar {
        &self.delta_bar
    }

    pub fn approx_eq(&self, x: &Scalar, y: &Scalar) -> bool {
        x.approx_eq(y, self.tolerance)
    }
}

pub fn quantum_int(params: &TheoryParams, n: i64) -> Scalar {
    params.quantum_int(n)
}

pub fn omega_sq(params: &TheoryParams, i: ColorIndex) -> Scalar {
    params.omega_sq(i).clone()
}

pub fn q_sq(params: &TheoryParams, i: ColorIndex) -> Scalar {
    params.q_sq(i).clone()
}

pub fn omega(params: &TheoryParams) -> Scalar {
    params.omega().clone()
}

pub fn delta(params: &TheoryParams) -> Scalar {
    params.delta().clone()
}

pub fn delta_bar(params: &TheoryParams) -> Scalar {
    params.delta_bar().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(r: usize) -> TheoryParams {
        TheoryParams::new(r, 128, 1e-20).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(matches!(TheoryParams::new(6, 128, 1e-20), Err(Error::InvalidParams(_))));
        assert!(TheoryParams::new(0, 128, 1e-20).is_err());
        assert!(TheoryParams::new(8, 32, 1e-20).is_err());
        assert!(TheoryParams::new(4, 64, 1e-12).is_ok());
    }

    #[test]
    fn principal_root() {
        let p = tp(8);
        let expect = Scalar::unit_root(128, 1, 16);
        assert!(p.a().approx_eq(&expect, 1e-30));
        let (re, im) = p.a().to_f64_pair();
        assert!((re - (std::f64::consts::PI / 16.0).cos()).abs() < 1e-15);
        assert!((im - (std::f64::consts::PI / 16.0).sin()).abs() < 1e-15);

        let p12 = tp(12);
        let a = p12.a().clone();
        assert!(a.powi(48).approx_eq(&p12.one(), 1e-30));
        assert!(a.powi(24).approx_eq(&p12.int(-1), 1e-30));
        for k in 1..48 {
            assert!(!a.powi(k).approx_eq(&p12.one(), 1e-10), "A^{k} = 1");
        }
    }

    #[test]
    fn quantum_integers() {
        let p = tp(8);
        assert!(p.quantum_int(1).approx_eq(&p.one(), 1e-30));
        assert!(p.quantum_int(8).approx_zero(1e-30));
        let q2 = 2.0 * (std::f64::consts::PI / 8.0).cos();
        assert!((p.quantum_int(2).re().to_f64() - q2).abs() < 1e-15);
        assert!((q2 - 1.8477590650).abs() < 1e-10);
        for n in 0..=16i64 {
            let s = (std::f64::consts::PI * n as f64 / 8.0).sin()
                / (std::f64::consts::PI / 8.0).sin();
            assert!((p.quantum_int(n).re().to_f64() - s).abs() < 1e-14);
        }
    }

    #[test]
    fn factorials_vanish_past_r() {
        let p = tp(8);
        assert!(p.quantum_factorial(7).abs_f64() > 0.1);
        assert!(p.quantum_factorial(8).is_zero());
        assert!(p.quantum_factorial(100).is_zero());
    }

    #[test]
    fn omega_sq_values_and_symmetry() {
        for r in [8, 12] {
            let p = tp(r);
            assert!(p.omega_sq(0).approx_eq(&p.one(), 1e-30));
            assert!(p.omega_sq(1).approx_eq(&-p.quantum_int(2), 1e-30));
            for i in p.colors() {
                let w = p.omega_sq(i);
                assert!(w.im().is_zero());
                assert_eq!(w.re().is_sign_negative(), i % 2 == 1);
                assert!(w.approx_eq(p.omega_sq(r - 2 - i), 1e-25));
            }
        }
    }

    #[test]
    fn q_sq_values_and_symmetry() {
        for r in [8, 12] {
            let p = tp(r);
            assert!(p.q_sq(0).approx_eq(&p.one(), 1e-30));
            for i in p.colors() {
                assert!((p.q_sq(i).abs_f64() - 1.0).abs() < 1e-25);
                let sign = if i % 2 == 0 { -1 } else { 1 };
                assert!(p.q_sq(r - 2 - i).approx_eq(&(p.q_sq(i) * sign), 1e-25));
                assert!(p.q_sq_pow(i, 3).approx_eq(&p.q_sq(i).powi(3), 1e-25));
                assert!(p.q_sq_pow(i, -2).approx_eq(&p.q_sq(i).powi(-2), 1e-25));
            }
        }
        let p = tp(8);
        let i_unit = Scalar::unit_root(128, 1, 2);
        assert!(p.q_sq(2).approx_eq(&i_unit, 1e-30));
    }

    #[test]
    fn omega_and_delta() {
        for r in [8, 12] {
            let p = tp(r);
            let w4: Vec<Scalar> = p.colors().map(|i| p.omega_sq(i) * p.omega_sq(i)).collect();
            let total = tree_sum(w4.clone(), 128);
            assert!(total.approx_eq(p.omega_squared(), 1e-25));
            let even = tree_sum(w4.iter().step_by(2).cloned().collect(), 128);
            let odd = tree_sum(w4.iter().skip(1).step_by(2).cloned().collect(), 128);
            assert!((&even * 2).approx_eq(p.omega_squared(), 1e-25));
            assert!((&odd * 2).approx_eq(p.omega_squared(), 1e-25));
            assert!((p.omega() * p.omega()).approx_eq(p.omega_squared(), 1e-30));
            assert!(total.sqrt().approx_eq(p.omega(), 1e-25));

            assert!((p.delta() * p.delta_bar()).approx_eq(p.omega_squared(), 1e-25));
            assert!(p.delta_bar().approx_eq(&p.delta().conj(), 1e-25));
            let odd_delta = tree_sum(
                p.colors()
                    .filter(|i| i % 2 == 1)
                    .map(|i| &(p.q_sq(i) * p.omega_sq(i)) * p.omega_sq(i))
                    .collect(),
                128,
            );
            assert!(odd_delta.approx_eq(p.delta(), 1e-25));
        }
        let p = tp(8);
        assert!((p.omega_squared().re().to_f64() - 27.3137084990).abs() < 1e-9);
        let s = (std::f64::consts::PI / 8.0).sin();
        assert!((p.omega_squared().re().to_f64() - 4.0 / (s * s)).abs() < 1e-12);
    }
}
