//! Truncated Taylor-series scalars ("jets") used for exact differentiation
//! of closed-form curve data.
//!
//! A [`Jet`] stores the Taylor coefficients of a smooth function at a point,
//! truncated at order [`JET_ORDER`]. Arithmetic propagates coefficients by the
//! usual Cauchy-product recurrences, so every coefficient of a composition of
//! closed-form operations is exact to rounding. Derivative values fall out of
//! the coefficients without any finite-difference step.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Highest Taylor order carried by a [`Jet`].
pub const JET_ORDER: usize = 5;
/// Number of stored coefficients.
pub const JET_LEN: usize = JET_ORDER + 1;

/// Truncated Taylor expansion of a scalar function of one variable.
///
/// Coefficient `k` is `f^(k)(s0) / k!`; the expansion point itself is not
/// stored. Coefficients beyond a source's validity order are zero-filled and
/// must not be read (see [`crate::curve::CurveSource::jet_depth`]).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; JET_LEN],
}

const FACT: [f64; JET_LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];

impl Jet {
    pub fn from_coeffs(c: [f64; JET_LEN]) -> Self {
        Jet { c }
    }

    /// The constant function `x`.
    pub fn constant(x: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = x;
        Jet { c }
    }

    /// The identity function evaluated at `x` (seed for differentiation).
    pub fn var(x: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = x;
        c[1] = 1.0;
        Jet { c }
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.c[k]
    }

    /// Function value.
    pub fn val(&self) -> f64 {
        self.c[0]
    }

    /// `k`-th derivative value, `k <= JET_ORDER`.
    pub fn d(&self, k: usize) -> f64 {
        self.c[k] * FACT[k]
    }

    /// Jet of the derivative function (one order of validity is consumed).
    pub fn shift(&self) -> Jet {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_ORDER {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c }
    }

    /// Taylor evaluation at offset `h` from the expansion point.
    pub fn eval(&self, h: f64) -> f64 {
        let mut acc = 0.0;
        for k in (0..JET_LEN).rev() {
            acc = acc * h + self.c[k];
        }
        acc
    }

    /// Re-expands the truncated polynomial around a point offset by `h`.
    pub fn recenter(&self, h: f64) -> Jet {
        let mut c = self.c;
        // repeated synthetic division by (x - h)
        for k in 0..JET_ORDER {
            for j in (k..JET_ORDER).rev() {
                let (lo, hi) = (c[j], c[j + 1]);
                c[j] = lo + h * hi;
            }
        }
        Jet { c }
    }

    /// Increment of the antiderivative over `[0, h]`: `sum c_k h^(k+1)/(k+1)`.
    pub fn integral_step(&self, h: f64) -> f64 {
        let mut acc = 0.0;
        for k in (0..JET_LEN).rev() {
            acc = (acc + self.c[k] / (k + 1) as f64) * h;
        }
        acc
    }

    /// Jet of an antiderivative with value `value` at the expansion point.
    pub fn antiderivative(&self, value: f64) -> Jet {
        let mut c = [0.0; JET_LEN];
        c[0] = value;
        for k in 0..JET_ORDER {
            c[k + 1] = self.c[k] / (k + 1) as f64;
        }
        Jet { c }
    }

    pub fn sqrt(&self) -> Jet {
        let mut c = [0.0; JET_LEN];
        c[0] = self.c[0].sqrt();
        for k in 1..JET_LEN {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= c[j] * c[k - j];
            }
            c[k] = acc / (2.0 * c[0]);
        }
        Jet { c }
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(1.0) / *self
    }

    pub fn powi(&self, n: u32) -> Jet {
        let mut r = Jet::constant(1.0);
        for _ in 0..n {
            r = r * *self;
        }
        r
    }

    pub fn sin_cos(&self) -> (Jet, Jet) {
        let mut s = [0.0; JET_LEN];
        let mut c = [0.0; JET_LEN];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..JET_LEN {
            let mut sa = 0.0;
            let mut ca = 0.0;
            for j in 1..=k {
                sa += j as f64 * self.c[j] * c[k - j];
                ca += j as f64 * self.c[j] * s[k - j];
            }
            s[k] = sa / k as f64;
            c[k] = -ca / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    pub fn sinh_cosh(&self) -> (Jet, Jet) {
        let mut s = [0.0; JET_LEN];
        let mut c = [0.0; JET_LEN];
        s[0] = self.c[0].sinh();
        c[0] = self.c[0].cosh();
        for k in 1..JET_LEN {
            let mut sa = 0.0;
            let mut ca = 0.0;
            for j in 1..=k {
                sa += j as f64 * self.c[j] * c[k - j];
                ca += j as f64 * self.c[j] * s[k - j];
            }
            s[k] = sa / k as f64;
            c[k] = ca / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn sinh(&self) -> Jet {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Jet {
        self.sinh_cosh().1
    }

    pub fn exp(&self) -> Jet {
        let mut c = [0.0; JET_LEN];
        c[0] = self.c[0].exp();
        for k in 1..JET_LEN {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * c[k - j];
            }
            c[k] = acc / k as f64;
        }
        Jet { c }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut c = self.c;
        for k in 0..JET_LEN {
            c[k] += o.c[k];
        }
        Jet { c }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        let mut c = self.c;
        for k in 0..JET_LEN {
            c[k] -= o.c[k];
        }
        Jet { c }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let mut c = self.c;
        for x in &mut c {
            *x = -*x;
        }
        Jet { c }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for (k, ck) in c.iter_mut().enumerate() {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.c[j] * o.c[k - j];
            }
            *ck = acc;
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= o.c[j] * c[k - j];
            }
            c[k] = acc / o.c[0];
        }
        Jet { c }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, o: f64) -> Jet {
        let mut c = self.c;
        c[0] += o;
        Jet { c }
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        o + self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, o: f64) -> Jet {
        let mut c = self.c;
        c[0] -= o;
        Jet { c }
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        -o + self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, o: f64) -> Jet {
        let mut c = self.c;
        for x in &mut c {
            *x *= o;
        }
        Jet { c }
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        o * self
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, o: f64) -> Jet {
        self * (1.0 / o)
    }
}

impl Div<Jet> for f64 {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        Jet::constant(self) / o
    }
}
