//! Linear algebra over the semi-Euclidean 4-space with index 2.
//!
//! The pseudo-scalar product is `<u,w> = -u1 w1 - u2 w2 + u3 w3 + u4 w4`
//! (signature `(-,-,+,+)`). Everything here is a pure function on immutable
//! values; the inner product, triple vector product and determinants are
//! written once, generically, so the same expansions serve `f64` components
//! and [`crate::jet::Jet`] components.

use crate::error::{Error, Result};
use std::ops::{Add, Index, Mul, Neg, Sub};

/// Scalar types the signature algebra is written over.
pub trait Ring:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// `<u,w>` for 4-component arrays of any ring scalar.
pub(crate) fn inner_g<T: Ring>(u: &[T; 4], w: &[T; 4]) -> T {
    u[2] * w[2] + u[3] * w[3] - u[0] * w[0] - u[1] * w[1]
}

fn det3<T: Ring>(r: [[T; 3]; 3]) -> T {
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

fn minor3<T: Ring>(u: &[T; 4], v: &[T; 4], w: &[T; 4], skip: usize) -> T {
    let mut cols = [0usize; 3];
    let mut i = 0;
    for c in 0..4 {
        if c != skip {
            cols[i] = c;
            i += 1;
        }
    }
    det3([
        [u[cols[0]], u[cols[1]], u[cols[2]]],
        [v[cols[0]], v[cols[1]], v[cols[2]]],
        [w[cols[0]], w[cols[1]], w[cols[2]]],
    ])
}

/// Triple vector product `u x v x w`: the formal cofactor expansion of the
/// determinant with first row `(-e1, -e2, e3, e4)`. The result is
/// pseudo-orthogonal to all three arguments.
pub(crate) fn triple_g<T: Ring>(u: &[T; 4], v: &[T; 4], w: &[T; 4]) -> [T; 4] {
    [
        -minor3(u, v, w, 0),
        minor3(u, v, w, 1),
        minor3(u, v, w, 2),
        -minor3(u, v, w, 3),
    ]
}

/// Determinant of a 4x4 matrix given by rows.
pub(crate) fn det4_g<T: Ring>(rows: &[[T; 4]; 4]) -> T {
    let m0 = minor3(&rows[1], &rows[2], &rows[3], 0);
    let m1 = minor3(&rows[1], &rows[2], &rows[3], 1);
    let m2 = minor3(&rows[1], &rows[2], &rows[3], 2);
    let m3 = minor3(&rows[1], &rows[2], &rows[3], 3);
    rows[0][0] * m0 - rows[0][1] * m1 + rows[0][2] * m2 - rows[0][3] * m3
}

/// A point or vector of the index-2 semi-Euclidean 4-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec4R22([f64; 4]);

impl Vec4R22 {
    /// Builds a vector; all components must be finite.
    pub fn new(u1: f64, u2: f64, u3: f64, u4: f64) -> Self {
        Self::from_array([u1, u2, u3, u4])
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        assert!(
            c.iter().all(|x| x.is_finite()),
            "Vec4R22 components must be finite, got {c:?}"
        );
        Vec4R22(c)
    }

    pub fn zero() -> Self {
        Vec4R22([0.0; 4])
    }

    /// Canonical basis vector `e_i`, `i` in `1..=4`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i - 1] = 1.0;
        Vec4R22(c)
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.0
    }

    pub fn scale(&self, a: f64) -> Self {
        Vec4R22([self.0[0] * a, self.0[1] * a, self.0[2] * a, self.0[3] * a])
    }

    /// Pseudo-norm `sqrt(|<u,u>|)`.
    pub fn pseudo_norm(&self) -> f64 {
        inner(*self, *self).abs().sqrt()
    }

    /// Euclidean norm of the component array, used for error reporting only.
    pub fn flat_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl Index<usize> for Vec4R22 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec4R22 {
    type Output = Vec4R22;
    fn add(self, o: Vec4R22) -> Vec4R22 {
        Vec4R22([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }
}

impl Sub for Vec4R22 {
    type Output = Vec4R22;
    fn sub(self, o: Vec4R22) -> Vec4R22 {
        Vec4R22([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }
}

impl Neg for Vec4R22 {
    type Output = Vec4R22;
    fn neg(self) -> Vec4R22 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Vec4R22 {
    type Output = Vec4R22;
    fn mul(self, a: f64) -> Vec4R22 {
        self.scale(a)
    }
}

/// Pseudo-scalar product of signature `(-,-,+,+)`.
pub fn inner(u: Vec4R22, w: Vec4R22) -> f64 {
    inner_g(&u.0, &w.0)
}

/// Triple vector product: the formal cofactor expansion of the determinant
/// with first row `(-e1, -e2, e3, e4)`; pseudo-orthogonal to all arguments.
pub fn triple_product(u: Vec4R22, v: Vec4R22, w: Vec4R22) -> Vec4R22 {
    Vec4R22(triple_g(&u.0, &v.0, &w.0))
}

/// Causal character of a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Classifies `u` by the sign of `<u,u>` against a symmetric band of width
/// `eps` around zero.
pub fn causal_class(u: Vec4R22, eps: f64) -> CausalClass {
    let q = inner(u, u);
    if q < -eps {
        CausalClass::Timelike
    } else if q > eps {
        CausalClass::Spacelike
    } else {
        CausalClass::Lightlike
    }
}

/// The three pseudo-spheres of the index-2 space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PseudoSphere {
    /// Anti-de Sitter 3-space, `<u,u> = -1`.
    AdS3,
    /// Pseudo 3-sphere with index 2, `<u,u> = +1`.
    S32,
    /// Nullcone at the origin, `<u,u> = 0`, `u != 0`.
    Nullcone,
}

/// Tests membership of `u` in one of the pseudo-spheres within `eps`.
pub fn sphere_membership(u: Vec4R22, eps: f64) -> Option<PseudoSphere> {
    let q = inner(u, u);
    if (q + 1.0).abs() <= eps {
        Some(PseudoSphere::AdS3)
    } else if (q - 1.0).abs() <= eps {
        Some(PseudoSphere::S32)
    } else if q.abs() <= eps && u.flat_norm() > 0.0 {
        Some(PseudoSphere::Nullcone)
    } else {
        None
    }
}

/// Image point of the hyperbolic Hopf map in Minkowski 3-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HopfPoint {
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
}

impl HopfPoint {
    /// Residual of the defining quadric `y1^2 + y2^2 - y3^2 = -1/4`.
    pub fn quadric_residual(&self) -> f64 {
        (self.y1 * self.y1 + self.y2 * self.y2 - self.y3 * self.y3 + 0.25).abs()
    }
}

/// Hyperbolic Hopf map onto the hyperbolic 2-space of curvature -4.
///
/// Requires `u` on the anti-de Sitter 3-space within `tol`.
pub fn hopf_project(u: Vec4R22, tol: f64) -> Result<HopfPoint> {
    let q = inner(u, u);
    if (q + 1.0).abs() > tol {
        return Err(Error::NotOnAds { value: q, tol });
    }
    let [u1, u2, u3, u4] = u.as_array();
    Ok(HopfPoint {
        y1: u1 * u3 + u2 * u4,
        y2: u1 * u4 - u2 * u3,
        y3: (u1 * u1 + u2 * u2 + u3 * u3 + u4 * u4) / 2.0,
    })
}

/// The fixed signature matrix `eta = diag(-1,-1,1,1)` as diagonal entries.
pub const ETA_DIAG: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

/// A 4x4 matrix whose rows are interpreted either as a moving frame
/// `(gamma, v1, v2, mu)` or as a linear map of the index-2 space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameMatrix {
    rows: [Vec4R22; 4],
}

impl FrameMatrix {
    pub fn from_rows(rows: [Vec4R22; 4]) -> Self {
        FrameMatrix { rows }
    }

    pub fn identity() -> Self {
        FrameMatrix {
            rows: [
                Vec4R22::basis(1),
                Vec4R22::basis(2),
                Vec4R22::basis(3),
                Vec4R22::basis(4),
            ],
        }
    }

    pub fn row(&self, i: usize) -> Vec4R22 {
        self.rows[i]
    }

    pub fn rows(&self) -> [Vec4R22; 4] {
        self.rows
    }

    fn entries(&self) -> [[f64; 4]; 4] {
        [
            self.rows[0].as_array(),
            self.rows[1].as_array(),
            self.rows[2].as_array(),
            self.rows[3].as_array(),
        ]
    }

    pub fn det(&self) -> f64 {
        let e = self.entries();
        det4_g(&e)
    }

    pub fn transpose(&self) -> FrameMatrix {
        let e = self.entries();
        let mut t = [[0.0; 4]; 4];
        for (i, row) in e.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t[j][i] = *x;
            }
        }
        FrameMatrix {
            rows: [
                Vec4R22::from_array(t[0]),
                Vec4R22::from_array(t[1]),
                Vec4R22::from_array(t[2]),
                Vec4R22::from_array(t[3]),
            ],
        }
    }

    pub fn matmul(&self, o: &FrameMatrix) -> FrameMatrix {
        let a = self.entries();
        let b = o.entries();
        let mut r = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0.0;
                for (k, bk) in b.iter().enumerate() {
                    acc += a[i][k] * bk[j];
                }
                r[i][j] = acc;
            }
        }
        FrameMatrix {
            rows: [
                Vec4R22::from_array(r[0]),
                Vec4R22::from_array(r[1]),
                Vec4R22::from_array(r[2]),
                Vec4R22::from_array(r[3]),
            ],
        }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: Vec4R22) -> Vec4R22 {
        let e = self.entries();
        let x = v.as_array();
        let mut r = [0.0; 4];
        for (i, row) in e.iter().enumerate() {
            r[i] = row[0] * x[0] + row[1] * x[1] + row[2] * x[2] + row[3] * x[3];
        }
        Vec4R22::from_array(r)
    }

    /// Maximum absolute entry of `F^t eta F - eta`: membership of the matrix
    /// in O(2,2) as a linear map. Use [`FrameMatrix::gram_residual`] for
    /// moving frames, whose row signature pattern varies with the curve kind.
    pub fn orth_residual(&self) -> f64 {
        let e = self.entries();
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                // (F^t eta F)_{ij} = sum_k eta_k F_{ki} F_{kj}
                let mut acc = 0.0;
                for (k, row) in e.iter().enumerate() {
                    acc += ETA_DIAG[k] * row[i] * row[j];
                }
                let target = if i == j { ETA_DIAG[i] } else { 0.0 };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }

    /// Pseudo-orthonormality of the rows as a moving frame: every row has
    /// `|<r,r>| = 1` and distinct rows are pseudo-orthogonal, regardless of
    /// where the timelike directions sit in the row order.
    pub fn gram_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in i..4 {
                let q = inner(self.rows[i], self.rows[j]);
                let r = if i == j { (q.abs() - 1.0).abs() } else { q.abs() };
                worst = worst.max(r);
            }
        }
        worst
    }

    /// Residual against a fixed row Gram matrix `diag`; the conserved
    /// quantity of the moving-frame flow.
    pub(crate) fn row_gram_residual(&self, diag: &[f64; 4]) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in i..4 {
                let q = inner(self.rows[i], self.rows[j]);
                let target = if i == j { diag[i] } else { 0.0 };
                worst = worst.max((q - target).abs());
            }
        }
        worst
    }

    /// Signs of the row self-products, the frame's causal signature pattern.
    pub fn row_signature(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (i, r) in self.rows.iter().enumerate() {
            out[i] = inner(*r, *r).signum();
        }
        out
    }

    /// Re-orthonormalizes the rows against the eta metric, in order,
    /// preserving each row's causal sign. Used to project integration drift
    /// back onto the frame manifold.
    pub fn eta_gram_schmidt(&mut self) {
        for i in 0..4 {
            let mut v = self.rows[i];
            for j in 0..i {
                let w = self.rows[j];
                let denom = inner(w, w);
                v = v - w.scale(inner(v, w) / denom);
            }
            let q = inner(v, v);
            self.rows[i] = v.scale(1.0 / q.abs().sqrt());
        }
    }
}

/// Residuals of the pseudo-orthonormality and unimodularity conditions:
/// `(gram_residual, |det F - 1|)`.
///
/// Note that a frame completing a spacelike-kind framed curve (spacelike
/// `mu = gamma x v1 x v2`) has determinant -1, so its second residual is 2
/// by construction; see [`crate::reconstruction::drift_report`] for the
/// conserved-quantity form used along integrations.
pub fn frame_residuals(f: &FrameMatrix) -> (f64, f64) {
    (f.gram_residual(), (f.det() - 1.0).abs())
}
