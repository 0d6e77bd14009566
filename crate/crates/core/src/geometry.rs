//! Exact small-vector algebra over the rationals.
//!
//! Everything here is a coefficient factory for rigidity-matrix rows: the join
//! of two homogeneous 4-vectors (a 2-tensor stored as six minors), the star
//! operator, and the action of an instantaneous screw on points.
//!
//! Screws are stored as `(omega, v)` and their 6-vector form is `(-omega, v)`.
//! The starred form `(v, -omega)` is the column order used by the rigidity
//! matrix for each body.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Scalar = BigRational;

/// Integer-valued scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The scalar `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("direction vector is zero")]
    DegenerateDirection,
    #[error("directions are parallel")]
    ParallelDirections,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vec3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Vec3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(int(x), int(y), int(z))
    }

    pub fn zero() -> Self {
        Vec3::from_ints(0, 0, 0)
    }

    pub fn dot(&self, other: &Vec3) -> Scalar {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3 {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    pub fn norm_squared(&self) -> Scalar {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Vec3 {
        Vec3 {
            x: &self.x * s,
            y: &self.y * s,
            z: &self.z * s,
        }
    }

    /// Homogeneous extension `(self : w)`.
    pub fn extend(&self, w: Scalar) -> Vec4 {
        Vec4 {
            x: self.x.clone(),
            y: self.y.clone(),
            z: self.z.clone(),
            w,
        }
    }

    pub fn components(&self) -> [&Scalar; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn to_f64(&self) -> [f64; 3] {
        use num_traits::ToPrimitive;
        [
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
            self.z.to_f64().unwrap_or(f64::NAN),
        ]
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3 {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3 {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3 {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

impl Mul<&Scalar> for &Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: &Scalar) -> Vec3 {
        self.scale(rhs)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vec4 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
    pub w: Scalar,
}

impl Vec4 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar, w: Scalar) -> Self {
        Vec4 { x, y, z, w }
    }

    pub fn from_ints(x: i64, y: i64, z: i64, w: i64) -> Self {
        Vec4::new(int(x), int(y), int(z), int(w))
    }

    pub fn xyz(&self) -> Vec3 {
        Vec3::new(self.x.clone(), self.y.clone(), self.z.clone())
    }

    fn coord(&self, i: usize) -> &Scalar {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => &self.w,
        }
    }
}

impl fmt::Debug for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {} : {})", self.x, self.y, self.z, self.w)
    }
}

/// A 2-tensor stored as six coordinates in the order
/// `(|M14|, |M24|, |M34|, |M23|, -|M13|, |M12|)`.
///
/// When used as a rigidity-matrix coefficient block the first three entries
/// pair with `v` and the last three with `-omega`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor6(pub [Scalar; 6]);

impl Tensor6 {
    pub fn zero() -> Self {
        Tensor6(std::array::from_fn(|_| Scalar::zero()))
    }

    pub fn from_ints(c: [i64; 6]) -> Self {
        Tensor6(c.map(int))
    }

    pub fn from_blocks(first: &Vec3, last: &Vec3) -> Self {
        Tensor6([
            first.x.clone(),
            first.y.clone(),
            first.z.clone(),
            last.x.clone(),
            last.y.clone(),
            last.z.clone(),
        ])
    }

    /// First three coordinates (the `v` columns of a matrix block).
    pub fn head(&self) -> Vec3 {
        Vec3::new(self.0[0].clone(), self.0[1].clone(), self.0[2].clone())
    }

    /// Last three coordinates (the `-omega` columns of a matrix block).
    pub fn tail(&self) -> Vec3 {
        Vec3::new(self.0[3].clone(), self.0[4].clone(), self.0[5].clone())
    }

    pub fn dot(&self, other: &Tensor6) -> Scalar {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Tensor6 {
        Tensor6(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn add(&self, other: &Tensor6) -> Tensor6 {
        Tensor6(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn neg(&self) -> Tensor6 {
        Tensor6(std::array::from_fn(|i| -&self.0[i]))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Scalar> {
        self.0.iter()
    }
}

impl Index<usize> for Tensor6 {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Debug for Tensor6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Instantaneous screw with angular velocity `omega`; its 6-vector is `(-omega, v)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Screw {
    pub omega: Vec3,
    pub v: Vec3,
}

impl Screw {
    pub fn new(omega: Vec3, v: Vec3) -> Self {
        Screw { omega, v }
    }

    /// The 6-vector `(-omega, v)`.
    pub fn to_tensor(&self) -> Tensor6 {
        Tensor6::from_blocks(&-&self.omega, &self.v)
    }

    /// Inverse of [`Screw::to_tensor`].
    pub fn from_tensor(t: &Tensor6) -> Self {
        Screw {
            omega: -&t.head(),
            v: t.tail(),
        }
    }

    /// The starred 6-vector `(v, -omega)`, i.e. the screw in matrix column order.
    pub fn starred(&self) -> Tensor6 {
        star(&self.to_tensor())
    }

    /// Recover a screw from its starred form `(v, -omega)`.
    pub fn from_starred(t: &Tensor6) -> Self {
        Screw::from_tensor(&star(t))
    }
}

/// Join of two homogeneous 4-vectors: the six 2x2 minors of the matrix with
/// rows `p` and `q`, ordered `(|M14|, |M24|, |M34|, |M23|, -|M13|, |M12|)`.
pub fn join4(p: &Vec4, q: &Vec4) -> Tensor6 {
    let minor = |a: usize, b: usize| p.coord(a) * q.coord(b) - p.coord(b) * q.coord(a);
    Tensor6([
        minor(0, 3),
        minor(1, 3),
        minor(2, 3),
        minor(1, 2),
        -minor(0, 2),
        minor(0, 1),
    ])
}

/// Swap the first and last three coordinates.
pub fn star(s: &Tensor6) -> Tensor6 {
    let c = &s.0;
    Tensor6([
        c[3].clone(),
        c[4].clone(),
        c[5].clone(),
        c[0].clone(),
        c[1].clone(),
        c[2].clone(),
    ])
}

/// Velocity `omega x p + v` of the point `p` under the screw.
pub fn screw_point_velocity(s: &Screw, p: &Vec3) -> Vec3 {
    &s.omega.cross(p) + &s.v
}

/// `(p' : -<p, p'>)`.
pub fn screw_join_point(s: &Screw, p: &Vec3) -> Vec4 {
    let vel = screw_point_velocity(s, p);
    let w = -p.dot(&vel);
    vel.extend(w)
}

/// `<p', q_xyz> - q_w <p, p'>`.
///
/// With the minor order above this equals `-<s*, (p:1) v q>`; the two agree as
/// linear forms up to sign, so they have the same zero set.
pub fn triple_join(s: &Screw, p: &Vec3, q: &Vec4) -> Scalar {
    let vel = screw_point_velocity(s, p);
    vel.dot(&q.xyz()) - &q.w * p.dot(&vel)
}

/// Two linearly independent vectors orthogonal to `c`.
///
/// Picks two rows of the cross-product matrix of `c`,
/// `(0, -c_z, c_y)`, `(c_z, 0, -c_x)`, `(-c_y, c_x, 0)`: the row with the
/// smallest squared norm is dropped (lowest index on ties) and the other two
/// are returned in cyclic order starting after the dropped one.
pub fn orthogonal_pair(c: &Vec3) -> Result<(Vec3, Vec3), GeometryError> {
    if c.is_zero() {
        return Err(GeometryError::DegenerateDirection);
    }
    let rows = cross_matrix_rows(c);
    let mut drop = 0;
    let mut best = rows[0].norm_squared();
    for (k, row) in rows.iter().enumerate().skip(1) {
        let n = row.norm_squared();
        if n < best {
            best = n;
            drop = k;
        }
    }
    let a = rows[(drop + 1) % 3].clone();
    let b = rows[(drop + 2) % 3].clone();
    Ok((a, b))
}

/// Rows of `[c]_x`: row `k` dotted with `w` gives `(c x w)_k`.
fn cross_matrix_rows(c: &Vec3) -> [Vec3; 3] {
    let zero = Scalar::zero();
    [
        Vec3::new(zero.clone(), -&c.z, c.y.clone()),
        Vec3::new(c.z.clone(), zero.clone(), -&c.x),
        Vec3::new(-&c.y, c.x.clone(), zero),
    ]
}

/// Rational rotation matrix from the Cayley transform of the skew matrix of `w`:
/// `R = I + 2/(1+|w|^2) (W + W^2)`.
pub fn cayley_rotation(w: &Vec3) -> [Vec3; 3] {
    let factor = int(2) / (int(1) + w.norm_squared());
    let skew = [
        Vec3::new(Scalar::zero(), -&w.z, w.y.clone()),
        Vec3::new(w.z.clone(), Scalar::zero(), -&w.x),
        Vec3::new(-&w.y, w.x.clone(), Scalar::zero()),
    ];
    // columns of W for the W^2 product
    let cols = [
        Vec3::new(skew[0].x.clone(), skew[1].x.clone(), skew[2].x.clone()),
        Vec3::new(skew[0].y.clone(), skew[1].y.clone(), skew[2].y.clone()),
        Vec3::new(skew[0].z.clone(), skew[1].z.clone(), skew[2].z.clone()),
    ];
    std::array::from_fn(|r| {
        let entry = |c: usize| {
            let ident = if r == c { int(1) } else { Scalar::zero() };
            let w1 = skew[r].components()[c].clone();
            let w2 = skew[r].dot(&cols[c]);
            ident + &factor * (w1 + w2)
        };
        Vec3::new(entry(0), entry(1), entry(2))
    })
}

/// Multiply a row-major 3x3 matrix by a vector.
pub fn mat_vec(m: &[Vec3; 3], v: &Vec3) -> Vec3 {
    Vec3::new(m[0].dot(v), m[1].dot(v), m[2].dot(v))
}
