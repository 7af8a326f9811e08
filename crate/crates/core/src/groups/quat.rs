use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::Result;
use crate::exactnum::{CycloNum, Rational};

/// A quaternion `w + x i + y j + z k` with exact cyclotomic coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quat {
    pub w: CycloNum,
    pub x: CycloNum,
    pub y: CycloNum,
    pub z: CycloNum,
}

impl Quat {
    pub fn new(w: CycloNum, x: CycloNum, y: CycloNum, z: CycloNum) -> Self {
        Quat { w, x, y, z }
    }

    pub fn identity() -> Self {
        Quat::new(
            CycloNum::one(),
            CycloNum::zero(),
            CycloNum::zero(),
            CycloNum::zero(),
        )
    }

    /// Quaternion with rational coordinates `(w, x, y, z) / den`.
    pub fn rational(coords: [i64; 4], den: i64) -> Self {
        let c = |v: i64| CycloNum::from_rational(&Rational::new(v.into(), den.into()));
        Quat::new(c(coords[0]), c(coords[1]), c(coords[2]), c(coords[3]))
    }

    pub fn conj(&self) -> Self {
        Quat::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    pub fn norm_sq(&self) -> CycloNum {
        &(&(&self.w * &self.w) + &(&self.x * &self.x)) + &(&(&self.y * &self.y) + &(&self.z * &self.z))
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq().is_one()
    }

    /// Inverse of a unit quaternion.
    pub fn unit_inverse(&self) -> Self {
        self.conj()
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Quat::new(&self.w * c, &self.x * c, &self.y * c, &self.z * c)
    }

    /// Trace of the element viewed as a 2×2 matrix in SU(2), `2w`.
    pub fn trace(&self) -> CycloNum {
        &self.w + &self.w
    }

    /// Coordinate-wise Galois action; a ring automorphism of the quaternion algebra.
    pub fn galois(&self, k: i64) -> Result<Self> {
        Ok(Quat::new(
            self.w.galois(k)?,
            self.x.galois(k)?,
            self.y.galois(k)?,
            self.z.galois(k)?,
        ))
    }

    /// `u⁻¹ · self · u` for a unit `u`.
    pub fn conjugated_by(&self, u: &Quat) -> Self {
        &(&u.unit_inverse() * self) * u
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Quat::identity(), |acc, _| &acc * self)
    }

    /// Floating point coordinates (real parts of the embedding).
    pub fn embed(&self) -> [f64; 4] {
        [
            self.w.embed().re,
            self.x.embed().re,
            self.y.embed().re,
            self.z.embed().re,
        ]
    }
}

impl<'a> Mul<&'a Quat> for &'a Quat {
    type Output = Quat;

    fn mul(self, b: &'a Quat) -> Quat {
        let a = self;
        let w = &(&(&a.w * &b.w) - &(&a.x * &b.x)) - &(&(&a.y * &b.y) + &(&a.z * &b.z));
        let x = &(&(&a.w * &b.x) + &(&a.x * &b.w)) + &(&(&a.y * &b.z) - &(&a.z * &b.y));
        let y = &(&(&a.w * &b.y) - &(&a.x * &b.z)) + &(&(&a.y * &b.w) + &(&a.z * &b.x));
        let z = &(&(&a.w * &b.z) + &(&a.x * &b.y)) - &(&(&a.y * &b.x) - &(&a.z * &b.w));
        Quat::new(w, x, y, z)
    }
}

impl Neg for &Quat {
    type Output = Quat;

    fn neg(self) -> Quat {
        Quat::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = self.embed();
        write!(f, "Quat({w:.4}, {x:.4}i, {y:.4}j, {z:.4}k)")
    }
}
