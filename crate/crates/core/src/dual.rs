//! Forward-mode dual numbers carrying several derivative directions at once,
//! used to extract exact Jacobians of rational maps.

use crate::field::{Field, Ring};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Value together with its derivative along each seeded direction. Mixing
/// operands with different direction counts pads the shorter one with zeros,
/// so constants may be built with no directions at all.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual<F> {
    pub value: F,
    pub partials: Vec<F>,
}

impl<F: Field> Dual<F> {
    pub fn constant(value: F) -> Self {
        Dual {
            value,
            partials: vec![],
        }
    }

    /// A coordinate seeded as the `dir`-th of `ndirs` independent directions.
    pub fn seeded(value: F, ndirs: usize, dir: usize) -> Self {
        let mut partials = vec![F::zero(); ndirs];
        partials[dir] = F::one();
        Dual { value, partials }
    }

    pub fn partial(&self, dir: usize) -> F {
        self.partials.get(dir).cloned().unwrap_or_else(F::zero)
    }

    fn padded(a: &Self, b: &Self) -> (Vec<F>, Vec<F>) {
        let n = a.partials.len().max(b.partials.len());
        let mut pa = a.partials.clone();
        let mut pb = b.partials.clone();
        pa.resize(n, F::zero());
        pb.resize(n, F::zero());
        (pa, pb)
    }
}

impl<F: Field> Add for Dual<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (pa, pb) = Self::padded(&self, &rhs);
        Dual {
            value: self.value + rhs.value,
            partials: pa
                .into_iter()
                .zip(pb)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<F: Field> Sub for Dual<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Neg for Dual<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            value: -self.value,
            partials: self.partials.into_iter().map(|p| -p).collect(),
        }
    }
}

impl<F: Field> Mul for Dual<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (pa, pb) = Self::padded(&self, &rhs);
        let partials = pa
            .into_iter()
            .zip(pb)
            .map(|(da, db)| da * rhs.value.clone() + self.value.clone() * db)
            .collect();
        Dual {
            value: self.value * rhs.value,
            partials,
        }
    }
}

impl<F: Field> Ring for Dual<F> {
    fn zero() -> Self {
        Dual::constant(F::zero())
    }
    fn one() -> Self {
        Dual::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.partials.iter().all(|p| p.is_zero())
    }
    fn from_i64(v: i64) -> Self {
        Dual::constant(F::from_i64(v))
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.value.is_unit() {
            Some(self.clone() * d.inv())
        } else {
            None
        }
    }
}

impl<F: Field> Field for Dual<F> {
    /// (1/a)' = -a'/a^2; requires the value part to be a unit.
    fn inv(&self) -> Self {
        let vi = self.value.inv();
        let vi2 = vi.clone() * vi.clone();
        Dual {
            value: vi,
            partials: self
                .partials
                .iter()
                .map(|p| -(p.clone() * vi2.clone()))
                .collect(),
        }
    }
    fn is_unit(&self) -> bool {
        self.value.is_unit()
    }
    fn conj(&self) -> Self {
        Dual {
            value: self.value.conj(),
            partials: self.partials.iter().map(|p| p.conj()).collect(),
        }
    }
}

impl<F: Field> fmt::Display for Dual<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        for (i, p) in self.partials.iter().enumerate() {
            write!(f, " + ({})*e{}", p, i)?;
        }
        Ok(())
    }
}
