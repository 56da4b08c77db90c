//! Sparse multivariate polynomials with named variables, plus a field of
//! fractions used when matrix entries must stay symbolic (families of
//! centralizers, limits in a deformation parameter).

use crate::field::{rat_int, Field, Rat, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Exponent vectors are keyed per the shared `vars` list; the `BTreeMap`
/// ordering on `Vec<u32>` is lexicographic with the first variable most
/// significant, which is a valid monomial order for exact division.
#[derive(Clone, Debug)]
pub struct MPoly<F> {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u32>, F>,
}

fn unified_vars(a: &Arc<Vec<String>>, b: &Arc<Vec<String>>) -> Arc<Vec<String>> {
    if Arc::ptr_eq(a, b) || a == b || b.is_empty() {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    let mut v = (**a).clone();
    for name in b.iter() {
        if !v.contains(name) {
            v.push(name.clone());
        }
    }
    Arc::new(v)
}

impl<F: Field> MPoly<F> {
    pub fn zero() -> Self {
        MPoly {
            vars: Arc::new(vec![]),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        MPoly {
            vars: Arc::new(vec![]),
            terms,
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The variable `name` from the shared context `vars`.
    pub fn var(vars: &Arc<Vec<String>>, name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut exps = vec![0u32; vars.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, F::one());
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn monomial_in(vars: &Arc<Vec<String>>, exps: Vec<u32>, c: F) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<F> {
        if self.terms.is_empty() {
            return Some(F::zero());
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            None => 0,
            Some(idx) => self.terms.keys().map(|e| e[idx]).max().unwrap_or(0),
        }
    }

    /// Re-express over a variable list that contains all current variables.
    pub fn remap(&self, vars: &Arc<Vec<String>>) -> Self {
        if *self.vars == **vars {
            let mut out = self.clone();
            out.vars = vars.clone();
            return out;
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .expect("remap target must contain all variables")
            })
            .collect();
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let mut new_exps = vec![0u32; vars.len()];
            for (i, &e) in exps.iter().enumerate() {
                new_exps[map[i]] = e;
            }
            terms.insert(new_exps, c.clone());
        }
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn align(a: &Self, b: &Self) -> (Self, Self) {
        let vars = unified_vars(&a.vars, &b.vars);
        (a.remap(&vars), b.remap(&vars))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.clone(), a.clone() * c.clone()))
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn partial(&self, name: &str) -> Self {
        let idx = match self.vars.iter().position(|v| v == name) {
            None => return MPoly::zero(),
            Some(i) => i,
        };
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            if exps[idx] == 0 {
                continue;
            }
            let mut e = exps.clone();
            let k = e[idx];
            e[idx] -= 1;
            let coeff = c.clone() * F::from_i64(k as i64);
            if !coeff.is_zero() {
                terms.insert(e, coeff);
            }
        }
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Coefficient of `name^k`, with that variable's exponent zeroed out.
    pub fn coeff_in(&self, name: &str, k: u32) -> Self {
        let idx = match self.vars.iter().position(|v| v == name) {
            None => {
                return if k == 0 {
                    self.clone()
                } else {
                    MPoly {
                        vars: self.vars.clone(),
                        terms: BTreeMap::new(),
                    }
                }
            }
            Some(i) => i,
        };
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            if exps[idx] == k {
                let mut e = exps.clone();
                e[idx] = 0;
                terms.insert(e, c.clone());
            }
        }
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Substitute a polynomial for one variable (Horner in that variable).
    pub fn subst(&self, name: &str, value: &Self) -> Self {
        if self.vars.iter().all(|v| v != name) {
            return self.clone();
        }
        let deg = self.degree_in(name);
        let mut acc = self.coeff_in(name, deg);
        for k in (0..deg).rev() {
            acc = acc * value.clone() + self.coeff_in(name, k);
        }
        acc
    }

    /// Full evaluation; every variable that actually occurs must be assigned.
    pub fn eval(&self, values: &BTreeMap<String, F>) -> F {
        let mut acc = F::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values
                    .get(&self.vars[i])
                    .unwrap_or_else(|| panic!("no value for variable {}", self.vars[i]));
                for _ in 0..e {
                    term = term * v.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Keep only terms whose total degree in the listed variables is <= bound
    /// (the quotient by the ideal of degree bound+1 products of them).
    pub fn truncate_above(&self, names: &[&str], bound: u32) -> Self {
        let idxs: Vec<usize> = names
            .iter()
            .filter_map(|n| self.vars.iter().position(|v| v == n))
            .collect();
        let terms = self
            .terms
            .iter()
            .filter(|(exps, _)| idxs.iter().map(|&i| exps[i]).sum::<u32>() <= bound)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &F)> {
        self.terms.iter().next_back()
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let g = f(c);
                if g.is_zero() {
                    None
                } else {
                    Some((e.clone(), g))
                }
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Exact multivariate division: Some(q) with self = q * d, else None.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (mut rem, d) = Self::align(self, d);
        let vars = rem.vars.clone();
        let (d_exps, d_lc) = {
            let (e, c) = d.leading().unwrap();
            (e.clone(), c.clone())
        };
        let mut quot: BTreeMap<Vec<u32>, F> = BTreeMap::new();
        while !rem.is_zero() {
            let (r_exps, r_lc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            let mut q_exps = vec![0u32; r_exps.len()];
            for i in 0..r_exps.len() {
                if r_exps[i] < d_exps[i] {
                    return None;
                }
                q_exps[i] = r_exps[i] - d_exps[i];
            }
            let q_c = r_lc.div(&d_lc);
            let q_term = MPoly::monomial_in(&vars, q_exps.clone(), q_c.clone());
            rem = rem - q_term * d.clone();
            quot.insert(q_exps, q_c);
        }
        Some(MPoly { vars, terms: quot })
    }
}

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::align(self, other);
        a.terms == b.terms
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = Self::align(&self, &rhs);
        let mut terms = a.terms;
        for (e, c) in b.terms {
            let entry = terms.entry(e.clone()).or_insert_with(F::zero);
            *entry = entry.clone() + c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        MPoly {
            vars: a.vars,
            terms,
        }
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        MPoly {
            vars: self.vars,
            terms,
        }
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = Self::align(&self, &rhs);
        let mut terms: BTreeMap<Vec<u32>, F> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let c = ca.clone() * cb.clone();
                let entry = terms.entry(e.clone()).or_insert_with(F::zero);
                *entry = entry.clone() + c;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        MPoly {
            vars: a.vars,
            terms,
        }
    }
}

impl<F: Field> Ring for MPoly<F> {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        MPoly::constant(F::from_i64(v))
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact_poly(d)
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mon: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            if mon.is_empty() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*{}", c, mon.join("*"))?;
            }
        }
        Ok(())
    }
}

impl MPoly<Rat> {
    /// gcd of all coefficients (as a positive rational), zero for the zero
    /// polynomial; dividing by it leaves coprime integer coefficients.
    pub fn rat_content(&self) -> Rat {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return rat_int(0);
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Smallest exponent of each variable over all terms (zero poly: zeros).
    pub fn monomial_content(&self) -> Vec<u32> {
        let n = self.vars.len();
        let mut mins = vec![u32::MAX; n];
        for exps in self.terms.keys() {
            for i in 0..n {
                mins[i] = mins[i].min(exps[i]);
            }
        }
        mins.iter()
            .map(|&m| if m == u32::MAX { 0 } else { m })
            .collect()
    }

    fn shift_down(&self, shift: &[u32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let ne: Vec<u32> = e.iter().zip(shift.iter()).map(|(a, b)| a - b).collect();
                (ne, c.clone())
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

/// Rational function num/den over the rationals, simplified only by content
/// extraction and exact-division tests; equality is by cross-multiplication,
/// so an uncancelled common factor is harmless.
#[derive(Clone, Debug)]
pub struct SymScalar {
    pub num: MPoly<Rat>,
    pub den: MPoly<Rat>,
}

impl SymScalar {
    pub fn from_poly(num: MPoly<Rat>) -> Self {
        SymScalar {
            num,
            den: MPoly::one(),
        }
    }

    pub fn var(vars: &Arc<Vec<String>>, name: &str) -> Self {
        Self::from_poly(MPoly::var(vars, name))
    }

    pub fn new(num: MPoly<Rat>, den: MPoly<Rat>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        SymScalar { num, den }.simplified()
    }

    fn simplified(self) -> Self {
        if self.num.is_zero() {
            return SymScalar {
                num: MPoly::zero(),
                den: MPoly::one(),
            };
        }
        let (num, den) = MPoly::align(&self.num, &self.den);
        // Cancel the common monomial factor.
        let cn = num.monomial_content();
        let cd = den.monomial_content();
        let common: Vec<u32> = cn.iter().zip(cd.iter()).map(|(a, b)| *a.min(b)).collect();
        let (num, den) = if common.iter().any(|&e| e > 0) {
            (num.shift_down(&common), den.shift_down(&common))
        } else {
            (num, den)
        };
        if let Some(q) = num.div_exact_poly(&den) {
            return SymScalar {
                num: q,
                den: MPoly::one(),
            };
        }
        if let Some(q) = den.div_exact_poly(&num) {
            return SymScalar {
                num: MPoly::one(),
                den: q,
            }
            .normalize_den();
        }
        SymScalar { num, den }.normalize_den()
    }

    /// Scale so the denominator has coprime integer coefficients with a
    /// positive leading coefficient.
    fn normalize_den(self) -> Self {
        let mut num = self.num;
        let mut den = self.den;
        let dc = den.rat_content();
        if dc != rat_int(1) && !Ring::is_zero(&dc) {
            let inv = rat_int(1).div(&dc);
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if let Some((_, lc)) = den.leading() {
            if *lc < rat_int(0) {
                num = -num;
                den = -den;
            }
        }
        SymScalar { num, den }
    }

    /// Evaluate at a point where the (reduced) denominator does not vanish.
    pub fn eval(&self, values: &BTreeMap<String, Rat>) -> Option<Rat> {
        let d = self.den.eval(values);
        if Ring::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(values).div(&d))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        if Ring::is_zero(&d) {
            None
        } else {
            Some(n.div(&d))
        }
    }

    fn inv_fraction(self) -> Self {
        assert!(!self.num.is_zero(), "inverting zero");
        SymScalar {
            num: self.den,
            den: self.num,
        }
        .normalize_den()
    }
}

impl PartialEq for SymScalar {
    fn eq(&self, other: &Self) -> bool {
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl Add for SymScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        SymScalar::new(
            self.num.clone() * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for SymScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for SymScalar {
    type Output = Self;
    fn neg(self) -> Self {
        SymScalar {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for SymScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        SymScalar::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Ring for SymScalar {
    fn zero() -> Self {
        SymScalar::from_poly(MPoly::zero())
    }
    fn one() -> Self {
        SymScalar::from_poly(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        SymScalar::from_poly(MPoly::constant(Rat::from_i64(v)))
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self.clone() * d.clone().inv_fraction())
        }
    }
}

impl Field for SymScalar {
    fn inv(&self) -> Self {
        self.clone().inv_fraction()
    }
    fn complexity(&self) -> usize {
        self.num.terms.len()
            + self.den.terms.len()
            + self.num.total_degree().unwrap_or(0) as usize
            + self.den.total_degree().unwrap_or(0) as usize
    }
}

impl fmt::Display for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map_or(false, |c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn ctx(names: &[&str]) -> Arc<Vec<String>> {
        Arc::new(names.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn arithmetic_and_partials() {
        let vars = ctx(&["x", "y"]);
        let x = MPoly::<Rat>::var(&vars, "x");
        let y = MPoly::<Rat>::var(&vars, "y");
        // (x + y)^2 = x^2 + 2xy + y^2
        let sq = (x.clone() + y.clone()) * (x.clone() + y.clone());
        let expect = x.clone() * x.clone()
            + (x.clone() * y.clone()).scale(&rat(2, 1))
            + y.clone() * y.clone();
        assert_eq!(sq, expect);
        assert_eq!(sq.partial("x"), (x.clone() + y.clone()).scale(&rat(2, 1)));
        assert_eq!(sq.degree_in("y"), 2);
    }

    #[test]
    fn exact_division_and_failure() {
        let vars = ctx(&["x", "y"]);
        let x = MPoly::<Rat>::var(&vars, "x");
        let y = MPoly::<Rat>::var(&vars, "y");
        let a = x.clone() * x.clone() - y.clone() * y.clone();
        let d = x.clone() - y.clone();
        let q = a.div_exact_poly(&d).unwrap();
        assert_eq!(q, x.clone() + y.clone());
        assert!(x.div_exact_poly(&y).is_none());
        assert!((x.clone() + MPoly::one()).div_exact_poly(&x).is_none());
    }

    #[test]
    fn substitution_is_ring_hom() {
        let vars = ctx(&["x", "y"]);
        let x = MPoly::<Rat>::var(&vars, "x");
        let y = MPoly::<Rat>::var(&vars, "y");
        let p = x.clone() * x.clone() + y.clone().scale(&rat(3, 1));
        // x -> y + 1
        let sub = p.subst("x", &(y.clone() + MPoly::one()));
        let expect = (y.clone() + MPoly::one()) * (y.clone() + MPoly::one())
            + y.clone().scale(&rat(3, 1));
        assert_eq!(sub, expect);
    }

    #[test]
    fn truncation_drops_higher_order() {
        let vars = ctx(&["t1", "t2", "z"]);
        let t1 = MPoly::<Rat>::var(&vars, "t1");
        let t2 = MPoly::<Rat>::var(&vars, "t2");
        let z = MPoly::<Rat>::var(&vars, "z");
        let p = MPoly::one()
            + t1.clone() * z.clone()
            + t1.clone() * t2.clone()
            + t2.clone() * t2.clone() * z.clone();
        let tr = p.truncate_above(&["t1", "t2"], 1);
        assert_eq!(tr, MPoly::one() + t1 * z);
    }

    #[test]
    fn fraction_simplification_and_equality() {
        let vars = ctx(&["x", "y"]);
        let x = MPoly::<Rat>::var(&vars, "x");
        let y = MPoly::<Rat>::var(&vars, "y");
        // (x^2 y) / (x y^2) reduces to x / y by monomial content.
        let a = SymScalar::new(
            x.clone() * x.clone() * y.clone(),
            x.clone() * y.clone() * y.clone(),
        );
        let b = SymScalar::new(x.clone(), y.clone());
        assert_eq!(a, b);
        assert_eq!(a.num, x.clone());
        assert_eq!(a.den, y.clone());
        // (x^2 - y^2)/(x - y) collapses to a polynomial.
        let c = SymScalar::new(
            x.clone() * x.clone() - y.clone() * y.clone(),
            x.clone() - y.clone(),
        );
        assert_eq!(c, SymScalar::from_poly(x.clone() + y.clone()));
        // Field axioms on a nontrivial element.
        let u = SymScalar::new(x.clone() + y.clone(), x.clone() - y.clone());
        assert_eq!(u.clone() * u.inv(), SymScalar::one());
        let mut at = BTreeMap::new();
        at.insert("x".to_string(), rat(3, 1));
        at.insert("y".to_string(), rat(1, 1));
        assert_eq!(u.eval(&at), Some(rat(2, 1)));
    }
}
