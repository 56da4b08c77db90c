//! Dense univariate polynomials over a ring, with the field-only extras
//! (division, gcd, squarefree part) used by the semisimple/nilpotent
//! splitting and minimal-polynomial computations.

use crate::field::{Field, GRat, Rat, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

/// Coefficients stored low degree first; no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F> {
    pub coeffs: Vec<F>,
}

impl<F: Ring> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: F) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::new(vec![F::zero(), F::one()])
    }

    /// x^k with coefficient c.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| *c == F::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        UniPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.clone() * F::from_i64(k as i64));
        }
        UniPoly::new(out)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl<F: Field> UniPoly<F> {
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// Euclidean division; panics if divisor is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc_inv = d.leading().unwrap().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c.clone();
            for j in 0..=dd {
                let t = rem[k - dd + j].clone() - c.clone() * d.coeff(j);
                rem[k - dd + j] = t;
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended Euclid: returns (g, u, v) monic g = gcd with u*self + v*other = g.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::constant(F::one());
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::constant(F::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc_inv = r0.leading().unwrap().inv();
        (
            r0.scale(&lc_inv),
            s0.scale(&lc_inv),
            t0.scale(&lc_inv),
        )
    }

    /// Radical of the polynomial: product of distinct irreducible factors.
    /// Characteristic zero only (uses gcd with the derivative).
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Polynomial composition reduced mod `m`: returns self(a) mod m.
    pub fn compose_mod(&self, a: &Self, m: &Self) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&UniPoly::constant(c.clone()));
            let (_, r) = acc.divrem(m);
            acc = r;
        }
        acc
    }
}

impl UniPoly<GRat> {
    /// All roots in Q(i) with multiplicities, sorted; None when some factor
    /// of degree > 1 stays irreducible over Q(i). Gaussian rational root
    /// search on the squarefree part: candidates are unit multiples of
    /// divisor quotients of the constant and leading coefficients.
    pub fn gaussian_roots(&self) -> Option<Vec<(GRat, usize)>> {
        assert!(!self.is_zero(), "root set of the zero polynomial");
        let mut out: Vec<(GRat, usize)> = Vec::new();
        let mut p = self.clone();
        let mut at_origin = 0usize;
        while p.degree().unwrap() > 0 && Ring::is_zero(&p.coeff(0)) {
            p = UniPoly::new(p.coeffs[1..].to_vec());
            at_origin += 1;
        }
        if at_origin > 0 {
            out.push((GRat::int(0), at_origin));
        }
        let deg = p.degree().unwrap();
        if deg == 0 {
            return Some(out);
        }
        let q = p.squarefree_part();
        let qdeg = q.degree().unwrap();
        let mut scale: BigInt = 1.into();
        for c in &q.coeffs {
            scale = scale.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let lift = |r: &Rat| (r * Rat::from(scale.clone())).to_integer();
        let zc: Vec<(BigInt, BigInt)> = q.coeffs.iter().map(|c| (lift(&c.re), lift(&c.im))).collect();
        let nums = gaussian_divisors(&zc[0]);
        let dens = gaussian_divisors(&zc[qdeg]);
        let units = [
            GRat::int(1),
            GRat::int(-1),
            GRat::i(),
            GRat::new(Ring::zero(), -rat_one()),
        ];
        // Scan divisor quotients by increasing norm so the (typically small)
        // roots are hit early. Candidates beyond the Cauchy bound
        // |r|^2 <= 2 (1 + max |c_i / c_d|^2) cannot be roots and are skipped
        // wholesale; a squarefree polynomial with qdeg distinct roots lets
        // the scan stop as soon as all of them are found.
        let gnorm = |d: &(BigInt, BigInt)| -> BigInt { &d.0 * &d.0 + &d.1 * &d.1 };
        let mut nums: Vec<((BigInt, BigInt), BigInt)> =
            nums.into_iter().map(|d| (d.clone(), gnorm(&d))).collect();
        let mut dens: Vec<((BigInt, BigInt), BigInt)> =
            dens.into_iter().map(|d| (d.clone(), gnorm(&d))).collect();
        nums.sort_by(|x, y| x.1.cmp(&y.1));
        dens.sort_by(|x, y| x.1.cmp(&y.1));
        let coeff_norm = |c: &GRat| -> Rat {
            c.re.clone() * c.re.clone() + c.im.clone() * c.im.clone()
        };
        let lead_norm = coeff_norm(&q.coeffs[qdeg]);
        let max_ratio = q.coeffs[..qdeg]
            .iter()
            .map(|c| coeff_norm(c) / lead_norm.clone())
            .max()
            .expect("positive degree");
        let bound: Rat = (max_ratio + rat_one()) * Rat::from(BigInt::from(2));
        let mut roots: Vec<GRat> = Vec::new();
        'scan: for (b, nb) in &dens {
            let den = GRat::new(Rat::from(b.0.clone()), Rat::from(b.1.clone()));
            for (a, na) in &nums {
                if Rat::new(na.clone(), nb.clone()) > bound {
                    break;
                }
                let num = GRat::new(Rat::from(a.0.clone()), Rat::from(a.1.clone()));
                let base = num.div(&den);
                for u in &units {
                    let cand = u.clone() * base.clone();
                    if Ring::is_zero(&q.eval(&cand)) && !roots.contains(&cand) {
                        roots.push(cand);
                        if roots.len() == qdeg {
                            break 'scan;
                        }
                    }
                }
            }
        }
        if roots.len() != qdeg {
            return None;
        }
        for r in roots {
            let lin = UniPoly::new(vec![-r.clone(), GRat::int(1)]);
            let mut mult = 0usize;
            loop {
                let (quo, rem) = p.divrem(&lin);
                if rem.is_zero() {
                    mult += 1;
                    p = quo;
                } else {
                    break;
                }
            }
            out.push((r, mult));
        }
        out.sort_by(|x, y| x.0.lex_cmp(&y.0));
        Some(out)
    }
}

fn rat_one() -> Rat {
    Ring::one()
}

/// All divisors of `z` in Z[i] up to unit multiples, via the Gaussian prime
/// factorization: the norm is factored over Z, each rational prime is lifted
/// (2 ramifies to 1+i, p = 3 mod 4 stays inert, p = 1 mod 4 splits through a
/// square root of -1 and a Euclidean gcd), the exponents are read off by
/// exact division, and the divisor list is the product expansion.
fn gaussian_divisors(z: &(BigInt, BigInt)) -> Vec<(BigInt, BigInt)> {
    let n: BigInt = &z.0 * &z.0 + &z.1 * &z.1;
    assert!(!n.is_zero(), "divisors of zero");

    let mut rem = z.clone();
    let mut prime_powers: Vec<((BigInt, BigInt), u32)> = Vec::new();
    for p in factorize(&n) {
        let lifts: Vec<(BigInt, BigInt)> = if p == BigInt::from(2) {
            vec![(BigInt::from(1), BigInt::from(1))]
        } else if (&p % BigInt::from(4)) == BigInt::from(3) {
            vec![(p.clone(), Zero::zero())]
        } else {
            let x = sqrt_minus_one_mod(&p);
            let pi = gauss_gcd((p.clone(), Zero::zero()), (x, 1.into()));
            let bar = (pi.0.clone(), -pi.1.clone());
            vec![pi, bar]
        };
        for pi in lifts {
            let mut e = 0u32;
            while let Some(q) = gauss_div_exact(&rem, &pi) {
                rem = q;
                e += 1;
            }
            if e > 0 {
                prime_powers.push((pi, e));
            }
        }
    }
    debug_assert!(&rem.0 * &rem.0 + &rem.1 * &rem.1 == 1.into());

    let mut divs: Vec<(BigInt, BigInt)> = vec![(1.into(), Zero::zero())];
    for (pi, e) in prime_powers {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = gauss_mul(&acc, &pi);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

fn gauss_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gauss_div_exact(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> Option<(BigInt, BigInt)> {
    let nb: BigInt = &b.0 * &b.0 + &b.1 * &b.1;
    let num = gauss_mul(a, &(b.0.clone(), -b.1.clone()));
    if (&num.0 % &nb).is_zero() && (&num.1 % &nb).is_zero() {
        Some((&num.0 / &nb, &num.1 / &nb))
    } else {
        None
    }
}

/// Euclidean gcd in Z[i] with rounded quotients.
fn gauss_gcd(mut a: (BigInt, BigInt), mut b: (BigInt, BigInt)) -> (BigInt, BigInt) {
    let round_div = |num: &BigInt, den: &BigInt| -> BigInt {
        // Nearest integer to num/den for den > 0.
        let twice: BigInt = num * 2 + den;
        twice.div_floor(&(den * 2))
    };
    while !(b.0.is_zero() && b.1.is_zero()) {
        let nb: BigInt = &b.0 * &b.0 + &b.1 * &b.1;
        let num = gauss_mul(&a, &(b.0.clone(), -b.1.clone()));
        let q = (round_div(&num.0, &nb), round_div(&num.1, &nb));
        let r = {
            let qb = gauss_mul(&q, &b);
            (&a.0 - &qb.0, &a.1 - &qb.1)
        };
        a = b;
        b = r;
    }
    a
}

/// A square root of -1 modulo a prime p = 1 mod 4: b = a^((p-1)/4) works
/// whenever a is a quadratic nonresidue, so scan small candidates.
fn sqrt_minus_one_mod(p: &BigInt) -> BigInt {
    let exp = (p - BigInt::from(1)) / BigInt::from(4);
    let minus_one = p - BigInt::from(1);
    let mut a = BigInt::from(2);
    loop {
        let b = a.modpow(&exp, p);
        if b.modpow(&BigInt::from(2), p) == minus_one {
            return b;
        }
        a += 1;
    }
}

/// Prime factors of n > 0 (without multiplicities): trial division by small
/// primes, then Miller-Rabin plus Brent's variant of Pollard rho.
fn factorize(n: &BigInt) -> Vec<BigInt> {
    let mut primes: Vec<BigInt> = Vec::new();
    let mut rest = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= rest && d < BigInt::from(4096) {
        if (&rest % &d).is_zero() {
            primes.push(d.clone());
            while (&rest % &d).is_zero() {
                rest = &rest / &d;
            }
        }
        d += 1;
    }
    if rest > 1.into() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if is_probable_prime(&m) {
                primes.push(m);
                continue;
            }
            let f = pollard_rho(&m);
            stack.push(&m / &f);
            stack.push(f);
        }
    }
    primes.sort();
    primes.dedup();
    primes
}

fn is_probable_prime(n: &BigInt) -> bool {
    if *n < 2.into() {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::from(1);
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut r = 0u32;
    while (&d % BigInt::from(2)).is_zero() {
        d /= 2;
        r += 1;
    }
    // Deterministic for n < 3.3 * 10^24 with these witnesses; far below the
    // Miller-Rabin error floor beyond that.
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        if (n % &a).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One nontrivial factor of an odd composite n (Brent's cycle variant).
fn pollard_rho(n: &BigInt) -> BigInt {
    let one = BigInt::from(1);
    let mut c = BigInt::from(1);
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut g = one.clone();
        while g == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x >= y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            g = diff.gcd(n);
        }
        if g != one && &g != n {
            return g;
        }
        c += 1;
    }
}

impl<F: Ring> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*x", c)?,
                _ => write!(f, "({})*x^{}", c, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_int, Rat};

    fn p(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[2, 0, -3, 1, 5]); // 5x^4 + x^3 - 3x^2 + 2
        let d = p(&[1, 1, 1]); // x^2 + x + 1
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x+3) share exactly (x-1)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (x-1)^2 (x+2) -> (x-1)(x+2) = x^2 + x - 2
        let a = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        assert_eq!(a.squarefree_part(), p(&[-2, 1, 1]));
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gaussian_roots_with_multiplicity() {
        let lin = |re: i64, im: i64| {
            UniPoly::new(vec![
                -GRat::new(rat_int(re), rat_int(im)),
                GRat::int(1),
            ])
        };
        // x^2 (x - 2i)^2 (x + 3/2) (x - (1+i))
        let poly = UniPoly::<GRat>::monomial(GRat::int(1), 2)
            .mul(&lin(0, 2))
            .mul(&lin(0, 2))
            .mul(&UniPoly::new(vec![GRat::frac(3, 2), GRat::int(1)]))
            .mul(&lin(1, 1));
        let mut roots = poly.gaussian_roots().expect("splits over Q(i)");
        roots.sort_by(|x, y| x.0.lex_cmp(&y.0));
        let expect = vec![
            (GRat::new(rat_int(-3) / rat_int(2), rat_int(0)), 1),
            (GRat::int(0), 2),
            (GRat::new(rat_int(0), rat_int(2)), 2),
            (GRat::new(rat_int(1), rat_int(1)), 1),
        ];
        assert_eq!(roots, expect);
        // x^2 - 2 has no Gaussian rational roots
        let nonsplit = UniPoly::new(vec![GRat::int(-2), GRat::int(0), GRat::int(1)]);
        assert!(nonsplit.gaussian_roots().is_none());
        // x^2 + 1 splits with roots +-i
        let cyc = UniPoly::new(vec![GRat::int(1), GRat::int(0), GRat::int(1)]);
        let found = cyc.gaussian_roots().unwrap();
        assert_eq!(found.len(), 2);
        assert!(found.iter().all(|(_, m)| *m == 1));
    }
}
