//! Dense matrices over an arbitrary ring or field, with the exact linear
//! algebra the rest of the crate is built on: division-free characteristic
//! polynomials (Berkowitz), fraction-free elimination (Bareiss) over rings,
//! reduced row echelon form over fields, minimal polynomials, and the
//! semisimple/nilpotent decomposition.

use crate::field::{Field, Ring};
use crate::mpoly::MPoly;
use crate::poly::UniPoly;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrices do not commute")]
    NonCommuting,
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F> {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<F>,
}

impl<F: Ring> Mat<F> {
    pub fn new(nrows: usize, ncols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), nrows * ncols);
        Mat { nrows, ncols, data }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Mat {
            nrows,
            ncols,
            data: vec![F::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        Mat { nrows, ncols, data }
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Mat { nrows, ncols, data }
    }

    /// Integer matrix literal, handy in tests and fixed constructions.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Row-major flattening, also used as vectorization.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        (0..self.ncols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.nrows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|e| e.clone() * c.clone())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.ncols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.nrows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn tr(&self) -> F {
        assert!(self.is_square());
        let mut acc = F::zero();
        for i in 0..self.nrows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }

    pub fn hstack(a: &Self, b: &Self) -> Self {
        assert_eq!(a.nrows, b.nrows);
        Mat::from_fn(a.nrows, a.ncols + b.ncols, |i, j| {
            if j < a.ncols {
                a[(i, j)].clone()
            } else {
                b[(i, j - a.ncols)].clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Evaluate a univariate polynomial at this matrix (Horner).
    pub fn poly_apply(&self, p: &UniPoly<F>) -> Self {
        assert!(self.is_square());
        let n = self.nrows;
        let mut acc = Mat::zeros(n, n);
        for c in p.coeffs.iter().rev() {
            acc = &(&acc * self) + &Mat::identity(n).scale(c);
        }
        acc
    }

    /// Smallest k <= n with A^k = 0, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square());
        let mut p = Self::identity(self.nrows);
        for k in 0..=self.nrows {
            if p.is_zero() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// Characteristic polynomial det(xI - A) by the Berkowitz algorithm:
    /// division-free, so valid over any commutative ring. Coefficients are
    /// built per leading principal block by a Toeplitz convolution.
    pub fn charpoly(&self) -> UniPoly<F> {
        assert!(self.is_square());
        let n = self.nrows;
        if n == 0 {
            return UniPoly::constant(F::one());
        }
        // Descending coefficients of the charpoly of the leading r x r block.
        let mut p: Vec<F> = vec![F::one(), -self[(0, 0)].clone()];
        for r in 2..=n {
            let mut v: Vec<F> = Vec::with_capacity(r + 1);
            v.push(F::one());
            v.push(-self[(r - 1, r - 1)].clone());
            let mut w: Vec<F> = (0..r - 1).map(|i| self[(i, r - 1)].clone()).collect();
            for k in 2..=r {
                let mut dot = F::zero();
                for j in 0..r - 1 {
                    dot = dot + self[(r - 1, j)].clone() * w[j].clone();
                }
                v.push(-dot);
                if k < r {
                    let mut nw = vec![F::zero(); r - 1];
                    for (i, slot) in nw.iter_mut().enumerate() {
                        let mut acc = F::zero();
                        for j in 0..r - 1 {
                            acc = acc + self[(i, j)].clone() * w[j].clone();
                        }
                        *slot = acc;
                    }
                    w = nw;
                }
            }
            let mut np = vec![F::zero(); r + 1];
            for (i, slot) in np.iter_mut().enumerate() {
                let mut acc = F::zero();
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    if i - j <= r {
                        acc = acc + v[i - j].clone() * pj.clone();
                    }
                }
                *slot = acc;
            }
            p = np;
        }
        p.reverse();
        UniPoly::new(p)
    }

    /// Rank by fraction-free (Bareiss) elimination; every division is exact
    /// in the ring, so this works for polynomial entries.
    pub fn rank_bareiss(&self) -> usize {
        self.bareiss().0
    }

    /// Determinant by Bareiss elimination.
    pub fn det_bareiss(&self) -> F {
        assert!(self.is_square());
        let (rank, prev, sign) = self.bareiss();
        if rank < self.nrows {
            return F::zero();
        }
        if sign < 0 {
            -prev
        } else {
            prev
        }
    }

    fn bareiss(&self) -> (usize, F, i32) {
        let mut m = self.clone();
        let mut prev = F::one();
        let mut sign = 1i32;
        let mut r = 0usize;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let pivot_row = (r..m.nrows).find(|&i| !m[(i, c)].is_zero());
            let Some(ip) = pivot_row else { continue };
            if ip != r {
                m.swap_rows(r, ip);
                sign = -sign;
            }
            for i in r + 1..m.nrows {
                for j in c + 1..m.ncols {
                    let t = m[(r, c)].clone() * m[(i, j)].clone()
                        - m[(i, c)].clone() * m[(r, j)].clone();
                    m[(i, j)] = t
                        .div_exact(&prev)
                        .expect("fraction-free elimination divides exactly");
                }
                m[(i, c)] = F::zero();
            }
            prev = m[(r, c)].clone();
            r += 1;
        }
        (r, prev, sign)
    }
}

impl<F: Field> Mat<F> {
    /// Reduced row echelon form. Among candidate pivots in a column the one
    /// with the lowest `complexity` wins, which keeps symbolic entries small.
    pub fn rref(&self) -> (Self, Vec<(usize, usize)>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let mut best: Option<(usize, usize)> = None;
            for i in r..m.nrows {
                if m[(i, c)].is_unit() {
                    let score = m[(i, c)].complexity();
                    if best.map_or(true, |(s, _)| score < s) {
                        best = Some((score, i));
                    }
                }
            }
            let Some((_, ip)) = best else { continue };
            m.swap_rows(r, ip);
            let inv = m[(r, c)].inv();
            for j in c..m.ncols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.nrows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.ncols {
                    let t = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = t;
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for j in 0..self.ncols {
            if pivot_cols.contains(&j) {
                continue;
            }
            let mut v = vec![F::zero(); self.ncols];
            v[j] = F::one();
            for &(r, c) in &pivots {
                v[c] = -m[(r, j)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b, or None when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.nrows);
        let rhs = Mat::from_fn(self.nrows, 1, |i, _| b[i].clone());
        let aug = Mat::hstack(self, &rhs);
        let (m, pivots) = aug.rref();
        if pivots.iter().any(|&(_, c)| c == self.ncols) {
            return None;
        }
        let mut x = vec![F::zero(); self.ncols];
        for &(r, c) in &pivots {
            x[c] = m[(r, self.ncols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.nrows;
        let aug = Mat::hstack(self, &Mat::identity(n));
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&(_, c)| c >= n) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| m[(i, n + j)].clone()))
    }

    /// Monic minimal polynomial: the first power of A that is a linear
    /// combination of the lower powers (as vectorized matrices).
    pub fn minimal_poly(&self) -> UniPoly<F> {
        assert!(self.is_square());
        let n = self.nrows;
        if n == 0 {
            return UniPoly::constant(F::one());
        }
        let mut pows: Vec<Mat<F>> = vec![Mat::identity(n)];
        let mut cur = self.clone();
        loop {
            let d = pows.len();
            let m = Mat::from_fn(n * n, d, |idx, k| pows[k].data[idx].clone());
            if let Some(c) = m.solve(cur.entries()) {
                let mut v: Vec<F> = c.into_iter().map(|x| -x).collect();
                v.push(F::one());
                return UniPoly::new(v);
            }
            pows.push(cur.clone());
            cur = &cur * self;
        }
    }

    /// Semisimple plus nilpotent decomposition A = S + N with [S, N] = 0 and
    /// S annihilated by the squarefree part q of the characteristic
    /// polynomial. Newton iteration S <- S - q(S) q'(S)^{-1} starting at A;
    /// q'(S) stays invertible because q is squarefree.
    /// exp(A) as a finite sum; None unless A is nilpotent.
    pub fn exp_nilpotent(&self) -> Option<Self> {
        let k = self.nilpotency_index()?;
        let n = self.nrows;
        let mut acc = Mat::identity(n);
        let mut term = Mat::identity(n);
        let mut fact = F::one();
        for j in 1..k {
            term = &term * self;
            fact = fact * F::from_i64(j as i64);
            acc = &acc + &term.scale(&fact.inv());
        }
        Some(acc)
    }

    pub fn jordan_chevalley(&self) -> (Self, Self, UniPoly<F>) {
        assert!(self.is_square());
        let n = self.nrows;
        let chi = self.charpoly();
        let q = chi.squarefree_part();
        let dq = q.derivative();
        let mut s = self.clone();
        let mut iters = 0usize;
        let max_iters = {
            let mut k = 0;
            while (1usize << k) < n.max(1) {
                k += 1;
            }
            k + 1
        };
        loop {
            let qs = s.poly_apply(&q);
            if qs.is_zero() {
                break;
            }
            assert!(iters < max_iters + 1, "Newton iteration failed to settle");
            let dqs = s.poly_apply(&dq);
            let inv = dqs
                .inverse()
                .expect("derivative of squarefree part is invertible along the iteration");
            s = &s - &(&qs * &inv);
            iters += 1;
        }
        let nil = self - &s;
        debug_assert!(Mat::commutator(&s, &nil).is_zero());
        debug_assert!(nil.nilpotency_index().is_some());
        (s, nil, q)
    }
}

/// Evaluate a polynomial in several variables at square matrices, one per
/// variable. The matrices must pairwise commute for this to be well defined.
pub fn eval_mpoly_at_matrices<F: Field>(
    p: &MPoly<F>,
    assign: &[(&str, &Mat<F>)],
) -> Result<Mat<F>, MatrixError> {
    let n = match assign.first() {
        Some((_, m)) => m.nrows,
        None => {
            return Err(MatrixError::Shape("no matrices supplied".into()));
        }
    };
    for (_, m) in assign {
        if !m.is_square() || m.nrows != n {
            return Err(MatrixError::Shape(
                "all matrices must be square of equal size".into(),
            ));
        }
    }
    for i in 0..assign.len() {
        for j in i + 1..assign.len() {
            if !Mat::commutator(assign[i].1, assign[j].1).is_zero() {
                return Err(MatrixError::NonCommuting);
            }
        }
    }
    let vars = p.vars().clone();
    let mats: Vec<Option<&Mat<F>>> = vars
        .iter()
        .map(|v| {
            assign
                .iter()
                .find(|(name, _)| name == v)
                .map(|(_, m)| *m)
        })
        .collect();
    let mut acc = Mat::zeros(n, n);
    for (exps, c) in p.terms() {
        let mut term = Mat::identity(n).scale(c);
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let m = mats[i].ok_or_else(|| {
                MatrixError::Shape(format!("no matrix assigned to variable {}", vars[i]))
            })?;
            for _ in 0..e {
                term = &term * m;
            }
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.ncols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.ncols + j]
    }
}

impl<F: Ring> Add for &Mat<F> {
    type Output = Mat<F>;
    fn add(self, rhs: Self) -> Mat<F> {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        Mat::from_fn(self.nrows, self.ncols, |i, j| {
            self[(i, j)].clone() + rhs[(i, j)].clone()
        })
    }
}

impl<F: Ring> Sub for &Mat<F> {
    type Output = Mat<F>;
    fn sub(self, rhs: Self) -> Mat<F> {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        Mat::from_fn(self.nrows, self.ncols, |i, j| {
            self[(i, j)].clone() - rhs[(i, j)].clone()
        })
    }
}

impl<F: Ring> Neg for &Mat<F> {
    type Output = Mat<F>;
    fn neg(self) -> Mat<F> {
        self.map(|e| -e.clone())
    }
}

impl<F: Ring> Mul for &Mat<F> {
    type Output = Mat<F>;
    fn mul(self, rhs: Self) -> Mat<F> {
        assert_eq!(self.ncols, rhs.nrows, "inner dimensions must agree");
        Mat::from_fn(self.nrows, rhs.ncols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.ncols {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }
}

impl<F: Ring> fmt::Display for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            write!(f, "[")?;
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int, GRat, Rat};
    use std::sync::Arc;

    fn naive_det(m: &Mat<Rat>) -> Rat {
        let n = m.nrows;
        if n == 0 {
            return rat_int(1);
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = rat_int(0);
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = naive_det(&m.submatrix(&rows, &cols));
            let term = m[(0, j)].clone() * minor;
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // Companion of x^3 + 2x + 5: subdiagonal ones, last column -(5, 2, 0).
        let c: Mat<Rat> = Mat::from_i64_rows(&[&[0, 0, -5], &[1, 0, -2], &[0, 1, 0]]);
        let chi = c.charpoly();
        let expect = UniPoly::new(vec![rat_int(5), rat_int(2), rat_int(0), rat_int(1)]);
        assert_eq!(chi, expect);
    }

    #[test]
    fn charpoly_constant_term_is_det_up_to_sign() {
        let m: Mat<Rat> = Mat::from_i64_rows(&[
            &[2, -1, 0, 3],
            &[1, 1, 4, -2],
            &[0, 5, -1, 1],
            &[3, 0, 2, 2],
        ]);
        let chi = m.charpoly();
        let det = naive_det(&m);
        // det(xI - A) at x = 0 is (-1)^n det A
        assert_eq!(chi.coeff(0), det.clone());
        assert_eq!(m.det_bareiss(), det);
    }

    #[test]
    fn cayley_hamilton_over_gaussian_rationals() {
        let i = GRat::i();
        let one = GRat::int(1);
        let m = Mat::from_rows(vec![
            vec![i.clone(), one.clone(), GRat::int(0)],
            vec![GRat::int(2), -i.clone(), one.clone()],
            vec![one.clone(), GRat::int(0), i.clone() * GRat::int(3)],
        ]);
        let chi = m.charpoly();
        assert!(m.poly_apply(&chi).is_zero());
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m: Mat<Rat> = Mat::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], vec![rat_int(-1), rat_int(1)]);
        assert!(m.mul_vec(&ker[0]).iter().all(|e| e.is_zero()));
    }

    #[test]
    fn inverse_and_solve() {
        let m: Mat<Rat> = Mat::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Mat::from_i64_rows(&[&[1, -1], &[-1, 2]]));
        let x = m.solve(&[rat_int(3), rat_int(2)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(1)]);
        let sing: Mat<Rat> = Mat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[rat_int(1), rat_int(0)]).is_none());
    }

    #[test]
    fn bareiss_handles_polynomial_entries() {
        let vars = Arc::new(vec!["x".to_string(), "y".to_string()]);
        let x = MPoly::<Rat>::var(&vars, "x");
        let y = MPoly::<Rat>::var(&vars, "y");
        let m = Mat::from_rows(vec![
            vec![x.clone(), y.clone()],
            vec![y.clone(), x.clone()],
        ]);
        assert_eq!(m.det_bareiss(), x.clone() * x.clone() - y.clone() * y.clone());
        assert_eq!(m.rank_bareiss(), 2);
        let rk1 = Mat::from_rows(vec![
            vec![x.clone(), y.clone()],
            vec![x.clone() * x.clone(), x.clone() * y.clone()],
        ]);
        assert_eq!(rk1.rank_bareiss(), 1);
    }

    #[test]
    fn minimal_poly_of_diagonalizable_matrix() {
        let m: Mat<Rat> = Mat::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        // (x - 1)(x - 2) = x^2 - 3x + 2
        assert_eq!(
            m.minimal_poly(),
            UniPoly::new(vec![rat_int(2), rat_int(-3), rat_int(1)])
        );
        let nil: Mat<Rat> = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(nil.minimal_poly(), UniPoly::new(vec![rat_int(0), rat_int(0), rat_int(1)]));
    }

    #[test]
    fn jordan_chevalley_splits_a_jordan_block() {
        let m: Mat<Rat> = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let (s, n, q) = m.jordan_chevalley();
        assert_eq!(s, Mat::identity(2));
        assert_eq!(n, Mat::from_i64_rows(&[&[0, 1], &[0, 0]]));
        assert_eq!(q, UniPoly::new(vec![rat_int(-1), rat_int(1)]));
        assert!(Mat::commutator(&s, &n).is_zero());

        // A matrix with irrational eigenvalues but squarefree charpoly is
        // already semisimple over the algebraic closure.
        let r: Mat<Rat> = Mat::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let (s, n, _) = r.jordan_chevalley();
        assert_eq!(s, r);
        assert!(n.is_zero());

        // Mixed case: eigenvalue 2 with a rank-one nilpotent tail.
        let m: Mat<Rat> = Mat::from_i64_rows(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
        let (s, n, q) = m.jordan_chevalley();
        assert_eq!(s, Mat::from_i64_rows(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]));
        assert_eq!(n.nilpotency_index(), Some(2));
        assert!(s.poly_apply(&q).is_zero());
    }

    #[test]
    fn mpoly_evaluation_at_matrices_requires_commuting() {
        let vars = Arc::new(vec!["x".to_string(), "y".to_string()]);
        let x = MPoly::<Rat>::var(&vars, "x");
        let y = MPoly::<Rat>::var(&vars, "y");
        let p = x.clone() * y.clone() - y.clone() * x.clone() + x.clone().scale(&rat(2, 1));

        let a: Mat<Rat> = Mat::from_i64_rows(&[&[1, 0], &[0, 2]]);
        let b: Mat<Rat> = Mat::from_i64_rows(&[&[3, 0], &[0, 4]]);
        let val = eval_mpoly_at_matrices(&p, &[("x", &a), ("y", &b)]).unwrap();
        assert_eq!(val, a.scale(&rat(2, 1)));

        let c: Mat<Rat> = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let err = eval_mpoly_at_matrices(&p, &[("x", &a), ("y", &c)]).unwrap_err();
        assert_eq!(err, MatrixError::NonCommuting);
    }
}
