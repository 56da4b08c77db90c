//! The classical matrix Lie algebras sl_n, so_2n+1, sp_2n, so_2n in fixed
//! realizations: the orthogonal families use the antidiagonal bilinear form,
//! the symplectic family uses J = [[0, I], [-I, 0]]. Each comes with its
//! principal nilpotent f, the companion-style slice through f, the structured
//! basis of the centralizer Z(f), and a principal sl2 triple.

use crate::field::{GRat, Ring};
use crate::matrix::Mat;
use crate::poly::UniPoly;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(&self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LieError {
    #[error("unrecognized algebra label {0:?} (expected like \"A2\", \"B3\", \"C2\", \"D4\")")]
    BadLabel(String),
    #[error("rank {rank} is too small for family {family} (minimum {min})")]
    RankTooSmall {
        family: char,
        rank: usize,
        min: usize,
    },
    #[error("expected {expected} slice parameters, got {got}")]
    WrongParamCount { expected: usize, got: usize },
}

/// One of the classical algebras, identified by family and rank.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct LieAlgebra {
    pub family: Family,
    pub rank: usize,
}

fn gi(v: i64) -> GRat {
    GRat::int(v)
}

impl LieAlgebra {
    pub fn new(family: Family, rank: usize) -> Result<Self, LieError> {
        let min = match family {
            Family::D => 2,
            _ => 1,
        };
        if rank < min {
            return Err(LieError::RankTooSmall {
                family: family.letter(),
                rank,
                min,
            });
        }
        Ok(LieAlgebra { family, rank })
    }

    /// Parse labels like "A2", "B3", "C2", "D4".
    pub fn parse(label: &str) -> Result<Self, LieError> {
        let label = label.trim();
        let mut chars = label.chars();
        let family = match chars.next() {
            Some('A') | Some('a') => Family::A,
            Some('B') | Some('b') => Family::B,
            Some('C') | Some('c') => Family::C,
            Some('D') | Some('d') => Family::D,
            _ => return Err(LieError::BadLabel(label.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| LieError::BadLabel(label.to_string()))?;
        LieAlgebra::new(family, rank)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    /// Size of the defining matrix representation.
    pub fn msize(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }

    pub fn dim(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => (n + 1) * (n + 1) - 1,
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
        }
    }

    /// The exponents m_1 <= ... <= m_n; dim g = sum (2 m_i + 1).
    pub fn exponents(&self) -> Vec<usize> {
        let n = self.rank;
        match self.family {
            Family::A => (1..=n).collect(),
            Family::B | Family::C => (0..n).map(|k| 2 * k + 1).collect(),
            Family::D => {
                let mut v: Vec<usize> = (0..n - 1).map(|k| 2 * k + 1).collect();
                v.push(n - 1);
                v.sort_unstable();
                v
            }
        }
    }

    /// Gram matrix of the invariant bilinear form (None for type A, where
    /// membership is just tracelessness).
    pub fn invariant_form(&self) -> Option<Mat<GRat>> {
        let m = self.msize();
        match self.family {
            Family::A => None,
            Family::B | Family::D => Some(Mat::from_fn(m, m, |i, j| {
                if i + j == m - 1 {
                    gi(1)
                } else {
                    gi(0)
                }
            })),
            Family::C => {
                let n = self.rank;
                Some(Mat::from_fn(m, m, |i, j| {
                    if j == i + n {
                        gi(1)
                    } else if i == j + n {
                        gi(-1)
                    } else {
                        gi(0)
                    }
                }))
            }
        }
    }

    /// Membership in the algebra: traceless for sl, X^T G + G X = 0 for the
    /// orthogonal and symplectic families.
    pub fn contains(&self, x: &Mat<GRat>) -> bool {
        let m = self.msize();
        if x.nrows != m || x.ncols != m {
            return false;
        }
        match self.invariant_form() {
            None => x.tr().is_zero(),
            Some(g) => (&(&x.transpose() * &g) + &(&g * x)).is_zero(),
        }
    }

    /// A basis of the algebra in the defining representation.
    pub fn basis(&self) -> Vec<Mat<GRat>> {
        let m = self.msize();
        let n = self.rank;
        let e = |i: usize, j: usize| -> Mat<GRat> {
            let mut z = Mat::zeros(m, m);
            z[(i, j)] = gi(1);
            z
        };
        let mut out = Vec::with_capacity(self.dim());
        match self.family {
            Family::A => {
                for i in 0..m {
                    for j in 0..m {
                        if i != j {
                            out.push(e(i, j));
                        }
                    }
                }
                for i in 0..m - 1 {
                    out.push(&e(i, i) - &e(i + 1, i + 1));
                }
            }
            Family::B | Family::D => {
                // Pair (i, j) with (m-1-j, m-1-i); self-paired positions are
                // forced to zero, each other orbit contributes one element.
                for i in 0..m {
                    for j in 0..m {
                        let (pi, pj) = (m - 1 - j, m - 1 - i);
                        if (i, j) < (pi, pj) {
                            out.push(&e(i, j) - &e(pi, pj));
                        }
                    }
                }
            }
            Family::C => {
                for i in 0..n {
                    for j in 0..n {
                        out.push(&e(i, j) - &e(n + j, n + i));
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        out.push(if i == j {
                            e(i, n + i)
                        } else {
                            &e(i, n + j) + &e(j, n + i)
                        });
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        out.push(if i == j {
                            e(n + i, i)
                        } else {
                            &e(n + i, j) + &e(n + j, i)
                        });
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), self.dim());
        out
    }

    /// The principal (regular) nilpotent element f the constructions are
    /// anchored at. Jordan type: one full block for A, B, C; blocks of sizes
    /// (2n-1, 1) for D.
    pub fn principal_nilpotent(&self) -> Mat<GRat> {
        let m = self.msize();
        let n = self.rank;
        let mut f = Mat::zeros(m, m);
        match self.family {
            Family::A => {
                for i in 0..m - 1 {
                    f[(i + 1, i)] = gi(1);
                }
            }
            Family::B => {
                for i in 0..2 * n {
                    f[(i + 1, i)] = if i < n { gi(1) } else { gi(-1) };
                }
            }
            Family::C => {
                for i in 0..n - 1 {
                    f[(i + 1, i)] = gi(1);
                    f[(n + i, n + i + 1)] = gi(-1);
                }
                f[(2 * n - 1, n - 1)] = gi(1);
            }
            Family::D => {
                for i in 0..n - 1 {
                    f[(i + 1, i)] = gi(1);
                }
                f[(n, n - 2)] = gi(1);
                f[(n + 1, n - 1)] = gi(-1);
                f[(n + 1, n)] = gi(-1);
                for i in n + 1..2 * n - 1 {
                    f[(i + 1, i)] = gi(-1);
                }
            }
        }
        f
    }

    /// For type D only: the extra rank-two element S spanning the part of
    /// Z(f) not generated by powers of f. S f = f S = 0 and
    /// S^2 = (-1)^(n-1) f^(2n-2).
    pub fn matrix_s(&self) -> Option<Mat<GRat>> {
        if self.family != Family::D {
            return None;
        }
        let n = self.rank;
        let mut s = Mat::zeros(2 * n, 2 * n);
        s[(n - 1, 0)] = gi(1);
        s[(n, 0)] = gi(-1);
        s[(2 * n - 1, n - 1)] = gi(1);
        s[(2 * n - 1, n)] = gi(-1);
        Some(s)
    }

    /// Number of slice parameters (= rank). For A they are (t_2, ..., t_m);
    /// for B and C (t_2, t_4, ..., t_2n); for D (t_2, ..., t_2n-2, tau_n).
    pub fn slice_param_count(&self) -> usize {
        self.rank
    }

    fn check_params(&self, t: &[GRat]) -> Result<(), LieError> {
        if t.len() != self.slice_param_count() {
            return Err(LieError::WrongParamCount {
                expected: self.slice_param_count(),
                got: t.len(),
            });
        }
        Ok(())
    }

    /// The affine slice f + (parameter directions) transverse to the regular
    /// orbit; its characteristic polynomial realizes `slice_charpoly`
    /// literally in the parameters.
    pub fn principal_slice(&self, t: &[GRat]) -> Result<Mat<GRat>, LieError> {
        self.check_params(t)?;
        let m = self.msize();
        let n = self.rank;
        let mut a = self.principal_nilpotent();
        match self.family {
            Family::A => {
                // Last column (-t_m, ..., -t_2, 0) from the top.
                for (idx, tk) in t.iter().enumerate() {
                    // tk is t_{idx+2}; it sits in row m - (idx + 2).
                    a[(m - idx - 2, m - 1)] = -tk.clone();
                }
            }
            Family::B => {
                for k in 1..=n {
                    let tk = t[k - 1].clone();
                    a[(n - k, n + k - 1)] = a[(n - k, n + k - 1)].clone() + tk.clone();
                    a[(n + 1 - k, n + k)] = a[(n + 1 - k, n + k)].clone() - tk;
                }
            }
            Family::C => {
                // t_{2(n+1-j)} at (j, n+j), so t_2n top-left, t_2 at (n, 2n).
                for j in 1..=n {
                    a[(j - 1, n + j - 1)] = t[n - j].clone();
                }
            }
            Family::D => {
                // Ladder of t entries; t_2 gets a second pair next to the
                // branch rows, which is what produces the uniform factor 4
                // in the characteristic polynomial.
                for k in 1..=n - 1 {
                    let tk = t[k - 1].clone();
                    a[(n - k - 1, n + k - 1)] = a[(n - k - 1, n + k - 1)].clone() + tk.clone();
                    a[(n - k, n + k)] = a[(n - k, n + k)].clone() - tk;
                }
                let t2 = t[0].clone();
                a[(n - 2, n - 1)] = a[(n - 2, n - 1)].clone() + t2.clone();
                a[(n, n + 1)] = a[(n, n + 1)].clone() - t2;
                // tau enters through S^T, normalized so the constant term of
                // the characteristic polynomial is exactly (-1)^n tau^2.
                let tau_half = t[n - 1].clone() * GRat::frac(1, 2);
                a[(0, n - 1)] = a[(0, n - 1)].clone() + tau_half.clone();
                a[(0, n)] = a[(0, n)].clone() - tau_half.clone();
                a[(n - 1, 2 * n - 1)] = a[(n - 1, 2 * n - 1)].clone() + tau_half.clone();
                a[(n, 2 * n - 1)] = a[(n, 2 * n - 1)].clone() - tau_half;
            }
        }
        Ok(a)
    }

    /// Closed form of det(xI - slice(t)):
    ///   A: x^m + t_2 x^(m-2) + ... + t_m
    ///   B: x^(2n+1) + sum_k (-1)^k 2 t_2k x^(2n+1-2k)
    ///   C: x^2n + sum_k (-1)^k t_2k x^(2n-2k)
    ///   D: x^2n + sum_(k<n) (-1)^k 4 t_2k x^(2n-2k) + (-1)^n tau_n^2
    pub fn slice_charpoly(&self, t: &[GRat]) -> Result<UniPoly<GRat>, LieError> {
        self.check_params(t)?;
        let m = self.msize();
        let n = self.rank;
        let mut c = vec![gi(0); m + 1];
        c[m] = gi(1);
        match self.family {
            Family::A => {
                for (idx, tk) in t.iter().enumerate() {
                    c[m - idx - 2] = tk.clone();
                }
            }
            Family::B => {
                for k in 1..=n {
                    let sign = if k % 2 == 1 { gi(-2) } else { gi(2) };
                    c[m - 2 * k] = t[k - 1].clone() * sign;
                }
            }
            Family::C => {
                for k in 1..=n {
                    let sign = if k % 2 == 1 { gi(-1) } else { gi(1) };
                    c[m - 2 * k] = t[k - 1].clone() * sign;
                }
            }
            Family::D => {
                for k in 1..n {
                    let sign = if k % 2 == 1 { gi(-4) } else { gi(4) };
                    c[m - 2 * k] = t[k - 1].clone() * sign;
                }
                let tau = t[n - 1].clone();
                let sign = if n % 2 == 1 { gi(-1) } else { gi(1) };
                c[0] = tau.clone() * tau * sign;
            }
        }
        Ok(UniPoly::new(c))
    }

    /// Structured basis of Z(f) inside g: powers f^(e_i) over the exponents,
    /// with S standing in for the would-be top power in type D.
    pub fn centralizer_f_basis(&self) -> Vec<Mat<GRat>> {
        let f = self.principal_nilpotent();
        let n = self.rank;
        match self.family {
            Family::A => (1..=n).map(|j| f.pow(j)).collect(),
            Family::B | Family::C => (0..n).map(|k| f.pow(2 * k + 1)).collect(),
            Family::D => {
                let mut v: Vec<Mat<GRat>> = (0..n - 1).map(|k| f.pow(2 * k + 1)).collect();
                v.push(self.matrix_s().unwrap());
                v
            }
        }
    }

    /// Basis of the centralizer of x inside g, by solving [x, y] = 0 over
    /// the basis of g.
    pub fn centralizer_basis(&self, x: &Mat<GRat>) -> Vec<Mat<GRat>> {
        let basis = self.basis();
        let m = self.msize();
        let cols: Vec<Mat<GRat>> = basis.iter().map(|b| Mat::commutator(x, b)).collect();
        let sys = Mat::from_fn(m * m, basis.len(), |r, k| cols[k].entries()[r].clone());
        sys.kernel_basis()
            .into_iter()
            .map(|coeffs| {
                let mut acc = Mat::zeros(m, m);
                for (c, b) in coeffs.iter().zip(&basis) {
                    acc = &acc + &b.scale(c);
                }
                acc
            })
            .collect()
    }

    /// Diagonal of the principal grading element h ([h, f] = -2f).
    fn principal_h(&self) -> Mat<GRat> {
        let m = self.msize();
        let n = self.rank as i64;
        let diag: Vec<i64> = match self.family {
            Family::A => (1..=m as i64).map(|i| m as i64 + 1 - 2 * i).collect(),
            Family::B => (1..=m as i64).map(|i| 2 * n + 2 - 2 * i).collect(),
            Family::C => {
                let mut v: Vec<i64> = (1..=n).map(|i| 2 * n + 1 - 2 * i).collect();
                v.extend((1..=n).map(|j| -(2 * n + 1 - 2 * j)));
                v
            }
            Family::D => {
                let mut v: Vec<i64> = (1..=n).map(|i| 2 * n - 2 * i).collect();
                v.extend((1..=n).map(|j| -2 * (j - 1)));
                v
            }
        };
        Mat::from_fn(m, m, |i, j| if i == j { gi(diag[i]) } else { gi(0) })
    }

    /// A principal sl2 triple (e, h, f) with f the principal nilpotent:
    /// [h, e] = 2e, [h, f] = -2f, [e, f] = h. The raising element is found
    /// by an exact linear solve over the basis of g.
    pub fn principal_sl2(&self) -> Sl2Triple {
        let f = self.principal_nilpotent();
        let h = self.principal_h();
        let basis = self.basis();
        let m = self.msize();
        let two = gi(2);
        let cols: Vec<Vec<GRat>> = basis
            .iter()
            .map(|b| {
                let top = &Mat::commutator(&h, b) - &b.scale(&two);
                let bottom = Mat::commutator(b, &f);
                let mut v = top.entries().to_vec();
                v.extend_from_slice(bottom.entries());
                v
            })
            .collect();
        let sys = Mat::from_fn(2 * m * m, basis.len(), |r, k| cols[k][r].clone());
        let mut rhs = vec![gi(0); m * m];
        rhs.extend_from_slice(h.entries());
        let coeffs = sys
            .solve(&rhs)
            .expect("principal raising element exists by Jacobson-Morozov");
        let mut e = Mat::zeros(m, m);
        for (c, b) in coeffs.iter().zip(&basis) {
            e = &e + &b.scale(c);
        }
        debug_assert!((&Mat::commutator(&h, &e) - &e.scale(&two)).is_zero());
        debug_assert!(Mat::commutator(&e, &f) == h);
        Sl2Triple { e, h, f }
    }
}

/// A triple (e, h, f) satisfying the sl2 relations.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: Mat<GRat>,
    pub h: Mat<GRat>,
    pub f: Mat<GRat>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::ScalarField;
    use crate::sampling::Sampler;

    fn all_test_algebras() -> Vec<LieAlgebra> {
        [
            "A1", "A2", "A3", "A4", "B1", "B2", "B3", "C1", "C2", "C3", "D2", "D3", "D4",
        ]
        .iter()
        .map(|s| LieAlgebra::parse(s).unwrap())
        .collect()
    }

    #[test]
    fn labels_dimensions_exponents() {
        let g = LieAlgebra::parse("D4").unwrap();
        assert_eq!(g.label(), "D4");
        assert_eq!(g.msize(), 8);
        assert_eq!(g.dim(), 28);
        assert_eq!(g.exponents(), vec![1, 3, 3, 5]);
        assert!(LieAlgebra::parse("E8").is_err());
        assert!(LieAlgebra::parse("D1").is_err());
        assert!(LieAlgebra::parse("A0").is_err());

        for g in all_test_algebras() {
            let s: usize = g.exponents().iter().map(|&m| 2 * m + 1).sum();
            assert_eq!(s, g.dim(), "exponent identity fails for {}", g.label());
            assert_eq!(g.exponents().len(), g.rank);
        }
    }

    #[test]
    fn bases_lie_in_the_algebra_and_are_independent() {
        for g in all_test_algebras() {
            let basis = g.basis();
            assert_eq!(basis.len(), g.dim(), "{}", g.label());
            for b in &basis {
                assert!(g.contains(b), "basis element outside {}", g.label());
            }
            let m = g.msize();
            let stack = Mat::from_fn(basis.len(), m * m, |i, j| basis[i].entries()[j].clone());
            assert_eq!(stack.rank(), g.dim(), "{}", g.label());
            // Closure under bracket.
            let mut s = Sampler::new(17);
            for _ in 0..4 {
                let x = &basis[s.pick(basis.len())];
                let y = &basis[s.pick(basis.len())];
                assert!(g.contains(&Mat::commutator(x, y)));
            }
        }
    }

    #[test]
    fn principal_nilpotent_shape() {
        for g in all_test_algebras() {
            let f = g.principal_nilpotent();
            assert!(g.contains(&f), "{}", g.label());
            let m = g.msize();
            let expected_index = match g.family {
                Family::D => m - 1,
                _ => m,
            };
            assert_eq!(f.nilpotency_index(), Some(expected_index), "{}", g.label());
        }
        // Type D: f^(2n-2) = 2 (-1)^(n-1) E_(2n,1).
        for n in [2usize, 3, 4] {
            let g = LieAlgebra::new(Family::D, n).unwrap();
            let f = g.principal_nilpotent();
            let top = f.pow(2 * n - 2);
            let mut expect = Mat::zeros(2 * n, 2 * n);
            expect[(2 * n - 1, 0)] = if n % 2 == 1 { gi(2) } else { gi(-2) };
            assert_eq!(top, expect);
        }
    }

    #[test]
    fn slice_charpoly_matches_closed_form() {
        let mut s = Sampler::new(5);
        for g in all_test_algebras() {
            for _ in 0..3 {
                let t = s.vector(g.slice_param_count(), ScalarField::Q);
                let a = g.principal_slice(&t).unwrap();
                assert!(g.contains(&a), "slice leaves {}", g.label());
                assert_eq!(
                    a.charpoly(),
                    g.slice_charpoly(&t).unwrap(),
                    "characteristic polynomial mismatch for {}",
                    g.label()
                );
            }
        }
    }

    #[test]
    fn slice_rejects_wrong_parameter_count() {
        let g = LieAlgebra::parse("B2").unwrap();
        assert!(matches!(
            g.principal_slice(&[gi(1)]),
            Err(LieError::WrongParamCount {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn centralizer_of_f_has_rank_dimension_and_structured_basis() {
        for g in all_test_algebras() {
            let f = g.principal_nilpotent();
            let z = g.centralizer_basis(&f);
            assert_eq!(z.len(), g.rank, "dim Z(f) for {}", g.label());
            let structured = g.centralizer_f_basis();
            assert_eq!(structured.len(), g.rank);
            let m = g.msize();
            for b in &structured {
                assert!(g.contains(b), "{}", g.label());
                assert!(Mat::commutator(&f, b).is_zero(), "{}", g.label());
            }
            // Same span: stacking both bases does not increase the rank.
            let all: Vec<&Mat<GRat>> = z.iter().chain(structured.iter()).collect();
            let stack = Mat::from_fn(all.len(), m * m, |i, j| all[i].entries()[j].clone());
            assert_eq!(stack.rank(), g.rank, "{}", g.label());
        }
    }

    #[test]
    fn principal_sl2_relations() {
        for g in all_test_algebras() {
            let t = g.principal_sl2();
            assert!(g.contains(&t.e), "{}", g.label());
            assert!(g.contains(&t.h), "{}", g.label());
            assert!(g.contains(&t.f), "{}", g.label());
            assert_eq!(
                Mat::commutator(&t.h, &t.e),
                t.e.scale(&gi(2)),
                "{}",
                g.label()
            );
            assert_eq!(
                Mat::commutator(&t.h, &t.f),
                t.f.scale(&gi(-2)),
                "{}",
                g.label()
            );
            assert_eq!(Mat::commutator(&t.e, &t.f), t.h, "{}", g.label());
        }
    }

    #[test]
    fn type_d_s_matrix_identities() {
        for n in [2usize, 3, 4] {
            let g = LieAlgebra::new(Family::D, n).unwrap();
            let f = g.principal_nilpotent();
            let s = g.matrix_s().unwrap();
            assert!(g.contains(&s));
            assert!(g.contains(&s.transpose()));
            assert!((&s * &f).is_zero());
            assert!((&f * &s).is_zero());
            let s2 = &s * &s;
            let sign = if n % 2 == 1 { gi(1) } else { gi(-1) };
            assert_eq!(s2, f.pow(2 * n - 2).scale(&sign));
        }
        assert!(LieAlgebra::parse("B2").unwrap().matrix_s().is_none());
    }
}
