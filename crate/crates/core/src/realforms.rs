//! Split real form of the special linear algebra: the Cartan decomposition
//! into skew-symmetric and symmetric summands, the commuting-pair
//! classification inside the symmetric summand, and the exact rank-one
//! orbit analysis with its rational circle parametrization.
//!
//! All objects live over ℚ(i): the summands are complexified, and only the
//! real points of the group enter through explicit witness matrices.

use crate::field::{rat, GRat, Rat, Ring};
use crate::hilb::{self, CommutingPair, HilbError};
use crate::liealg::{Family, LieAlgebra};
use crate::matrix::Mat;
use crate::mpoly::SymScalar;
use crate::sampling::Sampler;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RealFormError {
    #[error("split decomposition only implemented for the special linear family")]
    Unsupported,
    #[error("matrix is not in the symmetric summand")]
    NotInP,
    #[error("matrices do not commute")]
    NonCommuting,
    #[error(transparent)]
    Complex(#[from] HilbError),
}

/// Cartan decomposition data of a split real form: g = k ⊕ p with k the
/// skew-symmetric and p the symmetric traceless matrices (complexified).
/// The involution acts as +1 on k and −1 on p.
#[derive(Debug, Clone)]
pub struct RealFormSpec {
    complex: LieAlgebra,
    n: usize,
    k_basis: Vec<Mat<GRat>>,
    p_basis: Vec<Mat<GRat>>,
    real_rank: usize,
}

fn unit(n: usize, i: usize, j: usize) -> Mat<GRat> {
    Mat::from_fn(n, n, |r, c| {
        if (r, c) == (i, j) {
            GRat::int(1)
        } else {
            GRat::int(0)
        }
    })
}

fn is_symmetric(m: &Mat<GRat>) -> bool {
    m.transpose() == *m
}

fn is_skew(m: &Mat<GRat>) -> bool {
    (&m.transpose() + m).is_zero()
}

fn is_nilpotent(m: &Mat<GRat>) -> bool {
    let chi = m.charpoly();
    (0..m.nrows).all(|k| chi.coeff(k).is_zero())
}

impl RealFormSpec {
    /// Builds the decomposition for the split form of an A-type algebra
    /// (traceless matrices over ℝ): k is spanned by E_ij − E_ji and p by
    /// the traceless diagonal together with E_ij + E_ji. The bracket
    /// inclusions [k,k] ⊆ k, [k,p] ⊆ p, [p,p] ⊆ k are verified exactly on
    /// all basis pairs.
    pub fn build_split(alg: &LieAlgebra) -> Result<Self, RealFormError> {
        if alg.family != Family::A {
            return Err(RealFormError::Unsupported);
        }
        let n = alg.msize();
        let mut k_basis = Vec::new();
        let mut p_basis = Vec::new();
        for i in 0..n - 1 {
            p_basis.push(&unit(n, i, i) - &unit(n, i + 1, i + 1));
        }
        for i in 0..n {
            for j in i + 1..n {
                k_basis.push(&unit(n, i, j) - &unit(n, j, i));
                p_basis.push(&unit(n, i, j) + &unit(n, j, i));
            }
        }
        let spec = RealFormSpec {
            complex: *alg,
            n,
            k_basis,
            p_basis,
            real_rank: n - 1,
        };
        assert_eq!(
            spec.k_basis.len() + spec.p_basis.len(),
            alg.basis().len(),
            "summand dimensions must add up to dim g"
        );
        for x in &spec.k_basis {
            assert!(is_skew(x) && x.tr().is_zero());
        }
        for y in &spec.p_basis {
            assert!(is_symmetric(y) && y.tr().is_zero());
        }
        for x in &spec.k_basis {
            for x2 in &spec.k_basis {
                assert!(is_skew(&Mat::commutator(x, x2)));
            }
            for y in &spec.p_basis {
                let c = Mat::commutator(x, y);
                assert!(is_symmetric(&c) && c.tr().is_zero());
            }
        }
        for y in &spec.p_basis {
            for y2 in &spec.p_basis {
                assert!(is_skew(&Mat::commutator(y, y2)));
            }
        }
        Ok(spec)
    }

    pub fn complex(&self) -> &LieAlgebra {
        &self.complex
    }

    /// Dimension of a maximal abelian subspace of the real symmetric
    /// summand (the traceless diagonal); equals the complex rank.
    pub fn real_rank(&self) -> usize {
        self.real_rank
    }

    pub fn p_basis(&self) -> &[Mat<GRat>] {
        &self.p_basis
    }

    pub fn k_basis(&self) -> &[Mat<GRat>] {
        &self.k_basis
    }

    /// Membership in the complexified symmetric summand.
    pub fn is_in_p(&self, m: &Mat<GRat>) -> bool {
        m.is_square() && m.nrows == self.n && is_symmetric(m) && m.tr().is_zero()
    }

    /// Dimension of the common centralizer of `mats` inside p.
    pub fn centralizer_in_p(&self, mats: &[&Mat<GRat>]) -> usize {
        let rows = mats.len() * self.n * self.n;
        let cols: Vec<Vec<GRat>> = self
            .p_basis
            .iter()
            .map(|x| {
                let mut col = Vec::with_capacity(rows);
                for m in mats {
                    col.extend(Mat::commutator(x, m).entries().iter().cloned());
                }
                col
            })
            .collect();
        let stacked = Mat::from_fn(rows, self.p_basis.len(), |r, c| cols[c][r].clone());
        self.p_basis.len() - stacked.rank()
    }
}

/// Classification data of a commuting pair inside the symmetric summand.
#[derive(Debug, Clone, PartialEq)]
pub struct RealClassification {
    pub dim_zp: usize,
    pub in_hilb: bool,
    pub a_nilpotent: bool,
    pub b_nilpotent: bool,
}

/// Classifies (A, B) ∈ p²: computes dim Z_p(A,B) and compares it against
/// the real rank.
pub fn classify_real(
    spec: &RealFormSpec,
    a: &Mat<GRat>,
    b: &Mat<GRat>,
) -> Result<RealClassification, RealFormError> {
    if !spec.is_in_p(a) || !spec.is_in_p(b) {
        return Err(RealFormError::NotInP);
    }
    if !Mat::commutator(a, b).is_zero() {
        return Err(RealFormError::NonCommuting);
    }
    let dim_zp = spec.centralizer_in_p(&[a, b]);
    Ok(RealClassification {
        dim_zp,
        in_hilb: dim_zp == spec.real_rank,
        a_nilpotent: is_nilpotent(a),
        b_nilpotent: is_nilpotent(b),
    })
}

/// The symmetric traceless 2×2 matrix [[a, b], [b, −a]].
pub fn sl2_p_matrix(a: &GRat, b: &GRat) -> Mat<GRat> {
    Mat::from_rows(vec![
        vec![a.clone(), b.clone()],
        vec![b.clone(), -a.clone()],
    ])
}

fn imag_unit() -> GRat {
    GRat::new(rat(0, 1), rat(1, 1))
}

/// The two nilpotent families in the rank-one symmetric summand:
/// [[1, ±i], [±i, −1]].
pub fn nilpotent_representative(plus: bool) -> Mat<GRat> {
    let i = if plus { imag_unit() } else { -imag_unit() };
    sl2_p_matrix(&GRat::int(1), &i)
}

/// Rational point of SO(2, ℂ): (cos t, sin t) = ((1−s²)/(1+s²), 2s/(1+s²)).
pub fn so2_element(s: &Rat) -> Mat<GRat> {
    let one = Rat::from_integer(1.into());
    let denom = one.clone() + s.clone() * s.clone();
    let c = (one.clone() - s.clone() * s.clone()) / denom.clone();
    let sn = (s.clone() + s.clone()) / denom;
    let c = GRat::from_rat(c);
    let sn = GRat::from_rat(sn);
    Mat::from_rows(vec![vec![c.clone(), sn.clone()], vec![-sn, c]])
}

/// Scalar by which the rotation with parameter `s` acts on each nilpotent
/// family (the plus family picks up cos 2t + i sin 2t, the minus family the
/// reciprocal).
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitScalar {
    pub s: Rat,
    pub plus: GRat,
    pub minus: GRat,
}

#[derive(Debug, Clone)]
pub struct Sl2OrbitReport {
    /// Nilpotency in p is exactly a² + b² = 0, i.e. b = ±ia.
    pub nilpotents_are_the_two_families: bool,
    /// Rotation scalars verified exactly per sample parameter.
    pub scalars: Vec<OrbitScalar>,
    /// diag(1, −1) (orthogonal, determinant −1) swaps the two families.
    pub swap_conjugation: bool,
    /// Commuting pairs in p are exactly the proportional ones (symbolic
    /// kernel over the two-parameter family).
    pub commuting_is_proportional: bool,
}

impl Sl2OrbitReport {
    pub fn all_pass(&self) -> bool {
        self.nilpotents_are_the_two_families
            && !self.scalars.is_empty()
            && self.swap_conjugation
            && self.commuting_is_proportional
    }
}

/// Runs the full rank-one orbit analysis exactly: the nilpotent cone in p,
/// the rotation action on each family, and the determinant −1 witness that
/// merges the two families into one orbit of the extended group.
pub fn sl2r_orbit_check(samples: &[Rat]) -> Sl2OrbitReport {
    // Symbolic characteristic polynomial of [[a, b], [b, −a]]: x² − (a² + b²),
    // so the nilpotent locus is a² + b² = (b − ia)(b + ia) = 0.
    let ctx = Arc::new(vec!["a".to_string(), "b".to_string()]);
    let a = SymScalar::var(&ctx, "a");
    let b = SymScalar::var(&ctx, "b");
    let sym = Mat::from_rows(vec![
        vec![a.clone(), b.clone()],
        vec![b.clone(), -a.clone()],
    ]);
    let chi = sym.charpoly();
    let norm = a.clone() * a.clone() + b.clone() * b.clone();
    let mut families = chi.coeff(2) == SymScalar::one()
        && chi.coeff(1).is_zero()
        && chi.coeff(0) == -norm;
    // The two solutions b = ±ia are nilpotent, nothing else on a sample line.
    let witness = GRat::new(rat(2, 3), rat(-1, 5));
    for plus in [true, false] {
        let i = if plus { imag_unit() } else { -imag_unit() };
        let m = sl2_p_matrix(&witness, &(witness.clone() * i));
        families &= is_nilpotent(&m) && m == nilpotent_representative(plus).scale(&witness);
    }
    families &= !is_nilpotent(&sl2_p_matrix(&witness, &witness));

    let mut scalars = Vec::new();
    let mut rotations_ok = true;
    for s in samples {
        let r = so2_element(s);
        rotations_ok &= &r * &r.transpose() == Mat::identity(2);
        let c = r[(0, 0)].clone();
        let sn = r[(0, 1)].clone();
        let det = c.clone() * c.clone() + sn.clone() * sn.clone();
        rotations_ok &= det == GRat::int(1);
        // cos 2t + i sin 2t from the double-angle formulas.
        let cos2 = c.clone() * c.clone() - sn.clone() * sn.clone();
        let sin2 = GRat::int(2) * c.clone() * sn.clone();
        let lambda = cos2.clone() + imag_unit() * sin2.clone();
        let lambda_bar = cos2 - imag_unit() * sin2;
        let mut pair = Vec::new();
        for (plus, expected) in [(true, lambda.clone()), (false, lambda_bar.clone())] {
            let m = nilpotent_representative(plus);
            let conj = &(&r * &m) * &r.transpose();
            rotations_ok &= conj == m.scale(&expected);
            pair.push(expected);
        }
        scalars.push(OrbitScalar {
            s: s.clone(),
            minus: pair.pop().expect("two scalars"),
            plus: pair.pop().expect("two scalars"),
        });
    }

    let flip: Mat<GRat> = Mat::from_i64_rows(&[&[1, 0], &[0, -1]]);
    let swap = &flip * &flip == Mat::identity(2)
        && &(&flip * &nilpotent_representative(true)) * &flip == nilpotent_representative(false)
        && flip[(0, 0)].clone() * flip[(1, 1)].clone() == GRat::int(-1);

    // Symbolic centralizer of a generic [[a, b], [b, −a]] inside p: the
    // commutator map p → g has rank 1 over the function field ℚ(a, b), so
    // the kernel is the line spanned by the matrix itself.
    let xvar = Mat::from_rows(vec![
        vec![SymScalar::one(), SymScalar::zero()],
        vec![SymScalar::zero(), -SymScalar::one()],
    ]);
    let yvar = Mat::from_rows(vec![
        vec![SymScalar::zero(), SymScalar::one()],
        vec![SymScalar::one(), SymScalar::zero()],
    ]);
    let cols = [Mat::commutator(&sym, &xvar), Mat::commutator(&sym, &yvar)];
    let stacked = Mat::from_fn(4, 2, |r, cidx| cols[cidx].entries()[r].clone());
    let proportional = stacked.rank() == 1 && rotations_ok;

    Sl2OrbitReport {
        nilpotents_are_the_two_families: families,
        scalars,
        swap_conjugation: swap,
        commuting_is_proportional: proportional,
    }
}

/// One sampled regular pair compared across the real and complex
/// classifications.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub dim_zp: usize,
    pub dim_zg: usize,
    pub real_in_hilb: bool,
    pub complex_in_hilb: bool,
    pub chow_agrees: bool,
}

impl SampleRecord {
    pub fn agrees(&self) -> bool {
        self.real_in_hilb && self.complex_in_hilb && self.chow_agrees && self.dim_zp == self.dim_zg
    }
}

#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub records: Vec<SampleRecord>,
    pub all_agree: bool,
}

fn traceless_diag(mut values: Vec<Rat>) -> Vec<Rat> {
    let n = values.len();
    let sum: Rat = values
        .iter()
        .cloned()
        .fold(Rat::from_integer(0.into()), |acc, v| acc + v);
    let mean = sum / Rat::from_integer((n as i64).into());
    for v in &mut values {
        *v = v.clone() - mean.clone();
    }
    values
}

fn diag_mat(values: &[Rat]) -> Mat<GRat> {
    Mat::from_fn(values.len(), values.len(), |i, j| {
        if i == j {
            GRat::from_rat(values[i].clone())
        } else {
            GRat::int(0)
        }
    })
}

/// Rational special orthogonal matrix via the Cayley transform of a random
/// skew matrix (I − S)(I + S)⁻¹; I + S is invertible for every rational
/// skew S.
pub fn rational_rotation(sampler: &mut Sampler, n: usize) -> Mat<GRat> {
    let mut skew = Mat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = GRat::from_rat(sampler.rat());
            skew[(i, j)] = v.clone();
            skew[(j, i)] = -v;
        }
    }
    let id = Mat::identity(n);
    let inv = (&id + &skew)
        .inverse()
        .expect("I + S is invertible for skew S");
    &(&id - &skew) * &inv
}

/// Samples commuting regular pairs in p with rational spectrum (rotated
/// diagonal pairs) and verifies that the real and complex classifications
/// agree, including the diagonalization data.
pub fn split_sample_correspondence(
    spec: &RealFormSpec,
    samples: usize,
    seed: u64,
) -> Result<CorrespondenceReport, RealFormError> {
    let n = spec.n;
    let alg = *spec.complex();
    let mut sampler = Sampler::new(seed);
    let mut records = Vec::with_capacity(samples);
    for _ in 0..samples {
        let d1 = loop {
            let candidate = traceless_diag(sampler.distinct_rats(n));
            let mut sorted = candidate.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() == n {
                break candidate;
            }
        };
        let d2 = traceless_diag((0..n).map(|_| sampler.rat()).collect());
        let q = rational_rotation(&mut sampler, n);
        let qt = q.transpose();
        let a = &(&q * &diag_mat(&d1)) * &qt;
        let b = &(&q * &diag_mat(&d2)) * &qt;

        let real = classify_real(spec, &a, &b)?;
        let dim_zg = hilb::common_centralizer_dim(&alg, &[&a, &b]);
        let pair = CommutingPair::new(alg, a, b)?;
        let chow_conj = hilb::chow(&pair)?;
        let diag_pair = CommutingPair::new(alg, diag_mat(&d1), diag_mat(&d2))?;
        let chow_diag = hilb::chow(&diag_pair)?;

        records.push(SampleRecord {
            dim_zp: real.dim_zp,
            dim_zg,
            real_in_hilb: real.in_hilb,
            complex_in_hilb: dim_zg == alg.rank,
            chow_agrees: chow_conj == chow_diag,
        });
    }
    let all_agree = records.iter().all(SampleRecord::agrees);
    Ok(CorrespondenceReport { records, all_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ideals;

    fn sl(rank: usize) -> LieAlgebra {
        LieAlgebra::new(Family::A, rank).unwrap()
    }

    #[test]
    fn split_decomposition_closes_under_brackets() {
        let spec = RealFormSpec::build_split(&sl(2)).unwrap();
        assert_eq!(spec.k_basis().len(), 3);
        assert_eq!(spec.p_basis().len(), 5);
        assert_eq!(spec.real_rank(), 2);

        let b2 = LieAlgebra::parse("B2").unwrap();
        assert_eq!(
            RealFormSpec::build_split(&b2).unwrap_err(),
            RealFormError::Unsupported
        );
    }

    #[test]
    fn baby_cartan_is_the_traceless_diagonal() {
        let spec = RealFormSpec::build_split(&sl(2)).unwrap();
        let diag: Vec<&Mat<GRat>> = spec.p_basis()[..2].iter().collect();
        for d in &diag {
            assert!(spec.is_in_p(d));
        }
        assert!(Mat::commutator(diag[0], diag[1]).is_zero());
        assert_eq!(diag.len(), spec.real_rank());

        // Maximality: no off-diagonal symmetric direction commutes with a
        // regular diagonal element.
        let regular = diag_mat(&[rat(1, 1), rat(2, 1), rat(-3, 1)]);
        for y in &spec.p_basis()[2..] {
            assert!(!Mat::commutator(&regular, y).is_zero());
        }
    }

    #[test]
    fn classification_requires_symmetric_commuting_input() {
        let spec = RealFormSpec::build_split(&sl(1)).unwrap();
        let e12: Mat<GRat> = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let sym: Mat<GRat> = Mat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let h: Mat<GRat> = Mat::from_i64_rows(&[&[1, 0], &[0, -1]]);
        assert_eq!(
            classify_real(&spec, &e12, &sym).unwrap_err(),
            RealFormError::NotInP
        );
        assert_eq!(
            classify_real(&spec, &sym, &h).unwrap_err(),
            RealFormError::NonCommuting
        );
    }

    #[test]
    fn proportional_pairs_fill_the_rank_one_scheme() {
        let spec = RealFormSpec::build_split(&sl(1)).unwrap();
        let a = sl2_p_matrix(&GRat::int(1), &GRat::frac(1, 2));
        let b = a.scale(&GRat::frac(-3, 4));
        let report = classify_real(&spec, &a, &b).unwrap();
        assert_eq!(report.dim_zp, 1);
        assert!(report.in_hilb);
        assert!(!report.a_nilpotent && !report.b_nilpotent);

        let zero = Mat::zeros(2, 2);
        let report = classify_real(&spec, &zero, &zero).unwrap();
        assert_eq!(report.dim_zp, spec.p_basis().len());
        assert!(!report.in_hilb);
        assert!(report.a_nilpotent && report.b_nilpotent);
    }

    #[test]
    fn diagonal_pairs_classify_in_rank_two() {
        let spec = RealFormSpec::build_split(&sl(2)).unwrap();
        let a = diag_mat(&[rat(1, 1), rat(2, 1), rat(-3, 1)]);
        let b = diag_mat(&[rat(1, 1), rat(-1, 1), rat(0, 1)]);
        let report = classify_real(&spec, &a, &b).unwrap();
        assert_eq!(report.dim_zp, 2);
        assert!(report.in_hilb);

        // A repeated eigenvalue inflates the centralizer beyond the rank.
        let degenerate = diag_mat(&[rat(1, 1), rat(1, 1), rat(-2, 1)]);
        let report = classify_real(&spec, &degenerate, &degenerate).unwrap();
        assert!(report.dim_zp > spec.real_rank());
        assert!(!report.in_hilb);
    }

    #[test]
    fn rank_one_orbit_scalars_are_rational_circle_points() {
        let samples = [rat(0, 1), rat(1, 2), rat(1, 3), rat(-2, 1)];
        let report = sl2r_orbit_check(&samples);
        assert!(report.all_pass());

        assert_eq!(report.scalars[0].plus, GRat::int(1), "s = 0 acts trivially");
        let frozen = GRat::new(rat(-7, 25), rat(24, 25));
        assert_eq!(report.scalars[1].plus, frozen);
        for sc in &report.scalars {
            assert_eq!(sc.minus, sc.plus.conj());
            assert_eq!(sc.plus.clone() * sc.minus.clone(), GRat::int(1));
        }
    }

    #[test]
    fn symmetric_pairs_agree_with_the_complex_classification() {
        let spec = RealFormSpec::build_split(&sl(2)).unwrap();
        let report = split_sample_correspondence(&spec, 6, 0xca7).unwrap();
        assert_eq!(report.records.len(), 6);
        assert!(report.all_agree);

        // The nilpotent family is regular in both senses.
        let a = nilpotent_representative(true);
        let b = a.scale(&GRat::frac(2, 3));
        let sl2spec = RealFormSpec::build_split(&sl(1)).unwrap();
        let real = classify_real(&sl2spec, &a, &b).unwrap();
        assert_eq!(real.dim_zp, 1);
        assert!(real.in_hilb && real.a_nilpotent && real.b_nilpotent);
        assert_eq!(hilb::common_centralizer_dim(&sl(1), &[&a, &b]), 1);

        // The zero pair is excluded on both sides.
        let zero = Mat::zeros(2, 2);
        assert!(!classify_real(&sl2spec, &zero, &zero).unwrap().in_hilb);
        assert_ne!(hilb::common_centralizer_dim(&sl(1), &[&zero, &zero]), 1);
    }

    #[test]
    fn nilpotent_pairs_map_to_the_proportionality_ideal() {
        // ([[1,i],[i,-1]], mu times it) maps to the ideal <x^2, y - mu x>.
        let mu = GRat::frac(3, 2);
        let a = nilpotent_representative(true);
        let b = a.scale(&mu);
        let pair = CommutingPair::new(sl(1), a, b).unwrap();
        let pres = ideals::idealic_map(&pair, &[GRat::int(1), GRat::int(0)]).unwrap();
        assert_eq!(pres.codimension(), 2);
        assert_eq!(pres.staircase(), &[(0, 0), (1, 0)]);
        assert_eq!(pres.border((2, 0)).unwrap(), &[GRat::int(0), GRat::int(0)]);
        assert_eq!(pres.border((0, 1)).unwrap(), &[GRat::int(0), mu]);
    }

    #[test]
    fn centralizers_never_drop_below_the_real_rank() {
        let spec = RealFormSpec::build_split(&sl(2)).unwrap();
        let mut sampler = Sampler::new(0x5eed);
        for _ in 0..8 {
            let mut m = Mat::zeros(3, 3);
            for i in 0..3 {
                for j in i..3 {
                    let v = GRat::from_rat(sampler.rat());
                    m[(i, j)] = v.clone();
                    m[(j, i)] = v;
                }
            }
            let t = m.tr();
            let third = GRat::frac(1, 3);
            for i in 0..3 {
                let adjusted = m[(i, i)].clone() - third.clone() * t.clone();
                m[(i, i)] = adjusted;
            }
            assert!(spec.is_in_p(&m));
            assert!(spec.centralizer_in_p(&[&m]) >= spec.real_rank());
        }
    }
}
