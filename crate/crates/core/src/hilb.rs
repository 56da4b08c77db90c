//! Classification of commuting pairs: centralizer dimensions, regularity,
//! nilpotency, cyclicity with certificates, the mu2 invariant, the Chow
//! map to canonicalized Cartan coordinates, and the principal sl2
//! embedding.

use crate::codec::ScalarField;
use crate::field::{Field, GRat, Ring};
use crate::liealg::{Family, LieAlgebra};
use crate::matrix::Mat;
use crate::sampling::Sampler;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HilbError {
    #[error("matrices do not commute")]
    NonCommuting,
    #[error("matrix is not a member of {0}")]
    MembershipViolation(String),
    #[error("input is not in standard form: {0}")]
    NotStandardForm(String),
    #[error("matrix is outside the centralizer of the principal nilpotent")]
    NotInCentralizer,
    #[error("spectrum does not split over Q(i)")]
    SplitFieldRequired,
    #[error("expected {expected} coordinate pairs, got {got}")]
    CountMismatch { expected: usize, got: usize },
}

/// A commuting pair of members of a fixed classical Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutingPair {
    pub alg: LieAlgebra,
    pub a: Mat<GRat>,
    pub b: Mat<GRat>,
}

impl CommutingPair {
    pub fn new(alg: LieAlgebra, a: Mat<GRat>, b: Mat<GRat>) -> Result<Self, HilbError> {
        if !alg.contains(&a) || !alg.contains(&b) {
            return Err(HilbError::MembershipViolation(alg.label()));
        }
        if !Mat::commutator(&a, &b).is_zero() {
            return Err(HilbError::NonCommuting);
        }
        Ok(CommutingPair { alg, a, b })
    }
}

/// Cyclicity is decided by certificate: a found witness is a proof, a
/// deterministic criterion can rule it out, and bounded random failure is
/// reported as evidence, not proof.
#[derive(Clone, Debug, PartialEq)]
pub enum Cyclicity {
    CertifiedYes { witness: Vec<GRat> },
    ProbablyNo { trials: usize },
    CertifiedNo,
}

impl Cyclicity {
    pub fn is_yes(&self) -> bool {
        matches!(self, Cyclicity::CertifiedYes { .. })
    }
}

#[derive(Clone, Debug)]
pub struct HilbClass {
    pub dim_z: usize,
    pub in_hilb: bool,
    pub a_regular: bool,
    pub b_regular: bool,
    pub nilpotent_pair: bool,
    pub cyclic: Cyclicity,
}

/// Canonicalized image of a pair under simultaneous diagonalization: one
/// (x, y) coordinate pair per Cartan slot, ordered canonically under the
/// Weyl action. For D the encoding cannot always see the flip parity; the
/// flag records when that happens.
#[derive(Clone, Debug, PartialEq)]
pub struct ChowValue {
    pub pairs: Vec<(GRat, GRat)>,
    pub parity_ambiguous: bool,
}

/// Dimension of the common centralizer of `mats` inside the algebra.
pub fn common_centralizer_dim(alg: &LieAlgebra, mats: &[&Mat<GRat>]) -> usize {
    let basis = alg.basis();
    let m = alg.msize();
    let dim = basis.len();
    let rows = mats.len() * m * m;
    let cols: Vec<Vec<GRat>> = basis
        .iter()
        .map(|bi| {
            let mut col = Vec::with_capacity(rows);
            for mat in mats {
                col.extend(Mat::commutator(mat, bi).entries().iter().cloned());
            }
            col
        })
        .collect();
    let stacked = Mat::from_fn(rows, dim, |r, c| cols[c][r].clone());
    dim - stacked.rank()
}

pub fn is_regular(alg: &LieAlgebra, x: &Mat<GRat>) -> bool {
    common_centralizer_dim(alg, &[x]) == alg.rank
}

/// Incremental row-echelon span for Krylov closures.
struct SpanBuilder {
    rows: Vec<Vec<GRat>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    fn new() -> Self {
        SpanBuilder {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current rows; if a residue survives, absorb
    /// it and report growth.
    fn insert(&mut self, mut v: Vec<GRat>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !Ring::is_zero(&v[p]) {
                let c = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        let pivot = match v.iter().position(|x| !Ring::is_zero(x)) {
            Some(j) => j,
            None => return false,
        };
        let inv = v[pivot].inv();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rows.push(v);
        self.pivots.push(pivot);
        true
    }
}

/// Dimension of the smallest subspace containing `v` and stable under
/// every matrix in `mats`.
pub fn krylov_dim(mats: &[&Mat<GRat>], v: &[GRat]) -> usize {
    let mut span = SpanBuilder::new();
    let mut queue: Vec<Vec<GRat>> = Vec::new();
    if span.insert(v.to_vec()) {
        queue.push(v.to_vec());
    }
    while let Some(w) = queue.pop() {
        for mat in mats {
            let u = mat.mul_vec(&w);
            if span.insert(u.clone()) {
                queue.push(u);
            }
        }
    }
    span.dim()
}

/// Is y expressible as a polynomial in x (inside the full matrix algebra)?
fn polynomial_in(x: &Mat<GRat>, y: &Mat<GRat>) -> bool {
    let m = x.nrows;
    let mut pows: Vec<Mat<GRat>> = Vec::with_capacity(m);
    pows.push(Mat::identity(m));
    for _ in 1..m {
        let next = pows.last().unwrap() * x;
        pows.push(next);
    }
    let stacked = Mat::from_fn(m * m, m, |r, c| pows[c].entries()[r].clone());
    stacked.solve(y.entries()).is_some()
}

/// Cyclicity of the pair algebra generated by `a` and `b`. When one matrix
/// is a polynomial in the other the question reduces to a single matrix,
/// where nonderogatory (minimal = characteristic polynomial) is decisive;
/// otherwise seeded random rational vectors hunt for a Krylov witness.
pub fn cyclicity(a: &Mat<GRat>, b: &Mat<GRat>, seed: u64, trials: usize) -> Cyclicity {
    let m = a.nrows;
    let single: Option<&Mat<GRat>> = if polynomial_in(a, b) {
        Some(a)
    } else if polynomial_in(b, a) {
        Some(b)
    } else {
        None
    };
    let mut guaranteed = false;
    if let Some(x) = single {
        if x.minimal_poly().degree() == Some(m) {
            guaranteed = true;
        } else {
            return Cyclicity::CertifiedNo;
        }
    }
    let mut sampler = Sampler::new(seed);
    let budget = if guaranteed { trials.max(1) + 64 } else { trials };
    for _ in 0..budget {
        let v = sampler.vector(m, ScalarField::Q);
        if krylov_dim(&[a, b], &v) == m {
            return Cyclicity::CertifiedYes { witness: v };
        }
    }
    if guaranteed {
        unreachable!("a nonderogatory generator admits a cyclic vector");
    }
    Cyclicity::ProbablyNo { trials }
}

pub fn classify(pair: &CommutingPair, seed: u64, trials: usize) -> HilbClass {
    let alg = &pair.alg;
    let m = alg.msize();
    let rank = alg.rank;
    let dim_z = common_centralizer_dim(alg, &[&pair.a, &pair.b]);
    HilbClass {
        dim_z,
        in_hilb: dim_z == rank,
        a_regular: is_regular(alg, &pair.a),
        b_regular: is_regular(alg, &pair.b),
        nilpotent_pair: pair.a.pow(m).is_zero() && pair.b.pow(m).is_zero(),
        cyclic: cyclicity(&pair.a, &pair.b, seed, trials),
    }
}

/// The unique scalar with B - mu2 * f irregular, for a zero-fiber pair in
/// standard form (A is the standard principal nilpotent, B in its
/// centralizer). Read off as the f-coefficient of B in the structured
/// centralizer basis, then post-verified against the regularity criterion.
pub fn mu2(pair: &CommutingPair) -> Result<GRat, HilbError> {
    let alg = &pair.alg;
    let f = alg.principal_nilpotent();
    if pair.a != f {
        return Err(HilbError::NotStandardForm(
            "A must be the standard principal nilpotent".into(),
        ));
    }
    let basis = alg.centralizer_f_basis();
    let m = alg.msize();
    let stacked = Mat::from_fn(m * m, basis.len(), |r, c| basis[c].entries()[r].clone());
    let coeffs = stacked
        .solve(pair.b.entries())
        .ok_or(HilbError::NotInCentralizer)?;
    let mu = coeffs[0].clone();
    let at_mu = &pair.b - &f.scale(&mu);
    assert!(
        common_centralizer_dim(alg, &[&at_mu]) > alg.rank,
        "B - mu2 f must be irregular"
    );
    let mut sampler = Sampler::new(0x6d75_32);
    for _ in 0..3 {
        let other = mu.clone() + GRat::from_rat(sampler.nonzero_rat());
        let shifted = &pair.b - &f.scale(&other);
        assert!(
            is_regular(alg, &shifted),
            "B - mu f must be regular away from mu2"
        );
    }
    Ok(mu)
}

fn pair_lex(a: &(GRat, GRat), b: &(GRat, GRat)) -> std::cmp::Ordering {
    a.0.lex_cmp(&b.0).then_with(|| a.1.lex_cmp(&b.1))
}

fn negated(p: &(GRat, GRat)) -> (GRat, GRat) {
    (-p.0.clone(), -p.1.clone())
}

/// Collapse a sign-symmetric multiset of coordinate pairs to one
/// representative per +- class, choosing the lexicographically larger
/// member. Fails if the multiset is not symmetric.
fn plus_minus_classes(mut items: Vec<(GRat, GRat)>) -> Option<Vec<(GRat, GRat)>> {
    items.sort_by(pair_lex);
    let mut reps = Vec::new();
    while let Some(p) = items.pop() {
        let n = negated(&p);
        let idx = items.iter().position(|q| *q == n)?;
        items.remove(idx);
        reps.push(p);
    }
    Some(reps)
}

/// Joint spectrum of a commuting pair: the multiset of simultaneous
/// generalized eigenvalue pairs of (a, b), computed from the semisimple
/// Jordan-Chevalley parts. Returns all `m` pairs sorted lexicographically.
pub fn joint_spectrum(a: &Mat<GRat>, b: &Mat<GRat>) -> Result<Vec<(GRat, GRat)>, HilbError> {
    let m = a.nrows;
    debug_assert!(Mat::commutator(a, b).is_zero());
    let (a_s, _, _) = a.jordan_chevalley();
    let (b_s, _, _) = b.jordan_chevalley();
    let roots_a = a_s
        .minimal_poly()
        .gaussian_roots()
        .ok_or(HilbError::SplitFieldRequired)?;
    let mut joint: Vec<(GRat, GRat)> = Vec::new();
    for (lam, _) in roots_a {
        let shifted = &a_s - &Mat::identity(m).scale(&lam);
        let kb = shifted.kernel_basis();
        let k = kb.len();
        let v = Mat::from_fn(m, k, |r, c| kb[c][r].clone());
        let mut restricted_cols: Vec<Vec<GRat>> = Vec::with_capacity(k);
        for j in 0..k {
            let rhs = b_s.mul_vec(&v.column(j));
            let col = v.solve(&rhs).expect("eigenspace of A_s is B_s-invariant");
            restricted_cols.push(col);
        }
        let restricted = Mat::from_fn(k, k, |r, c| restricted_cols[c][r].clone());
        let roots_b = restricted
            .minimal_poly()
            .gaussian_roots()
            .ok_or(HilbError::SplitFieldRequired)?;
        for (mu, _) in roots_b {
            let sub = &restricted - &Mat::identity(k).scale(&mu);
            let mult = k - sub.rank();
            for _ in 0..mult {
                joint.push((lam.clone(), mu.clone()));
            }
        }
    }
    debug_assert_eq!(joint.len(), m);
    joint.sort_by(pair_lex);
    Ok(joint)
}

/// Chow map: Jordan-Chevalley semisimple parts, simultaneous
/// diagonalization over Q(i), and Weyl canonicalization of the resulting
/// Cartan coordinates.
pub fn chow(pair: &CommutingPair) -> Result<ChowValue, HilbError> {
    chow_from_joint(&pair.alg, joint_spectrum(&pair.a, &pair.b)?)
}

/// Family-specific reduction of a joint spectrum to canonical Cartan
/// coordinates; the second half of the Chow map, split out so that point
/// multisets obtained elsewhere (e.g. from an ideal's support) can be
/// compared against matrix-level Chow values.
pub fn chow_from_joint(
    alg: &LieAlgebra,
    mut joint: Vec<(GRat, GRat)>,
) -> Result<ChowValue, HilbError> {
    let zero = (GRat::int(0), GRat::int(0));
    let label = alg.label();
    let reps = match alg.family {
        Family::A => joint,
        Family::B => {
            let idx = joint
                .iter()
                .position(|p| *p == zero)
                .ok_or(HilbError::MembershipViolation(label.clone()))?;
            joint.remove(idx);
            plus_minus_classes(joint).ok_or(HilbError::MembershipViolation(label))?
        }
        Family::C | Family::D => {
            plus_minus_classes(joint).ok_or(HilbError::MembershipViolation(label))?
        }
    };
    let parity_ambiguous = alg.family == Family::D && !reps.iter().any(|p| *p == zero);
    let pairs = canonicalize_weyl(alg, &reps)?;
    Ok(ChowValue {
        pairs,
        parity_ambiguous,
    })
}

/// Canonical encoding of Cartan coordinate pairs under the Weyl group:
/// A sorts; B and C flip each pair to the lexicographically larger sign
/// representative and sort; D does the same but keeps the number of strict
/// flips even, re-flipping the lexicographically smallest pair to repair
/// parity when no self-symmetric (0,0) pair absorbs it.
pub fn canonicalize_weyl(
    alg: &LieAlgebra,
    pairs: &[(GRat, GRat)],
) -> Result<Vec<(GRat, GRat)>, HilbError> {
    let expected = match alg.family {
        Family::A => alg.msize(),
        _ => alg.rank,
    };
    if pairs.len() != expected {
        return Err(HilbError::CountMismatch {
            expected,
            got: pairs.len(),
        });
    }
    let mut out = pairs.to_vec();
    match alg.family {
        Family::A => {}
        Family::B | Family::C => {
            for p in out.iter_mut() {
                let n = negated(p);
                if pair_lex(&n, p) == std::cmp::Ordering::Greater {
                    *p = n;
                }
            }
        }
        Family::D => {
            let mut flips = 0usize;
            for p in out.iter_mut() {
                let n = negated(p);
                if pair_lex(&n, p) == std::cmp::Ordering::Greater {
                    *p = n;
                    flips += 1;
                }
            }
            let zero = (GRat::int(0), GRat::int(0));
            if flips % 2 == 1 && !out.iter().any(|p| *p == zero) {
                let idx = out
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| pair_lex(a, b))
                    .map(|(i, _)| i)
                    .unwrap();
                out[idx] = negated(&out[idx]);
            }
        }
    }
    out.sort_by(pair_lex);
    Ok(out)
}

/// Push a standard-form sl2 pair (f + t e, B) through the principal sl2
/// triple of the target algebra.
pub fn embed_sl2(
    alg: &LieAlgebra,
    a2: &Mat<GRat>,
    b2: &Mat<GRat>,
) -> Result<CommutingPair, HilbError> {
    for x in [a2, b2] {
        if x.nrows != 2 || x.ncols != 2 {
            return Err(HilbError::NotStandardForm("input must be 2x2".into()));
        }
        if !Ring::is_zero(&(x[(0, 0)].clone() + x[(1, 1)].clone())) {
            return Err(HilbError::NotStandardForm("input must be traceless".into()));
        }
    }
    if a2[(1, 0)] != GRat::int(1) || !Ring::is_zero(&a2[(0, 0)]) {
        return Err(HilbError::NotStandardForm(
            "A must be f + t e, with subdiagonal 1 and zero diagonal".into(),
        ));
    }
    if !Mat::commutator(a2, b2).is_zero() {
        return Err(HilbError::NonCommuting);
    }
    let triple = alg.principal_sl2();
    let psi = |x: &Mat<GRat>| -> Mat<GRat> {
        let lower = triple.f.scale(&x[(1, 0)]);
        let diag = triple.h.scale(&x[(0, 0)]);
        let upper = triple.e.scale(&x[(0, 1)]);
        &(&lower + &diag) + &upper
    };
    CommutingPair::new(*alg, psi(a2), psi(b2))
}
