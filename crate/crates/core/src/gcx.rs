//! Fiberwise calculus on the complexified cotangent space: Poisson brackets
//! on polynomials in (z, z̄, p, p̄), reduction modulo the classical fiber
//! ideals, coisotropy and flow-identity verification, the non-reality
//! check, and the order-1 Lagrangian property of the spectral pair.
//!
//! z̄ and p̄ are independent formal variables (named `zb`, `pb`); complex
//! conjugation of coefficients only enters `nonreality_check`. The bracket
//! convention is {f,g} = ∂_p f ∂_z g − ∂_z f ∂_p g + ∂_p̄ f ∂_z̄ g − ∂_z̄ f ∂_p̄ g,
//! so {p, z} = 1; every verified identity is a vanishing statement and does
//! not depend on this sign choice.

use crate::field::{Field, GRat, Rat};
use crate::liealg::{Family, LieAlgebra};
use crate::mpoly::MPoly;
use crate::sampling::Sampler;
use std::sync::Arc;
use thiserror::Error;

/// Polynomial on the complexified phase space, in the variables
/// z, zb, p, pb (plus any formal deformation variables).
pub type PhaseElement = MPoly<GRat>;

#[derive(Debug, Error, PartialEq)]
pub enum GcxError {
    #[error("malformed fiber-ideal data: {0}")]
    Shape(String),
}

fn phase_ctx() -> Arc<Vec<String>> {
    Arc::new(["z", "zb", "p", "pb"].iter().map(|s| s.to_string()).collect())
}

/// One of the phase variables z, zb, p, pb.
pub fn phase_var(name: &str) -> PhaseElement {
    MPoly::var(&phase_ctx(), name)
}

fn ppow(k: usize) -> PhaseElement {
    MPoly::monomial_in(&phase_ctx(), vec![0, 0, k as u32, 0], GRat::int(1))
}

fn pbpow(k: usize) -> PhaseElement {
    MPoly::monomial_in(&phase_ctx(), vec![0, 0, 0, k as u32], GRat::int(1))
}

fn is_coefficient(f: &PhaseElement) -> bool {
    f.degree_in("p") == 0 && f.degree_in("pb") == 0
}

/// Poisson bracket with the convention
/// {f,g} = ∂_p f ∂_z g − ∂_z f ∂_p g + ∂_p̄ f ∂_z̄ g − ∂_z̄ f ∂_p̄ g.
pub fn poisson(f: &PhaseElement, g: &PhaseElement) -> PhaseElement {
    f.partial("p") * g.partial("z") - f.partial("z") * g.partial("p")
        + f.partial("pb") * g.partial("zb")
        - f.partial("zb") * g.partial("pb")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeTag {
    A,
    BC,
    D,
}

/// Fiber ideal of a classical zero-fiber structure, with its generators and
/// the rewrite system to normal forms.
///
/// Shapes A and BC use ⟨p^m, −p̄ + Q(p)⟩ with staircase {1, p, …, p^{m−1}};
/// shape D uses ⟨p^{2n−1}, −pp̄ + Q(p) + μ_{2n−2}p^{2n−2},
/// −p̄² + R(p) + ν_{2n−2}p^{2n−2}⟩ with staircase {1, …, p^{2n−2}, p̄},
/// where R is forced by the convolution ν_{2k} = Σ_{i+j=k+1} μ_{2i}μ_{2j}.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberIdeal {
    shape: ShapeTag,
    m: usize,
    mu: Vec<(u32, PhaseElement)>,
    nu_top: Option<PhaseElement>,
    gens: Vec<PhaseElement>,
    parameterized: bool,
}

fn check_coefficient(c: &PhaseElement, what: &str) -> Result<(), GcxError> {
    if is_coefficient(c) {
        Ok(())
    } else {
        Err(GcxError::Shape(format!(
            "{what} must only involve z and zb"
        )))
    }
}

impl FiberIdeal {
    /// ⟨p^m, −p̄ + μ₂p + … + μ_m p^{m−1}⟩.
    pub fn shape_a(m: usize, mu: &[PhaseElement]) -> Result<Self, GcxError> {
        if m < 2 || mu.len() != m - 1 {
            return Err(GcxError::Shape(format!(
                "shape A with m = {m} needs the {} coefficients mu_2..mu_m",
                m.saturating_sub(1)
            )));
        }
        let mut q = MPoly::zero();
        let mut stored = Vec::new();
        for (k, c) in mu.iter().enumerate() {
            check_coefficient(c, "mu")?;
            let idx = (k + 2) as u32;
            q = q + c.clone() * ppow(k + 1);
            stored.push((idx, c.clone()));
        }
        Ok(FiberIdeal {
            shape: ShapeTag::A,
            m,
            mu: stored,
            nu_top: None,
            gens: vec![ppow(m), q - phase_var("pb")],
            parameterized: true,
        })
    }

    /// ⟨p^m, −p̄ + μ₂p + μ₄p³ + …⟩: the odd sub-shape shared by the
    /// orthogonal-odd and symplectic families.
    pub fn shape_bc(m: usize, mu: &[PhaseElement]) -> Result<Self, GcxError> {
        if m < 2 || mu.len() != m / 2 {
            return Err(GcxError::Shape(format!(
                "shape BC with m = {m} needs the {} coefficients mu_2, mu_4, …",
                m / 2
            )));
        }
        let mut q = MPoly::zero();
        let mut stored = Vec::new();
        for (k, c) in mu.iter().enumerate() {
            check_coefficient(c, "mu")?;
            let idx = 2 * (k + 1) as u32;
            q = q + c.clone() * ppow(2 * k + 1);
            stored.push((idx, c.clone()));
        }
        Ok(FiberIdeal {
            shape: ShapeTag::BC,
            m,
            mu: stored,
            nu_top: None,
            gens: vec![ppow(m), q - phase_var("pb")],
            parameterized: true,
        })
    }

    /// ⟨p^{2n−1}, −pp̄ + Σμ_{2k}p^{2k}, −p̄² + Σν_{2k}p^{2k}⟩ with the lower
    /// ν determined by the μ convolution and ν_{2n−2} free.
    pub fn shape_d(
        n: usize,
        mu: &[PhaseElement],
        nu_top: PhaseElement,
    ) -> Result<Self, GcxError> {
        if n < 2 || mu.len() != n - 1 {
            return Err(GcxError::Shape(format!(
                "shape D with n = {n} needs the {} coefficients mu_2..mu_(2n-2)",
                n.saturating_sub(1)
            )));
        }
        check_coefficient(&nu_top, "nu")?;
        let mut qfull = MPoly::zero();
        let mut stored = Vec::new();
        for (k, c) in mu.iter().enumerate() {
            check_coefficient(c, "mu")?;
            let idx = 2 * (k + 1) as u32;
            qfull = qfull + c.clone() * ppow(2 * (k + 1));
            stored.push((idx, c.clone()));
        }
        let mut rfull = nu_top.clone() * ppow(2 * n - 2);
        for k in 1..=n.saturating_sub(2) {
            let mut conv = MPoly::zero();
            for i in 1..=k {
                let j = k + 1 - i;
                conv = conv + mu[i - 1].clone() * mu[j - 1].clone();
            }
            rfull = rfull + conv * ppow(2 * k);
        }
        let p = phase_var("p");
        let pb = phase_var("pb");
        Ok(FiberIdeal {
            shape: ShapeTag::D,
            m: 2 * n,
            mu: stored,
            nu_top: Some(nu_top),
            gens: vec![
                ppow(2 * n - 1),
                qfull - p * pb.clone(),
                rfull - pb.clone() * pb,
            ],
            parameterized: true,
        })
    }

    /// Unchecked construction from raw generators (for negative controls).
    /// The generators must still have the shape's leading terms (p^m and
    /// −p̄ + …, resp. −pp̄ + … and −p̄² + …) for reduction to make sense.
    pub fn from_generators(shape: ShapeTag, m: usize, gens: Vec<PhaseElement>) -> Self {
        FiberIdeal {
            shape,
            m,
            mu: Vec::new(),
            nu_top: None,
            gens,
            parameterized: false,
        }
    }

    /// Fiber ideal of the given classical algebra in its standard
    /// representation, with coefficients drawn from the sampler.
    pub fn sample_for(alg: &LieAlgebra, sampler: &mut Sampler, degree: u32) -> Self {
        let m = alg.msize();
        match alg.family {
            Family::A => {
                let mu: Vec<PhaseElement> =
                    (0..m - 1).map(|_| random_coefficient(sampler, degree)).collect();
                FiberIdeal::shape_a(m, &mu).expect("valid sampled coefficients")
            }
            Family::B | Family::C => {
                let mu: Vec<PhaseElement> =
                    (0..m / 2).map(|_| random_coefficient(sampler, degree)).collect();
                FiberIdeal::shape_bc(m, &mu).expect("valid sampled coefficients")
            }
            Family::D => {
                let n = alg.rank;
                let mu: Vec<PhaseElement> =
                    (0..n - 1).map(|_| random_coefficient(sampler, degree)).collect();
                FiberIdeal::shape_d(n, &mu, random_coefficient(sampler, degree))
                    .expect("valid sampled coefficients")
            }
        }
    }

    pub fn shape(&self) -> ShapeTag {
        self.shape
    }

    /// Codimension of the ideal (size of the staircase).
    pub fn codimension(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[PhaseElement] {
        &self.gens
    }

    /// Normal form over the staircase basis: substitutes the rewrite rules
    /// until no generator's leading monomial divides any term. Idempotent;
    /// zero exactly on ideal members.
    pub fn reduce_mod(&self, f: &PhaseElement) -> PhaseElement {
        match self.shape {
            ShapeTag::A | ShapeTag::BC => {
                let q = self.gens[1].clone() + phase_var("pb");
                f.subst("pb", &q)
                    .truncate_above(&["p"], (self.m - 1) as u32)
            }
            ShapeTag::D => self.reduce_d(f),
        }
    }

    fn reduce_d(&self, f: &PhaseElement) -> PhaseElement {
        let p = phase_var("p");
        let pb = phase_var("pb");
        let qfull = self.gens[1].clone() + p.clone() * pb.clone();
        let rfull = self.gens[2].clone() + pb.clone() * pb.clone();
        let mut cur = f.clone();
        loop {
            let pb_deg = cur.degree_in("pb");
            if pb_deg >= 2 {
                let mut next = cur.coeff_in("pb", 0) + cur.coeff_in("pb", 1) * pb.clone();
                for l in 2..=pb_deg {
                    next = next + cur.coeff_in("pb", l) * pbpow((l - 2) as usize) * rfull.clone();
                }
                cur = next;
                continue;
            }
            let c1 = cur.coeff_in("pb", 1);
            if c1.degree_in("p") >= 1 {
                let mut next = cur.coeff_in("pb", 0) + c1.coeff_in("p", 0) * pb.clone();
                for k in 1..=c1.degree_in("p") {
                    next = next + c1.coeff_in("p", k) * ppow((k - 1) as usize) * qfull.clone();
                }
                cur = next;
                continue;
            }
            let truncated = cur.truncate_above(&["p"], (self.m - 2) as u32);
            if truncated == cur {
                return cur;
            }
            cur = truncated;
        }
    }
}

/// Whether every pairwise bracket of generators lies in the ideal — the
/// hypothesis of the reduction lemma and the content of the coisotropy
/// statement for the classical fiber ideals.
pub fn verify_coisotropy(ideal: &FiberIdeal) -> bool {
    let gens = ideal.generators();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !ideal.reduce_mod(&poisson(&gens[i], &gens[j])).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Per-generator variation under the Hamiltonian H: the normal forms of
/// {H mod I, f_k} mod I. (Pre-reducing H is licensed by the reduction
/// lemma whenever the ideal is coisotropic.)
pub fn hamiltonian_variation(ideal: &FiberIdeal, h: &PhaseElement) -> Vec<PhaseElement> {
    let hred = ideal.reduce_mod(h);
    ideal
        .generators()
        .iter()
        .map(|f| ideal.reduce_mod(&poisson(&hred, f)))
        .collect()
}

/// Coefficient attribution of a variation at the μ = 0 base point:
/// δμ_i per subscript, plus δν_{2n−2} for shape D.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientDeltas {
    pub mu: Vec<(u32, PhaseElement)>,
    pub nu_top: Option<PhaseElement>,
}

/// Extracts coefficient deltas of a Hamiltonian variation. Returns None
/// unless the ideal was built with all μ = 0, the Hamiltonian preserves the
/// zero-section (the p^m generator does not move) and the deltas lie in the
/// span of the coefficient directions.
pub fn coefficient_variation(
    ideal: &FiberIdeal,
    h: &PhaseElement,
) -> Option<CoefficientDeltas> {
    if !ideal.parameterized || !ideal.mu.iter().all(|(_, c)| c.is_zero()) {
        return None;
    }
    let deltas = hamiltonian_variation(ideal, h);
    if !deltas[0].is_zero() {
        return None;
    }
    match ideal.shape {
        ShapeTag::A | ShapeTag::BC => {
            let d = &deltas[1];
            if d.degree_in("pb") > 0 || !d.coeff_in("p", 0).is_zero() {
                return None;
            }
            let mu = (2..=ideal.m as u32)
                .map(|i| (i, d.coeff_in("p", i - 1)))
                .collect();
            Some(CoefficientDeltas { mu, nu_top: None })
        }
        ShapeTag::D => {
            let top = (ideal.m - 2) as u32;
            let d2 = &deltas[1];
            let d3 = &deltas[2];
            if d2.degree_in("pb") > 0 || d3.degree_in("pb") > 0 {
                return None;
            }
            let mut mu = Vec::new();
            let mut seen = MPoly::zero();
            for k in 1..=top / 2 {
                let c = d2.coeff_in("p", 2 * k);
                seen = seen + c.clone() * ppow(2 * k as usize);
                mu.push((2 * k, c));
            }
            if &seen != d2 {
                return None;
            }
            let nu = d3.coeff_in("p", top);
            if nu.clone() * ppow(top as usize) != *d3 {
                return None;
            }
            Some(CoefficientDeltas {
                mu,
                nu_top: Some(nu),
            })
        }
    }
}

/// Exact evaluation of the reality quantity μ₂(z)·conj(μ₂(z)) at one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct RealitySample {
    pub z: GRat,
    pub norm_sq: Rat,
    pub on_unit_circle: bool,
    pub compatible: bool,
}

/// Evaluates μ₂·μ̄₂ at each sample point (with z̄ bound to the conjugate of
/// the sample). The first return is the non-reality flag: no sample lies on
/// the unit circle. `compatible` reports the orientation predicate |μ₂|² < 1.
pub fn nonreality_check(
    mu2: &PhaseElement,
    samples: &[GRat],
) -> Result<(bool, Vec<RealitySample>), GcxError> {
    check_coefficient(mu2, "mu_2")?;
    let one = Rat::from_integer(1.into());
    let mut out = Vec::with_capacity(samples.len());
    for z in samples {
        let mut values = std::collections::BTreeMap::new();
        values.insert("z".to_string(), z.clone());
        values.insert("zb".to_string(), z.conj());
        let v = mu2.eval(&values);
        let norm_sq = (v.clone() * v.conj()).re;
        out.push(RealitySample {
            z: z.clone(),
            norm_sq: norm_sq.clone(),
            on_unit_circle: norm_sq == one,
            compatible: norm_sq < one,
        });
    }
    Ok((out.iter().all(|s| !s.on_unit_circle), out))
}

/// Spectral pair P = p^m + Σ tᵢ cᵢ(z, z̄) p^{m−i}, Q = −p̄ at the μ = 0 base
/// point, with the deformation variables tᵢ carried as formal nilpotents of
/// order 2 (any monomial of total t-degree ≥ 2 is dropped).
#[derive(Debug, Clone)]
pub struct DeformedPair {
    m: usize,
    tnames: Vec<String>,
    pub p_gen: PhaseElement,
    pub q_gen: PhaseElement,
}

impl DeformedPair {
    pub fn new(m: usize, tcoeffs: &[(u32, PhaseElement)]) -> Result<Self, GcxError> {
        if m < 2 {
            return Err(GcxError::Shape("need m >= 2".into()));
        }
        let mut p_gen = ppow(m);
        let mut tnames = Vec::new();
        for (i, c) in tcoeffs {
            if *i < 2 || *i as usize > m {
                return Err(GcxError::Shape(format!(
                    "deformation index {i} out of range 2..={m}"
                )));
            }
            check_coefficient(c, "t coefficient")?;
            let name = format!("t{i}");
            let tvar = MPoly::var(&Arc::new(vec![name.clone()]), &name);
            p_gen = p_gen + tvar * c.clone() * ppow(m - *i as usize);
            if !tnames.contains(&name) {
                tnames.push(name);
            }
        }
        Ok(DeformedPair {
            m,
            tnames,
            p_gen,
            q_gen: -phase_var("pb"),
        })
    }

    /// Quotient by t-degree ≥ 2.
    pub fn truncate_t(&self, f: &PhaseElement) -> PhaseElement {
        let names: Vec<&str> = self.tnames.iter().map(|s| s.as_str()).collect();
        f.truncate_above(&names, 1)
    }

    /// Normal form modulo ⟨P, Q⟩ in the t-truncated ring: p̄ ↦ 0 and
    /// p^m ↦ −(t-tail of P), iterated to a fixpoint.
    pub fn reduce(&self, f: &PhaseElement) -> PhaseElement {
        let neg_tail = ppow(self.m) - self.p_gen.clone();
        let mut cur = self.truncate_t(&f.coeff_in("pb", 0));
        loop {
            let d = cur.degree_in("p") as usize;
            if d < self.m {
                return cur;
            }
            let mut next = MPoly::zero();
            for k in 0..self.m {
                next = next + cur.coeff_in("p", k as u32) * ppow(k);
            }
            for k in self.m..=d {
                next = next + cur.coeff_in("p", k as u32) * ppow(k - self.m) * neg_tail.clone();
            }
            cur = self.truncate_t(&next);
        }
    }

    /// Residual of {P, Q} mod ⟨P, Q⟩ mod t²; zero exactly when the pair is
    /// Lagrangian to first order in the deformation.
    pub fn bracket_residual(&self) -> PhaseElement {
        self.reduce(&self.truncate_t(&poisson(&self.p_gen, &self.q_gen)))
    }

    pub fn is_lagrangian_order1(&self) -> bool {
        self.bracket_residual().is_zero()
    }
}

/// Random polynomial in z and zb of total degree ≤ `degree`.
pub fn random_coefficient(sampler: &mut Sampler, degree: u32) -> PhaseElement {
    let ctx = phase_ctx();
    let mut acc = MPoly::zero();
    for i in 0..=degree {
        for j in 0..=degree - i {
            acc = acc
                + MPoly::monomial_in(&ctx, vec![i, j, 0, 0], GRat::from_rat(sampler.rat()));
        }
    }
    acc
}

fn random_hamiltonian(
    ideal: &FiberIdeal,
    sampler: &mut Sampler,
    degree: u32,
) -> PhaseElement {
    let mut h = MPoly::zero();
    for k in 0..=ideal.m {
        for l in 0..=2usize {
            if k + l == 0 {
                continue;
            }
            if ideal.shape != ShapeTag::A && (k + l) % 2 == 0 {
                continue;
            }
            h = h + random_coefficient(sampler, degree) * ppow(k) * pbpow(l);
        }
    }
    h
}

/// One verified identity of the fiber calculus, for reporting.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub id: String,
    pub pass: bool,
    pub residual: Option<String>,
}

fn record(checks: &mut Vec<IdentityCheck>, id: &str, failure: Option<String>) {
    checks.push(IdentityCheck {
        id: id.to_string(),
        pass: failure.is_none(),
        residual: failure,
    });
}

/// Runs the identity suite for one algebra over the given seeds: coisotropy
/// with a corrupted negative control, the reduction lemma, trivial actions
/// or the degree bound, the μ = 0 variation formulas, the order-1
/// Lagrangian property and the non-reality samples.
pub fn verify_algebra(alg: &LieAlgebra, degree: u32, seeds: &[u64]) -> Vec<IdentityCheck> {
    let mut checks = Vec::new();
    let m = alg.msize();

    let mut fail = None;
    for &seed in seeds {
        let mut s = Sampler::new(seed);
        let ideal = FiberIdeal::sample_for(alg, &mut s, degree);
        if !verify_coisotropy(&ideal) {
            fail = Some(format!("seed {seed}: generator bracket not in the ideal"));
            break;
        }
    }
    record(&mut checks, "coisotropy", fail);

    // A generator with a z-dependent constant term breaks the proof's
    // hypothesis; the bracket with p^m (resp. p^{2n-1}) must survive.
    let corrupted = match alg.family {
        Family::A | Family::B | Family::C => FiberIdeal::from_generators(
            ShapeTag::BC,
            m,
            vec![ppow(m), phase_var("z") - phase_var("pb")],
        ),
        Family::D => {
            let p = phase_var("p");
            let pb = phase_var("pb");
            FiberIdeal::from_generators(
                ShapeTag::D,
                m,
                vec![
                    ppow(m - 1),
                    phase_var("z") - p * pb.clone(),
                    -(pb.clone() * pb),
                ],
            )
        }
    };
    record(
        &mut checks,
        "coisotropy-negative-control",
        if verify_coisotropy(&corrupted) {
            Some("corrupted ideal passed".into())
        } else {
            None
        },
    );

    let mut fail = None;
    'lemma: for &seed in seeds {
        let mut s = Sampler::new(seed ^ 0x1e44a);
        let ideal = FiberIdeal::sample_for(alg, &mut s, degree);
        let h = random_hamiltonian(&ideal, &mut s, degree);
        let hred = ideal.reduce_mod(&h);
        for f in ideal.generators() {
            let raw = ideal.reduce_mod(&poisson(&h, f));
            let red = ideal.reduce_mod(&poisson(&hred, f));
            if raw != red {
                fail = Some(format!("seed {seed}: residual {}", raw - red));
                break 'lemma;
            }
        }
    }
    record(&mut checks, "reduction-lemma", fail);

    match alg.family {
        Family::A | Family::B | Family::C => {
            let mut fail = None;
            'triv: for &seed in seeds {
                let mut s = Sampler::new(seed ^ 0x7141a);
                let ideal = FiberIdeal::sample_for(alg, &mut s, degree);
                for extra in 0..2 {
                    let h = random_coefficient(&mut s, degree) * ppow(m + extra);
                    for f in ideal.generators() {
                        let delta = ideal.reduce_mod(&poisson(&h, f));
                        if !delta.is_zero() {
                            fail = Some(format!("seed {seed}: residual {delta}"));
                            break 'triv;
                        }
                    }
                }
            }
            record(&mut checks, "high-power-trivial-action", fail);
        }
        Family::D => {
            let mut fail = None;
            'deg: for &seed in seeds {
                let mut s = Sampler::new(seed ^ 0xde64);
                let ideal = FiberIdeal::sample_for(alg, &mut s, degree);
                let a = random_coefficient(&mut s, degree);
                let b = random_coefficient(&mut s, degree);
                for (k, l, k2, l2) in degree_bound_tuples(alg.rank) {
                    let f = a.clone() * ppow(k) * pbpow(l);
                    let g = b.clone() * ppow(k2) * pbpow(l2);
                    let res = ideal.reduce_mod(&poisson(&f, &g));
                    if !res.is_zero() {
                        fail = Some(format!(
                            "seed {seed}: ({k},{l})x({k2},{l2}) residual {res}"
                        ));
                        break 'deg;
                    }
                }
            }
            record(&mut checks, "degree-bound-vanishing", fail);
        }
    }

    record(&mut checks, "coefficient-variation", variation_identity(alg, degree, seeds));

    if alg.family == Family::D {
        record(&mut checks, "sigma-flow", sigma_flow_identity(alg, degree, seeds));
    }

    let tindices: Vec<u32> = match alg.family {
        Family::A => (2..=m as u32).collect(),
        Family::B | Family::C | Family::D => (1..=(m / 2) as u32).map(|k| 2 * k).collect(),
    };
    let mut fail = None;
    for &seed in seeds {
        let mut s = Sampler::new(seed ^ 0x5bec);
        let holo: Vec<(u32, PhaseElement)> = tindices
            .iter()
            .map(|&i| (i, random_zonly(&mut s, degree)))
            .collect();
        let pair = DeformedPair::new(m, &holo).expect("valid deformation");
        let res = pair.bracket_residual();
        if !res.is_zero() {
            fail = Some(format!("seed {seed}: residual {res}"));
            break;
        }
    }
    record(&mut checks, "lagrangian-order1-holomorphic", fail);

    let anti = DeformedPair::new(m, &[(2, phase_var("zb"))]).expect("valid deformation");
    let expected = MPoly::var(&Arc::new(vec!["t2".to_string()]), "t2") * ppow(m - 2);
    let res = anti.bracket_residual();
    record(
        &mut checks,
        "lagrangian-order1-antiholomorphic-control",
        if !anti.is_lagrangian_order1() && res == expected {
            None
        } else {
            Some(format!("expected residual {expected}, got {res}"))
        },
    );

    record(&mut checks, "nonreality-samples", nonreality_frozen());

    checks
}

fn random_zonly(sampler: &mut Sampler, degree: u32) -> PhaseElement {
    let ctx = phase_ctx();
    let mut acc = MPoly::zero();
    for i in 0..=degree {
        acc = acc + MPoly::monomial_in(&ctx, vec![i, 0, 0, 0], GRat::from_rat(sampler.rat()));
    }
    acc
}

fn degree_bound_tuples(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let bound = 2 * n;
    let mut out = Vec::new();
    for k in 0..=bound {
        for l in 0..=2usize {
            for k2 in 0..=2usize {
                for l2 in 0..=2usize {
                    if k + l + k2 + l2 == bound || k + l + k2 + l2 == bound + 1 {
                        out.push((k, l, k2, l2));
                    }
                }
            }
        }
    }
    out
}

/// δμ_{2i} = ∂̄w_{2i−1} at the μ = 0 base point (with the ∂w₋·ν correction
/// on the top coefficient for shape D).
fn variation_identity(alg: &LieAlgebra, degree: u32, seeds: &[u64]) -> Option<String> {
    let m = alg.msize();
    for &seed in seeds {
        let mut s = Sampler::new(seed ^ 0xbe17);
        match alg.family {
            Family::A | Family::B | Family::C => {
                let zero = vec![MPoly::zero(); if alg.family == Family::A { m - 1 } else { m / 2 }];
                let ideal = if alg.family == Family::A {
                    FiberIdeal::shape_a(m, &zero)
                } else {
                    FiberIdeal::shape_bc(m, &zero)
                }
                .expect("zero base point");
                let mut h = MPoly::zero();
                let mut w = vec![MPoly::zero(); m];
                for k in 1..m {
                    if alg.family != Family::A && k % 2 == 0 {
                        continue;
                    }
                    w[k] = random_coefficient(&mut s, degree);
                    h = h + w[k].clone() * ppow(k);
                }
                let deltas = match coefficient_variation(&ideal, &h) {
                    Some(d) => d,
                    None => return Some(format!("seed {seed}: delta not in coefficient span")),
                };
                for (i, delta) in &deltas.mu {
                    let expected = w[*i as usize - 1].partial("zb");
                    if *delta != expected {
                        return Some(format!("seed {seed}: delta mu_{i} = {delta}"));
                    }
                }
            }
            Family::D => {
                let n = alg.rank;
                let nu = random_coefficient(&mut s, degree);
                let ideal = FiberIdeal::shape_d(n, &vec![MPoly::zero(); n - 1], nu.clone())
                    .expect("zero base point");
                let wminus = random_coefficient(&mut s, degree);
                let mut w = vec![MPoly::zero(); m];
                let mut h = wminus.clone() * phase_var("pb");
                for k in (1..2 * n - 1).step_by(2) {
                    w[k] = random_coefficient(&mut s, degree);
                    h = h + w[k].clone() * ppow(k);
                }
                let deltas = match coefficient_variation(&ideal, &h) {
                    Some(d) => d,
                    None => return Some(format!("seed {seed}: delta not in coefficient span")),
                };
                for (i, delta) in &deltas.mu {
                    let mut expected = w[*i as usize - 1].partial("zb");
                    if *i as usize == 2 * n - 2 {
                        expected = expected + wminus.partial("z") * nu.clone();
                    }
                    if *delta != expected {
                        return Some(format!("seed {seed}: delta mu_{i} = {delta}"));
                    }
                }
                // The nu-flow formula is stated for H = w_minus pb + w p^(2n-3).
                let h2 =
                    wminus.clone() * phase_var("pb") + w[2 * n - 3].clone() * ppow(2 * n - 3);
                let deltas = match coefficient_variation(&ideal, &h2) {
                    Some(d) => d,
                    None => return Some(format!("seed {seed}: delta not in coefficient span")),
                };
                let dn = deltas.nu_top.expect("shape D reports nu");
                let expected =
                    wminus.clone() * nu.partial("zb") + MPoly::constant(GRat::int(2)) * wminus.partial("zb") * nu.clone();
                if dn != expected {
                    return Some(format!("seed {seed}: delta nu = {dn}"));
                }
            }
        }
    }
    None
}

/// With ν = σ², the ν-flow factors as δν = 2σ·∂̄(w₋σ), i.e. δσ = ∂̄(w₋σ).
fn sigma_flow_identity(alg: &LieAlgebra, degree: u32, seeds: &[u64]) -> Option<String> {
    let n = alg.rank;
    for &seed in seeds {
        let mut s = Sampler::new(seed ^ 0x51f1);
        let sigma = random_coefficient(&mut s, degree);
        let ideal = FiberIdeal::shape_d(
            n,
            &vec![MPoly::zero(); n - 1],
            sigma.clone() * sigma.clone(),
        )
        .expect("zero base point");
        let wminus = random_coefficient(&mut s, degree);
        let w_top = random_coefficient(&mut s, degree);
        let h = wminus.clone() * phase_var("pb") + w_top * ppow(2 * n - 3);
        let deltas = coefficient_variation(&ideal, &h)?;
        let dn = deltas.nu_top.expect("shape D reports nu");
        let dsigma = (wminus * sigma.clone()).partial("zb");
        let expected = MPoly::constant(GRat::int(2)) * sigma * dsigma;
        if dn != expected {
            return Some(format!("seed {seed}: delta nu = {dn}"));
        }
    }
    None
}

fn nonreality_frozen() -> Option<String> {
    let pts = [GRat::int(0), GRat::int(2), GRat::new(rat_of(1), rat_of(1))];
    let (ok_zero, _) = nonreality_check(&MPoly::zero(), &pts).expect("valid mu");
    if !ok_zero {
        return Some("mu = 0 flagged".into());
    }
    let (ok_one, samples) = nonreality_check(&MPoly::one(), &pts).expect("valid mu");
    if ok_one || samples.iter().any(|s| s.compatible) {
        return Some("mu = 1 not flagged".into());
    }
    let half_z = phase_var("z").scale(&GRat::frac(1, 2));
    let (ok, samples) =
        nonreality_check(&half_z, &[GRat::new(rat_of(1), rat_of(1))]).expect("valid mu");
    let expected = Rat::new(1.into(), 2.into());
    if !ok || samples[0].norm_sq != expected || !samples[0].compatible {
        return Some(format!("|mu|^2 = {} at 1+i", samples[0].norm_sq));
    }
    None
}

fn rat_of(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zvar() -> PhaseElement {
        phase_var("z")
    }

    fn zbvar() -> PhaseElement {
        phase_var("zb")
    }

    #[test]
    fn bracket_convention_and_displayed_brackets() {
        assert_eq!(poisson(&phase_var("p"), &zvar()), MPoly::one());
        assert_eq!(poisson(&phase_var("pb"), &zbvar()), MPoly::one());
        let zfree = ppow(3) + phase_var("pb") * ppow(1);
        assert!(poisson(&ppow(2), &zfree).is_zero());

        // {p^n, -pb + Q(p)} = n p^(n-1) dQ/dz.
        let q = zvar() * zbvar() * ppow(1) + zbvar() * zbvar() * ppow(2);
        let gen = q.clone() - phase_var("pb");
        let lhs = poisson(&ppow(4), &gen);
        let expected = MPoly::constant(GRat::int(4)) * ppow(3) * q.partial("z");
        assert_eq!(lhs, expected);
    }

    fn small_poly(sampler: &mut Sampler) -> PhaseElement {
        let ctx = phase_ctx();
        let mut acc = MPoly::zero();
        for _ in 0..4 {
            let exps: Vec<u32> = (0..4).map(|_| (sampler.pick(3)) as u32).collect();
            acc = acc + MPoly::monomial_in(&ctx, exps, GRat::from_rat(sampler.rat()));
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn bracket_is_antisymmetric_and_satisfies_jacobi(seed in 0u64..1u64 << 48) {
            let mut s = Sampler::new(seed);
            let f = small_poly(&mut s);
            let g = small_poly(&mut s);
            let h = small_poly(&mut s);
            prop_assert_eq!(poisson(&f, &g), -poisson(&g, &f));
            let jacobi = poisson(&f, &poisson(&g, &h))
                + poisson(&g, &poisson(&h, &f))
                + poisson(&h, &poisson(&f, &g));
            prop_assert!(jacobi.is_zero());
            let leibniz = poisson(&f, &(g.clone() * h.clone()))
                - (poisson(&f, &g) * h.clone() + g.clone() * poisson(&f, &h));
            prop_assert!(leibniz.is_zero());
        }

        #[test]
        fn nilpotent_truncation_is_a_ring_quotient(seed in 0u64..1u64 << 48) {
            let mut s = Sampler::new(seed);
            let pair = DeformedPair::new(
                4,
                &[(2, random_coefficient(&mut s, 1)), (3, random_coefficient(&mut s, 1))],
            )
            .unwrap();
            let tvars = Arc::new(vec!["t2".to_string(), "t3".to_string()]);
            let f = small_poly(&mut s)
                + MPoly::var(&tvars, "t2") * small_poly(&mut s)
                + MPoly::var(&tvars, "t3") * small_poly(&mut s);
            let g = small_poly(&mut s) + MPoly::var(&tvars, "t2") * small_poly(&mut s);
            prop_assert_eq!(
                pair.truncate_t(&(f.clone() * g.clone())),
                pair.truncate_t(&(pair.truncate_t(&f) * pair.truncate_t(&g)))
            );
            prop_assert_eq!(
                pair.truncate_t(&(f.clone() + g.clone())),
                pair.truncate_t(&f) + pair.truncate_t(&g)
            );
        }
    }

    #[test]
    fn reduction_computes_normal_forms() {
        let mu = vec![zbvar(), zvar() * zbvar(), MPoly::one()];
        let ideal = FiberIdeal::shape_a(4, &mu).unwrap();
        let q = ideal.generators()[1].clone() + phase_var("pb");
        assert_eq!(ideal.reduce_mod(&phase_var("pb")), q);
        for g in ideal.generators() {
            assert!(ideal.reduce_mod(g).is_zero());
        }
        let f = small_poly(&mut Sampler::new(5));
        let nf = ideal.reduce_mod(&f);
        assert_eq!(ideal.reduce_mod(&nf), nf, "idempotent");
        // Membership: multiples of generators vanish.
        let h = small_poly(&mut Sampler::new(6));
        for g in ideal.generators() {
            assert!(ideal.reduce_mod(&(g.clone() * h.clone())).is_zero());
        }

        // Shape D: pb^2 rewrites to R + nu p^(2n-2), and membership holds
        // for products (which exercises the convolution's confluence).
        let d = FiberIdeal::shape_d(3, &[zbvar(), zvar()], zvar() + zbvar()).unwrap();
        let rfull = d.generators()[2].clone() + phase_var("pb") * phase_var("pb");
        assert_eq!(d.reduce_mod(&(phase_var("pb") * phase_var("pb"))), rfull);
        for g in d.generators() {
            assert!(d.reduce_mod(&(g.clone() * h.clone())).is_zero());
            assert!(d.reduce_mod(&(g.clone() * phase_var("pb"))).is_zero());
        }
        let nf = d.reduce_mod(&h);
        assert_eq!(d.reduce_mod(&nf), nf);
        assert!(nf.degree_in("p") <= 4);
        assert!(nf.coeff_in("pb", 1).degree_in("p") == 0 && nf.degree_in("pb") <= 1);
    }

    #[test]
    fn classical_fiber_ideals_are_coisotropic() {
        let mut s = Sampler::new(42);
        for label in ["A4", "B2", "C2", "D3", "D4"] {
            let alg = LieAlgebra::parse(label).unwrap();
            for _ in 0..2 {
                let ideal = FiberIdeal::sample_for(&alg, &mut s, 2);
                assert!(verify_coisotropy(&ideal), "{label}");
            }
        }
    }

    #[test]
    fn corrupted_ideals_fail_coisotropy() {
        // Constant term in Q.
        let bad = FiberIdeal::from_generators(
            ShapeTag::A,
            5,
            vec![ppow(5), zvar() - phase_var("pb")],
        );
        assert!(!verify_coisotropy(&bad));

        // Shape D with the convolution dropped: R = 0 instead of mu_2^2 p^2.
        let p = phase_var("p");
        let pb = phase_var("pb");
        let broken = FiberIdeal::from_generators(
            ShapeTag::D,
            6,
            vec![
                ppow(5),
                zbvar() * ppow(2) - p * pb.clone(),
                -(pb.clone() * pb.clone()),
            ],
        );
        assert!(!verify_coisotropy(&broken));

        // Same data with the correct convolution passes.
        let good = FiberIdeal::shape_d(3, &[zbvar(), MPoly::zero()], MPoly::zero()).unwrap();
        assert!(verify_coisotropy(&good));
    }

    #[test]
    fn hamiltonians_reduce_before_acting() {
        let mut s = Sampler::new(7);
        for label in ["A3", "C2", "D3"] {
            let alg = LieAlgebra::parse(label).unwrap();
            let ideal = FiberIdeal::sample_for(&alg, &mut s, 2);
            let h = random_hamiltonian(&ideal, &mut s, 2);
            let hred = ideal.reduce_mod(&h);
            for f in ideal.generators() {
                assert_eq!(
                    ideal.reduce_mod(&poisson(&h, f)),
                    ideal.reduce_mod(&poisson(&hred, f)),
                    "{label}"
                );
            }
        }
    }

    #[test]
    fn variation_reads_off_dbar_of_the_hamiltonian() {
        // Type A at mu = 0: H = w p gives delta mu_2 = dbar w, and a full
        // polynomial Hamiltonian populates every coefficient.
        let ideal = FiberIdeal::shape_a(4, &[MPoly::zero(), MPoly::zero(), MPoly::zero()]).unwrap();
        let w = zvar() * zbvar() + zbvar() * zbvar();
        let deltas = coefficient_variation(&ideal, &(w.clone() * ppow(1))).unwrap();
        assert_eq!(deltas.mu[0], (2, w.partial("zb")));
        assert!(deltas.mu[1].1.is_zero() && deltas.mu[2].1.is_zero());

        let w2 = zvar() + zbvar();
        let w3 = zbvar() * zvar();
        let h = w.clone() * ppow(1) + w2.clone() * ppow(2) + w3.clone() * ppow(3);
        let deltas = coefficient_variation(&ideal, &h).unwrap();
        assert_eq!(deltas.mu[0].1, w.partial("zb"));
        assert_eq!(deltas.mu[1].1, w2.partial("zb"));
        assert_eq!(deltas.mu[2].1, w3.partial("zb"));
    }

    #[test]
    fn d_variation_reproduces_the_flow_identities() {
        // n = 3, mu = 0, nu free; H = w_minus pb + w3 p^3.
        let n = 3;
        let nu = zvar() * zbvar() + zbvar();
        let ideal = FiberIdeal::shape_d(n, &[MPoly::zero(), MPoly::zero()], nu.clone()).unwrap();
        let wm = zbvar() * zvar();
        let w3 = zvar() + zbvar() * zbvar();
        let h = wm.clone() * phase_var("pb") + w3.clone() * ppow(3);
        let deltas = hamiltonian_variation(&ideal, &h);
        assert!(deltas[0].is_zero());
        let p4 = ppow(4);
        assert_eq!(
            deltas[1],
            p4.clone() * (w3.partial("zb") + wm.partial("z") * nu.clone()),
            "second generator delta"
        );
        assert_eq!(
            deltas[2],
            p4.clone()
                * (wm.clone() * nu.partial("zb")
                    + MPoly::constant(GRat::int(2)) * wm.partial("zb") * nu.clone()),
            "third generator delta"
        );

        // An extra w1 p term changes mu_2 by dbar w1 and leaves the top
        // coefficient alone.
        let w1 = zbvar() * zbvar();
        let deltas = coefficient_variation(&ideal, &(h.clone() + w1.clone() * ppow(1))).unwrap();
        assert_eq!(deltas.mu[0], (2, w1.partial("zb")));
        assert_eq!(
            deltas.mu[1].1,
            w3.partial("zb") + wm.partial("z") * nu.clone()
        );

        // With nu = sigma^2 the nu-flow is 2 sigma dbar(w_minus sigma).
        let sigma = zvar() + zbvar();
        let ideal2 = FiberIdeal::shape_d(
            n,
            &[MPoly::zero(), MPoly::zero()],
            sigma.clone() * sigma.clone(),
        )
        .unwrap();
        let deltas = coefficient_variation(&ideal2, &h).unwrap();
        let dsigma = (wm.clone() * sigma.clone()).partial("zb");
        assert_eq!(
            deltas.nu_top.unwrap(),
            MPoly::constant(GRat::int(2)) * sigma * dsigma
        );
    }

    #[test]
    fn high_powers_and_degree_bound_act_trivially() {
        let mut s = Sampler::new(11);
        let alg = LieAlgebra::parse("B2").unwrap();
        let ideal = FiberIdeal::sample_for(&alg, &mut s, 2);
        for k in [5usize, 6, 7] {
            let h = random_coefficient(&mut s, 2) * ppow(k);
            for f in ideal.generators() {
                assert!(ideal.reduce_mod(&poisson(&h, f)).is_zero());
            }
        }

        let d3 = LieAlgebra::parse("D3").unwrap();
        let ideal = FiberIdeal::sample_for(&d3, &mut s, 2);
        let a = random_coefficient(&mut s, 2);
        let b = random_coefficient(&mut s, 2);
        for (k, l, k2, l2) in degree_bound_tuples(3) {
            let res = poisson(&(a.clone() * ppow(k) * pbpow(l)), &(b.clone() * ppow(k2) * pbpow(l2)));
            assert!(
                ideal.reduce_mod(&res).is_zero(),
                "degree {} bracket must die",
                k + l + k2 + l2
            );
        }
    }

    #[test]
    fn spectral_pair_is_lagrangian_exactly_for_holomorphic_data() {
        // No deformation at all.
        let trivial = DeformedPair::new(4, &[]).unwrap();
        assert!(trivial.is_lagrangian_order1());

        // Holomorphic coefficients of z-degree <= 2.
        let t2 = zvar() * zvar() + MPoly::constant(GRat::frac(1, 3));
        let t3 = zvar();
        let pair = DeformedPair::new(4, &[(2, t2), (3, t3)]).unwrap();
        assert!(pair.is_lagrangian_order1());
        assert!(pair.bracket_residual().is_zero());

        // An antiholomorphic coefficient leaves the residual dbar(t2) p^(m-2).
        let anti = DeformedPair::new(4, &[(2, zbvar() * zvar())]).unwrap();
        assert!(!anti.is_lagrangian_order1());
        let tvar = MPoly::var(&Arc::new(vec!["t2".to_string()]), "t2");
        assert_eq!(
            anti.bracket_residual(),
            tvar * (zbvar() * zvar()).partial("zb") * ppow(2)
        );
    }

    #[test]
    fn reality_quantity_is_evaluated_exactly() {
        let pts = [GRat::int(0), GRat::new(rat_of(1), rat_of(1))];
        let (ok, samples) = nonreality_check(&MPoly::zero(), &pts).unwrap();
        assert!(ok && samples.iter().all(|s| s.compatible));

        let (ok, samples) = nonreality_check(&MPoly::one(), &pts).unwrap();
        assert!(!ok && samples.iter().all(|s| s.on_unit_circle));

        let half_z = phase_var("z").scale(&GRat::frac(1, 2));
        let (ok, samples) =
            nonreality_check(&half_z, &[GRat::new(rat_of(1), rat_of(1))]).unwrap();
        assert!(ok);
        assert_eq!(samples[0].norm_sq, Rat::new(1.into(), 2.into()));
        assert!(samples[0].compatible);

        assert!(nonreality_check(&ppow(1), &pts).is_err());
    }

    #[test]
    fn identity_suite_passes_for_all_families() {
        for label in ["A2", "B2", "C2", "D3"] {
            let alg = LieAlgebra::parse(label).unwrap();
            for check in verify_algebra(&alg, 2, &[3, 4]) {
                assert!(
                    check.pass,
                    "{label} identity {} failed: {:?}",
                    check.id, check.residual
                );
            }
        }
    }
}
