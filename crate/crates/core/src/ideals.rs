//! Ideal presentations of commuting pairs: the idealic map, monomial
//! staircases and chart re-eliminations, Haiman coordinates, chart changes
//! for type D, support computation, and the symplectic rectangle check.
//!
//! Monomials are `(x-exponent, y-exponent)` pairs ordered lexicographically
//! with y dominant, so elimination prefers pure x-powers and the staircases
//! of two-generator ideals `<g(x), -y + Q(x)>` come out as a single row.

use crate::dual::Dual;
use crate::field::{Field, GRat, Rat};
use crate::hilb::{self, HilbError};
use crate::liealg::{Family, LieAlgebra};
use crate::matrix::Mat;
use crate::mpoly::{MPoly, SymScalar};
use crate::poly::UniPoly;
use crate::sampling::Sampler;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

/// `(x-exponent, y-exponent)` of a monomial `x^i y^j`.
pub type Monomial = (usize, usize);

fn mono_key(m: Monomial) -> (usize, usize) {
    (m.1, m.0)
}

#[derive(Debug, Error, PartialEq)]
pub enum IdealError {
    #[error("the two matrices do not commute")]
    NonCommuting,
    #[error("Krylov span has dimension {span}, expected {expected}")]
    NotCyclic { span: usize, expected: usize },
    #[error("the diagram monomials do not form a basis of the quotient")]
    NotInChart,
    #[error("chart change requires the y-coefficient u to be nonzero")]
    ChartBoundary,
    #[error("support does not split over Q(i)")]
    SplitFieldRequired,
    #[error("degenerate point configuration")]
    DegenerateConfiguration,
    #[error("coefficient limit at t = 0 does not exist")]
    NoLimit,
    #[error("malformed input: {0}")]
    Shape(String),
}

/// Young diagram given by weakly decreasing row lengths, rows indexed from
/// the top. Box `(row, col)` corresponds to the monomial `x^col y^row`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self, IdealError> {
        if rows.is_empty() || rows.iter().any(|&r| r == 0) {
            return Err(IdealError::Shape("diagram rows must be positive".into()));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(IdealError::Shape(
                "diagram rows must be weakly decreasing".into(),
            ));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn rectangle(k: usize, l: usize) -> Self {
        YoungDiagram::new(vec![l; k]).expect("rectangle dimensions must be positive")
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn col_height(&self, c: usize) -> usize {
        self.rows.iter().take_while(|&&len| len > c).count()
    }

    pub fn contains(&self, b: (usize, usize)) -> bool {
        b.0 < self.rows.len() && b.1 < self.rows[b.0]
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &len) in self.rows.iter().enumerate() {
            for c in 0..len {
                out.push((r, c));
            }
        }
        out
    }

    /// The monomials `x^col y^row` of the boxes, already sorted in the
    /// monomial order.
    pub fn monomials(&self) -> Vec<Monomial> {
        self.boxes().into_iter().map(|(r, c)| (c, r)).collect()
    }

    /// Boundary monomials: x- and y-multiples of boxes outside the diagram.
    pub fn boundary(&self) -> Vec<Monomial> {
        let mut set = BTreeSet::new();
        for (r, c) in self.boxes() {
            for cand in [(c + 1, r), (c, r + 1)] {
                if !self.contains((cand.1, cand.0)) {
                    set.insert(mono_key(cand));
                }
            }
        }
        set.into_iter().map(|(j, i)| (i, j)).collect()
    }
}

/// Codimension-m ideal of `F[x,y]` presented by its standard-monomial
/// staircase and the expansion of every boundary monomial over it.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPresentation<F: Field> {
    staircase: Vec<Monomial>,
    borders: Vec<(Monomial, Vec<F>)>,
}

impl<F: Field> IdealPresentation<F> {
    /// Validates the staircase (order ideal containing 1), the border set
    /// (exactly the boundary monomials) and confluence of the expansions
    /// (`[M_x, M_y] = 0`).
    pub fn new(
        mut staircase: Vec<Monomial>,
        mut borders: Vec<(Monomial, Vec<F>)>,
    ) -> Result<Self, IdealError> {
        staircase.sort_by_key(|&m| mono_key(m));
        staircase.dedup();
        if staircase.first() != Some(&(0, 0)) {
            return Err(IdealError::Shape("staircase must contain 1".into()));
        }
        let stair_set: BTreeSet<Monomial> = staircase.iter().copied().collect();
        for &(i, j) in &staircase {
            if (i > 0 && !stair_set.contains(&(i - 1, j)))
                || (j > 0 && !stair_set.contains(&(i, j - 1)))
            {
                return Err(IdealError::Shape("staircase is not an order ideal".into()));
            }
        }
        let mut boundary = BTreeSet::new();
        for &(i, j) in &staircase {
            for cand in [(i + 1, j), (i, j + 1)] {
                if !stair_set.contains(&cand) {
                    boundary.insert(cand);
                }
            }
        }
        borders.sort_by_key(|&(m, _)| mono_key(m));
        let border_set: BTreeSet<Monomial> = borders.iter().map(|&(m, _)| m).collect();
        if border_set != boundary || border_set.len() != borders.len() {
            return Err(IdealError::Shape(
                "borders must cover the boundary monomials exactly".into(),
            ));
        }
        if borders.iter().any(|(_, c)| c.len() != staircase.len()) {
            return Err(IdealError::Shape(
                "border expansions must have one coefficient per staircase monomial".into(),
            ));
        }
        let pres = IdealPresentation { staircase, borders };
        let (mx, my) = pres.multiplication_matrices();
        if !Mat::commutator(&mx, &my).is_zero() {
            return Err(IdealError::Shape(
                "border expansions are not confluent".into(),
            ));
        }
        Ok(pres)
    }

    /// Two-generator chart ideal `<g(x), -y + q(x)>` with `g` monic of
    /// degree m and `deg q < m`; staircase `{1, x, ..., x^{m-1}}`.
    pub fn from_two_generators(g: &UniPoly<F>, q: &UniPoly<F>) -> Result<Self, IdealError> {
        let m = match g.degree() {
            Some(d) if d > 0 && g.is_monic() => d,
            _ => {
                return Err(IdealError::Shape(
                    "x-generator must be monic of positive degree".into(),
                ))
            }
        };
        if q.degree().map_or(false, |d| d >= m) {
            return Err(IdealError::Shape("deg q must be below deg g".into()));
        }
        let staircase: Vec<Monomial> = (0..m).map(|i| (i, 0)).collect();
        let mut borders = Vec::new();
        let coeffs_of = |p: &UniPoly<F>| -> Vec<F> { (0..m).map(|i| p.coeff(i)).collect() };
        let tail = UniPoly::new((0..m).map(|i| -g.coeff(i)).collect());
        borders.push(((m, 0), coeffs_of(&tail)));
        for j in 0..m {
            let shifted = UniPoly::monomial(F::one(), j).mul(q).divrem(g).1;
            borders.push(((j, 1), coeffs_of(&shifted)));
        }
        IdealPresentation::new(staircase, borders)
    }

    pub fn codimension(&self) -> usize {
        self.staircase.len()
    }

    pub fn staircase(&self) -> &[Monomial] {
        &self.staircase
    }

    pub fn borders(&self) -> &[(Monomial, Vec<F>)] {
        &self.borders
    }

    pub fn staircase_index(&self, m: Monomial) -> Option<usize> {
        self.staircase.iter().position(|&s| s == m)
    }

    pub fn border(&self, m: Monomial) -> Option<&[F]> {
        self.borders
            .iter()
            .find(|&&(b, _)| b == m)
            .map(|(_, c)| c.as_slice())
    }

    /// Borders that minimally generate the leading-term ideal (both the
    /// x- and y-predecessor, when they exist, lie in the staircase).
    pub fn minimal_borders(&self) -> Vec<(Monomial, Vec<F>)> {
        self.borders
            .iter()
            .filter(|&&((i, j), _)| {
                (i == 0 || self.staircase_index((i - 1, j)).is_some())
                    && (j == 0 || self.staircase_index((i, j - 1)).is_some())
            })
            .cloned()
            .collect()
    }

    /// Matrices of multiplication by x and y on the staircase basis.
    pub fn multiplication_matrices(&self) -> (Mat<F>, Mat<F>) {
        let m = self.staircase.len();
        let column = |mono: Monomial| -> Vec<F> {
            if let Some(idx) = self.staircase_index(mono) {
                let mut e = vec![F::zero(); m];
                e[idx] = F::one();
                e
            } else {
                self.border(mono)
                    .expect("boundary monomial must have an expansion")
                    .to_vec()
            }
        };
        let mut mx = Mat::zeros(m, m);
        let mut my = Mat::zeros(m, m);
        for (col, &(i, j)) in self.staircase.iter().enumerate() {
            for (row, v) in column((i + 1, j)).into_iter().enumerate() {
                mx[(row, col)] = v;
            }
            for (row, v) in column((i, j + 1)).into_iter().enumerate() {
                my[(row, col)] = v;
            }
        }
        (mx, my)
    }
}

/// Incremental echelon basis that remembers how each inserted vector
/// decomposes over the previously accepted ones.
struct EchelonTracker<F: Field> {
    width: usize,
    naccepted: usize,
    rows: Vec<(Vec<F>, Vec<F>, usize)>,
}

enum Inserted<F> {
    Independent,
    Dependent(Vec<F>),
}

impl<F: Field> EchelonTracker<F> {
    fn new(width: usize) -> Self {
        EchelonTracker {
            width,
            naccepted: 0,
            rows: Vec::new(),
        }
    }

    fn try_insert(&mut self, w: Vec<F>) -> Result<Inserted<F>, IdealError> {
        let mut r = w;
        let mut gamma = vec![F::zero(); self.naccepted];
        for (rv, rg, p) in &self.rows {
            let c = r[*p].clone();
            if c.is_zero() {
                continue;
            }
            for k in 0..self.width {
                r[k] = r[k].clone() - c.clone() * rv[k].clone();
            }
            for k in 0..rg.len() {
                gamma[k] = gamma[k].clone() - c.clone() * rg[k].clone();
            }
        }
        if r.iter().all(|x| x.is_zero()) {
            return Ok(Inserted::Dependent(gamma.into_iter().map(|g| -g).collect()));
        }
        let mut pivot = None;
        for k in 0..self.width {
            if r[k].is_unit() {
                pivot = match pivot {
                    None => Some(k),
                    Some(b) if r[k].complexity() < r[b].complexity() => Some(k),
                    keep => keep,
                };
            }
        }
        // Over dual numbers a residual can be nonzero with no invertible
        // entry (the value parts collapsed); no exact pivot exists then.
        let p = pivot.ok_or(IdealError::DegenerateConfiguration)?;
        let d = r[p].clone();
        let rv: Vec<F> = r.into_iter().map(|x| x.div(&d)).collect();
        let mut rg: Vec<F> = gamma.into_iter().map(|x| x.div(&d)).collect();
        rg.push(F::one().div(&d));
        self.rows.push((rv, rg, p));
        self.naccepted += 1;
        Ok(Inserted::Independent)
    }
}

/// The idealic map on raw matrices: enumerate Krylov vectors `A^i B^j v` in
/// the monomial order and read the staircase and border expansions off the
/// exact elimination. The matrices must commute; the span must be full.
pub fn idealic_map_matrices<F: Field>(
    a: &Mat<F>,
    b: &Mat<F>,
    v: &[F],
) -> Result<IdealPresentation<F>, IdealError> {
    let m = a.nrows;
    if !a.is_square() || !b.is_square() || b.nrows != m || v.len() != m {
        return Err(IdealError::Shape("matrix and vector sizes must agree".into()));
    }
    if !Mat::commutator(a, b).is_zero() {
        return Err(IdealError::NonCommuting);
    }
    let mut tracker = EchelonTracker::new(m);
    let mut staircase: Vec<Monomial> = Vec::new();
    let mut borders: Vec<(Monomial, Vec<F>)> = Vec::new();
    let mut pending: BTreeMap<(usize, usize), Vec<F>> = BTreeMap::new();
    pending.insert((0, 0), v.to_vec());
    while let Some((&key, _)) = pending.iter().next() {
        let vec = pending.remove(&key).unwrap();
        let mono = (key.1, key.0);
        match tracker.try_insert(vec.clone())? {
            Inserted::Independent => {
                staircase.push(mono);
                let xnext = a.mul_vec(&vec);
                let ynext = b.mul_vec(&vec);
                pending.entry((key.0, key.1 + 1)).or_insert(xnext);
                pending.entry((key.0 + 1, key.1)).or_insert(ynext);
            }
            Inserted::Dependent(mut coeffs) => {
                coeffs.resize(m, F::zero());
                borders.push((mono, coeffs));
            }
        }
    }
    if staircase.len() < m {
        return Err(IdealError::NotCyclic {
            span: staircase.len(),
            expected: m,
        });
    }
    for (_, coeffs) in &mut borders {
        coeffs.resize(m, F::zero());
    }
    debug_assert!(border_generators_annihilate(a, b, &staircase, &borders));
    IdealPresentation::new(staircase, borders)
}

/// Checks that every border generator, evaluated at the matrix pair,
/// vanishes as a matrix (not merely on the cyclic vector).
fn border_generators_annihilate<F: Field>(
    a: &Mat<F>,
    b: &Mat<F>,
    staircase: &[Monomial],
    borders: &[(Monomial, Vec<F>)],
) -> bool {
    let m = a.nrows;
    let max_x = borders.iter().map(|&((i, _), _)| i).max().unwrap_or(0);
    let max_y = borders.iter().map(|&((_, j), _)| j).max().unwrap_or(0);
    let mut apows = vec![Mat::identity(m)];
    for _ in 0..max_x {
        apows.push(apows.last().unwrap() * a);
    }
    let mut bpows = vec![Mat::identity(m)];
    for _ in 0..max_y {
        bpows.push(bpows.last().unwrap() * b);
    }
    let of = |mono: Monomial| -> Mat<F> { &apows[mono.0] * &bpows[mono.1] };
    borders.iter().all(|&(mono, ref coeffs)| {
        let mut acc = of(mono);
        for (s, c) in staircase.iter().zip(coeffs) {
            acc = &acc - &of(*s).scale(c);
        }
        acc.is_zero()
    })
}

/// The idealic map on a commuting pair from the hilb module.
pub fn idealic_map(
    pair: &hilb::CommutingPair,
    v: &[GRat],
) -> Result<IdealPresentation<GRat>, IdealError> {
    idealic_map_matrices(&pair.a, &pair.b, v)
}

/// Vanishing ideal of finitely many points, via the diagonal pair and the
/// all-ones cyclic vector. Fails with NotCyclic when points repeat.
pub fn points_presentation<F: Field>(
    points: &[(F, F)],
) -> Result<IdealPresentation<F>, IdealError> {
    let m = points.len();
    if m == 0 {
        return Err(IdealError::Shape("need at least one point".into()));
    }
    let a = Mat::from_fn(m, m, |r, c| {
        if r == c {
            points[r].0.clone()
        } else {
            F::zero()
        }
    });
    let b = Mat::from_fn(m, m, |r, c| {
        if r == c {
            points[r].1.clone()
        } else {
            F::zero()
        }
    });
    idealic_map_matrices(&a, &b, &vec![F::one(); m])
}

/// Whether the ideal is invariant under `(x, y) -> (-x, -y)`. The sign
/// involution scales every monomial by its total-degree parity, so the
/// ideal is invariant exactly when each border expansion only involves
/// staircase monomials of the same parity as the border monomial.
pub fn w_invariance_check<F: Field>(p: &IdealPresentation<F>) -> bool {
    p.borders().iter().all(|&((i, j), ref coeffs)| {
        let parity = (i + j) % 2;
        p.staircase()
            .iter()
            .zip(coeffs)
            .all(|(&(si, sj), c)| c.is_zero() || (si + sj) % 2 == parity)
    })
}

/// Re-expands the same ideal over the monomial basis of the diagram `d`:
/// the staircase becomes the boxes of `d` and the borders its boundary.
pub fn chart_presentation<F: Field>(
    p: &IdealPresentation<F>,
    d: &YoungDiagram,
) -> Result<IdealPresentation<F>, IdealError> {
    let m = p.codimension();
    if d.size() != m {
        return Err(IdealError::NotInChart);
    }
    let (mx, my) = p.multiplication_matrices();
    let mut nf: BTreeMap<(usize, usize), Vec<F>> = BTreeMap::new();
    let mut e0 = vec![F::zero(); m];
    e0[0] = F::one();
    nf.insert((0, 0), e0);
    for (r, &len) in d.rows().iter().enumerate() {
        for c in 0..len {
            if (r, c) == (0, 0) {
                continue;
            }
            let vec = if c > 0 {
                mx.mul_vec(&nf[&(r, c - 1)])
            } else {
                my.mul_vec(&nf[&(r - 1, 0)])
            };
            nf.insert((r, c), vec);
        }
    }
    let boxes = d.boxes();
    let basis = Mat::from_fn(m, m, |row, col| nf[&boxes[col]][row].clone());
    let inv = basis.inverse().ok_or(IdealError::NotInChart)?;
    let mut borders = Vec::new();
    for mono in d.boundary() {
        let (i, j) = mono;
        let vec = if i > 0 && d.contains((j, i - 1)) {
            mx.mul_vec(&nf[&(j, i - 1)])
        } else {
            my.mul_vec(&nf[&(j - 1, i)])
        };
        borders.push((mono, inv.mul_vec(&vec)));
    }
    IdealPresentation::new(d.monomials(), borders)
}

/// Haiman coordinates of an ideal lying in the chart of the diagram `d`:
/// for each box, the designated coefficients of the expansions of the box
/// right of its row end and the box below its column end.
#[derive(Debug, Clone, PartialEq)]
pub struct HaimanCoords<F: Field> {
    pub diagram: YoungDiagram,
    /// Per box `(row, col)` in row-major order: `(b_right, b_bottom)`.
    pub coords: Vec<((usize, usize), (F, F))>,
}

pub fn haiman_coords<F: Field>(
    p: &IdealPresentation<F>,
    d: &YoungDiagram,
) -> Result<HaimanCoords<F>, IdealError> {
    let chart = if p.staircase() == d.monomials().as_slice() {
        p.clone()
    } else {
        chart_presentation(p, d)?
    };
    let mut coords = Vec::with_capacity(d.size());
    for (r, c) in d.boxes() {
        let row_len = d.rows()[r];
        let col_height = d.col_height(c);
        let right = chart
            .border((row_len, r))
            .expect("row-end boundary monomial");
        let bottom = chart
            .border((c, col_height))
            .expect("column-end boundary monomial");
        let b_right = right[chart
            .staircase_index((c, col_height - 1))
            .expect("bottom box of the column")]
        .clone();
        let b_bottom = bottom[chart
            .staircase_index((row_len - 1, r))
            .expect("right box of the row")]
        .clone();
        coords.push(((r, c), (b_right, b_bottom)));
    }
    Ok(HaimanCoords {
        diagram: d.clone(),
        coords,
    })
}

/// Chart change from the `[m-1, 1]` staircase to the `[m]` staircase:
/// with `x^{m-1} = u_0 + u_1 x + ... + u_{m-2} x^{m-2} + u y` and
/// `xy = v_0 + ... + v_{m-2} x^{m-2} + v_y y`, the y-expansion becomes
/// `y = -(u_0 + ... + u_{m-2} x^{m-2})/u + x^{m-1}/u` and the x^m
/// expansion `x^m = sum u_i x^{i+1} + u * (xy-expansion)`. For type-D
/// inputs this reduces to the textbook system tau^2 = u v_0,
/// mu_{2n} = 1/u, mu_{2k} = -u_{2k}/u, t_{2k} = u_{2n-2k} + u v_{2n-2k}.
pub fn chart_change_d<F: Field>(
    p: &IdealPresentation<F>,
) -> Result<IdealPresentation<F>, IdealError> {
    let m = p.codimension();
    if m < 3 {
        return Err(IdealError::Shape("chart change needs codimension >= 3".into()));
    }
    let expected = YoungDiagram::new(vec![m - 1, 1])?;
    if p.staircase() != expected.monomials().as_slice() {
        return Err(IdealError::Shape(
            "input must be presented on the [m-1, 1] staircase".into(),
        ));
    }
    let xb = p.border((m - 1, 0)).expect("x-power boundary");
    let u = xb[m - 1].clone();
    if !u.is_unit() {
        return Err(IdealError::ChartBoundary);
    }
    let vb = p.border((1, 1)).expect("xy boundary");
    let mut q_coeffs = Vec::with_capacity(m);
    for coeff in xb.iter().take(m - 1) {
        q_coeffs.push(-(coeff.div(&u)));
    }
    q_coeffs.push(F::one().div(&u));
    let q = UniPoly::new(q_coeffs.clone());
    let mut c = vec![F::zero(); m];
    for (i, coeff) in xb.iter().take(m - 1).enumerate() {
        c[i + 1] = c[i + 1].clone() + coeff.clone();
    }
    for (j, coeff) in vb.iter().take(m - 1).enumerate() {
        c[j] = c[j].clone() + u.clone() * coeff.clone();
    }
    let vy = vb[m - 1].clone();
    if !vy.is_zero() {
        let scale = u.clone() * vy;
        for (j, qc) in q_coeffs.iter().enumerate() {
            c[j] = c[j].clone() + scale.clone() * qc.clone();
        }
    }
    let mut g_coeffs: Vec<F> = c.iter().map(|x| -x.clone()).collect();
    g_coeffs.push(F::one());
    let g = UniPoly::new(g_coeffs);
    IdealPresentation::from_two_generators(&g, &q)
}

/// Support of the ideal: the multiset of simultaneous eigenvalue pairs of
/// the multiplication operators, sorted lexicographically.
pub fn support(p: &IdealPresentation<GRat>) -> Result<Vec<(GRat, GRat)>, IdealError> {
    let (mx, my) = p.multiplication_matrices();
    hilb::joint_spectrum(&mx, &my).map_err(|e| match e {
        HilbError::SplitFieldRequired => IdealError::SplitFieldRequired,
        other => IdealError::Shape(other.to_string()),
    })
}

fn rational_part(x: &GRat) -> Result<Rat, IdealError> {
    if x.is_rational() {
        Ok(x.re.clone())
    } else {
        Err(IdealError::Shape(
            "symbolic lift requires rational entries".into(),
        ))
    }
}

fn lift_mat(m: &Mat<GRat>) -> Result<Mat<SymScalar>, IdealError> {
    let mut out = Mat::zeros(m.nrows, m.ncols);
    for r in 0..m.nrows {
        for c in 0..m.ncols {
            out[(r, c)] = SymScalar::from_poly(MPoly::constant(rational_part(&m[(r, c)])?));
        }
    }
    Ok(out)
}

fn cyclic_vector(a: &Mat<GRat>, b: &Mat<GRat>, m: usize) -> Option<Vec<GRat>> {
    let mut candidates: Vec<Vec<GRat>> = Vec::new();
    let mut e1 = vec![GRat::int(0); m];
    e1[0] = GRat::int(1);
    candidates.push(e1);
    candidates.push(vec![GRat::int(1); m]);
    let mut sampler = Sampler::new(0x1dea);
    for _ in 0..6 {
        candidates.push(
            (0..m)
                .map(|_| GRat::from_rat(sampler.rat()))
                .collect::<Vec<_>>(),
        );
    }
    candidates
        .into_iter()
        .find(|v| hilb::krylov_dim(&[a, b], v) == m)
}

/// Idealic map extended to regular non-cyclic type-D pairs: when
/// `(A, B)` is not cyclic (both tau and sigma vanish), the value is the
/// coefficient-wise limit at t = 0 of `I(A, B + t(S + t_{2n-2} S^T))`,
/// computed exactly over polynomial scalars in t; the staircase stays in
/// the `[2n-1, 1]` chart. Cyclic pairs are dispatched to the plain map.
pub fn idealic_map_extended_d(
    alg: &LieAlgebra,
    a: &Mat<GRat>,
    b: &Mat<GRat>,
) -> Result<IdealPresentation<GRat>, IdealError> {
    if alg.family != Family::D {
        return Err(IdealError::Shape("extension is specific to type D".into()));
    }
    let m = alg.msize();
    let n = alg.rank;
    if a.nrows != m || b.nrows != m {
        return Err(IdealError::Shape("matrix size must match the algebra".into()));
    }
    if !Mat::commutator(a, b).is_zero() {
        return Err(IdealError::NonCommuting);
    }
    if let Some(v) = cyclic_vector(a, b, m) {
        return idealic_map_matrices(a, b, &v);
    }
    let mut params = Vec::with_capacity(n);
    for k in 1..=n - 1 {
        params.push(a[(n - k - 1, n + k - 1)].clone());
    }
    params.push(GRat::int(0));
    let rebuilt = alg
        .principal_slice(&params)
        .map_err(|e| IdealError::Shape(e.to_string()))?;
    if rebuilt != *a {
        return Err(IdealError::Shape(
            "expected a principal-slice matrix with vanishing tau".into(),
        ));
    }
    let s = alg.matrix_s().expect("type D has the matrix S");
    let s_t = &s + &s.transpose().scale(&params[n - 2]);
    let vars = Arc::new(vec!["t".to_string()]);
    let tvar = SymScalar::var(&vars, "t");
    let a_sym = lift_mat(a)?;
    let mut b_sym = lift_mat(b)?;
    let s_sym = lift_mat(&s_t)?;
    for r in 0..m {
        for c in 0..m {
            b_sym[(r, c)] = b_sym[(r, c)].clone() + tvar.clone() * s_sym[(r, c)].clone();
        }
    }
    let v = [GRat::int(1), GRat::int(2), GRat::frac(1, 2)]
        .iter()
        .find_map(|t0| {
            let b0 = Mat::from_fn(m, m, |r, c| {
                b[(r, c)].clone() + t0.clone() * s_t[(r, c)].clone()
            });
            cyclic_vector(a, &b0, m)
        })
        .ok_or(IdealError::NotCyclic {
            span: hilb::krylov_dim(&[a, b], &vec![GRat::int(1); m]),
            expected: m,
        })?;
    let v_sym: Vec<SymScalar> = v
        .iter()
        .map(|x| Ok(SymScalar::from_poly(MPoly::constant(rational_part(x)?))))
        .collect::<Result<_, IdealError>>()?;
    let sym_pres = idealic_map_matrices(&a_sym, &b_sym, &v_sym)?;
    let at_zero: BTreeMap<String, Rat> =
        [("t".to_string(), Rat::from_integer(0.into()))].into();
    let mut borders = Vec::new();
    for (mono, coeffs) in sym_pres.borders() {
        let mut ev = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let val = c.eval(&at_zero).ok_or(IdealError::NoLimit)?;
            ev.push(GRat::from_rat(val));
        }
        borders.push((*mono, ev));
    }
    IdealPresentation::new(sym_pres.staircase().to_vec(), borders)
}

/// Outcome of the symplectic comparison: `exact` reports whether the
/// pullback equals the coordinate form (up to one uniform sign, recorded
/// in `sign_flipped`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticReport {
    pub exact: bool,
    pub sign_flipped: bool,
}

fn standard_omega(n_pairs: usize) -> Mat<GRat> {
    let mut omega = Mat::zeros(2 * n_pairs, 2 * n_pairs);
    for i in 0..n_pairs {
        omega[(2 * i, 2 * i + 1)] = GRat::int(1);
        omega[(2 * i + 1, 2 * i)] = GRat::int(-1);
    }
    omega
}

/// Pullback of `sum db_right ∧ db_bottom` along the Haiman coordinates of
/// the given diagram, as a matrix in the point coordinates (x_1, y_1, ...):
/// J^T Omega_b J with the Jacobian J extracted from dual-number lifts.
pub fn haiman_pullback(
    d: &YoungDiagram,
    points: &[(GRat, GRat)],
) -> Result<Mat<GRat>, IdealError> {
    let m = d.size();
    if points.len() != m {
        return Err(IdealError::Shape(
            "need exactly one point per diagram box".into(),
        ));
    }
    let ndirs = 2 * m;
    let lifted: Vec<(Dual<GRat>, Dual<GRat>)> = points
        .iter()
        .enumerate()
        .map(|(i, (x, y))| {
            (
                Dual::seeded(x.clone(), ndirs, 2 * i),
                Dual::seeded(y.clone(), ndirs, 2 * i + 1),
            )
        })
        .collect();
    let pres = points_presentation(&lifted)?;
    let hc = haiman_coords(&pres, d)?;
    let jac = Mat::from_fn(ndirs, ndirs, |row, col| {
        let (_, (ref br, ref bb)) = hc.coords[row / 2];
        if row % 2 == 0 {
            br.partial(col)
        } else {
            bb.partial(col)
        }
    });
    let omega_b = standard_omega(m);
    Ok(&jac.transpose() * &(&omega_b * &jac))
}

/// Appendix-style canonicity check for a k x l rectangle: the pullback of
/// the Haiman two-form must equal `sum dx_i ∧ dy_i` exactly. Degenerate
/// configurations are resampled from the seed before giving up.
pub fn symplectic_rectangle_check(
    k: usize,
    l: usize,
    points: &[(GRat, GRat)],
    seed: u64,
) -> Result<SymplecticReport, IdealError> {
    if k == 0 || l == 0 {
        return Err(IdealError::Shape("rectangle sides must be positive".into()));
    }
    let d = YoungDiagram::rectangle(k, l);
    let m = k * l;
    let omega = standard_omega(m);
    let neg_omega = omega.scale(&GRat::int(-1));
    let mut sampler = Sampler::new(seed);
    let mut pts: Vec<(GRat, GRat)> = points.to_vec();
    for _ in 0..40 {
        if pts.len() == m {
            match haiman_pullback(&d, &pts) {
                Ok(pullback) => {
                    let exact = pullback == omega || pullback == neg_omega;
                    return Ok(SymplecticReport {
                        exact,
                        sign_flipped: pullback == neg_omega,
                    });
                }
                Err(IdealError::NotCyclic { .. })
                | Err(IdealError::NotInChart)
                | Err(IdealError::DegenerateConfiguration) => {}
                Err(e) => return Err(e),
            }
        }
        let coords = sampler.distinct_rats(2 * m);
        pts = (0..m)
            .map(|i| {
                (
                    GRat::from_rat(coords[2 * i].clone()),
                    GRat::from_rat(coords[2 * i + 1].clone()),
                )
            })
            .collect();
    }
    Err(IdealError::DegenerateConfiguration)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Ring};
    use crate::hilb::CommutingPair;
    use proptest::prelude::*;

    fn alg(label: &str) -> LieAlgebra {
        LieAlgebra::parse(label).unwrap()
    }

    fn gr(num: i64, den: i64) -> GRat {
        GRat::frac(num, den)
    }

    fn e1(m: usize) -> Vec<GRat> {
        let mut v = vec![GRat::int(0); m];
        v[0] = GRat::int(1);
        v
    }

    fn poly_in<F: Field>(m: &Mat<F>, coeffs: &[(F, usize)]) -> Mat<F> {
        let mut acc = Mat::zeros(m.nrows, m.ncols);
        for (c, k) in coeffs {
            acc = &acc + &m.pow(*k).scale(c);
        }
        acc
    }

    #[test]
    fn zero_fiber_ideals_read_off_the_polynomial_coefficients() {
        let g = alg("A3");
        let f = g.principal_nilpotent();
        let (m2, m3, m4) = (gr(2, 3), gr(-1, 2), gr(5, 1));
        let b = poly_in(&f, &[(m2.clone(), 1), (m3.clone(), 2), (m4.clone(), 3)]);
        let pair = CommutingPair::new(g, f, b).unwrap();
        let pres = idealic_map(&pair, &e1(4)).unwrap();
        let xgen = UniPoly::monomial(GRat::int(1), 4);
        let q = UniPoly::new(vec![GRat::int(0), m2, m3, m4]);
        let expected = IdealPresentation::from_two_generators(&xgen, &q).unwrap();
        assert_eq!(pres, expected);
        assert_eq!(pres.codimension(), 4);
        assert_eq!(
            pres.staircase(),
            &[(0, 0), (1, 0), (2, 0), (3, 0)],
            "single-row staircase"
        );
        assert!(w_invariance_check(&pres) == false, "Q has even terms");

        let b2 = alg("B2");
        let fb = b2.principal_nilpotent();
        let qb = poly_in(&fb, &[(gr(3, 1), 1), (gr(-2, 5), 3)]);
        let pair_b = CommutingPair::new(b2, fb, qb).unwrap();
        let pres_b = idealic_map(&pair_b, &e1(5)).unwrap();
        let expected_b = IdealPresentation::from_two_generators(
            &UniPoly::monomial(GRat::int(1), 5),
            &UniPoly::new(vec![GRat::int(0), gr(3, 1), GRat::int(0), gr(-2, 5)]),
        )
        .unwrap();
        assert_eq!(pres_b, expected_b);
        assert!(w_invariance_check(&pres_b));
    }

    /// Lifts an affine family of slice matrices to symbolic scalars: the
    /// slice is affine in its parameters, so the symbolic matrix is
    /// slice(0) plus parameter times (slice(e_k) - slice(0)).
    fn symbolic_slice(
        g: &LieAlgebra,
        vars: &Arc<Vec<String>>,
        names: &[&str],
    ) -> Mat<SymScalar> {
        let count = g.slice_param_count();
        assert_eq!(names.len(), count);
        let zero_params = vec![GRat::int(0); count];
        let base = g.principal_slice(&zero_params).unwrap();
        let m = base.nrows;
        let mut out = Mat::from_fn(m, m, |r, c| {
            SymScalar::from_poly(MPoly::constant(base[(r, c)].re.clone()))
        });
        for (k, name) in names.iter().enumerate() {
            let mut params = zero_params.clone();
            params[k] = GRat::int(1);
            let dir = &g.principal_slice(&params).unwrap() - &base;
            let var = SymScalar::var(vars, name);
            for r in 0..m {
                for c in 0..m {
                    if !dir[(r, c)].is_zero() {
                        out[(r, c)] = out[(r, c)].clone()
                            + var.clone()
                                * SymScalar::from_poly(MPoly::constant(dir[(r, c)].re.clone()));
                    }
                }
            }
        }
        out
    }

    fn sym_var(vars: &Arc<Vec<String>>, name: &str) -> SymScalar {
        SymScalar::var(vars, name)
    }

    #[test]
    fn slice_ideals_match_the_companion_chart_symbolically() {
        // sl_4: the x-generator is the slice characteristic polynomial and
        // the y-generator carries the exact trace-balancing constant term.
        let g = alg("A3");
        let vars = Arc::new(
            ["t2", "t3", "t4", "m2", "m3", "m4"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
        );
        let a = symbolic_slice(&g, &vars, &["t2", "t3", "t4"]);
        let (m2, m3, m4) = (
            sym_var(&vars, "m2"),
            sym_var(&vars, "m3"),
            sym_var(&vars, "m4"),
        );
        let mut b = poly_in(&a, &[(m2.clone(), 1), (m3.clone(), 2), (m4.clone(), 3)]);
        let mu1 = -(b.tr().div(&SymScalar::from_i64(4)));
        for i in 0..4 {
            b[(i, i)] = b[(i, i)].clone() + mu1.clone();
        }
        assert!(b.tr().is_zero());
        let ones = vec![SymScalar::one(); 4];
        let mut v = vec![SymScalar::zero(); 4];
        v[0] = ones[0].clone();
        let pres = idealic_map_matrices(&a, &b, &v).unwrap();
        let (t2, t3, t4) = (
            sym_var(&vars, "t2"),
            sym_var(&vars, "t3"),
            sym_var(&vars, "t4"),
        );
        let xgen = UniPoly::new(vec![
            t4.clone(),
            t3.clone(),
            t2.clone(),
            SymScalar::zero(),
            SymScalar::one(),
        ]);
        assert_eq!(a.charpoly(), xgen, "slice charpoly is the companion one");
        let q = UniPoly::new(vec![mu1.clone(), m2, m3.clone(), m4.clone()]);
        let expected = IdealPresentation::from_two_generators(&xgen, &q).unwrap();
        assert_eq!(pres, expected);

        // mu_1 agrees with (2/4) t2 m3 + (3/4) t3 m4 modulo t-degree >= 2.
        let approx = SymScalar::new(
            (MPoly::var(&vars, "t2") * MPoly::var(&vars, "m3")).scale(&rat(2, 4))
                + (MPoly::var(&vars, "t3") * MPoly::var(&vars, "m4")).scale(&rat(3, 4)),
            MPoly::one(),
        );
        let diff = mu1 - approx;
        assert!(diff.den.as_constant().is_some());
        for (exps, _) in diff.num.terms() {
            let t_degree: u32 = exps.iter().take(3).sum();
            assert!(t_degree >= 2, "mu1 formula must hold mod t^2");
        }
    }

    #[test]
    fn odd_slice_ideals_for_types_b_and_c_are_two_generated() {
        for (label, xdeg) in [("B2", 5usize), ("C2", 4usize)] {
            let g = alg(label);
            let vars = Arc::new(
                ["t2", "t4", "m2", "m4"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>(),
            );
            let a = symbolic_slice(&g, &vars, &["t2", "t4"]);
            let (m2, m4) = (sym_var(&vars, "m2"), sym_var(&vars, "m4"));
            let b = poly_in(&a, &[(m2.clone(), 1), (m4.clone(), 3)]);
            let m = g.msize();
            let mut v = vec![SymScalar::zero(); m];
            v[0] = SymScalar::one();
            let pres = idealic_map_matrices(&a, &b, &v).unwrap();
            let xgen = a.charpoly();
            assert_eq!(xgen.degree(), Some(xdeg));
            let q = UniPoly::new(vec![
                SymScalar::zero(),
                m2.clone(),
                SymScalar::zero(),
                m4.clone(),
            ]);
            let expected = IdealPresentation::from_two_generators(&xgen, &q).unwrap();
            assert_eq!(pres, expected, "{label} slice ideal");
            assert!(w_invariance_check(&pres), "{label} ideals are sign invariant");
            // Only odd coefficients appear in the x-generator tail.
            for i in 0..xdeg {
                if (xdeg - i) % 2 == 1 {
                    assert!(xgen.coeff(i).is_zero(), "{label} parity of chi");
                }
            }
        }
    }

    #[test]
    fn type_d_zero_fiber_needs_three_generators_and_a_sigma_square() {
        let g = alg("D3");
        let vars = Arc::new(
            ["m2", "m4", "s"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
        );
        let f = lift_mat(&g.principal_nilpotent()).unwrap();
        let s_mat = lift_mat(&g.matrix_s().unwrap()).unwrap();
        let (m2, m4, sig) = (
            sym_var(&vars, "m2"),
            sym_var(&vars, "m4"),
            sym_var(&vars, "s"),
        );
        let build = |sigma: SymScalar| {
            let mut b = poly_in(&f, &[(m2.clone(), 1), (m4.clone(), 3)]);
            let scaled = s_mat.scale(&sigma);
            b = &b + &scaled;
            b
        };
        let b = build(sig.clone());
        let mut v = vec![SymScalar::zero(); 6];
        v[0] = SymScalar::one();
        let pres = idealic_map_matrices(&f, &b, &v).unwrap();
        let stairs: Vec<Monomial> = vec![(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (0, 1)];
        assert_eq!(pres.staircase(), stairs.as_slice(), "partition [5,1]");
        let z = SymScalar::zero;
        let coeffs = |list: [SymScalar; 6]| list.to_vec();
        let nu2 = m2.clone() * m2.clone();
        let nu4 = sig.clone() * sig.clone()
            + SymScalar::from_i64(2) * m2.clone() * m4.clone();
        let expected = IdealPresentation::new(
            stairs,
            vec![
                ((5, 0), coeffs([z(), z(), z(), z(), z(), z()])),
                ((1, 1), coeffs([z(), z(), m2.clone(), z(), m4.clone(), z()])),
                ((2, 1), coeffs([z(), z(), z(), m2.clone(), z(), z()])),
                ((3, 1), coeffs([z(), z(), z(), z(), m2.clone(), z()])),
                ((4, 1), coeffs([z(), z(), z(), z(), z(), z()])),
                ((0, 2), coeffs([z(), z(), nu2, z(), nu4, z()])),
            ],
        )
        .unwrap();
        assert_eq!(pres, expected);
        assert!(w_invariance_check(&pres));

        // sigma and -sigma give the same ideal.
        let pres_neg = idealic_map_matrices(&f, &build(-sig), &v).unwrap();
        assert_eq!(pres, pres_neg);

        // With sigma = 0 the pair stops being cyclic.
        let g2 = alg("D3");
        let fq = g2.principal_nilpotent();
        let bq = poly_in(&fq, &[(gr(2, 1), 1), (gr(-3, 4), 3)]);
        let err = idealic_map_matrices(&fq, &bq, &e1(6)).unwrap_err();
        assert_eq!(
            err,
            IdealError::NotCyclic {
                span: 5,
                expected: 6
            }
        );
    }

    #[test]
    fn cyclic_d_slice_ideals_live_in_the_full_chart() {
        let g = alg("D3");
        let params = [gr(2, 1), gr(-1, 1), gr(3, 1)];
        let a = g.principal_slice(&params).unwrap();
        let (m2, m4, m6) = (gr(1, 2), gr(-2, 3), gr(4, 1));
        let b = poly_in(
            &a,
            &[(m2.clone(), 1), (m4.clone(), 3), (m6.clone(), 5)],
        );
        let pair = CommutingPair::new(g, a.clone(), b).unwrap();
        let pres = idealic_map(&pair, &e1(6)).unwrap();
        let xgen = g.slice_charpoly(&params).unwrap();
        assert_eq!(a.charpoly(), xgen);
        let q = UniPoly::new(vec![
            GRat::int(0),
            m2,
            GRat::int(0),
            m4,
            GRat::int(0),
            m6,
        ]);
        let expected = IdealPresentation::from_two_generators(&xgen, &q).unwrap();
        assert_eq!(pres, expected);
        assert!(w_invariance_check(&pres));
        // tau and -tau give the same ideal.
        let neg_params = [params[0].clone(), params[1].clone(), -params[2].clone()];
        let a_neg = g.principal_slice(&neg_params).unwrap();
        let b_neg = poly_in(&a_neg, &[(gr(1, 2), 1), (gr(-2, 3), 3), (gr(4, 1), 5)]);
        let pres_neg =
            idealic_map_matrices(&a_neg, &b_neg, &e1(6)).unwrap();
        assert_eq!(pres, pres_neg);
    }

    #[test]
    fn chart_change_reproduces_the_other_elimination() {
        let g = alg("D3");
        let mut sampler = Sampler::new(0xc4a7);
        for _ in 0..5 {
            let params = [
                GRat::from_rat(sampler.rat()),
                GRat::from_rat(sampler.rat()),
                GRat::from_rat(sampler.nonzero_rat()),
            ];
            let a = g.principal_slice(&params).unwrap();
            let coeffs = [
                GRat::from_rat(sampler.rat()),
                GRat::from_rat(sampler.rat()),
                GRat::from_rat(sampler.nonzero_rat()),
            ];
            let b = poly_in(
                &a,
                &[
                    (coeffs[0].clone(), 1),
                    (coeffs[1].clone(), 3),
                    (coeffs[2].clone(), 5),
                ],
            );
            let full = idealic_map_matrices(&a, &b, &e1(6)).unwrap();
            let small = chart_presentation(&full, &YoungDiagram::new(vec![5, 1]).unwrap())
                .unwrap();
            let back = chart_change_d(&small).unwrap();
            assert_eq!(back, full, "chart round trip");

            // The textbook coordinate system, read off the two charts.
            let xb = small.border((5, 0)).unwrap();
            let vb = small.border((1, 1)).unwrap();
            let u = xb[5].clone();
            let x6 = full.border((6, 0)).unwrap();
            let yb = full.border((0, 1)).unwrap();
            assert_eq!(u.clone() * vb[0].clone(), x6[0], "tau^2 = u v_0");
            assert_eq!(GRat::int(1).div(&u), yb[5], "mu_6 = 1/u");
            for k in 1..3usize {
                assert_eq!(
                    -(xb[2 * k - 1].clone().div(&u)),
                    yb[2 * k - 1],
                    "mu_2k = -u_2k/u"
                );
                assert_eq!(
                    xb[2 * (3 - k) - 1].clone() + u.clone() * vb[2 * (3 - k)].clone(),
                    x6[2 * (3 - k)],
                    "t_2k = u_(2n-2k) + u v_(2n-2k)"
                );
            }
            // The constant of the x^6 expansion is the negated constant
            // term of chi, i.e. +tau^2 for n = 3.
            let chi = g.slice_charpoly(&params).unwrap();
            assert_eq!(x6[0], -chi.coeff(0));
            assert_eq!(x6[0], params[2].clone() * params[2].clone());
        }

        // A zero-fiber ideal has u = 0 and sits on the chart boundary.
        let f = g.principal_nilpotent();
        let s = g.matrix_s().unwrap();
        let b = &poly_in(&f, &[(gr(1, 1), 1)]) + &s;
        let pres = idealic_map_matrices(&f, &b, &e1(6)).unwrap();
        assert_eq!(chart_change_d(&pres).unwrap_err(), IdealError::ChartBoundary);
    }

    #[test]
    fn noncyclic_regular_pairs_take_the_symbolic_limit() {
        let g = alg("D3");
        // Zero fiber: the sigma^2 contribution to y^2 vanishes in the limit.
        let f = g.principal_nilpotent();
        let (m2, m4) = (gr(1, 2), gr(3, 1));
        let b = poly_in(&f, &[(m2.clone(), 1), (m4.clone(), 3)]);
        let ext = idealic_map_extended_d(&g, &f, &b).unwrap();
        let z = GRat::int(0);
        let expected = IdealPresentation::new(
            vec![(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (0, 1)],
            vec![
                ((5, 0), vec![z.clone(); 6]),
                (
                    (1, 1),
                    vec![z.clone(), z.clone(), m2.clone(), z.clone(), m4.clone(), z.clone()],
                ),
                (
                    (2, 1),
                    vec![z.clone(), z.clone(), z.clone(), m2.clone(), z.clone(), z.clone()],
                ),
                (
                    (3, 1),
                    vec![z.clone(), z.clone(), z.clone(), z.clone(), m2.clone(), z.clone()],
                ),
                ((4, 1), vec![z.clone(); 6]),
                (
                    (0, 2),
                    vec![
                        z.clone(),
                        z.clone(),
                        m2.clone() * m2.clone(),
                        z.clone(),
                        GRat::int(2) * m2.clone() * m4.clone(),
                        z.clone(),
                    ],
                ),
            ],
        )
        .unwrap();
        assert_eq!(ext, expected);

        // On the slice with tau = 0 the limit stays in the [5,1] chart
        // with u = 0, and cyclic pairs dispatch to the plain map.
        let params = [gr(1, 1), gr(2, 1), GRat::int(0)];
        let a = g.principal_slice(&params).unwrap();
        let b2 = poly_in(&a, &[(gr(1, 2), 1), (gr(3, 1), 3)]);
        assert_eq!(
            idealic_map_matrices(&a, &b2, &e1(6)).unwrap_err(),
            IdealError::NotCyclic {
                span: 5,
                expected: 6
            }
        );
        let ext2 = idealic_map_extended_d(&g, &a, &b2).unwrap();
        assert_eq!(
            ext2.staircase(),
            &[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (0, 1)]
        );
        assert!(ext2.border((5, 0)).unwrap()[5].is_zero(), "u = 0 in the limit");
        assert!(w_invariance_check(&ext2));

        // Cyclic inputs short-circuit to the ordinary idealic map.
        let cyc_params = [gr(1, 1), gr(2, 1), gr(1, 1)];
        let ac = g.principal_slice(&cyc_params).unwrap();
        let bc = poly_in(&ac, &[(gr(1, 2), 1), (gr(3, 1), 3), (gr(1, 1), 5)]);
        let via_ext = idealic_map_extended_d(&g, &ac, &bc).unwrap();
        let direct = idealic_map_matrices(&ac, &bc, &e1(6)).unwrap();
        assert_eq!(via_ext, direct);
    }

    #[test]
    fn degeneration_families_collapse_to_monomial_ideals() {
        let g = alg("D3");
        let f = g.principal_nilpotent();
        let s = g.matrix_s().unwrap();
        for t in [gr(3, 5), gr(-1, 7)] {
            // I(f, tS) = <x^5, xy, y^2 - t^2 x^4>.
            let b = s.scale(&t);
            let pres = idealic_map_matrices(&f, &b, &e1(6)).unwrap();
            let y2 = pres.border((0, 2)).unwrap();
            assert_eq!(y2[4], t.clone() * t.clone(), "y^2 = t^2 x^4");
            assert!(pres.border((5, 0)).unwrap().iter().all(|c| c.is_zero()));
            assert!(pres.border((1, 1)).unwrap().iter().all(|c| c.is_zero()));

            // I(f + t S^T, 0) = <x^6 - 4 t^2, y>: the slice with tau = 2t.
            let a = &f + &s.transpose().scale(&t);
            let zero = Mat::zeros(6, 6);
            let pres2 = idealic_map_matrices(&a, &zero, &e1(6)).unwrap();
            let x6 = pres2.border((6, 0)).unwrap();
            assert_eq!(x6[0], GRat::int(4) * t.clone() * t.clone());
            assert!(x6[1..].iter().all(|c| c.is_zero()));
            assert!(pres2.border((0, 1)).unwrap().iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn support_matches_the_chow_construction() {
        // Monomial ideal supported at the origin.
        let origin = IdealPresentation::from_two_generators(
            &UniPoly::monomial(GRat::int(1), 2),
            &UniPoly::zero(),
        )
        .unwrap();
        assert_eq!(
            support(&origin).unwrap(),
            vec![(GRat::int(0), GRat::int(0)); 2]
        );

        // Ideal of two explicit points.
        let pts = vec![(GRat::int(1), GRat::int(2)), (GRat::int(3), GRat::int(4))];
        let pres = points_presentation(&pts).unwrap();
        assert_eq!(support(&pres).unwrap(), pts);

        // Zero-fiber D3 ideal: origin with multiplicity six.
        let g = alg("D3");
        let f = g.principal_nilpotent();
        let b = &poly_in(&f, &[(gr(2, 1), 1), (gr(-1, 1), 3)]) + &g.matrix_s().unwrap();
        let zf = idealic_map_matrices(&f, &b, &e1(6)).unwrap();
        assert_eq!(
            support(&zf).unwrap(),
            vec![(GRat::int(0), GRat::int(0)); 6]
        );
        let chow_val =
            hilb::chow_from_joint(&g, support(&zf).unwrap()).unwrap();
        assert_eq!(chow_val.pairs, vec![(GRat::int(0), GRat::int(0)); 3]);

        // Nonsplit spectrum is refused.
        let nonsplit = IdealPresentation::from_two_generators(
            &UniPoly::new(vec![GRat::int(-2), GRat::int(0), GRat::int(1)]),
            &UniPoly::zero(),
        )
        .unwrap();
        assert_eq!(support(&nonsplit).unwrap_err(), IdealError::SplitFieldRequired);

        // ch = supp after the idealic map, on a split diagonalizable pair.
        let a3 = alg("A2");
        let a: Mat<GRat> = Mat::from_i64_rows(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]);
        let sq = &a * &a;
        let shift = (-sq.tr()).div(&GRat::int(3));
        let b3 = &sq + &Mat::identity(3).scale(&shift);
        let pair = CommutingPair::new(a3, a.clone(), b3.clone()).unwrap();
        let pres3 = idealic_map(&pair, &vec![GRat::int(1); 3]).unwrap();
        let from_support = hilb::chow_from_joint(&a3, support(&pres3).unwrap()).unwrap();
        assert_eq!(hilb::chow(&pair).unwrap(), from_support);
    }

    #[test]
    fn sign_involution_detects_even_relations() {
        let odd = IdealPresentation::from_two_generators(
            &UniPoly::monomial(GRat::int(1), 5),
            &UniPoly::new(vec![GRat::int(0), gr(1, 1), GRat::int(0), gr(7, 2)]),
        )
        .unwrap();
        assert!(w_invariance_check(&odd));
        let even = IdealPresentation::from_two_generators(
            &UniPoly::monomial(GRat::int(1), 3),
            &UniPoly::new(vec![GRat::int(0), GRat::int(0), GRat::int(1)]),
        )
        .unwrap();
        assert!(!w_invariance_check(&even), "-y + x^2 breaks the involution");
    }

    #[test]
    fn chart_witness_outside_the_type_d_image() {
        // <x^5 - y, xy, y^2> is a valid sign-invariant ideal whose chart
        // data (u != 0 together with v_0 = 0) cannot come from a regular
        // type-D pair: cyclic ones have u v_0 = tau^2 != 0 and non-cyclic
        // ones have u = 0.
        let z = GRat::int(0);
        let mut y_coeff = vec![z.clone(); 6];
        y_coeff[5] = GRat::int(1);
        let witness = IdealPresentation::new(
            vec![(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (0, 1)],
            vec![
                ((5, 0), y_coeff),
                ((1, 1), vec![z.clone(); 6]),
                ((2, 1), vec![z.clone(); 6]),
                ((3, 1), vec![z.clone(); 6]),
                ((4, 1), vec![z.clone(); 6]),
                ((0, 2), vec![z.clone(); 6]),
            ],
        )
        .unwrap();
        assert!(w_invariance_check(&witness));
        let u = witness.border((5, 0)).unwrap()[5].clone();
        let v0 = witness.border((1, 1)).unwrap()[0].clone();
        assert!(!u.is_zero() && v0.is_zero(), "obstruction data");
        assert_eq!(
            support(&witness).unwrap(),
            vec![(GRat::int(0), GRat::int(0)); 6]
        );
        // The chart change itself works; the resulting two-generator chart
        // has x-generator x^6 and y-generator x^5.
        let moved = chart_change_d(&witness).unwrap();
        assert!(moved.border((6, 0)).unwrap().iter().all(|c| c.is_zero()));
        assert_eq!(moved.border((0, 1)).unwrap()[5], GRat::int(1));
    }

    #[test]
    fn haiman_coordinates_read_borders() {
        // Single row: the bottom coefficients read off Q backwards.
        let q = UniPoly::new(vec![GRat::int(0), gr(2, 1), gr(-3, 1), gr(5, 1)]);
        let pres = IdealPresentation::from_two_generators(
            &UniPoly::monomial(GRat::int(1), 4),
            &q,
        )
        .unwrap();
        let row = YoungDiagram::new(vec![4]).unwrap();
        let hc = haiman_coords(&pres, &row).unwrap();
        let values: Vec<(GRat, GRat)> = hc.coords.iter().map(|(_, c)| c.clone()).collect();
        for (i, (br, _)) in values.iter().enumerate() {
            assert!(br.is_zero(), "x^4 expands to zero (box {i})");
        }
        let bottoms: Vec<GRat> = values.into_iter().map(|(_, bb)| bb).collect();
        assert_eq!(
            bottoms,
            vec![gr(5, 1), gr(-3, 1), gr(2, 1), GRat::int(0)],
            "coefficients of x^3 in x^c Q(x) mod x^4"
        );

        // A point: coordinates are the point itself.
        let pt = points_presentation(&[(gr(7, 3), gr(-1, 4))]).unwrap();
        let dot = YoungDiagram::new(vec![1]).unwrap();
        let hc1 = haiman_coords(&pt, &dot).unwrap();
        assert_eq!(hc1.coords[0].1, (gr(7, 3), gr(-1, 4)));

        // 2x2 chart on four generic points: eight coordinates, and the
        // re-eliminated chart presentation regenerates the ideal.
        let pts = vec![
            (gr(1, 1), gr(2, 1)),
            (gr(-1, 2), gr(1, 3)),
            (gr(3, 1), gr(-2, 1)),
            (gr(0, 1), gr(5, 4)),
        ];
        let pres4 = points_presentation(&pts).unwrap();
        let square = YoungDiagram::rectangle(2, 2);
        let hc4 = haiman_coords(&pres4, &square).unwrap();
        assert_eq!(hc4.coords.len(), 4);
        let chart = chart_presentation(&pres4, &square).unwrap();
        let (mx, my) = chart.multiplication_matrices();
        let mut one = vec![GRat::int(0); 4];
        one[0] = GRat::int(1);
        let regenerated = idealic_map_matrices(&mx, &my, &one).unwrap();
        assert_eq!(regenerated, pres4);

        // A chart request the ideal does not satisfy.
        let col = YoungDiagram::new(vec![1, 1]).unwrap();
        let two_origin = IdealPresentation::from_two_generators(
            &UniPoly::monomial(GRat::int(1), 2),
            &UniPoly::zero(),
        )
        .unwrap();
        assert_eq!(
            haiman_coords(&two_origin, &col).unwrap_err(),
            IdealError::NotInChart
        );
    }

    #[test]
    fn rectangle_haiman_coordinates_are_canonical() {
        let report = symplectic_rectangle_check(1, 1, &[(gr(2, 3), gr(-1, 5))], 7).unwrap();
        assert!(report.exact && !report.sign_flipped);

        let mut flips = Vec::new();
        for seed in [11, 12, 13] {
            for (k, l) in [(1usize, 2usize), (2, 2)] {
                let report = symplectic_rectangle_check(k, l, &[], seed).unwrap();
                assert!(report.exact, "{k}x{l} rectangle, seed {seed}");
                flips.push(report.sign_flipped);
            }
        }
        assert!(
            flips.iter().all(|&f| f == flips[0]),
            "orientation convention is uniform"
        );

        // Degenerate input points are resampled from the seed.
        let dup = vec![(gr(1, 1), gr(1, 1)); 4];
        let report = symplectic_rectangle_check(2, 2, &dup, 99).unwrap();
        assert!(report.exact);

        // The [2,1] diagram is a diagnostic only: its pullback is not the
        // canonical form.
        let d21 = YoungDiagram::new(vec![2, 1]).unwrap();
        let pts = vec![
            (gr(1, 1), gr(1, 2)),
            (gr(-2, 1), gr(3, 1)),
            (gr(1, 3), gr(-1, 1)),
        ];
        let pullback = haiman_pullback(&d21, &pts).unwrap();
        let omega = standard_omega(3);
        assert_ne!(pullback, omega);
        assert_ne!(pullback, omega.scale(&GRat::int(-1)));
    }

    #[test]
    fn presentation_validation_rejects_malformed_data() {
        // Missing borders.
        let err = IdealPresentation::<GRat>::new(vec![(0, 0)], vec![]).unwrap_err();
        assert!(matches!(err, IdealError::Shape(_)));
        // Non-confluent expansions: x*y != y*x under these rules.
        let bad = IdealPresentation::new(
            vec![(0, 0), (1, 0)],
            vec![
                ((2, 0), vec![GRat::int(0), GRat::int(0)]),
                ((0, 1), vec![GRat::int(0), GRat::int(1)]),
                ((1, 1), vec![GRat::int(1), GRat::int(0)]),
            ],
        );
        assert!(matches!(bad, Err(IdealError::Shape(_))));
        // Staircase with a gap is not an order ideal.
        let gap = IdealPresentation::<GRat>::new(vec![(0, 0), (2, 0)], vec![]);
        assert!(matches!(gap, Err(IdealError::Shape(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn companion_pairs_round_trip_through_the_presentation(
            m in 2usize..6,
            coeffs in proptest::collection::vec(-6i64..=6, 10),
            qcoeffs in proptest::collection::vec(-6i64..=6, 10),
        ) {
            // A companion matrix and a polynomial in it: always cyclic.
            let a = Mat::from_fn(m, m, |r, c| {
                if r + 1 == c + 2 && c < m - 1 {
                    GRat::int(1)
                } else if c == m - 1 {
                    GRat::int(coeffs[r])
                } else {
                    GRat::int(0)
                }
            });
            let b = poly_in(
                &a,
                &qcoeffs[..m]
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| (GRat::int(c), k))
                    .collect::<Vec<_>>(),
            );
            let mut v = vec![GRat::int(0); m];
            v[0] = GRat::int(1);
            let pres = idealic_map_matrices(&a, &b, &v).unwrap();
            prop_assert_eq!(pres.codimension(), m);
            let (mx, my) = pres.multiplication_matrices();
            prop_assert_eq!(a.charpoly(), mx.charpoly());
            let again = idealic_map_matrices(&mx, &my, &v).unwrap();
            prop_assert_eq!(again, pres);
        }

        #[test]
        fn point_ideals_round_trip_and_support_recovers_the_points(
            xs in proptest::collection::hash_set(-20i64..=20, 3),
            offs in proptest::collection::vec(-9i64..=9, 3),
        ) {
            let xs: Vec<i64> = xs.into_iter().collect();
            let pts: Vec<(GRat, GRat)> = xs
                .iter()
                .zip(&offs)
                .map(|(&x, &y)| (GRat::int(x), GRat::int(y)))
                .collect();
            let pres = points_presentation(&pts).unwrap();
            let mut expected = pts.clone();
            expected.sort_by(|p, q| {
                p.0.lex_cmp(&q.0).then_with(|| p.1.lex_cmp(&q.1))
            });
            prop_assert_eq!(support(&pres).unwrap(), expected);
            let (mx, my) = pres.multiplication_matrices();
            let mut one = vec![GRat::int(0); pts.len()];
            one[0] = GRat::int(1);
            let again = idealic_map_matrices(&mx, &my, &one).unwrap();
            prop_assert_eq!(again, pres);
        }
    }
}
