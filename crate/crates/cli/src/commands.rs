//! Implementations behind the subcommands: each builds a [`Report`] or fails
//! with a [`CommandError`] (always an input or domain error, mapped to exit
//! code 2 by the binary). Check failures inside a successful run are carried
//! in the report and drive exit code 1.

use std::path::Path;

use ghilb::codec::{CodecError, MatrixJson, PairJson, ScalarField, VectorJson};
use ghilb::field::GRat;
use ghilb::gcx::{phase_var, verify_algebra, DeformedPair, GcxError};
use ghilb::hilb::{self, CommutingPair, Cyclicity, HilbError};
use ghilb::ideals::{
    self, haiman_coords, idealic_map_extended_d, idealic_map_matrices, points_presentation,
    symplectic_rectangle_check, IdealError, IdealPresentation, YoungDiagram,
};
use ghilb::liealg::{Family, LieAlgebra, LieError};
use ghilb::matrix::Mat;
use ghilb::realforms::{sl2r_orbit_check, split_sample_correspondence, RealFormError, RealFormSpec};
use serde_json::{json, Value};
use thiserror::Error;

use crate::checks;
use crate::report::{CheckRecord, Report};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Hilb(#[from] HilbError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Gcx(#[from] GcxError),
    #[error(transparent)]
    Real(#[from] RealFormError),
}

fn load(path: &Path, flag: &str) -> Result<String, CommandError> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandError::Input(format!("--{flag} {}: {e}", path.display())))
}

fn parse_algebra(spec: &str) -> Result<LieAlgebra, CommandError> {
    LieAlgebra::parse(spec)
        .map_err(|e| CommandError::Input(format!("--spec {spec}: {e}")))
}

fn load_pair(path: &Path) -> Result<(Mat<GRat>, Mat<GRat>), CommandError> {
    let text = load(path, "pair")?;
    let parsed = PairJson::from_str(&text)
        .and_then(|p| p.parse())
        .map_err(|e| CommandError::Input(format!("--pair {}: {e}", path.display())))?;
    Ok(parsed)
}

fn load_vector(path: &Path) -> Result<Vec<GRat>, CommandError> {
    let text = load(path, "vector")?;
    VectorJson::from_str(&text)
        .and_then(|v| v.parse())
        .map_err(|e| CommandError::Input(format!("--vector {}: {e}", path.display())))
}

fn load_points(path: &Path) -> Result<Vec<(GRat, GRat)>, CommandError> {
    let text = load(path, "points")?;
    let m = MatrixJson::from_str(&text)
        .and_then(|m| m.parse())
        .map_err(|e| CommandError::Input(format!("--points {}: {e}", path.display())))?;
    if m.ncols != 2 {
        return Err(CommandError::Input(format!(
            "--points {}: expected an m x 2 matrix of (x, y) rows, got {} columns",
            path.display(),
            m.ncols
        )));
    }
    Ok((0..m.nrows)
        .map(|r| (m[(r, 0)].clone(), m[(r, 1)].clone()))
        .collect())
}

fn scalar_from_str(text: &str, context: &str) -> Result<GRat, CommandError> {
    let v = VectorJson {
        field: ScalarField::Qi,
        entries: vec![text.to_string()],
    };
    let mut parsed = v
        .parse()
        .map_err(|e| CommandError::Input(format!("{context} '{text}': {e}")))?;
    Ok(parsed.pop().expect("one entry"))
}

fn presentation_json(p: &IdealPresentation<GRat>) -> Value {
    let stairs: Vec<Value> = p.staircase().iter().map(|(i, j)| json!([i, j])).collect();
    let mut borders = serde_json::Map::new();
    for (m, coeffs) in p.borders() {
        borders.insert(
            format!("{},{}", m.0, m.1),
            json!(coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        );
    }
    json!({ "staircase": stairs, "borders": borders })
}

fn cyclicity_json(c: &Cyclicity) -> Value {
    match c {
        Cyclicity::CertifiedYes { witness } => json!({
            "certified": true,
            "cyclic": true,
            "witness": witness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }),
        Cyclicity::ProbablyNo { trials } => json!({
            "certified": false,
            "cyclic": false,
            "trials": trials,
        }),
        Cyclicity::CertifiedNo => json!({ "certified": true, "cyclic": false }),
    }
}

/// `construct --spec B2 --slice t2=1,t4=2`: the principal slice matrix and
/// its characteristic polynomial, cross-checked against the closed formula.
pub fn construct(spec: &str, slice: &str) -> Result<Report, CommandError> {
    let alg = parse_algebra(spec)?;
    let count = alg.slice_param_count();
    let mut params = vec![GRat::int(0); count];
    if !slice.trim().is_empty() {
        for item in slice.split(',') {
            let item = item.trim();
            let (key, value) = item.split_once('=').ok_or_else(|| {
                CommandError::Input(format!("--slice entry '{item}': expected key=value"))
            })?;
            let idx = slice_key_index(&alg, key).ok_or_else(|| {
                CommandError::Input(format!(
                    "--slice key '{key}' is not a slice parameter of {}",
                    alg.label()
                ))
            })?;
            params[idx] = scalar_from_str(value.trim(), "--slice value")?;
        }
    }
    let matrix = alg.principal_slice(&params)?;
    let chi = matrix.charpoly();
    let formula = alg.slice_charpoly(&params)?;
    let field = ScalarField::covering(matrix.entries().iter().cloned());

    let mut report = Report::new("construct", 0);
    report.push(CheckRecord::with_payload(
        "slice-matrix",
        "slice.matrix",
        true,
        serde_json::to_value(MatrixJson::emit(field, &matrix)).expect("matrix serializes"),
    ));
    report.push(CheckRecord::with_payload(
        "slice-charpoly",
        "slice.charpoly",
        chi == formula,
        json!(chi.to_string()),
    ));
    Ok(report)
}

fn slice_key_index(alg: &LieAlgebra, key: &str) -> Option<usize> {
    let count = alg.slice_param_count();
    match alg.family {
        Family::A => {
            let k: usize = key.strip_prefix('t')?.parse().ok()?;
            (2..=count + 1).contains(&k).then(|| k - 2)
        }
        Family::B | Family::C => {
            let k: usize = key.strip_prefix('t')?.parse().ok()?;
            (k % 2 == 0 && (2..=2 * count).contains(&k)).then(|| k / 2 - 1)
        }
        Family::D => {
            if key == "tau" {
                return Some(count - 1);
            }
            let k: usize = key.strip_prefix('t')?.parse().ok()?;
            (k % 2 == 0 && (2..=2 * (count - 1)).contains(&k)).then(|| k / 2 - 1)
        }
    }
}

/// `classify --spec A2 --pair pair.json`: the pair's class data; the report
/// fails (exit 1) when the pair is not a Hilbert scheme point.
pub fn classify(
    spec: &str,
    pair_path: &Path,
    seed: u64,
    trials: usize,
) -> Result<Report, CommandError> {
    let alg = parse_algebra(spec)?;
    let (a, b) = load_pair(pair_path)?;
    let pair = CommutingPair::new(alg, a, b)?;
    let class = hilb::classify(&pair, seed, trials);

    let mut report = Report::new("classify", seed);
    report.push(CheckRecord::with_payload(
        "dim-z",
        "classify.dimension",
        true,
        json!(class.dim_z),
    ));
    report.push(CheckRecord::new(
        "in-hilb",
        "classify.membership",
        class.in_hilb,
        Some(format!(
            "dim Z(A,B) = {}, rank = {}",
            class.dim_z, alg.rank
        )),
    ));
    report.push(CheckRecord::with_payload(
        "a-regular",
        "classify.regularity",
        true,
        json!(class.a_regular),
    ));
    report.push(CheckRecord::with_payload(
        "b-regular",
        "classify.regularity",
        true,
        json!(class.b_regular),
    ));
    report.push(CheckRecord::with_payload(
        "nilpotent-pair",
        "classify.nilpotency",
        true,
        json!(class.nilpotent_pair),
    ));
    report.push(CheckRecord::with_payload(
        "cyclic",
        "classify.cyclicity",
        true,
        cyclicity_json(&class.cyclic),
    ));
    Ok(report)
}

/// `mu2 --spec A2 --pair pair.json`: the linear coefficient of B along f.
pub fn mu2(spec: &str, pair_path: &Path) -> Result<Report, CommandError> {
    let alg = parse_algebra(spec)?;
    let (a, b) = load_pair(pair_path)?;
    let pair = CommutingPair::new(alg, a, b)?;
    let value = hilb::mu2(&pair)?;
    let mut report = Report::new("mu2", 0);
    report.push(CheckRecord::with_payload(
        "mu2",
        "mu2.coefficient",
        true,
        json!(value.to_string()),
    ));
    Ok(report)
}

/// `chow --spec A2 --pair pair.json`: canonical Cartan coordinates.
pub fn chow(spec: &str, pair_path: &Path) -> Result<Report, CommandError> {
    let alg = parse_algebra(spec)?;
    let (a, b) = load_pair(pair_path)?;
    let pair = CommutingPair::new(alg, a, b)?;
    let value = hilb::chow(&pair)?;
    let mut report = Report::new("chow", 0);
    report.push(CheckRecord::with_payload(
        "chow-pairs",
        "chow.value",
        true,
        json!({
            "pairs": value
                .pairs
                .iter()
                .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                .collect::<Vec<_>>(),
            "parity_ambiguous": value.parity_ambiguous,
        }),
    ));
    Ok(report)
}

/// Shared presentation construction for `ideal` and `chart-change`: uses the
/// supplied cyclic vector, otherwise searches for one, otherwise (type D
/// only) falls back to the parity-extended map.
fn build_presentation(
    spec: Option<&str>,
    pair_path: &Path,
    vector: Option<&Path>,
    seed: u64,
    trials: usize,
) -> Result<(IdealPresentation<GRat>, Option<String>), CommandError> {
    let (a, b) = load_pair(pair_path)?;
    if let Some(vpath) = vector {
        let v = load_vector(vpath)?;
        return Ok((idealic_map_matrices(&a, &b, &v)?, None));
    }
    match hilb::cyclicity(&a, &b, seed, trials) {
        Cyclicity::CertifiedYes { witness } => {
            Ok((idealic_map_matrices(&a, &b, &witness)?, None))
        }
        not_cyclic => {
            let alg = match spec {
                Some(label) => parse_algebra(label)?,
                None => {
                    return Err(CommandError::Input(format!(
                        "no cyclic vector found ({not_cyclic:?}); pass --vector or --spec D<n> \
                         for the type D extension"
                    )));
                }
            };
            let pres = idealic_map_extended_d(&alg, &a, &b)?;
            Ok((
                pres,
                Some("no cyclic vector; type D extension of the idealic map".to_string()),
            ))
        }
    }
}

/// `ideal --spec D3 --pair pair.json [--vector v.json]`: the border
/// presentation of the pair's annihilator ideal.
pub fn ideal(
    spec: Option<&str>,
    pair_path: &Path,
    vector: Option<&Path>,
    seed: u64,
    trials: usize,
) -> Result<Report, CommandError> {
    let (pres, note) = build_presentation(spec, pair_path, vector, seed, trials)?;
    let mut report = Report::new("ideal", seed);
    report.push(CheckRecord::with_payload(
        "ideal-presentation",
        "ideal.presentation",
        true,
        presentation_json(&pres),
    ));
    if let Some(note) = note {
        report.push(CheckRecord::new("ideal-extension", "ideal.d-extension", true, Some(note)));
    }
    Ok(report)
}

/// `haiman --diagram 2x2 --points pts.json`: chart coordinates of the
/// vanishing ideal of the given points.
pub fn haiman(diagram: &str, points_path: &Path) -> Result<Report, CommandError> {
    let d = parse_diagram(diagram)?;
    let points = load_points(points_path)?;
    if points.len() != d.size() {
        return Err(CommandError::Input(format!(
            "--points: {} points cannot fill a diagram of size {}",
            points.len(),
            d.size()
        )));
    }
    let pres = points_presentation(&points)?;
    let coords = haiman_coords(&pres, &d)?;
    let payload: Vec<Value> = coords
        .coords
        .iter()
        .map(|((r, c), (right, bottom))| {
            json!({
                "box": [r, c],
                "right": right.to_string(),
                "bottom": bottom.to_string(),
            })
        })
        .collect();
    let mut report = Report::new("haiman", 0);
    report.push(CheckRecord::with_payload(
        "haiman-coords",
        "haiman.chart",
        true,
        json!(payload),
    ));
    Ok(report)
}

fn parse_diagram(text: &str) -> Result<YoungDiagram, CommandError> {
    let bad = |detail: String| CommandError::Input(format!("--diagram '{text}': {detail}"));
    if let Some((k, l)) = text.split_once('x') {
        let k: usize = k.trim().parse().map_err(|_| bad("expected KxL".into()))?;
        let l: usize = l.trim().parse().map_err(|_| bad("expected KxL".into()))?;
        if k == 0 || l == 0 {
            return Err(bad("sides must be positive".into()));
        }
        return Ok(YoungDiagram::rectangle(k, l));
    }
    let rows: Vec<usize> = text
        .split(',')
        .map(|r| r.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad("expected KxL or a comma list of row lengths".into()))?;
    YoungDiagram::new(rows).map_err(|e| bad(e.to_string()))
}

/// `chart-change --pair pair.json`: move a codimension-m ideal between the
/// [m-1,1] chart and the single-row chart, verifying the round trip.
pub fn chart_change(
    spec: Option<&str>,
    pair_path: &Path,
    vector: Option<&Path>,
    seed: u64,
    trials: usize,
) -> Result<Report, CommandError> {
    let (pres, _) = build_presentation(spec, pair_path, vector, seed, trials)?;
    let m = pres.codimension();
    if m < 3 {
        return Err(CommandError::Input(format!(
            "--pair: chart change needs codimension >= 3, got {m}"
        )));
    }
    let hook = YoungDiagram::new(vec![m - 1, 1]).expect("valid diagram");
    let small = if pres.staircase() == hook.monomials().as_slice() {
        pres.clone()
    } else {
        ideals::chart_presentation(&pres, &hook)?
    };
    let full = ideals::chart_change_d(&small)?;
    let back = ideals::chart_presentation(&full, &hook)?;

    let mut report = Report::new("chart-change", seed);
    report.push(CheckRecord::with_payload(
        "chart-before",
        "ideal.chart-change",
        true,
        presentation_json(&small),
    ));
    report.push(CheckRecord::with_payload(
        "chart-after",
        "ideal.chart-change",
        true,
        presentation_json(&full),
    ));
    report.push(CheckRecord::new(
        "chart-round-trip",
        "ideal.chart-change",
        back == small,
        None,
    ));
    Ok(report)
}

/// `symplectic-check --rect 2x2 --seed 7`: pullback of the canonical form.
pub fn symplectic_check(
    rect: &str,
    points_path: Option<&Path>,
    seed: u64,
) -> Result<Report, CommandError> {
    let (k, l) = rect
        .split_once('x')
        .and_then(|(k, l)| Some((k.trim().parse().ok()?, l.trim().parse().ok()?)))
        .ok_or_else(|| CommandError::Input(format!("--rect '{rect}': expected KxL")))?;
    let points = match points_path {
        Some(p) => load_points(p)?,
        None => Vec::new(),
    };
    let result = symplectic_rectangle_check(k, l, &points, seed)?;
    let mut report = Report::new("symplectic-check", seed);
    report.push(CheckRecord::with_payload(
        "symplectic-exact",
        "symplectic.pullback",
        result.exact,
        json!({ "exact": result.exact, "sign_flipped": result.sign_flipped }),
    ));
    Ok(report)
}

/// `gcx verify --spec A3 --degree 2 --seed 5 --trials 3`: the Poisson
/// identity suite for one algebra, one record per identity.
pub fn gcx_verify(
    spec: &str,
    degree: u32,
    seed: u64,
    trials: u64,
) -> Result<Report, CommandError> {
    if trials == 0 {
        return Err(CommandError::Input("--trials: need at least one seed".into()));
    }
    let alg = parse_algebra(spec)?;
    let seeds: Vec<u64> = (0..trials).map(|i| seed.wrapping_add(i)).collect();
    let mut report = Report::new("gcx-verify", seed);
    for check in verify_algebra(&alg, degree, &seeds) {
        let anchor = format!("gcx.{}", check.id);
        report.push(CheckRecord::new(check.id, &anchor, check.pass, check.residual));
    }
    Ok(report)
}

/// `spectral --spec A3 --degree 2 --seed 5`: the order-1 Lagrangian property
/// of the deformed spectral pair, with the antiholomorphic control.
pub fn spectral(spec: &str, degree: u32, seed: u64, trials: u64) -> Result<Report, CommandError> {
    if trials == 0 {
        return Err(CommandError::Input("--trials: need at least one seed".into()));
    }
    let alg = parse_algebra(spec)?;
    let seeds: Vec<u64> = (0..trials).map(|i| seed.wrapping_add(i)).collect();
    let shape = DeformedPair::new(alg.msize(), &[(2, phase_var("z"))])?;
    let mut report = Report::new("spectral", seed);
    report.push(CheckRecord::with_payload(
        "spectral-pair",
        "spectral.shape",
        true,
        json!({
            "p": shape.p_gen.to_string(),
            "q": shape.q_gen.to_string(),
        }),
    ));
    for check in verify_algebra(&alg, degree, &seeds) {
        if check.id.starts_with("lagrangian-order1") {
            let anchor = format!("spectral.{}", check.id);
            report.push(CheckRecord::new(check.id, &anchor, check.pass, check.residual));
        }
    }
    Ok(report)
}

/// `real sl2r-check`: nilpotent families and rotation scalars in sl2(R).
pub fn real_sl2r_check() -> Result<Report, CommandError> {
    let samples = [
        ghilb::field::rat(1, 2),
        ghilb::field::rat(1, 3),
        ghilb::field::rat(-2, 7),
        ghilb::field::rat(2, 1),
        ghilb::field::rat(-5, 3),
    ];
    let orbit = sl2r_orbit_check(&samples);
    let mut report = Report::new("real-sl2r-check", 0);
    report.push(CheckRecord::new(
        "nilpotent-families",
        "real.sl2",
        orbit.nilpotents_are_the_two_families,
        None,
    ));
    report.push(CheckRecord::new(
        "family-swap-witness",
        "real.sl2",
        orbit.swap_conjugation,
        None,
    ));
    report.push(CheckRecord::new(
        "commutant-proportional",
        "real.sl2",
        orbit.commuting_is_proportional,
        None,
    ));
    let scalars: Vec<Value> = orbit
        .scalars
        .iter()
        .map(|sc| {
            json!({
                "s": sc.s.to_string(),
                "plus": sc.plus.to_string(),
                "minus": sc.minus.to_string(),
            })
        })
        .collect();
    report.push(CheckRecord::with_payload(
        "rotation-scalars",
        "real.sl2",
        orbit
            .scalars
            .iter()
            .all(|sc| sc.plus.clone() * sc.minus.clone() == GRat::int(1)),
        json!(scalars),
    ));
    Ok(report)
}

/// `real classify --pair pair.json [--spec A2]`: the real class data of a
/// commuting pair in p; fails (exit 1) when not a real Hilbert point.
pub fn real_classify(spec: Option<&str>, pair_path: &Path) -> Result<Report, CommandError> {
    let (a, b) = load_pair(pair_path)?;
    let alg = match spec {
        Some(label) => parse_algebra(label)?,
        None => {
            if a.nrows < 2 {
                return Err(CommandError::Input(
                    "--pair: matrices must be at least 2 x 2".into(),
                ));
            }
            LieAlgebra::new(Family::A, a.nrows - 1)?
        }
    };
    let form = RealFormSpec::build_split(&alg)?;
    let class = ghilb::realforms::classify_real(&form, &a, &b)?;
    let mut report = Report::new("real-classify", 0);
    report.push(CheckRecord::with_payload(
        "dim-zp",
        "real.dimension",
        true,
        json!(class.dim_zp),
    ));
    report.push(CheckRecord::new(
        "real-in-hilb",
        "real.membership",
        class.in_hilb,
        Some(format!(
            "dim Z_p(A,B) = {}, real rank = {}",
            class.dim_zp,
            form.real_rank()
        )),
    ));
    report.push(CheckRecord::with_payload(
        "a-nilpotent",
        "real.nilpotency",
        true,
        json!(class.a_nilpotent),
    ));
    report.push(CheckRecord::with_payload(
        "b-nilpotent",
        "real.nilpotency",
        true,
        json!(class.b_nilpotent),
    ));
    Ok(report)
}

/// `real split-check --spec A2 --samples 10 --seed 7`: sample-level agreement
/// of the real and complex classifications on the split form.
pub fn real_split_check(spec: &str, samples: usize, seed: u64) -> Result<Report, CommandError> {
    let alg = parse_algebra(spec)?;
    let form = RealFormSpec::build_split(&alg)?;
    let result = split_sample_correspondence(&form, samples, seed)?;
    let rows: Vec<Value> = result
        .records
        .iter()
        .map(|r| {
            json!({
                "dim_zp": r.dim_zp,
                "dim_zg": r.dim_zg,
                "real_in_hilb": r.real_in_hilb,
                "complex_in_hilb": r.complex_in_hilb,
                "chow_agrees": r.chow_agrees,
            })
        })
        .collect();
    let mut report = Report::new("real-split-check", seed);
    report.push(CheckRecord::with_payload(
        "split-correspondence",
        "real.split",
        result.all_agree,
        json!(rows),
    ));
    Ok(report)
}

/// `verify-all --seed 42`: the full acceptance suite, flattened.
pub fn verify_all(seed: u64) -> Result<Report, CommandError> {
    let mut report = Report::new("verify-all", seed);
    for criterion in checks::run_all(seed) {
        for record in criterion.checks {
            report.push(record);
        }
    }
    Ok(report)
}
