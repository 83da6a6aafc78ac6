use num_traits::One;
use serde_json::json;
use stperiod_core::coxeter::{
    build_affine_system, growth_coefficients, CartanType, CoxeterError, Family, GrowthSeries,
};
use stperiod_core::period::{
    check_theorem_bounds, compute_period, l1_diagnostic, period_series, PeriodError, ResidueSize,
};
use stperiod_core::residue::{
    affine_square_orbits, build_fields, exists_nonsquare_value, inversion_closure_orbits, least_square_root_of_base,
    twist_parameter, verify_fraction_identity, ResidueError,
};
use stperiod_core::tree::{
    build_tree_pair, decay_check, invariant_solver, iwahori_cocycle, reconstruct_layer, tree_period, verify_harmonic,
    LayerValues, TreeError, TreePair,
};
use stperiod_core::BigRational;
use thiserror::Error;

use crate::cache::{cache_get, cache_put};
use crate::config::{Command, RunConfig, Source};
use crate::output::{exact, rational_row, to_value, Artifact};
use crate::suite::run_suite;

#[derive(Debug, Error)]
pub enum RunError {
    /// Bad parameters; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Budget or other resource limit; exit code 3.
    #[error("{0}")]
    Resource(String),
    /// A computation contradicted an expected invariant; exit code 1.
    #[error("{0}")]
    CheckFailed(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::CheckFailed(_) => 1,
            RunError::Usage(_) => 2,
            RunError::Resource(_) => 3,
        }
    }
}

impl From<CoxeterError> for RunError {
    fn from(e: CoxeterError) -> Self {
        match e {
            CoxeterError::InvalidType { .. } => RunError::Usage(e.to_string()),
            CoxeterError::BudgetExceeded { .. } => {
                RunError::Resource(format!("{e}; raise --budget or use --source closed-form"))
            }
            _ => RunError::CheckFailed(e.to_string()),
        }
    }
}

impl From<PeriodError> for RunError {
    fn from(e: PeriodError) -> Self {
        match e {
            PeriodError::Coxeter(c) => c.into(),
            PeriodError::NotPrimePower(_) | PeriodError::OutOfRange { .. } | PeriodError::TruncationTooShort => {
                RunError::Usage(e.to_string())
            }
            PeriodError::TailNotContracting { .. } => RunError::Resource(format!("{e}; raise --K")),
        }
    }
}

impl From<TreeError> for RunError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::UnsupportedResidueSize(_) | TreeError::DepthTooSmall { .. } => RunError::Usage(e.to_string()),
            TreeError::BudgetExceeded { .. } => RunError::Resource(e.to_string()),
            _ => RunError::CheckFailed(e.to_string()),
        }
    }
}

impl From<ResidueError> for RunError {
    fn from(e: ResidueError) -> Self {
        match e {
            ResidueError::NotPrime(_) | ResidueError::DegreeOutOfRange(_) | ResidueError::TooLarge(_) => {
                RunError::Usage(e.to_string())
            }
            _ => RunError::CheckFailed(e.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub rendered: String,
    pub passed: bool,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Executes one command and renders its result in the configured format.
pub fn run(cfg: &RunConfig) -> Result<RunOutput, RunError> {
    let artifact = match &cfg.command {
        Command::Growth { ty, k, source } => growth(cfg, ty.family, ty.rank, *k, *source)?,
        Command::Period { ty, q_f, k, source } => period(cfg, ty.family, ty.rank, *q_f, *k, *source)?,
        Command::TreeVerify { q_f, depth } => tree_verify(*q_f, *depth)?,
        Command::TreePeriod { q_f, depth } => tree_period_cmd(*q_f, *depth)?,
        Command::Invariant { q_f, depth } => invariant(*q_f, *depth)?,
        Command::Orbit { p, n } => orbit(*p, *n)?,
        Command::Suite => run_suite(cfg)?.into_artifact(),
    };
    Ok(RunOutput { rendered: artifact.render(cfg.format), passed: artifact.passed })
}

fn residue_size(q: u64) -> Result<ResidueSize, RunError> {
    ResidueSize::new(q).map_err(|e| RunError::Usage(format!("--qF: {e}")))
}

/// Enumerated series, read from and written to the cache when one is configured.
pub fn enumerated_series(cfg: &RunConfig, ty: CartanType, k: usize) -> Result<GrowthSeries, RunError> {
    if let Some(dir) = &cfg.cache_dir {
        if let Some(s) = cache_get(dir, ty, k).series() {
            return Ok(s);
        }
    }
    let series = growth_coefficients(&build_affine_system(ty.family(), ty.rank())?, k, cfg.budget)?;
    if let Some(dir) = &cfg.cache_dir {
        if let Err(e) = cache_put(dir, &series) {
            log::warn!("could not write cache entry in {}: {e}", dir.display());
        }
    }
    Ok(series)
}

pub fn load_series(
    cfg: &RunConfig,
    family: Family,
    rank: usize,
    k: usize,
    source: Source,
) -> Result<GrowthSeries, RunError> {
    let ty = CartanType::new(family, rank)?;
    match source {
        Source::Enumerated => enumerated_series(cfg, ty, k),
        Source::ClosedForm => Ok(GrowthSeries::closed_form(ty, k)?),
    }
}

fn growth(cfg: &RunConfig, family: Family, rank: usize, k: usize, source: Source) -> Result<Artifact, RunError> {
    let s = load_series(cfg, family, rank, k, source)?;
    let coeffs: Vec<String> = s.coefficients.iter().map(u64::to_string).collect();
    Ok(Artifact {
        command: "growth",
        params: json!({ "family": family, "rank": rank, "K": k }),
        result: to_value(&s),
        passed: true,
        csv_header: vec!["k", "a_k"],
        csv_rows: s.coefficients.iter().enumerate().map(|(i, a)| vec![i.to_string(), a.to_string()]).collect(),
        text: vec![format!("{family}{rank}~ growth to K={k}: {}", coeffs.join(" "))],
    })
}

fn period(
    cfg: &RunConfig,
    family: Family,
    rank: usize,
    q_f: u64,
    k: usize,
    source: Source,
) -> Result<Artifact, RunError> {
    let q = residue_size(q_f)?;
    let s = load_series(cfg, family, rank, k, source)?;
    let res = compute_period(&s, q, k)?;
    let bounds = check_theorem_bounds(&res);
    let l1 = l1_diagnostic(&s, q, k)?;
    let agrees = res.series_agrees();
    let last = res.partial_sums.last().expect("K + 1 partial sums");
    let text = vec![
        format!("{family}{rank}~ with q_F = {q_f}, q_E = {}", res.q_e),
        format!("closed form  lambda = {}", res.closed_form_value),
        format!("partial sum  S_{k} = {last}"),
        format!("tail bound   {}", res.tail_bound),
        format!("series agrees within tail: {agrees}"),
        format!("bounds 1 > lambda > 1 - (d+1)/q_F: {}", bounds_label(&bounds)),
        format!("absolute series converges: {}, q_F > d: {}", l1.converges, l1.sufficient_condition),
    ];
    Ok(Artifact {
        command: "period",
        params: json!({ "family": family, "rank": rank, "qF": q_f, "K": k }),
        result: json!({
            "period": to_value(&res),
            "series_agrees": agrees,
            "bounds": to_value(&bounds),
            "absolute_series": { "converges": l1.converges, "sufficient_condition": l1.sufficient_condition },
        }),
        passed: agrees && bounds.passed(),
        csv_header: vec!["m", "num", "den"],
        csv_rows: res.partial_sums.iter().enumerate().map(|(m, x)| rational_row(m, x)).collect(),
        text,
    })
}

fn bounds_label(b: &stperiod_core::period::BoundsCheck) -> &'static str {
    use stperiod_core::period::BoundsCheck::*;
    match b {
        Holds { .. } => "holds",
        Violated { .. } => "VIOLATED",
        NotApplicable => "not applicable (q_F <= d)",
    }
}

fn tree(q_f: u64, depth: usize) -> Result<TreePair, RunError> {
    residue_size(q_f)?;
    Ok(build_tree_pair(q_f, depth)?)
}

fn tree_verify(q_f: u64, depth: usize) -> Result<Artifact, RunError> {
    let t = tree(q_f, depth)?;
    let c = iwahori_cocycle(&t);
    let report = verify_harmonic(&t, &c);
    let decay = decay_check(&t, &c);
    let passed = report.is_harmonic() && decay.is_one();
    Ok(Artifact {
        command: "tree-verify",
        params: json!({ "qF": q_f, "depth": depth }),
        result: json!({
            "q_e": t.q_e(),
            "edges": t.edges().len(),
            "harmonicity": to_value(&report),
            "decay_constant": exact(&decay),
        }),
        passed,
        csv_header: vec!["edge_id", "num", "den"],
        csv_rows: c.values().iter().enumerate().map(|(e, x)| rational_row(e, x)).collect(),
        text: vec![
            format!("tree q_F = {q_f}, q_E = {}, depth {depth}, {} edges", t.q_e(), t.edges().len()),
            format!("interior vertices checked: {}, violations: {}", report.interior_checked, report.violations.len()),
            format!("decay constant max |f(e)| q_E^d(e0,e) = {decay}"),
        ],
    })
}

fn tree_period_cmd(q_f: u64, depth: usize) -> Result<Artifact, RunError> {
    let t = tree(q_f, depth)?;
    let sums = tree_period(&t, &iwahori_cocycle(&t));
    let a1 = GrowthSeries::closed_form(CartanType::new(Family::A, 1)?, depth)?;
    let expected = period_series(&a1, residue_size(q_f)?, depth)?;
    let agrees = sums == expected;
    Ok(Artifact {
        command: "tree-period",
        params: json!({ "qF": q_f, "depth": depth }),
        result: json!({
            "partial_sums": sums.iter().map(exact).collect::<Vec<_>>(),
            "matches_rank_one_series": agrees,
        }),
        passed: agrees,
        csv_header: vec!["m", "num", "den"],
        csv_rows: sums.iter().enumerate().map(|(m, x)| rational_row(m, x)).collect(),
        text: sums.iter().enumerate().map(|(m, x)| format!("S_{m} = {x}")).collect(),
    })
}

/// `c_0 = 1`, `c_1 = -(q_F + 1)/(q_E - q_F)`, `c_{delta+1} = -c_delta / q_E`.
pub fn expected_profile(q_f: u64, len: usize) -> Vec<BigRational> {
    let q = BigRational::from_integer(q_f.into());
    let qe = &q * &q;
    let mut out = vec![BigRational::one()];
    if len > 1 {
        out.push(-(&q + BigRational::one()) / (&qe - &q));
    }
    while out.len() < len {
        let next = -out.last().expect("nonempty") / &qe;
        out.push(next);
    }
    out
}

/// Layer values obtained by repeatedly applying the one-step recursion from `c_0 = 1`.
pub fn recursion_profile(t: &TreePair) -> Result<Vec<Option<BigRational>>, TreeError> {
    let mut layer = LayerValues::constant(t, 0, BigRational::one());
    let mut out = vec![layer.common_value().cloned()];
    for _ in 0..t.max_f_distance() {
        layer = reconstruct_layer(t, &layer)?;
        out.push(layer.common_value().cloned());
    }
    Ok(out)
}

fn invariant(q_f: u64, depth: usize) -> Result<Artifact, RunError> {
    let t = tree(q_f, depth)?;
    let inv = invariant_solver(&t)?;
    let expected = expected_profile(q_f, inv.profile.len());
    let recursion = recursion_profile(&t)?;
    let formula_ok = inv.profile == expected;
    let recursion_ok = recursion.iter().zip(&inv.profile).all(|(r, p)| r.as_ref() == Some(p));
    Ok(Artifact {
        command: "invariant",
        params: json!({ "qF": q_f, "depth": depth }),
        result: json!({
            "solution": to_value(&inv),
            "matches_closed_profile": formula_ok,
            "matches_layer_recursion": recursion_ok,
        }),
        passed: inv.dimension == 1 && formula_ok && recursion_ok,
        csv_header: vec!["delta", "num", "den"],
        csv_rows: inv.profile.iter().enumerate().map(|(d, x)| rational_row(d, x)).collect(),
        text: std::iter::once(format!("dimension {}", inv.dimension))
            .chain(inv.profile.iter().enumerate().map(|(d, x)| format!("c_{d} = {x}")))
            .chain([format!("closed profile: {formula_ok}, layer recursion: {recursion_ok}")])
            .collect(),
    })
}

fn orbit(p: u32, n: u32) -> Result<Artifact, RunError> {
    let f = build_fields(p, n)?;
    let affine = affine_square_orbits(&f);
    let closure = inversion_closure_orbits(&f)?;
    let mut result = json!({
        "fields": to_value(&f),
        "affine_square": to_value(&affine),
        "inversion_closure": to_value(&closure),
    });
    let mut text = vec![
        format!("q = {}: {} labels outside F_q", f.q, f.q * f.q - f.q),
        format!("affine-square moves: {} orbit(s) of sizes {:?}", affine.orbit_count, affine.orbit_sizes),
        format!("after inversion closure: {} orbit(s) of sizes {:?}", closure.orbit_count, closure.orbit_sizes),
    ];
    let passed = if p == 2 {
        affine.is_transitive()
    } else {
        let x0 = least_square_root_of_base(&f)?;
        let c = twist_parameter(&f, x0)?;
        let identity = verify_fraction_identity(&f, c)?;
        let witness = exists_nonsquare_value(&f, c);
        result["x0"] = json!(x0);
        result["c"] = json!(c);
        result["fraction_identity"] = to_value(&identity);
        result["nonsquare_witness"] = match &witness {
            Ok((a, b)) => json!({ "a": a, "b": b }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        text.push(format!("x0 = {x0}, c = {c}"));
        text.push(format!("fraction identity: {} cases, {} failures", identity.checked, identity.failures.len()));
        text.push(match &witness {
            Ok((a, b)) => format!("non-square witness (a, b) = ({a}, {b})"),
            Err(e) => format!("non-square witness: {e}"),
        });
        affine.orbit_count == 2 && closure.is_transitive() && identity.holds() && witness.is_ok()
    };
    let csv_rows = [("affine-square", &affine), ("inversion-closure", &closure)]
        .into_iter()
        .flat_map(|(stage, r)| {
            r.representatives
                .iter()
                .zip(&r.orbit_sizes)
                .map(move |(rep, size)| vec![stage.to_string(), rep.to_string(), size.to_string()])
        })
        .collect();
    Ok(Artifact {
        command: "orbit",
        params: json!({ "p": p, "n": n }),
        result,
        passed,
        csv_header: vec!["stage", "representative", "size"],
        csv_rows,
        text,
    })
}
