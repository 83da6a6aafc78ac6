//! The consolidated verification suite.

use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};
use stperiod_core::coxeter::{epsilon_of_omega, omega_group, CartanType, Family};
use stperiod_core::period::{
    check_counting_bound, check_theorem_bounds, compute_period, period_closed_form, BoundsCheck, ResidueSize,
};
use stperiod_core::poly::rat;
use stperiod_core::residue::{
    affine_square_orbits, build_fields, exists_nonsquare_value, inversion_closure_orbits, least_square_root_of_base,
    twist_parameter, verify_fraction_identity,
};
use stperiod_core::tree::{
    build_tree_pair, check_epsilon_homomorphism, decay_check, epsilon_tree, invariant_solver, iwahori_cocycle,
    verify_harmonic, TreeAutomorphism, MIN_SAMPLED_PAIRS,
};

use crate::config::RunConfig;
use crate::output::{exact, to_value, Artifact, SCHEMA_VERSION};
use crate::run::{enumerated_series, expected_profile, recursion_profile, RunError};

use Family::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// The mathematical statement being checked.
    pub statement: &'static str,
    pub status: Status,
    pub witness: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn into_artifact(self) -> Artifact {
        Artifact {
            command: "suite",
            params: json!({ "seed": self.seed }),
            passed: self.passed(),
            csv_header: vec!["name", "status", "statement"],
            csv_rows: self
                .checks
                .iter()
                .map(|c| vec![c.name.to_string(), c.status.label().to_string(), c.statement.to_string()])
                .collect(),
            text: self
                .checks
                .iter()
                .map(|c| format!("[{:>14}] {:<32} {}", c.status.label(), c.name, c.statement))
                .collect(),
            result: to_value(&self),
        }
    }
}

/// Affine types whose growth series are enumerated in the suite.
pub const PERIOD_GRID_TYPES: [(Family, usize); 5] = [(A, 1), (A, 2), (A, 3), (C, 2), (G, 2)];
pub const PERIOD_GRID_Q: [u64; 4] = [2, 3, 4, 5];
pub const PERIOD_TRUNCATION: usize = 12;
pub const COUNTING_TYPES: [(Family, usize); 14] =
    [(A, 1), (A, 2), (A, 3), (A, 4), (B, 3), (B, 4), (C, 2), (C, 3), (C, 4), (D, 4), (D, 5), (F, 4), (G, 2), (E, 6)];
pub const COUNTING_TRUNCATION: usize = 8;
pub const OMEGA_TYPES: [(Family, usize); 17] = [
    (A, 1),
    (A, 2),
    (A, 3),
    (A, 4),
    (B, 3),
    (B, 4),
    (C, 2),
    (C, 3),
    (C, 4),
    (D, 4),
    (D, 5),
    (D, 6),
    (E, 6),
    (E, 7),
    (E, 8),
    (F, 4),
    (G, 2),
];

fn q(x: u64) -> ResidueSize {
    ResidueSize::new(x).expect("grid values are prime powers")
}

pub fn run_suite(cfg: &RunConfig) -> Result<SuiteReport, RunError> {
    let checks = vec![
        rank_one_period()?,
        series_matches_closed_form(cfg)?,
        period_bounds(cfg)?,
        counting_bound(cfg)?,
        counting_tight_rank_one(cfg)?,
        tree_census()?,
        harmonicity()?,
        decay()?,
        invariant_multiplicity_one()?,
        orbits_even()?,
        orbits_odd()?,
        fraction_identity()?,
        nonsquare_witness()?,
        omega_sign()?,
        tree_sign(cfg.seed)?,
        root_swap_sign()?,
    ];
    Ok(SuiteReport { schema_version: SCHEMA_VERSION, seed: cfg.seed, checks })
}

pub fn rank_one_period() -> Result<Check, RunError> {
    let mut ok = true;
    let mut witness = serde_json::Map::new();
    for qf in [2u64, 3, 4, 5, 7, 8, 9] {
        let v = period_closed_form(A, 1, q(qf))?;
        ok &= v == rat(qf as i64 - 1, qf as i64 + 1);
        witness.insert(qf.to_string(), exact(&v));
    }
    Ok(Check {
        name: "rank-one-period",
        statement: "lambda(A1~, q_F) = 1 - 2/(q_F + 1) for q_F in {2,3,4,5,7,8,9}",
        status: Status::from_bool(ok),
        witness: Value::Object(witness),
    })
}

pub fn series_matches_closed_form(cfg: &RunConfig) -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for (f, r) in PERIOD_GRID_TYPES {
        let s = enumerated_series(cfg, CartanType::new(f, r)?, PERIOD_TRUNCATION)?;
        for qf in PERIOD_GRID_Q {
            let res = compute_period(&s, q(qf), PERIOD_TRUNCATION)?;
            let gap = (&res.closed_form_value - res.partial_sums.last().expect("nonempty")).abs();
            ok &= res.series_agrees();
            rows.push(json!({
                "type": format!("{f}{r}"), "qF": qf, "gap": exact(&gap), "tail_bound": exact(&res.tail_bound),
            }));
        }
    }
    Ok(Check {
        name: "series-matches-closed-form",
        statement: "|W_aff(-1/q_F) - S_12| <= geometric tail bound for A1~ A2~ A3~ C2~ G2~, q_F in {2..5}",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn period_bounds(cfg: &RunConfig) -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for (f, r) in PERIOD_GRID_TYPES {
        let s = enumerated_series(cfg, CartanType::new(f, r)?, PERIOD_TRUNCATION)?;
        for qf in PERIOD_GRID_Q {
            let res = compute_period(&s, q(qf), PERIOD_TRUNCATION)?;
            let b = check_theorem_bounds(&res);
            ok &= b.passed();
            if !matches!(b, BoundsCheck::NotApplicable) {
                rows.push(json!({ "type": format!("{f}{r}"), "qF": qf, "lambda": exact(&res.closed_form_value), "bounds": to_value(&b) }));
            }
        }
    }
    Ok(Check {
        name: "period-bounds",
        statement: "1 > lambda > 1 - (d+1)/q_F whenever q_F > d",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn counting_bound(cfg: &RunConfig) -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for (f, r) in COUNTING_TYPES {
        let s = enumerated_series(cfg, CartanType::new(f, r)?, COUNTING_TRUNCATION)?;
        let rep = check_counting_bound(&s, COUNTING_TRUNCATION)?;
        ok &= rep.all_hold();
        rows.push(json!({ "type": format!("{f}{r}"), "coefficients": s.coefficients, "holds": rep.all_hold() }));
    }
    Ok(Check {
        name: "counting-bound",
        statement: "a_k <= (d+1) d^(k-1) for 1 <= k <= 8",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn counting_tight_rank_one(cfg: &RunConfig) -> Result<Check, RunError> {
    let s = enumerated_series(cfg, CartanType::new(A, 1)?, COUNTING_TRUNCATION)?;
    let rep = check_counting_bound(&s, COUNTING_TRUNCATION)?;
    Ok(Check {
        name: "counting-bound-tight-rank-one",
        statement: "a_k = (d+1) d^(k-1) = 2 for A1~",
        status: Status::from_bool(rep.all_tight()),
        witness: json!(s.coefficients),
    })
}

pub fn tree_census() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for (qf, depth) in [(2u64, 6usize), (3, 6), (4, 4), (5, 3)] {
        let t = build_tree_pair(qf, depth)?;
        let counts: Vec<usize> = (0..=depth).map(|k| t.sphere(k).filter(|e| e.in_f).count()).collect();
        ok &= counts.iter().enumerate().skip(1).all(|(k, &n)| n as u64 == 2 * qf.pow(k as u32));
        rows.push(json!({ "qF": qf, "depth": depth, "f_sphere_sizes": counts }));
    }
    Ok(Check {
        name: "tree-census",
        statement: "|Sigma_F(k)| = 2 q_F^k on the truncated tree",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn harmonicity() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for qf in [2u64, 3] {
        let t = build_tree_pair(qf, 6)?;
        let rep = verify_harmonic(&t, &iwahori_cocycle(&t));
        ok &= rep.is_harmonic() && rep.interior_checked > 0;
        rows.push(json!({ "qF": qf, "depth": 6, "interior_checked": rep.interior_checked, "violations": rep.violations.len() }));
    }
    Ok(Check {
        name: "harmonicity",
        statement: "the Iwahori cocycle sums to zero around every interior vertex",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn decay() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for qf in [2u64, 3] {
        let t = build_tree_pair(qf, 6)?;
        let d = decay_check(&t, &iwahori_cocycle(&t));
        ok &= d.is_one();
        rows.push(json!({ "qF": qf, "constant": exact(&d) }));
    }
    Ok(Check {
        name: "decay",
        statement: "max |f(e)| q_E^d(e0,e) = 1 for the Iwahori cocycle",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn invariant_multiplicity_one() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for qf in [2u64, 3, 4, 5] {
        let t = build_tree_pair(qf, 3)?;
        let inv = invariant_solver(&t)?;
        let formula = inv.profile == expected_profile(qf, inv.profile.len());
        let recursion = recursion_profile(&t)?.iter().zip(&inv.profile).all(|(r, p)| r.as_ref() == Some(p));
        ok &= inv.dimension == 1 && formula && recursion;
        rows.push(json!({
            "qF": qf, "dimension": inv.dimension,
            "profile": inv.profile.iter().map(exact).collect::<Vec<_>>(),
            "matches_closed_profile": formula, "matches_layer_recursion": recursion,
        }));
    }
    Ok(Check {
        name: "invariant-multiplicity-one",
        statement:
            "harmonic cocycles constant on distance classes form a line; c_1 = -(q_F+1)/(q_E-q_F), c_(d+1) = -c_d/q_E",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn orbits_even() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for n in 1..=4 {
        let f = build_fields(2, n)?;
        let r = affine_square_orbits(&f);
        ok &= r.is_transitive();
        rows.push(json!({ "q": f.q, "orbit_sizes": r.orbit_sizes }));
    }
    Ok(Check {
        name: "orbits-even-characteristic",
        statement: "x -> a^2 x + b is transitive on k_E \\ k_F for q in {2,4,8,16}",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

const ODD_FIELDS: [(u32, u32); 4] = [(3, 1), (5, 1), (7, 1), (3, 2)];

pub fn orbits_odd() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for (p, n) in ODD_FIELDS {
        let f = build_fields(p, n)?;
        let a = affine_square_orbits(&f);
        let c = inversion_closure_orbits(&f)?;
        ok &= a.orbit_count == 2 && c.is_transitive();
        rows.push(json!({ "q": f.q, "affine_sizes": a.orbit_sizes, "closure_sizes": c.orbit_sizes }));
    }
    Ok(Check {
        name: "orbits-odd-characteristic",
        statement: "two affine-square orbits for q in {3,5,7,9}, merged into one by the twisted inversions",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn fraction_identity() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for (p, n) in ODD_FIELDS {
        let f = build_fields(p, n)?;
        let c = twist_parameter(&f, least_square_root_of_base(&f)?)?;
        let rep = verify_fraction_identity(&f, c)?;
        ok &= rep.holds();
        rows.push(json!({ "q": f.q, "c": c, "checked": rep.checked, "failures": rep.failures.len() }));
    }
    Ok(Check {
        name: "fraction-identity",
        statement: "1/(a^2xc + b) = (x - b/(a^2c)) / (a^2 - b^2/(a^2c)) when x^2 = 1/c",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn nonsquare_witness() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for (p, n) in ODD_FIELDS {
        let f = build_fields(p, n)?;
        let c = twist_parameter(&f, least_square_root_of_base(&f)?)?;
        match exists_nonsquare_value(&f, c) {
            Ok((a, b)) => rows.push(json!({ "q": f.q, "a": a, "b": b })),
            Err(e) => {
                ok = false;
                rows.push(json!({ "q": f.q, "error": e.to_string() }));
            }
        }
    }
    Ok(Check {
        name: "nonsquare-witness",
        statement: "some a, b make a^2 - b^2/(a^2c) a non-square in k_F",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn omega_sign() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for (f, r) in OMEGA_TYPES {
        let group = omega_group(f, r)?;
        let hom = group.iter().all(|g| {
            group.iter().all(|h| epsilon_of_omega(&g.compose(h)) == epsilon_of_omega(g) * epsilon_of_omega(h))
        });
        ok &= hom;
        let signs: Vec<i8> = group.iter().map(epsilon_of_omega).collect();
        rows.push(json!({ "type": format!("{f}{r}"), "order": group.len(), "signs": signs }));
    }
    Ok(Check {
        name: "omega-sign-character",
        statement: "eps(gh) = eps(g) eps(h) on the diagram action of Omega",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn tree_sign(seed: u64) -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for qf in [2u64, 3] {
        let t = build_tree_pair(qf, 4)?;
        let rep = check_epsilon_homomorphism(&t, seed, MIN_SAMPLED_PAIRS);
        ok &= rep.passed();
        rows.push(to_value(&rep));
    }
    Ok(Check {
        name: "tree-sign-character",
        statement: "eps(gh) = eps(g) eps(h) on sampled tree automorphisms",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}

pub fn root_swap_sign() -> Result<Check, RunError> {
    let mut ok = true;
    let mut rows = vec![];
    for qf in [2u64, 3] {
        let t = build_tree_pair(qf, 3)?;
        let e = epsilon_tree(&t, &TreeAutomorphism::root_swap(&t))?;
        ok &= e == -1;
        rows.push(json!({ "qF": qf, "eps": e }));
    }
    Ok(Check {
        name: "root-swap-sign",
        statement: "eps = -1 on the automorphism swapping the endpoints of e0",
        status: Status::from_bool(ok),
        witness: json!(rows),
    })
}
