use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use ratcurves::agraph::{canonical_form, invariants, tau, GraphJson};
use ratcurves::contraction::{
    ends_at_path, enumerate_nice_contractions, equivalence_classes, equivalence_classes_within, normalize_to_path,
    ContractionError,
};
use ratcurves::hyperlines::{flatness_audit, tuple_audit, FiniteField, FlatnessOptions, Form, FormJson, TupleOptions, Verdict};
use ratcurves::strata::{expected_dim, stratification_poset};

use crate::{parse_target, require, Cli, Command, Format, Outcome, EXIT_AUDIT_FAILURE, EXIT_PASS};

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Strata { .. }) {
        bail!("--format dot is only available for strata");
    }
    match &cli.command {
        Command::Strata { tails, degree, target, dot } => strata(cli, *tails, *degree, target.as_deref(), dot.as_deref()),
        Command::Equiv { degree, bound, cap } => equiv(cli, *degree, *bound, *cap),
        Command::AuditLines { n, d, p, k, phi, random, cross_check } => {
            audit_lines(cli, *n, *d, *p, *k, phi.as_deref(), *random, *cross_check)
        }
        Command::AuditTuples { n, d, p, samples, k, max_fraction } => {
            audit_tuples(cli, *n, *d, *p, *samples, *k, *max_fraction)
        }
        Command::Inspect { graph, target } => inspect(cli, graph, target.as_deref()),
    }
}

fn json_outcome(name: &'static str, value: &Value, status: u8) -> Result<Outcome> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(Outcome { name, text, extension: "json", status })
}

fn strata(cli: &Cli, tails: u32, degree: u32, target: Option<&str>, dot: Option<&Path>) -> Result<Outcome> {
    let x = parse_target(target)?;
    let poset = stratification_poset(tails, degree, x.as_ref())?;
    if let Some(path) = dot {
        fs::write(path, poset.to_dot()).with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.format == Format::Dot {
        return Ok(Outcome { name: "strata", text: poset.to_dot(), extension: "dot", status: EXIT_PASS });
    }
    let edges: Vec<[&str; 2]> =
        poset.edges.iter().map(|&(a, b)| [poset.nodes[a].id.as_str(), poset.nodes[b].id.as_str()]).collect();
    let value = json!({
        "command": "strata",
        "seed": cli.seed,
        "tails": tails,
        "degree": degree,
        "target": x.map(|t| t.to_string()),
        "strata": poset.nodes,
        "edges": edges,
    });
    json_outcome("strata", &value, EXIT_PASS)
}

fn equiv(cli: &Cli, degree: u32, bound: u32, cap: usize) -> Result<Outcome> {
    require(degree >= 1, "--degree must be at least 1")?;
    let target = tau(0, degree)?;
    let set = enumerate_nice_contractions(&target, bound)?;
    // Nice sources over a single positive-degree vertex have at most `degree` vertices.
    if degree as usize > cap {
        return Err(ContractionError::CapExceeded { vertices: degree as usize, cap }.into());
    }
    let ambient_bound = bound.max(2);
    let classes = if ambient_bound == bound {
        equivalence_classes(&set)
    } else {
        equivalence_classes_within(&set.elements, &enumerate_nice_contractions(&target, ambient_bound)?)
    };
    let elements: Vec<Value> = set
        .elements
        .iter()
        .map(|c| json!({ "key": c.class_key().to_hex(), "source": c.source() }))
        .collect();
    let mut value = json!({
        "command": "equiv",
        "seed": cli.seed,
        "degree": degree,
        "bound": bound,
        "element_count": set.len(),
        "elements": elements,
        "ambient_bound": ambient_bound,
        "class_count": classes.len(),
        "classes": classes,
        "classes_inside_set": equivalence_classes(&set).len(),
    });
    if bound == 1 {
        let chains = set
            .elements
            .iter()
            .map(|c| {
                let chain = normalize_to_path(c)?;
                Ok(json!({
                    "source": canonical_form(c.source()).to_hex(),
                    "moves": chain.moves(),
                    "verified": chain.verify().is_ok(),
                    "ends_at_path": ends_at_path(&chain),
                    "steps": chain,
                }))
            })
            .collect::<Result<Vec<Value>, ContractionError>>()?;
        value["chains"] = Value::Array(chains);
    }
    json_outcome("equiv", &value, EXIT_PASS)
}

#[allow(clippy::too_many_arguments)]
fn audit_lines(
    cli: &Cli,
    n: usize,
    d: u32,
    p: u32,
    k: u32,
    phi: Option<&Path>,
    random: bool,
    cross_check: Option<usize>,
) -> Result<Outcome> {
    let field = FiniteField::prime(p)?;
    let form = match (phi, random) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let j: FormJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            let f = j.to_form(&field)?;
            require(f.nvars() == n + 1, "form must have n + 1 variables")?;
            require(f.degree() == d, "form degree must equal --d")?;
            f
        }
        (None, true) => Form::random_seeded(&field, n + 1, d, cli.seed),
        (None, false) => bail!("give --phi FILE or --random"),
    };
    let opts = FlatnessOptions { k_max: k, cross_check: cross_check.unwrap_or(usize::MAX), budget: cli.budget };
    let report = flatness_audit(&field, &form, opts)?;
    let status = if report.verdict == Verdict::Pass { EXIT_PASS } else { EXIT_AUDIT_FAILURE };
    let value = json!({
        "command": "audit-lines",
        "seed": cli.seed,
        "form": FormJson::from_form(&field, &form)?,
        "report": report,
    });
    json_outcome("audit-lines", &value, status)
}

fn audit_tuples(cli: &Cli, n: usize, d: u32, p: u32, samples: usize, k: u32, max_fraction: f64) -> Result<Outcome> {
    let field = FiniteField::prime(p)?;
    let opts = TupleOptions { k_max: k, budget: cli.budget, max_fraction };
    let report = tuple_audit(n, d, &field, samples, cli.seed, opts)?;
    let status = if report.verdict == Verdict::Pass { EXIT_PASS } else { EXIT_AUDIT_FAILURE };
    let value = json!({ "command": "audit-tuples", "seed": cli.seed, "report": report });
    json_outcome("audit-tuples", &value, status)
}

fn inspect(cli: &Cli, path: &Path, target: Option<&str>) -> Result<Outcome> {
    let x = parse_target(target)?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = GraphJson::parse(&text)?;
    let value = json!({
        "command": "inspect",
        "seed": cli.seed,
        "canonical_form": canonical_form(&g).to_hex(),
        "stable": g.is_stable(),
        "invariants": invariants(&g),
        "dim": x.map(|x| expected_dim(&x, &g)),
    });
    json_outcome("inspect", &value, EXIT_PASS)
}
