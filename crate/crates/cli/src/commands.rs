//! Command handlers. Each builds a JSON body and a text rendering; the
//! envelope adds the schema version, command name and input descriptor.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use domcore::analysis::witness_outcome;
use domcore::formats::{parse_input, Input};
use domcore::graphs::{bounds_check, forest_report, unicyclic_report};
use domcore::homology::{reduced_homology, HomologyProfile};
use domcore::resolution::{classify, witness_collapse_to_core};
use domcore::verify;
use domcore::{analyze, AnalysisOptions, Budgets, Error, Graph, IdealAnalysis, MonomialIdeal, SimplicialComplex};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Cli, Command, GraphIdeal, Status};

pub const SCHEMA: u32 = 1;

pub enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Report, Failure>;

/// A command result before rendering.
pub struct Report {
    body: Value,
    text: Vec<String>,
    consistent: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: u32,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<&'a Value>,
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
    #[serde(flatten)]
    body: &'a Value,
}

/// The ideal under study, and the graph it came from if any.
struct Loaded {
    ideal: MonomialIdeal,
    /// The graph and which of its ideals was taken.
    graph: Option<(Graph, GraphIdeal)>,
    descriptor: Value,
}

fn load(path: &Path, which: GraphIdeal) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let loaded = match parse_input(path, &text)? {
        Input::Ideal(ideal) => Loaded {
            descriptor: json!({
                "path": path.display().to_string(),
                "kind": "ideal",
                "variables": ideal.universe().names(),
                "generators": ideal.generator_strings(),
            }),
            ideal,
            graph: None,
        },
        Input::Graph(g) => {
            let (ideal, name) = match which {
                GraphIdeal::Edge => (g.edge_ideal(), "edge"),
                GraphIdeal::Star => (g.star_ideal(), "star"),
            };
            Loaded {
                descriptor: json!({
                    "path": path.display().to_string(),
                    "kind": "graph",
                    "ideal": name,
                    "vertices": g.universe().names(),
                    "edges": g.edges().iter().map(|&(u, v)| [g.universe().name(u), g.universe().name(v)]).collect::<Vec<_>>(),
                    "generators": ideal.generator_strings(),
                }),
                ideal,
                graph: Some((g, which)),
            }
        }
    };
    if loaded.ideal.is_unit() {
        return Err(Error::Precondition("the unit ideal has the empty complex; nothing to classify".into()).into());
    }
    Ok(loaded)
}

fn budgets(cli: &Cli) -> Budgets {
    let mut b = Budgets::default();
    if let Some(n) = cli.global.budget {
        b.max_faces = n;
        b.max_resolutions = n;
    }
    b
}

fn name(command: &Command) -> &'static str {
    match command {
        Command::Classify { .. } => "classify",
        Command::Homology { .. } => "homology",
        Command::Euler { .. } => "euler",
        Command::Invariants { .. } => "invariants",
        Command::Collapse { .. } => "collapse",
        Command::Report { .. } => "report",
        Command::Verify => "verify",
    }
}

pub fn run(cli: &Cli) -> Result<Status, Failure> {
    let start = Instant::now();
    let b = budgets(cli);
    let (input, report) = match &cli.command {
        Command::Verify => (None, verify_all(cli.global.seed, &b, cli.global.timing)),
        Command::Classify { input, all_resolutions } => {
            let l = load(input, cli.global.ideal)?;
            (Some(l.descriptor.clone()), classify_cmd(&l, &b, *all_resolutions))
        }
        Command::Homology { input } => {
            let l = load(input, cli.global.ideal)?;
            (Some(l.descriptor.clone()), homology_cmd(&l, &b))
        }
        Command::Euler { input } => {
            let l = load(input, cli.global.ideal)?;
            (Some(l.descriptor.clone()), euler_cmd(&l, &b))
        }
        Command::Invariants { input } => {
            let l = load(input, cli.global.ideal)?;
            (Some(l.descriptor.clone()), invariants_cmd(&l, &b))
        }
        Command::Collapse { input } => {
            let l = load(input, cli.global.ideal)?;
            (Some(l.descriptor.clone()), collapse_cmd(&l, &b))
        }
        Command::Report { input } => {
            let l = load(input, cli.global.ideal)?;
            (Some(l.descriptor.clone()), report_cmd(&l, &b))
        }
    };
    let report = report?;
    let elapsed = cli.global.timing.then(|| start.elapsed().as_millis());
    let mut out = String::new();
    if cli.global.json {
        let envelope = Envelope {
            schema: SCHEMA,
            command: name(&cli.command),
            input: input.as_ref(),
            consistent: report.consistent,
            elapsed_ms: elapsed,
            body: &report.body,
        };
        out.push_str(&serde_json::to_string_pretty(&envelope).expect("reports serialize"));
        out.push('\n');
    } else {
        for line in &report.text {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("consistent: {}\n", if report.consistent { "yes" } else { "NO" }));
        if let Some(ms) = elapsed {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
    }
    // A closed pipe downstream is not an error of the command.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    Ok(if report.consistent { Status::Ok } else { Status::Inconsistent })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn homology_text(p: &HomologyProfile) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.groups()
        .iter()
        .map(|g| {
            let mut parts = Vec::new();
            if g.rank > 0 {
                parts.push(if g.rank == 1 { "Z".to_string() } else { format!("Z^{}", g.rank) });
            }
            parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            format!("H{} = {}", g.degree, parts.join(" + "))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn classification_text(a: &IdealAnalysis) -> Vec<String> {
    let mut lines = vec![format!("verdict: {}", match a.depth {
        Some(_) => "spherical",
        None => "conical",
    })];
    if let Some(d) = a.depth {
        lines.push(format!("depth: {d}"));
        lines.push(format!("simple: {}", if a.simple { "yes" } else { "no" }));
    }
    let steps: Vec<String> = a
        .resolution
        .steps
        .iter()
        .map(|s| match &s.b {
            Some(b) => format!("{} > {}", s.a, b),
            None => format!("{} (cone)", s.a),
        })
        .collect();
    lines.push(format!("resolution: [{}]", steps.join(", ")));
    lines.push(format!("core: ({})", a.resolution.core.join(", ")));
    lines
}

fn classify_cmd(l: &Loaded, b: &Budgets, all_resolutions: bool) -> Outcome {
    let options = AnalysisOptions {
        all_resolutions,
        ..AnalysisOptions::default()
    };
    let a = analyze(&l.ideal, b, options)?;
    let mut text = classification_text(&a);
    if let Some(s) = &a.survey {
        text.push(format!("maximal resolutions: {}", s.resolutions.len()));
        text.push(format!("depths: {:?}", s.depths));
        for core in &s.cores {
            text.push(format!("core class: ({})", core.join(", ")));
        }
    }
    let mut body = json!({
        "verdict": a.verdict,
        "depth": a.depth,
        "simple": a.simple,
        "resolution": a.resolution,
        "homology_matches": a.homology_matches,
        "euler": a.euler,
    });
    if let Some(s) = &a.survey {
        body["survey"] = to_value(s);
    }
    Ok(Report {
        body,
        text,
        consistent: a.consistent(),
    })
}

fn homology_cmd(l: &Loaded, b: &Budgets) -> Outcome {
    let complex = SimplicialComplex::realize(&l.ideal, b.max_faces)?;
    let h = reduced_homology(&complex)?;
    let size = h.size();
    let euler = complex.reduced_euler();
    let consistent = h.euler_characteristic() == euler;
    Ok(Report {
        body: json!({
            "faces": complex.len(),
            "dimension": complex.dimension(),
            "homology": h,
            "size": size,
            "reduced_euler": euler,
        }),
        text: vec![
            format!("faces: {}", complex.len()),
            format!("reduced homology: {}", homology_text(&h)),
            format!("total rank h: {} (free part {})", size.h, size.h_free),
            format!(
                "top degree: {}",
                size.hd.map_or("-inf".to_string(), |d| d.to_string())
            ),
        ],
        consistent,
    })
}

fn euler_cmd(l: &Loaded, b: &Budgets) -> Outcome {
    let a = analyze(&l.ideal, b, AnalysisOptions::default())?;
    let mut body = json!({ "euler": a.euler });
    let mut text = vec![
        format!("enumeration: {}", a.euler.enumeration),
        format!("covers: {}", a.euler.covers),
    ];
    if let Some((g, GraphIdeal::Edge)) = &l.graph {
        let cov = g.edge_cover_polynomial(b.max_edges)?;
        let at = cov.eval(-1);
        text.push(format!("edge cover polynomial: {cov}"));
        text.push(format!("cov(-1): {at}"));
        body["edge_cover_polynomial"] = json!(cov.to_string());
        body["cov_at_minus_one"] = json!(at.to_string());
    }
    Ok(Report {
        body,
        text,
        consistent: a.euler.agree,
    })
}

fn require_graph(l: &Loaded) -> Result<&Graph, Failure> {
    l.graph
        .as_ref()
        .map(|(g, _)| g)
        .ok_or_else(|| Failure::Usage("this command needs a graph input".into()))
}

fn invariants_cmd(l: &Loaded, b: &Budgets) -> Outcome {
    let g = require_graph(l)?;
    let inv = g.invariants(b.max_vertices)?;
    let s = g.structure();
    let alpha1 = inv.alpha1.map_or("undefined".to_string(), |x| x.to_string());
    Ok(Report {
        body: json!({ "invariants": inv, "structure": s }),
        text: vec![
            format!("vertices: {}, edges: {}", g.order(), g.size()),
            format!("components: {}, h1: {}", s.components, s.h1),
            format!("gamma: {}", inv.gamma),
            format!("i: {}", inv.i),
            format!("alpha0: {}", inv.alpha0),
            format!("alpha1: {alpha1}"),
            format!("beta1: {}", inv.beta1),
        ],
        consistent: true,
    })
}

fn collapse_cmd(l: &Loaded, b: &Budgets) -> Outcome {
    let class = classify(&l.ideal)?;
    let complex = SimplicialComplex::realize(&l.ideal, b.max_faces)?;
    let plan = witness_collapse_to_core(&class.resolution, b.max_faces)?;
    let check = witness_outcome(&class, &complex, b.max_faces)?;
    let u = l.ideal.universe();
    let steps: Vec<[String; 2]> = plan
        .iter()
        .map(|s| [u.format_monomial(s.tau), u.format_monomial(s.sigma)])
        .collect();
    let target = match class.depth() {
        Some(d) => format!("suspension of depth {d} over the core"),
        None => "a point".to_string(),
    };
    let mut text = vec![format!("target: {target}"), format!("steps: {}", plan.len())];
    text.extend(steps.iter().map(|[t, s]| format!("  ({t}) < ({s})")));
    text.push(format!("verified: {}", if check.valid { "yes" } else { "NO" }));
    if let Some(reason) = &check.reason {
        text.push(format!("reason: {reason}"));
    }
    Ok(Report {
        body: json!({
            "verdict": class.verdict,
            "depth": class.depth(),
            "faces": complex.len(),
            "plan": steps,
            "verification": check,
        }),
        text,
        consistent: check.valid,
    })
}

fn report_cmd(l: &Loaded, b: &Budgets) -> Outcome {
    let a = analyze(&l.ideal, b, AnalysisOptions::everything())?;
    let mut text = classification_text(&a);
    text.push(format!("faces: {}", a.faces));
    text.push(format!("reduced homology: {}", homology_text(&a.homology)));
    text.push(format!("euler: enumeration {}, covers {}", a.euler.enumeration, a.euler.covers));
    if let Some(w) = &a.witness {
        text.push(format!("collapse witness: {} steps, {}", w.steps, if w.valid { "valid" } else { "INVALID" }));
    }
    if let Some(g) = &a.generator {
        text.push(format!("generator cycle: {}", if g.generates { "generates" } else { "DOES NOT generate" }));
    }
    let mut consistent = a.consistent();
    let mut body = json!({ "analysis": a });
    if let Some((g, _)) = &l.graph {
        let inv = g.invariants(b.max_vertices)?;
        let s = g.structure();
        text.push(format!(
            "invariants: gamma {}, i {}, alpha0 {}, alpha1 {}, beta1 {}",
            inv.gamma,
            inv.i,
            inv.alpha0,
            inv.alpha1.map_or("undefined".to_string(), |x| x.to_string()),
            inv.beta1
        ));
        body["invariants"] = to_value(&inv);
        body["structure"] = to_value(&s);
        let bounds = bounds_check(g, b)?;
        text.push(format!("homology bounds: {}", if bounds.holds() { "hold" } else { "VIOLATED" }));
        consistent &= bounds.holds();
        body["bounds"] = to_value(&bounds);
        if s.is_forest {
            let f = forest_report(g, b)?;
            let failures = f.failures();
            text.push(format!(
                "forest checks: {}",
                if failures.is_empty() { "all pass".to_string() } else { format!("FAILED {failures:?}") }
            ));
            consistent &= f.passed();
            body["forest"] = to_value(&f);
        } else if s.cycle.is_some() {
            let u = unicyclic_report(g, b)?;
            text.push(format!("cycle length: {}", u.cycle_length));
            if let Some(class) = u.class {
                text.push(format!("homotopy class: {}", to_value(&class).as_str().unwrap_or_default()));
            }
            let failed: Vec<&str> = u.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            text.push(format!(
                "unicyclic checks: {}",
                if failed.is_empty() { "all pass".to_string() } else { format!("FAILED {failed:?}") }
            ));
            consistent &= u.passed();
            body["unicyclic"] = to_value(&u);
        }
    }
    Ok(Report { body, text, consistent })
}

fn verify_all(seed: u64, b: &Budgets, timing: bool) -> Outcome {
    let outcomes = verify::run_all(seed, b);
    let consistent = outcomes.iter().all(|o| o.passed);
    let text = outcomes
        .iter()
        .map(|o| {
            let mut line = format!(
                "criterion {:>2} {} {}: {} instances",
                o.number,
                if o.passed { "PASS" } else { "FAIL" },
                o.title,
                o.instances
            );
            if timing {
                line.push_str(&format!(", {:.2}s", o.elapsed_ms as f64 / 1000.0));
            }
            for f in &o.failures {
                line.push_str(&format!("\n    {f}"));
            }
            line
        })
        .collect();
    let criteria: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut v = to_value(o);
            if !timing {
                let m = v.as_object_mut().expect("struct serializes to an object");
                m.remove("elapsed_ms");
                m.remove("limit_ms");
            }
            v
        })
        .collect();
    Ok(Report {
        body: json!({ "seed": seed, "criteria": criteria }),
        text,
        consistent,
    })
}
