use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hilbreg::borel::{classify_multiindex, ideal_from_multiindex};
use hilbreg::group::default_group_sample;
use hilbreg::hilbert::{gotzmann_decomposition, is_admissible};
use hilbreg::marked::{marked_scheme_equations, ParametricMarkedSet};
use hilbreg::pluecker::coords::{pluecker_coordinates, GrassmannPoint};
use hilbreg::pluecker::families::equation_plan;
use hilbreg::pluecker::membership::{membership_test, Verdict};
use hilbreg::verify::verify_paper;
use hilbreg::{enumerate_borel, BorelIdeal, Error, HilbertContext, IntegerPolynomial, MultiIndex, RationalMarkedSet, Term};

#[derive(Parser)]
#[command(name = "hilbreg", version, about = "Borel ideals, marked bases and Plücker equations for Hilbert schemes")]
struct Cli {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gotzmann number and decomposition of a Hilbert polynomial.
    Gotzmann {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Whether a polynomial is an admissible Hilbert polynomial.
    Admissible {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Hilbert polynomial of a strongly stable ideal.
    HilbPoly {
        #[arg(long)]
        n: usize,
        /// Comma-separated generators, e.g. "x3^2,x3*x2".
        #[arg(long)]
        generators: String,
    },
    /// Saturated Borel ideals with Hilbert polynomial p and regularity <= r'.
    EnumBorel {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        rprime: u32,
    },
    /// Classify a multi-index of degree-s terms.
    ClassifyIndex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: u32,
        /// Comma-separated 1-based positions.
        #[arg(long)]
        indices: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        rprime: u32,
    },
    /// Marked-basis criterion and rank profile of a marked set (JSON file).
    MarkedCheck {
        #[arg(long)]
        input: PathBuf,
        /// Rank profile up to degree s + extra.
        #[arg(long, default_value_t = 3)]
        extra: u32,
    },
    /// Equations of the marked scheme over J in degree s.
    MarkedSchemeEqs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        generators: String,
        #[arg(long)]
        s: u32,
    },
    /// Plücker coordinates of a subspace (JSON file).
    Pluecker {
        #[arg(long)]
        point: PathBuf,
    },
    /// Equation families A, B, C; expanded and written only with --out.
    Equations {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        rprime: u32,
        #[arg(long)]
        s: u32,
    },
    /// Membership of a subspace (JSON file) in the Hilbert scheme.
    Membership {
        #[arg(long)]
        point: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        rprime: u32,
        /// Random upper triangular group elements added to the sample.
        #[arg(long, default_value_t = 5)]
        randoms: usize,
    },
    /// Reproduce the worked examples.
    VerifyPaper,
}

enum Failure {
    Usage(String),
    Domain(Error),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Domain(e),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(Error::SizeGuardExceeded(_)) => 3,
            Failure::Domain(_) | Failure::Checks(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Domain(e @ Error::SizeGuardExceeded(_)) => format!("{e}"),
            Failure::Domain(e) => format!("error: {e}"),
            Failure::Checks(m) => format!("check failed: {m}"),
        }
    }
}

struct Job {
    command: &'static str,
    inputs: Value,
    outputs: Value,
    text: String,
    /// Written to `--out` instead of the report.
    payload: Option<Value>,
    failed: Option<String>,
}

impl Job {
    fn new(command: &'static str, inputs: Value, outputs: Value, text: String) -> Self {
        Job {
            command,
            inputs,
            outputs,
            text,
            payload: None,
            failed: None,
        }
    }

    fn report(&self) -> Value {
        json!({ "command": self.command, "inputs": self.inputs, "outputs": self.outputs })
    }
}

fn poly(s: &str) -> Result<IntegerPolynomial, Failure> {
    IntegerPolynomial::parse(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn terms(n: usize, list: &str) -> Result<Vec<Term>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Term::parse(t, n).map_err(|e| Failure::Usage(e.to_string())))
        .collect()
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("plain data");
    std::fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn context(n: usize, p: &str, rprime: u32, s: u32) -> Result<HilbertContext, Failure> {
    Ok(HilbertContext::new(n, poly(p)?, rprime, s)?)
}

fn run(cli: &Cli) -> Result<Job, Failure> {
    match &cli.cmd {
        Cmd::Gotzmann { p } => {
            let pp = poly(p)?;
            let d = gotzmann_decomposition(&pp)?;
            let r = d.length();
            Ok(Job::new(
                "gotzmann",
                json!({ "p": pp.to_string() }),
                json!({ "r": r, "decomposition": d.runs }),
                format!("{r}"),
            ))
        }
        Cmd::Admissible { p } => {
            let pp = poly(p)?;
            let ok = is_admissible(&pp);
            Ok(Job::new("admissible", json!({ "p": pp.to_string() }), json!({ "admissible": ok }), format!("{ok}")))
        }
        Cmd::HilbPoly { n, generators } => {
            let j = BorelIdeal::new(*n, terms(*n, generators)?)?;
            let hp = j.hilbert_polynomial()?;
            Ok(Job::new(
                "hilb-poly",
                json!({ "n": n, "generators": j.generator_strings() }),
                json!({ "hilbert_polynomial": hp.to_string(), "coefficients": hp, "regularity": j.saturate().regularity() }),
                hp.to_string(),
            ))
        }
        Cmd::EnumBorel { n, p, rprime } => {
            let pp = poly(p)?;
            let r = hilbreg::hilbert::gotzmann_number(&pp)?;
            let all = enumerate_borel(*n, &pp, *rprime)?;
            let mut ideals = Vec::new();
            let mut text = format!("{} ideals\n", all.len());
            for j in &all {
                let mut idx = serde_json::Map::new();
                for s in *rprime..=r as u32 {
                    idx.insert(s.to_string(), json!(j.multiindex(s)?.indices()));
                }
                text.push_str(&format!("({})\n", j.generator_strings().join(", ")));
                ideals.push(json!({ "generators": j.generator_strings(), "regularity": j.regularity(), "multiindices": idx }));
            }
            Ok(Job::new(
                "enum-borel",
                json!({ "n": n, "p": pp.to_string(), "rprime": rprime }),
                json!({ "gotzmann": r, "count": all.len(), "ideals": ideals }),
                text.trim_end().to_string(),
            ))
        }
        Cmd::ClassifyIndex { n, s, indices, p, rprime } => {
            let list = indices
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| Failure::Usage(format!("index {x:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let index = MultiIndex::new(*n, *s, list).map_err(|e| Failure::Usage(e.to_string()))?;
            let pp = poly(p)?;
            let class = classify_multiindex(&index, &pp, *rprime)?;
            let ideal = ideal_from_multiindex(&index);
            let gens: Vec<String> = ideal.ideal.generators().iter().map(Term::to_string).collect();
            let hp = match &ideal.borel {
                Some(j) => Some(j.hilbert_polynomial()?.to_string()),
                None => None,
            };
            Ok(Job::new(
                "classify-index",
                json!({ "n": n, "s": s, "indices": index.indices(), "p": pp.to_string(), "rprime": rprime }),
                json!({ "class": class, "ideal": gens, "hilbert_polynomial": hp }),
                format!("{class:?} ({})", gens.join(", ")),
            ))
        }
        Cmd::MarkedCheck { input, extra } => {
            let f = RationalMarkedSet::from_json(&read_json(input)?)?;
            let basis = f.is_marked_basis()?;
            let profile = f.rank_profile(f.s() + extra)?;
            let expected: Vec<(u32, usize)> = profile
                .iter()
                .map(|&(t, _)| (t, hilbreg::borel::truncated_count(f.heads().terms(), t - f.s()).try_into().unwrap_or(usize::MAX)))
                .collect();
            let residues = f.syzygy_residues()?.len();
            Ok(Job::new(
                "marked-check",
                json!({ "file": input.display().to_string() }),
                json!({ "marked_basis": basis, "rank_profile": profile, "expected_ranks": expected, "nonzero_residues": residues }),
                format!("marked basis: {basis}\nrank profile: {profile:?}\nexpected: {expected:?}"),
            ))
        }
        Cmd::MarkedSchemeEqs { n, generators, s } => {
            let j = BorelIdeal::new(*n, terms(*n, generators)?)?;
            let set = ParametricMarkedSet::new(&j, *s)?;
            let eqs = marked_scheme_equations(&j, *s)?;
            let list = eqs.to_strings();
            let mut job = Job::new(
                "marked-scheme-eqs",
                json!({ "n": n, "generators": j.generator_strings(), "s": s }),
                json!({ "parameters": eqs.names.len(), "count": list.len(), "marked_set": set.to_json(), "equations": list }),
                format!("{} parameters, {} equations\n{}", eqs.names.len(), list.len(), list.join("\n")),
            );
            job.text = job.text.trim_end().to_string();
            Ok(job)
        }
        Cmd::Pluecker { point } => {
            let l = GrassmannPoint::from_json(&read_json(point)?)?;
            let c = pluecker_coordinates(&l);
            let label = |i: &[usize]| format!("D[{}]", i.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            let nonzero: Vec<Value> = c
                .nonzero()
                .into_iter()
                .map(|(i, v)| json!({ "var": label(&i), "index": i, "value": v.to_string() }))
                .collect();
            let text = c
                .nonzero()
                .into_iter()
                .map(|(i, v)| format!("{} = {v}", label(&i)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Job::new(
                "pluecker",
                json!({ "file": point.display().to_string(), "n": l.n(), "s": l.s() }),
                json!({ "N": c.big_n, "p": c.p, "nonzero": nonzero }),
                text,
            ))
        }
        Cmd::Equations { n, p, rprime, s } => {
            let ctx = context(*n, p, *rprime, *s)?;
            let plan = equation_plan(&ctx)?;
            let sm = &plan.summary;
            let text = format!(
                "q''(s+1) = {}, wedge arity {}\n|B1| = {}, |G1| = {}, |G2| = {}, |G3| = {}\nfamily A: {} wedges, degree {}\nfamilies B, C: {} wedges, degrees {} and {}",
                sm.q2_next,
                sm.arity,
                sm.b1,
                sm.g1,
                sm.g2,
                sm.g3,
                sm.tuples_a,
                show(sm.degree_a),
                sm.tuples_bc,
                show(sm.degree_b),
                show(sm.degree_c)
            );
            let mut outputs = serde_json::to_value(sm).expect("plain data");
            let mut job_payload = None;
            if cli.out.is_some() {
                let set = plan.expand()?;
                outputs["equations"] = json!(set.equations.len());
                job_payload = Some(set.to_json());
            }
            let mut job = Job::new("equations", json!({ "n": n, "p": ctx.p.to_string(), "rprime": rprime, "s": s }), outputs, text);
            job.payload = job_payload;
            Ok(job)
        }
        Cmd::Membership { point, p, rprime, randoms } => {
            let l = GrassmannPoint::from_json(&read_json(point)?)?;
            let ctx = context(l.n(), p, *rprime, l.s())?;
            let sample = default_group_sample(l.n(), cli.seed, *randoms);
            let r = membership_test(&l, &ctx, &sample)?;
            let mut text = r.verdict.name().to_string();
            if let Verdict::EquationsViolated(ws) = &r.verdict {
                text.push_str(&format!(" ({} nonvanishing wedges)", r.violated_wedges));
                for w in ws {
                    let g = w.generator.as_deref().map(|g| format!(" ^ {g}")).unwrap_or_default();
                    text.push_str(&format!("\n  {:?}: {}{g} at {}", w.family, w.factors.join(" ^ "), w.slots.join(",")));
                }
            }
            if let Some(c) = &r.chart {
                text.push_str(&format!("\nchart ({}) after group element {}", c.ideal.join(", "), c.group_index));
            }
            if let Some(o) = r.oracle_member {
                text.push_str(&format!("\nmarked-basis oracle: {o}"));
            }
            text.push_str(&format!("\nnote: {}", r.note));
            Ok(Job::new(
                "membership",
                json!({ "file": point.display().to_string(), "p": ctx.p.to_string(), "rprime": rprime, "s": ctx.s, "seed": cli.seed, "randoms": randoms }),
                serde_json::to_value(&r).expect("plain data"),
                text,
            ))
        }
        Cmd::VerifyPaper => {
            let checks = verify_paper();
            let text = checks
                .iter()
                .map(|c| format!("[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail))
                .collect::<Vec<_>>()
                .join("\n");
            let mut job = Job::new(
                "verify-paper",
                json!({}),
                json!({ "passed": checks.iter().all(|c| c.passed), "checks": checks }),
                text,
            );
            job.failed = checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
            Ok(job)
        }
    }
}

fn show(d: Option<usize>) -> String {
    d.map_or_else(|| "-".into(), |d| d.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = run(&cli).and_then(|job| {
        if let Some(path) = &cli.out {
            write_json(path, job.payload.as_ref().unwrap_or(&job.report()))?;
        }
        if cli.json {
            println!("{}", serde_json::to_string_pretty(&job.report()).expect("plain data"));
        } else {
            println!("{}", job.text);
            eprintln!("({} in {:.2?})", job.command, start.elapsed());
        }
        match job.failed {
            Some(name) => Err(Failure::Checks(name)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
