use std::fs;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use twistmat::algebra::{find_q_root, find_r_root, pq_polys, r_poly, AlgebraError, Field, RootReport, Scalar, Scope};
use twistmat::bandmatrix::BandMatrix;
use twistmat::families::{coerce, force_bnl, FamilyError, FamilyParams, ObstructionPoly, Variant};
use twistmat::seqlab::{
    counts, enumerate, extensions, failure_witness, generate, is_quasi_balanced, Policy, QBSeq, SeqError,
};
use twistmat::verify::{
    check_fundamental, check_gamma_axioms, check_mtilde, classify, gamma_table, FamilyTag, VerifyError, VerifyReport,
};

use crate::args::{
    BuildArgs, CheckArg, ClassifyArgs, Cli, Command, RootFamily, RootsArgs, SeqArgs, VariantArg, VerifyArgs,
};

const DEFAULT_DEPTH: usize = 24;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// Obstructions, rejections and failed checks.
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Window(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Math(_) => 2,
            CliError::Window(_) => 3,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Obstruction { poly, index, ref x, ref y } => {
                let value = match poly {
                    ObstructionPoly::Q => pq_polys(index).1.eval(x, y),
                    ObstructionPoly::R => r_poly(index).eval(x, y),
                };
                CliError::Math(format!("obstruction: {poly:?}_{index}({x}, {y}) = {value}"))
            }
            FamilyError::Rejected { .. } | FamilyError::Rerouted | FamilyError::NotQuasiBalanced(_) => {
                CliError::Math(e.to_string())
            }
            FamilyError::Algebra(AlgebraError::DivisionByZero) => CliError::Math(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::WindowExhausted { .. } => CliError::Window(e.to_string()),
            VerifyError::Inconsistent { .. } => CliError::Math(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SeqError> for CliError {
    fn from(e: SeqError) -> Self {
        match e {
            SeqError::NotQuasiBalanced(_) | SeqError::QuasiBalanced => CliError::Math(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<u8, CliError> {
    let out = Output { json_out: cli.json_out.as_deref() };
    match &cli.command {
        Command::Build(a) => run_build(a, cli.field, cli.depth, &out),
        Command::Verify(a) => run_verify(a, cli.depth, &out),
        Command::Classify(a) => run_classify(a, &out),
        Command::Seq(a) => run_seq(a, &out),
        Command::Roots(a) => run_roots(a, cli.field.unwrap_or(Field::Rational), &out),
    }
}

struct Output<'a> {
    json_out: Option<&'a Path>,
}

impl Output<'_> {
    fn write_json<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        if let Some(path) = self.json_out {
            let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
            fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn read_matrix(path: &Path) -> Result<BandMatrix, CliError> {
    BandMatrix::from_json(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn scalar(name: &str, v: Option<&String>, field: Field) -> Result<Scalar, CliError> {
    let raw = v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))?;
    let s: Scalar = raw.parse().map_err(|e: AlgebraError| CliError::Usage(format!("--{name}: {e}")))?;
    coerce(&s, field).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn seq(n: Option<usize>, terms: &[usize]) -> Result<QBSeq, CliError> {
    let l = match n {
        Some(n) => QBSeq::new(n, terms.to_vec()),
        None => QBSeq::from_terms(terms.to_vec()),
    };
    l.map_err(|e| CliError::Usage(format!("sequence: {e}")))
}

fn fmt_row(row: &[Scalar]) -> String {
    row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn run_build(a: &BuildArgs, field: Option<Field>, depth: Option<usize>, out: &Output) -> Result<u8, CliError> {
    let mut params = match &a.params {
        Some(path) => serde_json::from_str::<FamilyParams>(&read(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => {
            let f = field.unwrap_or(Field::Rational);
            let s = |name: &str, v: &Option<String>| scalar(name, v.as_ref(), f);
            let variant = match a.variant.expect("clap requires variant or params") {
                VariantArg::Ore => Variant::Ore { b: s("b", &a.b)?, c: s("c", &a.c)? },
                VariantArg::Generic => Variant::Generic { b: s("b", &a.b)?, c: s("c", &a.c)? },
                VariantArg::Particular => Variant::Particular,
                VariantArg::Anda => Variant::Anda {
                    n: a.n.ok_or_else(|| CliError::Usage("--n is required".into()))?,
                    d: s("d", &a.d)?,
                    a: s("a", &a.a)?,
                },
                VariantArg::Bnl => {
                    if a.l.is_empty() {
                        return Err(CliError::Usage("--L is required".into()));
                    }
                    Variant::Bnl { a: s("a", &a.a)?, l: seq(a.n, &a.l)? }
                }
            };
            FamilyParams { variant, depth: DEFAULT_DEPTH, field: f }
        }
    };
    if let Some(f) = field {
        params.field = f;
    }
    if let Some(d) = depth {
        params.depth = d;
    }
    let m = match (&params.variant, a.force) {
        (Variant::Bnl { a: av, l }, true) => force_bnl(&coerce(av, params.field)?, l, params.depth)?,
        _ => params.build()?,
    };
    let mut summary = format!(
        "family: {}\nfield: {}\ndepth: {}\n",
        params.variant,
        params.field,
        m.valid_rows()
    );
    for i in 0..a.show.min(m.valid_rows()) {
        summary.push_str(&format!("row {i}: {}\n", fmt_row(m.row(i).expect("within window"))));
    }
    if out.json_out.is_some() {
        print!("{summary}");
        out.write_json(&m)?;
    } else {
        eprint!("{summary}");
        println!("{}", m.to_json());
    }
    Ok(0)
}

fn mtilde_inputs(a: &VerifyArgs, m: &BandMatrix) -> Result<(Scalar, QBSeq), CliError> {
    if let (Some(_), false) = (&a.a, a.l.is_empty()) {
        return Ok((scalar("a", a.a.as_ref(), m.field())?, seq(None, &a.l)?));
    }
    let c = classify(m).map_err(|e| CliError::Usage(format!("mtilde needs --a and --L: {e}")))?;
    match c.tag {
        FamilyTag::Bnl { a: av, l } => Ok((
            a.a.as_ref().map_or(Ok(av), |_| scalar("a", a.a.as_ref(), m.field()))?,
            if a.l.is_empty() { seq(None, &l)? } else { seq(None, &a.l)? },
        )),
        other => Err(CliError::Usage(format!("mtilde needs --a and --L; matrix classifies as {other:?}"))),
    }
}

fn run_verify(a: &VerifyArgs, depth: Option<usize>, out: &Output) -> Result<u8, CliError> {
    let m = read_matrix(&a.matrix)?;
    let mut reports = Vec::new();
    let mut checks = a.check.clone();
    checks.dedup();
    for check in checks {
        let r = match check {
            CheckArg::Fundamental => check_fundamental(&m, depth)?,
            CheckArg::Gamma => check_gamma_axioms(&gamma_table(&m, a.max_r, a.max_i)?)?,
            CheckArg::Mtilde => {
                let (av, l) = mtilde_inputs(a, &m)?;
                check_mtilde(&m.minus_shift(), &av, &l, None)?
            }
        };
        reports.push(r);
    }
    let report = if reports.len() == 1 { reports.remove(0) } else { VerifyReport::combine("verify", reports) };
    print!("{}", report.summary());
    out.write_json(&report)?;
    Ok(report.exit_code() as u8)
}

fn run_classify(a: &ClassifyArgs, out: &Output) -> Result<u8, CliError> {
    let m = read_matrix(&a.matrix)?;
    let c = classify(&m)?;
    let tag = match &c.tag {
        FamilyTag::Ore { b, c } => format!("ore b={b} c={c}"),
        FamilyTag::GenericQuadratic { b, c } => format!("generic b={b} c={c}"),
        FamilyTag::Particular => "particular".into(),
        FamilyTag::Anda { n, d, a } => format!("anda n={n} d={d} a={a}"),
        FamilyTag::Bnl { a, l } => {
            format!("bnl a={a} L=({})", l.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        }
        FamilyTag::UnclassifiedBranch { n, a, row } => format!("unclassified-branch n={n} a={a} row={row}"),
    };
    println!("family: {tag}");
    if !c.scale.is_one() {
        println!("scale: {}", c.scale);
    }
    out.write_json(&c)?;
    Ok(0)
}

fn parse_policy(s: &str) -> Result<Policy, CliError> {
    match s {
        "all-n" => Ok(Policy::AllN),
        "n-plus-one" => Ok(Policy::NPlusOne),
        _ => s
            .strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(Policy::RandomWalk)
            .ok_or_else(|| CliError::Usage(format!("unknown policy {s}; use all-n, n-plus-one or random:SEED"))),
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn run_seq(a: &SeqArgs, out: &Output) -> Result<u8, CliError> {
    if a.n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {}", a.n)));
    }
    if a.count {
        let rows = counts(a.n, a.max_len);
        println!("length,count");
        for (len, count) in &rows {
            println!("{len},{count}");
        }
        out.write_json(&rows)?;
    } else if a.enumerate {
        let all = enumerate(a.n, a.len);
        for l in &all {
            println!("{}", json_line(l));
        }
        out.write_json(&all)?;
    } else if let Some(terms) = &a.extend {
        let l = seq(Some(a.n), terms)?;
        let next = extensions(&l)?;
        println!("{}", json_line(&next));
        out.write_json(&next)?;
    } else if let Some(terms) = &a.witness {
        let l = seq(Some(a.n), terms)?;
        let w = is_quasi_balanced(&l).err().ok_or(SeqError::QuasiBalanced)?;
        let case = failure_witness(&l)?;
        println!(
            "not quasi-balanced: {w}, (r,j)=({},{}); case {}, (k,r)=({},{})",
            w.r,
            w.j,
            case.case_number(),
            case.k,
            case.r
        );
        out.write_json(&serde_json::json!({ "witness": w, "case": case }))?;
    } else if let Some(terms) = &a.check {
        let l = seq(Some(a.n), terms)?;
        out.write_json(&serde_json::json!({ "quasi_balanced": is_quasi_balanced(&l).is_ok() }))?;
        if let Err(w) = is_quasi_balanced(&l) {
            println!("not quasi-balanced: {w}");
            return Ok(2);
        }
        println!("quasi-balanced");
    } else {
        let l = generate(a.n, a.len, parse_policy(&a.policy)?);
        println!("{}", json_line(&l));
        out.write_json(&l)?;
    }
    Ok(0)
}

fn describe(report: &RootReport, name: &str) -> String {
    let scope = match report.scope {
        Scope::Exhaustive => "exhaustive".to_string(),
        Scope::Bounded(b) => format!("bounded by {b}"),
    };
    match (report.index, report.scope) {
        (Some(i), _) => format!("{name} = {i} ({}, {scope})", report.case),
        (None, Scope::Exhaustive) => format!("none ({}, {scope})", report.case),
        (None, Scope::Bounded(b)) => format!("none <= {b} ({}, {scope})", report.case),
    }
}

fn run_roots(a: &RootsArgs, field: Field, out: &Output) -> Result<u8, CliError> {
    let report = match a.family {
        RootFamily::Q => find_q_root(&scalar("b", a.b.as_ref(), field)?, &scalar("c", a.c.as_ref(), field)?, a.bound),
        RootFamily::R => find_r_root(&scalar("a", a.a.as_ref(), field)?, &scalar("d", a.d.as_ref(), field)?, a.bound),
    }
    .map_err(|e| match e {
        AlgebraError::ParticularBranch | AlgebraError::DegeneratePoint => CliError::Math(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    let name = if a.family == RootFamily::Q { "n" } else { "k" };
    println!("{}", describe(&report, name));
    out.write_json(&report)?;
    Ok(0)
}
