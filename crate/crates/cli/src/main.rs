use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqquant::algebra::{make_algebra, Algebra, AlgebraSpec, Family};
use eqquant::casimir::{casimir_matrix, check_block_spectrum, eigenvalue, Representation};
use eqquant::critical::{critical_set, is_critical, CriticalValue};
use eqquant::ferrers::{admissible_diagrams, dim_irrep, dominance_lt, tilde_tree, FerrersDiagram};
use eqquant::quantization::{gamma_tree, Quantizer};
use eqquant::rational::{binomial, format_q, parse_q, Q};
use eqquant::space::Truncation;
use eqquant::symbol::Weights;
use eqquant::Error;

mod docs;

use docs::{Document, VERSION};

#[derive(Parser)]
#[command(name = "eqquant", version, about = "Exact computations for equivariant quantization on |1|-graded algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    O,
    Sp,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible summands of the degree k symbols with their dimensions
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
    },
    /// Casimir eigenvalue of a summand, at a shift or as a polynomial in it
    Eigenvalue {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
        /// A rational `p/q` or `symbolic`
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Critical shifts up to a degree with their witness pairs
    Critical {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        kmax: usize,
    },
    /// Quantization matrix on a truncation, with an equivariance check
    Quantize {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long = "K")]
        k_max: usize,
        #[arg(long = "M")]
        m_max: usize,
    },
    /// Tilde tree of a summand; with weights also the levels reached by gamma
    Tree {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, requires = "mu")]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "lambda")]
        mu: Option<String>,
    },
    /// Checks the spectrum of the tensor Casimir block by block
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long = "K")]
        k_max: usize,
        #[arg(long = "M")]
        m_max: usize,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
    document: Option<Box<Document>>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Critical(_) => 3,
            Error::Invariant(_) | Error::ZeroDivisor { .. } | Error::Singular(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string(), document: None }
    }
}

fn invariant(message: String, document: Document) -> Failure {
    Failure { code: 4, message, document: Some(Box::new(document)) }
}

impl Common {
    fn spec(&self) -> Result<AlgebraSpec, Failure> {
        let family = match self.family {
            FamilyArg::O => Family::Orthogonal,
            FamilyArg::Sp => Family::Symplectic,
        };
        Ok(make_algebra(family, self.n)?)
    }
}

fn family_name(spec: &AlgebraSpec) -> String {
    spec.family.short_name().to_string()
}

fn witnesses(delta: &Q, pairs: &[(eqquant::critical::Summand, eqquant::critical::Summand)]) -> Vec<docs::Witness> {
    pairs
        .iter()
        .map(|(u, l)| docs::Witness { delta: format_q(delta), upper: u.to_string(), lower: l.to_string() })
        .collect()
}

fn decompose(spec: &AlgebraSpec, k: usize) -> Result<Document, Failure> {
    let mut rows = Vec::new();
    let mut total = 0u64;
    for dg in admissible_diagrams(spec, k) {
        let dimension = dim_irrep(&dg, spec.n)?;
        total += dimension;
        rows.push(docs::DiagramRow { diagram: dg.label(), dimension });
    }
    let expected = binomial((spec.d + k - 1) as u64, k as u64);
    let doc = Document::Decompose(docs::Decompose {
        version: VERSION,
        family: family_name(spec),
        n: spec.n,
        k,
        rows,
        total,
        expected: expected.to_string(),
    });
    if expected != total.into() {
        return Err(invariant(format!("dimensions sum to {total}, expected {expected}"), doc));
    }
    Ok(doc)
}

fn eigen(spec: &AlgebraSpec, diagram: &str, delta: &str) -> Result<Document, Failure> {
    let dg: FerrersDiagram = diagram.parse()?;
    let poly = eigenvalue(&dg, spec)?;
    let (delta, value, coefficients) = if delta.trim() == "symbolic" {
        let c = docs::Coefficients { c2: format_q(&poly.c2), c1: format_q(&poly.c1), c0: format_q(&poly.c0) };
        (None, None, Some(c))
    } else {
        let d = parse_q(delta)?;
        (Some(format_q(&d)), Some(format_q(&poly.eval(&d))), None)
    };
    Ok(Document::Eigenvalue(docs::Eigenvalue {
        version: VERSION,
        family: family_name(spec),
        n: spec.n,
        diagram: dg.label(),
        degree: (dg.boxes() / 2) as usize,
        delta,
        value,
        coefficients,
    }))
}

fn critical(spec: &AlgebraSpec, kmax: usize) -> Result<Document, Failure> {
    if kmax == 0 {
        return Err(Failure { code: 2, message: "kmax must be at least 1".into(), document: None });
    }
    let set: Vec<CriticalValue> = critical_set(spec, kmax)?;
    Ok(Document::Critical(docs::Critical {
        version: VERSION,
        family: family_name(spec),
        n: spec.n,
        kmax,
        values: set.iter().map(|c| format_q(&c.delta)).collect(),
        witnesses: set.iter().flat_map(|c| witnesses(&c.delta, &c.witnesses)).collect(),
    }))
}

fn quantize(spec: &AlgebraSpec, lambda: &str, mu: &str, trunc: Truncation) -> Result<Document, Failure> {
    let weights = Weights::new(parse_q(lambda)?, parse_q(mu)?);
    let report = is_critical(&weights.lambda, &weights.mu, spec, trunc.k_max)?;
    if report.critical {
        let doc = Document::Refusal(docs::Refusal {
            version: VERSION,
            family: family_name(spec),
            n: spec.n,
            delta: format_q(&report.delta),
            k_max: trunc.k_max,
            witnesses: witnesses(&report.delta, &report.witnesses),
        });
        return Err(Failure {
            code: 3,
            message: format!("delta = {} is critical up to degree {}", format_q(&report.delta), trunc.k_max),
            document: Some(Box::new(doc)),
        });
    }
    let alg = Algebra::new(*spec);
    let mut map = Quantizer::new(&alg, &weights, trunc)?.matrix()?;
    let equivariance = if trunc.m_max > 0 {
        let r = map.verify()?;
        Some(docs::Equivariance { checked: r.checked, margin_degree: r.margin_degree, violations: r.violations.len() })
    } else {
        None
    };
    let space = &map.matrix.space;
    let mut entries: Vec<docs::Entry> = map
        .matrix
        .matrix
        .triplets()
        .into_iter()
        .map(|(row, col, v)| docs::Entry { row, col, value: format_q(&v) })
        .collect();
    entries.sort_by_key(|e| (e.row, e.col));
    let doc = Document::Quantize(docs::Quantize {
        version: VERSION,
        family: family_name(spec),
        n: spec.n,
        lambda: format_q(&weights.lambda),
        mu: format_q(&weights.mu),
        delta: format_q(&weights.delta()),
        k_max: trunc.k_max,
        m_max: trunc.m_max,
        basis: (0..space.dim()).map(|i| space.monomial(i).to_string()).collect(),
        entries,
        unipotent: map.is_unipotent_triangular(),
        equivariance: equivariance.clone(),
    });
    if !map.is_unipotent_triangular() {
        return Err(invariant("quantization matrix is not unipotent triangular".into(), doc));
    }
    if equivariance.is_some_and(|e| e.violations > 0) {
        return Err(invariant("equivariance violated on the margin".into(), doc));
    }
    Ok(doc)
}

fn tree(spec: &AlgebraSpec, diagram: &str, k: usize, weights: Option<(&str, &str)>) -> Result<Document, Failure> {
    let root: FerrersDiagram = diagram.parse()?;
    let t = tilde_tree(&root, k, spec)?;
    let gamma = match weights {
        Some((l, m)) => {
            let w = Weights::new(parse_q(l)?, parse_q(m)?);
            Some(gamma_tree(&root, k, &Algebra::new(*spec), &w)?)
        }
        None => None,
    };
    let mut ok = true;
    let levels = t
        .levels
        .iter()
        .enumerate()
        .map(|(l, set)| {
            let strictly_dominated = l == 0 || set.iter().all(|d| dominance_lt(d, &root));
            let reached = gamma.as_ref().map(|g| g.content.get(l).map(|c| c.keys().cloned().collect()).unwrap_or_default());
            if let Some(r) = &reached {
                let r: &std::collections::BTreeSet<FerrersDiagram> = r;
                ok &= r.is_subset(set);
            }
            ok &= strictly_dominated;
            docs::Level {
                level: l,
                degree: t.degree_of_level(l),
                diagrams: set.iter().map(FerrersDiagram::label).collect(),
                strictly_dominated,
                gamma: reached.map(|r| r.iter().map(FerrersDiagram::label).collect()),
            }
        })
        .collect();
    let doc = Document::Tree(docs::Tree {
        version: VERSION,
        family: family_name(spec),
        n: spec.n,
        root: root.label(),
        k,
        levels,
    });
    if !ok {
        return Err(invariant("tree check failed".into(), doc));
    }
    Ok(doc)
}

fn verify(spec: &AlgebraSpec, delta: &str, trunc: Truncation) -> Result<Document, Failure> {
    let delta = parse_q(delta)?;
    let alg = Algebra::new(*spec);
    let c = casimir_matrix(Representation::TensorFields, &alg, &Weights::new(Q::from_integer(0.into()), delta.clone()), trunc)?;
    let mut blocks = Vec::new();
    for k in 0..=trunc.k_max {
        for m in 0..=trunc.m_max {
            let r = check_block_spectrum(&c, k, m, &delta)?;
            blocks.push(docs::BlockReport {
                k,
                m,
                values: r.predicted.iter().map(|(v, _)| format_q(v)).collect(),
                multiplicities: r.predicted.iter().map(|(_, m)| *m).collect(),
                traces: r.traces.iter().map(format_q).collect(),
                annihilated: r.annihilated,
                matches: r.matches(),
            });
        }
    }
    let ok = blocks.iter().all(|b| b.matches);
    let doc = Document::Verify(docs::Verify {
        version: VERSION,
        family: family_name(spec),
        n: spec.n,
        delta: format_q(&delta),
        k_max: trunc.k_max,
        m_max: trunc.m_max,
        blocks,
        ok,
    });
    if !ok {
        return Err(invariant("spectrum does not match the prediction".into(), doc));
    }
    Ok(doc)
}

fn run(cmd: &Command) -> Result<Document, Failure> {
    match cmd {
        Command::Decompose { common, k } => decompose(&common.spec()?, *k),
        Command::Eigenvalue { common, diagram, delta } => eigen(&common.spec()?, diagram, delta),
        Command::Critical { common, kmax } => critical(&common.spec()?, *kmax),
        Command::Quantize { common, lambda, mu, k_max, m_max } => {
            quantize(&common.spec()?, lambda, mu, Truncation::new(*k_max, *m_max))
        }
        Command::Tree { common, diagram, k, lambda, mu } => {
            let weights = lambda.as_deref().zip(mu.as_deref());
            tree(&common.spec()?, diagram, *k, weights)
        }
        Command::Verify { common, delta, k_max, m_max } => verify(&common.spec()?, delta, Truncation::new(*k_max, *m_max)),
    }
}

fn format_of(cmd: &Command) -> Format {
    match cmd {
        Command::Decompose { common, .. }
        | Command::Eigenvalue { common, .. }
        | Command::Critical { common, .. }
        | Command::Quantize { common, .. }
        | Command::Tree { common, .. }
        | Command::Verify { common, .. } => common.format,
    }
}

fn emit(doc: &Document, format: Format) {
    match format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Csv => print!("{}", doc.to_csv()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = format_of(&cli.command);
    match run(&cli.command) {
        Ok(doc) => {
            emit(&doc, format);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(doc) = &f.document {
                emit(doc, format);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
