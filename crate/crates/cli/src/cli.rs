//! Command-line surface.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use finloop::arith::is_prime;
use finloop::clonoid::{
    clonoid_span, coefficient_rows, dimension_formula_check, find_basis_parameter, normalize_term,
    terms_equal, ClonoidContext, FnTable,
};
use finloop::groups::builtin;
use finloop::groups::{
    abelian_reduct, baer_trick, dihedral_reduct_class_scan, reduct_family, wreath_obstruction_facts,
    GroupView,
};
use finloop::loops::subloop::center;
use finloop::loops::{upper_central_series, NormalSubloop, Subloop};
use finloop::reduct::{build_reduct, corollary_reduct};
use finloop::supernilpotence::{is_supernilpotent_decomp, is_supernilpotent_wright};
use finloop::{FiniteLoop, LoopError};

use crate::certificate::{verify_certificate, CertificateDocument};
use crate::enumerate::{enumerate_loops, LoopFilter};
use crate::error::{CliError, Result};
use crate::loopfile::{read_loop_file, serialize_loop};
use crate::termparse::{parse_term, render_term};

#[derive(Parser)]
#[command(
    name = "finloop",
    about = "Finite loops: structure checks, supernilpotent term reducts with certificates, \
             group reduct families, and clonoid normal forms",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a loop file and report its structure
    Check { file: PathBuf },
    /// Build a supernilpotent term reduct with certificate
    Reduct {
        file: PathBuf,
        /// Write the certificate as JSON
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Relative reduct through a normal subloop with supernilpotent quotient
    Corollary {
        file: PathBuf,
        /// Elements of the normal subloop, comma separated
        #[arg(long)]
        normal: String,
    },
    /// Enumerate all loops of a small order
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Keep one table per isomorphism class
        #[arg(long)]
        canonical: bool,
    },
    /// Group-reduct machinery for associative inputs
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Clonoids of zero-preserving functions Z_q -> Z_p
    Clonoid {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        /// Values f(0),f(1),...,f(q-1), comma separated
        #[arg(long)]
        f: String,
        #[command(subcommand)]
        command: ClonoidCommand,
    },
    /// Re-verify a certificate against its input loop
    Verify { cert: PathBuf, file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Nilpotent,
    #[value(name = "nilpotent-nonassociative")]
    NilpotentNonassociative,
}

impl From<FilterArg> for LoopFilter {
    fn from(f: FilterArg) -> LoopFilter {
        match f {
            FilterArg::All => LoopFilter::All,
            FilterArg::Nilpotent => LoopFilter::Nilpotent,
            FilterArg::NilpotentNonassociative => LoopFilter::NilpotentNonassociative,
        }
    }
}

#[derive(Subcommand)]
enum GroupCommand {
    /// All group reducts x*y = xy[x,y]^c of a 2-nilpotent group
    Family {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        builtin: Option<String>,
    },
    /// The abelian member of the family, when the derived exponent is odd
    AbelianReduct {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        builtin: Option<String>,
    },
    /// The Baer construction x*y = xy[y,x]^k
    Baer {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        builtin: Option<String>,
    },
    /// Nilpotence classes across the c-family of D_{2^(n+1)}
    ScanDihedral {
        #[arg(long)]
        n: u32,
    },
    /// The computable facts behind the Z3 wr Z3 obstruction
    WreathFacts,
}

#[derive(Subcommand)]
enum ClonoidCommand {
    /// Basis parameter a and the orbit basis of the unary part
    Basis,
    /// Dimension of C^[n] against the closed formula
    Dims {
        #[arg(long)]
        n: usize,
    },
    /// Coefficient rows f(cx) = sum d_i f(a^i x)
    Rows,
    /// Rewrite a term to its normal form
    Normalize { term: String },
    /// Decide equality of two terms
    Equal { t1: String, t2: String },
}

/// Parses and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set_text(elems: &[usize]) -> String {
    let inner: Vec<String> = elems.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Check { file } => check(&file),
        Command::Reduct { file, cert } => reduct(&file, cert.as_deref()),
        Command::Corollary { file, normal } => corollary(&file, &normal),
        Command::Enumerate {
            order,
            filter,
            canonical,
        } => enumerate(order, filter.into(), canonical),
        Command::Group { command } => group(command),
        Command::Clonoid { q, p, f, command } => clonoid(q, p, &f, command),
        Command::Verify { cert, file } => verify(&cert, &file),
    }
}

fn check(file: &Path) -> Result<()> {
    let l = read_loop_file(file)?;
    println!("order: {}", l.order());
    println!("associative: {}", yesno(l.is_associative()));
    println!("commutative: {}", yesno(l.is_commutative()));
    let z = center(&l).map_err(LoopError::from)?;
    println!("center: order {} {}", z.order(), set_text(z.elements()));
    let series = upper_central_series(&l).map_err(LoopError::from)?;
    match series.class() {
        Some(c) => println!("nilpotent: yes (class {c})"),
        None => println!("nilpotent: no"),
    }
    let decomp = is_supernilpotent_decomp(&l).map_err(LoopError::from)?;
    let wright = is_supernilpotent_wright(&l).map_err(LoopError::from)?;
    println!("supernilpotent (decomposition): {}", yesno(decomp.is_some()));
    println!("supernilpotent (multiplication group): {}", yesno(wright));
    if decomp.is_some() != wright {
        return Err(LoopError::internal("the two supernilpotence tests disagree").into());
    }
    if let Some(d) = decomp {
        for (p, factor) in &d.factors {
            println!("  factor for prime {p}: order {}", factor.order());
        }
    }
    Ok(())
}

fn reduct(file: &Path, cert_out: Option<&Path>) -> Result<()> {
    let l = read_loop_file(file)?;
    let cert = build_reduct(&l).map_err(LoopError::from)?;
    let chain: Vec<usize> = cert.series.chain.iter().map(|c| c.order()).collect();
    println!("order: {}", l.order());
    println!("series chain orders: {chain:?}");
    println!("series primes: {:?}", cert.series.primes);
    for stage in &cert.stages {
        println!(
            "stage {}: n = {} (m_e = {}, m_v = {})",
            stage.index, stage.n, stage.m_e, stage.m_v
        );
    }
    println!(
        "final operation: associative {}, commutative {}, equals input {}",
        yesno(cert.final_star.is_associative()),
        yesno(cert.final_star.is_commutative()),
        yesno(cert.final_star == l),
    );
    for (p, factor) in &cert.decomposition.factors {
        println!("  factor for prime {p}: order {}", factor.order());
    }
    println!("term DAG: {} nodes", cert.dag.len());
    if let Some(path) = cert_out {
        let doc = CertificateDocument::from_certificate(&cert);
        std::fs::write(path, doc.to_json()?)?;
        println!("certificate written to {}", path.display());
    }
    Ok(())
}

fn corollary(file: &Path, normal: &str) -> Result<()> {
    let l = read_loop_file(file)?;
    let elems: Vec<usize> = normal
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("bad element `{tok}` in --normal")))
        })
        .collect::<Result<_>>()?;
    let sub = Subloop::checked(&l, elems).map_err(LoopError::from)?;
    let n = NormalSubloop::checked(&l, sub).map_err(LoopError::from)?;
    let c = corollary_reduct(&l, &n).map_err(LoopError::from)?;
    println!("N: order {} {}", n.order(), set_text(n.elements()));
    println!("series position of N: {}", c.j);
    println!("final operation table:");
    print!("{}", serialize_loop(&c.certificate.final_star));
    println!("r range within N: yes (checked on all pairs)");
    println!("reconstruction x·y = r(x,y) * (x*y): verified");
    println!("term DAG: {} nodes", c.certificate.dag.len());
    Ok(())
}

fn enumerate(order: usize, filter: LoopFilter, canonical: bool) -> Result<()> {
    let loops = enumerate_loops(order, filter, canonical)?;
    for (i, l) in loops.iter().enumerate() {
        println!("# {i}");
        print!("{}", serialize_loop(l));
        println!();
    }
    eprintln!("{} loop(s)", loops.len());
    Ok(())
}

fn load_group(file: Option<&Path>, builtin_name: Option<&str>) -> Result<GroupView> {
    let l = match (file, builtin_name) {
        (Some(path), None) => read_loop_file(path)?,
        (None, Some(name)) => builtin_by_name(name)?,
        _ => {
            return Err(CliError::Parse(
                "provide exactly one of FILE or --builtin NAME".into(),
            ))
        }
    };
    Ok(GroupView::new(l).map_err(LoopError::from)?)
}

fn builtin_by_name(name: &str) -> Result<FiniteLoop> {
    let lower = name.to_ascii_lowercase();
    if lower == "q8" {
        return Ok(builtin::quaternion8());
    }
    if lower == "s3" {
        return Ok(builtin::symmetric3());
    }
    if lower == "z3wrz3" {
        return Ok(builtin::wreath_z3_z3());
    }
    if let Some(rest) = lower.strip_prefix("heis") {
        if let Ok(p) = rest.parse::<usize>() {
            if is_prime(p as u64) {
                return Ok(builtin::heisenberg(p));
            }
        }
    } else if let Some(rest) = lower.strip_prefix('d') {
        if let Ok(order) = rest.parse::<usize>() {
            if order >= 2 && order % 2 == 0 {
                return Ok(builtin::dihedral(order / 2));
            }
        }
    } else if let Some(rest) = lower.strip_prefix('z') {
        if let Ok(m) = rest.parse::<usize>() {
            if m >= 1 {
                return Ok(builtin::cyclic(m));
            }
        }
    }
    Err(CliError::Parse(format!(
        "unknown builtin `{name}` (try z<m>, d<order>, q8, heis<p>, z3wrz3, s3)"
    )))
}

fn group(command: GroupCommand) -> Result<()> {
    match command {
        GroupCommand::Family { file, builtin } => {
            let g = load_group(file.as_deref(), builtin.as_deref())?;
            println!(
                "derived subgroup: order {}, exponent {}",
                g.derived.order(),
                g.derived_exponent
            );
            let family = reduct_family(&g).map_err(LoopError::from)?;
            println!("distinct group reducts: {}", family.len());
            for member in &family {
                let kind = if member.member == g.group {
                    " (the original)"
                } else if (0..g.order())
                    .all(|x| (0..g.order()).all(|y| member.member.mul(x, y) == g.group.mul(y, x)))
                {
                    " (the opposite)"
                } else {
                    ""
                };
                println!("  c = {}: group with identity 0{kind}", member.c);
            }
        }
        GroupCommand::AbelianReduct { file, builtin } => {
            let g = load_group(file.as_deref(), builtin.as_deref())?;
            match abelian_reduct(&g).map_err(LoopError::from)? {
                Some((c, table)) => {
                    println!("abelian reduct at c = {c}:");
                    print!("{}", serialize_loop(&table));
                }
                None => println!(
                    "none: derived exponent {} is even",
                    g.derived_exponent
                ),
            }
        }
        GroupCommand::Baer { file, builtin } => {
            let g = load_group(file.as_deref(), builtin.as_deref())?;
            let table = baer_trick(&g).map_err(LoopError::from)?;
            println!("baer reduct (k inverts squaring on the derived subgroup):");
            print!("{}", serialize_loop(&table));
        }
        GroupCommand::ScanDihedral { n } => {
            let scan = dihedral_reduct_class_scan(n).map_err(LoopError::from)?;
            println!("dihedral group of order {}", scan.order);
            for (c, class) in &scan.classes {
                match class {
                    Some(k) => println!("  c = {c}: group, nilpotence class {k}"),
                    None => println!("  c = {c}: not associative"),
                }
            }
        }
        GroupCommand::WreathFacts => {
            let r = wreath_obstruction_facts().map_err(LoopError::from)?;
            println!("order: {}", r.order);
            println!("exponent: {}", r.exponent);
            println!(
                "base subgroup: order {}, normal {}, abelian {}, exponent {}",
                r.base_order,
                yesno(r.base_is_normal),
                yesno(r.base_is_abelian),
                r.base_exponent
            );
            println!(
                "base is elementary abelian of order 27: {}",
                yesno(r.base_is_elementary_abelian)
            );
            match r.outside_order3_witness {
                Some(g) => println!("element of order 3 outside the base: {g}"),
                None => println!("element of order 3 outside the base: none found"),
            }
            println!("not machine-checked: {}", r.unchecked_step);
        }
    }
    Ok(())
}

fn clonoid(q: u64, p: u64, f_csv: &str, command: ClonoidCommand) -> Result<()> {
    if !is_prime(q) || !is_prime(p) || q == p {
        return Err(CliError::Parse(format!(
            "q and p must be distinct primes, got q = {q}, p = {p}"
        )));
    }
    let values: Vec<u64> = f_csv
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("bad value `{tok}` in --f")))
        })
        .collect::<Result<_>>()?;
    let f = FnTable::unary(q, p, values).map_err(LoopError::from)?;
    match command {
        ClonoidCommand::Basis => {
            let basis = find_basis_parameter(&f).map_err(LoopError::from)?;
            println!("a = {}, k = {}", basis.a, basis.k);
            for (i, b) in basis.b.iter().enumerate() {
                println!("  B_{i}(x) = f({}^{i}·x): {:?}", basis.a, b.values());
            }
        }
        ClonoidCommand::Dims { n } => {
            let basis = find_basis_parameter(&f).map_err(LoopError::from)?;
            let dim = clonoid_span(&f, n).dim();
            let formula = basis.k * ((q as usize).pow(n as u32) - 1) / (q as usize - 1);
            println!("dim C^[{n}] = {dim}");
            println!("k(q^n-1)/(q-1) = {formula}");
            println!(
                "formula check: {}",
                yesno(dimension_formula_check(&f, n).map_err(LoopError::from)?)
            );
        }
        ClonoidCommand::Rows => {
            let basis = find_basis_parameter(&f).map_err(LoopError::from)?;
            let rows = coefficient_rows(&basis).map_err(LoopError::from)?;
            for row in rows {
                println!("f({}·x) = {:?} over the basis", row.c, row.d);
            }
        }
        ClonoidCommand::Normalize { term } => {
            let ast = parse_term(&term)?;
            let arity = ast.min_arity();
            let ctx = ClonoidContext::new(f).map_err(LoopError::from)?;
            let nf = normalize_term(&ctx, &ast, arity).map_err(LoopError::from)?;
            println!("{}", render_term(&nf.to_ast(q, p)));
        }
        ClonoidCommand::Equal { t1, t2 } => {
            let a1 = parse_term(&t1)?;
            let a2 = parse_term(&t2)?;
            let arity = a1.min_arity().max(a2.min_arity());
            let ctx = ClonoidContext::new(f).map_err(LoopError::from)?;
            let equal = terms_equal(&ctx, &a1, &a2, arity).map_err(LoopError::from)?;
            println!("equal: {}", yesno(equal));
        }
    }
    Ok(())
}

fn verify(cert_path: &Path, file: &Path) -> Result<()> {
    let doc = CertificateDocument::from_json(&std::fs::read_to_string(cert_path)?)?;
    let l = read_loop_file(file)?;
    let report = verify_certificate(&doc, &l);
    for check in &report.checks {
        println!("{} {}", if check.passed { "ok  " } else { "FAIL" }, check.name);
    }
    if report.passed() {
        println!("certificate verified: {} checks passed", report.checks.len());
        Ok(())
    } else {
        Err(CliError::VerificationFailed(report.failures()))
    }
}
