/*!
`bagrefine`: exact treewidth, decomposition refinement, bag audits, the
layered/square-root pipeline, lower-bound gadgets, and the named acceptance
corpora, over the text formats in `bagrefine_core::io`.

Exit codes: 0 success, 1 internal invariant or verification failure, 2
instance over a size cap, 3 bad input (parse error, invalid decomposition,
violated precondition). Machine-readable result lines start with
`R <check> <pass|fail> <detail>`; all randomness sits behind `--seed`.
*/

use bagrefine_core::exact::treewidth_exact;
use bagrefine_core::gadget::{build_gadget, read_draw, verify_gadget, write_draw};
use bagrefine_core::io::{read_gr, read_td, write_gr, write_sset, write_td};
use bagrefine_core::layered::{
    planar_layered_pipeline, shallow_peel, sqrt_decomposition, write_layers,
};
use bagrefine_core::refine::{bag_audit, refine_to_fixpoint, BagCheck};
use bagrefine_core::suites::run_suite;
use bagrefine_core::{Error, Graph, NonSeparableClass, RefineLevel, TreeDecomposition};
use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "bagrefine", version, about = "tree-decomposition refinement and auditing")]
struct Cli {
    /// seed for every randomized audit
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Unbreakable,
    Irreducible,
}

impl From<LevelArg> for RefineLevel {
    fn from(l: LevelArg) -> RefineLevel {
        match l {
            LevelArg::Unbreakable => RefineLevel::Unbreakable,
            LevelArg::Irreducible => RefineLevel::Irreducible,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact treewidth; prints the width and writes a witness .td
    Tw { input: PathBuf },
    /// Refine a decomposition to a fixpoint, logging every step
    Refine {
        input: PathBuf,
        /// starting decomposition; defaults to an optimal one
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LevelArg::Irreducible)]
        level: LevelArg,
    },
    /// Audit the bags of a decomposition
    Audit {
        input: PathBuf,
        td: PathBuf,
        /// check bags against the width and minor bounds for this Euler genus
        #[arg(long)]
        genus: Option<usize>,
        /// check bags for treewidth <= 3 and the structure classification
        #[arg(long)]
        planar: bool,
        /// check the bag degree property
        #[arg(long)]
        degree: bool,
    },
    /// Layered pipeline plus the square-root-width decomposition
    Sqrt {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Peel a shallow low-treewidth set, leaving a bounded rest
    Peel {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Build and verify a lower-bound gadget from a drawing
    Gadget {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// output prefix; defaults to the input path minus its extension
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a named acceptance suite; nonzero exit on any violation
    Corpus { suite: String },
}

fn main() {
    let cli = Cli::parse();
    let seed = cli.seed;
    if let Err(e) = run(cli.cmd, seed) {
        eprintln!("error: {e}");
        std::process::exit(match e {
            Error::TooLarge { .. } => 2,
            Error::Precondition(_) | Error::InvalidDecomposition(_) | Error::Parse { .. } => 3,
            Error::Internal(_) | Error::Io(_) => 1,
        });
    }
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    read_gr(&fs::read_to_string(path)?)
}

fn emit(path: &Path, content: String) -> Result<(), Error> {
    fs::write(path, content)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn run(cmd: Cmd, seed: u64) -> Result<(), Error> {
    match cmd {
        Cmd::Tw { input } => {
            let g = load_graph(&input)?;
            let (w, dec) = treewidth_exact(&g)?;
            println!("{w}");
            emit(&input.with_extension("td"), write_td(&dec))
        }
        Cmd::Refine { input, td, level } => {
            let g = load_graph(&input)?;
            let start = match td {
                Some(p) => read_td(&fs::read_to_string(p)?)?,
                None => treewidth_exact(&g)?.1,
            };
            let (dec, steps) = refine_to_fixpoint(&g, &start, level.into())?;
            for s in &steps {
                println!("step {} {} -> {}", s.kind, s.before, s.after);
            }
            println!("width {}", dec.width());
            emit(&input.with_extension("refined.td"), write_td(&dec))
        }
        Cmd::Audit { input, td, genus, planar, degree } => {
            let g = load_graph(&input)?;
            let dec = read_td(&fs::read_to_string(td)?)?;
            audit(&g, &dec, genus, planar, degree)
        }
        Cmd::Sqrt { input, root } => {
            let g = load_graph(&input)?;
            let (dec, layering, c) = planar_layered_pipeline(&g, root)?;
            let sq = sqrt_decomposition(&g, &layering, &dec, c)?;
            let (w, n) = (sq.width(), g.n() as i64);
            println!("layered-width {c}");
            println!("width {w}");
            report("sqrt-width", w * w <= 12 * n, &format!("width={w} n={n} bound=2*sqrt(3n)"));
            emit(&input.with_extension("layers"), write_layers(&layering))?;
            emit(&input.with_extension("sqrt.td"), write_td(&sq))
        }
        Cmd::Peel { input, root } => {
            let g = load_graph(&input)?;
            let (dec, layering, c) = planar_layered_pipeline(&g, root)?;
            let peel = shallow_peel(&g, &layering, &dec, c)?;
            let (s, n) = (peel.s.len(), g.n());
            let wr = peel.dec_rest.width();
            println!("s-size {s}");
            println!("rest-width {wr}");
            report("peel-size", s * s <= 3 * n, &format!("s={s} n={n} bound=sqrt(3n)"));
            report("rest-width", wr * wr <= (3 * n) as i64, &format!("width={wr} bound=sqrt(3n)"));
            emit(&input.with_extension("sset"), write_sset(&peel.s))?;
            emit(&input.with_extension("rest.gr"), write_gr(&peel.rest))?;
            emit(&input.with_extension("rest.td"), write_td(&peel.dec_rest))
        }
        Cmd::Gadget { input, c, samples, out } => {
            let d = read_draw(&fs::read_to_string(&input)?)?;
            let res = build_gadget(&d, c)?;
            let prefix = out.unwrap_or_else(|| input.with_extension(""));
            println!("n {}", res.graph.n());
            println!("m {}", res.graph.m());
            println!("s-size {}", res.s.len());
            emit(&prefix.with_extension("gr"), write_gr(&res.graph))?;
            emit(&prefix.with_extension("sset"), write_sset(&res.s))?;
            emit(&prefix.with_extension("draw"), write_draw(&res.drawing))?;
            let rep = verify_gadget(&res, c, samples, seed);
            report("drawing", rep.drawing_ok, "one crossing per edge");
            report("subdivision", rep.subdivision_ok, "S induces a base-graph subdivision");
            report(
                "star",
                rep.star_ok,
                &format!("width={} s={}", rep.star_width, res.s.len()),
            );
            report(
                "bundles",
                rep.bundle_failures == 0,
                &format!("checked={} failed={}", rep.bundles_checked, rep.bundle_failures),
            );
            if rep.all_pass() {
                Ok(())
            } else {
                Err(Error::Internal(format!(
                    "gadget verification failed: {}",
                    rep.failures.first().cloned().unwrap_or_default()
                )))
            }
        }
        Cmd::Corpus { suite } => {
            let out = run_suite(&suite, seed)?;
            report(&out.name, out.pass(), &format!("{} ({} checked)", out.detail, out.checked));
            for v in out.violations.iter().take(20) {
                println!("violation: {v}");
            }
            if out.violations.len() > 20 {
                println!("... and {} more", out.violations.len() - 20);
            }
            if out.pass() {
                Ok(())
            } else {
                Err(Error::Internal(format!(
                    "suite {} found {} violations",
                    out.name,
                    out.violations.len()
                )))
            }
        }
    }
}

fn report(check: &str, pass: bool, detail: &str) {
    println!("R {check} {} {detail}", if pass { "pass" } else { "fail" });
}

fn audit(
    g: &Graph,
    dec: &TreeDecomposition,
    genus: Option<usize>,
    planar: bool,
    degree: bool,
) -> Result<(), Error> {
    let violations = dec.validate(g);
    for v in &violations {
        report("decomposition", false, &v.to_string());
    }
    if let Some(v) = violations.first() {
        return Err(Error::InvalidDecomposition(v.to_string()));
    }
    report(
        "decomposition",
        true,
        &format!("nodes={} width={}", dec.node_count(), dec.width()),
    );
    let mut checks = Vec::new();
    if planar || genus.is_some() {
        checks.push(BagCheck::Treewidth);
    }
    if planar {
        checks.push(BagCheck::PlanarClass);
    }
    let bound = genus.map(|gn| (4 * gn + 2).max(3) as i64);
    if let Some(gn) = genus {
        checks.push(BagCheck::MinorFree {
            name: format!("K_{{2,{}}}", 4 * gn + 2),
            pattern: Graph::complete_bipartite(2, 4 * gn + 2),
        });
    }
    let delta = g.max_degree();
    if degree {
        checks.push(BagCheck::Degree { delta });
    }
    let reports = bag_audit(g, dec, &checks)?;
    if planar {
        let worst = reports.iter().filter_map(|r| r.treewidth).max().unwrap_or(-1);
        report("bag-treewidth", worst <= 3, &format!("max={worst} bound=3"));
        let unclassified = reports
            .iter()
            .filter(|r| r.planar_class == Some(NonSeparableClass::NotNonSeparable))
            .count();
        report("bag-class", unclassified == 0, &format!("unclassified={unclassified}"));
    }
    if let Some(bound) = bound {
        let worst = reports.iter().filter_map(|r| r.treewidth).max().unwrap_or(-1);
        report("width-bound", worst <= bound, &format!("max={worst} bound={bound}"));
        let with_minor = reports
            .iter()
            .filter(|r| r.minor_free.iter().any(|(_, free)| !free))
            .count();
        report("minor-free", with_minor == 0, &format!("bags-with-pattern={with_minor}"));
    }
    if degree {
        let bad = reports.iter().filter(|r| r.degree_ok == Some(false)).count();
        report("degree", bad == 0, &format!("delta={delta} failing={bad}"));
    }
    Ok(())
}
