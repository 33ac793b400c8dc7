//! Command-line front end. `run` parses arguments and returns the exit code:
//! 0 on success, 1 when a verification fails, 2 on usage or configuration
//! errors.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use tilted_bruhat::exec::Parallelism;
use tilted_bruhat::operators::{
    mixed_family, quantum_family, r_family, symbols, yang_family, ParamSet,
};
use tilted_bruhat::quantum_monk::{classical_chevalley, quantum_chevalley, SchubertExpression};
use tilted_bruhat::random;
use tilted_bruhat::root_system::{DihedralType, Pairing};
use tilted_bruhat::scalars::{MultiPoly, Rational, RationalFunction, Var};
use tilted_bruhat::tilted::TiltedDigraph;
use tilted_bruhat::ybe::{check_system, check_ybe, YbeOptions, YbeReport};
use tilted_bruhat::{RootSystem, TypeLabel, WeylGroup};

mod verify;

#[derive(Parser, Debug)]
#[command(
    name = "tilted-bruhat",
    version,
    about = "Mixed and quantum Bruhat operators, Yang-Baxter checks and tilted Bruhat orders"
)]
struct Cli {
    /// Run every check on one thread (the default uses rayon when built
    /// with the `parallel` feature; RAYON_NUM_THREADS sets the pool size).
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the positive roots.
    Roots {
        #[arg(value_name = "TYPE")]
        type_label: String,
        rank: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the Yang-Baxter equation on every dihedral reflection subgroup.
    Ybe {
        #[arg(value_name = "TYPE")]
        type_label: String,
        rank: usize,
        /// Use indeterminates instead of random rationals.
        #[arg(long, conflicts_with = "seed")]
        symbolic: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Family::Mixed)]
        family: Family,
        /// Only the cosets through the identity.
        #[arg(long)]
        identity_coset: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the rank-two equation systems (A2, B2 or G2).
    Equations {
        #[arg(value_name = "TYPE2")]
        type2: String,
        #[arg(long, conflicts_with = "seed")]
        symbolic: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build the tilted digraph, run its checks and export DOT/JSON.
    Tilted {
        #[arg(value_name = "TYPE")]
        type_label: String,
        rank: usize,
        /// Show the tilted order from this element.
        #[arg(long, value_name = "WORD")]
        from: Option<String>,
        /// Show the tilted interval between two elements.
        #[arg(long, num_args = 2, value_names = ["WORD", "WORD"])]
        interval: Option<Vec<String>>,
        /// Reduced word of the longest element defining the reflection ordering.
        #[arg(long, value_name = "WORD")]
        ordering: Option<String>,
        /// Write the digraph (or the selected order/interval) as DOT.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Write the same content as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Skip the checks.
        #[arg(long)]
        no_checks: bool,
    },
    /// Quantum Chevalley product [w] * [s].
    Monk {
        #[arg(value_name = "TYPE")]
        type_label: String,
        rank: usize,
        #[arg(long, value_name = "WORD")]
        w: String,
        /// 1-based simple index.
        #[arg(long, value_name = "INDEX")]
        s: usize,
        /// Drop the quantum terms.
        #[arg(long)]
        classical: bool,
        /// Pair the fundamental weight with coroots.
        #[arg(long)]
        coroot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite on every type up to the given rank.
    VerifyAll {
        max_rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Mixed,
    Quantum,
    Yang,
}

/// A usage or configuration problem, reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<bool, UsageError>;

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let par = if cli.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Rayon
    };
    let outcome = match cli.command {
        Command::Roots {
            type_label,
            rank,
            json,
        } => roots(&type_label, rank, json),
        Command::Ybe {
            type_label,
            rank,
            symbolic,
            seed,
            family,
            identity_coset,
            json,
        } => ybe(
            &type_label,
            rank,
            symbolic,
            seed.unwrap_or(0),
            family,
            identity_coset,
            json,
            par,
        ),
        Command::Equations {
            type2,
            symbolic,
            seed,
        } => equations(&type2, symbolic, seed.unwrap_or(0)),
        Command::Tilted {
            type_label,
            rank,
            from,
            interval,
            ordering,
            dot,
            json,
            no_checks,
        } => tilted(TiltedArgs {
            type_label,
            rank,
            from,
            interval,
            ordering,
            dot,
            json,
            checks: !no_checks,
            par,
        }),
        Command::Monk {
            type_label,
            rank,
            w,
            s,
            classical,
            coroot,
            json,
        } => monk(&type_label, rank, &w, s, classical, coroot, json),
        Command::VerifyAll { max_rank, seed } => verify::verify_all(max_rank, seed, par),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn root_system(type_label: &str, rank: usize) -> Result<Arc<RootSystem>, UsageError> {
    let t: TypeLabel = type_label.parse()?;
    Ok(Arc::new(RootSystem::new(t, rank)?))
}

fn weyl_group(type_label: &str, rank: usize) -> Result<Arc<WeylGroup>, UsageError> {
    Ok(Arc::new(WeylGroup::new(root_system(type_label, rank)?)?))
}

/// Parses `"121"`, `"1-2-1"`, `""` or `"e"` into 0-based letters.
pub fn parse_word(word: &str, rank: usize) -> Result<Vec<usize>, UsageError> {
    let word = word.trim();
    if word.is_empty() || word == "e" {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = if word.contains('-') {
        word.split('-').collect()
    } else {
        word.split("").filter(|s| !s.is_empty()).collect()
    };
    parts
        .into_iter()
        .map(|p| match p.parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => Ok(i - 1),
            _ => Err(UsageError(format!(
                "bad letter {p:?} in word {word:?} (rank {rank})"
            ))),
        })
        .collect()
}

fn element(g: &WeylGroup, word: &str) -> Result<usize, UsageError> {
    Ok(g.from_word(&parse_word(word, g.rank())?)?)
}

fn print_json(v: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    );
}

fn roots(type_label: &str, rank: usize, json: bool) -> Outcome {
    let rs = root_system(type_label, rank)?;
    if json {
        print_json(&rs.to_json());
        return Ok(true);
    }
    println!("{}: {} positive roots", rs.name(), rs.num_positive_roots());
    for (i, r) in rs.positive_roots().iter().enumerate() {
        println!(
            "{:>4}  {:<24} height {:>2}  {:?}",
            i + 1,
            r.to_string(),
            rs.height(i),
            rs.length_class(i)
        );
    }
    Ok(true)
}

fn report_ybe(r: &YbeReport, json: bool) -> bool {
    if json {
        print_json(&serde_json::to_value(r).expect("report serializes"));
    } else {
        println!(
            "{}: {} subgroups, {} coset blocks, {} ({} ms)",
            r.group,
            r.subgroup_count,
            r.checked,
            if r.passed() { "PASS" } else { "FAIL" },
            r.elapsed_ms
        );
        for f in &r.failures {
            println!(
                "  {} subgroup {:?}, coset of {}: entry ({}, {}) is {} vs {}",
                f.subtype, f.subgroup, f.coset_representative, f.row, f.column, f.lhs, f.rhs
            );
        }
    }
    r.passed()
}

#[allow(clippy::too_many_arguments)]
fn ybe(
    type_label: &str,
    rank: usize,
    symbolic: bool,
    seed: u64,
    family: Family,
    identity_coset: bool,
    json: bool,
    par: Parallelism,
) -> Outcome {
    let g = weyl_group(type_label, rank)?;
    let rs = g.root_system();
    let opts = YbeOptions {
        scope: if identity_coset {
            tilted_bruhat::ybe::Scope::IdentityCoset
        } else {
            tilted_bruhat::ybe::Scope::AllCosets
        },
        maximal_only: false,
        parallelism: par,
    };
    let mut rng = random::rng(seed);
    let report = match (family, symbolic) {
        (Family::Mixed, true) => check_ybe(
            &r_family(&mixed_family(&g, &symbols::mixed_params(rs))),
            &opts,
        ),
        (Family::Mixed, false) => check_ybe(
            &r_family(&mixed_family(&g, &random::mixed_params(rs, &mut rng))),
            &opts,
        ),
        (Family::Quantum, true) => check_ybe(
            &r_family(&quantum_family(
                &g,
                &symbols::quantum_polynomial_function(rank),
            )),
            &opts,
        ),
        (Family::Quantum, false) => check_ybe(
            &r_family(&quantum_family(&g, &random::multiplicative(rank, &mut rng))),
            &opts,
        ),
        (Family::Yang, true) => {
            let x: Vec<RationalFunction> = (0..rank)
                .map(|i| RationalFunction::var(Var::new(&format!("x_{}", i + 1))))
                .collect();
            let ks = RationalFunction::var(symbols::kappa_short());
            let kl = RationalFunction::var(symbols::kappa_long());
            check_ybe(&yang_family(&g, &x, (&ks, &kl))?, &opts)
        }
        (Family::Yang, false) => {
            // positive pairings with the simple roots keep every <x, alpha> nonzero
            let x: Vec<Rational> = (0..rank)
                .map(|_| random::small_rational(&mut rng))
                .collect();
            let (ks, kl) = (
                random::small_rational(&mut rng),
                random::small_rational(&mut rng),
            );
            check_ybe(&yang_family(&g, &x, (&ks, &kl))?, &opts)
        }
    };
    Ok(report_ybe(&report, json))
}

fn equations(type2: &str, symbolic: bool, seed: u64) -> Outcome {
    let (t, n) = match type2.trim().to_ascii_uppercase().as_str() {
        "A2" => (TypeLabel::A, 2),
        "B2" => (TypeLabel::B, 2),
        "G2" => (TypeLabel::G, 2),
        other => {
            return Err(UsageError(format!(
                "equations need A2, B2 or G2, got {other:?}"
            )))
        }
    };
    let rs = RootSystem::new(t, n)?;
    let sub = rs
        .dihedral_subsystems(true)
        .into_iter()
        .find(|s| s.subtype != DihedralType::A1xA1)
        .expect("rank-two system is its own maximal subsystem");
    let report = if symbolic {
        check_system(&rs, &sub, &symbols::mixed_params(&rs))
    } else {
        let p: ParamSet<Rational> = random::mixed_params(&rs, &mut random::rng(seed));
        check_system(&rs, &sub, &p)
    };
    for (name, ok) in &report.equations {
        println!("{:<14} {}", name, if *ok { "PASS" } else { "FAIL" });
    }
    Ok(report.passed())
}

struct TiltedArgs {
    type_label: String,
    rank: usize,
    from: Option<String>,
    interval: Option<Vec<String>>,
    ordering: Option<String>,
    dot: Option<PathBuf>,
    json: Option<PathBuf>,
    checks: bool,
    par: Parallelism,
}

fn tilted(a: TiltedArgs) -> Outcome {
    let g = weyl_group(&a.type_label, a.rank)?;
    let ordering = match &a.ordering {
        Some(w) => g.reflection_ordering_from_word(&parse_word(w, a.rank)?)?,
        None => g.default_reflection_ordering(),
    };
    let d = TiltedDigraph::with_parallelism(&g, ordering, a.par)?;
    let name = |w: usize| g.word_string(w);
    println!(
        "{}: {} elements, {} edges ({} down), ordering {}",
        g.name(),
        d.size(),
        d.edges().len(),
        d.edges().iter().filter(|e| e.down).count(),
        d.ordering()
            .order()
            .iter()
            .map(|&t| g.root_system().root(t).to_string())
            .collect::<Vec<_>>()
            .join(" < ")
    );

    let (dot, json) = if let Some(pair) = &a.interval {
        let (u, v) = (element(&g, &pair[0])?, element(&g, &pair[1])?);
        let p = d.interval(u, v);
        println!(
            "D({}, {}): {} elements, length {}",
            name(u),
            name(v),
            p.len(),
            d.distance(u, v)
        );
        print_ranks(&p, &name);
        (p.to_dot(name), p.to_json(name))
    } else if let Some(w) = &a.from {
        let u = element(&g, w)?;
        let p = d.tilted_order(u);
        println!(
            "D_{}(W): {} ranks, {}",
            name(u),
            (0..p.len()).map(|x| p.rank(x)).max().unwrap_or(0) + 1,
            match p.top() {
                Some(t) => format!("maximum {}", name(p.elements()[t])),
                None => "no maximum".to_string(),
            }
        );
        print_ranks(&p, &name);
        (p.to_dot(name), p.to_json(name))
    } else {
        (d.to_dot(name), d.to_json(name))
    };
    if let Some(path) = &a.dot {
        fs::write(path, dot)?;
    }
    if let Some(path) = &a.json {
        fs::write(path, serde_json::to_string_pretty(&json)? + "\n")?;
    }
    if !a.checks {
        return Ok(true);
    }
    let mut ok = true;
    let mut line = |label: &str, pass: bool| {
        ok &= pass;
        println!("{label:<28} {}", if pass { "PASS" } else { "FAIL" });
    };
    line("strongly connected", d.is_strongly_connected());
    line(
        "product identity",
        d.check_product_identity(a.par).is_empty(),
    );
    line(
        "unique monotone paths",
        d.check_monotone_paths(a.par).passed(),
    );
    line("diamond completion", d.check_diamonds(a.par).passed());
    let orders: Vec<usize> = match &a.from {
        Some(w) => vec![element(&g, w)?],
        None => (0..d.size()).collect(),
    };
    let shellable = a.par.map(orders.len(), |k| {
        let p = d.tilted_order(orders[k]);
        p.is_lower_eulerian() && p.el_shelling_check().passed()
    });
    line("lower Eulerian, EL-shellable", shellable.iter().all(|&b| b));
    Ok(ok)
}

fn print_ranks(p: &tilted_bruhat::poset::GradedPoset, name: &impl Fn(usize) -> String) {
    let top = (0..p.len()).map(|x| p.rank(x)).max().unwrap_or(0);
    for r in 0..=top {
        let words: Vec<String> = (0..p.len())
            .filter(|&x| p.rank(x) == r)
            .map(|x| name(p.elements()[x]))
            .collect();
        println!("  rank {r}: {}", words.join(" "));
    }
}

fn monk(
    type_label: &str,
    rank: usize,
    w: &str,
    s: usize,
    classical: bool,
    coroot: bool,
    json: bool,
) -> Outcome {
    let g = weyl_group(type_label, rank)?;
    let w = element(&g, w)?;
    if !(1..=rank).contains(&s) {
        return Err(UsageError(format!(
            "simple index {s} out of range 1..={rank}"
        )));
    }
    let pairing = if coroot {
        Pairing::Coroot
    } else {
        Pairing::Root
    };
    let product: SchubertExpression<MultiPoly> = if classical {
        classical_chevalley(&g, w, s - 1, pairing)?
    } else {
        quantum_chevalley(
            &g,
            w,
            s - 1,
            &symbols::quantum_polynomial_function(rank),
            pairing,
        )?
    };
    if json {
        print_json(&serde_json::json!({
            "w": g.word_string(w),
            "s": s,
            "pairing": if coroot { "coroot" } else { "root" },
            "terms": product.to_json(&g),
        }));
    } else {
        println!(
            "[{}] * [s{}] = {}",
            g.word_string(w),
            s,
            product.display(&g)
        );
    }
    Ok(true)
}
