//! `verify-all`: every check on every type up to a rank bound.

use std::sync::Arc;
use std::time::Instant;

use tilted_bruhat::exec::Parallelism;
use tilted_bruhat::operators::{
    check_quantum_degeneration, mixed_family, quantum_family, r_family, symbols, yang_family,
};
use tilted_bruhat::quantum_monk::{chevalley_via_operators, quantum_chevalley};
use tilted_bruhat::random;
use tilted_bruhat::root_system::{DihedralType, Pairing};
use tilted_bruhat::scalars::Rational;
use tilted_bruhat::tilted::TiltedDigraph;
use tilted_bruhat::weyl::WeylError;
use tilted_bruhat::ybe::{check_system, check_ybe, YbeOptions};
use tilted_bruhat::{RootSystem, TypeLabel, WeylGroup};

use crate::UsageError;

/// Tilted digraph checks are quadratic in |W| and skipped above this.
const TILTED_LIMIT: usize = 400;
/// Building every tilted order and testing EL-shellability is cubic.
const SHELLING_LIMIT: usize = 200;

struct Tally {
    passed: usize,
    failed: usize,
    skipped: usize,
}

impl Tally {
    fn record(&mut self, group: &str, check: &str, start: Instant, ok: bool, detail: String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        println!(
            "{group:<4} {check:<30} {}  {detail} ({:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }

    fn skip(&mut self, group: &str, check: &str, why: &str) {
        self.skipped += 1;
        println!("{group:<4} {check:<30} skip  {why}");
    }
}

fn types_up_to(max_rank: usize) -> Vec<(TypeLabel, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push((TypeLabel::A, n));
        if n >= 2 {
            out.push((TypeLabel::B, n));
        }
        if n >= 3 {
            out.push((TypeLabel::C, n));
        }
        if n >= 4 {
            out.push((TypeLabel::D, n));
        }
        match n {
            2 => out.push((TypeLabel::G, 2)),
            4 => out.push((TypeLabel::F, 4)),
            6..=8 => out.push((TypeLabel::E, n)),
            _ => {}
        }
    }
    out
}

pub fn verify_all(max_rank: usize, seed: u64, par: Parallelism) -> Result<bool, UsageError> {
    if max_rank == 0 {
        return Err(UsageError("max-rank must be at least 1".into()));
    }
    let mut tally = Tally {
        passed: 0,
        failed: 0,
        skipped: 0,
    };
    if max_rank >= 2 {
        rank_two_symbolic(&mut tally);
    }
    for (t, n) in types_up_to(max_rank) {
        let rs = Arc::new(RootSystem::new(t, n)?);
        let name = rs.name();
        let g = match WeylGroup::new(rs) {
            Ok(g) => Arc::new(g),
            Err(WeylError::TooLarge { .. }) => {
                tally.skip(&name, "all", "Weyl group above the enumeration bound");
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        check_group(&g, seed, par, &mut tally);
    }
    println!(
        "{} passed, {} failed, {} skipped",
        tally.passed, tally.failed, tally.skipped
    );
    Ok(tally.failed == 0)
}

fn rank_two_symbolic(tally: &mut Tally) {
    for (t, label) in [
        (TypeLabel::A, "A2"),
        (TypeLabel::B, "B2"),
        (TypeLabel::G, "G2"),
    ] {
        let start = Instant::now();
        let rs = Arc::new(RootSystem::new(t, 2).expect("rank-two types exist"));
        let sub = rs
            .dihedral_subsystems(true)
            .into_iter()
            .find(|s| s.subtype != DihedralType::A1xA1)
            .expect("rank-two system is its own maximal subsystem");
        let params = symbols::mixed_params(&rs);
        let system = check_system(&rs, &sub, &params);
        tally.record(
            label,
            "equation system (symbolic)",
            start,
            system.passed(),
            format!("{} equations", system.equations.len()),
        );
        let start = Instant::now();
        let g = Arc::new(WeylGroup::new(rs).expect("rank-two groups are small"));
        let report = check_ybe(
            &r_family(&mixed_family(&g, &params)),
            &YbeOptions::default(),
        );
        tally.record(
            label,
            "mixed YBE (symbolic)",
            start,
            report.passed(),
            String::new(),
        );
    }
}

fn check_group(g: &Arc<WeylGroup>, seed: u64, par: Parallelism, tally: &mut Tally) {
    let name = g.name();
    let rs = g.root_system();
    let rank = g.rank();
    let opts = YbeOptions {
        parallelism: par,
        ..Default::default()
    };
    let mut rng = random::rng(seed);

    let start = Instant::now();
    let params = random::mixed_params(rs, &mut rng);
    let report = check_ybe(&r_family(&mixed_family(g, &params)), &opts);
    tally.record(
        &name,
        "mixed YBE (random)",
        start,
        report.passed(),
        format!("{} coset blocks", report.checked),
    );
    if rank >= 2 {
        // a simple root lies in a non-commuting rank-two subsystem, so
        // shifting its q must break the equation
        let start = Instant::now();
        let t = rs.simple_root_index(0).expect("rank is positive");
        let bad = check_ybe(
            &r_family(&mixed_family(g, &random::perturbed(&params, t))),
            &opts,
        );
        tally.record(
            &name,
            "perturbed parameters fail",
            start,
            !bad.passed(),
            format!("{} failing subgroups", bad.failures.len()),
        );
    }

    let start = Instant::now();
    let e = random::multiplicative(rank, &mut rng);
    let report = check_ybe(&r_family(&quantum_family(g, &e)), &opts);
    tally.record(
        &name,
        "quantum Bruhat YBE",
        start,
        report.passed(),
        String::new(),
    );

    let start = Instant::now();
    let x: Vec<Rational> = (0..rank)
        .map(|_| random::small_rational(&mut rng))
        .collect();
    let (ks, kl) = (
        random::small_rational(&mut rng),
        random::small_rational(&mut rng),
    );
    let ok = match yang_family(g, &x, (&ks, &kl)) {
        Ok(f) => check_ybe(&f, &opts).passed(),
        Err(_) => false,
    };
    tally.record(&name, "Yang operators YBE", start, ok, String::new());

    if g.size() <= 1000 {
        let start = Instant::now();
        tally.record(
            &name,
            "quantum degeneration",
            start,
            check_quantum_degeneration(g),
            String::new(),
        );
    } else {
        tally.skip(&name, "quantum degeneration", "|W| > 1000");
    }

    let start = Instant::now();
    let mut agree = true;
    for pairing in [Pairing::Root, Pairing::Coroot] {
        for s in 0..rank {
            agree &= par
                .map(g.size(), |w| {
                    quantum_chevalley(g, w, s, &e, pairing).ok()
                        == chevalley_via_operators(g, w, s, &e, pairing).ok()
                })
                .into_iter()
                .all(|b| b);
        }
    }
    tally.record(
        &name,
        "Chevalley formula vs operators",
        start,
        agree,
        String::new(),
    );

    if g.size() > TILTED_LIMIT {
        tally.skip(
            &name,
            "tilted digraph",
            &format!("|W| = {} > {TILTED_LIMIT}", g.size()),
        );
        return;
    }
    let start = Instant::now();
    let d = TiltedDigraph::with_parallelism(g, g.default_reflection_ordering(), par)
        .expect("default ordering has the right size");
    tally.record(
        &name,
        "tilted digraph strongly connected",
        start,
        d.is_strongly_connected(),
        format!("{} edges", d.edges().len()),
    );
    let start = Instant::now();
    let bad = d.check_product_identity(par);
    tally.record(
        &name,
        "ordered product identity",
        start,
        bad.is_empty(),
        String::new(),
    );
    let start = Instant::now();
    let report = d.check_monotone_paths(par);
    tally.record(
        &name,
        "unique monotone paths",
        start,
        report.passed(),
        format!("{} pairs", report.pairs),
    );
    let start = Instant::now();
    let report = d.check_diamonds(par);
    tally.record(
        &name,
        "diamond completion",
        start,
        report.passed(),
        format!("{} configurations", report.configurations),
    );
    if g.size() > SHELLING_LIMIT {
        tally.skip(
            &name,
            "tilted orders shellable",
            &format!("|W| = {} > {SHELLING_LIMIT}", g.size()),
        );
        return;
    }
    let start = Instant::now();
    let ok = par
        .map(d.size(), |u| {
            let p = d.tilted_order(u);
            p.is_lower_eulerian() && p.el_shelling_check().passed()
        })
        .into_iter()
        .all(|b| b);
    tally.record(
        &name,
        "tilted orders shellable",
        start,
        ok,
        format!("{} orders", d.size()),
    );
}
