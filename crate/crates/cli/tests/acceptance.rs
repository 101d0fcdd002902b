//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ropebound_core::config::RunConfig;
use ropebound_core::diagram::LinkDiagram;
use ropebound_core::lattice::{insert_kink, parse_lattice, project_with, LatticeLink, ProjectOptions, GENERIC_DIRECTIONS};
use ropebound_core::pipeline::{self, Check, KnotInput, VerifyReport};
use ropebound_core::poly::LaurentPoly2;
use ropebound_core::skein::{homfly, kauffman};

use common::oracle;

type Outcome = Result<String, String>;

/// Name, check and optional time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn inputs(ids: &[&str]) -> Vec<KnotInput> {
    common::corpus().iter().filter(|e| ids.is_empty() || ids.contains(&e.id.as_str())).map(KnotInput::from).collect()
}

fn verify(check: Check, ids: &[&str]) -> Result<VerifyReport, String> {
    let (report, errors) = pipeline::run(check, &inputs(ids), &RunConfig::default());
    match errors.first() {
        Some((id, e)) => Err(format!("{id}: {e}")),
        None => Ok(report),
    }
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ropebound"))
        .args(args)
        .env_remove("ROPEBOUND_CORPUS")
        .output()
        .expect("binary runs")
}

fn skein_matches_oracle() -> Outcome {
    let corpus = common::corpus();
    let mut diagrams = 0;
    for e in corpus.iter().filter(|e| e.crossing_number <= 7) {
        for d in [e.diagram.clone(), e.diagram.mirror()] {
            ensure(homfly(&d).unwrap() == oracle::homfly(&d), || format!("HOMFLY of {}", e.id))?;
            ensure(kauffman(&d).unwrap() == oracle::kauffman(&d), || format!("Kauffman of {}", e.id))?;
            diagrams += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let base: Vec<_> = corpus.iter().filter(|e| e.crossing_number <= 5).collect();
    for i in 0..50 {
        let e = base[i % base.len()];
        let v = common::random_variant(&e.diagram, &mut rng, 4);
        ensure(homfly(&v).unwrap() == oracle::homfly(&v), || format!("HOMFLY of variant {i} ({})", e.id))?;
        ensure(kauffman(&v).unwrap() == oracle::kauffman(&v), || format!("Kauffman of variant {i} ({})", e.id))?;
        diagrams += 1;
    }
    Ok(format!("{diagrams} diagrams agree with the full-resolution oracle"))
}

fn unlinks() -> Outcome {
    let dp: LaurentPoly2 = "v^-1*z^-1 - v*z^-1".parse().unwrap();
    let dk: LaurentPoly2 = "v*z^-1 + v^-1*z^-1 - 1".parse().unwrap();
    for n in 1..=4 {
        let u = LinkDiagram::unlink(n);
        ensure(homfly(&u).unwrap() == dp.pow(n as u32 - 1), || format!("HOMFLY of the {n}-unlink"))?;
        ensure(kauffman(&u).unwrap() == dk.pow(n as u32 - 1), || format!("Kauffman of the {n}-unlink"))?;
    }
    Ok("n = 1..4 match the closed forms".into())
}

fn cromwell() -> Outcome {
    let report = verify(Check::Cromwell, &[])?;
    let mut worst = i64::MAX;
    for r in &report.reports {
        let c = r.cromwell.as_ref().ok_or_else(|| format!("{}: no Cromwell record", r.knot))?;
        ensure(c.breadth_v_mod2 as i64 >= r.crossing_number as i64, || {
            format!("{}: breadth {} < Cr {}", r.knot, c.breadth_v_mod2, r.crossing_number)
        })?;
        worst = worst.min(c.breadth_v_mod2 as i64 - r.crossing_number as i64);
    }
    ensure(report.reports.len() == 14, || format!("{} knots checked", report.reports.len()))?;
    Ok(format!("14 knots, minimum slack {worst}"))
}

fn congruence() -> Outcome {
    let report = verify(Check::Congruence, &["3_1", "4_1"])?;
    let mut parts = Vec::new();
    for r in &report.reports {
        let conv = r.kauffman_convention.clone().ok_or_else(|| format!("{}: convention not recorded", r.knot))?;
        ensure(r.framings.len() >= 5, || format!("{}: only {} framings", r.knot, r.framings.len()))?;
        if let Some(f) = r.framings.iter().find(|f| !f.congruence_holds) {
            return Err(format!("{}: fails at framing {}", r.knot, f.framing));
        }
        parts.push(format!("{} ({} framings, {conv})", r.knot, r.framings.len()));
    }
    ensure(report.reports.len() == 2, || "missing knots".into())?;
    Ok(parts.join(", "))
}

fn lemma1() -> Outcome {
    let report = verify(Check::Lemma1, &["3_1", "4_1"])?;
    let mut parts = Vec::new();
    for (r, floor) in report.reports.iter().zip([8, 10]) {
        let (a, b) = (r.alpha.unwrap(), r.beta.unwrap());
        let tested: Vec<_> = r.framings.iter().filter(|f| f.framing != a && f.framing != b).collect();
        ensure(!tested.is_empty(), || format!("{}: no framings tested", r.knot))?;
        for f in &tested {
            ensure(f.breadth_v >= floor, || format!("{}: breadth {} at framing {}", r.knot, f.breadth_v, f.framing))?;
        }
        parts.push(format!("{} ({} framings, breadth >= {floor})", r.knot, tested.len()));
    }
    Ok(parts.join(", "))
}

fn remark1() -> Outcome {
    let report = verify(Check::Lemma1, &[])?;
    let mut done = 0;
    for r in &report.reports {
        if let (Some(a), Some(b)) = (r.alpha, r.beta) {
            let cr = r.crossing_number as i64;
            ensure(b - a >= cr + 2, || format!("{}: beta - alpha = {} < {}", r.knot, b - a, cr + 2))?;
            done += 1;
        }
    }
    ensure(done > 0, || "no exceptional framings computed".into())?;
    Ok(format!("beta - alpha >= Cr + 2 on {done} knots"))
}

fn lattice() -> Outcome {
    let text = std::fs::read_to_string(common::data_dir().join("3_1.lat")).map_err(|e| e.to_string())?;
    let link = parse_lattice(&text).map_err(|e| e.to_string())?;
    let knot = &link.components()[0];
    ensure(knot.len() == 24, || format!("shipped trefoil has {} edges", knot.len()))?;
    ensure(knot.scale2().len() == 48, || "scale2 length".into())?;
    let pushed = knot.pushoff_diagonal();
    ensure(pushed.length() == 96, || format!("pushoff length {}", pushed.length()))?;
    let opts = ProjectOptions::default();
    let lk = |l: &LatticeLink, dir: [f64; 3]| -> Result<i64, String> {
        let d = project_with(l, dir, &opts).map_err(|e| e.to_string())?;
        d.linking_number(0, 1).map_err(|e| e.to_string())
    };
    for sign in [1, -1] {
        let kinked = insert_kink(&pushed, sign).map_err(|e| e.to_string())?;
        ensure(kinked.link.length() == 104, || format!("kink {sign:+}: length {}", kinked.link.length()))?;
        for dir in GENERIC_DIRECTIONS {
            let shift = lk(&kinked.link, dir)? - lk(&pushed, dir)?;
            ensure(shift == sign, || format!("kink {sign:+}: linking shift {shift} along {dir:?}"))?;
        }
    }
    Ok("24 -> 48, pushoff 96, kinks +8 with lk shift +-1 in 3 directions".into())
}

fn theorem() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out_dir = dir.path().to_str().unwrap();
    let plain = cli(&["verify", "theorem", "--knot", "3_1", "--out", out_dir]);
    let improved = cli(&["verify", "theorem", "--knot", "3_1", "--improved-constants", "--out", out_dir]);
    for (o, name) in [(&plain, "plain"), (&improved, "--improved-constants")] {
        ensure(o.status.success(), || format!("{name} run exited with {:?}", o.status.code()))?;
    }
    let text = String::from_utf8_lossy(&plain.stdout);
    let extra = String::from_utf8_lossy(&improved.stdout);
    for needle in ["4l+6 = 102 >= Cr = 3: true", "<= 4l+8 = 104", "R >= 24/14", "R >= 3/59.5"] {
        ensure(text.contains(needle), || format!("output lacks `{needle}`"))?;
    }
    for needle in ["R >= 24/12", "R >= 3/51"] {
        ensure(extra.contains(needle), || format!("improved output lacks `{needle}`"))?;
        ensure(!text.contains(needle), || format!("plain output has `{needle}`"))?;
    }
    Ok("102 >= 3, mfw <= 104, R >= 24/14 and 3/59.5 (24/12 and 3/51 improved)".into())
}

fn run_all(out: &Path) -> Result<(), String> {
    for check in Check::ALL {
        let o = cli(&["verify", check.name(), "--seed", "7", "--out", out.to_str().unwrap()]);
        ensure(o.status.success(), || format!("{check} exited with {:?}", o.status.code()))?;
    }
    Ok(())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_all(&a)?;
    run_all(&b)?;
    let mut files = 0;
    for entry in std::fs::read_dir(&a).map_err(|e| e.to_string())? {
        let name = entry.map_err(|e| e.to_string())?.file_name();
        let x = std::fs::read(a.join(&name)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.join(&name)).map_err(|e| format!("{name:?}: {e}"))?;
        ensure(x == y, || format!("{name:?} differs"))?;
        files += 1;
    }
    ensure(files == 2 * Check::ALL.len(), || format!("{files} report files"))?;
    Ok(format!("{files} report files byte-identical across two runs"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("skein polynomials match the oracle", skein_matches_oracle, Some(60)),
        ("unlink closed forms", unlinks, None),
        ("Cromwell bound on the corpus", cromwell, Some(600)),
        ("Rudolph congruence", congruence, Some(1800)),
        ("breadth bound off the exceptional framings", lemma1, None),
        ("gap between the exceptional framings", remark1, None),
        ("lattice constructions", lattice, Some(60)),
        ("theorem chain via the CLI", theorem, None),
        ("deterministic reports", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(s) => Err(format!("took longer than {s} s")),
            (o, _) => o,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {status} {name}: {detail} [{:.2} s]", i + 1, took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
