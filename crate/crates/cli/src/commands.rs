//! Command implementations shared by the binary and the integration tests.
//!
//! Every command follows the same discipline: derive the parameters, price
//! the workload against the budget before materializing anything, compute,
//! and only then write output. A command that finds a false claim reports
//! the witness and returns `Outcome::Failed` without writing result files.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use terncorr_core::seq::{s_d_direct, spectrum_direct, spectrum_direct_with_decimation};
use terncorr_core::spectrum::{direct_work, quadform_work, spectrum_quadform};
use terncorr_core::{
    decimation_params, make_field, parse_trits, DecimationParams, FieldCtx, TauAnalysis,
};

use crate::checks;
use crate::config::{CliError, Mode, Outcome, OutputFormat, PathChoice, RunConfig, TauSelect};
use crate::output::{self, Meta, RankDistEntry, Row};
use crate::report::{CheckResult, VerificationReport, Witness};
use crate::sampler::sample_taus;

/// Field context plus derived decimation constants for one run.
pub struct Session {
    pub params: DecimationParams,
    pub ctx: FieldCtx,
}

pub fn open_session(cfg: &RunConfig) -> Result<Session, CliError> {
    let params = decimation_params(cfg.k)?;
    let ctx = match &cfg.modulus {
        Some(s) => {
            let m = parse_trits(s)?;
            make_field(params.n, Some(&m))?
        }
        None => make_field(params.n, None)?,
    };
    Ok(Session { params, ctx })
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.mode {
        Mode::Spectrum => cmd_spectrum(cfg),
        Mode::Sample => cmd_sample(cfg),
        Mode::VerifyBound => cmd_verify_bound(cfg),
        Mode::RankDist => cmd_rank_dist(cfg),
        Mode::VerifyLemmas => cmd_verify_lemmas(cfg),
    }
}

fn meta_for(cfg: &RunConfig, s: &Session, d: u128) -> Meta {
    Meta {
        command: cfg.mode.as_str().into(),
        k: cfg.k,
        n: s.params.n,
        d,
        modulus: s.ctx.modulus_string(),
        seed: cfg.seed,
        bound: s.params.bound,
        bound_squared: s.params.bound_squared(),
    }
}

/// How the direct-correlation leg of an auto run is sized.
enum DirectLeg {
    /// Every selected shift fits in the leftover budget.
    Full,
    /// Only a seeded sample of positions into the shift list fits.
    Sampled(Vec<u64>),
    /// Nothing fits; carry the price tag for the report.
    None { needed: u128, remaining: u128 },
}

fn plan_direct_leg(
    tau_count: usize,
    l: u128,
    remaining: u128,
    confirm: usize,
    seed: u64,
) -> Result<DirectLeg, CliError> {
    if direct_work(tau_count as u128, l) <= remaining {
        return Ok(DirectLeg::Full);
    }
    let confirm = confirm.min(tau_count);
    let needed = direct_work(confirm as u128, l);
    if confirm > 0 && needed <= remaining {
        let positions = sample_taus(seed, confirm as u64, tau_count as u128)?;
        return Ok(DirectLeg::Sampled(positions));
    }
    Ok(DirectLeg::None { needed, remaining })
}

/// Writes rows to `--out` (or stdout) in the configured format. The summary
/// line goes wherever the rows do not.
fn emit_rows(cfg: &RunConfig, meta: &Meta, rows: &[Row], summary: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => {
            let file = File::create(path)?;
            let mut w = io::BufWriter::new(file);
            match cfg.format {
                OutputFormat::Csv => output::write_csv(&mut w, rows)?,
                OutputFormat::Json => output::write_json(&mut w, meta, rows)?,
            }
            w.flush()?;
            println!("wrote {} rows to {}", rows.len(), display_path(path));
            println!("{summary}");
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            match cfg.format {
                OutputFormat::Csv => output::write_csv(&mut w, rows)?,
                OutputFormat::Json => output::write_json(&mut w, meta, rows)?,
            }
            w.flush()?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}

fn max_row(rows: &[Row]) -> Option<&Row> {
    rows.iter().max_by_key(|r| r.mag2)
}

fn summary_line(meta: &Meta, rows: &[Row], confirmations: &str) -> String {
    match max_row(rows) {
        Some(m) => format!(
            "k = {}, n = {}, d = {}: max |C_d(tau)|^2 = {} at tau = {} (bound^2 = {}); {}",
            meta.k, meta.n, meta.d, m.mag2, m.tau, meta.bound_squared, confirmations
        ),
        None => format!("k = {}, n = {}, d = {}: no shifts selected", meta.k, meta.n, meta.d),
    }
}

/// Prices the selection against the budget for the chosen route and
/// materializes the shift list only after the gate passes.
fn gated_taus(cfg: &RunConfig, s: &Session) -> Result<Vec<u64>, CliError> {
    let count = cfg.tau.count(s.params.l)?;
    let needed = match cfg.path {
        PathChoice::Direct => direct_work(count, s.params.l),
        PathChoice::Auto | PathChoice::Quadform => quadform_work(count, s.params.n),
    };
    if needed > cfg.budget {
        return Err(CliError::Budget { needed, budget: cfg.budget });
    }
    cfg.tau.materialize(s.params.l, cfg.seed)
}

/// Engine rows plus direct confirmations per the auto policy. Returns the
/// rows, a human summary of the confirmation level, and the first
/// disagreement if one exists.
fn analyzed_rows(
    cfg: &RunConfig,
    s: &Session,
    taus: &[u64],
) -> Result<(Vec<TauAnalysis>, String, Option<Witness>), CliError> {
    let analyses = spectrum_quadform(&s.ctx, &s.params, taus, cfg.budget)?;
    if cfg.path == PathChoice::Quadform {
        return Ok((analyses, "direct confirmation off (--path quadform)".into(), None));
    }
    let qwork = quadform_work(taus.len() as u128, s.params.n);
    let remaining = cfg.budget.saturating_sub(qwork);
    match plan_direct_leg(taus.len(), s.params.l, remaining, cfg.confirm, cfg.seed)? {
        DirectLeg::Full => {
            let entries = spectrum_direct(&s.ctx, &s.params, taus, remaining)?;
            for (e, a) in entries.iter().zip(&analyses) {
                if e.c_d != a.c_d {
                    let w = Witness {
                        tau: Some(e.tau),
                        left: format!("direct {}", e.c_d),
                        right: format!("engine {}", a.c_d),
                    };
                    return Ok((analyses, String::new(), Some(w)));
                }
            }
            let note = format!("all {} shifts confirmed by direct correlation", taus.len());
            Ok((analyses, note, None))
        }
        DirectLeg::Sampled(positions) => {
            for &pos in &positions {
                let i = pos as usize;
                let direct = s_d_direct(&s.ctx, &s.params, taus[i])?;
                if direct != analyses[i].s_d {
                    let w = Witness {
                        tau: Some(taus[i]),
                        left: format!("direct {direct}"),
                        right: format!("engine {}", analyses[i].s_d),
                    };
                    return Ok((analyses, String::new(), Some(w)));
                }
            }
            let note = format!("{} shifts confirmed by direct correlation", positions.len());
            Ok((analyses, note, None))
        }
        DirectLeg::None { needed, remaining } => {
            let note = format!(
                "direct confirmation skipped (needs {needed} operations, {remaining} remain)"
            );
            Ok((analyses, note, None))
        }
    }
}

fn fail_with_witness(context: &str, w: &Witness) -> Outcome {
    match w.tau {
        Some(t) => eprintln!("FAIL {context}: tau = {t}, {} vs {}", w.left, w.right),
        None => eprintln!("FAIL {context}: {} vs {}", w.left, w.right),
    }
    Outcome::Failed
}

fn cmd_spectrum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = open_session(cfg)?;
    let taus = gated_taus(cfg, &s)?;
    let meta = meta_for(cfg, &s, s.params.d);

    if cfg.path == PathChoice::Direct {
        let entries = spectrum_direct(&s.ctx, &s.params, &taus, cfg.budget)?;
        let rows: Vec<Row> = entries
            .iter()
            .map(|e| Row::direct(e.tau, e.c_d.x, e.c_d.y, e.mag2))
            .collect();
        let summary = summary_line(&meta, &rows, "direct route only (no rank columns)");
        emit_rows(cfg, &meta, &rows, &summary)?;
        return Ok(Outcome::Pass);
    }

    let (analyses, confirm_note, mismatch) = analyzed_rows(cfg, &s, &taus)?;
    if let Some(w) = mismatch {
        return Ok(fail_with_witness("route disagreement", &w));
    }
    let rows: Vec<Row> = analyses.iter().map(Row::from_analysis).collect();
    let summary = summary_line(&meta, &rows, &confirm_note);
    emit_rows(cfg, &meta, &rows, &summary)?;
    Ok(Outcome::Pass)
}

fn cmd_sample(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if !matches!(cfg.tau, TauSelect::Sample(_)) {
        return Err(CliError::Config(
            "sample requires --tau sample:N (a seeded random draw)".into(),
        ));
    }
    cmd_spectrum(cfg)
}

fn cmd_verify_bound(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = open_session(cfg)?;
    let bound_sq = s.params.bound_squared();

    // An explicit --decimation bypasses the quadratic-form machinery (it
    // only exists for the family exponent) and tests the bound claim
    // directly against sequence correlation.
    if let Some(dec) = cfg.decimation {
        if cfg.path == PathChoice::Quadform {
            return Err(CliError::Config(
                "--decimation has no quadratic-form route; drop --path quadform".into(),
            ));
        }
        let count = cfg.tau.count(s.params.l)?;
        let needed = direct_work(count, s.params.l);
        if needed > cfg.budget {
            return Err(CliError::Budget { needed, budget: cfg.budget });
        }
        let taus = cfg.tau.materialize(s.params.l, cfg.seed)?;
        let entries = spectrum_direct_with_decimation(&s.ctx, dec, &taus, cfg.budget)?;
        let rows: Vec<Row> = entries
            .iter()
            .map(|e| Row::direct(e.tau, e.c_d.x, e.c_d.y, e.mag2))
            .collect();
        let meta = meta_for(cfg, &s, dec);
        return finish_bound_report(cfg, meta, rows, bound_sq, vec![CheckResult::skipped(
            "dual-route-agreement",
            "no quadratic-form route for an arbitrary decimation",
        )]);
    }

    let taus = gated_taus(cfg, &s)?;
    let meta = meta_for(cfg, &s, s.params.d);

    if cfg.path == PathChoice::Direct {
        let entries = spectrum_direct(&s.ctx, &s.params, &taus, cfg.budget)?;
        let rows: Vec<Row> = entries
            .iter()
            .map(|e| Row::direct(e.tau, e.c_d.x, e.c_d.y, e.mag2))
            .collect();
        return finish_bound_report(cfg, meta, rows, bound_sq, vec![CheckResult::skipped(
            "dual-route-agreement",
            "direct route only (--path direct)",
        )]);
    }

    let (analyses, confirm_note, mismatch) = analyzed_rows(cfg, &s, &taus)?;
    let agreement = match &mismatch {
        Some(w) => CheckResult::fail(
            "dual-route-agreement",
            "direct and quadratic-form values disagree",
            Some(w.clone()),
        ),
        None if confirm_note.starts_with("direct confirmation skipped") => {
            CheckResult::skipped("dual-route-agreement", confirm_note.clone())
        }
        None => CheckResult::pass("dual-route-agreement", confirm_note.clone()),
    };
    let rows: Vec<Row> = analyses.iter().map(Row::from_analysis).collect();
    finish_bound_report(cfg, meta, rows, bound_sq, vec![agreement])
}

/// Assembles the bound check, renders the report, and writes rows if asked.
fn finish_bound_report(
    cfg: &RunConfig,
    meta: Meta,
    rows: Vec<Row>,
    bound_sq: u128,
    mut checks: Vec<CheckResult>,
) -> Result<Outcome, CliError> {
    let bound_check = match max_row(&rows) {
        Some(m) if m.mag2 > bound_sq => CheckResult::fail(
            "bound",
            format!("|C_d(tau)|^2 exceeds {bound_sq}"),
            Some(Witness {
                tau: Some(m.tau),
                left: format!("|C_d|^2 = {}", m.mag2),
                right: format!("bound^2 = {bound_sq}"),
            }),
        ),
        Some(m) => CheckResult::pass(
            "bound",
            format!(
                "max |C_d(tau)|^2 = {} at tau = {} stays within {bound_sq} over {} shifts",
                m.mag2,
                m.tau,
                rows.len()
            ),
        ),
        None => CheckResult::skipped("bound", "no shifts selected"),
    };
    let mut all = vec![bound_check];
    all.append(&mut checks);
    let mut report = VerificationReport::new(meta, all);
    if let Some(m) = max_row(&rows) {
        report.observed_max_mag2 = Some(m.mag2);
        report.max_tau = Some(m.tau);
    }
    print!("{}", report.render_text());
    if let Some(path) = &cfg.out {
        let file = File::create(path)?;
        let mut w = io::BufWriter::new(file);
        match cfg.format {
            OutputFormat::Csv => output::write_csv(&mut w, &rows)?,
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut w, &report).map_err(io::Error::from)?;
                writeln!(w)?;
            }
        }
        w.flush()?;
        println!("wrote {} to {}",
            if cfg.format == OutputFormat::Csv { "rows" } else { "report" },
            display_path(path));
    }
    Ok(if report.all_passed() { Outcome::Pass } else { Outcome::Failed })
}

fn cmd_rank_dist(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.path == PathChoice::Direct {
        return Err(CliError::Config(
            "rank distribution needs the quadratic-form route; drop --path direct".into(),
        ));
    }
    let s = open_session(cfg)?;
    let count = cfg.tau.count(s.params.l)?;
    let needed = quadform_work(count, s.params.n);
    if needed > cfg.budget {
        return Err(CliError::Budget { needed, budget: cfg.budget });
    }
    let taus = cfg.tau.materialize(s.params.l, cfg.seed)?;
    let analyses = spectrum_quadform(&s.ctx, &s.params, &taus, cfg.budget)?;

    let n = s.params.n;
    let mut hist: std::collections::BTreeMap<(usize, usize, i8, i8), u64> = Default::default();
    for a in &analyses {
        let key = (a.q1.rank, a.q2.rank, a.q1.epsilon, a.q2.epsilon);
        if ![n, n - 2, n - 4].contains(&a.q1.rank) || a.q2.rank != n {
            let w = Witness {
                tau: Some(a.tau),
                left: format!("rank_q1 = {}", a.q1.rank),
                right: format!("rank_q2 = {}", a.q2.rank),
            };
            return Ok(fail_with_witness("rank outside allowed set", &w));
        }
        *hist.entry(key).or_default() += 1;
    }
    let entries: Vec<RankDistEntry> = hist
        .iter()
        .map(|(&(r1, r2, e1, e2), &count)| RankDistEntry {
            rank_q1: r1,
            rank_q2: r2,
            eps1: e1,
            eps2: e2,
            count,
        })
        .collect();

    let meta = meta_for(cfg, &s, s.params.d);
    println!(
        "rank/sign distribution over {} shifts (k = {}, n = {}):",
        analyses.len(),
        cfg.k,
        n
    );
    println!("{:>8} {:>8} {:>5} {:>5} {:>10}", "rank_q1", "rank_q2", "eps1", "eps2", "count");
    for e in &entries {
        println!(
            "{:>8} {:>8} {:>5} {:>5} {:>10}",
            e.rank_q1, e.rank_q2, e.eps1, e.eps2, e.count
        );
    }
    if let Some(path) = &cfg.out {
        let file = File::create(path)?;
        let mut w = io::BufWriter::new(file);
        match cfg.format {
            OutputFormat::Csv => output::write_rank_dist_csv(&mut w, &entries)?,
            OutputFormat::Json => output::write_rank_dist_json(&mut w, &meta, &entries)?,
        }
        w.flush()?;
        println!("wrote {} rank classes to {}", entries.len(), display_path(path));
    }
    Ok(Outcome::Pass)
}

fn cmd_verify_lemmas(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.out.is_some() && cfg.format == OutputFormat::Csv {
        return Err(CliError::Config(
            "the lemma report has no CSV form; use --format json".into(),
        ));
    }
    let s = open_session(cfg)?;
    let count = cfg.tau.count(s.params.l)?;
    let qwork = quadform_work(count, s.params.n);
    if qwork > cfg.budget {
        return Err(CliError::Budget { needed: qwork, budget: cfg.budget });
    }
    let taus = cfg.tau.materialize(s.params.l, cfg.seed)?;
    let analyses = spectrum_quadform(&s.ctx, &s.params, &taus, cfg.budget)?;
    let remaining = cfg.budget.saturating_sub(qwork);

    let mut all = checks::identity_checks(cfg.k);
    all.extend(checks::field_checks(&s.ctx, &s.params));
    all.extend(checks::enumeration_checks(&s.ctx, &s.params));
    all.extend(checks::sweep_checks(&s.ctx, &s.params, &taus, &analyses)?);
    all.push(checks::reconstruction_check(
        &s.ctx,
        &s.params,
        &taus,
        &analyses,
        remaining,
        cfg.confirm,
        cfg.seed,
    )?);

    let meta = meta_for(cfg, &s, s.params.d);
    let mut report = VerificationReport::new(meta, all);
    if let Some(m) = analyses.iter().max_by_key(|a| a.mag2) {
        report.observed_max_mag2 = Some(m.mag2);
        report.max_tau = Some(m.tau);
    }
    print!("{}", report.render_text());
    if let Some(path) = &cfg.out {
        let file = File::create(path)?;
        let mut w = io::BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, &report).map_err(io::Error::from)?;
        writeln!(w)?;
        w.flush()?;
        println!("wrote report to {}", display_path(path));
    }
    Ok(if report.all_passed() { Outcome::Pass } else { Outcome::Failed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Mode, RunConfig, TauSelect};

    fn base(mode: Mode, k: u64) -> RunConfig {
        RunConfig::new(mode, k)
    }

    #[test]
    fn session_rejects_bad_input() {
        let mut cfg = base(Mode::Spectrum, 2);
        assert!(matches!(open_session(&cfg), Err(CliError::Core(_))));
        cfg = base(Mode::Spectrum, 1);
        cfg.modulus = Some("1,1,1,1,1".into());
        match open_session(&cfg) {
            Err(CliError::Core(e)) => assert!(e.to_string().contains("primitive")),
            Err(other) => panic!("expected primitivity rejection, got {other}"),
            Ok(_) => panic!("imprimitive modulus accepted"),
        }
    }

    #[test]
    fn budget_gate_fires_before_materialization() {
        let mut cfg = base(Mode::Spectrum, 5);
        cfg.tau = TauSelect::All;
        // 3^20 - 1 shifts of direct work would be astronomically over this
        // budget; the gate must refuse from the count alone.
        cfg.budget = 1_000_000;
        let err = execute(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn direct_path_unavailable_for_rank_dist() {
        let mut cfg = base(Mode::RankDist, 1);
        cfg.path = PathChoice::Direct;
        let err = execute(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn sample_mode_requires_sampled_tau() {
        let cfg = base(Mode::Sample, 1);
        let err = execute(&cfg).unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
    }
}
