use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use critcenter::io::{
    a_chi_to_json, chi_to_json, element_to_json, parse_chi, parse_scalar, report_to_json,
    table_to_json, to_pretty,
};
use critcenter::sample;
use critcenter::shift::{
    a_chi_generators_from, apply_automorphism, center_generators, jacobian_rank, random_point,
    rho_chi, selected_symbols, Chi,
};
use critcenter::suga::{delta_ladder, phi_table, tau_cross_check};
use critcenter::verify::{
    annihilation_check, centrality_check, commutativity_check, rered_consistency, Report,
    SMaxPolicy, Status,
};
use critcenter::{Element, LieContext, Pyramid, Rat};

const RERED_SAMPLES: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "critcenter",
    version,
    about = "Critical-level Segal-Sugawara vectors for nilpotent centralizers in gl_N"
)]
struct Cli {
    /// Row lengths, non-decreasing, e.g. `1,2,3`.
    #[arg(long, global = true)]
    pyramid: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// JSON file mapping `E[i,j,r]` to rational values.
    #[arg(long, global = true)]
    chi: Option<PathBuf>,

    /// Evaluate the shift series at this nonzero rational.
    #[arg(long, global = true)]
    z: Option<String>,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Largest mode `s` tried in the annihilation check.
    #[arg(long, global = true)]
    s_max: Option<i32>,

    /// Apply `E_ii^(0) -> E_ii^(0) + c λ_i` to the center generators.
    #[arg(long, global = true, allow_hyphen_values = true)]
    automorphism_c: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Basis, nonzero brackets and form values of the centralizer.
    Basis,
    /// Every coefficient of the column-determinant, selected ones marked.
    Vectors,
    /// Annihilation, Δ-ladder, τ cross-check, commutativity and rered reports.
    Verify,
    /// Generators of the center of U(a) and their centrality report.
    Center,
    /// Shift-of-argument generators, commutativity report and Jacobian rank.
    Shift,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

struct Config {
    pyramid: Pyramid,
    format: Format,
    chi: Option<String>,
    z: Option<Rat>,
    seed: u64,
    s_max: Option<i32>,
    automorphism_c: Option<Rat>,
}

/// Rendered output plus whether every check passed.
struct Output {
    text: String,
    ok: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match config(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => return usage(msg),
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => return usage(e),
    };
    let result = pool.install(|| match cli.command {
        Command::Basis => Ok(cmd_basis(&cfg)),
        Command::Vectors => Ok(cmd_vectors(&cfg)),
        Command::Verify => Ok(cmd_verify(&cfg)),
        Command::Center => cmd_center(&cfg),
        Command::Shift => cmd_shift(&cfg),
    });
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage(e),
    }
}

fn config(cli: &Cli) -> Result<Config, String> {
    let text = cli.pyramid.as_deref().ok_or("--pyramid is required")?;
    let pyramid: Pyramid = text.parse().map_err(|e| format!("--pyramid: {e}"))?;
    let z = match &cli.z {
        Some(t) => {
            let z: Rat = parse_scalar(t).map_err(|e| format!("--z: {e}"))?;
            if z == Rat::from_integer(0.into()) {
                return Err("--z must be nonzero".into());
            }
            Some(z)
        }
        None => None,
    };
    let automorphism_c = match &cli.automorphism_c {
        Some(t) => Some(parse_scalar(t).map_err(|e| format!("--automorphism-c: {e}"))?),
        None => None,
    };
    let chi = match &cli.chi {
        Some(path) => Some(
            std::fs::read_to_string(path).map_err(|e| format!("--chi {}: {e}", path.display()))?,
        ),
        None => None,
    };
    if cli.s_max.is_some_and(|s| s < 0) {
        return Err("--s-max must be non-negative".into());
    }
    Ok(Config {
        pyramid,
        format: cli.format,
        chi,
        z,
        seed: cli.seed,
        s_max: cli.s_max,
        automorphism_c,
    })
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data");
    s.push('\n');
    s
}

fn report_text(out: &mut String, rep: &Report<Rat>) {
    let tag = if rep.passed() { "PASS" } else { "FAIL" };
    let _ = write!(
        out,
        "{} [{}]: {tag} ({} pass, {} fail",
        rep.check,
        rep.pyramid,
        rep.count(Status::Pass),
        rep.count(Status::Fail)
    );
    let vacuous = rep.count(Status::Vacuous);
    if vacuous > 0 {
        let _ = write!(out, ", {vacuous} vacuous");
    }
    out.push(')');
    if let Some(seed) = rep.seed {
        let _ = write!(out, " seed {seed}");
    }
    out.push('\n');
    for c in rep.failures() {
        let _ = write!(out, "  FAIL {}", c.generator);
        if let Some(s) = c.s {
            let _ = write!(out, " s={s}");
        }
        if let (Some(k), Some(r)) = (c.k, c.r) {
            let _ = write!(out, " phi[{k},{r}]");
        }
        if let Some(d) = &c.difference {
            let _ = write!(out, " residue {d}");
        }
        out.push('\n');
    }
}

fn reports_output(cfg: &Config, reports: &[Report<Rat>], extra: Value) -> Output {
    let ok = reports.iter().all(Report::passed);
    let text = match cfg.format {
        Format::Json => {
            let mut doc = extra;
            doc["reports"] = reports.iter().map(|r| json!(report_to_json(r))).collect();
            doc["passed"] = json!(ok);
            render(&doc)
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                report_text(&mut out, r);
            }
            out
        }
    };
    Output { text, ok }
}

fn cmd_basis(cfg: &Config) -> Output {
    let p = &cfg.pyramid;
    let basis = p.basis();
    let mut brackets = Vec::new();
    let mut forms = Vec::new();
    for &a in &basis {
        for &b in &basis {
            let br = p.bracket::<Rat>(a, b).expect("basis elements");
            if !br.is_zero() {
                brackets.push((a, b, br));
            }
            let f: Rat = p.form(a, b).expect("basis elements");
            if f != Rat::from_integer(0.into()) {
                forms.push((a, b, f));
            }
        }
    }
    let text = match cfg.format {
        Format::Json => render(&json!({
            "pyramid": p.to_string(),
            "dim": basis.len(),
            "basis": basis.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "brackets": brackets.iter().map(|(a, b, br)| json!({
                "a": a.to_string(),
                "b": b.to_string(),
                "result": br.terms.iter()
                    .map(|(g, c)| (g.to_string(), Value::String(c.to_string())))
                    .collect::<serde_json::Map<_, _>>(),
            })).collect::<Vec<_>>(),
            "form": forms.iter().map(|(a, b, f)| json!({
                "a": a.to_string(),
                "b": b.to_string(),
                "value": f.to_string(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!("pyramid {p}, dim {}\n", basis.len());
            for g in &basis {
                let _ = writeln!(out, "{g}");
            }
            out.push_str("brackets:\n");
            for (a, b, br) in &brackets {
                let _ = writeln!(out, "[{a}, {b}] = {br}");
            }
            out.push_str("form:\n");
            for (a, b, f) in &forms {
                let _ = writeln!(out, "<{a}, {b}> = {f}");
            }
            out
        }
    };
    Output { text, ok: true }
}

fn cmd_vectors(cfg: &Config) -> Output {
    let table = phi_table::<Rat>(&cfg.pyramid);
    let text = match cfg.format {
        Format::Json => to_pretty(&table_to_json(&table)) + "\n",
        Format::Text => {
            let mut out = String::new();
            for (k, r) in table.indices() {
                let mark = if table.is_selected(k, r) { " *" } else { "" };
                let _ = writeln!(out, "phi[{k},{r}]{mark} = {}", table.get(k, r));
            }
            out
        }
    };
    Output { text, ok: true }
}

fn cmd_verify(cfg: &Config) -> Output {
    let p = &cfg.pyramid;
    let table = phi_table::<Rat>(p);
    let policy = cfg.s_max.map_or(SMaxPolicy::Degree, SMaxPolicy::Fixed);
    let ctx = LieContext::vacuum(p.clone());
    let labelled: Vec<(String, Element<Rat>)> = table
        .selected_vectors()
        .into_iter()
        .map(|((k, r), e)| (format!("phi[{k},{r}]"), e))
        .collect();
    let mut rng = sample::rng(cfg.seed);
    let samples: Vec<Element<Rat>> = (0..RERED_SAMPLES)
        .map(|_| sample::random_state(&ctx, &mut rng, 3, 3))
        .collect();
    let reports = vec![
        annihilation_check(p, &table, policy),
        delta_ladder(p, &table),
        tau_cross_check(p, &table),
        commutativity_check(&ctx, &labelled),
        rered_consistency(p, &samples, &[0, 1, 2]).with_seed(cfg.seed),
    ];
    reports_output(cfg, &reports, json!({ "pyramid": p.to_string() }))
}

fn cmd_center(cfg: &Config) -> Result<Output, critcenter::Error> {
    let p = &cfg.pyramid;
    let mut gens = center_generators::<Rat>(p);
    if let Some(c) = &cfg.automorphism_c {
        for (_, e) in gens.iter_mut() {
            *e = apply_automorphism(p, e, c)?;
        }
    }
    let labelled: Vec<(String, Element<Rat>)> = gens
        .iter()
        .map(|((k, r), e)| (format!("Phi[{k},{r}]"), e.clone()))
        .collect();
    let report = centrality_check(p, &labelled);
    let out = match cfg.format {
        Format::Json => {
            let mut doc = json!({
                "pyramid": p.to_string(),
                "generators": gens.iter().map(|((k, r), e)| json!({
                    "k": k, "r": r, "element": element_to_json(e),
                })).collect::<Vec<_>>(),
            });
            if let Some(c) = &cfg.automorphism_c {
                doc["automorphism_c"] = json!(c.to_string());
            }
            reports_output(cfg, std::slice::from_ref(&report), doc)
        }
        Format::Text => {
            let mut text = String::new();
            if let Some(c) = &cfg.automorphism_c {
                let _ = writeln!(text, "automorphism c = {c}");
            }
            for (label, e) in &labelled {
                let _ = writeln!(text, "{label} = {e}");
            }
            report_text(&mut text, &report);
            Output {
                text,
                ok: report.passed(),
            }
        }
    };
    Ok(out)
}

fn cmd_shift(cfg: &Config) -> Result<Output, critcenter::Error> {
    let p = &cfg.pyramid;
    let chi: Chi<Rat> = match &cfg.chi {
        Some(text) => parse_chi(p, text)?,
        None => Chi::random(p, cfg.seed),
    };
    let table = phi_table::<Rat>(p);
    let gens = a_chi_generators_from(p, &table, &chi)?;
    let ctx = LieContext::finite(p.clone());
    let labelled: Vec<(String, Element<Rat>)> = gens
        .iter()
        .map(|g| (g.label(), g.element.clone()))
        .collect();
    let mut report = commutativity_check(&ctx, &labelled);
    if cfg.chi.is_none() {
        report = report.with_seed(cfg.seed);
    }
    let evaluated = match &cfg.z {
        Some(z) => {
            let mut out = Vec::new();
            for ((k, r), phi) in table.selected_vectors() {
                out.push(((k, r), rho_chi(p, &phi, &chi)?.evaluate(z)?));
            }
            Some(out)
        }
        None => None,
    };
    let polys: Vec<_> = selected_symbols::<Rat>(p)
        .into_iter()
        .map(|(_, f)| f)
        .collect();
    let rank = jacobian_rank(p, &polys, &random_point(p, cfg.seed));
    let rank_ok = rank == p.big_n();

    let mut out = match cfg.format {
        Format::Json => {
            let mut doc = json!({
                "pyramid": p.to_string(),
                "chi": chi_to_json(&chi),
                "generators": a_chi_to_json(&gens),
                "jacobian_rank": rank,
                "expected_rank": p.big_n(),
            });
            if let (Some(z), Some(ev)) = (&cfg.z, &evaluated) {
                doc["z"] = json!(z.to_string());
                doc["evaluated"] = ev
                    .iter()
                    .map(|((k, r), e)| json!({ "k": k, "r": r, "element": element_to_json(e) }))
                    .collect();
            }
            let mut out = reports_output(cfg, std::slice::from_ref(&report), doc);
            if !rank_ok {
                let mut doc: Value = serde_json::from_str(&out.text).expect("own output");
                doc["passed"] = json!(false);
                out.text = render(&doc);
            }
            out
        }
        Format::Text => {
            let mut text = String::new();
            for g in &gens {
                let _ = writeln!(text, "{} = {}", g.label(), g.element);
            }
            if let (Some(z), Some(ev)) = (&cfg.z, &evaluated) {
                for ((k, r), e) in ev {
                    let _ = writeln!(text, "rho(phi[{k},{r}]) at z={z}: {e}");
                }
            }
            report_text(&mut text, &report);
            let tag = if rank_ok { "PASS" } else { "FAIL" };
            let _ = writeln!(text, "jacobian rank: {rank} of {} {tag}", p.big_n());
            Output {
                text,
                ok: report.passed(),
            }
        }
    };
    out.ok &= rank_ok;
    Ok(out)
}
