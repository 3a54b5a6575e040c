use std::fs;
use std::io::Write as _;
use std::ops::Range;
use std::path::Path;

use bmw_core::combinatorics::{
    classify_affine, classify_cyclotomic, classify_with_multicharge, enumerate_multipartitions, is_kleshchev,
    IndexPair, Multicharge,
};
use bmw_core::presentation::{
    select_orientation, semi_admissibility_degree, CyclotomicAlgebra, PresentationConfig, StructureAlgebra, Variant,
    YOrientation,
};
use bmw_core::repn::analyze;
use bmw_core::{Field, FieldDescriptor, OmegaMode, Order, ParameterSet, PrimeField, Rationals};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cli::{
    AnalyzeArgs, BuildArgs, ClassifyArgs, ClassifyMode, Command, Format, ParamArgs, SemiArgs, VerifyArgs,
};
use crate::dump::{self, DumpHeader};
use crate::error::{Result, WorkbenchError};
use crate::params::{params_json, ParamInput, RawParams};
use crate::verify::{self, SuiteConfig};

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Build(a) => build(a),
        Command::Classify(a) => classify(a),
        Command::Analyze(a) => analyze_cmd(a),
        Command::Semiadmissible(a) => semiadmissible(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| WorkbenchError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| WorkbenchError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes to `out` when given, else to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())
                .and_then(|_| so.flush())
                .map_err(|source| WorkbenchError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

pub fn param_input(args: &ParamArgs) -> Result<ParamInput> {
    let raw = match &args.params {
        Some(path) => RawParams::from_file_text(&read(path)?)?,
        None => args.raw(),
    };
    raw.validate()
}

fn orientation_name(y: YOrientation) -> &'static str {
    match y {
        YOrientation::X => "x",
        YOrientation::XInverse => "x-inverse",
    }
}

fn build(args: BuildArgs) -> Result<()> {
    let input = param_input(&args.params)?;
    let variant = dump::parse_variant(&args.variant)?;
    match input.field {
        FieldDescriptor::Prime(p) => build_in(PrimeField::new(p)?, &input, variant, &args),
        FieldDescriptor::Rationals => build_in(Rationals, &input, variant, &args),
    }
}

fn build_in<F: Field>(field: F, input: &ParamInput, variant: Variant, args: &BuildArgs) -> Result<()> {
    let p = input.build(&field)?;
    let (config, orientation) = match variant {
        Variant::Bmw => {
            let choice = select_orientation(&p, args.degree_cap);
            let trials: Vec<Value> = choice
                .trials
                .iter()
                .map(|t| {
                    json!({
                        "y": orientation_name(t.y),
                        "dimension": t.dimension,
                        "expected_dimension": t.expected_dimension,
                        "omega_ok": t.omega_ok,
                        "passed": t.passed(),
                    })
                })
                .collect();
            let report = json!({
                "chosen": orientation_name(choice.config.y),
                "validated": choice.validated,
                "trials": trials,
            });
            (choice.config, report)
        }
        Variant::ArikiKoike => (PresentationConfig::default(), Value::Null),
    };
    let a = CyclotomicAlgebra::build(args.n, p, variant, config, args.degree_cap)?;
    let mut report = dump::report_json(&a.report());
    let obj = report.as_object_mut().expect("report is an object");
    obj.insert("n".into(), json!(a.n()));
    obj.insert("r".into(), json!(a.r()));
    obj.insert("field".into(), json!(input.field.to_string()));
    obj.insert("variant".into(), json!(dump::variant_name(variant)));
    obj.insert("params".into(), params_json(a.params()));
    obj.insert("config".into(), dump::config_json(config));
    obj.insert("orientation".into(), orientation);
    if let Some(out) = &args.out {
        write(out, &dump::render(&dump::to_json(&a)))?;
    }
    emit(None, &dump::render(&report))?;
    match a.report().dimension_matches() {
        Some(false) => Err(WorkbenchError::invalid(format!(
            "dimension {} differs from the expected {}",
            a.dim(),
            a.expected_dimension().unwrap_or_default()
        ))),
        _ => Ok(()),
    }
}

fn parse_e(s: &str) -> Result<Order> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Ok(Order::Infinite),
        t => t
            .parse::<u64>()
            .ok()
            .filter(|e| *e >= 2)
            .map(Order::Finite)
            .ok_or_else(|| WorkbenchError::invalid(format!("--e: expected an integer >= 2 or inf, got {s:?}"))),
    }
}

fn parse_window(s: &str) -> Result<Range<i64>> {
    let bad = || WorkbenchError::invalid(format!("--window: expected a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b) = (
        a.trim().parse::<i64>().map_err(|_| bad())?,
        b.trim().parse::<i64>().map_err(|_| bad())?,
    );
    if a >= b {
        return Err(bad());
    }
    Ok(a..b)
}

fn parse_charges(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| WorkbenchError::invalid(format!("--multicharge: bad charge {x:?}")))
        })
        .collect()
}

struct Table {
    mode: &'static str,
    n: usize,
    e: Order,
    omega_all_zero: bool,
    rows: Vec<(usize, String)>,
    caveat: Option<&'static str>,
}

fn render_table(t: &Table, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let entries: Vec<Value> = t.rows.iter().map(|(f, idx)| json!({ "f": f, "index": idx })).collect();
            Ok(dump::render(&json!({
                "mode": t.mode,
                "n": t.n,
                "e": t.e.to_string(),
                "omega_all_zero": t.omega_all_zero,
                "count": t.rows.len(),
                "entries": entries,
                "caveat": t.caveat,
            })))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| WorkbenchError::invalid(format!("csv: {e}"));
            w.write_record(["f", "index"]).map_err(csv_err)?;
            for (f, idx) in &t.rows {
                w.write_record([f.to_string(), idx.clone()]).map_err(csv_err)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| WorkbenchError::invalid(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
    }
}

fn pair_rows(pairs: &[IndexPair]) -> Vec<(usize, String)> {
    pairs.iter().map(|p| (p.f, p.lambda.to_string())).collect()
}

fn classify(args: ClassifyArgs) -> Result<()> {
    let table = match args.mode {
        ClassifyMode::Affine => {
            if args.params.is_given() || args.multicharge.is_some() {
                return Err(WorkbenchError::invalid(
                    "affine mode takes --n, --e, --omega-zero and --window only",
                ));
            }
            let e = parse_e(
                args.e
                    .as_deref()
                    .ok_or_else(|| WorkbenchError::invalid("affine mode needs --e"))?,
            )?;
            let window = args.window.as_deref().map(parse_window).transpose()?;
            let c = classify_affine(args.n, e, args.omega_zero, window)?;
            Table {
                mode: "affine",
                n: args.n,
                e,
                omega_all_zero: args.omega_zero,
                rows: c.entries.iter().map(|(f, m)| (*f, m.render(e))).collect(),
                caveat: Some(c.caveat),
            }
        }
        ClassifyMode::Cyclotomic if args.params.is_given() => {
            if args.e.is_some() || args.omega_zero {
                return Err(WorkbenchError::invalid(
                    "with parameters, e and the vanishing of omega are derived; drop --e and --omega-zero",
                ));
            }
            let input = param_input(&args.params)?;
            match input.field {
                FieldDescriptor::Prime(p) => cyclotomic_table(&input.build(&PrimeField::new(p)?)?, &args)?,
                FieldDescriptor::Rationals => cyclotomic_table(&input.build(&Rationals)?, &args)?,
            }
        }
        ClassifyMode::Cyclotomic => {
            let e = parse_e(args.e.as_deref().ok_or_else(|| {
                WorkbenchError::invalid("cyclotomic mode needs parameters, or --e with --multicharge")
            })?)?;
            let charges = parse_charges(
                args.multicharge
                    .as_deref()
                    .ok_or_else(|| WorkbenchError::invalid("cyclotomic mode with --e needs --multicharge"))?,
            )?;
            let mc = Multicharge::new(e, charges)?;
            Table {
                mode: "cyclotomic",
                n: args.n,
                e,
                omega_all_zero: args.omega_zero,
                rows: pair_rows(&classify_with_multicharge(&mc, args.n, args.omega_zero)?),
                caveat: None,
            }
        }
    };
    emit(args.out.as_deref(), &render_table(&table, args.format)?)
}

fn cyclotomic_table<F: Field>(p: &ParameterSet<F>, args: &ClassifyArgs) -> Result<Table> {
    let mc = match &args.multicharge {
        Some(s) => Multicharge::new(p.e(), parse_charges(s)?)?,
        None => Multicharge::from_params(p)?,
    };
    let pairs = classify_cyclotomic(p, &mc, args.n)?;
    Ok(Table {
        mode: "cyclotomic",
        n: args.n,
        e: p.e(),
        omega_all_zero: p.omega_vanishing_report()?.all_zero,
        rows: pair_rows(&pairs),
        caveat: None,
    })
}

fn analyze_cmd(args: AnalyzeArgs) -> Result<()> {
    let v = dump::parse(&read(&args.dump)?)?;
    let h = dump::header(&v)?;
    let report = match h.field {
        FieldDescriptor::Prime(p) => {
            let f = PrimeField::new(p).map_err(|_| WorkbenchError::invalid("corrupt dump: bad field"))?;
            analyze_in(&f, &h, &dump::load_algebra(&f, &v)?, args.seed)?
        }
        FieldDescriptor::Rationals => analyze_in(&Rationals, &h, &dump::load_algebra(&Rationals, &v)?, args.seed)?,
    };
    emit(args.out.as_deref(), &dump::render(&report))?;
    if args.strict && report["split"] == json!(false) {
        return Err(WorkbenchError::invalid(
            "algebra is not split over its field; block count does not count absolutely simple modules",
        ));
    }
    Ok(())
}

/// Expected number of simple modules, when a classification applies.
fn classification_count<F: Field>(p: &ParameterSet<F>, h: &DumpHeader) -> std::result::Result<usize, String> {
    let mc = Multicharge::from_params(p).map_err(|e| e.to_string())?;
    match (h.variant, p.mode()) {
        (Variant::ArikiKoike, _) => {
            let mut count = 0;
            for lambda in enumerate_multipartitions(h.r, h.n) {
                count += usize::from(is_kleshchev(&lambda, &mc).map_err(|e| e.to_string())?);
            }
            Ok(count)
        }
        (Variant::Bmw, OmegaMode::Admissible) => classify_cyclotomic(p, &mc, h.n)
            .map(|c| c.len())
            .map_err(|e| e.to_string()),
        (Variant::Bmw, _) => Err("no classification for non-admissible parameters".into()),
    }
}

fn analyze_in<F: Field>(field: &F, h: &DumpHeader, a: &StructureAlgebra<F>, seed: u64) -> Result<Value> {
    let p = h
        .params
        .build(field)
        .map_err(|e| WorkbenchError::invalid(format!("corrupt dump: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = analyze(a, &mut rng);
    let rep = &w.report;
    let (count, note) = match classification_count(&p, h) {
        Ok(c) => (Some(c), Value::Null),
        Err(why) => (None, json!(why)),
    };
    let matched = count.map(|c| rep.split && c == rep.blocks.len());
    let note = match (rep.split, note) {
        (false, Value::Null) => {
            json!("not split: blocks are simple components over this field, not absolutely simple modules")
        }
        (_, n) => n,
    };
    Ok(json!({
        "n": h.n,
        "r": h.r,
        "variant": dump::variant_name(h.variant),
        "dim": rep.dim,
        "radical_dim": rep.radical_dim,
        "blocks": rep.blocks,
        "split": rep.split,
        "classification_count": count,
        "match": matched,
        "note": note,
        "seed": seed,
    }))
}

fn semiadmissible(args: SemiArgs) -> Result<()> {
    let input = param_input(&args.params)?;
    let (d, r) = match input.field {
        FieldDescriptor::Prime(p) => semi_in(&input.build(&PrimeField::new(p)?)?, args.degree_cap)?,
        FieldDescriptor::Rationals => semi_in(&input.build(&Rationals)?, args.degree_cap)?,
    };
    emit(
        None,
        &dump::render(&json!({ "d": d, "r": r, "mode": input.mode_name() })),
    )
}

fn semi_in<F: Field>(p: &ParameterSet<F>, cap: Option<usize>) -> Result<(usize, usize)> {
    let config = select_orientation(p, cap).config;
    Ok((semi_admissibility_degree(p, config, cap)?, p.r()))
}

fn verify_cmd(args: VerifyArgs) -> Result<()> {
    if args.suite != "acceptance" {
        return Err(WorkbenchError::invalid(format!(
            "unknown suite {:?}; only acceptance exists",
            args.suite
        )));
    }
    let cfg = SuiteConfig {
        seed: args.seed,
        rho_override: args.rho,
        only: verify::select(&args.only)?,
        jobs: args.jobs,
    };
    let results = verify::run_suite(&cfg);
    for r in &results {
        eprintln!(
            "criterion {} {} {:.2}s (budget {}s)",
            r.id,
            r.name,
            r.elapsed.as_secs_f64(),
            r.budget.as_secs()
        );
    }
    let passed = |r: &verify::CriterionResult| r.passed && r.within_budget();
    let all = results.iter().all(passed);
    let text = match args.format {
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|r| json!({ "id": r.id, "name": r.name, "title": r.title, "passed": passed(r), "detail": r.detail }))
                .collect();
            dump::render(&json!({ "suite": "acceptance", "seed": args.seed, "criteria": rows, "passed": all }))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| WorkbenchError::invalid(format!("csv: {e}"));
            w.write_record(["id", "name", "passed", "detail"]).map_err(csv_err)?;
            for r in &results {
                w.write_record([
                    r.id.to_string(),
                    r.name.to_string(),
                    passed(r).to_string(),
                    r.detail.clone(),
                ])
                .map_err(csv_err)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| WorkbenchError::invalid(format!("csv: {e}")))?;
            String::from_utf8(bytes).expect("csv output is UTF-8")
        }
    };
    emit(args.out.as_deref(), &text)?;
    if all {
        Ok(())
    } else {
        let failed: Vec<&str> = results.iter().filter(|r| !passed(r)).map(|r| r.name).collect();
        Err(WorkbenchError::invalid(format!(
            "criteria failed: {}",
            failed.join(", ")
        )))
    }
}
