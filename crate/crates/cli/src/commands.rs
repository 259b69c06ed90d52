use std::error::Error;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use amocnf::bounds::bounds_table;
use amocnf::implication::{analyze_2cnf, TwoCnfDiagnostics};
use amocnf::regular::{normalize_to_regular, star_analysis_of, structure, ReduceStep, StarReport, StructureReport};
use amocnf::search::{find_minimum, Requirement, SearchResult, SearchSpec};
use amocnf::verify::{
    check_encoding, check_p_conditions, check_prime, classify, dp_advisories, is_full_pc, is_input_pc_with, DpAdvisory,
    FunctionClass, FunctionSpec, PcOptions, PcReport, Witness,
};
use amocnf::{
    generate as build, lower_bound_2cnf, lower_bound_general, parse_dimacs, serialize_dimacs, up_closure, Encoding,
    EncodingKind, PartialAssignment, UpKind,
};
use serde::Serialize;

use crate::report::render;
use crate::{
    AnalyzeArgs, BenchArgs, BoundsArgs, FunctionArg, GenerateArgs, GlobalArgs, ModeArg, ReduceArgs, RequireArg,
    SearchArgs, SearchFunctionArg, VerifyArgs,
};

macro_rules! out {
    ($($arg:tt)*) => {
        emit(&format!($($arg)*))
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        emit(&format!("{}\n", format_args!($($arg)*)))
    };
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => panic!("writing to stdout: {e}"),
        Ok(()) => {}
    }
}

type CmdResult = Result<ExitCode, Box<dyn Error>>;

fn verdict_code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read_encoding(path: &Path) -> Result<Encoding, Box<dyn Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn parse_blocks(text: &str) -> Result<[usize; 4], Box<dyn Error>> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("--blocks: {e}"))?;
    parts
        .try_into()
        .map_err(|_| "--blocks takes exactly four comma-separated sizes".into())
}

#[derive(Serialize)]
struct GenerateResult {
    kind: EncodingKind,
    n: usize,
    auxiliaries: usize,
    clauses: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimacs: Option<String>,
}

pub fn generate_kind(args: &GenerateArgs) -> Result<EncodingKind, Box<dyn Error>> {
    let blocks = args.blocks.as_deref().map(parse_blocks).transpose()?;
    Ok(EncodingKind::from_tag(
        &args.kind,
        args.n,
        blocks,
        args.inner.as_deref(),
    )?)
}

pub fn generate(args: &GenerateArgs, global: &GlobalArgs) -> CmdResult {
    let kind = generate_kind(args)?;
    let enc = build(&kind)?;
    let text = serialize_dimacs(&enc);
    if let Some(path) = &args.out {
        fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if args.json {
        let result = GenerateResult {
            kind,
            n: enc.n(),
            auxiliaries: enc.auxiliaries().len(),
            clauses: enc.size(),
            out: args.out.as_ref().map(|p| p.display().to_string()),
            dimacs: args.out.is_none().then_some(text),
        };
        outln!("{}", render("generate", args, global, &result));
    } else if args.out.is_none() {
        out!("{text}");
    } else {
        outln!(
            "{}: {} inputs, {} auxiliaries, {} clauses",
            kind,
            enc.n(),
            enc.auxiliaries().len(),
            enc.size()
        );
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyResult {
    function: Option<FunctionSpec>,
    class: Option<FunctionClass>,
    mode: ModeArg,
    #[serde(flatten)]
    report: PcReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
}

fn failure_trace(enc: &Encoding, witness: &Witness) -> Option<Vec<String>> {
    let assumptions = match witness {
        Witness::MissedConsequence { assumptions, .. } | Witness::MissedConflict { assumptions } => assumptions.clone(),
        Witness::NotDerived { input, .. } => PartialAssignment::new([enc.input(*input).pos()]).ok()?,
        _ => return None,
    };
    let out = up_closure(enc.formula(), &assumptions);
    let mut lines: Vec<String> = assumptions.lits().iter().map(|l| format!("assume {l}")).collect();
    lines.extend(out.trace.iter().map(|s| s.to_string()));
    let derived: Vec<String> = out.derived.iter().map(|l| l.to_string()).collect();
    lines.push(match out.kind {
        UpKind::Conflict => "conflict".to_string(),
        UpKind::Closure => format!("fixpoint {{{}}}", derived.join(", ")),
    });
    Some(lines)
}

pub fn verify(args: &VerifyArgs, global: &GlobalArgs) -> CmdResult {
    let limits = global.limits();
    let enc = read_encoding(&args.file)?;
    let n = enc.n();
    let needs_function = matches!(args.mode, ModeArg::Enc | ModeArg::InputPc);
    let (function, class) = match args.function {
        _ if !needs_function => (None, None),
        FunctionArg::Amo => (Some(FunctionSpec::amo(n)), None),
        FunctionArg::Eo => (Some(FunctionSpec::eo(n)), None),
        FunctionArg::Auto => {
            let class = classify(&enc, &limits)?;
            let f = match class {
                FunctionClass::Amo => Some(FunctionSpec::amo(n)),
                FunctionClass::Eo => Some(FunctionSpec::eo(n)),
                FunctionClass::Neither => None,
            };
            (f, Some(class))
        }
    };
    let report = match (args.mode, &function) {
        (ModeArg::P, _) => check_p_conditions(&enc, &limits)?,
        (ModeArg::FullPc, _) => is_full_pc(enc.formula(), &limits)?,
        (ModeArg::Prime, _) => check_prime(enc.formula(), &limits)?,
        (ModeArg::Enc, Some(f)) => check_encoding(&enc, f, &limits)?,
        (ModeArg::InputPc, Some(f)) => {
            let options = PcOptions {
                max_inputs: args.max_inputs,
                ..PcOptions::default()
            };
            is_input_pc_with(&enc, f, &limits, &options)?
        }
        (_, None) => PcReport {
            verdict: false,
            witness: None,
            checked_count: 0,
        },
    };
    let trace = if args.trace {
        report.witness.as_ref().and_then(|w| failure_trace(&enc, w))
    } else {
        None
    };
    if let Some(lines) = &trace {
        for line in lines {
            eprintln!("{line}");
        }
    }
    let verdict = report.verdict;
    let result = VerifyResult {
        function,
        class,
        mode: args.mode,
        report,
        trace,
    };
    outln!("{}", render("verify", args, global, &result));
    Ok(verdict_code(verdict))
}

#[derive(Serialize)]
struct AnalyzeResult {
    n: usize,
    auxiliaries: usize,
    clauses: usize,
    is_2cnf: bool,
    p_encoding: PcReport,
    structure: StructureReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    stars: Option<StarReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_cnf: Option<TwoCnfDiagnostics>,
    dp_candidates: Vec<DpAdvisory>,
}

fn describe(r: &AnalyzeResult) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "inputs {}, auxiliaries {}, clauses {}",
        r.n, r.auxiliaries, r.clauses
    );
    match &r.p_encoding.witness {
        None => {
            let _ = writeln!(s, "p-encoding: yes");
        }
        Some(w) => {
            let _ = writeln!(s, "p-encoding: no ({w})");
        }
    }
    let sizes: Vec<String> = r.structure.q_sizes.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "|Q_i|: {}", sizes.join(" "));
    match r.structure.first_failure() {
        None => {
            let _ = writeln!(s, "regular form: yes");
        }
        Some((i, cond)) => {
            let _ = writeln!(s, "regular form: no ({cond} fails at x{i})");
        }
    }
    if let Some(types) = &r.structure.clause_types {
        let _ = writeln!(
            s,
            "type-Q clauses {}, type-R clauses {}",
            types.type_q.len(),
            types.type_r.len()
        );
    }
    if let Some(stars) = &r.stars {
        let c = &stars.count;
        let _ = writeln!(
            s,
            "largest star: literal {} in {} partner sets; |M_{}| = {}, {}·{} {} n-1 = {}, type-R {} {} {} - 2",
            c.g,
            c.star_size,
            c.input,
            c.closure_size,
            c.closure_size,
            c.star_size,
            if c.covers_other_inputs { "≥" } else { "<" },
            r.n - 1,
            c.type_r,
            if c.type_r_suffices { "≥" } else { "<" },
            c.closure_size,
        );
    }
    if let Some(d) = &r.two_cnf {
        let _ = writeln!(
            s,
            "2-CNF: {} equal partner-set pairs, {} triangles, {} positive input occurrences",
            d.equal_pb_pairs.len(),
            d.triangles.len(),
            d.positive_input_occurrences.len()
        );
        if let Some(m) = &d.mantel {
            let _ = writeln!(
                s,
                "partner-set graph: {} vertices, {} edges, 2√n = {:.3}{}",
                m.auxiliaries,
                m.edges,
                m.required,
                if m.tight { " (tight)" } else { "" }
            );
        }
        let bound = d.branch_bound.map_or("-".to_string(), |b| b.to_string());
        let _ = writeln!(s, "recurrence branch: {:?}, size floor {bound}", d.branch);
    }
    for a in &r.dp_candidates {
        let _ = writeln!(
            s,
            "DP candidate: variable {} ({} occurrences, {} -> {} clauses)",
            a.variable.id(),
            a.occurrences,
            a.size_before,
            a.size_after
        );
    }
    s
}

pub fn analyze(args: &AnalyzeArgs, global: &GlobalArgs) -> CmdResult {
    let limits = global.limits();
    let enc = read_encoding(&args.file)?;
    let p_encoding = check_p_conditions(&enc, &limits)?;
    let report = structure(&enc);
    let is_2cnf = enc.formula().is_2cnf();
    let (stars, two_cnf) = if p_encoding.verdict && report.regular {
        let stars = star_analysis_of(&enc, &report)?;
        let two = if is_2cnf {
            Some(analyze_2cnf(&enc, &limits)?)
        } else {
            None
        };
        (Some(stars), two)
    } else {
        (None, None)
    };
    let result = AnalyzeResult {
        n: enc.n(),
        auxiliaries: enc.auxiliaries().len(),
        clauses: enc.size(),
        is_2cnf,
        p_encoding,
        structure: report,
        stars,
        two_cnf,
        dp_candidates: dp_advisories(&enc),
    };
    if args.json {
        outln!("{}", render("analyze", args, global, &result));
    } else {
        out!("{}", describe(&result));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ReduceResult {
    n_before: usize,
    size_before: usize,
    n_after: usize,
    size_after: usize,
    regular: bool,
    steps: Vec<ReduceStep>,
    out: String,
    trace_file: String,
}

pub fn reduce(args: &ReduceArgs, global: &GlobalArgs) -> CmdResult {
    let limits = global.limits();
    let enc = read_encoding(&args.file)?;
    let (out, steps) = normalize_to_regular(&enc, &limits)?;
    fs::write(&args.out, serialize_dimacs(&out)).map_err(|e| format!("{}: {e}", args.out.display()))?;
    let mut trace_path = args.out.clone().into_os_string();
    trace_path.push(".trace");
    let trace: String = steps.iter().map(|s| format!("{}\n", s.rule.tag())).collect();
    fs::write(&trace_path, trace).map_err(|e| format!("{}: {e}", Path::new(&trace_path).display()))?;
    let result = ReduceResult {
        n_before: enc.n(),
        size_before: enc.size(),
        n_after: out.n(),
        size_after: out.size(),
        regular: structure(&out).regular,
        steps,
        out: args.out.display().to_string(),
        trace_file: Path::new(&trace_path).display().to_string(),
    };
    if args.json {
        outln!("{}", render("reduce", args, global, &result));
    } else {
        for s in &result.steps {
            outln!(
                "{s}: n {} -> {}, size {} -> {}",
                s.n_before,
                s.n_after,
                s.size_before,
                s.size_after
            );
        }
        outln!(
            "{} steps; n {} -> {}, size {} -> {}; regular: {}",
            result.steps.len(),
            result.n_before,
            result.n_after,
            result.size_before,
            result.size_after,
            if result.regular { "yes" } else { "no" }
        );
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BoundsCsvRow {
    n: usize,
    lb_general: usize,
    lb_2cnf: usize,
    regular_floor_ceil: Option<usize>,
    size_pairwise: usize,
    size_sequential: usize,
    size_product: usize,
}

pub fn bounds(args: &BoundsArgs, global: &GlobalArgs) -> CmdResult {
    let rows = bounds_table(args.from, args.to)?;
    if args.json {
        #[derive(Serialize)]
        struct BoundsResult<'a> {
            rows: &'a [amocnf::BoundsRow],
        }
        outln!("{}", render("bounds", args, global, &BoundsResult { rows: &rows }));
    } else if args.csv {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        for r in &rows {
            w.serialize(BoundsCsvRow {
                n: r.n,
                lb_general: r.lb_general,
                lb_2cnf: r.lb_2cnf,
                regular_floor_ceil: r.regular_floor_ceil,
                size_pairwise: r.size_pairwise,
                size_sequential: r.size_sequential,
                size_product: r.size_product,
            })?;
        }
        w.flush()?;
    } else {
        outln!(
            "{:>6} {:>10} {:>8} {:>13} {:>9} {:>10} {:>8}",
            "n",
            "lb_general",
            "lb_2cnf",
            "regular_floor",
            "pairwise",
            "sequential",
            "product"
        );
        for r in &rows {
            let floor = r.regular_floor_ceil.map_or("-".to_string(), |v| v.to_string());
            outln!(
                "{:>6} {:>10} {:>8} {:>13} {:>9} {:>10} {:>8}",
                r.n,
                r.lb_general,
                r.lb_2cnf,
                floor,
                r.size_pairwise,
                r.size_sequential,
                r.size_product
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SearchOutput<'a> {
    #[serde(flatten)]
    result: &'a SearchResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimacs: Option<String>,
}

pub fn search(args: &SearchArgs, global: &GlobalArgs) -> CmdResult {
    let function = match args.function {
        SearchFunctionArg::Amo => FunctionSpec::amo(args.n),
        SearchFunctionArg::Eo => FunctionSpec::eo(args.n),
    };
    let require = match args.require {
        RequireArg::Enc => Requirement::Encoding,
        RequireArg::P => Requirement::PEncoding,
        RequireArg::InputPc => Requirement::InputPc,
    };
    let mut spec = SearchSpec::new(function, require, args.max_size);
    spec.unsafe_no_aux = args.unsafe_no_aux;
    let result = find_minimum(&spec)?;
    let dimacs = result.witness().map(serialize_dimacs);
    if args.json {
        let out = SearchOutput {
            result: &result,
            dimacs,
        };
        outln!("{}", render("search", args, global, &out));
    } else {
        match (result.size(), &dimacs) {
            (Some(size), Some(text)) => {
                outln!("size: {size}");
                outln!(
                    "certified minimum: {}",
                    if result.certified { "yes" } else { "no (no auxiliaries)" }
                );
                outln!("nodes explored: {} ({} canonical)", result.nodes, result.checked);
                out!("{text}");
            }
            _ => {
                outln!("no formula within {} clauses", args.max_size);
                outln!("nodes explored: {} ({} canonical)", result.nodes, result.checked);
            }
        }
    }
    Ok(verdict_code(result.size().is_some()))
}

const BENCH_PC_CAP: usize = 9;

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    lb_general: usize,
    lb_2cnf: usize,
    size_pairwise: usize,
    size_sequential: usize,
    size_tree: usize,
    size_product: usize,
    bounds_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pc_pairwise: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pc_sequential: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pc_tree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pc_product: Option<String>,
}

fn pc_status(enc: &Encoding, n: usize, global: &GlobalArgs) -> Result<String, Box<dyn Error>> {
    if n > BENCH_PC_CAP {
        return Ok("skipped (cap)".into());
    }
    let report = is_input_pc_with(enc, &FunctionSpec::amo(n), &global.limits(), &PcOptions::default())?;
    Ok(if report.verdict { "pass" } else { "fail" }.into())
}

pub fn bench(args: &BenchArgs, global: &GlobalArgs) -> CmdResult {
    if args.from < 3 || args.to < args.from {
        return Err(format!("bench needs 3 ≤ from ≤ to, got {}..{}", args.from, args.to).into());
    }
    let mut rows = Vec::new();
    for n in args.from..=args.to {
        let encs = [
            build(&EncodingKind::PairwiseAmo { n })?,
            build(&EncodingKind::SequentialAmo { n })?,
            build(&EncodingKind::TreeAmo { n })?,
            build(&EncodingKind::ProductAmo { n })?,
        ];
        let lb_general = lower_bound_general(n)?;
        let lb_2cnf = lower_bound_2cnf(n)?;
        let bounds_ok = encs.iter().all(|e| e.size() >= lb_general && e.size() >= lb_2cnf);
        let pc = |k: usize| -> Result<Option<String>, Box<dyn Error>> {
            if args.verify_pc {
                Ok(Some(pc_status(&encs[k], n, global)?))
            } else {
                Ok(None)
            }
        };
        rows.push(BenchRow {
            n,
            lb_general,
            lb_2cnf,
            size_pairwise: encs[0].size(),
            size_sequential: encs[1].size(),
            size_tree: encs[2].size(),
            size_product: encs[3].size(),
            bounds_ok,
            pc_pairwise: pc(0)?,
            pc_sequential: pc(1)?,
            pc_tree: pc(2)?,
            pc_product: pc(3)?,
        });
    }
    let ok = rows.iter().all(|r| {
        r.bounds_ok
            && [&r.pc_pairwise, &r.pc_sequential, &r.pc_tree, &r.pc_product]
                .iter()
                .all(|s| s.as_deref() != Some("fail"))
    });
    if args.json {
        #[derive(Serialize)]
        struct BenchResult<'a> {
            all_ok: bool,
            rows: &'a [BenchRow],
        }
        outln!(
            "{}",
            render(
                "bench",
                args,
                global,
                &BenchResult {
                    all_ok: ok,
                    rows: &rows
                }
            )
        );
    } else if args.csv {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        for r in &rows {
            w.serialize(r)?;
        }
        w.flush()?;
    } else {
        for r in &rows {
            let mut line = format!(
                "n={:<4} lb={:<4} lb2={:<4} pairwise={:<6} sequential={:<5} tree={:<5} product={:<5} bounds={}",
                r.n,
                r.lb_general,
                r.lb_2cnf,
                r.size_pairwise,
                r.size_sequential,
                r.size_tree,
                r.size_product,
                if r.bounds_ok { "ok" } else { "VIOLATED" }
            );
            if let Some(p) = &r.pc_product {
                let _ = write!(
                    line,
                    " pc={}/{}/{}/{}",
                    r.pc_pairwise.as_deref().unwrap_or("-"),
                    r.pc_sequential.as_deref().unwrap_or("-"),
                    r.pc_tree.as_deref().unwrap_or("-"),
                    p
                );
            }
            outln!("{line}");
        }
    }
    Ok(verdict_code(ok))
}
