use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};

use anyhow::{bail, Context, Result};
use dagconvex::enumeration::{visit_brute, visit_cc_extension};
use dagconvex::families::{gen_dt, gen_gi, DtLabels};
use dagconvex::io::{parse_graph, write_edge_list};
use dagconvex::report::format_ratio;
use dagconvex::{
    check_convex, convex_hull, count_cc_within, count_cc_within_containing, find_non_cut_endpoints,
    Digraph, EnumerationReport, FamilySpec, SetClass, SizeBoundTable, VertexSet, BRUTE_FORCE_MAX_N,
    EXTENSION_MAX_N,
};
use serde::Serialize;

use crate::args::{
    ClassArg, Cli, Command, FamilyKind, Format, GenArgs, InputArgs, SetArgs, StatsArgs, TrendArgs,
    TrendFamily, VerifyArgs,
};
use crate::table::Table;

/// Runs one subcommand. `Ok(false)` means a requested check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let caps = Caps::new(cli.max_n);
    match &cli.command {
        Command::Gen(args) => gen(args, cli.seed),
        Command::Stats(args) => stats(args, cli.seed, &caps),
        Command::Verify(args) => verify(args, cli.seed, &caps),
        Command::CheckConvex(args) => check(args),
        Command::Hull(args) => hull(args),
        Command::Trend(args) => trend(args, &caps),
    }
}

struct Caps {
    brute: usize,
    extension: usize,
    overridden: bool,
}

impl Caps {
    fn new(max_n: Option<usize>) -> Self {
        match max_n {
            Some(n) => Caps {
                brute: n,
                extension: n,
                overridden: true,
            },
            None => Caps {
                brute: BRUTE_FORCE_MAX_N,
                extension: EXTENSION_MAX_N,
                overridden: false,
            },
        }
    }

    fn warn(&self, n: usize, default: usize, what: &str) {
        if self.overridden && n > default {
            eprintln!("warning: {what} on n = {n} exceeds the default cap {default}");
        }
    }

    fn brute(&self, d: &Digraph, class: SetClass) -> Result<EnumerationReport> {
        self.warn(d.order(), BRUTE_FORCE_MAX_N, "subset scan");
        Ok(visit_brute(d, class, self.brute, |_| {})?)
    }

    fn extension(&self, d: &Digraph) -> Result<EnumerationReport> {
        self.warn(d.order(), EXTENSION_MAX_N, "extension enumeration");
        Ok(visit_cc_extension(d, None, self.extension, |_| {})?)
    }

    /// Connected convex sets use the extension enumerator on connected
    /// inputs and the subset scan otherwise.
    fn report(&self, d: &Digraph, class: SetClass) -> Result<EnumerationReport> {
        match class {
            SetClass::ConnectedConvex if d.is_connected() => self.extension(d),
            _ => self.brute(d, class),
        }
    }
}

fn print(text: &str) -> Result<()> {
    io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .context("writing to stdout")
}

fn gen(args: &GenArgs, seed: u64) -> Result<bool> {
    let spec = match args.family {
        FamilyKind::Dt => FamilySpec::Dt { t: args.param },
        FamilyKind::Gi => FamilySpec::Gi { i: args.param },
        FamilyKind::Path => FamilySpec::Path { n: args.param },
        FamilyKind::Random => FamilySpec::Random {
            n: args.param,
            p: args.p,
            seed,
        },
    };
    let d = spec.generate()?;
    let text = write_edge_list(&d, &[format!("family: {spec}")]);
    match &args.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print(&text)?,
    }
    Ok(true)
}

struct Input {
    digraph: Digraph,
    spec: Option<FamilySpec>,
}

fn parse_family(raw: &str, seed: u64) -> Result<FamilySpec> {
    let raw = if raw.starts_with("random:") && raw.split(':').count() == 3 {
        format!("{raw}:{seed}")
    } else {
        raw.to_string()
    };
    Ok(raw.parse()?)
}

fn load(input: &InputArgs, seed: u64) -> Result<Input> {
    match (&input.file, &input.family) {
        (Some(path), None) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let digraph =
                parse_graph(&text).with_context(|| format!("parsing {}", path.display()))?;
            Ok(Input {
                digraph,
                spec: None,
            })
        }
        (None, Some(raw)) => {
            let spec = parse_family(raw, seed)?;
            Ok(Input {
                digraph: spec.generate()?,
                spec: Some(spec),
            })
        }
        _ => bail!("give exactly one input: a FILE or --family SPEC"),
    }
}

fn load_file(path: &std::path::Path) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Serialize)]
struct HistogramRow {
    class: &'static str,
    k: usize,
    count: u64,
    bound: u64,
    pass: bool,
}

fn stats(args: &StatsArgs, seed: u64, caps: &Caps) -> Result<bool> {
    let input = load(&args.input, seed)?;
    let d = &input.digraph;
    let classes: &[SetClass] = match args.class {
        ClassArg::Co => &[SetClass::Convex],
        ClassArg::Cc => &[SetClass::ConnectedConvex],
        ClassArg::Both => &[SetClass::Convex, SetClass::ConnectedConvex],
    };
    let reports = classes
        .iter()
        .map(|&c| caps.report(d, c))
        .collect::<Result<Vec<_>>>()?;

    match args.format.format() {
        Format::Json => {
            let mut text = if let [single] = &reports[..] {
                serde_json::to_string_pretty(single)?
            } else {
                serde_json::to_string_pretty(&reports)?
            };
            text.push('\n');
            print(&text)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            for r in &reports {
                let n = r.order();
                for k in 1..=n {
                    let count = r.count_of_size(k);
                    let bound = (n - k + 1) as u64;
                    w.serialize(HistogramRow {
                        class: r.class().short(),
                        k,
                        count,
                        bound,
                        pass: count >= bound,
                    })?;
                }
            }
            w.flush()?;
        }
        Format::Human => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let s = r.statistics()?;
                let _ = writeln!(out, "class    {} ({})", r.class(), r.class().short());
                let _ = writeln!(out, "n        {}", r.order());
                let _ = writeln!(out, "count    {}", s.count);
                let _ = writeln!(out, "sum      {}", s.sum);
                let _ = writeln!(out, "average  {} = {}", s.average, s.average_decimal());
                let mut table = Table::new(["size", "count"]);
                for k in 1..=r.order() {
                    table.row(vec![k.to_string(), r.count_of_size(k).to_string()]);
                }
                out.push_str(&table.render());
            }
            print(&out)?;
        }
    }
    Ok(true)
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn verify(args: &VerifyArgs, seed: u64, caps: &Caps) -> Result<bool> {
    let input = load(&args.input, seed)?;
    let d = &input.digraph;
    if !d.is_connected() {
        bail!("verify needs a connected digraph");
    }
    let mut checks = Vec::new();

    let report = caps.extension(d)?;
    let table = SizeBoundTable::from_report(&report)?;
    let detail = if table.is_tight() {
        "count = n-k+1 at every k".to_string()
    } else if table.pass() {
        "count >= n-k+1 at every k".to_string()
    } else {
        let ks: Vec<String> = table.failures().map(|r| r.k.to_string()).collect();
        format!("count < n-k+1 at k = {}", ks.join(","))
    };
    checks.push(Check {
        name: "size-lower-bound",
        pass: table.pass(),
        detail,
    });

    if d.order() >= 2 {
        let endpoints = find_non_cut_endpoints(d)?;
        let list: Vec<String> = endpoints.iter().map(ToString::to_string).collect();
        checks.push(Check {
            name: "non-cut-endpoints",
            pass: endpoints.len() >= 2,
            detail: format!("{} found: {}", endpoints.len(), list.join(",")),
        });
    }

    if let Some(FamilySpec::Dt { t }) = input.spec {
        let l = DtLabels::new(t);
        let layer = l.inner_layer();
        let expected = 1u64
            .checked_shl(2 * l.r as u32)
            .filter(|_| 2 * l.r < 64)
            .context("2^(2r) overflows")?;
        let anchored = count_cc_within_containing(d, &layer, l.z())?;
        let total = count_cc_within(d, &layer)?;
        checks.push(Check {
            name: "dt-inner-layer",
            pass: anchored == expected && total >= expected,
            detail: format!(
                "{anchored} sets Q+z+Q' (expected 2^{} = {expected}); {total} within Y+z+Y'",
                2 * l.r
            ),
        });
    }

    let all_pass = checks.iter().all(|c| c.pass);
    let mut summary = String::new();
    for c in &checks {
        let _ = writeln!(
            summary,
            "{} {}: {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }

    if args.csv {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        for row in &table.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        eprint!("{summary}");
    } else {
        let mut out = String::new();
        let mut t = Table::new(["k", "count", "bound", "pass"]);
        for r in &table.rows {
            t.row(vec![
                r.k.to_string(),
                r.count.to_string(),
                r.bound.to_string(),
                r.pass.to_string(),
            ]);
        }
        out.push_str(&t.render());
        out.push_str(&summary);
        print(&out)?;
    }

    if !all_pass {
        let label = input.spec.map(|s| format!("family: {s}"));
        eprintln!("failing instance:");
        eprint!(
            "{}",
            write_edge_list(d, &label.into_iter().collect::<Vec<_>>())
        );
    }
    Ok(all_pass)
}

fn load_set(d: &Digraph, labels: &[usize]) -> Result<VertexSet> {
    Ok(d.set(labels.iter().copied())?)
}

fn join(set: &VertexSet) -> String {
    set.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn check(args: &SetArgs) -> Result<bool> {
    let d = load_file(&args.file)?;
    let set = load_set(&d, &args.set)?;
    match check_convex(&d, &set)? {
        None => {
            print(&format!("convex: true\nset: {}\n", join(&set)))?;
            Ok(true)
        }
        Some(w) => {
            let path: Vec<String> = w.path.iter().map(ToString::to_string).collect();
            print(&format!(
                "convex: false\nset: {}\nwitness: {}\n",
                join(&set),
                path.join(" -> ")
            ))?;
            Ok(false)
        }
    }
}

fn hull(args: &SetArgs) -> Result<bool> {
    let d = load_file(&args.file)?;
    let set = load_set(&d, &args.set)?;
    let hull = convex_hull(&d, &set)?;
    print(&format!("{}\n", join(&hull)))?;
    Ok(true)
}

fn sqrt_ratio(avg_num: u64, avg_den: u64, n: usize) -> String {
    format!("{:.6}", avg_num as f64 / avg_den as f64 / (n as f64).sqrt())
}

#[derive(Serialize)]
struct DtRow {
    t: usize,
    r: usize,
    n: usize,
    co: Option<u64>,
    co_sum: Option<u64>,
    co_average_exact: Option<String>,
    co_average: Option<String>,
    co_average_over_sqrt_n: Option<String>,
    cc: u64,
    cc_sum: u64,
    cc_average_exact: String,
    cc_average: String,
    cc_average_over_sqrt_n: String,
}

#[derive(Serialize)]
struct GiRow {
    i: usize,
    n: usize,
    co: u64,
    cc: u64,
    cc_over_co_exact: String,
    cc_over_co: String,
}

fn trend(args: &TrendArgs, caps: &Caps) -> Result<bool> {
    match args.family {
        TrendFamily::Dt => {
            let mut rows = Vec::new();
            for &t in &args.params {
                let (d, l) = gen_dt(t)?;
                let n = d.order();
                let cc = caps.extension(&d)?.statistics()?;
                let co = if !args.cc_only && n <= caps.brute {
                    Some(caps.brute(&d, SetClass::Convex)?.statistics()?)
                } else {
                    None
                };
                let (num, den) = (*cc.average.numer(), *cc.average.denom());
                rows.push(DtRow {
                    t,
                    r: l.r,
                    n,
                    co: co.map(|s| s.count),
                    co_sum: co.map(|s| s.sum),
                    co_average_exact: co.map(|s| s.average.to_string()),
                    co_average: co.map(|s| s.average_decimal()),
                    co_average_over_sqrt_n: co
                        .map(|s| sqrt_ratio(*s.average.numer(), *s.average.denom(), n)),
                    cc: cc.count,
                    cc_sum: cc.sum,
                    cc_average_exact: cc.average.to_string(),
                    cc_average: cc.average_decimal(),
                    cc_average_over_sqrt_n: sqrt_ratio(num, den, n),
                });
            }
            let dash = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
            emit(args.format.format(), &rows, || {
                let mut table = Table::new([
                    "t",
                    "r",
                    "n",
                    "co",
                    "sum_co",
                    "avg_co",
                    "avg_co/sqrt(n)",
                    "cc",
                    "sum_cc",
                    "avg_cc",
                    "avg_cc/sqrt(n)",
                ]);
                for r in &rows {
                    table.row(vec![
                        r.t.to_string(),
                        r.r.to_string(),
                        r.n.to_string(),
                        dash(&r.co.map(|v| v.to_string())),
                        dash(&r.co_sum.map(|v| v.to_string())),
                        dash(&r.co_average),
                        dash(&r.co_average_over_sqrt_n),
                        r.cc.to_string(),
                        r.cc_sum.to_string(),
                        r.cc_average.clone(),
                        r.cc_average_over_sqrt_n.clone(),
                    ]);
                }
                table.render()
            })
        }
        TrendFamily::Gi => {
            let mut rows = Vec::new();
            for &i in &args.params {
                let (d, _) = gen_gi(i)?;
                let co = caps.brute(&d, SetClass::Convex)?.count();
                let cc = caps.report(&d, SetClass::ConnectedConvex)?.count();
                let ratio = num_ratio(cc, co);
                rows.push(GiRow {
                    i,
                    n: d.order(),
                    co,
                    cc,
                    cc_over_co_exact: format!("{}/{}", ratio.0, ratio.1),
                    cc_over_co: format_ratio(cc as u128, co as u128),
                });
            }
            emit(args.format.format(), &rows, || {
                let mut table = Table::new(["i", "n", "co", "cc", "cc/co"]);
                for r in &rows {
                    table.row(vec![
                        r.i.to_string(),
                        r.n.to_string(),
                        r.co.to_string(),
                        r.cc.to_string(),
                        r.cc_over_co.clone(),
                    ]);
                }
                table.render()
            })
        }
    }
}

fn num_ratio(a: u64, b: u64) -> (u64, u64) {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(a, b).max(1);
    (a / g, b / g)
}

fn emit<R: Serialize>(format: Format, rows: &[R], human: impl FnOnce() -> String) -> Result<bool> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(rows)?;
            text.push('\n');
            print(&text)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Human => print(&human())?,
    }
    Ok(true)
}
