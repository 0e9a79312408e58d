use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;

use realcubic::cli::{error_report, h1_command, paper_suite, run_request, suite_table, sweep, to_sorted_json, AnalysisRequest, CliError, OptionsRequest};
use realcubic::verdict::AnalysisOptions;

/// Connectedness and rationality verdicts for real singular cubic threefolds.
///
/// With no mode flag, reads a JSON analysis request from REQUEST (or stdin)
/// and prints the verdict report. With --jobs, REQUEST holds a JSON array of
/// requests and the reports are printed as an array in the same order.
#[derive(Parser, Debug)]
#[command(name = "realcubic", version)]
struct Args {
    /// Request file; `-` or omitted reads stdin.
    request: Option<String>,
    /// Family name, to analyze without a request file.
    #[arg(long)]
    family: Option<String>,
    /// Parameters as `name=value,...` with rational values, used with --family.
    #[arg(long, requires = "family")]
    params: Option<String>,
    /// Run the table of worked examples.
    #[arg(long, conflicts_with_all = ["family", "h1"])]
    suite: bool,
    /// Print the suite table as JSON rows.
    #[arg(long, requires = "suite")]
    json: bool,
    /// H1 of a catalog Galois module (e.g. TwoA5) or a presentation file.
    #[arg(long, value_name = "CASE|FILE", conflicts_with = "family")]
    h1: Option<String>,
    #[arg(long)]
    oracle_resolution: Option<usize>,
    #[arg(long)]
    ade_cap: Option<u32>,
    #[arg(long)]
    strict_4a2: bool,
    /// Starts of the numeric real-singular-point search.
    #[arg(long)]
    singular_starts: Option<usize>,
    /// Sweep mode: analyze an array of requests on this many threads.
    #[arg(long)]
    jobs: Option<usize>,
}

impl Args {
    fn option_overrides(&self) -> OptionsRequest {
        OptionsRequest {
            oracle_resolution: self.oracle_resolution,
            ade_cap: self.ade_cap,
            strict_4a2: self.strict_4a2.then_some(true),
            singular_starts: self.singular_starts,
        }
    }
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(s: impl AsRef<str>) {
    if std::io::stdout().lock().write_all(s.as_ref().as_bytes()).is_err() {
        std::process::exit(0);
    }
}

fn read_input(path: Option<&str>) -> Result<String, CliError> {
    let mut s = String::new();
    match path {
        None | Some("-") => std::io::stdin().read_to_string(&mut s).map(|_| s),
        Some(p) => std::fs::read_to_string(p),
    }
    .map_err(|e| CliError::Parse(format!("reading request: {e}")))
}

fn flag_request(family: &str, params: Option<&str>) -> Result<AnalysisRequest, CliError> {
    let mut req = AnalysisRequest { family: family.to_string(), ..AnalysisRequest::default() };
    for pair in params.unwrap_or("").split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair.split_once('=').ok_or_else(|| CliError::Parse(format!("parameter '{pair}' is not name=value")))?;
        req.params.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(req)
}

fn run(args: &Args) -> Result<ExitCode, CliError> {
    let overrides = args.option_overrides();
    if args.suite {
        let mut options = AnalysisOptions::default();
        if let Some(r) = args.oracle_resolution {
            options.oracle_resolution = r;
        }
        if let Some(c) = args.ade_cap {
            options.ade_cap = c;
        }
        if let Some(s) = args.singular_starts {
            options.singular_starts = s;
        }
        options.strict_4a2 = args.strict_4a2;
        let rows = paper_suite(&options);
        if args.json {
            emit(format!("{}\n", to_sorted_json(&rows)));
        } else {
            emit(suite_table(&rows));
        }
        let failed = rows.iter().filter(|r| !r.matched).count();
        eprintln!("{} rows, {failed} mismatched", rows.len());
        return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    if let Some(arg) = &args.h1 {
        emit(h1_command(arg)?.text());
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(jobs) = args.jobs {
        let text = read_input(args.request.as_deref())?;
        let mut reqs: Vec<AnalysisRequest> = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("request array: {e}")))?;
        for r in &mut reqs {
            r.options = r.options.overlay(&overrides);
        }
        emit(format!("{}\n", to_sorted_json(&sweep(&reqs, jobs))));
        return Ok(ExitCode::SUCCESS);
    }
    let mut req = match &args.family {
        Some(f) => flag_request(f, args.params.as_deref())?,
        None => AnalysisRequest::from_json(&read_input(args.request.as_deref())?)?,
    };
    req.options = req.options.overlay(&overrides);
    let verdict = run_request(&req)?;
    emit(format!("{}\n", to_sorted_json(&verdict)));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.exit_code() == 3 {
                emit(format!("{}\n", to_sorted_json(&error_report(&e))));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
