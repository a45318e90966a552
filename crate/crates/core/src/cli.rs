//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 malformed input,
//! 3 internal assertion (oracle mismatch, torsion in Pic).

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};

use crate::cox::{
    all_subsets_are_faces, arrangement, arrangement_bruteforce, completion_predicate, irrelevant_ideal,
    minimal_nonfaces, pairwise_check, picard_group,
};
use crate::fan::{self, validate, Fan, FanError, ValidationReport};
use crate::homotopy::{analyze, HomotopyError, HomotopyReport};
use crate::rayset::RaySet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "toric-a1",
    version,
    about = "Cox presentations and A1-homotopy reports for smooth complete fans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fan axioms, smoothness and completeness.
    Validate {
        /// Fan JSON file, or `-` for stdin.
        fan: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the homotopy report.
    Analyze {
        fan: String,
        #[arg(long)]
        json: bool,
    },
    /// Write a built-in fan as JSON.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Star-subdivide a cone and write the new fan.
    Blowup {
        fan: String,
        /// Comma-separated ray indices of the cone.
        #[arg(long, value_delimiter = ',', required = true)]
        cone: Vec<usize>,
    },
    /// Cross-check the arrangement and pairwise predicates against brute force.
    OracleCheck { fan: String },
    /// List minimal non-faces with their sizes.
    NonfaceScan { fan: String },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Projective n-space.
    Pn { n: usize },
    /// Hirzebruch surface F_a.
    Hirzebruch { a: u64 },
    /// Kleinschmidt fan with d + 2 rays.
    Kleinschmidt {
        d: usize,
        #[arg(required = true, num_args = 1..)]
        a: Vec<u64>,
    },
}

struct Failure {
    code: i32,
    tag: &'static str,
    msg: String,
}

impl Failure {
    fn malformed(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_MALFORMED,
            tag: "malformed-input",
            msg: msg.into(),
        }
    }

    fn validation(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_VALIDATION,
            tag: "validation",
            msg: msg.into(),
        }
    }

    fn internal(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INTERNAL,
            tag: "internal",
            msg: msg.into(),
        }
    }
}

impl From<FanError> for Failure {
    fn from(e: FanError) -> Failure {
        match e {
            FanError::Malformed(_) | FanError::InvalidParameters(_) | FanError::NotAFace(_) | FanError::TooSmall(_) => {
                Failure::malformed(e.to_string())
            }
            FanError::RayCollision(_) | FanError::Invalid(_) => Failure::validation(e.to_string()),
        }
    }
}

impl From<HomotopyError> for Failure {
    fn from(e: HomotopyError) -> Failure {
        match e {
            HomotopyError::NotSmoothProper(_) => Failure::validation(e.to_string()),
            HomotopyError::Cox(_) => Failure::internal(e.to_string()),
        }
    }
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "error[usage]: {text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdin) {
        Ok((out, code)) => {
            let _ = stdout.write_all(out.as_bytes());
            code
        }
        Err(f) => {
            let first_line = f.msg.lines().next().unwrap_or("").to_string();
            let _ = writeln!(stderr, "error[{}]: {}", f.tag, first_line);
            f.code
        }
    }
}

fn read_fan(path: &str, stdin: &mut dyn Read) -> Result<Fan, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::malformed(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::malformed(format!("cannot read {path}: {e}")))?;
    }
    Ok(Fan::from_json(&text)?)
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> Result<(String, i32), Failure> {
    match cmd {
        Command::Validate { fan, json } => {
            let f = read_fan(&fan, stdin)?;
            let report = validate(&f);
            let out = if json {
                report.to_json() + "\n"
            } else {
                render_validation(&report)
            };
            let code = if report.is_valid_fan && report.is_smooth {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            };
            Ok((out, code))
        }
        Command::Analyze { fan, json } => {
            let f = read_fan(&fan, stdin)?;
            let report = analyze(&f)?;
            let out = if json {
                report.to_json() + "\n"
            } else {
                render_report(&report)
            };
            Ok((out, EXIT_OK))
        }
        Command::Construct { family } => {
            let f = match family {
                Family::Pn { n } => fan::projective_space(n)?,
                Family::Hirzebruch { a } => fan::hirzebruch(a)?,
                Family::Kleinschmidt { d, a } => fan::kleinschmidt(d, &a)?,
            };
            Ok((f.to_json() + "\n", EXIT_OK))
        }
        Command::Blowup { fan, cone } => {
            let f = read_fan(&fan, stdin)?;
            let report = validate(&f);
            if !(report.is_valid_fan && report.is_smooth) {
                return Err(Failure::validation(format!(
                    "input fan is invalid: {}",
                    report.summary()
                )));
            }
            let sigma = RaySet::from_indices(cone.iter().copied());
            if sigma.len() != cone.len() {
                return Err(Failure::malformed("cone repeats a ray index"));
            }
            let out = fan::star_subdivision(&f, sigma)?;
            Ok((out.to_json() + "\n", EXIT_OK))
        }
        Command::OracleCheck { fan } => {
            let f = read_fan(&fan, stdin)?;
            let report = validate(&f);
            if !(report.is_valid_fan && report.is_smooth) {
                return Err(Failure::validation(format!(
                    "input fan is invalid: {}",
                    report.summary()
                )));
            }
            let (text, ok) = oracle_check(&f);
            Ok((text, if ok { EXIT_OK } else { EXIT_INTERNAL }))
        }
        Command::NonfaceScan { fan } => {
            let f = read_fan(&fan, stdin)?;
            let report = validate(&f);
            if !(report.is_valid_fan && report.is_smooth) {
                return Err(Failure::validation(format!(
                    "input fan is invalid: {}",
                    report.summary()
                )));
            }
            Ok((nonface_scan(&f, &report), EXIT_OK))
        }
    }
}

/// Runs every cross-check; returns the printed lines and whether all passed.
pub fn oracle_check(fan: &Fan) -> (String, bool) {
    let mut out = String::new();
    let mut all_ok = true;
    let mut line = |name: &str, ok: bool, detail: String| {
        all_ok &= ok;
        let _ = writeln!(out, "{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    };

    let arr = arrangement(fan);
    let brute = arrangement_bruteforce(&irrelevant_ideal(fan));
    line(
        "arrangement-vs-demorgan",
        arr == brute,
        format!("{} components vs {}", arr.components.len(), brute.components.len()),
    );

    if let Some(d) = arr.codim() {
        let check = pairwise_check(&arr, d);
        let from_fan = completion_predicate(fan, d);
        line(
            "pair-vs-completion",
            check.pair_form == check.completion_form && check.pair_form == from_fan,
            format!(
                "d={d} pair={} completion(arrangement)={} completion(fan)={}",
                check.pair_form, check.completion_form, from_fan
            ),
        );
        let below = all_subsets_are_faces(fan, d - 1);
        let at = all_subsets_are_faces(fan, d);
        line(
            "codimension-criterion",
            below && !at,
            format!(
                "all {}-subsets are faces: {below}; all {d}-subsets are faces: {at}",
                d - 1
            ),
        );
    } else {
        line("pair-vs-completion", true, "empty arrangement".into());
    }
    (out, all_ok)
}

fn nonface_scan(fan: &Fan, report: &ValidationReport) -> String {
    let mut out = String::new();
    let nonfaces = minimal_nonfaces(fan, fan.num_rays());
    let _ = writeln!(out, "minimal non-faces: {}", nonfaces.len());
    for s in &nonfaces {
        let _ = writeln!(out, "  size {}: {}", s.len(), s);
    }
    let every_pair = nonfaces.iter().all(|s| s.len() > 2);
    let _ = writeln!(out, "every pair of rays spans a cone: {}", yes_no(every_pair));
    let _ = writeln!(out, "complete: {}", yes_no(report.is_complete));
    if let Ok(pic) = picard_group(fan) {
        let _ = writeln!(out, "Picard rank: {}", pic.rank);
    }
    if every_pair && report.is_complete {
        let _ = writeln!(
            out,
            "candidate: complete with no size-2 non-face; projectivity is not checked by this tool"
        );
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_validation(r: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "valid fan: {}", yes_no(r.is_valid_fan));
    let _ = writeln!(out, "smooth: {}", yes_no(r.is_smooth));
    let _ = writeln!(out, "complete: {}", yes_no(r.is_complete));
    for f in &r.failures {
        let _ = writeln!(out, "finding {} {:?}: {}", f.kind, f.indices, f.detail);
    }
    out
}

pub fn render_report(r: &HomotopyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "variety: {}", r.variety);
    let _ = writeln!(out, "tool: toric-a1 {}", r.version);
    let _ = writeln!(out, "A1-connected: {}", yes_no(r.connected));
    let d = r.cox.d.map_or("inf".to_string(), |d| d.to_string());
    let _ = writeln!(
        out,
        "cox cover: A^{} - Z, codim d = {d}, r = {}, pairwise_ok = {}",
        r.cox.ambient, r.cox.r, r.cox.pairwise_ok
    );
    let _ = writeln!(out, "Pic rank: {}", r.pic_rank);
    let _ = writeln!(out, "pi1 = {}", r.pi1);
    match r.vanishing {
        Some([lo, hi]) if lo <= hi => {
            let _ = writeln!(out, "pi_i = 0 for {lo} <= i <= {hi}");
        }
        Some(_) => {
            let _ = writeln!(out, "vanishing range: empty");
        }
        None => {
            let _ = writeln!(out, "vanishing range: not applicable");
        }
    }
    match &r.first_higher {
        Some(fh) => {
            let _ = writeln!(out, "first_higher: pi_{} = {}", fh.degree, fh.group);
        }
        None => {
            let _ = writeln!(out, "first_higher: not applicable");
        }
    }
    let _ = writeln!(out, "notes:");
    for n in &r.notes {
        let _ = writeln!(out, "  {n}");
    }
    out
}
