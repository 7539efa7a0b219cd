//! The `flt` command line: field information, screening of single fields
//! and of all totally real cubics up to a discriminant bound, cyclotomic
//! checks, and the identity and search suites.

pub mod cache;
pub mod dto;
pub mod golden;
pub mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use flt_core::classunit::Certification;
use flt_core::exactmath::poly::{parse_poly, BigIntPoly};
use flt_core::fltscreen::{check_assumption_with, cyclotomic_real_subfield, enumerate_totally_real_cubics, Verdict};
use flt_core::numfield::{build_field, AlgebraicNumber, Field};
use flt_core::pomeyfrey as pf;

use cache::{cache_key, Cache};
use dto::*;
use render::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Unconditional,
    Grh,
}

impl Mode {
    fn certification(self) -> Certification {
        match self {
            Mode::Unconditional => Certification::Unconditional,
            Mode::Grh => Certification::HeuristicGRH,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "flt", version, about = "Screen totally real fields and check the identities behind the screen")]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Cache directory (overrides FLT_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Largest accepted field degree.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, signature, discriminant, index and integral basis.
    FieldInfo { poly: String },
    /// Screen one field: splitting of 3 and parity of h(K(sqrt -3)).
    Check {
        poly: String,
        #[arg(long, value_enum, default_value = "unconditional")]
        mode: Mode,
    },
    /// All totally real cubic fields up to a discriminant bound that pass
    /// the screen.
    Table {
        #[arg(long)]
        max_disc: u64,
        #[arg(long)]
        diff_golden: bool,
        #[arg(long, value_enum, default_value = "unconditional")]
        mode: Mode,
    },
    /// Checks for the real subfield of the 3^n-th cyclotomic field.
    Cyclotomic {
        #[arg(long)]
        n: u32,
    },
    /// Identity checks, representations, searches and local exclusions for a field
    #[command(subcommand)]
    Pomey(PomeyCommand),
    /// Discriminant and valuations of y^2 = x(x - a^p)(x + b^p).
    Frey {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        p: u64,
        /// Defining polynomial of the field; elements are written in `t`.
        #[arg(long, default_value = "x")]
        field: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum PomeyCommand {
    /// Residue signs, the P-identity and the x^2 + 3y^2 identity for p.
    Identities {
        #[arg(long)]
        p: u64,
    },
    /// Find x, y with d^t = x^2 + 3y^2.
    Represent {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long, default_value = "x")]
        field: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_visits: usize,
    },
    /// Exhaustive search for x^p + y^p + z^p = 0 in a coordinate box.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        height: i64,
        #[arg(long, default_value = "x")]
        field: String,
    },
    /// Frey curve invariants (same as the top-level command).
    Frey {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "x")]
        field: String,
    },
    /// (3^f + 1)^2 against the Hasse bound 4 * 3^f.
    Steinberg {
        #[arg(long)]
        f: u32,
    },
    /// Primes dividing Norm(a -+ (3^f + 1)) for a root a of a polynomial.
    Eigen {
        #[arg(long, allow_hyphen_values = true)]
        min_poly: String,
        #[arg(long)]
        f: u32,
    },
    /// Whether p^t is a non-square mod 3.
    Contradiction {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
}

/// Failures mapped to exit codes 1 (input), 2 (cap or unfinished
/// computation) and 3 (verification failure).
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Cap(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Verification(m) => m,
        }
    }
}

impl From<flt_core::Error> for CliError {
    fn from(e: flt_core::Error) -> Self {
        use flt_core::Error as E;
        match e {
            E::Cap { .. } | E::Inconclusive(_) => CliError::Cap(e.to_string()),
            E::Parse { .. } | E::Reducible { .. } | E::NotMonic | E::Domain(_) => CliError::Input(e.to_string()),
        }
    }
}

/// Rendered output plus the exit code to report.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

pub struct Context {
    pub format: Format,
    pub cache: Cache,
    pub max_degree: u32,
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Self {
        let cache = if cli.no_cache {
            Cache::disabled()
        } else {
            match cli.cache_dir.clone().or_else(Cache::default_dir) {
                Some(d) => Cache::open(&d),
                None => Cache::disabled(),
            }
        };
        Context { format: cli.format, cache, max_degree: cli.max_degree }
    }

    fn cached<T, F>(&self, key: &str, compute: F) -> Result<T, CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        if let Some(v) = self.cache.get(key) {
            if let Ok(t) = serde_json::from_value(v) {
                return Ok(t);
            }
        }
        let t = compute()?;
        self.cache.put(key, &serde_json::to_value(&t).expect("reports serialize"));
        Ok(t)
    }

    fn field(&self, poly: &str) -> Result<Field, CliError> {
        let f = parse_poly(poly)?;
        self.field_of(&f)
    }

    fn field_of(&self, f: &BigIntPoly) -> Result<Field, CliError> {
        let deg = f.degree().unwrap_or(0) as u64;
        if deg > u64::from(self.max_degree) {
            return Err(CliError::Cap(format!("field degree {deg} exceeds --max-degree {}", self.max_degree)));
        }
        Ok(build_field(f)?)
    }
}

fn element(k: &Field, s: &str) -> Result<AlgebraicNumber, CliError> {
    let p = parse_poly(s)?;
    Ok(AlgebraicNumber::from_int_poly(k, &p))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    }
    let ctx = Context::from_cli(cli);
    execute(&ctx, &cli.command)
}

pub fn execute(ctx: &Context, cmd: &Command) -> Result<Output, CliError> {
    let fmt = ctx.format;
    match cmd {
        Command::FieldInfo { poly } => {
            let k = ctx.field(poly)?;
            Ok(Output::ok(render::generic(&FieldInfo::new(&k), fmt)))
        }
        Command::Check { poly, mode } => {
            let f = parse_poly(poly)?;
            let m = mode.certification();
            let key = cache_key("check", &f.to_string(), m.label());
            let rep: CheckReport = ctx.cached(&key, || {
                let k = ctx.field_of(&f)?;
                Ok(CheckReport::new(&check_assumption_with(&k, m)))
            })?;
            Ok(Output::ok(render::generic(&rep, fmt)))
        }
        Command::Table { max_disc, diff_golden, mode } => {
            let m = mode.certification();
            let key = cache_key("table", &max_disc.to_string(), m.label());
            let mut rep: TableReport = ctx.cached(&key, || table(*max_disc, m))?;
            let mut code = 0;
            if *diff_golden {
                let d = golden::diff_against_golden(&rep.rows, *max_disc);
                if !d.passes {
                    code = 3;
                }
                rep.diff = Some(d);
            }
            Ok(Output { text: render::table(&rep, fmt), code })
        }
        Command::Cyclotomic { n } => {
            let key = cache_key("cyclotomic", &n.to_string(), Certification::Unconditional.label());
            let out: CyclotomicOut = ctx.cached(&key, || {
                let (_, rep) = cyclotomic_real_subfield(*n)?;
                Ok(CyclotomicOut::new(&rep))
            })?;
            Ok(Output::ok(render::generic(&out, fmt)))
        }
        Command::Frey { a, b, c, p, field } => frey(ctx, field, a, b, c, *p),
        Command::Pomey(sub) => pomey(ctx, sub),
    }
}

fn table(max_disc: u64, mode: Certification) -> Result<TableReport, CliError> {
    let screens = enumerate_totally_real_cubics(max_disc, mode)?;
    let mut rows = Vec::new();
    let mut inconclusive = Vec::new();
    for s in &screens {
        match &s.report.verdict {
            Verdict::Satisfied => {
                let r = CheckReport::new(&s.report);
                rows.push(TableRow {
                    poly: r.poly,
                    abs_disc: s.field.disc().magnitude().try_into().expect("bounded by max_disc"),
                    t: s.report.t.expect("satisfied rows carry t"),
                    ramification: r.ramification,
                    pattern: r.pattern,
                });
            }
            Verdict::Inconclusive(_) => inconclusive.push(s.field.poly().to_string()),
            Verdict::Fails(_) => {}
        }
    }
    Ok(TableReport {
        schema: SCHEMA,
        max_disc,
        certification: mode_label(mode),
        degree: 3,
        fields_enumerated: screens.len(),
        rows,
        inconclusive,
        diff: None,
    })
}

fn frey(ctx: &Context, field: &str, a: &str, b: &str, c: &str, p: u64) -> Result<Output, CliError> {
    let k = ctx.field(field)?;
    let rep = pf::frey_invariants(&element(&k, a)?, &element(&k, b)?, &element(&k, c)?, p)?;
    let out = FreyOut::new(&rep);
    let text = render::generic(&out, ctx.format);
    // for a genuine solution the closed form and p | v_q are theorems
    if rep.is_fermat_solution
        && (!rep.matches_closed_form() || rep.odd_valuations.iter().any(|v| !v.divisible_by_p))
    {
        return Ok(Output { text, code: 3 });
    }
    Ok(Output::ok(text))
}

fn pomey(ctx: &Context, sub: &PomeyCommand) -> Result<Output, CliError> {
    let fmt = ctx.format;
    match sub {
        PomeyCommand::Identities { p } => {
            let res = pf::residue_sign_analysis(*p)?;
            let pid = pf::verify_p_identity(*p)?;
            let q = pf::verify_quadratic_form_identity();
            let spot = pf::quadratic_form_spot_check(*p as u32, &2.into(), &3.into());
            let out = IdentitiesOut::new(&res, &pid, &q, &spot);
            let code = if out.all_hold { 0 } else { 3 };
            Ok(Output { text: render::generic(&out, fmt), code })
        }
        PomeyCommand::Represent { d, t, field, max_visits } => {
            let k = ctx.field(field)?;
            let dv = element(&k, d)?;
            let res = pf::find_x2_3y2_representation(&k, &dv, *t, *max_visits)?;
            let out = RepresentOut::new(&k, &dv.to_string(), *t, &res);
            let code = match &res {
                pf::RepresentationOutcome::Found(r) if !r.verify() => 3,
                _ => 0,
            };
            Ok(Output { text: render::generic(&out, fmt), code })
        }
        PomeyCommand::Search { p, height, field } => {
            let k = ctx.field(field)?;
            let rep = pf::exhaustive_fermat_search(&k, *p, *height)?;
            let out = SearchOut::new(&k, &rep);
            let code = if rep.counterexamples.is_empty() { 0 } else { 3 };
            Ok(Output { text: render::generic(&out, fmt), code })
        }
        PomeyCommand::Frey { a, b, c, p, field } => frey(ctx, field, a, b, c, *p),
        PomeyCommand::Steinberg { f } => {
            let s = pf::steinberg_exclusion(*f)?;
            let code = if s.excluded { 0 } else { 3 };
            Ok(Output { text: render::generic(&SteinbergOut::new(&s), fmt), code })
        }
        PomeyCommand::Eigen { min_poly, f } => {
            let g = parse_poly(min_poly)?;
            let e = pf::eigenvalue_prime_bound(&g, *f)?;
            if let Some(w) = &e.hasse_warning {
                eprintln!("warning: {w}");
            }
            Ok(Output::ok(render::generic(&EigenOut::new(&g.to_string(), &e), fmt)))
        }
        PomeyCommand::Contradiction { p, t } => {
            let c = pf::pomey_contradiction_check(*p, *t) == pf::PomeyContradiction::ContradictionHolds;
            Ok(Output::ok(render::generic(&ContradictionOut { schema: SCHEMA, p: *p, t: *t, contradiction: c }, fmt)))
        }
    }
}

/// Parses `args`, runs the command and returns (stdout, stderr, exit code).
pub fn main_with_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (text, String::new(), 0) } else { (String::new(), text, 1) };
        }
    };
    match run(&cli) {
        Ok(out) => (out.text, String::new(), out.code),
        Err(e) => (String::new(), format!("error: {}\n", e.message()), e.exit_code()),
    }
}
