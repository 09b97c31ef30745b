mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use ffdisc::chars::{characters, parse_char, DirichletChar, UnitGroup};
use ffdisc::checks::{run_all, Profile, Status};
use ffdisc::discrepancy::{
    classify_growth, classify_pm1, classify_pm1_as_printed, lex_growth_witness, lex_prefix_sums, long_sum_max, long_sums_brute,
    long_sums_closed, mean_square_lower_bound, mean_square_t, polymath_construct, short_scan, short_sum, LexDomain,
};
use ffdisc::expsums::{gauss, gauss_imprimitive_check, ramanujan, ramanujan_interval_sum, ExpSumRow, RamanujanMethod};
use ffdisc::factor::factor;
use ffdisc::lex::lex_unrank;
use ffdisc::literal::parse_poly;
use ffdisc::multfunc::{long_distance_min, parse_modchar, pretentious_distance, ModifiedChar, MultFn};
use ffdisc::phase::Phase;
use ffdisc::{Error, Field, FieldConfig, Poly};

use config::{parse_order, Format, RunConfig};

#[derive(Parser)]
#[command(name = "ffdisc", version, about = "Discrepancy of completely multiplicative functions on F_q[t]")]
struct Cli {
    /// configuration file (key = value lines under [section] headers)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// field size q = p^k
    #[arg(long = "q", global = true)]
    q: Option<u32>,
    /// defining modulus of F_q over F_p as ascending coefficients, e.g. 1,1,1
    #[arg(long, global = true)]
    ext_modulus: Option<String>,
    /// natural, generator, or an explicit list of elements by increasing size
    #[arg(long, global = true)]
    element_order: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// write the artifact here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// directory for cached irreducible tables (default: $FFDISC_CACHE)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// A function on F_q[t]: a modified character given by --Q/--twist/--chi or a literal.
#[derive(Args, Clone)]
struct FnSpec {
    /// `modchar{q=..,Q=..,chi=(..),twist={..}}`, `one` or `liouville`
    #[arg(long = "f")]
    f: Option<String>,
    #[arg(long = "Q")]
    modulus: Option<String>,
    /// values at the primes of Q, e.g. "t:1/2,t+1:0/1" (a/m is e(a/m))
    #[arg(long)]
    twist: Option<String>,
    /// exponent tuple of the character mod Q; default: the first primitive one
    #[arg(long)]
    chi: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor a polynomial into monic irreducibles.
    Factor {
        #[arg(long = "G")]
        g: String,
    },
    /// List the Dirichlet characters mod Q.
    Chars {
        #[arg(long = "Q")]
        modulus: String,
        #[arg(long)]
        primitive: bool,
    },
    /// Gauss sum tau(chi, B); --all lists tau(chi, B) for every character mod Q.
    Gauss {
        #[arg(long = "Q")]
        modulus: String,
        #[arg(long)]
        chi: Option<String>,
        #[arg(long = "B", default_value = "1")]
        b: String,
        /// compare with the formula through the primitive character inducing chi
        #[arg(long)]
        check: bool,
        #[arg(long)]
        all: bool,
    },
    /// Ramanujan sum c_G(H); --all-h lists every H mod G, --interval n sums over deg H < n.
    Ramanujan {
        #[arg(long = "G")]
        g: String,
        #[arg(long = "H", default_value = "1")]
        h: String,
        #[arg(long, default_value = "definition")]
        method: String,
        #[arg(long)]
        all_h: bool,
        #[arg(long, allow_negative_numbers = true)]
        interval: Option<i64>,
    },
    /// Long sums S_0, ..., S_N over monics of degree <= n.
    Longsum {
        #[command(flatten)]
        f: FnSpec,
        #[arg(long = "N")]
        n: u64,
        /// closed or brute
        #[arg(long, default_value = "closed")]
        method: String,
        /// report max over n <= N of |S_n| instead of the sums
        #[arg(long)]
        max: bool,
    },
    /// Largest short-interval sum over I_H(G0), G0 of degree N, for H' = 0..=H.
    Shortscan {
        #[command(flatten)]
        f: FnSpec,
        #[arg(long = "H")]
        h: usize,
        #[arg(long = "N")]
        n: usize,
    },
    /// Mean square T over G0 of degree N with its lower bound.
    Meansquare {
        #[command(flatten)]
        f: FnSpec,
        #[arg(long = "H")]
        h: usize,
        #[arg(long = "N")]
        n: usize,
    },
    /// Lexicographic prefix sums S_1, ..., S_N.
    Lexsum {
        #[command(flatten)]
        f: FnSpec,
        #[arg(long = "N")]
        n: u64,
        /// monic or all
        #[arg(long, default_value = "monic")]
        domain: String,
        /// emit every k-th prefix
        #[arg(long, default_value_t = 1)]
        every: u64,
        /// report the record maxima of |S_n| (monic) instead
        #[arg(long)]
        witness: bool,
    },
    /// Growth classification of a modified character.
    Classify {
        #[command(flatten)]
        f: FnSpec,
    },
    /// Search for a +-1 function with bounded long sums.
    Polymath {
        #[arg(long = "C", default_value_t = 2)]
        c: i128,
        #[arg(long = "C-max", default_value_t = 4)]
        c_max: i128,
        #[arg(long = "d-max", default_value_t = 30)]
        d_max: usize,
    },
    /// Pretentious distance D(f, g; N), or min over theta of D(f, e_theta; N)^2 with --min.
    Distance {
        #[command(flatten)]
        f: FnSpec,
        /// second function: modchar literal, `one` or `liouville`
        #[arg(long = "g", default_value = "one")]
        g: String,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        min: bool,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn to_json(&self) -> Json {
        let (kind, msg) = match self {
            CliError::Core(e) => (e.kind(), e.to_string()),
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Io(m) => ("io", m.clone()),
            CliError::Failed(m) => ("check_failed", m.clone()),
        };
        json!({ "error": kind, "message": msg })
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// The produced artifact.
enum Output {
    Json(Json),
    Csv(String),
    Text(String),
}

struct Ctx {
    cfg: RunConfig,
    q: Option<u32>,
    seed: u64,
    format: Option<Format>,
}

impl Ctx {
    fn field_for(&self, hint: Option<u32>) -> CliResult<Arc<Field>> {
        let q = match (self.q, self.cfg.p, hint) {
            (Some(q), _, _) => q,
            (None, Some(p), _) => p.pow(self.cfg.k.unwrap_or(1)),
            (None, None, Some(q)) => q,
            (None, None, None) => return Err(CliError::Usage("the field size --q is required".into())),
        };
        if let Some(h) = hint.filter(|&h| h != q) {
            return Err(CliError::Usage(format!("literal is over F_{h} but the configured field is F_{q}")));
        }
        let mut fc = FieldConfig::for_q(q)?.with_order(self.cfg.element_order.clone());
        fc.ext_modulus = self.cfg.ext_modulus.clone();
        if let Some(dir) = &self.cfg.cache_dir {
            fc = fc.with_cache_dir(dir);
        }
        Ok(fc.build()?)
    }

    fn field(&self) -> CliResult<Arc<Field>> {
        self.field_for(None)
    }
}

fn literal_q(text: &str) -> Option<u32> {
    let body = text.trim().strip_prefix("modchar{")?;
    let start = body.find("q=")? + 2;
    body[start..].split(|c: char| !c.is_ascii_digit()).next()?.parse().ok()
}

fn first_primitive(f: &Arc<Field>, m: &Poly) -> CliResult<DirichletChar> {
    let g = UnitGroup::new(f.clone(), m)?;
    characters(&g)
        .into_iter()
        .find(|c| c.is_primitive())
        .ok_or_else(|| CliError::Usage(format!("no primitive character mod {}; pass --chi", f.fmt_poly(m))))
}

fn character(f: &Arc<Field>, m: &Poly, chi: Option<&str>) -> CliResult<DirichletChar> {
    match chi {
        None => first_primitive(f, m),
        Some(text) => {
            let exps = ffdisc::chars::dirichlet::parse_tuple(text)?;
            Ok(DirichletChar::new(UnitGroup::new(f.clone(), m)?, exps)?)
        }
    }
}

fn parse_twists(f: &Field, text: &str) -> CliResult<Vec<(Poly, Phase)>> {
    let mut out = Vec::new();
    for item in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (p, v) = item.rsplit_once(':').ok_or_else(|| CliError::Usage(format!("twist entry {item:?} is not P:a/m")))?;
        out.push((parse_poly(f, p.trim())?, v.trim().parse::<Phase>()?));
    }
    Ok(out)
}

impl FnSpec {
    fn hint(&self) -> Option<u32> {
        self.f.as_deref().and_then(literal_q)
    }

    fn modchar(&self, ctx: &Ctx) -> CliResult<ModifiedChar> {
        let f = ctx.field_for(self.hint())?;
        if let Some(text) = &self.f {
            return Ok(parse_modchar(text, Some(&f))?);
        }
        let m = self.modulus.as_deref().ok_or_else(|| CliError::Usage("give --f or --Q".into()))?;
        let m = parse_poly(&f, m)?;
        let chi = character(&f, &m, self.chi.as_deref())?;
        let twists = match &self.twist {
            Some(t) => parse_twists(&f, t)?,
            None => factor(&f, &m)?.primes().map(|p| (p.clone(), Phase::ONE)).collect(),
        };
        let mc = if self.chi.is_some() { ModifiedChar::new_unchecked(chi, twists)? } else { ModifiedChar::new(chi, twists)? };
        Ok(mc)
    }

    fn multfn(&self, ctx: &Ctx) -> CliResult<MultFn> {
        match self.f.as_deref().map(str::trim) {
            Some("one") => Ok(MultFn::one(ctx.field()?)),
            Some("liouville") => Ok(MultFn::liouville(ctx.field()?)),
            _ => Ok(self.modchar(ctx)?.to_multfn()),
        }
    }
}

fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rows "k,value_re,value_im,running_max".
fn scan_csv(key: &str, rows: impl IntoIterator<Item = (u64, f64, f64)>) -> String {
    let mut s = format!("{key},value_re,value_im,running_max\n");
    let mut run = 0.0f64;
    for (k, re, im) in rows {
        run = run.max(re.hypot(im));
        s.push_str(&format!("{k},{},{},{}\n", csv_float(re), csv_float(im), csv_float(run)));
    }
    s
}

fn run(cli: Cli) -> CliResult<Output> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            RunConfig::parse(&text).map_err(CliError::Usage)?
        }
        None => RunConfig::default(),
    };
    if let Some(m) = &cli.ext_modulus {
        cfg.ext_modulus = Some(m.split(',').map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad modulus {m:?}")))).collect::<CliResult<_>>()?);
    }
    if let Some(o) = &cli.element_order {
        cfg.element_order = parse_order(o).map_err(CliError::Usage)?;
    }
    if let Some(d) = &cli.cache_dir {
        cfg.cache_dir = Some(d.clone());
    }
    let ctx = Ctx { format: cli.format.or(cfg.format), cfg, q: cli.q, seed: cli.seed };
    match cli.cmd {
        Cmd::Factor { g } => {
            let f = ctx.field()?;
            let poly = parse_poly(&f, &g)?;
            let fz = factor(&f, &poly)?;
            let factors: Vec<Json> = fz.factors.iter().map(|(p, e)| json!({ "P": f.fmt_poly(p), "e": e })).collect();
            Ok(Output::Json(json!({ "G": f.fmt_poly(&poly), "unit": fz.unit, "factors": factors })))
        }
        Cmd::Chars { modulus, primitive } => {
            let f = ctx.field()?;
            let m = parse_poly(&f, &modulus)?;
            let g = UnitGroup::new(f.clone(), &m)?;
            let chars: Vec<DirichletChar> = characters(&g).into_iter().filter(|c| !primitive || c.is_primitive()).collect();
            if ctx.format == Some(Format::Csv) {
                let mut s = String::from("index,chi,order,even,primitive,conductor\n");
                for c in &chars {
                    s.push_str(&format!(
                        "{},\"{}\",{},{},{},{}\n",
                        c.index(),
                        c.literal(),
                        c.order(),
                        c.is_even(),
                        c.is_primitive(),
                        f.fmt_poly(c.conductor())
                    ));
                }
                return Ok(Output::Csv(s));
            }
            let rows: Vec<Json> = chars
                .iter()
                .map(|c| {
                    json!({ "index": c.index(), "chi": c.literal(), "order": c.order(), "even": c.is_even(),
                            "primitive": c.is_primitive(), "conductor": f.fmt_poly(c.conductor()) })
                })
                .collect();
            Ok(Output::Json(Json::Array(rows)))
        }
        Cmd::Gauss { modulus, chi, b, check, all } => {
            let f = ctx.field()?;
            let m = parse_poly(&f, &modulus)?;
            let bp = parse_poly(&f, &b)?;
            if all {
                let mut s = format!("{}\n", ExpSumRow::HEADER);
                for c in characters(&UnitGroup::new(f.clone(), &m)?) {
                    let row = ExpSumRow {
                        q: f.q(),
                        modulus: f.fmt_poly(&m),
                        chi: Some(c.index()),
                        arg: f.fmt_poly(&bp),
                        method: "gauss".into(),
                        value: gauss(&c, &bp)?,
                    };
                    s.push_str(&row.to_csv());
                    s.push('\n');
                }
                return Ok(Output::Csv(s));
            }
            let c = match chi.as_deref() {
                Some(t) if t.trim_start().starts_with("((") || t.contains("t") => parse_char(&f, t)?,
                other => character(&f, &m, other)?,
            };
            let tau = gauss(&c, &bp)?;
            let mut out = json!({ "Q": f.fmt_poly(&m), "chi": c.literal(), "B": f.fmt_poly(&bp), "tau": [tau.re, tau.im], "abs": tau.norm() });
            if check {
                out["check"] = serde_json::to_value(gauss_imprimitive_check(&c, &bp)?).expect("serializable");
            }
            Ok(Output::Json(out))
        }
        Cmd::Ramanujan { g, h, method, all_h, interval } => {
            let f = ctx.field()?;
            let gp = parse_poly(&f, &g)?;
            let meth = match method.as_str() {
                "definition" => RamanujanMethod::Definition,
                "moebius" => RamanujanMethod::Moebius,
                other => return Err(CliError::Usage(format!("unknown method {other}"))),
            };
            if let Some(n) = interval {
                return Ok(Output::Json(serde_json::to_value(ramanujan_interval_sum(&f, &gp, n)?).expect("serializable")));
            }
            if all_h {
                let mut s = format!("{}\n", ExpSumRow::HEADER);
                for i in 0..(f.q() as u64).pow(gp.d() as u32) {
                    let hp = lex_unrank(&f, i);
                    let v = ramanujan(&f, &gp, &hp, meth)?;
                    let row = ExpSumRow { q: f.q(), modulus: f.fmt_poly(&gp), chi: None, arg: f.fmt_poly(&hp), method: method.clone(), value: (v as f64).into() };
                    s.push_str(&row.to_csv());
                    s.push('\n');
                }
                return Ok(Output::Csv(s));
            }
            let hp = parse_poly(&f, &h)?;
            let v = ramanujan(&f, &gp, &hp, meth)?;
            Ok(Output::Json(json!({ "G": f.fmt_poly(&gp), "H": f.fmt_poly(&hp), "method": method, "value": v })))
        }
        Cmd::Longsum { f, n, method, max } => {
            let mc = f.modchar(&ctx)?;
            if max {
                return Ok(Output::Json(serde_json::to_value(long_sum_max(&mc, n)?).expect("serializable")));
            }
            if n > ctx.cfg.max_enum {
                return Err(CliError::Core(Error::BudgetExceeded { needed: n as u128, budget: ctx.cfg.max_enum as u128 }));
            }
            let sums = match method.as_str() {
                "closed" => long_sums_closed(&mc, n as usize)?,
                "brute" => long_sums_brute(&mc.to_multfn(), n as usize)?,
                other => return Err(CliError::Usage(format!("unknown method {other}"))),
            };
            Ok(Output::Csv(scan_csv("N", sums.iter().enumerate().map(|(i, z)| (i as u64, z.re, z.im)))))
        }
        Cmd::Shortscan { f, h, n } => {
            let g = f.multfn(&ctx)?;
            let fld = g.field().clone();
            let mut rows = Vec::new();
            let mut scans = Vec::new();
            for hh in 0..=h {
                let sc = short_scan(&g, hh, n, ctx.cfg.max_enum, ctx.seed)?;
                let g0 = parse_poly(&fld, &sc.argmax)?;
                let z = short_sum(&g, &g0, hh)?;
                rows.push((hh as u64, z.re, z.im));
                scans.push(sc);
            }
            if ctx.format == Some(Format::Json) {
                return Ok(Output::Json(serde_json::to_value(scans).expect("serializable")));
            }
            Ok(Output::Csv(scan_csv("H", rows)))
        }
        Cmd::Meansquare { f, h, n } => {
            let mc = f.modchar(&ctx)?;
            let t = mean_square_t(&mc.to_multfn(), h, n)?;
            let lb = mean_square_lower_bound(&mc, h, n)?;
            let omega = mc.omega() as i32;
            Ok(Output::Json(json!({
                "H": h, "N": n, "T": t, "T_over_H_pow": t / (h.max(1) as f64).powi(omega - 1),
                "lower_bound": lb.value, "imprimitive_degree": lb.imprimitive_degree, "slack": lb.slack
            })))
        }
        Cmd::Lexsum { f, n, domain, every, witness } => {
            let g = f.multfn(&ctx)?;
            if witness {
                return Ok(Output::Json(serde_json::to_value(lex_growth_witness(&g, n)?).expect("serializable")));
            }
            let dom = match domain.as_str() {
                "monic" => LexDomain::Monic,
                "all" => LexDomain::All,
                other => return Err(CliError::Usage(format!("unknown domain {other}"))),
            };
            let sums = lex_prefix_sums(&g, n, dom)?;
            let every = every.max(1);
            let rows = sums.iter().enumerate().skip(1).filter(|(i, _)| (*i as u64).is_multiple_of(every) || *i as u64 == n);
            Ok(Output::Csv(scan_csv("N", rows.map(|(i, z)| (i as u64, z.re, z.im)))))
        }
        Cmd::Classify { f } => {
            let mc = f.modchar(&ctx)?;
            let mut out = serde_json::to_value(classify_growth(&mc)?).expect("serializable");
            let pm1 = mc.twists().iter().all(|(_, v)| *v == Phase::ONE || *v == Phase::MINUS_ONE);
            if pm1 {
                out["pm1"] = serde_json::to_value(classify_pm1(&mc)?).expect("serializable");
                out["pm1_printed_table"] = serde_json::to_value(classify_pm1_as_printed(&mc)?).expect("serializable");
            }
            Ok(Output::Json(out))
        }
        Cmd::Polymath { c, c_max, d_max } => {
            let q = ctx.field()?.q();
            let st = polymath_construct(q, c, c_max, d_max, ctx.cfg.node_limit)?;
            Ok(Output::Json(serde_json::to_value(st).expect("serializable")))
        }
        Cmd::Distance { f, g, n, min } => {
            let a = f.multfn(&ctx)?;
            if min {
                return Ok(Output::Json(serde_json::to_value(long_distance_min(&a, n)).expect("serializable")));
            }
            let b = FnSpec { f: Some(g), modulus: None, twist: None, chi: None }.multfn(&ctx)?;
            Ok(Output::Json(json!({ "N": n, "distance": pretentious_distance(&a, &b, n)? })))
        }
        Cmd::Selftest { profile } => {
            let p = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let reports = run_all(p);
            let failed: Vec<u8> = reports.iter().filter(|r| r.status == Status::Fail).map(|r| r.id).collect();
            let text = if ctx.format == Some(Format::Json) {
                serde_json::to_string_pretty(&reports).expect("serializable") + "\n"
            } else {
                reports.iter().map(|r| r.line() + "\n").collect()
            };
            emit(&ctx, &cli.out, Output::Text(text))?;
            if failed.is_empty() {
                Ok(Output::Text(String::new()))
            } else {
                Err(CliError::Failed(format!("criteria {failed:?} failed")))
            }
        }
    }
}

fn emit(ctx: &Ctx, out: &Option<PathBuf>, o: Output) -> CliResult<()> {
    let text = match o {
        Output::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
        Output::Csv(s) | Output::Text(s) => s,
    };
    let _ = ctx;
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string().trim() }));
            return ExitCode::from(2);
        }
    };
    let out = cli.out.clone();
    let result = run(cli).and_then(|o| {
        let ctx = Ctx { cfg: RunConfig::default(), q: None, seed: 0, format: None };
        emit(&ctx, &out, o)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
