use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use suzuki_core::automorphism::{invariance_check, AffineAut};
use suzuki_core::code::{Code, CodeFamily, CodeParams};
use suzuki_core::curve::{Extension, SuzukiCurve, SuzukiParams};
use suzuki_core::gf2e::{Fe, FieldCtx, DEFAULT_TABLE_BUDGET};
use suzuki_core::riemann_roch::{expected_dimension, RRBasis};
use suzuki_core::selftest::{self, SelftestConfig, DEFAULT_SEED};

const SCHEMA: u32 = 1;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] suzuki_core::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Input { line: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "suzuki",
    version,
    about = "Suzuki-invariant AG codes C_{m,l} over GF(q^4)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Emit JSON (schema 1) instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest field degree that gets log/antilog tables.
    #[arg(long, global = true, env = "SUZUKI_TABLE_BUDGET", default_value_t = DEFAULT_TABLE_BUDGET)]
    table_budget: u32,
}

#[derive(clap::Args, Clone, Copy)]
struct Level {
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long)]
    ell: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form curve and code parameters.
    Params(Level),
    /// Rational points over F_q (--ext 1) or F_{q^4} (--ext 4).
    Points {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 4)]
        ext: u32,
    },
    /// The basis of L(lD), one monomial per line.
    Basis(Level),
    /// Generator matrix as hex symbols.
    Genmat(Level),
    /// Encode message lines (k hex symbols each) read from --input or stdin.
    Encode {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Encode this many seeded random messages instead of reading input.
        #[arg(long)]
        random: Option<usize>,
        /// Where to write the random messages.
        #[arg(long)]
        message_out: Option<PathBuf>,
    },
    /// Recover messages from words with `?` at erased positions.
    DecodeErasures {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Additionally erase this many seeded random coordinates per word.
        #[arg(long, default_value_t = 0)]
        erase: usize,
    },
    /// Orthogonality of the level-l code and the scaled level-l' code.
    DualVerify {
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Check every entry of the Gram product.
        #[arg(long)]
        full: bool,
        /// Scale by (x^q + x)^(q^2+2g-1) alone, without the 1/t'(x) factor.
        #[arg(long)]
        pole_only: bool,
    },
    /// Invariance of the code under random affine automorphisms.
    AutCheck {
        #[command(flatten)]
        level: Level,
        /// Codewords per automorphism.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Number of random automorphisms.
        #[arg(long, default_value_t = 10)]
        maps: usize,
    },
    /// Run the acceptance checks at m = 1.
    Selftest {
        /// Skip the checks that need the l = 63 generator matrix.
        #[arg(long)]
        quick: bool,
        /// Include the complete Gram product.
        #[arg(long)]
        full: bool,
        #[arg(long, hide = true, value_parser = parse_hex_u64)]
        base_modulus: Option<u64>,
        #[arg(long, hide = true, value_parser = parse_hex_u64)]
        ext_modulus: Option<u64>,
    },
}

fn parse_hex_u64(s: &str) -> Result<u64, String> {
    u64::from_str_radix(s.trim_start_matches("0x"), 16).map_err(|e| e.to_string())
}

struct Ctx {
    seed: u64,
    json: bool,
    table_budget: u32,
    out: Box<dyn Write>,
}

impl Ctx {
    fn emit_json(&mut self, value: &serde_json::Value) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut ctx = Ctx {
        seed: cli.seed,
        json: cli.json,
        table_budget: cli.table_budget,
        out,
    };
    let result =
        run(&cli.cmd, &mut ctx).and_then(|ok| ctx.out.flush().map(|_| ok).map_err(Into::into));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // downstream closed the pipe, e.g. `| head`
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let _ = ctx.out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Ok(false) means a check ran and failed.
fn run(cmd: &Command, ctx: &mut Ctx) -> CliResult<bool> {
    match cmd {
        Command::Params(l) => cmd_params(ctx, *l),
        Command::Points { m, ext } => cmd_points(ctx, *m, *ext),
        Command::Basis(l) => cmd_basis(ctx, *l),
        Command::Genmat(l) => cmd_genmat(ctx, *l),
        Command::Encode {
            level,
            input,
            random,
            message_out,
        } => cmd_encode(ctx, *level, input.as_ref(), *random, message_out.as_ref()),
        Command::DecodeErasures {
            level,
            input,
            erase,
        } => cmd_decode(ctx, *level, input.as_ref(), *erase),
        Command::DualVerify {
            level,
            samples,
            full,
            pole_only,
        } => cmd_dual_verify(ctx, *level, *samples, *full, *pole_only),
        Command::AutCheck {
            level,
            trials,
            maps,
        } => cmd_aut_check(ctx, *level, *trials, *maps),
        Command::Selftest {
            quick,
            full,
            base_modulus,
            ext_modulus,
        } => {
            let mut cfg = SelftestConfig {
                seed: ctx.seed,
                quick: *quick,
                full_gram: *full,
                table_budget: ctx.table_budget,
                ..SelftestConfig::default()
            };
            if let Some(b) = base_modulus {
                cfg.base_modulus = *b;
            }
            if let Some(e) = ext_modulus {
                cfg.ext_modulus = *e;
            }
            cmd_selftest(ctx, &cfg)
        }
    }
}

fn cmd_params(ctx: &mut Ctx, l: Level) -> CliResult<bool> {
    let p = SuzukiParams::new(l.m)?;
    let c = CodeParams::from_suzuki(&p, l.ell)?;
    if ctx.json {
        ctx.emit_json(&json!({
            "schema": SCHEMA,
            "m": p.m, "q0": p.q0, "q": p.q, "g": p.g,
            "n1": p.n_points(1) as i64, "n4": p.n_points(4) as i64,
            "ell": c.ell, "n": c.n, "k": c.k, "dstar": c.dstar, "t": c.t,
            "rate": c.rate,
            "dual_level": c.dual_level,
            "isodual_level": c.isodual_level,
            "isodual": c.isodual,
            "iso_orthogonal": c.iso_orthogonal,
        }))?;
        return Ok(true);
    }
    let dual = c
        .dual_level
        .map_or("none (l < 2g - 1)".to_string(), |d| d.to_string());
    let rows: [(&str, String); 16] = [
        ("m", p.m.to_string()),
        ("q0", p.q0.to_string()),
        ("q", p.q.to_string()),
        ("g", p.g.to_string()),
        ("N1", p.n_points(1).to_string()),
        ("N4", p.n_points(4).to_string()),
        ("ell", c.ell.to_string()),
        ("n", c.n.to_string()),
        ("k", c.k.to_string()),
        ("d*", c.dstar.to_string()),
        ("t", c.t.to_string()),
        ("rate", format!("{:.6}", c.rate)),
        ("dual level", dual),
        ("isodual level", c.isodual_level.to_string()),
        ("isodual", c.isodual.to_string()),
        ("iso-orthogonal", c.iso_orthogonal.to_string()),
    ];
    for (k, v) in rows {
        writeln!(ctx.out, "{k:<15}{v}")?;
    }
    Ok(true)
}

fn curve(ctx: &Ctx, m: u32) -> CliResult<SuzukiCurve> {
    Ok(SuzukiCurve::with_table_budget(m, ctx.table_budget)?)
}

fn cmd_points(ctx: &mut Ctx, m: u32, ext: u32) -> CliResult<bool> {
    let ext = Extension::from_j(ext)
        .ok_or_else(|| CliError::Unsupported(format!("--ext must be 1 or 4, got {ext}")))?;
    let c = curve(ctx, m)?;
    let pts = c.enumerate_points(ext);
    if ctx.json {
        let list: Vec<String> = pts.iter().map(|p| c.format_point(ext, p)).collect();
        ctx.emit_json(
            &json!({"schema": SCHEMA, "m": m, "ext": ext.j(), "count": pts.len(), "points": list}),
        )?;
    } else {
        for p in &pts {
            writeln!(ctx.out, "{}", c.format_point(ext, p))?;
        }
        writeln!(ctx.out, "# count={}", pts.len())?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct BasisLine {
    n: u64,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    r: u32,
}

fn cmd_basis(ctx: &mut Ctx, l: Level) -> CliResult<bool> {
    let p = SuzukiParams::new(l.m)?;
    let basis = RRBasis::new(&p, l.ell)?;
    let expected = expected_dimension(&p, l.ell);
    let lines: Vec<BasisLine> = basis
        .monomials()
        .iter()
        .zip(basis.pole_orders())
        .map(|(m, &n)| BasisLine {
            n,
            a: m.a,
            b: m.b,
            c: m.c,
            d: m.d,
            r: m.r,
        })
        .collect();
    if ctx.json {
        ctx.emit_json(&json!({
            "schema": SCHEMA, "m": l.m, "ell": l.ell, "k": basis.dim(), "expected": expected, "monomials": lines,
        }))?;
    } else {
        for x in &lines {
            writeln!(
                ctx.out,
                "n={} a={} b={} c={} d={} r={}",
                x.n, x.a, x.b, x.c, x.d, x.r
            )?;
        }
        writeln!(ctx.out, "# k={} expected={}", basis.dim(), expected)?;
    }
    Ok(basis.dim() as u64 == expected)
}

fn build_code(ctx: &Ctx, l: Level) -> CliResult<Code> {
    if l.m != 1 {
        return Err(CliError::Unsupported(
            "codes are materialized for m = 1 only; use `params` or `points` for m = 2".into(),
        ));
    }
    SuzukiParams::new(l.m)?.check_level(l.ell)?;
    let family = Arc::new(CodeFamily::new(curve(ctx, l.m)?)?);
    Ok(family.build(l.ell)?)
}

fn hex_line(f: &FieldCtx, v: &[Fe]) -> String {
    v.iter().map(|&x| f.to_hex(x)).collect::<Vec<_>>().join(" ")
}

fn cmd_genmat(ctx: &mut Ctx, l: Level) -> CliResult<bool> {
    let code = build_code(ctx, l)?;
    let f = code.field();
    let hash = code.family().point_order_hash();
    let g = code.generator();
    if ctx.json {
        let rows: Vec<Vec<String>> = g
            .iter_rows()
            .map(|r| r.iter().map(|&x| f.to_hex(x)).collect())
            .collect();
        ctx.emit_json(&json!({
            "schema": SCHEMA, "m": l.m, "ell": l.ell, "n": code.n(), "k": code.k(),
            "modulus": format!("{:#x}", f.modulus()), "point_order_sha256": hash, "rows": rows,
        }))?;
    } else {
        writeln!(
            ctx.out,
            "# m={} ell={} n={} k={} modulus={:#x} point_order_sha256={}",
            l.m,
            l.ell,
            code.n(),
            code.k(),
            f.modulus(),
            hash
        )?;
        for row in g.iter_rows() {
            writeln!(ctx.out, "{}", hex_line(f, row))?;
        }
    }
    Ok(true)
}

fn read_lines(input: Option<&PathBuf>) -> CliResult<Vec<String>> {
    let reader: Box<dyn BufRead> = match input {
        Some(p) => Box::new(BufReader::new(File::open(p)?)),
        None => Box::new(BufReader::new(io::stdin())),
    };
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            out.push(t.to_string());
        }
    }
    Ok(out)
}

fn parse_symbols(
    f: &FieldCtx,
    line: &str,
    lineno: usize,
    len: usize,
) -> CliResult<Vec<Option<Fe>>> {
    let syms: Vec<Option<Fe>> = line
        .split_whitespace()
        .map(|t| {
            if t == "?" {
                Ok(None)
            } else {
                f.parse_hex(t).map(Some)
            }
        })
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input {
            line: lineno,
            msg: e.to_string(),
        })?;
    if syms.len() != len {
        return Err(CliError::Input {
            line: lineno,
            msg: format!("expected {len} symbols, got {}", syms.len()),
        });
    }
    Ok(syms)
}

fn cmd_encode(
    ctx: &mut Ctx,
    l: Level,
    input: Option<&PathBuf>,
    random: Option<usize>,
    message_out: Option<&PathBuf>,
) -> CliResult<bool> {
    let code = build_code(ctx, l)?;
    let f = code.field();
    let messages: Vec<Vec<Fe>> = match random {
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            (0..count).map(|_| code.random_message(&mut rng)).collect()
        }
        None => read_lines(input)?
            .iter()
            .enumerate()
            .map(|(i, line)| {
                let syms = parse_symbols(f, line, i + 1, code.k())?;
                if syms.iter().any(Option::is_none) {
                    return Err(CliError::Input {
                        line: i + 1,
                        msg: "messages cannot contain erasures".into(),
                    });
                }
                Ok(syms.into_iter().flatten().collect())
            })
            .collect::<CliResult<_>>()?,
    };
    if let Some(path) = message_out {
        let mut w = BufWriter::new(File::create(path)?);
        for m in &messages {
            writeln!(w, "{}", hex_line(f, m))?;
        }
        w.flush()?;
    }
    let words: Vec<Vec<Fe>> = messages
        .iter()
        .map(|m| code.encode(m))
        .collect::<Result<_, _>>()?;
    if ctx.json {
        let hex = |v: &Vec<Fe>| v.iter().map(|&x| f.to_hex(x)).collect::<Vec<_>>();
        ctx.emit_json(&json!({
            "schema": SCHEMA, "m": l.m, "ell": l.ell,
            "messages": messages.iter().map(hex).collect::<Vec<_>>(),
            "codewords": words.iter().map(hex).collect::<Vec<_>>(),
        }))?;
    } else {
        for w in &words {
            writeln!(ctx.out, "{}", hex_line(f, w))?;
        }
    }
    Ok(true)
}

fn cmd_decode(ctx: &mut Ctx, l: Level, input: Option<&PathBuf>, erase: usize) -> CliResult<bool> {
    let code = build_code(ctx, l)?;
    let f = code.field();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut results = Vec::new();
    for (i, line) in read_lines(input)?.iter().enumerate() {
        let mut word = parse_symbols(f, line, i + 1, code.n())?;
        if erase > 0 {
            let present: Vec<usize> = (0..word.len()).filter(|&j| word[j].is_some()).collect();
            let count = erase.min(present.len());
            for j in sample(&mut rng, present.len(), count) {
                word[present[j]] = None;
            }
        }
        let erased = word.iter().filter(|v| v.is_none()).count();
        results.push((erased, code.erasure_decode(&word)));
    }
    let all_ok = results.iter().all(|(_, r)| r.is_ok());
    if ctx.json {
        let items: Vec<serde_json::Value> = results
            .iter()
            .map(|(erased, r)| match r {
                Ok(m) => json!({"erased": erased, "message": m.iter().map(|&x| f.to_hex(x)).collect::<Vec<_>>()}),
                Err(e) => json!({"erased": erased, "error": e.to_string()}),
            })
            .collect();
        ctx.emit_json(&json!({"schema": SCHEMA, "m": l.m, "ell": l.ell, "results": items}))?;
    } else {
        for (erased, r) in &results {
            match r {
                Ok(m) => writeln!(ctx.out, "{}", hex_line(f, m))?,
                Err(e) => writeln!(ctx.out, "# undecodable ({erased} erasures): {e}")?,
            }
        }
    }
    Ok(all_ok)
}

fn cmd_dual_verify(
    ctx: &mut Ctx,
    l: Level,
    samples: u64,
    full: bool,
    pole_only: bool,
) -> CliResult<bool> {
    if l.m != 1 {
        return Err(CliError::Unsupported(
            "dual verification runs at m = 1 only".into(),
        ));
    }
    let family = CodeFamily::new(curve(ctx, l.m)?)?;
    let h = if pole_only {
        family.pole_only_scaling_vector()
    } else {
        family.dual_scaling_vector()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let r = family.verify_duality_with(h, l.ell, samples, full, &mut rng)?;
    let scaling = if pole_only { "pole-only" } else { "corrected" };
    if ctx.json {
        ctx.emit_json(&json!({"schema": SCHEMA, "m": l.m, "scaling": scaling, "passed": r.passed(), "report": r}))?;
    } else {
        writeln!(
            ctx.out,
            "ell={} dual_level={} scaling={scaling}",
            r.ell, r.ell_dual
        )?;
        writeln!(
            ctx.out,
            "k={} k'={} n={} k+k'=n: {}",
            r.k, r.k_dual, r.n, r.dimensions_ok
        )?;
        writeln!(
            ctx.out,
            "{} pairs checked ({})",
            r.pairs_checked,
            if r.full { "full" } else { "sampled" }
        )?;
        match r.first_mismatch {
            None => writeln!(ctx.out, "PASS")?,
            Some(g) => writeln!(
                ctx.out,
                "FAIL first nonzero entry row={} col={} value={:#x}",
                g.row, g.col, g.value
            )?,
        }
    }
    Ok(r.passed())
}

fn cmd_aut_check(ctx: &mut Ctx, l: Level, trials: usize, maps: usize) -> CliResult<bool> {
    let code = build_code(ctx, l)?;
    let curve = code.family().curve();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut reports = Vec::new();
    for _ in 0..maps {
        let s = AffineAut::random(curve, &mut rng);
        reports.push(invariance_check(&code, &s, trials, &mut rng)?);
    }
    let ok = reports.iter().all(|r| r.passed());
    if ctx.json {
        ctx.emit_json(
            &json!({"schema": SCHEMA, "m": l.m, "ell": l.ell, "passed": ok, "reports": reports}),
        )?;
    } else {
        for r in &reports {
            writeln!(
                ctx.out,
                "a={} b={} c={} fixes_base={} permutes_e={} kept={}/{} {}",
                r.aut.a.0,
                r.aut.b.0,
                r.aut.c.0,
                r.fixes_base_points,
                r.permutes_e,
                r.passed_trials,
                r.trials,
                if r.passed() { "PASS" } else { "FAIL" }
            )?;
            if let Some(fail) = &r.failure {
                writeln!(ctx.out, "  failing trial {}: {}", fail.trial, fail.reason)?;
            }
        }
        writeln!(ctx.out, "{}", if ok { "PASS" } else { "FAIL" })?;
    }
    Ok(ok)
}

fn cmd_selftest(ctx: &mut Ctx, cfg: &SelftestConfig) -> CliResult<bool> {
    let json = ctx.json;
    let mut io_err = None;
    let out = &mut ctx.out;
    let report = selftest::run(cfg, &mut |row| {
        if !json {
            if let Err(e) = write!(out, "{}", selftest::format_row(row)).and_then(|_| out.flush()) {
                io_err.get_or_insert(e);
            }
        }
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    if json {
        ctx.emit_json(&json!({"passed": report.passed(), "report": report}))?;
    } else {
        write!(ctx.out, "{}", report.summary())?;
    }
    Ok(report.passed())
}
