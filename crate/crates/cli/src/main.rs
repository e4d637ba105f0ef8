mod text;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use quasiord::criterion::{abhyankar_moh_check, check_theorem1, check_theorem3, CriterionReport};
use quasiord::generator::{random_instance, synthesize_root, Bounds};
use quasiord::logdist::{log_distance, strong_triangle_check, LogDistance, Regime};
use quasiord::{analyze, json as js, parse_document, resultant, Tower, YPoly};

#[derive(Parser)]
#[command(name = "quasiord", version, about = "Irreducibility tests for quasi-ordinary polynomials")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Test {
    Resultant,
    LogDistance,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quasi-ordinariness, factorization and characteristic exponents.
    Analyze {
        file: PathBuf,
        /// Compute roots this far above the default order.
        #[arg(long, value_parser = rational, default_value = "0")]
        extra_precision: Rational64,
    },
    /// Resultant with respect to Y.
    Resultant { files: Vec<PathBuf> },
    /// Irreducibility criterion for `g` relative to `f`.
    Check {
        files: Vec<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        /// Also factor `g` directly and compare.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Test::Resultant)]
        test: Test,
    },
    /// Logarithmic distances, and the strong triangle test for three inputs.
    Contact {
        files: Vec<PathBuf>,
        /// Write the polytopes as SVG files into this directory.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Plane curve criterion through intersection multiplicities.
    Am {
        files: Vec<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Random irreducible quasi-ordinary polynomial.
    Gen {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn rational(s: &str) -> Result<Rational64, String> {
    s.trim().parse::<Rational64>().map_err(|e| format!("not a rational number: {}", e))
}

/// Every polynomial in the given files, in order, over a common dimension.
fn load(paths: &[PathBuf], want: std::ops::RangeInclusive<usize>) -> Result<Vec<YPoly>> {
    let mut srcs = Vec::new();
    let mut dim = 1;
    for p in paths {
        let src = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let doc = parse_document(&src, None).with_context(|| format!("parsing {}", p.display()))?;
        dim = dim.max(doc.dim);
        srcs.push((p, src));
    }
    let mut out = Vec::new();
    for (p, src) in &srcs {
        let doc = parse_document(src, Some(dim)).with_context(|| format!("parsing {}", p.display()))?;
        out.extend(doc.polys.into_iter().map(|(_, f)| f));
    }
    if !want.contains(&out.len()) {
        if want.start() == want.end() {
            bail!("expected {} polynomials, found {}", want.start(), out.len());
        }
        bail!("expected {} to {} polynomials, found {}", want.start(), want.end(), out.len());
    }
    Ok(out)
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

fn verdict_code(r: &CriterionReport) -> u8 {
    if r.holds() {
        0
    } else {
        2
    }
}

fn with_tower(mut v: Value, t: &Tower) -> Value {
    if let Value::Object(m) = &mut v {
        m.entry("tower").or_insert_with(|| js::tower(t));
    }
    v
}

fn distance_json(d: &LogDistance, t: &Tower) -> Value {
    json!({
        "vertices": js::polytope(&d.polytope),
        "scale": quasiord::expvec::fmt_rat(&d.scale),
        "resultant": js::series(&d.resultant, t),
    })
}

fn run(cmd: Cmd) -> Result<Output> {
    let t = Tower::new();
    let out = match cmd {
        Cmd::Analyze { file, extra_precision } => {
            let f = load(&[file], 1..=1)?.remove(0);
            let a = analyze(&f, extra_precision, &t)?;
            Output {
                json: a.to_json(&t),
                text: a.to_text(),
                code: 0,
            }
        }
        Cmd::Resultant { files } => {
            let fs = load(&files, 2..=2)?;
            let r = resultant(&fs[0], &fs[1], &t)?;
            Output {
                json: with_tower(json!({ "resultant": js::series(&r, &t) }), &t),
                text: format!("{}\n", r.to_text()),
                code: 0,
            }
        }
        Cmd::Check { files, k, verify, test } => {
            let fs = load(&files, 2..=2)?;
            let k = match k {
                Some(k) => k,
                None => quasiord::analyze(&fs[0], 0.into(), &t)?
                    .characteristic
                    .map(|c| c.s())
                    .context("f is not irreducible quasi-ordinary")?,
            };
            let r = match test {
                Test::Resultant => check_theorem1(&fs[0], &fs[1], k, verify, &t)?,
                Test::LogDistance => check_theorem3(&fs[0], &fs[1], k, verify, &t)?,
            };
            Output {
                json: with_tower(r.to_json(&t), &t),
                text: text::report(&r),
                code: verdict_code(&r),
            }
        }
        Cmd::Am { files, verify } => {
            let fs = load(&files, 2..=2)?;
            let r = abhyankar_moh_check(&fs[0], &fs[1], verify, &t)?;
            Output {
                json: with_tower(r.to_json(&t), &t),
                text: text::report(&r),
                code: verdict_code(&r),
            }
        }
        Cmd::Contact { files, svg } => contact(&files, svg.as_deref(), &t)?,
        Cmd::Gen { d, s, seed } => {
            let (f, spec) = random_instance(d, s, &Bounds::default(), seed, &t)?;
            let ch = spec.char_data()?;
            let root = synthesize_root(&spec)?;
            let tail: Vec<Value> = spec
                .tail
                .iter()
                .map(|(e, c)| json!({ "exp": js::exp(e), "coeff": js::algnum(c, &t) }))
                .collect();
            let json = json!({
                "polynomial": f.to_text(),
                "seed": seed,
                "spec": {
                    "d": spec.d,
                    "h": js::exps(&spec.h),
                    "coeffs": spec.coeffs.iter().map(|c| js::algnum(c, &t)).collect::<Vec<_>>(),
                    "tail": tail,
                    "root": root.to_text(),
                },
                "characteristic": ch.to_json(),
            });
            Output {
                json,
                text: text::generated(&f, &ch, &root, seed),
                code: 0,
            }
        }
    };
    Ok(out)
}

fn contact(files: &[PathBuf], svg: Option<&Path>, t: &Tower) -> Result<Output> {
    let fs = load(files, 2..=3)?;
    if let Some(dir) = svg {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let write = |name: &str, d: &LogDistance| -> Result<()> {
        if let Some(dir) = svg {
            let path = dir.join(format!("{}.svg", name));
            d.polytope
                .write_svg(&path)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    };
    if fs.len() == 2 {
        let d = log_distance(&fs[0], &fs[1], t)?;
        write("f_g", &d)?;
        return Ok(Output {
            json: with_tower(json!({ "f_g": distance_json(&d, t) }), t),
            text: text::distances(&[("f,g", &d)]),
            code: 0,
        });
    }
    let r = strong_triangle_check(&fs[0], &fs[1], &fs[2], t)?;
    write("f_g", &r.fg)?;
    write("f_h", &r.fh)?;
    write("h_g", &r.hg)?;
    let regime = match r.regime {
        Regime::IrreducibleQo => "irreducible-qo",
        Regime::General => "general",
    };
    let json = json!({
        "f_g": distance_json(&r.fg, t),
        "f_h": distance_json(&r.fh, t),
        "h_g": distance_json(&r.hg, t),
        "inf": js::polytope(&r.inf),
        "holds": r.holds,
        "witness": r.witness.as_ref().map(js::exp),
        "regime": regime,
    });
    let mut text = text::distances(&[("f,g", &r.fg), ("f,h", &r.fh), ("h,g", &r.hg)]);
    text.push_str(&text::triangle(&r, regime));
    Ok(Output {
        json: with_tower(json, t),
        text,
        code: if r.holds { 0 } else { 2 },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
                Format::Text => out.text,
            };
            // A closed pipe is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}
