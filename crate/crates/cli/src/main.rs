//! `skeingram` command-line driver.

mod cache;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use skeingram::diagrams::{enumerate_basis, BasisFamily, DiagramError, FamilyTag};
use skeingram::gram::{build_gram, det_exact_with_cap, det_mod_at, random_points, GramError, GramMatrix, DEFAULT_EXACT_CAP};
use skeingram::polyring::{PrimeField, NVARS};
use skeingram::verify::{FormulaSpec, FormulaTag, Mode, Sampling, Verifier, VerifyError};
use skeingram::{Poly, DEFAULT_PRIME};

use cache::{Cache, Lookup};
use output::{Format, Table};

#[derive(Parser)]
#[command(name = "skeingram", version, about = "Gram matrices and Gram determinants of annular and Moebius-band diagram bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Cache directory for matrices and determinants.
    #[arg(long, global = true, env = "SKEINGRAM_CACHE", default_value = ".skeingram-cache")]
    cache_dir: PathBuf,
    /// Disable the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest matrix side for exact determinants.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Prime modulus for random evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Random evaluation points per check.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a basis; prints its size next to the expected count.
    Basis(FamilyArgs),
    /// Build (or load) a Gram matrix.
    Gram(FamilyArgs),
    /// Determinant: exact polynomial, or values at seeded random points.
    Det {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Check a determinant formula (equality or divisibility).
    Verify {
        /// thm-b, chen-mb, conj-mb1, prop-2.8, prop-2.9, prop-2.10, prop-3.3, thm-3.17
        #[arg(long)]
        spec: FormulaTag,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Nullity of the Mb1Union matrix after the Chebyshev substitution for `k`.
    Nullity {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Args, Clone, Copy)]
struct FamilyArgs {
    /// b, mb0, mb1, mb1union or mbfull
    #[arg(long)]
    family: FamilyTag,
    #[arg(long)]
    n: u32,
}

impl FamilyArgs {
    fn get(self) -> BasisFamily {
        BasisFamily::new(self.family, self.n)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Probabilistic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Probabilistic => Mode::Probabilistic,
        }
    }
}

struct Ctx {
    config: RunConfig,
    cache: Option<Cache>,
}

impl Ctx {
    fn sampling(&self) -> Sampling {
        Sampling {
            trials: self.config.trials,
            seed: self.config.seed,
            prime: self.config.prime,
        }
    }

    fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.config.prime)
            .ok_or_else(|| anyhow!("--prime {} is not a prime above 2^30", self.config.prime))
    }

    fn cached<T>(
        &self,
        kind: &str,
        family: BasisFamily,
        decode: impl Fn(&str) -> Result<T>,
        encode: impl Fn(&T) -> String,
        compute: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        if let Some(cache) = &self.cache {
            match cache.get(kind, family) {
                Lookup::Hit(payload) => match decode(&payload) {
                    Ok(v) => return Ok(v),
                    Err(e) => eprintln!("warning: unreadable cached {kind} for {family} ({e}); recomputing"),
                },
                Lookup::Corrupt(path) => {
                    eprintln!("warning: cache file {} failed its checksum; recomputing", path.display())
                }
                Lookup::Miss => {}
            }
        }
        let v = compute()?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.put(kind, family, &encode(&v)) {
                eprintln!("warning: could not write cache: {e:#}");
            }
        }
        Ok(v)
    }

    fn gram(&self, family: BasisFamily) -> Result<GramMatrix> {
        self.cached(
            "gram",
            family,
            |s| {
                let g = GramMatrix::from_json(s)?;
                if g.family() != family {
                    bail!("cached matrix is for {}", g.family());
                }
                Ok(g)
            },
            GramMatrix::to_json,
            || Ok(build_gram(family)?),
        )
    }

    fn det(&self, family: BasisFamily) -> Result<Poly> {
        let g = self.gram(family)?;
        let cap = self.config.cap as usize;
        // check the cap before consulting the cache so the refusal is uniform
        if g.side() > cap {
            return Err(GramError::CapExceeded { side: g.side(), cap }.into());
        }
        self.cached(
            "det",
            family,
            |s| Ok(serde_json::from_str(s)?),
            |p| serde_json::to_string(p).expect("polynomial serializes"),
            || Ok(det_exact_with_cap(&g, cap)?),
        )
    }

    fn emit(&self, json: &impl Serialize, table: Table) -> Result<()> {
        let text = match self.config.format {
            Format::Json => serde_json::to_string_pretty(json)? + "\n",
            Format::Table => table.render(),
        };
        match &self.config.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Serialize)]
struct GramOutput {
    family: FamilyTag,
    n: u32,
    side: usize,
    duration_ms: u64,
    matrix: serde_json::Value,
}

#[derive(Serialize)]
pub(crate) struct DetOutput {
    pub(crate) family: FamilyTag,
    pub(crate) n: u32,
    pub(crate) side: usize,
    pub(crate) mode: Mode,
    pub(crate) duration_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub(crate) determinant: Option<Poly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub(crate) terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub(crate) seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub(crate) prime: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub(crate) evaluations: Vec<Evaluation>,
}

#[derive(Serialize)]
pub(crate) struct Evaluation {
    pub(crate) point: [u64; NVARS],
    pub(crate) value: u64,
}

fn run(cli: Cli) -> Result<()> {
    let cache = (!cli.config.no_cache).then(|| Cache::new(&cli.config.cache_dir));
    let ctx = Ctx {
        config: cli.config,
        cache,
    };
    let start = Instant::now();
    match cli.command {
        Command::Basis(args) => {
            let family = args.get();
            let basis = enumerate_basis(family)?;
            if let Some(path) = &ctx.config.out {
                std::fs::write(path, serde_json::to_string_pretty(&basis)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{} (expected {})", basis.len(), family.expected_size());
            eprintln!("time: {} ms", start.elapsed().as_millis());
        }
        Command::Gram(args) => {
            let g = ctx.gram(args.get())?;
            let out = GramOutput {
                family: g.family().tag,
                n: g.family().n,
                side: g.side(),
                duration_ms: start.elapsed().as_millis() as u64,
                matrix: serde_json::from_str(&g.to_json())?,
            };
            ctx.emit(&out, output::gram_table(&g, out.duration_ms))?;
        }
        Command::Det { family, mode } => {
            let family = family.get();
            let out = match mode {
                ModeArg::Exact => {
                    let det = ctx.det(family)?;
                    let side = family.expected_size() as usize;
                    DetOutput {
                        family: family.tag,
                        n: family.n,
                        side,
                        mode: Mode::Exact,
                        duration_ms: start.elapsed().as_millis() as u64,
                        terms: Some(det.len()),
                        determinant: Some(det),
                        seed: None,
                        prime: None,
                        evaluations: Vec::new(),
                    }
                }
                ModeArg::Probabilistic => {
                    let g = ctx.gram(family)?;
                    let f = ctx.field()?;
                    let points = random_points(ctx.config.seed, ctx.config.trials, &f);
                    let evaluations = points
                        .into_iter()
                        .map(|point| Evaluation {
                            point,
                            value: det_mod_at(&g, &point, &f),
                        })
                        .collect();
                    DetOutput {
                        family: family.tag,
                        n: family.n,
                        side: g.side(),
                        mode: Mode::Probabilistic,
                        duration_ms: start.elapsed().as_millis() as u64,
                        determinant: None,
                        terms: None,
                        seed: Some(ctx.config.seed),
                        prime: Some(f.prime()),
                        evaluations,
                    }
                }
            };
            let table = output::det_table(&out);
            ctx.emit(&out, table)?;
        }
        Command::Verify { spec, n, mode } => {
            let spec = FormulaSpec::new(spec, n);
            let family = BasisFamily::new(spec.tag.family(), n);
            let mut v = Verifier::new(ctx.sampling());
            v.exact_cap = ctx.config.cap as usize;
            v.insert_gram(ctx.gram(family)?);
            if mode == ModeArg::Exact {
                v.insert_det(family, ctx.det(family)?);
            }
            let mut report = v.check(spec, mode.into())?;
            report.duration_ms = start.elapsed().as_millis() as u64;
            ctx.emit(&report, output::report_table(&report))?;
        }
        Command::Nullity { n, k } => {
            let mut v = Verifier::new(ctx.sampling());
            v.insert_gram(ctx.gram(BasisFamily::new(FamilyTag::Mb1Union, n))?);
            let mut report = v.check_nullity(n, k)?;
            report.duration_ms = start.elapsed().as_millis() as u64;
            ctx.emit(&report, output::report_table(&report))?;
        }
    }
    Ok(())
}

fn is_cap_error(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(c.downcast_ref::<DiagramError>(), Some(DiagramError::CapExceeded { .. }))
            || matches!(
                c.downcast_ref::<GramError>(),
                Some(GramError::CapExceeded { .. } | GramError::Diagram(DiagramError::CapExceeded { .. }))
            )
            || matches!(
                c.downcast_ref::<VerifyError>(),
                Some(VerifyError::Gram(
                    GramError::CapExceeded { .. } | GramError::Diagram(DiagramError::CapExceeded { .. })
                ))
            )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_cap_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
