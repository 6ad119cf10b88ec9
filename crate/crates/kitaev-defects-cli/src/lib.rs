//! Command-line front end: classification, fusion, table generation,
//! verification and Frobenius–Perron dimensions.
//!
//! Exit status: 0 on success, 1 on a verification mismatch (or an internal
//! failure), 2 on invalid input.

pub mod records;
pub mod render;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

use kitaev_defects::arith::PrimeModulus;
use kitaev_defects::fusion::{engine, fuse_all, pants_basis, DefectCache};
use kitaev_defects::oracle::{
    all_defects, fpdim, select_pairs, sweep_pairs, verify, FusionTables, Kind, Scope,
};
use kitaev_defects::pants::Geometry;
use kitaev_defects::tubes::Defect;
use kitaev_defects::walls::Wall;
use kitaev_defects::Error;

use records::{
    BasisRecord, DefectListing, DefectRecord, FpDimRecord, FuseRecord, TablesRecord, VerifyRecord,
};
use render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "kdefects",
    version,
    about = "Interface defects of the Kitaev Z/p model"
)]
pub struct Cli {
    /// The prime p.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    #[value(alias = "horizontal")]
    H,
    #[value(alias = "vertical")]
    V,
}

impl Mode {
    fn kind(self) -> Kind {
        match self {
            Mode::H => Kind::Horizontal,
            Mode::V => Kind::Vertical,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mode::H => "h",
            Mode::V => "v",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the simple defects between two walls.
    Defects {
        #[arg(long)]
        bottom: Wall,
        #[arg(long)]
        top: Wall,
    },
    /// Fuse two defects.
    Fuse {
        #[arg(short, long, value_enum)]
        mode: Mode,
        left: Defect,
        right: Defect,
        /// Include an explicit pants basis of every multiplicity space.
        #[arg(long)]
        basis: bool,
    },
    /// Fuse every pair of simple defects.
    Tables {
        #[arg(short, long, value_enum)]
        mode: Mode,
    },
    /// Compare computed fusions with the reference tables.
    Verify {
        /// `full` or `sample:N`.
        #[arg(long, default_value = "full")]
        scope: Scope,
        /// Restrict to one mode; both by default.
        #[arg(short, long, value_enum)]
        mode: Option<Mode>,
        /// Seed for sampled scopes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Frobenius–Perron dimension of a defect.
    Fpdim { defect: Defect },
}

/// Rendered output plus exit status.
pub struct Output {
    pub text: String,
    pub status: u8,
}

/// Whether an error stems from the user's input.
pub fn is_input_error(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(
            Error::NotPrime(_)
                | Error::NotInvertible { .. }
                | Error::InvalidWall(_)
                | Error::InvalidDefect(_)
                | Error::InvalidExpression { .. }
                | Error::UnknownMode(_)
                | Error::NotComposable(..)
        )
    )
}

pub fn run(cli: &Cli) -> Result<Output> {
    let p = PrimeModulus::new(cli.p)?;
    let cache = DefectCache::new();
    let ok = |text| Ok(Output { text, status: 0 });
    match &cli.command {
        Command::Defects { bottom, top } => {
            let defects = cache
                .defects(*bottom, *top, p)?
                .iter()
                .map(|c| DefectRecord::new(c, p))
                .collect::<Result<_>>()?;
            ok(render::defects(
                &DefectListing {
                    p: p.get(),
                    bottom: *bottom,
                    top: *top,
                    defects,
                },
                cli.format,
            )?)
        }
        Command::Fuse {
            mode,
            left,
            right,
            basis,
        } => {
            let engine = engine(mode.name())?;
            let outcome = engine.fuse(&cache, left, right, p)?;
            let basis = if *basis {
                let geometry = match mode {
                    Mode::H => Geometry::Horizontal,
                    Mode::V => Geometry::Vertical,
                };
                let mut out = Vec::new();
                for c in &outcome.components {
                    for t in &c.terms {
                        let vectors = pants_basis(
                            engine.as_ref(),
                            &cache,
                            left,
                            right,
                            &t.defect,
                            (c.mu, c.nu),
                            p,
                        )?;
                        out.push(BasisRecord::new(
                            c.mu,
                            c.nu,
                            t.defect.clone(),
                            geometry,
                            &vectors,
                        )?);
                    }
                }
                Some(out)
            } else {
                None
            };
            ok(render::fuse(
                &FuseRecord {
                    p: p.get(),
                    outcome,
                    basis,
                },
                cli.format,
            )?)
        }
        Command::Tables { mode } => {
            let engine = engine(mode.name())?;
            let defects = all_defects(&cache, p)?;
            let outcomes = fuse_all(
                engine.as_ref(),
                &cache,
                &sweep_pairs(mode.kind(), &defects),
                p,
            )?;
            ok(render::tables(
                &TablesRecord {
                    p: p.get(),
                    mode: engine.name().to_string(),
                    outcomes,
                },
                cli.format,
            )?)
        }
        Command::Verify { scope, mode, seed } => {
            let defects = all_defects(&cache, p)?;
            let modes = match mode {
                Some(m) => vec![*m],
                None => vec![Mode::V, Mode::H],
            };
            let mut reports = Vec::new();
            for m in modes {
                let pairs = select_pairs(m.kind(), &defects, *scope, *seed);
                reports.push(verify(
                    engine(m.name())?.as_ref(),
                    m.kind(),
                    FusionTables::standard(),
                    &cache,
                    &pairs,
                    p,
                ));
            }
            let passed = reports.iter().all(|r| r.passed());
            let scope = match scope {
                Scope::Full => "full".to_string(),
                Scope::Sample(n) => format!("sample:{n}"),
            };
            let record = VerifyRecord {
                p: p.get(),
                scope,
                seed: *seed,
                passed,
                reports,
            };
            Ok(Output {
                text: render::verify(&record, cli.format)?,
                status: if passed { 0 } else { 1 },
            })
        }
        Command::Fpdim { defect } => {
            defect.validate(p)?;
            ok(render::fpdim(
                &FpDimRecord::new(defect.clone(), &fpdim(defect, p)),
                cli.format,
            )?)
        }
    }
}
