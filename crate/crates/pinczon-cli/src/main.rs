//! Command line front end: ingest algebras, modules, cochains and forms
//! from JSON files; report validation results, brackets, double
//! extensions, Betti numbers and chain-map checks.
//!
//! Exit codes: 0 on success, 1 on a semantic failure (a check fails, a
//! precondition is violated, a cap is exceeded), 2 on parse or I/O
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pinczon::cohomology::{cohomology_dims, double_extension, verify_phi, CochainFlavor};
use pinczon::error::Error;
use pinczon::format::{parse_algebra, parse_form, parse_module, AlgebraFile, FormFile};
use pinczon::random::{random_cochain, rng_from_seed};
use pinczon::scalar::format_rat;
use pinczon::structure::{validate, Flavor, QuadraticStructure};

#[derive(Parser)]
#[command(
    name = "pinczon",
    about = "Exact graded multilinear algebra: quadratic structures, brackets, cohomology",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file: pairing axioms, invariance, flavor
    /// constraints and the structure equation.
    Verify {
        /// Path to the algebra file.
        algebra: PathBuf,
    },
    /// Print the structure form as a re-ingestable form file.
    StructureForm { algebra: PathBuf },
    /// Pinczon bracket of two cyclic form files over the pairing of the
    /// given algebra file.
    Bracket {
        left: PathBuf,
        right: PathBuf,
        algebra: PathBuf,
    },
    /// Emit the double semidirect product of an algebra by a module as
    /// a new algebra file.
    DoubleExtension { algebra: PathBuf, module: PathBuf },
    /// Kernel, image and Betti dimensions of the classical complex at
    /// one arity.
    Cohomology {
        algebra: PathBuf,
        module: PathBuf,
        /// hochschild, harrison or chevalley.
        #[arg(long)]
        flavor: String,
        /// Cochain arity to evaluate at.
        #[arg(long)]
        degree: usize,
        /// Cap on the coefficient-space dimension.
        #[arg(long, default_value_t = 20_000)]
        size_cap: usize,
    },
    /// Generate seeded pseudo-random cochains and verify the chain-map
    /// identity between the bracket-side differential and the classical
    /// coboundary on the double extension.
    CheckPhi {
        algebra: PathBuf,
        module: PathBuf,
        /// Cochain arity.
        #[arg(long)]
        arity: usize,
        /// Number of random cochains.
        #[arg(long)]
        trials: usize,
        /// Seed for reproducible generation.
        #[arg(long)]
        seed: u64,
        /// Override the cochain flavor (defaults to the one matching
        /// the algebra kind).
        #[arg(long)]
        flavor: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<QuadraticStructure, Error> {
    parse_algebra(&read_file(path)?)?.to_structure()
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Verify { algebra } => {
            let s = load_algebra(&algebra)?;
            let report = validate(&s)?;
            print!("{report}");
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::StructureForm { algebra } => {
            let s = load_algebra(&algebra)?;
            if s.taylor().len() != 1 {
                return Err(Error::InvalidInput(
                    "structure-form needs a single Taylor coefficient".into(),
                ));
            }
            print!("{}", FormFile::from_form(s.structure_form()).emit());
            Ok(ExitCode::SUCCESS)
        }
        Command::Bracket {
            left,
            right,
            algebra,
        } => {
            let s = load_algebra(&algebra)?;
            let lhs = parse_form(&read_file(&left)?)?.to_form(s.basis())?;
            let rhs = parse_form(&read_file(&right)?)?.to_form(s.basis())?;
            let bracket = pinczon::bracket::pinczon_bracket(&lhs, &rhs, s.pairing())?;
            print!("{}", FormFile::from_form(&bracket).emit());
            Ok(ExitCode::SUCCESS)
        }
        Command::DoubleExtension { algebra, module } => {
            let s = load_algebra(&algebra)?;
            let module_file = parse_module(&read_file(&module)?)?;
            let m = module_file.to_module(s.basis().dim())?;
            let double = double_extension(&s, &m)?;
            let name = format!(
                "double-extension-{}",
                algebra
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "algebra".into())
            );
            print!(
                "{}",
                AlgebraFile::from_structure(&double.structure, &name)?.emit()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Cohomology {
            algebra,
            module,
            flavor,
            degree,
            size_cap,
        } => {
            let s = load_algebra(&algebra)?;
            let m = parse_module(&read_file(&module)?)?.to_module(s.basis().dim())?;
            let flavor = CochainFlavor::parse(&flavor)?;
            let dims = cohomology_dims(&s, &m, flavor, degree, size_cap)?;
            println!("flavor {flavor} degree {degree}");
            println!("dim ker = {}", dims.kernel);
            println!("dim im = {}", dims.image);
            println!("betti = {}", dims.betti);
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckPhi {
            algebra,
            module,
            arity,
            trials,
            seed,
            flavor,
        } => {
            let s = load_algebra(&algebra)?;
            let m = parse_module(&read_file(&module)?)?.to_module(s.basis().dim())?;
            let flavor = match flavor {
                Some(text) => CochainFlavor::parse(&text)?,
                None => match s.flavor() {
                    Flavor::Associative => CochainFlavor::Hochschild,
                    Flavor::Commutative => CochainFlavor::Harrison,
                    Flavor::Lie => CochainFlavor::Chevalley,
                    other => {
                        return Err(Error::FlavorMismatch(format!(
                            "check-phi needs a strict algebra, got {other}"
                        )))
                    }
                },
            };
            let mut rng = rng_from_seed(seed);
            let mut passed = 0usize;
            for trial in 1..=trials {
                let c = random_cochain(s.basis(), m.dim(), flavor, arity, 0.3, &mut rng)?;
                let outcome = verify_phi(&c, &s, &m)?;
                if outcome.equal {
                    passed += 1;
                    println!(
                        "trial {trial}: pass (factor {})",
                        format_rat(&outcome.expected_factor)
                    );
                } else {
                    match &outcome.measured_factor {
                        Some(f) => println!(
                            "trial {trial}: FAIL (expected factor {}, measured {})",
                            format_rat(&outcome.expected_factor),
                            format_rat(f)
                        ),
                        None => println!(
                            "trial {trial}: FAIL ({})",
                            outcome.witness.as_deref().unwrap_or("sides differ")
                        ),
                    }
                }
            }
            println!("passed {passed}/{trials}");
            Ok(if passed == trials {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
