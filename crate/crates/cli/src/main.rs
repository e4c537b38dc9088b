use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use k3mirror_core::catalog::{
    embed_named, identify, invariants, orthogonal_complement, EmbeddingWitness, NamedLattice, Tier,
    DEFAULT_SEARCH_BOUND,
};
use k3mirror_core::linalg::{format_rational, IntMatrix};
use k3mirror_core::pipeline::{
    analyze_with, dataset, dataset_json, find_case, pair_report, polytope_isometry_check, polytope_isometry_search,
    render_side, render_table, report_json, side_json, verify_all,
};
use k3mirror_core::toric::{one_simplices, parse_index_list};
use k3mirror_core::{GramLattice, Polytope3};

#[derive(Parser, Debug)]
#[command(name = "k3mirror", version, about = "Picard lattices and lattice mirror symmetry for K3 families of reflexive 3-polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the polar dual of a polytope as JSON.
    Dual { file: PathBuf },
    /// One-sided report: one-simplices, rk L0, Picard number and lattice.
    Analyze {
        file: PathBuf,
        /// Dependent divisors, 1-based and comma separated (e.g. 1,4,5).
        #[arg(long)]
        dependent: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Pair report; the second polytope defaults to the polar dual.
    Mirror {
        file_a: PathBuf,
        file_b: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compare a Gram matrix ({"gram": [[...]]}) with a named lattice.
    Identify {
        gram_file: PathBuf,
        expr: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check or search for a GL3(Z) map sending the first polytope onto the second.
    Isometry {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Row-vector action x -> x*M, rows separated by ';' (e.g. "1,0,0;0,1,0;0,0,1").
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// The built-in six polytope pairs.
    Dataset {
        #[command(subcommand)]
        action: DatasetAction,
    },
    /// Orthogonal complement of a sublattice of a named lattice.
    Complement {
        #[arg(long, allow_hyphen_values = true)]
        ambient: String,
        /// Named lattice, or a JSON file of basis vectors in ambient coordinates.
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum DatasetAction {
    /// Recompute every case and compare with the expected values.
    Run {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the case data as JSON, or write polytope files to a directory.
    Export {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Input problems exit with 2, failed verifications with 1.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_polytope(path: &Path) -> Result<Polytope3> {
    Polytope3::from_json_str(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

fn parse_rows(v: &Value) -> Result<Vec<Vec<i64>>> {
    let rows = v.as_array().ok_or_else(|| anyhow!("expected an array of rows"))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| anyhow!("expected a row array"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| anyhow!("non-integral entry {x}")))
                .collect()
        })
        .collect()
}

fn load_gram(path: &Path) -> Result<GramLattice> {
    let v: Value = serde_json::from_str(&read(path)?).context("gram JSON")?;
    let g = v.get("gram").ok_or_else(|| anyhow!("missing \"gram\" key"))?;
    Ok(GramLattice::new(IntMatrix::from_rows(&parse_rows(g)?)?)?)
}

fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad matrix entry {x:?}")))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(IntMatrix::from_rows(&rows)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> std::result::Result<ExitCode, InputError> {
    match cli.command {
        Command::Dual { file } => {
            let p = load_polytope(&file)?;
            let d = p.polar_dual()?;
            print_json(&serde_json::to_value(d.to_file())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { file, dependent, json } => {
            let p = load_polytope(&file)?;
            let set = one_simplices(&p)?;
            let dep = dependent.as_deref().map(parse_index_list).transpose()?;
            let side = analyze_with(&p, set, dep.as_deref())?;
            if json {
                print_json(&side_json(&side));
            } else {
                print!("{}", render_side(&side));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mirror { file_a, file_b, json } => {
            let a = load_polytope(&file_a)?;
            let b = file_b.as_deref().map(load_polytope).transpose()?;
            let r = pair_report(&a, b.as_ref())?;
            if json {
                print_json(&report_json(&r));
            } else {
                print!("{}", render_table(std::slice::from_ref(&r)));
            }
            Ok(verdict(r.passed()))
        }
        Command::Identify { gram_file, expr, bound, json } => {
            let l = load_gram(&gram_file)?;
            let target: NamedLattice = expr.parse()?;
            let v = identify(&l, std::slice::from_ref(&target), bound).remove(0);
            if json {
                print_json(&json!({
                    "candidate": v.candidate.to_string(),
                    "tier": v.tier.to_string(),
                    "witness": v.witness.as_ref().and_then(IntMatrix::to_i64_rows),
                }));
            } else {
                println!("{}: {}", v.candidate, v.tier);
                if let Some(p) = &v.witness {
                    print!("P (columns are the new basis) =\n{p}");
                }
            }
            Ok(verdict(v.tier != Tier::NoMatch))
        }
        Command::Isometry { file_a, file_b, matrix } => {
            let a = load_polytope(&file_a)?;
            let b = load_polytope(&file_b)?;
            match matrix {
                Some(m) => {
                    let m = parse_matrix(&m)?;
                    let ok = polytope_isometry_check(&a, &b, &m)?;
                    println!("{}", if ok { "isometric" } else { "not isometric under this matrix" });
                    Ok(verdict(ok))
                }
                None => match polytope_isometry_search(&a, &b) {
                    Some(m) => {
                        print!("isometric, M =\n{m}");
                        Ok(ExitCode::SUCCESS)
                    }
                    None => {
                        println!("no isometry found");
                        Ok(ExitCode::from(1))
                    }
                },
            }
        }
        Command::Dataset { action } => run_dataset(action),
        Command::Complement { ambient, sub, json } => {
            let amb: NamedLattice = ambient.parse()?;
            let w = if Path::new(&sub).is_file() {
                let v: Value = serde_json::from_str(&read(Path::new(&sub))?).context("vectors JSON")?;
                let rows = parse_rows(v.get("vectors").unwrap_or(&v))?;
                EmbeddingWitness::new(amb, IntMatrix::from_rows(&rows)?)?
            } else {
                embed_named(&amb, &sub.parse()?)?
            };
            let sub_gram = w.sub_gram()?;
            let c = orthogonal_complement(&w)?;
            let inv = invariants(&c);
            let q: Option<Vec<String>> = inv.q_multiset.as_ref().map(|v| v.iter().map(format_rational).collect());
            if json {
                print_json(&json!({
                    "sub_basis": w.sub_basis.to_i64_rows(),
                    "sub_primitive": w.is_primitive(),
                    "complement_basis": w.complement_basis.to_i64_rows(),
                    "gram": c.gram().to_i64_rows(),
                    "rank": inv.rank,
                    "signature": [inv.signature.0, inv.signature.1],
                    "det": c.det().to_string(),
                    "invariant_factors": inv.invariant_factors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "q_values": q,
                }));
            } else {
                println!("sub det = {}, primitive = {}", sub_gram.det(), w.is_primitive());
                println!("complement rank = {}", inv.rank);
                println!("signature = ({}, {})", inv.signature.0, inv.signature.1);
                println!("det = {}", c.det());
                let f: Vec<String> = inv.invariant_factors.iter().map(|x| x.to_string()).collect();
                println!("discriminant group = [{}]", f.join(", "));
                if let Some(q) = q {
                    println!("q values = [{}]", q.join(", "));
                }
                if c.rank() > 0 {
                    print!("gram =\n{}", c.gram());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn selected_cases(case: Option<&str>) -> Result<Vec<k3mirror_core::CasePair>> {
    match case {
        Some(name) => Ok(vec![find_case(name).ok_or_else(|| anyhow!("unknown case {name:?}"))?]),
        None => Ok(dataset()),
    }
}

fn run_dataset(action: DatasetAction) -> std::result::Result<ExitCode, InputError> {
    match action {
        DatasetAction::Run { case, json } => {
            let cases = selected_cases(case.as_deref())?;
            let reports = verify_all(&cases);
            if json {
                print_json(&Value::Array(reports.iter().map(report_json).collect()));
            } else {
                print!("{}", render_table(&reports));
            }
            Ok(verdict(reports.iter().all(|r| r.passed())))
        }
        DatasetAction::Export { case, dir } => {
            let cases = selected_cases(case.as_deref())?;
            match dir {
                None => print_json(&Value::Array(cases.iter().map(dataset_json).collect())),
                Some(dir) => {
                    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                    for c in &cases {
                        let stem = c.key.to_ascii_lowercase();
                        for (suffix, p) in [("delta", c.delta()?), ("dual", c.delta_dual()?)] {
                            let path = dir.join(format!("{stem}_{suffix}.json"));
                            let text = serde_json::to_string_pretty(&p.to_file())?;
                            fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
                            println!("{}", path.display());
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_argument() {
        let m = parse_matrix("-1,0,1; 1,1,-2; 2,-3,2").unwrap();
        assert_eq!(m.to_i64_rows().unwrap()[2], vec![2, -3, 2]);
        assert!(parse_matrix("1,2;3").is_err());
        assert!(parse_matrix("1,x").is_err());
    }

    #[test]
    fn gram_rows_reject_fractions() {
        let v: Value = serde_json::from_str("[[2, 1.5], [1, 2]]").unwrap();
        assert!(parse_rows(&v).is_err());
    }
}
