//! Command-line front end: deterministic, file-based access to the
//! enumeration, spin-combinatorics, stability, theta-geometry and bundle
//! subsystems.
//!
//! Exit codes: 0 on success with all verifications passing, 1 on a
//! verification failure (with machine-readable failure records on stdout),
//! 2 on input errors.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use serde_json::json;

use splitcurves::geom::{self, Tolerances};
use splitcurves::git;
use splitcurves::graph::StableGraph;
use splitcurves::{bundle, enumerate, spin, Error};

#[derive(Parser)]
#[command(
    name = "splitcurves",
    version,
    about = "Stable-curve combinatorics, theta-configuration stability, and split-curve geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct TolArgs {
    /// Containment residual threshold.
    #[arg(long, default_value_t = 1e-8)]
    tol_containment: f64,
    /// Tangency (discriminant) residual threshold.
    #[arg(long, default_value_t = 1e-8)]
    tol_tangency: f64,
    /// Point clustering threshold.
    #[arg(long, default_value_t = 1e-6)]
    tol_clustering: f64,
    /// Configuration uniqueness margin.
    #[arg(long, default_value_t = 1e-3)]
    tol_uniqueness: f64,
}

impl TolArgs {
    fn build(&self) -> Result<Tolerances, Error> {
        let t = Tolerances {
            containment: self.tol_containment,
            tangency: self.tol_tangency,
            clustering: self.tol_clustering,
            uniqueness: self.tol_uniqueness,
            ..Tolerances::default()
        };
        for (name, v) in [
            ("tol-containment", t.containment),
            ("tol-tangency", t.tangency),
            ("tol-clustering", t.clustering),
            ("tol-uniqueness", t.uniqueness),
        ] {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        Ok(t)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate stable dual graphs of a genus, one per isomorphism class.
    Enumerate {
        #[arg(long)]
        g: u32,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Exponent set, multiplicity set and admissible-set data of one graph.
    Exponents {
        /// Graph JSON file: {"genus_labels":[...],"edges":[[u,v],...]}.
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run a named verification suite over the genus-g enumeration.
    Verify {
        /// One of: 3.2.1, 3.2.2, 3.3.1, 3.3.2, 3.4.1, 3.4.2, degree-identity.
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        g: u32,
        /// Seed for the randomized destabilization suite.
        #[arg(long, default_value_t = 17)]
        seed: u64,
        /// Number of random destabilizations (3.3.2 only).
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Stability profiles of the theta-configurations, as CSV.
    GitCheck {
        /// Genus or inclusive range, e.g. 4 or 4..8.
        #[arg(long)]
        g: String,
        /// Configuration kind: a, b, c or combined.
        #[arg(long)]
        kind: String,
        /// Print the CSV column schema and exit.
        #[arg(long)]
        schema: bool,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Theta-hyperplanes of a seeded random split curve (genus 3 to 5).
    ThetaCompute {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        #[command(flatten)]
        tols: TolArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Degenerate configuration of a seeded hyperelliptic split curve.
    ThetaHatHyperelliptic {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        #[command(flatten)]
        tols: TolArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Recover the nodes of a split curve from a configuration file.
    RecoverNodes {
        #[arg(long)]
        g: u32,
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[command(flatten)]
        tols: TolArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Rebuild the split curve from a configuration file (genus 3 or 4).
    Reconstruct {
        #[arg(long)]
        g: u32,
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[command(flatten)]
        tols: TolArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Negativity certificates for the restricted modified normal bundle.
    NormalbundleCert {
        #[arg(long, default_value_t = 4)]
        g_min: u32,
        #[arg(long, default_value_t = 50)]
        g_max: u32,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decide the domination order between two integer sets.
    Dominates {
        /// Comma-separated integers, e.g. 1,4.
        #[arg(long)]
        l: String,
        #[arg(long)]
        m: String,
        #[command(flatten)]
        io: IoArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::InvalidGraph(_) | Error::Infeasible(_) => 2,
                _ => 1,
            }
        }
    });
}

fn emit(io: &IoArgs, content: &str) -> Result<(), Error> {
    match &io.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|e| Error::InvalidInput(format!("stdout: {e}")))
        }
    }
}

#[derive(Serialize)]
struct GraphRecord {
    canonical_key: String,
    genus_labels: Vec<u32>,
    edges: Vec<[usize; 2]>,
    exponent_set: Vec<i64>,
    multiplicity_set: Vec<u128>,
    admissible_sets: usize,
    degree_identity_ok: bool,
    classification: String,
}

fn graph_record(graph: &StableGraph) -> Result<GraphRecord, Error> {
    let g = graph.arithmetic_genus() as u32;
    let es = spin::exponent_set(graph)?;
    let ms = spin::multiplicity_set(graph)?;
    let adm = spin::admissible_sets(graph)?;
    let (odd, total) = spin::degree_identity_sums(graph)?;
    let ok =
        odd == splitcurves::exact::odd_theta_count(g) && total == splitcurves::exact::pow2(2 * g);
    Ok(GraphRecord {
        canonical_key: graph.canonical_form().to_string(),
        genus_labels: graph.genus_labels().to_vec(),
        edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        exponent_set: es.values.iter().copied().collect(),
        multiplicity_set: ms.values.iter().copied().collect(),
        admissible_sets: adm.len(),
        degree_identity_ok: ok,
        classification: format!("{:?}", spin::classify(graph)),
    })
}

fn parse_genus_range(s: &str) -> Result<Vec<u32>, Error> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad genus range '{s}'")))?;
        let b: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad genus range '{s}'")))?;
        if a > b {
            return Err(Error::InvalidInput(format!("empty genus range '{s}'")));
        }
        Ok((a..=b).collect())
    } else {
        let g: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad genus '{s}'")))?;
        Ok(vec![g])
    }
}

fn parse_int_set(s: &str) -> Result<BTreeSet<i64>, Error> {
    if s.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad integer '{x}'")))
        })
        .collect()
}

fn random_circle_params(n: usize, rng: &mut ChaCha12Rng) -> Vec<num_complex::Complex64> {
    use rand::Rng;
    loop {
        let params: Vec<num_complex::Complex64> = (0..n)
            .map(|_| {
                num_complex::Complex64::from_polar(
                    1.0,
                    rng.random_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let mut ok = true;
        for i in 0..n {
            for j in i + 1..n {
                ok &= (params[i] - params[j]).norm() > 0.15;
            }
        }
        if ok {
            return params;
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Enumerate { g, io } => {
            let graphs = enumerate::enumerate_stable_graphs(g)?;
            let records = graphs
                .iter()
                .map(graph_record)
                .collect::<Result<Vec<_>, _>>()?;
            emit(
                &io,
                &serde_json::to_string_pretty(&json!({
                    "genus": g,
                    "classes": records.len(),
                    "graphs": records,
                }))
                .unwrap(),
            )?;
            Ok(0)
        }
        Command::Exponents { r#in, io } => {
            let text = std::fs::read_to_string(&r#in)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", r#in.display())))?;
            let graph = StableGraph::from_json(&text)?;
            let record = graph_record(&graph)?;
            emit(&io, &serde_json::to_string_pretty(&record).unwrap())?;
            Ok(if record.degree_identity_ok { 0 } else { 1 })
        }
        Command::Verify {
            theorem,
            g,
            seed,
            count,
            io,
        } => {
            let report = match theorem.as_str() {
                "3.2.1" => spin::verify_cyclic_complements(g)?,
                "3.2.2" => spin::verify_exponent_extremes(g)?,
                "3.3.1" => spin::verify_compact_type(g)?,
                "3.3.2" => spin::verify_stabilization_invariance(g, seed, count)?,
                "3.4.1" => spin::verify_classification(g)?,
                "3.4.2" => spin::verify_split_identification(g)?,
                "degree-identity" => spin::verify_degree_identities(g)?,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown suite '{other}' (expected 3.2.1, 3.2.2, 3.3.1, 3.3.2, 3.4.1, 3.4.2 \
                         or degree-identity)"
                    )))
                }
            };
            emit(&io, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::GitCheck {
            g,
            kind,
            schema,
            io,
        } => {
            if schema {
                emit(
                    &io,
                    "column,description\n\
                     g,genus\n\
                     h,subspace dimension\n\
                     mu,largest candidate-subspace multiplicity (marked-point spans; \
                     spans with one tangent line; configuration hyperplanes)\n\
                     max_num,numerator of the strict stability bound m(g-1-h)/g\n\
                     max_den,denominator of the strict stability bound\n\
                     stable,mu < bound (exact rational comparison)",
                )?;
                return Ok(0);
            }
            let kind = git::ConfigKind::parse(&kind)?;
            let mut lines = vec!["g,h,mu,max_num,max_den,stable".to_string()];
            let mut all_stable = true;
            for g in parse_genus_range(&g)? {
                let profile = git::is_git_stable(git::ConfigSpec::new(kind, g)?)?;
                all_stable &= profile.stable;
                for row in &profile.rows {
                    lines.push(format!(
                        "{g},{},{},{},{},{}",
                        row.h, row.mu_max, row.max_num, row.max_den, row.stable
                    ));
                }
            }
            emit(&io, &lines.join("\n"))?;
            Ok(if all_stable { 0 } else { 1 })
        }
        Command::ThetaCompute { g, seed, tols, io } => {
            if !(3..=5).contains(&g) {
                return Err(Error::Infeasible(
                    "theta computation supports genus 3 to 5".into(),
                ));
            }
            let tol = tols.build()?;
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let (_, cfg) = geom::theta::random_generic_split_curve(g, &mut rng, &tol)?;
            emit(&io, &cfg.to_json())?;
            Ok(0)
        }
        Command::ThetaHatHyperelliptic { g, seed, tols, io } => {
            if !(3..=6).contains(&g) {
                return Err(Error::Infeasible(
                    "hyperelliptic configurations support genus 3 to 6".into(),
                ));
            }
            let tol = tols.build()?;
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let params = random_circle_params(g as usize + 1, &mut rng);
            let cfg = geom::theta_hat_hyperelliptic(g, &params, &tol)?;
            emit(&io, &cfg.to_json())?;
            Ok(0)
        }
        Command::RecoverNodes { g, r#in, tols, io } => {
            let tol = tols.build()?;
            let text = std::fs::read_to_string(&r#in)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", r#in.display())))?;
            let cfg = geom::HyperplaneConfiguration::from_json(&text)?;
            let nodes = geom::recover_nodes(&cfg, g, &tol)?;
            let coords: Vec<Vec<f64>> = nodes
                .iter()
                .map(|n| n.iter().flat_map(|z| [z.re, z.im]).collect())
                .collect();
            emit(
                &io,
                &serde_json::to_string_pretty(&json!({ "g": g, "nodes": coords })).unwrap(),
            )?;
            Ok(0)
        }
        Command::Reconstruct { g, r#in, tols, io } => {
            let tol = tols.build()?;
            let text = std::fs::read_to_string(&r#in)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", r#in.display())))?;
            let cfg = geom::HyperplaneConfiguration::from_json(&text)?;
            let curve = match g {
                3 => geom::reconstruct::reconstruct_g3_from_config(&cfg, &tol)?,
                4 => geom::reconstruct_g4(&cfg, &tol)?,
                _ => {
                    return Err(Error::Infeasible(
                        "reconstruction is implemented for genus 3 and 4".into(),
                    ))
                }
            };
            let frame_json = |f: &geom::linalg::CMat| -> Vec<Vec<f64>> {
                (0..f.nr)
                    .map(|i| f.row(i).iter().flat_map(|z| [z.re, z.im]).collect())
                    .collect()
            };
            let nodes: Vec<Vec<f64>> = curve
                .nodes()
                .iter()
                .map(|n| n.iter().flat_map(|z| [z.re, z.im]).collect())
                .collect();
            emit(
                &io,
                &serde_json::to_string_pretty(&json!({
                    "g": g,
                    "nodes": nodes,
                    "components": [
                        { "frame": frame_json(curve.components[0].frame()) },
                        { "frame": frame_json(curve.components[1].frame()) },
                    ],
                    "t_params": curve.t_params.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                    "s_params": curve.s_params.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                }))
                .unwrap(),
            )?;
            Ok(0)
        }
        Command::NormalbundleCert { g_min, g_max, io } => {
            if g_min < 4 || g_min > g_max {
                return Err(Error::InvalidInput("need 4 <= g-min <= g-max".into()));
            }
            let mut lines = Vec::new();
            let mut all_ok = true;
            for g in g_min..=g_max {
                let cert = bundle::normal_bundle_certificate(g)?;
                all_ok &= cert.valid && cert.all_restricted_negative;
                lines.push(serde_json::to_string(&cert).unwrap());
            }
            emit(&io, &lines.join("\n"))?;
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Dominates { l, m, io } => {
            let lset = parse_int_set(&l)?;
            let mset = parse_int_set(&m)?;
            let result = spin::dominates(&lset, &mset);
            emit(
                &io,
                &serde_json::to_string_pretty(&json!({
                    "l": lset,
                    "m": mset,
                    "dominates": result,
                }))
                .unwrap(),
            )?;
            Ok(0)
        }
    }
}
