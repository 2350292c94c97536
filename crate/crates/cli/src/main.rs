//! `coxspec`: spectra, embeddings and optimal walks on the Cayley graphs of
//! A3, B3 and H3.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxspec::mesh::MeshMetadata;
use coxspec::solids::{curve_point, minimize_lambda1, sweep_lambda1};
use coxspec::spectral::{edge_class_lengths, group_eigenvalues, CLUSTER_TOL};
use coxspec::verify::run_suite_named;
use coxspec::{Builtin, CayleySystem, Curve, Error, MeshDocument, SimplexPoint};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "coxspec", version, about = "Optimal random walks on Cayley graphs of reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and print its structure.
    Group {
        #[arg(long, default_value = "H3")]
        group: Builtin,
    },
    /// Eigenvalues of the transition operator at a point of the simplex.
    Spectrum {
        #[arg(long, default_value = "H3")]
        group: Builtin,
        #[command(flatten)]
        point: PointArgs,
        /// Print every eigenvalue instead of the clusters.
        #[arg(long)]
        all: bool,
    },
    /// Export the spectral embedding as a mesh.
    Embed {
        #[arg(long, default_value = "H3")]
        group: Builtin,
        #[command(flatten)]
        point: PointArgs,
        /// `second`, or the index of an eigenvalue in descending order.
        #[arg(long, default_value = "second")]
        eigenvalue: EigenvalueChoice,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = MeshFormat::Off)]
        format: MeshFormat,
    },
    /// Minimise lambda_1 and compare with the closed form.
    Minimize {
        #[arg(long, default_value = "H3")]
        group: Builtin,
    },
    /// Sample a deformation curve through the minimum.
    Curve {
        #[arg(long, default_value = "H3")]
        group: Builtin,
        #[arg(long)]
        curve: Curve,
        #[arg(long, default_value_t = 0.1)]
        t_min: f64,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// CSV destination (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// lambda_1 on a barycentric grid.
    Sweep {
        #[arg(long, default_value = "H3")]
        group: Builtin,
        #[arg(long, default_value_t = 40)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        /// closed_forms, invariants, theorem2, curves or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, requires_all = ["y", "z"], conflicts_with = "point")]
    x: Option<f64>,
    #[arg(long, requires_all = ["x", "z"])]
    y: Option<f64>,
    #[arg(long, requires_all = ["x", "y"])]
    z: Option<f64>,
    /// Comma-separated weights `x,y,z`; defaults to the barycenter.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    point: Option<Vec<f64>>,
}

impl PointArgs {
    fn resolve(&self, system: &CayleySystem) -> coxspec::Result<SimplexPoint> {
        match (&self.point, self.x, self.y, self.z) {
            (Some(p), ..) if p.len() != system.rank() => Err(Error::Usage(format!(
                "--point needs {} comma-separated weights, got {}",
                system.rank(),
                p.len()
            ))),
            (Some(p), ..) => system.point(p),
            (None, Some(x), Some(y), Some(z)) => system.point(&[x, y, z]),
            _ => Ok(system.barycenter()),
        }
    }
}

#[derive(Clone, Copy)]
enum EigenvalueChoice {
    Second,
    Index(usize),
}

impl std::str::FromStr for EigenvalueChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("second") {
            return Ok(Self::Second);
        }
        s.parse()
            .map(Self::Index)
            .map_err(|_| format!("expected `second` or an eigenvalue index, got `{s}`"))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Off,
    Obj,
}

fn stdout_error(source: io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

macro_rules! emit {
    ($($arg:tt)*) => {
        writeln!(io::stdout().lock(), $($arg)*).map_err(stdout_error)?
    };
}

/// Rounds to 15 significant digits.
fn sig(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

fn num(v: f64) -> String {
    format!("{:?}", sig(v))
}

fn nums(v: &[f64]) -> String {
    v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", ")
}

fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64().filter(|_| !n.is_i64() && !n.is_u64()) {
                if let Some(r) = serde_json::Number::from_f64(sig(f)) {
                    *n = r;
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_json),
        Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

fn print_json(mut v: Value) -> coxspec::Result<()> {
    round_json(&mut v);
    let text = serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))?;
    emit!("{text}");
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

fn csv_writer(out: Option<&Path>) -> coxspec::Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(std::fs::File::create(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?),
        None => Box::new(io::stdout()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn csv_error(out: Option<&Path>, e: csv::Error) -> Error {
    let path = out.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf);
    let source = match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => io::Error::other(format!("{other:?}")),
    };
    Error::Io { path, source }
}

fn group_info(b: Builtin) -> coxspec::Result<()> {
    let s = CayleySystem::builtin(b)?;
    let datum = s.group().datum();
    let gram = datum.gram_matrix();
    let k = s.rank();
    let rows: Vec<Vec<f64>> = (0..k).map(|i| gram.row(i).to_vec()).collect();
    let faces: Vec<Value> = (0..k)
        .flat_map(|i| ((i + 1)..k).map(move |j| (i, j)))
        .map(|(i, j)| {
            let m = datum.order(i, j) as usize;
            json!({ "generators": [i + 1, j + 1], "sides": 2 * m, "count": s.order() / (2 * m) })
        })
        .collect();
    print_json(json!({
        "group": s.name(),
        "rank": k,
        "order": s.order(),
        "vertices": s.graph().vertex_count(),
        "edges": s.graph().edge_count(),
        "solid": b.solid(),
        "gram_matrix": rows,
        "root_volume": s.domain().volume(),
        "faces": faces,
    }))
}

fn spectrum(b: Builtin, point: &PointArgs, all: bool) -> coxspec::Result<()> {
    let s = CayleySystem::builtin(b)?;
    let x = point.resolve(&s)?;
    let values = s.spectrum(&x)?;
    emit!("group {}  X = ({})", s.name(), nums(x.weights()));
    if all {
        for v in &values {
            emit!("{}", num(*v));
        }
        return Ok(());
    }
    emit!("{:>22}  mult", "eigenvalue");
    for r in group_eigenvalues(&values, CLUSTER_TOL) {
        let mean = values[r.clone()].iter().sum::<f64>() / r.len() as f64;
        emit!("{:>22}  {}", num(mean), r.len());
    }
    Ok(())
}

fn embed(b: Builtin, point: &PointArgs, choice: EigenvalueChoice, out: &Path, format: MeshFormat) -> coxspec::Result<()> {
    let s = CayleySystem::builtin(b)?;
    let x = point.resolve(&s)?;
    let index = match choice {
        EigenvalueChoice::Second => 1,
        EigenvalueChoice::Index(i) => i,
    };
    let (cluster, emb) = s.embedding(&x, index)?;
    if emb.dimension() != 3 {
        return Err(Error::Precondition(format!(
            "eigenvalue {} has multiplicity {}; a mesh needs a 3-dimensional embedding",
            num(cluster.eigenvalue),
            cluster.multiplicity
        )));
    }
    let lengths = edge_class_lengths(&emb, s.graph())?;
    let mesh = MeshDocument::from_cayley_points(s.graph(), emb.points(), 1e-9 * emb.radius().max(1e-300))?
        .with_metadata(MeshMetadata {
            group: s.name().to_string(),
            point: x.weights().to_vec(),
            lambda: Some(cluster.eigenvalue),
            class_lengths: lengths.iter().map(|l| l.length).collect(),
        });
    let bytes = match format {
        MeshFormat::Off => mesh.write_off(out)?,
        MeshFormat::Obj => mesh.write_obj(out)?,
    };
    let census: Vec<String> = mesh.face_census().iter().map(|(k, c)| format!("{c}x{k}")).collect();
    emit!(
        "wrote {} ({bytes} bytes): V={} E={} F={} [{}] chi={} lambda={} lengths=({})",
        out.display(),
        mesh.vertices.len(),
        mesh.edges().len(),
        mesh.faces.len(),
        census.join(" "),
        mesh.euler_characteristic(),
        num(cluster.eigenvalue),
        nums(&mesh.metadata.class_lengths),
    );
    Ok(())
}

fn minimize(b: Builtin) -> coxspec::Result<()> {
    let s = CayleySystem::builtin(b)?;
    let report = minimize_lambda1(&s)?;
    let mut v = to_json(&report);
    if let Value::Object(o) = &mut v {
        o.insert("group".into(), json!(s.name()));
    }
    print_json(v)
}

fn curve(
    b: Builtin,
    c: Curve,
    t_min: f64,
    t_max: f64,
    samples: usize,
    out: Option<&Path>,
) -> coxspec::Result<()> {
    if !(t_min > 0.0 && t_max >= t_min && t_max.is_finite()) {
        return Err(Error::Usage(format!("need 0 < t-min <= t-max, got {t_min} and {t_max}")));
    }
    if samples == 0 || (samples == 1 && t_min != t_max) {
        return Err(Error::Usage("need at least two samples for a range".into()));
    }
    let s = CayleySystem::builtin(b)?;
    // geometric spacing: the curves are symmetric in log t around t = 1
    let ratio = if samples > 1 { (t_max / t_min).powf(1.0 / (samples - 1) as f64) } else { 1.0 };
    let ts: Vec<f64> = (0..samples)
        .map(|i| if i + 1 == samples { t_max } else { t_min * ratio.powi(i as i32) })
        .collect();
    let mut w = csv_writer(out)?;
    w.write_record(["t", "x", "y", "z", "lambda1", "len1", "len2", "len3"])
        .map_err(|e| csv_error(out, e))?;
    for t in ts {
        let sample = curve_point(&s, c, t)?;
        let mut rec = vec![num(t)];
        rec.extend(sample.point.weights().iter().map(|v| num(*v)));
        rec.push(num(sample.lambda));
        rec.extend(sample.class_lengths.iter().map(|v| num(*v)));
        w.write_record(&rec).map_err(|e| csv_error(out, e))?;
    }
    w.flush().map_err(|e| csv_error(out, e.into()))
}

fn sweep(b: Builtin, g: usize, out: Option<&Path>) -> coxspec::Result<()> {
    let s = CayleySystem::builtin(b)?;
    let rows = sweep_lambda1(&s, g)?;
    let mut w = csv_writer(out)?;
    w.write_record(["x", "y", "z", "lambda1", "mult", "len1", "len2", "len3"])
        .map_err(|e| csv_error(out, e))?;
    for r in rows {
        let mut rec: Vec<String> = r.point.iter().map(|v| num(*v)).collect();
        rec.push(num(r.lambda1));
        rec.push(r.multiplicity.to_string());
        rec.extend(r.lengths.iter().map(|v| num(*v)));
        w.write_record(&rec).map_err(|e| csv_error(out, e))?;
    }
    w.flush().map_err(|e| csv_error(out, e.into()))
}

/// Exit status 1 when a check fails.
fn verify(suite: &str) -> coxspec::Result<bool> {
    let report = run_suite_named(suite)?;
    let mut v = to_json(&report);
    if let Value::Object(o) = &mut v {
        o.insert("suite".into(), json!(suite));
    }
    print_json(v)?;
    Ok(report.passed)
}

fn configure_threads() -> coxspec::Result<()> {
    let Ok(raw) = std::env::var("COXSPEC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Usage(format!("COXSPEC_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Precondition(e.to_string()))
}

fn run(cli: Cli) -> coxspec::Result<bool> {
    configure_threads()?;
    match cli.command {
        Command::Group { group } => group_info(group)?,
        Command::Spectrum { group, point, all } => spectrum(group, &point, all)?,
        Command::Embed {
            group,
            point,
            eigenvalue,
            out,
            format,
        } => embed(group, &point, eigenvalue, &out, format)?,
        Command::Minimize { group } => minimize(group)?,
        Command::Curve {
            group,
            curve: c,
            t_min,
            t_max,
            samples,
            out,
        } => curve(group, c, t_min, t_max, samples, out.as_deref())?,
        Command::Sweep { group, grid, out } => sweep(group, grid, out.as_deref())?,
        Command::Verify { suite } => return verify(&suite),
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // a closed pipe (`| head`) is not an error
        Err(Error::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e @ Error::Usage(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
