use clap::{Args, Parser, Subcommand};
use ratpoly::classify::{all_polygons, maximal_polygons, Method};
use ratpoly::ehrhart::distinct_count;
use ratpoly::generic::{center_interior_point, grow_by_lattice_points, internal_polygons, ldp_filter, vertex_statistics, GrowthOptions};
use ratpoly::geom::{normalized_volume, tally, ScaledPolygon};
use ratpoly::normal_form::{anfk_key, PolyKey};
use ratpoly::storage::{encode_key, fingerprint, CheckpointConfig, Dataset};
use ratpoly::strip::classify_collinear;
use ratpoly::subpolygons::{box_table, subpolygons, EnumerationOptions};
use ratpoly::{Error, Result};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ratpoly", version, about = "Classify k-rational polygons by their interior lattice points")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Worker threads (default: RATPOLY_WORKERS, else all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Directory for resumable progress.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Continue from the state in --checkpoint.
    #[arg(long, global = true, requires = "checkpoint")]
    resume: bool,
    /// Stop after this many checkpoint commits (testing aid).
    #[arg(long, global = true, hide = true)]
    stop_after: Option<usize>,
    /// Write the resulting polygons as a dataset file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Also write the printed table to this file.
    #[arg(long, global = true)]
    summary: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// k-maximal polygons with i interior lattice points.
    Maximal {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        i: u64,
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Maximal polygons, all polygons and distinct Ehrhart quasipolynomials.
    Classify {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        i: u64,
    },
    /// All subpolygons of the polygons in a dataset.
    Subpolygons {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        preserve_interior: bool,
        #[arg(long)]
        primitive_only: bool,
    },
    /// Lattice subpolygons of [0,m]² by the smallest box they fit in.
    Box {
        #[arg(long)]
        m: i64,
    },
    /// Polygons with i > k collinear interior lattice points.
    Collinear {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        i: i64,
    },
    /// Lattice polygons by number of lattice points.
    Grow {
        #[arg(long)]
        max_points: u64,
        #[arg(long)]
        internal_only: bool,
    },
    /// Distinct Ehrhart quasipolynomials of a dataset.
    Ehrhart {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        min_boundary: Option<u64>,
    },
    /// Counts, vertex statistics and volumes of a dataset.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
    /// LDP polygons among the k-rational polygons with one interior lattice point.
    Ldp {
        #[arg(long)]
        k: i64,
    },
}

struct Ctx {
    common: Common,
    table: String,
}

impl Ctx {
    fn checkpoint(&self, sub: &str) -> Option<CheckpointConfig> {
        self.common.checkpoint.as_ref().map(|dir| CheckpointConfig {
            dir: if sub.is_empty() { dir.clone() } else { dir.join(sub) },
            resume: self.common.resume,
            stop_after: self.common.stop_after,
        })
    }

    fn row(&mut self, cells: &[String]) {
        self.table.push_str(&cells.join("\t"));
        self.table.push('\n');
    }

    fn write(&self, ds: Dataset) -> Result<()> {
        match &self.common.output {
            Some(path) => ds.write(path),
            None => Ok(()),
        }
    }
}

macro_rules! row {
    ($ctx:expr, $($c:expr),+ $(,)?) => { $ctx.row(&[$($c.to_string()),+]) };
}

fn keys_of(polys: &[ScaledPolygon]) -> Result<Vec<PolyKey>> {
    polys.iter().map(anfk_key).collect()
}

fn seed_of(ds: &Dataset) -> String {
    let lines: Vec<String> = ds.keys.iter().map(|key| encode_key(ds.header.k, key)).collect();
    fingerprint(lines.iter().map(|s| s.as_str()))
}

fn run(cmd: Command, ctx: &mut Ctx) -> Result<()> {
    match cmd {
        Command::Maximal { k, i, method } => {
            let max = maximal_polygons(k, i, method, ctx.checkpoint(""))?;
            row!(ctx, "k", "i", "maximal");
            row!(ctx, k, i, max.len());
            ctx.write(Dataset::new(k, Some(i), &format!("maximal k={k} i={i}"), "none", keys_of(&max)?))
        }
        Command::Classify { k, i } => {
            let max = maximal_polygons(k, i, Method::Auto, ctx.checkpoint("maximal"))?;
            let all = all_polygons(&max, i, ctx.checkpoint("all"))?;
            let polys = all.polygons()?;
            let ehr = distinct_count(&polys, None)?;
            row!(ctx, "k", "i", "maximal", "ehrhart", "total");
            row!(ctx, k, i, max.len(), ehr, all.total());
            ctx.write(Dataset::new(k, Some(i), &format!("classify k={k} i={i}"), "none", all.sorted_keys()))
        }
        Command::Subpolygons { input, preserve_interior, primitive_only } => {
            let ds = Dataset::read(&input)?;
            let opts = EnumerationOptions { preserve_interior, primitive_only, checkpoint: ctx.checkpoint(""), ..Default::default() };
            let out = subpolygons(&ds.polygons()?, &opts)?;
            row!(ctx, "vol", "count");
            for (vol, b) in &out.buckets {
                row!(ctx, vol, b.len());
            }
            row!(ctx, "total", out.total());
            let i = if preserve_interior { ds.header.i } else { None };
            let producer = format!("subpolygons preserve_interior={preserve_interior} primitive_only={primitive_only}");
            ctx.write(Dataset::new(ds.header.k, i, &producer, &seed_of(&ds), out.sorted_keys()))
        }
        Command::Box { m } => {
            if m < 1 {
                return Err(Error::Invalid("box size must be positive".into()));
            }
            row!(ctx, "m", "new", "N", "M");
            for r in box_table(m)? {
                row!(ctx, r.m, r.count_new, r.n_max, r.m_count);
            }
            if ctx.common.output.is_some() {
                let square = ScaledPolygon::lattice(&[(0, 0), (m, 0), (m, m), (0, m)])?;
                let all = subpolygons(&[square], &EnumerationOptions::default())?;
                ctx.write(Dataset::new(1, None, &format!("box m={m}"), "none", all.sorted_keys()))?;
            }
            Ok(())
        }
        Command::Collinear { k, i } => {
            let opts = EnumerationOptions { checkpoint: ctx.checkpoint(""), ..Default::default() };
            let out = classify_collinear(k, i, &opts)?;
            row!(ctx, "k", "i", "total");
            row!(ctx, k, i, out.total());
            ctx.write(Dataset::new(k, Some(i as u64), &format!("collinear k={k} i={i}"), "none", out.sorted_keys()))
        }
        Command::Grow { max_points, internal_only } => {
            let opts = GrowthOptions { prune: None, checkpoint: ctx.checkpoint("") };
            let mut fr = grow_by_lattice_points(max_points, &opts)?;
            if internal_only {
                fr = internal_polygons(&fr)?;
            }
            row!(ctx, "l", "count");
            for (l, c) in fr.counts() {
                row!(ctx, l, c);
            }
            row!(ctx, "total", fr.total());
            let producer = format!("grow max_points={max_points} internal_only={internal_only}");
            ctx.write(Dataset::new(1, None, &producer, "none", fr.levels.into_values().flatten()))
        }
        Command::Ehrhart { input, min_boundary } => {
            let ds = Dataset::read(&input)?;
            let polys = ds.polygons()?;
            row!(ctx, "polygons", "distinct");
            row!(ctx, polys.len(), distinct_count(&polys, None)?);
            if let Some(b) = min_boundary {
                row!(ctx, format!("b>={b}"), distinct_count(&polys, Some(b))?);
            }
            Ok(())
        }
        Command::Stats { input } => {
            let ds = Dataset::read(&input)?;
            let polys = ds.polygons()?;
            let (n, m) = vertex_statistics(&polys);
            let mut by_interior: BTreeMap<u64, usize> = BTreeMap::new();
            let mut vols = Vec::with_capacity(polys.len());
            for p in &polys {
                *by_interior.entry(tally(p)?.i).or_default() += 1;
                vols.push(normalized_volume(p)?);
            }
            row!(ctx, "polygons", "N", "M", "min_vol", "max_vol");
            let vmin = vols.iter().min().map_or("-".to_string(), |v| v.to_string());
            let vmax = vols.iter().max().map_or("-".to_string(), |v| v.to_string());
            row!(ctx, polys.len(), n, m, vmin, vmax);
            row!(ctx, "i", "count");
            for (i, c) in by_interior {
                row!(ctx, i, c);
            }
            Ok(())
        }
        Command::Ldp { k } => {
            let max = maximal_polygons(k, 1, Method::Strip, None)?;
            let all = all_polygons(&max, 1, ctx.checkpoint(""))?.polygons()?;
            let centered = all.iter().map(center_interior_point).collect::<Result<Vec<_>>>()?;
            let ldp = ldp_filter(&centered)?;
            let (n, m) = vertex_statistics(&ldp);
            let (na, ma) = vertex_statistics(&all);
            row!(ctx, "k", "ldp", "N_ldp", "M_ldp", "all", "N_all", "M_all");
            row!(ctx, k, ldp.len(), n, m, all.len(), na, ma);
            ctx.write(Dataset::new(k, Some(1), &format!("ldp k={k}"), "none", keys_of(&ldp)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.common.workers.or_else(|| std::env::var("RATPOLY_WORKERS").ok()?.parse().ok());
    if let Some(n) = workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let mut ctx = Ctx { common: cli.common, table: String::new() };
    let res = run(cli.cmd, &mut ctx).and_then(|()| {
        print!("{}", ctx.table);
        match &ctx.common.summary {
            Some(path) => std::fs::write(path, &ctx.table).map_err(Error::from),
            None => Ok(()),
        }
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
