//! Dataset text format and resumable checkpoint directories.
//!
//! A dataset is a block of `#` header lines followed by one polygon per
//! line, `k:x1,y1;...;xn,yn`, giving the anf_k columns of the polygon.
//! Body lines are sorted bytewise.

use crate::error::{Error, Result};
use crate::geom::{Point, ScaledPolygon};
use crate::normal_form::{anfk_key, PolyKey};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Read, Seek, Write};
use std::path::{Path, PathBuf};

pub const FORMAT_VERSION: u32 = 1;

pub fn encode_key(k: i64, key: &PolyKey) -> String {
    let mut s = String::with_capacity(8 * key.0.len());
    write!(s, "{k}:").unwrap();
    for (j, c) in key.cols().iter().enumerate() {
        if j > 0 {
            s.push(';');
        }
        write!(s, "{},{}", c.x, c.y).unwrap();
    }
    s
}

pub fn decode_key(line: &str) -> Result<(i64, PolyKey)> {
    let bad = || Error::Invalid(format!("malformed polygon line: {line:?}"));
    let (k, rest) = line.trim_end().split_once(':').ok_or_else(bad)?;
    if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let k: i64 = k.parse().map_err(|_| bad())?;
    let mut cols = Vec::new();
    for pair in rest.split(';') {
        let (x, y) = pair.split_once(',').ok_or_else(bad)?;
        cols.push(Point::new(x.parse().map_err(|_| bad())?, y.parse().map_err(|_| bad())?));
    }
    if k < 1 || cols.len() < 3 {
        return Err(bad());
    }
    Ok((k, PolyKey::from_cols(&cols)?))
}

/// Encodes a polygon that already is its own anf_k form.
pub fn encode_polygon(p: &ScaledPolygon) -> Result<String> {
    let key = anfk_key(p)?;
    let mut a = key.cols();
    let mut b = p.vertices().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Err(Error::Invalid("polygon is not in anf_k form".into()));
    }
    Ok(encode_key(p.k(), &key))
}

pub fn decode_polygon(line: &str) -> Result<ScaledPolygon> {
    let (k, key) = decode_key(line)?;
    key.to_polygon(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DatasetHeader {
    pub version: u32,
    pub k: i64,
    /// None when the dataset mixes interior point counts.
    pub i: Option<u64>,
    pub producer: String,
    pub seed: String,
    pub count: usize,
}

impl DatasetHeader {
    fn render(&self) -> String {
        let i = self.i.map_or_else(|| "mixed".to_string(), |i| i.to_string());
        format!(
            "# ratpoly-dataset {}\n# k {}\n# i {}\n# producer {}\n# seed {}\n# count {}\n# sort bytewise\n",
            self.version, self.k, i, self.producer, self.seed, self.count
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub header: DatasetHeader,
    pub keys: Vec<PolyKey>,
}

impl Dataset {
    /// Builds a dataset with canonically sorted body lines.
    pub fn new(k: i64, i: Option<u64>, producer: &str, seed: &str, keys: impl IntoIterator<Item = PolyKey>) -> Self {
        let mut lines: Vec<(String, PolyKey)> = keys.into_iter().map(|key| (encode_key(k, &key), key)).collect();
        lines.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        lines.dedup_by(|a, b| a.0 == b.0);
        let header = DatasetHeader {
            version: FORMAT_VERSION,
            k,
            i,
            producer: producer.to_string(),
            seed: seed.to_string(),
            count: lines.len(),
        };
        Dataset { header, keys: lines.into_iter().map(|l| l.1).collect() }
    }

    pub fn polygons(&self) -> Result<Vec<ScaledPolygon>> {
        self.keys.iter().map(|key| key.to_polygon(self.header.k)).collect()
    }

    pub fn render(&self) -> String {
        let mut s = self.header.render();
        for key in &self.keys {
            s.push_str(&encode_key(self.header.k, key));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            w.write_all(self.render().as_bytes())?;
            w.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Dataset> {
        Dataset::parse(&fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Dataset> {
        let mut header = DatasetHeader::default();
        let mut keys = Vec::new();
        let mut saw_k = false;
        for line in text.lines() {
            if let Some(h) = line.strip_prefix("# ") {
                let (name, value) = h.split_once(' ').unwrap_or((h, ""));
                let num = |v: &str| v.parse::<i64>().map_err(|_| Error::Invalid(format!("bad header line {line:?}")));
                match name {
                    "ratpoly-dataset" => header.version = num(value)? as u32,
                    "k" => {
                        header.k = num(value)?;
                        saw_k = true;
                    }
                    "i" => header.i = if value == "mixed" { None } else { Some(num(value)? as u64) },
                    "producer" => header.producer = value.to_string(),
                    "seed" => header.seed = value.to_string(),
                    "count" => header.count = num(value)? as usize,
                    _ => {}
                }
            } else if !line.is_empty() {
                let (k, key) = decode_key(line)?;
                if saw_k && k != header.k {
                    return Err(Error::Invalid(format!("line has k={k}, header says {}", header.k)));
                }
                if !saw_k {
                    header.k = k;
                    saw_k = true;
                }
                keys.push(key);
            }
        }
        if header.count != keys.len() {
            return Err(Error::Invalid(format!("header count {} but {} polygons", header.count, keys.len())));
        }
        Ok(Dataset { header, keys })
    }
}

/// Where and how a long computation persists its progress.
#[derive(Clone, Debug)]
pub struct CheckpointConfig {
    pub dir: PathBuf,
    pub resume: bool,
    /// Stop with [`Error::Interrupted`] after this many commits.
    pub stop_after: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
struct Manifest {
    format: u32,
    operation: String,
    params: serde_json::Value,
    watermark: Option<i64>,
    complete: bool,
    /// Committed byte length of each shard file.
    shards: BTreeMap<String, u64>,
}

/// A checkpoint directory: `run.json` plus append-only shard files. Data
/// appended after the last commit is discarded on resume.
pub struct RunStore {
    dir: PathBuf,
    manifest: Manifest,
    pending: BTreeMap<String, u64>,
    commits: usize,
    stop_after: Option<usize>,
}

const MANIFEST: &str = "run.json";

impl RunStore {
    /// Opens a run. Returns the store and whether it resumed earlier state.
    pub fn open(cfg: &CheckpointConfig, operation: &str, params: serde_json::Value) -> Result<(RunStore, bool)> {
        fs::create_dir_all(&cfg.dir)?;
        let path = cfg.dir.join(MANIFEST);
        let fresh = Manifest {
            format: FORMAT_VERSION,
            operation: operation.to_string(),
            params,
            watermark: None,
            complete: false,
            shards: BTreeMap::new(),
        };
        if cfg.resume && path.exists() {
            let old: Manifest = serde_json::from_str(&fs::read_to_string(&path)?)
                .map_err(|e| Error::ResumeMismatch(format!("unreadable manifest: {e}")))?;
            if old.format != fresh.format || old.operation != fresh.operation || old.params != fresh.params {
                return Err(Error::ResumeMismatch(format!(
                    "checkpoint holds {} {}, requested {} {}",
                    old.operation, old.params, fresh.operation, fresh.params
                )));
            }
            let store = RunStore { dir: cfg.dir.clone(), manifest: old, pending: BTreeMap::new(), commits: 0, stop_after: cfg.stop_after };
            return Ok((store, true));
        }
        for entry in fs::read_dir(&cfg.dir)? {
            let p = entry?.path();
            if p.extension().is_some_and(|e| e == "shard") || p.file_name().is_some_and(|n| n == MANIFEST) {
                fs::remove_file(p)?;
            }
        }
        let store = RunStore { dir: cfg.dir.clone(), manifest: fresh, pending: BTreeMap::new(), commits: 0, stop_after: cfg.stop_after };
        store.write_manifest()?;
        Ok((store, false))
    }

    pub fn watermark(&self) -> Option<i64> {
        self.manifest.watermark
    }

    pub fn is_complete(&self) -> bool {
        self.manifest.complete
    }

    fn shard_path(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.shard"))
    }

    /// Committed lines of every shard.
    pub fn load(&self) -> Result<BTreeMap<String, Vec<String>>> {
        let mut out = BTreeMap::new();
        for (name, &len) in &self.manifest.shards {
            let mut f = File::open(self.shard_path(name))?;
            let mut buf = Vec::with_capacity(len as usize);
            Read::by_ref(&mut f).take(len).read_to_end(&mut buf)?;
            if buf.len() as u64 != len {
                return Err(Error::ResumeMismatch(format!("shard {name} is shorter than committed")));
            }
            let lines = BufReader::new(buf.as_slice()).lines().collect::<std::io::Result<Vec<_>>>()?;
            out.insert(name.clone(), lines);
        }
        Ok(out)
    }

    /// Appends lines to a shard; they become durable at the next commit.
    pub fn append(&mut self, shard: &str, lines: &[String]) -> Result<()> {
        let path = self.shard_path(shard);
        let committed = match self.pending.get(shard) {
            Some(&len) => len,
            None => self.manifest.shards.get(shard).copied().unwrap_or(0),
        };
        let mut f = OpenOptions::new().create(true).write(true).truncate(false).open(&path)?;
        let len = f.metadata()?.len();
        if len != committed {
            f.set_len(committed)?;
        }
        f.seek(std::io::SeekFrom::Start(committed))?;
        let mut w = BufWriter::new(f);
        for l in lines {
            w.write_all(l.as_bytes())?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
        let new_len = w.get_ref().metadata()?.len();
        self.pending.insert(shard.to_string(), new_len);
        Ok(())
    }

    /// Records appended data and the new watermark.
    pub fn commit(&mut self, watermark: Option<i64>, complete: bool) -> Result<()> {
        for (name, len) in std::mem::take(&mut self.pending) {
            self.manifest.shards.insert(name, len);
        }
        self.manifest.watermark = watermark;
        self.manifest.complete = complete;
        self.write_manifest()?;
        self.commits += 1;
        if !complete && self.stop_after.is_some_and(|s| self.commits >= s) {
            return Err(Error::Interrupted(self.commits));
        }
        Ok(())
    }

    fn write_manifest(&self) -> Result<()> {
        let path = self.dir.join(MANIFEST);
        let tmp = self.dir.join("run.json.tmp");
        let text = serde_json::to_string_pretty(&self.manifest).map_err(|e| Error::Io(e.to_string()))?;
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

/// FNV-1a digest, used to fingerprint run inputs.
pub fn fingerprint<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for s in items {
        for b in s.bytes().chain(std::iter::once(b'\n')) {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    format!("{h:016x}")
}
