//! JSON tensor exchange format.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "signature": {"p": 1, "q": 3},
//!   "kind": "curv4",
//!   "storage": "dense",
//!   "components": [[[[0.0, ...]]]],
//!   "metadata": {"name": "...", "provenance": "..."}
//! }
//! ```
//!
//! Dense components are nested arrays of depth 4 (`curv4`) or 5 (`curv5`)
//! indexed in argument order, the derivative slot last. Sparse files use
//! `"storage": "sparse"` and `"entries": [[i, j, k, l, value], ...]`; unlisted
//! components are zero and nothing is symmetrized.

use std::fmt;
use std::path::Path;

use anyhow::{bail, Context};
use curvature_core::{Curv4, Curv5, SignatureSpace};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    Curv4,
    Curv5,
}

impl TensorKind {
    pub fn arity(self) -> usize {
        match self {
            TensorKind::Curv4 => 4,
            TensorKind::Curv5 => 5,
        }
    }
}

impl fmt::Display for TensorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TensorKind::Curv4 => "curv4",
            TensorKind::Curv5 => "curv5",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Storage {
    Dense,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// Raw on-disk layout; shape checks happen in [`TensorFile::parse`].
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: u32,
    signature: Signature,
    kind: TensorKind,
    storage: Storage,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    components: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Tensor {
    Curv4(Curv4),
    Curv5(Curv5),
}

impl Tensor {
    pub fn kind(&self) -> TensorKind {
        match self {
            Tensor::Curv4(_) => TensorKind::Curv4,
            Tensor::Curv5(_) => TensorKind::Curv5,
        }
    }

    pub fn space(&self) -> &SignatureSpace {
        match self {
            Tensor::Curv4(r) => r.space(),
            Tensor::Curv5(t) => t.space(),
        }
    }

    pub fn components(&self) -> &[f64] {
        match self {
            Tensor::Curv4(r) => r.components(),
            Tensor::Curv5(t) => t.components(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorFile {
    pub tensor: Tensor,
    pub storage: Storage,
    pub metadata: Option<Metadata>,
}

impl TensorFile {
    pub fn new(tensor: Tensor) -> Self {
        Self {
            tensor,
            storage: Storage::Dense,
            metadata: None,
        }
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("malformed tensor file {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let raw: RawFile =
            serde_json::from_str(text).map_err(|e| anyhow::anyhow!("line {}, column {}: {e}", e.line(), e.column()))?;
        if raw.format_version != FORMAT_VERSION {
            bail!(
                "field `format_version`: unsupported version {} (expected {FORMAT_VERSION})",
                raw.format_version
            );
        }
        let space = SignatureSpace::new(raw.signature.p, raw.signature.q).context("field `signature`")?;
        let m = space.dim();
        let arity = raw.kind.arity();
        let comp = match raw.storage {
            Storage::Dense => {
                if raw.entries.is_some() {
                    bail!("field `entries`: not allowed with dense storage");
                }
                let value = raw
                    .components
                    .context("field `components`: missing for dense storage")?;
                let mut out = Vec::with_capacity(m.pow(arity as u32));
                flatten_dense(&value, m, arity, "components", &mut out)?;
                out
            }
            Storage::Sparse => {
                if raw.components.is_some() {
                    bail!("field `components`: not allowed with sparse storage");
                }
                let entries = raw.entries.context("field `entries`: missing for sparse storage")?;
                sparse_components(&entries, m, arity)?
            }
        };
        let tensor = match raw.kind {
            TensorKind::Curv4 => Tensor::Curv4(Curv4::from_components(space, comp)?),
            TensorKind::Curv5 => Tensor::Curv5(Curv5::from_components(space, comp)?),
        };
        Ok(Self {
            tensor,
            storage: raw.storage,
            metadata: raw.metadata,
        })
    }

    pub fn to_json(&self) -> String {
        let space = self.tensor.space();
        let m = space.dim();
        let arity = self.tensor.kind().arity();
        let comp = self.tensor.components();
        let (components, entries) = match self.storage {
            Storage::Dense => (Some(nest(comp, m, arity)), None),
            Storage::Sparse => {
                let entries = comp
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.to_bits() != 0)
                    .map(|(flat, v)| {
                        let mut row: Vec<Value> = unflatten(flat, m, arity).into_iter().map(Value::from).collect();
                        row.push(Value::from(*v));
                        row
                    })
                    .collect();
                (None, Some(entries))
            }
        };
        let raw = RawFile {
            format_version: FORMAT_VERSION,
            signature: Signature {
                p: space.p(),
                q: space.q(),
            },
            kind: self.tensor.kind(),
            storage: self.storage,
            components,
            entries,
            metadata: self.metadata.clone(),
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("tensor file serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, self.to_json()).with_context(|| format!("cannot write {}", path.display()))
    }
}

fn flatten_dense(value: &Value, m: usize, depth: usize, path: &str, out: &mut Vec<f64>) -> anyhow::Result<()> {
    if depth == 0 {
        let v = value
            .as_f64()
            .with_context(|| format!("field `{path}`: expected a number, found {value}"))?;
        out.push(v);
        return Ok(());
    }
    let arr = value
        .as_array()
        .with_context(|| format!("field `{path}`: expected an array of length {m}"))?;
    if arr.len() != m {
        bail!(
            "field `{path}`: expected an array of length {m}, found length {}",
            arr.len()
        );
    }
    for (i, v) in arr.iter().enumerate() {
        flatten_dense(v, m, depth - 1, &format!("{path}[{i}]"), out)?;
    }
    Ok(())
}

fn sparse_components(entries: &[Vec<Value>], m: usize, arity: usize) -> anyhow::Result<Vec<f64>> {
    let mut comp = vec![0.0; m.pow(arity as u32)];
    let mut seen = vec![false; comp.len()];
    for (n, row) in entries.iter().enumerate() {
        if row.len() != arity + 1 {
            bail!(
                "field `entries[{n}]`: expected {arity} indices and a value, found {} items",
                row.len()
            );
        }
        let mut flat = 0usize;
        for (slot, ix) in row[..arity].iter().enumerate() {
            let i = ix
                .as_u64()
                .filter(|i| (*i as usize) < m)
                .with_context(|| format!("field `entries[{n}][{slot}]`: expected an index in 0..{m}, found {ix}"))?;
            flat = flat * m + i as usize;
        }
        let v = row[arity]
            .as_f64()
            .with_context(|| format!("field `entries[{n}][{arity}]`: expected a number"))?;
        if std::mem::replace(&mut seen[flat], true) {
            bail!("field `entries[{n}]`: duplicate index {:?}", unflatten(flat, m, arity));
        }
        comp[flat] = v;
    }
    Ok(comp)
}

fn unflatten(mut flat: usize, m: usize, arity: usize) -> Vec<usize> {
    let mut ix = vec![0; arity];
    for slot in (0..arity).rev() {
        ix[slot] = flat % m;
        flat /= m;
    }
    ix
}

fn nest(comp: &[f64], m: usize, depth: usize) -> Value {
    if depth == 0 {
        return Value::from(comp[0]);
    }
    let stride = comp.len() / m;
    Value::Array(
        (0..m)
            .map(|i| nest(&comp[i * stride..(i + 1) * stride], m, depth - 1))
            .collect(),
    )
}
