//! Text formats for complexes and orbit tables, and the on-disk cache of
//! pipeline artifacts.
//!
//! A complex file:
//!
//! ```text
//! weyl-toric complex 1
//! spec E7
//! vertices 408
//! facets 3840
//! v <id> <orbit> <c_1> ... <c_n>
//! ...
//! f <id> <id> ...
//! ...
//! ```
//!
//! An orbit table file:
//!
//! ```text
//! weyl-toric orbit 1
//! spec E7
//! index 7
//! size 56
//! <c_1> ... <c_n>
//! ...
//! ```

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::coxeter::VertexTable;
use crate::error::{Error, Result};
use crate::root_system::RootSystemSpec;
use crate::simplicial::{Simplex, SimplicialComplex, Vertex};
use crate::weyl::Coweight;

const COMPLEX_MAGIC: &str = "weyl-toric complex 1";
const ORBIT_MAGIC: &str = "weyl-toric orbit 1";

fn bad(path: &Path, reason: impl Into<String>) -> Error {
    Error::Cache {
        path: path.display().to_string(),
        reason: reason.into(),
    }
}

/// Writes via a sibling temporary file and a rename, so readers never see
/// a partial file.
fn write_atomic(path: &Path, f: impl FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("partial");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        f(&mut w)?;
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_complex(path: &Path, table: &VertexTable, k: &SimplicialComplex) -> Result<()> {
    write_atomic(path, |w| write_complex_to(w, table, k))
}

/// Writes a complex in the text format to any writer.
pub fn write_complex_to<W: Write + ?Sized>(w: &mut W, table: &VertexTable, k: &SimplicialComplex) -> std::io::Result<()> {
    let n = table.rank();
    writeln!(w, "{COMPLEX_MAGIC}")?;
    writeln!(w, "spec {}", table.spec())?;
    let verts = k.vertices();
    writeln!(w, "vertices {}", verts.len())?;
    writeln!(w, "facets {}", k.num_facets())?;
    for v in verts {
        write!(w, "v {} {}", v, table.orbit_of(v) + 1)?;
        for c in &table.coweight(v)[..n] {
            write!(w, " {c}")?;
        }
        writeln!(w)?;
    }
    for f in k.facets() {
        w.write_all(b"f")?;
        for v in f {
            write!(w, " {v}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

fn header_value<'a>(path: &Path, line: Option<&'a str>, key: &str) -> Result<&'a str> {
    line.and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix(' '))
        .ok_or_else(|| bad(path, format!("missing `{key}` header")))
}

fn parse_num<T: std::str::FromStr>(path: &Path, s: &str) -> Result<T> {
    s.parse().map_err(|_| bad(path, format!("not a number: {s:?}")))
}

/// Reads a complex file; when `table` is given, checks the type and every
/// vertex line against it.
pub fn read_complex(path: &Path, table: Option<&VertexTable>) -> Result<(RootSystemSpec, SimplicialComplex)> {
    let file = BufReader::new(fs::File::open(path)?);
    let mut lines = file.lines();
    let mut next = || lines.next().transpose();
    if next()?.as_deref() != Some(COMPLEX_MAGIC) {
        return Err(bad(path, "not a complex file"));
    }
    let spec_line = next()?;
    let spec: RootSystemSpec = header_value(path, spec_line.as_deref(), "spec")?.parse()?;
    if let Some(t) = table {
        if t.spec() != spec {
            return Err(bad(path, format!("spec {spec} does not match {}", t.spec())));
        }
    }
    let vl = next()?;
    let nv: usize = parse_num(path, header_value(path, vl.as_deref(), "vertices")?)?;
    let fl = next()?;
    let nf: usize = parse_num(path, header_value(path, fl.as_deref(), "facets")?)?;
    let mut facets: Vec<Simplex> = Vec::with_capacity(nf);
    let mut seen_vertices = 0;
    while let Some(line) = next()? {
        let mut it = line.split_ascii_whitespace();
        match it.next() {
            Some("v") => {
                seen_vertices += 1;
                if let Some(t) = table {
                    let id: Vertex = parse_num(path, it.next().unwrap_or(""))?;
                    let orbit: usize = parse_num(path, it.next().unwrap_or(""))?;
                    let coords: Vec<i8> = it.map(|c| parse_num(path, c)).collect::<Result<_>>()?;
                    if id as usize >= t.len()
                        || t.orbit_of(id) + 1 != orbit
                        || t.coweight(id)[..t.rank()] != coords[..]
                    {
                        return Err(bad(path, format!("vertex {id} does not match the vertex table")));
                    }
                }
            }
            Some("f") => {
                let f: Simplex = it.map(|c| parse_num(path, c)).collect::<Result<_>>()?;
                if f.is_empty() || f.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(bad(path, format!("facet line not strictly increasing: {line}")));
                }
                facets.push(f);
            }
            _ => return Err(bad(path, format!("unexpected line: {line}"))),
        }
    }
    if facets.len() != nf || seen_vertices != nv {
        return Err(bad(path, "counts do not match the header"));
    }
    let k = SimplicialComplex::from_faces(facets.iter().map(|f| f.iter().copied()));
    if k.num_facets() != nf || k.num_vertices() != nv {
        return Err(bad(path, "facets are not maximal or vertices are unused"));
    }
    Ok((spec, k))
}

pub fn write_orbit(path: &Path, spec: RootSystemSpec, index: usize, vectors: &[Coweight]) -> Result<()> {
    let n = spec.rank();
    write_atomic(path, |w| {
        writeln!(w, "{ORBIT_MAGIC}")?;
        writeln!(w, "spec {spec}")?;
        writeln!(w, "index {}", index + 1)?;
        writeln!(w, "size {}", vectors.len())?;
        for v in vectors {
            let parts: Vec<String> = v[..n].iter().map(|c| c.to_string()).collect();
            writeln!(w, "{}", parts.join(" "))?;
        }
        Ok(())
    })
}

/// Returns the type, the 0-based co-weight index and the vectors.
pub fn read_orbit(path: &Path) -> Result<(RootSystemSpec, usize, Vec<Coweight>)> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(ORBIT_MAGIC) {
        return Err(bad(path, "not an orbit file"));
    }
    let spec: RootSystemSpec = header_value(path, lines.next(), "spec")?.parse()?;
    let index: usize = parse_num(path, header_value(path, lines.next(), "index")?)?;
    let size: usize = parse_num(path, header_value(path, lines.next(), "size")?)?;
    if index == 0 || index > spec.rank() {
        return Err(bad(path, format!("index {index} out of range")));
    }
    let mut out = Vec::with_capacity(size);
    for line in lines {
        let coords: Vec<i8> = line.split_ascii_whitespace().map(|c| parse_num(path, c)).collect::<Result<_>>()?;
        if coords.len() != spec.rank() {
            return Err(bad(path, format!("expected {} coordinates: {line}", spec.rank())));
        }
        let mut v = [0i8; crate::root_system::MAX_RANK];
        v[..coords.len()].copy_from_slice(&coords);
        out.push(v);
    }
    if out.len() != size {
        return Err(bad(path, "size does not match the header"));
    }
    Ok((spec, index - 1, out))
}

/// Cache directory laid out as `<root>/<spec>/<kind>[-<rep>].<ext>`.
#[derive(Debug, Clone)]
pub struct CacheDir {
    root: PathBuf,
}

impl CacheDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, spec: RootSystemSpec, kind: &str, rep: Option<&str>, ext: &str) -> PathBuf {
        let name = match rep {
            Some(r) => format!("{kind}-{r}.{ext}"),
            None => format!("{kind}.{ext}"),
        };
        self.root.join(spec.to_string()).join(name)
    }

    pub fn load_json<T: DeserializeOwned>(&self, path: &Path) -> Result<Option<T>> {
        match fs::read_to_string(path) {
            Ok(s) => Ok(Some(serde_json::from_str(&s)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn store_json<T: Serialize>(&self, path: &Path, value: &T) -> Result<()> {
        write_atomic(path, |w| {
            serde_json::to_writer_pretty(&mut *w, value).map_err(std::io::Error::other)?;
            writeln!(w)
        })
    }

    /// Loads a complex if present and valid for `table`.
    pub fn load_complex(&self, path: &Path, table: &VertexTable) -> Result<Option<SimplicialComplex>> {
        if !path.exists() {
            return Ok(None);
        }
        read_complex(path, Some(table)).map(|(_, k)| Some(k))
    }
}
