//! On-disk tables of irreducible polynomials.
//!
//! One text file per (field, degree): a header line
//! `ffdisc-irr v1 q=<q> deg=<d> count=<n>` followed by one polynomial literal per line.
//! Writers go through a temporary file in the same directory and an atomic rename, so
//! concurrent processes may share a directory.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

pub fn header(q: u32, deg: usize, count: usize) -> String {
    format!("ffdisc-irr v1 q={q} deg={deg} count={count}")
}

/// File name for a (field, degree) table; extension fields include their modulus.
pub fn file_name(f: &Field, deg: usize) -> String {
    match f.ext_modulus() {
        None => format!("irr-q{}-d{deg}.txt", f.q()),
        Some(m) => {
            let m: Vec<String> = m.iter().map(u32::to_string).collect();
            format!("irr-q{}-m{}-d{deg}.txt", f.q(), m.join("_"))
        }
    }
}

pub fn path_for(f: &Field, deg: usize) -> Option<PathBuf> {
    f.cache_dir().map(|d| d.join(file_name(f, deg)))
}

/// Renders a table in the cache format (coefficient-list literals).
pub fn render(f: &Field, deg: usize, polys: &[Poly]) -> String {
    let mut s = header(f.q(), deg, polys.len());
    s.push('\n');
    for p in polys {
        let c: Vec<String> = p.coeffs().iter().map(u32::to_string).collect();
        s.push_str(&c.join(","));
        s.push('\n');
    }
    s
}

/// Parses a table, validating the header against the field and degree.
pub fn parse(f: &Field, deg: usize, text: &str) -> Result<Vec<Poly>> {
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| Error::Io("empty cache file".into()))?;
    let mut count = None;
    let mut fields = head.split_whitespace();
    if fields.next() != Some("ffdisc-irr") || fields.next() != Some("v1") {
        return Err(Error::Io(format!("bad cache header: {head}")));
    }
    for kv in fields {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Io(format!("bad header field {kv}")))?;
        let v: u64 = v.parse().map_err(|_| Error::Io(format!("bad header value {kv}")))?;
        match k {
            "q" if v == f.q() as u64 => {}
            "deg" if v == deg as u64 => {}
            "count" => count = Some(v as usize),
            _ => return Err(Error::Io(format!("cache header mismatch: {kv}"))),
        }
    }
    let polys = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| crate::literal::parse_poly(f, l))
        .collect::<Result<Vec<_>>>()?;
    if Some(polys.len()) != count {
        return Err(Error::Io("cache count does not match contents".into()));
    }
    if polys.iter().any(|p| p.deg() != Some(deg) || !p.is_monic()) {
        return Err(Error::Io("cache entry of wrong degree".into()));
    }
    Ok(polys)
}

pub(crate) fn load(f: &Field, deg: usize) -> Option<Vec<Poly>> {
    let path = path_for(f, deg)?;
    let text = std::fs::read_to_string(path).ok()?;
    parse(f, deg, &text).ok()
}

pub(crate) fn store(f: &Field, deg: usize, polys: &[Poly]) {
    if let Some(dir) = f.cache_dir() {
        let _ = write_atomic(dir, &file_name(f, deg), &render(f, deg, polys));
    }
}

/// Writes `contents` to `dir/name` via a temporary file and rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(dir.join(name)).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    #[test]
    fn round_trip_through_directory() {
        let dir = tempfile::tempdir().unwrap();
        let f = FieldConfig::prime(3).with_cache_dir(dir.path()).build().unwrap();
        let first = crate::enumerate::irreducibles_of_degree(&f, 4);
        let path = path_for(&f, 4).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(&header(3, 4, 18)));
        let g = FieldConfig::prime(3).with_cache_dir(dir.path()).build().unwrap();
        assert_eq!(load(&g, 4).unwrap(), *first);
    }

    #[test]
    fn rejects_mismatched_header() {
        let f = FieldConfig::prime(2).build().unwrap();
        assert!(parse(&f, 2, "ffdisc-irr v1 q=3 deg=2 count=1\n1,1,1\n").is_err());
        assert!(parse(&f, 2, "ffdisc-irr v1 q=2 deg=2 count=2\n1,1,1\n").is_err());
        assert_eq!(parse(&f, 2, "ffdisc-irr v1 q=2 deg=2 count=1\nt^2+t+1\n").unwrap().len(), 1);
    }
}
