//! Portable text format for cached structure-constant and operator tables.
//!
//! One table per file: a fixed header (type, rank, dim, name, engine hash,
//! shape) followed by one entry per line, `i j k num den`. Structure tables
//! store `[e_i, e_j] = (num/den) e_k` with i < j; matrices store `(row, col,
//! 0, num, den)`. The writer is canonical (sorted entries, reduced fractions,
//! positive denominators) and the parser rejects anything non-canonical, so
//! parse and write are mutually inverse bit for bit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactla::SparseMat;
use crate::liealg::LieAlgebra;
use crate::rootsys::TypeRank;
use crate::{Error, Rat, Result};

const MAGIC: &str = "liecert-table v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableHeader {
    pub type_rank: TypeRank,
    pub dim: usize,
    pub name: String,
    pub hash: String,
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: TableHeader,
    /// (i, j, k, numerator, denominator), sorted, denominators positive,
    /// fractions reduced, no zero numerators.
    pub entries: Vec<(u32, u32, u32, BigInt, BigInt)>,
}

pub fn write_table(t: &Table) -> String {
    let mut out = String::new();
    let h = &t.header;
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(
        out,
        "type {} rank {} dim {}",
        h.type_rank.label, h.type_rank.rank, h.dim
    )
    .unwrap();
    writeln!(out, "name {}", h.name).unwrap();
    writeln!(out, "hash {}", h.hash).unwrap();
    writeln!(out, "rows {} cols {}", h.rows, h.cols).unwrap();
    writeln!(out, "entries {}", t.entries.len()).unwrap();
    for (i, j, k, num, den) in &t.entries {
        writeln!(out, "{i} {j} {k} {num} {den}").unwrap();
    }
    out
}

fn parse_kv<'a>(line: &'a str, key: &str) -> Result<&'a str> {
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| Error::CacheFormat(format!("expected `{key} ...`, got `{line}`")))
}

pub fn parse_table(s: &str) -> Result<Table> {
    let mut lines = s.lines();
    let magic = lines
        .next()
        .ok_or_else(|| Error::CacheFormat("empty file".into()))?;
    if magic != MAGIC {
        return Err(Error::CacheFormat(format!("bad magic `{magic}`")));
    }
    let type_line = lines
        .next()
        .ok_or_else(|| Error::CacheFormat("missing type line".into()))?;
    let parts: Vec<&str> = type_line.split(' ').collect();
    if parts.len() != 6 || parts[0] != "type" || parts[2] != "rank" || parts[4] != "dim" {
        return Err(Error::CacheFormat(format!("bad type line `{type_line}`")));
    }
    let type_rank: TypeRank = format!("{}{}", parts[1], parts[3]).parse()?;
    if parts[1].len() != 1 {
        return Err(Error::CacheFormat("type label must be one letter".into()));
    }
    let dim: usize = parts[5]
        .parse()
        .map_err(|_| Error::CacheFormat("bad dim".into()))?;
    let name = parse_kv(
        lines
            .next()
            .ok_or_else(|| Error::CacheFormat("missing name".into()))?,
        "name",
    )?
    .to_string();
    if name.is_empty() || !name.bytes().all(|b| b.is_ascii_graphic()) {
        return Err(Error::CacheFormat("bad table name".into()));
    }
    let hash = parse_kv(
        lines
            .next()
            .ok_or_else(|| Error::CacheFormat("missing hash".into()))?,
        "hash",
    )?
    .to_string();
    if hash.is_empty() || !hash.bytes().all(|b| b.is_ascii_graphic()) {
        return Err(Error::CacheFormat("bad hash".into()));
    }
    let shape_line = lines
        .next()
        .ok_or_else(|| Error::CacheFormat("missing shape line".into()))?;
    let parts: Vec<&str> = shape_line.split(' ').collect();
    if parts.len() != 4 || parts[0] != "rows" || parts[2] != "cols" {
        return Err(Error::CacheFormat(format!("bad shape line `{shape_line}`")));
    }
    let rows: usize = parts[1]
        .parse()
        .map_err(|_| Error::CacheFormat("bad rows".into()))?;
    let cols: usize = parts[3]
        .parse()
        .map_err(|_| Error::CacheFormat("bad cols".into()))?;
    let count_line = lines
        .next()
        .ok_or_else(|| Error::CacheFormat("missing entries line".into()))?;
    let count: usize = parse_kv(count_line, "entries")?
        .parse()
        .map_err(|_| Error::CacheFormat("bad entry count".into()))?;
    if count > s.len() {
        return Err(Error::CacheFormat("entry count exceeds input size".into()));
    }

    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines
            .next()
            .ok_or_else(|| Error::CacheFormat("truncated entry list".into()))?;
        let mut f = line.split(' ');
        let mut next = || {
            f.next()
                .ok_or_else(|| Error::CacheFormat(format!("short entry `{line}`")))
        };
        let i: u32 = next()?
            .parse()
            .map_err(|_| Error::CacheFormat("bad index".into()))?;
        let j: u32 = next()?
            .parse()
            .map_err(|_| Error::CacheFormat("bad index".into()))?;
        let k: u32 = next()?
            .parse()
            .map_err(|_| Error::CacheFormat("bad index".into()))?;
        let num_s = next()?;
        let den_s = next()?;
        if f.next().is_some() {
            return Err(Error::CacheFormat(format!("trailing fields in `{line}`")));
        }
        // canonical integers only: optional minus, no leading zeros
        for (s, signed) in [(num_s, true), (den_s, false)] {
            let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
            let ok = !digits.is_empty()
                && digits.bytes().all(|b| b.is_ascii_digit())
                && (digits == "0" || !digits.starts_with('0'))
                && s != "-0";
            if !ok {
                return Err(Error::CacheFormat(format!("non-canonical number `{s}`")));
            }
        }
        let num = BigInt::from_str(num_s).map_err(|_| Error::CacheFormat("bad numerator".into()))?;
        let den = BigInt::from_str(den_s).map_err(|_| Error::CacheFormat("bad denominator".into()))?;
        if den <= BigInt::zero() {
            return Err(Error::CacheFormat("denominator must be positive".into()));
        }
        if num.is_zero() {
            return Err(Error::CacheFormat("zero entries are not stored".into()));
        }
        if num.gcd(&den) != BigInt::one() {
            return Err(Error::CacheFormat("fraction not reduced".into()));
        }
        entries.push((i, j, k, num, den));
    }
    if lines.next().is_some() {
        return Err(Error::CacheFormat("trailing data after entries".into()));
    }
    // canonical order, no duplicates
    for w in entries.windows(2) {
        let a = (&w[0].0, &w[0].1, &w[0].2);
        let b = (&w[1].0, &w[1].1, &w[1].2);
        if a >= b {
            return Err(Error::CacheFormat("entries out of order".into()));
        }
    }
    Ok(Table {
        header: TableHeader {
            type_rank,
            dim,
            name,
            hash,
            rows,
            cols,
        },
        entries,
    })
}

/// Structure-constant table of an algebra, canonical.
pub fn structure_table(alg: &LieAlgebra) -> Table {
    let entries = alg
        .structure_triples()
        .into_iter()
        .map(|(i, j, k, v)| (i as u32, j as u32, k as u32, BigInt::from(v), BigInt::one()))
        .collect();
    Table {
        header: TableHeader {
            type_rank: alg.rs.type_rank,
            dim: alg.dim,
            name: "structure".into(),
            hash: crate::ENGINE_VERSION.into(),
            rows: alg.dim,
            cols: alg.dim,
        },
        entries,
    }
}

/// Any sparse matrix as a table under a given operator name.
pub fn matrix_table(type_rank: TypeRank, dim: usize, name: &str, m: &SparseMat) -> Table {
    let entries = m
        .triples()
        .into_iter()
        .map(|(r, c, v)| {
            (
                r as u32,
                c as u32,
                0u32,
                v.numer().clone(),
                v.denom().clone(),
            )
        })
        .collect();
    Table {
        header: TableHeader {
            type_rank,
            dim,
            name: name.into(),
            hash: crate::ENGINE_VERSION.into(),
            rows: m.rows(),
            cols: m.cols(),
        },
        entries,
    }
}

pub fn matrix_from_table(t: &Table) -> Result<SparseMat> {
    let triples = t.entries.iter().map(|(r, c, k, num, den)| {
        if *k != 0 {
            return Err(Error::CacheFormat("matrix entries use k = 0".into()));
        }
        Ok((
            *r as usize,
            *c as usize,
            Rat::new(num.clone(), den.clone()),
        ))
    });
    let triples: Vec<_> = triples.collect::<Result<_>>()?;
    SparseMat::from_triples(t.header.rows, t.header.cols, triples)
}

pub fn cache_path(dir: &Path, tr: TypeRank, name: &str) -> PathBuf {
    dir.join(format!("{tr}-{name}-{}.table", crate::ENGINE_VERSION))
}

/// Load a cached algebra or build it and write the cache. Cached tables are
/// re-verified against a fresh build, so a corrupt cache surfaces as an
/// error instead of silently skewing downstream certificates.
pub fn load_or_build_algebra(dir: Option<&Path>, tr: TypeRank) -> Result<LieAlgebra> {
    let rs = crate::rootsys::build_root_system(tr)?;
    let Some(dir) = dir else {
        return crate::liealg::build_chevalley(&rs);
    };
    let path = cache_path(dir, tr, "structure");
    if path.exists() {
        let text = std::fs::read_to_string(&path)?;
        let table = parse_table(&text)?;
        if table.header.hash != crate::ENGINE_VERSION {
            return Err(Error::CacheFormat(format!(
                "cache hash {} does not match engine {}",
                table.header.hash,
                crate::ENGINE_VERSION
            )));
        }
        let triples: Vec<(usize, usize, usize, i64)> = table
            .entries
            .iter()
            .map(|(i, j, k, num, den)| {
                use num_traits::ToPrimitive;
                if !den.is_one() {
                    return Err(Error::CacheFormat(
                        "structure constants are integers".into(),
                    ));
                }
                Ok((
                    *i as usize,
                    *j as usize,
                    *k as usize,
                    num.to_i64()
                        .ok_or_else(|| Error::CacheFormat("structure constant overflow".into()))?,
                ))
            })
            .collect::<Result<_>>()?;
        return crate::liealg::LieAlgebra::from_structure_triples(&rs, &triples);
    }
    let alg = crate::liealg::build_chevalley(&rs)?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, write_table(&structure_table(&alg)))?;
    Ok(alg)
}

/// Load a cached operator matrix or assemble it and write the cache.
pub fn load_or_assemble_matrix(
    dir: Option<&Path>,
    tr: TypeRank,
    dim: usize,
    name: &str,
    assemble: impl FnOnce() -> Result<SparseMat>,
) -> Result<SparseMat> {
    let Some(dir) = dir else {
        return assemble();
    };
    let path = cache_path(dir, tr, name);
    if path.exists() {
        let table = parse_table(&std::fs::read_to_string(&path)?)?;
        if table.header.hash != crate::ENGINE_VERSION || table.header.name != name {
            return Err(Error::CacheFormat("cache key mismatch".into()));
        }
        return matrix_from_table(&table);
    }
    let m = assemble()?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, write_table(&matrix_table(tr, dim, name, &m)))?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_chevalley;
    use crate::rootsys::build_root_system;

    #[test]
    fn structure_table_round_trips_bit_exactly() {
        let alg = build_chevalley(&build_root_system("G2".parse().unwrap()).unwrap()).unwrap();
        let table = structure_table(&alg);
        let text = write_table(&table);
        let parsed = parse_table(&text).unwrap();
        assert_eq!(parsed, table);
        assert_eq!(write_table(&parsed), text);
    }

    #[test]
    fn matrix_table_round_trips() {
        let alg = build_chevalley(&build_root_system("A2".parse().unwrap()).unwrap()).unwrap();
        let m = crate::operators::bianchi_matrix(&alg).unwrap();
        let tr = alg.rs.type_rank;
        let t = matrix_table(tr, alg.dim, "bianchi", &m);
        let text = write_table(&t);
        let parsed = parse_table(&text).unwrap();
        assert_eq!(matrix_from_table(&parsed).unwrap(), m);
        assert_eq!(write_table(&parsed), text);
    }

    #[test]
    fn parser_rejects_malformed_input() {
        for bad in [
            "",
            "garbage",
            "liecert-table v1\n",
            "liecert-table v1\ntype A rank 2 dim 8\nname t\nhash h\nrows 1 cols 1\nentries 1\n",
            "liecert-table v1\ntype A rank 2 dim 8\nname t\nhash h\nrows 1 cols 1\nentries 1\n0 0 0 1 0\n",
            "liecert-table v1\ntype A rank 2 dim 8\nname t\nhash h\nrows 1 cols 1\nentries 1\n0 0 0 2 4\n",
            "liecert-table v1\ntype A rank 2 dim 8\nname t\nhash h\nrows 1 cols 1\nentries 1\n0 0 0 01 1\n",
            "liecert-table v1\ntype Z rank 2 dim 8\nname t\nhash h\nrows 1 cols 1\nentries 0\n",
            "liecert-table v1\ntype A rank 2 dim 8\nname t\nhash h\nrows 1 cols 1\nentries 0\nextra\n",
        ] {
            assert!(parse_table(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn algebra_cache_round_trip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let tr: TypeRank = "B3".parse().unwrap();
        let a = load_or_build_algebra(Some(dir.path()), tr).unwrap();
        assert!(cache_path(dir.path(), tr, "structure").exists());
        let b = load_or_build_algebra(Some(dir.path()), tr).unwrap();
        assert_eq!(a.structure_triples(), b.structure_triples());
        // the cached bytes are canonical: a second write is identical
        let text = std::fs::read_to_string(cache_path(dir.path(), tr, "structure")).unwrap();
        assert_eq!(text, write_table(&structure_table(&b)));
    }

    #[test]
    fn corrupted_cache_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let tr: TypeRank = "A2".parse().unwrap();
        load_or_build_algebra(Some(dir.path()), tr).unwrap();
        let path = cache_path(dir.path(), tr, "structure");
        let mut text = std::fs::read_to_string(&path).unwrap();
        // flip one structure constant
        text = text.replace(" 1\n", " 2\n");
        std::fs::write(&path, text).unwrap();
        assert!(load_or_build_algebra(Some(dir.path()), tr).is_err());
    }
}
