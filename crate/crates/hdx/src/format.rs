//! File formats: coefficient-group descriptions and tables, complexes as JSON
//! lines, and group dumps.

use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use hdx_core::complex::SimplicialComplex;
use hdx_core::matgroup::{FiniteGroup, GroupDomain, IndexedGroup, MatrixDomain, TableGroup};
use serde_json::{json, Value};

/// Parses `zmod:m`, `sym:k` or `table:FILE`.
pub fn parse_lambda(spec: &str) -> Result<TableGroup> {
    let (kind, arg) = spec.split_once(':').with_context(|| format!("coefficient group {spec:?}: expected zmod:m, sym:k or table:FILE"))?;
    Ok(match kind {
        "zmod" => TableGroup::cyclic(arg.parse().with_context(|| format!("bad order in {spec:?}"))?)?,
        "sym" => TableGroup::symmetric(arg.parse().with_context(|| format!("bad degree in {spec:?}"))?)?,
        "table" => read_table(Path::new(arg))?,
        _ => bail!("unknown coefficient group kind {kind:?}"),
    })
}

/// First line the order `m`, then `m` lines of `m` whitespace-separated
/// indices (row `a`, column `b` holds `a * b`).
pub fn parse_table(text: &str) -> Result<TableGroup> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let m: usize = lines.next().context("empty table file")?.parse().context("first line must be the group order")?;
    let mut table = Vec::with_capacity(m * m);
    for (r, line) in lines.enumerate() {
        let row: Vec<u32> = line.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().with_context(|| format!("row {}", r + 1))?;
        if row.len() != m {
            bail!("row {} has {} entries, expected {m}", r + 1, row.len());
        }
        table.extend(row);
    }
    Ok(TableGroup::from_table(m, table)?)
}

pub fn read_table(path: &Path) -> Result<TableGroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_table(&text)
}

pub fn format_table(g: &TableGroup) -> String {
    let m = g.order();
    let mut out = format!("{m}\n");
    for row in g.table().chunks(m) {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Header line `{"n", "vertex_count", "colors"}`, then one maximal face per
/// line as a sorted JSON array.
pub fn write_complex<W: Write>(x: &SimplicialComplex, mut w: W) -> Result<()> {
    let header = json!({"n": x.dim(), "vertex_count": x.vertex_count(), "colors": x.colors()});
    writeln!(w, "{header}")?;
    for f in x.facets().iter() {
        writeln!(w, "{}", Value::from(f.to_vec()))?;
    }
    Ok(())
}

pub fn read_complex<R: BufRead>(r: R) -> Result<SimplicialComplex> {
    let mut lines = r.lines();
    let header: Value = serde_json::from_str(&lines.next().context("empty complex file")??).context("complex header")?;
    let n = header["n"].as_u64().context("header needs an integer n")? as usize;
    let vc = header["vertex_count"].as_u64().context("header needs an integer vertex_count")? as usize;
    let colors = match &header["colors"] {
        Value::Null => None,
        v => Some(serde_json::from_value::<Vec<u32>>(v.clone()).context("colors must be an array of integers")?),
    };
    let mut facets = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<u32> = serde_json::from_str(&line).with_context(|| format!("face on line {}", k + 2))?;
        facets.push(f);
    }
    Ok(SimplicialComplex::from_facets(n, vc, colors, &facets)?)
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    let f = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_complex(std::io::BufReader::new(f))
}

/// Header `n p s |G|` (n the rank), then one element per line as its
/// packed key in fixed-width lower-case hex.
pub fn write_group_dump<W: Write>(g: &FiniteGroup<MatrixDomain>, mut w: W) -> Result<()> {
    let d = g.domain();
    writeln!(w, "{} {} {} {}", d.dim - 1, d.p, d.s, g.order())?;
    let width = hex_width(d);
    for &k in g.keys() {
        writeln!(w, "{k:0width$x}")?;
    }
    Ok(())
}

fn hex_width(d: &MatrixDomain) -> usize {
    let bits = (32 - (d.p - 1).leading_zeros()) as usize * d.dim * d.dim * d.s;
    bits.div_ceil(4)
}

/// Reads a group dump back as `(rank, p, s, elements)`.
pub fn read_group_dump<R: BufRead>(r: R) -> Result<(usize, u32, usize, Vec<hdx_core::matgroup::MatElement>)> {
    let mut lines = r.lines();
    let header = lines.next().context("empty group dump")??;
    let f: Vec<&str> = header.split_whitespace().collect();
    if f.len() != 4 {
        bail!("group dump header must be \"n p s |G|\"");
    }
    let (n, p, s, order): (usize, u32, usize, usize) = (f[0].parse()?, f[1].parse()?, f[2].parse()?, f[3].parse()?);
    let d = MatrixDomain::new(n + 1, p, s)?;
    let mut out = Vec::with_capacity(order);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let k = u128::from_str_radix(line.trim(), 16).with_context(|| format!("bad element {line:?}"))?;
        out.push(d.decode(k));
    }
    if out.len() != order {
        bail!("group dump lists {} elements, header says {order}", out.len());
    }
    Ok((n, p, s, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hdx_core::fixtures;
    use hdx_core::matgroup::subgroup_k;

    #[test]
    fn complex_round_trip() {
        for x in [fixtures::torus7(), fixtures::s3_six_cycle().complex, fixtures::petersen()] {
            let mut buf = Vec::new();
            write_complex(&x, &mut buf).unwrap();
            assert_eq!(read_complex(&buf[..]).unwrap(), x);
        }
    }

    #[test]
    fn table_round_trip() {
        let g = TableGroup::symmetric(3).unwrap();
        assert_eq!(parse_table(&format_table(&g)).unwrap().table(), g.table());
        assert!(parse_table("2\n0 1\n1 1\n").is_err());
        assert_eq!(parse_lambda("zmod:5").unwrap().order(), 5);
        assert_eq!(parse_lambda("sym:4").unwrap().order(), 24);
        assert!(parse_lambda("free:2").is_err());
    }

    #[test]
    fn group_dump_round_trip() {
        let k = subgroup_k(2, 2, 3, 1, 0, 1 << 10).unwrap();
        let mut buf = Vec::new();
        write_group_dump(&k, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("2 2 3 128\n"));
        let (n, p, s, elems) = read_group_dump(&buf[..]).unwrap();
        assert_eq!((n, p, s, elems.len()), (2, 2, 3, 128));
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(k.index_of(e), Some(i as u32));
        }
    }
}
