//! Text format for boundaried graphs, one record per line, `#` comments.
//!
//! ```text
//! bkg 1
//! n <count>
//! v <id> ...        (only when ids are not 0..count-1)
//! b <id> ...
//! x <id> ...        (optional modulator)
//! class independent|forest|td <d>|vc
//! tdp <child> <parent> ...   (optional decomposition sidecar; roots have parent = child)
//! e <u> <v> <mult>
//! ```
//!
//! The writer emits vertices and edges in ascending id order, so output is
//! byte-deterministic and `parse ∘ write` is the identity.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{BoundariedGraph, Graph, TargetClass, VertexId};

pub fn parse_bkg(text: &str, simple_mode: bool) -> Result<BoundariedGraph> {
    let mut count: Option<u64> = None;
    let mut explicit_verts: Option<Vec<VertexId>> = None;
    let mut boundary: Option<Vec<VertexId>> = None;
    let mut modulator: Option<Vec<VertexId>> = None;
    let mut class = TargetClass::None;
    let mut td_parents: Option<BTreeMap<VertexId, VertexId>> = None;
    let mut edges: Vec<(usize, VertexId, VertexId, u8)> = Vec::new();
    let mut saw_magic = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if !saw_magic {
            if toks != ["bkg", "1"] {
                return Err(Error::parse(lineno, "expected header `bkg 1`"));
            }
            saw_magic = true;
            continue;
        }
        match toks[0] {
            "n" => {
                if count.is_some() {
                    return Err(Error::parse(lineno, "duplicate `n` line"));
                }
                if toks.len() != 2 {
                    return Err(Error::parse(lineno, "expected `n <count>`"));
                }
                count = Some(parse_num(toks[1], lineno)?);
            }
            "v" => {
                if explicit_verts.is_some() {
                    return Err(Error::parse(lineno, "duplicate `v` line"));
                }
                explicit_verts = Some(parse_ids(&toks[1..], lineno)?);
            }
            "b" => {
                if boundary.is_some() {
                    return Err(Error::parse(lineno, "duplicate `b` line"));
                }
                boundary = Some(parse_ids(&toks[1..], lineno)?);
            }
            "x" => {
                if modulator.is_some() {
                    return Err(Error::parse(lineno, "duplicate `x` line"));
                }
                modulator = Some(parse_ids(&toks[1..], lineno)?);
            }
            "class" => {
                class = match toks.get(1) {
                    Some(&"independent") => TargetClass::Independent,
                    Some(&"forest") => TargetClass::Forest,
                    Some(&"vc") => TargetClass::VertexCover,
                    Some(&"td") => {
                        let d = toks
                            .get(2)
                            .ok_or_else(|| Error::parse(lineno, "expected `class td <d>`"))?;
                        TargetClass::Treedepth(parse_num(d, lineno)? as u32)
                    }
                    _ => return Err(Error::parse(lineno, "unknown class")),
                };
            }
            "tdp" => {
                let ids = parse_ids(&toks[1..], lineno)?;
                if ids.len() % 2 != 0 {
                    return Err(Error::parse(lineno, "`tdp` expects child/parent pairs"));
                }
                let map = td_parents.get_or_insert_with(BTreeMap::new);
                for pair in ids.chunks(2) {
                    if map.insert(pair[0], pair[1]).is_some() {
                        return Err(Error::parse(
                            lineno,
                            format!("duplicate tdp entry for {}", pair[0]),
                        ));
                    }
                }
            }
            "e" => {
                if toks.len() != 4 {
                    return Err(Error::parse(lineno, "expected `e <u> <v> <mult>`"));
                }
                let u = parse_num(toks[1], lineno)? as VertexId;
                let v = parse_num(toks[2], lineno)? as VertexId;
                let m = parse_num(toks[3], lineno)? as u8;
                edges.push((lineno, u.min(v), u.max(v), m));
            }
            other => {
                return Err(Error::parse(lineno, format!("unknown record `{other}`")));
            }
        }
    }

    if !saw_magic {
        return Err(Error::parse(1, "missing header `bkg 1`"));
    }
    let count = count.ok_or_else(|| Error::parse(1, "missing `n` line"))? as usize;

    let verts: BTreeSet<VertexId> = match explicit_verts {
        Some(vs) => {
            if vs.len() != count {
                return Err(Error::parse(1, "`v` line length disagrees with `n`"));
            }
            let set: BTreeSet<VertexId> = vs.iter().copied().collect();
            if set.len() != vs.len() {
                return Err(Error::parse(1, "`v` line has duplicates"));
            }
            set
        }
        None => (0..count as VertexId).collect(),
    };

    let mut graph = Graph::new();
    for &v in &verts {
        graph.add_vertex(v);
    }
    let mut seen = BTreeSet::new();
    for (lineno, u, v, m) in edges {
        if !verts.contains(&u) || !verts.contains(&v) {
            return Err(Error::parse(
                lineno,
                format!("edge id out of range: {u} {v}"),
            ));
        }
        if !seen.insert((u, v)) {
            return Err(Error::parse(lineno, format!("duplicate edge line {u} {v}")));
        }
        if m == 0 || m > 2 || (u == v && m != 1) {
            return Err(Error::parse(lineno, format!("illegal multiplicity {m}")));
        }
        if simple_mode && (u == v || m != 1) {
            return Err(Error::parse(
                lineno,
                "loops and double edges are rejected in simple mode",
            ));
        }
        graph.set_edge(u, v, m)?;
    }

    let check_ids = |ids: &[VertexId]| -> Result<BTreeSet<VertexId>> {
        for &v in ids {
            if !verts.contains(&v) {
                return Err(Error::parse(1, format!("id {v} out of range")));
            }
        }
        Ok(ids.iter().copied().collect())
    };

    let boundary = check_ids(&boundary.unwrap_or_default())?;
    let modulator = match modulator {
        Some(m) => Some(check_ids(&m)?),
        None => None,
    };
    if let Some(par) = &td_parents {
        for (c, p) in par {
            if !verts.contains(c) || !verts.contains(p) {
                return Err(Error::parse(1, format!("tdp id out of range: {c} {p}")));
            }
        }
    }

    Ok(BoundariedGraph {
        graph,
        boundary,
        modulator,
        target_class: class,
        td_parents,
    })
}

pub fn write_bkg(g: &BoundariedGraph) -> String {
    let mut out = String::from("bkg 1\n");
    let n = g.graph.num_vertices();
    out.push_str(&format!("n {n}\n"));
    let contiguous = g.graph.vertices().enumerate().all(|(i, v)| v as usize == i);
    if !contiguous {
        out.push('v');
        for v in g.graph.vertices() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out.push('b');
    for v in &g.boundary {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    if let Some(m) = &g.modulator {
        out.push('x');
        for v in m {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    match g.target_class {
        TargetClass::None => {}
        TargetClass::Independent => out.push_str("class independent\n"),
        TargetClass::Forest => out.push_str("class forest\n"),
        TargetClass::VertexCover => out.push_str("class vc\n"),
        TargetClass::Treedepth(d) => out.push_str(&format!("class td {d}\n")),
    }
    if let Some(par) = &g.td_parents {
        out.push_str("tdp");
        for (c, p) in par {
            out.push_str(&format!(" {c} {p}"));
        }
        out.push('\n');
    }
    for (u, v, m) in g.graph.edges() {
        out.push_str(&format!("e {u} {v} {m}\n"));
    }
    out
}

fn parse_num(tok: &str, lineno: usize) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| Error::parse(lineno, format!("expected a number, got `{tok}`")))
}

fn parse_ids(toks: &[&str], lineno: usize) -> Result<Vec<VertexId>> {
    toks.iter()
        .map(|t| parse_num(t, lineno).map(|x| x as VertexId))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_identity() {
        let text = "bkg 1\nn 4\nb 0 1\nx 2\nclass forest\ne 0 2 1\ne 1 3 2\n";
        let g = parse_bkg(text, false).unwrap();
        assert_eq!(write_bkg(&g), text);
        let g2 = parse_bkg(&write_bkg(&g), false).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn loop_line_mode_dependent() {
        let text = "bkg 1\nn 3\nb\ne 2 2 1\n";
        assert!(parse_bkg(text, false).is_ok());
        assert!(matches!(
            parse_bkg(text, true),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn boundary_ids_parse() {
        let g = parse_bkg("bkg 1\nn 2\nb 0 1\n", false).unwrap();
        assert_eq!(g.boundary.len(), 2);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let text = "bkg 1\nn 3\nb\ne 0 1 1\ne 1 0 1\n";
        assert!(matches!(
            parse_bkg(text, false),
            Err(Error::Parse { line: 5, .. })
        ));
    }

    #[test]
    fn id_out_of_range_rejected() {
        let text = "bkg 1\nn 2\nb\ne 0 5 1\n";
        assert!(parse_bkg(text, false).is_err());
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# a file\nbkg 1\n\nn 2  # two vertices\nb 0\ne 0 1 1\n";
        let g = parse_bkg(text, true).unwrap();
        assert_eq!(g.graph.num_edge_keys(), 1);
    }

    #[test]
    fn sparse_ids_roundtrip() {
        let text = "bkg 1\nn 3\nv 0 4 7\nb 4\ne 0 7 1\n";
        let g = parse_bkg(text, false).unwrap();
        assert!(g.graph.has_vertex(7));
        assert_eq!(write_bkg(&g), text);
    }

    #[test]
    fn tdp_sidecar_roundtrips() {
        let text = "bkg 1\nn 4\nb 0\nx 1\nclass td 2\ntdp 2 2 3 2\ne 1 2 1\ne 2 3 1\n";
        let g = parse_bkg(text, false).unwrap();
        let par = g.td_parents.as_ref().unwrap();
        assert_eq!(par[&2], 2); // root
        assert_eq!(par[&3], 2);
        assert_eq!(write_bkg(&g), text);
    }

    #[test]
    fn mult_three_rejected() {
        let text = "bkg 1\nn 2\nb\ne 0 1 3\n";
        assert!(parse_bkg(text, false).is_err());
    }
}
