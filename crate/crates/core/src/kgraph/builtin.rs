use super::{EdgeSpec, GraphError, KGraph, SquareSpec};

/// Recognised builtin names. Any of these may be followed by `xT<l>` to take
/// the product with `T_l`, e.g. `B2xT3`.
pub const BUILTIN_NAMES: &[&str] = &["T<k>", "B<n>", "C<n>", "DISJOINT2"];

fn edge(id: impl Into<String>, color: usize, range: &str, source: &str) -> EdgeSpec {
    EdgeSpec {
        id: id.into(),
        color,
        range: range.into(),
        source: source.into(),
    }
}

fn square(i: usize, j: usize, from: [&str; 2], to: [&str; 2]) -> SquareSpec {
    SquareSpec {
        ij: [i, j],
        from: from.map(String::from),
        to: to.map(String::from),
    }
}

fn letter_names(start: u8, n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            let c = start as usize + i;
            if c <= b'z' as usize {
                ((c as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

/// `T_k`: one vertex `v`, one loop per color named `a, b, c, …`.
fn torus(k: usize) -> KGraph {
    let names = letter_names(b'a', k);
    let edges = names
        .iter()
        .enumerate()
        .map(|(i, n)| edge(n.as_str(), i + 1, "v", "v"))
        .collect();
    let mut squares = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            squares.push(square(
                i + 1,
                j + 1,
                [&names[i], &names[j]],
                [&names[j], &names[i]],
            ));
        }
    }
    KGraph::from_parts(k, vec!["v".into()], edges, squares).expect("well-formed builtin")
}

/// `B_n`: one vertex `v`, `n` loops of a single color named `e, f, g, …`.
fn bouquet(n: usize) -> KGraph {
    let edges = letter_names(b'e', n)
        .into_iter()
        .map(|id| edge(id, 1, "v", "v"))
        .collect();
    KGraph::from_parts(1, vec!["v".into()], edges, vec![]).expect("well-formed builtin")
}

/// `C_n`: vertices `v0..`, edge `ci` from `v(i+1)` into `vi`.
fn cycle(n: usize) -> KGraph {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (0..n)
        .map(|i| edge(format!("c{i}"), 1, &vertices[i], &vertices[(i + 1) % n]))
        .collect();
    KGraph::from_parts(1, vertices, edges, vec![]).expect("well-formed builtin")
}

fn disjoint2() -> KGraph {
    KGraph::from_parts(
        1,
        vec!["u".into(), "w".into()],
        vec![edge("l_u", 1, "u", "u"), edge("l_w", 1, "w", "w")],
        vec![],
    )
    .expect("well-formed builtin")
}

/// `Λ × T_l`: colors `k+1..k+l` each get one loop per vertex, named `tj`
/// on single-vertex graphs and `tj_<vertex>` otherwise; all new squares are
/// the product squares.
pub fn product_with_tl(g: &KGraph, l: usize) -> KGraph {
    let k = g.k();
    let single = g.num_vertices() == 1;
    let loop_name = |j: usize, v: &str| {
        if single {
            format!("t{j}")
        } else {
            format!("t{j}_{v}")
        }
    };
    let mut edges = g.edge_specs();
    for j in 1..=l {
        for v in g.vertex_names() {
            edges.push(edge(loop_name(j, v), k + j, v, v));
        }
    }
    let mut squares = g.square_specs();
    for e in g.edge_specs() {
        for j in 1..=l {
            let t_src = loop_name(j, &e.source);
            let t_rng = loop_name(j, &e.range);
            squares.push(square(e.color, k + j, [&e.id, &t_src], [&t_rng, &e.id]));
        }
    }
    for v in g.vertex_names() {
        for a in 1..=l {
            for b in (a + 1)..=l {
                let (ta, tb) = (loop_name(a, v), loop_name(b, v));
                squares.push(square(k + a, k + b, [&ta, &tb], [&tb, &ta]));
            }
        }
    }
    KGraph::from_parts(k + l, g.vertex_names().to_vec(), edges, squares)
        .expect("product of a well-formed graph")
}

/// Recognises `g = Λ × T_l` and returns `Λ`: the first `k − l` colors, with
/// the last `l` colors consisting of one loop per vertex joined to everything
/// by product squares.
pub fn product_base(g: &KGraph, l: usize) -> Option<KGraph> {
    let k = g.k();
    if l == 0 || l >= k {
        return None;
    }
    let k0 = k - l;
    let mut loops = vec![vec![0; l]; g.num_vertices()];
    for v in 0..g.num_vertices() {
        for j in 0..l {
            match g.edges_into(v, k0 + j) {
                [t] if g.edge(*t).source == v => loops[v][j] = *t,
                _ => return None,
            }
        }
    }
    for (f, ef) in g.edges().filter(|(_, e)| e.color < k0) {
        for j in 0..l {
            let expect = (loops[ef.range][j], f);
            if g.square_forward(f, loops[ef.source][j]) != Some(expect) {
                return None;
            }
        }
    }
    for v in 0..g.num_vertices() {
        for a in 0..l {
            for b in (a + 1)..l {
                let (ta, tb) = (loops[v][a], loops[v][b]);
                if g.square_forward(ta, tb) != Some((tb, ta)) {
                    return None;
                }
            }
        }
    }
    let edges = g
        .edge_specs()
        .into_iter()
        .filter(|e| e.color <= k0)
        .collect();
    let squares = g
        .square_specs()
        .into_iter()
        .filter(|s| s.ij[1] <= k0)
        .collect();
    KGraph::from_parts(k0, g.vertex_names().to_vec(), edges, squares).ok()
}

fn parse_count(s: &str) -> Option<usize> {
    s.parse::<usize>().ok().filter(|&n| n > 0)
}

/// Named fixture graphs: `T<k>`, `B<n>`, `C<n>`, `DISJOINT2`, optionally
/// followed by `xT<l>`.
pub fn builtin(name: &str) -> Result<KGraph, GraphError> {
    let unknown = || GraphError::UnknownBuiltin(name.to_string());
    if let Some((base, tl)) = name.rsplit_once("xT") {
        let l = parse_count(tl).ok_or_else(unknown)?;
        return Ok(product_with_tl(&builtin(base).map_err(|_| unknown())?, l));
    }
    if name == "DISJOINT2" {
        return Ok(disjoint2());
    }
    let mut chars = name.chars();
    let kind = chars.next();
    let n = parse_count(chars.as_str()).ok_or_else(unknown)?;
    match kind {
        Some('T') => Ok(torus(n)),
        Some('B') => Ok(bouquet(n)),
        Some('C') => Ok(cycle(n)),
        _ => Err(unknown()),
    }
}
