use std::fmt;

use super::{Degree, EdgeId, GraphError, KGraph, VertexId};

/// A morphism of a k-graph in normal form.
///
/// Equality is morphism equality because the normal form is unique on a
/// validated graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    degree: Degree,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    /// Edge word, range to source, color-nondecreasing.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Path({}->{} {:?} {})",
            self.range, self.source, self.edges, self.degree
        )
    }
}

/// Displays a path as its edge names, or `@vertex` for a vertex.
pub struct PathDisplay<'a> {
    graph: &'a KGraph,
    path: &'a Path,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            return write!(f, "@{}", self.graph.vertex_name(self.path.range));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.graph.edge(e).name)?;
        }
        Ok(())
    }
}

impl KGraph {
    pub fn show<'a>(&'a self, path: &'a Path) -> PathDisplay<'a> {
        PathDisplay { graph: self, path }
    }

    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path {
            range: v,
            source: v,
            degree: Degree::zero(self.k),
            edges: Vec::new(),
        }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = self.edge(e);
        Path {
            range: edge.range,
            source: edge.source,
            degree: Degree::unit(self.k, edge.color),
            edges: vec![e],
        }
    }

    fn word_degree(&self, word: &[EdgeId]) -> Degree {
        let mut d = Degree::zero(self.k);
        for &e in word {
            d.0[self.edge(e).color] += 1;
        }
        d
    }

    /// Swaps the adjacent edges at `i, i+1` using a square. Returns `false` if
    /// they share a color or no square applies.
    fn swap_adjacent(&self, word: &mut [EdgeId], i: usize) -> bool {
        let (x, y) = (word[i], word[i + 1]);
        let (cx, cy) = (self.edge(x).color, self.edge(y).color);
        let swapped = if cx < cy {
            self.square_forward(x, y)
        } else if cx > cy {
            self.square_backward(x, y)
        } else {
            None
        };
        match swapped {
            Some((a, b)) => {
                word[i] = a;
                word[i + 1] = b;
                true
            }
            None => false,
        }
    }

    /// Rewrites `word` so that its color sequence becomes `target`, a
    /// permutation of the current colors. Same-colored edges never pass each
    /// other, so each edge's destination slot is determined up front.
    fn reorder(&self, word: &mut [EdgeId], target: &[usize]) {
        let mut slots = vec![Vec::new(); self.k];
        for (pos, &c) in target.iter().enumerate().rev() {
            slots[c].push(pos);
        }
        let mut dest: Vec<usize> = word
            .iter()
            .map(|&e| {
                slots[self.edge(e).color]
                    .pop()
                    .expect("target is a permutation of the word colors")
            })
            .collect();
        let n = word.len();
        for pass in 0..n {
            let mut moved = false;
            for i in 0..n.saturating_sub(1 + pass) {
                if dest[i] > dest[i + 1] {
                    let ok = self.swap_adjacent(word, i);
                    assert!(ok, "missing commuting square while reordering");
                    dest.swap(i, i + 1);
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
    }

    fn sorted_colors(&self, d: &Degree) -> Vec<usize> {
        d.0.iter()
            .enumerate()
            .flat_map(|(c, &n)| std::iter::repeat(c).take(n as usize))
            .collect()
    }

    fn check_word(&self, word: &[EdgeId]) -> Result<(), GraphError> {
        for w in word.windows(2) {
            if self.edge(w[0]).source != self.edge(w[1]).range {
                return Err(GraphError::NotComposable {
                    left: self.edge(w[0]).name.clone(),
                    right: self.edge(w[1]).name.clone(),
                });
            }
        }
        Ok(())
    }

    /// Normal form of a composable edge word (range to source).
    pub fn path_from_word(&self, word: &[EdgeId]) -> Result<Path, GraphError> {
        let Some((&first, _)) = word.split_first() else {
            return Err(GraphError::EmptyWord);
        };
        self.check_word(word)?;
        let degree = self.word_degree(word);
        let mut w = word.to_vec();
        self.reorder(&mut w, &self.sorted_colors(&degree));
        Ok(Path {
            range: self.edge(first).range,
            source: self.edge(*word.last().unwrap()).source,
            degree,
            edges: w,
        })
    }

    /// Path from edge names separated by whitespace, or `@vertex`.
    pub fn path_from_names(&self, text: &str) -> Result<Path, GraphError> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix('@') {
            return Ok(self.vertex_path(self.vertex(v.trim())?));
        }
        let word = text
            .split_whitespace()
            .map(|n| self.edge_id(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.path_from_word(&word)
    }

    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path, GraphError> {
        if p.source != q.range {
            return Err(GraphError::NotComposable {
                left: self.show(p).to_string(),
                right: self.show(q).to_string(),
            });
        }
        if p.is_vertex() {
            return Ok(q.clone());
        }
        if q.is_vertex() {
            return Ok(p.clone());
        }
        let mut w: Vec<EdgeId> = p.edges.iter().chain(&q.edges).copied().collect();
        let degree = &p.degree + &q.degree;
        self.reorder(&mut w, &self.sorted_colors(&degree));
        Ok(Path {
            range: p.range,
            source: q.source,
            degree,
            edges: w,
        })
    }

    /// The unique `(head, tail)` with `d(head) = m` and `head·tail = p`.
    pub fn factorize(&self, p: &Path, m: &Degree) -> Result<(Path, Path), GraphError> {
        let rest = p
            .degree
            .checked_sub(m)
            .ok_or_else(|| GraphError::DegreeOutOfRange {
                m: m.clone(),
                bound: p.degree.clone(),
            })?;
        if m.is_zero() {
            return Ok((self.vertex_path(p.range), p.clone()));
        }
        if rest.is_zero() {
            return Ok((p.clone(), self.vertex_path(p.source)));
        }
        let mut target = self.sorted_colors(m);
        target.extend(self.sorted_colors(&rest));
        let mut w = p.edges.clone();
        self.reorder(&mut w, &target);
        let cut = m.total() as usize;
        let mid = self.edge(w[cut - 1]).source;
        let head = Path {
            range: p.range,
            source: mid,
            degree: m.clone(),
            edges: w[..cut].to_vec(),
        };
        let tail = Path {
            range: mid,
            source: p.source,
            degree: rest,
            edges: w[cut..].to_vec(),
        };
        Ok((head, tail))
    }

    /// `p(m, n)`.
    pub fn segment(&self, p: &Path, m: &Degree, n: &Degree) -> Result<Path, GraphError> {
        if !(m.le(n) && n.le(&p.degree)) {
            return Err(GraphError::SegmentBounds {
                m: m.clone(),
                n: n.clone(),
                d: p.degree.clone(),
            });
        }
        let (head, _) = self.factorize(p, n)?;
        let (_, tail) = self.factorize(&head, m)?;
        Ok(tail)
    }

    /// The vertex `p(m)`.
    pub fn vertex_at(&self, p: &Path, m: &Degree) -> Result<VertexId, GraphError> {
        Ok(self.factorize(p, m)?.1.range)
    }

    /// `vΛ^n` in lexicographic order of normal-form edge words.
    pub fn paths_from(&self, v: VertexId, n: &Degree) -> Vec<Path> {
        assert_eq!(n.k(), self.k, "degree rank mismatch");
        let colors = self.sorted_colors(n);
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(colors.len());
        self.extend_words(v, &colors, &mut word, &mut out);
        out.into_iter()
            .map(|w: Vec<EdgeId>| {
                let source = w.last().map_or(v, |&e| self.edge(e).source);
                Path {
                    range: v,
                    source,
                    degree: n.clone(),
                    edges: w,
                }
            })
            .collect()
    }

    fn extend_words(
        &self,
        at: VertexId,
        colors: &[usize],
        word: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        let Some((&c, rest)) = colors.split_first() else {
            out.push(word.clone());
            return;
        };
        for &e in self.edges_into(at, c) {
            word.push(e);
            self.extend_words(self.edge(e).source, rest, word, out);
            word.pop();
        }
    }

    /// `vΛ^{≤ bound}`: every path from `v` with degree below `bound`.
    pub fn paths_from_upto(&self, v: VertexId, bound: &Degree) -> Vec<Path> {
        bound
            .box_below()
            .iter()
            .flat_map(|n| self.paths_from(v, n))
            .collect()
    }

    /// Every path with degree below `bound`, grouped by range vertex.
    pub fn all_paths_upto(&self, bound: &Degree) -> Vec<Path> {
        (0..self.num_vertices())
            .flat_map(|v| self.paths_from_upto(v, bound))
            .collect()
    }

    /// Every path from `v` of total length at most `total`.
    pub fn paths_from_total(&self, v: VertexId, total: u32) -> Vec<Path> {
        Degree::uniform(self.k, total)
            .box_below()
            .iter()
            .filter(|d| d.total() <= total)
            .flat_map(|n| self.paths_from(v, n))
            .collect()
    }

    /// Applies an arbitrary sequence of legal adjacent swaps (used to test
    /// that every rewriting of a word has the same normal form).
    pub fn rewrite_word(&self, word: &[EdgeId], swaps: &[usize]) -> Vec<EdgeId> {
        let mut w = word.to_vec();
        if w.len() < 2 {
            return w;
        }
        for &s in swaps {
            let i = s % (w.len() - 1);
            self.swap_adjacent(&mut w, i);
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use crate::kgraph::builtin;

    use super::*;

    #[test]
    fn b2_words() {
        let g = builtin("B2").unwrap();
        let ps = g.paths_from(0, &Degree(vec![2]));
        let names: Vec<String> = ps.iter().map(|p| g.show(p).to_string()).collect();
        assert_eq!(names, vec!["e e", "e f", "f e", "f f"]);
        let e = g.path_from_names("e").unwrap();
        let f = g.path_from_names("f").unwrap();
        let ef = g.compose(&e, &f).unwrap();
        assert_eq!(g.show(&ef).to_string(), "e f");
        assert_eq!(ef.degree(), &Degree(vec![2]));
    }

    #[test]
    fn t2_composition_commutes() {
        let g = builtin("T2").unwrap();
        let a = g.path_from_names("a").unwrap();
        let b = g.path_from_names("b").unwrap();
        assert_eq!(g.compose(&a, &b).unwrap(), g.compose(&b, &a).unwrap());
        assert_eq!(g.paths_from(0, &Degree(vec![2, 3])).len(), 1);
        let ab = g.compose(&a, &b).unwrap();
        let (h, t) = g.factorize(&ab, &Degree(vec![0, 1])).unwrap();
        assert_eq!((h, t), (b, a));
    }

    #[test]
    fn identity_laws() {
        let g = builtin("B2xT1").unwrap();
        let p = g.path_from_names("e f t1").unwrap();
        assert_eq!(g.compose(&p, &g.vertex_path(p.source())).unwrap(), p);
        assert_eq!(g.compose(&g.vertex_path(p.range()), &p).unwrap(), p);
        let (h, t) = g.factorize(&p, &Degree(vec![0, 0])).unwrap();
        assert!(h.is_vertex());
        assert_eq!(t, p);
    }

    #[test]
    fn product_factorization() {
        let g = builtin("B2xT1").unwrap();
        let p = g.path_from_names("e f t1").unwrap();
        let (h, t) = g.factorize(&p, &Degree(vec![1, 0])).unwrap();
        assert_eq!(g.show(&h).to_string(), "e");
        assert_eq!(t, g.path_from_names("f t1").unwrap());
        assert_eq!(t, g.path_from_names("t1 f").unwrap());
        let seg = g
            .segment(&p, &Degree(vec![1, 1]), &Degree(vec![1, 1]))
            .unwrap();
        assert!(seg.is_vertex());
    }

    #[test]
    fn errors() {
        let g = builtin("DISJOINT2").unwrap();
        let lu = g.path_from_names("l_u").unwrap();
        let lw = g.path_from_names("l_w").unwrap();
        assert!(matches!(
            g.compose(&lu, &lw),
            Err(GraphError::NotComposable { .. })
        ));
        assert!(g.factorize(&lu, &Degree(vec![2])).is_err());
        assert_eq!(
            g.paths_from(g.vertex("u").unwrap(), &Degree(vec![3])).len(),
            1
        );
    }
}
