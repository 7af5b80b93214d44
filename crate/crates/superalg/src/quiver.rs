//! Quiver data and Graphviz DOT rendering.
//!
//! Two shapes are produced: the ordinary quiver of an algebra (one vertex
//! per simple, arrow multiplicities from the first radical layers of the
//! projectives), and the stable translation quiver of a connected
//! self-injective Nakayama algebra, which is a tube: rank = number of
//! simples, height = Loewy length minus one.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverVertex {
    pub dim: usize,
    pub endo_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverData {
    pub vertices: Vec<QuiverVertex>,
    /// (source, target, multiplicity)
    pub arrows: Vec<(usize, usize, usize)>,
}

impl QuiverData {
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_id(name));
        let _ = writeln!(out, "  rankdir=LR;");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  s{} [label=\"S{} (dim {}, endo {})\"];",
                i, i, v.dim, v.endo_degree
            );
        }
        for &(src, dst, mult) in &self.arrows {
            if mult == 1 {
                let _ = writeln!(out, "  s{} -> s{};", src, dst);
            } else {
                let _ = writeln!(out, "  s{} -> s{} [label=\"{}\"];", src, dst, mult);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Stable translation quiver of a connected self-injective Nakayama
/// algebra with `simples` simples and Loewy length `loewy`: vertices are
/// (column q mod simples, row t in 1..loewy-1), with mesh arrows
/// (q,t) -> (q,t+1) and (q,t+1) -> (q+1,t), and the translation
/// tau(q,t) = (q-1,t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArQuiver {
    pub simples: usize,
    pub loewy: usize,
}

impl ArQuiver {
    /// Height of the tube: number of rows.
    pub fn height(&self) -> usize {
        self.loewy.saturating_sub(1)
    }

    /// Number of stable vertices; zero for a semisimple algebra.
    pub fn vertex_count(&self) -> usize {
        self.simples * self.height()
    }

    pub fn shape(&self) -> String {
        if self.height() == 0 {
            return "empty stable quiver (semisimple)".to_string();
        }
        format!("ZA{}/(tau^{})", self.height(), self.simples)
    }

    /// DOT rendering: solid mesh arrows, dashed tau arrows.
    pub fn to_dot(&self, name: &str) -> String {
        let n = self.simples;
        let h = self.height();
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_id(name));
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  label=\"{}\";", self.shape());
        if h == 0 || n == 0 {
            out.push_str("}\n");
            return out;
        }
        for t in 1..=h {
            let _ = write!(out, "  {{ rank=same;");
            for q in 0..n {
                let _ = write!(out, " v{}_{};", q, t);
            }
            let _ = writeln!(out, " }}");
        }
        for q in 0..n {
            for t in 1..=h {
                let _ = writeln!(out, "  v{}_{} [label=\"({},{})\"];", q, t, q, t);
            }
        }
        for q in 0..n {
            for t in 1..h {
                let _ = writeln!(out, "  v{}_{} -> v{}_{};", q, t, q, t + 1);
                let _ = writeln!(out, "  v{}_{} -> v{}_{};", q, t + 1, (q + 1) % n, t);
            }
        }
        for q in 0..n {
            for t in 1..=h {
                let _ = writeln!(
                    out,
                    "  v{}_{} -> v{}_{} [style=dashed, constraint=false];",
                    q,
                    t,
                    (q + n - 1) % n,
                    t
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

fn dot_id(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    if cleaned.is_empty() || cleaned.chars().next().unwrap().is_ascii_digit() {
        format!("g_{cleaned}")
    } else {
        cleaned
    }
}
