//! The term language of string diagrams: typed generators, identity,
//! braiding, sequential composition (`;`, read top to bottom) and tensor
//! (`*`), with signatures valued in natural numbers.
//!
//! Terms are immutable binary trees behind [`Arc`]; no structural
//! normalization (associativity, units) is ever performed — equality of
//! meaning is decided by the semantics module, and structural equality is
//! only ever a cache key.

use crate::exactfield::FieldElem;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// A generator box. Signatures `(dom, cod)` are fixed per kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Addition, `(x, y) ↦ x + y`; signature (2, 1).
    Add,
    /// The zero constant; signature (0, 1).
    Zero,
    /// Duplication, `x ↦ (x, x)`; signature (1, 2).
    Dup,
    /// Deletion; signature (1, 0).
    Delete,
    /// Multiplication by a scalar; signature (1, 1).
    Scale(FieldElem),
    /// Forces its two inputs equal; signature (2, 0).
    Cup,
    /// Emits two equal outputs; signature (0, 2).
    Cap,
    /// Identity wire; signature (1, 1).
    Id,
    /// Swap of two adjacent wires; signature (2, 2).
    Braid,
}

impl GenKind {
    pub fn signature(&self) -> (usize, usize) {
        match self {
            GenKind::Add => (2, 1),
            GenKind::Zero => (0, 1),
            GenKind::Dup => (1, 2),
            GenKind::Delete => (1, 0),
            GenKind::Scale(_) => (1, 1),
            GenKind::Cup => (2, 0),
            GenKind::Cap => (0, 2),
            GenKind::Id => (1, 1),
            GenKind::Braid => (2, 2),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("cannot compose: first factor has {cod} outputs but second expects {dom} inputs")]
    TypeMismatch { cod: usize, dom: usize },
}

#[derive(Debug)]
pub enum NodeKind {
    Gen(GenKind),
    /// The monoidal unit, signature (0, 0).
    Empty,
    Seq(Diagram, Diagram),
    Par(Diagram, Diagram),
}

#[derive(Debug)]
pub(crate) struct Node {
    pub(crate) kind: NodeKind,
    dom: usize,
    cod: usize,
}

/// A typed diagram term with its cached signature.
#[derive(Clone, Debug)]
pub struct Diagram {
    node: Arc<Node>,
}

impl Diagram {
    fn from_node(kind: NodeKind, dom: usize, cod: usize) -> Diagram {
        Diagram { node: Arc::new(Node { kind, dom, cod }) }
    }

    /// Leaf diagram for a single generator.
    pub fn generator(kind: GenKind) -> Diagram {
        let (dom, cod) = kind.signature();
        Diagram::from_node(NodeKind::Gen(kind), dom, cod)
    }

    /// The (0,0) unit diagram.
    pub fn empty() -> Diagram {
        Diagram::from_node(NodeKind::Empty, 0, 0)
    }

    /// Sequential composition, first `self` then `g` (top to bottom).
    pub fn seq(&self, g: &Diagram) -> Result<Diagram, DiagramError> {
        if self.cod() != g.dom() {
            return Err(DiagramError::TypeMismatch { cod: self.cod(), dom: g.dom() });
        }
        Ok(Diagram::from_node(NodeKind::Seq(self.clone(), g.clone()), self.dom(), g.cod()))
    }

    /// Tensor (side-by-side) composition.
    pub fn par(&self, g: &Diagram) -> Diagram {
        Diagram::from_node(
            NodeKind::Par(self.clone(), g.clone()),
            self.dom() + g.dom(),
            self.cod() + g.cod(),
        )
    }

    pub fn dom(&self) -> usize {
        self.node.dom
    }

    pub fn cod(&self) -> usize {
        self.node.cod
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.node.dom, self.node.cod)
    }

    pub fn kind(&self) -> &NodeKind {
        &self.node.kind
    }

    /// Stable address of the underlying node, used as a memoization key
    /// (structurally shared subterms evaluate once).
    pub(crate) fn node_ptr(&self) -> *const Node {
        Arc::as_ptr(&self.node)
    }

    /// Count generator leaves of a given shape (scales count per payload
    /// when `kind` is `Scale`, ignoring the payload value).
    pub fn count_generators(&self, pred: &dyn Fn(&GenKind) -> bool) -> usize {
        match self.kind() {
            NodeKind::Gen(k) => usize::from(pred(k)),
            NodeKind::Empty => 0,
            NodeKind::Seq(f, g) | NodeKind::Par(f, g) => {
                f.count_generators(pred) + g.count_generators(pred)
            }
        }
    }
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.node, &other.node) {
            return true;
        }
        if self.signature() != other.signature() {
            return false;
        }
        match (self.kind(), other.kind()) {
            (NodeKind::Gen(a), NodeKind::Gen(b)) => a == b,
            (NodeKind::Empty, NodeKind::Empty) => true,
            (NodeKind::Seq(f1, g1), NodeKind::Seq(f2, g2)) => f1 == f2 && g1 == g2,
            (NodeKind::Par(f1, g1), NodeKind::Par(f2, g2)) => f1 == f2 && g1 == g2,
            _ => false,
        }
    }
}

impl Eq for Diagram {}

/// Identity on `n` wires: `Empty` for 0, right-nested tensor of `Id`s
/// otherwise.
pub fn identity_n(n: usize) -> Diagram {
    match n {
        0 => Diagram::empty(),
        1 => Diagram::generator(GenKind::Id),
        _ => Diagram::generator(GenKind::Id).par(&identity_n(n - 1)),
    }
}

/// Diagram routing input wire `i` to output position `p[i]`, compiled to
/// an odd-even transposition network: at most `n` parallel layers of
/// disjoint adjacent braids.
///
/// Panics if `p` is not a permutation of `0..n`.
pub fn permutation(p: &[usize]) -> Diagram {
    let n = p.len();
    {
        let mut seen = vec![false; n];
        for &t in p {
            assert!(t < n && !seen[t], "not a permutation of 0..{n}");
            seen[t] = true;
        }
    }
    // odd-even transposition network: at most n rounds of disjoint
    // adjacent swaps, each round one parallel layer
    let mut targets: Vec<usize> = p.to_vec();
    let mut layers: Vec<Diagram> = Vec::new();
    for round in 0..n {
        let mut parts: Vec<Diagram> = Vec::new();
        let mut pending_ids = 0usize;
        let mut j = round % 2;
        if j == 1 {
            pending_ids = 1;
        }
        let mut swapped = false;
        while j + 1 < n {
            if targets[j] > targets[j + 1] {
                targets.swap(j, j + 1);
                if pending_ids > 0 {
                    parts.push(identity_n(pending_ids));
                    pending_ids = 0;
                }
                parts.push(Diagram::generator(GenKind::Braid));
                swapped = true;
            } else {
                pending_ids += 2;
            }
            j += 2;
        }
        if swapped {
            pending_ids += n - j;
            if pending_ids > 0 {
                parts.push(identity_n(pending_ids));
            }
            layers.push(build::pars(parts));
        }
        if targets.windows(2).all(|w| w[0] <= w[1]) {
            break;
        }
    }
    if layers.is_empty() {
        identity_n(n)
    } else {
        build::seqs(layers)
    }
}

/// Convenience constructors for templates and tests. The `seq`/`seqs`
/// helpers panic on arity mismatch — they are meant for statically
/// well-typed construction; user-facing paths go through `Diagram::seq`.
pub mod build {
    use super::*;

    pub fn add() -> Diagram {
        Diagram::generator(GenKind::Add)
    }

    pub fn zero() -> Diagram {
        Diagram::generator(GenKind::Zero)
    }

    pub fn dup() -> Diagram {
        Diagram::generator(GenKind::Dup)
    }

    pub fn delete() -> Diagram {
        Diagram::generator(GenKind::Delete)
    }

    pub fn scale(c: FieldElem) -> Diagram {
        Diagram::generator(GenKind::Scale(c))
    }

    pub fn cup() -> Diagram {
        Diagram::generator(GenKind::Cup)
    }

    pub fn cap() -> Diagram {
        Diagram::generator(GenKind::Cap)
    }

    pub fn id() -> Diagram {
        Diagram::generator(GenKind::Id)
    }

    pub fn braid() -> Diagram {
        Diagram::generator(GenKind::Braid)
    }

    pub fn seq(f: &Diagram, g: &Diagram) -> Diagram {
        f.seq(g).expect("well-typed composition")
    }

    pub fn seqs(parts: Vec<Diagram>) -> Diagram {
        let mut it = parts.into_iter();
        let first = it.next().expect("seqs of at least one diagram");
        it.fold(first, |acc, next| seq(&acc, &next))
    }

    pub fn pars(parts: Vec<Diagram>) -> Diagram {
        let mut it = parts.into_iter();
        match it.next() {
            None => Diagram::empty(),
            Some(first) => it.fold(first, |acc, next| acc.par(&next)),
        }
    }

    /// `n` caps rearranged so outputs `0..n` and `n..2n` are equal blocks
    /// (output `i` equals output `n + i`).
    pub fn cap_n(n: usize) -> Diagram {
        if n == 0 {
            return Diagram::empty();
        }
        let caps = pars(vec![cap(); n]);
        let mut q = vec![0usize; 2 * n];
        for i in 0..n {
            q[2 * i] = i;
            q[2 * i + 1] = n + i;
        }
        seq(&caps, &permutation(&q))
    }

    /// `2n → 0` composite forcing input `i` equal to input `n + i`.
    pub fn cup_n(n: usize) -> Diagram {
        if n == 0 {
            return Diagram::empty();
        }
        let mut p = vec![0usize; 2 * n];
        for i in 0..n {
            p[i] = 2 * i;
            p[n + i] = 2 * i + 1;
        }
        seq(&permutation(&p), &pars(vec![cup(); n]))
    }

    /// Turn a diagram around with caps and cups: for `d : m → n` this is
    /// the `n → m` conjugate `(cap_m ⊗ id_n) ; (id_m ⊗ d ⊗ id_n) ; (id_m ⊗ cup_n)`,
    /// denoting the adjoint relation (input/output blocks swapped).
    pub fn adjoint(d: &Diagram) -> Diagram {
        let (m, n) = d.signature();
        seqs(vec![
            pars(vec![cap_n(m), identity_n(n)]),
            pars(vec![identity_n(m), d.clone(), identity_n(n)]),
            pars(vec![identity_n(m), cup_n(n)]),
        ])
    }

    /// The adjoint of zero as drawn explicitly: a zero feeding one leg of
    /// a cup, forcing its single input to vanish; signature (1, 0).
    pub fn cozero() -> Diagram {
        seq(&pars(vec![zero(), id()]), &cup())
    }

    /// The adjoint of deletion drawn explicitly: a cap with one leg
    /// deleted, emitting an unconstrained output; signature (0, 1).
    pub fn codelete() -> Diagram {
        seq(&cap(), &pars(vec![delete(), id()]))
    }

    /// Coaddition (addition turned around): relates input `x` to output
    /// pairs `(y, z)` with `x = y + z`; signature (1, 2).
    pub fn coadd() -> Diagram {
        adjoint(&add())
    }

    /// Coduplication (duplication turned around): forces its two inputs
    /// equal and forwards the common value; signature (2, 1).
    pub fn codup() -> Diagram {
        adjoint(&dup())
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Tikz,
}

struct RenderNode {
    label: String,
    style: &'static str,
}

struct RenderGraph {
    nodes: Vec<RenderNode>,
    edges: Vec<(usize, usize)>,
}

impl RenderGraph {
    fn push(&mut self, label: String, style: &'static str) -> usize {
        self.nodes.push(RenderNode { label, style });
        self.nodes.len() - 1
    }

    /// Returns (ports awaiting an incoming edge, ports offering outgoing
    /// edges), one entry per wire, in wire order.
    fn walk(&mut self, d: &Diagram) -> (Vec<usize>, Vec<usize>) {
        match d.kind() {
            NodeKind::Empty => (Vec::new(), Vec::new()),
            NodeKind::Gen(k) => {
                let (label, style) = match k {
                    GenKind::Add => ("+".to_string(), "addgen"),
                    GenKind::Zero => ("0".to_string(), "zerogen"),
                    GenKind::Dup => ("Δ".to_string(), "dupgen"),
                    GenKind::Delete => ("!".to_string(), "delgen"),
                    GenKind::Scale(c) => (crate::exactfield::format_scalar(c), "scalegen"),
                    GenKind::Cup => ("∪".to_string(), "cupgen"),
                    GenKind::Cap => ("∩".to_string(), "capgen"),
                    GenKind::Id => ("id".to_string(), "idgen"),
                    GenKind::Braid => ("×".to_string(), "braidgen"),
                };
                let id = self.push(label, style);
                let (dom, cod) = k.signature();
                (vec![id; dom], vec![id; cod])
            }
            NodeKind::Seq(f, g) => {
                let (fi, fo) = self.walk(f);
                let (gi, go) = self.walk(g);
                debug_assert_eq!(fo.len(), gi.len());
                for (a, b) in fo.iter().zip(gi.iter()) {
                    self.edges.push((*a, *b));
                }
                (fi, go)
            }
            NodeKind::Par(f, g) => {
                let (mut fi, mut fo) = self.walk(f);
                let (gi, go) = self.walk(g);
                fi.extend(gi);
                fo.extend(go);
                (fi, fo)
            }
        }
    }
}

/// Deterministic text rendering of a diagram as a layered graph.
///
/// DOT output has one node per generator plus terminal nodes for the
/// diagram's inputs and outputs, ranked by composition depth. TikZ output
/// places the same nodes on a grid using the usual glyph styles (dark
/// triangle for addition, light triangle for duplication).
pub fn render(d: &Diagram, format: RenderFormat) -> String {
    let mut g = RenderGraph { nodes: Vec::new(), edges: Vec::new() };
    let (ins, outs) = g.walk(d);
    let gen_count = g.nodes.len();
    for (i, port) in ins.iter().enumerate() {
        let id = g.push(format!("in {i}"), "input");
        g.edges.push((id, *port));
    }
    for (i, port) in outs.iter().enumerate() {
        let id = g.push(format!("out {i}"), "output");
        g.edges.push((*port, id));
    }

    // Longest-path depth; generator nodes were created in topological
    // order, inputs sit at depth 0 and outputs one past the deepest layer.
    let n = g.nodes.len();
    let mut depth = vec![0usize; n]; // input terminals stay at depth 0
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &g.edges {
        incoming[b].push(a);
    }
    // generator nodes in creation order, then output terminals
    for v in (0..gen_count).chain(gen_count + ins.len()..n) {
        depth[v] = incoming[v].iter().map(|&u| depth[u] + 1).max().unwrap_or(1);
    }
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    for d in depth.iter_mut().skip(gen_count + ins.len()) {
        *d = max_depth; // align all outputs on the last layer
    }

    match format {
        RenderFormat::Dot => {
            let mut out = String::from("digraph diagram {\n  rankdir=TB;\n");
            for (id, node) in g.nodes.iter().enumerate() {
                let shape = match node.style {
                    "addgen" => "triangle, style=filled, fillcolor=black, fontcolor=white",
                    "dupgen" => "invtriangle",
                    "input" | "output" => "plaintext",
                    _ => "circle",
                };
                out.push_str(&format!(
                    "  n{id} [label=\"{}\", shape={}];\n",
                    node.label.replace('"', "\\\""),
                    shape.split(',').next().unwrap()
                ));
            }
            for layer in 0..=max_depth {
                let members: Vec<String> = (0..n)
                    .filter(|&v| depth[v] == layer)
                    .map(|v| format!("n{v}"))
                    .collect();
                if !members.is_empty() {
                    out.push_str(&format!("  {{ rank=same; {}; }}\n", members.join("; ")));
                }
            }
            for &(a, b) in &g.edges {
                out.push_str(&format!("  n{a} -> n{b};\n"));
            }
            out.push_str("}\n");
            out
        }
        RenderFormat::Tikz => {
            let mut out = String::new();
            out.push_str("% styles: addgen = dark (filled) triangle, dupgen = light (open) triangle,\n");
            out.push_str("%         zerogen/delgen = small circles, scalegen = labeled box,\n");
            out.push_str("%         cupgen/capgen = wire turns, idgen/braidgen = wire markers\n");
            out.push_str("\\begin{tikzpicture}[yscale=-1]\n");
            let mut slot = vec![0usize; max_depth + 1];
            for (id, node) in g.nodes.iter().enumerate() {
                let d0 = depth[id];
                let x = slot[d0];
                slot[d0] += 1;
                out.push_str(&format!(
                    "  \\node [{}] (n{id}) at ({x}.0,{d0}.0) {{{}}};\n",
                    node.style, node.label
                ));
            }
            for &(a, b) in &g.edges {
                out.push_str(&format!("  \\draw (n{a}) -- (n{b});\n"));
            }
            out.push_str("\\end{tikzpicture}\n");
            out
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::print_diagram(self))
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn generator_signatures() {
        assert_eq!(add().signature(), (2, 1));
        assert_eq!(cap().signature(), (0, 2));
        assert_eq!(cup().signature(), (2, 0));
        assert_eq!(Diagram::empty().signature(), (0, 0));
        assert_eq!(identity_n(3).signature(), (3, 3));
    }

    #[test]
    fn compose_checks_arity() {
        assert!(dup().seq(&pars(vec![id(), id()])).is_ok());
        assert_eq!(
            add().seq(&add()),
            Err(DiagramError::TypeMismatch { cod: 1, dom: 2 })
        );
        assert_eq!(seq(&add(), &dup()).signature(), (2, 2));
    }

    #[test]
    fn permutation_of_two_is_braid() {
        assert_eq!(permutation(&[1, 0]), braid());
        assert_eq!(permutation(&[0, 1]), identity_n(2));
        assert_eq!(permutation(&[2, 0, 1]).signature(), (3, 3));
    }

    #[test]
    fn adjoint_swaps_signature() {
        assert_eq!(adjoint(&add()).signature(), (1, 2));
        assert_eq!(cozero().signature(), (1, 0));
        assert_eq!(codelete().signature(), (0, 1));
        assert_eq!(codup().signature(), (2, 1));
    }

    #[test]
    fn render_is_deterministic() {
        let d = seq(&dup(), &pars(vec![delete(), id()]));
        assert_eq!(render(&d, RenderFormat::Dot), render(&d, RenderFormat::Dot));
        let dot = render(&add(), RenderFormat::Dot);
        // one generator node, two input terminals, one output terminal
        assert_eq!(dot.matches("->").count(), 3);
        let tikz = render(&d, RenderFormat::Tikz);
        assert!(tikz.contains("\\begin{tikzpicture}"));
    }
}
