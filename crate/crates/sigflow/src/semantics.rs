//! Denotation of diagram terms: every generator names a linear relation,
//! and terms evaluate by structural recursion — sequential composition
//! becomes relational composition, tensor becomes direct sum.
//!
//! A second evaluator targets matrices for the cup/cap-free fragment,
//! where every term denotes the graph of a linear map.

use crate::diagram::{Diagram, GenKind, Node, NodeKind};
use crate::exactfield::{FieldElem, FieldTag};
use crate::linrel::{rel_compose, rel_tensor, LinRel, Matrix};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("generator {0} has no matrix semantics (relations only)")]
    NonMapGenerator(&'static str),
}

fn scale_payload(c: &FieldElem, tag: FieldTag) -> FieldElem {
    assert_eq!(
        c.tag(),
        tag,
        "scale payload belongs to a different field than the evaluation field"
    );
    c.clone()
}

/// The defining linear relation of one generator.
pub fn denote_generator(kind: &GenKind, tag: FieldTag) -> LinRel {
    let one = FieldElem::one(tag);
    let zero = FieldElem::zero(tag);
    let rows: (usize, usize, Vec<Vec<FieldElem>>) = match kind {
        // graph of (x, y) ↦ x + y
        GenKind::Add => (
            2,
            1,
            vec![
                vec![one.clone(), zero.clone(), one.clone()],
                vec![zero.clone(), one.clone(), one.clone()],
            ],
        ),
        // graph of the map k⁰ → k picking out 0
        GenKind::Zero => (0, 1, vec![]),
        // graph of x ↦ (x, x)
        GenKind::Dup => (1, 2, vec![vec![one.clone(), one.clone(), one.clone()]]),
        // graph of the zero map k → k⁰
        GenKind::Delete => (1, 0, vec![vec![one.clone()]]),
        GenKind::Scale(c) => (1, 1, vec![vec![one.clone(), scale_payload(c, tag)]]),
        // the two inputs are forced equal
        GenKind::Cup => (2, 0, vec![vec![one.clone(), one.clone()]]),
        // the two outputs are equal (and unconstrained)
        GenKind::Cap => (0, 2, vec![vec![one.clone(), one.clone()]]),
        GenKind::Id => (1, 1, vec![vec![one.clone(), one.clone()]]),
        GenKind::Braid => (
            2,
            2,
            vec![
                vec![one.clone(), zero.clone(), zero.clone(), one.clone()],
                vec![zero.clone(), one.clone(), one.clone(), zero.clone()],
            ],
        ),
    };
    let (m, n, rows) = rows;
    LinRel::span(tag, m, n, rows).expect("generator rows have matching width")
}

/// Evaluate a term into its linear relation. Well-typed terms always
/// evaluate; the result's signature equals the term's.
///
/// Evaluation memoizes on structural term identity (shared subterms —
/// common in standard forms — are evaluated once).
pub fn eval_rel(d: &Diagram, tag: FieldTag) -> LinRel {
    fn go(d: &Diagram, tag: FieldTag, memo: &mut HashMap<*const Node, LinRel>) -> LinRel {
        if let Some(hit) = memo.get(&d.node_ptr()) {
            return hit.clone();
        }
        let result = match d.kind() {
            NodeKind::Gen(k) => denote_generator(k, tag),
            NodeKind::Empty => LinRel::zero_rel(tag, 0, 0),
            NodeKind::Seq(f, g) => {
                let lf = go(f, tag, memo);
                let lg = go(g, tag, memo);
                rel_compose(&lf, &lg).expect("well-typed term composes")
            }
            NodeKind::Par(f, g) => {
                let lf = go(f, tag, memo);
                let lg = go(g, tag, memo);
                rel_tensor(&lf, &lg)
            }
        };
        memo.insert(d.node_ptr(), result.clone());
        result
    }
    go(d, tag, &mut HashMap::new())
}

/// Evaluate a cup/cap-free term into the matrix of the linear map it
/// denotes: sequential composition is matrix product (later ∘ earlier),
/// tensor is block-diagonal direct sum.
pub fn eval_mat(d: &Diagram, tag: FieldTag) -> Result<Matrix, SemanticsError> {
    fn go(
        d: &Diagram,
        tag: FieldTag,
        memo: &mut HashMap<*const Node, Matrix>,
    ) -> Result<Matrix, SemanticsError> {
        if let Some(hit) = memo.get(&d.node_ptr()) {
            return Ok(hit.clone());
        }
        let one = FieldElem::one(tag);
        let result = match d.kind() {
            NodeKind::Gen(k) => match k {
                GenKind::Add => Matrix::from_rows(tag, 2, vec![vec![one.clone(), one]])
                    .expect("fixed shape"),
                GenKind::Zero => Matrix::zero(tag, 1, 0),
                GenKind::Dup => Matrix::from_rows(tag, 1, vec![vec![one.clone()], vec![one]])
                    .expect("fixed shape"),
                GenKind::Delete => Matrix::zero(tag, 0, 1),
                GenKind::Scale(c) => {
                    Matrix::from_rows(tag, 1, vec![vec![scale_payload(c, tag)]])
                        .expect("fixed shape")
                }
                GenKind::Id => Matrix::identity(tag, 1),
                GenKind::Braid => {
                    let mut m = Matrix::zero(tag, 2, 2);
                    m.set(0, 1, FieldElem::one(tag));
                    m.set(1, 0, FieldElem::one(tag));
                    m
                }
                GenKind::Cup => return Err(SemanticsError::NonMapGenerator("cup")),
                GenKind::Cap => return Err(SemanticsError::NonMapGenerator("cap")),
            },
            NodeKind::Empty => Matrix::zero(tag, 0, 0),
            NodeKind::Seq(f, g) => {
                let mf = go(f, tag, memo)?;
                let mg = go(g, tag, memo)?;
                mg.mul(&mf)
            }
            NodeKind::Par(f, g) => {
                let mf = go(f, tag, memo)?;
                let mg = go(g, tag, memo)?;
                mf.block_diag(&mg)
            }
        };
        memo.insert(d.node_ptr(), result.clone());
        Ok(result)
    }
    go(d, tag, &mut HashMap::new())
}
