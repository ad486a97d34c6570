//! Canonical diagram extraction: a matrix becomes a three-layer
//! duplicate/scale/add diagram, a relation becomes a prestandard diagram
//! (caps on the outputs, a matrix block for the RREF constraint system,
//! cozeros closing the constraint outputs). Because the constraint matrix
//! is the unique RREF annihilator of the subspace, two terms normalize to
//! structurally identical diagrams exactly when they denote the same
//! relation.

use crate::diagram::{build, identity_n, permutation, Diagram};
use crate::exactfield::FieldTag;
use crate::linrel::{annihilator, LinRel, Matrix};
use crate::semantics::eval_rel;

/// Fan one wire out into `n` copies; the right output of every
/// duplication is a leaf wire (left-leaning tree), so a cluster of
/// `n − 1` duplications feeds `n` consumers in order.
fn copy_tree(n: usize) -> Diagram {
    match n {
        1 => build::id(),
        _ => build::seq(&build::dup(), &build::pars(vec![copy_tree(n - 1), build::id()])),
    }
}

/// Sum `m` wires into one; the right input of every addition is a leaf
/// wire, mirroring `copy_tree`.
fn add_tree(m: usize) -> Diagram {
    match m {
        1 => build::id(),
        _ => build::seq(&build::pars(vec![add_tree(m - 1), build::id()]), &build::add()),
    }
}

/// Standard form of a linear map: for an `n×m` matrix and `m, n ≥ 1`,
/// three layers — `m` clusters of `n−1` duplications, the `m·n` scalings
/// (entry `a_ij` on the copy of input `j` bound for output `i`), and a
/// routing permutation into `n` clusters of `m−1` additions. Degenerate
/// shapes: no inputs → a zero per output; no outputs → a deletion per
/// input; neither → the empty diagram.
///
/// `eval_mat` of the result is the input matrix, exactly.
pub fn matrix_to_diagram(a: &Matrix) -> Diagram {
    let (n, m) = (a.rows(), a.cols());
    match (m, n) {
        (0, 0) => Diagram::empty(),
        (0, _) => build::pars(vec![build::zero(); n]),
        (_, 0) => build::pars(vec![build::delete(); m]),
        _ => {
            let copies = build::pars(vec![copy_tree(n); m]);
            let mut scales = Vec::with_capacity(m * n);
            for i in 0..m {
                for j in 0..n {
                    scales.push(build::scale(a.get(j, i).clone()));
                }
            }
            // copy j of input cluster i sits at position i·n + j and must
            // reach position j·m + i, the i-th slot of sum cluster j
            let mut route = vec![0usize; m * n];
            for i in 0..m {
                for j in 0..n {
                    route[i * n + j] = j * m + i;
                }
            }
            let sums = build::pars(vec![add_tree(m); n]);
            build::seqs(vec![copies, build::pars(scales), permutation(&route), sums])
        }
    }
}

/// Prestandard form of a relation: with `C` the RREF annihilator of `L`
/// (`r` constraint rows over the `m+n` coordinates), the diagram creates
/// the `n` output wires with caps, feeds the inputs and one leg of every
/// cap through the standard form of `C`, and terminates each of the `r`
/// constraint outputs with a cozero (forcing the constraints to hold).
///
/// `eval_rel` of the result is `L`, exactly.
pub fn relation_to_diagram(l: &LinRel) -> Diagram {
    let (m, n) = (l.m(), l.n());
    if m + n == 0 {
        return Diagram::empty();
    }
    let c = annihilator(l);
    let r = c.rows();

    // (inputs) ⊗ n caps: wires (x₀..x_{m−1}, a₀, b₀, …, a_{n−1}, b_{n−1})
    let mut intro = Vec::new();
    if m > 0 {
        intro.push(identity_n(m));
    }
    if n > 0 {
        intro.push(build::pars(vec![build::cap(); n]));
    }
    let intro = build::pars(intro);

    // reorder to (x…, b…, a…): the b legs feed the constraint block's
    // output coordinates, the a legs become the final outputs
    let mut route = vec![0usize; m + 2 * n];
    for (x, slot) in route.iter_mut().enumerate().take(m) {
        *slot = x;
    }
    for i in 0..n {
        route[m + 2 * i] = m + n + i;
        route[m + 2 * i + 1] = m + i;
    }

    let mut block = vec![matrix_to_diagram(&c)];
    if n > 0 {
        block.push(identity_n(n));
    }
    let block = build::pars(block);

    let mut close = Vec::new();
    if r > 0 {
        close.push(build::pars(vec![build::cozero(); r]));
    }
    if n > 0 {
        close.push(identity_n(n));
    }
    let close = build::pars(close);

    build::seqs(vec![intro, permutation(&route), block, close])
}

/// Canonical representative of a term: evaluate, then re-emit the
/// prestandard diagram of the denotation. Idempotent up to structural
/// equality, and structurally injective on denotations.
pub fn normalize(d: &Diagram, tag: FieldTag) -> Diagram {
    relation_to_diagram(&eval_rel(d, tag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::*;
    use crate::diagram::GenKind;
    use crate::exactfield::FieldElem;
    use crate::linrel::{graph_of, rel_equal};
    use crate::semantics::eval_mat;

    const Q: FieldTag = FieldTag::Q;

    fn qmat(rows: Vec<Vec<i64>>) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            Q,
            cols,
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| FieldElem::from_int(Q, v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn worked_example_round_trips_with_exact_counts() {
        let a = qmat(vec![vec![3, 7, 2], vec![9, 1, 0]]);
        let d = matrix_to_diagram(&a);
        assert_eq!(d.signature(), (3, 2));
        assert_eq!(eval_mat(&d, Q).unwrap(), a);
        // m·(n−1) duplications, m·n scalings, n·(m−1) additions: the three
        // input fan-out clusters, all six gains (zero entries included),
        // and two addition clusters of two adders each
        assert_eq!(d.count_generators(&|k| matches!(k, GenKind::Dup)), 3);
        assert_eq!(d.count_generators(&|k| matches!(k, GenKind::Scale(_))), 6);
        assert_eq!(d.count_generators(&|k| matches!(k, GenKind::Add)), 4);
    }

    #[test]
    fn degenerate_standard_forms() {
        assert_eq!(matrix_to_diagram(&Matrix::zero(Q, 0, 0)), Diagram::empty());
        assert_eq!(matrix_to_diagram(&Matrix::zero(Q, 2, 0)), pars(vec![zero(), zero()]));
        assert_eq!(
            matrix_to_diagram(&Matrix::zero(Q, 0, 2)),
            pars(vec![delete(), delete()])
        );
        let c5 = qmat(vec![vec![5]]);
        let d = matrix_to_diagram(&c5);
        assert_eq!(d.count_generators(&|k| matches!(k, GenKind::Dup)), 0);
        assert_eq!(d.count_generators(&|k| matches!(k, GenKind::Add)), 0);
        assert_eq!(eval_mat(&d, Q).unwrap(), c5);
    }

    #[test]
    fn prestandard_round_trips() {
        let cup_rel = crate::semantics::eval_rel(&cup(), Q);
        let d = relation_to_diagram(&cup_rel);
        assert!(rel_equal(&crate::semantics::eval_rel(&d, Q), &cup_rel));

        let g = graph_of(&qmat(vec![vec![3, 7, 2], vec![9, 1, 0]]));
        let d = relation_to_diagram(&g);
        assert!(rel_equal(&crate::semantics::eval_rel(&d, Q), &g));

        assert_eq!(relation_to_diagram(&LinRel::zero_rel(Q, 0, 0)), Diagram::empty());
    }

    #[test]
    fn normalize_is_canonical_witness() {
        // the two zigzag sides and the bare identity all normalize alike
        let z1 = seq(&pars(vec![cap(), id()]), &pars(vec![id(), cup()]));
        let z2 = seq(&pars(vec![id(), cap()]), &pars(vec![cup(), id()]));
        let n1 = normalize(&z1, Q);
        let n2 = normalize(&z2, Q);
        let n3 = normalize(&id(), Q);
        assert_eq!(n1, n2);
        assert_eq!(n2, n3);
        // ...and differently from a non-equal term
        assert_ne!(n1, normalize(&scale(FieldElem::from_int(Q, 2)), Q));
        // idempotence
        assert_eq!(normalize(&n1, Q), n1);
    }
}
