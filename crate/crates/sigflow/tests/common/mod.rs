//! Shared random generators for the integration suites: seeded scalars,
//! matrices, relations, and well-typed diagram terms.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigflow::diagram::{build, identity_n, Diagram};
use sigflow::exactfield::{parse_scalar, FieldElem, FieldTag};
use sigflow::linrel::{LinRel, Matrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random scalar: small integers/rationals everywhere, plus a few
/// rational functions of `s` over Q(s).
pub fn random_scalar(r: &mut ChaCha8Rng, tag: FieldTag) -> FieldElem {
    const PLAIN: &[&str] = &["0", "1", "-1", "2", "3", "-2", "1/2", "-3/4", "5"];
    const WITH_S: &[&str] = &["s", "-s", "1/s", "s+1", "(s-1)/(s+2)", "s^2", "2/(s+3)"];
    let pool: Vec<&str> = if tag == FieldTag::Qs && r.gen_bool(0.5) {
        WITH_S.to_vec()
    } else {
        PLAIN.to_vec()
    };
    let text = pool[r.gen_range(0..pool.len())];
    parse_scalar(text, tag).expect("pool literal parses")
}

pub fn random_matrix(r: &mut ChaCha8Rng, tag: FieldTag, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<FieldElem>> =
        (0..rows).map(|_| (0..cols).map(|_| random_scalar(r, tag)).collect()).collect();
    Matrix::from_rows(tag, cols, data).expect("rows have the declared width")
}

/// A random linear relation of the given arity: the span of up to
/// `m + n` random vectors.
pub fn random_rel(r: &mut ChaCha8Rng, tag: FieldTag, m: usize, n: usize) -> LinRel {
    let count = r.gen_range(0..=m + n);
    let rows: Vec<Vec<FieldElem>> =
        (0..count).map(|_| (0..m + n).map(|_| random_scalar(r, tag)).collect()).collect();
    LinRel::span(tag, m, n, rows).expect("rows have width m + n")
}

/// One random generator layer on `width` wires: walks left to right,
/// tiling the wires with generators (dom-0 generators may be inserted
/// too), and returns the layer with its output width.
fn random_layer(r: &mut ChaCha8Rng, tag: FieldTag, width: usize) -> Diagram {
    let mut parts: Vec<Diagram> = Vec::new();
    let mut remaining = width;
    // keep layers from ballooning: at most one width-increasing generator
    // per layer (normalization cost grows steeply with arity)
    let mut growth_budget = 1usize;
    while remaining > 0 {
        let choice = r.gen_range(0..10);
        let part = match choice {
            0 if remaining >= 2 => build::add(),
            1 if remaining >= 2 => build::braid(),
            2 if remaining >= 2 => build::cup(),
            3 if growth_budget > 0 => build::dup(),
            4 => build::delete(),
            5 => build::scale(random_scalar(r, tag)),
            6 if growth_budget > 0 => build::zero(),
            7 if growth_budget > 0 => build::cap(),
            _ => build::id(),
        };
        growth_budget -= part.cod().saturating_sub(part.dom()).min(growth_budget);
        remaining -= part.dom();
        parts.push(part);
    }
    if parts.is_empty() {
        // width 0: either stay empty or spontaneously create wires
        if r.gen_bool(0.5) {
            parts.push(if r.gen_bool(0.5) { build::zero() } else { build::cap() });
        } else {
            return Diagram::empty();
        }
    }
    build::pars(parts)
}

/// A random well-typed term with the given input arity.
pub fn random_term_with_dom(
    r: &mut ChaCha8Rng,
    tag: FieldTag,
    dom: usize,
    layers: usize,
) -> Diagram {
    let mut acc = identity_n(dom);
    for _ in 0..layers {
        let layer = random_layer(r, tag, acc.cod());
        acc = build::seq(&acc, &layer);
    }
    acc
}

/// A random well-typed term with the given output arity: a random term is
/// padded (tensoring with `zero`) or trimmed (composing with `del`) until
/// its codomain matches.
pub fn random_term_with_cod(
    r: &mut ChaCha8Rng,
    tag: FieldTag,
    cod: usize,
    layers: usize,
) -> Diagram {
    let dom = r.gen_range(0..=3);
    let mut t = random_term_with_dom(r, tag, dom, layers);
    while t.cod() < cod {
        t = Diagram::par(&t, &build::zero());
    }
    if t.cod() > cod {
        let extra = t.cod() - cod;
        let mut trim = vec![identity_n(cod)];
        trim.extend(vec![build::delete(); extra]);
        t = build::seq(&t, &build::pars(trim));
    }
    t
}
