//! Executable catalog of the equational theory of signal-flow diagrams:
//! the eighteen linear-map laws (commutative monoid, cocommutative
//! comonoid, bimonoid, scalar rig), the relational laws (zigzags, the two
//! extra-special Frobenius structures, the −1 cup law, the scalar
//! adjoint), ten derived adjoint reformulations, the antipode law, two
//! braiding-expressibility identities and one encoding self-check —
//! 45 laws in all, each a pair of diagram templates verified by exact
//! semantic equality. Also hosts the inverted-pendulum gallery.

use crate::diagram::build::{
    add, adjoint, cap, codelete, codup, cozero, cup, delete, dup, id, pars, scale, seq, seqs, zero,
};
use crate::diagram::{build, identity_n, permutation, Diagram};
use crate::exactfield::{format_scalar, parse_scalar, FieldElem, FieldError, FieldTag};
use crate::linrel::{rel_equal, LinRel};
use crate::semantics::eval_rel;

/// Which presentation a law belongs to: the linear-map fragment (laws
/// sound for matrices, no cups or caps required) or the full relational
/// theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Vect,
    Rel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCondition {
    None,
    CNonZero,
    CNonOne,
}

/// A scalar parameter assignment for a law template.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Binding {
    pub b: Option<FieldElem>,
    pub c: Option<FieldElem>,
}

impl Binding {
    pub fn with_c(c: FieldElem) -> Binding {
        Binding { b: None, c: Some(c) }
    }

    pub fn with_bc(b: FieldElem, c: FieldElem) -> Binding {
        Binding { b: Some(b), c: Some(c) }
    }

    fn b(&self) -> FieldElem {
        self.b.clone().expect("law binds parameter b")
    }

    fn c(&self) -> FieldElem {
        self.c.clone().expect("law binds parameter c")
    }
}

/// A named pair of diagram templates with scalar parameters and an
/// optional side condition.
pub struct Law {
    pub name: &'static str,
    /// Subset of `["b", "c"]`, the parameters the templates consume.
    pub params: &'static [&'static str],
    pub side_condition: SideCondition,
    pub scope: Scope,
    template: fn(&Binding, FieldTag) -> (Diagram, Diagram),
}

impl Law {
    /// True when the assignment may be instantiated.
    pub fn side_holds(&self, binding: &Binding) -> bool {
        match self.side_condition {
            SideCondition::None => true,
            SideCondition::CNonZero => !binding.c().is_zero(),
            SideCondition::CNonOne => !binding.c().is_one(),
        }
    }

    /// Instantiate both sides. Precondition: the binding covers
    /// `self.params` and satisfies the side condition.
    pub fn instantiate(&self, binding: &Binding, tag: FieldTag) -> (Diagram, Diagram) {
        (self.template)(binding, tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Both canonical relations, for diagnosis.
    Fail { lhs: LinRel, rhs: LinRel },
    SkippedSideCondition,
}

#[derive(Debug, Clone)]
pub struct LawCheck {
    pub binding: Binding,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct LawReport {
    pub name: &'static str,
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.verdict, Verdict::Fail { .. }))
    }
}

/// Verify one law on a list of parameter assignments: each assignment
/// satisfying the side condition is checked by evaluating both template
/// sides and comparing canonical relations; the others are marked
/// skipped. Failures are data, not errors.
pub fn check_law(law: &Law, samples: &[Binding], tag: FieldTag) -> LawReport {
    let checks = samples
        .iter()
        .map(|binding| {
            let verdict = if !law.side_holds(binding) {
                Verdict::SkippedSideCondition
            } else {
                let (lhs, rhs) = law.instantiate(binding, tag);
                debug_assert_eq!(lhs.signature(), rhs.signature());
                let lv = eval_rel(&lhs, tag);
                let rv = eval_rel(&rhs, tag);
                if rel_equal(&lv, &rv) {
                    Verdict::Pass
                } else {
                    Verdict::Fail { lhs: lv, rhs: rv }
                }
            };
            LawCheck { binding: binding.clone(), verdict }
        })
        .collect();
    LawReport { name: law.name, checks }
}

/// The standard scalar sample set: additive/multiplicative units, a
/// negative, a generic integer, and — over `Q(s)` — the differentiation
/// and integration scalars plus a generic rational function. Two-parameter
/// laws take all ordered pairs from the shorter list.
pub fn standard_samples(law: &Law, tag: FieldTag) -> Vec<Binding> {
    let parse = |t: &str| parse_scalar(t, tag).expect("sample literal parses");
    match law.params.len() {
        0 => vec![Binding::default()],
        1 => {
            let mut texts = vec!["0", "1", "-1", "2"];
            if tag == FieldTag::Qs {
                texts.extend(["s", "1/s", "(s+1)/(s-2)"]);
            }
            texts.into_iter().map(|t| Binding::with_c(parse(t))).collect()
        }
        _ => {
            let mut texts = vec!["0", "1", "-1", "2"];
            if tag == FieldTag::Qs {
                texts.push("s");
            }
            let vals: Vec<FieldElem> = texts.into_iter().map(parse).collect();
            let mut out = Vec::new();
            for b in &vals {
                for c in &vals {
                    out.push(Binding::with_bc(b.clone(), c.clone()));
                }
            }
            out
        }
    }
}

/// One machine-readable report line per checked assignment, in the form
/// `law=R29 c=- verdict=pass` (two-parameter laws also carry `b=`).
pub fn report_lines(report: &LawReport, two_param: bool) -> Vec<String> {
    report
        .checks
        .iter()
        .map(|check| {
            let fmt = |v: &Option<FieldElem>| {
                v.as_ref().map_or_else(|| "-".to_string(), format_scalar)
            };
            let verdict = match &check.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail { .. } => "fail",
                Verdict::SkippedSideCondition => "skipped-side-condition",
            };
            if two_param {
                format!(
                    "law={} b={} c={} verdict={}",
                    report.name,
                    fmt(&check.binding.b),
                    fmt(&check.binding.c),
                    verdict
                )
            } else {
                format!("law={} c={} verdict={}", report.name, fmt(&check.binding.c), verdict)
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The catalog
// ---------------------------------------------------------------------------

fn minus_one(tag: FieldTag) -> FieldElem {
    FieldElem::from_int(tag, -1)
}

macro_rules! law {
    ($name:literal, $params:expr, $side:expr, $scope:expr, $tpl:expr) => {
        Law { name: $name, params: $params, side_condition: $side, scope: $scope, template: $tpl }
    };
}

const NO_PARAMS: &[&str] = &[];
const C_ONLY: &[&str] = &["c"];
const B_AND_C: &[&str] = &["b", "c"];

/// All 45 laws of the catalog.
pub fn law_catalog() -> Vec<Law> {
    use Scope::{Rel, Vect};
    use SideCondition::{CNonOne, CNonZero, None as NoSide};
    vec![
        // -- commutative monoid (addition, zero) --
        law!("R01", NO_PARAMS, NoSide, Vect, |_, _| {
            (seq(&pars(vec![zero(), id()]), &add()), id())
        }),
        law!("R02", NO_PARAMS, NoSide, Vect, |_, _| {
            (
                seq(&pars(vec![add(), id()]), &add()),
                seq(&pars(vec![id(), add()]), &add()),
            )
        }),
        law!("R03", NO_PARAMS, NoSide, Vect, |_, _| (seq(&build::braid(), &add()), add())),
        // -- cocommutative comonoid (duplication, deletion) --
        law!("R04", NO_PARAMS, NoSide, Vect, |_, _| {
            (seq(&dup(), &pars(vec![delete(), id()])), id())
        }),
        law!("R05", NO_PARAMS, NoSide, Vect, |_, _| {
            (
                seq(&dup(), &pars(vec![dup(), id()])),
                seq(&dup(), &pars(vec![id(), dup()])),
            )
        }),
        law!("R06", NO_PARAMS, NoSide, Vect, |_, _| (seq(&dup(), &build::braid()), dup())),
        // -- bimonoid interaction --
        law!("R07", NO_PARAMS, NoSide, Vect, |_, _| {
            (
                seq(&add(), &dup()),
                seqs(vec![
                    pars(vec![dup(), dup()]),
                    pars(vec![id(), build::braid(), id()]),
                    pars(vec![add(), add()]),
                ]),
            )
        }),
        law!("R08", NO_PARAMS, NoSide, Vect, |_, _| {
            (seq(&zero(), &dup()), pars(vec![zero(), zero()]))
        }),
        law!("R09", NO_PARAMS, NoSide, Vect, |_, _| {
            (seq(&add(), &delete()), pars(vec![delete(), delete()]))
        }),
        law!("R10", NO_PARAMS, NoSide, Vect, |_, _| {
            (seq(&zero(), &delete()), Diagram::empty())
        }),
        // -- the rig of scalars --
        law!("R11", B_AND_C, NoSide, Vect, |bind, _| {
            (
                seq(&scale(bind.b()), &scale(bind.c())),
                scale(bind.b().mul(&bind.c())),
            )
        }),
        law!("R12", B_AND_C, NoSide, Vect, |bind, _| {
            (
                scale(bind.b().add(&bind.c())),
                seqs(vec![dup(), pars(vec![scale(bind.b()), scale(bind.c())]), add()]),
            )
        }),
        law!("R13", NO_PARAMS, NoSide, Vect, |_, tag| (scale(FieldElem::one(tag)), id())),
        law!("R14", NO_PARAMS, NoSide, Vect, |_, tag| {
            (scale(FieldElem::zero(tag)), seq(&delete(), &zero()))
        }),
        // -- scalars versus (co)monoid structure --
        law!("R15", C_ONLY, NoSide, Vect, |bind, _| {
            (
                seq(&pars(vec![scale(bind.c()), scale(bind.c())]), &add()),
                seq(&add(), &scale(bind.c())),
            )
        }),
        law!("R16", C_ONLY, NoSide, Vect, |bind, _| {
            (seq(&zero(), &scale(bind.c())), zero())
        }),
        law!("R17", C_ONLY, NoSide, Vect, |bind, _| {
            (
                seq(&scale(bind.c()), &dup()),
                seq(&dup(), &pars(vec![scale(bind.c()), scale(bind.c())])),
            )
        }),
        law!("R18", C_ONLY, NoSide, Vect, |bind, _| {
            (seq(&scale(bind.c()), &delete()), delete())
        }),
        // -- compact closure --
        law!("R19", NO_PARAMS, NoSide, Rel, |_, _| {
            (seq(&pars(vec![cap(), id()]), &pars(vec![id(), cup()])), id())
        }),
        law!("R20", NO_PARAMS, NoSide, Rel, |_, _| {
            (seq(&pars(vec![id(), cap()]), &pars(vec![cup(), id()])), id())
        }),
        // -- Frobenius structure of (addition, zero) with its adjoints --
        law!("R21", NO_PARAMS, NoSide, Rel, |_, _| {
            (
                seq(&pars(vec![build::coadd(), id()]), &pars(vec![id(), add()])),
                seq(&add(), &build::coadd()),
            )
        }),
        law!("R22", NO_PARAMS, NoSide, Rel, |_, _| {
            (
                seq(&pars(vec![id(), build::coadd()]), &pars(vec![add(), id()])),
                seq(&add(), &build::coadd()),
            )
        }),
        // -- Frobenius structure of (duplication, deletion) with adjoints --
        law!("R23", NO_PARAMS, NoSide, Rel, |_, _| {
            (
                seq(&pars(vec![dup(), id()]), &pars(vec![id(), codup()])),
                seq(&codup(), &dup()),
            )
        }),
        law!("R24", NO_PARAMS, NoSide, Rel, |_, _| {
            (
                seq(&pars(vec![id(), dup()]), &pars(vec![codup(), id()])),
                seq(&codup(), &dup()),
            )
        }),
        // -- special and extra laws (extra-special Frobenius) --
        law!("R25", NO_PARAMS, NoSide, Rel, |_, _| (seq(&build::coadd(), &add()), id())),
        law!("R26", NO_PARAMS, NoSide, Rel, |_, _| {
            (seq(&zero(), &cozero()), Diagram::empty())
        }),
        law!("R27", NO_PARAMS, NoSide, Rel, |_, _| (seq(&dup(), &codup()), id())),
        law!("R28", NO_PARAMS, NoSide, Rel, |_, _| {
            (seq(&codelete(), &delete()), Diagram::empty())
        }),
        // -- the cup with a −1 is addition-then-cozero --
        law!("R29", NO_PARAMS, NoSide, Rel, |_, tag| {
            (
                seq(&pars(vec![scale(minus_one(tag)), id()]), &cup()),
                seq(&add(), &cozero()),
            )
        }),
        // -- the cap from codeletion and duplication --
        law!("R30", NO_PARAMS, NoSide, Rel, |_, _| (cap(), seq(&codelete(), &dup()))),
        // -- the adjoint of a nonzero scalar is its reciprocal --
        law!("R31", C_ONLY, CNonZero, Rel, |bind, _| {
            (
                adjoint(&scale(bind.c())),
                scale(bind.c().inv().expect("side condition: c nonzero")),
            )
        }),
        // -- derived laws --
        law!("D01", NO_PARAMS, NoSide, Rel, |_, _| (delete(), seq(&dup(), &cup()))),
        law!("D02", NO_PARAMS, NoSide, Rel, |_, tag| {
            (zero(), seqs(vec![cap(), codup(), scale(FieldElem::zero(tag))]))
        }),
        law!("D03", NO_PARAMS, NoSide, Rel, |_, tag| {
            (
                add(),
                seq(
                    &pars(vec![scale(minus_one(tag)), build::coadd()]),
                    &pars(vec![cup(), id()]),
                ),
            )
        }),
        law!("D04", NO_PARAMS, NoSide, Rel, |_, _| {
            (dup(), seq(&pars(vec![id(), cap()]), &pars(vec![codup(), id()])))
        }),
        law!("D05", NO_PARAMS, NoSide, Rel, |_, _| {
            (
                seq(&pars(vec![id(), codup()]), &add()),
                seqs(vec![
                    pars(vec![dup(), id(), id()]),
                    pars(vec![id(), build::braid(), id()]),
                    pars(vec![add(), add()]),
                    codup(),
                ]),
            )
        }),
        law!("D06", NO_PARAMS, NoSide, Rel, |_, _| {
            (seq(&dup(), &pars(vec![cozero(), id()])), seq(&cozero(), &zero()))
        }),
        law!("D07", NO_PARAMS, NoSide, Rel, |_, _| {
            (seq(&pars(vec![codelete(), id()]), &add()), seq(&delete(), &codelete()))
        }),
        law!("D08", C_ONLY, CNonOne, Rel, |bind, _| {
            (
                seqs(vec![build::coadd(), pars(vec![id(), scale(bind.c())]), add()]),
                seq(&delete(), &codelete()),
            )
        }),
        law!("D09", C_ONLY, CNonOne, Rel, |bind, _| {
            (
                seqs(vec![dup(), pars(vec![id(), scale(bind.c())]), codup()]),
                seq(&cozero(), &zero()),
            )
        }),
        law!("D10", NO_PARAMS, NoSide, Rel, |_, tag| {
            (
                cup(),
                seqs(vec![pars(vec![scale(minus_one(tag)), id()]), add(), cozero()]),
            )
        }),
        // -- the antipode --
        law!("antipode", NO_PARAMS, NoSide, Rel, |_, tag| {
            (
                seqs(vec![dup(), pars(vec![scale(minus_one(tag)), id()]), add()]),
                seq(&delete(), &zero()),
            )
        }),
        // -- braiding is expressible from the other generators --
        law!("braid-via-add", NO_PARAMS, NoSide, Rel, |_, tag| {
            (
                build::braid(),
                seqs(vec![
                    pars(vec![dup(), id()]),
                    pars(vec![scale(minus_one(tag)), add()]),
                    pars(vec![id(), dup()]),
                    pars(vec![add(), id()]),
                    pars(vec![dup(), id()]),
                    pars(vec![id(), scale(minus_one(tag)), id()]),
                    pars(vec![id(), add()]),
                ]),
            )
        }),
        law!("braid-std-form", NO_PARAMS, NoSide, Rel, |_, tag| {
            (
                build::braid(),
                seqs(vec![
                    pars(vec![dup(), dup()]),
                    pars(vec![
                        scale(FieldElem::zero(tag)),
                        scale(FieldElem::one(tag)),
                        scale(FieldElem::one(tag)),
                        scale(FieldElem::zero(tag)),
                    ]),
                    pars(vec![id(), build::braid(), id()]),
                    pars(vec![add(), add()]),
                ]),
            )
        }),
        // -- encoding self-check: the explicit zero-under-a-cup composite
        //    agrees with the generic cap/cup conjugation of zero --
        law!("cozero-selfcheck", NO_PARAMS, NoSide, Rel, |_, _| {
            (cozero(), adjoint(&zero()))
        }),
    ]
}

// ---------------------------------------------------------------------------
// Inverted pendulum gallery
// ---------------------------------------------------------------------------

/// Numeric parameters of the cart-and-pendulum: cart mass, bob mass,
/// gravity, rod length — constants embedded in `Q(s)`.
#[derive(Debug, Clone)]
pub struct PendulumParams {
    pub cart_mass: FieldElem,
    pub bob_mass: FieldElem,
    pub gravity: FieldElem,
    pub rod_length: FieldElem,
}

fn integrator(tag: FieldTag) -> Diagram {
    let int = parse_scalar("1/s", tag).expect("1/s is a valid scalar over Q(s)");
    seq(&scale(int.clone()), &scale(int))
}

/// Build both inverted-pendulum diagrams, each of signature (1, 2):
/// force in, cart position and rod angle out.
///
/// The composite glues the three physical blocks — `F_net = M·ẍ` with
/// `F_net + mg·θ = F`, and `ℓ·θ̈ = g·θ − ẍ` — sharing `ẍ` through a
/// duplication and identifying the two θ wires by a coduplication written
/// as duplication plus cup. The flattened single-block diagram carries the
/// gains 1/M, −1/(Mℓ), mg/M and (M+m)g/(Mℓ) with double integrators; its
/// mg/M feedback enters through an explicit −1 (the force balance
/// subtracts that term — compare the −mg gain in the composite).
pub fn pendulum(params: &PendulumParams) -> Result<(Diagram, Diagram), FieldError> {
    let tag = FieldTag::Qs;
    for v in [&params.cart_mass, &params.bob_mass, &params.gravity, &params.rod_length] {
        assert_eq!(v.tag(), tag, "pendulum parameters are constants embedded in Q(s)");
    }
    let (mm, m, g, l) =
        (&params.cart_mass, &params.bob_mass, &params.gravity, &params.rod_length);
    let m_inv = mm.inv()?; // fails on M = 0
    let ml_inv = mm.mul(l).inv()?; // fails on l = 0 (and M = 0)
    let l_inv = l.inv()?;

    // pendulum arm: ẍ in, θ out, closing the loop s²θ = (g/ℓ)θ − (1/ℓ)ẍ
    let arm = seqs(vec![
        pars(vec![cap(), id()]),                           // (a, a', ẍ)
        pars(vec![id(), id(), scale(l_inv.neg())]),        // (a, a', −ẍ/ℓ)
        pars(vec![id(), add()]),                           // (a, a' − ẍ/ℓ)
        pars(vec![id(), integrator(tag)]),                 // (a, θ)
        pars(vec![id(), dup()]),                           // (a, θ, θ)
        pars(vec![id(), scale(g.mul(&l_inv)), id()]),      // (a, gθ/ℓ, θ)
        pars(vec![cup(), id()]),                           // a = gθ/ℓ; out θ
    ]);

    // coduplication written as duplication and a cup
    let codup_explicit = seq(&pars(vec![id(), dup()]), &pars(vec![cup(), id()]));

    let composite = seqs(vec![
        pars(vec![id(), cap()]),                            // (F, θa, θb)
        pars(vec![id(), scale(m.mul(g).neg()), id()]),      // (F, −mg·θa, θb)
        pars(vec![add(), id()]),                            // (F_net, θb)
        pars(vec![scale(m_inv.clone()), id()]),             // (ẍ, θb)
        pars(vec![dup(), id()]),                            // (ẍ, ẍ, θb)
        pars(vec![integrator(tag), id(), id()]),            // (x, ẍ, θb)
        pars(vec![id(), arm, id()]),                        // (x, θc, θb)
        pars(vec![id(), codup_explicit]),                   // (x, θ)
    ]);

    let mg_over_m = m.mul(g).mul(&m_inv);
    let big = mm.add(m).mul(g).mul(&ml_inv); // (M+m)g/(Mℓ)
    let flattened = seqs(vec![
        dup(),                                              // (F, F)
        pars(vec![scale(m_inv), scale(ml_inv.neg())]),      // (F/M, −F/(Mℓ))
        pars(vec![cap(), cap(), id(), id()]),               // (f₁, f₁', f₂, f₂', ·, ·)
        permutation(&[0, 4, 2, 5, 1, 3]),                   // (f₁, F/M, f₂, −F/(Mℓ), f₁', f₂')
        pars(vec![add(), add(), identity_n(2)]),            // (s²x, s²θ, f₁', f₂')
        pars(vec![integrator(tag), integrator(tag), identity_n(2)]), // (x, θ, f₁', f₂')
        pars(vec![id(), dup(), identity_n(2)]),             // (x, θ, θ, f₁', f₂')
        pars(vec![identity_n(2), dup(), identity_n(2)]),    // (x, θ, θ, θ, f₁', f₂')
        pars(vec![
            identity_n(2),
            seq(&scale(mg_over_m), &scale(minus_one(tag))),
            scale(big),
            identity_n(2),
        ]),                                                 // (x, θ, −mgθ/M, bigθ, f₁', f₂')
        permutation(&[0, 1, 2, 4, 3, 5]),                   // (x, θ, −mgθ/M, f₁', bigθ, f₂')
        pars(vec![identity_n(2), cup(), cup()]),            // close both loops
    ]);

    Ok((composite, flattened))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrel::as_map;

    #[test]
    fn catalog_shape() {
        let laws = law_catalog();
        assert_eq!(laws.len(), 45);
        assert_eq!(laws.iter().filter(|l| l.scope == Scope::Vect).count(), 18);
        let r31 = laws.iter().find(|l| l.name == "R31").unwrap();
        assert_eq!(r31.side_condition, SideCondition::CNonZero);
        let d08 = laws.iter().find(|l| l.name == "D08").unwrap();
        assert_eq!(d08.side_condition, SideCondition::CNonOne);
        // names are unique
        let mut names: Vec<_> = laws.iter().map(|l| l.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 45);
    }

    #[test]
    fn full_catalog_passes_over_q() {
        for law in law_catalog() {
            let samples = standard_samples(&law, FieldTag::Q);
            let report = check_law(&law, &samples, FieldTag::Q);
            assert!(report.all_pass(), "law {} failed over Q: {:?}", law.name, report.checks);
        }
    }

    #[test]
    fn side_conditions_skip() {
        let laws = law_catalog();
        let r31 = laws.iter().find(|l| l.name == "R31").unwrap();
        let zero_binding = Binding::with_c(FieldElem::zero(FieldTag::Q));
        let report = check_law(r31, &[zero_binding], FieldTag::Q);
        assert!(matches!(report.checks[0].verdict, Verdict::SkippedSideCondition));
    }

    #[test]
    fn report_line_format() {
        let laws = law_catalog();
        let r29 = laws.iter().find(|l| l.name == "R29").unwrap();
        let report = check_law(r29, &standard_samples(r29, FieldTag::Q), FieldTag::Q);
        assert_eq!(report_lines(&report, false), vec!["law=R29 c=- verdict=pass"]);
    }

    #[test]
    fn pendulum_diagrams_agree() {
        let q = |v: i64| FieldElem::from_int(FieldTag::Qs, v);
        let params = PendulumParams {
            cart_mass: q(2),
            bob_mass: q(1),
            gravity: q(10),
            rod_length: q(1),
        };
        let (composite, flattened) = pendulum(&params).unwrap();
        assert_eq!(composite.signature(), (1, 2));
        assert_eq!(flattened.signature(), (1, 2));
        let lc = eval_rel(&composite, FieldTag::Qs);
        let lf = eval_rel(&flattened, FieldTag::Qs);
        assert!(rel_equal(&lc, &lf));
        let transfer = as_map(&lc).unwrap();
        assert_eq!(transfer.rows(), 2);
        assert_eq!(transfer.cols(), 1);
        // θ/F = −1 / (Mℓs² − (M+m)g) with these numbers: −1/(2s² − 30)
        let theta = parse_scalar("-1/(2*s^2-30)", FieldTag::Qs).unwrap();
        assert_eq!(transfer.get(1, 0), &theta);
    }

    #[test]
    fn pendulum_rejects_zero_mass() {
        let q = |v: i64| FieldElem::from_int(FieldTag::Qs, v);
        let params = PendulumParams {
            cart_mass: q(0),
            bob_mass: q(1),
            gravity: q(10),
            rod_length: q(1),
        };
        assert_eq!(pendulum(&params).unwrap_err(), FieldError::DivisionByZero);
    }
}
