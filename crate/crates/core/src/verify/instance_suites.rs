use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use super::diagrams::{self, Diagram};
use super::random::{random_expr, random_expr_in, sample_rng};
use super::{Recorder, SuiteReport};
use crate::expr::OneCellExpr;
use crate::instances::{
    Elem, FinSetObj, Model, PairOrder, Semiring, SemiringInstance, SpanCell, SpanInstance,
    SpanMorphism,
};
use crate::normalize::{canonical_iso, embed, normalize};
use crate::signature::{SmcSignature, ZeroCellId};
use crate::twocell::{check_diagram, TwoCellExpr};

type E = OneCellExpr;
type C = TwoCellExpr;

/// Which model an instance suite samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    /// Random spans over finite sets with at most `max_set` elements.
    Span { max_set: usize },
    /// The semiring of natural numbers with generator values at most
    /// `max_value`, on random expressions of depth at most `max_depth`.
    Naturals { max_value: u64, max_depth: usize },
}

/// A signature with a chain of 0-cells `a -> b -> c -> d -> e`, parallel
/// generators `r, r2 : a -> b`, `s, s2 : b -> c`, `t, t2 : c -> d`,
/// `u : d -> e` and 2-cells `psi : r => r2`, `phi : s => s2`,
/// `chi : t => t2`, together with a span model of it.
pub struct SpanWorld {
    pub sig: SmcSignature,
    pub instance: SpanInstance,
}

const CHAIN: [&str; 5] = ["a", "b", "c", "d", "e"];
const GENS: [(&str, &str, &str); 7] = [
    ("r", "a", "b"),
    ("r2", "a", "b"),
    ("s", "b", "c"),
    ("s2", "b", "c"),
    ("t", "c", "d"),
    ("t2", "c", "d"),
    ("u", "d", "e"),
];
const CELLS: [(&str, &str, &str); 3] = [("psi", "r", "r2"), ("phi", "s", "s2"), ("chi", "t", "t2")];

fn world_signature() -> SmcSignature {
    let mut sig = SmcSignature::from_decls(&CHAIN, &GENS).expect("fixed signature");
    for (name, src, tgt) in CELLS {
        sig.add_gen2(name, E::gen(src), E::gen(tgt))
            .expect("fixed signature");
    }
    sig
}

fn random_set<R: Rng>(rng: &mut R, prefix: &str, max_set: usize) -> FinSetObj {
    let n = if rng.gen_bool(0.1) {
        0
    } else {
        rng.gen_range(1..=max_set.max(1))
    };
    FinSetObj::new(
        (0..n)
            .map(|i| Elem::atom(&format!("{prefix}{i}")))
            .collect(),
    )
    .expect("distinct atoms")
}

fn random_span<R: Rng>(
    rng: &mut R,
    name: &str,
    src: &FinSetObj,
    tgt: &FinSetObj,
    max_set: usize,
) -> SpanCell {
    if src.is_empty() || tgt.is_empty() {
        return SpanCell::zero(src, tgt);
    }
    let n = rng.gen_range(0..=max_set);
    let left = (0..n).map(|_| rng.gen_range(0..src.len())).collect();
    let right = (0..n).map(|_| rng.gen_range(0..tgt.len())).collect();
    let apex = FinSetObj::new((0..n).map(|i| Elem::atom(&format!("{name}_{i}"))).collect())
        .expect("distinct atoms");
    SpanCell::new(src.clone(), tgt.clone(), apex, left, right).expect("legs in range")
}

/// A span parallel to `s` with a random map of spans out of `s`: elements
/// are merged or kept apart at random, extra elements are added, and the
/// result is shuffled.
fn random_image<R: Rng>(rng: &mut R, name: &str, s: &SpanCell) -> (SpanCell, Vec<usize>) {
    let mut legs: Vec<(usize, usize)> = Vec::new();
    let mut map = Vec::new();
    for i in 0..s.apex().len() {
        let l = (s.left_leg()[i], s.right_leg()[i]);
        match legs.iter().position(|&x| x == l) {
            Some(k) if rng.gen_bool(0.5) => map.push(k),
            _ => {
                legs.push(l);
                map.push(legs.len() - 1);
            }
        }
    }
    if !s.src().is_empty() && !s.tgt().is_empty() && rng.gen_bool(0.5) {
        legs.push((
            rng.gen_range(0..s.src().len()),
            rng.gen_range(0..s.tgt().len()),
        ));
    }
    let mut order: Vec<usize> = (0..legs.len()).collect();
    order.shuffle(rng);
    let mut place = vec![0; legs.len()];
    for (pos, &k) in order.iter().enumerate() {
        place[k] = pos;
    }
    let apex = FinSetObj::new(
        (0..legs.len())
            .map(|i| Elem::atom(&format!("{name}_{i}")))
            .collect(),
    )
    .expect("distinct atoms");
    let left = order.iter().map(|&k| legs[k].0).collect();
    let right = order.iter().map(|&k| legs[k].1).collect();
    let span =
        SpanCell::new(s.src().clone(), s.tgt().clone(), apex, left, right).expect("legs in range");
    (span, map.into_iter().map(|k| place[k]).collect())
}

/// A random span model of the chain signature described at [`SpanWorld`].
pub fn span_world<R: Rng>(rng: &mut R, max_set: usize, order: PairOrder) -> SpanWorld {
    let sig = world_signature();
    let mut instance = SpanInstance::new().with_order(order);
    let sets: Vec<FinSetObj> = CHAIN.iter().map(|z| random_set(rng, z, max_set)).collect();
    for (z, set) in CHAIN.iter().zip(&sets) {
        instance.set_zero_cell(z, set.clone());
    }
    let set_of = |z: &str| &sets[CHAIN.iter().position(|c| *c == z).expect("chain 0-cell")];
    for (name, src, tgt) in GENS {
        if CELLS.iter().any(|c| c.2 == name) {
            continue;
        }
        let span = random_span(rng, name, set_of(src), set_of(tgt), max_set);
        if let Some((cell, _, image)) = CELLS.iter().find(|c| c.1 == name) {
            let (target, map) = random_image(rng, image, &span);
            instance.set_gen1(image, target);
            instance.set_gen2(cell, map);
        }
        instance.set_gen1(name, span);
    }
    instance.validate(&sig).expect("generated world is valid");
    SpanWorld { sig, instance }
}

fn z(name: &str) -> ZeroCellId {
    ZeroCellId::new(name)
}

fn hom<R: Rng>(rng: &mut R, sig: &SmcSignature, src: &str, tgt: &str, depth: usize) -> E {
    random_expr_in(rng, sig, z(src), z(tgt), depth)
}

fn eval_path(inst: &SpanInstance, sig: &SmcSignature, path: &[C]) -> Option<SpanMorphism> {
    let mut acc: Option<SpanMorphism> = None;
    for c in path {
        let m = inst.eval_two_cell(c, sig).ok()?;
        acc = Some(match acc {
            None => m,
            Some(a) => a.then(&m).ok()?,
        });
    }
    acc
}

fn paths_agree(inst: &SpanInstance, sig: &SmcSignature, p1: &[C], p2: &[C]) -> bool {
    match (eval_path(inst, sig, p1), eval_path(inst, sig, p2)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// The pullback listed by filtering the full product of apexes in
/// lexicographic position order.
fn pullback_oracle(t: &SpanCell, s: &SpanCell) -> Vec<(Elem, usize, usize)> {
    let xs = s.apex().elements().iter().enumerate();
    xs.flat_map(|(i, x)| {
        t.apex()
            .elements()
            .iter()
            .enumerate()
            .filter(move |&(j, _)| s.right_leg()[i] == t.left_leg()[j])
            .map(move |(j, y)| {
                (
                    Elem::pair(x.clone(), y.clone()),
                    s.left_leg()[i],
                    t.right_leg()[j],
                )
            })
    })
    .collect()
}

fn listing(s: &SpanCell) -> Vec<(Elem, usize, usize)> {
    (0..s.apex().len())
        .map(|i| {
            (
                s.apex().elements()[i].clone(),
                s.left_leg()[i],
                s.right_leg()[i],
            )
        })
        .collect()
}

fn compose_contract(world: &SpanWorld, outer: &E, inner: &E) -> bool {
    let (inst, sig) = (&world.instance, &world.sig);
    let (Ok(t), Ok(s), Ok(ts)) = (
        inst.eval_one_cell(outer, sig),
        inst.eval_one_cell(inner, sig),
        inst.eval_one_cell(&E::hcomp(outer.clone(), inner.clone()), sig),
    ) else {
        return false;
    };
    ts.src() == s.src() && ts.tgt() == t.tgt() && listing(&ts) == pullback_oracle(&t, &s)
}

fn sum_contract(world: &SpanWorld, x: &E, y: &E) -> bool {
    let (inst, sig) = (&world.instance, &world.sig);
    let (Ok(a), Ok(b), Ok(ab)) = (
        inst.eval_one_cell(x, sig),
        inst.eval_one_cell(y, sig),
        inst.eval_one_cell(&E::sum(x.clone(), y.clone()), sig),
    ) else {
        return false;
    };
    let tag = |f: fn(Elem) -> Elem, s: &SpanCell| {
        listing(s).into_iter().map(move |(e, l, r)| (f(e), l, r))
    };
    let expected: Vec<_> = tag(Elem::left, &a).chain(tag(Elem::right, &b)).collect();
    listing(&ab) == expected
}

fn bijective(world: &SpanWorld, c: &C) -> bool {
    matches!(world.instance.eval_two_cell(c, &world.sig), Ok(m) if m.is_bijective())
}

fn id(e: &E) -> C {
    C::id(e.clone())
}

fn hc(x: &E, y: &E) -> E {
    E::hcomp(x.clone(), y.clone())
}

fn plus(x: &E, y: &E) -> E {
    E::sum(x.clone(), y.clone())
}

fn naturality_squares() -> Vec<(&'static str, Vec<C>, Vec<C>)> {
    let (r, r2, s, s2, t, t2) = (
        E::gen("r"),
        E::gen("r2"),
        E::gen("s"),
        E::gen("s2"),
        E::gen("t"),
        E::gen("t2"),
    );
    let (psi, phi, chi) = (C::gen("psi"), C::gen("phi"), C::gen("chi"));
    let zero_ab = E::zero("a", "b");
    vec![
        (
            "distl-natural-outer",
            vec![
                C::hcomp_cells(phi.clone(), id(&plus(&r, &r2))),
                C::DistL(s2.clone(), r.clone(), r2.clone()),
            ],
            vec![
                C::DistL(s.clone(), r.clone(), r2.clone()),
                C::sum_cells(
                    C::hcomp_cells(phi.clone(), id(&r)),
                    C::hcomp_cells(phi.clone(), id(&r2)),
                ),
            ],
        ),
        (
            "distl-natural-left",
            vec![
                C::hcomp_cells(id(&s), C::sum_cells(psi.clone(), id(&r))),
                C::DistL(s.clone(), r2.clone(), r.clone()),
            ],
            vec![
                C::DistL(s.clone(), r.clone(), r.clone()),
                C::sum_cells(C::hcomp_cells(id(&s), psi.clone()), id(&hc(&s, &r))),
            ],
        ),
        (
            "distl-natural-right",
            vec![
                C::hcomp_cells(id(&s), C::sum_cells(id(&r), psi.clone())),
                C::DistL(s.clone(), r.clone(), r2.clone()),
            ],
            vec![
                C::DistL(s.clone(), r.clone(), r.clone()),
                C::sum_cells(id(&hc(&s, &r)), C::hcomp_cells(id(&s), psi.clone())),
            ],
        ),
        (
            "distr-natural-inner",
            vec![
                C::hcomp_cells(id(&plus(&s, &s2)), psi.clone()),
                C::DistR(s.clone(), s2.clone(), r2.clone()),
            ],
            vec![
                C::DistR(s.clone(), s2.clone(), r.clone()),
                C::sum_cells(
                    C::hcomp_cells(id(&s), psi.clone()),
                    C::hcomp_cells(id(&s2), psi.clone()),
                ),
            ],
        ),
        (
            "distr-natural-left",
            vec![
                C::hcomp_cells(C::sum_cells(phi.clone(), id(&s)), id(&r)),
                C::DistR(s2.clone(), s.clone(), r.clone()),
            ],
            vec![
                C::DistR(s.clone(), s.clone(), r.clone()),
                C::sum_cells(C::hcomp_cells(phi.clone(), id(&r)), id(&hc(&s, &r))),
            ],
        ),
        (
            "assoc-natural",
            vec![
                C::hcomp_cells(chi.clone(), C::hcomp_cells(phi.clone(), psi.clone())),
                C::AssocH(t2.clone(), s2.clone(), r2.clone()),
            ],
            vec![
                C::AssocH(t.clone(), s.clone(), r.clone()),
                C::hcomp_cells(C::hcomp_cells(chi.clone(), phi.clone()), psi.clone()),
            ],
        ),
        (
            "sym-natural",
            vec![
                C::sum_cells(psi.clone(), id(&r)),
                C::Sym(r2.clone(), r.clone()),
            ],
            vec![
                C::Sym(r.clone(), r.clone()),
                C::sum_cells(id(&r), psi.clone()),
            ],
        ),
        (
            "addassoc-natural",
            vec![
                C::sum_cells(psi.clone(), C::sum_cells(id(&r), psi.clone())),
                C::AddAssoc(r2.clone(), r.clone(), r2.clone()),
            ],
            vec![
                C::AddAssoc(r.clone(), r.clone(), r.clone()),
                C::sum_cells(C::sum_cells(psi.clone(), id(&r)), psi.clone()),
            ],
        ),
        (
            "lunit-natural",
            vec![
                C::hcomp_cells(id(&E::id_unit("b")), psi.clone()),
                C::LUnit(r2.clone()),
            ],
            vec![C::LUnit(r.clone()), psi.clone()],
        ),
        (
            "runit-natural",
            vec![
                C::hcomp_cells(psi.clone(), id(&E::id_unit("a"))),
                C::RUnit(r2.clone()),
            ],
            vec![C::RUnit(r.clone()), psi.clone()],
        ),
        (
            "addunit-natural",
            vec![
                C::sum_cells(id(&zero_ab), psi.clone()),
                C::AddUnitL(r2.clone()),
            ],
            vec![C::AddUnitL(r.clone()), psi.clone()],
        ),
        (
            "null-natural",
            vec![
                C::hcomp_cells(id(&E::zero("b", "c")), psi.clone()),
                C::NullL(r2.clone(), z("c")),
            ],
            vec![C::NullL(r.clone(), z("c"))],
        ),
        (
            "nullr-natural",
            vec![
                C::hcomp_cells(phi.clone(), id(&zero_ab)),
                C::NullR(s2.clone(), z("a")),
            ],
            vec![C::NullR(s.clone(), z("a"))],
        ),
    ]
}

const COHERENCE_SHAPES: u32 = 18;

/// A random coherence diagram instantiated with random expressions of the
/// chain signature.
fn random_coherence_diagram<R: Rng>(rng: &mut R, sig: &SmcSignature, depth: usize) -> Diagram {
    let k = rng.gen_range(0..COHERENCE_SHAPES);
    let mut h = |s: &str, t: &str| hom(rng, sig, s, t, depth);
    match k {
        0 => diagrams::condition_i(&h("b", "c"), &h("b", "c"), &h("a", "b"), &h("a", "b")),
        1 => diagrams::condition_ii(&h("a", "b"), &h("a", "b"), z("b"), z("c"), z("a")),
        2 => diagrams::condition_iii(&h("c", "d"), &h("b", "c"), &h("a", "b"), &h("a", "b")),
        3 => diagrams::condition_iv(&h("c", "d"), &h("b", "c"), &h("b", "c"), &h("a", "b")),
        4 => diagrams::condition_v(&h("a", "b"), &h("a", "b"), z("b")),
        5 => diagrams::distl_assoc(&h("b", "c"), &h("a", "b"), &h("a", "b"), &h("a", "b")),
        6 => diagrams::distr_assoc(&h("b", "c"), &h("b", "c"), &h("b", "c"), &h("a", "b")),
        7 => diagrams::distl_sym(&h("b", "c"), &h("a", "b"), &h("a", "b")),
        8 => diagrams::distr_sym(&h("b", "c"), &h("b", "c"), &h("a", "b")),
        9 => diagrams::distl_unit(&h("b", "c"), &h("a", "b"), z("a"), z("b")),
        10 => diagrams::null_right(&h("b", "c"), &h("b", "c"), z("a"), z("b"), z("c")),
        11 => diagrams::assoc_outer(&h("c", "d"), &h("c", "d"), &h("b", "c"), &h("a", "b")),
        12 => diagrams::runit_sum(&h("a", "b"), &h("a", "b"), z("a")),
        13 => diagrams::pentagon(&h("d", "e"), &h("c", "d"), &h("b", "c"), &h("a", "b")),
        14 => diagrams::triangle(&h("b", "c"), &h("a", "b"), z("b")),
        15 => diagrams::hexagon(&h("a", "b"), &h("a", "b"), &h("a", "b")),
        16 => diagrams::sym_involution(&h("a", "b"), &h("a", "b")),
        _ => diagrams::add_triangle(&h("a", "b"), &h("a", "b"), z("a"), z("b")),
    }
}

fn span_sample_checks(world: &SpanWorld, rng: &mut impl Rng) -> Vec<(String, bool)> {
    let (inst, sig) = (&world.instance, &world.sig);
    let mut out: Vec<(String, bool)> = Vec::new();
    let mut push = |name: &str, ok: bool| out.push((name.to_string(), ok));
    let (r, s, t, u) = (E::gen("r"), E::gen("s"), E::gen("t"), E::gen("u"));

    let x = hom(rng, sig, "a", "b", 1);
    let x2 = hom(rng, sig, "a", "b", 1);
    let y = hom(rng, sig, "b", "c", 1);
    push("compose-contract", compose_contract(world, &y, &x));
    push(
        "compose-contract-generators",
        compose_contract(world, &s, &r)
            && compose_contract(world, &t, &hc(&s, &r))
            && compose_contract(world, &s, &plus(&r, &E::gen("r2"))),
    );
    push("sum-contract", sum_contract(world, &x, &x2));

    let f = hom(rng, sig, "b", "c", 1);
    let f2 = hom(rng, sig, "b", "c", 1);
    let k = hom(rng, sig, "c", "d", 1);
    let structural = [
        C::AssocH(k.clone(), f.clone(), x.clone()),
        C::LUnit(x.clone()),
        C::RUnit(x.clone()),
        C::AddAssoc(x.clone(), x2.clone(), x.clone()),
        C::AddUnitL(x.clone()),
        C::AddUnitR(x.clone()),
        C::Sym(x.clone(), x2.clone()),
        C::DistL(f.clone(), x.clone(), x2.clone()),
        C::DistR(f.clone(), f2.clone(), x.clone()),
        C::NullL(x.clone(), z("c")),
        C::NullR(f.clone(), z("a")),
    ];
    push(
        "structural-bijective",
        structural.iter().all(|c| bijective(world, c)),
    );

    for (name, p1, p2) in naturality_squares() {
        push(name, paths_agree(inst, sig, &p1, &p2));
    }

    let fixed = [
        diagrams::pentagon(&u, &t, &s, &r),
        diagrams::triangle(&s, &r, z("b")),
        diagrams::hexagon(&r, &E::gen("r2"), &x),
        diagrams::sym_involution(&r, &x),
        diagrams::add_triangle(&r, &x, z("a"), z("b")),
        diagrams::condition_i(&s, &E::gen("s2"), &r, &E::gen("r2")),
    ];
    for d in fixed {
        push(
            &format!("coherence {}", d.name),
            paths_agree(inst, sig, &d.path1, &d.path2),
        );
    }
    for _ in 0..2 {
        let d = random_coherence_diagram(rng, sig, 1);
        push(
            &format!("coherence {}", d.name),
            paths_agree(inst, sig, &d.path1, &d.path2),
        );
    }

    let e = hom(rng, sig, "a", "c", 3);
    let strict = canonical_iso(&e, sig)
        .ok()
        .and_then(|c| inst.eval_two_cell(&c, sig).ok());
    let expected = normalize(&e, sig).ok().and_then(|nf| {
        Some((
            inst.eval_one_cell(&e, sig).ok()?,
            inst.eval_one_cell(&embed(&nf), sig).ok()?,
        ))
    });
    push(
        "strictification-bijection",
        matches!((strict, expected), (Some(m), Some((src, tgt))) if m.is_bijective() && *m.source() == src && *m.target() == tgt),
    );
    out
}

fn naturals_sample_checks(
    rng: &mut impl Rng,
    max_value: u64,
    max_depth: usize,
) -> Vec<(String, bool)> {
    let sig = SmcSignature::standard();
    let mut inst = SemiringInstance::<BigUint>::new();
    for g in sig.gen1s() {
        inst.assign(g.name.as_str(), BigUint::from(rng.gen_range(0..=max_value)));
    }
    let mut out: Vec<(String, bool)> = Vec::new();
    let e = random_expr(rng, &sig, max_depth);
    let direct = inst.eval_one_cell(&e, &sig);
    let strict = normalize(&e, &sig).and_then(|nf| inst.eval_one_cell(&embed(&nf), &sig));
    out.push((
        "strictification".into(),
        matches!((direct, strict), (Ok(a), Ok(b)) if a == b),
    ));
    out.push((
        "witness-degenerate".into(),
        canonical_iso(&e, &sig)
            .and_then(|c| inst.eval_two_cell(&c, &sig))
            .is_ok(),
    ));

    let [x, y, w]: [BigUint; 3] =
        std::array::from_fn(|_| BigUint::from(rng.gen_range(0..=max_value)));
    let laws = [
        x.add(&y).add(&w) == x.add(&y.add(&w)),
        x.add(&y) == y.add(&x),
        x.add(&BigUint::zero()) == x,
        x.mul(&y).mul(&w) == x.mul(&y.mul(&w)),
        x.mul(&BigUint::one()) == x && BigUint::one().mul(&x) == x,
        x.mul(&y.add(&w)) == x.mul(&y).add(&x.mul(&w)),
        x.add(&y).mul(&w) == x.mul(&w).add(&y.mul(&w)),
        x.mul(&BigUint::zero()).is_zero() && BigUint::zero().mul(&x).is_zero(),
    ];
    out.push(("semiring-laws".into(), laws.iter().all(|&b| b)));

    let (a, b, c) = (z("a"), z("b"), z("c"));
    let mut h = |s, t| random_expr_in(rng, &sig, s, t, 1);
    let d = diagrams::condition_i(&h(b, c), &h(b, c), &h(a, b), &h(a, b));
    let cells_degenerate = d
        .path1
        .iter()
        .chain(&d.path2)
        .all(|c| inst.eval_two_cell(c, &sig).is_ok());
    out.push(("structural-degenerate".into(), cells_degenerate));
    out
}

pub(crate) fn instance_sample(
    kind: InstanceKind,
    seed: u64,
    index: u64,
    order: PairOrder,
) -> Vec<(String, bool)> {
    let mut rng = sample_rng(seed, index);
    match kind {
        InstanceKind::Span { max_set } => {
            let world = span_world(&mut rng, max_set, order);
            span_sample_checks(&world, &mut rng)
        }
        InstanceKind::Naturals {
            max_value,
            max_depth,
        } => naturals_sample_checks(&mut rng, max_value, max_depth),
    }
}

pub(crate) fn instance_tag(kind: InstanceKind) -> String {
    match kind {
        InstanceKind::Span { max_set } => format!("span-sample | {max_set}"),
        InstanceKind::Naturals {
            max_value,
            max_depth,
        } => format!("naturals-sample | {max_value} | {max_depth}"),
    }
}

/// Seeded naturality and coherence checks in a model; each sample draws a
/// fresh random model (for spans) or assignment (for naturals).
pub fn instance_axiom_suite(kind: InstanceKind, samples: u64, seed: u64) -> SuiteReport {
    instance_axiom_suite_with(kind, samples, seed, PairOrder::SourceMajor)
}

/// [`instance_axiom_suite`] with a chosen pullback pair order (for
/// mutation tests; ignored by the naturals model).
pub fn instance_axiom_suite_with(
    kind: InstanceKind,
    samples: u64,
    seed: u64,
    order: PairOrder,
) -> SuiteReport {
    let name = match kind {
        InstanceKind::Span { .. } => "instance-span",
        InstanceKind::Naturals { .. } => "instance-naturals",
    };
    let mut rec = Recorder::new(name, Some(seed));
    let tag = instance_tag(kind);
    for i in 0..samples {
        for (check, ok) in instance_sample(kind, seed, i, order) {
            rec.record(
                ok,
                || format!("sample {i}: {check}"),
                || format!("{tag} | {seed} | {i} | {check}"),
            );
        }
    }
    rec.finish()
}

type Position = Vec<bool>;

/// Constructor cells applicable at the root of `e`, with their targets.
fn local_steps(e: &E, sig: &SmcSignature) -> Vec<(C, E)> {
    let mut out = Vec::new();
    match e {
        E::Sum(x, y) => {
            out.push((C::Sym((**x).clone(), (**y).clone()), plus(y, x)));
            if let E::Sum(p, q) = &**x {
                out.push((
                    C::inv(C::AddAssoc((**p).clone(), (**q).clone(), (**y).clone())),
                    plus(p, &plus(q, y)),
                ));
            }
            if let E::Sum(p, q) = &**y {
                out.push((
                    C::AddAssoc((**x).clone(), (**p).clone(), (**q).clone()),
                    plus(&plus(x, p), q),
                ));
            }
            if let E::ZeroUnit(..) = &**x {
                out.push((C::AddUnitL((**y).clone()), (**y).clone()));
            }
            if let E::ZeroUnit(..) = &**y {
                out.push((C::AddUnitR((**x).clone()), (**x).clone()));
            }
        }
        E::HComp(o, i) => {
            if let E::Sum(g, h) = &**i {
                out.push((
                    C::DistL((**o).clone(), (**g).clone(), (**h).clone()),
                    plus(&hc(o, g), &hc(o, h)),
                ));
            }
            if let E::Sum(f, g) = &**o {
                out.push((
                    C::DistR((**f).clone(), (**g).clone(), (**i).clone()),
                    plus(&hc(f, i), &hc(g, i)),
                ));
            }
            if let E::HComp(g, h) = &**i {
                out.push((
                    C::AssocH((**o).clone(), (**g).clone(), (**h).clone()),
                    hc(&hc(o, g), h),
                ));
            }
            if let E::HComp(f, g) = &**o {
                out.push((
                    C::inv(C::AssocH((**f).clone(), (**g).clone(), (**i).clone())),
                    hc(f, &hc(g, i)),
                ));
            }
            if let E::IdUnit(_) = &**o {
                out.push((C::LUnit((**i).clone()), (**i).clone()));
            }
            if let E::IdUnit(_) = &**i {
                out.push((C::RUnit((**o).clone()), (**o).clone()));
            }
            if let (E::ZeroUnit(_, c), Ok((a, _))) = (&**o, i.endpoints(sig)) {
                out.push((C::NullL((**i).clone(), *c), E::ZeroUnit(a, *c)));
            }
            if let (E::ZeroUnit(a, _), Ok((_, c))) = (&**i, o.endpoints(sig)) {
                out.push((C::NullR((**o).clone(), *a), E::ZeroUnit(*a, c)));
            }
        }
        _ => {}
    }
    out
}

/// Applies a local cell at `pos` inside `e`, whiskering with identities.
fn whisker(e: &E, pos: &[bool], local: &C, target: &E) -> Option<(C, E)> {
    let Some((&first, rest)) = pos.split_first() else {
        return Some((local.clone(), target.clone()));
    };
    match e {
        E::HComp(o, i) if !first => {
            let (c, o2) = whisker(o, rest, local, target)?;
            Some((C::hcomp_cells(c, id(i)), hc(&o2, i)))
        }
        E::HComp(o, i) => {
            let (c, i2) = whisker(i, rest, local, target)?;
            Some((C::hcomp_cells(id(o), c), hc(o, &i2)))
        }
        E::Sum(x, y) if !first => {
            let (c, x2) = whisker(x, rest, local, target)?;
            Some((C::sum_cells(c, id(y)), plus(&x2, y)))
        }
        E::Sum(x, y) => {
            let (c, y2) = whisker(y, rest, local, target)?;
            Some((C::sum_cells(id(x), c), plus(x, &y2)))
        }
        _ => None,
    }
}

/// Every single rewriting step out of `e`: position, local cell, local
/// target.
fn all_steps(e: &E, sig: &SmcSignature) -> Vec<(Position, C, E)> {
    let mut out: Vec<(Position, C, E)> = local_steps(e, sig)
        .into_iter()
        .map(|(c, t)| (Vec::new(), c, t))
        .collect();
    let children: Vec<(bool, &E)> = match e {
        E::HComp(a, b) | E::Sum(a, b) => vec![(false, &**a), (true, &**b)],
        _ => Vec::new(),
    };
    for (side, child) in children {
        for (mut pos, c, t) in all_steps(child, sig) {
            pos.insert(0, side);
            out.push((pos, c, t));
        }
    }
    out
}

fn disjoint(p: &[bool], q: &[bool]) -> bool {
    p.iter().zip(q).any(|(a, b)| a != b)
}

/// A random structural diagram of one of three shapes: a coherence diagram
/// on random expressions, a path of order-preserving steps closed off by
/// canonical witnesses, or the interchange square of two steps at disjoint
/// positions.
fn random_structural_diagram<R: Rng>(rng: &mut R, sig: &SmcSignature) -> Option<(Vec<C>, Vec<C>)> {
    match rng.gen_range(0..3) {
        0 => {
            let d = random_coherence_diagram(rng, sig, 1);
            Some((d.path1, d.path2))
        }
        1 => {
            let e = hom(rng, sig, "a", "c", 3);
            let mut cur = e.clone();
            let mut path = Vec::new();
            for _ in 0..rng.gen_range(1..=4) {
                let steps: Vec<(C, E)> = all_steps(&cur, sig)
                    .into_iter()
                    .filter_map(|(pos, c, t)| whisker(&cur, &pos, &c, &t))
                    .filter(|(c, _)| matches!(crate::twocell::perm_of(c, sig), Ok(p) if p.is_identity()))
                    .collect();
                let (c, next) = steps.choose(rng)?.clone();
                path.push(c);
                cur = next;
            }
            path.push(canonical_iso(&cur, sig).ok()?);
            Some((path, vec![canonical_iso(&e, sig).ok()?]))
        }
        _ => {
            let e = hom(rng, sig, "a", "c", 3);
            let steps = all_steps(&e, sig);
            let pairs: Vec<(usize, usize)> = (0..steps.len())
                .flat_map(|i| (0..steps.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| disjoint(&steps[i].0, &steps[j].0))
                .collect();
            let &(i, j) = pairs.choose(rng)?;
            let (p, c1, t1) = &steps[i];
            let (q, c2, t2) = &steps[j];
            let (w1, e1) = whisker(&e, p, c1, t1)?;
            let (w2, e2) = whisker(&e, q, c2, t2)?;
            let (w2_after, _) = whisker(&e1, q, c2, t2)?;
            let (w1_after, _) = whisker(&e2, p, c1, t1)?;
            Some((vec![w1, w2_after], vec![w2, w1_after]))
        }
    }
}

pub(crate) fn transport_sample(seed: u64, index: u64, max_set: usize) -> bool {
    let mut rng = sample_rng(seed, index);
    let world = span_world(&mut rng, max_set, PairOrder::SourceMajor);
    for _ in 0..64 {
        let Some((p1, p2)) = random_structural_diagram(&mut rng, &world.sig) else {
            continue;
        };
        if matches!(check_diagram(&p1, &p2, &world.sig), Ok(r) if r.commutes) {
            return paths_agree(&world.instance, &world.sig, &p1, &p2);
        }
    }
    false
}

/// Soundness of the free semantics against spans: `count` random
/// structural diagrams that commute under the position-map semantics are
/// evaluated along both paths in a random span model and compared.
pub fn diagram_transport_suite(count: u64, max_set: usize, seed: u64) -> SuiteReport {
    let mut rec = Recorder::new("transport", Some(seed));
    for i in 0..count {
        let ok = transport_sample(seed, i, max_set);
        rec.record(
            ok,
            || format!("diagram {i}"),
            || format!("transport | {max_set} | {seed} | {i}"),
        );
    }
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worlds_are_deterministic() {
        let a = span_world(&mut sample_rng(3, 7), 4, PairOrder::SourceMajor);
        let b = span_world(&mut sample_rng(3, 7), 4, PairOrder::SourceMajor);
        for (g, _, _) in GENS {
            let g = crate::symbol::Symbol::new(g);
            assert_eq!(a.instance.gen1(g), b.instance.gen1(g));
        }
    }

    #[test]
    fn span_suite_passes_small() {
        let r = instance_axiom_suite(InstanceKind::Span { max_set: 3 }, 40, 1);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn span_suite_catches_pair_order_mutant() {
        let r = instance_axiom_suite_with(
            InstanceKind::Span { max_set: 4 },
            200,
            1,
            PairOrder::TargetMajor,
        );
        assert!(r.failures.iter().any(|f| f.case.contains("contract")));
    }

    #[test]
    fn naturals_suite_passes_small() {
        let r = instance_axiom_suite(
            InstanceKind::Naturals {
                max_value: 9,
                max_depth: 5,
            },
            200,
            2,
        );
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn transport_small() {
        let r = diagram_transport_suite(30, 3, 5);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn interchange_steps_exist() {
        let sig = world_signature();
        let e = plus(
            &hc(&E::gen("s"), &plus(&E::gen("r"), &E::gen("r2"))),
            &E::zero("a", "c"),
        );
        let steps = all_steps(&e, &sig);
        assert!(steps
            .iter()
            .any(|(p, c, _)| p.is_empty() && matches!(c, C::Sym(..))));
        assert!(steps
            .iter()
            .any(|(p, c, _)| p == &[false] && matches!(c, C::DistL(..))));
    }
}
