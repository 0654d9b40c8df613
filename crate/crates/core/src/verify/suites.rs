use std::collections::HashMap;

use super::diagrams::{self, Diagram};
use super::enumerate::{for_each_expr, normal_forms_in, ExprTable};
use super::oracle::oracle_normal_form;
use super::random::{random_expr, sample_rng};
use super::{Recorder, SuiteReport};
use crate::expr::{expr_equal, OneCellExpr};
use crate::normalize::{canonical_iso, embed, normalize, strict_compose, strict_sum, NormalForm};
use crate::signature::{SmcSignature, ZeroCellId};
use crate::twocell::{boundary, check_diagram_with, perm_of, Semantics, TwoCellExpr};

type Hom = (ZeroCellId, ZeroCellId);

fn zero_cells(sig: &SmcSignature) -> Vec<ZeroCellId> {
    sig.zero_cells().collect()
}

/// Checks the coherence conditions (i)–(v) of a PC-category on every
/// instantiation by expressions of depth at most `depth`.
pub fn pc_axiom_suite(sig: &SmcSignature, depth: usize) -> SuiteReport {
    pc_axiom_suite_with(sig, depth, Semantics::Standard)
}

/// [`pc_axiom_suite`] under a chosen 2-cell semantics (for mutation tests).
pub fn pc_axiom_suite_with(sig: &SmcSignature, depth: usize, semantics: Semantics) -> SuiteReport {
    let mut rec = Recorder::new("pc", None);
    let table = ExprTable::build(sig, depth);
    let zs = zero_cells(sig);
    let homs: HashMap<Hom, Vec<OneCellExpr>> = zs
        .iter()
        .flat_map(|&a| zs.iter().map(move |&b| (a, b)))
        .map(|(a, b)| ((a, b), table.hom(a, b, depth)))
        .collect();
    let h = |a: ZeroCellId, b: ZeroCellId| &homs[&(a, b)];
    let mut run = |d: Diagram| {
        let ok = check_diagram_with(&d.path1, &d.path2, sig, semantics)
            .map(|r| r.commutes)
            .unwrap_or(false);
        rec.record(ok, || format!("condition {}", d.name), || d.to_check());
    };
    for &a in &zs {
        for &b in &zs {
            for &c in &zs {
                for f1 in h(b, c) {
                    for f2 in h(b, c) {
                        for g1 in h(a, b) {
                            for g2 in h(a, b) {
                                run(diagrams::condition_i(f1, f2, g1, g2));
                            }
                        }
                    }
                }
                for f in h(a, b) {
                    for g in h(a, b) {
                        run(diagrams::condition_ii(f, g, b, c, a));
                    }
                }
                for &d in &zs {
                    for f in h(c, d) {
                        for g in h(b, c) {
                            for h1 in h(a, b) {
                                for h2 in h(a, b) {
                                    run(diagrams::condition_iii(f, g, h1, h2));
                                }
                            }
                            for g2 in h(b, c) {
                                for k in h(a, b) {
                                    run(diagrams::condition_iv(f, g, g2, k));
                                }
                            }
                        }
                    }
                }
            }
            for f in h(a, b) {
                for g in h(a, b) {
                    run(diagrams::condition_v(f, g, b));
                }
            }
        }
    }
    rec.finish()
}

fn nf_universe(
    sig: &SmcSignature,
    max_monomials: usize,
    max_len: usize,
) -> HashMap<Hom, Vec<NormalForm>> {
    let zs = zero_cells(sig);
    let mut out = HashMap::new();
    for &a in &zs {
        for &b in &zs {
            out.insert((a, b), normal_forms_in(sig, a, b, max_monomials, max_len));
        }
    }
    out
}

fn law(name: &str, args: &[&NormalForm]) -> String {
    let mut s = format!("law {name}");
    for a in args {
        s.push_str(" | ");
        s.push_str(&a.to_text());
    }
    s
}

pub(crate) fn check_law(name: &str, args: &[&NormalForm]) -> bool {
    let c = strict_compose;
    let s = strict_sum;
    let eq = |l: crate::Result<NormalForm>, r: crate::Result<NormalForm>| matches!((l, r), (Ok(l), Ok(r)) if l == r);
    match (name, args) {
        ("compose-assoc", [x, y, z]) => eq(
            c(x, y).and_then(|xy| c(&xy, z)),
            c(y, z).and_then(|yz| c(x, &yz)),
        ),
        ("compose-unit-left", [x]) => eq(c(&NormalForm::unit(x.tgt()), x), Ok((*x).clone())),
        ("compose-unit-right", [x]) => eq(c(x, &NormalForm::unit(x.src())), Ok((*x).clone())),
        ("sum-assoc", [x, y, z]) => eq(
            s(x, y).and_then(|xy| s(&xy, z)),
            s(y, z).and_then(|yz| s(x, &yz)),
        ),
        ("sum-unit-left", [x]) => eq(s(&NormalForm::empty(x.src(), x.tgt()), x), Ok((*x).clone())),
        ("sum-unit-right", [x]) => eq(s(x, &NormalForm::empty(x.src(), x.tgt())), Ok((*x).clone())),
        ("right-dist", [x, y, z]) => eq(
            s(x, y).and_then(|xy| c(&xy, z)),
            c(x, z).and_then(|xz| s(&xz, &c(y, z)?)),
        ),
        ("null-left", [x, zero]) => eq(c(zero, x), Ok(NormalForm::empty(x.src(), zero.tgt()))),
        ("null-right", [x, zero]) => eq(c(x, zero), Ok(NormalForm::empty(zero.src(), x.tgt()))),
        _ => false,
    }
}

/// The laws of the strict composition and sum on all normal forms with at
/// most `max_monomials` summands of length at most `max_len`, as exact
/// equalities of monomial sequences.
pub fn strict_law_suite(sig: &SmcSignature, max_monomials: usize, max_len: usize) -> SuiteReport {
    let mut rec = Recorder::new("strict-laws", None);
    let u = nf_universe(sig, max_monomials, max_len);
    let zs = zero_cells(sig);
    let run = |rec: &mut Recorder, name: &str, args: &[&NormalForm]| {
        let ok = check_law(name, args);
        rec.record(ok, || law(name, args), || law(name, args));
    };
    for &a in &zs {
        for &b in &zs {
            let ab = &u[&(a, b)];
            for x in ab {
                run(&mut rec, "compose-unit-left", &[x]);
                run(&mut rec, "compose-unit-right", &[x]);
                run(&mut rec, "sum-unit-left", &[x]);
                run(&mut rec, "sum-unit-right", &[x]);
                for &c in &zs {
                    run(&mut rec, "null-left", &[x, &NormalForm::empty(b, c)]);
                    run(&mut rec, "null-right", &[x, &NormalForm::empty(c, a)]);
                }
            }
            let sums: Vec<Vec<NormalForm>> = ab
                .iter()
                .map(|y| {
                    ab.iter()
                        .map(|z| strict_sum(y, z).expect("parallel"))
                        .collect()
                })
                .collect();
            for x in ab {
                for (y, yz_row) in ab.iter().zip(&sums) {
                    let xy = strict_sum(x, y).expect("parallel");
                    for (z, yz) in ab.iter().zip(yz_row) {
                        let ok = matches!(
                            (strict_sum(&xy, z), strict_sum(x, yz)),
                            (Ok(l), Ok(r)) if l == r
                        );
                        let args = [x, y, z];
                        rec.record(ok, || law("sum-assoc", &args), || law("sum-assoc", &args));
                    }
                }
            }
            for &c in &zs {
                let bc = &u[&(b, c)];
                for x in bc {
                    for y in bc {
                        for z in ab {
                            run(&mut rec, "right-dist", &[x, y, z]);
                        }
                    }
                }
                for &d in &zs {
                    for x in &u[&(c, d)] {
                        for y in bc {
                            for z in ab {
                                run(&mut rec, "compose-assoc", &[x, y, z]);
                            }
                        }
                    }
                }
            }
        }
    }
    rec.finish()
}

/// `normalize(embed(nf)) = nf` on the normal-form universe and
/// `normalize(embed(normalize(e))) = normalize(e)` on all expressions of
/// depth at most `depth`. The first family doubles as the witness that
/// every normal form is reached by some expression.
pub fn round_trip_suite(
    sig: &SmcSignature,
    depth: usize,
    max_monomials: usize,
    max_len: usize,
) -> SuiteReport {
    let mut rec = Recorder::new("round-trip", None);
    for nfs in nf_universe(sig, max_monomials, max_len).values() {
        for nf in nfs {
            let ok = check_nf_round_trip(nf, sig);
            rec.record(
                ok,
                || format!("normalize(embed({nf}))"),
                || format!("roundtrip-nf | {}", nf.to_text()),
            );
        }
    }
    for_each_expr(sig, depth, |e| {
        let ok = check_expr_round_trip(e, sig);
        rec.record(
            ok,
            || format!("normalize(embed(normalize({e})))"),
            || format!("roundtrip-expr | {e}"),
        );
    });
    rec.finish()
}

pub(crate) fn check_nf_round_trip(nf: &NormalForm, sig: &SmcSignature) -> bool {
    matches!(normalize(&embed(nf), sig), Ok(back) if back == *nf)
}

pub(crate) fn check_expr_round_trip(e: &OneCellExpr, sig: &SmcSignature) -> bool {
    match normalize(e, sig) {
        Ok(nf) => matches!(normalize(&embed(&nf), sig), Ok(back) if back == nf),
        Err(_) => false,
    }
}

/// For every expression of depth at most `depth`, the canonical witness
/// runs from `e` to `embed(normalize(e))`, is structural, and has identity
/// monomial bijection.
pub fn witness_suite(sig: &SmcSignature, depth: usize) -> SuiteReport {
    let mut rec = Recorder::new("witness", None);
    for_each_expr(sig, depth, |e| {
        let ok = check_witness(e, sig);
        rec.record(
            ok,
            || format!("canonical_iso({e})"),
            || format!("witness | {e}"),
        );
    });
    rec.finish()
}

pub(crate) fn check_witness(e: &OneCellExpr, sig: &SmcSignature) -> bool {
    let (Ok(c), Ok(nf)) = (canonical_iso(e, sig), normalize(e, sig)) else {
        return false;
    };
    let Ok((src, tgt)) = boundary(&c, sig) else {
        return false;
    };
    expr_equal(&src, e)
        && expr_equal(&tgt, &embed(&nf))
        && c.is_structural()
        && matches!(perm_of(&c, sig), Ok(p) if p.is_identity())
}

/// The normalizer against the rewriting oracle on every expression of
/// depth at most `depth`.
pub fn oracle_suite(sig: &SmcSignature, depth: usize) -> SuiteReport {
    let mut rec = Recorder::new("oracle", None);
    for_each_expr(sig, depth, |e| {
        let ok = check_oracle(e, sig);
        rec.record(ok, || format!("oracle({e})"), || format!("oracle | {e}"));
    });
    rec.finish()
}

/// The normalizer against the rewriting oracle on seeded random
/// expressions.
pub fn random_oracle_suite(
    sig: &SmcSignature,
    samples: u64,
    max_depth: usize,
    seed: u64,
) -> SuiteReport {
    let mut rec = Recorder::new("oracle-random", Some(seed));
    for i in 0..samples {
        let e = random_expr(&mut sample_rng(seed, i), sig, max_depth);
        let ok = check_oracle(&e, sig);
        rec.record(
            ok,
            || format!("sample {i}: oracle({e})"),
            || format!("oracle | {e}"),
        );
    }
    rec.finish()
}

pub(crate) fn check_oracle(e: &OneCellExpr, sig: &SmcSignature) -> bool {
    match (normalize(e, sig), oracle_normal_form(e, sig)) {
        (Ok(nf), Some(text)) => nf.to_text() == text,
        _ => false,
    }
}

/// Left distributivity `x∘(y⊕z)` against `x∘y ⊕ x∘z` over the distinct
/// normal forms of expressions of depth at most `depth`.
///
/// Checked exactly: the monomial multisets agree; the distributivity
/// bijection is non-trivial iff `x` has at least two summands and `y`, `z`
/// are both non-empty; the sequences differ only under that condition, and
/// always differ under it when the summands of `x∘y ⊕ x∘z` are pairwise
/// distinct. The second component counts triples meeting the condition
/// whose sequences nonetheless coincide because of repeated monomials.
pub fn left_distributivity_suite(sig: &SmcSignature, depth: usize) -> (SuiteReport, u64) {
    let mut rec = Recorder::new("left-distributivity", None);
    let table = ExprTable::build(sig, depth);
    let zs = zero_cells(sig);
    let mut nfs: HashMap<Hom, Vec<NormalForm>> = HashMap::new();
    for &a in &zs {
        for &b in &zs {
            let mut distinct: Vec<NormalForm> = Vec::new();
            for e in table.hom(a, b, depth) {
                let nf = normalize(&e, sig).expect("enumerated expressions are typed");
                if !distinct.contains(&nf) {
                    distinct.push(nf);
                }
            }
            nfs.insert((a, b), distinct);
        }
    }
    let mut coincidences = 0;
    for &a in &zs {
        for &b in &zs {
            for &c in &zs {
                for x in &nfs[&(b, c)] {
                    for y in &nfs[&(a, b)] {
                        for z in &nfs[&(a, b)] {
                            let (ok, coincident) = check_left_distributivity(x, y, z, sig);
                            coincidences += coincident as u64;
                            rec.record(
                                ok,
                                || format!("left distributivity at x={x}, y={y}, z={z}"),
                                || {
                                    format!(
                                        "left-dist | {} | {} | {}",
                                        x.to_text(),
                                        y.to_text(),
                                        z.to_text()
                                    )
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    (rec.finish(), coincidences)
}

pub(crate) fn check_left_distributivity(
    x: &NormalForm,
    y: &NormalForm,
    z: &NormalForm,
    sig: &SmcSignature,
) -> (bool, bool) {
    let lhs = strict_sum(y, z).and_then(|yz| strict_compose(x, &yz));
    let rhs = strict_compose(x, y).and_then(|xy| strict_sum(&xy, &strict_compose(x, z)?));
    let (Ok(lhs), Ok(rhs)) = (lhs, rhs) else {
        return (false, false);
    };
    let key = |nf: &NormalForm| {
        let mut v: Vec<String> = nf.monomials().iter().map(|m| m.to_string()).collect();
        v.sort();
        v
    };
    let condition = x.len() >= 2 && !y.is_empty() && !z.is_empty();
    let delta = TwoCellExpr::DistL(embed(x), embed(y), embed(z));
    let nontrivial = match perm_of(&delta, sig) {
        Ok(p) => !p.is_identity(),
        Err(_) => return (false, false),
    };
    let differ = lhs != rhs;
    let distinct = {
        let k = key(&rhs);
        k.windows(2).all(|w| w[0] != w[1])
    };
    let ok = key(&lhs) == key(&rhs)
        && nontrivial == condition
        && (!differ || condition)
        && (!(condition && distinct) || differ);
    (ok, condition && !differ)
}

/// The strict laws, round trips with the witness of essential
/// surjectivity, canonical witnesses, and the oracle comparison, on the
/// default normal-form universe (at most 4 summands of length at most 3)
/// and expressions of depth at most `depth`.
pub fn strictification_suite(sig: &SmcSignature, depth: usize) -> SuiteReport {
    SuiteReport::merge(
        "strict",
        vec![
            strict_law_suite(sig, 4, 3),
            round_trip_suite(sig, depth, 4, 3),
            witness_suite(sig, depth),
            oracle_suite(sig, depth),
        ],
    )
}
