use super::instance_suites::{instance_sample, transport_sample, InstanceKind};
use super::suites::{
    check_expr_round_trip, check_law, check_left_distributivity, check_nf_round_trip, check_oracle,
    check_witness,
};
use crate::error::{Error, Result};
use crate::instances::PairOrder;
use crate::normalize::{Monomial, NormalForm};
use crate::signature::{SmcSignature, ZeroCellId};
use crate::syntax::{parse_one_cell, parse_program, Statement};
use crate::twocell::{check_diagram_with, Semantics};

/// Which deliberately broken semantics to replay under.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Mutation {
    pub semantics: Semantics,
    pub pair_order: PairOrder,
}

fn bad(text: &str) -> Error {
    Error::Reproducer(text.to_string())
}

/// Reads the canonical normal-form text back: `0@a->b`, or monomials such
/// as `g.f` and `1@a` joined by ` + `.
pub fn parse_normal_form(text: &str, sig: &SmcSignature) -> Result<NormalForm> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("0@") {
        let (a, b) = rest.split_once("->").ok_or_else(|| bad(text))?;
        let (a, b) = (ZeroCellId::new(a.trim()), ZeroCellId::new(b.trim()));
        if !sig.has_zero_cell(a) || !sig.has_zero_cell(b) {
            return Err(bad(text));
        }
        return Ok(NormalForm::empty(a, b));
    }
    let mut monomials = Vec::new();
    for term in text.split(" + ") {
        let term = term.trim();
        let m = match term.strip_prefix("1@") {
            Some(a) if sig.has_zero_cell(ZeroCellId::new(a)) => Monomial::unit(ZeroCellId::new(a)),
            Some(_) => return Err(bad(text)),
            None => Monomial::from_gens(sig, &term.split('.').collect::<Vec<_>>())?,
        };
        monomials.push(m);
    }
    let first = monomials.first().ok_or_else(|| bad(text))?;
    NormalForm::new(first.src(), first.tgt(), monomials)
}

fn number<T: std::str::FromStr>(s: &str, whole: &str) -> Result<T> {
    s.trim().parse().map_err(|_| bad(whole))
}

/// Re-runs the check a reproducer names and reports whether it passes, so a
/// reported failure replays to `Ok(false)`.
pub fn replay(sig: &SmcSignature, reproducer: &str, mutation: Mutation) -> Result<bool> {
    let r = reproducer.trim();
    if r.starts_with("check ") {
        let program =
            parse_program(&format!("{r};")).map_err(|e| Error::Reproducer(e.to_string()))?;
        let [item] = program.items.as_slice() else {
            return Err(bad(r));
        };
        let Statement::Check(p1, p2) = &item.statement else {
            return Err(bad(r));
        };
        return Ok(check_diagram_with(p1, p2, sig, mutation.semantics)?.commutes);
    }
    let fields: Vec<&str> = r.split(" | ").map(str::trim).collect();
    let nf = |i: usize| parse_normal_form(fields.get(i).ok_or_else(|| bad(r))?, sig);
    let expr = |i: usize| {
        let text = fields.get(i).ok_or_else(|| bad(r))?;
        parse_one_cell(text).map_err(|e| Error::Reproducer(e.to_string()))
    };
    let head = fields[0];
    if let Some(name) = head.strip_prefix("law ") {
        let args = (1..fields.len()).map(nf).collect::<Result<Vec<_>>>()?;
        return Ok(check_law(name, &args.iter().collect::<Vec<_>>()));
    }
    match (head, fields.len()) {
        ("roundtrip-nf", 2) => Ok(check_nf_round_trip(&nf(1)?, sig)),
        ("roundtrip-expr", 2) => Ok(check_expr_round_trip(&expr(1)?, sig)),
        ("witness", 2) => Ok(check_witness(&expr(1)?, sig)),
        ("oracle", 2) => Ok(check_oracle(&expr(1)?, sig)),
        ("left-dist", 4) => Ok(check_left_distributivity(&nf(1)?, &nf(2)?, &nf(3)?, sig).0),
        ("span-sample", 5) => {
            let kind = InstanceKind::Span {
                max_set: number(fields[1], r)?,
            };
            sample_passes(
                kind,
                number(fields[2], r)?,
                number(fields[3], r)?,
                fields[4],
                mutation,
            )
        }
        ("naturals-sample", 6) => {
            let kind = InstanceKind::Naturals {
                max_value: number(fields[1], r)?,
                max_depth: number(fields[2], r)?,
            };
            sample_passes(
                kind,
                number(fields[3], r)?,
                number(fields[4], r)?,
                fields[5],
                mutation,
            )
        }
        ("transport", 4) => Ok(transport_sample(
            number(fields[2], r)?,
            number(fields[3], r)?,
            number(fields[1], r)?,
        )),
        _ => Err(bad(r)),
    }
}

fn sample_passes(
    kind: InstanceKind,
    seed: u64,
    index: u64,
    check: &str,
    mutation: Mutation,
) -> Result<bool> {
    instance_sample(kind, seed, index, mutation.pair_order)
        .into_iter()
        .find(|(name, _)| name == check)
        .map(|(_, ok)| ok)
        .ok_or_else(|| Error::Reproducer(format!("sample has no check named `{check}`")))
}
