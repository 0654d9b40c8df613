//! The command driver behind the `smcstrict` binary: name resolution,
//! static checking, and execution of a parsed [`Program`].
//!
//! Exit status is 0 when every command succeeds, 1 when a check does not
//! commute, a suite reports failures, or a command fails at run time, and 2
//! when the program does not parse, names something undeclared, or is
//! ill-typed.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint, Sign};
use serde_json::json;

use crate::error::Error;
use crate::expr::OneCellExpr;
use crate::instances::{FinSetObj, Model, SemiringInstance, SpanCell, SpanInstance};
use crate::normalize::{canonical_iso, embed, normalize, NormalForm};
use crate::signature::{SmcSignature, ZeroCellId};
use crate::symbol::Symbol;
use crate::syntax::{
    parse_program, Carrier, InstanceDecl, InstanceRef, Pos, Program, Statement, SuiteKind,
};
use crate::twocell::{boundary, check_diagram, perm_of, TwoCellExpr};
use crate::verify::{
    diagram_transport_suite, instance_axiom_suite, pc_axiom_suite, strictification_suite,
    ExprTable, InstanceKind, SuiteReport,
};

/// Depth used by `suite pc` when neither the command nor the caller sets one.
pub const DEFAULT_PC_DEPTH: usize = 1;
/// Depth used by `suite strict` and `strictify-report` by default.
pub const DEFAULT_DEPTH: usize = 2;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub json: bool,
    /// Overrides the default depth of every suite that does not name one.
    pub depth: Option<usize>,
    /// Overrides the default seed of every suite that does not name one.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct ResolveError {
    pub pos: Pos,
    pub message: String,
}

fn resolve_err(pos: Pos, message: impl Into<String>) -> ResolveError {
    ResolveError {
        pos,
        message: message.into(),
    }
}

#[derive(Clone, Debug)]
pub enum ResolvedInstance {
    Naturals(SemiringInstance<BigUint>),
    Integers(SemiringInstance<BigInt>),
    Booleans(SemiringInstance<bool>),
    Span(SpanInstance),
}

impl ResolvedInstance {
    fn eval(&self, e: &OneCellExpr, sig: &SmcSignature) -> crate::Result<String> {
        Ok(match self {
            ResolvedInstance::Naturals(m) => m.eval_one_cell(e, sig)?.to_string(),
            ResolvedInstance::Integers(m) => m.eval_one_cell(e, sig)?.to_string(),
            ResolvedInstance::Booleans(m) => (m.eval_one_cell(e, sig)? as u8).to_string(),
            ResolvedInstance::Span(m) => m.eval_one_cell(e, sig)?.to_string(),
        })
    }
}

/// A program whose names all resolve against its signature.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub sig: SmcSignature,
    pub instances: HashMap<Symbol, ResolvedInstance>,
    pub commands: Vec<(Pos, Statement)>,
}

/// Builds the signature from the declarations (the standard signature when
/// there are none), resolves instances, and checks every command
/// statically.
pub fn resolve(program: &Program) -> Result<Resolved, ResolveError> {
    let declares = program.items.iter().any(|i| i.statement.is_declaration());
    let mut sig = if declares {
        SmcSignature::new()
    } else {
        SmcSignature::standard()
    };
    let mut instances = HashMap::new();
    let mut commands = Vec::new();
    for item in &program.items {
        let pos = item.pos;
        match &item.statement {
            Statement::ZeroCells(names) => {
                for n in names {
                    sig.add_zero_cell(n.as_str())
                        .map_err(|e| resolve_err(pos, e.to_string()))?;
                }
            }
            Statement::Gen1 { name, src, tgt } => {
                for z in [src, tgt] {
                    if !sig.has_zero_cell(ZeroCellId(*z)) {
                        return Err(resolve_err(pos, format!("unknown 0-cell `{z}`")));
                    }
                }
                sig.add_gen1(name.as_str(), src.as_str(), tgt.as_str())
                    .map_err(|e| resolve_err(pos, e.to_string()))?;
            }
            Statement::Gen2 { name, src, tgt } => {
                check_names(src, &sig, pos)?;
                check_names(tgt, &sig, pos)?;
                sig.add_gen2(name.as_str(), src.clone(), tgt.clone())
                    .map_err(|e| resolve_err(pos, e.to_string()))?;
            }
            Statement::Instance { name, decl } => {
                let inst = build_instance(decl, &sig).map_err(|e| resolve_err(pos, e))?;
                instances.insert(*name, inst);
            }
            Statement::Normalize(e) => {
                typecheck(e, &sig, pos)?;
                commands.push((pos, item.statement.clone()));
            }
            Statement::Check(p1, p2) => {
                for c in p1.iter().chain(p2) {
                    check_cell_names(c, &sig, pos)?;
                    boundary(c, &sig).map_err(|e| resolve_err(pos, e.to_string()))?;
                }
                if p1.is_empty() || p2.is_empty() {
                    return Err(resolve_err(pos, "a path needs at least one cell"));
                }
                commands.push((pos, item.statement.clone()));
            }
            Statement::Eval { expr, instance } => {
                typecheck(expr, &sig, pos)?;
                match instance {
                    InstanceRef::Named(n) if !instances.contains_key(n) => {
                        return Err(resolve_err(pos, format!("unknown instance `{n}`")));
                    }
                    InstanceRef::Inline(decl) => {
                        build_instance(decl, &sig).map_err(|e| resolve_err(pos, e))?;
                    }
                    InstanceRef::Named(_) => {}
                }
                commands.push((pos, item.statement.clone()));
            }
            Statement::Suite { .. } | Statement::StrictifyReport => {
                commands.push((pos, item.statement.clone()))
            }
        }
    }
    Ok(Resolved {
        sig,
        instances,
        commands,
    })
}

fn check_names(e: &OneCellExpr, sig: &SmcSignature, pos: Pos) -> Result<(), ResolveError> {
    match e {
        OneCellExpr::Gen(g) if sig.gen1(*g).is_none() => {
            Err(resolve_err(pos, format!("unknown 1-cell `{g}`")))
        }
        OneCellExpr::Gen(_) => Ok(()),
        OneCellExpr::IdUnit(a) => known_zero_cell(*a, sig, pos),
        OneCellExpr::ZeroUnit(a, b) => {
            known_zero_cell(*a, sig, pos)?;
            known_zero_cell(*b, sig, pos)
        }
        OneCellExpr::HComp(x, y) | OneCellExpr::Sum(x, y) => {
            check_names(x, sig, pos)?;
            check_names(y, sig, pos)
        }
    }
}

fn known_zero_cell(a: ZeroCellId, sig: &SmcSignature, pos: Pos) -> Result<(), ResolveError> {
    if sig.has_zero_cell(a) {
        Ok(())
    } else {
        Err(resolve_err(pos, format!("unknown 0-cell `{a}`")))
    }
}

fn typecheck(e: &OneCellExpr, sig: &SmcSignature, pos: Pos) -> Result<(), ResolveError> {
    check_names(e, sig, pos)?;
    e.endpoints(sig)
        .map(|_| ())
        .map_err(|err| resolve_err(pos, err.to_string()))
}

fn check_cell_names(c: &TwoCellExpr, sig: &SmcSignature, pos: Pos) -> Result<(), ResolveError> {
    use TwoCellExpr::*;
    match c {
        Id2(e) | LUnit(e) | RUnit(e) | AddUnitL(e) | AddUnitR(e) => check_names(e, sig, pos),
        Gen2(g) if sig.gen2(*g).is_none() => Err(resolve_err(pos, format!("unknown 2-cell `{g}`"))),
        Gen2(_) => Ok(()),
        VComp(a, b) | HComp2(a, b) | SumCells(a, b) => {
            check_cell_names(a, sig, pos)?;
            check_cell_names(b, sig, pos)
        }
        Inv(a) => check_cell_names(a, sig, pos),
        AssocH(x, y, z) | AddAssoc(x, y, z) | DistL(x, y, z) | DistR(x, y, z) => {
            for e in [x, y, z] {
                check_names(e, sig, pos)?;
            }
            Ok(())
        }
        Sym(x, y) => {
            check_names(x, sig, pos)?;
            check_names(y, sig, pos)
        }
        NullL(e, z) | NullR(e, z) => {
            check_names(e, sig, pos)?;
            known_zero_cell(*z, sig, pos)
        }
    }
}

fn build_instance(decl: &InstanceDecl, sig: &SmcSignature) -> Result<ResolvedInstance, String> {
    match decl {
        InstanceDecl::Semiring { carrier, values } => {
            for (g, _) in values {
                if sig.gen1(*g).is_none() {
                    return Err(format!("unknown 1-cell `{g}`"));
                }
            }
            Ok(match carrier {
                Carrier::Naturals => {
                    let mut m = SemiringInstance::new();
                    for (g, v) in values {
                        let n = v
                            .to_biguint()
                            .ok_or_else(|| format!("`{g}` = {v} is not a natural number"))?;
                        m.assign(g.as_str(), n);
                    }
                    ResolvedInstance::Naturals(m)
                }
                Carrier::Integers => {
                    let mut m = SemiringInstance::new();
                    for (g, v) in values {
                        m.assign(g.as_str(), v.clone());
                    }
                    ResolvedInstance::Integers(m)
                }
                Carrier::Booleans => {
                    let mut m = SemiringInstance::new();
                    for (g, v) in values {
                        let b = match (v.sign(), v.magnitude().to_u32_digits().as_slice()) {
                            (Sign::NoSign, _) => false,
                            (Sign::Plus, [1]) => true,
                            _ => return Err(format!("`{g}` = {v} is not 0 or 1")),
                        };
                        m.assign(g.as_str(), b);
                    }
                    ResolvedInstance::Booleans(m)
                }
            })
        }
        InstanceDecl::Span { sets, spans, maps } => {
            let mut inst = SpanInstance::new();
            let mut set_of = HashMap::new();
            for (z, elems) in sets {
                if !sig.has_zero_cell(ZeroCellId(*z)) {
                    return Err(format!("unknown 0-cell `{z}`"));
                }
                let names: Vec<&str> = elems.iter().map(|s| s.as_str()).collect();
                let set = FinSetObj::from_atoms(&names).map_err(|e| e.to_string())?;
                set_of.insert(*z, set.clone());
                inst.set_zero_cell(z.as_str(), set);
            }
            for (g, rows) in spans {
                let cell = sig
                    .gen1(*g)
                    .ok_or_else(|| format!("unknown 1-cell `{g}`"))?;
                let src = set_of
                    .get(&cell.src.0)
                    .ok_or_else(|| format!("no set for 0-cell `{}`", cell.src))?;
                let tgt = set_of
                    .get(&cell.tgt.0)
                    .ok_or_else(|| format!("no set for 0-cell `{}`", cell.tgt))?;
                let rows: Vec<(&str, &str, &str)> = rows
                    .iter()
                    .map(|(x, l, r)| (x.as_str(), l.as_str(), r.as_str()))
                    .collect();
                let span = SpanCell::from_table(src, tgt, &rows).map_err(|e| e.to_string())?;
                inst.set_gen1(g.as_str(), span);
            }
            for (name, map) in maps {
                if sig.gen2(*name).is_none() {
                    return Err(format!("unknown 2-cell `{name}`"));
                }
                inst.set_gen2(name.as_str(), map.clone());
            }
            inst.validate(sig).map_err(|e| e.to_string())?;
            Ok(ResolvedInstance::Span(inst))
        }
    }
}

/// Parses, resolves and runs a program.
pub fn run_source(text: &str, opts: &RunOptions) -> Output {
    let program = match parse_program(text) {
        Ok(p) => p,
        Err(e) => return failure(2, format!("parse error: {e}\n")),
    };
    match resolve(&program) {
        Ok(r) => run(&r, opts),
        Err(e) => failure(2, format!("resolve error: {e}\n")),
    }
}

fn failure(status: i32, stderr: String) -> Output {
    Output {
        status,
        stdout: String::new(),
        stderr,
    }
}

/// Runs the commands of a resolved program in order. A failing command does
/// not stop the ones after it.
pub fn run(r: &Resolved, opts: &RunOptions) -> Output {
    let mut out = Output {
        status: 0,
        stdout: String::new(),
        stderr: String::new(),
    };
    for (pos, cmd) in &r.commands {
        match run_command(r, cmd, opts, &mut out.stdout) {
            Ok(true) => {}
            Ok(false) => out.status = out.status.max(1),
            Err(e) => {
                let _ = writeln!(out.stderr, "{pos}: error: {e}");
                out.status = out.status.max(1);
            }
        }
    }
    out
}

fn run_command(
    r: &Resolved,
    cmd: &Statement,
    opts: &RunOptions,
    stdout: &mut String,
) -> crate::Result<bool> {
    let sig = &r.sig;
    match cmd {
        Statement::Normalize(e) => {
            let nf = normalize(e, sig)?;
            if opts.json {
                line(
                    stdout,
                    json!({"expr": e.to_string(), "normal_form": nf.to_text()}),
                );
            } else {
                let _ = writeln!(stdout, "{nf}");
            }
            Ok(true)
        }
        Statement::Check(p1, p2) => {
            let report = check_diagram(p1, p2, sig)?;
            if opts.json {
                line(
                    stdout,
                    serde_json::to_value(&report).expect("report serializes"),
                );
            } else {
                let _ = writeln!(stdout, "commutes: {}", report.commutes);
                let _ = writeln!(
                    stdout,
                    "boundary: {} => {}",
                    report.boundary.0, report.boundary.1
                );
                let _ = writeln!(stdout, "path1: {:?}", report.path1_perm.map());
                let _ = writeln!(stdout, "path2: {:?}", report.path2_perm.map());
            }
            Ok(report.commutes)
        }
        Statement::Suite {
            kind,
            depth,
            seed,
            samples,
        } => {
            let seed = seed.or(opts.seed).unwrap_or(DEFAULT_SEED);
            let report = match kind {
                SuiteKind::Pc => {
                    pc_axiom_suite(sig, depth.or(opts.depth).unwrap_or(DEFAULT_PC_DEPTH))
                }
                SuiteKind::Strict => {
                    strictification_suite(sig, depth.or(opts.depth).unwrap_or(DEFAULT_DEPTH))
                }
                SuiteKind::Instance => {
                    let n = samples.unwrap_or(DEFAULT_SAMPLES) as u64;
                    SuiteReport::merge(
                        "instance",
                        vec![
                            instance_axiom_suite(InstanceKind::Span { max_set: 4 }, n, seed),
                            instance_axiom_suite(
                                InstanceKind::Naturals {
                                    max_value: 9,
                                    max_depth: 5,
                                },
                                n,
                                seed,
                            ),
                            diagram_transport_suite(n.div_ceil(5), 4, seed),
                        ],
                    )
                }
            };
            let _ = writeln!(stdout, "{}", report.to_json());
            Ok(report.passed())
        }
        Statement::Eval { expr, instance } => {
            let value = match instance {
                InstanceRef::Named(n) => r.instances[n].eval(expr, sig)?,
                InstanceRef::Inline(decl) => build_instance(decl, sig)
                    .map_err(Error::InvalidInstance)?
                    .eval(expr, sig)?,
            };
            if opts.json {
                line(stdout, json!({"expr": expr.to_string(), "value": value}));
            } else {
                let _ = writeln!(stdout, "{value}");
            }
            Ok(true)
        }
        Statement::StrictifyReport => {
            let depth = opts.depth.unwrap_or(DEFAULT_DEPTH);
            let report = strictify_report(sig, depth);
            if opts.json {
                line(
                    stdout,
                    serde_json::to_value(&report).expect("report serializes"),
                );
            } else {
                stdout.push_str(&report.to_string());
            }
            Ok(report.passed())
        }
        Statement::ZeroCells(_)
        | Statement::Gen1 { .. }
        | Statement::Gen2 { .. }
        | Statement::Instance { .. } => Ok(true),
    }
}

fn line(stdout: &mut String, v: serde_json::Value) {
    let _ = writeln!(stdout, "{v}");
}

/// How the strictification functor and its quasi-inverse behave on the
/// expressions of a signature up to some depth.
#[derive(Clone, Debug, serde::Serialize)]
pub struct StrictifyReport {
    pub zero_cells: usize,
    pub one_cells: usize,
    pub two_cells: usize,
    pub depth: usize,
    pub expressions: usize,
    pub normal_forms: usize,
    /// Normal forms with `normalize(embed(nf)) != nf`.
    pub section_failures: usize,
    /// Expressions whose canonical witness is missing, has the wrong
    /// boundary, or acts by a non-identity bijection.
    pub witness_failures: usize,
}

impl StrictifyReport {
    pub fn passed(&self) -> bool {
        self.section_failures == 0 && self.witness_failures == 0
    }
}

impl std::fmt::Display for StrictifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = |n: usize| {
            if n == 0 {
                "ok".to_string()
            } else {
                format!("{n} failures")
            }
        };
        writeln!(
            f,
            "signature: {} 0-cells, {} 1-cells, {} 2-cells",
            self.zero_cells, self.one_cells, self.two_cells
        )?;
        writeln!(
            f,
            "expressions of depth <= {}: {}",
            self.depth, self.expressions
        )?;
        writeln!(f, "distinct normal forms: {}", self.normal_forms)?;
        writeln!(
            f,
            "normalize(embed(nf)) = nf: {}",
            verdict(self.section_failures)
        )?;
        writeln!(
            f,
            "e => embed(normalize(e)) by identity bijection: {}",
            verdict(self.witness_failures)
        )
    }
}

pub fn strictify_report(sig: &SmcSignature, depth: usize) -> StrictifyReport {
    let exprs = ExprTable::build(sig, depth).exprs();
    let mut nfs: Vec<NormalForm> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut witness_failures = 0;
    for e in &exprs {
        let Ok(nf) = normalize(e, sig) else {
            witness_failures += 1;
            continue;
        };
        let ok = canonical_iso(e, sig).is_ok_and(|c| {
            matches!(boundary(&c, sig), Ok((s, t)) if s == *e && t == embed(&nf))
                && matches!(perm_of(&c, sig), Ok(p) if p.is_identity())
        });
        witness_failures += usize::from(!ok);
        if seen.insert(nf.clone()) {
            nfs.push(nf);
        }
    }
    let section_failures = nfs
        .iter()
        .filter(|nf| !matches!(normalize(&embed(nf), sig), Ok(back) if back == **nf))
        .count();
    StrictifyReport {
        zero_cells: sig.zero_cells().len(),
        one_cells: sig.gen1s().len(),
        two_cells: sig.gen2s().len(),
        depth,
        expressions: exprs.len(),
        normal_forms: nfs.len(),
        section_failures,
        witness_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(text: &str) -> Output {
        run_source(text, &RunOptions::default())
    }

    #[test]
    fn normalize_prints_canonical_text() {
        let out = run_text("normalize ((g + g') * (f + f'));");
        assert_eq!(out.stdout, "g.f + g.f' + g'.f + g'.f'\n");
        assert_eq!(out.status, 0);
    }

    #[test]
    fn declared_signature_replaces_standard() {
        let out = run_text("0cells a b; 1cell f: a -> b; normalize (f + 0@a->b);");
        assert_eq!((out.status, out.stdout.as_str()), (0, "f\n"));
        let out = run_text("0cells a; 1cell f: a -> b;");
        assert_eq!(out.status, 2);
        assert!(out.stderr.contains("unknown 0-cell `b`"), "{}", out.stderr);
    }

    #[test]
    fn failing_check_exits_one() {
        let out = run_text("check [sym(f, f)] == [id(f + f)];");
        assert_eq!(out.status, 1);
        assert!(out.stdout.starts_with("commutes: false\n"));
    }

    #[test]
    fn eval_inline_and_named() {
        let out = run_text("eval (g * (f + f')) in N{f=2, f'=3, g=5};");
        assert_eq!((out.status, out.stdout.as_str()), (0, "25\n"));
        let out = run_text("instance R = Z{f=-2, f'=3, g=5}; eval (g * (f + f')) in R;");
        assert_eq!(out.stdout, "5\n");
        let out = run_text("eval g in N{f=2};");
        assert_eq!(out.status, 1);
        assert!(out.stderr.contains("missing assignment"));
        assert_eq!(run_text("eval g in Q;").status, 2);
        assert_eq!(run_text("eval g in N{f=-1};").status, 2);
    }

    #[test]
    fn static_errors_exit_two() {
        assert_eq!(run_text("normalize (g * g);").status, 2);
        assert_eq!(run_text("normalize (q);").status, 2);
        assert_eq!(run_text("check [sym(f, g)] == [id(f)];").status, 2);
        assert_eq!(run_text("normalize (f +;").status, 2);
    }

    #[test]
    fn strictify_report_passes() {
        let out = run_source(
            "strictify-report;",
            &RunOptions {
                depth: Some(1),
                ..Default::default()
            },
        );
        assert_eq!(out.status, 0, "{}", out.stderr);
        assert!(out.stdout.contains("normalize(embed(nf)) = nf: ok"));
    }
}
