//! Finite presentations of free SMC-categories.

use std::fmt;

use indexmap::{IndexMap, IndexSet};
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::expr::OneCellExpr;
use crate::symbol::Symbol;

/// A 0-cell (object) of the presented bicategory.
#[derive(Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct ZeroCellId(pub Symbol);

impl ZeroCellId {
    pub fn new(name: &str) -> Self {
        ZeroCellId(Symbol::new(name))
    }

    pub fn as_str(self) -> &'static str {
        self.0.as_str()
    }
}

impl From<&str> for ZeroCellId {
    fn from(name: &str) -> Self {
        ZeroCellId::new(name)
    }
}

impl fmt::Display for ZeroCellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for ZeroCellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A generating 1-cell `name: src -> tgt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gen1Cell {
    pub name: Symbol,
    pub src: ZeroCellId,
    pub tgt: ZeroCellId,
}

/// A generating 2-cell `name: src => tgt` between parallel 1-cell expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gen2Cell {
    pub name: Symbol,
    pub src: OneCellExpr,
    pub tgt: OneCellExpr,
}

/// 0-cells, generating 1-cells and generating 2-cells, each kept in
/// declaration order. Every reference is checked on insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmcSignature {
    zero_cells: IndexSet<ZeroCellId, FxBuildHasher>,
    gen1: IndexMap<Symbol, Gen1Cell, FxBuildHasher>,
    gen2: IndexMap<Symbol, Gen2Cell, FxBuildHasher>,
}

impl SmcSignature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a signature from 0-cell names and `(name, src, tgt)` triples.
    pub fn from_decls(zero_cells: &[&str], gens: &[(&str, &str, &str)]) -> Result<Self> {
        let mut sig = SmcSignature::new();
        for z in zero_cells {
            sig.add_zero_cell(z)?;
        }
        for (name, src, tgt) in gens {
            sig.add_gen1(name, src, tgt)?;
        }
        Ok(sig)
    }

    /// The default test signature: 0-cells `a, b, c` and generators
    /// `f, f': a -> b`, `g, g': b -> c`, `h: a -> c`.
    pub fn standard() -> Self {
        Self::from_decls(
            &["a", "b", "c"],
            &[
                ("f", "a", "b"),
                ("f'", "a", "b"),
                ("g", "b", "c"),
                ("g'", "b", "c"),
                ("h", "a", "c"),
            ],
        )
        .expect("standard signature is valid")
    }

    /// One 0-cell `a` with a single endomorphism `f: a -> a`: the
    /// presentation of a free bimonoidal category on one object.
    pub fn single_endo() -> Self {
        Self::from_decls(&["a"], &[("f", "a", "a")]).expect("valid")
    }

    pub fn add_zero_cell(&mut self, name: &str) -> Result<ZeroCellId> {
        let id = ZeroCellId::new(name);
        if !self.zero_cells.insert(id) {
            return Err(Error::InvalidSignature(format!(
                "duplicate 0-cell `{name}`"
            )));
        }
        Ok(id)
    }

    pub fn add_gen1(&mut self, name: &str, src: &str, tgt: &str) -> Result<Gen1Cell> {
        let cell = Gen1Cell {
            name: Symbol::new(name),
            src: ZeroCellId::new(src),
            tgt: ZeroCellId::new(tgt),
        };
        for end in [cell.src, cell.tgt] {
            if !self.zero_cells.contains(&end) {
                return Err(Error::InvalidSignature(format!(
                    "1-cell `{name}` refers to undeclared 0-cell `{end}`"
                )));
            }
        }
        if self.gen1.contains_key(&cell.name) {
            return Err(Error::InvalidSignature(format!(
                "duplicate 1-cell `{name}`"
            )));
        }
        self.gen1.insert(cell.name, cell);
        Ok(cell)
    }

    pub fn add_gen2(&mut self, name: &str, src: OneCellExpr, tgt: OneCellExpr) -> Result<()> {
        let s = src.endpoints(self)?;
        let t = tgt.endpoints(self)?;
        if s != t {
            return Err(Error::InvalidSignature(format!(
                "2-cell `{name}` joins non-parallel 1-cells ({}->{} vs {}->{})",
                s.0, s.1, t.0, t.1
            )));
        }
        let name = Symbol::new(name);
        if self.gen2.contains_key(&name) {
            return Err(Error::InvalidSignature(format!(
                "duplicate 2-cell `{name}`"
            )));
        }
        self.gen2.insert(name, Gen2Cell { name, src, tgt });
        Ok(())
    }

    pub fn zero_cells(&self) -> impl ExactSizeIterator<Item = ZeroCellId> + '_ {
        self.zero_cells.iter().copied()
    }

    pub fn has_zero_cell(&self, z: ZeroCellId) -> bool {
        self.zero_cells.contains(&z)
    }

    pub fn gen1s(&self) -> impl ExactSizeIterator<Item = &Gen1Cell> + '_ {
        self.gen1.values()
    }

    pub fn gen2s(&self) -> impl ExactSizeIterator<Item = &Gen2Cell> + '_ {
        self.gen2.values()
    }

    pub fn gen1(&self, name: Symbol) -> Option<&Gen1Cell> {
        self.gen1.get(&name)
    }

    pub fn gen2(&self, name: Symbol) -> Option<&Gen2Cell> {
        self.gen2.get(&name)
    }

    /// The opposite presentation: 1-cells reversed, 2-cells kept in the same
    /// direction with their boundaries reversed.
    pub fn opposite(&self) -> SmcSignature {
        let gen1 = self
            .gen1
            .values()
            .map(|g| {
                let flipped = Gen1Cell {
                    name: g.name,
                    src: g.tgt,
                    tgt: g.src,
                };
                (g.name, flipped)
            })
            .collect();
        let gen2 = self
            .gen2
            .values()
            .map(|c| {
                let flipped = Gen2Cell {
                    name: c.name,
                    src: c.src.opposite(),
                    tgt: c.tgt.opposite(),
                };
                (c.name, flipped)
            })
            .collect();
        SmcSignature {
            zero_cells: self.zero_cells.clone(),
            gen1,
            gen2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_undeclared_endpoint() {
        let mut sig = SmcSignature::new();
        sig.add_zero_cell("b").unwrap();
        let err = sig.add_gen1("f", "a", "b").unwrap_err();
        assert!(matches!(err, Error::InvalidSignature(_)));
    }

    #[test]
    fn rejects_duplicates_per_namespace() {
        let mut sig = SmcSignature::from_decls(&["a"], &[("f", "a", "a")]).unwrap();
        assert!(sig.add_zero_cell("a").is_err());
        assert!(sig.add_gen1("f", "a", "a").is_err());
        sig.add_gen2("f", OneCellExpr::gen("f"), OneCellExpr::gen("f"))
            .unwrap();
        assert!(sig
            .add_gen2("f", OneCellExpr::gen("f"), OneCellExpr::gen("f"))
            .is_err());
    }

    #[test]
    fn gen2_must_be_parallel() {
        let mut sig = SmcSignature::standard();
        let err = sig
            .add_gen2("alpha", OneCellExpr::gen("f"), OneCellExpr::gen("g"))
            .unwrap_err();
        assert!(matches!(err, Error::InvalidSignature(_)));
        sig.add_gen2("beta", OneCellExpr::gen("f"), OneCellExpr::gen("f'"))
            .unwrap();
    }

    #[test]
    fn opposite_is_an_involution() {
        let mut sig = SmcSignature::standard();
        sig.add_gen2(
            "alpha",
            OneCellExpr::hcomp(OneCellExpr::gen("g"), OneCellExpr::gen("f")),
            OneCellExpr::gen("h"),
        )
        .unwrap();
        let op = sig.opposite();
        let f = op.gen1(Symbol::new("f")).unwrap();
        assert_eq!((f.src.as_str(), f.tgt.as_str()), ("b", "a"));
        assert_eq!(op.opposite(), sig);
        assert_ne!(op, sig);
    }
}
