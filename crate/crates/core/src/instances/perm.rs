use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// An object of a free permutative category: a finite sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn parse(letters: &[&str]) -> Self {
        Word(letters.iter().map(|l| Symbol::new(l)).collect())
    }

    pub fn tensor(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A morphism of a free permutative category. Only the non-null letters of
/// a word are tracked: `map[i]` is the rank in the target of the `i`-th
/// non-null letter of the source.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PermMorphism {
    source: Word,
    target: Word,
    map: Vec<usize>,
}

impl PermMorphism {
    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn target(&self) -> &Word {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &k)| i == k)
    }

    pub fn then(&self, later: &PermMorphism) -> Result<PermMorphism> {
        if self.target != later.source {
            return Err(Error::InvalidFunctor(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, later.source, later.target
            )));
        }
        Ok(PermMorphism {
            source: self.source.clone(),
            target: later.target.clone(),
            map: self.map.iter().map(|&k| later.map[k]).collect(),
        })
    }

    pub fn tensor(&self, other: &PermMorphism) -> PermMorphism {
        let n = self.map.len();
        PermMorphism {
            source: self.source.tensor(&other.source),
            target: self.target.tensor(&other.target),
            map: self
                .map
                .iter()
                .copied()
                .chain(other.map.iter().map(|&k| n + k))
                .collect(),
        }
    }

    pub fn inverse(&self) -> PermMorphism {
        let mut map = vec![0; self.map.len()];
        for (i, &k) in self.map.iter().enumerate() {
            map[k] = i;
        }
        PermMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map,
        }
    }
}

impl fmt::Display for PermMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.map)
    }
}

/// The free permutative category on a set of letters. Null letters are
/// isomorphic to the unit: morphisms ignore them, so `[z] ≅ []` for a null
/// letter `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermCatInstance {
    letters: IndexSet<Symbol>,
    null: HashSet<Symbol>,
}

impl PermCatInstance {
    pub fn new(letters: &[&str]) -> Self {
        Self::with_null_letters(letters, &[])
    }

    pub fn with_null_letters(letters: &[&str], null: &[&str]) -> Self {
        PermCatInstance {
            letters: letters.iter().chain(null).map(|l| Symbol::new(l)).collect(),
            null: null.iter().map(|l| Symbol::new(l)).collect(),
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.letters.iter().copied()
    }

    pub fn is_null(&self, l: Symbol) -> bool {
        self.null.contains(&l)
    }

    pub fn is_object(&self, x: &Word) -> bool {
        x.0.iter().all(|l| self.letters.contains(l))
    }

    fn content(&self, x: &Word) -> Vec<Symbol> {
        x.0.iter()
            .copied()
            .filter(|l| !self.null.contains(l))
            .collect()
    }

    pub fn rank(&self, x: &Word) -> usize {
        x.0.iter().filter(|l| !self.null.contains(l)).count()
    }

    pub fn identity(&self, x: &Word) -> PermMorphism {
        PermMorphism {
            source: x.clone(),
            target: x.clone(),
            map: (0..self.rank(x)).collect(),
        }
    }

    /// The block transposition `x·y -> y·x`.
    pub fn symmetry(&self, x: &Word, y: &Word) -> PermMorphism {
        let (m, n) = (self.rank(x), self.rank(y));
        PermMorphism {
            source: x.tensor(y),
            target: y.tensor(x),
            map: (0..m).map(|i| n + i).chain(0..n).collect(),
        }
    }

    /// Validates a letter-preserving bijection between non-null ranks.
    pub fn morphism(&self, source: Word, target: Word, map: Vec<usize>) -> Result<PermMorphism> {
        let f = PermMorphism {
            source,
            target,
            map,
        };
        self.validate(&f)?;
        Ok(f)
    }

    pub fn validate(&self, f: &PermMorphism) -> Result<()> {
        if !self.is_object(&f.source) || !self.is_object(&f.target) {
            return Err(Error::InvalidFunctor(format!("{f} uses unknown letters")));
        }
        let (s, t) = (self.content(&f.source), self.content(&f.target));
        if s.len() != f.map.len() || t.len() != f.map.len() {
            return Err(Error::InvalidFunctor(format!("{f} is not a bijection")));
        }
        let mut hit = vec![false; t.len()];
        for (i, &k) in f.map.iter().enumerate() {
            if k >= t.len() || std::mem::replace(&mut hit[k], true) || s[i] != t[k] {
                return Err(Error::InvalidFunctor(format!(
                    "{f} is not letter-preserving"
                )));
            }
        }
        Ok(())
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn objects_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut layer = vec![Word::unit()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &self.letters {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Every morphism `x -> y`.
    pub fn morphisms_between(&self, x: &Word, y: &Word) -> Vec<PermMorphism> {
        let (s, t) = (self.content(x), self.content(y));
        let mut out = Vec::new();
        if s.len() != t.len() {
            return out;
        }
        let mut map = Vec::with_capacity(s.len());
        let mut used = vec![false; t.len()];
        fn go(
            s: &[Symbol],
            t: &[Symbol],
            map: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<PermMorphism>,
            x: &Word,
            y: &Word,
        ) {
            let i = map.len();
            if i == s.len() {
                out.push(PermMorphism {
                    source: x.clone(),
                    target: y.clone(),
                    map: map.clone(),
                });
                return;
            }
            for k in 0..t.len() {
                if !used[k] && t[k] == s[i] {
                    used[k] = true;
                    map.push(k);
                    go(s, t, map, used, out, x, y);
                    map.pop();
                    used[k] = false;
                }
            }
        }
        go(&s, &t, &mut map, &mut used, &mut out, x, y);
        out
    }
}

type ObjectMap = Arc<dyn Fn(&Word) -> Word + Send + Sync>;
type MorphismMap = Arc<dyn Fn(&PermMorphism) -> PermMorphism + Send + Sync>;
type StructureMap = Arc<dyn Fn(&Word, &Word) -> PermMorphism + Send + Sync>;
type Components = Arc<dyn Fn(&Word) -> PermMorphism + Send + Sync>;

/// A symmetric strong monoidal functor between free permutative
/// categories. `structure(x, y)` is `Φ(x)·Φ(y) -> Φ(x·y)` and `unit_iso`
/// is `() -> Φ(())`.
#[derive(Clone)]
pub struct MonoidalFunctorData {
    source: Arc<PermCatInstance>,
    target: Arc<PermCatInstance>,
    object_map: ObjectMap,
    morphism_map: MorphismMap,
    structure: StructureMap,
    unit_iso: PermMorphism,
}

impl fmt::Debug for MonoidalFunctorData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidalFunctorData")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("unit_iso", &self.unit_iso)
            .finish_non_exhaustive()
    }
}

impl MonoidalFunctorData {
    pub fn new(
        source: Arc<PermCatInstance>,
        target: Arc<PermCatInstance>,
        object_map: impl Fn(&Word) -> Word + Send + Sync + 'static,
        morphism_map: impl Fn(&PermMorphism) -> PermMorphism + Send + Sync + 'static,
        structure: impl Fn(&Word, &Word) -> PermMorphism + Send + Sync + 'static,
        unit_iso: PermMorphism,
    ) -> Self {
        MonoidalFunctorData {
            source,
            target,
            object_map: Arc::new(object_map),
            morphism_map: Arc::new(morphism_map),
            structure: Arc::new(structure),
            unit_iso,
        }
    }

    /// The strict monoidal functor sending each letter to a word. Null
    /// letters must go to words of null letters; `unit_image` (also made of
    /// null letters) is the image of the empty word, so the functor is
    /// strictly unital exactly when `unit_image` is empty.
    pub fn substitution(
        source: Arc<PermCatInstance>,
        target: Arc<PermCatInstance>,
        images: &[(&str, Word)],
        unit_image: Word,
    ) -> Result<Self> {
        let table: std::collections::HashMap<Symbol, Word> = images
            .iter()
            .map(|(l, w)| (Symbol::new(l), w.clone()))
            .collect();
        for l in source.letters() {
            let w = table
                .get(&l)
                .ok_or_else(|| Error::InvalidFunctor(format!("no image for letter {l}")))?;
            if !target.is_object(w) {
                return Err(Error::InvalidFunctor(format!(
                    "image {w} of {l} is not an object"
                )));
            }
            if source.is_null(l) && target.rank(w) > 0 {
                return Err(Error::InvalidFunctor(format!(
                    "null letter {l} must map to a null word"
                )));
            }
        }
        if !target.is_object(&unit_image) || target.rank(&unit_image) > 0 {
            return Err(Error::InvalidFunctor(format!(
                "{unit_image} is not isomorphic to the unit"
            )));
        }
        let table = Arc::new(table);
        let objects = {
            let (table, unit_image) = (table.clone(), unit_image.clone());
            move |x: &Word| {
                if x.is_unit() {
                    unit_image.clone()
                } else {
                    Word(
                        x.0.iter()
                            .flat_map(|l| table[l].0.iter().copied())
                            .collect(),
                    )
                }
            }
        };
        let objects = Arc::new(objects);
        let morphisms = {
            let (objects, table, source, target) = (
                objects.clone(),
                table.clone(),
                source.clone(),
                target.clone(),
            );
            move |f: &PermMorphism| {
                let blocks = |w: &Word| -> Vec<(usize, usize)> {
                    let mut out = Vec::new();
                    let mut offset = 0;
                    for l in w.0.iter().filter(|l| !source.is_null(**l)) {
                        let n = target.rank(&table[l]);
                        out.push((offset, n));
                        offset += n;
                    }
                    out
                };
                let (bs, bt) = (blocks(&f.source), blocks(&f.target));
                let mut map = vec![0; bs.iter().map(|b| b.1).sum()];
                for (i, &(off, n)) in bs.iter().enumerate() {
                    for r in 0..n {
                        map[off + r] = bt[f.map[i]].0 + r;
                    }
                }
                PermMorphism {
                    source: objects(&f.source),
                    target: objects(&f.target),
                    map,
                }
            }
        };
        let structure = {
            let (objects, target) = (objects.clone(), target.clone());
            move |x: &Word, y: &Word| {
                let src = objects(x).tensor(&objects(y));
                PermMorphism {
                    map: (0..target.rank(&src)).collect(),
                    source: src,
                    target: objects(&x.tensor(y)),
                }
            }
        };
        let unit_iso = PermMorphism {
            source: Word::unit(),
            target: unit_image,
            map: vec![],
        };
        let objects = move |x: &Word| objects(x);
        Ok(Self::new(
            source, target, objects, morphisms, structure, unit_iso,
        ))
    }

    /// The identity functor.
    pub fn identity(cat: Arc<PermCatInstance>) -> Self {
        let letters: Vec<(String, Word)> = cat
            .letters()
            .map(|l| (l.to_string(), Word(vec![l])))
            .collect();
        let images: Vec<(&str, Word)> = letters
            .iter()
            .map(|(l, w)| (l.as_str(), w.clone()))
            .collect();
        Self::substitution(cat.clone(), cat, &images, Word::unit())
            .expect("identity substitution is valid")
    }

    /// Word reversal: strictly unital, but with the block transposition as
    /// its structure isomorphism.
    pub fn reversal(cat: Arc<PermCatInstance>) -> Self {
        let objects = |x: &Word| Word(x.0.iter().rev().copied().collect());
        let morphisms = |f: &PermMorphism| {
            let n = f.map.len();
            PermMorphism {
                source: Word(f.source.0.iter().rev().copied().collect()),
                target: Word(f.target.0.iter().rev().copied().collect()),
                map: (0..n).map(|i| n - 1 - f.map[n - 1 - i]).collect(),
            }
        };
        let structure = {
            let cat = cat.clone();
            move |x: &Word, y: &Word| cat.symmetry(&objects(x), &objects(y))
        };
        Self::new(
            cat.clone(),
            cat,
            objects,
            morphisms,
            structure,
            PermMorphism {
                source: Word::unit(),
                target: Word::unit(),
                map: vec![],
            },
        )
    }

    pub fn source(&self) -> &Arc<PermCatInstance> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermCatInstance> {
        &self.target
    }

    pub fn object(&self, x: &Word) -> Word {
        (self.object_map)(x)
    }

    pub fn morphism(&self, f: &PermMorphism) -> PermMorphism {
        (self.morphism_map)(f)
    }

    pub fn structure(&self, x: &Word, y: &Word) -> PermMorphism {
        (self.structure)(x, y)
    }

    pub fn unit_iso(&self) -> &PermMorphism {
        &self.unit_iso
    }

    pub fn is_strictly_unital(&self) -> bool {
        self.object(&Word::unit()).is_unit() && self.unit_iso.is_identity()
    }

    /// Checks functoriality, naturality of the structure isomorphism, and
    /// the associativity, unit and symmetry coherence laws on all objects
    /// of length at most `max_len`.
    pub fn check(&self, max_len: usize) -> Result<()> {
        let (src, tgt) = (&*self.source, &*self.target);
        let bad = |what: String| Err(Error::InvalidFunctor(what));
        let objects = src.objects_up_to(max_len);
        let classes = content_classes(src, &objects);

        let u = Word::unit();
        if self.unit_iso.source != u || self.unit_iso.target != self.object(&u) {
            return bad(format!(
                "unit isomorphism {} has the wrong endpoints",
                self.unit_iso
            ));
        }
        tgt.validate(&self.unit_iso)?;

        for x in &objects {
            if !tgt.is_object(&self.object(x)) {
                return bad(format!("image of {x} is not an object"));
            }
            if self.morphism(&src.identity(x)) != tgt.identity(&self.object(x)) {
                return bad(format!("identity of {x} is not preserved"));
            }
        }
        let mut all_morphisms = Vec::new();
        for class in &classes {
            for x in class {
                for y in class {
                    for f in src.morphisms_between(x, y) {
                        let ff = self.morphism(&f);
                        if ff.source != self.object(x) || ff.target != self.object(y) {
                            return bad(format!("image of {f} has the wrong endpoints"));
                        }
                        tgt.validate(&ff)?;
                        all_morphisms.push(f);
                    }
                }
            }
            for x in class {
                for y in class {
                    for z in class {
                        for f in src.morphisms_between(x, y) {
                            for g in src.morphisms_between(y, z) {
                                let lhs = self.morphism(&f.then(&g)?);
                                let rhs = self.morphism(&f).then(&self.morphism(&g))?;
                                if lhs != rhs {
                                    return bad(format!(
                                        "composition {f} then {g} is not preserved"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }

        for x in &objects {
            for y in &objects {
                let s = self.structure(x, y);
                if s.source != self.object(x).tensor(&self.object(y))
                    || s.target != self.object(&x.tensor(y))
                {
                    return bad(format!(
                        "structure map at ({x}, {y}) has the wrong endpoints"
                    ));
                }
                tgt.validate(&s)?;
                let lhs = self.morphism(&src.symmetry(x, y));
                let lhs = s.then(&lhs)?;
                let rhs = tgt
                    .symmetry(&self.object(x), &self.object(y))
                    .then(&self.structure(y, x))?;
                if lhs != rhs {
                    return bad(format!("symmetry is not preserved at ({x}, {y})"));
                }
            }
            let fx = self.object(x);
            let left = self
                .unit_iso
                .tensor(&tgt.identity(&fx))
                .then(&self.structure(&u, x))?;
            let right = tgt
                .identity(&fx)
                .tensor(&self.unit_iso)
                .then(&self.structure(x, &u))?;
            if !left.is_identity() || !right.is_identity() {
                return bad(format!("unit coherence fails at {x}"));
            }
        }

        for x in &objects {
            for y in &objects {
                for z in &objects {
                    let fz = tgt.identity(&self.object(z));
                    let fx = tgt.identity(&self.object(x));
                    let lhs = self
                        .structure(x, y)
                        .tensor(&fz)
                        .then(&self.structure(&x.tensor(y), z))?;
                    let rhs = fx
                        .tensor(&self.structure(y, z))
                        .then(&self.structure(x, &y.tensor(z)))?;
                    if lhs != rhs {
                        return bad(format!("associativity coherence fails at ({x}, {y}, {z})"));
                    }
                }
            }
        }

        for f in &all_morphisms {
            for g in &all_morphisms {
                let lhs = self
                    .morphism(f)
                    .tensor(&self.morphism(g))
                    .then(&self.structure(&f.target, &g.target))?;
                let rhs = self
                    .structure(&f.source, &g.source)
                    .then(&self.morphism(&f.tensor(g)))?;
                if lhs != rhs {
                    return bad(format!("structure map is not natural at ({f}, {g})"));
                }
            }
        }
        Ok(())
    }
}

fn content_classes(cat: &PermCatInstance, objects: &[Word]) -> Vec<Vec<Word>> {
    let mut classes: indexmap::IndexMap<Vec<Symbol>, Vec<Word>> = indexmap::IndexMap::new();
    for x in objects {
        let mut key = cat.content(x);
        key.sort_by_key(|s| s.as_str());
        classes.entry(key).or_default().push(x.clone());
    }
    classes.into_values().collect()
}

/// A monoidal natural transformation with components
/// `component(x) : F(x) -> G(x)`.
#[derive(Clone)]
pub struct MonoidalTransformation {
    source: MonoidalFunctorData,
    target: MonoidalFunctorData,
    component: Components,
}

impl MonoidalTransformation {
    pub fn new(
        source: MonoidalFunctorData,
        target: MonoidalFunctorData,
        component: impl Fn(&Word) -> PermMorphism + Send + Sync + 'static,
    ) -> Self {
        MonoidalTransformation {
            source,
            target,
            component: Arc::new(component),
        }
    }

    pub fn component(&self, x: &Word) -> PermMorphism {
        (self.component)(x)
    }

    pub fn source(&self) -> &MonoidalFunctorData {
        &self.source
    }

    pub fn target(&self) -> &MonoidalFunctorData {
        &self.target
    }

    /// Checks that every component is an isomorphism with the right
    /// endpoints, naturality, and compatibility with the structure and unit
    /// isomorphisms, on objects of length at most `max_len`.
    pub fn check(&self, max_len: usize) -> Result<()> {
        let (src, tgt) = (&*self.source.source, &*self.source.target);
        let bad = |what: String| Err(Error::InvalidFunctor(what));
        let objects = src.objects_up_to(max_len);
        for x in &objects {
            let c = self.component(x);
            if c.source != self.source.object(x) || c.target != self.target.object(x) {
                return bad(format!("component at {x} has the wrong endpoints"));
            }
            tgt.validate(&c)?;
        }
        for class in content_classes(src, &objects) {
            for x in &class {
                for y in &class {
                    for f in src.morphisms_between(x, y) {
                        let lhs = self.component(x).then(&self.target.morphism(&f))?;
                        let rhs = self.source.morphism(&f).then(&self.component(y))?;
                        if lhs != rhs {
                            return bad(format!("not natural at {f}"));
                        }
                    }
                }
            }
        }
        for x in &objects {
            for y in &objects {
                let lhs = self
                    .source
                    .structure(x, y)
                    .then(&self.component(&x.tensor(y)))?;
                let rhs = self
                    .component(x)
                    .tensor(&self.component(y))
                    .then(&self.target.structure(x, y))?;
                if lhs != rhs {
                    return bad(format!("not monoidal at ({x}, {y})"));
                }
            }
        }
        let u = Word::unit();
        if self.source.unit_iso.then(&self.component(&u))? != self.target.unit_iso {
            return bad("not compatible with the unit isomorphisms".into());
        }
        Ok(())
    }
}

/// Replaces `Φ` by a strictly unital functor `Ψ` agreeing with `Φ` away
/// from the unit, together with the monoidal isomorphism `η : Ψ ⇒ Φ` whose
/// component is `Φ_u` at the unit and an identity elsewhere.
pub fn strictly_unitalize(
    phi: &MonoidalFunctorData,
) -> Result<(MonoidalFunctorData, MonoidalTransformation)> {
    phi.check(2)?;
    let u1 = Word::unit();
    let target = phi.target.clone();
    let eta = {
        let (phi, target) = (phi.clone(), target.clone());
        Arc::new(move |x: &Word| {
            if x.is_unit() {
                phi.unit_iso.clone()
            } else {
                target.identity(&phi.object(x))
            }
        })
    };
    let objects = {
        let phi = phi.clone();
        Arc::new(move |x: &Word| {
            if x.is_unit() {
                Word::unit()
            } else {
                phi.object(x)
            }
        })
    };
    let morphisms = {
        let (phi, eta) = (phi.clone(), eta.clone());
        move |f: &PermMorphism| {
            eta(&f.source)
                .then(&phi.morphism(f))
                .and_then(|g| g.then(&eta(&f.target).inverse()))
                .expect("components compose")
        }
    };
    let structure = {
        let (phi, objects, target) = (phi.clone(), objects.clone(), target.clone());
        move |x: &Word, y: &Word| {
            if x.is_unit() || y.is_unit() {
                target.identity(&objects(&x.tensor(y)))
            } else {
                phi.structure(x, y)
            }
        }
    };
    let psi = MonoidalFunctorData::new(
        phi.source.clone(),
        target.clone(),
        move |x: &Word| objects(x),
        morphisms,
        structure,
        target.identity(&u1),
    );
    let eta = MonoidalTransformation {
        source: psi.clone(),
        target: phi.clone(),
        component: eta,
    };
    Ok((psi, eta))
}

fn check_parallel(f: &MonoidalFunctorData, g: &MonoidalFunctorData) -> Result<()> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::InvalidFunctor("functors are not parallel".into()));
    }
    Ok(())
}

/// The four maps making up the structure isomorphism of `F ⊕ G` at
/// `(c1, c2)`: reassociation, the middle symmetry, reassociation, and
/// `F₂ ⊕ G₂`. In a permutative target both reassociations are identities.
pub fn functor_sum_chain(
    f: &MonoidalFunctorData,
    g: &MonoidalFunctorData,
    c1: &Word,
    c2: &Word,
) -> Result<[PermMorphism; 4]> {
    check_parallel(f, g)?;
    let tgt = &f.target;
    let (a, b, c, d) = (f.object(c1), g.object(c1), f.object(c2), g.object(c2));
    let start = a.tensor(&b).tensor(&c.tensor(&d));
    let assoc1 = tgt.identity(&start);
    let comm = tgt
        .identity(&a)
        .tensor(&tgt.symmetry(&b, &c))
        .tensor(&tgt.identity(&d));
    let assoc2 = tgt.identity(&a.tensor(&c).tensor(&b.tensor(&d)));
    let strong = f.structure(c1, c2).tensor(&g.structure(c1, c2));
    Ok([assoc1, comm, assoc2, strong])
}

/// The pointwise sum `(F ⊕ G)(c) = F(c) · G(c)`.
pub fn functor_sum(
    f: &MonoidalFunctorData,
    g: &MonoidalFunctorData,
) -> Result<MonoidalFunctorData> {
    check_parallel(f, g)?;
    let objects = {
        let (f, g) = (f.clone(), g.clone());
        move |x: &Word| f.object(x).tensor(&g.object(x))
    };
    let morphisms = {
        let (f, g) = (f.clone(), g.clone());
        move |m: &PermMorphism| f.morphism(m).tensor(&g.morphism(m))
    };
    let structure = {
        let (f, g) = (f.clone(), g.clone());
        move |x: &Word, y: &Word| {
            let chain = functor_sum_chain(&f, &g, x, y).expect("parallel functors");
            chain[1..]
                .iter()
                .try_fold(chain[0].clone(), |acc, step| acc.then(step))
                .expect("chain composes")
        }
    };
    let unit_iso = f.unit_iso.tensor(&g.unit_iso);
    Ok(MonoidalFunctorData::new(
        f.source.clone(),
        f.target.clone(),
        objects,
        morphisms,
        structure,
        unit_iso,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> Arc<PermCatInstance> {
        Arc::new(PermCatInstance::new(&["x", "y", "z"]))
    }

    #[test]
    fn symmetry_is_block_transposition() {
        let c = cat();
        let s = c.symmetry(&Word::parse(&["x", "y"]), &Word::parse(&["z"]));
        assert_eq!(s.map(), &[1, 2, 0]);
        assert_eq!(s.target(), &Word::parse(&["z", "x", "y"]));
        let back = s
            .then(&c.symmetry(&Word::parse(&["z"]), &Word::parse(&["x", "y"])))
            .unwrap();
        assert!(back.is_identity());
    }

    #[test]
    fn morphisms_preserve_letters() {
        let c = cat();
        let xx = Word::parse(&["x", "x"]);
        assert_eq!(c.morphisms_between(&xx, &xx).len(), 2);
        assert!(c
            .morphisms_between(&xx, &Word::parse(&["x", "y"]))
            .is_empty());
        assert!(c
            .morphism(
                Word::parse(&["x", "y"]),
                Word::parse(&["y", "x"]),
                vec![0, 1]
            )
            .is_err());
        assert_eq!(c.objects_up_to(2).len(), 13);
    }

    #[test]
    fn identity_and_reversal_are_valid() {
        MonoidalFunctorData::identity(cat()).check(3).unwrap();
        let r = MonoidalFunctorData::reversal(cat());
        r.check(3).unwrap();
        assert_eq!(
            r.object(&Word::parse(&["x", "y"])),
            Word::parse(&["y", "x"])
        );
    }

    #[test]
    fn broken_structure_is_rejected() {
        let c = cat();
        let objects = |x: &Word| Word(x.0.iter().rev().copied().collect());
        let bad = MonoidalFunctorData::new(
            c.clone(),
            c.clone(),
            objects,
            |f: &PermMorphism| f.clone(),
            move |x: &Word, y: &Word| PermMorphism {
                source: objects(x).tensor(&objects(y)),
                target: objects(&x.tensor(y)),
                map: (0..x.len() + y.len()).collect(),
            },
            c.identity(&Word::unit()),
        );
        assert!(matches!(bad.check(2), Err(Error::InvalidFunctor(_))));
    }

    fn non_unital() -> MonoidalFunctorData {
        let src = cat();
        let tgt = Arc::new(PermCatInstance::with_null_letters(&["x", "y", "z"], &["n"]));
        let n = Word::parse(&["n"]);
        MonoidalFunctorData::substitution(
            src,
            tgt,
            &[
                ("x", Word::parse(&["x", "n"])),
                ("y", Word::parse(&["y"])),
                ("z", Word::parse(&["z", "x"])),
            ],
            n,
        )
        .unwrap()
    }

    #[test]
    fn strict_unitalization() {
        let phi = non_unital();
        phi.check(3).unwrap();
        assert!(!phi.is_strictly_unital());
        let (psi, eta) = strictly_unitalize(&phi).unwrap();
        assert_eq!(psi.object(&Word::unit()), Word::unit());
        let x = Word::parse(&["z", "y"]);
        assert_eq!(psi.object(&x), phi.object(&x));
        assert_eq!(eta.component(&Word::unit()), *phi.unit_iso());
        assert!(eta.component(&x).is_identity());
        assert!(psi.is_strictly_unital());
        psi.check(3).unwrap();
        eta.check(3).unwrap();
    }

    #[test]
    fn sum_structure_is_middle_transposition() {
        let c = cat();
        let f = MonoidalFunctorData::substitution(
            c.clone(),
            c.clone(),
            &[
                ("x", Word::parse(&["x"])),
                ("y", Word::parse(&["z"])),
                ("z", Word::parse(&["y"])),
            ],
            Word::unit(),
        )
        .unwrap();
        let g = MonoidalFunctorData::identity(c.clone());
        let s = functor_sum(&f, &g).unwrap();
        let (c1, c2) = (Word::parse(&["x"]), Word::parse(&["y"]));
        assert_eq!(s.object(&c1), Word::parse(&["x", "x"]));
        let m = s.structure(&c1, &c2);
        assert_eq!(m.map(), &[0, 2, 1, 3]);
        assert_eq!(m.source(), &Word::parse(&["x", "x", "z", "y"]));
        assert_eq!(m.target(), &Word::parse(&["x", "z", "x", "y"]));
        assert!(s.is_strictly_unital());
        assert_eq!(s.object(&Word::unit()), Word::unit());
        s.check(2).unwrap();
    }

    #[test]
    fn sum_with_reversal_is_coherent() {
        let c = cat();
        let s = functor_sum(
            &MonoidalFunctorData::reversal(c.clone()),
            &MonoidalFunctorData::identity(c),
        )
        .unwrap();
        s.check(2).unwrap();
    }
}
