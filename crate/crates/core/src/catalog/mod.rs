//! The bundled catalog of low-dimensional solvable Lie algebras, parameter
//! domains, reference splittings, witness morphisms and expected verdicts.
//!
//! The data lives in three JSON files (`algebras.json`, `witnesses.json`,
//! `expected.json`). A directory passed to [`Catalog::load_dir`] may replace
//! any of them.

mod witness;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use witness::CatalogWitness;

use crate::affine::ImageJson;
use crate::error::{Error, Result};
use crate::exactla::expr::{self, Bindings};
use crate::liealg::{AlgebraJson, LieAlgebra, NilpotentClass, ScalarText};

const ALGEBRAS: &str = include_str!("../../catalog/algebras.json");
const WITNESSES: &str = include_str!("../../catalog/witnesses.json");
const EXPECTED: &str = include_str!("../../catalog/expected.json");

pub type Brackets = Vec<(usize, usize, Vec<(usize, ScalarText)>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceSplitting {
    pub dim: usize,
    pub brackets: Brackets,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraEntry {
    pub name: String,
    pub key: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub dim: usize,
    #[serde(default)]
    pub params: Vec<String>,
    pub brackets: Brackets,
    /// class of the nilshadow, e.g. `"rh3"`
    pub nilshadow: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(default)]
    pub samples: Vec<BTreeMap<String, ScalarText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<ReferenceSplitting>,
}

/// A witness `g → aff(h)`, either through the coordinates `x0 … xn` of an
/// intermediate algebra (`translation`, `D`, `source_map`) or given directly
/// by `images`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub g: String,
    pub h: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub when: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    /// `translation[p] = k` puts coordinate `x_k` in slot `p`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<usize>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Vec<ScalarText>>>,
    /// rows `x0 … xn`, columns `e1 … e_dim g`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_map: Option<Vec<Vec<ScalarText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<ImageJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedEntry {
    pub g: String,
    pub h: String,
    /// predicate in the parameters of `g`
    pub exists: String,
    #[serde(default)]
    pub samples: Vec<BTreeMap<String, ScalarText>>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    algebras: Vec<AlgebraEntry>,
    witnesses: Vec<WitnessEntry>,
    expected: Vec<ExpectedEntry>,
}

/// Lowercase, `'`/`′` spelled `prime`, separators dropped.
pub fn normalize(name: &str) -> String {
    name.to_lowercase()
        .replace(['\'', '′'], "prime")
        .chars()
        .filter(|c| !matches!(c, ',' | '_' | ' ' | '{' | '}' | '-'))
        .collect()
}

fn parse<T: for<'de> Deserialize<'de>>(what: &str, src: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| Error::Catalog(format!("{what}: {e}")))
}

fn bind_text(map: &BTreeMap<String, ScalarText>) -> Result<Bindings> {
    map.iter().map(|(k, v)| Ok((k.clone(), v.eval(&Bindings::new())?))).collect()
}

/// `R4`, `ℝ4`, `abelian3`, … → dimension. Lowercase `r4` is a catalog algebra.
fn abelian_dim(name: &str) -> Option<usize> {
    let name = name.trim();
    name.strip_prefix("abelian")
        .or_else(|| name.strip_prefix('R'))
        .or_else(|| name.strip_prefix('ℝ'))
        .and_then(|d| d.parse().ok())
        .filter(|&n| n > 0)
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn builtin() -> Result<Self> {
        Self::from_sources(ALGEBRAS, WITNESSES, EXPECTED)
    }

    pub fn from_sources(algebras: &str, witnesses: &str, expected: &str) -> Result<Self> {
        let c = Catalog {
            algebras: parse("algebras.json", algebras)?,
            witnesses: parse("witnesses.json", witnesses)?,
            expected: parse("expected.json", expected)?,
        };
        c.validate()?;
        Ok(c)
    }

    /// Files missing from `dir` fall back to the built-in ones.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str, default: &str| -> Result<String> {
            let p = dir.join(name);
            if p.exists() {
                std::fs::read_to_string(&p).map_err(|e| Error::Catalog(format!("{}: {e}", p.display())))
            } else {
                Ok(default.to_string())
            }
        };
        if !dir.is_dir() {
            return Err(Error::Catalog(format!("{} is not a directory", dir.display())));
        }
        Self::from_sources(
            &read("algebras.json", ALGEBRAS)?,
            &read("witnesses.json", WITNESSES)?,
            &read("expected.json", EXPECTED)?,
        )
    }

    fn validate(&self) -> Result<()> {
        for a in &self.algebras {
            if a.key != normalize(&a.key) {
                return Err(Error::Catalog(format!("key {:?} is not normalized", a.key)));
            }
            NilpotentClass::from_name(&a.nilshadow)
                .ok_or_else(|| Error::Catalog(format!("{}: unknown nilshadow class {}", a.name, a.nilshadow)))?;
            for s in self.samples(a)? {
                self.build(a, &s)?.check_jacobi()?;
            }
        }
        for w in &self.witnesses {
            self.entry(&w.g)?;
            self.target_algebra(&w.h)?;
            let env = witness::constants(w)?;
            for r in &w.relations {
                if !expr::eval_bool(r, &env)? {
                    return Err(Error::Catalog(format!("witness {} → {}: relation {r} fails", w.g, w.h)));
                }
            }
            if w.images.is_none() && (w.translation.is_none() || w.d.is_none() || w.source_map.is_none()) {
                return Err(Error::Catalog(format!("witness {} → {} is incomplete", w.g, w.h)));
            }
        }
        for e in &self.expected {
            let a = self.entry(&e.g)?;
            self.target_algebra(&e.h)?;
            for s in &e.samples {
                self.bind(a, &bind_text(s)?)?;
            }
        }
        Ok(())
    }

    pub fn algebras(&self) -> &[AlgebraEntry] {
        &self.algebras
    }

    pub fn witnesses(&self) -> &[WitnessEntry] {
        &self.witnesses
    }

    pub fn expected(&self) -> &[ExpectedEntry] {
        &self.expected
    }

    pub fn entry(&self, name: &str) -> Result<&AlgebraEntry> {
        let k = normalize(name);
        self.algebras
            .iter()
            .find(|a| a.key == k || a.aliases.contains(&k))
            .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))
    }

    /// Checks that exactly the entry's parameters are bound and lie in its domain.
    pub fn bind(&self, a: &AlgebraEntry, params: &Bindings) -> Result<Bindings> {
        for p in &a.params {
            if !params.contains_key(p) {
                return Err(Error::Catalog(format!("{} needs parameter {p}", a.name)));
            }
        }
        if let Some(extra) = params.keys().find(|k| !a.params.contains(k)) {
            return Err(Error::Catalog(format!("{} has no parameter {extra}", a.name)));
        }
        if let Some(dom) = &a.domain {
            if !expr::eval_bool(dom, params)? {
                let shown: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                return Err(Error::OutOfDomain(format!("{} at {}", a.name, shown.join(", ")), dom.clone()));
            }
        }
        Ok(params.clone())
    }

    fn build(&self, a: &AlgebraEntry, params: &Bindings) -> Result<LieAlgebra> {
        let env = self.bind(a, params)?;
        AlgebraJson {
            dim: a.dim,
            basis: None,
            brackets: a.brackets.clone(),
            params: BTreeMap::new(),
        }
        .build(&env)
    }

    /// Catalog algebras by name; `R{n}` / `abelian{n}` give abelian algebras.
    pub fn get_algebra(&self, name: &str, params: &Bindings) -> Result<LieAlgebra> {
        if let Some(n) = abelian_dim(name) {
            if !params.is_empty() {
                return Err(Error::Catalog(format!("{name} has no parameters")));
            }
            return Ok(LieAlgebra::abelian(n));
        }
        self.build(self.entry(name)?, params)
    }

    /// A nilpotent target algebra and its class.
    pub fn target_algebra(&self, name: &str) -> Result<(LieAlgebra, NilpotentClass)> {
        let h = self
            .get_algebra(name, &Bindings::new())
            .map_err(|_| Error::UnsupportedTarget(name.to_string()))?;
        if !crate::liealg::is_nilpotent(&h) {
            return Err(Error::UnsupportedTarget(format!("{name} is not nilpotent")));
        }
        let class = crate::liealg::identify_nilpotent_dim_le4(&h).map_err(|_| Error::UnsupportedTarget(name.to_string()))?;
        Ok((h, class))
    }

    /// In-domain sample bindings of an entry (one empty binding if it has no parameters).
    pub fn samples(&self, a: &AlgebraEntry) -> Result<Vec<Bindings>> {
        if a.params.is_empty() {
            return Ok(vec![Bindings::new()]);
        }
        if a.samples.len() < 2 {
            return Err(Error::Catalog(format!("{} needs at least two samples", a.name)));
        }
        a.samples.iter().map(|s| self.bind(a, &bind_text(s)?)).collect()
    }

    pub fn expected_samples(&self, e: &ExpectedEntry) -> Result<Vec<Bindings>> {
        let a = self.entry(&e.g)?;
        if e.samples.is_empty() {
            return self.samples(a);
        }
        e.samples.iter().map(|s| self.bind(a, &bind_text(s)?)).collect()
    }

    fn expected_entry(&self, g: &str, h: &str) -> Result<Option<&ExpectedEntry>> {
        let key = &self.entry(g)?.key;
        let hk = normalize(h);
        let mut found = None;
        for e in &self.expected {
            if &self.entry(&e.g)?.key == key && normalize(&e.h) == hk {
                found = Some(e);
                break;
            }
        }
        Ok(found)
    }

    /// Whether a simply transitive action is expected, or `None` for pairs the catalog does not cover.
    pub fn expected_result(&self, g: &str, params: &Bindings, h: &str) -> Result<Option<bool>> {
        let a = self.entry(g)?;
        let env = self.bind(a, params)?;
        match self.expected_entry(g, h)? {
            Some(e) => Ok(Some(expr::eval_bool(&e.exists, &env)?)),
            None => Ok(None),
        }
    }

    /// Stored witnesses for `(g, h)` whose condition holds at `params`.
    pub fn matching_witnesses(&self, g: &str, params: &Bindings, h: &str) -> Result<Vec<&WitnessEntry>> {
        let a = self.entry(g)?;
        let env = self.bind(a, params)?;
        let hk = normalize(h);
        let mut out = Vec::new();
        for w in &self.witnesses {
            if self.entry(&w.g)?.key != a.key || normalize(&w.h) != hk {
                continue;
            }
            let holds = match &w.when {
                Some(c) => expr::eval_bool(c, &env)?,
                None => true,
            };
            if holds {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// The first stored witness for `(g, h)` at `params`, as a morphism `g → aff(h)`.
    pub fn get_witness(&self, g: &str, params: &Bindings, h: &str) -> Result<Option<CatalogWitness>> {
        match self.matching_witnesses(g, params, h)?.first() {
            Some(w) => Ok(Some(self.build_witness(w, params)?)),
            None => Ok(None),
        }
    }

    pub fn build_witness(&self, w: &WitnessEntry, params: &Bindings) -> Result<CatalogWitness> {
        let g = self.get_algebra(&w.g, params)?;
        let (h, _) = self.target_algebra(&w.h)?;
        witness::build(w, g, h)
    }

    /// Parameter bindings at which a witness applies: the entry's own samples and
    /// those of the matching expected row, filtered by the witness condition.
    pub fn witness_samples(&self, w: &WitnessEntry) -> Result<Vec<Bindings>> {
        let a = self.entry(&w.g)?;
        let mut pool = self.samples(a)?;
        if let Some(e) = self.expected_entry(&w.g, &w.h)? {
            pool.extend(self.expected_samples(e)?);
        }
        let mut out: Vec<Bindings> = Vec::new();
        for s in pool {
            let holds = match &w.when {
                Some(c) => expr::eval_bool(c, &s)?,
                None => true,
            };
            if holds && !out.contains(&s) {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// The recorded splitting `g′` at `params`, if any.
    pub fn reference_splitting(&self, name: &str, params: &Bindings) -> Result<Option<LieAlgebra>> {
        let a = self.entry(name)?;
        let env = self.bind(a, params)?;
        match &a.splitting {
            Some(r) => Ok(Some(
                AlgebraJson {
                    dim: r.dim,
                    basis: None,
                    brackets: r.brackets.clone(),
                    params: BTreeMap::new(),
                }
                .build(&env)?,
            )),
            None => Ok(None),
        }
    }

    pub fn nilshadow_of(&self, name: &str) -> Result<NilpotentClass> {
        let a = self.entry(name)?;
        NilpotentClass::from_name(&a.nilshadow).ok_or_else(|| Error::Catalog(a.nilshadow.clone()))
    }
}
