//! Whole-catalog verification: nilshadow classes and reference splittings,
//! every stored witness, and the expected verdict of every (g, h) pair at
//! fixed sample parameters.

use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactla::expr::Bindings;
use crate::liealg::signed_permutation_isomorphism;
use crate::splitting::build_splitting;
use crate::transitivity::{
    canonical_witness, check_pair, check_simply_transitive, witness_spectrum_checks, Verdict,
};

/// Samples are fixed in the catalog; no randomness is involved.
pub const SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq)]
pub enum Task {
    Splitting { g: String, params: Bindings },
    Witness { index: usize, params: Bindings },
    Canonical { g: String, params: Bindings },
    Pair { g: String, params: Bindings, h: String, expected: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Splitting,
    Witness,
    Canonical,
    Pair,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub section: Section,
    pub label: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub mismatches: usize,
    pub unknown: usize,
    pub errors: usize,
    pub outcomes: Vec<Outcome>,
}

impl Summary {
    pub fn new(outcomes: Vec<Outcome>) -> Self {
        let unknown = outcomes
            .iter()
            .filter(|o| o.computed.as_deref() == Some(Verdict::Unknown.as_str()))
            .count();
        let errors = outcomes.iter().filter(|o| !o.ok && o.computed.is_none()).count();
        let failed = outcomes.iter().filter(|o| !o.ok).count();
        Summary {
            seed: SEED,
            total: outcomes.len(),
            passed: outcomes.len() - failed,
            mismatches: failed - errors - unknown,
            unknown,
            errors,
            outcomes,
        }
    }

    pub fn success(&self) -> bool {
        self.passed == self.total
    }
}

pub fn format_params(p: &Bindings) -> String {
    if p.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(" [{}]", parts.join(", "))
}

pub fn tasks(c: &Catalog) -> Result<Vec<Task>> {
    let mut out = Vec::new();
    for a in c.algebras() {
        for params in c.samples(a)? {
            out.push(Task::Splitting {
                g: a.name.clone(),
                params: params.clone(),
            });
            out.push(Task::Canonical { g: a.name.clone(), params });
        }
    }
    for (index, w) in c.witnesses().iter().enumerate() {
        let samples = c.witness_samples(w)?;
        if samples.is_empty() {
            return Err(Error::Catalog(format!("witness {} → {} has no sample parameters", w.g, w.h)));
        }
        out.extend(samples.into_iter().map(|params| Task::Witness { index, params }));
    }
    for e in c.expected() {
        let g = c.entry(&e.g)?.name.clone();
        for params in c.expected_samples(e)? {
            let expected = c
                .expected_result(&g, &params, &e.h)?
                .ok_or_else(|| Error::Catalog(format!("no expected result for {g} → {}", e.h)))?;
            out.push(Task::Pair {
                g: g.clone(),
                params,
                h: e.h.clone(),
                expected,
            });
        }
    }
    Ok(out)
}

fn verdict_of(exists: bool) -> Verdict {
    if exists {
        Verdict::Exists
    } else {
        Verdict::Obstructed
    }
}

pub fn run(c: &Catalog, task: &Task) -> Outcome {
    match task {
        Task::Splitting { g, params } => {
            let label = format!("{g}{}", format_params(params));
            let expected = c.nilshadow_of(g).ok().map(|k| k.name());
            match splitting_detail(c, g, params) {
                Ok((class, detail)) => Outcome {
                    section: Section::Splitting,
                    ok: Some(&class) == expected.as_ref() && !detail.starts_with("no "),
                    label,
                    expected,
                    computed: Some(class),
                    detail,
                },
                Err(e) => error(Section::Splitting, label, expected, e),
            }
        }
        Task::Witness { index, params } => {
            let w = &c.witnesses()[*index];
            let label = format!("{} → {}{}", w.g, w.h, format_params(params));
            let expected = Some(Verdict::SimplyTransitive.as_str().to_string());
            let run = || -> Result<(Verdict, String)> {
                let cw = c.build_witness(w, params)?;
                let r = check_simply_transitive(&cw.morphism)?;
                let checks = witness_spectrum_checks(&cw.morphism.target, &cw.generators, &cw.torus)?;
                let spectra_ok = checks.iter().all(|s| s.matches);
                let detail = format!(
                    "dim u = {}, {} torus spectrum check(s) {}",
                    r.u_basis.len(),
                    checks.len(),
                    if spectra_ok { "match" } else { "MISMATCH" }
                );
                let v = if spectra_ok { r.verdict } else { Verdict::NotSimplyTransitive };
                Ok((v, detail))
            };
            match run() {
                Ok((v, detail)) => Outcome {
                    section: Section::Witness,
                    ok: v == Verdict::SimplyTransitive,
                    label,
                    expected,
                    computed: Some(v.as_str().into()),
                    detail,
                },
                Err(e) => error(Section::Witness, label, expected, e),
            }
        }
        Task::Canonical { g, params } => {
            let label = format!("{g}{} → nilshadow", format_params(params));
            let expected = Some(Verdict::SimplyTransitive.as_str().to_string());
            let run = || -> Result<(Verdict, String)> {
                let alg = c.get_algebra(g, params)?;
                let sp = build_splitting(&alg)?;
                let (phi, gens) = canonical_witness(&sp)?;
                let r = check_simply_transitive(&phi)?;
                let torus: Vec<usize> = (0..sp.torus_dim()).collect();
                let checks = witness_spectrum_checks(&phi.target, &gens, &torus)?;
                let spectra_ok = checks.iter().all(|s| s.matches);
                let v = if spectra_ok { r.verdict } else { Verdict::NotSimplyTransitive };
                let class = sp.nilshadow_class.map(|k| k.name()).unwrap_or_default();
                Ok((v, format!("nilshadow {class}, dim u = {}", r.u_basis.len())))
            };
            match run() {
                Ok((v, detail)) => Outcome {
                    section: Section::Canonical,
                    ok: v == Verdict::SimplyTransitive,
                    label,
                    expected,
                    computed: Some(v.as_str().into()),
                    detail,
                },
                Err(e) => error(Section::Canonical, label, expected, e),
            }
        }
        Task::Pair { g, params, h, expected } => {
            let label = format!("{g}{} → {h}", format_params(params));
            let want = verdict_of(*expected);
            match check_pair(c, g, params, h) {
                Ok(r) => {
                    let detail = match (&r.witness, &r.reason) {
                        (Some(w), _) => format!("{} witness", w.source),
                        (None, Some(reason)) => reason.clone(),
                        (None, None) => String::new(),
                    };
                    Outcome {
                        section: Section::Pair,
                        ok: r.verdict == want,
                        label,
                        expected: Some(want.as_str().into()),
                        computed: Some(r.verdict.as_str().into()),
                        detail,
                    }
                }
                Err(e) => error(Section::Pair, label, Some(want.as_str().into()), e),
            }
        }
    }
}

fn error(section: Section, label: String, expected: Option<String>, e: Error) -> Outcome {
    Outcome {
        section,
        label,
        ok: false,
        expected,
        computed: None,
        detail: format!("error: {e}"),
    }
}

/// Nilshadow class, and whether the splitting matches the recorded one up to a signed relabelling.
fn splitting_detail(c: &Catalog, g: &str, params: &Bindings) -> Result<(String, String)> {
    let alg = c.get_algebra(g, params)?;
    let sp = build_splitting(&alg)?;
    let class = sp
        .nilshadow_class
        .map(|k| k.name())
        .ok_or(Error::UnknownAtThisDimension(sp.nilshadow.dim()))?;
    let detail = match c.reference_splitting(g, params)? {
        None => format!("dim g′ = {}", sp.splitting.dim()),
        Some(reference) => {
            let adapted = sp.adapted_splitting()?;
            match signed_permutation_isomorphism(&adapted, &reference) {
                Some(map) => {
                    let shown: Vec<String> = map
                        .iter()
                        .map(|(j, s)| format!("{}e{}", if *s < 0 { "-" } else { "" }, j + 1))
                        .collect();
                    format!("g′ matches the reference via ({})", shown.join(", "))
                }
                None => "no signed relabelling matches the reference g′".to_string(),
            }
        }
    };
    Ok((class, detail))
}

/// Runs every task sequentially.
pub fn run_all(c: &Catalog) -> Result<Summary> {
    let ts = tasks(c)?;
    Ok(Summary::new(ts.iter().map(|t| run(c, t)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_catalog_passes() {
        let c = Catalog::builtin().unwrap();
        let s = run_all(&c).unwrap();
        let bad: Vec<String> = s
            .outcomes
            .iter()
            .filter(|o| !o.ok)
            .map(|o| format!("{:?} {}: {:?} vs {:?} ({})", o.section, o.label, o.expected, o.computed, o.detail))
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert_eq!((s.mismatches, s.unknown, s.errors), (0, 0, 0));
        assert!(s.outcomes.iter().any(|o| o.section == Section::Pair && o.computed.as_deref() == Some("OBSTRUCTED")));
    }

    #[test]
    fn summary_counts() {
        let o = |ok, computed: Option<&str>| Outcome {
            section: Section::Pair,
            label: String::new(),
            ok,
            expected: None,
            computed: computed.map(String::from),
            detail: String::new(),
        };
        let s = Summary::new(vec![o(true, Some("EXISTS")), o(false, Some("UNKNOWN")), o(false, None), o(false, Some("EXISTS"))]);
        assert_eq!((s.total, s.passed, s.mismatches, s.unknown, s.errors), (4, 1, 1, 1, 1));
        assert!(!s.success());
    }
}
