//! Plain-text rendering of reports.

use nilaffine::affine::{AffineElement, MorphismReport};
use nilaffine::exactla::Scalar;
use nilaffine::liealg::{LieAlgebra, Subspace};
use nilaffine::splitting::SemisimpleSplitting;
use nilaffine::survey::{Section, Summary};
use nilaffine::transitivity::TransitivityReport;

/// `Σ v_i name_i` as `e2 - 1/2 e3`.
pub fn combination(names: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) if c.is_rational() => (true, rest.to_string()),
            _ => (false, text),
        };
        let coeff = if mag == "1" {
            String::new()
        } else if c.is_rational() {
            format!("{mag} ")
        } else {
            format!("({mag}) ")
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        out.push_str(&coeff);
        out.push_str(name);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn span(names: &[String], s: &Subspace) -> String {
    let parts: Vec<String> = s.basis().iter().map(|v| combination(names, v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub fn brackets(g: &LieAlgebra) -> String {
    let names = g.names();
    let parts: Vec<String> = g
        .nonzero_brackets()
        .iter()
        .map(|(i, j, rhs)| {
            let mut v = vec![Scalar::zero(); g.dim()];
            for (k, c) in rhs {
                v[*k] = c.clone();
            }
            format!("[{}, {}] = {}", names[*i], names[*j], combination(names, &v))
        })
        .collect();
    if parts.is_empty() {
        "abelian".into()
    } else {
        parts.join("; ")
    }
}

fn element(x: &AffineElement) -> String {
    let v: Vec<String> = x.v.iter().map(Scalar::to_string).collect();
    let d: Vec<String> = x
        .d
        .to_rows()
        .iter()
        .map(|r| r.iter().map(Scalar::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("(v = [{}], D = [{}])", v.join(", "), d.join("; "))
}

pub fn splitting(sp: &SemisimpleSplitting) -> String {
    let mut out = String::new();
    let g = &sp.original;
    out.push_str(&format!("g: {}\n", brackets(g)));
    let comp: Vec<String> = sp.complement.iter().map(|v| combination(g.names(), v)).collect();
    out.push_str(&format!("complement of the nilradical: {{{}}}\n", comp.join(", ")));
    out.push_str(&format!("g′ (dim {}): {}\n", sp.splitting.dim(), brackets(&sp.splitting)));
    if let Ok(adapted) = sp.adapted_splitting() {
        out.push_str(&format!("g′ adapted to t ⋉ u: {}\n", brackets(&adapted)));
    }
    let names = sp.splitting.names();
    let nb: Vec<String> = sp.nilshadow_basis.iter().map(|v| combination(names, v)).collect();
    out.push_str(&format!("nilshadow basis: {{{}}}\n", nb.join(", ")));
    match sp.nilshadow_class {
        Some(c) => out.push_str(&format!("nilshadow: {c}\n")),
        None => out.push_str("nilshadow: not identified\n"),
    }
    out
}

pub fn morphism_report(r: &MorphismReport) -> String {
    let mut out = format!("homomorphism: {}\n", if r.passed { "yes" } else { "no" });
    if let Some(i) = r.non_derivation {
        out.push_str(&format!("  D part of φ(e{}) is not a derivation\n", i + 1));
    }
    if let Some((i, j)) = r.first_violation {
        out.push_str(&format!("  φ[e{}, e{}] ≠ [φ e{}, φ e{}]\n", i + 1, j + 1, i + 1, j + 1));
    }
    out.push_str(&format!("injective: {} (kernel dim {})\n", if r.injective { "yes" } else { "no" }, r.kernel_dim));
    out
}

pub fn transitivity(r: &TransitivityReport) -> String {
    let mut out = format!("verdict: {}\n", r.verdict);
    if let Some(reason) = &r.reason {
        out.push_str(&format!("reason: {reason}\n"));
    }
    if let Some(c) = &r.nilshadow_class {
        out.push_str(&format!("nilshadow of g: {c}\n"));
    }
    if let Some(o) = &r.obstruction {
        let what = if o.commuting_pair { "commuting torus pair" } else { "torus generator(s)" };
        out.push_str(&format!("obstruction ({what} vs Der {}): {}\n", o.target, o.polynomials.join("; ")));
    }
    if !r.u_basis.is_empty() || r.projection_rank.is_some() {
        out.push_str(&format!("dim u = {}, dim φ(g) = {}\n", r.u_basis.len(), r.image_dim));
        for x in &r.u_basis {
            out.push_str(&format!("  {}\n", element(x)));
        }
    }
    if let Some(k) = r.projection_rank {
        out.push_str(&format!("rank of translation part of u: {k}\n"));
    }
    if let Some(w) = &r.witness {
        out.push_str(&format!("witness: {}\n", w.source));
        for s in &w.spectrum_checks {
            out.push_str(&format!(
                "  charpoly D(T) = {}, on nilradical {} ({})\n",
                s.derivation_charpoly,
                s.adjoint_charpoly,
                if s.matches { "equal" } else { "DIFFERENT" }
            ));
        }
    }
    out
}

pub fn summary(s: &Summary, verbose: bool) -> String {
    let mut out = format!("seed {}: {} checks\n", s.seed, s.total);
    for section in [Section::Splitting, Section::Witness, Section::Canonical, Section::Pair] {
        let of: Vec<_> = s.outcomes.iter().filter(|o| o.section == section).collect();
        let ok = of.iter().filter(|o| o.ok).count();
        let name = match section {
            Section::Splitting => "splittings",
            Section::Witness => "witnesses",
            Section::Canonical => "canonical actions",
            Section::Pair => "pairs",
        };
        out.push_str(&format!("{name}: {ok}/{} ok\n", of.len()));
    }
    for o in &s.outcomes {
        if verbose || !o.ok {
            out.push_str(&format!(
                "{} {:?} {}: expected {}, got {} ({})\n",
                if o.ok { "ok  " } else { "FAIL" },
                o.section,
                o.label,
                o.expected.as_deref().unwrap_or("-"),
                o.computed.as_deref().unwrap_or("-"),
                o.detail
            ));
        }
    }
    if s.success() {
        out.push_str("PASS\n");
    } else {
        out.push_str(&format!(
            "FAIL: {} mismatches, {} unknown, {} errors\n",
            s.mismatches, s.unknown, s.errors
        ));
    }
    out
}
