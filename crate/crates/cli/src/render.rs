//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::report::*;

fn list<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn profile(out: &mut String, p: &Profile, indent: &str) {
    let _ = writeln!(out, "{indent}degree {} in {} variables", p.degree, p.nvars);
    let _ = writeln!(out, "{indent}hilbert: ({})", list(&p.hilbert));
    let _ = writeln!(out, "{indent}beta_1,j for j = 1..{}: ({})", p.beta1.len(), list(&p.beta1));
    let _ = writeln!(out, "{indent}max generator degree: {}", p.delta);
    for g in &p.generators {
        let _ = writeln!(out, "{indent}  degree {}: {}", g.degree, g.generators.join(", "));
    }
    let _ = writeln!(out, "{indent}concise: {}", p.concise);
    let _ = writeln!(out, "{indent}equipotent generators: {}", p.equipotent_generators);
    let b = &p.degree_bound;
    let _ = writeln!(out, "{indent}degree bound d <= (delta - 1) n: {}", b.coarse);
    for row in &b.strengthened {
        let _ = writeln!(
            out,
            "{indent}  delta = {}: degrees ({}) give d <= {}: {}",
            row.delta,
            list(&row.degrees),
            row.bound,
            row.holds
        );
    }
    if let Some(r) = &p.reduced {
        let _ = writeln!(out, "{indent}reduced form: {} in ({})", r.form, r.vars.join(", "));
        let _ = writeln!(out, "{indent}embedding: {}", r.embedding.join("; "));
        profile(out, &r.profile, &format!("{indent}  "));
    }
}

fn certificate(out: &mut String, c: &Certificate, indent: &str) {
    let _ = writeln!(out, "{indent}{}", c.kind());
    match c {
        Certificate::NotConcise { reduced, vars, embedding, inner } => {
            let _ = writeln!(out, "{indent}  reduced: {reduced} in ({})", vars.join(", "));
            let _ = writeln!(out, "{indent}  embedding: {}", embedding.join("; "));
            certificate(out, inner, &format!("{indent}  "));
        }
        Certificate::PowerOfLinearForm { linear_form, scale } => {
            let _ = writeln!(out, "{indent}  {scale} * ({linear_form})^d");
        }
        Certificate::DirectSum { parts, non_unique, .. } => {
            for (i, p) in parts.iter().enumerate() {
                let _ = writeln!(out, "{indent}  part {}: span({}) carries {}", i + 1, p.subspace.join(", "), p.summand);
            }
            if *non_unique {
                let _ = writeln!(out, "{indent}  (splitting is not unique)");
            }
        }
        Certificate::LimitNormalForm { k, h, g, assembled, vars, .. } => {
            let _ = writeln!(out, "{indent}  k = {k}, variables ({})", vars.join(", "));
            let _ = writeln!(out, "{indent}  H = {h}");
            let _ = writeln!(out, "{indent}  G = {g}");
            let _ = writeln!(out, "{indent}  F = {assembled}");
        }
        Certificate::NotLimitOfDirectSums { reason } => {
            let _ = writeln!(out, "{indent}  {reason}");
        }
        Certificate::DecomposableOverExtension { modulus, inner } => {
            let _ = writeln!(out, "{indent}  over Q[l]/({modulus})");
            certificate(out, inner, &format!("{indent}  "));
        }
    }
}

pub fn text(r: &Report) -> String {
    let mut out = String::new();
    if let Some(t) = &r.input.text {
        let _ = writeln!(out, "input: {t}  [{}]", r.input.vars.join(", "));
    }
    if let Some(p) = &r.profile {
        profile(&mut out, p, "");
    }
    if let Some(c) = &r.certificate {
        let _ = write!(out, "certificate: ");
        certificate(&mut out, c, "");
    }
    if let Some(f) = &r.family {
        let _ = writeln!(out, "family: {}", f.expression);
        let _ = writeln!(out, "  limit at t = 0 equals input: {}", f.limit_matches_input);
        if let Some(a) = &f.apolar {
            let _ = writeln!(out, "apolar family: {}", a.expression);
            let _ = writeln!(out, "  certified apolar: {}", a.certified_apolar);
        }
    }
    if let Some(a) = &r.family_analysis {
        let _ = writeln!(out, "generic hilbert: ({})", list(&a.h_generic));
        let _ = writeln!(out, "hilbert at t = 0: ({})", list(&a.h_at_0));
        let _ = writeln!(out, "apolar family: {}", a.is_apolar);
        if !a.jump_degrees.is_empty() {
            let _ = writeln!(out, "jumps in degrees: {}", list(&a.jump_degrees));
        }
        let _ = writeln!(out, "limit: {} (concise: {})", a.limit, a.limit_concise);
        let _ = writeln!(out, "flat limit ideal dims: ({})", list(&a.limit_dims));
        for g in &a.limit_ideal_generators {
            let _ = writeln!(out, "  degree {}: {}", g.degree, g.generators.join(", "));
        }
        let _ = writeln!(out, "limit ideal inside apolar ideal of the limit: {}", a.contained_in_limit_apolar);
    }
    if let Some(b) = &r.binary {
        let _ = writeln!(out, "generator degrees: {} and {}", b.r, b.degree + 2 - b.r);
        let _ = writeln!(out, "  {}", b.gen_low);
        let _ = writeln!(out, "  {}", b.gen_high);
        let _ = writeln!(out, "border rank: {}", b.border_rank);
        let _ = writeln!(out, "waring rank: {}", b.waring_rank);
    }
    if !r.checks.is_empty() {
        let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &r.checks {
            let _ = writeln!(
                out,
                "{} {:width$}  expected {}  got {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.got
            );
        }
        let failed = r.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(out, "{} of {} checks passed", r.checks.len() - failed, r.checks.len());
    }
    out
}
