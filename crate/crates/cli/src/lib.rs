//! Command implementations behind the `apolar` binary. Each command returns a
//! [`Report`]; printing and exit codes live in `main.rs`.

pub mod cubics;
pub mod render;
pub mod report;

use std::fmt::Display;
use std::time::Instant;

use apolar::binary::{is_squarefree_binary, middle_catalecticant_rank};
use apolar::poly::basis_len;
use apolar::{
    apolar_profile, binary_profile, border_rank_binary, check_degree_bound_certified, concise_reduce,
    contained_in_limit_apolar, decompose, default_names, default_vars, emit_limit_family, equipotent_generator_count,
    flat_limit_graded, flat_limit_ideal, is_apolar_family, is_concise, parse_poly, plane_apolar_family, refine,
    waring_rank_binary, ApolarProfile, DecomposeOptions, DecompositionCertificate, Error, Field, Matrix, ParamPoly,
    Poly, Ring,
};

pub use report::*;

/// Failure of a command, mapped to an exit code by the binary.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Input(String),
    /// Internal invariant violation or failed self-check: exit code 3.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Options shared by every command.
#[derive(Clone, Debug)]
pub struct Settings {
    pub vars: Option<Vec<String>>,
    pub seed: u64,
    /// Largest `dim T_k` any command may build.
    pub max_degree_guard: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { vars: None, seed: 0, max_degree_guard: 20000 }
    }
}

impl Settings {
    fn vars_for(&self, text: &str) -> Vec<String> {
        self.vars.clone().unwrap_or_else(|| default_vars(text, Ring::S))
    }

    fn guard(&self, n: usize, k: usize) -> CliResult<()> {
        let dim = basis_len(n, k);
        if dim > self.max_degree_guard {
            return Err(CliError::Input(format!(
                "dim T_{k} = {dim} in {n} variables exceeds --max-degree-guard {}",
                self.max_degree_guard
            )));
        }
        Ok(())
    }

    fn options(&self) -> DecomposeOptions {
        DecomposeOptions { seed: self.seed, ..DecomposeOptions::default() }
    }
}

fn parse_form(text: &str, s: &Settings) -> CliResult<(Poly, Vec<String>)> {
    let vars = s.vars_for(text);
    if vars.is_empty() {
        return Err(CliError::Input("no variables".into()));
    }
    let f = parse_poly(text, Ring::S, &vars)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial.into());
    }
    s.guard(f.nvars(), f.degree() + 1)?;
    Ok((f, vars))
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn matrix_rows<K: Field>(m: &Matrix<K>) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

/// Rows of `m` as linear forms over `names`.
fn linear_rows<K: Field>(m: &Matrix<K>, names: &[String]) -> Vec<String> {
    m.rows().iter().map(|r| Poly::linear(Ring::S, r).to_string_with(names)).collect()
}

fn render_profile(f: &Poly) -> CliResult<Profile> {
    let n = f.nvars();
    let p: ApolarProfile = apolar_profile(f)?;
    let dual = default_names(Ring::T, n);
    let generators = p
        .generator_spaces
        .iter()
        .enumerate()
        .filter(|(_, g)| g.dim() > 0)
        .map(|(i, g)| GeneratorDegree {
            degree: i + 1,
            generators: g.polys().iter().map(|q| q.to_string_with(&dual)).collect(),
        })
        .collect();
    let concise = is_concise(f)?;
    let bound = check_degree_bound_certified(f, &p);
    let degree_bound = DegreeBound {
        coarse: bound.coarse,
        holds: bound.holds(),
        strengthened: bound
            .strengthened
            .iter()
            .map(|b| BoundRow { delta: b.delta, degrees: b.degrees.clone(), bound: b.bound, holds: b.holds })
            .collect(),
    };
    let reduced = if concise {
        None
    } else {
        let red = concise_reduce(f)?;
        let m = red.reduced.nvars();
        let vars = default_names(Ring::S, m);
        let names = default_names(Ring::S, n);
        Some(Box::new(Reduced {
            form: red.reduced.to_string_with(&vars),
            vars,
            embedding: linear_rows(red.embedding.matrix(), &names),
            profile: render_profile(&red.reduced)?,
        }))
    };
    Ok(Profile {
        degree: p.d,
        nvars: n,
        hilbert: p.hilbert.clone(),
        beta1: p.beta1.clone(),
        delta: p.delta,
        generators,
        dual_vars: dual,
        concise,
        equipotent_generators: equipotent_generator_count(f)?,
        degree_bound,
        reduced,
    })
}

/// Render a certificate; `names` are the variable names of the form it
/// certifies. Coordinates introduced by the certificate use default names.
pub fn render_certificate<K: Field + Display>(c: &DecompositionCertificate<K>, names: &[String]) -> Certificate {
    match c {
        DecompositionCertificate::NotConcise { reduction, inner } => {
            let m = reduction.reduced.nvars();
            let vars = default_names(Ring::S, m);
            Certificate::NotConcise {
                reduced: reduction.reduced.to_string_with(&vars),
                embedding: linear_rows(reduction.embedding.matrix(), names),
                inner: Box::new(render_certificate(inner, &vars)),
                vars,
            }
        }
        DecompositionCertificate::PowerOfLinearForm { ell, scale } => {
            Certificate::PowerOfLinearForm { linear_form: ell.to_string_with(names), scale: scale.to_string() }
        }
        DecompositionCertificate::DirectSum(ds) => Certificate::DirectSum {
            parts: ds
                .parts
                .iter()
                .map(|p| Part {
                    subspace: linear_rows(p.subspace.basis(), names),
                    summand: p.summand.to_string_with(names),
                })
                .collect(),
            coordinate_change: matrix_rows(ds.coordinate_change.matrix()),
            non_unique: ds.non_unique,
        },
        DecompositionCertificate::LimitNormalForm(nf) => {
            let vars = default_names(Ring::S, nf.h.nvars());
            Certificate::LimitNormalForm {
                k: nf.k,
                basis: matrix_rows(nf.basis.matrix()),
                h: nf.h.to_string_with(&vars),
                g: nf.g.to_string_with(&vars),
                assembled: nf.assembled().to_string_with(&vars),
                vars,
            }
        }
        DecompositionCertificate::NotLimitOfDirectSums { reason } => {
            Certificate::NotLimitOfDirectSums { reason: reason.clone() }
        }
        DecompositionCertificate::DecomposableOverExtension { modulus, inner } => Certificate::DecomposableOverExtension {
            modulus: modulus.to_string(),
            inner: Box::new(render_certificate(inner, names)),
        },
    }
}

pub fn cmd_analyze(text: &str, s: &Settings) -> CliResult<Report> {
    let start = Instant::now();
    let (f, vars) = parse_form(text, s)?;
    let mut r = Report::new("analyze", Input { text: Some(text.into()), vars, seed: None });
    r.profile = Some(render_profile(&f)?);
    r.timing_ms = ms(start);
    Ok(r)
}

/// A converging family for the innermost limit normal form, mapped back
/// through any concise reductions.
fn converging_family(
    f: &Poly,
    cert: &DecompositionCertificate,
    names: &[String],
    s: &Settings,
) -> CliResult<Option<Family>> {
    let mut embeddings: Vec<Matrix> = Vec::new();
    let mut cur = cert;
    while let DecompositionCertificate::NotConcise { reduction, inner } = cur {
        embeddings.push(reduction.embedding.matrix().clone());
        cur = inner;
    }
    let DecompositionCertificate::LimitNormalForm(nf) = cur else { return Ok(None) };
    let fam = emit_limit_family(nf)?;
    let inner_form = fam.limit();
    let mut expr = fam.expression.clone();
    for m in embeddings.iter().rev() {
        expr = expr.substitute(m);
    }
    let apolar = if inner_form.nvars() == 3 {
        let pf = plane_apolar_family(&inner_form, &s.options())?;
        pf.map(|pf| {
            let mut e = pf.family;
            for m in embeddings.iter().rev() {
                e = e.substitute(m);
            }
            ApolarFamily { expression: e.to_string_with(names), certified_apolar: pf.certified_apolar, border_rank: pf.border_rank }
        })
    } else {
        None
    };
    Ok(Some(Family { limit_matches_input: expr.limit() == *f, expression: expr.to_string_with(names), apolar }))
}

pub fn cmd_decompose(text: &str, do_refine: bool, family: bool, s: &Settings) -> CliResult<Report> {
    let start = Instant::now();
    let (f, vars) = parse_form(text, s)?;
    let opts = s.options();
    let mut cert = decompose(&f, &opts)?;
    if do_refine {
        cert = refine(&cert, &f, &opts)?;
    }
    let mut r = Report::new("decompose", Input { text: Some(text.into()), vars: vars.clone(), seed: Some(s.seed) });
    r.profile = Some(render_profile(&f)?);
    r.certificate = Some(render_certificate(&cert, &vars));
    if family {
        r.family = converging_family(&f, &cert, &vars, s)?;
        if let Some(fam) = &r.family {
            if !fam.limit_matches_input {
                return Err(CliError::Internal("family does not converge to the input".into()));
            }
        }
    }
    r.timing_ms = ms(start);
    Ok(r)
}

pub fn cmd_family(text: &str, s: &Settings) -> CliResult<Report> {
    let start = Instant::now();
    let vars = s.vars_for(text);
    if vars.is_empty() {
        return Err(CliError::Input("no variables".into()));
    }
    let fam = ParamPoly::parse(text, &vars)?;
    if fam.is_zero() {
        return Err(Error::ZeroFamily.into());
    }
    let (n, d) = (fam.nvars(), fam.degree());
    s.guard(n, d + 1)?;
    let rep = is_apolar_family(&fam)?;
    let ideal = flat_limit_ideal(&fam)?;
    let dual = default_names(Ring::T, n);
    let mut by_degree: Vec<GeneratorDegree> = Vec::new();
    for g in ideal.generators() {
        let text = g.to_string_with(&dual);
        match by_degree.iter_mut().find(|e| e.degree == g.degree()) {
            Some(e) => e.generators.push(text),
            None => by_degree.push(GeneratorDegree { degree: g.degree(), generators: vec![text] }),
        }
    }
    let limit_dims = (0..=d + 1).map(|k| flat_limit_graded(&fam, k).map(|g| g.dim())).collect::<Result<Vec<_>, _>>()?;
    let limit = fam.limit();
    let mut r = Report::new("family", Input { text: Some(text.into()), vars: vars.clone(), seed: None });
    r.family_analysis = Some(FamilyAnalysis {
        h_generic: rep.h_generic,
        h_at_0: rep.h_at_0,
        is_apolar: rep.is_apolar,
        jump_degrees: rep.jump_degrees,
        limit_concise: !limit.is_zero() && is_concise(&limit)?,
        limit: limit.to_string_with(&vars),
        limit_ideal_generators: by_degree,
        limit_dims,
        contained_in_limit_apolar: contained_in_limit_apolar(&fam)?,
        dual_vars: dual,
    });
    r.timing_ms = ms(start);
    Ok(r)
}

pub fn cmd_binary(text: &str, s: &Settings) -> CliResult<Report> {
    let start = Instant::now();
    let (f, vars) = parse_form(text, s)?;
    let bp = binary_profile(&f)?;
    let dual = default_names(Ring::T, 2);
    let mut r = Report::new("binary", Input { text: Some(text.into()), vars, seed: None });
    r.binary = Some(Binary {
        degree: bp.d,
        r: bp.r,
        gen_low: bp.gen_low.to_string_with(&dual),
        gen_high: bp.gen_high.to_string_with(&dual),
        border_rank: border_rank_binary(&f)?,
        waring_rank: waring_rank_binary(&f)?,
        gen_low_squarefree: is_squarefree_binary(&bp.gen_low),
        middle_catalecticant_rank: middle_catalecticant_rank(&f)?,
    });
    r.timing_ms = ms(start);
    Ok(r)
}

pub fn cmd_cubics(s: &Settings) -> CliResult<Report> {
    let start = Instant::now();
    let mut r = Report::new("cubics", Input { text: None, vars: vec!["x".into(), "y".into(), "z".into()], seed: Some(s.seed) });
    r.checks = cubics::run(s)?;
    r.timing_ms = ms(start);
    Ok(r)
}

/// Quick end-to-end checks of known examples plus the plane cubic table.
pub fn cmd_selftest(s: &Settings) -> CliResult<Report> {
    let start = Instant::now();
    let mut r = Report::new("selftest", Input { text: None, vars: Vec::new(), seed: Some(s.seed) });
    let mut row = |name: &str, form: &str, expected: String, got: String| {
        r.checks.push(CheckRow { name: name.into(), form: Some(form.into()), pass: expected == got, expected, got });
    };
    let beta = |text: &str, n: usize| -> CliResult<String> {
        let (f, _) = parse_form(text, &Settings { vars: Some(default_names(Ring::S, n)), ..s.clone() })?;
        Ok(format!("{:?}", apolar_profile(&f)?.beta1))
    };
    row("xy^2 generators", "x*y^2", "[0, 1, 1, 0]".into(), beta("x*y^2", 2)?);
    row("x^2y - y^2z generators", "x^2*y - y^2*z", "[0, 3, 2, 0]".into(), beta("x^2*y - y^2*z", 3)?);
    row("x^4 generators", "x^4", "[1, 0, 0, 0, 1]".into(), beta("x^4", 2)?);
    let fermat = cmd_decompose("x^3 + y^3 + z^3", true, false, s)?;
    let parts = match fermat.certificate.as_ref().map(|c| c.innermost()) {
        Some(Certificate::DirectSum { parts, .. }) => parts.len().to_string(),
        Some(c) => c.kind().into(),
        None => "none".into(),
    };
    row("Fermat refines into 3 parts", "x^3 + y^3 + z^3", "3".into(), parts);
    let xy2 = cmd_decompose("x*y^2", false, true, s)?;
    let fam = xy2.family.as_ref().map(|f| f.expression.clone()).unwrap_or_default();
    row("xy^2 converging family", "x*y^2", "1/3*t^2*x^3 + t*x^2*y + x*y^2".into(), fam);
    for d in 3..=7 {
        let text = format!("x*y^{}", d - 1);
        let b = cmd_binary(&text, s)?.binary.expect("binary report");
        row(&format!("binary ranks of {text}"), &text, format!("(2, {d})"), format!("({}, {})", b.border_rank, b.waring_rank));
    }
    r.checks.extend(cubics::run(s)?);
    r.timing_ms = ms(start);
    Ok(r)
}
