//! Command-line driver: pair files, commands and their JSON reports.
//!
//! Structured output goes to stdout as one JSON document with sorted keys and
//! rationals written as `"p/q"`; a short human summary goes to stderr.

use crate::catalog;
use crate::error::Error;
use crate::exponents::{self, ComplexFunctional, ExponentData};
use crate::induction;
use crate::liealg::{AlgebraData, GradedLieAlgebra, Subspace};
use crate::linalg::{self, Vector, Q};
use crate::spherical::{self, SphericalPair, SphericalRootDatum};
use crate::wavefront;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Exact rational read from and written as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&linalg::fmt_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        linalg::parse_q(&s).map(Rat).map_err(serde::de::Error::custom)
    }
}

fn rats(v: &[Q]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn unrats(v: &[Rat]) -> Vector {
    v.iter().map(|r| r.0.clone()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub labels: Vec<String>,
    pub a_basis: Vec<usize>,
    /// `[i, j, k, c]` meaning `[e_i, e_j]` has coefficient `c` on `e_k`.
    pub structure: Vec<(usize, usize, usize, Rat)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Vec<Rat>>>,
    /// Element of `a` selecting the positive roots, hence `p_min`.
    pub regular: Vec<Rat>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExponentSpec {
    /// `(re, im)` per edge basis vector.
    pub chi: Vec<(Rat, Rat)>,
    /// Values on `ω_1..ω_s` followed by the edge basis.
    pub e_lead: Vec<Vec<(Rat, Rat)>>,
    #[serde(default)]
    pub degree_bound: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    /// Basis of `h`, one row per vector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<ExponentSpec>,
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn parse_pair_file(text: &str) -> CliResult<PairFile> {
    let pf: PairFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    if pf.format != 1 {
        return Err(CliError::Parse(format!("unsupported format {}", pf.format)));
    }
    if pf.catalog.is_none() && (pf.algebra.is_none() || pf.subalgebra.is_none()) {
        return Err(CliError::Parse("need either `catalog` or both `algebra` and `subalgebra`".into()));
    }
    Ok(pf)
}

pub fn algebra_spec(g: &GradedLieAlgebra) -> AlgebraSpec {
    let mat = |m: &[Vector]| m.iter().map(|r| rats(r)).collect::<Vec<_>>();
    AlgebraSpec {
        labels: g.labels().to_vec(),
        a_basis: g.a_basis().to_vec(),
        structure: g.structure().iter().map(|(i, j, k, c)| (*i, *j, *k, Rat(c.clone()))).collect(),
        form: Some(mat(g.form())),
        theta: g.theta().map(mat),
        regular: rats(g.regular()),
    }
}

/// Explicit pair file for `(g, h)`.
pub fn explicit_pair(g: &GradedLieAlgebra, h: &Subspace) -> PairFile {
    PairFile {
        format: 1,
        catalog: None,
        algebra: Some(algebra_spec(g)),
        subalgebra: Some(h.basis().iter().map(|b| rats(b)).collect()),
        exponents: None,
    }
}

pub fn load_pair(pf: &PairFile) -> CliResult<(GradedLieAlgebra, Subspace)> {
    if let Some(name) = &pf.catalog {
        let p = catalog::build(name)?;
        return Ok((p.g, p.h));
    }
    let a = pf.algebra.as_ref().expect("checked when parsing");
    let mat = |m: &Vec<Vec<Rat>>| m.iter().map(|r| unrats(r)).collect::<Vec<_>>();
    let data = AlgebraData {
        labels: a.labels.clone(),
        a_basis: a.a_basis.clone(),
        structure: a.structure.iter().map(|(i, j, k, c)| (*i, *j, *k, c.0.clone())).collect(),
        form: a.form.as_ref().map(mat),
        theta: a.theta.as_ref().map(mat),
        regular: unrats(&a.regular),
    };
    let g = GradedLieAlgebra::new(data, true)?;
    let rows = mat(pf.subalgebra.as_ref().expect("checked when parsing"));
    if rows.iter().any(|r| r.len() != g.dim()) {
        return Err(Error::DimensionMismatch(format!("subalgebra rows need {} entries", g.dim())).into());
    }
    Ok((g.clone(), Subspace::new(g.dim(), &rows)))
}

pub fn exponent_data(srd: &SphericalRootDatum, spec: &ExponentSpec) -> CliResult<ExponentData> {
    let cf = |v: &[(Rat, Rat)]| ComplexFunctional {
        re: v.iter().map(|p| p.0 .0.clone()).collect(),
        im: v.iter().map(|p| p.1 .0.clone()).collect(),
    };
    Ok(ExponentData::new(srd, cf(&spec.chi), spec.e_lead.iter().map(|l| cf(l)).collect(), spec.degree_bound)?)
}

#[derive(Parser, Debug)]
#[command(name = "spherical", about = "Exact structure data of real spherical pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Source {
    /// Pair file, or `catalog:NAME`.
    #[arg(long)]
    pair: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Adapted parabolic, T table, monoid, spherical roots and cone.
    Analyze(Source),
    /// The degeneration h_I for a set of spherical roots.
    Degenerate {
        #[command(flatten)]
        source: Source,
        /// Spherical roots by name, e.g. `s1,s3`.
        #[arg(long = "I", default_value = "")]
        subset: String,
    },
    /// Wave-front test and interlacing data.
    Wavefront(Source),
    /// Levi induction for a set of simple roots.
    Induce {
        #[command(flatten)]
        source: Source,
        /// Simple roots by name, e.g. `a1,a2`.
        #[arg(long = "F", default_value = "")]
        simple: String,
    },
    /// Sign twists of h.
    Twists(Source),
    /// Temperedness report for exponent data.
    Exponents {
        #[command(flatten)]
        source: Source,
        /// Exponent file; defaults to the `exponents` block of the pair file.
        #[arg(long)]
        exponents: Option<String>,
    },
    /// List catalog entries, or print one as a pair file.
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
    /// Runs every check on every catalog entry.
    Selftest,
}

fn read_source(s: &str) -> CliResult<PairFile> {
    if let Some(name) = s.strip_prefix("catalog:") {
        return Ok(PairFile { format: 1, catalog: Some(name.into()), algebra: None, subalgebra: None, exponents: None });
    }
    let text = std::fs::read_to_string(s).map_err(|e| CliError::Parse(format!("{s}: {e}")))?;
    parse_pair_file(&text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{s}: {m}")),
        other => other,
    })
}

struct Loaded {
    file: PairFile,
    sp: SphericalPair,
    srd: SphericalRootDatum,
}

fn load(s: &str) -> CliResult<Loaded> {
    let file = read_source(s)?;
    let (g, h) = load_pair(&file)?;
    let sp = spherical::standardize(&g, &h)?;
    let srd = spherical::spherical_roots(&sp)?;
    Ok(Loaded { file, sp, srd })
}

fn r(x: &Q) -> Value {
    Value::String(linalg::fmt_q(x))
}

fn v(x: &[Q]) -> Value {
    Value::Array(x.iter().map(r).collect())
}

fn vs(xs: &[Vector]) -> Value {
    Value::Array(xs.iter().map(|x| v(x)).collect())
}

fn s_name(i: usize) -> String {
    format!("s{}", i + 1)
}

fn s_names(subset: &[usize]) -> Value {
    json!(subset.iter().map(|&i| s_name(i)).collect::<Vec<_>>())
}

fn root_names(g: &GradedLieAlgebra, roots: &[usize]) -> Value {
    json!(roots.iter().map(|&a| g.roots().name_of(g.roots().root(a))).collect::<Vec<_>>())
}

fn cf(c: &ComplexFunctional) -> Value {
    json!({ "re": v(&c.re), "im": v(&c.im) })
}

fn parse_names(text: &str, prefix: char, what: &str) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let k: usize = item
            .strip_prefix(prefix)
            .and_then(|n| n.parse().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| CliError::Parse(format!("bad {what} name `{item}`")))?;
        if !out.contains(&(k - 1)) {
            out.push(k - 1);
        }
    }
    out.sort();
    Ok(out)
}

fn simple_subset(g: &GradedLieAlgebra, text: &str) -> CliResult<Vec<usize>> {
    let simple = g.roots().simple();
    parse_names(text, 'a', "simple root")?
        .into_iter()
        .map(|k| {
            simple
                .get(k)
                .copied()
                .ok_or_else(|| Error::InvalidSubset(format!("no simple root a{}", k + 1)).into())
        })
        .collect()
}

fn analysis(sp: &SphericalPair, srd: &SphericalRootDatum) -> Value {
    let g = &sp.g;
    let rs = g.roots();
    let t_table: Vec<Value> = sp
        .t
        .iter()
        .map(|e| {
            let comps: Vec<Value> = e
                .components
                .iter()
                .map(|(beta, x)| {
                    let b = match beta {
                        spherical::Beta::Zero => "0".to_string(),
                        spherical::Beta::Root(b) => rs.name_of(rs.root(*b)),
                    };
                    json!({ "beta": b, "weight": rs.name_of(&sp.weight_of(e.alpha, beta)), "vector": v(x) })
                })
                .collect();
            json!({ "alpha": rs.name_of(rs.root(e.alpha)), "basis": g.labels()[e.basis_index], "components": comps })
        })
        .collect();
    let gens = srd.cone.generators();
    let roots: Vec<Value> = srd
        .spherical_roots
        .iter()
        .enumerate()
        .map(|(i, w)| json!({ "name": s_name(i), "root": rs.name_of(w), "functional": v(w) }))
        .collect();
    json!({
        "f_q": root_names(g, &sp.f_q),
        "l_cap_h": vs(sp.l_cap_h.basis()),
        "t_table": t_table,
        "monoid_generators": srd.generators.iter().map(|w| rs.name_of(w)).collect::<Vec<_>>(),
        "generators_in_s": srd.generator_coords.iter().map(|c| spherical::s_combination_name(c)).collect::<Vec<_>>(),
        "spherical_roots": roots,
        "rank": srd.rank(),
        "a_h": vs(srd.a_h.basis()),
        "a_z": vs(&srd.a_z),
        "cone": {
            "inequalities": vs(srd.cone.inequalities()),
            "lineality": vs(&gens.lineality),
            "rays": vs(&gens.rays),
            "full": gens.rays.is_empty() && gens.lineality.len() == srd.rank(),
        },
        "edge": vs(&srd.edge),
        "omegas": vs(&srd.omegas),
        "rho_q": v(&exponents::rho_q(sp, srd)),
        "unimodular": sp.is_unimodular(),
    })
}

fn analyze(l: &Loaded, err: &mut String) -> CliResult<Value> {
    let a = analysis(&l.sp, &l.srd);
    let s = if l.srd.s() == 0 {
        "∅".to_string()
    } else {
        (0..l.srd.s()).map(|i| l.sp.g.roots().name_of(&l.srd.spherical_roots[i])).collect::<Vec<_>>().join(", ")
    };
    let cone = if a["cone"]["full"] == json!(true) { "all of a_Z".to_string() } else { format!("{} rays", l.srd.cone.generators().rays.len()) };
    let _ = writeln!(err, "S = {s}, cone = {cone}, edge dimension {}", l.srd.edge.len());
    let mut doc = serde_json::to_value(explicit_pair(&l.sp.g, &l.sp.h)).expect("serializable");
    if let Some(e) = &l.file.exponents {
        doc["exponents"] = serde_json::to_value(e).expect("serializable");
    }
    doc["analysis"] = a;
    Ok(doc)
}

fn degenerate(l: &Loaded, subset: &str, err: &mut String) -> CliResult<Value> {
    let subset = parse_names(subset, 's', "spherical root")?;
    let (h_i, ver) = spherical::verify_degeneration(&l.sp, &l.srd, &subset)?;
    let _ = writeln!(err, "h_I of dimension {}, checks {}", h_i.dim(), if ver.all() { "passed" } else { "FAILED" });
    Ok(json!({
        "subset": s_names(&subset),
        "h_i": vs(h_i.basis()),
        "verification": {
            "subalgebra": ver.subalgebra,
            "same_dim": ver.same_dim,
            "open": ver.open,
            "same_a_cap": ver.same_a_cap,
            "roots_match": ver.roots_match,
            "unimodular": ver.unimodular,
        },
    }))
}

fn wavefront_value(sp: &SphericalPair, srd: &SphericalRootDatum) -> CliResult<Value> {
    let g = &sp.g;
    let rep = wavefront::report(sp, srd)?;
    let subsets: Vec<Value> = rep
        .per_subset
        .iter()
        .map(|i| {
            json!({
                "subset": s_names(&i.subset),
                "j": root_names(g, &i.j),
                "f": root_names(g, &i.f),
                "y": v(&i.y),
                "coefficients": i.coefficients.iter().map(|(k, c)| json!([g.roots().name_of(g.roots().root(*k)), r(c)])).collect::<Vec<_>>(),
                "interlaced": i.interlaced_ok,
            })
        })
        .collect();
    let degeneration = match wavefront::degeneration_check(sp, srd)? {
        Some(d) => json!({ "cones_ok": d.cones_ok, "direct_checked": d.direct_checked, "direct_ok": d.direct_ok }),
        None => Value::Null,
    };
    let formula = if rep.is_wavefront { json!(wavefront::pi_sigma_formula_check(sp, srd)?) } else { Value::Null };
    Ok(json!({
        "is_wavefront": rep.is_wavefront,
        "by_projection": wavefront::wavefront_by_projection(sp, srd)?,
        "by_pi_sigma": wavefront::wavefront_by_pi_sigma(sp, srd)?,
        "pi_sigma": rep.pi_sigma.iter().enumerate().map(|(i, p)| json!({ "root": s_name(i), "simple": root_names(g, p) })).collect::<Vec<_>>(),
        "pi_sigma_formula": formula,
        "subsets": subsets,
        "degeneration": degeneration,
    }))
}

fn induce(l: &Loaded, simple: &str, err: &mut String) -> CliResult<Value> {
    let sp = &l.sp;
    let f = simple_subset(&sp.g, simple)?;
    let ip = induction::induce(sp, &f)?;
    let srd_f = spherical::spherical_roots(&ip.pair)?;
    let cone_ok = induction::induced_cone_check(sp, &l.srd, &f)?;
    let unimodular = ip.g_f.is_unimodular(&ip.h_f)?;
    let modular = match induction::modular_character(sp, &ip) {
        Ok((cap, values)) => json!({ "basis": vs(cap.basis()), "values": v(&values) }),
        Err(Error::ParentNotUnimodular) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let _ = writeln!(err, "g_F of dimension {}, cone identity {}, unimodular {}", ip.g_f.dim(), cone_ok, unimodular);
    Ok(json!({
        "f": root_names(&sp.g, &f),
        "g_f_labels": ip.keep.iter().map(|&i| sp.g.labels()[i].clone()).collect::<Vec<_>>(),
        "h_f": vs(ip.h_f_in_parent().basis()),
        "f_q_f": root_names(&ip.g_f, &ip.pair.f_q),
        "spherical_roots_f": srd_f.spherical_roots.iter().map(|w| ip.g_f.roots().name_of(w)).collect::<Vec<_>>(),
        "cone_identity": cone_ok,
        "unimodular": unimodular,
        "modular_character": modular,
    }))
}

fn twists(l: &Loaded, err: &mut String) -> CliResult<Value> {
    let tw = spherical::sign_twists(&l.sp, &l.srd)?;
    let _ = writeln!(err, "{} sign twists, all verified (candidates)", tw.len());
    Ok(json!({
        "twists": tw.iter().map(|(c, h)| json!({
            "signs": c.0,
            "basis": vs(h.basis()),
            "verified": true,
            "status": "candidate",
        })).collect::<Vec<_>>(),
    }))
}

fn exponents_value(sp: &SphericalPair, srd: &SphericalRootDatum, ed: &ExponentData) -> CliResult<Value> {
    let tempered = exponents::is_tempered(sp, srd, ed);
    let mut out = json!({
        "lambda_v_eta": v(&exponents::lambda_v_eta(srd, ed)),
        "rho_q": v(&exponents::rho_q(sp, srd)),
        "is_tempered": tempered,
        "strong_inequality": exponents::strong_inequality(sp, srd, ed),
        "degree_bound": ed.degree_bound,
        "optimal": Value::Null,
        "pipeline": Value::Null,
    });
    if !tempered {
        return Ok(out);
    }
    let rep = exponents::optimal_pairs(sp, srd, ed)?;
    let g = &sp.g;
    out["min_eta"] = json!(rep.min_eta);
    out["optimal"] = json!(rep
        .optimal
        .iter()
        .map(|o| json!({
            "lambda": o.lambda,
            "subset": s_names(&o.subset),
            "mu": cf(&o.mu),
            "lambda_i": v(&o.lambda_i),
            "omega_sigma_i": vs(&o.omega_sigma_i),
            "f_i": o.f_i.as_ref().map(|f| root_names(g, f)),
            "status": o.status,
        }))
        .collect::<Vec<_>>());
    if wavefront::is_wavefront(sp, srd)? {
        let steps = exponents::embedding_pipeline(sp, srd, ed)?;
        out["pipeline"] = json!(steps
            .iter()
            .map(|st| json!({
                "lambda": st.lambda,
                "subset": s_names(&st.subset),
                "f": root_names(g, &st.f),
                "parabolic_dim": st.parabolic.dim(),
                "levi_dim": st.levi.dim(),
                "h_prime": vs(st.h_prime.basis()),
            }))
            .collect::<Vec<_>>());
    }
    Ok(out)
}

fn exponents_cmd(l: &Loaded, file: Option<&str>, err: &mut String) -> CliResult<Value> {
    let spec = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
            serde_json::from_str::<ExponentSpec>(&text)
                .map_err(|e| CliError::Parse(format!("{path}: {e}")))?
        }
        None => l.file.exponents.clone().ok_or_else(|| CliError::Parse("no exponent data given".into()))?,
    };
    let ed = exponent_data(&l.srd, &spec)?;
    let out = exponents_value(&l.sp, &l.srd, &ed)?;
    let _ = writeln!(err, "tempered: {}, strong inequality: {}", out["is_tempered"], out["strong_inequality"]);
    Ok(out)
}

fn catalog_cmd(name: Option<&str>, err: &mut String) -> CliResult<Value> {
    match name {
        Some(n) => {
            let p = catalog::build(n)?;
            let _ = writeln!(err, "{n}: dimension {}", p.g.dim());
            Ok(serde_json::to_value(explicit_pair(&p.g, &p.h)).expect("serializable"))
        }
        None => {
            let list: Vec<Value> = catalog::entries()
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "algebra": e.algebra.name(),
                        "kind": format!("{:?}", e.kind),
                        "expected": {
                            "rank": e.expected.rank,
                            "spherical_roots": e.expected.spherical_roots,
                            "wavefront": e.expected.wavefront,
                            "unimodular": e.expected.unimodular,
                            "f_q_size": e.expected.f_q_size,
                        },
                    })
                })
                .collect();
            let _ = writeln!(err, "{} entries", list.len());
            Ok(json!({ "entries": list, "metadata_only": catalog::KRAMER_LIST }))
        }
    }
}

/// Every invariant check for one catalog entry, as named booleans.
pub fn selftest_entry(name: &str) -> std::result::Result<Vec<(String, bool)>, Error> {
    let e = catalog::entry(name)?;
    let p = catalog::build(name)?;
    let sp = spherical::standardize(&p.g, &p.h)?;
    let srd = spherical::spherical_roots(&sp)?;
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut add = |k: String, ok: bool| checks.push((k, ok));
    let wf = wavefront::is_wavefront(&sp, &srd)?;
    add(
        "expected".into(),
        srd.rank() == e.expected.rank
            && srd.s() == e.expected.spherical_roots
            && wf == e.expected.wavefront
            && sp.is_unimodular() == e.expected.unimodular
            && sp.f_q.len() == e.expected.f_q_size,
    );
    for subset in spherical::index_subsets(srd.s()) {
        let (_, ver) = spherical::verify_degeneration(&sp, &srd, &subset)?;
        add(format!("degenerate {:?}", subset.iter().map(|&i| s_name(i)).collect::<Vec<_>>()), ver.all());
    }
    add(
        "wavefront methods agree".into(),
        wavefront::wavefront_by_projection(&sp, &srd)? == wavefront::wavefront_by_pi_sigma(&sp, &srd)?,
    );
    if wf {
        add("pi_sigma formula".into(), wavefront::pi_sigma_formula_check(&sp, &srd)?);
        let rep = wavefront::report(&sp, &srd)?;
        add("interlacing".into(), rep.per_subset.iter().all(|i| i.interlaced_ok));
        let d = wavefront::degeneration_check(&sp, &srd)?.expect("wave-front");
        add("degenerations wave-front".into(), d.cones_ok && d.direct_ok);
    }
    let simple = sp.g.roots().simple().to_vec();
    for f in spherical::index_subsets(simple.len()) {
        let f: Vec<usize> = f.iter().map(|&i| simple[i]).collect();
        if !sp.f_q.iter().all(|a| f.contains(a)) {
            continue;
        }
        let ok = induction::induce(&sp, &f).is_ok() && induction::induced_cone_check(&sp, &srd, &f)?;
        add(format!("induce {}", root_names(&sp.g, &f)), ok);
    }
    if sp.is_unimodular() {
        add("modular character on the edge".into(), induction::hat_modular_check(&sp, &srd)?);
    }
    add("sign twists".into(), spherical::sign_twists(&sp, &srd).is_ok());
    Ok(checks)
}

fn selftest(err: &mut String) -> CliResult<Value> {
    let names: Vec<&'static str> = catalog::entries().iter().map(|e| e.name).collect();
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|n| s.spawn(move || selftest_entry(n))).collect();
        handles.into_iter().map(|h| h.join().expect("selftest thread")).collect()
    });
    let mut passed = true;
    let mut entries = Vec::new();
    for (n, res) in names.iter().zip(results) {
        match res {
            Ok(checks) => {
                let ok = checks.iter().all(|c| c.1);
                passed &= ok;
                let _ = writeln!(err, "{} {n}", if ok { "pass" } else { "FAIL" });
                entries.push(json!({
                    "name": n,
                    "passed": ok,
                    "checks": checks.iter().map(|(k, b)| json!([k, b])).collect::<Vec<_>>(),
                }));
            }
            Err(e) => {
                passed = false;
                let _ = writeln!(err, "FAIL {n}: {e}");
                entries.push(json!({ "name": n, "passed": false, "error": e.to_string() }));
            }
        }
    }
    Ok(json!({ "entries": entries, "passed": passed }))
}

/// Runs the command line `args` (without the program name) and returns the
/// exit code, stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("spherical")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { (2, String::new(), text) } else { (0, text, String::new()) };
        }
    };
    let mut err = String::new();
    let result = match &cli.command {
        Command::Analyze(s) => load(&s.pair).and_then(|l| analyze(&l, &mut err)),
        Command::Degenerate { source, subset } => load(&source.pair).and_then(|l| degenerate(&l, subset, &mut err)),
        Command::Wavefront(s) => load(&s.pair).and_then(|l| {
            let out = wavefront_value(&l.sp, &l.srd)?;
            let _ = writeln!(err, "wavefront: {}", out["is_wavefront"]);
            Ok(out)
        }),
        Command::Induce { source, simple } => load(&source.pair).and_then(|l| induce(&l, simple, &mut err)),
        Command::Twists(s) => load(&s.pair).and_then(|l| twists(&l, &mut err)),
        Command::Exponents { source, exponents } => {
            load(&source.pair).and_then(|l| exponents_cmd(&l, exponents.as_deref(), &mut err))
        }
        Command::Catalog { name } => catalog_cmd(name.as_deref(), &mut err),
        Command::Selftest => selftest(&mut err),
    };
    match result {
        Ok(doc) => {
            let code = if doc.get("passed") == Some(&json!(false)) { 1 } else { 0 };
            let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
            out.push('\n');
            (code, out, err)
        }
        Err(CliError::Parse(m)) => (2, String::new(), format!("{err}parse error: {m}\n")),
        Err(CliError::Domain(e)) => (1, String::new(), format!("{err}error: {e}\n")),
    }
}
