//! Acceptance criteria, one pass/fail line each.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherical_core::exponents::{self, ComplexFunctional, ExponentData};
use spherical_core::linalg::{self, Vector, Q};
use spherical_core::spherical::{self, SphericalPair, SphericalRootDatum};
use spherical_core::{catalog, induction, wavefront};
use std::process::Command;

struct Analyzed {
    name: &'static str,
    sp: SphericalPair,
    srd: SphericalRootDatum,
}

fn analyze_all() -> Vec<Analyzed> {
    catalog::entries()
        .into_iter()
        .map(|e| {
            let p = catalog::build(e.name).expect("catalog entry builds");
            let sp = spherical::standardize(&p.g, &p.h).expect("standard position");
            let srd = spherical::spherical_roots(&sp).expect("spherical roots");
            Analyzed { name: e.name, sp, srd }
        })
        .collect()
}

fn find<'a>(all: &'a [Analyzed], name: &str) -> &'a Analyzed {
    all.iter().find(|a| a.name == name).expect("catalog name")
}

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nbar_example(all: &[Analyzed]) -> Outcome {
    for name in ["nbar-sl2", "nbar-sl3"] {
        let a = find(all, name);
        let rank = a.sp.g.a_dim();
        check(a.srd.generators.is_empty(), || format!("{name}: monoid is not {{0}}"))?;
        check(a.srd.s() == 0, || format!("{name}: S is not empty"))?;
        check(a.srd.a_h.dim() == 0 && a.srd.rank() == rank, || format!("{name}: a_Z != a"))?;
        let gens = a.srd.cone.generators();
        check(gens.rays.is_empty() && gens.lineality.len() == rank, || format!("{name}: cone != a_Z"))?;
        check(a.srd.edge.len() == rank, || format!("{name}: edge != a_Z"))?;
    }
    Ok("nbar-sl2, nbar-sl3".into())
}

fn degeneration_suite(all: &[Analyzed]) -> Outcome {
    let mut count = 0;
    for a in all {
        for subset in spherical::index_subsets(a.srd.s()) {
            let (_, v) = spherical::verify_degeneration(&a.sp, &a.srd, &subset).map_err(|e| format!("{}: {e}", a.name))?;
            check(v.subalgebra && v.same_dim && v.open && v.same_a_cap && v.roots_match, || {
                format!("{} I={subset:?}: {v:?}", a.name)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} degenerations"))
}

fn unimodularity_descent(all: &[Analyzed]) -> Outcome {
    let mut count = 0;
    for a in all.iter().filter(|a| a.sp.is_unimodular()) {
        for subset in spherical::index_subsets(a.srd.s()) {
            let h_i = spherical::degenerate(&a.sp, &a.srd, &subset).map_err(|e| e.to_string())?;
            let f = a.sp.g.unimodularity_functional(&h_i).map_err(|e| e.to_string())?;
            check(linalg::is_zero(&f), || format!("{} I={subset:?}: functional {:?}", a.name, linalg::fmt_vec(&f)))?;
            count += 1;
        }
    }
    Ok(format!("{count} degenerations of unimodular pairs"))
}

fn wavefront_cross_validation(all: &[Analyzed]) -> Outcome {
    for a in all {
        let by_a = wavefront::wavefront_by_projection(&a.sp, &a.srd).map_err(|e| e.to_string())?;
        let by_b = wavefront::wavefront_by_pi_sigma(&a.sp, &a.srd).map_err(|e| e.to_string())?;
        check(by_a == by_b, || format!("{}: projection {by_a}, pi_sigma {by_b}", a.name))?;
    }
    let wf = |n: &str| wavefront::is_wavefront(&find(all, n).sp, &find(all, n).srd).unwrap();
    check(wf("triple-so12"), || "triple-so12 should be wave-front".into())?;
    check(!wf("nonwf1-sl3-sp1"), || "(sl3, sp1) should not be wave-front".into())?;
    for n in ["nbar-sl2", "nbar-sl3", "nbar-so13"] {
        check(!wf(n), || format!("{n} should not be wave-front"))?;
    }
    Ok(format!("{} pairs", all.len()))
}

fn wavefront_pairs(all: &[Analyzed]) -> impl Iterator<Item = &Analyzed> {
    all.iter().filter(|a| wavefront::is_wavefront(&a.sp, &a.srd).unwrap())
}

fn pi_sigma_identity(all: &[Analyzed]) -> Outcome {
    let mut count = 0;
    for a in wavefront_pairs(all) {
        let ok = wavefront::pi_sigma_formula_check(&a.sp, &a.srd).map_err(|e| e.to_string())?;
        check(ok, || format!("{}: Π_σ differs from the support formula", a.name))?;
        count += 1;
    }
    Ok(format!("{count} wave-front pairs"))
}

fn interlacing(all: &[Analyzed]) -> Outcome {
    let mut count = 0;
    for a in wavefront_pairs(all) {
        for subset in spherical::index_subsets(a.srd.s()) {
            let ok = wavefront::verify_interlaced(&a.sp, &a.srd, &subset).map_err(|e| format!("{}: {e}", a.name))?;
            check(ok, || format!("{} I={subset:?} not interlaced", a.name))?;
            count += 1;
        }
    }
    Ok(format!("{count} subsets"))
}

fn induction_suite(all: &[Analyzed]) -> Outcome {
    let mut count = 0;
    for a in all {
        let simple = a.sp.g.roots().simple().to_vec();
        for f in spherical::index_subsets(simple.len()) {
            let f: Vec<usize> = f.iter().map(|&i| simple[i]).collect();
            if !a.sp.f_q.iter().all(|x| f.contains(x)) {
                continue;
            }
            // induce asserts openness, l∩h = q_F∩h_F and the rank equality
            let ip = induction::induce(&a.sp, &f).map_err(|e| format!("{} F={f:?}: {e}", a.name))?;
            let cone = induction::induced_cone_check(&a.sp, &a.srd, &f).map_err(|e| e.to_string())?;
            check(cone, || format!("{} F={f:?}: cone identity fails", a.name))?;
            if a.name.starts_with("triple") && f.len() == 2 {
                let uni = ip.g_f.is_unimodular(&ip.h_f).map_err(|e| e.to_string())?;
                check(!uni, || format!("{} F={f:?}: Z_F should not be unimodular", a.name))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} (pair, F)"))
}

fn modular_characters(all: &[Analyzed]) -> Outcome {
    let mut names = Vec::new();
    for a in all.iter().filter(|a| a.sp.is_unimodular() && !a.srd.edge.is_empty()) {
        let ok = induction::hat_modular_check(&a.sp, &a.srd).map_err(|e| e.to_string())?;
        check(ok, || format!("{}: modular character is not -2ρ_Q on the edge", a.name))?;
        names.push(a.name);
    }
    check(!names.is_empty(), || "no unimodular pair with nonzero edge".into())?;
    Ok(names.join(", "))
}

fn random_exponents(rng: &mut ChaCha8Rng, sp: &SphericalPair, srd: &SphericalRootDatum) -> ExponentData {
    let rho = exponents::rho_q(sp, srd);
    let s = srd.s();
    let k = srd.edge.len();
    let rat = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| Q::new(rng.gen_range(lo..=hi).into(), rng.gen_range(1..=3i64).into());
    let chi = ComplexFunctional {
        re: (0..k).map(|j| if rng.gen_bool(0.7) { -rho[s + j].clone() } else { rat(rng, -3, 3) }).collect(),
        im: (0..k).map(|_| rat(rng, -2, 2)).collect(),
    };
    let count = rng.gen_range(1..=4);
    let lead = (0..count)
        .map(|_| {
            let mut re: Vector = (0..s)
                .map(|j| {
                    let shift = match rng.gen_range(0..10) {
                        0..=3 => Q::zero(),
                        4 => rat(rng, -2, 0),
                        _ => rat(rng, 0, 4),
                    };
                    &rho[j] + shift
                })
                .collect();
            let mut im: Vector = (0..s).map(|_| if rng.gen_bool(0.5) { Q::zero() } else { rat(rng, -2, 2) }).collect();
            re.extend(linalg::neg(&chi.re));
            im.extend(linalg::neg(&chi.im));
            ComplexFunctional { re, im }
        })
        .collect();
    ExponentData::new(srd, chi, lead, rng.gen_range(0..4)).expect("edge condition holds by construction")
}

fn exponent_layer(all: &[Analyzed]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut tempered, mut strong, mut pipelines) = (0, 0, 0);
    for n in 0..1000 {
        let a = &all[n % all.len()];
        let (sp, srd) = (&a.sp, &a.srd);
        let ed = random_exponents(&mut rng, sp, srd);
        let rho = exponents::rho_q(sp, srd);
        let big = exponents::lambda_v_eta(srd, &ed);
        let is_t = exponents::is_tempered(sp, srd, &ed);
        let is_s = exponents::strong_inequality(sp, srd, &ed);
        check(!is_s || is_t, || format!("{}: strong but not tempered", a.name))?;
        if !is_t {
            check(
                matches!(exponents::optimal_pairs(sp, srd, &ed), Err(spherical_core::Error::NotTempered)),
                || format!("{}: untempered data accepted", a.name),
            )?;
            continue;
        }
        tempered += 1;
        strong += is_s as usize;
        for l in &ed.e_lead {
            for i in 0..srd.s() {
                check(rho[i] <= big[i] && big[i] <= l.re[i], || format!("{}: squeeze fails", a.name))?;
            }
        }
        let rep = exponents::optimal_pairs(sp, srd, &ed).map_err(|e| format!("{} #{n}: {e}", a.name))?;
        let subsets: Vec<Vec<usize>> =
            ed.e_lead.iter().map(|l| exponents::i_eta_lambda(sp, srd, &ed, l).unwrap()).collect();
        let min = subsets.iter().map(Vec::len).min().unwrap();
        check(!rep.optimal.is_empty(), || format!("{}: no optimal pair", a.name))?;
        for op in &rep.optimal {
            check(op.subset.len() == min, || format!("{}: optimal subset not minimal", a.name))?;
            let pos: Vec<usize> = (0..srd.s()).filter(|j| !op.subset.contains(j)).chain(srd.s()..rho.len()).collect();
            let lam = &ed.e_lead[op.lambda];
            for &p in &pos {
                // ρ_Q = Λ = Re λ on a_I
                check(rho[p] == big[p] && big[p] == lam.re[p], || format!("{}: restriction to a_I", a.name))?;
            }
            // the restriction is a leading exponent for I
            let lead = exponents::lead_i(srd, &ed, &op.subset).unwrap();
            check(lead.contains(&op.mu), || format!("{}: μ not in the leading set", a.name))?;
            for (other, other_subset) in ed.e_lead.iter().zip(&subsets) {
                if pos.iter().all(|&p| other.re[p] == lam.re[p]) {
                    check(other_subset.iter().all(|i| op.subset.contains(i)), || format!("{}: subset inclusion", a.name))?;
                }
            }
            for (w, &k) in op.omega_sigma_i.iter().zip(&op.subset) {
                let c = exponents::adapted_coords(srd, w).unwrap();
                for &j in &op.subset {
                    let expect = if j == k { Q::from_integer(1.into()) } else { Q::zero() };
                    check(c[j] == expect, || format!("{}: σ'(ω_σ,I) != δ", a.name))?;
                }
                let gap = linalg::dot(&linalg::sub(&op.lambda_i, &rho), &c);
                check(gap.is_positive(), || format!("{}: Λ_I - ρ_Q not positive at ω_σ,I", a.name))?;
            }
        }
        if wavefront::is_wavefront(sp, srd).unwrap() {
            exponents::embedding_pipeline(sp, srd, &ed).map_err(|e| format!("{}: pipeline {e}", a.name))?;
            pipelines += 1;
        }
    }
    check(tempered > 100 && strong > 10 && pipelines > 50, || {
        format!("too few interesting instances: {tempered} tempered, {strong} strong, {pipelines} pipelines")
    })?;
    Ok(format!("1000 instances, {tempered} tempered, {strong} strong, {pipelines} pipelines"))
}

fn cli_output(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_spherical")).args(args).output().expect("binary runs");
    let mut bytes = out.status.code().unwrap_or(-1).to_string().into_bytes();
    bytes.extend(out.stdout);
    bytes
}

fn full_catalog_run() -> Vec<u8> {
    let mut bytes = cli_output(&["catalog"]);
    bytes.extend(cli_output(&["selftest"]));
    for e in catalog::entries() {
        let pair = format!("catalog:{}", e.name);
        bytes.extend(cli_output(&["analyze", "--pair", &pair]));
    }
    bytes
}

fn determinism() -> Outcome {
    let first = full_catalog_run();
    let second = full_catalog_run();
    check(first == second, || "CLI output differs between runs".into())?;
    Ok(format!("{} bytes identical", first.len()))
}

#[test]
fn acceptance() {
    let all = analyze_all();
    let results: Vec<(&str, Outcome)> = vec![
        ("N-bar example", nbar_example(&all)),
        ("degeneration suite", degeneration_suite(&all)),
        ("unimodularity descent", unimodularity_descent(&all)),
        ("wave-front cross-validation", wavefront_cross_validation(&all)),
        ("Π_σ identity", pi_sigma_identity(&all)),
        ("interlacing", interlacing(&all)),
        ("induction suite", induction_suite(&all)),
        ("modular characters", modular_characters(&all)),
        ("exponent layer", exponent_layer(&all)),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
