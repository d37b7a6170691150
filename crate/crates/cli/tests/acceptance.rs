//! Acceptance suite: nine criteria, one PASS/FAIL line each. Every check is
//! exact; the process fails if any criterion fails.

use std::process::Command;
use std::time::Instant;

use lieform_core::lie::catalog::{self, Pair};
use lieform_core::obstruction::{Options, PairContext, Reason};
use lieform_core::sullivan::{desk_instances, DeskInstance, PairModel, SpectralSequence};
use lieform_core::transgression::build_transgression;

type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: lieform_core::Error) -> String {
    e.to_string()
}

fn pairs() -> Vec<Pair> {
    catalog::pairs().expect("builtin pairs")
}

fn pair(name: &str) -> Pair {
    pairs().into_iter().find(|p| p.name == name).expect("catalog pair")
}

const DESK_SEEDS: u64 = 50;

fn desk() -> Vec<DeskInstance> {
    desk_instances(0, DESK_SEEDS).expect("desk instances")
}

fn two_path_cohomology() -> Check {
    for p in pairs() {
        let pm = PairModel::build(&p.g, &p.h).map_err(err)?;
        let cap = pm.default_cap();
        let ce = pm.relative_dims(cap).map_err(err)?;
        let model = pm.cohomology_dims(cap).map_err(err)?;
        ensure(ce == model, || format!("{}: relative complex {ce:?}, model {model:?}", p.name))?;
    }
    Ok(())
}

fn equivalence_battery() -> Check {
    for p in pairs() {
        let a = PairContext::new(&p)
            .and_then(|c| c.analyze(&Options::default()))
            .map_err(err)?;
        let bools = a.conditions.booleans();
        ensure(bools.len() == 5, || format!("{}: only {} conditions computed", p.name, bools.len()))?;
        ensure(bools.iter().all(|(_, b)| *b == bools[0].1), || {
            format!("{}: conditions disagree: {bools:?}", p.name)
        })?;
    }
    Ok(())
}

fn rank_identities() -> Check {
    let expected = [
        ("sl2", 1, 0),
        ("so11", 1, 1),
        ("sl2xsl2", 2, 0),
        ("sl3", 2, 1),
        ("su2", 1, 0),
    ];
    for (name, rank, minus) in expected {
        let g = catalog::algebra(name).map_err(err)?;
        let t = build_transgression(&g, None).map_err(err)?;
        let p = t.primitives();
        let got = (p.dim(), p.minus_basis().len());
        ensure(got == (rank, minus), || format!("{name}: (rank, dim P^−θ) = {got:?}, expected ({rank}, {minus})"))?;
        ensure(g.declared_rank() == Some(rank), || format!("{name}: declared rank {:?}", g.declared_rank()))?;
    }
    Ok(())
}

fn rank_criterion_reproduction() -> Check {
    let p = pair("sl2/so11");
    let a = PairContext::new(&p)
        .and_then(|c| c.analyze(&Options::default()))
        .map_err(err)?;
    let v = &a.verdict;
    ensure((v.rank_lhs, v.rank_rhs) == (0, 1), || format!("sl2/so11 ranks {} vs {}", v.rank_lhs, v.rank_rhs))?;
    ensure(v.obstructed && v.reason == Reason::RankCriterion, || format!("sl2/so11 verdict {v:?}"))?;
    ensure(!a.conditions.vii.holds, || "sl2/so11: (vii) holds".into())?;
    let w = a
        .conditions
        .i
        .as_ref()
        .and_then(|o| o.witness.as_ref())
        .ok_or("sl2/so11: no witness for (i)")?;
    ensure(w.degree == 2 && w.cocycle.text == "e*∧f*" && w.primitive.text == "h*", || {
        format!("sl2/so11 witness {} = d({}) in degree {}", w.cocycle.text, w.primitive.text, w.degree)
    })?;

    let p = pair("sl2xsl2/diag");
    let a = PairContext::new(&p)
        .and_then(|c| c.analyze(&Options::default()))
        .map_err(err)?;
    ensure(!a.verdict.obstructed && a.verdict.reason == Reason::NoneFound, || {
        format!("sl2xsl2/diag verdict {:?}", a.verdict)
    })?;
    ensure(a.conditions.booleans().iter().all(|(_, b)| *b), || {
        format!("sl2xsl2/diag conditions {:?}", a.conditions.booleans())
    })
}

fn relative_model_identities(instances: &[DeskInstance]) -> Check {
    ensure(instances.len() >= 50, || format!("only {} instances", instances.len()))?;
    for inst in instances {
        let (m, cap) = (&inst.model, inst.cap);
        let checks = [
            ("δ² = 0", m.differentials_square_to_zero(cap)),
            ("δ_V κ + κ δ_V = 1 − π00", m.homotopy_identity(cap)),
            ("φ intertwines the differentials", m.phi_intertwines(cap)),
            ("1 − φ is nilpotent", m.one_minus_phi_is_nilpotent(cap)),
            ("m ∘ φ = π", m.m_phi_is_pi(cap)),
            ("φ⁻¹ φ = 1", m.phi_inverse_is_inverse(cap)),
            ("m is a chain map", m.m_is_chain_map(cap)),
            ("m is a quasi-isomorphism", m.m_is_quasi_isomorphism(cap).map_err(err)?),
        ];
        for (what, ok) in checks {
            ensure(ok, || format!("seed {}: {what} fails", inst.seed))?;
        }
    }
    Ok(())
}

fn spectral_sequence_convergence(instances: &[DeskInstance]) -> Check {
    let check = |label: &str, ss: &SpectralSequence| {
        ensure(ss.converges_to_target(), || format!("{label}: E_∞ totals differ from the target"))?;
        ensure(ss.edge_factorizes(), || format!("{label}: edge map does not factor through E_∞"))
    };
    for inst in instances {
        let ss = SpectralSequence::new(&inst.model, inst.cap).map_err(err)?;
        check(&format!("seed {}", inst.seed), &ss)?;
    }
    for p in pairs() {
        let ctx = PairContext::new(&p).map_err(err)?;
        let ss = ctx.spectral_sequence(ctx.default_cap()).map_err(err)?;
        check(&p.name, &ss)?;
    }
    Ok(())
}

fn cartan_map_facts() -> Check {
    for name in catalog::algebra_names() {
        let g = catalog::algebra(name).map_err(err)?;
        let t = build_transgression(&g, None).map_err(err)?;
        ensure(t.rho_tau_is_identity().map_err(err)?, || format!("{name}: ρτ ≠ 1"))?;
        for n in (2..=t.cap()).step_by(2) {
            ensure(t.kernel_is_decomposable(n).map_err(err)?, || {
                format!("{name}: ker ρ is not the decomposables in degree {n}")
            })?;
        }
        for n in 0..=t.cap() {
            ensure(t.sym_tau_is_bijective(n), || format!("{name}: sτ is not bijective in degree {n}"))?;
        }
    }
    Ok(())
}

fn chern_weil_kernel() -> Check {
    for p in pairs() {
        let pm = PairModel::build(&p.g, &p.h).map_err(err)?;
        ensure(pm.chern_weil_kernel_is_ideal(pm.default_cap()).map_err(err)?, || {
            format!("{}: ker w′ differs from the restricted ideal", p.name)
        })?;
    }
    Ok(())
}

fn catalog_run(threads: Option<&str>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lieform"));
    cmd.args(["catalog", "run", "--all"]);
    match threads {
        Some(n) => cmd.env("LIEFORM_THREADS", n),
        None => cmd.env_remove("LIEFORM_THREADS"),
    };
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("catalog run exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out.stdout)
}

fn determinism() -> Check {
    let a = catalog_run(None)?;
    let b = catalog_run(None)?;
    ensure(!a.is_empty() && a == b, || "two runs differ".into())?;
    let one = catalog_run(Some("1"))?;
    let eight = catalog_run(Some("8"))?;
    ensure(one == eight, || "LIEFORM_THREADS=1 and =8 differ".into())?;
    ensure(one == a, || "thread-capped run differs from the default".into())
}

fn main() {
    let instances = desk();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("two-path cohomology agreement", Box::new(two_path_cohomology)),
        ("equivalence battery", Box::new(equivalence_battery)),
        ("rank identities", Box::new(rank_identities)),
        ("rank criterion reproduction", Box::new(rank_criterion_reproduction)),
        ("relative model identities", Box::new(|| relative_model_identities(&instances))),
        ("spectral sequence convergence", Box::new(|| spectral_sequence_convergence(&instances))),
        ("Cartan map facts", Box::new(cartan_map_facts)),
        ("Chern-Weil kernel", Box::new(chern_weil_kernel)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {}. {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
