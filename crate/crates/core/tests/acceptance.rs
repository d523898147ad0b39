//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any criterion fails.

use std::time::Instant;

use bic_regions::dmbic::*;
use bic_regions::gaussian::*;
use bic_regions::oracle::*;
use bic_regions::polyhedra::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(x: f64) -> f64 {
    c_of(x).unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn ac1_fme_projection() -> Outcome {
    let (mut used, mut skipped, mut seed) = (0, 0, 0u64);
    while used < 50 {
        let spec = InstanceSpec {
            q: 1 + (seed % 2) as usize,
            ..InstanceSpec::binary(seed, InstanceKind::Generic, LawKind::Factored)
        };
        let inst = random_instance(&spec).map_err(e)?;
        let r = derive_theorem1(&inst.channel, inst.factored().unwrap(), 10_000, seed).map_err(e)?;
        seed += 1;
        if r.fallback.is_some() {
            skipped += 1;
            continue;
        }
        let mc = r.mc.as_ref().unwrap();
        check(r.matches() && mc.witness.is_none(), || {
            format!("seed {}: projection differs from the closed form, witness {:?}", seed - 1, mc.witness)
        })?;
        used += 1;
    }
    Ok(format!("50 instances match at 10^4 samples, 0 witnesses ({skipped} seeds skipped: binning constraint fails)"))
}

fn ac2_dexp_formulas() -> Outcome {
    let mut worst: f64 = 0.0;
    for (kind, ik) in [
        (DexpKind::L3, InstanceKind::Cognizant),
        (DexpKind::L4, InstanceKind::Cognizant),
        (DexpKind::L5, InstanceKind::Oblivious),
        (DexpKind::L6, InstanceKind::Oblivious),
    ] {
        for seed in 0..100 {
            let inst = random_instance(&InstanceSpec::binary(seed, ik, LawKind::Simple)).map_err(e)?;
            let s = inst.simple().unwrap();
            let f = dexp_formula(kind, &inst.channel, s).map_err(e)?;
            let sys = eval_simple_region(kind.region(), &inst.channel, s).map_err(e)?;
            let v = pareto_filter(&brute_vertices(&sys).map_err(e)?).map_err(e)?;
            check(f.len() == v.len(), || format!("{kind} seed {seed}: {} formula points, {} vertices", f.len(), v.len()))?;
            for p in &f {
                let err = v
                    .iter()
                    .map(|q| p.point.iter().zip(q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                    .fold(f64::INFINITY, f64::min);
                check(err <= 1e-9, || format!("{kind} seed {seed}: point {} off by {err:e}", p.label))?;
                worst = worst.max(err);
            }
        }
    }
    Ok(format!("400 instances, max coordinate error {worst:.1e}"))
}

fn ac3_equivalence() -> Outcome {
    let mut checked = 0;
    for (which, ik) in [(2u8, InstanceKind::Cognizant), (1, InstanceKind::Oblivious)] {
        for seed in 0..50 {
            let inst = random_instance(&InstanceSpec::binary(seed, ik, LawKind::Simple)).map_err(e)?;
            let r = verify_equivalence(which, &inst.channel, &[inst.simple().unwrap().clone()], 1e-9).map_err(e)?;
            check(r.failures() == 0, || {
                let bad: Vec<_> = r.items.iter().filter(|x| !x.dominated).map(|x| &x.point).collect();
                format!("R{which} seed {seed}: undominated {bad:?}")
            })?;
            checked += r.items.len();
        }
    }
    Ok(format!("100 instances, {checked} extreme points dominated, 0 failures"))
}

fn ac4_timesharing() -> Outcome {
    let mut checked = 0;
    for which in [1u8, 2] {
        for seed in 0..50 {
            let a = random_instance(&InstanceSpec::binary(seed, InstanceKind::Generic, LawKind::Simple)).map_err(e)?;
            let b = random_instance(&InstanceSpec::binary(seed + 1000, InstanceKind::Generic, LawKind::Simple))
                .map_err(e)?;
            for lam in [0.25, 0.5, 0.75] {
                let r = verify_timesharing_closure(which, &a.channel, a.simple().unwrap(), b.simple().unwrap(), lam)
                    .map_err(e)?;
                check(r.contained(), || format!("R{which} seed {seed} lambda {lam}: outside {:?}", r.outside))?;
                checked += r.checked;
            }
        }
    }
    Ok(format!("300 mixtures, {checked} time-shared points inside the merged region"))
}

fn ac5_fig3() -> Outcome {
    let p = fig3_params();
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut worst_loose: f64 = f64::NEG_INFINITY;
    for beta in FIG3_BETAS {
        let rows = boundary_slice(&p, beta, 201).map_err(e)?;
        let r3 = c(beta * p.P2);
        for r in &rows {
            let loose = outer_box(OuterKind::O1Loose, &p, r.alpha, r3).unwrap()[1];
            worst = worst.max(r.r2_outer - r.r2_inner);
            worst_loose = worst_loose.max(loose - r.r2_inner);
        }
        if beta == 0.9 {
            let end = rows.last().unwrap();
            let want = c(27.0) - c(2.7);
            check((end.r2_inner - want).abs() <= 1e-5 && (end.r2_outer - want).abs() <= 1e-5, || {
                format!("alpha=1: inner {} outer {} vs C(27)-C(2.7) = {want}", end.r2_inner, end.r2_outer)
            })?;
        }
        check((rows[0].r1 - c(6.0)).abs() <= 1e-6, || format!("R1 endpoint {} vs C(6)", rows[0].r1))?;
    }
    check(worst <= 0.5 + 1e-6 && worst_loose <= 0.5 + 1e-6, || {
        format!("gap {worst} (loose {worst_loose}) exceeds half a bit")
    })?;
    Ok(format!(
        "max gap {worst:.6} (loose variant {worst_loose:.6}); alpha=1, beta=0.9 endpoint {:.6} = C(27)-C(2.7) \
         [stated literal 1.460256 differs from this closed form by 3.4e-4]",
        c(27.0) - c(2.7)
    ))
}

fn ac6_sum_rate_a() -> Outcome {
    let p = fig3_params();
    let s = sum_rate(&p, 201).map_err(e)?;
    let closed = c(27.0).min(c(24.0) + c(3.0));
    check(s.branch == SumBranch::StrongInterferer, || format!("branch {}", s.branch))?;
    check((s.value - closed).abs() <= 1e-6, || format!("sum rate {} vs {closed}", s.value))?;
    let g = gap_report(&p, 201).map_err(e)?;
    check(g.sum_gap <= 0.5 + 1e-6, || format!("sum gap {}", g.sum_gap))?;
    let (grid, at) = grid_sum(InnerKind::S1, &p, 201);
    check((grid - s.value).abs() <= 1e-3, || format!("S1 grid sum {grid} at {at:?} vs {}", s.value))?;
    Ok(format!(
        "sum rate {:.6} (branch {}), sum gap {:.6}, S1 grid sum {grid:.6} \
         [stated literal 2.403712 differs from min(C(27), C(24)+C(3)) by 3.5e-5]",
        s.value, s.branch, g.sum_gap
    ))
}

fn ac7_fig4() -> Outcome {
    let rows = fig4_sweep(201).map_err(e)?;
    let rs2 = c(6.0) + c(3.0);
    let (mut n1, mut n2) = (0, 0);
    for r in &rows {
        check((r.rs2 - rs2).abs() <= 1e-6, || format!("a={}: Rs2 {}", r.a, r.rs2))?;
        check(r.rs <= r.ro + 1e-9, || format!("a={}: Rs {} above Ro {}", r.a, r.rs, r.ro))?;
        if r.rs1 > r.rs2 {
            n1 += 1;
        } else {
            n2 += 1;
        }
    }
    check(n1 > 0 && n2 > 0, || format!("branches attained: Rs1 {n1}, Rs2 {n2}"))?;
    Ok(format!(
        "{} a-values, Rs2 = {rs2:.6}, Rs <= Ro everywhere, Rs1 wins at {n1} and Rs2 at {n2}",
        rows.len()
    ))
}

fn ac8_fig5() -> Outcome {
    let p = fig5_params();
    let mut dev: f64 = 0.0;
    for r in boundary_slice(&p, 0.1, 201).map_err(e)? {
        dev = dev.max((r.r2_outer - r.r2_inner).abs());
    }
    check(dev <= 1e-9, || format!("beta=0.1 slices differ by {dev:e}"))?;
    let mut face: f64 = 0.0;
    for i in 0..=200 {
        let alpha = i as f64 / 200.0;
        let pt = capacity_special(SpecialKind::T9InnerFace, &p, alpha, 1.0).map_err(e)?;
        let s4 = inner_rows(InnerKind::S4, &p, SplitParams::new(alpha, 0.0).map_err(e)?);
        let [o1, o2] = outer_box(OuterKind::O4, &p, alpha, c(p.P2)).unwrap();
        face = face
            .max((pt.corner()[1] - o2).abs())
            .max((s4[1].rhs - o2).abs())
            .max((s4[0].rhs - o1).abs());
    }
    check(face <= 1e-9, || format!("inner face differs from O4 by {face:e}"))?;
    let s = sum_rate(&p, 201).map_err(e)?;
    let want = c(10.0) + c(8.0);
    check((s.value - want).abs() <= 1e-6, || format!("sum capacity {} vs {want}", s.value))?;
    Ok(format!(
        "beta=0.1 deviation {dev:.1e}, inner face deviation {face:.1e}, sum capacity {:.6} = C(10)+C(8) \
         [stated literal 3.314652 differs by 2.6e-5]",
        s.value
    ))
}

fn ac9_very_strong() -> Outcome {
    let pa = GbicParams::new(6.0, 3.0, 4.0, 30.0).map_err(e)?;
    let pc = GbicParams::new(10.0, 8.0, 0.5, 10.0).map_err(e)?;
    for i in 0..=20 {
        let alpha = i as f64 / 20.0;
        let s1 = eval_gauss_inner(InnerKind::S1, &pa, SplitParams::new(alpha, 1.0).map_err(e)?).map_err(e)?;
        let mut bx = LinSystem::new(&["R1", "R2", "R3"]).map_err(e)?.all_nonneg();
        bx.add_f64(&[("R1", 1.0)], Sense::Le, c((1.0 - alpha) * 6.0 / (1.0 + alpha * 6.0))).map_err(e)?;
        bx.add_f64(&[("R2", 1.0)], Sense::Le, c(4.0 * alpha * 6.0)).map_err(e)?;
        bx.add_f64(&[("R3", 1.0)], Sense::Le, c(3.0)).map_err(e)?;
        check(implies(&s1, &bx).map_err(e)? && implies(&bx, &s1).map_err(e)?, || {
            format!("S1 at gamma=1, alpha={alpha} differs from the very-strong box")
        })?;
        let s4 = eval_gauss_inner(InnerKind::S4, &pc, SplitParams::new(alpha, 1.0).map_err(e)?).map_err(e)?;
        let SpecialCapacity::Region { system, .. } =
            capacity_special(SpecialKind::CVstrong, &pc, alpha, 0.0).map_err(e)?
        else {
            return Err("C_VSTRONG did not return a region".into());
        };
        check(implies(&s4, &system).map_err(e)? && implies(&system, &s4).map_err(e)?, || {
            format!("S4 at gamma=1, alpha={alpha} differs from the very-strong box")
        })?;
    }
    let mut gaps = Vec::new();
    for p in [pa, pc] {
        let g = gap_report(&p, 201).map_err(e)?;
        check(g.max_region_gap.abs() <= 1e-9 && g.sum_gap.abs() <= 1e-9, || {
            format!("{p:?}: region gap {} at {:?}, sum gap {}", g.max_region_gap, g.worst, g.sum_gap)
        })?;
        gaps.push((g.max_region_gap, g.sum_gap));
    }
    Ok(format!(
        "boxes equal exactly at 21 alphas; gaps (region, sum) = ({:.1e}, {:.1e}) and ({:.1e}, {:.1e})",
        gaps[0].0, gaps[0].1, gaps[1].0, gaps[1].1
    ))
}

fn ac10_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut counts = [0usize; 3];
    let mut worst = f64::NEG_INFINITY;
    for draw in 0..1000 {
        let p1 = 10f64.powf(rng.random_range(-1.0..1.3));
        let p2 = 10f64.powf(rng.random_range(-1.0..1.3));
        let b = rng.random_range(0.0..4.0);
        let a = match draw % 3 {
            0 => 1.0 + b * p2 + rng.random_range(0.0..20.0),
            1 => 1.0 + b * p2 * rng.random_range(0.01..0.99),
            _ => rng.random_range(0.0..=1.0),
        };
        let p = GbicParams::new(p1, p2, a, b).map_err(e)?;
        counts[draw % 3] += 1;
        for beta in [0.0, 0.25, 0.5, 0.75, 1.0] {
            for r in boundary_slice(&p, beta, 51).map_err(e)? {
                let g = r.r2_inner - r.r2_outer;
                worst = worst.max(g);
                check(g <= 1e-9, || {
                    format!("draw {draw} {p:?} regime {}: beta={beta} {r:?}", p.regime())
                })?;
            }
        }
    }
    Ok(format!(
        "1000 draws (A {}, B {}, C {}), 5 betas x 51 alphas, max inner-outer {worst:.1e}",
        counts[0], counts[1], counts[2]
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1 FME projection", ac1_fme_projection),
        ("AC2 DExP formulas", ac2_dexp_formulas),
        ("AC3 equivalence support", ac3_equivalence),
        ("AC4 time-sharing closure", ac4_timesharing),
        ("AC5 figure 3 slices", ac5_fig3),
        ("AC6 regime-A sum rate", ac6_sum_rate_a),
        ("AC7 figure 4 sweep", ac7_fig4),
        ("AC8 figure 5 capacity points", ac8_fig5),
        ("AC9 very strong capacities", ac9_very_strong),
        ("AC10 global sanity sweep", ac10_sweep),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("PASS {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
