//! End-to-end acceptance checks. Each criterion prints one line:
//! `[PASS|FAIL] <n> <name>: <detail> (<elapsed> / limit <limit>)`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use widthcert::charclass::{
    bundled, bundled_names, find_xi, hopf_obstruction, is_pin_minus, sphere, width_lower_bound,
    Branch, CharClassError, CircleBundleData, Class, Codim,
};
use widthcert::cli::{run_suite, strip_runtime, Format, Suite, SuiteConfig};
use widthcert::cubical::{build_skeleton, LatticeBasis};
use widthcert::homology::ChainComplexGF2;
use widthcert::nets::{greedy_maximal_net, verify_net, FlatTorus, MIN_DENSITY_SAMPLES};
use widthcert::oracles;
use widthcert::schwarz::{
    dist_to_skeleton, h_value, line_crossing_parity_with_retry, psi0_cochain,
    ruling_sphere_diameter, skeleton, tau_pullback, tau_pushforward, verify_gamma_invariance,
    Host, PairingTable, Point5, DEFAULT_REFINE_DEPTH, HALF_U,
};
use widthcert::spaceform::{
    ball_volume, ball_volume_clamped, fiber_radius_bound, mscal_certificate, mscal_from_volume,
    mscal_scaling_check, unit_ball_volume, FiberBoundInput, SpaceFormQuery,
};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn criterion(id: usize, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_time = elapsed < limit;
    let (ok, detail) = match outcome {
        Ok(d) if in_time => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(e) => (false, e),
    };
    println!(
        "[{}] {id:>2} {name}: {detail} ({:.2}s / limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> Point5 {
    std::array::from_fn(|_| rng.gen::<f64>() * scale)
}

fn cocycle() -> Outcome {
    let z0 = skeleton(Host::Z0, 2);
    let z1 = skeleton(Host::Z1, 2);
    let psi0 = psi0_cochain(&z0);
    let psi1 = tau_pullback(&psi0, &z1);
    let mut counts = Vec::new();
    for (host, complex, psi) in [(Host::Z0, &z0, &psi0), (Host::Z1, &z1, &psi1)] {
        let table = PairingTable::compute(psi, complex, host).map_err(|e| e.to_string())?;
        check(table.entries.len() == 320, format!("{host:?}: {} jailcells", table.entries.len()))?;
        check(table.all_unit(), format!("{host:?}: pairing outside ±1"))?;
        let gamma = verify_gamma_invariance(psi);
        check(gamma.is_invariant(), format!("{host:?}: {} Γ violations", gamma.violations.len()))?;
        counts.push(format!("{host:?} +1:{} -1:{}", table.count(1), table.count(-1)));
    }
    check(tau_pushforward(&psi1, &z0) == psi0, "ψ₁ does not push forward to ψ₀")?;
    Ok(format!("320+320 jailcells pair to ±1 ({}), Γ-invariant, τ round trip exact", counts.join(", ")))
}

fn hypersurface() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut dist, mut anti) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let x = random_point(&mut rng, 4.0);
        for host in [Host::Z0, Host::Z1] {
            dist = dist.max((dist_to_skeleton(&x, host) - oracles::linf_distance_to_skeleton(&x, host)).abs());
        }
        let y: Point5 = std::array::from_fn(|k| x[k] + HALF_U[k]);
        anti = anti.max((h_value(&y) + h_value(&x)).abs());
    }
    check(dist <= 1e-12, format!("distance formula off by {dist:e}"))?;
    check(anti <= 1e-12, format!("antisymmetry off by {anti:e}"))?;
    Ok(format!("10^4 points, max distance error {dist:.1e}, max |h(x+u/2)+h(x)| {anti:.1e} (tol 1e-12)"))
}

fn parity() -> Outcome {
    let mut summary = Vec::new();
    for n in 1..=3i64 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
        let (mut odd, mut even, mut failed, mut retries) = (0, 0, 0, 0);
        for _ in 0..100 {
            let start = random_point(&mut rng, 1.0);
            match line_crossing_parity_with_retry(&start, n, 4000 * n as usize, DEFAULT_REFINE_DEPTH, &mut rng, 8) {
                Ok((1, r)) => {
                    odd += 1;
                    retries += r;
                }
                Ok((_, _)) => even += 1,
                Err(_) => failed += 1,
            }
        }
        check(odd >= 99 && even == 0, format!("n={n}: odd {odd}, even {even}, non-generic {failed}"))?;
        summary.push(format!("n={n}: {odd}/100 odd ({retries} retries)"));
    }
    Ok(summary.join(", "))
}

fn ruling_diameter() -> Outcome {
    let d = ruling_sphere_diameter(64);
    check((1.10..1.50).contains(&d), format!("diameter {d} outside [1.10, 1.50)"))?;
    Ok(format!("diameter at subdiv 64 = {d:.6} in [1.10, 1.50)"))
}

fn obstruction(ring: &widthcert::charclass::CohomRing, e2: Class) -> Result<Option<bool>, String> {
    let b = CircleBundleData::new(ring, e2, 1.0).map_err(|e| e.to_string())?;
    match find_xi(ring, &b) {
        Ok(xi) => hopf_obstruction(ring, &b, &xi).map(Some).map_err(|e| e.to_string()),
        Err(CharClassError::FStarNonzero) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn hopf() -> Outcome {
    let s2 = sphere(2);
    check(obstruction(&s2, s2.basis(2, 0))? == Some(true), "S² Hopf datum is not true")?;
    let cp2 = bundled("cp2").map_err(|e| e.to_string())?;
    check(obstruction(&cp2, cp2.basis(2, 0))? == Some(false), "CP² datum is not false")?;
    check(obstruction(&s2, s2.zero(2))?.is_none(), "e₂ = 0 did not give FStarNonzero")?;
    let mut solvable = 0;
    for name in bundled_names() {
        let ring = bundled(name).map_err(|e| e.to_string())?;
        if !is_pin_minus(&ring) {
            continue;
        }
        let rank = ring.rank(2);
        for mask in 0..1u64 << rank {
            let e2 = Class { degree: 2, coeffs: (0..rank).map(|i| mask >> i & 1 == 1).collect() };
            match obstruction(&ring, e2)? {
                Some(true) => solvable += 1,
                Some(false) => return Err(format!("{name}: Pin⁻ base with vanishing obstruction")),
                None => {}
            }
        }
    }
    Ok(format!("S² true, CP² false, e₂=0 FStarNonzero, {solvable} solvable Pin⁻ data all true"))
}

fn width() -> Outcome {
    for hs in [0.0, 1.0, 2.0, 7.5] {
        for (codim, branch) in [
            (Codim::One, None),
            (Codim::Two, Some(Branch::FStarNonzero)),
            (Codim::Two, Some(Branch::HopfNonzero)),
        ] {
            let r = width_lower_bound(hs, codim, branch).map_err(|e| e.to_string())?;
            check(r.bound == hs / 2.0, format!("HS={hs}: bound {}", r.bound))?;
            check(r.branch == branch.unwrap_or(Branch::Direct), format!("HS={hs}: branch {:?}", r.branch))?;
        }
        check(
            width_lower_bound(hs, Codim::Two, None) == Err(CharClassError::NoCertificate),
            "missing certificate accepted",
        )?;
    }
    Ok("bound = HS/2 exactly with branch recorded; NoCertificate when uncertified".into())
}

fn space_form() -> Outcome {
    let vol = |dim, sigma, radius| ball_volume(SpaceFormQuery { dim, sigma, radius }).map_err(|e| e.to_string());
    let e1 = (vol(3, 0.0, 1.0)? - 4.0 * PI / 3.0).abs() / (4.0 * PI / 3.0);
    check(e1 <= 1e-9, format!("V(3,0,1) rel err {e1:e}"))?;
    let e2 = (vol(3, 6.0, PI)? - 2.0 * PI * PI).abs() / (2.0 * PI * PI);
    check(e2 <= 1e-8, format!("V(3,6,π) rel err {e2:e}"))?;

    let grid: Vec<f64> = (0..50).map(|i| -10.0 + 20.0 * i as f64 / 49.0).collect();
    let vols = grid.iter().map(|&s| vol(3, s, 1.0)).collect::<Result<Vec<_>, _>>()?;
    check(vols.windows(2).all(|w| w[1] < w[0]), "not decreasing in σ")?;

    let r = 1e-2;
    let mut worst_c = 0.0f64;
    for d in 2..=5 {
        for sigma in [-6.0, 6.0] {
            let ratio = vol(d, sigma, r)? / (unit_ball_volume(d) * r.powi(d as i32));
            let resid = (ratio - (1.0 - sigma * r * r / (6.0 * (d + 2) as f64))).abs();
            worst_c = worst_c.max(resid / r.powi(3));
        }
    }
    check(worst_c <= 1.0, format!("Taylor remainder {worst_c:e}·r³"))?;

    let mut trip = 0.0f64;
    for d in 2..=5 {
        for sigma in [-5.0, 0.5, 20.0] {
            let v = ball_volume_clamped(d, sigma, 1.0).map_err(|e| e.to_string())?;
            trip = trip.max((mscal_from_volume(d, v, 1.0).map_err(|e| e.to_string())? - sigma).abs());
        }
    }
    check(trip <= 1e-6, format!("round trip error {trip:e}"))?;

    let mut scale = 0.0f64;
    for lambda in [0.5, 2.0, 3.0] {
        let v = ball_volume_clamped(4, 2.0, 1.0).map_err(|e| e.to_string())?;
        let (a, b) = mscal_scaling_check(4, v, 1.0, lambda).map_err(|e| e.to_string())?;
        scale = scale.max((a - b).abs());
    }
    check(scale <= 1e-6, format!("scaling mismatch {scale:e}"))?;

    let mut certified = 0;
    for d in [2, 3, 4] {
        for sigma in [0.5, 2.0, 10.0] {
            for kappa in [0.0, 1.0, 4.0] {
                let rho = fiber_radius_bound(FiberBoundInput { dim: d, sigma, kappa }).map_err(|e| e.to_string())?;
                check(
                    mscal_certificate(d, sigma, kappa, rho).map_err(|e| e.to_string())?,
                    format!("no certificate at d={d} σ={sigma} κ={kappa}"),
                )?;
                certified += 1;
            }
        }
    }
    Ok(format!(
        "rel errs {e1:.1e}/{e2:.1e}, 50-pt σ-monotone, Taylor C={worst_c:.1e}, round trip {trip:.1e}, scaling {scale:.1e}, {certified}/27 fiber certificates"
    ))
}

fn homology() -> Outcome {
    let mut complexes = Vec::new();
    for (n, period, expected) in [(1usize, 3i64, vec![1, 1]), (2, 3, vec![1, 2, 1]), (3, 2, vec![1, 3, 3, 1])] {
        let lattice = LatticeBasis::cubic(n, period).map_err(|e| e.to_string())?;
        let c = build_skeleton(n, n, &lattice, &vec![0; n]).map_err(|e| e.to_string())?;
        let betti = ChainComplexGF2::from_cubical(&c).map_err(|e| e.to_string())?.betti_numbers();
        check(betti == expected, format!("T^{n}: {betti:?}"))?;
        complexes.push(c);
    }
    complexes.push(skeleton(Host::Z0, 2));
    complexes.push(skeleton(Host::Z1, 2));
    for c in &complexes {
        for k in 2..=c.max_degree() {
            let a = c.boundary_matrix(k - 1).map_err(|e| e.to_string())?;
            let b = c.boundary_matrix(k).map_err(|e| e.to_string())?;
            let prod = a.checked_mul(&b).map_err(|e| e.to_string())?;
            check(prod.is_zero(), format!("∂∂ ≠ 0 in degree {k}"))?;
        }
    }
    let b2 = ChainComplexGF2::from_cubical(&complexes[3]).map_err(|e| e.to_string())?.betti_numbers()[2];
    let oracle = oracles::torus_skeleton_betti(5, 2, 2)[2];
    check(b2 == oracle, format!("b₂ = {b2}, oracle {oracle}"))?;
    Ok(format!("tori Betti exact, ∂² = 0 on {} complexes, b₂(Z₀) = {b2} = oracle", complexes.len()))
}

fn nets() -> Outcome {
    let mut verified = 0;
    for k in 1..=3 {
        let torus = FlatTorus::cube(k, 1.0).map_err(|e| e.to_string())?;
        for delta in [0.1, 0.25, 0.5] {
            let net = greedy_maximal_net(&torus, delta, 7).map_err(|e| e.to_string())?;
            let report = verify_net(&net, &torus, MIN_DENSITY_SAMPLES, 8).map_err(|e| e.to_string())?;
            check(report.passed(), format!("k={k} δ={delta}: {report:?}"))?;
            verified += 1;
        }
    }
    let circle = FlatTorus::cube(1, 1.0).map_err(|e| e.to_string())?;
    let size = greedy_maximal_net(&circle, 0.25, 7).map_err(|e| e.to_string())?.points.len();
    check(size == 4, format!("circle δ=1/4 gave {size} points"))?;
    Ok(format!("{verified}/9 grid nets sparse and dense on 10^4 samples; circle δ=1/4 → {size} points"))
}

fn determinism() -> Outcome {
    let mut config = SuiteConfig::new(Suite::All);
    config.seed = 5;
    let render = |c: &SuiteConfig| -> Result<(bool, String), String> {
        let r = run_suite(c).map_err(|e| e.to_string())?;
        Ok((r.pass, strip_runtime(&r.render(Format::Json))))
    };
    let (pass_a, a) = render(&config)?;
    let (pass_b, b) = render(&config)?;
    check(a == b, "reports differ between runs")?;
    check(pass_a && pass_b, "suite `all` did not pass")?;
    config.format = Format::Tsv;
    check(render(&config)?.1 == render(&config)?.1, "TSV reports differ between runs")?;
    Ok(format!("two runs of `all` byte-identical ({} bytes), exit status 0", a.len()))
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "cocycle", s(5), cocycle),
        criterion(2, "hypersurface", s(10), hypersurface),
        criterion(3, "parity", s(60), parity),
        criterion(4, "ruling diameter", s(30), ruling_diameter),
        criterion(5, "hopf obstruction", s(1), hopf),
        criterion(6, "width arithmetic", s(1), width),
        criterion(7, "space-form kernel", s(30), space_form),
        criterion(8, "homology", s(30), homology),
        criterion(9, "nets", s(20), nets),
        criterion(10, "determinism", s(120), determinism),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
