use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charclass::{
    bundled, bundled_names, find_xi, generate, hopf_obstruction, is_pin_minus, product,
    real_projective, sphere, width_lower_bound, wu_class, Branch, CharClassError,
    CircleBundleData, Class, CohomRing, Codim,
};
use crate::cubical::{build_skeleton, CubicalCell, CubicalComplex, LatticeBasis};
use crate::homology::{Chain2, ChainComplexGF2};
use crate::nets::{
    construction1_diameter, greedy_maximal_net, verify_net, FlatTorus, MIN_DENSITY_SAMPLES,
};
use crate::oracles;
use crate::schwarz::{
    all_jailcells, dist_to_skeleton, h_value, jailcell_chain, line_crossing_parity_with_retry,
    on_hypersurface, psi0_cochain, retraction_image_chain, ruling_sphere_diameter, skeleton,
    tau_pullback, tau_pushforward, taming_pairing, verify_gamma_invariance, dual_jailcell, Host,
    PairingTable, Point5, RulingSphereSpec, DEFAULT_REFINE_DEPTH, HALF_U,
};
use crate::spaceform::{
    ball_volume, ball_volume_clamped, fiber_radius_bound, mscal_certificate, mscal_from_volume,
    mscal_scaling_check, unit_ball_volume, FiberBoundInput, SpaceFormQuery,
};

use super::report::{CheckRecord as R, ReportConfig};
use super::{load_ring, CliError, Report, Suite, SuiteConfig};

type Records = Vec<R>;

/// Run a suite and assemble its report.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, CliError> {
    config.validate()?;
    let start = Instant::now();
    let suites: Vec<Suite> = match config.suite {
        Suite::All => vec![
            Suite::Cocycle,
            Suite::Jailcells,
            Suite::Parity,
            Suite::Hopf,
            Suite::Volume,
            Suite::FiberRadius,
            Suite::Net,
            Suite::Homology,
        ],
        s => vec![s],
    };
    let mut records = Vec::new();
    for s in suites {
        records.extend(match s {
            Suite::Cocycle => cocycle(config)?,
            Suite::Jailcells => jailcells(config)?,
            Suite::Parity => parity(config)?,
            Suite::Hopf => hopf(config)?,
            Suite::Volume => volume(config)?,
            Suite::FiberRadius => fiber_radius(config)?,
            Suite::Net => net(config)?,
            Suite::Homology => homology(config)?,
            Suite::All => unreachable!("expanded above"),
        });
    }
    let cfg = ReportConfig {
        n: config.n,
        seed: config.seed,
        tol: config.tol,
    };
    Ok(Report::new(
        config.suite.name(),
        cfg,
        records,
        start.elapsed().as_millis() as u64,
    ))
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn host_tag(h: Host) -> &'static str {
    match h {
        Host::Z0 => "z0",
        Host::Z1 => "z1",
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn cocycle(config: &SuiteConfig) -> Result<Records, CliError> {
    let period = 2 * config.n;
    let z0 = skeleton(Host::Z0, period);
    let z1 = skeleton(Host::Z1, period);
    let psi0 = psi0_cochain(&z0);
    let psi1 = tau_pullback(&psi0, &z1);
    let expected_cells = 320 * config.n.pow(5);
    let mut out = Vec::new();
    for (host, complex, psi) in [(Host::Z0, &z0, &psi0), (Host::Z1, &z1, &psi1)] {
        let tag = host_tag(host);
        let table = PairingTable::compute(psi, complex, host).map_err(internal)?;
        let units = table.entries.iter().filter(|(_, v)| v.abs() == 1).count() as i64;
        out.push(R::exact(
            format!("cocycle.{tag}.jailcell_count"),
            table.entries.len() as i64,
            expected_cells,
            "one jailcell per unit 3-cube of the quotient",
        ));
        out.push(R::exact(
            format!("cocycle.{tag}.pairings_unit"),
            units,
            table.entries.len() as i64,
            "the taming cocycle pairs to ±1 with every jailcell",
        ));
        let gamma = verify_gamma_invariance(psi);
        out.push(R::exact(
            format!("cocycle.{tag}.gamma_invariant"),
            gamma.violations.len() as i64,
            0,
            "the cocycle is invariant under (2ℤ)⁴ ⊕ ⟨u⟩",
        ));
    }
    let back = tau_pushforward(&psi1, &z0);
    let mismatches = psi0
        .iter()
        .filter(|(c, v)| back.get(c) != Some(*v))
        .count() as i64;
    out.push(R::exact(
        "cocycle.tau_round_trip",
        mismatches,
        0,
        "ψ₁ is ψ₀ transported by the half-diagonal shift",
    ));
    Ok(out)
}

fn normalized(chain: &Chain2, complex: &CubicalComplex) -> BTreeMap<CubicalCell, i64> {
    let mut m = BTreeMap::new();
    for (c, v) in chain {
        *m.entry(complex.canonical(c)).or_insert(0) += v;
    }
    m.retain(|_, v| *v != 0);
    m
}

fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> Point5 {
    std::array::from_fn(|_| rng.gen::<f64>() * scale)
}

const HYPERSURFACE_POINTS: usize = 10_000;
const DIAMETER_SUBDIV: usize = 64;

fn jailcells(config: &SuiteConfig) -> Result<Records, CliError> {
    let period = 2 * config.n;
    let z = [skeleton(Host::Z0, period), skeleton(Host::Z1, period)];
    let psi0 = psi0_cochain(&z[0]);
    let psi1 = tau_pullback(&psi0, &z[1]);
    let mut out = Vec::new();
    for (h, host) in [Host::Z0, Host::Z1].into_iter().enumerate() {
        let tag = host_tag(host);
        let own = &z[h];
        let other = &z[1 - h];
        let (mut dual_ok, mut own_empty, mut unit, mut sampled) = (0i64, 0i64, 0i64, 0i64);
        let spheres: Vec<RulingSphereSpec> = own
            .cells(2)
            .iter()
            .map(|c| {
                let anchor: [i64; 5] = std::array::from_fn(|k| c.anchor[k]);
                RulingSphereSpec::centered(host, anchor, [c.dirs[0], c.dirs[1]])
            })
            .collect();
        for s in &spheres {
            let dual = dual_jailcell(s).map_err(internal)?;
            let image = retraction_image_chain(s, host.other()).map_err(internal)?;
            if normalized(&image, other) == normalized(&jailcell_chain(&dual), other) {
                dual_ok += 1;
            }
            if retraction_image_chain(s, host).map_err(internal)?.is_empty() {
                own_empty += 1;
            }
            if taming_pairing(s, &psi0, &psi1).map_err(internal)?.abs() == 1 {
                unit += 1;
            }
            if s.sample_points(4).iter().all(|p| on_hypersurface(p, 1e-12)) {
                sampled += 1;
            }
        }
        let total = spheres.len() as i64;
        let cubes = all_jailcells(other, host.other()).len() as i64;
        out.push(R::exact(
            format!("jailcells.{tag}.sphere_count"),
            total,
            cubes,
            "ruling spheres over one skeleton match jailcells of the other",
        ));
        out.push(R::exact(
            format!("jailcells.{tag}.retraction_is_dual_jailcell"),
            dual_ok,
            total,
            "each ruling sphere retracts onto the boundary of its dual cube",
        ));
        out.push(R::exact(
            format!("jailcells.{tag}.own_skeleton_image_empty"),
            own_empty,
            total,
            "a ruling sphere has no 2-dimensional image on its own skeleton",
        ));
        out.push(R::exact(
            format!("jailcells.{tag}.taming_pairing_unit"),
            unit,
            total,
            "the taming cocycle evaluates to ±1 on every ruling sphere",
        ));
        out.push(R::exact(
            format!("jailcells.{tag}.spheres_on_hypersurface"),
            sampled,
            total,
            "ruling spheres lie on the equidistant hypersurface",
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (mut worst_dist, mut worst_anti) = (0.0f64, 0.0f64);
    for _ in 0..HYPERSURFACE_POINTS {
        let x = random_point(&mut rng, 2.0);
        for host in [Host::Z0, Host::Z1] {
            let d = (dist_to_skeleton(&x, host) - oracles::linf_distance_to_skeleton(&x, host)).abs();
            worst_dist = worst_dist.max(d);
        }
        let shifted: Point5 = std::array::from_fn(|k| x[k] + HALF_U[k]);
        worst_anti = worst_anti.max((h_value(&shifted) + h_value(&x)).abs());
    }
    out.push(R::new(
        "hypersurface.distance_formula",
        worst_dist <= 1e-12,
        worst_dist,
        0.0,
        1e-12,
        "distance to the 2-skeleton is the third-smallest coordinate distance",
    ));
    out.push(R::new(
        "hypersurface.half_shift_antisymmetry",
        worst_anti <= 1e-12,
        worst_anti,
        0.0,
        1e-12,
        "h(x + u/2) = −h(x)",
    ));

    let diam = ruling_sphere_diameter(DIAMETER_SUBDIV);
    out.push(R::new(
        "ruling.diameter",
        (1.10..1.50).contains(&diam),
        diam,
        "[1.10, 1.50)",
        0.0,
        "the ruling spheres are 3/2-small",
    ));
    Ok(out)
}

pub(crate) const PARITY_LINES: usize = 100;
const PARITY_SAMPLES_PER_N: usize = 4000;
const PARITY_RETRIES: usize = 8;

fn parity(config: &SuiteConfig) -> Result<Records, CliError> {
    let mut ns = vec![1, 2, 3];
    if !ns.contains(&config.n) {
        ns.push(config.n);
    }
    let mut out = Vec::new();
    for n in ns {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let (mut odd, mut even, mut nongeneric, mut retries) = (0i64, 0i64, 0i64, 0i64);
        for _ in 0..PARITY_LINES {
            let start = random_point(&mut rng, 1.0);
            let samples = PARITY_SAMPLES_PER_N * n as usize;
            match line_crossing_parity_with_retry(&start, n, samples, DEFAULT_REFINE_DEPTH, &mut rng, PARITY_RETRIES) {
                Ok((p, r)) => {
                    retries += r as i64;
                    if p == 1 {
                        odd += 1;
                    } else {
                        even += 1;
                    }
                }
                Err(_) => nongeneric += 1,
            }
        }
        out.push(R::new(
            format!("parity.n{n}.odd_lines"),
            odd >= 99,
            odd,
            ">= 99",
            0.0,
            "a generic period line of Λₙ crosses the hypersurface an odd number of times",
        ));
        out.push(R::exact(
            format!("parity.n{n}.even_lines"),
            even,
            0,
            "no generic period line crosses an even number of times",
        ));
        out.push(R::new(
            format!("parity.n{n}.nongeneric_after_retries"),
            nongeneric <= 1,
            nongeneric,
            "<= 1",
            0.0,
            "random lines are transverse after small perturbation",
        ));
        out.push(R::new(
            format!("parity.n{n}.perturbations"),
            true,
            retries,
            "recorded",
            0.0,
            "number of start perturbations used",
        ));
    }
    Ok(out)
}

fn all_classes(ring: &CohomRing, degree: usize) -> Vec<Class> {
    let rank = ring.rank(degree);
    (0..1u64 << rank)
        .map(|mask| Class {
            degree,
            coeffs: (0..rank).map(|i| mask >> i & 1 == 1).collect(),
        })
        .collect()
}

fn bundle(ring: &CohomRing, e2: Class) -> Result<CircleBundleData, CliError> {
    CircleBundleData::new(ring, e2, 1.0).map_err(internal)
}

fn hopf(config: &SuiteConfig) -> Result<Records, CliError> {
    let mut out = Vec::new();

    let mut loaded = 0i64;
    for name in bundled_names() {
        let ring = bundled(name).map_err(internal)?;
        if Some(&ring) == generate(name).as_ref() {
            loaded += 1;
        }
    }
    out.push(R::exact(
        "hopf.bundled_rings_valid",
        loaded,
        bundled_names().count() as i64,
        "bundled ring files load, validate and match their generators",
    ));

    let s2 = sphere(2);
    let b = bundle(&s2, s2.basis(2, 0))?;
    let xi = find_xi(&s2, &b).map_err(internal)?;
    out.push(R::exact(
        "hopf.s2_hopf_bundle",
        hopf_obstruction(&s2, &b, &xi).map_err(internal)?,
        true,
        "the Hopf fibration has nonzero mod-2 Hopf invariant",
    ));

    let cp2 = bundled("cp2").map_err(internal)?;
    let b = bundle(&cp2, cp2.basis(2, 0))?;
    let xi = find_xi(&cp2, &b).map_err(internal)?;
    out.push(R::exact(
        "hopf.cp2_vanishes",
        hopf_obstruction(&cp2, &b, &xi).map_err(internal)?,
        false,
        "expected negative: over CP² the mod-2 Hopf invariant is trivial",
    ));
    out.push(R::exact(
        "hopf.cp2_wu_class",
        wu_class(&cp2).to_string(),
        "2.0".to_string(),
        "v₂(CP²) is the generator",
    ));

    let zero = bundle(&s2, s2.zero(2))?;
    out.push(R::exact(
        "hopf.zero_euler_class",
        matches!(find_xi(&s2, &zero), Err(CharClassError::FStarNonzero)),
        true,
        "a trivial Euler class cannot pair to the top class",
    ));

    let (mut solvable, mut nonzero) = (0i64, 0i64);
    for name in bundled_names() {
        let ring = bundled(name).map_err(internal)?;
        if ring.dim() < 2 || !is_pin_minus(&ring) {
            continue;
        }
        for e2 in all_classes(&ring, 2) {
            let b = bundle(&ring, e2)?;
            if let Ok(xi) = find_xi(&ring, &b) {
                solvable += 1;
                if hopf_obstruction(&ring, &b, &xi).map_err(internal)? {
                    nonzero += 1;
                }
            }
        }
    }
    out.push(R::exact(
        "hopf.pin_minus_sweep",
        nonzero,
        solvable,
        "over a Pin⁻ base, a solvable ξ always gives a nonzero obstruction",
    ));

    let pin = |name: &str| -> Result<bool, CliError> { Ok(is_pin_minus(&bundled(name).map_err(internal)?)) };
    out.push(R::exact("hopf.pin.rp2", pin("rp2")?, true, "RP² admits a Pin⁻ structure"));
    out.push(R::exact("hopf.pin.rp4", pin("rp4")?, false, "RP⁴ admits no Pin⁻ structure"));
    out.push(R::exact("hopf.pin.t3", pin("t3")?, true, "tori are Pin⁻"));
    out.push(R::exact("hopf.pin.s2xs3", pin("s2xs3")?, true, "S² × S^k is Pin⁻"));

    let factors = [sphere(2), real_projective(2), real_projective(3), real_projective(4)];
    let (mut checked, mut agree) = (0i64, 0i64);
    for a in &factors {
        for c in &factors {
            let ab = product(a, c);
            let lhs = wu_class(&ab);
            let rhs = whitney_wu(a, c, &ab);
            checked += 1;
            if lhs == rhs {
                agree += 1;
            }
        }
    }
    out.push(R::exact(
        "hopf.whitney_product_wu",
        agree,
        checked,
        "v₂(A×B) = v₂(A)⊗1 + w₁(A)⊗w₁(B) + 1⊗v₂(B)",
    ));

    let hs = 2.0 * config.n as f64;
    let w = width_lower_bound(hs, Codim::Two, Some(Branch::HopfNonzero)).map_err(internal)?;
    out.push(R::exact(
        "width.codim2_hopf_branch",
        w.bound,
        config.n as f64,
        "codimension-two width is at least half the hypersphericity",
    ));
    let w = width_lower_bound(hs, Codim::Two, Some(Branch::FStarNonzero)).map_err(internal)?;
    out.push(R::exact(
        "width.codim2_projection_branch",
        serde_json::to_value(w.branch).expect("branch serializes"),
        serde_json::json!("f-star-nonzero"),
        "the certifying branch is recorded",
    ));
    let w = width_lower_bound(0.0, Codim::One, None).map_err(internal)?;
    out.push(R::exact("width.zero_hypersphericity", w.bound, 0.0, "zero hypersphericity gives the zero bound"));
    let w = width_lower_bound(hs, Codim::One, None).map_err(internal)?;
    out.push(R::exact("width.codim1_direct", w.bound, config.n as f64, "codimension-one width is at least half the hypersphericity"));
    out.push(R::exact(
        "width.no_certificate",
        width_lower_bound(hs, Codim::Two, None) == Err(CharClassError::NoCertificate),
        true,
        "codimension two needs a certifying branch",
    ));

    if let Some(path) = &config.ring {
        let ring = load_ring(path)?;
        out.push(R::new(
            format!("ring.{}.wu_class", ring.name()),
            true,
            wu_class(&ring).to_string(),
            "recorded",
            0.0,
            format!("v₂ of {}; Pin⁻ = {}", path.display(), is_pin_minus(&ring)),
        ));
    }
    Ok(out)
}

fn whitney_wu(a: &CohomRing, b: &CohomRing, ab: &CohomRing) -> Class {
    // Express x ⊗ y through products in A × B: (x ⊗ 1) ⌣ (1 ⊗ y).
    let left = |x: &Class| lift(a, b, ab, x, true);
    let right = |y: &Class| lift(a, b, ab, y, false);
    let v2a = left(&wu_class(a));
    let v2b = right(&wu_class(b));
    let cross = ab.cup(&left(a.w1()), &right(b.w1()));
    v2a.add(&cross).add(&v2b)
}

/// `x ⊗ 1` (or `1 ⊗ x`) located by label in the product ring.
fn lift(a: &CohomRing, b: &CohomRing, ab: &CohomRing, x: &Class, from_left: bool) -> Class {
    let mut out = ab.zero(x.degree);
    let (src, unit_label) = if from_left { (a, &b.labels(0)[0]) } else { (b, &a.labels(0)[0]) };
    for i in x.support() {
        let label = &src.labels(x.degree)[i];
        let target = if from_left {
            format!("{label}*{unit_label}")
        } else {
            format!("{unit_label}*{label}")
        };
        let j = ab
            .labels(x.degree)
            .iter()
            .position(|l| *l == target)
            .expect("product labels pair factor labels");
        out.coeffs[j] ^= true;
    }
    out
}

fn volume(config: &SuiteConfig) -> Result<Records, CliError> {
    let mut out = Vec::new();
    let vol = |d, sigma, radius| ball_volume(SpaceFormQuery { dim: d, sigma, radius }).map_err(internal);

    let v = vol(3, 0.0, 1.0)?;
    let e = rel_err(v, 4.0 * PI / 3.0);
    out.push(R::new("volume.euclidean_ball", e <= 1e-9, v, 4.0 * PI / 3.0, 1e-9, "the Euclidean unit 3-ball has volume 4π/3"));
    let v = vol(3, 6.0, PI)?;
    let e = rel_err(v, 2.0 * PI * PI);
    out.push(R::new("volume.round_three_sphere", e <= 1e-8, v, 2.0 * PI * PI, 1e-8, "the unit 3-sphere has volume 2π²"));

    let mut worst = 0.0f64;
    for (d, sigma, r) in [(2, 3.0, 1.0), (2, -4.0, 0.7), (3, 6.0, 2.0), (3, -6.0, 1.2), (3, 0.5, 2.5)] {
        let exact = oracles::ball_volume_closed_form(d, sigma, r).expect("closed form in d ≤ 3");
        worst = worst.max(rel_err(vol(d, sigma, r)?, exact));
    }
    out.push(R::new("volume.closed_form_agreement", worst <= 1e-9, worst, 0.0, 1e-9, "adaptive quadrature matches closed forms in dimensions 2 and 3"));

    let mut increasing = 0;
    let mut monotone = 0i64;
    for d in 2..=5 {
        let grid: Vec<f64> = (0..50).map(|i| -20.0 + 40.0 * i as f64 / 49.0).collect();
        let vols = grid
            .iter()
            .map(|&s| ball_volume_clamped(d, s, 1.0).map_err(internal))
            .collect::<Result<Vec<_>, _>>()?;
        if vols.windows(2).all(|w| w[1] < w[0]) {
            monotone += 1;
        }
        let radii = (1..=20)
            .map(|i| vol(d, -2.0, 0.25 * i as f64))
            .collect::<Result<Vec<_>, _>>()?;
        if radii.windows(2).all(|w| w[1] > w[0]) {
            increasing += 1;
        }
    }
    out.push(R::exact("volume.decreasing_in_sigma", monotone, 4, "ball volume strictly decreases in σ"));
    out.push(R::exact("volume.increasing_in_radius", increasing, 4, "ball volume strictly increases in r"));

    let r = 1e-2;
    let mut taylor_ok = 0i64;
    let mut worst_c = 0.0f64;
    for d in 2..=5 {
        for sigma in [-6.0, 0.0, 6.0] {
            let resid = |r: f64| -> Result<f64, CliError> {
                let ratio = vol(d, sigma, r)? / (unit_ball_volume(d) * r.powi(d as i32));
                Ok((ratio - (1.0 - sigma * r * r / (6.0 * (d + 2) as f64))).abs())
            };
            let c = resid(2.0 * r)? / (2.0 * r).powi(3);
            let c = c.max(1e-3);
            worst_c = worst_c.max(resid(r)? / r.powi(3));
            if resid(r)? <= c * r.powi(3) {
                taylor_ok += 1;
            }
        }
    }
    out.push(R::new("volume.small_radius_expansion", taylor_ok == 12, taylor_ok, 12, 0.0, format!("V/(ω r^d) = 1 − σr²/(6(d+2)) + O(r³); worst remainder/r³ = {worst_c:.3e}")));

    let mut worst = 0.0f64;
    for d in 2..=5 {
        for sigma in [-5.0, 1.0, 20.0] {
            let v = ball_volume_clamped(d, sigma, 1.0).map_err(internal)?;
            worst = worst.max((mscal_from_volume(d, v, 1.0).map_err(internal)? - sigma).abs());
        }
    }
    out.push(R::new("volume.mscal_round_trip", worst <= config.tol, worst, 0.0, config.tol, "inverting the ball volume recovers σ"));
    let v = unit_ball_volume(4) * 0.7f64.powi(4);
    let s = mscal_from_volume(4, v, 0.7).map_err(internal)?;
    out.push(R::new("volume.mscal_euclidean", s.abs() <= config.tol, s, 0.0, config.tol, "the Euclidean volume gives zero curvature"));

    let mut worst = 0.0f64;
    for lambda in [0.5, 1.0, 2.0] {
        for sigma in [-5.0, 0.0, 3.0] {
            let v = ball_volume_clamped(4, sigma, 1.0).map_err(internal)?;
            let (a, b) = mscal_scaling_check(4, v, 1.0, lambda).map_err(internal)?;
            worst = worst.max((a - b).abs());
        }
    }
    out.push(R::new("volume.scaling_law", worst <= config.tol, worst, 0.0, config.tol, "macroscopic curvature scales like scalar curvature"));

    let v = vol(3, 2.0, 1.0)?;
    let threshold = mscal_from_volume(3, v * 0.999, 1.0).map_err(internal)? >= 2.0
        && mscal_from_volume(3, v * 1.001, 1.0).map_err(internal)? < 2.0;
    out.push(R::exact("volume.threshold_form", threshold, true, "vol ≤ V(σ) exactly when mscal ≥ σ"));
    Ok(out)
}

fn fiber_radius(_config: &SuiteConfig) -> Result<Records, CliError> {
    let mut out = Vec::new();
    let (mut certified, mut independent, mut total) = (0i64, 0i64, 0i64);
    for d in [2usize, 3, 4] {
        for sigma in [0.5, 2.0, 10.0] {
            for kappa in [0.0, 1.0, 4.0] {
                total += 1;
                let rho = fiber_radius_bound(FiberBoundInput { dim: d, sigma, kappa }).map_err(internal)?;
                if mscal_certificate(d, sigma, kappa, rho).map_err(internal)? {
                    certified += 1;
                }
                let base = oracles::ball_volume_gauss(d, -kappa, 1.0, 400);
                let top = oracles::ball_volume_gauss(d + 1, sigma, 1.0, 400);
                if rho < 0.5 && 2.0 * rho * base < top {
                    independent += 1;
                }
            }
        }
    }
    out.push(R::exact("fiber.certificate_grid", certified, total, "the returned fiber radius certifies mscal ≥ σ"));
    out.push(R::exact("fiber.independent_quadrature", independent, total, "the certificate holds with independently integrated volumes"));

    let rhos = [1.0, 10.0, 100.0, 1e3, 1e4]
        .iter()
        .map(|&sigma| fiber_radius_bound(FiberBoundInput { dim: 3, sigma, kappa: 1.0 }).map_err(internal))
        .collect::<Result<Vec<_>, _>>()?;
    out.push(R::exact("fiber.shrinks_with_sigma", rhos.windows(2).all(|w| w[1] < w[0]), true, "the fiber radius shrinks as σ grows"));

    let total_v = ball_volume_clamped(4, 1.0, 1.0).map_err(internal)?;
    let base_v = ball_volume_clamped(3, 0.0, 1.0).map_err(internal)?;
    let edge = 0.5 * total_v / base_v;
    out.push(R::exact("fiber.boundary_rejected", mscal_certificate(3, 1.0, 0.0, edge).map_err(internal)?, false, "the volume inequality is strict"));
    Ok(out)
}

const NET_DELTAS: [f64; 3] = [0.1, 0.25, 0.5];

fn net(config: &SuiteConfig) -> Result<Records, CliError> {
    let mut out = Vec::new();
    let (mut passed, mut total) = (0i64, 0i64);
    for k in 1..=3 {
        let torus = FlatTorus::cube(k, 1.0).map_err(internal)?;
        for delta in NET_DELTAS {
            total += 1;
            let net = greedy_maximal_net(&torus, delta, config.seed).map_err(internal)?;
            let report = verify_net(&net, &torus, MIN_DENSITY_SAMPLES, config.seed.wrapping_add(1)).map_err(internal)?;
            if report.passed() {
                passed += 1;
            }
        }
    }
    out.push(R::exact("net.grid_verified", passed, total, "greedy nets are δ-separated and δ-dense"));

    let circle = FlatTorus::cube(1, 1.0).map_err(internal)?;
    let size = greedy_maximal_net(&circle, 0.25, config.seed).map_err(internal)?.points.len() as i64;
    out.push(R::exact("net.circle_quarter", size, oracles::circle_max_separated(1.0, 0.25) as i64, "a maximal 1/4-net on the unit circle has 4 points"));
    let square = FlatTorus::cube(2, 1.0).map_err(internal)?;
    let size = greedy_maximal_net(&square, 0.5, config.seed).map_err(internal)?.points.len() as i64;
    out.push(R::exact("net.square_half", size, 4, "a maximal 1/2-net on the unit square torus has 4 points"));
    let size = greedy_maximal_net(&square, 0.9, config.seed).map_err(internal)?.points.len() as i64;
    out.push(R::exact("net.degenerate", size, 1, "δ beyond the diameter leaves one point"));

    let a = construction1_diameter(0.45, 0.01).map_err(internal)?;
    out.push(R::new("net.finger_diameter_small_sphere", a.below_three_halves, a.bound, "< 1.5", 0.0, "a sphere of radius 0.45 with a thin finger is 3/2-small"));
    let b = construction1_diameter(0.5, 0.01).map_err(internal)?;
    out.push(R::new("net.finger_diameter_half_sphere", !b.below_three_halves, b.bound, ">= 1.5", 0.0, "expected negative: a radius-1/2 sphere already has diameter π/2"));
    Ok(out)
}

fn homology(_config: &SuiteConfig) -> Result<Records, CliError> {
    let mut out = Vec::new();
    let cases: [(&str, usize, i64, Vec<usize>); 3] = [
        ("circle", 1, 3, vec![1, 1]),
        ("torus2", 2, 3, vec![1, 2, 1]),
        ("torus3", 3, 2, vec![1, 3, 3, 1]),
    ];
    let mut complexes = Vec::new();
    for (name, n, period, betti) in cases {
        let lattice = LatticeBasis::cubic(n, period).map_err(internal)?;
        let c = build_skeleton(n, n, &lattice, &vec![0; n]).map_err(internal)?;
        let chain = ChainComplexGF2::from_cubical(&c).map_err(internal)?;
        out.push(R::exact(format!("homology.betti.{name}"), chain.betti_numbers(), betti, "Betti numbers of tori"));
        complexes.push((name.to_string(), c));
    }
    for host in [Host::Z0, Host::Z1] {
        complexes.push((format!("skeleton_{}", host_tag(host)), skeleton(host, 2)));
    }
    let mut zero = 0i64;
    for (_, c) in &complexes {
        let ok = (2..=c.max_degree()).all(|k| {
            let a = c.boundary_matrix(k - 1).expect("degree in range");
            let b = c.boundary_matrix(k).expect("degree in range");
            a.checked_mul(&b).map(|m| m.is_zero()).unwrap_or(false)
        });
        if ok {
            zero += 1;
        }
    }
    out.push(R::exact("homology.boundary_squared_zero", zero, complexes.len() as i64, "∂∘∂ = 0 on every generated complex"));

    let oracle = oracles::torus_skeleton_betti(5, 2, 2);
    let z0 = ChainComplexGF2::from_cubical(&skeleton(Host::Z0, 2)).map_err(internal)?;
    out.push(R::exact("homology.z0_b2", z0.betti_numbers()[2] as i64, oracle[2] as i64, "b₂ of the quotient skeleton agrees with independent elimination"));
    Ok(out)
}
