//! Acceptance checks 1-9. Run with `cargo test --test acceptance`; prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use obstructor::bundle::{Curve, Model, Triviality};
use obstructor::cech::{self, Window};
use obstructor::cohomology::{line_cohomology, serre_dual};
use obstructor::exotic::{
    self, atlas_cocycle, layer_class, q3_classes, scale_star, split_image_obstruction, Chart,
    RankThreeModel, Scalable, SectionQ2, TruncatedAutomorphism,
};
use obstructor::laurent::LaurentSection;
use obstructor::obstruction::{classify, obstruction_report, obstruction_sheaf, Rule, Status};
use obstructor::{rat, ratio, Rational};

/// Wall-clock limits. Every other comparison is exact rational equality.
const LIMIT_BOTT: Duration = Duration::from_secs(1);
const LIMIT_CLASSIFY_SWEEP: Duration = Duration::from_secs(5);
const LIMIT_ALPHA_SWEEP: Duration = Duration::from_secs(60);

const W: Window = Window::DEFAULT;
const SEED: u64 = 0x5eed_0b57;

type Criterion = (&'static str, fn() -> Check);

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, run: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let mut c = run();
    let elapsed = t.elapsed();
    c.detail = format!("{} ({:.3}s, limit {}s)", c.detail, elapsed.as_secs_f64(), limit.as_secs());
    c.pass &= elapsed < limit;
    c
}

fn c1_bott() -> Check {
    timed(LIMIT_BOTT, || {
        let bad: Vec<i64> = (-12..=12)
            .filter(|&d| {
                let want = ((d + 1).max(0) as u64, (-d - 1).max(0) as u64);
                cech::cech_dims(d, W).ok() != Some(want)
            })
            .collect();
        check(bad.is_empty(), format!("25 degrees, mismatches {bad:?}"))
    })
}

fn c2_classify_sweep() -> Check {
    timed(LIMIT_CLASSIFY_SWEEP, || {
        let mut bad = Vec::new();
        let mut n = 0;
        for a in -5..=5 {
            for b in -5..=5 {
                for c in -5..=5 {
                    n += 1;
                    let v = classify(&Model::projective_line(&[a, b, c]).unwrap());
                    let want = if [a, b, c] == [-1, -1, -1] {
                        Status::SupportsExotic
                    } else {
                        Status::Good
                    };
                    if v.status != want {
                        bad.push([a, b, c]);
                    }
                }
            }
        }
        check(bad.is_empty(), format!("{n} models, mismatches {bad:?}"))
    })
}

fn c3_alpha_sweep() -> Check {
    timed(LIMIT_ALPHA_SWEEP, || {
        let mut bad = Vec::new();
        let mut n = 0;
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    n += 1;
                    let m = RankThreeModel::new([a, b, c]);
                    let nonzero = SectionQ2::basis(&m)
                        .iter()
                        .any(|phi| !exotic::boundary_alpha(&m, phi, W).unwrap().is_zero());
                    if nonzero != ([a, b, c] == [-1, -1, -1]) {
                        bad.push([a, b, c]);
                    }
                }
            }
        }
        let shown: Vec<_> = bad.iter().take(6).collect();
        check(
            bad.is_empty(),
            format!("{n} models, {} mismatches, first {shown:?}", bad.len()),
        )
    })
}

fn c4_minus_one_cubed() -> Check {
    let m = RankThreeModel::new([-1, -1, -1]);
    let model = Model::projective_line(&[-1, -1, -1]).unwrap();
    let rep = obstruction_report(&model).unwrap();
    let h0 = rep.layer(2).unwrap().sections.h0();
    let h1 = rep.layer(3).unwrap().space.h1();
    let basis = SectionQ2::basis(&m).len();
    let rank = exotic::alpha_rank(&m, W).unwrap();
    check(
        h0 == Some(3) && h1 == Some(3) && basis == 3 && rank == 3,
        format!("h0(Q2) = {h0:?}, h1(Q3) = {h1:?}, basis {basis}, rank of alpha {rank}"),
    )
}

fn c5_balanced() -> Check {
    let mut bad = Vec::new();
    for q in 2..=6usize {
        for d in -6..=-2 {
            let rep = obstruction_report(&Model::balanced_projective_line(q, d).unwrap()).unwrap();
            if rep.layers.iter().any(|l| l.sections.h0() != Some(0)) || rep.layers.len() != q - 1 {
                bad.push((q, d));
            }
        }
        let rep = obstruction_report(&Model::balanced_projective_line(q, -1).unwrap()).unwrap();
        if rep.layer(2).unwrap().sections.h0() != Some(binomial(q as u64, 2)) {
            bad.push((q, -1));
        }
    }
    check(bad.is_empty(), format!("q in 2..=6, d in -6..=-1, mismatches {bad:?}"))
}

fn c6_genus_two() -> Check {
    let c = Curve::new(2);
    let bundle = c
        .split_bundle([
            c.line_bundle(0, Triviality::Trivial),
            c.line_bundle(0, Triviality::Trivial),
            c.line_bundle(1, Triviality::NonTrivial),
        ])
        .unwrap();
    let m = Model::new(bundle);
    let v = classify(&m);
    let q2 = obstruction_sheaf(&m, 2).unwrap();
    let h0_exact_zero = q2.components().iter().all(|l| {
        let dims = line_cohomology(l, c);
        l.degree < 0 && dims.is_exact() && dims.h0() == Some(0)
    });
    check(
        v.status == Status::Good && v.rule == Some(Rule::NonnegLowDegree) && h0_exact_zero,
        format!(
            "{} via {:?}; Q2 degrees {:?}, h0 = 0 exactly: {h0_exact_zero}",
            v.status,
            v.rule.map(|r| r.tag()),
            q2.degrees()
        ),
    )
}

fn c7_genus_one() -> Check {
    let m = Model::with_degrees(1, &[1, 1, 1]).unwrap();
    let rep = obstruction_report(&m).unwrap();
    let l2 = rep.layer(2).unwrap();
    let deg = l2.sheaf.degree();
    let h0 = l2.sections.h0();
    let v = classify(&m);
    check(
        deg == 6 && h0 == Some(6) && v.status == Status::Good && v.rule == Some(Rule::Genus1Extremal),
        format!("deg Q2 = {deg}, h0 = {h0:?}, {} via {:?}", v.status, v.rule.map(|r| r.tag())),
    )
}

fn random_coords(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect()
}

fn lambda_pow(l: &Rational, k: u32) -> Rational {
    exotic::rational_pow(l, k)
}

fn c8_scaling() -> Check {
    let lambdas = [rat(1), rat(-1), rat(2), rat(3), ratio(1, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut q2_ok = true;
    let mut q3_ok = true;
    let mut q3_observed = Vec::new();
    for degrees in [[-1, -1, -1], [-2, -2, -2], [-3, -1, 0]] {
        let m = RankThreeModel::new(degrees);
        for l in &lambdas {
            // H1(Q2) classes
            let coords2: [Vec<Rational>; 3] =
                std::array::from_fn(|p| random_coords(&mut rng, (-m.q2_degree(p) - 1).max(0) as usize));
            let v2 = layer_class(&m, 2, coords2);
            let Scalable::Class(s2) = scale_star(&m, l, &Scalable::Class(v2.clone()), 2, W).unwrap() else {
                unreachable!()
            };
            q2_ok &= s2 == v2.scale(&lambda_pow(l, 2));

            // deg2 cocycles, termwise
            let cocycle = TruncatedAutomorphism::pure_deg2(
                Chart::Zero,
                std::array::from_fn(|_| LaurentSection::from_terms([(rng.gen_range(-4..=4), rat(rng.gen_range(1..=5)))])),
            );
            let Scalable::Cocycle(sc) = scale_star(&m, l, &Scalable::Cocycle(cocycle.clone()), 2, W).unwrap() else {
                unreachable!()
            };
            q2_ok &= (0..3).all(|p| sc.deg2[p] == cocycle.deg2[p].scale(&lambda_pow(l, 2)));

            // H1(Q3) classes
            let coords3: [Vec<Rational>; 3] =
                std::array::from_fn(|a| random_coords(&mut rng, (-m.q3_degree(a) - 1).max(0) as usize));
            let v3 = layer_class(&m, 3, coords3);
            let Scalable::Class(s3) = scale_star(&m, l, &Scalable::Class(v3.clone()), 3, W).unwrap() else {
                unreachable!()
            };
            if s3 != v3.scale(&lambda_pow(l, 3)) {
                q3_ok = false;
                if let Some(k) = (1..=4).find(|&k| s3 == v3.scale(&lambda_pow(l, k))) {
                    q3_observed.push(format!("lambda={l}: lambda^{k}"));
                }
            }
        }
    }
    let mut split_ok = true;
    for degrees in [[-1, -1, -1], [0, -2, 1], [2, 2, -4]] {
        let m = RankThreeModel::new(degrees);
        for scalars in [
            [rat(1), rat(1), rat(1)],
            [rat(-3), rat(-3), rat(-3)],
            [rat(2), rat(3), rat(5)],
            [ratio(1, 2), rat(-7), ratio(4, 3)],
        ] {
            split_ok &= split_image_obstruction(&m, &scalars, W)
                .unwrap()
                .iter()
                .all(|c| c.is_zero());
        }
    }
    q3_observed.sort();
    q3_observed.dedup();
    check(
        q2_ok && q3_ok && split_ok,
        format!(
            "lambda^2 on Q2 data: {q2_ok}; lambda^3 on H1(Q3): {q3_ok} (observed {}); split image zero: {split_ok}",
            if q3_observed.is_empty() { "as expected".to_string() } else { q3_observed.join(", ") }
        ),
    )
}

fn c9_structural() -> Check {
    // Riemann-Roch on every exact line-bundle result.
    let mut rr_bad = Vec::new();
    let mut serre_bad = Vec::new();
    for g in 0..=3u32 {
        let c = Curve::new(g);
        for d in -8..=8 {
            for t in [Triviality::Trivial, Triviality::NonTrivial, Triviality::Unknown] {
                let l = c.line_bundle(d, t);
                let dims = line_cohomology(&l, c);
                if let (Some(h0), Some(h1)) = (dims.h0(), dims.h1()) {
                    if h0 as i64 - h1 as i64 != d - i64::from(g) + 1 {
                        rr_bad.push((g, d, t));
                    }
                }
                if g <= 1 {
                    let dual = line_cohomology(&serre_dual(&l, c), c);
                    if dual.h0_bounds() != dims.h1_bounds() || dual.h1_bounds() != dims.h0_bounds() {
                        serre_bad.push((g, d, t));
                    }
                }
            }
        }
    }
    // ...and on every exact obstruction-space result in a box.
    for g in 0..=2u32 {
        for degrees in [[-2, 0, 1], [1, 1, 1], [0, 0, 3], [-1, -1, -1]] {
            let m = Model::with_degrees(g, &degrees).unwrap();
            for layer in obstruction_report(&m).unwrap().layers {
                let chi = layer.sheaf.degree() + layer.sheaf.rank() as i64 * (1 - i64::from(g));
                if let (Some(h0), Some(h1)) = (layer.space.h0(), layer.space.h1()) {
                    if h0 as i64 - h1 as i64 != chi {
                        rr_bad.push((g, layer.k as i64, Triviality::Trivial));
                    }
                }
            }
        }
    }

    // Lift independence under random deg3 perturbations.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut lift_bad = 0;
    let models = [[-1, -1, -1], [-1, -1, 2], [0, -2, 1]];
    for trial in 0..10 {
        let m = RankThreeModel::new(models[trial % models.len()]);
        let basis = SectionQ2::basis(&m);
        let phi = &basis[rng.gen_range(0..basis.len())];
        let base = exotic::boundary_alpha(&m, phi, W).unwrap();
        let mut perturb = |chart| {
            TruncatedAutomorphism::pure_deg3(
                chart,
                std::array::from_fn(|_| {
                    LaurentSection::from_terms((0..3).map(|_| (rng.gen_range(0..=5), rat(rng.gen_range(-6..=6)))))
                }),
            )
        };
        let rho0 = phi.lift(Chart::Zero).compose(&perturb(Chart::Zero)).unwrap();
        let rho1 = phi.lift(Chart::One).compose(&perturb(Chart::One)).unwrap();
        let classes = q3_classes(&m, &atlas_cocycle(&m, &rho0, &rho1).unwrap(), W).unwrap();
        if classes != base.classes {
            lift_bad += 1;
        }
    }
    check(
        rr_bad.is_empty() && serre_bad.is_empty() && lift_bad == 0,
        format!(
            "Riemann-Roch failures {}, Serre-duality failures {}, lift-dependent trials {lift_bad}/10",
            rr_bad.len(),
            serre_bad.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Bott-formula equivalence", c1_bott),
        ("rank-3 classification sweep [-5,5]^3", c2_classify_sweep),
        ("boundary-map corroboration [-3,3]^3", c3_alpha_sweep),
        ("O(-1)^3 witness", c4_minus_one_cubed),
        ("balanced bundles", c5_balanced),
        ("genus-2 nonnegative fixture", c6_genus_two),
        ("genus-1 fixture", c7_genus_one),
        ("scaling action and split image", c8_scaling),
        ("structural properties", c9_structural),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let c = run();
        failed += usize::from(!c.pass);
        println!(
            "criterion {} [{}] {name}: {}",
            i + 1,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
