//! Acceptance suite: one line per criterion with its runtime against budget.
//!
//! Run with `cargo test -p wf4 --test acceptance`. Pass `-- --exact` to use
//! exact rational elimination for the equation ranks.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use wf4::equations::{coordinate_point, QuadricSet};
use wf4::hilbert::{
    compact_numerator, cross_check, expand, hs_compact, sample_regular_params, HilbertParams,
};
use wf4::lattice::{q, weights_of_v26, Coweight, WeightVec};
use wf4::reps::{homogeneous_dims, weyl_dim, DominantWeight, HomogeneousDims};
use wf4::variety::{family_ladder, format_weights, QuasiSmoothness, Recipe};
use wf4::weyl::{orbit, WeylGroup};
use wf4::RankMethod;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn straight(u: i64) -> HilbertParams {
    HilbertParams::new(Coweight::ZERO, u).expect("mu = 0 is valid for u > 0")
}

fn structure_constants() -> Outcome {
    let w = WeylGroup::get();
    check(w.order() == 1152, format!("|W| = {}", w.order()))?;
    let o = orbit(&WeightVec::e(0), w);
    check(o.len() == 24, format!("|orbit(omega4)| = {}", o.len()))?;
    let dim = |l: [u32; 4]| weyl_dim(&DominantWeight::from_dynkin(l)).map_err(|e| e.to_string());
    let dims = [dim([0, 0, 0, 1])?, dim([1, 0, 0, 0])?, dim([0, 0, 0, 2])?];
    check(dims == [26, 52, 324], format!("dims {dims:?}"))?;
    let h = homogeneous_dims(&DominantWeight::from_dynkin([0, 0, 0, 1])).map_err(|e| e.to_string())?;
    let expect = HomogeneousDims { parabolic_dim: 37, variety_dim: 15, codim: 10 };
    check(h == expect, format!("{h:?}"))?;
    Ok("|W| = 1152, |W.omega4| = 24, dims 26/52/324, (37, 15, 10)".into())
}

fn straight_numerator() -> Outcome {
    let n = compact_numerator(&straight(1));
    let want = [(0, 1), (2, -27), (3, 78), (5, -351), (10, -351), (12, 78), (13, -27), (15, 1)];
    for (e, c) in want {
        check(n.coeff_int(e) == q(c), format!("coefficient of t^{e} is {}", n.coeff_int(e)))?;
    }
    check(n.max_half() == Some(30) && n.is_palindromic(30), "not palindromic of degree 15")?;
    Ok(n.to_pretty())
}

fn expansion() -> Outcome {
    let oracle = weyl_dim(&DominantWeight::from_dynkin([0, 0, 0, 3])).map_err(|e| e.to_string())?;
    check(oracle == 2652, format!("weyl_dim(3 omega4) = {oracle}"))?;
    let c = expand(&hs_compact(&straight(1)).map_err(|e| e.to_string())?, 4).map_err(|e| e.to_string())?;
    let want: Vec<BigInt> = [1, 26, 324, oracle].into_iter().map(BigInt::from).collect();
    check(c == want, format!("got {c:?}"))?;
    Ok("[1, 26, 324, 2652]".into())
}

fn cross_engine() -> Outcome {
    let params = sample_regular_params(20_240_601, 20, 6);
    for p in &params {
        let r = cross_check(p, 50, 4).map_err(|e| e.to_string())?;
        check(r.passed(), format!("engines differ at mu = {}, u = {}", p.mu(), p.u()))?;
    }
    Ok(format!("20 regular coweights, 50 coefficients each (first mu = {}, u = {})", params[0].mu(), params[0].u()))
}

fn canonical_class() -> Outcome {
    for u in 1..=6 {
        let s = hs_compact(&straight(u)).map_err(|e| e.to_string())?;
        let top = s.numerator().max_half().unwrap_or(0) / 2;
        let sum: i64 = s.denominator_halves().iter().sum::<i64>() / 2;
        check(top - sum == -11 * u, format!("u = {u}: {top} - {sum}"))?;
    }
    Ok("numerator degree - sum of weights = -11u for u = 1..6".into())
}

fn example_f4st() -> Outcome {
    let b = Recipe::f4st().build().map_err(|e| e.to_string())?;
    let deg = b.degree().map_err(|e| e.to_string())?;
    check(b.canonical_weight() == 1, format!("canonical {}", b.canonical_weight()))?;
    check(deg == q(78), format!("degree {deg}"))?;
    Ok("dim 3, K = O(1), degree 78".into())
}

fn example_nwf() -> Outcome {
    let b = Recipe::nwf().build().map_err(|e| e.to_string())?;
    let w = format_weights(b.weights());
    check(w == "{1^3,2^11}", format!("weights {w}"))?;
    check(b.canonical_weight() == 5, format!("canonical {}", b.canonical_weight()))?;
    let deg = b.degree().map_err(|e| e.to_string())?;
    check(deg == q(39), format!("degree {deg}"))?;
    let r = b.orbifold_report().map_err(|e| e.to_string())?;
    check(r.count == BigInt::from(78), format!("orbifold count {}", r.count))?;
    let s = r.singularity.ok_or("no singularity type")?;
    check(s.r() == 2 && s.a() == [1, 1, 1], format!("type {s}"))?;
    check(s.is_isolated() && s.is_terminal(), "1/2(1,1,1) not isolated terminal")?;
    let k3 = b.degree_multiple(5).map_err(|e| e.to_string())?;
    check(k3 == q(4875), format!("(5D)^3 = {k3}"))?;
    Ok(format!("{w}, K = O(5), D^3 = 39, 78 points of type {s}, (5D)^3 = 4875"))
}

fn family_ladder_check() -> Outcome {
    for k in 6..=16 {
        let b = family_ladder(k).map_err(|e| e.to_string())?;
        let mut want = vec![1; (k - 2) as usize];
        want.extend(vec![2; (16 - k) as usize]);
        check(b.weights() == want.as_slice(), format!("k = {k}: weights {}", format_weights(b.weights())))?;
        check(b.canonical_weight() == k, format!("k = {k}: canonical {}", b.canonical_weight()))?;
        let deg = b.degree().map_err(|e| e.to_string())?;
        check(deg == q(39 << (k - 5)), format!("k = {k}: degree {deg}"))?;
    }
    let k6 = family_ladder(6).map_err(|e| e.to_string())?;
    let k3 = k6.degree_multiple(6).map_err(|e| e.to_string())?;
    check(k3 == q(16848), format!("(6D)^3 = {k3}"))?;
    Ok("k = 6..16: {1^(k-2),2^(16-k)}, K = O(k), D^3 = 39*2^(k-5); (6D)^3 = 16848".into())
}

fn equations(method: RankMethod) -> Outcome {
    let qs = QuadricSet::load().map_err(|e| e.to_string())?;
    check(qs.len() == 27, format!("{} quadrics", qs.len()))?;
    let series = expand(&hs_compact(&straight(1)).map_err(|e| e.to_string())?, 5).map_err(|e| e.to_string())?;
    let mut dims = Vec::new();
    for d in 2..=4 {
        let g = qs.graded_piece_dim(d, method).map_err(|e| e.to_string())?;
        check(BigInt::from(g) == series[d], format!("degree {d}: ideal gives {g}, series {}", series[d]))?;
        dims.push(g);
    }
    check(dims[0] == 324 && dims[1] == 2652, format!("graded pieces {dims:?}"))?;
    let j = qs.jacobian_rank_at(&coordinate_point(1)).map_err(|e| e.to_string())?;
    check(j == 10, format!("Jacobian rank {j}"))?;
    Ok(format!("27 quadrics, graded pieces {dims:?} match the series, Jacobian rank 10 at x1 ({method:?})"))
}

fn substitution_law() -> Outcome {
    let base = compact_numerator(&straight(1));
    for u in 1..=6 {
        check(compact_numerator(&straight(u)) == base.substitute_power(u), format!("u = {u}"))?;
    }
    let n2 = compact_numerator(&straight(2));
    check(n2.coeff_int(6) == q(78) && n2.coeff_int(26) == q(-27), "u = 2 numerator")?;
    Ok("u = 1..6; u = 2 numerator has +78t^6 and -27t^26".into())
}

fn scope_statement() -> Outcome {
    let paper = Recipe::nwf().build().map_err(|e| e.to_string())?;
    check(paper.quasi_smoothness() == QuasiSmoothness::PaperAsserted, "nwf quasi-smoothness flag")?;
    let custom = Recipe { cones: 4, ..Recipe::nwf() }.build().map_err(|e| e.to_string())?;
    check(custom.quasi_smoothness() == QuasiSmoothness::Unverified, "custom quasi-smoothness flag")?;
    check(weights_of_v26().len() == 26, "weights")?;
    Ok("not asserted: failure of Fano/Calabi-Yau searches; quasi-smoothness reported as \
        paper-asserted or unverified, never computed; well-formedness checked in its gcd half only"
        .into())
}

fn main() -> ExitCode {
    let exact = std::env::args().any(|a| a == "--exact");
    let method = if exact { RankMethod::Exact } else { RankMethod::Modular };
    let secs = Duration::from_secs;
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("structure constants", secs(1), Box::new(structure_constants)),
        ("straight Hilbert numerator", secs(1), Box::new(straight_numerator)),
        ("series expansion", secs(1), Box::new(expansion)),
        ("cross-engine equality", secs(60), Box::new(cross_engine)),
        ("canonical class", secs(5), Box::new(canonical_class)),
        ("straight threefold", secs(1), Box::new(example_f4st)),
        ("u = 2 threefold", secs(1), Box::new(example_nwf)),
        ("family ladder", secs(2), Box::new(family_ladder_check)),
        ("quadric equations", if exact { secs(600) } else { secs(30) }, Box::new(move || equations(method))),
        ("substitution law", secs(1), Box::new(substitution_law)),
        ("scope statement", secs(1), Box::new(scope_statement)),
    ];
    // Weyl group generation is shared setup, timed on its own.
    let t = Instant::now();
    let _ = WeylGroup::get();
    println!("setup: Weyl group generated in {:.2} s", t.elapsed().as_secs_f64());

    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let el = t.elapsed();
        let over = el > *budget;
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over budget: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "[{tag}] {:>2}. {name} ({:.3} s / {} s): {detail}",
            i + 1,
            el.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
