//! Self-contained verification suite: ten checks covering the staircase
//! pipeline, the closed forms, the bordered pairings, the jump
//! invariants, randomized invariant identities and the link models.
//!
//! Each check returns Ok or a message naming the first failed equation,
//! so a harness can print one line per check.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::bordered::knot_from_pairing;
use crate::cfk::{
    alternating_model, builtin, staircase_exponents, staircase_from_alexander,
    torus_alexander, AlexanderPoly, CfkComplex,
};
use crate::exact::{
    f2_reduce, fraction_field_rank, rat, rint, PLFunction, Rational, SparseMatrix,
};
use crate::links::{builtin_link, link_calibrate, upsilon_set};
use crate::upsilon::{
    independence_certificate, is_epsilon_trivial, is_strongly_trivial, nu_minus,
    upsilon, upsilon_lspace,
};
use num_traits::Zero;

/// One suite entry: a stable label plus the outcome of its check.
pub struct CheckOutcome {
    pub label: &'static str,
    pub result: Result<(), String>,
}

/// Runs every check in order. Deterministic: the randomized checks use a
/// fixed seed.
pub fn run_all() -> Vec<CheckOutcome> {
    let checks: [(&'static str, fn() -> Result<(), String>); 10] = [
        ("torus(3,4): three pieces from reduction and closed form", check_torus34),
        ("torus(n,n+1), n=2..6: piecewise formula and interior jumps", check_torus_family),
        ("alternating models: upsilon determined by the signature", check_alternating),
        ("framed unknot pairings: slope -n(n+1)/2 through t=2/n", check_unknot_pairing),
        ("cabled trefoil pairing: gradings and first two pieces", check_cabled_trefoil),
        ("topologically slice family: lone jump and independence", check_slice_family),
        ("epsilon-trivial counterexample: flags and four pieces", check_counterexample),
        ("500 random rank-one complexes: invariant identities", check_randomized),
        ("closed form vs reduction; pairing count vs matrix rank", check_cross_validation),
        ("unlinks: upsilon set sizes and half-integer gradings", check_unlinks),
    ];
    checks
        .into_iter()
        .map(|(label, f)| CheckOutcome { label, result: f() })
        .collect()
}

/// True when every check passed.
pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.result.is_ok())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pl(points: &[(Rational, Rational)]) -> Result<PLFunction, String> {
    PLFunction::from_points(points).map_err(|e| format!("bad expected function: {e}"))
}

fn check_torus34() -> Result<(), String> {
    let expected = pl(&[
        (rint(0), rint(0)),
        (rat(2, 3), rint(-2)),
        (rat(4, 3), rint(-2)),
        (rint(2), rint(0)),
    ])?;
    let c = builtin("torus:3,4").map_err(|e| format!("{e}"))?;
    let direct = upsilon(&c).map_err(|e| format!("{e}"))?.upsilon;
    ensure(direct == expected, || {
        format!("reduction gave {:?}", direct.values())
    })?;
    let alphas =
        staircase_exponents(&torus_alexander(3, 4).map_err(|e| format!("{e}"))?)
            .map_err(|e| format!("{e}"))?;
    let closed = upsilon_lspace(&alphas).map_err(|e| format!("{e}"))?;
    ensure(closed == expected, || {
        format!("closed form gave {:?}", closed.values())
    })
}

fn check_torus_family() -> Result<(), String> {
    for n in 2..=6i64 {
        let points: Vec<(Rational, Rational)> =
            (0..=n).map(|i| (rat(2 * i, n), rint(-i * (n - i)))).collect();
        let expected = pl(&points)?;
        let c = builtin(&format!("torus:{},{}", n, n + 1)).map_err(|e| format!("{e}"))?;
        let r = upsilon(&c).map_err(|e| format!("{e}"))?;
        ensure(r.upsilon == expected, || {
            format!("n = {n}: got {:?}", r.upsilon.values())
        })?;
        // Normalized jump 1 at every interior breakpoint 2i/n: the raw
        // slope jump there is exactly n.
        for i in 1..n {
            let d = r.upsilon.delta_slope(rat(2 * i, n)).map_err(|e| format!("{e}"))?;
            ensure(d == rint(n), || format!("n = {n}: jump at 2*{i}/{n} is {d}"))?;
        }
    }
    Ok(())
}

fn check_alternating() -> Result<(), String> {
    let trefoil = AlexanderPoly::from_coeffs(&[(1, 1), (0, -1), (-1, 1)]);
    let figure8 = AlexanderPoly::from_coeffs(&[(1, -1), (0, 3), (-1, -1)]);
    let t27 = torus_alexander(2, 7).map_err(|e| format!("{e}"))?;
    for (name, sigma, poly) in [
        ("trefoil", -2i64, &trefoil),
        ("figure8", 0, &figure8),
        ("torus(2,7)", -6, &t27),
    ] {
        let c = alternating_model(sigma, poly).map_err(|e| format!("{name}: {e}"))?;
        let got = upsilon(&c).map_err(|e| format!("{name}: {e}"))?.upsilon;
        let expected = pl(&[
            (rint(0), rint(0)),
            (rint(1), rint(sigma / 2)),
            (rint(2), rint(0)),
        ])?;
        ensure(got == expected, || {
            format!("{name}: got {:?}", got.values())
        })?;
    }
    Ok(())
}

fn check_unknot_pairing() -> Result<(), String> {
    for n in 2..=4i64 {
        let c = knot_from_pairing(&format!("torus_n_2n1:{n}"))
            .map_err(|e| format!("n = {n}: {e}"))?;
        let slope = n * (n + 1) / 2;
        let f = upsilon(&c).map_err(|e| format!("n = {n}: {e}"))?.upsilon;
        let end = rat(2, n);
        let mut ts: Vec<Rational> = f
            .breakpoints()
            .iter()
            .copied()
            .filter(|&t| t < end)
            .collect();
        ts.push(end);
        for t in ts {
            let v = f.eval(t).map_err(|e| format!("{e}"))?;
            ensure(v == -t * rint(slope), || {
                format!("n = {n}: upsilon({t}) = {v}, want {}", -t * rint(slope))
            })?;
        }
    }
    Ok(())
}

fn check_cabled_trefoil() -> Result<(), String> {
    for n in 2..=3i64 {
        let c = knot_from_pairing(&format!("cable_trefoil:{n}"))
            .map_err(|e| format!("n = {n}: {e}"))?;
        let g = n * n - n + 1;
        let at = |name: &str| -> Result<(i64, i64), String> {
            let i = c.index_of(name).ok_or_else(|| format!("n = {n}: missing {name}"))?;
            let gen = &c.generators()[i];
            Ok((gen.maslov, gen.alexander))
        };
        let diff = |x: &str, y: &str| -> Result<(i64, i64), String> {
            let (mx, ax) = at(x)?;
            let (my, ay) = at(y)?;
            Ok((mx - my, ax - ay))
        };
        let expect = |x: &str, y: &str, want: (i64, i64)| -> Result<(), String> {
            let got = diff(x, y)?;
            ensure(got == want, || {
                format!("n = {n}: {x} - {y} = {got:?}, want {want:?}")
            })
        };
        ensure(at("B1|Q")? == (0, g), || format!("n = {n}: B1|Q miscalibrated"))?;
        expect("B1|Q", "A1|Q", (1, 1))?;
        expect("A1|Q", "B2|Q", (1, 2 * n - 2))?;
        for i in 2..=n {
            let bq = format!("B{i}|Q");
            let aq = format!("A{i}|Q");
            let bp = format!("B{}|P", i - 1);
            let ap = format!("A{}|P", i - 1);
            expect(&bq, &aq, (2 * i - 1, i))?;
            expect(&aq, &bp, (1, n - i + 1))?;
            expect(&bp, &ap, (2 * i - 3, i - 1))?;
            if i < n {
                expect(&ap, &format!("B{}|Q", i + 1), (1, n - i - 1))?;
            }
        }
        expect(&format!("A{}|P", n - 1), "X|K", (1, 0))?;
        expect(&format!("A{n}|P"), "X|I", (1, 0))?;
        expect("X|J", "X|K", (-1 - 2 * n, -n))?;
        expect("X|J", &format!("B{n}|P"), (1, 0))?;

        let f = upsilon(&c).map_err(|e| format!("n = {n}: {e}"))?.upsilon;
        let breakpoint = rat(2, 2 * n - 1);
        ensure(f.breakpoints()[1] == breakpoint, || {
            format!("n = {n}: first breakpoint {}", f.breakpoints()[1])
        })?;
        for t in [rat(1, 2 * n), rat(1, n), breakpoint] {
            let v = f.eval(t).map_err(|e| format!("{e}"))?;
            ensure(v == -t * rint(g), || format!("n = {n}: upsilon({t}) = {v}"))?;
        }
        // Exact on a margin past the first breakpoint, on the second line
        // -2 - (n^2 - 3n + 2) t.
        let probe = breakpoint + rat(1, 100);
        ensure(f.breakpoints().get(2).map_or(true, |&b| b > probe), || {
            format!("n = {n}: unexpected breakpoint before {probe}")
        })?;
        let want = rint(-2) - probe * rint(n * n - 3 * n + 2);
        let v = f.eval(probe).map_err(|e| format!("{e}"))?;
        ensure(v == want, || format!("n = {n}: upsilon({probe}) = {v}, want {want}"))?;
    }
    Ok(())
}

fn check_slice_family() -> Result<(), String> {
    let mut family = Vec::new();
    for n in 2..=3i64 {
        let c = knot_from_pairing(&format!("k_n:{n}"))
            .map_err(|e| format!("n = {n}: {e}"))?;
        let f = upsilon(&c).map_err(|e| format!("n = {n}: {e}"))?.upsilon;
        let breakpoint = rat(2, 2 * n - 1);
        for k in 1..=9i64 {
            let t = breakpoint * rat(k, 10);
            let d = f.delta_slope(t).map_err(|e| format!("{e}"))?;
            ensure(d.is_zero(), || format!("n = {n}: jump {d} at {t} < {breakpoint}"))?;
        }
        let d = f.delta_slope(breakpoint).map_err(|e| format!("{e}"))?;
        ensure(d == rint(2 * n - 1), || {
            format!("n = {n}: jump at {breakpoint} is {d}, want {}", 2 * n - 1)
        })?;
        family.push(c);
    }
    let report = independence_certificate(&family, &[rat(2, 3), rat(2, 5)])
        .map_err(|e| format!("{e}"))?;
    ensure(report.certified, || {
        format!("jump matrix not unitriangular: {:?}", report.matrix)
    })
}

fn check_counterexample() -> Result<(), String> {
    let c = builtin("hom_counterexample").map_err(|e| format!("{e}"))?;
    ensure(is_epsilon_trivial(&c).map_err(|e| format!("{e}"))?, || {
        String::from("epsilon triviality does not hold")
    })?;
    ensure(!is_strongly_trivial(&c).map_err(|e| format!("{e}"))?, || {
        String::from("strong triviality holds unexpectedly")
    })?;
    let expected = pl(&[
        (rint(0), rint(0)),
        (rat(2, 3), rint(0)),
        (rint(1), rint(-1)),
        (rat(4, 3), rint(0)),
        (rint(2), rint(0)),
    ])?;
    let got = upsilon(&c).map_err(|e| format!("{e}"))?.upsilon;
    ensure(got == expected, || format!("got {:?}", got.values()))
}

/// Strictly decreasing symmetric exponent sequence of length 2g + 1.
fn random_exponents(rng: &mut SmallRng, g: i64) -> Vec<i64> {
    let mut tops: Vec<i64> = Vec::new();
    while tops.len() < g as usize {
        let v = rng.gen_range(1..=4i64);
        if !tops.contains(&v) {
            tops.push(v);
        }
    }
    tops.sort_unstable_by(|a, b| b.cmp(a));
    let mut alphas = tops.clone();
    alphas.push(0);
    alphas.extend(tops.iter().rev().map(|v| -v));
    alphas
}

/// A calibrated rank-one complex on at most eight generators: a random
/// symmetric staircase (or its mirror) plus conjugate pairs of
/// two-generator segments.
fn random_complex(rng: &mut SmallRng) -> Result<CfkComplex, String> {
    for _ in 0..100 {
        let g = rng.gen_range(0..=2i64);
        let mut c = if g == 0 {
            let mut c = CfkComplex::new();
            c.add_generator("x0", 0, 0).map_err(|e| format!("{e}"))?;
            c
        } else {
            let alphas = random_exponents(rng, g);
            let coeffs: Vec<(i64, i64)> = alphas
                .iter()
                .enumerate()
                .map(|(k, &a)| (a, if k % 2 == 0 { 1 } else { -1 }))
                .collect();
            let stair = staircase_from_alexander(&AlexanderPoly::from_coeffs(&coeffs))
                .map_err(|e| format!("{e}"))?;
            if rng.gen_bool(0.5) {
                stair.dual()
            } else {
                stair
            }
        };
        let budget = (8 - (2 * g + 1)) / 4;
        let pairs = rng.gen_range(0..=budget);
        for k in 0..pairs {
            let m = rng.gen_range(-2..=2i64);
            let a = rng.gen_range(-2..=2i64);
            let u = rng.gen_range(0..=2u64);
            let d = rng.gen_range(-(u as i64)..=2i64);
            let x = c
                .add_generator(format!("sp{k}"), m, a)
                .map_err(|e| format!("{e}"))?;
            let y = c
                .add_generator(format!("sq{k}"), m - 1 + 2 * u as i64, a - d)
                .map_err(|e| format!("{e}"))?;
            c.toggle_edge(x, y, u);
            // The conjugate segment keeps upsilon symmetric about t = 1.
            let um = (u as i64 + d) as u64;
            let xm = c
                .add_generator(format!("sp{k}m"), m - 2 * a, -a)
                .map_err(|e| format!("{e}"))?;
            let ym = c
                .add_generator(format!("sq{k}m"), m - 2 * a - 1 + 2 * um as i64, d - a)
                .map_err(|e| format!("{e}"))?;
            c.toggle_edge(xm, ym, um);
        }
        if let Ok(calibrated) = c.calibrate() {
            if calibrated.generators().len() <= 8 {
                return Ok(calibrated);
            }
        }
    }
    Err(String::from("no calibratable random complex in 100 attempts"))
}

fn check_randomized() -> Result<(), String> {
    let mut rng = SmallRng::seed_from_u64(0x75_70_73_69_6c_6f_6e);
    let mut previous: Option<(CfkComplex, PLFunction)> = None;
    for trial in 0..500usize {
        let c = random_complex(&mut rng).map_err(|e| format!("trial {trial}: {e}"))?;
        let r = upsilon(&c).map_err(|e| format!("trial {trial}: {e}"))?;
        let f = &r.upsilon;
        let at = |t: Rational| f.eval(t).map_err(|e| format!("trial {trial}: {e}"));
        ensure(at(rint(0))?.is_zero() && at(rint(2))?.is_zero(), || {
            format!("trial {trial}: endpoints nonzero")
        })?;
        ensure(*f == f.reflect(), || {
            format!("trial {trial}: not symmetric about t = 1")
        })?;
        let s0 = f.right_slope(rint(0)).map_err(|e| format!("{e}"))?;
        ensure(s0 == rint(-r.tau), || {
            format!("trial {trial}: initial slope {s0}, tau {}", r.tau)
        })?;
        for &(t, jump) in &r.jumps {
            let q = t * rint(jump);
            ensure(q.is_integer() && q.to_integer() % 2 == 0, || {
                format!("trial {trial}: t * jump = {q} at {t}")
            })?;
        }
        for &t in f.breakpoints() {
            let v = at(t)?;
            ensure((v * rint(*t.denom())).is_integer(), || {
                format!("trial {trial}: upsilon({t}) = {v} has a larger denominator")
            })?;
        }
        let nu = nu_minus(&c).map_err(|e| format!("trial {trial}: {e}"))?;
        let mut ts: Vec<Rational> = f
            .breakpoints()
            .iter()
            .copied()
            .filter(|&t| t <= rint(1))
            .collect();
        ts.push(rint(1));
        for t in ts {
            let v = at(t)?;
            ensure(v >= -t * rint(nu), || {
                format!("trial {trial}: upsilon({t}) = {v} below -t * {nu}")
            })?;
        }
        if is_strongly_trivial(&c).map_err(|e| format!("trial {trial}: {e}"))? {
            ensure(is_epsilon_trivial(&c).map_err(|e| format!("{e}"))?, || {
                format!("trial {trial}: strongly but not epsilon trivial")
            })?;
            ensure(*f == PLFunction::zero(), || {
                format!("trial {trial}: strongly trivial with nonzero upsilon")
            })?;
        }
        if trial % 10 == 0 {
            let dual = upsilon(&c.dual()).map_err(|e| format!("trial {trial}: {e}"))?;
            ensure(dual.upsilon == f.negate(), || {
                format!("trial {trial}: mirror does not negate upsilon")
            })?;
        }
        if trial % 25 == 0 {
            if let Some((pc, pf)) = &previous {
                let product = pc.tensor(&c).map_err(|e| format!("trial {trial}: {e}"))?;
                let got = upsilon(&product)
                    .map_err(|e| format!("trial {trial}: {e}"))?
                    .upsilon;
                ensure(got == pf.add(f), || {
                    format!("trial {trial}: tensor product upsilon is not the sum")
                })?;
            }
        }
        previous = Some((c, f.clone()));
    }
    Ok(())
}

fn check_cross_validation() -> Result<(), String> {
    let mut rng = SmallRng::seed_from_u64(0x73_74_61_69_72);
    // Closed form against direct reduction on random staircases with up
    // to nine steps.
    for trial in 0..40usize {
        let g = rng.gen_range(1..=4i64);
        let alphas = random_exponents(&mut rng, g);
        let coeffs: Vec<(i64, i64)> = alphas
            .iter()
            .enumerate()
            .map(|(k, &a)| (a, if k % 2 == 0 { 1 } else { -1 }))
            .collect();
        let stair = staircase_from_alexander(&AlexanderPoly::from_coeffs(&coeffs))
            .map_err(|e| format!("stair {trial}: {e}"))?;
        let direct = upsilon(&stair).map_err(|e| format!("stair {trial}: {e}"))?.upsilon;
        let closed = upsilon_lspace(&alphas).map_err(|e| format!("stair {trial}: {e}"))?;
        ensure(direct == closed, || {
            format!("stair {trial}: closed form disagrees for {alphas:?}")
        })?;
    }
    // Pair count of the graded reduction against the rank over the
    // fraction field on random homogeneous matrices.
    for trial in 0..200usize {
        let rows = rng.gen_range(1..=12usize);
        let cols = rng.gen_range(1..=12usize);
        let row_grades: Vec<Rational> =
            (0..rows).map(|_| rint(rng.gen_range(-3..=3i64))).collect();
        let col_grades: Vec<Rational> =
            (0..cols).map(|_| rint(rng.gen_range(-3..=3i64))).collect();
        let mut m = SparseMatrix::new(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = row_grades[r] - col_grades[c] + rint(1);
                if e >= rint(0) && rng.gen_bool(0.35) {
                    m.push(r, c, e);
                }
            }
        }
        let red = f2_reduce(&m, &row_grades, &col_grades)
            .map_err(|e| format!("matrix {trial}: {e}"))?;
        let rank = fraction_field_rank(&m);
        ensure(red.pairs.len() == rank, || {
            format!("matrix {trial}: {} pairs vs rank {rank}", red.pairs.len())
        })?;
    }
    Ok(())
}

fn check_unlinks() -> Result<(), String> {
    for (l, expected) in [
        (2usize, alloc::vec![rat(-1, 2), rat(1, 2)]),
        (3, alloc::vec![rint(-1), rint(0), rint(0), rint(1)]),
    ] {
        let raw = builtin_link(&format!("unlink:{l}")).map_err(|e| format!("{e}"))?;
        let c = link_calibrate(&raw).map_err(|e| format!("l = {l}: {e}"))?;
        let set = upsilon_set(&c, rint(0)).map_err(|e| format!("l = {l}: {e}"))?;
        ensure(set.len() == 1 << (l - 1), || {
            format!("l = {l}: cardinality {}", set.len())
        })?;
        ensure(set == expected, || format!("l = {l}: gradings {set:?}"))?;
    }
    Ok(())
}
