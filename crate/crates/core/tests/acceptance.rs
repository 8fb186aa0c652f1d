//! Acceptance suite: one line per criterion, with the time limit checked.
//!
//! Run with `cargo test -p polymat --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use polymat::algebra::{
    base_ring_gorenstein, ehrhart_gorenstein, generic_gorenstein_rank, h_star, is_generic,
    is_gorenstein_hstar, GenericGorensteinParams, GradedGenerators,
};
use polymat::constructions::{
    borel_gorenstein, is_strongly_stable, is_transversal, principal_borel, transversal, veronese,
    BorelGenerator, TransversalPresentation,
};
use polymat::exchange::{exchange_property, is_sortable, verify_symmetric_exchange, ExchangeMode};
use polymat::polymatroid::{
    hull_consistency, is_base_set, lift, polymatroid_from_rank, rank_function,
    validate_rank_function, BaseSet, DiscretePolymatroid, RankFunction, VectorSet,
};
use polymat::toric::{white_check_with, FiberLimits};
use polymat::vector::iv;
use polymat::GroundSubset;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn simplex(n: usize, d: u64) -> DiscretePolymatroid {
    polymatroid_from_rank(&RankFunction::from_fn(n, |a| if a.is_empty() { 0 } else { d }).unwrap())
        .unwrap()
}

fn bs(n: usize, vs: &[&[u32]]) -> BaseSet {
    BaseSet::new(n, vs.iter().map(|v| iv(v)).collect()).unwrap()
}

fn hilbert_case(
    d: u64,
    expect_hstar: &[i64],
    kp_gor: bool,
    kb_gor: bool,
    kb_hstar: Option<&[i64]>,
) -> Outcome {
    let p = simplex(3, d);
    let kp = GradedGenerators::ehrhart_ring(&p).map_err(|e| e.to_string())?;
    let data = h_star(&kp).map_err(|e| e.to_string())?;
    ensure(data.krull_dim == 4, || format!("D = {}", data.krull_dim))?;
    ensure(data.trimmed() == expect_hstar, || {
        format!("h*(K[P]) = {:?}", data.h_star)
    })?;
    let g = is_gorenstein_hstar(&kp).map_err(|e| e.to_string())?;
    ensure(g == kp_gor, || format!("K[P] Gorenstein = {g}"))?;
    let kb = GradedGenerators::base_ring(p.bases()).map_err(|e| e.to_string())?;
    if let Some(hb) = kb_hstar {
        let data = h_star(&kb).map_err(|e| e.to_string())?;
        ensure(data.trimmed() == hb, || {
            format!("h*(K[B]) = {:?}", data.h_star)
        })?;
    }
    let g = base_ring_gorenstein(p.bases()).map_err(|e| e.to_string())?;
    ensure(g == kb_gor, || format!("K[B] Gorenstein = {g}"))
}

fn criterion_1() -> Outcome {
    hilbert_case(3, &[1, 16, 10], false, true, Some(&[1, 7, 1]))
}

fn criterion_2() -> Outcome {
    hilbert_case(4, &[1, 31, 31, 1], true, false, None)
}

fn criterion_3() -> Outcome {
    use ExchangeMode::*;
    let ex_b = bs(
        4,
        &[&[1, 1, 1, 1], &[0, 2, 0, 2], &[0, 1, 1, 2], &[1, 2, 0, 1]],
    );
    let ex_c = veronese(&iv(&[2, 1, 2, 1]), 4).unwrap();
    let ex_d = bs(
        3,
        &[&[2, 1, 1], &[2, 2, 0], &[3, 0, 1], &[3, 1, 0], &[4, 0, 0]],
    );
    let ex_e = bs(
        3,
        &[&[3, 0, 1], &[1, 3, 0], &[3, 1, 0], &[2, 2, 0], &[4, 0, 0]],
    );
    let f_vectors: Vec<_> = [
        [0, 1, 0, 1],
        [0, 1, 1, 0],
        [0, 2, 0, 0],
        [1, 0, 0, 1],
        [1, 0, 1, 0],
        [1, 1, 0, 0],
        [2, 0, 0, 0],
    ]
    .iter()
    .map(|v| iv(v))
    .collect();
    let ex_f = principal_borel(&iv(&[0, 1, 0, 1])).unwrap();

    let mut errors = Vec::new();
    let mut check = |label: &str, got: bool, want: bool| {
        if got != want {
            errors.push(format!("{label}: expected {want}, computed {got}"));
        }
    };
    check(
        "mixed set: base-exchange",
        exchange_property(&ex_b, BaseExchange).holds(),
        true,
    );
    check(
        "mixed set: strong",
        exchange_property(&ex_b, Strong).holds(),
        false,
    );
    check(
        "veronese (2,1,2,1): strong",
        exchange_property(&ex_c, Strong).holds(),
        true,
    );
    check(
        "five-vector set: strong",
        exchange_property(&ex_d, Strong).holds(),
        true,
    );
    check("stable non-base set: weak", exchange_property(&ex_e, Weak).holds(), false);
    check(
        "stable non-base set: strongly stable",
        is_strongly_stable(&ex_e.to_vector_set()).unwrap().holds(),
        true,
    );
    check(
        "borel (0,1,0,1): principal_borel",
        ex_f == VectorSet::new(4, f_vectors).unwrap(),
        true,
    );
    let ex_f = BaseSet::try_from(ex_f).unwrap();
    check(
        "borel (0,1,0,1): base-exchange",
        exchange_property(&ex_f, BaseExchange).holds(),
        true,
    );
    check(
        "borel (0,1,0,1): strong",
        exchange_property(&ex_f, Strong).holds(),
        false,
    );
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}

fn criterion_4(samples: &[DiscretePolymatroid]) -> Outcome {
    for (k, p) in samples.iter().enumerate() {
        if let Some(w) = verify_symmetric_exchange(p.bases()).witness() {
            return Err(format!("sample {k}: {w}"));
        }
    }
    Ok(())
}

fn criterion_5(samples: &[DiscretePolymatroid]) -> Outcome {
    for (k, p) in samples.iter().enumerate() {
        ensure(hull_consistency(p), || format!("sample {k}: hull mismatch"))?;
        let rho = rank_function(p.bases());
        if let Some(w) = validate_rank_function(&rho).witness() {
            return Err(format!("sample {k}: {w}"));
        }
    }
    Ok(())
}

fn criterion_6(samples: &[DiscretePolymatroid]) -> Outcome {
    for (k, p) in samples.iter().enumerate() {
        if let Some(w) = is_base_set(&lift(p)).witness() {
            return Err(format!("sample {k}: lift fails at {w}"));
        }
    }
    Ok(())
}

fn criterion_7(samples: &[DiscretePolymatroid]) -> (Outcome, usize) {
    let limits = FiberLimits {
        max_bases: 256,
        max_degree: 3,
        max_members: 5_000_000,
    };
    let mut cases: Vec<BaseSet> = samples
        .iter()
        .map(|p| p.bases().clone())
        .filter(|b| exchange_property(b, ExchangeMode::Strong).holds())
        .collect();
    cases.push(veronese(&iv(&[2, 1, 2, 1]), 4).unwrap());
    cases.push(veronese(&iv(&[3, 3, 3]), 3).unwrap());
    cases.push(bs(
        3,
        &[&[2, 1, 1], &[2, 2, 0], &[3, 0, 1], &[3, 1, 0], &[4, 0, 0]],
    ));
    let count = cases.len();
    let run = || -> Outcome {
        for (k, b) in cases.iter().enumerate() {
            if let Some((u, v)) = is_sortable(b).witness() {
                return Err(format!("case {k}: sorting {u} {v} leaves B"));
            }
            for m in [2, 3] {
                match white_check_with(b, m, &limits) {
                    Ok(v) if v.holds() => {}
                    Ok(v) => return Err(format!("case {k}: disconnected fiber {:?}", v.witness())),
                    Err(e) => return Err(format!("case {k}, degree {m}: {e}")),
                }
            }
        }
        Ok(())
    };
    (run(), count)
}

/// Multisets of size `d` drawn from `items`, in lexicographic order.
fn multisets<T: Copy>(items: &[T], d: usize) -> Vec<Vec<T>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        for mut rest in multisets(&items[k..], d - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn criterion_8() -> (Outcome, usize) {
    let run = || -> Result<usize, String> {
        let cap2 = RankFunction::from_fn(4, |a| 3u64.min(2 * a.len() as u64)).unwrap();
        let p = polymatroid_from_rank(&cap2).unwrap();
        match is_transversal(&p) {
            Ok(None) => {}
            other => return Err(format!("cap-2 polymatroid: {other:?}")),
        }
        let mut count = 1;
        for n in 1..=4usize {
            let subsets: Vec<GroundSubset> = GroundSubset::all(n).skip(1).collect();
            for d in 1..=3 {
                for family in multisets(&subsets, d) {
                    let pres = TransversalPresentation::new(n, family).unwrap();
                    let (b, _) = transversal(&pres).map_err(|e| e.to_string())?;
                    let p = DiscretePolymatroid::from_generators(n, b.vectors().to_vec())
                        .map_err(|e| e.to_string())?;
                    let found = is_transversal(&p)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| format!("no presentation found for {:?}", pres.family()))?;
                    let (b2, _) = transversal(&found).map_err(|e| e.to_string())?;
                    ensure(&b2 == p.bases(), || {
                        format!("presentation {found:?} has other bases")
                    })?;
                    count += 1;
                }
            }
        }
        Ok(count)
    };
    match run() {
        Ok(c) => (Ok(()), c),
        Err(e) => (Err(e), 0),
    }
}

/// All `a` in `Z_+^n` with `|a| = total`.
fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|x| {
            compositions(n - 1, total - x)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, x);
                    rest
                })
        })
        .collect()
}

fn criterion_9() -> (Outcome, usize) {
    let mut count = 0;
    let run = |count: &mut usize| -> Outcome {
        for n in 1..=5 {
            for total in 1..=5 {
                for a in compositions(n, total).into_iter().filter(|a| a[n - 1] >= 1) {
                    let g = BorelGenerator::new(iv(&a)).unwrap();
                    let formula = borel_gorenstein(&g);
                    let oracle =
                        base_ring_gorenstein(&g.bases().unwrap()).map_err(|e| e.to_string())?;
                    ensure(formula == oracle, || {
                        format!("a = {a:?}: criterion {formula}, h* oracle {oracle}")
                    })?;
                    *count += 1;
                }
            }
        }
        for (a, want) in [
            (vec![0, 1, 1, 1, 2], true),
            (vec![0, 1, 2], true),
            (vec![0, 1, 0, 2, 0, 3], true),
            (vec![0, 0, 0, 4], true),
            (vec![0, 0, 3], true),
            (vec![0, 0, 0, 3], false),
        ] {
            let got = borel_gorenstein(&BorelGenerator::new(iv(&a)).unwrap());
            ensure(got == want, || format!("example a = {a:?}: {got}"))?;
        }
        Ok(())
    };
    (run(&mut count), count)
}

fn criterion_10() -> (Outcome, usize) {
    let mut count = 0;
    let mut run = || -> Outcome {
        for n in [3usize, 4] {
            for code in 0..1u32 << (n - 1) {
                let alpha: Vec<u64> = (0..n - 1).map(|k| 2 + (code >> k & 1) as u64).collect();
                let total: u64 = alpha.iter().sum();
                for d in [total + 2, total + 3] {
                    let params = GenericGorensteinParams::new(alpha.clone(), d)
                        .map_err(|e| e.to_string())?;
                    let rho = generic_gorenstein_rank(&params);
                    let label = format!("alpha = {alpha:?}, d = {d}");
                    ensure(
                        validate_rank_function(&rho).holds() && rho.is_strictly_increasing(),
                        || format!("{label}: rank function invalid"),
                    )?;
                    let p = polymatroid_from_rank(&rho).map_err(|e| e.to_string())?;
                    let generic = is_generic(&p).map_err(|e| e.to_string())?;
                    ensure(generic.holds(), || {
                        format!("{label}: not generic: {:?}", generic.witness())
                    })?;
                    let gor = base_ring_gorenstein(p.bases()).map_err(|e| e.to_string())?;
                    ensure(gor, || format!("{label}: K[B] not Gorenstein"))?;
                    count += 1;
                }
            }
        }
        Ok(())
    };
    (run(), count)
}

fn criterion_11() -> (Outcome, usize) {
    let mut r = common::rng(0x5eed_0011);
    let samples: Vec<DiscretePolymatroid> = (0..50)
        .map(|_| common::random_polymatroid_with_units(&mut r, 3, 4))
        .collect();
    let run = || -> Outcome {
        for (k, p) in samples.iter().enumerate() {
            let rho = p.rank_function();
            let delta = ehrhart_gorenstein(&rho).map_err(|e| e.to_string())?;
            let kp = GradedGenerators::ehrhart_ring(p).map_err(|e| e.to_string())?;
            let oracle = is_gorenstein_hstar(&kp).map_err(|e| e.to_string())?;
            ensure(delta.is_some() == oracle, || {
                format!("sample {k} ({rho:?}): delta {delta:?}, h* oracle {oracle}")
            })?;
        }
        Ok(())
    };
    (run(), samples.len())
}

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn record(&mut self, id: u32, title: &str, limit_s: u64, elapsed: Duration, outcome: Outcome) {
        let secs = elapsed.as_secs_f64();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(limit_s), || {
                format!("took {secs:.2} s, limit {limit_s} s")
            })
        });
        match &outcome {
            Ok(()) => println!("[PASS] {id:>2} {title} ({secs:.2} s, limit {limit_s} s)"),
            Err(e) => {
                println!("[FAIL] {id:>2} {title} ({secs:.2} s, limit {limit_s} s): {e}");
                self.failures.push(format!("criterion {id}"));
            }
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() {
    let mut report = Report {
        failures: Vec::new(),
    };

    let (o, t) = timed(criterion_1);
    report.record(
        1,
        "Ehrhart ring of |u| <= 3 in 3 variables: h* = (1,16,10), K[B] h* = (1,7,1)",
        5,
        t,
        o,
    );
    let (o, t) = timed(criterion_2);
    report.record(
        2,
        "Ehrhart ring of |u| <= 4 in 3 variables: h* = (1,31,31,1)",
        5,
        t,
        o,
    );
    let (o, t) = timed(criterion_3);
    report.record(3, "exchange classification of the small examples", 5, t, o);

    let (samples, gen_time) = timed(common::standard_samples);
    let (o, t) = timed(|| criterion_4(&samples));
    report.record(
        4,
        "symmetric exchange on 200 random base sets",
        60,
        t + gen_time,
        o,
    );
    let (o, t) = timed(|| criterion_5(&samples));
    report.record(
        5,
        "hull consistency and valid rank functions on 200 samples",
        60,
        t,
        o,
    );
    let (o, t) = timed(|| criterion_6(&samples));
    report.record(6, "lift(P) is a base set on 200 samples", 60, t, o);
    let ((o, count), t) = timed(|| criterion_7(&samples));
    report.record(
        7,
        &format!("sortable and fibers connected in degrees 2, 3 ({count} strong-exchange sets)"),
        120,
        t,
        o,
    );
    let ((o, count), t) = timed(criterion_8);
    report.record(
        8,
        &format!("transversal search ({count} instances)"),
        30,
        t,
        o,
    );
    let ((o, count), t) = timed(criterion_9);
    report.record(
        9,
        &format!("principal Borel Gorenstein criterion vs h* ({count} generators)"),
        120,
        t,
        o,
    );
    let ((o, count), t) = timed(criterion_10);
    report.record(
        10,
        &format!("generic Gorenstein round trip ({count} parameter sets)"),
        120,
        t,
        o,
    );
    let ((o, count), t) = timed(criterion_11);
    report.record(
        11,
        &format!("Ehrhart Gorenstein criterion vs h* ({count} samples)"),
        120,
        t,
        o,
    );

    if report.failures.is_empty() {
        println!("acceptance: all 11 criteria pass");
    } else {
        println!("acceptance: failing: {}", report.failures.join(", "));
        std::process::exit(1);
    }
}
