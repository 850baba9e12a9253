//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bwb_core::charring::{dual, freudenthal_multiplicities, tensor, FormalCharacter};
use bwb_core::dsl::{eval_str, parse_str, Value};
use bwb_core::index::{gh_index, gh_oracle_index, ShellOracle};
use bwb_core::mckean::t_independence_report;
use bwb_core::rootsys::all_types_up_to_rank;
use bwb_core::spinor::{rho_prime, spinor_character};
use bwb_core::weyl::{enumerate_weyl_group, length_mu, make_dominant_shifted, ShiftedOrbit};
use bwb_core::{bwb_index, Error, IndexResult, Rational, RootSystem, Subsystem, Weight};
use bwb_dirac::DiracModel;
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn label_box(rank: usize, lo: i64, hi: i64) -> Vec<Weight> {
    let side = (hi - lo + 1) as usize;
    (0..side.pow(rank as u32))
        .map(|code| {
            let labels: Vec<i64> = (0..rank)
                .map(|k| ((code / side.pow(k as u32)) % side) as i64 + lo)
                .collect();
            Weight::from_ints(&labels)
        })
        .collect()
}

fn ints(w: &Weight) -> Vec<i64> {
    w.to_ints().expect("integral weight")
}

const SWEEP: [&str; 5] = ["A1", "A2", "A3", "B2", "G2"];

fn closed_form_matches_oracle() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for label in SWEEP {
        let r = rs(label);
        let mut oracle = ShellOracle::new(&r).map_err(|e| e.to_string())?;
        for mu in label_box(r.rank(), -3, 3) {
            let closed = bwb_index(&r, &mu).map_err(|e| e.to_string())?;
            let brute = oracle.index(&mu).map_err(|e| format!("{label} {mu}: {e}"))?;
            ensure!(closed == brute, "{label} mu={mu}: closed form {closed:?}, oracle {brute:?}");
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{count} weights, {elapsed:.2?}"))
}

fn pairing_contract() -> Check {
    let mut terms = 0;
    let mut free = 0;
    for label in SWEEP {
        let r = rs(label);
        let mut oracle = ShellOracle::new(&r).map_err(|e| e.to_string())?;
        for mu in label_box(r.rank(), -3, 3) {
            let orbit = make_dominant_shifted(&r, &mu).map_err(|e| e.to_string())?;
            let shell = oracle.shell_terms(&mu).map_err(|e| e.to_string())?;
            terms += shell.len();
            let nonzero: Vec<_> = shell.iter().filter(|t| t.difference() != 0).collect();
            for t in &shell {
                ensure!((-1..=1).contains(&t.difference()), "{label} mu={mu} lambda={}: difference {}", t.lambda, t.difference());
            }
            match orbit {
                ShiftedOrbit::Singular => {
                    ensure!(nonzero.is_empty(), "{label} mu={mu}: singular orbit with nonzero pairing");
                }
                ShiftedOrbit::Free { lambda, length, .. } => {
                    free += 1;
                    ensure!(nonzero.len() == 1, "{label} mu={mu}: {} nonzero pairings", nonzero.len());
                    let t = nonzero[0];
                    ensure!(t.lambda == lambda, "{label} mu={mu}: pairing at {} not {lambda}", t.lambda);
                    let slot = if length % 2 == 0 { (1, 0) } else { (0, 1) };
                    ensure!((t.plus, t.minus) == slot, "{label} mu={mu}: ({}, {}) with length {length}", t.plus, t.minus);
                    ensure!(length_mu(&r, &mu).map_err(|e| e.to_string())? == length, "{label} mu={mu}: length");
                }
            }
        }
    }
    Ok(format!("{terms} shell terms, {free} free orbits"))
}

/// Graded weights of the exterior algebra on the given roots, by direct
/// enumeration of subsets in Gray-code order.
fn exterior_by_subsets(rank: usize, roots: &[Vec<i64>]) -> [HashMap<Vec<i64>, i64>; 2] {
    let mut parts = [HashMap::new(), HashMap::new()];
    let mut sum = vec![0i64; rank];
    let mut inside = vec![false; roots.len()];
    let mut parity = 0usize;
    *parts[0].entry(sum.clone()).or_insert(0) += 1;
    for step in 1u64..(1u64 << roots.len()) {
        let bit = step.trailing_zeros() as usize;
        let sign = if inside[bit] { -1 } else { 1 };
        inside[bit] = !inside[bit];
        for (s, c) in sum.iter_mut().zip(&roots[bit]) {
            *s += sign * c;
        }
        parity ^= 1;
        *parts[parity].entry(sum.clone()).or_insert(0) += 1;
    }
    parts
}

fn as_map(c: &FormalCharacter) -> Option<HashMap<Vec<i64>, i64>> {
    c.iter().map(|(w, m)| w.to_ints().map(|k| (k, m))).collect()
}

fn nilspin_identity() -> Check {
    let mut cases = 0;
    for t in all_types_up_to_rank(4) {
        let r = RootSystem::new(t);
        for mask in 0u32..(1 << r.rank()) {
            let simple: Vec<usize> = (0..r.rank()).filter(|i| mask & (1 << i) != 0).collect();
            let sub = Subsystem::levi(&r, &simple).map_err(|e| e.to_string())?;
            let roots: Vec<Vec<i64>> = sub
                .complement(&r)
                .into_iter()
                .map(|k| ints(&r.positive_roots()[k]))
                .collect();
            let expected = exterior_by_subsets(r.rank(), &roots);
            let s = spinor_character(&r, &sub).map_err(|e| e.to_string())?;
            let u = FormalCharacter::single(rho_prime(&r, &sub));
            for (odd, part) in [(false, &s.even), (true, &s.odd)] {
                let lhs = tensor(&dual(part), &u).map_err(|e| e.to_string())?;
                let lhs = as_map(&lhs).ok_or_else(|| format!("{t} {simple:?}: non-integral weight"))?;
                ensure!(lhs == expected[odd as usize], "{t} levi {simple:?}: {} part differs", if odd { "odd" } else { "even" });
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (type, Levi) pairs"))
}

fn freudenthal_vs_weyl() -> Check {
    let mut count = 0;
    for t in all_types_up_to_rank(3) {
        let r = RootSystem::new(t);
        for lambda in label_box(r.rank(), 0, 3) {
            let ch = freudenthal_multiplicities(&r, &lambda).map_err(|e| e.to_string())?;
            let dim = r.dim_irrep(&lambda).map_err(|e| e.to_string())?;
            ensure!(ch.mass() as u128 == dim, "{t} {lambda}: mass {} dim {dim}", ch.mass());
            count += 1;
        }
    }
    let a2 = rs("A2");
    let adj = freudenthal_multiplicities(&a2, &Weight::from_ints(&[1, 1])).unwrap();
    ensure!(adj.mass() == 8, "A2 (1,1) mass {}", adj.mass());
    ensure!(adj.multiplicity(&Weight::from_ints(&[0, 0])) == 2, "A2 (1,1) zero weight");
    Ok(format!("{count} highest weights"))
}

fn angle(w: &[i64], theta: &[f64]) -> f64 {
    w.iter().zip(theta).map(|(c, t)| *c as f64 * t).sum()
}

/// Weyl alternant `Σ_w sign(w) e^{i w(x)(θ)}`.
fn alternant(r: &RootSystem, x: &Weight, theta: &[f64]) -> (f64, f64) {
    let mut re = 0.0;
    let mut im = 0.0;
    for w in enumerate_weyl_group(r).unwrap() {
        let x = angle(&ints(&w.act(x)), theta);
        re += w.sign() as f64 * x.cos();
        im += w.sign() as f64 * x.sin();
    }
    (re, im)
}

fn mckean_singer() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2024);
    let ts = [0.1, 1.0, 10.0];
    let mut worst_dev: f64 = 0.0;
    let mut worst_err: f64 = 0.0;
    for label in ["A1", "A2"] {
        let r = rs(label);
        let rho = r.rho().clone();
        for _ in 0..20 {
            let labels: Vec<i64> = (0..r.rank()).map(|_| rng.gen_range(-3..=3)).collect();
            let mu = Weight::from_ints(&labels);
            let theta: Vec<f64> = loop {
                let th: Vec<f64> = (0..r.rank()).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
                let regular = r
                    .positive_roots()
                    .iter()
                    .all(|a| (angle(&ints(a), &th) / 2.0).sin().abs() > 0.05);
                if regular {
                    break th;
                }
            };
            let shell = r.norm_sq(&(&mu + &rho)).unwrap();
            let radius = shell + Rational::from_integer(6);
            let report = t_independence_report(&r, &mu, &theta, &ts, radius).map_err(|e| e.to_string())?;
            ensure!(report.max_relative_deviation < 1e-9, "{label} mu={mu}: deviation {:e}", report.max_relative_deviation);
            worst_dev = worst_dev.max(report.max_relative_deviation);
            let (nr, ni) = alternant(&r, &(&mu + &rho), &theta);
            let (dr, di) = alternant(&r, &rho, &theta);
            let den = dr * dr + di * di;
            let expected = ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den);
            let singular = r.is_regular(&(&mu + &rho)).map(|b| !b).unwrap();
            for v in &report.values {
                if singular {
                    ensure!(v.norm() < 1e-12, "{label} mu={mu}: singular value {v}");
                } else {
                    let err = ((v.re - expected.0).powi(2) + (v.im - expected.1).powi(2)).sqrt();
                    worst_err = worst_err.max(err);
                    ensure!(err < 1e-9, "{label} mu={mu}: value {v} expected {expected:?}");
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("t-deviation {worst_dev:.1e}, value error {worst_err:.1e}, {elapsed:.2?}"))
}

fn random_orthogonal(n: usize, rng: &mut StdRng) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)).qr().q()
}

fn matrix_model() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    let mut instances = 0;
    let mut worst: f64 = 0.0;
    for (label, top) in [("A1", 6), ("A2", 2)] {
        let r = rs(label);
        let model = DiracModel::new(&r).map_err(|e| e.to_string())?;
        let rotated = model
            .with_p_frame(random_orthogonal(model.spin().p_dimension, &mut rng))
            .map_err(|e| e.to_string())?;
        for lambda in label_box(r.rank(), 0, top) {
            for mu in label_box(r.rank(), -3, 3) {
                let dm = model.dirac(&lambda, &mu).map_err(|e| e.to_string())?;
                let scalar = model.predicted_square(&lambda, &mu).map_err(|e| e.to_string())?;
                let s = *scalar.numer() as f64 / *scalar.denom() as f64;
                let herm = dm.hermitian_defect();
                let odd = dm.grading_defect();
                let dev = dm.square_deviation(s);
                ensure!(herm < 1e-8 && odd < 1e-8, "{label} {lambda} {mu}: hermitian {herm:e} odd {odd:e}");
                ensure!(dev < 1e-8, "{label} {lambda} {mu}: square deviation {dev:e}");
                let other = rotated.dirac(&lambda, &mu).map_err(|e| e.to_string())?;
                let frame = (&dm.d - &other.d).iter().map(|z| z.norm()).fold(0.0, f64::max);
                ensure!(frame < 1e-7, "{label} {lambda} {mu}: frame dependence {frame:e}");
                let rdev = other.square_deviation(s);
                ensure!(rdev < 1e-8, "{label} {lambda} {mu}: rotated square deviation {rdev:e}");
                worst = worst.max(herm).max(odd).max(dev).max(frame);
                instances += 1;
            }
        }
    }
    let a1 = rs("A1");
    let model = DiracModel::new(&a1).unwrap();
    let dm = model.dirac(&Weight::from_ints(&[5]), &Weight::from_ints(&[3])).unwrap();
    ensure!((dm.space_dim, dm.even_dim, dm.odd_dim) == (2, 1, 1), "A1 (5),(3): dims {:?}", (dm.space_dim, dm.even_dim, dm.odd_dim));
    ensure!(dm.square_deviation(10.0) < 1e-8, "A1 (5),(3): D^2 is not 10 I");
    Ok(format!("{instances} instances, worst defect {worst:.1e}"))
}

fn graded_kernel() -> Check {
    let mut checked = 0;
    for label in ["A1", "A2"] {
        let r = rs(label);
        let model = DiracModel::new(&r).map_err(|e| e.to_string())?;
        for mu in label_box(r.rank(), -3, 3) {
            let shell = r.norm_sq(&(&mu + r.rho())).unwrap();
            let report = model.kernel_report(&mu, shell).map_err(|e| e.to_string())?;
            let (want, length) = match make_dominant_shifted(&r, &mu).unwrap() {
                ShiftedOrbit::Singular => (0, None),
                ShiftedOrbit::Free { lambda, length, .. } => (r.dim_irrep(&lambda).unwrap(), Some(length)),
            };
            ensure!(report.total_kernel_dim == want, "{label} mu={mu}: kernel {} expected {want}", report.total_kernel_dim);
            for e in report.entries.iter().filter(|e| e.kernel.dim > 0) {
                let length = length.ok_or_else(|| format!("{label} mu={mu}: kernel on a singular orbit"))?;
                let slot = if length % 2 == 0 { "even" } else { "odd" };
                ensure!(e.kernel.parity() == slot, "{label} mu={mu}: parity {}", e.kernel.parity());
                ensure!(e.kernel.degrees.iter().all(|&d| d == length), "{label} mu={mu}: degrees {:?}", e.kernel.degrees);
                ensure!(e.kernel.borderline.is_empty(), "{label} mu={mu}: borderline singular values");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} weights"))
}

fn gh_remark() -> Check {
    let a2 = rs("A2");
    let sub = Subsystem::levi(&a2, &[0]).unwrap();
    let mut checked = 0;
    let mut nonzero = 0;
    for mu in label_box(2, -3, 3) {
        if !sub.is_dominant_integral(&a2, &mu) {
            continue;
        }
        let closed = gh_index(&a2, &sub, &mu).map_err(|e| e.to_string())?;
        let oracle = gh_oracle_index(&a2, &sub, &mu).map_err(|e| e.to_string())?;
        ensure!(closed == oracle, "mu={mu}: closed form {closed:?}, H-oracle {oracle:?}");
        checked += 1;
        nonzero += !closed.is_zero() as usize;
    }
    ensure!(checked == 28, "{checked} H-dominant weights");
    Ok(format!("{checked} H-dominant weights, {nonzero} nonzero"))
}

fn dsl() -> Check {
    let corpus = include_str!("../../core/tests/data/dsl_corpus.txt");
    ensure!(corpus.lines().count() == 50, "corpus has {} lines", corpus.lines().count());
    for src in corpus.lines() {
        let tree = parse_str(src).map_err(|e| format!("{src}: {e}"))?;
        let printed = tree.to_string();
        let again = parse_str(&printed).map_err(|e| format!("{printed}: {e}"))?;
        ensure!(again == tree, "{src} printed as {printed}");
    }
    let a1 = rs("A1");
    let a2 = rs("A2");
    let run = |r: &RootSystem, s: &str| eval_str(r, s).map_err(|e| format!("{s}: {e}"));
    ensure!(run(&a2, "dim(V[1,1])")? == Value::Integer(8), "dim(V[1,1])");
    let expected = IndexResult::Irreducible {
        sign: -1,
        lambda: Weight::from_ints(&[0, 0]),
        length: 1,
        dimension: 1,
    };
    ensure!(run(&a2, "ind([-2,1])")? == Value::Index(expected), "ind([-2,1])");
    ensure!(run(&a1, "mult(V[2],[0])")? == Value::Integer(1), "mult(V[2],[0])");
    let mut columns = BTreeMap::new();
    for (src, column) in [("V[1,@]", 5), ("V[1]*", 6), ("pair(V[1])", 10), ("mult(V[1],[x])", 12)] {
        match parse_str(src) {
            Err(Error::Parse { column: c, .. }) => {
                ensure!(c == column, "{src}: column {c}, expected {column}");
                columns.insert(src, c);
            }
            other => return Err(format!("{src}: {other:?}")),
        }
    }
    Ok(format!("50 round trips, 3 evaluations, {} positioned errors", columns.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("closed form equals shell oracle", closed_form_matches_oracle),
        ("Kostant pairing contract", pairing_contract),
        ("nilspin identity", nilspin_identity),
        ("Freudenthal mass equals Weyl dimension", freudenthal_vs_weyl),
        ("McKean-Singer t-independence", mckean_singer),
        ("cubic Dirac matrix model", matrix_model),
        ("graded kernel", graded_kernel),
        ("G/H index", gh_remark),
        ("expression language", dsl),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
