//! End-to-end acceptance run: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/fixtures.rs"]
mod fixtures;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use cliffrep::linalg::{big_phi, big_phi_inverse, cayley_hamilton_residual, cliff_exp, exp_series};
use cliffrep::random::{random_cmatrix, random_complex, random_multivector, random_nonzero_complex};
use cliffrep::representation::{
    check_isomorphism, inverse, lemma3_t_report, matrix_unit_basis, phi, phi_inverse, RepMatrix,
};
use cliffrep::universal::{build_p, lemma1_residual, lemma3_r_residual, verify_matrix_equality, SimilarityVerifier};
use cliffrep::{
    blade_product, volume_square, AlgebraSignature, BladeIndex, CliffordMatrix, Complex, Error, Multivector,
};
use cliffrep_cli::parser::{parse_value, Value};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn sig(n: usize) -> AlgebraSignature {
    AlgebraSignature::standard(n).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Pass when `worst <= bound`, reporting the worst value either way.
fn within(label: &str, worst: f64, bound: f64) -> Outcome {
    let msg = format!("{label} {worst:.3e} (bound {bound:.0e})");
    if worst <= bound {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Sign of `e_A e_B` by literally sorting the concatenated generator list
/// with adjacent swaps and then cancelling equal neighbours (`e_i^2 = -1`).
fn brute_blade_product(a: u32, b: u32) -> (u32, i32) {
    let mut word: Vec<u32> = (0..32)
        .filter(|i| a >> i & 1 == 1)
        .chain((0..32).filter(|i| b >> i & 1 == 1))
        .collect();
    let mut sign = 1;
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let mut mask = 0;
    let mut k = 0;
    while k < word.len() {
        if k + 1 < word.len() && word[k] == word[k + 1] {
            sign = -sign;
            k += 2;
        } else {
            mask |= 1 << word[k];
            k += 1;
        }
    }
    (mask, sign)
}

fn generator_laws() -> Outcome {
    let mut pairs = 0usize;
    for n in 0..=12 {
        let s = sig(n);
        for i in 1..=n {
            let ei = BladeIndex::e(i);
            if blade_product(&s, ei, ei) != (BladeIndex::SCALAR, c(-1.0, 0.0)) {
                return Err(format!("e{i}^2 != -1 for n = {n}"));
            }
            for j in 1..=n {
                let ej = BladeIndex::e(j);
                let (bij, sij) = blade_product(&s, ei, ej);
                let (bji, sji) = blade_product(&s, ej, ei);
                if i != j && (bij != bji || sij != -sji) {
                    return Err(format!("e{i} e{j} != -e{j} e{i} for n = {n}"));
                }
                pairs += 1;
            }
        }
        if n <= 8 {
            for a in 0..s.dim() as u32 {
                for b in 0..s.dim() as u32 {
                    let (mask, sign) = brute_blade_product(a, b);
                    if blade_product(&s, BladeIndex(a), BladeIndex(b)) != (BladeIndex(mask), c(sign as f64, 0.0)) {
                        return Err(format!("blade product {a:#b} * {b:#b} wrong for n = {n}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "{pairs} products exact (all blade pairs for n <= 8, generator pairs for n <= 12)"
    ))
}

fn volume_squares() -> Outcome {
    for n in 0..=12 {
        let s = sig(n);
        let mut vol = Multivector::one(&s);
        for i in 1..=n {
            vol = &vol * &Multivector::generator(&s, i);
        }
        let brute = &vol * &vol;
        let closed = volume_square(&s);
        if brute != Multivector::scalar(&s, closed) {
            return Err(format!("volume square mismatch at n = {n}"));
        }
        if n >= 1 {
            let m = n - 1;
            let r = if ((m + 1) * (m + 2) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if closed != c(r, 0.0) {
                return Err(format!("step square mismatch at n = {m}"));
            }
        }
    }
    if volume_square(&sig(3)) != c(1.0, 0.0) || volume_square(&sig(5)) != c(-1.0, 0.0) {
        return Err("e[3]^2 = 1 or e[5]^2 = -1 fails".into());
    }
    Ok("closed form equals brute-force product for n <= 12; e[3]^2 = 1, e[5]^2 = -1".into())
}

fn universal_similarity() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=10 {
        let verifier = SimilarityVerifier::new(n).map_err(|e| e.to_string())?;
        let mut r = rng(100 + n as u64);
        for _ in 0..100 {
            let a = random_multivector(verifier.signature(), &mut r);
            let scale = phi(&a).unwrap().max_abs().max(1.0);
            worst = worst.max(verifier.residual(&a).unwrap() / scale);
        }
    }
    within("n = 1..10, 100 elements each; max relative residual", worst, 1e-9)
}

fn fixture_equalities() -> Outcome {
    let (p1, p1_inv) = fixtures::p1();
    let (b1, b1_inv) = build_p(1).unwrap();
    let id = |m: &CliffordMatrix| CliffordMatrix::identity(m.signature(), m.rows());
    let p1_identity = p1.try_mul(&p1_inv).unwrap().distance(&id(&p1));
    let p1_match = p1.distance(&b1).max(p1_inv.distance(&b1_inv));
    let (b2, b2_inv) = build_p(2).unwrap();
    let p2 = fixtures::p2();
    if b2 != p2 || b2_inv != p2 {
        return Err("recursive P_2 differs from the closed form".into());
    }
    if p2.try_mul(&p2).unwrap() != id(&p2) {
        return Err("P_2 is not involutory".into());
    }
    let (p3, p3_inv) = fixtures::p3();
    let (b3, b3_inv) = build_p(3).unwrap();
    let p4 = fixtures::p4();
    let (b4, b4_inv) = build_p(4).unwrap();
    let worst = p3
        .distance(&b3)
        .max(p3_inv.distance(&b3_inv))
        .max(p4.distance(&b4))
        .max(p4.distance(&b4_inv));
    if p1_identity != 0.0 || p1_match > 1e-12 {
        return Err(format!("P_1 P_1^-1 - I = {p1_identity:e}, P_1 mismatch {p1_match:e}"));
    }
    within(
        "P_2 exact and involutory, P_1 P_1^-1 = I; P_3/P_4 entrywise",
        worst,
        1e-12,
    )
}

fn homomorphism() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 0..=10 {
        let s = sig(n);
        if phi(&Multivector::one(&s)).unwrap() != RepMatrix::identity(n) {
            return Err(format!("phi(1) != I for n = {n}"));
        }
        let mut r = rng(200 + n as u64);
        for _ in 0..100 {
            let (a, b) = (random_multivector(&s, &mut r), random_multivector(&s, &mut r));
            let (pa, pb) = (phi(&a).unwrap(), phi(&b).unwrap());
            let res = phi(&(&a * &b)).unwrap().distance(&pa.try_mul(&pb).unwrap()).unwrap();
            let scale = (pa.max_abs() * pb.max_abs() * pa.extent().0 as f64).max(1.0);
            worst = worst.max(res / scale);
        }
    }
    within(
        "phi(1) = I exactly; 100 pairs per n <= 10, max relative residual",
        worst,
        1e-9,
    )
}

fn round_trips() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut r = rng(300);
    for n in 0..=8 {
        let s = sig(n);
        for _ in 0..50 {
            let a = random_multivector(&s, &mut r);
            worst = worst.max(phi_inverse(&phi(&a).unwrap(), n).unwrap().distance(&a));
        }
        for rows in 1..=3 {
            for cols in 1..=3 {
                let m = random_cmatrix(&s, rows, cols, &mut r);
                let back = big_phi_inverse(&big_phi(&m).unwrap(), n, rows, cols).unwrap();
                worst = worst.max(back.distance(&m));
            }
        }
    }
    within("elements and matrices up to 3x3, n <= 8; max error", worst, 1e-10)
}

fn determinant_formulas() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut r = rng(400);
    for n in [1, 2] {
        let s = sig(n);
        for _ in 0..1000 {
            let a = random_multivector(&s, &mut r);
            let formula: Complex = a.coeffs().iter().map(|x| x * x).sum();
            worst = worst.max((phi(&a).unwrap().det().unwrap() - formula).norm());
        }
    }
    within("1000 draws each for n = 1, 2; max error", worst, 1e-12)
}

fn invertibility() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut r = rng(500);
    for n in 0..=8 {
        let s = sig(n);
        for _ in 0..20 {
            let a = random_multivector(&s, &mut r);
            let b = phi_inverse(&phi(&a).unwrap().inverse().unwrap(), n).unwrap();
            let scale = a.max_abs() * b.max_abs() * s.dim() as f64;
            worst = worst.max((&a * &b).distance(&Multivector::one(&s)) / scale.max(1.0));
        }
    }
    let s = sig(1);
    let singular = Multivector::from_coeffs(&s, vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
    if inverse(&singular) != Err(Error::NotInvertible) {
        return Err("1 + i e1 was not reported non-invertible".into());
    }
    within("1 + i e1 rejected; random a a^-1 - 1, max relative", worst, 1e-9)
}

fn matrix_equalities() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut r = rng(600);
    for n in [1, 2] {
        let s = sig(n);
        for rows in 1..=4 {
            for cols in 1..=5 {
                let a = random_cmatrix(&s, rows, cols, &mut r);
                worst = worst.max(verify_matrix_equality(&a).unwrap());
            }
        }
    }
    within(
        "J over C_1 and K over C_2, all shapes up to 4x5; max residual",
        worst,
        1e-10,
    )
}

fn cayley_hamilton() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut r = rng(700);
    for n in [1, 2, 4] {
        let s = sig(n);
        for size in 1..=3 {
            for _ in 0..5 {
                worst = worst.max(cayley_hamilton_residual(&random_cmatrix(&s, size, size, &mut r)).unwrap());
            }
        }
    }
    within("C_1, C_2, C_4 up to 3x3; max relative residual", worst, 1e-8)
}

fn exponential() -> Outcome {
    let mut series: f64 = 0.0;
    let mut consistency: f64 = 0.0;
    let mut r = rng(800);
    for n in 0..=5 {
        let s = sig(n);
        for _ in 0..10 {
            let a = random_multivector(&s, &mut r);
            let l1: f64 = a.coeffs().iter().map(|x| x.norm()).sum();
            let a = a.scale(c(r_unit(&mut r) / l1, 0.0));
            let e = cliff_exp(&CliffordMatrix::scalar_diag(&s, 1, &a)).unwrap();
            series = series.max(e.get(0, 0).distance(&exp_series(&a, 40).unwrap()));
            let direct = big_phi(&e).unwrap();
            let image = phi(&a).unwrap().try_map(|m| m.exp()).unwrap();
            consistency = consistency.max(direct.distance(&image).unwrap());
        }
    }
    let s = sig(2);
    let mut closed: f64 = 0.0;
    for theta in [0.3, 0.7] {
        let a = Multivector::blade(&s, BladeIndex(3), c(theta, 0.0));
        let e = cliff_exp(&CliffordMatrix::scalar_diag(&s, 1, &a)).unwrap();
        let want = Multivector::from_coeffs(
            &s,
            vec![c(theta.cos(), 0.0), c(0.0, 0.0), c(0.0, 0.0), c(theta.sin(), 0.0)],
        )
        .unwrap();
        closed = closed.max(e.get(0, 0).distance(&want));
    }
    let msg =
        format!("series {series:.3e} (1e-8), closed form {closed:.3e} (1e-10), Phi consistency {consistency:.3e}");
    if series <= 1e-8 && closed <= 1e-10 && consistency <= 1e-12 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn r_unit(r: &mut ChaCha8Rng) -> f64 {
    use rand::Rng;
    r.gen_range(0.05..1.0)
}

fn isomorphism_rank() -> Outcome {
    for n in 0..=8 {
        let report = check_isomorphism(n).unwrap();
        if !report.pass() {
            return Err(format!("rank {} != {} at n = {n}", report.rank, report.expected));
        }
    }
    Ok("rank 2^n for every n <= 8".into())
}

fn tau_products(u: Complex, v: Complex) -> f64 {
    let tau = matrix_unit_basis(u, v).unwrap();
    let s = tau[0].signature().clone();
    let mut worst: f64 = 0.0;
    for p in 0..2 {
        for q in 0..2 {
            for st in 0..2 {
                for t in 0..2 {
                    let prod = &tau[2 * p + q] * &tau[2 * st + t];
                    let want = if q == st {
                        tau[2 * p + t].clone()
                    } else {
                        Multivector::zero(&s)
                    };
                    worst = worst.max(prod.distance(&want));
                }
            }
        }
    }
    worst
}

fn lemma_suite() -> Outcome {
    let mut r = rng(900);
    let mut similarity: f64 = 0.0;
    let mut tau: f64 = 0.0;
    for _ in 0..20 {
        let (u, v) = (random_nonzero_complex(&mut r), random_nonzero_complex(&mut r));
        similarity = similarity.max(lemma1_residual(u, random_complex(&mut r), random_complex(&mut r)).unwrap());
        let a = [0; 4].map(|_| random_complex(&mut r));
        similarity = similarity.max(lemma3_r_residual(u, v, a).unwrap());
        tau = tau.max(tau_products(u, v));
    }
    // Small integer squares with exact square roots: the relations hold exactly.
    let small = [c(1.0, 0.0), c(-1.0, 0.0), c(4.0, 0.0), c(-4.0, 0.0)];
    for &u in &small {
        for &v in &small {
            if tau_products(u, v) != 0.0 {
                return Err(format!("matrix units not exact for u = {u}, v = {v}"));
            }
        }
    }
    let report = lemma3_t_report(c(-1.0, 0.0), c(-1.0, 0.0), 50, &mut r).map_err(|e| e.to_string())?;
    let verdict = if report.matches_stated_equation {
        "stated T map holds"
    } else {
        "stated T map differs"
    };
    let msg = format!(
        "similarity {similarity:.3e} (1e-10), matrix units {tau:.3e} (exact for small integers); T report: {verdict}"
    );
    if similarity <= 1e-10 && tau <= 1e-12 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn cli_run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_cliffrep"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap().trim().to_string(),
        out.status.code().unwrap_or(-1),
    )
}

fn cli() -> Outcome {
    let (rep, code) = cli_run(&["rep", "-n", "2", "e1"]);
    let golden = r#"{"parity":"even","matrix":[[{"re":0,"im":1},{"re":0,"im":0}],[{"re":0,"im":0},{"re":0,"im":-1}]]}"#;
    if rep != golden || code != 0 {
        return Err(format!("rep golden mismatch: {rep}"));
    }
    let (text, code) = cli_run(&["verify", "-n", "4", "--trials", "50", "--seed", "7"]);
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if code != 0 || doc["pass"] != true || doc["max_residual"].as_f64().is_none_or(|r| r > 1e-9) {
        return Err(format!("verify golden failed: {text}"));
    }
    let (text, code) = cli_run(&["exp", "-n", "2", "0.3*e12"]);
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let cos = doc["coeffs"]["1"]["re"].as_f64().unwrap_or(f64::NAN);
    let sin = doc["coeffs"]["e12"]["re"].as_f64().unwrap_or(f64::NAN);
    if code != 0 || !((cos - 0.3f64.cos()).abs() <= 1e-10 && (sin - 0.3f64.sin()).abs() <= 1e-10) {
        return Err(format!("exp golden failed: {text}"));
    }

    let mut r = rng(1000);
    for k in 0..200 {
        let s = sig(k % 12);
        let m = random_multivector(&s, &mut r);
        if parse_value(&m.to_string(), &s) != Ok(Value::Element(m.clone())) {
            return Err(format!("round trip failed for {m}"));
        }
    }

    let contract = [
        (&["iso-rank", "-n", "3"][..], 0),
        (&["ch-check", "-n", "2", "--tol", "0", "[1.1, 0.7*e1; 2i, e12]"], 1),
        (&["ch-check", "-n", "2", "[1.1, 0.7*e1; 2i, e12]"], 0),
        (&["rep", "-n", "2", "e3"], 2),
        (&["rep", "-n", "2", "(1 +"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, want) in contract {
        let (text, code) = cli_run(args);
        let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("{args:?}: {e}"))?;
        if code != want || (want == 2 && !doc["error"].is_object()) {
            return Err(format!("{args:?} exited {code}, expected {want}"));
        }
    }
    Ok("three golden examples, 200 round trips, exit codes 0/1/2".into())
}

fn main() {
    let criteria: [Criterion; 14] = [
        (1, "generator laws", generator_laws),
        (2, "volume-element square", volume_squares),
        (3, "universal similarity", universal_similarity),
        (4, "fixture equalities", fixture_equalities),
        (5, "homomorphism", homomorphism),
        (6, "round-trips", round_trips),
        (7, "determinant formulas", determinant_formulas),
        (8, "invertibility transfer", invertibility),
        (9, "matrix equalities", matrix_equalities),
        (10, "Cayley-Hamilton", cayley_hamilton),
        (11, "exponential", exponential),
        (12, "isomorphism rank", isomorphism_rank),
        (13, "lemma suite", lemma_suite),
        (14, "CLI", cli),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", 14 - failed, 14);
    if failed > 0 {
        std::process::exit(1);
    }
}
