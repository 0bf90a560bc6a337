//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use geokit::cyclotomic::{cs_relation_report, CyclotomicElement};
use geokit::geography::{adjunction_genus, cs_surface, homology_profile, mumford_m};
use geokit::lattice::{cokernel, rank_mod_p, snf, AbelianGroup, IntMatrix};
use geokit::presentation::{y1_complement, y1_surgeries, y_n_complement, y_n_surgeries};
use geokit::recipe::{builtin_recipe, run_recipe, Report};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(name: &str, params: &[(&str, i64)]) -> Result<Report, String> {
    let overrides: Vec<(String, i64)> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let r = builtin_recipe(name)
        .and_then(|r| r.with_params(&overrides))
        .map_err(|e| e.to_string())?;
    run_recipe(&r).map_err(|e| e.to_string())
}

fn element() -> impl Strategy<Value = CyclotomicElement> {
    prop::array::uniform4(-50i64..=50).prop_map(|[a, b, c, d]| CyclotomicElement::new(a, b, c, d))
}

fn cyclotomic_identity() -> Outcome {
    let s = CyclotomicElement::sqrt3();
    ensure(&s * &s == CyclotomicElement::from_int(3), "(2z - z^3)^2 != 3")?;
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&(element(), element(), element()), |(a, b, c)| {
            prop_assert_eq!(&a.conj().conj(), &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &(-&a), CyclotomicElement::zero());
            prop_assert_eq!(&a * &CyclotomicElement::one(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("sqrt3^2 = 3; 1000 ring/conjugation cases".into())
}

fn cartwright_steger() -> Outcome {
    let rep = cs_relation_report();
    for g in &rep.generators {
        println!("    {} preserves A: {} (det {})", g.name, g.preserves_form, g.det);
    }
    for r in &rep.relations {
        match &r.witness {
            Some(w) => println!("    {}: witness {w}", r.relation),
            None => println!("    {}: no scalar witness", r.relation),
        }
    }
    ensure(
        rep.all_generators_preserve_form(),
        "a generator fails to preserve A",
    )?;
    let n = rep.verified_relations();
    ensure(
        n == rep.relations.len(),
        format!(
            "form preserved by u,v,j,b but only {n}/{} relations hold modulo scalars",
            rep.relations.len()
        ),
    )?;
    Ok("all generators preserve A; all relations witnessed".into())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=8);
    let cols = rng.gen_range(1..=8);
    let dense = |rng: &mut ChaCha8Rng, r: usize, c: usize, lim: i64| -> Vec<Vec<i64>> {
        (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-lim..=lim)).collect())
            .collect()
    };
    if rng.gen_bool(0.3) {
        let k = rng.gen_range(1..=rows.min(cols));
        let a = IntMatrix::from_rows(k, &dense(rng, rows, k, 4)).unwrap();
        let b = IntMatrix::from_rows(cols, &dense(rng, k, cols, 4)).unwrap();
        a.mul(&b)
    } else {
        IntMatrix::from_rows(cols, &dense(rng, rows, cols, 12)).unwrap()
    }
}

fn snf_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut comparisons = 0;
    for case in 0..500 {
        let a = random_matrix(&mut rng);
        let r = snf(&a);
        ensure(r.u.mul(&a).mul(&r.v) == r.s, format!("case {case}: U*A*V != S"))?;
        for m in [&r.u, &r.v] {
            let d = m.det().ok_or("non-square transform")?;
            ensure(d.abs().is_one(), format!("case {case}: transform has det {d}"))?;
        }
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    ensure(r.s.get(i, j).is_zero(), format!("case {case}: S not diagonal"))?;
                }
            }
        }
        let f = &r.invariant_factors;
        for (k, d) in f.iter().enumerate() {
            ensure(
                d.is_positive() && r.s.get(k, k) == d,
                format!("case {case}: bad factor {d}"),
            )?;
            if k + 1 < f.len() {
                ensure(
                    (&f[k + 1] % d).is_zero(),
                    format!("case {case}: {d} does not divide {}", f[k + 1]),
                )?;
            }
        }
        let g = cokernel(&a);
        for p in [2u64, 3, 5, 7] {
            if g.torsion.iter().any(|t| (t % BigInt::from(p)).is_zero()) {
                continue;
            }
            let rp = rank_mod_p(&a, p).map_err(|e| e.to_string())?;
            ensure(
                a.cols() - rp == g.rank,
                format!(
                    "case {case}: free rank {} vs mod-{p} corank {}",
                    g.rank,
                    a.cols() - rp
                ),
            )?;
            comparisons += 1;
        }
    }
    Ok(format!("500 matrices, {comparisons} mod-p rank comparisons"))
}

fn yn_homology() -> Outcome {
    for n in 2..=6u32 {
        for m in 1..=3i64 {
            let mut p = y_n_complement(n);
            for s in y_n_surgeries(n, m) {
                p = p.apply_surgery(&s).map_err(|e| e.to_string())?;
            }
            ensure(p.h1().is_trivial(), format!("H1(Y_{n}({m})) = {}", p.h1()))?;
            let rep = run("Yn", &[("n", n as i64), ("m", m)])?;
            let h1 = rep.h1.ok_or("no H1 in report")?;
            ensure(
                h1.group == "0",
                format!("recipe Yn n={n} m={m}: H1 = {}", h1.group),
            )?;
        }
    }
    Ok("H1 = 0 for n in 2..=6, m in 1..=3".into())
}

fn y1_homology() -> Outcome {
    for p in 1..=3i64 {
        for q in 1..=3i64 {
            for m in 1..=3i64 {
                let mut pres = y1_complement();
                for s in y1_surgeries(p, q, m) {
                    pres = pres.apply_surgery(&s).map_err(|e| e.to_string())?;
                }
                // a1..b2 die, c has order p, d has order q, a3 and b3 are free
                let expected =
                    cokernel(&IntMatrix::from_i64(&[&[p, 0], &[0, q]])).direct_sum(&AbelianGroup::free(2));
                let got = pres.h1();
                ensure(
                    got == expected,
                    format!("p={p} q={q} m={m}: H1 = {got}, expected {expected}"),
                )?;
                let rep = run("Y1pq", &[("p", p), ("q", q), ("m", m)])?;
                ensure(
                    rep.passed(),
                    format!("Y1pq p={p} q={q} m={m} failed its expectations"),
                )?;
            }
        }
    }
    Ok("H1 = Z^2 + Z/p + Z/q over {1,2,3}^3".into())
}

fn x1_invariants() -> Outcome {
    let rep = run("X1", &[("m", 1), ("p", 1), ("q", 1)])?;
    let r = rep.result.as_ref().ok_or("no result")?;
    ensure(
        r.euler == 12 && r.signature == 0,
        format!("e={} sigma={}", r.euler, r.signature),
    )?;
    let prof = r.profile.as_ref().ok_or("no profile")?;
    ensure(prof.b1 == 0, format!("b1 = {}", prof.b1))?;
    ensure(prof.model == "5CP²#5CP̄²", format!("model {}", prof.model))?;
    ensure(
        r.parity == "odd" && !r.parity_note.is_empty(),
        format!("parity {} ({})", r.parity, r.parity_note),
    )?;
    for p in [2i64, 3, 5, 7] {
        let rep = run("X1", &[("p", p), ("q", 1)])?;
        let h1 = rep.h1.ok_or("no H1")?;
        let g: AbelianGroup = h1
            .group
            .parse()
            .map_err(|e: geokit::lattice::LatticeError| e.to_string())?;
        ensure(h1.lower_bound, "H1 not marked as lower bound")?;
        ensure(
            g.torsion_contains_cyclic(&BigInt::from(p)),
            format!("p={p}: H1 = {g}"),
        )?;
    }
    Ok("e=12 sigma=0 b1=0 5CP²#5CP̄² odd; Z/p in H1 for p in {2,3,5,7}".into())
}

fn adjunction() -> Outcome {
    let h = adjunction_genus(1, 3).map_err(|e| e.to_string())?;
    let s = adjunction_genus(0, 4).map_err(|e| e.to_string())?;
    ensure(
        h == 3 && s == 3,
        format!("genus(H) = {h}, genus(2[S2 x pt]) = {s}"),
    )?;
    Ok("genus(H) = 3, genus(2[Sigma2 x pt]) = 3".into())
}

fn spin_x() -> Outcome {
    let rep = run("spinX", &[])?;
    let r = rep.result.as_ref().ok_or("no result")?;
    let model = r.profile.as_ref().map(|p| p.model.clone()).unwrap_or_default();
    ensure(
        r.euler == 8 && r.signature == 0 && model == "3(S²×S²)",
        format!("e={} sigma={} model {model}", r.euler, r.signature),
    )?;
    Ok("e=8 sigma=0 3(S²×S²)".into())
}

fn block_table() -> Outcome {
    let m = mumford_m();
    let c = m.char_numbers();
    ensure(
        m.euler == 3 && m.signature == 1 && m.b1 == Some(0) && c.c1sq == 9 && c.on_bmy_line,
        format!("M: {}", m.table_row()),
    )?;
    for n in 1..=6u32 {
        let b = cs_surface(n);
        let c = b.char_numbers();
        let n = i64::from(n);
        ensure(
            b.euler == 3 * n && b.signature == n && c.c1sq == 9 * n && c.on_bmy_line,
            format!("M_{n}: {}", b.table_row()),
        )?;
    }
    let p = homology_profile(&cs_surface(1)).map_err(|e| e.to_string())?;
    ensure(
        p.b1 == 2 && p.b2 == 5 && 2 - 2 * p.b1 as i64 + p.b2 == 3,
        format!("M_1 Betti b1={} b2={}", p.b1, p.b2),
    )?;
    Ok("M, M_1..M_6 invariants; M_1: 2 - 4 + 5 = 3".into())
}

fn xn_discrepancy() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_geokit"))
        .args(["run", "Xn", "--param", "n=2"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(
        out.status.code() == Some(0),
        format!("exit code {:?}", out.status.code()),
    )?;
    for needle in ["4*n+8 = 16", "12*n = 24", "4*n = 8", "FLAG X.euler"] {
        ensure(text.contains(needle), format!("report lacks `{needle}`"))?;
    }
    Ok("16 / 24 / 8 reported, flagged, exit 0".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("cyclotomic identity and ring axioms", cyclotomic_identity),
        ("lattice generators and relations", cartwright_steger),
        ("Smith normal form", snf_correctness),
        ("H1 of Y_n(m)", yn_homology),
        ("H1 of Y_1(1/p, m/q)", y1_homology),
        ("X_1 invariants", x1_invariants),
        ("adjunction genus", adjunction),
        ("spin fiber sum", spin_x),
        ("built-in block table", block_table),
        ("X_n Euler discrepancy", xn_discrepancy),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
