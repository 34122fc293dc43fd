//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any failed. All mathematical checks are exact; the only
//! tolerances are the wall-clock budgets below.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_csm::chow::ChowPresentation;
use toric_csm::csm::{self, CsmOptions};
use toric_csm::fan::{product, projective_space, weighted_projective, Fan};
use toric_csm::linalg::{
    determinant, hermite_normal_form, is_hermite_normal_form, rational_rank, strip_zero_rows,
    IntegerMatrix, RationalMatrix,
};
use toric_csm::poly::{GradedClass, Monomial};
use toric_csm_cli::main_with_args;
use toric_csm_cli::report::OutputReport;

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const PROJECTIVE_BUDGET: Duration = Duration::from_secs(10);
const P6_CSM_BUDGET: Duration = Duration::from_secs(10);
const P5_P6_FORCED_BUDGET: Duration = Duration::from_secs(120);
const P16_EULER_BUDGET: Duration = Duration::from_secs(5);

const HNF_SAMPLES: usize = 1000;
const HNF_SEED: u64 = 0x5eed_0005;
const ELIMINATION_CHOICES: usize = 3;
/// Pairwise products in the suite are capped at the size of P^5 x P^6.
const MAX_PRODUCT_DIM: usize = 11;
const ORACLE_MAX_RAYS: usize = 6;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toric-csm").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    if code != 0 {
        return Err(format!(
            "{args:?} exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    Ok(String::from_utf8(out).expect("utf-8 output"))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn within(label: &str, elapsed: Duration, budget: Duration) -> Result<String, String> {
    ensure(elapsed < budget, || {
        format!("{label} took {elapsed:.2?}, budget {budget:?}")
    })?;
    Ok(format!("{label} {elapsed:.2?} < {budget:?}"))
}

fn chow(fan: &Fan, elim: Option<&[usize]>) -> Result<ChowPresentation, String> {
    ChowPresentation::build(fan, elim).map_err(|e| format!("{}: {e}", label(fan)))
}

fn label(fan: &Fan) -> String {
    fan.name().unwrap_or("(unnamed)").to_owned()
}

/// Base fans plus their pairwise products up to the size of P^5 x P^6.
fn suite() -> Vec<Fan> {
    let base = common::base_suite();
    let mut fans = base.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.dim() + b.dim() <= MAX_PRODUCT_DIM {
                fans.push(product(a, b).expect("products of valid fans are valid"));
            }
        }
    }
    fans
}

fn criterion_1() -> Outcome {
    let args = [
        "csm",
        "--builder",
        "hirzebruch=5",
        "--elim-cone",
        "0,3",
        "--json",
    ];
    let (out, elapsed) = timed(|| cli(&args));
    let report: OutputReport = serde_json::from_str(&out?).map_err(|e| e.to_string())?;
    let expected: GradedClass = "1 + 2*x1 + 7*x2 + 4*x1*x2"
        .parse()
        .expect("valid polynomial");
    let got: GradedClass = report
        .csm
        .as_deref()
        .ok_or("no class in report")?
        .parse()
        .map_err(|e| format!("{e}"))?;
    ensure(got == expected, || format!("c_SM = {got}"))?;
    ensure(report.euler == "4", || format!("chi = {}", report.euler))?;
    let t = within("run", elapsed, GOLDEN_BUDGET)?;
    Ok(format!("c_SM = {got}, chi = 4, {t}"))
}

fn criterion_2() -> Outcome {
    let (res, elapsed) = timed(|| -> Result<(), String> {
        for n in 1..=8usize {
            let fan = projective_space(n).map_err(|e| e.to_string())?;
            let chow = chow(&fan, None)?;
            let kept = chow.kept_variables();
            ensure(kept.len() == 1, || format!("P^{n}: kept {kept:?}"))?;
            let r = csm::compute(&fan, &chow, CsmOptions::default()).map_err(|e| e.to_string())?;
            for d in 0..=n {
                let h = Monomial::from_exponents([(kept[0], d as u32)]);
                let expected = common::binomial(n as u64 + 1, d as u64);
                let coeff = r.csm_class.coefficient(&h);
                ensure(coeff == BigRational::from_integer(expected.clone()), || {
                    format!("P^{n}: coefficient of h^{d} is {coeff}, expected {expected}")
                })?;
                if d > 0 {
                    let cones = BigInt::from(fan.cones(d).len());
                    ensure(cones == common::binomial(n as u64 + 1, d as u64), || {
                        format!("P^{n}: {cones} cones of dimension {d}")
                    })?;
                }
            }
            ensure(r.euler == BigInt::from(n + 1), || {
                format!("P^{n}: chi = {}", r.euler)
            })?;
        }
        Ok(())
    });
    res?;
    let t = within("run", elapsed, PROJECTIVE_BUDGET)?;
    Ok(format!(
        "c_SM(P^n) = (1+h)^(n+1) and chi = n+1 for n = 1..8, {t}"
    ))
}

fn criterion_3(fans: &[Fan]) -> Outcome {
    let forced = CsmOptions { force_hnf: true };
    for fan in fans {
        let ch = chow(fan, None)?;
        let count = csm::euler_by_cone_count(fan);
        let err = |e: toric_csm::Error| format!("{}: {e}", label(fan));
        let values = [
            csm::euler_characteristic(fan, &ch, true, CsmOptions::default()).map_err(err)?,
            csm::euler_characteristic(fan, &ch, false, CsmOptions::default()).map_err(err)?,
            csm::euler_characteristic(fan, &ch, true, forced).map_err(err)?,
            csm::euler_characteristic(fan, &ch, false, forced).map_err(err)?,
        ];
        ensure(values.iter().all(|v| *v == count), || {
            format!("{}: {values:?} vs {count} maximal cones", label(fan))
        })?;
    }
    Ok(format!(
        "fast/full paths, Euler-only and full class, agree with the cone count on {} fans",
        fans.len()
    ))
}

fn criterion_4() -> Outcome {
    let mut details = Vec::new();
    for (weights, singular) in [([1u64, 1, 2], 2), ([1, 1, 3], 3)] {
        let fan = weighted_projective(&weights).map_err(|e| e.to_string())?;
        let mut hnf: Vec<BigInt> = fan
            .max_cones()
            .iter()
            .map(|c| fan.multiplicity_uncached(c.rays()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let mut dets: Vec<BigInt> = fan
            .max_cones()
            .iter()
            .map(|c| determinant(&fan.ray_matrix(c.rays())).map(|d| d.abs()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        hnf.sort();
        dets.sort();
        let expected: Vec<BigInt> = [1, 1, singular].map(BigInt::from).to_vec();
        ensure(hnf == expected && dets == expected, || {
            format!("{}: hnf {hnf:?}, det {dets:?}", label(&fan))
        })?;
        let ch = chow(&fan, None)?;
        for opts in [CsmOptions::default(), CsmOptions { force_hnf: true }] {
            let r = csm::compute(&fan, &ch, opts).map_err(|e| e.to_string())?;
            ensure(r.euler == BigInt::from(3), || {
                format!("{}: chi = {}", label(&fan), r.euler)
            })?;
        }
        details.push(format!("{} mults {{1,1,{singular}}} chi 3", label(&fan)));
    }
    Ok(details.join("; "))
}

fn random_full_rank(rng: &mut ChaCha8Rng) -> IntegerMatrix {
    loop {
        let n = rng.gen_range(1..=6usize);
        let d = rng.gen_range(1..=n);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(-20..=20)).collect())
            .collect();
        let q = RationalMatrix::from_integer_rows(&rows);
        if rational_rank(&q) == d {
            return IntegerMatrix::from_rows(&rows);
        }
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(HNF_SEED);
    let mut square = 0;
    for i in 0..HNF_SAMPLES {
        let m = random_full_rank(&mut rng);
        let fail = |what: &str| format!("sample {i}: {what} for {m:?}");
        let (h, u) = hermite_normal_form(&m).map_err(|e| fail(&e.to_string()))?;
        ensure(u.mul(&m) == h, || fail("T*M != H"))?;
        let det_u = determinant(&u).map_err(|e| fail(&e.to_string()))?;
        ensure(det_u.abs().is_one(), || fail("|det T| != 1"))?;
        ensure(is_hermite_normal_form(&h), || {
            fail("not in Hermite normal form")
        })?;
        let block = strip_zero_rows(&h).map_err(|e| fail(&e.to_string()))?;
        ensure(block.rows() == m.cols(), || fail("block is not square"))?;
        let (h2, _) = hermite_normal_form(&h).map_err(|e| fail(&e.to_string()))?;
        ensure(h2 == h, || fail("HNF(H) != H"))?;
        if m.is_square() {
            square += 1;
            let a = determinant(&block).map_err(|e| fail(&e.to_string()))?.abs();
            let b = determinant(&m).map_err(|e| fail(&e.to_string()))?.abs();
            ensure(a == b, || fail("|det block| != |det M|"))?;
        }
    }
    Ok(format!(
        "{HNF_SAMPLES} matrices (seed {HNF_SEED:#x}, {square} square): [H;0] = T*M, |det T| = 1, canonical, idempotent, Bareiss agrees"
    ))
}

fn criterion_6() -> Outcome {
    let fans = common::small_suite(ORACLE_MAX_RAYS);
    for fan in &fans {
        let pipeline = chow(fan, None)?.graded_dimensions();
        let oracle = common::brute_force_graded_dimensions(fan);
        ensure(pipeline == oracle, || {
            format!(
                "{}: pipeline {pipeline:?}, brute force {oracle:?}",
                label(fan)
            )
        })?;
    }
    Ok(format!(
        "graded dimensions match the full quotient on {} fans with <= {ORACLE_MAX_RAYS} rays",
        fans.len()
    ))
}

fn criterion_7(fans: &[Fan]) -> Outcome {
    for fan in fans {
        let dims = chow(fan, None)?.graded_dimensions();
        let total: usize = dims.iter().sum();
        ensure(total == fan.max_cones().len(), || {
            format!(
                "{}: {dims:?} sums to {total}, {} maximal cones",
                label(fan),
                fan.max_cones().len()
            )
        })?;
    }
    Ok(format!(
        "sum of graded dimensions = number of maximal cones on {} fans",
        fans.len()
    ))
}

/// Quantities that must not depend on the eliminated cone.
fn invariants(fan: &Fan, elim: &[usize]) -> Result<(BigInt, Vec<usize>, Vec<BigRational>), String> {
    let ch = chow(fan, Some(elim))?;
    let r = csm::compute(fan, &ch, CsmOptions::default()).map_err(|e| e.to_string())?;
    let mut degrees: Vec<BigRational> = fan
        .max_cones()
        .iter()
        .map(|c| {
            ch.degree(&GradedClass::term(
                Monomial::from_vars(c.rays()),
                BigRational::one(),
            ))
        })
        .collect();
    degrees.extend(r.per_dim_contributions.values().map(|c| ch.degree(c)));
    degrees.push(ch.degree(&r.csm_class));
    Ok((r.euler, ch.graded_dimensions(), degrees))
}

fn criterion_8(fans: &[Fan]) -> Outcome {
    let mut fewer = Vec::new();
    for fan in fans {
        let cones = fan.max_cones();
        let k = ELIMINATION_CHOICES.min(cones.len());
        if k < ELIMINATION_CHOICES {
            fewer.push(label(fan));
        }
        // spread the choices over the list of maximal cones
        let picks: Vec<&[usize]> = (0..k)
            .map(|i| cones[i * (cones.len() - 1) / (k - 1).max(1)].rays())
            .collect();
        let first = invariants(fan, picks[0])?;
        for elim in &picks[1..] {
            let other = invariants(fan, elim)?;
            ensure(other == first, || {
                format!(
                    "{}: eliminating {elim:?} changes {first:?} to {other:?}",
                    label(fan)
                )
            })?;
        }
    }
    let note = if fewer.is_empty() {
        String::new()
    } else {
        format!(
            " (all maximal cones for {}, which has fewer)",
            fewer.join(", ")
        )
    };
    Ok(format!(
        "chi, graded dimensions and degrees unchanged over {ELIMINATION_CHOICES} elimination cones on {} fans{note}",
        fans.len()
    ))
}

fn criterion_9() -> Outcome {
    let (out, t1) = timed(|| cli(&["csm", "--builder", "pn=6"]));
    ensure(out?.contains("euler characteristic: 7\n"), || {
        "P^6: wrong chi".into()
    })?;
    let (out, t2) = timed(|| cli(&["csm", "--product", "pn=5", "pn=6", "--force-hnf"]));
    ensure(out?.contains("euler characteristic: 42\n"), || {
        "P^5 x P^6: wrong chi".into()
    })?;
    let (out, t3) = timed(|| cli(&["euler", "--builder", "pn=16"]));
    ensure(out? == "17\n", || "P^16: wrong chi".into())?;
    Ok(format!(
        "{}; {}; {}",
        within("P^6 csm", t1, P6_CSM_BUDGET)?,
        within("P^5xP^6 forced-HNF csm", t2, P5_P6_FORCED_BUDGET)?,
        within("P^16 euler-only", t3, P16_EULER_BUDGET)?
    ))
}

fn criterion_10(fans: &[Fan]) -> Outcome {
    let mut checked = 0;
    for fan in fans.iter().filter(|f| f.is_smooth()) {
        let ch = chow(fan, None)?;
        let fast = csm::compute(fan, &ch, CsmOptions::default()).map_err(|e| e.to_string())?;
        let forced =
            csm::compute(fan, &ch, CsmOptions { force_hnf: true }).map_err(|e| e.to_string())?;
        ensure(fast == forced, || {
            format!("{}: fast and forced results differ", label(fan))
        })?;
        checked += 1;
    }
    Ok(format!("identical CsmResult on {checked} smooth fans"))
}

fn main() {
    let fans = suite();
    let criteria: Vec<Criterion> = vec![
        ("hirzebruch golden", Box::new(criterion_1)),
        ("projective spaces", Box::new(criterion_2)),
        ("euler consistency", Box::new(|| criterion_3(&fans))),
        ("singular path", Box::new(criterion_4)),
        ("hermite normal form", Box::new(criterion_5)),
        ("quotient oracle", Box::new(criterion_6)),
        ("h-vector", Box::new(|| criterion_7(&fans))),
        ("basis independence", Box::new(|| criterion_8(&fans))),
        ("performance envelope", Box::new(criterion_9)),
        ("smooth fast path", Box::new(|| criterion_10(&fans))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (outcome, elapsed) = timed(check);
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS {name}: {detail} [{elapsed:.2?}]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
