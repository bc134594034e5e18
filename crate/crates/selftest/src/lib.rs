//! The acceptance battery: twelve exact checks over the whole library.
//!
//! Each criterion returns a verdict and a one-line detail. A criterion that
//! errors counts as failed; a time limit, where set, is part of the verdict.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use minkowski_core::bounds::{
    katznelson_constant, minkowski_bound, minkowski_p_part, minkowski_ratio, schur_additive_divisibility,
    schur_bound, schur_inclusion_divisibility, SchurField,
};
use minkowski_core::certificate::{schur_certificate, vandermonde_pair};
use minkowski_core::exactnum::primes::is_prime_u64;
use minkowski_core::exactnum::{CycloElem, CycloField, Factorization};
use minkowski_core::finfield::{
    ell_two_counterexample, find_special_prime, gl_order, gl_order_bruteforce, lemma510_two_part_check,
    lemma51_check, real_case_two_part_check, reduce_mod_p, two_adic_checks,
};
use minkowski_core::matgroup::{
    closure, frobenius_schur_indicator, integralize, trace_multiset, wreath_order, wreath_witness, CycloMatrix,
    GroupClosure, RatMatrix,
};
use minkowski_core::seqcheck::{bernoulli_vs_minkowski, hanna_denominator_check, von_staudt_clausen_check};
use minkowski_core::Result;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};


const SEED: u64 = 0x4d696e6b;
const CLOSURE_CAP: usize = 100_000;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CriterionResult {
    pub fn summary_line(&self) -> String {
        let time = match self.limit {
            Some(l) => format!("{:.3}s, limit {}s", self.elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.3}s", self.elapsed.as_secs_f64()),
        };
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("[{verdict}] {:>2}. {} ({time}): {}", self.id, self.title, self.detail)
    }
}

type Check = fn() -> Result<(bool, String)>;

pub const CRITERIA: [(u8, &str, Option<u64>, Check); 12] = [
    (1, "Minkowski table", Some(1), minkowski_table),
    (2, "lower-bound witnesses", Some(30), witnesses),
    (3, "quaternion group", Some(1), quaternion),
    (4, "Vandermonde identity", None, vandermonde),
    (5, "GL order oracle", Some(60), gl_oracle),
    (6, "special primes", None, special_primes),
    (7, "reduction mod p", None, reduction),
    (8, "Schur bound", None, schur),
    (9, "2-parts of isometry groups", None, isometry_two_parts),
    (10, "sequence cross-checks", Some(60), sequences),
    (11, "Katznelson constant", None, katznelson),
    (12, "integralization", None, integralization),
];

pub fn run_one(id: u8) -> Option<CriterionResult> {
    let &(id, title, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let limit = limit.map(Duration::from_secs);
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            detail.push_str("; time limit exceeded");
        }
    }
    Some(CriterionResult { id, title, passed, detail, elapsed, limit })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run_one(c.0)).collect()
}

/// Collects failures; passes when none were recorded.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: impl Into<String>) -> (bool, String) {
        let summary = summary.into();
        if self.failures.is_empty() {
            (true, format!("{summary}; {} checks", self.checks))
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            (false, format!("{summary}; {} of {} checks failed: {}", self.failures.len(), self.checks, shown.join("; ")))
        }
    }
}

fn minkowski_table() -> Result<(bool, String)> {
    let expected = [2u64, 24, 48, 5760, 11520, 2903040];
    let mut t = Tally::default();
    let mut got = Vec::new();
    for (n, &e) in (1..).zip(&expected) {
        let v = minkowski_bound(n)?.value();
        t.check(v == BigUint::from(e), || format!("M({n}) = {v}, expected {e}"));
        got.push(v.to_string());
    }
    Ok(t.finish(format!("M(1..6) = {}", got.join(", "))))
}

fn witnesses() -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut largest = 0;
    for n in 1..=5usize {
        let mut lcm = Factorization::one();
        for p in (2..=n as u64 + 1).filter(|&p| is_prime_u64(p)) {
            let g = closure(&wreath_witness(n, p)?, CLOSURE_CAP)?;
            largest = largest.max(g.order());
            let order = Factorization::of_u64(g.order() as u64)?;
            t.check(order.value() == wreath_order(n, p), || {
                format!("n={n} p={p}: order {} vs {}", g.order(), wreath_order(n, p))
            });
            let p_part = order.restrict(p);
            let m_p = minkowski_p_part(n as u64, p)?;
            t.check(p_part == m_p, || format!("n={n} p={p}: p-part {p_part} vs M(n)_p {m_p}"));
            lcm = lcm.lcm(&order);
        }
        let m = minkowski_bound(n as u64)?;
        t.check(lcm == m, || format!("n={n}: lcm {lcm} vs M(n) {m}"));
    }
    Ok(t.finish(format!("n <= 5, largest closure {largest}")))
}

/// `⟨[[0,−1],[1,0]], diag(i, −i)⟩` over `Q(i)`.
pub fn q8_group() -> Result<GroupClosure<CycloElem>> {
    let f = CycloField::new(4)?;
    let c = |n| CycloElem::from_int(&f, n);
    let i = CycloElem::zeta_pow(&f, 1);
    let g = CycloMatrix::from_rows(vec![vec![c(0), c(-1)], vec![c(1), c(0)]])?;
    let h = CycloMatrix::from_rows(vec![vec![i.clone(), c(0)], vec![c(0), -&i]])?;
    closure(&[g, h], CLOSURE_CAP)
}

fn quaternion() -> Result<(bool, String)> {
    let g = q8_group()?;
    let mut t = Tally::default();
    t.check(g.order() == 8, || format!("order {}", g.order()));

    let traces = trace_multiset(&g)?;
    let int = |n: i64| BigRational::from_integer(n.into());
    let expected = BTreeMap::from([(int(2), 1), (int(0), 6), (int(-2), 1)]);
    t.check(traces == expected, || format!("traces {traces:?}"));

    let fsi = frobenius_schur_indicator(&g)?;
    t.check(fsi == int(-1), || format!("indicator {fsi}"));

    let c = schur_certificate(&g, 2)?;
    let products: Vec<BigInt> = c.per_t.iter().map(|l| l.product.clone()).collect();
    let want: Vec<BigInt> = [8, -24, 8].into_iter().map(BigInt::from).collect();
    t.check(c.overall, || "certificate failed".into());
    t.check(products == want, || format!("products {products:?}"));
    Ok(t.finish(format!("|Q8| = {}, indicator {fsi}, certificate products (8, −24, 8)", g.order())))
}

fn vandermonde() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let pool: Vec<i64> = (-50..=50).collect();
    let mut t = Tally::default();
    for _ in 0..200 {
        let len = rng.gen_range(1..=8);
        let z: Vec<BigInt> = pool.choose_multiple(&mut rng, len).map(|&x| BigInt::from(x)).collect();
        let pair = vandermonde_pair(&z)?;
        t.check(pair.diagonal_ok, || format!("V·E not diagonal for {z:?}"));
    }
    Ok(t.finish("200 random distinct tuples of length 1..8"))
}

fn gl_oracle() -> Result<(bool, String)> {
    let cases = [(1usize, 2u64), (1, 3), (1, 5), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)];
    let mut t = Tally::default();
    for (n, q) in cases {
        let formula = gl_order(n as u64, q)?.full.value();
        let brute = gl_order_bruteforce(n, q)?;
        t.check(formula == brute, || format!("GL_{n}(F_{q}): formula {formula}, brute force {brute}"));
    }
    Ok(t.finish(format!("{} fields and dimensions, up to |GL_3(F_3)| = 11232", cases.len())))
}

fn special_primes() -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut found = Vec::new();
    for ell in [3u64, 5, 7] {
        for skip in 0..2 {
            let p = find_special_prime(ell, skip)?;
            found.push(format!("ℓ={ell}:{p}"));
            for f in 1..=3 {
                for n in 1..=8 {
                    let r = lemma51_check(n, f, ell, p)?;
                    t.check(r.matches, || format!("ℓ={ell} p={p} f={f} n={n}: {} vs {}", r.actual, r.predicted));
                    if f == 1 {
                        t.check(r.minkowski_match == Some(true), || {
                            format!("ℓ={ell} p={p} n={n}: not M(n)_ℓ")
                        });
                    }
                }
            }
        }
    }
    for p in [3u64, 5, 7, 11] {
        let (gl2, m2) = ell_two_counterexample(p)?;
        let sixteen = Factorization::prime_power(2, 4);
        t.check(sixteen.divides(&gl2) && m2.value() == BigUint::from(8u8), || {
            format!("ℓ=2, p={p}: |GL_2|_2 = {gl2}, M(2)_2 = {m2}")
        });
    }
    Ok(t.finish(format!("special primes {}; ℓ=2 failure reproduced for p in 3, 5, 7, 11", found.join(" "))))
}

fn minus_identity(n: usize) -> Result<RatMatrix> {
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect()).collect();
    RatMatrix::from_int_rows(&rows)
}

/// Rational groups exercised by the reduction and integralization checks.
fn rational_suite() -> Result<Vec<(String, GroupClosure<BigRational>)>> {
    let mut out = Vec::new();
    for (n, p) in [(1usize, 2u64), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3), (4, 5)] {
        out.push((format!("S_{p}≀S_{} in dim {n}", n as u64 / (p - 1)), closure(&wreath_witness(n, p)?, CLOSURE_CAP)?));
    }
    let rot = RatMatrix::from_int_rows(&[vec![0, -1], vec![1, 0]])?;
    out.push(("rotation of order 4".into(), closure(&[rot], CLOSURE_CAP)?));
    let hex = RatMatrix::from_int_rows(&[vec![1, -1], vec![1, 0]])?;
    out.push(("rotation of order 6".into(), closure(&[hex], CLOSURE_CAP)?));
    Ok(out)
}

fn reduction() -> Result<(bool, String)> {
    let mut t = Tally::default();
    let suite = rational_suite()?;
    for (name, g) in &suite {
        let order = g.order() as u64;
        for q in (2u64..).filter(|&q| is_prime_u64(q) && order % q != 0).take(3) {
            let (_, r) = reduce_mod_p(g, q)?;
            t.check(r.injective, || format!("{name} mod {q}: image {} of {}", r.image_order, r.group_order));
        }
    }
    let pm = closure(&[minus_identity(2)?], CLOSURE_CAP)?;
    let (_, r) = reduce_mod_p(&pm, 2)?;
    t.check(
        r.image_order == 1 && r.kernel_element_orders == BTreeMap::from([(1, 1), (2, 1)]),
        || format!("{{±I}} mod 2: image {}, kernel {:?}", r.image_order, r.kernel_element_orders),
    );
    for q in [3u64, 5, 7] {
        let (_, r) = reduce_mod_p(&pm, q)?;
        t.check(r.injective, || format!("{{±I}} mod {q} not injective"));
    }
    Ok(t.finish(format!("{} groups, {{±I}} has kernel of order 2 mod 2", suite.len())))
}

fn field(k: u64) -> SchurField {
    if k == 1 {
        SchurField::Rational
    } else {
        SchurField::Cyclotomic(k)
    }
}

fn schur() -> Result<(bool, String)> {
    let mut t = Tally::default();
    for n in 1..=10 {
        let s = schur_bound(n, &SchurField::Rational)?;
        let m = minkowski_bound(n)?;
        t.check(s == m, || format!("S({n}, Q) = {s}, M({n}) = {m}"));
    }
    let s = schur_bound(1, &SchurField::Cyclotomic(4))?.value();
    t.check(s == BigUint::from(4u8), || format!("S(1, Q(ζ_4)) = {s}"));
    for k in 1..=16 {
        for m in 1..10 {
            for n in 1..=10 - m {
                let ok = schur_additive_divisibility(m, n, &field(k))?;
                t.check(ok, || format!("S({m})·S({n}) ∤ S({}) over {}", m + n, field(k)));
            }
        }
        for k2 in (k..=16).filter(|k2| k2 % k == 0) {
            for n in 1..=10 {
                let ok = schur_inclusion_divisibility(n, &field(k), &field(k2))?;
                t.check(ok, || format!("S({n}, {}) ∤ S({n}, {})", field(k), field(k2)));
            }
        }
    }
    Ok(t.finish("S(n,Q) = M(n) for n <= 10, S(1,Q(ζ_4)) = 4, conductors up to 16"))
}

/// Smallest prime `p ≡ −1 + 2^m (mod 2^{m+1})`.
fn smallest_qualifying_prime(m: u32) -> u64 {
    let modulus = 1u64 << (m + 1);
    let residue = (1u64 << m) - 1;
    (residue..).step_by(modulus as usize).find(|&p| is_prime_u64(p)).expect("Dirichlet")
}

fn isometry_two_parts() -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut chosen = Vec::new();
    for (m, expected) in [(2u32, 3u64), (3, 7), (4, 47)] {
        let p = smallest_qualifying_prime(m);
        chosen.push(format!("Q(ζ_{}):{p}", 1u64 << m));
        t.check(p == expected, || format!("smallest prime for m={m} is {p}, expected {expected}"));
        t.check(two_adic_checks(p, m, 16)?, || format!("v_2(p^i − (−1)^i) fails for p={p}"));
        let k = SchurField::Cyclotomic(1 << m);
        for n in 1..=8 {
            let r = lemma510_two_part_check(&k, n, p)?;
            t.check(r.holds, || format!("{k}, n={n}, p={p}: {} vs {}", r.actual, r.predicted));
        }
    }
    for p in [3u64, 11] {
        for f in [1u32, 2] {
            for n in 1..=8 {
                let r = real_case_two_part_check(n, p, f)?;
                t.check(r.holds, || format!("real case n={n} p={p} f={f}: {} vs {}", r.actual, r.predicted));
            }
        }
    }
    Ok(t.finish(format!("unitary primes {}; real case p in 3, 11", chosen.join(" "))))
}

fn sequences() -> Result<(bool, String)> {
    let mut t = Tally::default();
    for n in 1..=15 {
        let b = bernoulli_vs_minkowski(n)?;
        t.check(b.holds, || format!("B_{}/{n}: denominator {} vs {}", 2 * n, b.observed, b.expected));
        let v = von_staudt_clausen_check(n)?;
        t.check(v.holds, || format!("B_{}: denominator {} vs {}", 2 * n, v.observed, v.expected));
    }
    for n in 1..=12 {
        let h = hanna_denominator_check(n)?;
        t.check(h.equals_m, || {
            format!("P({n}, z): denominator {} vs M({n}) = {}, primes {:?}", h.denominator, h.minkowski, h.mismatch_primes)
        });
    }
    Ok(t.finish("Bernoulli n <= 15, Hanna n <= 12"))
}

pub const KATZNELSON_TARGET: f64 = 3.4109;
pub const KATZNELSON_TOLERANCE: f64 = 0.0005;

fn katznelson() -> Result<(bool, String)> {
    let c = katznelson_constant(1_000_000)?;
    let constant_ok = (c - KATZNELSON_TARGET).abs() <= KATZNELSON_TOLERANCE;
    let mut parts = vec![format!("constant {c:.6} ({})", if constant_ok { "within tolerance" } else { "out of tolerance" })];
    let mut ratios_ok = true;
    for n in [20u64, 50, 100] {
        let r = minkowski_ratio(n)?;
        let ok = r > 2.0 && r <= KATZNELSON_TARGET;
        ratios_ok &= ok;
        parts.push(format!("n={n}: {r:.4}{}", if ok { "" } else { " outside (2.0, 3.4109]" }));
    }
    Ok((constant_ok && ratios_ok, parts.join(", ")))
}

/// Unitriangular conjugator whose off-diagonal entries have the given
/// denominators, with at least one entry not an integer.
fn random_conjugator(rng: &mut StdRng, n: usize) -> Result<RatMatrix> {
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = BigRational::one();
        for entry in row.iter_mut().skip(i + 1) {
            let d: i64 = *[2, 3, 4].choose(rng).expect("non-empty");
            *entry = BigRational::new(rng.gen_range(-3..=3).into(), d.into());
        }
    }
    if n > 1 {
        let d: i64 = *[2, 3, 4].choose(rng).expect("non-empty");
        rows[0][n - 1] = BigRational::new(1.into(), d.into());
    }
    RatMatrix::from_rows(rows)
}

fn integralization() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 12);
    let bases: Vec<(usize, u64)> = vec![(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3), (4, 5)];
    let mut t = Tally::default();
    let mut non_integral_inputs = 0;
    for round in 0..20 {
        let (n, p) = bases[round % bases.len()];
        let g = closure(&wreath_witness(n, p)?, CLOSURE_CAP)?;
        let c = random_conjugator(&mut rng, n)?;
        let c_inv = c.inverse()?;
        let conj = g.conjugated(&c_inv, &c)?;
        if !conj.elements().all(|m| m.is_integral()) {
            non_integral_inputs += 1;
        }
        let res = integralize(&conj)?;
        t.check(res.group.elements().all(|m| m.is_integral()), || format!("round {round}: not integral"));
        t.check(res.group.order() == g.order(), || format!("round {round}: order changed"));
        t.check(trace_multiset(&res.group)? == trace_multiset(&g)?, || format!("round {round}: traces changed"));
    }
    Ok(t.finish(format!("20 conjugates, {non_integral_inputs} with non-integral entries before")))
}
