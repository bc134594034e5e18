use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use minkowski_core::bounds::{katznelson_estimate, minkowski_bound, minkowski_p_part, schur_bound, schur_params, SchurField};
use minkowski_core::certificate::schur_certificate;
use minkowski_core::exactnum::CycloElem;
use minkowski_core::finfield::{
    find_special_prime, gl_order, isometry_order, lemma51_check, reduce_mod_p, IsometryKind,
};
use minkowski_core::matgroup::{
    closure, frobenius_schur_indicator, integralize, trace_stats, wreath_order, wreath_witness, GroupClosure,
    Matrix, Scalar, DEFAULT_CAP,
};
use minkowski_core::seqcheck::{bernoulli, bernoulli_vs_minkowski, hanna_denominator_check, von_staudt_clausen_check};
use minkowski_core::Error;
use num_bigint::BigUint;
use num_rational::BigRational;

use crate::groupfile::{parse_group_file, serialize_group_file, Generators, GroupFile};
use crate::report::{verdict, yes_no, Format, Report};

#[derive(Debug, Parser)]
#[command(name = "minkowski", version, about = "Orders of finite linear groups, computed exactly")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Maximum number of elements enumerated when closing a group
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minkowski bound M(n)
    Bound { n: u64 },
    /// Schur bound S(n, K)
    Schur {
        n: u64,
        /// Q or zeta:<k>
        #[arg(long, default_value = "Q")]
        field: SchurField,
    },
    /// Build the wreath product S_p ≀ S_a in GL_n(Z) and check its order
    Witness {
        n: usize,
        #[arg(long)]
        prime: u64,
        /// Write the generators as a group file
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Divisibility certificate for a p-group
    Certify {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Trace distribution over the admissible values n − pt
    Traces {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Frobenius–Schur indicator (1/|G|) Σ tr(g²)
    Fsi { file: PathBuf },
    /// Conjugate a rational group into GL_n(Z)
    Integralize {
        file: PathBuf,
        /// Write the integral generators as a group file
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Reduce a rational group modulo a prime
    Reduce {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Order of GL_n(F_q)
    Glorder { n: u64, q: u64 },
    /// Smallest prime generating the units modulo ℓ²
    Specialprime {
        ell: u64,
        /// Skip this many smaller special primes
        #[arg(long, default_value_t = 0)]
        skip: usize,
    },
    /// ℓ-part of |GL_n(F_{p^f})| for a special prime p
    Lemma51 {
        n: u64,
        f: u64,
        ell: u64,
        /// Defaults to the smallest special prime for ℓ
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Order of a unitary, symplectic or orthogonal group over F_q
    Iso {
        kind: IsometryKind,
        n: u64,
        q: u64,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<i8>,
    },
    /// Bernoulli number B_n, with denominator checks for even n
    Bernoulli { n: usize },
    /// Hanna polynomial P(n, z) and its denominator
    Hanna { n: u64 },
    /// Katznelson constant and (M(n)/n!)^{1/n}
    Asymptotic {
        #[arg(long, default_value_t = 1_000_000)]
        primes: u64,
        #[arg(long, default_value_t = 50)]
        n: u64,
    },
    /// Run the acceptance battery
    Selftest,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A verification inside the library failed: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(msg) => Failure::Check(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

impl Outcome {
    fn pass(report: Report) -> Self {
        Self { report, passed: true }
    }
}

fn read_group(path: &Path) -> Result<GroupFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_group_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_group(path: &Path, g: &GroupFile) -> Result<(), Failure> {
    std::fs::write(path, serialize_group_file(g))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

pub enum Closed {
    Rational(GroupClosure<BigRational>),
    Cyclotomic(GroupClosure<CycloElem>),
}

fn close(g: &GroupFile, cap: usize) -> Result<Closed, Failure> {
    Ok(match &g.generators {
        Generators::Rational(gens) => Closed::Rational(closure(gens, cap)?),
        Generators::Cyclotomic(_, gens) => Closed::Cyclotomic(closure(gens, cap)?),
    })
}

fn rational_only(g: Closed, what: &str) -> Result<GroupClosure<BigRational>, Failure> {
    match g {
        Closed::Rational(g) => Ok(g),
        Closed::Cyclotomic(_) => Err(Failure::Usage(format!("{what} needs a group over the rationals"))),
    }
}

fn value_and_factors(f: &minkowski_core::exactnum::Factorization) -> (BigUint, String) {
    (f.value(), f.to_string())
}

fn matrix_lines<S: Scalar>(m: &Matrix<S>) -> Vec<String> {
    m.to_string().lines().map(|l| format!("  {l}")).collect()
}

fn bound(n: u64) -> Result<Outcome, Failure> {
    let m = minkowski_bound(n)?;
    let (v, f) = value_and_factors(&m);
    let mut r = Report::new(&["n", "M", "factorization"]);
    r.line(format!("M({n}) = {v} = {f}")).row([n.to_string(), v.to_string(), f]);
    Ok(Outcome::pass(r))
}

fn schur(n: u64, field: SchurField) -> Result<Outcome, Failure> {
    let s = schur_bound(n, &field)?;
    let (v, f) = value_and_factors(&s);
    let mut r = Report::new(&["n", "field", "ell", "m", "t", "exponent"]);
    r.line(format!("S({n}, {field}) = {v} = {f}"));
    for (p, e) in s.primes() {
        let ell: u64 = p.try_into().expect("small prime");
        let params = schur_params(&field, ell)?;
        r.line(format!("  ℓ = {ell}: m = {}, t = {}, exponent {e}", params.m, params.t));
        r.row([n.to_string(), field.to_string(), ell.to_string(), params.m.to_string(), params.t.to_string(), e.to_string()]);
    }
    Ok(Outcome::pass(r))
}

fn witness(n: usize, p: u64, emit: Option<&Path>, cap: usize) -> Result<Outcome, Failure> {
    let gens = wreath_witness(n, p)?;
    let g = closure(&gens, cap)?;
    let order = BigUint::from(g.order());
    let expected = wreath_order(n, p);
    let a = n as u64 / (p - 1);
    let p_exp = minkowski_core::exactnum::valuation(&order.clone().into(), p);
    let m_p = minkowski_p_part(n as u64, p)?;
    let order_ok = order == expected;
    let part_ok = p_exp == m_p.exponent(p);

    let mut r = Report::new(&["n", "p", "a", "generators", "order", "expected", "p_exponent", "minkowski_p_exponent", "pass"]);
    r.line(format!("S_{p} ≀ S_{a} in GL_{n}(Z), {} generators", gens.len()))
        .line(format!("order = {order} (expected ({p}!)^{a}·{a}! = {expected}): {}", verdict(order_ok)))
        .line(format!("{p}-part = {p}^{p_exp}, M({n})_{p} = {m_p}: {}", verdict(part_ok)));
    r.row([
        n.to_string(),
        p.to_string(),
        a.to_string(),
        gens.len().to_string(),
        order.to_string(),
        expected.to_string(),
        p_exp.to_string(),
        m_p.exponent(p).to_string(),
        verdict(order_ok && part_ok).to_string(),
    ]);
    if let Some(path) = emit {
        write_group(path, &GroupFile::rational(gens))?;
        r.line(format!("generators written to {}", path.display()));
    }
    Ok(Outcome { report: r, passed: order_ok && part_ok })
}

fn certify_generic<S: Scalar>(g: &GroupClosure<S>, p: u64) -> Result<Outcome, Failure> {
    let c = schur_certificate(g, p)?;
    let mut r = Report::new(&["t", "z", "m", "product", "divisible"]);
    r.line(format!("|G| = {}, p = {p}, a = {}", c.order, c.a));
    r.line("t\tz_t\tm_t\tm_t·p^a·∏(s−t)\t|G| divides");
    for (line, (z, m)) in c.per_t.iter().zip(c.z.iter().zip(&c.m)) {
        r.line(format!("{}\t{z}\t{m}\t{}\t{}", line.t, line.product, yes_no(line.divisible)));
        r.row([line.t.to_string(), z.to_string(), m.to_string(), line.product.to_string(), yes_no(line.divisible).to_string()]);
    }
    r.line(format!("power-sum congruences: {}", verdict(c.congruences_ok)))
        .line(format!("trace spectrum: {}", verdict(c.spectrum_ok)))
        .line(format!("overall: {}", verdict(c.overall)));
    Ok(Outcome { report: r, passed: c.overall })
}

fn traces_generic<S: Scalar>(g: &GroupClosure<S>, p: u64) -> Result<Outcome, Failure> {
    let t = trace_stats(g, p)?;
    let s = &t.stats;
    let mut rest = g.order();
    while rest % p as usize == 0 {
        rest /= p as usize;
    }
    let p_group = rest == 1;

    let mut r = Report::new(&["t", "z", "m"]);
    r.line(format!("|G| = {}, n = {}, p = {p}, a = {}", g.order(), s.n, s.a));
    r.line("t\tz_t\tm_t");
    for (i, (z, m)) in s.values.iter().zip(&s.counts).enumerate() {
        r.line(format!("{i}\t{z}\t{m}"));
        r.row([i.to_string(), z.to_string(), m.to_string()]);
    }
    for (value, count) in &t.stray {
        r.line(format!("other trace {value}: {count}"));
    }
    r.line(format!("Σ tr(g)^s ≡ 0 mod |G| for s <= a: {}", verdict(t.fact1_ok)));
    if p_group {
        r.line(format!("trace spectrum: {}", verdict(t.spectrum_ok)));
    } else {
        r.line(format!("trace spectrum: {} (not a {p}-group, informational)", yes_no(t.spectrum_ok)));
    }
    let passed = t.fact1_ok && (!p_group || t.spectrum_ok);
    Ok(Outcome { report: r, passed })
}

fn fsi_generic<S: Scalar>(g: &GroupClosure<S>) -> Result<Outcome, Failure> {
    let v = frobenius_schur_indicator(g)?;
    let mut r = Report::new(&["order", "indicator"]);
    r.line(format!("|G| = {}", g.order()))
        .line(format!("Frobenius–Schur indicator = {v}"))
        .row([g.order().to_string(), v.to_string()]);
    Ok(Outcome::pass(r))
}

macro_rules! on_group {
    ($closed:expr, $g:ident => $body:expr) => {
        match $closed {
            Closed::Rational($g) => $body,
            Closed::Cyclotomic($g) => $body,
        }
    };
}

fn integralize_cmd(file: &Path, emit: Option<&Path>, cap: usize) -> Result<Outcome, Failure> {
    let g = rational_only(close(&read_group(file)?, cap)?, "integralize")?;
    let res = integralize(&g)?;
    let gens = res.group.generator_matrices();
    let mut r = Report::new(&["matrix", "row", "entries"]);
    r.line(format!("|G| = {}, every conjugated element integral: yes", res.group.order()));
    r.line("basis change B (columns span Σ g·Z^n):");
    for l in matrix_lines(&res.basis_change) {
        r.line(l);
    }
    for (i, row) in res.basis_change.rows().enumerate() {
        r.row(["basis".to_string(), i.to_string(), join(row)]);
    }
    for (k, m) in gens.iter().enumerate() {
        r.line(format!("B⁻¹·g{}·B:", k + 1));
        for l in matrix_lines(m) {
            r.line(l);
        }
        for (i, row) in m.rows().enumerate() {
            r.row([format!("gen{}", k + 1), i.to_string(), join(row)]);
        }
    }
    if let Some(path) = emit {
        write_group(path, &GroupFile::rational(gens))?;
        r.line(format!("integral generators written to {}", path.display()));
    }
    Ok(Outcome::pass(r))
}

fn join<T: Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn reduce_cmd(file: &Path, p: u64, cap: usize) -> Result<Outcome, Failure> {
    let g = rational_only(close(&read_group(file)?, cap)?, "reduce")?;
    let (_, rep) = reduce_mod_p(&g, p)?;
    let kernel = rep
        .kernel_element_orders
        .iter()
        .map(|(o, c)| format!("{o}:{c}"))
        .collect::<Vec<_>>()
        .join(",");
    let mut r = Report::new(&["p", "order", "image_order", "injective", "coprime_injective", "kernel_orders"]);
    r.line(format!("|G| = {}, |G mod {p}| = {}", rep.group_order, rep.image_order))
        .line(format!("injective: {}", yes_no(rep.injective)))
        .line(format!("kernel element orders (order:count): {kernel}"))
        .line(format!("kernel has only {p}-torsion: {}", verdict(rep.kernel_is_p_torsion)))
        .line(format!("no element of order prime to {p} in the kernel: {}", verdict(rep.injective_on_coprime_order)));
    r.row([
        p.to_string(),
        rep.group_order.to_string(),
        rep.image_order.to_string(),
        yes_no(rep.injective).to_string(),
        yes_no(rep.injective_on_coprime_order).to_string(),
        kernel,
    ]);
    Ok(Outcome { report: r, passed: rep.kernel_is_p_torsion && rep.injective_on_coprime_order })
}

fn glorder(n: u64, q: u64) -> Result<Outcome, Failure> {
    let g = gl_order(n, q)?;
    let (v, f) = value_and_factors(&g.full);
    let (pv, pf) = value_and_factors(&g.p_prime_part);
    let mut r = Report::new(&["n", "q", "order", "factorization", "p_prime_part"]);
    r.line(format!("|GL_{n}(F_{q})| = {v} = {f}"))
        .line(format!("{}′-part = {pv} = {pf}", g.p))
        .row([n.to_string(), q.to_string(), v.to_string(), f, pv.to_string()]);
    Ok(Outcome::pass(r))
}

fn specialprime(ell: u64, skip: usize) -> Result<Outcome, Failure> {
    let p = find_special_prime(ell, skip)?;
    let mut r = Report::new(&["ell", "skip", "p"]);
    r.line(format!("special prime #{} for ℓ = {ell}: {p} (order {} modulo {})", skip + 1, ell * (ell - 1), ell * ell))
        .row([ell, skip as u64, p]);
    Ok(Outcome::pass(r))
}

fn lemma51(n: u64, f: u64, ell: u64, prime: Option<u64>) -> Result<Outcome, Failure> {
    let p = match prime {
        Some(p) => p,
        None => find_special_prime(ell, 0)?,
    };
    let rep = lemma51_check(n, f, ell, p)?;
    let mink_ok = rep.minkowski_match.unwrap_or(true);
    let mut r = Report::new(&["n", "f", "ell", "p", "tau", "predicted", "actual", "match", "minkowski_match"]);
    r.line(format!("ℓ = {ell}, p = {p}, f = {f}, n = {n}, τ = {}", rep.tau))
        .line(format!("predicted ℓ-part: {}", rep.predicted))
        .line(format!("|GL_{n}(F_{{{p}^{f}}})|_{ell} = {}", rep.actual))
        .line(format!("match: {}", verdict(rep.matches)));
    if let Some(m) = rep.minkowski_match {
        r.line(format!("equals M({n})_{ell}: {}", verdict(m)));
    }
    r.row([
        n.to_string(),
        f.to_string(),
        ell.to_string(),
        p.to_string(),
        rep.tau.to_string(),
        rep.predicted.to_string(),
        rep.actual.to_string(),
        yes_no(rep.matches).to_string(),
        rep.minkowski_match.map_or("-", yes_no).to_string(),
    ]);
    Ok(Outcome { report: r, passed: rep.matches && mink_ok })
}

fn iso(kind: IsometryKind, n: u64, q: u64, epsilon: Option<i8>) -> Result<Outcome, Failure> {
    let o = isometry_order(kind, n, q, epsilon)?;
    let (v, f) = value_and_factors(&o);
    let eps = epsilon.map_or(String::new(), |e| format!(", ε = {e:+}"));
    let mut r = Report::new(&["kind", "n", "q", "epsilon", "order", "factorization"]);
    r.line(format!("{kind} group, n = {n}, q = {q}{eps}: order {v} = {f}")).row([
        kind.to_string(),
        n.to_string(),
        q.to_string(),
        epsilon.map_or("-".into(), |e| e.to_string()),
        v.to_string(),
        f,
    ]);
    Ok(Outcome::pass(r))
}

fn bernoulli_cmd(n: usize) -> Result<Outcome, Failure> {
    let b = bernoulli(n);
    let mut r = Report::new(&["n", "B_n", "von_staudt_clausen", "minkowski_denominator"]);
    r.line(format!("B_{n} = {b}"));
    let mut passed = true;
    let (mut vsc_cell, mut mink_cell) = ("-".to_string(), "-".to_string());
    if n >= 2 && n % 2 == 0 {
        let k = n as u64 / 2;
        let vsc = von_staudt_clausen_check(k)?;
        let mink = bernoulli_vs_minkowski(k)?;
        r.line(format!(
            "denominator {} vs ∏_{{p−1 | {n}}} p = {}: {}",
            vsc.observed,
            vsc.expected,
            verdict(vsc.holds)
        ))
        .line(format!(
            "denominator of B_{n}/{k} = {} vs M({n})/(2·M({})) = {}: {}",
            mink.observed,
            n - 1,
            mink.expected,
            verdict(mink.holds)
        ));
        passed = vsc.holds && mink.holds;
        vsc_cell = yes_no(vsc.holds).into();
        mink_cell = yes_no(mink.holds).into();
    }
    r.row([n.to_string(), b.to_string(), vsc_cell, mink_cell]);
    Ok(Outcome { report: r, passed })
}

fn hanna(n: u64) -> Result<Outcome, Failure> {
    let h = hanna_denominator_check(n)?;
    let mismatch = h.mismatch_primes.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let mut r = Report::new(&["n", "denominator", "M", "equal", "mismatch_primes"]);
    r.line(format!("P({n}, z) = {}", h.polynomial.render("z")))
        .line(format!("denominator = {}", h.denominator))
        .line(format!("M({n}) = {}", h.minkowski))
        .line(format!("equal: {}", verdict(h.equals_m)));
    if !h.equals_m {
        r.line(format!("valuations differ at: {mismatch}"));
    }
    r.row([n.to_string(), h.denominator.to_string(), h.minkowski.to_string(), yes_no(h.equals_m).to_string(), mismatch]);
    Ok(Outcome { report: r, passed: h.equals_m })
}

fn asymptotic(primes: u64, n: u64) -> Result<Outcome, Failure> {
    let e = katznelson_estimate(primes, n)?;
    let mut r = Report::new(&["prime_bound", "constant", "n", "ratio"]);
    r.line(format!("∏_{{p < {primes}}} p^{{1/(p−1)²}} = {:.9}", e.constant))
        .line(format!("(M({n})/{n}!)^{{1/{n}}} = {:.9}", e.ratio))
        .row([primes.to_string(), format!("{:.9}", e.constant), n.to_string(), format!("{:.9}", e.ratio)]);
    Ok(Outcome::pass(r))
}

fn selftest_cmd() -> Outcome {
    let results = minkowski_selftest::run_all();
    let mut r = Report::new(&["criterion", "title", "result", "seconds", "detail"]);
    for c in &results {
        r.line(c.summary_line());
        r.row([
            c.id.to_string(),
            c.title.to_string(),
            verdict(c.passed).to_string(),
            format!("{:.3}", c.elapsed.as_secs_f64()),
            c.detail.clone(),
        ]);
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    r.line(format!("{} of {} criteria passed", results.len() - failed, results.len()));
    Outcome { report: r, passed: failed == 0 }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let cap = cli.cap;
    match &cli.command {
        Command::Bound { n } => bound(*n),
        Command::Schur { n, field } => schur(*n, *field),
        Command::Witness { n, prime, emit } => witness(*n, *prime, emit.as_deref(), cap),
        Command::Certify { file, prime } => on_group!(close(&read_group(file)?, cap)?, g => certify_generic(&g, *prime)),
        Command::Traces { file, prime } => on_group!(close(&read_group(file)?, cap)?, g => traces_generic(&g, *prime)),
        Command::Fsi { file } => on_group!(close(&read_group(file)?, cap)?, g => fsi_generic(&g)),
        Command::Integralize { file, emit } => integralize_cmd(file, emit.as_deref(), cap),
        Command::Reduce { file, prime } => reduce_cmd(file, *prime, cap),
        Command::Glorder { n, q } => glorder(*n, *q),
        Command::Specialprime { ell, skip } => specialprime(*ell, *skip),
        Command::Lemma51 { n, f, ell, prime } => lemma51(*n, *f, *ell, *prime),
        Command::Iso { kind, n, q, epsilon } => iso(*kind, *n, *q, *epsilon),
        Command::Bernoulli { n } => bernoulli_cmd(*n),
        Command::Hanna { n } => hanna(*n),
        Command::Asymptotic { primes, n } => asymptotic(*primes, *n),
        Command::Selftest => Ok(selftest_cmd()),
    }
}
