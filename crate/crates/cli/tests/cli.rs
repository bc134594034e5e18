use std::path::PathBuf;

use minkowski_cli::groupfile::{parse_group_file, serialize_group_file, GroupFile};
use minkowski_cli::run;
use minkowski_core::matgroup::RatMatrix;
use num_rational::BigRational;
use proptest::prelude::*;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("minkowski").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn bound_output_and_usage_errors() {
    let (code, out, _) = invoke(&["bound", "4"]);
    assert_eq!((code, out.as_str()), (0, "M(4) = 5760 = 2^7 · 3^2 · 5\n"));
    assert_eq!(invoke(&["bound", "0"]).0, 2);
    assert_eq!(invoke(&["bound", "x"]).0, 2);
    assert_eq!(invoke(&["nosuchcommand"]).0, 2);
    assert_eq!(invoke(&[]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}

#[test]
fn certify_quaternion_group() {
    let (code, out, _) = invoke(&["certify", &data("q8.grp"), "--prime", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("overall: PASS"));
    for line in ["0\t2\t1\t8\tyes", "1\t0\t6\t-24\tyes", "2\t-2\t1\t8\tyes"] {
        assert!(out.contains(line), "{out}");
    }
    // |Q8| is not a power of 3
    assert_eq!(invoke(&["certify", &data("q8.grp"), "--prime", "3"]).0, 2);
}

#[test]
fn tsv_has_a_stable_header() {
    let (code, out, _) = invoke(&["--format", "tsv", "certify", &data("q8.grp"), "--prime", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t\tz\tm\tproduct\tdivisible");
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.split('\t').count() == 5));
    let (_, again, _) = invoke(&["--format", "tsv", "certify", &data("q8.grp"), "--prime", "2"]);
    assert_eq!(out, again);
}

#[test]
fn group_file_commands() {
    let (code, out, _) = invoke(&["fsi", &data("q8.grp")]);
    assert_eq!(code, 0);
    assert!(out.contains("indicator = -1"));

    let (code, out, _) = invoke(&["traces", &data("rotation.grp"), "--prime", "2"]);
    assert_eq!(code, 0, "{out}");

    let (code, out, _) = invoke(&["reduce", &data("rotation.grp"), "--prime", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("|G mod 2| = 2"));

    // reduction needs a rational group
    assert_eq!(invoke(&["reduce", &data("q8.grp"), "--prime", "3"]).0, 2);
    assert_eq!(invoke(&["fsi", "/no/such/file.grp"]).0, 2);
}

#[test]
fn traces_of_a_non_p_group_are_informational() {
    // the order-4 rotation group is not a 3-group; only the character sums are checked
    let (code, out, _) = invoke(&["traces", &data("rotation.grp"), "--prime", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("informational"));
}

#[test]
fn integralize_emits_an_integral_group() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("int.grp");
    let (code, out, err) =
        invoke(&["integralize", &data("conjugated_rotation.grp"), "--emit", target.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
    let g = parse_group_file(&std::fs::read_to_string(&target).unwrap()).unwrap();
    let (code, out, _) = invoke(&["certify", target.to_str().unwrap(), "--prime", "2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(g.dim, 2);
}

#[test]
fn witness_emits_a_readable_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("w.grp");
    let (code, out, _) = invoke(&["witness", "3", "--prime", "2", "--emit", target.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("order = 48"));
    let (code, out, _) = invoke(&["reduce", target.to_str().unwrap(), "--prime", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("injective: yes"));
    assert_eq!(invoke(&["witness", "2", "--prime", "5"]).0, 2);
}

#[test]
fn number_theory_commands() {
    let (code, out, _) = invoke(&["glorder", "2", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("|GL_2(F_3)| = 48 = 2^4 · 3"));
    assert_eq!(invoke(&["glorder", "2", "6"]).0, 2);

    let (_, out, _) = invoke(&["specialprime", "3"]);
    assert!(out.contains(": 2 "));
    let (_, out, _) = invoke(&["specialprime", "3", "--skip", "1"]);
    assert!(out.contains(": 5 "));
    assert_eq!(invoke(&["specialprime", "4"]).0, 2);

    let (code, out, _) = invoke(&["lemma51", "6", "1", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("equals M(6)_3: PASS"));

    let (code, out, _) = invoke(&["iso", "orthogonal", "2", "3", "--epsilon", "-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("order 8 = 2^3"));
    assert_eq!(invoke(&["iso", "orthogonal", "2", "3"]).0, 2);
    assert_eq!(invoke(&["iso", "hermitian", "2", "4"]).0, 2);

    let (code, out, _) = invoke(&["schur", "1", "--field", "zeta:4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("S(1, Q(ζ_4)) = 4"));
    assert_eq!(invoke(&["schur", "1", "--field", "R"]).0, 2);
}

#[test]
fn sequence_commands() {
    let (code, out, _) = invoke(&["bernoulli", "12"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("B_12 = -691/2730"));
    assert_eq!(invoke(&["bernoulli", "7"]).0, 0);

    let (code, out, _) = invoke(&["hanna", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("denominator = 5760"));
    assert_eq!(invoke(&["hanna", "0"]).0, 2);

    let (code, out, _) = invoke(&["asymptotic", "--primes", "1000", "--n", "20"]);
    assert_eq!(code, 0);
    assert!(out.contains("4.0587"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "matgroup v1\nfield rational\ndim 2\ngen\n1 0 0\n0 1\n").unwrap();
    let (code, _, err) = invoke(&["fsi", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5"), "{err}");
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

proptest! {
    #[test]
    fn rational_files_round_trip(
        dim in 1usize..=3,
        entries in proptest::collection::vec(small_rational(), 27),
        count in 1usize..=3,
    ) {
        let gens: Vec<RatMatrix> = (0..count)
            .map(|k| {
                let rows = (0..dim)
                    .map(|i| (0..dim).map(|j| {
                        // keep generators invertible by adding a large diagonal
                        let x = entries[(k * 9 + i * dim + j) % 27].clone();
                        if i == j { x + BigRational::from_integer(100.into()) } else { x }
                    }).collect())
                    .collect();
                RatMatrix::from_rows(rows).unwrap()
            })
            .collect();
        let file = GroupFile::rational(gens);
        let text = serialize_group_file(&file);
        prop_assert_eq!(parse_group_file(&text).unwrap(), file);
    }
}
