use proptest::prelude::*;

use twistmat::algebra::{Field, Scalar};
use twistmat::bandmatrix::{BandMatrix, ShiftOp};
use twistmat::families::{
    build_anda, build_bnl, build_generic, build_ore, build_particular, force_bnl, FamilyError, FamilyParams, Variant,
};
use twistmat::seqlab::{generate, is_quasi_balanced, Policy, QBSeq};
use twistmat::verify::{
    check_fundamental, check_gamma_axioms, check_mtilde, classify, gamma_table, FamilyTag, VerifyReport,
};

fn small() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Field::Rational.ratio(n, d).unwrap())
}

fn nonzero_small() -> impl Strategy<Value = Scalar> {
    small().prop_filter("nonzero", |s| !s.is_zero())
}

/// Δ(n, n+1) sequence of the given length from increment bits.
fn delta_seq(n: usize, bits: &[bool]) -> QBSeq {
    let mut terms = vec![n];
    for &b in bits {
        terms.push(terms.last().unwrap() + n + usize::from(b));
    }
    QBSeq::new(n, terms).unwrap()
}

fn gamma_passes(m: &BandMatrix) -> bool {
    check_gamma_axioms(&gamma_table(m, 6, 6).unwrap()).unwrap().passed()
}

fn fundamental(m: &BandMatrix) -> VerifyReport {
    check_fundamental(m, None).unwrap()
}

/// Solves `(Y^k M)_{0,*} = Σ_j a_j (M^{k+1-j} Y^j)_{0,*}` for the `a_j` by forward substitution.
fn first_row_coefficients(m: &BandMatrix, k: usize) -> Vec<Scalar> {
    let f = m.field();
    let lhs = m.shift(ShiftOp::Left(k)).unwrap();
    let powers = m.powers(k + 1).unwrap();
    let mut a: Vec<Scalar> = Vec::new();
    for c in 0..=k + 1 {
        let mut rest = lhs.entry(0, c).unwrap();
        for (j, aj) in a.iter().enumerate() {
            rest = rest - aj * &powers[k + 1 - j].entry(0, c - j).unwrap();
        }
        a.push(rest.checked_div(&powers[k + 1 - c].entry(0, 0).unwrap()).unwrap_or_else(|_| f.zero()));
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn ore_oracles_agree(b in small(), c in small()) {
        let m = build_ore(&b, &c, 18).unwrap();
        prop_assert!(fundamental(&m).passed());
        prop_assert!(gamma_passes(&m));
    }

    #[test]
    fn generic_oracles_agree(b in small(), c in small()) {
        let Ok(m) = build_generic(&b, &c, 18) else { return Ok(()) };
        prop_assert!(fundamental(&m).passed());
        prop_assert!(gamma_passes(&m));
    }

    #[test]
    fn anda_oracles_agree(n in 2usize..=4, d in small(), a in small()) {
        let Ok(m) = build_anda(n, &d, &a, 18) else { return Ok(()) };
        prop_assert!(fundamental(&m).passed());
        prop_assert!(gamma_passes(&m));
    }

    #[test]
    fn bnl_oracles_agree(n in 2usize..=3, a in nonzero_small(), seed in any::<u64>()) {
        prop_assume!(!(a.clone() + Field::Rational.one()).is_zero());
        let l = generate(n, 12, Policy::RandomWalk(seed));
        let m = build_bnl(&a, &l, 18).unwrap();
        prop_assert!(fundamental(&m).passed());
        prop_assert!(gamma_passes(&m));
        prop_assert!(check_mtilde(&m.minus_shift(), &a, &l, None).unwrap().passed());
    }

    #[test]
    fn mutations_are_detected(which in 0usize..4, i_frac in 0.0f64..1.0, j_frac in 0.0f64..1.0, delta in nonzero_small()) {
        let m = match which {
            0 => build_ore(&Field::Rational.int(2), &Field::Rational.int(1), 18).unwrap(),
            1 => build_particular(Field::Rational, 18).unwrap(),
            2 => build_anda(2, &Field::Rational.int(2), &Field::Rational.int(1), 18).unwrap(),
            _ => build_bnl(&Field::Rational.int(1), &QBSeq::all_n(2, 9), 18).unwrap(),
        };
        let rows = m.valid_rows() - 1;
        let i = (i_frac * rows as f64) as usize;
        let j = (j_frac * (i + 2) as f64) as usize;
        let mut mutated = m.clone();
        mutated.set(i, j, m.entry(i, j).unwrap() + delta).unwrap();
        let caught = !fundamental(&mutated).passed() || !gamma_passes(&mutated);
        prop_assert!(caught, "({}, {}) in matrix {}", i, j, which);
    }

    #[test]
    fn row_k_is_recovered_from_row_zero(b in small(), c in small(), k in 1usize..10) {
        let Ok(m) = build_generic(&b, &c, 14) else { return Ok(()) };
        let report = fundamental(&m);
        prop_assume!(report.checked_depth >= k);
        prop_assert_eq!(first_row_coefficients(&m, k), m.row(k).unwrap().to_vec());
    }

    #[test]
    fn classify_round_trip(b in small(), c in small(), n in 2usize..=3, d in small(), a in small(), seed in any::<u64>()) {
        let mut variants = vec![Variant::Ore { b: b.clone(), c: c.clone() }, Variant::Particular];
        if !c.is_one() {
            variants.push(Variant::Generic { b: b.clone(), c: c.clone() });
        }
        if !(d.is_one() && a.is_zero()) {
            variants.push(Variant::Anda { n, d: d.clone(), a: a.clone() });
        }
        let one = Field::Rational.one();
        if !a.is_zero() && !(a.clone() + one).is_zero() {
            let l = generate(n, 10, Policy::RandomWalk(seed));
            let depth = 16;
            let visible: Vec<usize> = l.terms().iter().copied().filter(|&t| t < depth).collect();
            variants.push(Variant::Bnl { a: a.clone(), l: QBSeq::new(n, visible).unwrap() });
            let m = build_bnl(&a, &l, depth).unwrap();
            let got = classify(&m).unwrap().variant().unwrap();
            prop_assert_eq!(&got, variants.last().unwrap());
            variants.pop();
        }
        for v in variants {
            let Ok(m) = FamilyParams::new(v.clone(), 16).build() else { continue };
            let got = classify(&m).unwrap();
            prop_assert_eq!(got.variant(), Some(v));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fundamental_iff_mtilde(n in 2usize..=3, bits in proptest::collection::vec(any::<bool>(), 5..9)) {
        let a = Field::Rational.one();
        let l = delta_seq(n, &bits);
        let m = force_bnl(&a, &l, l.last() + n).unwrap();
        let f = fundamental(&m).passed();
        let c = check_mtilde(&m.minus_shift(), &a, &l, None).unwrap().passed();
        prop_assert_eq!(f, c, "L = {}", l);
        if is_quasi_balanced(&l).is_ok() {
            prop_assert!(f);
        }
    }
}

#[test]
fn gf_p_families_verify() {
    let f = Field::prime(101).unwrap();
    let m = build_generic(&f.int(3), &f.int(7), 18).unwrap();
    assert!(fundamental(&m).passed());
    assert!(gamma_passes(&m));
    // R_k(1, 2) = ±(2k - 1) vanishes mod 101 at k = 51.
    assert!(matches!(
        build_anda(2, &f.int(2), &f.int(1), 18),
        Err(FamilyError::Obstruction { index: 51, .. })
    ));
    let m = build_bnl(&f.int(5), &QBSeq::all_n(3, 6), 18).unwrap();
    assert!(check_mtilde(&m.minus_shift(), &f.int(5), &QBSeq::all_n(3, 6), None).unwrap().passed());
    assert!(matches!(classify(&m).unwrap().tag, FamilyTag::Bnl { .. }));
}

#[test]
fn fundamental_failure_positions_are_deterministic() {
    let l = QBSeq::from_terms(vec![2, 4, 7, 10]).unwrap();
    let m = force_bnl(&Field::Rational.one(), &l, 12).unwrap();
    let a = fundamental(&m);
    let b = fundamental(&m);
    assert_eq!(a, b);
    let f = a.failure().unwrap();
    assert!(!f.lhs.to_string().is_empty() && f.lhs != f.rhs);
}

#[test]
fn report_round_trips_through_json() {
    let m = build_particular(Field::Rational, 10).unwrap();
    let r = check_fundamental(&m, Some(12)).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    assert!(s.contains("\"status\":\"window-limited\""));
    assert_eq!(serde_json::from_str::<VerifyReport>(&s).unwrap(), r);
}
