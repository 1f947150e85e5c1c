use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;

use qecc_lab::codes::{GENERIC_PROBE_ALPHA as A, GENERIC_PROBE_BETA as B};
use qecc_lab::fidelity::{fidelity_general, FidelityCurve, Rational};
use qecc_lab::noise::{parse_error_spec, YConvention};
use qecc_lab::state::inverse_permutation;
use qecc_lab::{
    build_code, CodeName, DensityMatrix2, Gate, PauliString, Phase, StateVector, Syndrome,
};

const N: usize = 3;

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    let top = 1u64 << n;
    (0..top, 0..top, 0u8..4)
        .prop_map(move |(x, z, k)| PauliString::from_masks(n, x, z, Phase::new(k as i64)).unwrap())
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map(
        "zero vector",
        move |v| {
            let amps: Vec<Complex64> = v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
            let s = StateVector::from_amplitudes(n, amps).ok()?;
            (s.norm_sqr() > 1e-6).then(|| s.normalized().0)
        },
    )
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 1..=n;
    prop_oneof![
        q.clone().prop_map(Gate::H),
        q.clone().prop_map(Gate::X),
        q.clone().prop_map(Gate::Y),
        q.clone().prop_map(Gate::Z),
        (q.clone(), q.clone())
            .prop_filter_map("distinct", |(c, t)| (c != t).then(|| Gate::cnot(c, t))),
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(Gate::Permute),
    ]
}

fn dense_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let d = a.len();
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| (0..d).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

fn dense_close(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).norm() < 1e-12)
}

proptest! {
    #[test]
    fn product_matches_dense_matrices(p in pauli(N), q in pauli(N)) {
        let pq = p.mul(&q).unwrap();
        prop_assert!(dense_close(&pq.to_dense().unwrap(), &dense_mul(&p.to_dense().unwrap(), &q.to_dense().unwrap())));
    }

    #[test]
    fn multiplication_is_associative(p in pauli(4), q in pauli(4), r in pauli(4)) {
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
    }

    #[test]
    fn inverse_gives_identity(p in pauli(5)) {
        let id = p.mul(&p.inverse()).unwrap();
        prop_assert!(id.is_identity());
        prop_assert_eq!(id.phase(), Phase::ONE);
    }

    #[test]
    fn commutation_matches_products(p in pauli(4), q in pauli(4)) {
        let pq = p.mul(&q).unwrap();
        let qp = q.mul(&p).unwrap();
        prop_assert_eq!(p.commutes(&q).unwrap(), pq == qp);
        prop_assert_eq!(p.commutes(&q).unwrap(), q.commutes(&p).unwrap());
    }

    #[test]
    fn label_round_trips(p in pauli(9)) {
        prop_assert_eq!(PauliString::parse(9, &p.to_string()).unwrap(), p);
        prop_assert_eq!(PauliString::parse(9, &p.compact_label()).unwrap(), p);
    }

    #[test]
    fn apply_matches_dense(p in pauli(N), s in state(N)) {
        let m = p.to_dense().unwrap();
        let out = p.apply(&s).unwrap();
        for (r, row) in m.iter().enumerate() {
            let want: Complex64 = row.iter().zip(s.amps()).map(|(a, b)| a * b).sum();
            prop_assert!((out.amp(r) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn circuits_preserve_norm(gates in prop::collection::vec(gate(4), 0..12), s in state(4)) {
        let out = s.apply_circuit(&gates).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn self_inverse_gates(g in gate(4), s in state(4)) {
        let undo = match &g {
            Gate::Permute(p) => Gate::Permute(inverse_permutation(p)),
            other => other.clone(),
        };
        prop_assert!(s.apply_gate(&g).unwrap().apply_gate(&undo).unwrap().approx_eq(&s, 1e-12));
    }

    #[test]
    fn syndrome_value_round_trips(v in 0usize..256) {
        let s = Syndrome::from_value(v, 8);
        prop_assert_eq!(s.value(), v);
        prop_assert_eq!(Syndrome::parse(&s.to_string(), 8).unwrap(), s);
    }

    #[test]
    fn any_pauli_error_gives_an_eigen_syndrome(code in prop::sample::select(CodeName::ALL.to_vec()), seed in any::<u64>()) {
        let spec = build_code(code).unwrap();
        let top = 1u64 << spec.n;
        let e = PauliString::from_masks(spec.n, seed % top, (seed >> 20) % top, Phase::ONE).unwrap();
        let enc = spec.encode(A, B).unwrap();
        let eigen = spec.eigen_syndrome(&e.apply(&enc).unwrap()).unwrap();
        prop_assert_eq!(eigen, spec.syndrome_of(&e).unwrap());
    }

    #[test]
    fn stabilizer_products_fix_code_states(code in prop::sample::select(CodeName::ALL.to_vec()), pick in any::<u16>()) {
        let spec = build_code(code).unwrap();
        let mut g = PauliString::identity(spec.n);
        for (i, gen) in spec.generators.iter().enumerate() {
            if pick >> i & 1 == 1 {
                g = g.mul(gen).unwrap();
            }
        }
        let enc = spec.encode(A, B).unwrap();
        prop_assert!(g.apply(&enc).unwrap().approx_eq(&enc, 1e-12));
    }

    #[test]
    fn correction_cancels_syndrome(code in prop::sample::select(CodeName::ALL.to_vec()), v in any::<usize>()) {
        let spec = build_code(code).unwrap();
        let len = spec.generator_count();
        let s = Syndrome::from_value(v % (1 << len), len);
        let fix = spec.lookup_correction(&s).unwrap();
        prop_assert_eq!(spec.syndrome_of(&fix).unwrap(), s);
    }

    #[test]
    fn fidelity_is_bounded_and_symmetric(
        t1 in 0.0..PI, p1 in 0.0..TAU, w1 in 0.0f64..1.0,
        t2 in 0.0..PI, p2 in 0.0..TAU, w2 in 0.0f64..1.0,
    ) {
        let mk = |t: f64, p: f64, w: f64| {
            let a = Complex64::new((t / 2.0).cos(), 0.0);
            let b = Complex64::from_polar((t / 2.0).sin(), p);
            DensityMatrix2::pure(a, b).unwrap().mix(&DensityMatrix2::maximally_mixed(), w).unwrap()
        };
        let (s, r) = (mk(t1, p1, w1), mk(t2, p2, w2));
        let f = fidelity_general(&s, &r);
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((f - fidelity_general(&r, &s)).abs() < 1e-12);
    }

    #[test]
    fn curves_decrease_and_agree_with_exact(k in 0i64..100, num in 1i64..6) {
        let f = Rational::new(num, 6);
        for curve in [FidelityCurve::unprotected(), FidelityCurve::for_code("C", f)] {
            let (p, q) = (Rational::new(k, 100), Rational::new(k + 1, 100));
            prop_assert!(curve.value_exact(q).unwrap() <= curve.value_exact(p).unwrap());
            let exact = curve.value_exact(p).unwrap();
            let approx = *exact.numer() as f64 / *exact.denom() as f64;
            prop_assert!((curve.value(k as f64 / 100.0).unwrap() - approx).abs() < 1e-12);
        }
    }

    #[test]
    fn error_spec_parser_never_panics(text in "\\PC{0,16}") {
        let _ = parse_error_spec(&text, 9, 1, YConvention::Injected);
        let _ = PauliString::parse(9, &text);
    }
}
