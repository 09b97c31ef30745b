use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use ffdisc::chars::{characters, parse_char, UnitGroup};
use ffdisc::discrepancy::{
    classify_growth, lex_prefix_sums, lex_sum, long_sums_closed, rotated_sum, rotation_exponents, LexDomain,
};
use ffdisc::expsums::{gauss, ramanujan, RamanujanMethod};
use ffdisc::factor::factor;
use ffdisc::lex::{lex_index, lex_unrank};
use ffdisc::literal::parse_poly;
use ffdisc::multfunc::{parse_modchar, ModifiedChar, MultFn};
use ffdisc::phase::Phase;
use ffdisc::{Field, FieldConfig, Poly};

fn field(q: u32) -> Arc<Field> {
    FieldConfig::for_q(q).unwrap().build().unwrap()
}

fn poly(f: &Field, coeffs: &[u32]) -> Poly {
    Poly::from_coeffs(coeffs.iter().map(|&s| f.elem_of_size(s % f.q())).collect())
}

fn monic(f: &Field, coeffs: &[u32]) -> Poly {
    let mut c: Vec<u32> = coeffs.to_vec();
    c.push(1);
    poly(f, &c)
}

fn q_strategy() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 7, 9])
}

/// Sum of f over monics of degree <= n, by evaluating f at each monic through its factorization.
fn naive_long_sums(f: &MultFn, n: usize) -> Vec<Complex64> {
    let fld = f.field();
    let q = fld.q() as u64;
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    let one = fld.size_of(1) as u64;
    for d in 0..=n {
        let qd = q.pow(d as u32);
        for i in 0..qd {
            let g = lex_unrank(fld, one * qd + i);
            assert!(g.is_monic() && g.d() == d);
            acc += f.eval_complex(&g).unwrap();
        }
        out.push(acc);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn poly_literals_round_trip(q in q_strategy(), coeffs in prop::collection::vec(0u32..9, 0..8)) {
        let f = field(q);
        let g = poly(&f, &coeffs);
        let text = f.fmt_poly(&g);
        prop_assert_eq!(parse_poly(&f, &text).unwrap(), g);
    }

    #[test]
    fn lex_index_inverts_unrank(q in q_strategy(), n in 0u64..200_000) {
        let f = field(q);
        prop_assert_eq!(lex_index(&f, &lex_unrank(&f, n)).unwrap(), n);
    }

    #[test]
    fn factorization_reconstructs(q in q_strategy(), coeffs in prop::collection::vec(0u32..9, 1..9), lead in 1u32..9) {
        let f = field(q);
        let mut c = coeffs.clone();
        c.push(lead % (q - 1) + 1);
        let g = poly(&f, &c);
        let fz = factor(&f, &g).unwrap();
        let mut prod = Poly::constant(fz.unit);
        for (p, e) in &fz.factors {
            prop_assert!(p.is_monic());
            prod = f.poly_mul(&prod, &f.poly_pow(p, *e as u64));
        }
        prop_assert_eq!(prod, g);
    }

    #[test]
    fn ramanujan_methods_agree(q in prop::sample::select(vec![2u32, 3, 4, 5]), g in prop::collection::vec(0u32..5, 0..4), h in prop::collection::vec(0u32..5, 0..5)) {
        let f = field(q);
        let gm = monic(&f, &g);
        let hp = poly(&f, &h);
        let a = ramanujan(&f, &gm, &hp, RamanujanMethod::Definition).unwrap();
        let b = ramanujan(&f, &gm, &hp, RamanujanMethod::Moebius).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn completely_multiplicative(q in prop::sample::select(vec![2u32, 3, 5]), m in prop::collection::vec(0u32..5, 1..4),
                                 a in prop::collection::vec(0u32..5, 0..5), b in prop::collection::vec(0u32..5, 0..5), k in 0usize..8) {
        let f = field(q);
        let modulus = monic(&f, &m);
        let mut all = characters(&UnitGroup::new(f.clone(), &modulus).unwrap());
        let chi = all.swap_remove(k % all.len());
        let tw: Vec<(Poly, Phase)> = factor(&f, &modulus).unwrap().primes().map(|p| (p.clone(), Phase::rational(1, 5))).collect();
        let mf = ModifiedChar::new_unchecked(chi, tw).unwrap().to_multfn();
        let (x, y) = (monic(&f, &a), monic(&f, &b));
        let lhs = mf.eval_complex(&f.poly_mul(&x, &y)).unwrap();
        let rhs = mf.eval_complex(&x).unwrap() * mf.eval_complex(&y).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn rotation_bound(seed in prop::collection::vec((0.0f64..1.0, 1e-6f64..1.0), 1..60)) {
        let w: Vec<Complex64> = seed.iter().map(|&(a, _)| Complex64::from_polar(1.0, std::f64::consts::TAU * a)).collect();
        let z: Vec<Complex64> = seed.iter().map(|&(_, b)| Complex64::from_polar(1.0, std::f64::consts::TAU * b)).collect();
        let k = rotation_exponents(&w, &z).unwrap();
        prop_assert!(k.iter().all(|&e| e >= 1));
        prop_assert!(rotated_sum(&w, &z, &k).norm() >= w.len() as f64 / 7.0);
    }
}

#[test]
fn closed_long_sums_match_naive_enumeration() {
    for (q, m, tw) in [(2u32, "t^2*(t+1)", "1/3"), (3, "t^2+1", "1/2"), (3, "t^3", "2/5"), (4, "t^2", "1/4")] {
        let f = field(q);
        let modulus = parse_poly(&f, m).unwrap();
        for chi in characters(&UnitGroup::new(f.clone(), &modulus).unwrap()).into_iter().filter(|c| !c.is_principal()) {
            let twists: Vec<(Poly, Phase)> = factor(&f, &modulus).unwrap().primes().map(|p| (p.clone(), tw.parse().unwrap())).collect();
            let mc = ModifiedChar::new_unchecked(chi, twists).unwrap();
            let n = if q == 2 { 9 } else { 5 };
            let naive = naive_long_sums(&mc.to_multfn(), n);
            let closed = long_sums_closed(&mc, n).unwrap();
            for (i, (a, b)) in naive.iter().zip(&closed).enumerate() {
                assert!((a - b).norm() < 1e-8, "{} N={i}: {a} vs {b}", mc.literal());
            }
        }
    }
}

#[test]
fn modchar_literals_round_trip() {
    let f = field(3);
    for m in ["t^2", "t^2+1", "t*(t+1)*(t+2)", "t^3+2*t+1"] {
        let modulus = parse_poly(&f, m).unwrap();
        let primes: Vec<Poly> = factor(&f, &modulus).unwrap().primes().cloned().collect();
        for chi in characters(&UnitGroup::new(f.clone(), &modulus).unwrap()).into_iter().filter(|c| c.is_primitive()) {
            let again = parse_char(&f, &chi.literal()).unwrap();
            assert_eq!(again.literal(), chi.literal());
            let tw = primes.iter().enumerate().map(|(i, p)| (p.clone(), Phase::rational(i as i64 + 1, 7))).collect();
            let mc = ModifiedChar::new(chi, tw).unwrap();
            let back = parse_modchar(&mc.literal(), Some(&f)).unwrap();
            assert_eq!(back.literal(), mc.literal());
        }
    }
}

#[test]
fn primitive_gauss_sums_have_full_modulus() {
    for q in [2u32, 3, 4] {
        let f = field(q);
        for d in 1..=3 {
            for i in 0..(q as u64).pow(d) {
                let m = lex_unrank(&f, (q as u64).pow(d) + i);
                if !m.is_monic() {
                    continue;
                }
                for chi in characters(&UnitGroup::new(f.clone(), &m).unwrap()).into_iter().filter(|c| c.is_primitive()) {
                    let tau = gauss(&chi, &Poly::one()).unwrap();
                    assert!((tau.norm() - (q as f64).powf(d as f64 / 2.0)).abs() < 1e-9, "{}", chi.literal());
                }
            }
        }
    }
}

#[test]
fn lex_prefixes_match_literal_sums() {
    let f = field(2);
    let m = parse_poly(&f, "t^2*(t+1)^2").unwrap();
    let chi = characters(&UnitGroup::new(f.clone(), &m).unwrap()).into_iter().find(|c| c.is_primitive()).unwrap();
    let g = ModifiedChar::new(chi, vec![(Poly::t(), Phase::MINUS_ONE), (parse_poly(&f, "t+1").unwrap(), Phase::ONE)]).unwrap().to_multfn();
    for dom in [LexDomain::Monic, LexDomain::All] {
        let pre = lex_prefix_sums(&g, 700, dom).unwrap();
        for n in [1u64, 2, 3, 17, 64, 255, 256, 699, 700] {
            assert!((pre[n as usize] - lex_sum(&g, n, dom).unwrap()).norm() < 1e-9, "{dom:?} n={n}");
        }
    }
}

#[test]
fn growth_report_serializes() {
    let f = field(2);
    let chi = characters(&UnitGroup::new(f.clone(), &parse_poly(&f, "t^2*(t+1)^2").unwrap()).unwrap())
        .into_iter()
        .find(|c| c.is_primitive())
        .unwrap();
    let mc = ModifiedChar::new(chi, vec![(Poly::t(), Phase::MINUS_ONE), (parse_poly(&f, "t+1").unwrap(), Phase::ONE)]).unwrap();
    let v = serde_json::to_value(classify_growth(&mc).unwrap()).unwrap();
    assert_eq!(v["verdict"], "bounded");
}
