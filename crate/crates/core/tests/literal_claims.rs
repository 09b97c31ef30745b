//! Literal forms of two acceptance statements that do not hold as written.

use ffdisc::chars::{characters, UnitGroup};
use ffdisc::discrepancy::{classify_growth, long_sum_max, Verdict};
use ffdisc::enumerate::monics_up_to;
use ffdisc::expsums::ramanujan_interval_sum;
use ffdisc::multfunc::ModifiedChar;
use ffdisc::phase::Phase;
use ffdisc::FieldConfig;

#[test]
#[ignore = "false for 1 <= n < deg Q, e.g. Q = t^2 over F_2, n = 1 gives 2"]
fn interval_sum_vanishes_for_positive_n() {
    for q in [2, 3] {
        let f = FieldConfig::prime(q).build().unwrap();
        for m in monics_up_to(&f, 4).filter(|g| g.d() >= 1) {
            for n in 1..=m.d() as i64 + 1 {
                assert_eq!(ramanujan_interval_sum(&f, &m, n).unwrap().value, 0, "Q = {} n = {n}", f.fmt_poly(&m));
            }
        }
    }
}

#[test]
#[ignore = "false below N = deg L, e.g. Q = t^3 over F_2, f(t) = e(2/3), N = 0"]
fn certificate_bounds_every_partial_sum() {
    let f = FieldConfig::prime(2).build().unwrap();
    for m in monics_up_to(&f, 4).filter(|g| g.d() >= 1) {
        let g = UnitGroup::new(f.clone(), &m).unwrap();
        let primes: Vec<_> = ffdisc::factor::factor(&f, &m).unwrap().primes().cloned().collect();
        for chi in characters(&g).into_iter().filter(|c| !c.is_principal()) {
            for a in 0..6 {
                let tw = primes.iter().map(|p| (p.clone(), Phase::rational(a, 6))).collect();
                let mc = ModifiedChar::new_unchecked(chi.clone(), tw).unwrap();
                let rep = classify_growth(&mc).unwrap();
                if rep.verdict == Verdict::Bounded {
                    let lm = long_sum_max(&mc, 1_000_000).unwrap();
                    assert!(lm.max <= rep.bound_certificate.unwrap() + 1e-4, "{} at N = {}", mc.literal(), lm.argmax);
                }
            }
        }
    }
}
