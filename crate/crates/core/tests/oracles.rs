//! Values pinned from independent brute-force computations (numpy sieve and
//! direct float sums), compared with the library's certified output.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use zeta_vortex::argument::{a_eval, winding};
use zeta_vortex::primes::{sieve, PrimeTable};
use zeta_vortex::vortex::{phase_error, AlignmentTarget};
use zeta_vortex::zeta::{
    dirichlet_eval, euler_eval, identity_eval, ComplexPoint, IdentityMember, PhaseVector,
    TruncationPlan,
};

fn table_e6() -> PrimeTable {
    sieve(1_000_000).unwrap()
}

#[test]
fn prime_counts() {
    let t = table_e6();
    assert_eq!(t.len(), 78_498);
    assert_eq!(t.nth(25).unwrap(), 97);
    assert_eq!(t.primes().last(), Some(&999_983));
}

#[test]
fn quarter_turn_a_at_one_and_a_half() {
    let t = table_e6();
    let plan = TruncationPlan::for_table(&t, 0.1).unwrap();
    let a = a_eval(
        &PhaseVector::quarter_turn(),
        &ComplexPoint::real(1.5).unwrap(),
        &plan,
        &t,
    )
    .unwrap();
    assert!((a.total - 0.833_091_664_207_147_5).abs() < 1e-12);
    // Same sum over primes up to 10^7 must sit inside the certificate.
    let deeper = 0.833_184_541_748_723_9;
    assert!(a.lower() <= deeper && deeper <= a.upper());
}

#[test]
fn quarter_turn_winding_on_one_and_a_half_to_two() {
    let t = table_e6();
    let plan = TruncationPlan::for_table(&t, 0.1).unwrap();
    let w = winding(&PhaseVector::quarter_turn(), 0.0, 1.5, 2.0, &plan, &t, 0.25).unwrap();
    assert!((w.turns - 0.061_488_551_894_685_55).abs() < 1e-12);
}

#[test]
fn liouville_and_moebius_at_two() {
    let t = table_e6();
    let plan = TruncationPlan::for_table(&t, 0.5).unwrap();
    let two = ComplexPoint::real(2.0).unwrap();
    let d = dirichlet_eval(&PhaseVector::liouville(), &two, &plan, &t).unwrap();
    assert!((d.value.re - 0.657_973_626_739_290_6).abs() <= d.error_radius);
    let m = identity_eval(IdentityMember::Moebius, &two, 100_000).unwrap();
    assert!((m.value.re - 0.607_927_101_854_026_7).abs() <= m.error_radius);
    let e = euler_eval(&PhaseVector::liouville(), &two, &plan, &t).unwrap();
    assert!(e.agrees_with(&d));
}

#[test]
fn two_prime_phase_errors() {
    let t = table_e6();
    let time = FRAC_PI_2 / LN_2;
    let plus = AlignmentTarget::new(PhaseVector::zero(), 2, 0.1).unwrap();
    assert!((phase_error(time, &plus, &t).unwrap() - PI).abs() < 1e-12);
    let minus = plus.with_target_phase(-FRAC_PI_2);
    assert!((phase_error(time, &minus, &t).unwrap() - 0.918_856_947_445_549_5).abs() < 1e-12);
}

/// The domination A_x(σ + it) ≤ A_{π/2}(σ) fails for phases slightly below
/// π/2: the largest angle of `1 − r e^{iθ}` is arcsin r, reached at cos θ = r,
/// and arcsin r > arctan r.
#[test]
fn domination_fails_near_quarter_turn() {
    let t = sieve(100_000).unwrap();
    let plan = TruncationPlan::for_table(&t, 0.1).unwrap();
    let s = ComplexPoint::real(2.0).unwrap();
    let tilted = a_eval(&PhaseVector::constant(FRAC_PI_2 - 0.1), &s, &plan, &t).unwrap();
    let quarter = a_eval(&PhaseVector::quarter_turn(), &s, &plan, &t).unwrap();
    let excess = tilted.total - quarter.total;
    assert!(excess > tilted.tail_bound + quarter.tail_bound);
    assert!(excess > 4e-3 && excess < 6e-3, "excess {excess}");
    // The single factor at p = 2 already exceeds arctan(1/4).
    let r: f64 = 0.25;
    let theta = FRAC_PI_2 - 0.1;
    let arg = (r * theta.sin()).atan2(1.0 - r * theta.cos());
    assert!(arg > r.atan() && arg <= r.asin());
}
