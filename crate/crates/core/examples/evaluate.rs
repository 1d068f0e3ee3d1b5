//! Evaluate a member three ways and check that the certified discs overlap.
//!
//! ```bash
//! cargo run --example evaluate
//! ```

use zeta_vortex::primes::sieve;
use zeta_vortex::zeta::{
    dirichlet_eval, euler_eval, identity_eval, ComplexPoint, IdentityMember, PhaseVector,
    TruncationPlan,
};

pub fn run() -> zeta_vortex::Result<()> {
    let table = sieve(1_000_000)?;
    let plan = TruncationPlan::for_table(&table, 0.1)?;
    let s = ComplexPoint::new(1.7, -3.5)?;

    // λ(n) phases: every prime carries e^{iπ} = −1.
    let x = PhaseVector::liouville();
    let d = dirichlet_eval(&x, &s, &plan, &table)?;
    let e = euler_eval(&x, &s, &plan, &table)?;
    let i = identity_eval(IdentityMember::Liouville, &s, 100_000)?;

    for (name, v) in [("dirichlet", &d), ("euler", &e), ("identity", &i)] {
        println!(
            "{name:>9}: {:+.12} {:+.12}i  radius {:.2e}",
            v.value.re, v.value.im, v.error_radius
        );
    }
    assert!(d.agrees_with(&e) && e.agrees_with(&i) && d.agrees_with(&i));
    println!("all three discs overlap");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
