//! The argument functional A_x and the unwrapped argument φ, with tails.
//!
//! ```bash
//! cargo run --example argument
//! ```

use zeta_vortex::argument::{a_eval, unwrapped_arg};
use zeta_vortex::primes::sieve;
use zeta_vortex::zeta::{ComplexPoint, PhaseVector, TruncationPlan};

pub fn run() -> zeta_vortex::Result<()> {
    let table = sieve(1_000_000)?;
    let plan = TruncationPlan::for_table(&table, 0.01)?;
    let x = PhaseVector::quarter_turn();

    println!(
        "{:>6} {:>14} {:>14} {:>10}",
        "sigma", "A lower", "A upper", "phi"
    );
    for sigma in [1.1, 1.25, 1.5, 2.0, 3.0] {
        let s = ComplexPoint::real(sigma)?;
        let a = a_eval(&x, &s, &plan, &table)?;
        let phi = unwrapped_arg(&x, &s, &plan, &table)?;
        // On the real axis every factor of ζ_{π/2} turns the same way.
        assert!((phi.phi.abs() - a.total).abs() <= a.tail_bound + phi.tail_bound);
        println!(
            "{sigma:>6} {:>14.10} {:>14.10} {:>10.6}",
            a.lower(),
            a.upper(),
            phi.phi
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
