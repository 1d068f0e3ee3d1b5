//! Turns of σ ↦ ζ_x(σ + it) across a strip, and an adaptive trace as CSV.
//!
//! ```bash
//! cargo run --example winding > curve.csv
//! ```

use zeta_vortex::argument::{trace_curve, winding, Spacing, DEFAULT_MAX_WINDING_ERROR};
use zeta_vortex::primes::sieve;
use zeta_vortex::zeta::{PhaseVector, TruncationPlan};

pub fn run() -> zeta_vortex::Result<()> {
    let table = sieve(1_000_000)?;
    let plan = TruncationPlan::for_table(&table, 0.1)?;
    let x = PhaseVector::quarter_turn();

    let w = winding(&x, 0.0, 1.5, 2.0, &plan, &table, DEFAULT_MAX_WINDING_ERROR)?;
    eprintln!(
        "winding over [1.5, 2]: {:.6} turns (± {:.1e})",
        w.turns, w.error
    );

    // Geometric spacing crowds samples near σ = 1 where the curve moves fastest.
    let curve = trace_curve(&x, 0.0, 1.01, 4.0, 40, Spacing::Geometric, &plan, &table)?;
    print!("{}", curve.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
