//! How many turns can ζ_{π/2} certifiably make on [1 + ε, σ_hi]?
//!
//! ```bash
//! cargo run --release --example turns_budget
//! ```

use zeta_vortex::primes::sieve;
use zeta_vortex::vortex::{certified_turns, fractional_turns_budget, turns_budget};
use zeta_vortex::zeta::TruncationPlan;

pub fn run() -> zeta_vortex::Result<()> {
    let table = sieve(10_000_000)?;
    let plan = TruncationPlan::for_table(&table, 1e-6)?;

    let two = turns_budget(2, 3.0, &plan, &table)?;
    println!(
        "2 turns: feasible {}  short by {:.4} turns  (A(1+1e-6) >= {:.4})",
        two.feasible, two.deficit_turns, two.best_lower
    );

    let quarter = fractional_turns_budget(0.25, 3.0, &plan, &table)?;
    println!(
        "1/4 turn: feasible {}  epsilon {:?}",
        quarter.feasible, quarter.epsilon
    );

    let got = certified_turns(1.0 + 1e-6, 3.0, &plan, &table)?;
    println!("certified turns on [1 + 1e-6, 3]: {got:.4}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
