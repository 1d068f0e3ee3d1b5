//! Solve for σ_θ, the abscissa right of which no member reaches |Arg| = θ,
//! then sample random members to the right of it.
//!
//! ```bash
//! cargo run --release --example frontier
//! ```

use std::f64::consts::FRAC_PI_4;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zeta_vortex::frontier::{
    random_phase_vector, solve_sigma_theta, verify_exclusion, SampleRegion,
};
use zeta_vortex::primes::sieve;
use zeta_vortex::zeta::TruncationPlan;

pub fn run() -> zeta_vortex::Result<()> {
    let table = sieve(10_000_000)?;
    let plan = TruncationPlan::for_table(&table, 1e-3)?;

    let theta = FRAC_PI_4;
    let sol = solve_sigma_theta(theta, 1e-3, &plan, &table)?;
    println!(
        "sigma(pi/4) <= {:.7}  bracket [{:.7}, {:.7}]  {} primes",
        sol.sigma_theta_bound, sol.bracket.0, sol.bracket.1, sol.primes_used
    );

    let sample_table = table.truncated(1_000_000);
    let sample_plan = TruncationPlan::for_table(&sample_table, 1e-3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let x = random_phase_vector(&mut rng);
        let region = SampleRegion {
            seed: 11,
            ..SampleRegion::default()
        };
        let r = verify_exclusion(&x, theta, &sol, 500, &region, &sample_plan, &sample_table)?;
        println!(
            "max |Arg| {:.4}  certified {:.4}  margin {:+.4}  counterexamples {}",
            r.max_abs_arg, r.max_certified, r.margin, r.counterexamples
        );
        assert_eq!(r.counterexamples, 0);
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
