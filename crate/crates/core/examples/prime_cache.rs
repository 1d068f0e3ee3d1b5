//! Sieve once, cache the table on disk, reload it, and factor with it.
//!
//! ```bash
//! cargo run --example prime_cache
//! ```

use zeta_vortex::primes::{PrimeSource, PrimeTable, DEFAULT_MEMORY_BUDGET};

pub fn run() -> zeta_vortex::Result<()> {
    let path = std::env::temp_dir().join(format!("zeta-vortex-example-{}.bin", std::process::id()));

    let first = PrimeTable::load_or_sieve(&path, 2_000_000, DEFAULT_MEMORY_BUDGET)?;
    let again = PrimeTable::load_or_sieve(&path, 2_000_000, DEFAULT_MEMORY_BUDGET)?;
    println!(
        "{} primes up to {}, {:?} then {:?}",
        first.len(),
        first.limit(),
        first.source(),
        again.source()
    );
    assert_eq!(again.source(), PrimeSource::LoadedFromCache);
    assert_eq!(first.primes(), again.primes());

    let n = 600_851_475_143;
    let f = again.factorize(n)?;
    let parts: Vec<String> = f
        .factors
        .iter()
        .map(|pp| format!("{}^{}", pp.prime, pp.exponent))
        .collect();
    println!("{n} = {}  (Ω = {})", parts.join(" · "), f.big_omega());
    assert_eq!(f.recompose(), n);

    std::fs::remove_file(&path).ok();
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
