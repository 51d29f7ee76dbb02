//! The deterministic cross-checks behind the `validate` subcommand, on a
//! small sample.

use fdsec::validation::{check_pco_bounds, check_pso_closed_form, ValidationOptions};

fn main() -> fdsec::Result<()> {
    let opts = ValidationOptions { samples: 50, ..Default::default() };
    let mut outcomes = check_pco_bounds(&opts)?;
    outcomes.extend(check_pso_closed_form(&opts)?);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} checks, {failed} failed", outcomes.len());
    Ok(())
}
