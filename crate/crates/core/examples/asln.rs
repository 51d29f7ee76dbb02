//! ASLN-optimal FD fraction across legitimate densities, compared with the
//! perfect-cancellation closed form.

use fdsec::optimizer::{asln_q_closed_sic, optimize_asln};
use fdsec::params::{NetworkInputs, NetworkParams, RateThresholds};

fn main() -> fdsec::Result<()> {
    let rates = RateThresholds::from_thresholds(2.0, 1.0)?;
    let base = NetworkInputs { alpha: 4.0, lambda_e: 1e-3, n_e: 6, r_o: 1.0, eta: 0.1, ..Default::default() };
    println!("{:>8} {:>10} {:>12} {:>14} {:>10}", "lambda_l", "q*", "asln*", "case", "q*(eta=0)");
    for lambda_l in [1e-4, 1e-3, 1e-2, 3e-2, 1e-1] {
        let params = NetworkParams::new(NetworkInputs { lambda_l, ..base })?;
        let r = optimize_asln(&params, &rates)?;
        let sic = NetworkParams::new(NetworkInputs { lambda_l, eta: 0.0, ..base })?;
        let closed = asln_q_closed_sic(&sic, &rates)?.min(1.0);
        println!("{lambda_l:>8.0e} {:>10.6} {:>12.4e} {:>14} {closed:>10.6}", r.q_star.unwrap_or(f64::NAN), r.objective, r.case_tag);
    }
    Ok(())
}
