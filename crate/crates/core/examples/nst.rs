//! NST-optimal FD fraction under outage targets, approaching the
//! dense-network limit as the legitimate density grows.

use fdsec::optimizer::{nst_q_dense_limit, optimize_nst};
use fdsec::params::{NetworkInputs, NetworkParams, OutageConstraints};

fn main() -> fdsec::Result<()> {
    let base = NetworkInputs { alpha: 4.0, lambda_e: 1e-4, n_e: 4, r_o: 1.0, ..Default::default() };
    let (sigma, epsilon) = (0.3, 0.02);
    for lambda_l in [1e-3, 3e-2, 1e-1, 1.0, 10.0] {
        let params = NetworkParams::new(NetworkInputs { lambda_l, ..base })?;
        let c = OutageConstraints::new(&params, sigma, epsilon)?;
        let r = optimize_nst(&params, &c)?;
        println!(
            "lambda_l {lambda_l:>6.0e}: q* {:.6} ({}) nst {:.4e}  q_m {:.6}  dense limit {:.6}",
            r.q_star.unwrap_or(f64::NAN),
            r.case_tag,
            r.objective,
            c.q_m().unwrap_or(f64::NAN),
            nst_q_dense_limit(&params, &c)?
        );
    }
    Ok(())
}
