//! NSEE-optimal FD fraction versus jamming power, and the effect of a
//! minimum-throughput floor at small densities.

use fdsec::optimizer::{optimize_nsee, optimize_nsee_constrained};
use fdsec::params::{NetworkInputs, NetworkParams, OutageConstraints};

fn main() -> fdsec::Result<()> {
    let base = NetworkInputs { alpha: 4.0, lambda_l: 1e-3, lambda_e: 1e-4, n_e: 4, r_o: 1.0, p_c: 1.0, ..Default::default() };
    println!("-- unconstrained, sigma 0.3, epsilon 0.05");
    for p_j in [0.1, 1.0, 10.0, 100.0] {
        let params = NetworkParams::new(NetworkInputs { p_j, ..base })?;
        let c = OutageConstraints::new(&params, 0.3, 0.05)?;
        let r = optimize_nsee(&params, &c)?;
        println!("p_j {p_j:>6}: q* {:?} nsee {:.4e} ({})", r.q_star, r.objective, r.case_tag);
    }
    println!("-- throughput floor 1e-3, sigma 0.3, epsilon 0.03");
    for lambda_l in [1e-5, 1e-3, 1e-2, 1e-1] {
        let params = NetworkParams::new(NetworkInputs { lambda_l, p_j: 10.0, ..base })?;
        let c = OutageConstraints::new(&params, 0.3, 0.03)?;
        let free = optimize_nsee(&params, &c)?;
        let floor = optimize_nsee_constrained(&params, &c, 1e-3)?;
        println!("lambda_l {lambda_l:>6.0e}: free {:.4e}  with floor {:.4e} ({})", free.objective, floor.objective, floor.case_tag);
    }
    Ok(())
}
