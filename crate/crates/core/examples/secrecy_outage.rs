//! Secrecy outage versus eavesdropper density: numerical upper bound for
//! both modes, HD closed form and the small-distance FD approximation.

use fdsec::outage::{pso_fd_approx, pso_hd_closed, pso_upper};
use fdsec::params::{DuplexMode, NetworkInputs, NetworkParams};
use fdsec::quadrature::QuadratureSpec;

fn main() -> fdsec::Result<()> {
    let quad = QuadratureSpec::default();
    let (q, tau_e) = (1.0, 1.0);
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "lambda_e", "hd", "hd_closed", "fd", "fd_approx");
    for lambda_e in [1e-4, 3e-4, 1e-3, 3e-3, 1e-2] {
        let params = NetworkParams::new(NetworkInputs {
            alpha: 4.0,
            lambda_l: 1e-3,
            lambda_e,
            n_e: 2,
            r_o: 0.05,
            p_j: 10.0,
            ..Default::default()
        })?;
        println!(
            "{lambda_e:>8.0e} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            pso_upper(&params, DuplexMode::Hd, q, tau_e, &quad)?,
            pso_hd_closed(&params, q, tau_e)?,
            pso_upper(&params, DuplexMode::Fd, q, tau_e, &quad)?,
            pso_fd_approx(&params, q, tau_e)?,
        );
    }
    Ok(())
}
