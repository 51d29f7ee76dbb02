//! Monte Carlo connection and secrecy outage next to the analytic values.
//! Run with `--release`.

use fdsec::outage::{pco_exact, pso_upper};
use fdsec::params::{DuplexMode, NetworkInputs, NetworkParams};
use fdsec::quadrature::QuadratureSpec;
use fdsec::simulator::{estimate_pco, estimate_pso, SimulationConfig};

fn main() -> fdsec::Result<()> {
    let quad = QuadratureSpec::default();
    let trials = 20_000;
    let params = NetworkParams::new(NetworkInputs { alpha: 4.0, lambda_l: 3e-3, r_o: 1.0, eta: 0.1, ..Default::default() })?;
    for q in [0.0, 0.5, 1.0] {
        let cfg = SimulationConfig::for_connection(&params, DuplexMode::Fd, q, trials, 1)?;
        let est = estimate_pco(&params, &cfg, 1.0)?;
        let exact = pco_exact(&params, DuplexMode::Fd, q, 1.0, &quad)?;
        println!("pco q={q}: mc {:.5} ± {:.5}  exact {exact:.5}", est.p_hat, est.std_err);
    }
    let params = NetworkParams::new(NetworkInputs {
        alpha: 4.0,
        lambda_l: 1e-2,
        lambda_e: 1e-3,
        n_e: 2,
        r_o: 0.5,
        p_j: 10.0,
        ..Default::default()
    })?;
    for mode in [DuplexMode::Hd, DuplexMode::Fd] {
        let cfg = SimulationConfig::for_secrecy(&params, mode, 1.0, 1.0, trials, 1)?;
        let est = estimate_pso(&params, &cfg, 1.0)?;
        let bound = pso_upper(&params, mode, 1.0, 1.0, &quad)?;
        println!(
            "pso {mode}: mc {:.5} ± {:.5}  bound {bound:.5}  (window {:.1}, ill-conditioned {})",
            est.p_hat, est.std_err, cfg.window_radius, est.ill_conditioned
        );
    }
    Ok(())
}
