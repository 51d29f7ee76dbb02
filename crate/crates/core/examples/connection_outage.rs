//! Connection outage of a typical FD link as the FD fraction grows, with
//! its closed-form bounds.

use fdsec::outage::{pco_bounds, pco_exact};
use fdsec::params::{DuplexMode, NetworkInputs, NetworkParams};
use fdsec::quadrature::QuadratureSpec;

fn main() -> fdsec::Result<()> {
    let params = NetworkParams::new(NetworkInputs { alpha: 4.0, lambda_l: 3e-3, r_o: 1.0, eta: 0.1, ..Default::default() })?;
    let quad = QuadratureSpec::default();
    let tau_t = 1.0;
    println!("{:>5} {:>10} {:>10} {:>10}", "q", "lower", "exact", "upper");
    for i in 0..=10 {
        let q = i as f64 / 10.0;
        let exact = pco_exact(&params, DuplexMode::Fd, q, tau_t, &quad)?;
        let (upper, lower) = pco_bounds(&params, DuplexMode::Fd, q, tau_t)?;
        println!("{q:>5.1} {lower:>10.6} {exact:>10.6} {upper:>10.6}");
    }
    Ok(())
}
