//! Run a preset sweep and write its CSV, e.g.
//! `cargo run --release --example sweep -- fig5 /tmp/out`.

use std::path::PathBuf;

use fdsec::experiments::{run_preset, Preset, SweepOptions};

fn main() -> fdsec::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset: Preset = args.next().as_deref().unwrap_or("fig5").parse()?;
    let out = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    let opts = SweepOptions { trials: 2_000, ..Default::default() };
    let table = run_preset(preset, &opts)?;
    std::fs::create_dir_all(&out)?;
    let path = out.join(format!("{}.csv", preset.name()));
    table.write_csv(&path)?;
    println!("{} rows, columns {:?} -> {}", table.rows().len(), table.header(), path.display());
    Ok(())
}
