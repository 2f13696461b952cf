//! The `sweep` subcommand: tail quantiles in dB against the antenna count.

use std::fs::File;
use std::io::{BufWriter, Write};

use trpower::montecarlo::{scaling_sweep_with, SimConfig, SweepRow};
use trpower::ChannelDims;

use crate::args::SweepArgs;
use crate::csvfmt::sig10;
use crate::exec::Threaded;
use crate::AppError;

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), AppError> {
    for &m in &args.m_list {
        // Fail before simulating anything when the list holds a zero.
        ChannelDims::new(m, args.taps)?;
    }
    let base = SimConfig::new(
        ChannelDims::new(args.m_list.first().copied().unwrap_or(1), args.taps)?,
        args.realizations,
        args.seed,
    )?;
    let rows = scaling_sweep_with(&base, &args.m_list, args.probability, &Threaded)?;
    write_sweep(args, &rows)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn write_sweep(args: &SweepArgs, rows: &[SweepRow]) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(&args.out)?);
    out.write_all(b"m,kind,measure,quantile_db\n")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            row.antennas,
            row.kind.label(),
            row.measure.label(),
            sig10(row.quantile_db)
        )?;
    }
    out.flush()
}
