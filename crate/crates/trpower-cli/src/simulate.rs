//! The `simulate` subcommand: empirical distribution curves as CSV.
//!
//! Curve abscissae are the empirical tail quantiles at log-spaced probability
//! levels rather than a linear x grid, which resolves the deep tail the
//! figures care about. Antenna and base station powers are reported as CCDF
//! curves (excess power), received power as a CDF curve (shortfall). Where an
//! exact Gamma-family law exists a `_ref` file samples it at the same
//! abscissae.

use trpower::analytic::{gamma_ccdf, gamma_cdf, reference_law, Tail};
use trpower::montecarlo::{measure_tail, run_ensemble_with, EmpiricalDistribution, SimConfig};
use trpower::powers::to_decibel;
use trpower::{ChannelDims, Error, Measure};

use crate::args::SimulateArgs;
use crate::csvfmt::write_curve;
use crate::exec::Threaded;
use crate::AppError;

/// Log-spaced probability levels from 1 down to the smallest tail mass the
/// sample count supports (ten samples).
pub fn probability_levels(sample_count: usize, points: usize) -> Result<Vec<f64>, Error> {
    let p_min = 10.0 / sample_count as f64;
    if p_min >= 1.0 {
        return Err(Error::InsufficientTailSamples {
            tail_prob: 1.0,
            needed: 10,
            available: sample_count as f64,
        });
    }
    let span = libm::log10(p_min);
    Ok((0..points.max(2))
        .map(|i| libm::pow(10.0, span * i as f64 / (points.max(2) - 1) as f64))
        .collect())
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<(), AppError> {
    let dims = ChannelDims::new(args.antennas, args.taps)?;
    let kinds: Vec<_> = args.kinds.iter().map(|k| k.to_kind()).collect();
    let cfg = SimConfig::new(dims, args.realizations, args.seed)?.with_kinds(&kinds)?;
    let mut samples = run_ensemble_with(&cfg, &Threaded)?;

    std::fs::create_dir_all(&args.out_dir)?;
    for kind in cfg.kinds().to_vec() {
        for measure in Measure::ALL {
            let data = samples.take(kind, measure).expect("kind was requested");
            let dist = EmpiricalDistribution::from_samples(data)?;
            let tail = measure_tail(measure);
            let levels = probability_levels(dist.len(), args.points)?;

            // Emit with x ascending: CCDF curves walk the levels from 1 down,
            // CDF curves from the tail up.
            let mut rows = Vec::with_capacity(levels.len());
            match tail {
                Tail::Upper => {
                    for &p in &levels {
                        rows.push((to_decibel(dist.tail_quantile(p, tail)?), p));
                    }
                }
                Tail::Lower => {
                    for &p in levels.iter().rev() {
                        rows.push((to_decibel(dist.tail_quantile(p, tail)?), p));
                    }
                }
            }

            let stem = format!(
                "p_{}_{}_m{}_n{}",
                measure.label(),
                kind.label(),
                args.antennas,
                args.taps
            );
            let path = args.out_dir.join(format!("{stem}.csv"));
            write_curve(&path, &rows)?;
            println!("wrote {}", path.display());

            if let Some(law) = reference_law(kind, measure, dims) {
                let reference: Vec<(f64, f64)> = rows
                    .iter()
                    .map(|&(x_db, _)| {
                        let x = libm::pow(10.0, x_db / 10.0);
                        let p = match tail {
                            Tail::Upper => gamma_ccdf(&law, x),
                            Tail::Lower => gamma_cdf(&law, x),
                        };
                        (x_db, p)
                    })
                    .collect();
                let ref_path = args.out_dir.join(format!("{stem}_ref.csv"));
                write_curve(&ref_path, &reference)?;
                println!("wrote {}", ref_path.display());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_span_one_down_to_min_mass() {
        let levels = probability_levels(1_000_000, 512).unwrap();
        assert_eq!(levels.len(), 512);
        assert_eq!(levels[0], 1.0);
        let last = *levels.last().unwrap();
        assert!((last - 1e-5).abs() < 1e-18, "last level {last}");
        assert!(levels.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn levels_need_ten_samples() {
        assert!(probability_levels(9, 16).is_err());
        assert!(probability_levels(11, 16).is_ok());
    }
}
