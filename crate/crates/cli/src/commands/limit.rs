use anyhow::Result;
use cwsoc::sampler::stream_rng;
use cwsoc::QuarticLaw;
use rand::Rng;

use crate::args::LimitArgs;
use crate::config::ConfigFile;
use crate::format::sig17;
use crate::usage;

/// Prints densities, then CDF values, then quantiles, then draws, one per line.
pub fn cmd_limit(args: &LimitArgs) -> Result<i32> {
    let law = QuarticLaw::new(args.sigma).map_err(usage)?;
    if args.density.is_empty() && args.cdf.is_empty() && args.quantile.is_empty() && args.sample.is_none() {
        return Err(usage("nothing to do: give --density, --cdf, --quantile or --sample"));
    }
    let quantiles = args
        .quantile
        .iter()
        .map(|&p| law.quantile(p).map_err(usage))
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::new();
    for &x in &args.density {
        out += &sig17(law.density(x));
        out.push('\n');
    }
    for &x in &args.cdf {
        out += &sig17(law.cdf(x));
        out.push('\n');
    }
    for q in quantiles {
        out += &sig17(q);
        out.push('\n');
    }
    if let Some(count) = args.sample {
        let seed = ConfigFile::default().seed(args.seed)?;
        let mut rng = stream_rng(seed, 0);
        for _ in 0..count {
            out += &sig17(rng.sample(&law));
            out.push('\n');
        }
    }
    print!("{out}");
    Ok(crate::EXIT_OK)
}
