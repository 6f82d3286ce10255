use std::path::PathBuf;

use bec_core::RmParams;
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "bec",
    version,
    about = "Erasure-channel thresholds of binary linear codes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Group,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every Monte Carlo estimate.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Monte Carlo trials (per point, or per bisection probe).
    #[arg(long, global = true, default_value_t = 10_000)]
    pub trials: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest N for exhaustive enumeration of all 2^N erasure patterns.
    #[arg(long, global = true, default_value_t = 24)]
    pub budget_exhaustive: usize,
    /// Largest number of subspaces the brute-force d_r oracle may visit.
    #[arg(long, global = true, default_value = "100000000")]
    pub budget_subspaces: String,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Build, inspect and validate generator matrices.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Exact computations by exhaustive enumeration.
    #[command(subcommand)]
    Exact(ExactCmd),
    /// Monte Carlo estimates.
    #[command(subcommand)]
    Mc(McCmd),
    /// Support weights d_r and derived quantities.
    #[command(subcommand)]
    Weights(WeightsCmd),
    /// Checks of the threshold theorems and Reed-Muller lemmas.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

/// A code given as a generator file or as Reed-Muller parameters.
#[derive(Debug, Clone, Args)]
pub struct CodeSource {
    /// Generator matrix file.
    #[arg(long, conflicts_with = "rm", required_unless_present = "rm")]
    pub code: Option<PathBuf>,
    /// Reed-Muller parameters `n,d`.
    #[arg(long, value_parser = parse_rm)]
    pub rm: Option<RmParams>,
}

fn parse_rm(s: &str) -> Result<RmParams, String> {
    let (n, d) = s.split_once(',').ok_or("expected n,d")?;
    let n = n.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    let d = d.trim().parse().map_err(|_| format!("bad d in {s:?}"))?;
    RmParams::new(n, d).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum CodeCmd {
    /// Generator matrix of RM(n, d).
    Rm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Length, dimension and minimum distance.
    Info {
        path: Option<PathBuf>,
        #[command(flatten)]
        source: OptionalSource,
    },
    /// Parse a generator file and report any error with its line number.
    LoadCheck { path: PathBuf },
}

#[derive(Debug, Clone, Args)]
pub struct OptionalSource {
    #[arg(long)]
    pub code: Option<PathBuf>,
    #[arg(long, value_parser = parse_rm)]
    pub rm: Option<RmParams>,
}

#[derive(Debug, Subcommand)]
pub enum ExactCmd {
    /// Weight table A[r][w] as JSON.
    Table {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        rmax: usize,
    },
    /// Exact f_r(p) for r = 1..=rmax on a p grid, as CSV.
    Curve {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        rmax: usize,
        /// `start:stop:step` (inclusive), a comma list, or one value.
        #[arg(long)]
        p: String,
    },
    /// Pr[h_{g_r} != 0] = f_r - f_{r+1} on a grid.
    VerifyTz {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "0.1:0.9:0.1")]
        p: String,
    },
    /// Area between f_r and f_{r+1} is at most 1/d_r.
    VerifyArea {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        r: usize,
    },
    /// p f_r'(p) = E[h_{g_r}] on a grid.
    VerifyRusso {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "0.1:0.9:0.1")]
        p: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum McCmd {
    /// Estimates of f_r(p) on a p grid, as CSV.
    Curve {
        #[command(flatten)]
        source: CodeSource,
        /// Comma-separated curve indices.
        #[arg(long, default_value = "1")]
        r: String,
        #[arg(long)]
        p: String,
    },
    /// Bit-error estimates Pr[i in supp S_C(x)] on a p grid, as CSV (the r column holds i).
    Bit {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long)]
        p: String,
    },
    /// Block-error estimates (f_1) on a p grid, as CSV.
    Block {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        p: String,
    },
    /// Noise level at which the bit error of coordinate i is 1/2.
    Pstar {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, default_value_t = 0.005)]
        tolerance: f64,
    },
    /// θ_r(α), the noise level at which f_r = α.
    Theta {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.005)]
        tolerance: f64,
    },
    /// θ_r(hi) - θ_r(lo).
    Width {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0.1)]
        lo: f64,
        #[arg(long, default_value_t = 0.9)]
        hi: f64,
        #[arg(long, default_value_t = 0.005)]
        tolerance: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum WeightsCmd {
    /// Minimum distance by codeword enumeration.
    Dmin {
        #[command(flatten)]
        source: CodeSource,
    },
    /// d_r by exhaustive search over r-dimensional subcodes.
    DrBrute {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        r: usize,
    },
    /// Wei points (dim S_t, |supp S_t|) of RM(n, d).
    Wei {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Lower bound on d_r(RM(n, d)) from the Wei chain.
    DrBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: String,
    },
    /// γ = sqrt(Σ_{r<N0} 1/d_r).
    Gamma {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        n0: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// θ_1(α + γ) >= θ_N0(α) - γ.
    Straightshot {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        n0: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.005)]
        tolerance: f64,
    },
    /// Block error below the bit threshold from the bit error at p.
    Bittoblock {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        p: f64,
        /// Coordinates over which the bit error is maximized.
        #[arg(long, default_value_t = 64)]
        coordinates: usize,
    },
    /// Bit-error decay below p* for Reed-Muller codes.
    Bitcapacity {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Comma list of levels: absolute values or `pstar-x`.
        #[arg(long, default_value = "pstar-0.02,pstar-0.05,pstar-0.1")]
        p: String,
        /// Trials per probe when estimating p*.
        #[arg(long, default_value_t = 10_000)]
        pstar_trials: u64,
        #[arg(long, default_value_t = 0.005)]
        tolerance: f64,
        #[arg(long, default_value_t = 8)]
        spread_coordinates: usize,
    },
    /// Support and dimension bounds on the Wei subcodes S_t.
    Rmbounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Comma list of t; default samples the admissible range.
        #[arg(long)]
        t: Option<String>,
    },
    /// d_r / r >= 2^{ε² n / 10} for Reed-Muller codes.
    Ratiorm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// A number, a fraction, or `c*sqrt(log(n)/n)`.
        #[arg(long)]
        eps: String,
        /// Comma list of r; default powers of two and Wei dimensions.
        #[arg(long)]
        r: Option<String>,
        /// Evaluate the inequality even when the hypotheses fail.
        #[arg(long)]
        outside_hypotheses: bool,
    },
    /// Which hypotheses of the capacity theorem hold at (n, d, ε).
    RmcapacityPre {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        eps: String,
    },
    /// Same as `exact verify-area`.
    #[command(hide = true)]
    Area {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        r: usize,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rm_pairs() {
        assert_eq!(parse_rm("10, 5").unwrap(), RmParams::new(10, 5).unwrap());
        assert!(parse_rm("3,4").is_err());
        assert!(parse_rm("3").is_err());
    }

    #[test]
    fn grammar_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
