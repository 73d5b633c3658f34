use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Leveled approximate homomorphic encryption over complex vectors, plus toy
/// LWE and small-lattice tools. Every artifact is a text file.
#[derive(Parser, Debug, Clone)]
#[command(name = "ckks", version)]
pub struct Cli {
    /// Seed for every randomized step (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Parameter file with one `name=value` per line.
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// M = 8, Δ = 64, chain [5, 20, 80, 320, 1280].
    Toy,
    /// N = 1024, Δ = p = 2^30, q0 = 2^40, L = 3.
    Demo,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Round each coordinate to the nearest integer (ties to even).
    Nearest,
    /// Round up with probability equal to the fractional part.
    Random,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Write a preset parameter file, or summarize the one given by --params.
    Params {
        #[arg(long)]
        preset: Option<Preset>,
        /// Where to write the preset (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate sk.txt, pk.txt, evk.txt and rotk_<k>.txt in a directory.
    Keygen {
        #[arg(long)]
        out_dir: PathBuf,
        /// Galois exponents to make rotation keys for, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        rotations: Vec<i64>,
        /// Sampler override file: `kind v1 v2 ...` or `kind *` per call.
        #[arg(long)]
        samplers: Option<PathBuf>,
    },
    /// Complex slots (`<re> <im>` per line) to a plaintext polynomial.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Nearest)]
        mode: Mode,
    },
    /// Plaintext polynomial back to complex slots.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Scale to divide by (defaults to delta).
        #[arg(long)]
        scale: Option<String>,
    },
    /// Plaintext polynomial to a ciphertext at the top level under a public key
    Encrypt {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        samplers: Option<PathBuf>,
    },
    /// Ciphertext back to its plaintext polynomial with the secret key
    Decrypt {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Homomorphic operations on ciphertext files.
    Eval {
        #[command(subcommand)]
        op: EvalOp,
    },
    /// Measured canonical noise against the fresh-encryption bound.
    Noise {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        /// Expected plaintext polynomial.
        #[arg(long)]
        expect: PathBuf,
    },
    /// Single-bit LWE encryption.
    Lwe {
        #[command(subcommand)]
        op: LweOp,
    },
    /// Exact small-lattice computations on a matrix file (`n m`, then rows).
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Run a manifest: one subcommand invocation per line, paths relative to
    /// the manifest.
    Pipeline {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum EvalOp {
    Add {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Multiply and relinearize.
    Mul {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        evk: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Rescale {
        #[arg(long = "in")]
        input: PathBuf,
        /// Target level (one below the current level when absent).
        #[arg(long)]
        to: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    Rotate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Odd Galois exponent.
        #[arg(long)]
        k: i64,
        #[arg(long)]
        rotk: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum LweOp {
    /// Generate keys and round-trip random bits.
    Demo {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        m: usize,
        #[arg(long, default_value_t = 257)]
        q: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum LatticeOp {
    /// Shortest nonzero vector by enumeration.
    Svp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Closest lattice vector to a target.
    Cvp {
        #[arg(long = "in")]
        input: PathBuf,
        /// Target entries separated by commas or spaces, e.g. `2/5,3/5`.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Gram-Schmidt vectors and the lower bound min ‖b̃_i‖.
    Bound {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Basis of the integer span of the rows.
    Basis {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Params { .. } => "params",
            Self::Keygen { .. } => "keygen",
            Self::Encode { .. } => "encode",
            Self::Decode { .. } => "decode",
            Self::Encrypt { .. } => "encrypt",
            Self::Decrypt { .. } => "decrypt",
            Self::Eval { op } => match op {
                EvalOp::Add { .. } => "eval add",
                EvalOp::Mul { .. } => "eval mul",
                EvalOp::Rescale { .. } => "eval rescale",
                EvalOp::Rotate { .. } => "eval rotate",
            },
            Self::Noise { .. } => "noise",
            Self::Lwe { .. } => "lwe demo",
            Self::Lattice { op } => match op {
                LatticeOp::Svp { .. } => "lattice svp",
                LatticeOp::Cvp { .. } => "lattice cvp",
                LatticeOp::Bound { .. } => "lattice bound",
                LatticeOp::Basis { .. } => "lattice basis",
            },
            Self::Pipeline { .. } => "pipeline",
        }
    }

    /// Files the command reads, apart from the parameter file.
    pub fn inputs(&self) -> Vec<PathBuf> {
        let opt = |p: &Option<PathBuf>| p.iter().cloned().collect::<Vec<_>>();
        match self {
            Self::Params { .. } | Self::Lwe { .. } => vec![],
            Self::Keygen { samplers, .. } => opt(samplers),
            Self::Encode { input, .. } | Self::Decode { input, .. } => vec![input.clone()],
            Self::Encrypt {
                pk,
                input,
                samplers,
                ..
            } => [vec![pk.clone(), input.clone()], opt(samplers)].concat(),
            Self::Decrypt { sk, input, .. } => vec![sk.clone(), input.clone()],
            Self::Eval { op } => match op {
                EvalOp::Add { a, b, .. } => vec![a.clone(), b.clone()],
                EvalOp::Mul { a, b, evk, .. } => vec![a.clone(), b.clone(), evk.clone()],
                EvalOp::Rescale { input, .. } => vec![input.clone()],
                EvalOp::Rotate { input, rotk, .. } => vec![input.clone(), rotk.clone()],
            },
            Self::Noise { sk, ct, expect } => vec![sk.clone(), ct.clone(), expect.clone()],
            Self::Lattice { op } => match op {
                LatticeOp::Svp { input, .. }
                | LatticeOp::Cvp { input, .. }
                | LatticeOp::Bound { input }
                | LatticeOp::Basis { input } => vec![input.clone()],
            },
            Self::Pipeline { manifest } => vec![manifest.clone()],
        }
    }

    /// Files the command writes.
    pub fn outputs(&self) -> Vec<PathBuf> {
        match self {
            Self::Params { out, .. } => out.iter().cloned().collect(),
            Self::Keygen {
                out_dir, rotations, ..
            } => {
                let mut files: Vec<PathBuf> = ["sk.txt", "pk.txt", "evk.txt"]
                    .iter()
                    .map(|f| out_dir.join(f))
                    .collect();
                files.extend(
                    rotations
                        .iter()
                        .map(|k| out_dir.join(rotation_key_file(*k))),
                );
                files
            }
            Self::Encode { out, .. }
            | Self::Decode { out, .. }
            | Self::Encrypt { out, .. }
            | Self::Decrypt { out, .. } => vec![out.clone()],
            Self::Eval { op } => match op {
                EvalOp::Add { out, .. }
                | EvalOp::Mul { out, .. }
                | EvalOp::Rescale { out, .. }
                | EvalOp::Rotate { out, .. } => vec![out.clone()],
            },
            Self::Noise { .. }
            | Self::Lwe { .. }
            | Self::Lattice { .. }
            | Self::Pipeline { .. } => {
                vec![]
            }
        }
    }
}

pub fn rotation_key_file(k: i64) -> String {
    format!("rotk_{k}.txt")
}
