use std::fs;
use std::path::{Path, PathBuf};

use ckks::encoding::{EmbeddingContext, MessageVector, Rounding};
use ckks::lattice::{self, Basis};
use ckks::noise;
use ckks::params::CkksParams;
use ckks::ring::RingElement;
use ckks::sampling::{RngState, ScriptedSampler};
use ckks::scheme;
use ckks::text::Artifact;
use ckks::toy_lwe::{self, LweParams};
use num_bigint::BigInt;

use crate::args::{rotation_key_file, Cli, Command, EvalOp, LatticeOp, LweOp, Mode, Preset};
use crate::error::CliError;
use crate::pipeline;

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

struct Context {
    seed: u64,
    params: Option<PathBuf>,
}

impl Context {
    fn params(&self) -> CliResult<CkksParams> {
        let path = self
            .params
            .as_ref()
            .ok_or_else(|| CliError::Usage("this command needs --params <file>".into()))?;
        Ok(CkksParams::from_text(&read(path)?)?)
    }

    fn sampler(&self, script: Option<&PathBuf>) -> CliResult<ScriptedSampler> {
        let fallback = RngState::from_seed(self.seed);
        Ok(match script {
            Some(path) => ScriptedSampler::parse(&read(path)?, fallback)?,
            None => ScriptedSampler::new(Vec::new(), fallback),
        })
    }
}

fn read_artifact(path: &Path) -> CliResult<Artifact> {
    Ok(Artifact::from_text(&read(path)?)?)
}

fn read_ciphertext(path: &Path) -> CliResult<scheme::Ciphertext> {
    Ok(read_artifact(path)?.into_ciphertext()?)
}

fn write_ciphertext(path: &Path, params: &CkksParams, c: scheme::Ciphertext) -> CliResult {
    write(path, &Artifact::Ciphertext(c).to_text(params))
}

fn read_poly(path: &Path) -> CliResult<RingElement> {
    Ok(RingElement::from_text(&read(path)?)?)
}

fn parse_bigint(s: &str) -> CliResult<BigInt> {
    s.parse()
        .map_err(|_| CliError::Core(ckks::Error::Parse(format!("invalid integer {s:?}"))))
}

pub fn run(cli: Cli) -> CliResult {
    let ctx = Context {
        seed: cli.seed.unwrap_or(0),
        params: cli.params,
    };
    match cli.command {
        Command::Params { preset, out } => params_cmd(&ctx, preset, out),
        Command::Keygen {
            out_dir,
            rotations,
            samplers,
        } => keygen(&ctx, &out_dir, &rotations, samplers.as_ref()),
        Command::Encode { input, out, mode } => {
            let params = ctx.params()?;
            let ectx = EmbeddingContext::new(params.m)?;
            let z = MessageVector::from_text(&read(&input)?)?;
            let mut rng = RngState::from_seed(ctx.seed);
            let rounding = match mode {
                Mode::Nearest => Rounding::Nearest,
                Mode::Random => Rounding::Random(&mut rng),
            };
            let m = ectx.encode(&z, &params.delta, rounding)?;
            write(&out, &m.to_string())
        }
        Command::Decode { input, out, scale } => {
            let params = ctx.params()?;
            let ectx = EmbeddingContext::new(params.m)?;
            let scale = match scale {
                Some(s) => parse_bigint(&s)?,
                None => params.delta.clone(),
            };
            let z = ectx.decode(&read_poly(&input)?, &scale)?;
            write(&out, &z.to_string())
        }
        Command::Encrypt {
            pk,
            input,
            out,
            samplers,
        } => {
            let params = ctx.params()?;
            let pk = read_artifact(&pk)?.into_public_key()?;
            let m = read_poly(&input)?;
            let mut sampler = ctx.sampler(samplers.as_ref())?;
            let c = scheme::encrypt(&params, &pk, &m, &mut sampler)?;
            write_ciphertext(&out, &params, c)
        }
        Command::Decrypt { sk, input, out } => {
            let sk = read_artifact(&sk)?.into_secret_key()?;
            let m = scheme::decrypt(&sk, &read_ciphertext(&input)?)?;
            write(&out, &m.to_string())
        }
        Command::Eval { op } => eval(&ctx, op),
        Command::Noise { sk, ct, expect } => {
            let params = ctx.params()?;
            let ectx = EmbeddingContext::new(params.m)?;
            let sk = read_artifact(&sk)?.into_secret_key()?;
            let c = read_ciphertext(&ct)?;
            let measured = noise::measured_noise(&ectx, &sk, &c, &read_poly(&expect)?)?;
            let bound = noise::b_clean(&params);
            println!("measured={measured}");
            println!("b_clean={bound}");
            println!("within_bound={}", measured < bound);
            println!("decode_safe={}", noise::decode_safe(&params));
            Ok(())
        }
        Command::Lwe { op } => lwe(&ctx, op),
        Command::Lattice { op } => lattice_cmd(op),
        Command::Pipeline { manifest } => pipeline::run_manifest(&manifest, cli.seed, ctx.params),
    }
}

fn params_cmd(ctx: &Context, preset: Option<Preset>, out: Option<PathBuf>) -> CliResult {
    let params = match preset {
        Some(Preset::Toy) => CkksParams::toy(),
        Some(Preset::Demo) => CkksParams::demo(),
        None => ctx.params()?,
    };
    if preset.is_some() {
        return match out {
            Some(path) => write(&path, &params.to_string()),
            None => {
                print!("{params}");
                Ok(())
            }
        };
    }
    let chain: Vec<String> = params
        .modulus_chain()
        .iter()
        .map(|q| q.to_string())
        .collect();
    println!("N={} slots={}", params.n, params.slots());
    println!("chain=[{}]", chain.join(", "));
    println!("key_modulus={}", params.key_modulus());
    println!("b_clean={}", noise::b_clean(&params));
    println!("decode_safe={}", noise::decode_safe(&params));
    Ok(())
}

fn keygen(
    ctx: &Context,
    out_dir: &Path,
    rotations: &[i64],
    samplers: Option<&PathBuf>,
) -> CliResult {
    let params = ctx.params()?;
    let mut sampler = ctx.sampler(samplers)?;
    let (sk, pk, evk) = scheme::keygen(&params, &mut sampler)?;
    let mut files = vec![];
    for &k in rotations {
        let rk = scheme::rotation_keygen(&params, &sk, k, &mut sampler)?;
        files.push((rotation_key_file(k), Artifact::RotationKey(rk)));
    }
    files.insert(0, ("evk.txt".into(), Artifact::EvaluationKey(evk)));
    files.insert(0, ("pk.txt".into(), Artifact::PublicKey(pk)));
    files.insert(0, ("sk.txt".into(), Artifact::SecretKey(sk)));
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    for (name, artifact) in files {
        write(&out_dir.join(name), &artifact.to_text(&params))?;
    }
    Ok(())
}

fn eval(ctx: &Context, op: EvalOp) -> CliResult {
    let params = ctx.params()?;
    match op {
        EvalOp::Add { a, b, out } => {
            let c = scheme::add(&read_ciphertext(&a)?, &read_ciphertext(&b)?)?;
            write_ciphertext(&out, &params, c)
        }
        EvalOp::Mul { a, b, evk, out } => {
            let evk = read_artifact(&evk)?.into_evaluation_key()?;
            let c = scheme::multiply(&params, &read_ciphertext(&a)?, &read_ciphertext(&b)?, &evk)?;
            write_ciphertext(&out, &params, c)
        }
        EvalOp::Rescale { input, to, out } => {
            let c = read_ciphertext(&input)?;
            let target = match to {
                Some(t) => t,
                None => c
                    .level
                    .checked_sub(1)
                    .ok_or_else(|| CliError::Usage("ciphertext is already at level 0".into()))?,
            };
            let c = scheme::rescale(&params, &c, target)?;
            write_ciphertext(&out, &params, c)
        }
        EvalOp::Rotate {
            input,
            k,
            rotk,
            out,
        } => {
            let rotk = read_artifact(&rotk)?.into_rotation_key()?;
            let c = scheme::rotate(&params, &read_ciphertext(&input)?, k, &rotk)?;
            write_ciphertext(&out, &params, c)
        }
    }
}

fn lwe(ctx: &Context, op: LweOp) -> CliResult {
    let LweOp::Demo { n, m, q, trials } = op;
    let params = LweParams::new(n, m, q)?;
    let mut rng = RngState::from_seed(ctx.seed);
    let mut failures = 0;
    for t in 0..trials {
        let keys = toy_lwe::lwe_gen(&params, &mut rng)?;
        let bit = (t % 2) as u8;
        let ct = toy_lwe::lwe_enc(&params, &keys.public, bit, &mut rng)?;
        if toy_lwe::lwe_dec(&params, &keys.s, &ct)? != bit {
            failures += 1;
        }
    }
    println!("n={n} m={m} q={q} error_bound={}", params.chi_bound());
    println!("trials={trials} failures={failures}");
    if failures > 0 {
        return Err(CliError::LweFailures { failures, trials });
    }
    Ok(())
}

fn integer_rows(rows: &[Vec<lattice::Q>]) -> CliResult<Vec<Vec<BigInt>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(CliError::Core(ckks::Error::Parse(format!(
                            "generator entry {x} is not an integer"
                        ))))
                    }
                })
                .collect()
        })
        .collect()
}

fn lattice_cmd(op: LatticeOp) -> CliResult {
    match op {
        LatticeOp::Svp { input, radius } => {
            let b = Basis::from_text(&read(&input)?)?;
            let v = lattice::brute_force_svp(&b, radius)?;
            println!("vector={}", lattice::format_vector(&v));
            println!("norm_sq={}", lattice::norm_sq(&v));
            println!("norm={}", lattice::norm(&v));
        }
        LatticeOp::Cvp { input, target } => {
            let b = Basis::from_text(&read(&input)?)?;
            let t = lattice::parse_vector(&target.replace(',', " "))?;
            let v = lattice::brute_force_cvp(&b, &t)?;
            let diff: Vec<lattice::Q> = v.iter().zip(&t).map(|(a, c)| a - c).collect();
            println!("vector={}", lattice::format_vector(&v));
            println!("distance_sq={}", lattice::norm_sq(&diff));
        }
        LatticeOp::Bound { input } => {
            let b = Basis::from_text(&read(&input)?)?;
            print!("{}", lattice::format_matrix(&lattice::gram_schmidt(&b)));
            println!(
                "lambda1_lower_bound_sq={}",
                lattice::lambda1_lower_bound_sq(&b)
            );
            println!("lambda1_lower_bound={}", lattice::lambda1_lower_bound(&b));
        }
        LatticeOp::Basis { input } => {
            let rows = lattice::parse_matrix(&read(&input)?)?;
            let b = lattice::basis_from_generators(&integer_rows(&rows)?)?;
            print!("{b}");
        }
    }
    Ok(())
}
