use crate::{explain, output, DecoderArgs, Env};
use anyhow::{bail, Context, Result};
use fundpoly::channels::{llr, llrs, rng_from_seed, ChannelModel, Llr};
use fundpoly::decoders::DecodeResult;
use fundpoly::regions::{DecoderSpec, PreparedDecoder};
use serde::Serialize;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Comma-separated channel LLRs ("inf" and "-inf" allowed).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "channel")]
    lambda: Option<String>,
    /// awgnc:ebn0_db=X, awgnc:ebn0=X, bsc:eps=X or bec:eps=X. The all-zero codeword is sent.
    #[arg(long)]
    channel: Option<String>,
    /// Number of channel uses; more than one gives a batch summary.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[command(flatten)]
    decoder: DecoderArgs,
    #[arg(long, default_value = "decode.json")]
    name: String,
}

fn parse_lambda(s: &str) -> Result<Vec<Llr>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>().with_context(|| format!("bad LLR {t:?}"))
        })
        .collect::<Result<_>>()?;
    if v.iter().any(|x| x.is_nan()) {
        bail!("LLRs may not be NaN");
    }
    Ok(llrs(&v))
}

#[derive(Serialize)]
struct Single<'a> {
    decoder: DecoderSpec,
    lambda: Vec<f64>,
    #[serde(flatten)]
    result: &'a DecodeResult,
}

/// Outcome counts of a batch. The all-zero word is sent, so any other
/// decision is an error; errors split by what was decided.
#[derive(Serialize, Default)]
struct Batch {
    decoder: Option<DecoderSpec>,
    channel: Option<ChannelModel>,
    seed: u64,
    trials: usize,
    correct: usize,
    word_errors: usize,
    /// Decided a different codeword (errors an ML decoder can also make).
    codeword_errors: usize,
    /// Decided a fractional point or a non-codeword (pseudo-codeword decisions).
    pseudocodeword_decisions: usize,
    non_converged: usize,
    ties: usize,
    word_error_rate: f64,
}

fn classify(h: &fundpoly::code_model::ParityCheckMatrix, r: &DecodeResult, b: &mut Batch) {
    b.ties += r.tie as usize;
    b.non_converged += !r.converged as usize;
    match r.decision.as_binary() {
        Some(bits) if bits.iter().all(|&x| x == 0) && r.converged && !r.tie => b.correct += 1,
        Some(bits) if h.is_codeword(bits) && bits.iter().any(|&x| x == 1) => {
            b.word_errors += 1;
            b.codeword_errors += 1;
        }
        Some(bits) if bits.iter().all(|&x| x == 0) => b.word_errors += 1,
        _ => {
            b.word_errors += 1;
            b.pseudocodeword_decisions += 1;
        }
    }
}

pub fn run(env: &Env, args: Args) -> Result<()> {
    let h = &env.h;
    let spec = args.decoder.spec();
    let dec = PreparedDecoder::new(h, spec, &env.limits).map_err(explain)?;
    if let Some(text) = &args.lambda {
        let lambda = parse_lambda(text)?;
        if lambda.len() != h.n() {
            bail!("--lambda has {} entries but n = {}", lambda.len(), h.n());
        }
        let result = dec.decode(&lambda)?;
        let out = Single { decoder: spec, lambda: lambda.iter().map(|l| l.to_f64()).collect(), result: &result };
        println!("{}", serde_json::to_string(&out)?);
        output::json(&env.out, &args.name, &out)?;
        return Ok(());
    }
    let Some(channel) = &args.channel else { bail!("give either --lambda or --channel") };
    let ch = ChannelModel::parse(channel, h.rate())?;
    if args.trials == 0 {
        bail!("--trials must be positive");
    }
    let zero = vec![0u8; h.n()];
    let mut rng = rng_from_seed(env.seed);
    if args.trials == 1 {
        let lambda = llr(&ch, &ch.sample_with(&zero, &mut rng))?;
        let result = dec.decode(&lambda)?;
        let out = Single { decoder: spec, lambda: lambda.iter().map(|l| l.to_f64()).collect(), result: &result };
        println!("{}", serde_json::to_string(&out)?);
        output::json(&env.out, &args.name, &out)?;
        return Ok(());
    }
    let mut batch = Batch { decoder: Some(spec), channel: Some(ch), seed: env.seed, trials: args.trials, ..Batch::default() };
    for _ in 0..args.trials {
        let lambda = llr(&ch, &ch.sample_with(&zero, &mut rng))?;
        classify(h, &dec.decode(&lambda)?, &mut batch);
    }
    batch.word_error_rate = batch.word_errors as f64 / batch.trials as f64;
    println!(
        "{} trials: {} word errors ({} codeword, {} pseudo-codeword), {} non-converged",
        batch.trials, batch.word_errors, batch.codeword_errors, batch.pseudocodeword_decisions, batch.non_converged
    );
    output::json(&env.out, &args.name, &batch)?;
    Ok(())
}
