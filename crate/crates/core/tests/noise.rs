use ckks::encoding::{EmbeddingContext, Rounding};
use ckks::noise::{b_clean, decode_safe, measured_noise, NoiseBudget};
use ckks::params::CkksParams;
use ckks::ring::RingElement;
use ckks::sampling::{RngState, ScriptedSampler};
use ckks::scheme::{add, encrypt, keygen};
use num_bigint::BigInt;
use num_traits::One;

const WORKED_EXAMPLE: &str = "\
hwt 0 1 -1 0
uniform -221 67 -15 103
dg 1 1 0 0
uniform *
dg *
zo 1 0 0 1
dg -1 0 0 1
dg -1 0 1 0
";

#[test]
fn worked_example_noise() {
    let params = CkksParams::toy();
    let ctx = EmbeddingContext::new(params.m).unwrap();
    let mut sampler = ScriptedSampler::parse(WORKED_EXAMPLE, RngState::from_seed(0)).unwrap();
    let (sk, pk, _) = keygen(&params, &mut sampler).unwrap();
    let m = RingElement::from_i64(&[160, 90, 160, 45]);
    let c = encrypt(&params, &pk, &m, &mut sampler).unwrap();
    // decrypt - m = x² + 3x³; its largest embedding value is |1 + 3ζ| at ζ = e^{iπ/4}
    let noise = measured_noise(&ctx, &sk, &c, &m).unwrap();
    let want = (10.0 + 6.0 * std::f64::consts::FRAC_1_SQRT_2).sqrt();
    assert!((noise - want).abs() < 1e-9, "{noise}");
    let budget = NoiseBudget::measure(&params, &ctx, &sk, &c, &m).unwrap();
    assert_eq!(budget.within_bound(), Some(true));
    assert!(!decode_safe(&params));
}

#[test]
fn fresh_noise_stays_below_bound() {
    let params = CkksParams::with_default_aux(
        512,
        BigInt::one() << 30,
        BigInt::one() << 30,
        BigInt::one() << 40,
        1,
        3.2,
        64,
    )
    .unwrap();
    let ctx = EmbeddingContext::new(params.m).unwrap();
    let mut rng = RngState::from_seed(3);
    let (sk, pk, _) = keygen(&params, &mut rng).unwrap();
    let bound = b_clean(&params);
    let z = ckks::MessageVector::zeros(params.slots());
    let m = ctx.encode(&z, &params.delta, Rounding::Nearest).unwrap();
    let mut total = 0.0;
    for _ in 0..20 {
        let c = encrypt(&params, &pk, &m, &mut rng).unwrap();
        let noise = measured_noise(&ctx, &sk, &c, &m).unwrap();
        assert!(noise < bound, "{noise} >= {bound}");
        total += noise;
        // noise of a sum is below the sum of the noises
        let c2 = encrypt(&params, &pk, &m, &mut rng).unwrap();
        let n2 = measured_noise(&ctx, &sk, &c2, &m).unwrap();
        let twice = m.add(&m).unwrap();
        let sum = measured_noise(&ctx, &sk, &add(&c, &c2).unwrap(), &twice).unwrap();
        assert!(sum <= ckks::noise::add_bound(noise, n2) + 1e-6);
    }
    assert!(total / 20.0 < bound / 2.0);
}
