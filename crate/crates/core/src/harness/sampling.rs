use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symcore::{Expr, Rational};
use crate::verify::SamplePoint;

use super::manifest::Parsed;
use super::HarnessError;

/// Draws per coordinate before giving up on the domain constraints.
const MAX_ATTEMPTS: usize = 10_000;
/// Denominators of sampled coordinates range over `1..=MAX_DENOMINATOR`.
const MAX_DENOMINATOR: i64 = 6;

/// Deterministic rational sample points satisfying every domain constraint
/// strictly and at which the structure evaluates without a singularity.
pub fn sample_points(parsed: &Parsed, count: usize, seed: u64) -> Result<Vec<SamplePoint>, HarnessError> {
    if count == 0 {
        return Err(HarnessError::Parameter("point count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > MAX_ATTEMPTS * count {
            return Err(HarnessError::Sampling(format!(
                "no admissible point after {} draws ({} of {count} found)",
                attempts - 1,
                out.len()
            )));
        }
        let base: Vec<Rational> = parsed.base_ranges.iter().map(|r| draw(&mut rng, r)).collect();
        let fiber: Vec<Rational> = parsed.fiber_ranges.iter().map(|r| draw(&mut rng, r)).collect();
        let pt = SamplePoint::new(base, fiber);
        if admissible(parsed, &pt) && !out.contains(&pt) {
            out.push(pt);
        }
    }
    Ok(out)
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): &(Rational, Rational)) -> Rational {
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    let d = Rational::from_integer(den.into());
    let lo_n = (lo * &d).ceil().to_integer();
    let hi_n = (hi * &d).floor().to_integer();
    match (lo_n.to_i64(), hi_n.to_i64()) {
        (Some(a), Some(b)) if a <= b => Rational::new(rng.gen_range(a..=b).into(), den.into()),
        // the interval holds no fraction with this denominator
        _ => lo.clone(),
    }
}

fn admissible(parsed: &Parsed, pt: &SamplePoint) -> bool {
    let Ok(ev) = pt.exact(1, 1) else { return false };
    let positive = |e: &Expr| matches!(ev.eval(e), Ok(v) if v.is_rational() && v.a().is_positive());
    if !parsed.domain.iter().all(positive) {
        return false;
    }
    let s = &parsed.structure;
    let finite = [s.metric(), s.phi(), s.eta(), s.xi()]
        .iter()
        .flat_map(|t| t.components())
        .all(|e| ev.eval(e).is_ok());
    let nonzero = |e: &Expr| matches!(ev.eval(e), Ok(v) if !v.is_zero());
    finite && nonzero(&s.base().metric_determinant()) && s.xi().components().iter().any(nonzero)
}
