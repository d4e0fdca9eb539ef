//! Globally adaptive Gauss–Kronrod (10/21 point) quadrature.

use super::{check_finite, NumError, QuadResult, QuadSpec};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_745_710_745,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const EVALS_PER_RULE: u64 = 21;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn qk21<F, E>(f: &mut F, a: f64, b: f64) -> Result<Segment, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumError>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64, E> { Ok(check_finite(x, f(x)?)?) };
    let fc = eval(center)?;
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let absc = half * XGK[j];
        let f1 = eval(center - absc)?;
        let f2 = eval(center + absc)?;
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let hl = half.abs();
    let value = resk * half;
    resabs *= hl;
    resasc *= hl;
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Segment {
        a,
        b,
        value,
        err,
        resabs,
    })
}

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

fn totals(heap: &BinaryHeap<Segment>, done: &[Segment]) -> (f64, f64, f64) {
    let all = || heap.iter().chain(done.iter());
    (
        neumaier(all().map(|s| s.value)),
        all().map(|s| s.err).sum(),
        all().map(|s| s.resabs).sum(),
    )
}

fn adapt<F, E>(f: &mut F, points: &[f64], spec: &QuadSpec) -> Result<QuadResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumError>,
{
    spec.validate()?;
    if points.len() < 2 || points.iter().any(|p| !p.is_finite()) {
        return Err(NumError::InvalidArgument(format!("bad integration points {points:?}")).into());
    }
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Segment> = Vec::new();
    let mut evals = 0u64;
    for w in points.windows(2) {
        if w[1] < w[0] {
            return Err(NumError::InvalidArgument(format!(
                "integration points not sorted: {points:?}"
            ))
            .into());
        }
        if w[1] > w[0] {
            heap.push(qk21(f, w[0], w[1])?);
            evals += EVALS_PER_RULE;
        }
    }
    if heap.is_empty() {
        return Ok(QuadResult::exact(0.0));
    }
    let (mut total, mut err, mut absum) = totals(&heap, &done);
    loop {
        let floor = 200.0 * f64::EPSILON * absum;
        if err <= spec.tolerance(total).max(floor) {
            let (t, e, a) = totals(&heap, &done);
            total = t;
            err = e;
            absum = a;
            let floor = 200.0 * f64::EPSILON * absum;
            if err <= spec.tolerance(total).max(floor) {
                return Ok(QuadResult {
                    value: total,
                    err_estimate: err,
                    evals,
                    converged: true,
                });
            }
        }
        if evals + 2 * EVALS_PER_RULE > spec.max_evals {
            break;
        }
        let Some(seg) = heap.pop() else { break };
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) || (seg.b - seg.a) < 1e-14 * seg.a.abs().max(seg.b.abs()) {
            done.push(seg);
            continue;
        }
        let left = qk21(f, seg.a, mid)?;
        let right = qk21(f, mid, seg.b)?;
        evals += 2 * EVALS_PER_RULE;
        total += left.value + right.value - seg.value;
        err += left.err + right.err - seg.err;
        absum += left.resabs + right.resabs - seg.resabs;
        heap.push(left);
        heap.push(right);
    }
    let (total, err, absum) = totals(&heap, &done);
    let floor = 200.0 * f64::EPSILON * absum;
    Ok(QuadResult {
        value: total,
        err_estimate: err,
        evals,
        converged: err <= spec.tolerance(total).max(floor),
    })
}

/// Adaptive integral over the sorted breakpoints `points` (first and last are
/// the limits).
pub fn try_integrate<F, E>(mut f: F, points: &[f64], spec: &QuadSpec) -> Result<QuadResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumError>,
{
    adapt(&mut f, points, spec)
}

/// Adaptive integral of `f` over the finite range [a, b].
pub fn integrate<F>(mut f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult, NumError>
where
    F: FnMut(f64) -> f64,
{
    if b < a {
        let r = integrate(f, b, a, spec)?;
        return Ok(QuadResult {
            value: -r.value,
            ..r
        });
    }
    adapt(&mut |x| Ok::<f64, NumError>(f(x)), &[a, b], spec)
}

/// Range [lower, ∞) mapped onto [0, 1) by x = lower + scale·t/(1 − t).
/// `breaks` are x-values where the integrand has structure.
#[derive(Debug, Clone, Copy)]
pub struct SemiInf<'a> {
    pub lower: f64,
    pub scale: f64,
    pub breaks: &'a [f64],
}

impl Default for SemiInf<'_> {
    fn default() -> Self {
        SemiInf {
            lower: 0.0,
            scale: 1.0,
            breaks: &[],
        }
    }
}

pub fn try_integrate_semi_inf_opts<F, E>(
    mut f: F,
    range: &SemiInf<'_>,
    spec: &QuadSpec,
) -> Result<QuadResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<NumError>,
{
    let SemiInf {
        lower,
        scale,
        breaks,
    } = *range;
    if !lower.is_finite() || !(scale > 0.0) || !scale.is_finite() {
        return Err(NumError::InvalidArgument(format!(
            "semi-infinite range needs finite lower limit and positive scale (lower {lower}, scale {scale})"
        ))
        .into());
    }
    let mut pts = vec![0.0];
    let mut inner: Vec<f64> = breaks
        .iter()
        .filter(|&&b| b > lower && b.is_finite())
        .map(|&b| (b - lower) / (scale + b - lower))
        .filter(|&t| t > 0.0 && t < 1.0)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    pts.extend(inner);
    pts.push(1.0);
    let mut g = |t: f64| -> Result<f64, E> {
        let om = 1.0 - t;
        let x = lower + scale * t / om;
        let v = f(x)?;
        if v == 0.0 {
            return Ok(0.0);
        }
        Ok(v * scale / (om * om))
    };
    adapt(&mut g, &pts, spec)
}

pub fn integrate_semi_inf_opts<F>(
    mut f: F,
    range: &SemiInf<'_>,
    spec: &QuadSpec,
) -> Result<QuadResult, NumError>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_semi_inf_opts(|x| Ok::<f64, NumError>(f(x)), range, spec)
}

/// ∫₀^∞ f(x) dx.
pub fn integrate_semi_inf<F>(f: F, spec: &QuadSpec) -> Result<QuadResult, NumError>
where
    F: FnMut(f64) -> f64,
{
    integrate_semi_inf_opts(f, &SemiInf::default(), spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta;
    use std::f64::consts::PI;

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    #[test]
    fn semi_inf_gamma3() {
        let r = integrate_semi_inf(|x| x * x * (-x).exp(), &spec()).unwrap();
        assert!(r.converged);
        assert!((r.value - 2.0).abs() <= 3.0 * r.err_estimate.max(1e-15));
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn semi_inf_bose_integral() {
        let exact = 2.0 * zeta(3.0).unwrap();
        let r = integrate_semi_inf(|x| x * x / x.exp_m1(), &spec()).unwrap();
        assert!(r.converged);
        assert!((r.value - exact).abs() < 1e-11, "{}", r.value - exact);
    }

    #[test]
    fn semi_inf_gaussian() {
        let r = integrate_semi_inf(|x| (-x * x).exp(), &spec()).unwrap();
        assert!((r.value - PI.sqrt() / 2.0).abs() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, &spec().with_abs(0.0)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn breakpoints_and_lower_limit() {
        let range = SemiInf {
            lower: 1.0,
            scale: 0.5,
            breaks: &[2.0, 3.0, 0.5],
        };
        let r = integrate_semi_inf_opts(|x| (-2.0 * x).exp(), &range, &spec()).unwrap();
        assert!((r.value - 0.5 * (-2.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn nan_is_an_error() {
        let e = integrate(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &spec()).unwrap_err();
        assert!(matches!(e, NumError::NonFinite { .. }));
    }

    #[test]
    fn budget_exhaustion_flags_nonconvergence() {
        let s = QuadSpec::new(1e-15, 0.0, 100).unwrap();
        let r = integrate(|x| (1.0 / (x + 1e-6)).sin(), 0.0, 1.0, &s).unwrap();
        assert!(!r.converged);
        assert!(r.evals <= 100);
    }

    #[test]
    fn invalid_spec_rejected() {
        assert!(QuadSpec::new(0.0, 0.0, 1000).is_err());
        assert!(QuadSpec::new(1e-9, 0.0, 10).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, &QuadSpec { rel_tol: -1.0, abs_tol: 0.0, max_evals: 1000 }).is_err());
    }

    #[test]
    fn reversed_limits_change_sign() {
        let r = integrate(|x| x, 1.0, 0.0, &spec()).unwrap();
        assert!((r.value + 0.5).abs() < 1e-15);
    }

    #[test]
    fn fallible_integrand_propagates() {
        #[derive(Debug)]
        enum MyErr {
            Num(NumError),
            Mine,
        }
        impl From<NumError> for MyErr {
            fn from(e: NumError) -> Self {
                MyErr::Num(e)
            }
        }
        let r: Result<QuadResult, MyErr> =
            try_integrate(|x| if x > 0.9 { Err(MyErr::Mine) } else { Ok(x) }, &[0.0, 1.0], &spec());
        assert!(matches!(r, Err(MyErr::Mine)));
        let r: Result<QuadResult, MyErr> = try_integrate(|_| Ok(f64::INFINITY), &[0.0, 1.0], &spec());
        assert!(matches!(r, Err(MyErr::Num(NumError::NonFinite { .. }))));
    }
}
