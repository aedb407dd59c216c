//! Sufficient conditions for uniform twisted K-stability: general type,
//! twisted Calabi-Yau and alpha-invariant criteria, plus the intersection
//! inequalities every flag-ideal blow-up must satisfy.

use crate::config::BlowupModel;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::toric::{Fan, PolarizedToric, ToricDivisor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CriterionId {
    GeneralType,
    CalabiYau,
    Alpha,
    Inequalities,
}

impl CriterionId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionId::GeneralType => "general_type",
            CriterionId::CalabiYau => "calabi_yau",
            CriterionId::Alpha => "alpha",
            CriterionId::Inequalities => "inequalities",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    /// Every hypothesis holds exactly.
    Certified,
    /// The inequalities hold but rest on an input of the wrong kind.
    Conditional,
    /// Some sufficient condition fails; nothing is claimed.
    Inconclusive,
    /// A standing hypothesis of the statement is not met.
    ViolatedHypothesis,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Conditional => "conditional",
            Verdict::Inconclusive => "inconclusive",
            Verdict::ViolatedHypothesis => "violated-hypothesis",
        }
    }
}

/// One exact check inside a criterion, with its slack when it has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check<F> {
    pub name: String,
    pub passed: bool,
    pub slack: Option<F>,
    pub divisor: Option<ToricDivisor<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult<F> {
    pub id: CriterionId,
    pub verdict: Verdict,
    pub checks: Vec<Check<F>>,
    pub notes: Vec<String>,
}

impl<F: Field> CriterionResult<F> {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// How a supplied alpha value relates to the true alpha invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaKind {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaInput<F> {
    pub value: F,
    pub kind: AlphaKind,
}

fn check<F: Field>(name: &str, passed: bool, slack: Option<F>, divisor: Option<ToricDivisor<F>>) -> Check<F> {
    Check { name: name.to_string(), passed, slack, divisor }
}

fn nef_check<F: Field>(fan: &Fan<F>, name: &str, d: ToricDivisor<F>) -> Result<Check<F>> {
    let slack = fan.nef_slack(&d)?;
    Ok(check(name, !slack.is_negative(), Some(slack), Some(d)))
}

const SMOOTH_NOTE: &str = "smooth toric X is Kawamata log terminal";

fn smoothness<F: Field>(x: &PolarizedToric<F>, checks: &mut Vec<Check<F>>) -> bool {
    let smooth = x.fan().is_smooth();
    checks.push(check("X smooth (klt)", smooth, None, None));
    smooth
}

fn ample_check<F: Field>(x: &PolarizedToric<F>, checks: &mut Vec<Check<F>>) -> Result<bool> {
    let ok = x.fan().is_ample(x.polarization())?;
    checks.push(check("L ample", ok, None, None));
    Ok(ok)
}

/// `-μ L - K_X - 2T` nef, with `μ <= 0`.
pub fn check_general_type<F: Field>(x: &PolarizedToric<F>, t: &ToricDivisor<F>) -> Result<CriterionResult<F>> {
    let fan = x.fan();
    let mut checks = Vec::new();
    let hyp = smoothness(x, &mut checks) & ample_check(x, &mut checks)?;
    let mu = x.twisted_slope(t)?.mu;
    let k = fan.canonical_divisor();
    let d = &(&x.polarization().scale(&-mu.clone()) - &k) - &t.scale(&F::from_int(2));
    let c = nef_check(fan, "-mu L - K_X - 2T nef", d)?;
    // The (L + nE) term only has the right sign when mu <= 0.
    let sign = check("mu <= 0", !mu.is_positive(), Some(-mu.clone()), None);
    let verdict = if !hyp {
        Verdict::ViolatedHypothesis
    } else if c.passed && sign.passed {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    checks.push(c);
    checks.push(sign);
    Ok(CriterionResult { id: CriterionId::GeneralType, verdict, checks, notes: vec![format!("mu = {mu}"), SMOOTH_NOTE.into()] })
}

/// `K_X + 2T ≡ 0`; smooth toric `X` is klt, so the verdict is uniform stability.
pub fn check_calabi_yau<F: Field>(x: &PolarizedToric<F>, t: &ToricDivisor<F>) -> Result<CriterionResult<F>> {
    let fan = x.fan();
    let mut checks = Vec::new();
    let hyp = smoothness(x, &mut checks) & ample_check(x, &mut checks)?;
    let d = &fan.canonical_divisor() + &t.scale(&F::from_int(2));
    let trivial = fan.is_principal(&d)?;
    checks.push(check("K_X + 2T numerically trivial", trivial, None, Some(d)));
    let verdict = if !hyp {
        Verdict::ViolatedHypothesis
    } else if trivial {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    let mut notes = vec![SMOOTH_NOTE.to_string()];
    if trivial {
        notes.push("uniform twisted K-stability with respect to the minimum norm".into());
    }
    Ok(CriterionResult { id: CriterionId::CalabiYau, verdict, checks, notes })
}

/// (i) `α ≥ (n/(n+1)) μ` and (ii) `-(K_X + 2T) - (n/(n+1)) μ L` nef.
pub fn check_alpha<F: Field>(x: &PolarizedToric<F>, t: &ToricDivisor<F>, alpha: &AlphaInput<F>) -> Result<CriterionResult<F>> {
    let fan = x.fan();
    let n = F::from_int(x.dim() as i64);
    let mut checks = Vec::new();
    let mut notes = vec![SMOOTH_NOTE.to_string()];
    let mut hyp = smoothness(x, &mut checks) & ample_check(x, &mut checks)?;
    let alpha_positive = alpha.value.is_positive();
    checks.push(check("alpha > 0", alpha_positive, None, None));
    hyp &= alpha_positive;

    let mu = x.twisted_slope(t)?.mu;
    let c = n.clone() / (n + F::one()) * mu.clone();
    let first = alpha.value.clone() - c.clone();
    if !mu.is_positive() {
        notes.push("non-positive slope: condition (i) is vacuous".into());
    }
    let first_ok = !mu.is_positive() || !first.is_negative();
    checks.push(check("alpha >= n/(n+1) mu", first_ok, Some(first), None));
    let k = fan.canonical_divisor();
    let d = &(-&(&k + &t.scale(&F::from_int(2)))) - &x.polarization().scale(&c);
    let second = nef_check(fan, "-(K_X + 2T) - n/(n+1) mu L nef", d)?;
    let both = first_ok && second.passed;
    checks.push(second);

    let verdict = match (hyp, both, alpha.kind) {
        (false, _, _) => Verdict::ViolatedHypothesis,
        (true, false, _) => Verdict::Inconclusive,
        (true, true, AlphaKind::UpperBound) if mu.is_positive() => {
            notes.push("alpha is only an upper bound; certification needs a lower bound".into());
            Verdict::Conditional
        }
        (true, true, _) => Verdict::Certified,
    };
    Ok(CriterionResult { id: CriterionId::Alpha, verdict, checks, notes })
}

/// `min (a - b + 1) / c` over exceptional rays, an upper bound for `α(X, L)`.
pub fn alpha_upper_bound<F: Field>(model: &BlowupModel<F>) -> Result<F> {
    model
        .exceptional()
        .iter()
        .map(|e| (e.a.clone() - e.b.clone() + F::one()) / e.c.clone())
        .min()
        .ok_or(Error::NoExceptionalRays)
}

/// `(L - E)^n R <= 0` for each nef `R` (pulled back), `(L - E)^n E > 0` and
/// `(L - E)^n (L + n E) > 0`. A failure here indicates a bug.
pub fn check_inequalities<F: Field>(model: &BlowupModel<F>, nef: &[ToricDivisor<F>]) -> Result<CriterionResult<F>> {
    if !model.is_semi_ample() {
        return Ok(CriterionResult {
            id: CriterionId::Inequalities,
            verdict: Verdict::ViolatedHypothesis,
            checks: vec![check("L^r - E relatively semi-ample", false, None, None)],
            notes: Vec::new(),
        });
    }
    let fan = model.base().fan();
    let mut checks = Vec::new();
    for (i, r) in nef.iter().enumerate() {
        if !fan.is_nef(r)? {
            return Err(Error::Invalid(format!("divisor {i} is not nef")));
        }
        let v = model.power_dot(&model.pullback(r)?)?;
        checks.push(check(&format!("(L - E)^n R_{i} <= 0"), !v.is_positive(), Some(v), None));
    }
    let e = model.power_dot(model.e())?;
    checks.push(check("(L - E)^n E > 0", e.is_positive(), Some(e), None));
    let n = F::from_int(model.base().dim() as i64);
    let w = model.l() + &model.e().scale(&n);
    let m = model.power_dot(&w)?;
    checks.push(check("(L - E)^n (L + n E) > 0", m.is_positive(), Some(m), None));
    let verdict = if checks.iter().all(|c| c.passed) { Verdict::Certified } else { Verdict::Inconclusive };
    Ok(CriterionResult { id: CriterionId::Inequalities, verdict, checks, notes: Vec::new() })
}

/// The Aubin path `L = -K_X`, `T = -((1 - β)/2) K_X` on a Fano fan.
pub fn aubin_pair<F: Field>(fan: &Fan<F>, beta: &F) -> Result<(PolarizedToric<F>, ToricDivisor<F>)> {
    let minus_k = -&fan.canonical_divisor();
    if !fan.is_ample(&minus_k)? {
        return Err(Error::Invalid("the Aubin path needs -K_X ample".into()));
    }
    let x = PolarizedToric::new(fan.clone(), minus_k.clone())?;
    let t = minus_k.scale(&((F::one() - beta.clone()) / F::from_int(2)));
    Ok((x, t))
}

/// `check_alpha` along the Aubin path, with the path's standing requirement
/// that the twisting `T` be nef.
pub fn check_aubin<F: Field>(fan: &Fan<F>, beta: &F, alpha: &AlphaInput<F>) -> Result<CriterionResult<F>> {
    let (x, t) = aubin_pair(fan, beta)?;
    let mut res = check_alpha(&x, &t, alpha)?;
    let t_nef = fan.is_nef(&t)?;
    res.checks.push(check("T nef", t_nef, None, Some(t)));
    if !t_nef {
        res.verdict = Verdict::ViolatedHypothesis;
    }
    Ok(res)
}
