use super::{GroupoidElement, OracleError, Partition};
use crate::cocycle::{cocycle_value, CocycleSpec};
use crate::kgraph::{Degree, EventuallyPeriodicPath, KGraph, Path};
use crate::phase::PhaseExponent;
use crate::scalar::Scalar;

/// One solution `(α, β, γ)` of `ν_g α = μ_h β`, `μ_g α = μ_{gh} γ`,
/// `ν_h β = ν_{gh} γ` read off the elements, and the resulting `σ_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution<I: Scalar> {
    pub g_member: (Path, Path),
    pub h_member: (Path, Path),
    pub gh_member: (Path, Path),
    pub alpha: Path,
    pub beta: Path,
    pub gamma: Path,
    pub value: PhaseExponent<I>,
}

fn sub(a: &Degree, b: &Degree) -> Vec<i64> {
    a.diff(b)
}

fn to_degree(v: &[i64]) -> Degree {
    Degree(
        v.iter()
            .map(|&x| u32::try_from(x).expect("resolution degree is nonnegative"))
            .collect(),
    )
}

/// Resolves `(g, h)` with `d(α) = a + extra`, where `a` is the least degree
/// making `d(β)` and `d(γ)` nonnegative.
pub(crate) fn resolve<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    ge: &GroupoidElement,
    he: &GroupoidElement,
    extra: &Degree,
) -> Result<Resolution<I>, OracleError> {
    let ghe = ge.compose(g, he)?;
    let (mu_g, nu_g) = part.member_of(g, ge)?.clone();
    let (mu_h, nu_h) = part.member_of(g, he)?.clone();
    let (mu_gh, nu_gh) = part.member_of(g, &ghe)?.clone();

    let x = sub(mu_h.degree(), nu_g.degree());
    let y = sub(mu_gh.degree(), mu_g.degree());
    let a: Vec<i64> = (0..g.k())
        .map(|i| 0.max(x[i]).max(y[i]) + extra.0[i] as i64)
        .collect();
    let a = to_degree(&a);
    let b = to_degree(&sub(&(nu_g.degree() + &a), mu_h.degree()));
    let cd = to_degree(&sub(&(mu_g.degree() + &a), mu_gh.degree()));

    let alpha = ge.range().shift(g, mu_g.degree()).initial(g, &a);
    let beta = he.range().shift(g, mu_h.degree()).initial(g, &b);
    let gamma = ghe.range().shift(g, mu_gh.degree()).initial(g, &cd);
    debug_assert_eq!(g.compose(&nu_g, &alpha).ok(), g.compose(&mu_h, &beta).ok());
    debug_assert_eq!(
        g.compose(&mu_g, &alpha).ok(),
        g.compose(&mu_gh, &gamma).ok()
    );
    debug_assert_eq!(g.compose(&nu_h, &beta).ok(), g.compose(&nu_gh, &gamma).ok());

    let cv = |m: &Path, n: &Path| cocycle_value(c, g, m, n);
    let value = cv(&mu_g, &alpha)? - cv(&nu_g, &alpha)? + cv(&mu_h, &beta)?
        - cv(&nu_h, &beta)?
        - cv(&mu_gh, &gamma)?
        + cv(&nu_gh, &gamma)?;
    Ok(Resolution {
        g_member: (mu_g, nu_g),
        h_member: (mu_h, nu_h),
        gh_member: (mu_gh, nu_gh),
        alpha,
        beta,
        gamma,
        value,
    })
}

/// `σ_c(g, h)` in exponent form.
pub fn sigma_c<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    ge: &GroupoidElement,
    he: &GroupoidElement,
) -> Result<PhaseExponent<I>, OracleError> {
    Ok(resolve(c, g, part, ge, he, &Degree::zero(g.k()))?.value)
}

/// `σ_c(g, h)` recomputed with `α` extended by `0`, `(t,…,t)` for
/// `t = 1..=extra` and each `e_i`; errors unless all agree mod Z.
pub fn sigma_c_checked<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    ge: &GroupoidElement,
    he: &GroupoidElement,
    extra: u32,
) -> Result<PhaseExponent<I>, OracleError> {
    let k = g.k();
    let mut shifts: Vec<Degree> = (0..=extra).map(|t| Degree::uniform(k, t)).collect();
    shifts.extend((0..k).map(|i| Degree::unit(k, i)));
    let first = resolve(c, g, part, ge, he, &shifts[0])?.value;
    for s in &shifts[1..] {
        let other = resolve(c, g, part, ge, he, s)?.value;
        if !other.same_phase(&first) {
            return Err(OracleError::ChoiceDependent {
                first: first.to_string(),
                second: other.to_string(),
            });
        }
    }
    Ok(first)
}

/// `σ^x_c(p, q) = σ_c((x, p, x), (x, q, x))`.
pub fn isotropy_restriction<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    x: &EventuallyPeriodicPath,
    p: &[i64],
    q: &[i64],
) -> Result<PhaseExponent<I>, OracleError> {
    let ge = GroupoidElement::isotropy(g, x, p)?;
    let he = GroupoidElement::isotropy(g, x, q)?;
    sigma_c(c, g, part, &ge, &he)
}

/// `r^σ_α(p) = σ(α, (y,p,y)) + σ((x,m+p,y), α⁻¹) − σ(α, α⁻¹)` for
/// `α = (x, m, y)`.
pub fn r_sigma<I: Scalar>(
    c: &CocycleSpec<I>,
    g: &KGraph,
    part: &Partition,
    alpha: &GroupoidElement,
    p: &[i64],
) -> Result<PhaseExponent<I>, OracleError> {
    let iso = GroupoidElement::isotropy(g, alpha.source(), p)?;
    let shifted = alpha.compose(g, &iso)?;
    let inv = alpha.inverse();
    Ok(
        sigma_c(c, g, part, alpha, &iso)? + sigma_c(c, g, part, &shifted, &inv)?
            - sigma_c(c, g, part, alpha, &inv)?,
    )
}
