"""Expected-posterior sequences by four interchangeable routes.

For a parameter pair (theta0, theta1) the quantity of interest is the
expectation, under data generated at theta1, of the posterior weight (or
density) at theta0 after n observations.  Routes:

  * exact big-rational summation over the sufficient statistic
    (Bernoulli observations, finite atom priors, Beta/uniform priors);
  * closed forms for normal observations + standard normal prior and
    exponential observations + exponential prior (half-integer Bessel K);
  * adaptive quadrature over the sufficient statistic (oracle route);
  * brute-force enumeration of all 2^n raw Bernoulli sequences (oracle
    route, deliberately ignorant of sufficiency).

Default arithmetic for discrete Bernoulli priors is exact: the short-range
wiggles this library hunts for must not be floating-point artifacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import families as fam
from . import priors as pr
from .families import BERNOULLI, EXPONENTIAL, NORMAL, DomainError, FamilySpec
from .priors import (
    Beta,
    DiscreteAtoms,
    ExpPrior,
    ImpossibleObservationError,
    Prior,
    StdNormal,
    Uniform01,
    UnsupportedConjugacyError,
)
from .quadrature import integrate_half_line, integrate_real_line
from .specialfn import bessel_K_half, binomial_square_sum, legendre_ratios
from .util import ExactValue, format_float, logsumexp, tree_sum_fractions

Real = Union[int, float, Fraction]

METHOD_EXACT = "exact_rational"
METHOD_NORMAL = "closed_form_normal"
METHOD_EXP_BESSEL = "closed_form_exp_bessel"
METHOD_UNIFORM = "uniform_prior_legendre"
METHOD_QUADRATURE = "quadrature"
METHOD_BRUTEFORCE = "brute_force"

REPR_RATIONAL = "rational"
REPR_FLOAT = "float"

BRUTEFORCE_CAP = 14


@dataclass
class ExpectedPosteriorSequence:
    """Values of the expected posterior for n = 1..N plus tags.

    ``values`` holds ExactValue/Fraction entries in rational mode and floats
    otherwise; ``log_values`` always holds float logs.  ``prior_value`` is
    the n = 0 expectation (the prior weight/density at theta0), reported
    separately rather than as part of the range.
    """

    family: FamilySpec
    theta0: Real
    theta1: Real
    method: str
    representation: str
    values: list
    log_values: list[float]
    prior_value: float | Fraction | None = None

    @property
    def horizon(self) -> int:
        return len(self.values)

    def ns(self) -> range:
        return range(1, len(self.values) + 1)

    def value(self, n: int):
        return self.values[n - 1]

    def float_values(self) -> list[float]:
        return [float(v) for v in self.values] if self.values else []

    def csv_rows(self) -> list[dict]:
        rows = []
        for n, v, lv in zip(self.ns(), self.values, self.log_values):
            row = {
                "n": n,
                "psi": format_float(float(v)),
                "log_psi": format_float(lv),
                "method": self.method,
                "repr": self.representation,
            }
            rows.append(row)
        return rows

    def rational_strings(self) -> list[str | None]:
        """Canonical "p/q" per value, or None where reduction is too big."""
        out = []
        for v in self.values:
            if isinstance(v, Fraction):
                out.append(ExactValue(v.numerator, v.denominator).canonical_str())
            elif isinstance(v, ExactValue):
                out.append(v.canonical_str())
            else:
                out.append(None)
        return out


def _log_of(value) -> float:
    if isinstance(value, ExactValue):
        return value.log()
    if isinstance(value, Fraction):
        return ExactValue(value.numerator, value.denominator).log()
    return math.log(value) if value > 0 else float("-inf")


# ---------------------------------------------------------------------------
# Bernoulli observations, finite atom prior
# ---------------------------------------------------------------------------


def _bernoulli_rational_inputs(prior: DiscreteAtoms, theta0, theta1) -> bool:
    return (
        prior.is_rational()
        and isinstance(theta0, (int, Fraction))
        and isinstance(theta1, (int, Fraction))
    )


def expected_posterior_discrete(
    prior: DiscreteAtoms,
    theta0: Real,
    theta1: Real,
    horizon: int,
    mode: str = "auto",
) -> ExpectedPosteriorSequence:
    """Bernoulli observations with an atom prior, summed over u_n.

    theta0 must be an atom; theta1 may be any parameter in [0, 1].  In
    exact mode (default whenever all inputs are rational) every value is an
    exact big rational; float mode sums in log space against the running
    maximum term.
    """
    family = fam.bernoulli()
    prior.validate_for(family)
    if not prior.is_atom(theta0):
        raise DomainError(f"theta0={theta0} must be an atom of the prior")
    if not 0 <= theta1 <= 1:
        raise DomainError(f"theta1={theta1} outside [0, 1]")
    if horizon < 1:
        raise DomainError(f"horizon={horizon} must be >= 1")
    if mode not in ("auto", "exact", "float"):
        raise DomainError(f"unknown numeric mode {mode!r}")
    exact = mode != "float" and _bernoulli_rational_inputs(prior, theta0, theta1)
    if mode == "exact" and not exact:
        raise DomainError("exact mode requires rational atoms, weights, theta0, theta1")
    if exact:
        values = _discrete_exact_values(prior, theta0, theta1, horizon)
        logs = [v.log() if v.num > 0 else float("-inf") for v in values]
        return ExpectedPosteriorSequence(
            family, theta0, theta1, METHOD_EXACT, REPR_RATIONAL, values, logs,
            prior_value=prior.weight_of(theta0),
        )
    logs = _discrete_float_logs(prior, theta0, theta1, horizon)
    values = [math.exp(lv) for lv in logs]
    return ExpectedPosteriorSequence(
        family, theta0, theta1, METHOD_EXACT, REPR_FLOAT, values, logs,
        prior_value=float(prior.weight_of(theta0)),
    )


def _discrete_exact_values(
    prior: DiscreteAtoms, theta0, theta1, horizon: int
) -> list[ExactValue]:
    thetas = [Fraction(t) for t in prior.thetas]
    t1 = Fraction(theta1)
    denom = math.lcm(*(t.denominator for t in thetas), t1.denominator)
    scaled = [int(t * denom) for t in thetas]
    comp = [denom - a for a in scaled]
    wdenom = math.lcm(*(w.denominator for w in prior.weights))
    wts = [int(w * wdenom) for w in prior.weights]
    i0 = thetas.index(Fraction(theta0))
    a0, b0 = scaled[i0], comp[i0]
    a1, b1 = int(t1 * denom), denom - int(t1 * denom)
    w0 = wts[i0]
    n_atoms = len(thetas)

    # power tables: atom^k and (1-atom)^k for k <= horizon, plus the
    # products entering the numerator and the denominator scale
    pow_a = [[1] * (horizon + 1) for _ in range(n_atoms)]
    pow_b = [[1] * (horizon + 1) for _ in range(n_atoms)]
    for j in range(n_atoms):
        for k in range(1, horizon + 1):
            pow_a[j][k] = pow_a[j][k - 1] * scaled[j]
            pow_b[j][k] = pow_b[j][k - 1] * comp[j]
    a01, b01 = a0 * a1, b0 * b1
    pow_a01 = [1] * (horizon + 1)
    pow_b01 = [1] * (horizon + 1)
    pow_d = [1] * (horizon + 1)
    for k in range(1, horizon + 1):
        pow_a01[k] = pow_a01[k - 1] * a01
        pow_b01[k] = pow_b01[k - 1] * b01
        pow_d[k] = pow_d[k - 1] * denom

    values = []
    for n in range(1, horizon + 1):
        nums, dens = [], []
        choose = 1
        for k in range(n + 1):
            mass = 0
            for j in range(n_atoms):
                mass += wts[j] * pow_a[j][k] * pow_b[j][n - k]
            numerator = choose * pow_a01[k] * pow_b01[n - k]
            if mass == 0:
                if numerator != 0:
                    raise ImpossibleObservationError(
                        f"impossible observation under prior support: u_{n}={k}"
                    )
            else:
                nums.append(numerator)
                dens.append(mass)
            if k < n:
                choose = choose * (n - k) // (k + 1)
        total_num, total_den = tree_sum_fractions(nums, dens)
        values.append(ExactValue(w0 * total_num, total_den * pow_d[n]))
    return values


def _discrete_float_logs(prior: DiscreteAtoms, theta0, theta1, horizon: int) -> list[float]:
    family = fam.bernoulli()
    t0w = math.log(float(prior.weight_of(theta0)))
    log_w = [math.log(float(w)) for w in prior.weights]
    logs = []
    for n in range(1, horizon + 1):
        terms = []
        for k in range(n + 1):
            lp0 = fam.suff_stat_log_density(family, theta0, n, k)
            lp1 = fam.suff_stat_log_density(family, theta1, n, k)
            lmarg = logsumexp(
                lw + fam.suff_stat_log_density(family, t, n, k)
                for t, lw in zip(prior.thetas, log_w)
            )
            if lmarg == float("-inf"):
                if lp1 > float("-inf"):
                    raise ImpossibleObservationError(
                        f"impossible observation under prior support: u_{n}={k}"
                    )
                continue
            terms.append(t0w + lp0 + lp1 - lmarg)
        logs.append(logsumexp(terms))
    return logs


# ---------------------------------------------------------------------------
# Bernoulli observations, uniform prior (Legendre route)
# ---------------------------------------------------------------------------


def expected_posterior_uniform(
    theta0: Real, theta1: Real, horizon: int, mode: str = "auto"
) -> ExpectedPosteriorSequence:
    """Bernoulli observations with the uniform prior on (0, 1).

    The marginal of u_n is uniform on {0..n}, which collapses the sum to
    the bivariate binomial-square form S_n(theta0 theta1, (1-theta0)(1-theta1));
    exact for rational parameters.  Float mode walks the equivalent
    Legendre-polynomial recursion in log space, O(1) per step.
    """
    family = fam.bernoulli()
    family.require_theta(theta0)
    family.require_theta(theta1)
    if horizon < 1:
        raise DomainError(f"horizon={horizon} must be >= 1")
    if mode not in ("auto", "exact", "float"):
        raise DomainError(f"unknown numeric mode {mode!r}")
    rational = isinstance(theta0, (int, Fraction)) and isinstance(theta1, (int, Fraction))
    exact = mode != "float" and rational
    if mode == "exact" and not exact:
        raise DomainError("exact mode requires rational theta0, theta1")
    if exact:
        y = Fraction(theta0) * Fraction(theta1)
        z = (1 - Fraction(theta0)) * (1 - Fraction(theta1))
        values = binomial_square_sum(y, z, horizon)
        logs = [_log_of(v) for v in values]
        return ExpectedPosteriorSequence(
            family, theta0, theta1, METHOD_UNIFORM, REPR_RATIONAL, values, logs,
            prior_value=Fraction(1),
        )
    logs = _uniform_float_logs(float(theta0), float(theta1), horizon)
    values = [math.exp(lv) for lv in logs]
    return ExpectedPosteriorSequence(
        family, theta0, theta1, METHOD_UNIFORM, REPR_FLOAT, values, logs, prior_value=1.0
    )


def _uniform_float_logs(theta0: float, theta1: float, horizon: int) -> list[float]:
    y = theta0 * theta1
    z = (1.0 - theta0) * (1.0 - theta1)
    if math.isclose(y, z, rel_tol=1e-15):
        # S_n(y, y) = y^n (n+1) C(2n, n)
        logs = []
        log_c = 0.0
        for n in range(1, horizon + 1):
            log_c += math.log(2 * (2 * n - 1)) - math.log(n)  # C(2n,n)/C(2n-2,n-1)
            logs.append(n * math.log(y) + math.log(n + 1) + log_c)
        return logs
    hi, lo = max(y, z), min(y, z)
    x = (hi + lo) / (hi - lo)
    ratios = legendre_ratios(horizon, x)
    logs = []
    log_p = 0.0
    for n in range(1, horizon + 1):
        log_p += math.log(ratios[n - 1])
        logs.append(n * math.log(hi - lo) + math.log(n + 1) + log_p)
    return logs


# ---------------------------------------------------------------------------
# normal observations, standard normal prior
# ---------------------------------------------------------------------------


def log_expected_posterior_normal(theta0: float, theta1: float, sigma: float, n: float) -> float:
    """Closed-form log value at (possibly real) n >= 0; used by the solver."""
    if not sigma > 0:
        raise DomainError(f"sigma={sigma} must be > 0")
    mid = 0.5 * (theta0 + theta1)
    sig2 = sigma * sigma
    diag = (
        math.log(n + sig2)
        - math.log(sigma)
        - 0.5 * math.log(2.0 * math.pi * (2.0 * n + sig2))
        - mid * mid * sig2 / (4.0 * n + 2.0 * sig2)
    )
    return diag + 0.5 * (mid * mid - theta0 * theta0) - n * (theta0 - theta1) ** 2 / (4.0 * sig2)


def expected_posterior_normal(
    theta0: float, theta1: float, sigma: float, horizon: int
) -> ExpectedPosteriorSequence:
    """Normal(theta, sigma^2) observations, standard normal prior on theta."""
    if horizon < 1:
        raise DomainError(f"horizon={horizon} must be >= 1")
    family = fam.normal(sigma)
    t0, t1 = float(theta0), float(theta1)
    logs = [log_expected_posterior_normal(t0, t1, sigma, n) for n in range(1, horizon + 1)]
    values = [math.exp(lv) for lv in logs]
    prior_value = math.exp(pr.prior_log_density(StdNormal(), t0))
    return ExpectedPosteriorSequence(
        family, theta0, theta1, METHOD_NORMAL, REPR_FLOAT, values, logs, prior_value=prior_value
    )


# ---------------------------------------------------------------------------
# exponential observations, exponential prior (Bessel route)
# ---------------------------------------------------------------------------


def expected_posterior_exponential(
    theta0: float, theta1: float, horizon: int, rate: float = 1.0
) -> ExpectedPosteriorSequence:
    """Exp(theta) observations with an Exp(rate) prior on theta.

    The diagonal value is
        theta^(n-1/2) / (2^(n+1/2) n! sqrt(pi)) [(n+theta) k_n + theta k_{n-1}]
    at theta = (theta0+theta1)/2 with k_n the half-integer Bessel K values;
    off the diagonal it picks up exp(theta-theta0) (theta0 theta1/theta^2)^n.
    A general prior rate rescales through (t0, t1, x) -> (rate*t0, rate*t1, x/rate),
    which multiplies the posterior density by rate.
    """
    if horizon < 1:
        raise DomainError(f"horizon={horizon} must be >= 1")
    family = fam.exponential()
    family.require_theta(theta0)
    family.require_theta(theta1)
    if not rate > 0:
        raise DomainError(f"rate={rate} must be > 0")
    t0, t1 = float(theta0) * rate, float(theta1) * rate
    mid = 0.5 * (t0 + t1)
    bess = bessel_K_half(mid, horizon)
    log_rate = math.log(rate)
    log_off = math.log(t0 * t1) - 2.0 * math.log(mid) if t0 != t1 else 0.0
    logs = []
    log_fact = 0.0  # log n!
    for n in range(1, horizon + 1):
        log_fact += math.log(n)
        diag = (
            (n - 0.5) * math.log(mid)
            - (n + 0.5) * math.log(2.0)
            - log_fact
            - 0.5 * math.log(math.pi)
            + bess.log_k[n]
            + math.log((n + mid) + mid * bess.rho[n])
        )
        logs.append(diag + (mid - t0) + n * log_off + log_rate)
    values = [math.exp(lv) for lv in logs]
    prior_value = math.exp(pr.prior_log_density(ExpPrior(rate), theta0))
    return ExpectedPosteriorSequence(
        family, theta0, theta1, METHOD_EXP_BESSEL, REPR_FLOAT, values, logs,
        prior_value=prior_value,
    )


# ---------------------------------------------------------------------------
# Bernoulli + Beta prior (conjugate finite sum)
# ---------------------------------------------------------------------------


def expected_posterior_beta(
    prior: Beta, theta0: Real, theta1: Real, horizon: int, mode: str = "auto"
) -> ExpectedPosteriorSequence:
    """Bernoulli observations with a Beta(a, b) prior; exact for integer a, b."""
    family = fam.bernoulli()
    family.require_theta(theta0)
    family.require_theta(theta1)
    if horizon < 1:
        raise DomainError(f"horizon={horizon} must be >= 1")
    integer_shape = (
        isinstance(prior.a, (int, Fraction))
        and isinstance(prior.b, (int, Fraction))
        and Fraction(prior.a).denominator == 1
        and Fraction(prior.b).denominator == 1
    )
    rational = isinstance(theta0, (int, Fraction)) and isinstance(theta1, (int, Fraction))
    exact = mode != "float" and integer_shape and rational
    if mode == "exact" and not exact:
        raise DomainError("exact mode requires integer Beta shapes and rational thetas")
    a_int, b_int = int(prior.a), int(prior.b)
    if exact:
        t0, t1 = Fraction(theta0), Fraction(theta1)
        # 1/B(a,b) = (a+b-1)! / ((a-1)! (b-1)!) for integer shapes
        inv_beta = Fraction(
            math.factorial(a_int + b_int - 1),
            math.factorial(a_int - 1) * math.factorial(b_int - 1),
        )
        density0 = t0 ** (a_int - 1) * (1 - t0) ** (b_int - 1) * inv_beta
        values = []
        for n in range(1, horizon + 1):
            total = Fraction(0)
            for k in range(n + 1):
                marg = pr.beta_marginal_pmf_exact(a_int, b_int, n, k)
                p0 = fam.binomial_pmf_exact(t0, n, k)
                p1 = fam.binomial_pmf_exact(t1, n, k)
                total += p0 * p1 / marg
            values.append(total * density0)
        logs = [_log_of(v) for v in values]
        return ExpectedPosteriorSequence(
            family, theta0, theta1, METHOD_EXACT, REPR_RATIONAL, values, logs,
            prior_value=density0,
        )
    logs = []
    log_density0 = pr.prior_log_density(prior, theta0)
    for n in range(1, horizon + 1):
        terms = []
        for k in range(n + 1):
            lp0 = fam.suff_stat_log_density(family, theta0, n, k)
            lp1 = fam.suff_stat_log_density(family, theta1, n, k)
            lmarg = pr.marginal_suffstat_logpmf(family, prior, n, k)
            terms.append(log_density0 + lp0 + lp1 - lmarg)
        logs.append(logsumexp(terms))
    values = [math.exp(lv) for lv in logs]
    return ExpectedPosteriorSequence(
        family, theta0, theta1, METHOD_QUADRATURE, REPR_FLOAT, values, logs,
        prior_value=math.exp(log_density0),
    )


# ---------------------------------------------------------------------------
# quadrature oracle
# ---------------------------------------------------------------------------


def expected_posterior_quadrature(
    family: FamilySpec,
    prior: Prior,
    theta0: Real,
    theta1: Real,
    n: int,
    tol: float = 1e-10,
) -> tuple[float, float]:
    """Single value by summation/quadrature over the sufficient statistic.

    Returns (value, achieved error estimate); the error is zero for the
    finite-sum cases.  Raises QuadratureError carrying the partial estimate
    when the tolerance is not reached, and UnsupportedConjugacyError for
    pairings with no prior-predictive route.
    """
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    if family.kind == BERNOULLI and isinstance(prior, (DiscreteAtoms, Uniform01, Beta)):
        if isinstance(prior, DiscreteAtoms):
            log_pi0 = math.log(float(prior.weight_of(theta0)))
        else:
            log_pi0 = pr.prior_log_density(prior, theta0)
        terms = []
        for k in range(n + 1):
            lp0 = fam.suff_stat_log_density(family, theta0, n, k)
            lp1 = fam.suff_stat_log_density(family, theta1, n, k)
            lmarg = pr.marginal_suffstat_logpmf(family, prior, n, k)
            if lmarg == float("-inf"):
                if lp1 > float("-inf"):
                    raise ImpossibleObservationError(
                        f"impossible observation under prior support: u_{n}={k}"
                    )
                continue
            terms.append(log_pi0 + lp0 + lp1 - lmarg)
        return math.exp(logsumexp(terms)), 0.0
    if family.kind == NORMAL and isinstance(prior, StdNormal):
        log_pi0 = pr.prior_log_density(prior, theta0)

        def integrand(u: float) -> float:
            lp0 = fam.suff_stat_log_density(family, theta0, n, u)
            lp1 = fam.suff_stat_log_density(family, theta1, n, u)
            lmarg = pr.marginal_suffstat_logpmf(family, prior, n, u)
            return math.exp(log_pi0 + lp0 + lp1 - lmarg)

        return integrate_real_line(integrand, tol=tol)
    if family.kind == EXPONENTIAL and isinstance(prior, ExpPrior):
        log_pi0 = pr.prior_log_density(prior, theta0)

        def integrand(u: float) -> float:
            if u <= 0:
                return 0.0
            lp0 = fam.suff_stat_log_density(family, theta0, n, u)
            lp1 = fam.suff_stat_log_density(family, theta1, n, u)
            lmarg = pr.marginal_suffstat_logpmf(family, prior, n, u)
            return math.exp(log_pi0 + lp0 + lp1 - lmarg)

        return integrate_half_line(integrand, tol=tol)
    raise UnsupportedConjugacyError(
        f"unsupported conjugacy: {family.kind} with {type(prior).__name__}"
    )


# ---------------------------------------------------------------------------
# brute-force oracle over raw sequences
# ---------------------------------------------------------------------------


def expected_posterior_bruteforce(
    prior: DiscreteAtoms, theta0: Real, theta1: Real, n: int
) -> Fraction:
    """Sum over all 2^n Bernoulli observation sequences, exact.

    Conditions on the raw sequence (not the sufficient statistic); the two
    routes agreeing is the sufficiency collapse under test.  Capped at
    n <= 14 by the enumeration budget.
    """
    if n > BRUTEFORCE_CAP:
        raise DomainError(f"n={n} exceeds the brute-force cap of {BRUTEFORCE_CAP}")
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    if not _bernoulli_rational_inputs(prior, theta0, theta1):
        raise DomainError("brute force requires rational atoms, weights, thetas")
    if not prior.is_atom(theta0):
        raise DomainError(f"theta0={theta0} must be an atom of the prior")
    thetas = [Fraction(t) for t in prior.thetas]
    weights = list(prior.weights)
    t0 = Fraction(theta0)
    t1 = Fraction(theta1)
    w0 = prior.weight_of(theta0)
    total = Fraction(0)
    for bits in range(1 << n):
        seq_probs = []
        for t in thetas + [t1]:
            prob = Fraction(1)
            for i in range(n):
                prob *= t if (bits >> i) & 1 else 1 - t
            seq_probs.append(prob)
        gen_prob = seq_probs[-1]
        marginal = sum(w * p for w, p in zip(weights, seq_probs[:-1]))
        if marginal == 0:
            if gen_prob != 0:
                raise ImpossibleObservationError(
                    "impossible observation under prior support"
                )
            continue
        i0 = thetas.index(t0)
        total += gen_prob * w0 * seq_probs[i0] / marginal
    return total


# ---------------------------------------------------------------------------
# reduction to the diagonal
# ---------------------------------------------------------------------------


def reduction_check_factor(
    family: FamilySpec, prior: Prior, theta0: Real, theta1: Real
) -> tuple[float, float, float]:
    """(theta_mid, affinity, prior density ratio at theta0 over theta_mid).

    The off-diagonal sequence equals ratio * diagonal(theta_mid) * affinity^n;
    exposed for the cross-route identity tests.
    """
    mid, affinity = fam.bhattacharyya_reduction(family, theta0, theta1)
    if isinstance(prior, pr.DiscreteAtoms):
        raise DomainError("the diagonal reduction needs a continuous prior")
    ratio = math.exp(pr.prior_log_density(prior, theta0) - pr.prior_log_density(prior, mid))
    return mid, affinity, ratio
