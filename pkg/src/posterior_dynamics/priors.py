"""Priors, posteriors over the sufficient statistic, and prior-predictive laws.

Two prior shapes exist: a finite list of weighted atoms (weights are exact
rationals summing to one) and four named continuous densities -- Uniform(0,1),
Beta(a,b), the standard normal, and Exp(rate).  Posteriors for atom priors
are computed by Bayes' rule over the sufficient statistic u_n; when the
family is Bernoulli and every input is rational the arithmetic is exact.

Atom locations may sit on the boundary of the Bernoulli parameter interval
(0 or 1): a coin known to always land heads is a legitimate hypothesis.
Other families require interior atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import families as fam
from .families import BERNOULLI, EXPONENTIAL, NORMAL, DomainError, FamilySpec
from .util import logsumexp

Real = Union[int, float, Fraction]


class PriorError(ValueError):
    """Malformed prior: weights, atom domain, or schema problems."""


class ImpossibleObservationError(ValueError):
    """Observation has zero probability under every atom of the prior."""


class UnsupportedConjugacyError(ValueError):
    """No closed-form prior predictive for this (family, prior) pairing."""


@dataclass(frozen=True)
class DiscreteAtoms:
    """Finitely supported prior: ((theta, weight), ...), weights exact."""

    atoms: tuple[tuple[Real, Fraction], ...]

    def __post_init__(self):
        if not self.atoms:
            raise PriorError("discrete prior needs at least one atom")
        total = Fraction(0)
        seen = set()
        for theta, weight in self.atoms:
            if not isinstance(weight, Fraction):
                raise PriorError(f"weight {weight!r} must be a Fraction")
            if weight <= 0:
                raise PriorError(f"weight {weight} must be positive")
            if theta in seen:
                raise PriorError(f"duplicate atom theta={theta}")
            seen.add(theta)
            total += weight
        if total != 1:
            raise PriorError(f"weights sum to {total}, expected exactly 1")

    @property
    def thetas(self) -> tuple[Real, ...]:
        return tuple(t for t, _ in self.atoms)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for _, w in self.atoms)

    def weight_of(self, theta: Real) -> Fraction:
        for t, w in self.atoms:
            if t == theta:
                return w
        raise PriorError(f"theta={theta} is not an atom of the prior")

    def is_atom(self, theta: Real) -> bool:
        return any(t == theta for t, _ in self.atoms)

    def is_rational(self) -> bool:
        return all(isinstance(t, (int, Fraction)) for t in self.thetas)

    def validate_for(self, family: FamilySpec) -> None:
        closure = family.kind == BERNOULLI
        for t in self.thetas:
            family.require_theta(t, closure=closure)

    def mean(self) -> Real:
        return sum(t * w for t, w in self.atoms)


@dataclass(frozen=True)
class Uniform01:
    pass


@dataclass(frozen=True)
class Beta:
    a: Real
    b: Real

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise PriorError("Beta prior requires a > 0 and b > 0")


@dataclass(frozen=True)
class StdNormal:
    pass


@dataclass(frozen=True)
class ExpPrior:
    rate: Real = 1

    def __post_init__(self):
        if not self.rate > 0:
            raise PriorError("exponential prior requires rate > 0")


Prior = Union[DiscreteAtoms, Uniform01, Beta, StdNormal, ExpPrior]

CONTINUOUS_PRIORS = (Uniform01, Beta, StdNormal, ExpPrior)


def atoms(*pairs: tuple[Real, Real]) -> DiscreteAtoms:
    """Convenience constructor; weights are coerced to exact Fractions."""
    return DiscreteAtoms(tuple((t, Fraction(w)) for t, w in pairs))


def prior_log_density(prior: Prior, theta: Real) -> float:
    """log density of a continuous prior at theta."""
    t = float(theta)
    if isinstance(prior, Uniform01):
        return 0.0 if 0.0 < t < 1.0 else float("-inf")
    if isinstance(prior, Beta):
        if not 0.0 < t < 1.0:
            return float("-inf")
        a, b = float(prior.a), float(prior.b)
        log_beta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
        return (a - 1.0) * math.log(t) + (b - 1.0) * math.log(1.0 - t) - log_beta
    if isinstance(prior, StdNormal):
        return -0.5 * math.log(2.0 * math.pi) - 0.5 * t * t
    if isinstance(prior, ExpPrior):
        if t <= 0.0:
            return float("-inf")
        lam = float(prior.rate)
        return math.log(lam) - lam * t
    raise PriorError("prior_log_density needs a continuous prior")


# ---------------------------------------------------------------------------
# posterior over atoms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PosteriorVector:
    """Per-atom posterior weights after conditioning on (n, u)."""

    thetas: tuple[Real, ...]
    weights: tuple[Union[Fraction, float], ...]
    n: int
    u: Real
    exact: bool

    def weight_of(self, theta: Real) -> Union[Fraction, float]:
        for t, w in zip(self.thetas, self.weights):
            if t == theta:
                return w
        raise PriorError(f"theta={theta} is not an atom of the posterior")


def posterior_given_suffstat(
    family: FamilySpec, prior: DiscreteAtoms, n: int, u: Real
) -> PosteriorVector:
    """Bayes' rule over atoms given u_n = u; n = 0 returns the prior."""
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")
    prior.validate_for(family)
    if n == 0:
        return PosteriorVector(prior.thetas, prior.weights, 0, u, exact=True)

    exact = family.kind == BERNOULLI and prior.is_rational() and isinstance(u, (int, Fraction))
    if exact:
        k = int(u)
        masses = [w * fam.binomial_pmf_exact(Fraction(t), n, k) for t, w in prior.atoms]
        total = sum(masses)
        if total == 0:
            raise ImpossibleObservationError(
                f"impossible observation under prior support: u_{n}={u}"
            )
        weights = tuple(m / total for m in masses)
        return PosteriorVector(prior.thetas, weights, n, u, exact=True)

    logs = [
        math.log(float(w)) + fam.suff_stat_log_density(family, t, n, u) for t, w in prior.atoms
    ]
    norm = logsumexp(logs)
    if norm == float("-inf"):
        raise ImpossibleObservationError(f"impossible observation under prior support: u_{n}={u}")
    weights = tuple(math.exp(lw - norm) for lw in logs)
    return PosteriorVector(prior.thetas, weights, n, u, exact=False)


def mean_parameter(posterior: PosteriorVector) -> Real:
    """Posterior-mean parameter; exact when the posterior is exact."""
    return sum(t * w for t, w in zip(posterior.thetas, posterior.weights))


# ---------------------------------------------------------------------------
# prior-predictive (marginal) law of the sufficient statistic
# ---------------------------------------------------------------------------


def marginal_suffstat_logpmf(family: FamilySpec, prior: Prior, n: int, u: Real) -> float:
    """log mass/density of u_n under the prior predictive.

    Supported pairings: any family with a DiscreteAtoms prior, and the
    conjugate pairs bernoulli+Uniform01/Beta, normal+StdNormal,
    exponential+ExpPrior.
    """
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    if isinstance(prior, DiscreteAtoms):
        prior.validate_for(family)
        return logsumexp(
            math.log(float(w)) + fam.suff_stat_log_density(family, t, n, u)
            for t, w in prior.atoms
        )
    if family.kind == BERNOULLI and isinstance(prior, Uniform01):
        uf = float(u)
        if uf < 0 or uf > n or uf != int(uf):
            return float("-inf")
        return -math.log(n + 1)
    if family.kind == BERNOULLI and isinstance(prior, Beta):
        uf = float(u)
        if uf < 0 or uf > n or uf != int(uf):
            return float("-inf")
        k = int(uf)
        a, b = float(prior.a), float(prior.b)
        log_choose = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        log_beta = lambda x, y: math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)
        return log_choose + log_beta(k + a, n - k + b) - log_beta(a, b)
    if family.kind == NORMAL and isinstance(prior, StdNormal):
        var = n * n + n * family.sigma**2
        uf = float(u)
        return -0.5 * math.log(2.0 * math.pi * var) - uf * uf / (2.0 * var)
    if family.kind == EXPONENTIAL and isinstance(prior, ExpPrior):
        # integrating the Gamma(n, theta) density against rate*exp(-rate*theta)
        # gives rate * n * u^(n-1) / (u + rate)^(n+1)
        uf = float(u)
        lam = float(prior.rate)
        if uf <= 0:
            return float("-inf")
        return math.log(lam) + math.log(n) + (n - 1) * math.log(uf) - (n + 1) * math.log(uf + lam)
    raise UnsupportedConjugacyError(
        f"unsupported conjugacy: {family.kind} with {type(prior).__name__}"
    )


def beta_marginal_pmf_exact(a: int, b: int, n: int, k: int) -> Fraction:
    """Bernoulli + Beta(a,b) prior predictive of u_n, exact for integer a,b."""
    if a < 1 or b < 1:
        raise PriorError("exact Beta marginal needs integer a, b >= 1")
    if k < 0 or k > n:
        return Fraction(0)
    # C(n,k) * B(k+a, n-k+b) / B(a,b) with integer-factorial Beta values
    num = (
        math.comb(n, k)
        * math.factorial(k + a - 1)
        * math.factorial(n - k + b - 1)
        * math.factorial(a + b - 1)
    )
    den = math.factorial(n + a + b - 1) * math.factorial(a - 1) * math.factorial(b - 1)
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------


def rational_from_json(value) -> Real:
    """Accept "p/q" strings, integers, and floats; keep rationals exact."""
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PriorError(f"cannot parse rational {value!r}") from exc
    if isinstance(value, bool):
        raise PriorError(f"cannot parse rational {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise PriorError(f"cannot parse rational {value!r}")


def rational_to_json(value: Real):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    return value


def prior_from_json(obj: dict) -> Prior:
    if not isinstance(obj, dict) or "type" not in obj:
        raise PriorError("prior object must carry a 'type' field")
    kind = obj["type"]
    if kind == "atoms":
        pairs = []
        for entry in obj.get("atoms", []):
            theta = rational_from_json(entry["theta"])
            weight = rational_from_json(entry["weight"])
            if not isinstance(weight, Fraction):
                raise PriorError("atom weights must be exact rationals")
            pairs.append((theta, weight))
        return DiscreteAtoms(tuple(pairs))
    if kind == "uniform01":
        return Uniform01()
    if kind == "beta":
        return Beta(rational_from_json(obj["a"]), rational_from_json(obj["b"]))
    if kind == "stdnormal":
        return StdNormal()
    if kind == "exp":
        return ExpPrior(rational_from_json(obj.get("lambda", 1)))
    raise PriorError(f"unknown prior type {kind!r}")


def prior_to_json(prior: Prior) -> dict:
    if isinstance(prior, DiscreteAtoms):
        return {
            "type": "atoms",
            "atoms": [
                {"theta": rational_to_json(t), "weight": rational_to_json(w)}
                for t, w in prior.atoms
            ],
        }
    if isinstance(prior, Uniform01):
        return {"type": "uniform01"}
    if isinstance(prior, Beta):
        return {"type": "beta", "a": rational_to_json(prior.a), "b": rational_to_json(prior.b)}
    if isinstance(prior, StdNormal):
        return {"type": "stdnormal"}
    if isinstance(prior, ExpPrior):
        return {"type": "exp", "lambda": rational_to_json(prior.rate)}
    raise PriorError(f"cannot serialize prior {prior!r}")
