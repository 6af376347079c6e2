"""Single-observation and step-wise order relations for Bernoulli scenarios.

Likelihood-ratio dominance on finite laws, the convex factor that decides
whether one more observation raises or lowers an expected posterior, the
exact one-step update identity, and the two-sided symmetry between the
theta0-posterior under theta1 and the theta1-posterior under theta0.
Everything here is exact rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import families as fam
from . import priors as pr
from .engine import expected_posterior_discrete
from .families import DomainError
from .priors import DiscreteAtoms, PosteriorVector

Real = Union[int, Fraction]


@dataclass(frozen=True)
class FiniteLaw:
    """Finitely supported law: strictly increasing support, exact weights."""

    support: tuple[Real, ...]
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.support) != len(self.probs):
            raise DomainError("support and probability lists differ in length")
        if any(p < 0 for p in self.probs):
            raise DomainError("law has a negative probability")
        if sum(self.probs) != 1:
            raise DomainError(f"law probabilities sum to {sum(self.probs)}, expected 1")
        for a, b in zip(self.support, self.support[1:]):
            if not a < b:
                raise DomainError("law support must be strictly increasing")

    @classmethod
    def from_pairs(cls, pairs) -> "FiniteLaw":
        """Group duplicate values, drop zero-probability points, sort."""
        grouped: dict = {}
        for value, prob in pairs:
            grouped[value] = grouped.get(value, Fraction(0)) + prob
        items = sorted((v, p) for v, p in grouped.items() if p != 0)
        return cls(tuple(v for v, _ in items), tuple(p for _, p in items))

    def prob_of(self, value) -> Fraction:
        for v, p in zip(self.support, self.probs):
            if v == value:
                return p
        return Fraction(0)


def lr_dominates(law_hi: FiniteLaw, law_lo: FiniteLaw) -> bool:
    """True iff law_hi dominates law_lo in the likelihood-ratio order.

    On the union support (missing points carry probability zero) the
    condition is P_hi(t') P_lo(t) >= P_hi(t) P_lo(t') for every pair
    t' > t; equivalent to the set form on finite supports.
    """
    union = sorted(set(law_hi.support) | set(law_lo.support))
    hi = [law_hi.prob_of(v) for v in union]
    lo = [law_lo.prob_of(v) for v in union]
    m = len(union)
    for i in range(m):
        for j in range(i + 1, m):
            if hi[j] * lo[i] < hi[i] * lo[j]:
                return False
    return True


def posterior_law(
    prior: DiscreteAtoms, theta0: Real, n: int, under: Real | None = None
) -> FiniteLaw:
    """Law of the theta0-posterior after n Bernoulli observations.

    ``under`` selects the generating parameter; None means the prior
    predictive (marginal) law.  Built by exact enumeration over the
    sufficient statistic, which carries the full distribution.
    """
    family = fam.bernoulli()
    prior.validate_for(family)
    if not prior.is_atom(theta0):
        raise DomainError(f"theta0={theta0} must be an atom of the prior")
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    thetas = [Fraction(t) for t in prior.thetas]
    weights = list(prior.weights)
    w0 = prior.weight_of(theta0)
    t0 = Fraction(theta0)
    pairs = []
    for k in range(n + 1):
        pmf = [fam.binomial_pmf_exact(t, n, k) for t in thetas]
        marginal = sum(w * p for w, p in zip(weights, pmf))
        if under is None:
            gen = marginal
        else:
            gen = fam.binomial_pmf_exact(Fraction(under), n, k)
        if marginal == 0:
            if gen != 0:
                raise pr.ImpossibleObservationError(
                    "impossible observation under prior support"
                )
            continue
        q0 = w0 * pmf[thetas.index(t0)] / marginal
        pairs.append((q0, gen))
    return FiniteLaw.from_pairs(pairs)


def expected_update_factor(mean_theta: Real, theta0: Real, theta1: Real) -> Real:
    """The strictly convex factor V with V(theta0) = V(theta1) = 1:

        V(y) = theta0 theta1 / y + (1-theta0)(1-theta1) / (1-y)

    One more observation multiplies the expected theta0-posterior by
    V(posterior-mean parameter), so V below/above one decides the
    direction of the next step.
    """
    y = Fraction(mean_theta) if not isinstance(mean_theta, float) else mean_theta
    if not 0 < y < 1:
        raise DomainError(f"mean parameter {mean_theta} outside (0, 1)")
    t0, t1 = theta0, theta1
    return t0 * t1 / y + (1 - t0) * (1 - t1) / (1 - y)


def one_step_expected_posterior(
    posterior: PosteriorVector, theta0: Real, theta1: Real
) -> Real:
    """Expectation, under theta1, of the next-step theta0-posterior given
    the current state: current weight times the update factor at the
    posterior-mean parameter.  Exact for exact posteriors."""
    q0 = posterior.weight_of(theta0)
    mean = pr.mean_parameter(posterior)
    return q0 * expected_update_factor(mean, theta0, theta1)


def check_prior_criterion(
    prior: DiscreteAtoms, theta0: Real, theta1: Real
) -> tuple[Real, str]:
    """One-observation expected posterior and its predicted direction.

    Returns (expected value, direction), direction "le" when the prior
    mean lies weakly between theta0 and theta1 (expected <= prior weight,
    equality iff the mean hits theta0 or theta1), "ge" otherwise.
    """
    family = fam.bernoulli()
    prior.validate_for(family)
    if not prior.is_atom(theta0):
        raise DomainError(f"theta0={theta0} must be an atom of the prior")
    mean = prior.mean()
    expected = prior.weight_of(theta0) * expected_update_factor(mean, theta0, theta1)
    lo, hi = min(theta0, theta1), max(theta0, theta1)
    direction = "le" if lo <= mean <= hi else "ge"
    return expected, direction


def symmetry_check(
    prior: DiscreteAtoms, theta0: Real, theta1: Real, n: int
) -> tuple[Real, Real, bool]:
    """weight(theta1) * E_{theta1}[posterior at theta0] versus
    weight(theta0) * E_{theta0}[posterior at theta1]; exact equality."""
    seq01 = expected_posterior_discrete(prior, theta0, theta1, n, mode="exact")
    seq10 = expected_posterior_discrete(prior, theta1, theta0, n, mode="exact")
    lhs = prior.weight_of(theta1) * seq01.value(n).as_fraction()
    rhs = prior.weight_of(theta0) * seq10.value(n).as_fraction()
    return lhs, rhs, lhs == rhs


# ---------------------------------------------------------------------------
# randomized scenario generation and the dominance-reversal search
# ---------------------------------------------------------------------------


def random_rational_scenario(
    rng: random.Random, max_atoms: int = 4, boundary_ok: bool = False
) -> DiscreteAtoms:
    """Random atom prior with small-denominator rational atoms and weights."""
    count = rng.randint(2, max_atoms)
    lo, hi = (0, 20) if boundary_ok else (1, 19)
    thetas = set()
    while len(thetas) < count:
        thetas.add(Fraction(rng.randint(lo, hi), 20))
    raw = [rng.randint(1, 9) for _ in range(count)]
    total = sum(raw)
    weights = [Fraction(r, total) for r in raw]
    return DiscreteAtoms(tuple(zip(sorted(thetas), weights)))


def find_lr_reversal(seed: int, max_tries: int = 2000) -> dict | None:
    """Search random 3-atom scenarios for a reversed dominance witness.

    The expected direction -- the marginal law of the theta0-posterior
    dominating its law under a different generating atom -- provably holds
    when the generating atom is extreme, so the search scans interior
    generating atoms.  Returns a witness record or None.
    """
    rng = random.Random(seed)
    for trial in range(max_tries):
        prior = random_rational_scenario(rng, max_atoms=3)
        if len(prior.atoms) != 3:
            continue
        thetas = prior.thetas
        middle = thetas[1]
        for theta0 in (thetas[0], thetas[2]):
            for n in (1, 2, 3):
                marginal_law = posterior_law(prior, theta0, n, under=None)
                generated_law = posterior_law(prior, theta0, n, under=middle)
                if not lr_dominates(marginal_law, generated_law) and lr_dominates(
                    generated_law, marginal_law
                ):
                    return {
                        "trial": trial,
                        "atoms": [[str(t), str(w)] for t, w in prior.atoms],
                        "theta0": str(theta0),
                        "generating_theta": str(middle),
                        "n": n,
                        "generated_law": [
                            [str(v), str(p)]
                            for v, p in zip(generated_law.support, generated_law.probs)
                        ],
                        "marginal_law": [
                            [str(v), str(p)]
                            for v, p in zip(marginal_law.support, marginal_law.probs)
                        ],
                    }
    return None
