"""Sequence diagnostics: modes, log-concavity, eventual decrease, asymptotics.

Mode convention (documented, exercised by every mode count in this
package): an index n is a mode when the sequence strictly rises into n and
weakly falls out of it; the left boundary n = 1 counts when value(1) >=
value(2); the right boundary never counts; plateau runs collapse to their
first index (the strict-rise requirement does this on its own).

Comparisons are exact for rational sequences.  Float sequences compare
through a relative tie tolerance of 1e-13 so that a genuine plateau
rendered in floating point does not sprout phantom modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import families as fam
from . import priors as pr
from .engine import ExpectedPosteriorSequence, log_expected_posterior_normal
from .families import FamilySpec, DomainError
from .priors import DiscreteAtoms, Prior
from .util import ExactValue

FLOAT_TIE_RTOL = 1e-13
# log-space guard for the float log-concavity scan; second differences of
# closed-form log values carry ~5e-15 rounding noise, signals sit above 1e-13
LC_FLOAT_GUARD = 1e-14


def _comparator(values):
    """Three-way compare; exact for ExactValue/Fraction, guarded for floats."""
    if values and isinstance(values[0], float):

        def cmp(i: int, j: int) -> int:
            a, b = values[i], values[j]
            if math.isclose(a, b, rel_tol=FLOAT_TIE_RTOL, abs_tol=0.0):
                return 0
            return 1 if a > b else -1

        return cmp

    def cmp(i: int, j: int) -> int:
        a, b = values[i], values[j]
        if a == b:
            return 0
        return 1 if a > b else -1

    return cmp


def _values_of(seq) -> list:
    return seq.values if isinstance(seq, ExpectedPosteriorSequence) else list(seq)


def _exact_log(v) -> float:
    if isinstance(v, ExactValue):
        return v.log()
    f = Fraction(v)
    return ExactValue(f.numerator, f.denominator).log()


def detect_modes(seq) -> list[int]:
    """Indices (1-based) of local maxima under the documented convention."""
    values = _values_of(seq)
    n = len(values)
    if n < 3:
        raise DomainError("mode detection needs a horizon of at least 3")
    cmp = _comparator(values)
    modes = []
    if cmp(0, 1) >= 0:
        modes.append(1)
    for i in range(1, n - 1):
        if cmp(i, i - 1) > 0 and cmp(i, i + 1) >= 0:
            modes.append(i + 1)
    return modes


def detect_minima(seq) -> list[int]:
    """Local minima: the mode convention applied to the mirrored sequence
    (strict fall into n, weak rise out; left boundary counts; right never)."""
    values = _values_of(seq)
    n = len(values)
    if n < 3:
        raise DomainError("minimum detection needs a horizon of at least 3")
    cmp = _comparator(values)
    minima = []
    if cmp(0, 1) <= 0:
        minima.append(1)
    for i in range(1, n - 1):
        if cmp(i, i - 1) < 0 and cmp(i, i + 1) <= 0:
            minima.append(i + 1)
    return minima


def logconcavity_scan(seq) -> list[int]:
    """All interior n with value(n)^2 < value(n-1) value(n+1), exact."""
    values = _values_of(seq)
    n = len(values)
    if n < 3:
        raise DomainError("log-concavity scan needs a horizon of at least 3")
    if isinstance(values[0], float):
        logs = (
            seq.log_values
            if isinstance(seq, ExpectedPosteriorSequence)
            else [math.log(v) for v in values]
        )
        out = []
        for i in range(1, n - 1):
            lhs = 2.0 * logs[i]
            rhs = logs[i - 1] + logs[i + 1]
            scale = max(1.0, abs(lhs), abs(rhs))
            if rhs - lhs > LC_FLOAT_GUARD * scale:
                out.append(i + 1)
        return out
    # exact branch: a guarded log fast path decides all comparisons whose
    # gap exceeds 1e-9 (log errors sit near 1e-14); only near-ties pay for
    # the exact big-integer cross products
    logs = (
        seq.log_values
        if isinstance(seq, ExpectedPosteriorSequence)
        else [_exact_log(v) for v in values]
    )
    out = []
    for i in range(1, n - 1):
        lhs_log = 2.0 * logs[i]
        rhs_log = logs[i - 1] + logs[i + 1]
        gap = rhs_log - lhs_log
        if abs(gap) > 1e-9 * max(1.0, abs(lhs_log), abs(rhs_log)):
            if gap > 0:
                out.append(i + 1)
            continue
        lhs = values[i] * values[i]
        rhs = values[i - 1] * values[i + 1]
        if lhs < rhs:
            out.append(i + 1)
    return out


def eventual_decrease_index(seq) -> int | None:
    """Smallest n with the sequence strictly decreasing on [n, N]; None if
    the tail does not decrease."""
    values = _values_of(seq)
    n = len(values)
    if n < 2:
        raise DomainError("eventual-decrease scan needs a horizon of at least 2")
    cmp = _comparator(values)
    last_rise = None
    for i in range(n - 1):
        if cmp(i, i + 1) <= 0:
            last_rise = i
    if last_rise is None:
        return 1
    if last_rise == n - 2:
        return None
    return last_rise + 2


@dataclass
class DiagnosticsReport:
    modes: list[int]
    minima: list[int]
    logconcavity_violations: list[int]
    eventual_decrease: int | None
    log_convex_prefix_end: float | None = None
    critical_points: list[tuple[float, str]] = field(default_factory=list)
    asymptotic_ratios: list[tuple[int, float]] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "modes": self.modes,
            "mode_count": len(self.modes),
            "minima": self.minima,
            "logconcavity_violations": self.logconcavity_violations,
            "eventual_decrease": self.eventual_decrease,
            "log_convex_prefix_end": self.log_convex_prefix_end,
            "critical_points": [
                {"n": n, "kind": kind} for n, kind in self.critical_points
            ],
            "asymptotic_ratios": [
                {"n": n, "ratio": r} for n, r in self.asymptotic_ratios
            ],
        }


def _log_spaced(n_max: int, count: int = 20) -> list[int]:
    if n_max <= count:
        return list(range(1, n_max + 1))
    points = {1, n_max}
    for i in range(1, count):
        points.add(max(1, round(n_max ** (i / count))))
    return sorted(points)


def analyze(seq: ExpectedPosteriorSequence, prior=None) -> DiagnosticsReport:
    """Full scan of a sequence; adds the continuous-n analysis for the
    normal closed form and, when a continuous prior is supplied, the
    growth-law ratio table at log-spaced indices.  Checks the unimodality
    implication: an empty violation list must come with at most one
    interior mode."""
    modes = detect_modes(seq)
    minima = detect_minima(seq)
    violations = logconcavity_scan(seq)
    decrease = eventual_decrease_index(seq)
    report = DiagnosticsReport(modes, minima, violations, decrease)
    if not violations:
        interior = [m for m in modes if m > 1]
        if len(interior) > 1:
            raise AssertionError(
                f"log-concave scan empty but interior modes {interior} found; "
                "the unimodality implication failed"
            )
    if seq.family.kind == fam.NORMAL and seq.method == "closed_form_normal":
        sigma = seq.family.sigma
        report.critical_points = normal_critical_points(
            float(seq.theta0), float(seq.theta1), sigma
        )
        report.log_convex_prefix_end = normal_log_convex_prefix_end(
            0.5 * (float(seq.theta0) + float(seq.theta1)), sigma
        )
    if prior is not None and not isinstance(prior, DiscreteAtoms):
        for n in _log_spaced(seq.horizon):
            asym = asymptotic_expected_posterior(
                seq.family, prior, seq.theta0, seq.theta1, n
            )
            report.asymptotic_ratios.append((n, float(seq.value(n)) / asym))
    return report


# ---------------------------------------------------------------------------
# asymptotic equivalents
# ---------------------------------------------------------------------------


def sqrt_n_constant(family: FamilySpec, theta: float) -> float:
    """sqrt(I(theta) / (2 pi)): the density scale of the √n growth law."""
    return math.sqrt(fam.fisher_information(family, theta) / (2.0 * math.pi))


def asymptotic_expected_posterior(
    family: FamilySpec, prior: Prior, theta0, theta1, n: float
) -> float:
    """The asymptotic equivalent of the expected posterior at n.

    Diagonal: sqrt(I(theta0)) / (2 sqrt(pi)) * sqrt(n).  Off-diagonal the
    same constant at the midpoint parameter, scaled by the prior density
    ratio and the n-th power of the affinity.  Requires a continuous prior
    with positive density at the relevant parameter.
    """
    if isinstance(prior, DiscreteAtoms):
        raise DomainError("asymptotics require continuous prior")
    t0, t1 = float(theta0), float(theta1)
    if t0 == t1:
        if pr.prior_log_density(prior, t0) == float("-inf"):
            raise DomainError(f"prior density vanishes at theta={t0}")
        return 0.5 * math.sqrt(fam.fisher_information(family, t0) / math.pi) * math.sqrt(n)
    mid, affinity = fam.bhattacharyya_reduction(family, t0, t1)
    lr = pr.prior_log_density(prior, t0) - pr.prior_log_density(prior, mid)
    if not math.isfinite(lr):
        raise DomainError("prior density vanishes at theta0 or the midpoint")
    const = 0.5 * math.sqrt(fam.fisher_information(family, mid) / math.pi)
    return math.exp(lr + n * math.log(affinity)) * const * math.sqrt(n)


# ---------------------------------------------------------------------------
# continuous-n analysis of the normal closed form
# ---------------------------------------------------------------------------


def _normal_gamma(n: float, theta: float, sigma: float) -> float:
    """Sign carrier of the second log-derivative; strictly decreasing in n."""
    s2 = sigma * sigma
    return ((s2 * s2 - 2.0 * n * n) * (2.0 * n + s2)) / ((n + s2) ** 2) - 4.0 * theta**2 * s2


def _normal_log_slope(n: float, theta: float, sigma: float) -> float:
    """d/dn of the diagonal log closed form at midpoint parameter theta."""
    s2 = sigma * sigma
    return 1.0 / (n + s2) - 1.0 / (2.0 * n + s2) + theta * theta * s2 / (2.0 * n + s2) ** 2


_N_LO = 1e-6
_N_HI = 1e9


def _bisect(fn, lo: float, hi: float, decreasing: bool, rel_tol: float = 1e-6) -> float:
    """Root of a monotone sign change on [lo, hi]."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * max(1.0, abs(mid)):
            return mid
        v = fn(mid)
        if (v > 0) == decreasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def normal_log_convex_prefix_end(theta: float, sigma: float) -> float:
    """The continuous n at which the sequence turns from log-convex to
    log-concave; 0 when it is log-concave from the start."""
    if not sigma > 0:
        raise DomainError(f"sigma={sigma} must be > 0")
    if _normal_gamma(_N_LO, theta, sigma) <= 0:
        return 0.0
    return _bisect(lambda n: _normal_gamma(n, theta, sigma), _N_LO, _N_HI, decreasing=True)


def normal_critical_points(theta0: float, theta1: float, sigma: float) -> list[tuple[float, str]]:
    """Continuous-n critical points of the off-diagonal normal sequence.

    The log-slope of the full sequence is the diagonal slope plus the log
    affinity; the second derivative changes sign at most once (from + to -),
    so there are at most two roots: a minimum in the log-convex region and
    a maximum in the log-concave region.
    """
    if not sigma > 0:
        raise DomainError(f"sigma={sigma} must be > 0")
    t0, t1 = float(theta0), float(theta1)
    if t0 == t1:
        return []
    mid = 0.5 * (t0 + t1)
    log_aff = -((t0 - t1) ** 2) / (4.0 * sigma * sigma)

    def slope(n: float) -> float:
        return _normal_log_slope(n, mid, sigma) + log_aff

    peak = normal_log_convex_prefix_end(mid, sigma)
    out: list[tuple[float, str]] = []
    if peak <= _N_LO:
        # slope strictly decreasing: at most one root, a maximum
        if slope(_N_LO) > 0 > slope(_N_HI):
            out.append((_bisect(slope, _N_LO, _N_HI, decreasing=True), "max"))
        return out
    if slope(peak) <= 0:
        return []
    if slope(_N_LO) < 0:
        out.append((_bisect(slope, _N_LO, peak, decreasing=False), "min"))
    if slope(_N_HI) < 0:
        out.append((_bisect(slope, peak, _N_HI, decreasing=True), "max"))
    return out
