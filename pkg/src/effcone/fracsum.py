"""Fractional-part sums and their exact mediant-style reduction machinery.

The central object is the deficit

    deficit(beta, u, alpha) = (u+1)(beta-1)/(2*beta) - sum_{j=0}^{u} {alpha*j/beta}

for coprime alpha, beta and 0 <= u < beta, i.e. how far the partial
fractional-part sum falls short of its equidistributed average.  A single
reduction step replaces (alpha0, beta0) by a smaller pair (alpha1, beta1)
with alpha1*beta0 - beta1*alpha0 = sigma = +-1 at the cost of an explicit
rational correction (:func:`step_error`); chaining steps down to (1, 2)
evaluates the deficit in closed form (:func:`reduce_chain`).

The step-error formula carries an integer jump term Delta.  Two policies are
implemented (see :func:`step_error`): ``"paper"`` uses the literal published
condition, ``"calibrated"`` solves for the value that makes the one-step
reduction identity exact and asserts it lies in {0, 1}.  Exhaustive
calibration (see the verify module) shows the two disagree on a documented
set of sigma = -1 configurations; downstream chain reductions default to the
calibrated policy so that totals always equal the directly-summed deficit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .numerics import mod_inverse

__all__ = [
    "frac_sum",
    "deficit",
    "floor_sum",
    "ceil_sum",
    "full_sum",
    "step_error",
    "step_error_bounds",
    "StepErrorBounds",
    "ReductionChain",
    "ReductionStep",
    "ReductionTrace",
    "reduce_chain",
    "standard_chain",
]

DELTA_POLICIES = ("paper", "calibrated")


def frac_sum(alpha: int, beta: int, u: int) -> Fraction:
    """Direct evaluation of sum_{j=0}^{u} {alpha*j/beta}.

    This is the oracle every closed form in this module is tested against;
    it intentionally has no cleverness.  ``alpha`` may be any integer,
    ``beta`` any positive integer, ``u >= 0``.
    """
    if beta < 1:
        raise ValueError(f"require beta >= 1, got {beta}")
    if u < 0:
        raise ValueError(f"require u >= 0, got {u}")
    return Fraction(sum((alpha * j) % beta for j in range(u + 1)), beta)


def deficit(beta: int, u: int, alpha: int) -> Fraction:
    """(u+1)(beta-1)/(2*beta) - sum_{j=0}^{u} {alpha*j/beta}.

    Requires gcd(alpha, beta) = 1 and 0 <= u < beta: the deficit compares a
    single period's partial sum against the equidistributed mean.

    >>> deficit(2, 0, 1)
    Fraction(1, 4)
    >>> deficit(5, 1, 2)
    Fraction(2, 5)
    """
    if beta < 1:
        raise ValueError(f"require beta >= 1, got {beta}")
    if gcd(alpha, beta) != 1:
        raise ValueError(f"require gcd(alpha, beta) = 1, got ({alpha}, {beta})")
    if not 0 <= u < beta:
        raise ValueError(f"require 0 <= u < beta, got u = {u}, beta = {beta}")
    return Fraction((u + 1) * (beta - 1), 2 * beta) - frac_sum(alpha, beta, u)


def floor_sum(alpha: int, beta: int) -> int:
    """sum_{k=0}^{beta-1} floor(alpha*k/beta) = (alpha-1)(beta-1)/2 for coprime inputs."""
    if alpha < 1 or beta < 1:
        raise ValueError(f"require positive inputs, got ({alpha}, {beta})")
    if gcd(alpha, beta) != 1:
        raise ValueError(f"require gcd(alpha, beta) = 1, got ({alpha}, {beta})")
    return (alpha - 1) * (beta - 1) // 2


def ceil_sum(alpha: int, beta: int) -> int:
    """sum_{k=0}^{beta-1} ceil(alpha*k/beta) = (alpha+1)(beta-1)/2 for coprime inputs.

    Differs from :func:`floor_sum` by beta - 1: every k != 0 rounds up.
    """
    if alpha < 1 or beta < 1:
        raise ValueError(f"require positive inputs, got ({alpha}, {beta})")
    if gcd(alpha, beta) != 1:
        raise ValueError(f"require gcd(alpha, beta) = 1, got ({alpha}, {beta})")
    return (alpha + 1) * (beta - 1) // 2


def full_sum(alpha0: int, beta0: int, beta1: int, sigma: int) -> Fraction:
    """Closed form for sum_{j=0}^{beta1} {alpha0*j/beta0}.

    Requires a partner alpha1 >= 1 with alpha1*beta0 - beta1*alpha0 = sigma
    (sigma = +-1) and 1 <= beta1 < beta0; the value is then
    (1 - sigma + (beta1 + sigma)(beta0 - sigma)) / (2*beta0).

    >>> full_sum(3, 5, 2, -1)
    Fraction(4, 5)
    >>> full_sum(2, 5, 2, 1)
    Fraction(6, 5)
    """
    if sigma not in (-1, 1):
        raise ValueError(f"sigma must be +-1, got {sigma}")
    if not 1 <= beta1 < beta0:
        raise ValueError(f"require 1 <= beta1 < beta0, got ({beta1}, {beta0})")
    if gcd(alpha0, beta0) != 1:
        raise ValueError(f"require gcd(alpha0, beta0) = 1, got ({alpha0}, {beta0})")
    if (sigma + beta1 * alpha0) % beta0 != 0:
        raise ValueError(
            f"no integer alpha1 solves alpha1*{beta0} - {beta1}*{alpha0} = {sigma}"
        )
    alpha1 = (sigma + beta1 * alpha0) // beta0
    if alpha1 < 1:
        raise ValueError(
            f"partner alpha1 = {alpha1} is not positive for "
            f"({alpha0}, {beta0}, {beta1}, sigma={sigma})"
        )
    return Fraction(1 - sigma + (beta1 + sigma) * (beta0 - sigma), 2 * beta0)


def _step_error_base(sigma: int, t: int, u: int, beta0: int, beta1: int) -> Fraction:
    """The Delta-free part of the one-step reduction error."""
    first = Fraction((u + 1) * (sigma * u + beta0 - beta1), 2 * beta0 * beta1)
    second = Fraction(sigma * t * (beta1 * (t - sigma) + 2 * u + 1 - beta0), 2 * beta0)
    return first + second


def _canonical_partner(sigma: int, beta0: int, beta1: int) -> tuple[int, int]:
    """The unique alpha0 in [1, beta0) (with partner alpha1) realizing
    alpha1*beta0 - beta1*alpha0 = sigma; bumps representatives when the
    least one gives alpha1 = 0 (only possible for beta1 = 1, sigma = -1)."""
    alpha0 = (-sigma * mod_inverse(beta1, beta0)) % beta0
    alpha1 = (sigma + beta1 * alpha0) // beta0
    if alpha1 == 0:
        alpha0 += beta0
        alpha1 += beta1
    return alpha0, alpha1


def paper_delta(sigma: int, t: int, u: int, beta0: int, beta1: int) -> int:
    """The literal published jump condition: 1 iff sigma = -1 and
    beta0 - beta1 <= beta1*t + u."""
    return 1 if sigma == -1 and beta0 - beta1 <= beta1 * t + u else 0


def calibrated_delta(sigma: int, t: int, u: int, beta0: int, beta1: int) -> int:
    """The jump that makes the one-step reduction identity exact.

    Solved from deficit(beta0, u0, alpha0) = deficit(beta1, u, alpha1)
    + base + Delta with u0 = beta1*t + u, using the canonical coprime
    partner pair (the identity depends on alpha0 only through its residue
    class mod beta0, so the canonical representative is fully general).
    Asserted to lie in {0, 1}; anything else falsifies the model.
    """
    u0 = beta1 * t + u
    if u0 >= beta0:
        raise ValueError(
            f"calibrated jump needs beta1*t + u < beta0, got {u0} >= {beta0}"
        )
    alpha0, alpha1 = _canonical_partner(sigma, beta0, beta1)
    base = _step_error_base(sigma, t, u, beta0, beta1)
    delta = deficit(beta0, u0, alpha0) - deficit(beta1, u, alpha1) - base
    if delta.denominator != 1 or delta.numerator not in (0, 1):
        raise ValueError(
            f"calibrated jump {delta} outside {{0, 1}} at "
            f"(sigma={sigma}, t={t}, u={u}, beta0={beta0}, beta1={beta1})"
        )
    return delta.numerator


def step_error(
    sigma: int, t: int, u: int, beta0: int, beta1: int, delta: str = "paper"
) -> Fraction:
    """Error of one reduction step from denominator beta0 down to beta1.

    Evaluates
        (u+1)(sigma*u + beta0 - beta1)/(2*beta0*beta1)
        + sigma*t*(beta1*(t - sigma) + 2u + 1 - beta0)/(2*beta0)
        + Delta
    for sigma = +-1 and 0 <= u < beta1 < beta0, with Delta chosen by
    ``delta`` ("paper" or "calibrated"; see the module docstring).

    >>> step_error(1, 0, 1, 5, 2)
    Fraction(2, 5)
    >>> step_error(-1, 0, 1, 5, 2)
    Fraction(1, 5)
    """
    if sigma not in (-1, 1):
        raise ValueError(f"sigma must be +-1, got {sigma}")
    if not 0 <= u < beta1 < beta0:
        raise ValueError(
            f"require 0 <= u < beta1 < beta0, got u = {u}, beta1 = {beta1}, beta0 = {beta0}"
        )
    if t < 0:
        raise ValueError(f"require t >= 0, got {t}")
    if delta == "paper":
        jump = paper_delta(sigma, t, u, beta0, beta1)
    elif delta == "calibrated":
        jump = calibrated_delta(sigma, t, u, beta0, beta1)
    else:
        raise ValueError(f"unknown delta policy {delta!r}; expected one of {DELTA_POLICIES}")
    return _step_error_base(sigma, t, u, beta0, beta1) + jump


@dataclass(frozen=True)
class StepErrorBounds:
    """Published range bounds for the one-step error at fixed (sigma, beta0, beta1)."""

    lower: Fraction
    upper_small: Fraction  # regime u + beta1*t < beta0 - beta1 (sigma = -1 only)
    upper_large: Fraction


def step_error_bounds(sigma: int, beta0: int, beta1: int) -> StepErrorBounds:
    """The published lower/upper bounds on the step error over admissible (t, u).

    For sigma = +1 both uppers coincide.  For sigma = -1 the small-regime
    upper applies when u + beta1*t < beta0 - beta1 and the large-regime
    upper is the trivial 1.  These are the bounds as published; the
    small-regime sigma = -1 upper is falsified by the exhaustive grid (see
    the test-suite), which is reported rather than patched.
    """
    if sigma not in (-1, 1):
        raise ValueError(f"sigma must be +-1, got {sigma}")
    if not 2 <= beta1 < beta0:
        raise ValueError(f"require 2 <= beta1 < beta0, got ({beta1}, {beta0})")
    if sigma == 1:
        lower = Fraction(-((beta0 + beta1 - 1) ** 2) + 4 * (beta0 - beta1), 8 * beta0 * beta1)
        upper = Fraction(beta0 - 1, 2 * beta0)
        return StepErrorBounds(lower=lower, upper_small=upper, upper_large=upper)
    lower = Fraction(beta0 - beta1, 2 * beta0 * beta1)
    upper_small = Fraction(
        (beta0 - beta1 + 3) * (beta0 - beta1 - 1), 8 * beta0 * beta1
    )
    return StepErrorBounds(lower=lower, upper_small=upper_small, upper_large=Fraction(1))


@dataclass(frozen=True)
class ReductionChain:
    """A decreasing sequence of coprime pairs linked by +-1 determinants.

    ``pairs[0]`` is the head (alpha_0, beta_0); ``sigmas[i]`` is the
    determinant alpha_{i+1}*beta_i - beta_{i+1}*alpha_i of the link from
    pairs[i] to pairs[i+1].  ``lead_sigma``, if set, is the determinant a
    future :meth:`prepend` head must realize (used by the standard chains,
    which are published without their surface-dependent head).

    The betas must strictly decrease on every link (each step's Euclidean
    division needs it) and the alphas on every link but the last, where a
    repeat such as (1, 3) -> (1, 2) is legal: given the determinant and the
    beta drop, alpha_i <= alpha_{i-1} holds automatically, and the terminal
    pair plays no further role in any division.
    """

    pairs: tuple[tuple[int, int], ...]
    sigmas: tuple[int, ...] = field(default=())
    lead_sigma: int | None = None

    def __post_init__(self) -> None:
        if not self.pairs:
            raise ValueError("chain needs at least one (alpha, beta) pair")
        if len(self.sigmas) != len(self.pairs) - 1:
            raise ValueError(
                f"{len(self.pairs)} pairs need {len(self.pairs) - 1} sigmas, "
                f"got {len(self.sigmas)}"
            )
        for alpha, beta in self.pairs:
            if alpha < 1 or beta < 1:
                raise ValueError(f"pairs must be positive, got ({alpha}, {beta})")
        a0, b0 = self.pairs[0]
        if gcd(a0, b0) != 1:
            raise ValueError(f"head pair ({a0}, {b0}) is not coprime")
        last = len(self.pairs) - 1
        for i in range(1, len(self.pairs)):
            ap, bp = self.pairs[i - 1]
            ai, bi = self.pairs[i]
            if not (bi < bp and (ai < ap or (i == last and ai <= ap))):
                raise ValueError(
                    f"pairs must strictly decrease, got ({ap}, {bp}) -> ({ai}, {bi})"
                )
            det = ai * bp - bi * ap
            if det != self.sigmas[i - 1]:
                raise ValueError(
                    f"link {i} determinant {det} != declared sigma {self.sigmas[i - 1]}"
                )
            if det not in (-1, 1):
                raise ValueError(f"link {i} determinant {det} is not +-1")
        if self.lead_sigma is not None and self.lead_sigma not in (-1, 1):
            raise ValueError(f"lead_sigma must be +-1 or None, got {self.lead_sigma}")

    def prepend(self, alpha0: int, beta0: int) -> "ReductionChain":
        """Attach a new head; its link must realize the declared lead_sigma."""
        if self.lead_sigma is None:
            raise ValueError("chain declares no lead_sigma; nothing to prepend against")
        return ReductionChain(
            pairs=((alpha0, beta0),) + self.pairs,
            sigmas=(self.lead_sigma,) + self.sigmas,
            lead_sigma=None,
        )


@dataclass(frozen=True)
class ReductionStep:
    """One executed link: the target pair, its sigma, the Euclidean split
    u_prev = beta*t + u, and the incurred error."""

    alpha: int
    beta: int
    sigma: int
    t: int
    u: int
    error: Fraction


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    terminal: Fraction
    total: Fraction


def reduce_chain(chain: ReductionChain, u0: int, delta: str = "calibrated") -> ReductionTrace:
    """Run the chain: deficit(beta_0, u0, alpha_0) = terminal + sum of step errors.

    Under the calibrated policy the identity is exact by construction of
    each step's jump; under the paper policy the total can drift from the
    true deficit by the documented jump disagreements.  When the chain ends
    at (1, 2) the terminal deficit is 1/4 (if u_N = 0) or 0 (if u_N = 1).
    """
    a0, b0 = chain.pairs[0]
    if not 0 <= u0 < b0:
        raise ValueError(f"require 0 <= u0 < beta_0 = {b0}, got {u0}")
    steps = []
    u_prev = u0
    total_error = Fraction(0)
    for i in range(1, len(chain.pairs)):
        alpha, beta = chain.pairs[i]
        sigma = chain.sigmas[i - 1]
        t, u = divmod(u_prev, beta)
        err = step_error(sigma, t, u, chain.pairs[i - 1][1], beta, delta=delta)
        steps.append(ReductionStep(alpha=alpha, beta=beta, sigma=sigma, t=t, u=u, error=err))
        total_error += err
        u_prev = u
    alpha_n, beta_n = chain.pairs[-1]
    terminal = deficit(beta_n, u_prev, alpha_n)
    return ReductionTrace(steps=tuple(steps), terminal=terminal, total=terminal + total_error)


def standard_chain(entry: int, k: int, c_case: bool = False) -> ReductionChain:
    """The four published reduction chains, parametrized by k.

    Entry 1 requires k >= 2 (its tail pair (k-1, 2k-1) degenerates at
    k = 1).  Entry 3 at k = 1 produces (1, 4) -> (1, 3) -> (1, 2), whose
    repeated alpha on a non-final link fails chain validation; it is
    rejected loudly rather than silently repaired.  ``c_case`` flips the
    lead sigma from +1 to -1 (the variant used when the head comes from a
    family-C bound).
    """
    if k < 1:
        raise ValueError(f"require k >= 1, got {k}")
    if entry == 1:
        if k < 2:
            raise ValueError("entry 1 requires k >= 2")
        rows = [
            (8 * k * k - 4 * k - 1, 16 * k * k, 1),
            (4 * k * k - 4 * k + 1, 8 * k * k - 4 * k + 1, 1),
            (4 * k - 3, 8 * k - 2, -1),
            (k - 1, 2 * k - 1, -1),
            (1, 2, 1),
        ]
    elif entry == 2:
        rows = [
            (8 * k * k + 4 * k - 1, 4 * (2 * k + 1) ** 2, 1),
            (4 * k * k, 8 * k * k + 4 * k + 1, 1),
            (4 * k - 1, 8 * k + 2, -1),
            (k, 2 * k + 1, 1),
            (1, 2, 1),
        ]
    elif entry == 3:
        rows = [
            (2 * k - 1, 4 * k, 1),
            (k, 2 * k + 1, 1),
            (1, 2, 1),
        ]
    elif entry == 4:
        rows = [
            (k, 2 * k + 1, 1),
            (1, 2, 1),
        ]
    else:
        raise ValueError(f"entry must be in 1..4, got {entry}")
    lead = -rows[0][2] if c_case else rows[0][2]
    return ReductionChain(
        pairs=tuple((alpha, beta) for alpha, beta, _ in rows),
        sigmas=tuple(sigma for _, _, sigma in rows[1:]),
        lead_sigma=lead,
    )
