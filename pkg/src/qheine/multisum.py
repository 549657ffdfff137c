"""Generic evaluator for n-fold series with shell-based truncation.

A series side is a term function over multi-indices plus a prefactor.  The
sum is taken shell by shell (constant total weight |k|), in lexicographic
order inside each shell, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from mpmath import mp, mpf, mpmathify

from .errors import (
    DegenerateVariables,
    DivisionByZero,
    DomainViolation,
    LengthMismatch,
    PoleEncountered,
    TruncationNotConverged,
)
from .qcore import BaseSystem, PochCache, QComplex

MultiIndex = tuple[int, ...]

_TINY = mpf(10) ** -300


def weight(k: Sequence[int]) -> int:
    """Total weight |k| of a multi-index."""
    return sum(k)


def enumerate_shell(dimension: int, shell_weight: int) -> list[MultiIndex]:
    """All compositions of ``shell_weight`` into ``dimension`` non-negative
    parts, in lexicographic order; there are C(w+n-1, n-1) of them."""
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    if shell_weight < 0:
        raise ValueError("shell weight must be >= 0")
    if dimension == 1:
        return [(shell_weight,)]
    out: list[MultiIndex] = []
    for first in range(shell_weight + 1):
        for rest in enumerate_shell(dimension - 1, shell_weight - first):
            out.append((first,) + rest)
    return out


def shell_size(dimension: int, shell_weight: int) -> int:
    return math.comb(shell_weight + dimension - 1, dimension - 1)


def vandermonde_factor(x: Sequence, k: Sequence[int], step_power) -> QComplex:
    """Type-A Vandermonde factor in product form:
    prod_{r<s} (x_r*S^{k_r} - x_s*S^{k_s}) / (x_r - x_s) with S = step_power."""
    if len(x) != len(k):
        raise LengthMismatch("x and k must have the same length")
    step = mpmathify(step_power)
    n = len(x)
    value = mpf(1)
    for r in range(n):
        for s in range(r + 1, n):
            den = x[r] - x[s]
            if den == 0:
                raise DegenerateVariables(f"x[{r}] == x[{s}]")
            value *= (x[r] * step ** k[r] - x[s] * step ** k[s]) / den
    return value


def vandermonde_ratio(x: Sequence, k: Sequence[int], step_power) -> QComplex:
    """Type-A Vandermonde factor in ratio form:
    prod_{r<s} (1 - S^{k_r-k_s} x_r/x_s) / (1 - x_r/x_s).

    Equals vandermonde_factor times S^{-sum_r (r-1) k_r}; series displays in
    the catalog use this form together with an explicit power factor.
    """
    if len(x) != len(k):
        raise LengthMismatch("x and k must have the same length")
    step = mpmathify(step_power)
    n = len(x)
    value = mpf(1)
    for r in range(n):
        for s in range(r + 1, n):
            ratio = x[r] / x[s]
            den = 1 - ratio
            if den == 0:
                raise DegenerateVariables(f"x[{r}] == x[{s}]")
            value *= (1 - step ** (k[r] - k[s]) * ratio) / den
    return value


@dataclass
class EvalContext:
    """Bundle of parameter values, base system, and per-run product cache."""

    params: Mapping
    bases: BaseSystem
    poch: PochCache


def make_context(params: Mapping, bases: BaseSystem, tol=None) -> EvalContext:
    return EvalContext(params=params, bases=bases, poch=PochCache(bases.prec, tol))


@dataclass(frozen=True)
class SeriesSide:
    """One side of an identity: an n-fold sum with a prefactor.

    ``dimension == 0`` denotes a pure product side (the empty sum equals 1).
    ``term`` maps (ctx, multi-index) to a scalar; ``prefactor`` and ``domain``
    take the context alone.
    """

    dimension: int
    term: Callable[[EvalContext, MultiIndex], QComplex] = lambda ctx, k: mpf(1)
    prefactor: Callable[[EvalContext], QComplex] = lambda ctx: mpf(1)
    domain: Callable[[EvalContext], bool] = lambda ctx: True


@dataclass(frozen=True)
class TruncationPolicy:
    """Shell truncation: sum shells |k| = 0..max_shell_weight, stopping early
    once two consecutive shells each contribute less than tail_ratio_tol
    times the partial sum (after min_shells shells)."""

    max_shell_weight: int = 40
    tail_ratio_tol: float = 1e-24
    min_shells: int = 6


@dataclass
class Diagnostics:
    shells: int = 0
    terms: int = 0
    last_shell_abs: mpf = field(default_factory=lambda: mpf(0))
    last_shell_ratio: mpf = field(default_factory=lambda: mpf(0))
    tail_bound: mpf = field(default_factory=lambda: mpf(0))
    converged: bool = True


def evaluate_in_context(
    side: SeriesSide, ctx: EvalContext, policy: TruncationPolicy | None = None
) -> tuple[QComplex, Diagnostics]:
    """Sum one series side under a shared evaluation context."""
    if policy is None:
        policy = TruncationPolicy()
    if not side.domain(ctx):
        raise DomainViolation("parameter point outside the series domain")
    prec = ctx.bases.prec
    with mp.workprec(prec):
        pref = side.prefactor(ctx)
        if side.dimension == 0:
            return pref, Diagnostics(shells=0, terms=0, converged=True)

        tail_tol = mpmathify(policy.tail_ratio_tol)
        total = mpf(0)
        diag = Diagnostics()
        small_streak = 0
        prev_shell_abs = None
        shell_abs = mpf(0)
        for w in range(policy.max_shell_weight + 1):
            shell_sum = mpf(0)
            for k in enumerate_shell(side.dimension, w):
                try:
                    shell_sum += side.term(ctx, k)
                except (ZeroDivisionError, DivisionByZero) as exc:
                    raise PoleEncountered(
                        f"zero denominator at index {k}: {exc}"
                    ) from exc
                diag.terms += 1
            total += shell_sum
            diag.shells = w + 1
            prev_shell_abs = shell_abs if w > 0 else None
            shell_abs = abs(shell_sum)
            ratio = shell_abs / max(abs(total), _TINY)
            diag.last_shell_abs = shell_abs
            diag.last_shell_ratio = ratio
            if w >= policy.min_shells and ratio < tail_tol:
                small_streak += 1
                if small_streak >= 2:
                    break
            else:
                small_streak = 0
        else:
            diag.converged = False
            warnings.warn(
                "tail ratio never fell below tolerance before the shell cap",
                TruncationNotConverged,
                stacklevel=2,
            )

        # Geometric tail estimate from the last two shells, floored at the
        # precision noise level so the bound is never vacuously zero.
        if prev_shell_abs is not None and prev_shell_abs > 0:
            decay = shell_abs / prev_shell_abs
        else:
            decay = mpf(0)
        if decay >= mpf("0.95"):
            decay = mpf("0.95")
        geo_tail = shell_abs * decay / (1 - decay) * 4
        noise = abs(total) * mpf(2) ** (-prec + 4)
        diag.tail_bound = abs(pref) * max(geo_tail, shell_abs * tail_tol, noise)
        diag.tail_bound = max(diag.tail_bound, _TINY)

        value = pref * total
    return value, diag


def evaluate(
    side: SeriesSide,
    params: Mapping,
    bases: BaseSystem,
    policy: TruncationPolicy | None = None,
) -> tuple[QComplex, Diagnostics]:
    """Sum one series side; builds a fresh product cache for the run."""
    return evaluate_in_context(side, make_context(params, bases), policy)
