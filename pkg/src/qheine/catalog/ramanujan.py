"""Ramanujan-style 2phi1 specialisations and their multivariable extensions.

These entries use variable vectors specialised to geometric progressions in
the base, which collapses the generic Vandermonde factor to pure q-powers and
introduces the quadratic exponents typical of this family.  Each side is
written exactly as displayed; no cross-side cancellation is performed.
"""

from __future__ import annotations

from mpmath import mpf

from ..multisum import SeriesSide, TruncationPolicy
from ..qcore import e2
from .core import (
    IdentityFamily,
    ParamSpec,
    argument,
    coefficient,
    geom,
    staircase,
    tri,
    vande,
)

__all__ = ["FAMILIES"]

# Entries whose summands decay only like q^{|k|} need far more shells than
# the argument-controlled families; at q = 0.6 roughly 110 shells reach 1e-24.
_SLOW_POLICY = TruncationPolicy(max_shell_weight=170)


# -- the central bibasic identity behind this family -------------------------


def _ram_core_build(dims):
    def lhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        return (
            P.infinite(p["a"] * B.qt, B.qt)
            * P.infinite(p["c"] * B.q * B.qh, B.qh)
            / (
                P.infinite(-p["b"] * B.q * B.qt, B.qt)
                * P.infinite(p["d"] * B.qh, B.qh)
            )
        )

    def lhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        jj = j[0]
        scale = B.qht ** jj
        return (
            P.finite(-p["b"] * B.q / p["a"], B.qt, jj)
            / P.finite(B.qt, B.qt, jj)
            * P.ratio(p["d"] * B.qh, B.qh, scale)
            / P.ratio(p["c"] * B.q * B.qh, B.qh, scale)
            * (p["a"] * B.qt) ** jj
        )

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        kk = k[0]
        scale = B.qht ** kk
        return (
            P.finite(p["c"] * B.q / p["d"], B.qh, kk)
            / P.finite(B.qh, B.qh, kk)
            * P.ratio(p["a"] * B.qt, B.qt, scale)
            / P.ratio(-p["b"] * B.q * B.qt, B.qt, scale)
            * (p["d"] * B.qh) ** kk
        )

    return SeriesSide(1, lhs_term, lhs_prefactor), SeriesSide(1, rhs_term)


def _ram_core_domain(dims, p, bases):
    if p["a"] == 0 or p["d"] == 0:
        return False
    return abs(p["a"] * bases.qt) < 1 and abs(p["d"] * bases.qh) < 1


def _ram_core_sample(rng, dims, bases):
    return {
        "a": argument(rng) / bases.qt,
        "b": coefficient(rng),
        "c": coefficient(rng),
        "d": argument(rng) / bases.qh,
    }


RAM_CORE = IdentityFamily(
    id="ram_core",
    reference="bibasic transformation central to the Ramanujan 2phi1 family",
    dim_names=(),
    schema=(ParamSpec("a"), ParamSpec("b"), ParamSpec("c"), ParamSpec("d")),
    build=_ram_core_build,
    domain=_ram_core_domain,
    sample=_ram_core_sample,
)


# -- its m-fold to n-fold extension -------------------------------------------


def _ram_1_4_1_anm_build(dims):
    n, m = dims["n"], dims["m"]

    def lhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        value = mpf(1)
        for r in range(1, m + 1):
            value *= P.infinite(p["a"] * q_tm**r, q_tm)
            value /= P.infinite(-p["b"] * B.q * q_tm**r, q_tm)
        value *= P.infinite(p["c"] * B.q * B.qh, B.qh)
        value /= P.infinite(p["d"] * B.qh, B.qh)
        return value

    def lhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        jj = sum(j)
        scale = B.power(B.h * B.t * m * n) ** jj
        value = vande(geom(B.qt, m), j, q_tm)
        for r in range(m):
            value *= P.finite(-p["b"] * B.q / p["a"], q_tm, j[r])
            value /= P.finite(q_tm, q_tm, j[r])
        value *= P.ratio(p["d"] * B.qh, B.qh, scale)
        value /= P.ratio(p["c"] * B.q * B.qh, B.qh, scale)
        return value * (p["a"] * q_tm) ** jj * q_tm ** staircase(j)

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        q_hn = B.power(B.h * n)
        kk = sum(k)
        scale = B.power(B.h * B.t * m * n) ** kk
        value = vande(geom(B.qh, n), k, q_hn)
        for r in range(1, n + 1):
            value *= P.finite(
                p["c"] * B.q * B.power(B.h * (r - n)) / p["d"], B.qh, n * k[r - 1]
            )
            value /= P.finite(B.qh**r, B.qh, n * k[r - 1])
        for r in range(1, m + 1):
            value *= P.ratio(p["a"] * q_tm**r, q_tm, scale)
            value /= P.ratio(-p["b"] * B.q * q_tm**r, q_tm, scale)
        value *= (p["d"] * q_hn) ** kk
        value *= B.qh ** ((n - 1) * staircase(k)) * B.qh ** (n * e2(k))
        return value

    return SeriesSide(m, lhs_term, lhs_prefactor), SeriesSide(n, rhs_term)


def _ram_1_4_1_anm_domain(dims, p, bases):
    if p["a"] == 0 or p["d"] == 0:
        return False
    q_tm = bases.power(bases.t * dims["m"])
    # The n-fold sum inherits max_r |z/x_r| < 1 from its parent
    # transformation; with x_r = q^{h(r-1)} the binding case is |d q^h| < 1,
    # strictly stronger than |d q^{hn}| < 1 once n > 1.
    return abs(p["a"] * q_tm) < 1 and abs(p["d"] * bases.qh) < 1


def _ram_1_4_1_anm_sample(rng, dims, bases):
    q_tm = bases.power(bases.t * dims["m"])
    return {
        "a": argument(rng) / q_tm,
        "b": coefficient(rng),
        "c": coefficient(rng),
        "d": argument(rng) / bases.qh,
    }


RAM_1_4_1_ANM = IdentityFamily(
    id="ram_1_4_1_anm",
    reference="m-fold to n-fold extension of the central bibasic "
    "transformation, variables specialised to geometric progressions",
    dim_names=("n", "m"),
    schema=(ParamSpec("a"), ParamSpec("b"), ParamSpec("c"), ParamSpec("d")),
    build=_ram_1_4_1_anm_build,
    domain=_ram_1_4_1_anm_domain,
    sample=_ram_1_4_1_anm_sample,
    default_dims=(
        {"n": 1, "m": 1},
        {"n": 1, "m": 2},
        {"n": 2, "m": 1},
        {"n": 2, "m": 2},
    ),
)


# -- the sum_k q^k/(q)_k^2 family ---------------------------------------------


def _ram_1_4_10_anm_build(dims):
    n, m = dims["n"], dims["m"]

    def lhs_term(ctx, k):
        P, B = ctx.poch, ctx.bases
        q = B.q
        kk = sum(k)
        value = vande(geom(q, n), k, q**n)
        for r in range(1, n + 1):
            value /= P.finite(q**r, q, n * k[r - 1])
        for r in range(1, m + 1):
            value /= P.finite(q ** (m * r), q**m, n * kk)
        return value * q ** (n * kk + (n - 1) * staircase(k) + n * e2(k))

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        q = B.q
        value = 1 / P.infinite(q, q)
        for r in range(1, m + 1):
            value /= P.infinite(q ** (m * r), q**m)
        return value

    def rhs_term(ctx, j):
        P, B = ctx.poch, ctx.bases
        q = B.q
        jj = sum(j)
        value = vande(geom(q, m), j, q**m) * P.finite(q, q, m * n * jj)
        for r in range(m):
            value /= P.finite(q**m, q**m, j[r])
        exponent = m * staircase(j) + m * sum(tri(jr) for jr in j)
        return value * (-1) ** jj * q**exponent

    return SeriesSide(n, lhs_term), SeriesSide(m, rhs_term, rhs_prefactor)


def _always(dims, p, bases):
    return True


def _no_params(rng, dims, bases):
    return {}


RAM_1_4_10_ANM = IdentityFamily(
    id="ram_1_4_10_anm",
    reference="n-fold to m-fold extension of the classical evaluation of "
    "sum q^k/(q;q)_k^2",
    dim_names=("n", "m"),
    schema=(),
    build=_ram_1_4_10_anm_build,
    domain=_always,
    sample=_no_params,
    default_dims=(
        {"n": 1, "m": 1},
        {"n": 1, "m": 2},
        {"n": 2, "m": 1},
        {"n": 2, "m": 2},
    ),
    policy=_SLOW_POLICY,
)


def _ram_1_4_10_m1_build(dims):
    n = dims["n"]

    def lhs_term(ctx, k):
        P, B = ctx.poch, ctx.bases
        q = B.q
        kk = sum(k)
        value = vande(geom(q, n), k, q**n)
        for r in range(1, n + 1):
            value /= P.finite(q**r, q, n * k[r - 1])
        value /= P.finite(q, q, n * kk)
        return value * q ** (n * kk + (n - 1) * staircase(k) + n * e2(k))

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        return 1 / P.infinite(B.q, B.q) ** 2

    def rhs_term(ctx, j):
        P, B = ctx.poch, ctx.bases
        q = B.q
        jj = j[0]
        return (
            P.finite(q, q, n * jj)
            / P.finite(q, q, jj)
            * (-1) ** jj
            * q ** tri(jj)
        )

    return SeriesSide(n, lhs_term), SeriesSide(1, rhs_term, rhs_prefactor)


RAM_1_4_10_M1 = IdentityFamily(
    id="ram_1_4_10_m1",
    reference="n-fold extension of sum q^k/(q;q)_k^2 against a single "
    "alternating theta-like sum",
    dim_names=("n",),
    schema=(),
    build=_ram_1_4_10_m1_build,
    domain=_always,
    sample=_no_params,
    default_dims=({"n": 1}, {"n": 2}),
    policy=_SLOW_POLICY,
)


def _ram_1_4_10_build(dims):
    def lhs_term(ctx, k):
        P, B = ctx.poch, ctx.bases
        kk = k[0]
        return B.q**kk / P.finite(B.q, B.q, kk) ** 2

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        return 1 / P.infinite(B.q, B.q) ** 2

    def rhs_term(ctx, j):
        B = ctx.bases
        jj = j[0]
        return (-1) ** jj * B.q ** tri(jj)

    return SeriesSide(1, lhs_term), SeriesSide(1, rhs_term, rhs_prefactor)


RAM_1_4_10 = IdentityFamily(
    id="ram_1_4_10",
    reference="classical evaluation of sum q^k/(q;q)_k^2",
    dim_names=(),
    schema=(),
    build=_ram_1_4_10_build,
    domain=_always,
    sample=_no_params,
    policy=_SLOW_POLICY,
)


def _ram_1_4_10_c_build(dims):
    n, m = dims["n"], dims["m"]

    def lhs_term(ctx, j):
        P, B = ctx.poch, ctx.bases
        q = B.q
        qn = q**n
        jj = sum(j)
        value = vande(geom(q, m), j, q**m)
        for r in range(1, m + 1):
            value /= P.finite(q**r, q, m * j[r - 1])
        value /= P.finite(qn, qn, m * jj)
        return value * q ** (m * jj + (m - 1) * staircase(j) + m * e2(j))

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        q = B.q
        qn = q**n
        return 1 / (P.infinite(q, q) * P.infinite(qn, qn))

    def rhs_term(ctx, k):
        P, B = ctx.poch, ctx.bases
        q = B.q
        kk = sum(k)
        value = vande(geom(q, n), k, q**n) * P.finite(q, q, m * n * kk)
        for r in range(1, n + 1):
            value /= P.finite(q**r, q, n * k[r - 1])
        exponent = 2 * n * staircase(k) - n * (n - 1) * kk + sum(
            tri(n * kr) for kr in k
        )
        return value * (-1) ** (n * kk) * q**exponent

    return SeriesSide(m, lhs_term), SeriesSide(n, rhs_term, rhs_prefactor)


RAM_1_4_10_C = IdentityFamily(
    id="ram_1_4_10_c",
    reference="companion m-fold to n-fold extension of sum q^k/(q;q)_k^2 "
    "obtained from the combined-summation transformation",
    dim_names=("n", "m"),
    schema=(),
    build=_ram_1_4_10_c_build,
    domain=_always,
    sample=_no_params,
    default_dims=(
        {"n": 1, "m": 1},
        {"n": 1, "m": 2},
        {"n": 2, "m": 1},
        {"n": 2, "m": 2},
    ),
    policy=_SLOW_POLICY,
)


def _ram_1_4_10_n_single_build(dims):
    n = dims["n"]

    def lhs_term(ctx, j):
        P, B = ctx.poch, ctx.bases
        q = B.q
        qn = q**n
        jj = j[0]
        return q**jj / (P.finite(q, q, jj) * P.finite(qn, qn, jj))

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        q = B.q
        return 1 / (P.infinite(q, q) * P.infinite(q**n, q**n))

    def rhs_term(ctx, k):
        P, B = ctx.poch, ctx.bases
        q = B.q
        kk = sum(k)
        value = vande(geom(q, n), k, q**n) * P.finite(q, q, n * kk)
        for r in range(1, n + 1):
            value /= P.finite(q**r, q, n * k[r - 1])
        exponent = 2 * n * staircase(k) - n * (n - 1) * kk + sum(
            tri(n * kr) for kr in k
        )
        return value * (-1) ** (n * kk) * q**exponent

    return SeriesSide(1, lhs_term), SeriesSide(n, rhs_term, rhs_prefactor)


RAM_1_4_10_N_SINGLE = IdentityFamily(
    id="ram_1_4_10_n_single",
    reference="single-sum form of the companion extension of "
    "sum q^k/(q;q)_k^2",
    dim_names=("n",),
    schema=(),
    build=_ram_1_4_10_n_single_build,
    domain=_always,
    sample=_no_params,
    default_dims=({"n": 1}, {"n": 2}),
    policy=_SLOW_POLICY,
)


# -- quadratic-exponent partial-theta transformations -------------------------


def _coeff_params(rng, dims, bases):
    return {"a": coefficient(rng), "b": coefficient(rng)}


def _ram_eq26_a2_build(dims):
    m = dims["m"]

    def lhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        return P.infinite(-ctx.params["a"] * B.qh, B.qh)

    def lhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        s_htm = B.power(B.h * B.t * m)
        jj = sum(j)
        value = vande(geom(B.qt, m), j, q_tm)
        for r in range(m):
            value /= P.finite(q_tm, q_tm, j[r])
        value *= p["b"] ** jj / P.ratio(-p["a"] * B.qh, B.qh, s_htm**jj)
        return value * q_tm ** (staircase(j) + sum(tri(jr) for jr in j))

    def rhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        value = mpf(1)
        for r in range(1, m + 1):
            value *= P.infinite(-p["b"] * q_tm**r, q_tm)
        return value

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        s_htm = B.power(B.h * B.t * m)
        kk = k[0]
        value = p["a"] ** kk * B.qh ** tri(kk) / P.finite(B.qh, B.qh, kk)
        for r in range(1, m + 1):
            value /= P.ratio(-p["b"] * q_tm**r, q_tm, s_htm**kk)
        return value

    return SeriesSide(m, lhs_term, lhs_prefactor), SeriesSide(
        1, rhs_term, rhs_prefactor
    )


RAM_EQ26_A2 = IdentityFamily(
    id="ram_eq26_a2",
    reference="m-fold partial-theta transformation with bases q^h and q^{tm}",
    dim_names=("m",),
    schema=(ParamSpec("a"), ParamSpec("b")),
    build=_ram_eq26_a2_build,
    domain=_always,
    sample=_coeff_params,
    default_dims=({"m": 1}, {"m": 2}),
)


def _ram_1_4_12_build(dims):
    def lhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        return P.infinite(-ctx.params["a"] * B.qh, B.qh)

    def lhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        jj = j[0]
        return (
            p["b"] ** jj
            * B.qt ** tri(jj)
            / (
                P.finite(B.qt, B.qt, jj)
                * P.ratio(-p["a"] * B.qh, B.qh, B.qht**jj)
            )
        )

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        return P.infinite(-ctx.params["b"] * B.qt, B.qt)

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        kk = k[0]
        return (
            p["a"] ** kk
            * B.qh ** tri(kk)
            / (
                P.finite(B.qh, B.qh, kk)
                * P.ratio(-p["b"] * B.qt, B.qt, B.qht**kk)
            )
        )

    return SeriesSide(1, lhs_term, lhs_prefactor), SeriesSide(
        1, rhs_term, rhs_prefactor
    )


RAM_1_4_12 = IdentityFamily(
    id="ram_1_4_12",
    reference="bibasic partial-theta transformation symmetric in (a, q^h) "
    "and (b, q^t)",
    dim_names=(),
    schema=(ParamSpec("a"), ParamSpec("b")),
    build=_ram_1_4_12_build,
    domain=_always,
    sample=_coeff_params,
)


def _ram_eq26_a3_build(dims):
    m = dims["m"]

    def lhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        return P.infinite(-ctx.params["a"] * B.q, B.q)

    def lhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        qm = q**m
        scale = (B.qt**m) ** sum(j)
        jj = sum(j)
        value = vande(geom(q, m), j, qm)
        for r in range(m):
            value /= P.finite(qm, qm, j[r])
        value *= p["b"] ** jj / P.ratio(-p["a"] * q, q, scale)
        return value * q ** (m * staircase(j) + m * sum(tri(jr) for jr in j))

    def rhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        qm = B.q**m
        value = mpf(1)
        for r in range(1, m + 1):
            value *= P.infinite(-p["b"] * qm**r, qm)
        return value

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        qm = q**m
        kk = k[0]
        scale = B.power(m * B.t) ** kk
        value = p["a"] ** kk * q ** tri(kk) / P.finite(q, q, kk)
        for r in range(1, m + 1):
            value /= P.ratio(-p["b"] * qm**r, qm, scale)
        return value

    return SeriesSide(m, lhs_term, lhs_prefactor), SeriesSide(
        1, rhs_term, rhs_prefactor
    )


RAM_EQ26_A3 = IdentityFamily(
    id="ram_eq26_a3",
    reference="equal-base form of the m-fold partial-theta transformation "
    "with a free index stretch t",
    dim_names=("m",),
    schema=(ParamSpec("a"), ParamSpec("b")),
    build=_ram_eq26_a3_build,
    domain=_always,
    sample=_coeff_params,
    default_dims=({"m": 1}, {"m": 2}),
)


def _ram_eq26_b_build(dims):
    n, m = dims["n"], dims["m"]

    def lhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_hn = B.power(B.h * n)
        return P.infinite((-p["a"] * B.qh) ** n, q_hn)

    def lhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        q_hn = B.power(B.h * n)
        scale = B.power(B.h * n * B.t * m) ** sum(j)
        jj = sum(j)
        value = vande(geom(B.qt, m), j, q_tm)
        for r in range(1, m + 1):
            value /= P.finite(B.qt**r, B.qt, m * j[r - 1])
        value *= p["b"] ** (m * jj) / P.ratio((-p["a"] * B.qh) ** n, q_hn, scale)
        exponent = 2 * m * staircase(j) - m * (m - 1) * jj + sum(
            tri(m * jr) for jr in j
        )
        return value * B.qt**exponent

    def rhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        return P.infinite((-p["b"] * B.qt) ** m, q_tm)

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q_tm = B.power(B.t * m)
        q_hn = B.power(B.h * n)
        scale = B.power(B.h * n * B.t * m) ** sum(k)
        kk = sum(k)
        value = vande(geom(B.qh, n), k, q_hn)
        for r in range(1, n + 1):
            value /= P.finite(B.qh**r, B.qh, n * k[r - 1])
        value *= p["a"] ** (n * kk) / P.ratio((-p["b"] * B.qt) ** m, q_tm, scale)
        exponent = 2 * n * staircase(k) - n * (n - 1) * kk + sum(
            tri(n * kr) for kr in k
        )
        return value * B.qh**exponent

    return SeriesSide(m, lhs_term, lhs_prefactor), SeriesSide(
        n, rhs_term, rhs_prefactor
    )


RAM_EQ26_B = IdentityFamily(
    id="ram_eq26_b",
    reference="fully quadratic m-fold to n-fold partial-theta "
    "transformation in bases q^{hn} and q^{tm}",
    dim_names=("n", "m"),
    schema=(ParamSpec("a"), ParamSpec("b")),
    build=_ram_eq26_b_build,
    domain=_always,
    sample=_coeff_params,
    default_dims=(
        {"n": 1, "m": 1},
        {"n": 1, "m": 2},
        {"n": 2, "m": 1},
        {"n": 2, "m": 2},
    ),
)


def _ram_1_4_17_anm_build(dims):
    n, m = dims["n"], dims["m"]

    def lhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        return P.infinite((-p["a"] * q) ** n, q**n)

    def lhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        qn = q**n
        scale = (B.qt ** (n * m)) ** sum(j)
        jj = sum(j)
        value = vande(geom(q, m), j, q**m)
        for r in range(1, m + 1):
            value /= P.finite(q**r, q, m * j[r - 1])
        value *= p["b"] ** (m * jj) / P.ratio((-p["a"] * q) ** n, qn, scale)
        exponent = 2 * m * staircase(j) - m * (m - 1) * jj + sum(
            tri(m * jr) for jr in j
        )
        return value * q**exponent

    def rhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        return P.infinite((-p["b"] * q) ** m, q**m)

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        qm = q**m
        scale = (B.qt ** (n * m)) ** sum(k)
        kk = sum(k)
        value = vande(geom(q, n), k, q**n)
        for r in range(1, n + 1):
            value /= P.finite(q**r, q, n * k[r - 1])
        value *= p["a"] ** (n * kk) / P.ratio((-p["b"] * q) ** m, qm, scale)
        exponent = 2 * n * staircase(k) - n * (n - 1) * kk + sum(
            tri(n * kr) for kr in k
        )
        return value * q**exponent

    return SeriesSide(m, lhs_term, lhs_prefactor), SeriesSide(
        n, rhs_term, rhs_prefactor
    )


RAM_1_4_17_ANM = IdentityFamily(
    id="ram_1_4_17_anm",
    reference="m-fold to n-fold extension of the symmetric partial-theta "
    "transformation with index stretch t",
    dim_names=("n", "m"),
    schema=(ParamSpec("a"), ParamSpec("b")),
    build=_ram_1_4_17_anm_build,
    domain=_always,
    sample=_coeff_params,
    default_dims=(
        {"n": 1, "m": 1},
        {"n": 1, "m": 2},
        {"n": 2, "m": 1},
        {"n": 2, "m": 2},
    ),
)


def _ram_1_4_17_build(dims):
    def lhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        return P.infinite(-ctx.params["a"] * B.q, B.q)

    def lhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        jj = j[0]
        return (
            p["b"] ** jj
            * q ** tri(jj)
            / (P.finite(q, q, jj) * P.ratio(-p["a"] * q, q, B.qt**jj))
        )

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        return P.infinite(-ctx.params["b"] * B.q, B.q)

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        kk = k[0]
        return (
            p["a"] ** kk
            * q ** tri(kk)
            / (P.finite(q, q, kk) * P.ratio(-p["b"] * q, q, B.qt**kk))
        )

    return SeriesSide(1, lhs_term, lhs_prefactor), SeriesSide(
        1, rhs_term, rhs_prefactor
    )


RAM_1_4_17 = IdentityFamily(
    id="ram_1_4_17",
    reference="symmetric partial-theta transformation with index stretch t",
    dim_names=(),
    schema=(ParamSpec("a"), ParamSpec("b")),
    build=_ram_1_4_17_build,
    domain=_always,
    sample=_coeff_params,
)


def _ram_1_4_9a_build(dims):
    m = dims["m"]

    def _quadratic(ctx, k):
        P, B = ctx.poch, ctx.bases
        q = B.q
        kk = sum(k)
        value = vande(geom(q, m), k, q**m)
        for r in range(1, m + 1):
            value /= P.finite(q**r, q, m * k[r - 1])
        exponent = 2 * m * staircase(k) - m * (m - 1) * kk + sum(
            tri(m * kr) for kr in k
        )
        return value * q**exponent

    def lhs_term(ctx, j):
        P, B = ctx.poch, ctx.bases
        q = B.q
        qm = q**m
        return _quadratic(ctx, j) / P.finite(qm, qm, m * sum(j))

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        q = B.q
        qm = q**m
        return P.infinite((-q) ** m, qm) / P.infinite(qm, qm)

    def rhs_term(ctx, k):
        P, B = ctx.poch, ctx.bases
        q = B.q
        qm = q**m
        kk = sum(k)
        return (
            _quadratic(ctx, k)
            * (-1) ** (m * kk)
            / P.finite((-q) ** m, qm, m * kk)
        )

    return SeriesSide(m, lhs_term), SeriesSide(m, rhs_term, rhs_prefactor)


RAM_1_4_9A = IdentityFamily(
    id="ram_1_4_9a",
    reference="equal-dimension quadratic transformation of "
    "sum q^{C(j+1,2)}/(q;q)_j^2 type",
    dim_names=("m",),
    schema=(),
    build=_ram_1_4_9a_build,
    domain=_always,
    sample=_no_params,
    default_dims=({"m": 1}, {"m": 2}),
)


def _ram_1_4_9_build(dims):
    def lhs_term(ctx, j):
        P, B = ctx.poch, ctx.bases
        q = B.q
        jj = j[0]
        return q ** tri(jj) / P.finite(q, q, jj) ** 2

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        q = B.q
        return P.infinite(-q, q) / P.infinite(q, q)

    def rhs_term(ctx, k):
        P, B = ctx.poch, ctx.bases
        q = B.q
        kk = k[0]
        return (
            (-1) ** kk
            * q ** tri(kk)
            / (P.finite(q, q, kk) * P.finite(-q, q, kk))
        )

    return SeriesSide(1, lhs_term), SeriesSide(1, rhs_term, rhs_prefactor)


RAM_1_4_9 = IdentityFamily(
    id="ram_1_4_9",
    reference="classical transformation of sum q^{C(j+1,2)}/(q;q)_j^2",
    dim_names=(),
    schema=(),
    build=_ram_1_4_9_build,
    domain=_always,
    sample=_no_params,
)


def _ram_1_4_9b_build(dims):
    m = dims["m"]

    def lhs_term(ctx, j):
        P, B = ctx.poch, ctx.bases
        q = B.q
        jj = sum(j)
        value = vande(geom(q, m), j, q**m)
        for r in range(1, m + 1):
            value /= P.finite(q**r, q, m * j[r - 1])
        value /= P.finite(q, q, m * jj)
        exponent = 2 * m * staircase(j) - m * (m - 1) * jj + sum(
            tri(m * jr) for jr in j
        )
        return value * q**exponent

    def rhs_prefactor(ctx):
        P, B = ctx.poch, ctx.bases
        q = B.q
        return P.infinite((-q) ** m, q**m) / P.infinite(q, q)

    def rhs_term(ctx, k):
        P, B = ctx.poch, ctx.bases
        q = B.q
        kk = k[0]
        return (
            (-1) ** kk
            * q ** tri(kk)
            / (P.finite(q, q, kk) * P.finite((-q) ** m, q**m, kk))
        )

    return SeriesSide(m, lhs_term), SeriesSide(1, rhs_term, rhs_prefactor)


RAM_1_4_9B = IdentityFamily(
    id="ram_1_4_9b",
    reference="m-fold extension of the quadratic transformation of "
    "sum q^{C(j+1,2)}/(q;q)_j^2",
    dim_names=("m",),
    schema=(),
    build=_ram_1_4_9b_build,
    domain=_always,
    sample=_no_params,
    default_dims=({"m": 1}, {"m": 2}),
)


FAMILIES = (
    RAM_CORE,
    RAM_1_4_1_ANM,
    RAM_1_4_10_ANM,
    RAM_1_4_10_M1,
    RAM_1_4_10,
    RAM_1_4_10_C,
    RAM_1_4_10_N_SINGLE,
    RAM_EQ26_A2,
    RAM_1_4_12,
    RAM_EQ26_A3,
    RAM_EQ26_B,
    RAM_1_4_17_ANM,
    RAM_1_4_17,
    RAM_1_4_9A,
    RAM_1_4_9,
    RAM_1_4_9B,
)
