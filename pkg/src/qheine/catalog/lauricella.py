"""Multibasic p-fold to single-sum transformation and two explicit instances
of its fully general block-composed extension."""

from __future__ import annotations

from mpmath import mpf

from ..multisum import SeriesSide
from ..qcore import e2
from .core import (
    IdentityFamily,
    ParamSpec,
    argument,
    coefficient,
    distinct_vector,
    exponent,
    geom,
    product_over,
    signed,
    sq_ratio,
    staircase,
    vande,
)

__all__ = ["FAMILIES"]


# -- p-fold sum with p+1 bases collapsing to a single sum --------------------


def _qlauricella_build(dims):
    p_dim = dims["p"]

    def lhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        value = mpf(1)
        scale = mpf(1)
        for r in range(p_dim):
            base_r = B.power(p["hexp"][r])
            value *= P.finite(p["a"][r], base_r, k[r])
            value /= P.finite(base_r, base_r, k[r])
            value *= p["z"][r] ** k[r]
            scale *= B.power(B.t * p["hexp"][r]) ** k[r]
        value *= P.ratio(p["w"], B.qt, scale)
        value /= P.ratio(p["b"] * p["w"], B.qt, scale)
        return value

    def rhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        value = P.infinite(p["w"], B.qt) / P.infinite(p["b"] * p["w"], B.qt)
        for r in range(p_dim):
            base_r = B.power(p["hexp"][r])
            value *= P.infinite(p["a"][r] * p["z"][r], base_r)
            value /= P.infinite(p["z"][r], base_r)
        return value

    def rhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        jj = j[0]
        value = P.finite(p["b"], B.qt, jj) / P.finite(B.qt, B.qt, jj)
        for r in range(p_dim):
            base_r = B.power(p["hexp"][r])
            scale = B.power(B.t * p["hexp"][r]) ** jj
            value *= P.ratio(p["z"][r], base_r, scale)
            value /= P.ratio(p["a"][r] * p["z"][r], base_r, scale)
        return value * p["w"] ** jj

    return SeriesSide(p_dim, lhs_term), SeriesSide(1, rhs_term, rhs_prefactor)


def _qlauricella_domain(dims, p, bases):
    return abs(p["w"]) < 1 and all(abs(zr) < 1 for zr in p["z"])


def _qlauricella_sample(rng, dims, bases):
    p_dim = dims["p"]
    return {
        "a": tuple(coefficient(rng) for _ in range(p_dim)),
        "b": coefficient(rng),
        "z": tuple(argument(rng) for _ in range(p_dim)),
        "w": argument(rng),
        "hexp": tuple(exponent(rng) for _ in range(p_dim)),
    }


QLAURICELLA_BIBASIC = IdentityFamily(
    id="qlauricella_bibasic",
    reference="p-fold multibasic sum with dot-product index collapsing to a "
    "single sum in base q^t",
    dim_names=("p",),
    schema=(
        ParamSpec("a", "p"),
        ParamSpec("b"),
        ParamSpec("z", "p"),
        ParamSpec("w"),
        ParamSpec("hexp", "p", role="exponent"),
    ),
    build=_qlauricella_build,
    domain=_qlauricella_domain,
    sample=_qlauricella_sample,
    default_dims=({"p": 1}, {"p": 2}, {"p": 3}),
)


# -- two-block instance: paired-vector block + single-parameter block over an
#    extra-parameter base block ------------------------------------------------


def _master_big_build(dims):
    n1, n2, m = dims["n1"], dims["n2"], dims["m"]

    def lhs_term(ctx, idx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        k1, k2 = idx[:n1], idx[n1:]
        base1 = B.power(p["h1"])
        base2 = B.power(p["h2"])
        x1, x2 = p["x1"], p["x2"]
        big_b = product_over(p["b"])

        value = vande(x1, k1, base1) * sq_ratio(ctx.poch, p["a1"], x1, base1, k1)
        value *= vande(x2, k2, base2)
        for r in range(n2):
            value *= P.finite(p["a2"], base2, k2[r])
            value /= P.finite(base2, base2, k2[r])
        scale = (
            B.power(B.t * p["h1"]) ** sum(k1)
            * B.power(B.t * p["h2"]) ** sum(k2)
        )
        value *= P.ratio(p["w"], B.qt, scale)
        value /= P.ratio(big_b * p["w"], B.qt, scale)
        value *= p["z1"] ** sum(k1) * p["z2"] ** sum(k2)
        value *= base1 ** staircase(k1) * base2 ** staircase(k2)
        value *= base1 ** e2(k1)
        for r in range(n1):
            value *= x1[r] ** (-k1[r])
        return value

    def rhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        base1 = B.power(p["h1"])
        base2 = B.power(p["h2"])
        big_b = product_over(p["b"])
        value = mpf(1)
        for r in range(n1):
            zx = p["z1"] / p["x1"][r]
            value *= P.infinite(p["a1"][r] * zx, base1) / P.infinite(zx, base1)
        for r in range(n2):
            shifted = p["z2"] * base2**r
            value *= P.infinite(p["a2"] * shifted, base2)
            value /= P.infinite(shifted, base2)
        value *= P.infinite(p["w"], B.qt) / P.infinite(big_b * p["w"], B.qt)
        return value

    def rhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        base1 = B.power(p["h1"])
        base2 = B.power(p["h2"])
        y = p["y"]
        jj = sum(j)
        big_b = product_over(p["b"])
        value = vande(y, j, B.qt) * sq_ratio(ctx.poch, p["b"], y, B.qt, j)
        for r in range(m):
            cy = p["c"] * y[r]
            value *= P.finite(cy / big_b, B.qt, j[r]) * P.finite(cy, B.qt, jj)
            value /= P.finite(cy, B.qt, j[r]) * P.finite(cy / p["b"][r], B.qt, jj)
        value *= p["w"] ** jj * B.qt ** staircase(j)
        scale1 = B.power(B.t * p["h1"]) ** jj
        scale2 = B.power(B.t * p["h2"]) ** jj
        for r in range(n1):
            zx = p["z1"] / p["x1"][r]
            value *= P.ratio(zx, base1, scale1)
            value /= P.ratio(p["a1"][r] * zx, base1, scale1)
        for r in range(n2):
            shifted = p["z2"] * base2**r
            value *= P.ratio(shifted, base2, scale2)
            value /= P.ratio(p["a2"] * shifted, base2, scale2)
        return value

    return SeriesSide(n1 + n2, lhs_term), SeriesSide(m, rhs_term, rhs_prefactor)


def _master_big_domain(dims, p, bases):
    return (
        all(abs(p["z1"] / xr) < 1 for xr in p["x1"])
        and abs(p["z2"]) < 1
        and abs(p["w"]) < 1
    )


def _master_big_sample(rng, dims, bases):
    n1, n2, m = dims["n1"], dims["n2"], dims["m"]
    x1 = distinct_vector(rng, n1)
    return {
        "a1": tuple(coefficient(rng) for _ in range(n1)),
        "a2": coefficient(rng),
        "b": tuple(signed(rng, 0.35, 0.9) for _ in range(m)),
        "c": signed(rng, 0.0, 0.45),
        "x1": x1,
        "x2": distinct_vector(rng, n2),
        "y": distinct_vector(rng, m),
        "z1": argument(rng) * min(abs(v) for v in x1),
        "z2": argument(rng),
        "w": argument(rng),
        "h1": exponent(rng),
        "h2": exponent(rng),
    }


MASTER_INSTANCE_BIG = IdentityFamily(
    id="master_instance_big",
    reference="two-block composed transformation: paired-vector and "
    "single-parameter sums over an extra-parameter base sum",
    dim_names=("n1", "n2", "m"),
    schema=(
        ParamSpec("a1", "n1"),
        ParamSpec("a2"),
        ParamSpec("b", "m"),
        ParamSpec("c"),
        ParamSpec("x1", "n1"),
        ParamSpec("x2", "n2"),
        ParamSpec("y", "m"),
        ParamSpec("z1"),
        ParamSpec("z2"),
        ParamSpec("w"),
        ParamSpec("h1", role="exponent"),
        ParamSpec("h2", role="exponent"),
    ),
    build=_master_big_build,
    domain=_master_big_domain,
    sample=_master_big_sample,
    default_dims=(
        {"n1": 1, "n2": 1, "m": 1},
        {"n1": 2, "n2": 1, "m": 2},
        {"n1": 1, "n2": 2, "m": 1},
    ),
)


# -- (p+1)-block instance: p one-dimensional blocks plus a plain-product A_n
#    block over a plain-product base block --------------------------------------


def _master_lauricella_build(dims):
    p_dim, n, m = dims["p"], dims["n"], dims["m"]

    def lhs_term(ctx, idx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        l, k = idx[:p_dim], idx[p_dim:]
        big_b = product_over(p["b"])
        value = vande(p["x"], k, B.qh) * sq_ratio(ctx.poch, p["a"], p["x"], B.qh, k)
        for r in range(p_dim):
            value *= P.finite(p["cp"][r], B.qh, l[r])
            value /= P.finite(B.qh, B.qh, l[r])
            value *= p["u"][r] ** l[r]
        scale = B.qht ** (sum(k) + sum(l))
        value *= P.ratio(p["w"], B.qt, scale)
        value /= P.ratio(big_b * p["w"], B.qt, scale)
        return value * p["z"] ** sum(k) * B.qh ** staircase(k)

    def rhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        big_a = product_over(p["a"])
        big_b = product_over(p["b"])
        value = (
            P.infinite(p["w"], B.qt)
            * P.infinite(big_a * p["z"], B.qh)
            / (P.infinite(big_b * p["w"], B.qt) * P.infinite(p["z"], B.qh))
        )
        for r in range(p_dim):
            value *= P.infinite(p["cp"][r] * p["u"][r], B.qh)
            value /= P.infinite(p["u"][r], B.qh)
        return value

    def rhs_term(ctx, j):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        big_a = product_over(p["a"])
        jj = sum(j)
        scale = B.qht ** jj
        value = vande(p["y"], j, B.qt) * sq_ratio(ctx.poch, p["b"], p["y"], B.qt, j)
        value *= P.ratio(p["z"], B.qh, scale) / P.ratio(big_a * p["z"], B.qh, scale)
        for r in range(p_dim):
            value *= P.ratio(p["u"][r], B.qh, scale)
            value /= P.ratio(p["cp"][r] * p["u"][r], B.qh, scale)
        return value * p["w"] ** jj * B.qt ** staircase(j)

    return SeriesSide(p_dim + n, lhs_term), SeriesSide(m, rhs_term, rhs_prefactor)


def _master_lauricella_domain(dims, p, bases):
    return (
        abs(p["z"]) < 1
        and abs(p["w"]) < 1
        and all(abs(ur) < 1 for ur in p["u"])
    )


def _master_lauricella_sample(rng, dims, bases):
    p_dim, n, m = dims["p"], dims["n"], dims["m"]
    return {
        "a": tuple(coefficient(rng) for _ in range(n)),
        "b": tuple(coefficient(rng) for _ in range(m)),
        "cp": tuple(coefficient(rng) for _ in range(p_dim)),
        "u": tuple(argument(rng) for _ in range(p_dim)),
        "x": distinct_vector(rng, n),
        "y": distinct_vector(rng, m),
        "z": argument(rng),
        "w": argument(rng),
    }


MASTER_INSTANCE_LAURICELLA = IdentityFamily(
    id="master_instance_lauricella",
    reference="(p+1)-block composed transformation: p one-dimensional sums "
    "and a plain-product A_n sum over a plain-product base sum",
    dim_names=("p", "n", "m"),
    schema=(
        ParamSpec("a", "n"),
        ParamSpec("b", "m"),
        ParamSpec("cp", "p"),
        ParamSpec("u", "p"),
        ParamSpec("x", "n"),
        ParamSpec("y", "m"),
        ParamSpec("z"),
        ParamSpec("w"),
    ),
    build=_master_lauricella_build,
    domain=_master_lauricella_domain,
    sample=_master_lauricella_sample,
    default_dims=(
        {"p": 1, "n": 1, "m": 1},
        {"p": 2, "n": 1, "m": 2},
        {"p": 1, "n": 2, "m": 1},
    ),
)


FAMILIES = (QLAURICELLA_BIBASIC, MASTER_INSTANCE_BIG, MASTER_INSTANCE_LAURICELLA)
