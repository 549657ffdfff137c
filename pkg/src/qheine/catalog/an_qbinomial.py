"""Multiple q-binomial summation theorems over A_n: the paired-parameter
sum, its specialisation with a single upper parameter, and the variant
carrying an extra free parameter c."""

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
    product_over,
    signed,
    sq_ratio,
    staircase,
    vande,
)

__all__ = ["FAMILIES"]


# -- paired-parameter A_n q-binomial sum (Milne/Lilly form) ------------------
# prod_r (a_r z/x_r)_oo/(z/x_r)_oo
#   = sum_k V(x,k) prod_{r,s} (a_s x_r/x_s)_{k_r}/(q x_r/x_s)_{k_r}
#       * z^{|k|} q^{sum (r-1)k_r} q^{e2(k)} prod_r x_r^{-k_r}


def _ml_build(dims):
    n = dims["n"]

    def lhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        return product_over(
            P.infinite(p["a"][r] * p["z"] / p["x"][r], B.q)
            / P.infinite(p["z"] / p["x"][r], B.q)
            for r in range(n)
        )

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        x = p["x"]
        value = vande(x, k, q) * sq_ratio(ctx.poch, p["a"], x, q, k)
        value *= p["z"] ** sum(k) * q ** staircase(k) * q ** e2(k)
        for r in range(n):
            value *= x[r] ** (-k[r])
        return value

    return SeriesSide(0, prefactor=lhs_prefactor), SeriesSide(n, rhs_term)


def _ml_domain(dims, p, bases):
    return all(abs(p["z"] / xr) < 1 for xr in p["x"])


def _ml_sample(rng, dims, bases):
    n = dims["n"]
    x = distinct_vector(rng, n)
    return {
        "a": tuple(coefficient(rng) for _ in range(n)),
        "x": x,
        "z": argument(rng) * min(abs(xr) for xr in x),
    }


AN_QBIN_MILNE_LILLY = IdentityFamily(
    id="an_qbin_milne_lilly",
    reference="A_n q-binomial theorem with paired parameter and variable "
    "vectors (product of n classical ratios)",
    dim_names=("n",),
    schema=(ParamSpec("a", "n"), ParamSpec("x", "n"), ParamSpec("z")),
    build=_ml_build,
    domain=_ml_domain,
    sample=_ml_sample,
    default_dims=({"n": 1}, {"n": 2}),
)


# -- single-parameter A_n q-binomial sum (Gustafson/Krattenthaler form) ------
# prod_r (a z q^{r-1})_oo/(z q^{r-1})_oo
#   = sum_k V(x,k) prod_r (a)_{k_r}/(q)_{k_r} z^{|k|} q^{sum (r-1)k_r}
# The sum does not depend on the auxiliary distinct variables x.


def _gk_build(dims):
    n = dims["n"]

    def lhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        return product_over(
            P.infinite(p["a"] * p["z"] * q**r, q) / P.infinite(p["z"] * q**r, q)
            for r in range(n)
        )

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        value = vande(p["x"], k, q)
        for r in range(n):
            value *= P.finite(p["a"], q, k[r]) / P.finite(q, q, k[r])
        return value * p["z"] ** sum(k) * q ** staircase(k)

    return SeriesSide(0, prefactor=lhs_prefactor), SeriesSide(n, rhs_term)


def _gk_domain(dims, p, bases):
    return abs(p["z"]) < 1


def _gk_sample(rng, dims, bases):
    return {
        "a": coefficient(rng),
        "x": distinct_vector(rng, dims["n"]),
        "z": argument(rng),
    }


AN_QBIN_GK = IdentityFamily(
    id="an_qbin_gk",
    reference="A_n q-binomial theorem with one upper parameter and a "
    "q-shifted product side",
    dim_names=("n",),
    schema=(ParamSpec("a"), ParamSpec("x", "n"), ParamSpec("z")),
    build=_gk_build,
    domain=_gk_domain,
    sample=_gk_sample,
    default_dims=({"n": 1}, {"n": 2}),
)


# -- A_n q-binomial sum with an extra parameter c ----------------------------
# (a_1...a_n z)_oo/(z)_oo = sum_k V(x,k) prod_{r,s}(a_s x_r/x_s)_{k_r}/(q...)
#   * prod_r [(c x_r/A)_{k_r} (c x_r)_{|k|}] / [(c x_r)_{k_r} (c x_r/a_r)_{|k|}]
#   * z^{|k|} q^{sum (r-1)k_r}
# At c = 0 the extra product collapses to 1.


def _extra_c_build(dims):
    n = dims["n"]

    def lhs_prefactor(ctx):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        big_a = product_over(p["a"])
        return P.infinite(big_a * p["z"], B.q) / P.infinite(p["z"], B.q)

    def rhs_term(ctx, k):
        P, B, p = ctx.poch, ctx.bases, ctx.params
        q = B.q
        x = p["x"]
        big_a = product_over(p["a"])
        kk = sum(k)
        value = vande(x, k, q) * sq_ratio(ctx.poch, p["a"], x, q, k)
        for r in range(n):
            cx = p["c"] * x[r]
            value *= P.finite(cx / big_a, q, k[r]) * P.finite(cx, q, kk)
            value /= P.finite(cx, q, k[r]) * P.finite(cx / p["a"][r], q, kk)
        return value * p["z"] ** kk * q ** staircase(k)

    return SeriesSide(0, prefactor=lhs_prefactor), SeriesSide(n, rhs_term)


def _extra_c_domain(dims, p, bases):
    return abs(p["z"]) < 1


def _extra_c_sample(rng, dims, bases):
    n = dims["n"]
    return {
        "a": tuple(signed(rng, 0.35, 0.9) for _ in range(n)),
        "c": signed(rng, 0.0, 0.45),
        "x": distinct_vector(rng, n),
        "z": argument(rng),
    }


AN_QBIN_EXTRA_C = IdentityFamily(
    id="an_qbin_extra_c",
    reference="A_n q-binomial theorem carrying an extra free parameter that "
    "disappears in one dimension",
    dim_names=("n",),
    schema=(
        ParamSpec("a", "n"),
        ParamSpec("c"),
        ParamSpec("x", "n"),
        ParamSpec("z"),
    ),
    build=_extra_c_build,
    domain=_extra_c_domain,
    sample=_extra_c_sample,
    default_dims=({"n": 1}, {"n": 2}),
)


FAMILIES = (AN_QBIN_MILNE_LILLY, AN_QBIN_GK, AN_QBIN_EXTRA_C)
