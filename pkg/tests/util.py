"""Shared helpers for the test suite."""

from mpmath import mpf

from qheine.multisum import evaluate_in_context, make_context

REL_FLOOR = mpf("1e-300")


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), REL_FLOOR)


def side_values(identity, params, bases, policy=None):
    """Evaluate both sides of an identity under one shared product cache."""
    ctx = make_context(params, bases)
    policy = policy or identity.policy
    lhs, _ = evaluate_in_context(identity.lhs, ctx, policy)
    rhs, _ = evaluate_in_context(identity.rhs, ctx, policy)
    return lhs, rhs


def verify_sweep(family, dims_list, seed, count, tolerance, policy=None):
    """Run verify over sampled points for each dimension assignment; returns
    the worst relative error seen (all cases must pass)."""
    from qheine import catalog

    worst = mpf(0)
    for dims in dims_list:
        identity = family.instantiate(dims)
        for params, bases in catalog.sample_domain(identity, seed=seed, count=count):
            result = catalog.verify(
                identity, params, bases, policy, tolerance=tolerance
            )
            assert result.passed, (
                f"{family.id} at dims {dims} failed: rel={result.rel_error}"
            )
            worst = max(worst, result.rel_error)
    return worst
