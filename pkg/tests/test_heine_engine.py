import random

import pytest
from mpmath import mp, mpf

from qheine import catalog, heine_engine as engine
from qheine.errors import DomainEmpty, PropertyHViolation
from qheine.multisum import SeriesSide, TruncationPolicy, evaluate, make_context
from qheine.qcore import BaseSystem, PochCache
from util import rel, side_values


def _block_dims(name):
    return (2, 2) if name == "kajihara" else (2,)


class TestPropertyH:
    @pytest.mark.parametrize("name", engine.SHIPPED_BLOCK_NAMES + ("q_euler",))
    def test_shipped_blocks_are_homogeneous(self, name):
        rng = random.Random(7)
        block = engine.sample_block(name, rng, _block_dims(name), mpf("0.3"))
        result = engine.check_property_H(block, trials=16, seed=9)
        assert result.passed
        assert result.max_deviation < mpf("1e-30")

    def test_counterexample_fails(self):
        rng = random.Random(7)
        block = engine.sample_block("broken", rng, (1,), mpf("0.3"))
        result = engine.check_property_H(block, trials=16, seed=9)
        assert not result.passed
        assert result.max_deviation > mpf("0.01")

    def test_trials_validated(self):
        block = engine.classical_qbin_block(mpf("0.2"), mpf("0.3"))
        with pytest.raises(ValueError):
            engine.check_property_H(block, trials=0)


class TestBlockSelfConsistency:
    @pytest.mark.parametrize("name", engine.SHIPPED_BLOCK_NAMES)
    def test_sum_equals_product(self, name):
        # The blocks' own summation theorems: sum_k S(z; k) = P(z).
        rng = random.Random(11)
        bases = BaseSystem(mpf("0.35"))
        for _ in range(10):
            base_value = mpf(rng.uniform(0.15, 0.55))
            dims = _block_dims(name)
            block = engine.sample_block(name, rng, dims, base_value)
            if isinstance(block, engine.TransformationBlock):
                continue  # transformation blocks are covered separately
            z = mpf(rng.uniform(0.03, 0.2)) * min(1, block.arg_bound)

            def term(ctx, k, _block=block, _z=z):
                return _block.term(ctx.poch, _z, k)

            value, _ = evaluate(
                SeriesSide(block.dimension, term), {}, bases,
                TruncationPolicy(max_shell_weight=48),
            )
            cache = PochCache(bases.prec)
            assert rel(value, block.product(cache, z)) < mpf("1e-20")

    def test_q_function_cocycle(self):
        # Q(z; s1*s2) = Q(z; s1) * Q(z*s1; s2) for product ratios.
        rng = random.Random(13)
        cache = PochCache(128)
        for _ in range(6):
            block = engine.sample_block("milne_lilly", rng, (2,), mpf("0.3"))
            z = mpf(rng.uniform(0.05, 0.4))
            s1 = mpf(rng.uniform(0.1, 0.8))
            s2 = mpf(rng.uniform(0.1, 0.8))

            def q_fn(arg, scale):
                return block.product(cache, arg * scale) / block.product(cache, arg)

            combined = q_fn(z, s1 * s2)
            chained = q_fn(z, s1) * q_fn(z * s1, s2)
            assert rel(combined, chained) < mpf("1e-25")


class TestCompose:
    def test_single_classical_pair_reproduces_bibasic(self):
        bibasic = catalog.lookup("bibasic_heine").instantiate()
        for params, bases in catalog.sample_domain(bibasic, seed=51, count=3):
            slot = engine.BlockSlot(
                engine.classical_qbin_block(params["a"], bases.qh),
                bases.h,
                params["z"],
            )
            base_slot = engine.BlockSlot(
                engine.classical_qbin_block(params["b"], bases.qt),
                bases.t,
                params["w"],
            )
            composed = engine.compose(
                engine.BlockAssignment((slot,), base_slot, bases)
            )
            # the composed identity is verifiable through the catalog machinery
            result = catalog.verify(composed, {}, bases, tolerance=mpf("1e-20"))
            assert result.passed
            lhs0, rhs0 = side_values(bibasic, params, bases)
            lhs1, rhs1 = side_values(composed, {}, bases)
            assert rel(lhs0, lhs1) < mpf("1e-20")
            assert rel(rhs0, rhs1) < mpf("1e-20")

    def test_two_block_assignment_reproduces_catalog_instance(self):
        family = catalog.lookup("master_instance_big")
        identity = family.instantiate({"n1": 2, "n2": 1, "m": 2})
        for params, bases in catalog.sample_domain(identity, seed=52, count=2):
            with mp.workprec(bases.prec):
                first = engine.milne_lilly_block(
                    params["a1"], params["x1"], bases.power(params["h1"])
                )
                second = engine.gk_block(
                    params["a2"], params["x2"], bases.power(params["h2"])
                )
                base_block = engine.extra_parameter_block(
                    params["b"], params["c"], params["y"], bases.qt
                )
            composed = engine.compose(
                engine.BlockAssignment(
                    (
                        engine.BlockSlot(first, params["h1"], params["z1"]),
                        engine.BlockSlot(second, params["h2"], params["z2"]),
                    ),
                    engine.BlockSlot(base_block, bases.t, params["w"]),
                    bases,
                )
            )
            lhs0, rhs0 = side_values(identity, params, bases)
            lhs1, rhs1 = side_values(composed, {}, bases)
            assert rel(lhs0, lhs1) < mpf("1e-18")
            assert rel(rhs0, rhs1) < mpf("1e-18")

    def test_multi_block_assignment_reproduces_lauricella_instance(self):
        family = catalog.lookup("master_instance_lauricella")
        identity = family.instantiate({"p": 2, "n": 1, "m": 2})
        for params, bases in catalog.sample_domain(identity, seed=53, count=2):
            slots = [
                engine.BlockSlot(
                    engine.classical_qbin_block(params["cp"][r], bases.qh),
                    bases.h,
                    params["u"][r],
                )
                for r in range(2)
            ]
            slots.append(
                engine.BlockSlot(
                    engine.extra_parameter_block(params["a"], 0, params["x"], bases.qh),
                    bases.h,
                    params["z"],
                )
            )
            base_slot = engine.BlockSlot(
                engine.extra_parameter_block(params["b"], 0, params["y"], bases.qt),
                bases.t,
                params["w"],
            )
            composed = engine.compose(
                engine.BlockAssignment(tuple(slots), base_slot, bases)
            )
            lhs0, rhs0 = side_values(identity, params, bases)
            lhs1, rhs1 = side_values(composed, {}, bases)
            assert rel(lhs0, lhs1) < mpf("1e-18")
            assert rel(rhs0, rhs1) < mpf("1e-18")

    @pytest.mark.parametrize(
        "block_specs,base_spec",
        [
            ((("q_bin", (1,)), ("extra_c", (2,))), ("milne_lilly", (2,))),
            ((("gk", (2,)),), ("extra_c", (2,))),
            ((("milne_lilly", (2,)), ("q_bin", (1,))), ("q_bin", (1,))),
        ],
    )
    def test_random_assignments_verify(self, block_specs, base_spec):
        # Arbitrary assignments drawn from the shipped library stay
        # verifiable at 1e-18.
        rng = random.Random(hash(base_spec) % 1000)
        for sample in range(2):
            bases = BaseSystem(
                mpf(rng.uniform(0.15, 0.5)),
                mpf(rng.uniform(0.6, 2.0)),
                mpf(rng.uniform(0.6, 2.0)),
            )
            slots = []
            for name, dims in block_specs:
                exponent = mpf(rng.uniform(0.6, 2.0))
                block = engine.sample_block(name, rng, dims, bases.power(exponent))
                argument = mpf(rng.uniform(0.03, 0.2)) * min(1, block.arg_bound)
                slots.append(engine.BlockSlot(block, exponent, argument))
            base_name, base_dims = base_spec
            base_block = engine.sample_block(base_name, rng, base_dims, bases.qt)
            base_argument = mpf(rng.uniform(0.03, 0.2)) * min(1, base_block.arg_bound)
            composed = engine.compose(
                engine.BlockAssignment(
                    tuple(slots),
                    engine.BlockSlot(base_block, bases.t, base_argument),
                    bases,
                )
            )
            result = catalog.verify(composed, {}, bases, tolerance=mpf("1e-18"))
            assert result.passed, (block_specs, base_spec, result.rel_error)

    def test_property_violation_raised(self):
        bases = BaseSystem(mpf("0.3"), mpf("1.2"), mpf("0.9"))
        slot = engine.BlockSlot(
            engine.broken_block(mpf("0.2"), bases.qh), bases.h, mpf("0.1")
        )
        base_slot = engine.BlockSlot(
            engine.classical_qbin_block(mpf("0.2"), bases.qt), bases.t, mpf("0.1")
        )
        with pytest.raises(PropertyHViolation):
            engine.compose(engine.BlockAssignment((slot,), base_slot, bases))

    def test_argument_outside_domain(self):
        bases = BaseSystem(mpf("0.3"), mpf("1.2"), mpf("0.9"))
        slot = engine.BlockSlot(
            engine.classical_qbin_block(mpf("0.2"), bases.qh), bases.h, mpf("1.5")
        )
        base_slot = engine.BlockSlot(
            engine.classical_qbin_block(mpf("0.2"), bases.qt), bases.t, mpf("0.1")
        )
        with pytest.raises(DomainEmpty):
            engine.compose(engine.BlockAssignment((slot,), base_slot, bases))


class TestComposeWithTransformation:
    def test_classical_euler_pair_reproduces_bibasic_euler(self):
        target = catalog.lookup("bibasic_euler").instantiate()
        for params, bases in catalog.sample_domain(target, seed=54, count=2):
            first = engine.q_euler_block(
                params["a"], params["b"], params["c"], bases.qh
            )
            base = engine.q_euler_block(
                params["d"], params["e"], params["f"], bases.qt
            )
            composed = engine.compose_with_transformation(
                engine.BlockSlot(first, bases.h, params["z"]),
                engine.BlockSlot(base, bases.t, params["w"]),
                bases,
            )
            lhs0, rhs0 = side_values(target, params, bases)
            lhs1, rhs1 = side_values(composed, {}, bases)
            assert rel(lhs0, lhs1) < mpf("1e-18")
            assert rel(rhs0, rhs1) < mpf("1e-18")

    def test_degenerate_euler_pair_reproduces_bibasic_heine(self):
        # with c = b and f = e the inner sums collapse to their first term
        bibasic = catalog.lookup("bibasic_heine").instantiate()
        for params, bases in catalog.sample_domain(bibasic, seed=55, count=2):
            first = engine.q_euler_block(
                params["a"], mpf("0.4"), mpf("0.4"), bases.qh
            )
            base = engine.q_euler_block(
                params["b"], mpf("0.3"), mpf("0.3"), bases.qt
            )
            composed = engine.compose_with_transformation(
                engine.BlockSlot(first, bases.h, params["z"]),
                engine.BlockSlot(base, bases.t, params["w"]),
                bases,
            )
            lhs0, rhs0 = side_values(bibasic, params, bases)
            lhs1, rhs1 = side_values(composed, {}, bases)
            assert rel(lhs0, lhs1) < mpf("1e-20")
            assert rel(rhs0, rhs1) < mpf("1e-20")

    def test_one_dimensional_kajihara_pair_matches_bibasic_euler(self):
        target = catalog.lookup("bibasic_euler").instantiate()
        one = mpf(1)
        for params, bases in catalog.sample_domain(target, seed=56, count=2):
            first = engine.kajihara_block(
                (params["a"],), (params["b"],), params["c"], (one,), (one,), bases.qh
            )
            base = engine.kajihara_block(
                (params["d"],), (params["e"],), params["f"], (one,), (one,), bases.qt
            )
            composed = engine.compose_with_transformation(
                engine.BlockSlot(first, bases.h, params["z"]),
                engine.BlockSlot(base, bases.t, params["w"]),
                bases,
            )
            lhs0, rhs0 = side_values(target, params, bases)
            lhs1, rhs1 = side_values(composed, {}, bases)
            assert rel(lhs0, lhs1) < mpf("1e-18")
            assert rel(rhs0, rhs1) < mpf("1e-18")

    def test_qbinomial_blocks_lift_to_transformations(self):
        # composing two lifted q-binomial blocks equals the plain composition
        bibasic = catalog.lookup("bibasic_heine").instantiate()
        params, bases = catalog.sample_domain(bibasic, seed=57, count=1)[0]
        first = engine.classical_qbin_block(params["a"], bases.qh)
        base = engine.classical_qbin_block(params["b"], bases.qt)
        composed = engine.compose_with_transformation(
            engine.BlockSlot(first, bases.h, params["z"]),
            engine.BlockSlot(base, bases.t, params["w"]),
            bases,
        )
        lhs0, rhs0 = side_values(bibasic, params, bases)
        lhs1, rhs1 = side_values(composed, {}, bases)
        assert rel(lhs0, lhs1) < mpf("1e-20")
        assert rel(rhs0, rhs1) < mpf("1e-20")
