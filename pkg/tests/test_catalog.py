import pytest
from mpmath import mp, mpf

from qheine import catalog
from qheine.catalog.core import ParamSpec
from qheine.errors import DomainViolation, InvalidConfig, UnknownIdentity
from qheine.multisum import TruncationPolicy
from qheine.qcore import BaseSystem
from util import rel, side_values

EXPECTED_IDS = [
    "q_binomial",
    "heine_2phi1",
    "bibasic_heine",
    "an_qbin_milne_lilly",
    "an_qbin_gk",
    "an_qbin_extra_c",
    "thm_heine7",
    "thm_heine8",
    "thm_heine1",
    "thm_heine2",
    "ram_core",
    "ram_1_4_1_anm",
    "ram_1_4_10_anm",
    "ram_1_4_10_m1",
    "ram_1_4_10",
    "ram_1_4_10_c",
    "ram_1_4_10_n_single",
    "ram_eq26_a2",
    "ram_1_4_12",
    "ram_eq26_a3",
    "ram_eq26_b",
    "ram_1_4_17_anm",
    "ram_1_4_17",
    "ram_1_4_9a",
    "ram_1_4_9",
    "ram_1_4_9b",
    "q_euler",
    "bibasic_euler",
    "kajihara",
    "kajihara_double",
    "qlauricella_bibasic",
    "master_instance_big",
    "master_instance_lauricella",
]

# Side values for bibasic_heine at (q, h, t, a, b, w, z) =
# (0.3, 1.5, 0.8, 0.2, 0.25, 0.2, 0.15), summed to shell weight 60.
BIBASIC_ORACLE = "1.135971353864560146233069239947447733887"


class TestRegistry:
    def test_count_and_ids(self):
        families = catalog.register_all()
        assert len(families) == 33
        assert [f.id for f in families] == EXPECTED_IDS

    def test_lookup_unknown(self):
        with pytest.raises(UnknownIdentity):
            catalog.lookup("does_not_exist")

    def test_q_binomial_schema(self):
        family = catalog.lookup("q_binomial")
        assert [s.name for s in family.schema] == ["a", "z"]
        assert all(s.length is None for s in family.schema)

    def test_thm_heine7_schema(self):
        family = catalog.lookup("thm_heine7")
        by_name = {s.name: s for s in family.schema}
        assert set(by_name) == {"a", "b", "x", "y", "z", "w"}
        assert by_name["a"].length == "n"
        assert by_name["b"].length == "m"
        assert by_name["x"].length == "n"
        assert by_name["y"].length == "m"
        assert family.dim_names == ("n", "m")

    def test_catalog_document(self):
        doc = catalog.catalog_document()
        assert doc["schema_version"] == "1"
        assert len(doc["identities"]) == 33
        assert doc["identities"][0]["id"] == "q_binomial"


class TestParamValidation:
    def test_extra_and_missing_names_rejected(self):
        identity = catalog.lookup("q_binomial").instantiate()
        with pytest.raises(InvalidConfig):
            identity.validate_params({"a": mpf("0.1")})
        with pytest.raises(InvalidConfig):
            identity.validate_params({"a": mpf("0.1"), "z": mpf("0.1"), "c": mpf(1)})

    def test_vector_length_checked(self):
        identity = catalog.lookup("thm_heine7").instantiate({"n": 2, "m": 1})
        params = {
            "a": (mpf("0.1"),),  # should have length 2
            "b": (mpf("0.1"),),
            "x": (mpf(1), mpf("1.5")),
            "y": (mpf(1),),
            "z": mpf("0.1"),
            "w": mpf("0.1"),
        }
        with pytest.raises(InvalidConfig):
            identity.validate_params(params)

    def test_bad_dimension_assignment(self):
        family = catalog.lookup("thm_heine7")
        with pytest.raises(InvalidConfig):
            family.instantiate({"n": 0})
        with pytest.raises(InvalidConfig):
            family.instantiate({"bogus": 2})


class TestVerify:
    def test_q_binomial_collapses_at_a_equals_q(self):
        bases = BaseSystem(mpf("0.5"))
        identity = catalog.lookup("q_binomial").instantiate()
        params = {"a": bases.q, "z": mpf("0.3")}
        policy = TruncationPolicy(max_shell_weight=95, tail_ratio_tol=1e-30)
        result = catalog.verify(identity, params, bases, policy, tolerance=mpf("1e-25"))
        assert result.passed
        # Both sides collapse to the geometric value 1/(1-z).
        assert rel(result.rhs_value, 1 / (1 - mpf("0.3"))) < mpf("1e-30")

    @pytest.mark.parametrize(
        "identity_id",
        ["q_binomial", "heine_2phi1", "bibasic_heine", "q_euler", "kajihara"],
    )
    def test_zero_argument_reduces_to_constant_term(self, identity_id):
        family = catalog.lookup(identity_id)
        identity = family.instantiate(
            {name: 1 for name in family.dim_names}
        )
        params, bases = catalog.sample_domain(identity, seed=40, count=1)[0]
        params = dict(params)
        for name in ("z", "w"):
            if name in params:
                params[name] = mpf(0)
        # Deep truncation: a remaining one-sided series (Heine's b-sum) must
        # itself be exhausted to reach the tight tolerance.
        policy = TruncationPolicy(max_shell_weight=140, tail_ratio_tol=1e-33)
        result = catalog.verify(identity, params, bases, policy, tolerance=mpf("1e-28"))
        assert result.passed

    def test_bibasic_heine_frozen_point(self):
        bases = BaseSystem(mpf("0.3"), mpf("1.5"), mpf("0.8"))
        identity = catalog.lookup("bibasic_heine").instantiate()
        params = {
            "a": mpf("0.2"),
            "b": mpf("0.25"),
            "w": mpf("0.2"),
            "z": mpf("0.15"),
        }
        # Oracle run: both sides at shell weight 60.
        oracle_policy = TruncationPolicy(max_shell_weight=60, tail_ratio_tol=1e-32)
        lhs60, rhs60 = side_values(identity, params, bases, oracle_policy)
        assert rel(lhs60, mpf(BIBASIC_ORACLE)) < mpf("1e-25")
        assert rel(lhs60, rhs60) < mpf("1e-25")
        # Production settings must agree with the oracle and pass at 1e-20.
        result = catalog.verify(identity, params, bases, tolerance=mpf("1e-20"))
        assert result.passed
        assert rel(result.lhs_value, lhs60) < mpf("1e-22")

    def test_verify_rejects_out_of_domain(self):
        identity = catalog.lookup("q_binomial").instantiate()
        bases = BaseSystem(mpf("0.5"))
        with pytest.raises(DomainViolation):
            catalog.verify(identity, {"a": mpf("0.2"), "z": mpf(2)}, bases)


class TestSampling:
    def test_deterministic(self):
        identity = catalog.lookup("thm_heine8").instantiate({"n": 2, "m": 2})
        first = catalog.sample_domain(identity, seed=17, count=4)
        second = catalog.sample_domain(identity, seed=17, count=4)
        for (p1, b1), (p2, b2) in zip(first, second):
            assert p1 == p2
            assert (b1.q, b1.h, b1.t) == (b2.q, b2.h, b2.t)

    def test_points_satisfy_domain_and_count(self):
        identity = catalog.lookup("thm_heine8").instantiate({"n": 2, "m": 2})
        points = catalog.sample_domain(identity, seed=23, count=25)
        assert len(points) == 25
        for params, bases in points:
            assert identity.domain(params, bases)
            identity.validate_params(params)

    def test_bases_in_safe_box(self):
        identity = catalog.lookup("q_binomial").instantiate()
        for _, bases in catalog.sample_domain(identity, seed=3, count=10):
            assert mpf("0.1") <= bases.q <= mpf("0.6")
            assert mpf("0.5") <= bases.h <= mpf("2.5")
            assert mpf("0.5") <= bases.t <= mpf("2.5")


def test_every_identity_passes_at_1e20():
    # Light full-catalog sweep at the tighter tolerance: first default
    # assignment plus the last (highest-dimensional) one, three points each.
    for family in catalog.register_all():
        dims_list = [family.default_dims[0]]
        if len(family.default_dims) > 1:
            dims_list.append(family.default_dims[-1])
        for dims in dims_list:
            identity = family.instantiate(dims)
            for params, bases in catalog.sample_domain(identity, seed=71, count=3):
                result = catalog.verify(
                    identity, params, bases, tolerance=mpf("1e-20")
                )
                assert result.passed, (family.id, dims, result.rel_error)


class TestStatedSpecialCases:
    def test_bibasic_reduces_to_heine_at_unit_exponents(self):
        heine = catalog.lookup("heine_2phi1").instantiate()
        bibasic = catalog.lookup("bibasic_heine").instantiate()
        for params, bases in catalog.sample_domain(heine, seed=31, count=3):
            flat = BaseSystem(bases.q, 1, 1, bases.prec)
            lhs0, rhs0 = side_values(heine, params, flat)
            with mp.workprec(flat.prec):
                mapped = {
                    "a": params["a"],
                    "b": params["c"] / params["b"],
                    "w": params["b"],
                    "z": params["z"],
                }
            lhs1, rhs1 = side_values(bibasic, mapped, flat)
            assert rel(lhs0, lhs1) < mpf("1e-20")
            assert rel(rhs0, rhs1) < mpf("1e-20")

    @pytest.mark.parametrize("n", [2, 3])
    def test_extra_c_at_c_zero_matches_plain_product_side(self, n):
        family = catalog.lookup("an_qbin_extra_c")
        identity = family.instantiate({"n": n})
        for params, bases in catalog.sample_domain(identity, seed=37, count=3):
            params = dict(params)
            params["c"] = mpf(0)
            result = catalog.verify(identity, params, bases, tolerance=mpf("1e-20"))
            assert result.passed

    def test_ram_17_extension_collapses_to_classical(self):
        classical = catalog.lookup("ram_1_4_17").instantiate()
        extension = catalog.lookup("ram_1_4_17_anm").instantiate({"n": 1, "m": 1})
        for params, bases in catalog.sample_domain(classical, seed=41, count=3):
            lhs0, rhs0 = side_values(classical, params, bases)
            lhs1, rhs1 = side_values(extension, params, bases)
            assert rel(lhs0, lhs1) < mpf("1e-20")
            assert rel(rhs0, rhs1) < mpf("1e-20")

    def test_companion_extension_wiring(self):
        # At n = 1 the companion extension coincides with the single-theta
        # extension (dimension symbols swapped)...
        companion = catalog.lookup("ram_1_4_10_c").instantiate({"n": 1, "m": 2})
        single_theta = catalog.lookup("ram_1_4_10_m1").instantiate({"n": 2})
        for params, bases in catalog.sample_domain(single_theta, seed=43, count=2):
            lhs0, rhs0 = side_values(single_theta, params, bases)
            lhs1, rhs1 = side_values(companion, params, bases)
            assert rel(lhs0, lhs1) < mpf("1e-20")
            assert rel(rhs0, rhs1) < mpf("1e-20")
        # ... and at m = 1 with its single-sum form.
        companion = catalog.lookup("ram_1_4_10_c").instantiate({"n": 2, "m": 1})
        single_sum = catalog.lookup("ram_1_4_10_n_single").instantiate({"n": 2})
        for params, bases in catalog.sample_domain(single_sum, seed=44, count=2):
            lhs0, rhs0 = side_values(single_sum, params, bases)
            lhs1, rhs1 = side_values(companion, params, bases)
            assert rel(lhs0, lhs1) < mpf("1e-20")
            assert rel(rhs0, rhs1) < mpf("1e-20")
