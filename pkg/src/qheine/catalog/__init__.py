"""Registry of all transformation identities, their verification, and
deterministic domain sampling."""

from __future__ import annotations

from ..errors import UnknownIdentity
from . import an_qbinomial, classical, heine_an, kajihara, lauricella, ramanujan
from .core import (
    Identity,
    IdentityFamily,
    ParamSpec,
    VerificationResult,
    sample_bases,
    sample_domain,
    verify,
)

__all__ = [
    "Identity",
    "IdentityFamily",
    "ParamSpec",
    "VerificationResult",
    "register_all",
    "lookup",
    "catalog_document",
    "sample_bases",
    "sample_domain",
    "verify",
]

# Registration order: classical foundations, the A_n q-binomial summations,
# the four dimension-changing transformations, the Ramanujan-style
# specialisations, then the Euler/Kajihara variants and the composed
# instances.  Ids are stable across releases.
_ORDER = (
    classical.Q_BINOMIAL,
    classical.HEINE_2PHI1,
    classical.BIBASIC_HEINE,
    an_qbinomial.AN_QBIN_MILNE_LILLY,
    an_qbinomial.AN_QBIN_GK,
    an_qbinomial.AN_QBIN_EXTRA_C,
    heine_an.THM_HEINE7,
    heine_an.THM_HEINE8,
    heine_an.THM_HEINE1,
    heine_an.THM_HEINE2,
    ramanujan.RAM_CORE,
    ramanujan.RAM_1_4_1_ANM,
    ramanujan.RAM_1_4_10_ANM,
    ramanujan.RAM_1_4_10_M1,
    ramanujan.RAM_1_4_10,
    ramanujan.RAM_1_4_10_C,
    ramanujan.RAM_1_4_10_N_SINGLE,
    ramanujan.RAM_EQ26_A2,
    ramanujan.RAM_1_4_12,
    ramanujan.RAM_EQ26_A3,
    ramanujan.RAM_EQ26_B,
    ramanujan.RAM_1_4_17_ANM,
    ramanujan.RAM_1_4_17,
    ramanujan.RAM_1_4_9A,
    ramanujan.RAM_1_4_9,
    ramanujan.RAM_1_4_9B,
    classical.Q_EULER,
    classical.BIBASIC_EULER,
    kajihara.KAJIHARA,
    kajihara.KAJIHARA_DOUBLE,
    lauricella.QLAURICELLA_BIBASIC,
    lauricella.MASTER_INSTANCE_BIG,
    lauricella.MASTER_INSTANCE_LAURICELLA,
)

_REGISTRY = {family.id: family for family in _ORDER}


def register_all() -> list[IdentityFamily]:
    """All registered identity families, in stable registration order."""
    return list(_ORDER)


def lookup(identity_id: str) -> IdentityFamily:
    try:
        return _REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(f"no identity registered under {identity_id!r}") from None


def catalog_document() -> dict:
    """Machine-readable catalog metadata (id, reference line, schema)."""
    entries = []
    for family in _ORDER:
        entries.append(
            {
                "id": family.id,
                "reference": family.reference,
                "dimensions": list(family.dim_names),
                "parameters": [
                    {
                        "name": spec.name,
                        "length": spec.length,
                        "role": spec.role,
                    }
                    for spec in family.schema
                ],
                "default_dims": [dict(d) for d in family.default_dims],
                "max_shell_weight": family.policy.max_shell_weight,
            }
        )
    return {"schema_version": "1", "identities": entries}
