"""JSON-ready dictionaries for the library's result types.

Every top-level document carries ``schema_version`` and ``kind``; the
layout is pinned by ``schema/report.json``.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .exactarith import lattice_index
from .idealkit import IdealPowerModule, PrimeIdealRep, SplitReport
from .numfield import FieldElement, NumberField
from .thmcheck import Theorem2Verdict

SCHEMA_VERSION = "1"


def document(kind: str, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **body}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def field_dict(F: NumberField, cyclotomic_p: Optional[int] = None) -> dict:
    return {
        "poly": str(F.f),
        "coeffs": list(F.f.coeffs),
        "degree": F.degree,
        "irreducibility_status": F.irreducibility_status,
        "witness_prime": F.witness_prime,
        "cyclotomic_p": cyclotomic_p,
    }


def element_list(alpha: FieldElement) -> list[int]:
    return list(alpha.coords)


def prime_dict(pi: PrimeIdealRep) -> dict:
    return {
        "q": pi.q,
        "phi": str(pi.phi),
        "generator": str(pi.generator()),
        "f": pi.f_deg,
        "e": pi.e,
        "root": pi.root if pi.f_deg == 1 else None,
        "norm": pi.q ** pi.f_deg,
    }


def split_dict(rep: SplitReport) -> dict:
    return {
        "q": rep.q,
        "fully_split": rep.fully_split,
        "ramified": rep.ramified,
        "degree_sum": rep.degree_sum(),
        "primes": [prime_dict(p) for p in rep.primes],
    }


def module_dict(M: IdealPowerModule) -> dict:
    return {
        "s": M.s,
        "index": lattice_index(M.basis),
        "basis": [list(r) for r in M.basis.rows],
    }


def verdict_dict(v: Theorem2Verdict) -> dict:
    return {
        "s": v.s,
        "element": element_list(v.element),
        "condition_holds": v.condition_holds,
        "member": v.member,
        "classification": v.classification,
    }


def to_text(doc: Any, prefix: str = "") -> list[str]:
    """Flatten a document into ``dotted.key=value`` lines; lists of scalars stay inline."""
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            lines.extend(to_text(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(doc, list) and any(isinstance(v, (dict, list)) for v in doc):
        for i, v in enumerate(doc):
            lines.extend(to_text(v, f"{prefix}[{i}]"))
    else:
        lines.append(f"{prefix}={json.dumps(doc, ensure_ascii=False)}")
    return lines
