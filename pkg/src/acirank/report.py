"""JSON-ready payloads for the command-line reports.

Column indices and column subsets are reported 1-based, matching the usual
mathematical notation; the library itself is 0-based.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional

from .aci import AciMatrix, Completion, shape_of
from .scalars import FieldSpec

SCHEMA_VERSION = 1


def one_based(cols) -> Optional[List[int]]:
    return None if cols is None else [j + 1 for j in cols]


def constant_grid(field: FieldSpec, rows) -> List[List[str]]:
    return [[field.format(v) for v in row] for row in rows]


def matrix_payload(M: AciMatrix) -> Dict[str, object]:
    return {"dims": [M.m, M.n], "entries": M.to_strings()}


def completion_payload(M: AciMatrix, c: Optional[Completion]) -> Optional[Dict[str, str]]:
    return None if c is None else c.by_name(M)


def validate_payload(M: AciMatrix) -> Dict[str, object]:
    shape = shape_of(M)
    return {
        "matrix": matrix_payload(M),
        "shape": {"tag": shape.tag.value, "degenerate": shape.degenerate, "void": shape.void},
        "indeterminates": {ind.name: ind.owner_column + 1 for ind in M.registry},
    }


def rank_payload(M: AciMatrix, report) -> Dict[str, object]:
    out = {
        "max_rank": report.max_rank,
        "max_witness": completion_payload(M, report.max_witness),
        "method": report.method,
    }
    if report.rank_set is not None:
        out["rank_set"] = sorted(report.rank_set)
        out["min_rank"] = report.min_rank
        out["min_witness"] = completion_payload(M, report.min_witness)
        out["rank_set_is_interval"] = sorted(report.rank_set) == list(range(report.min_rank, report.max_rank + 1))
    return out


def lattice_payload(lattice) -> Dict[str, object]:
    return {
        "kind": lattice.kind,
        "members": [one_based(x) for x in lattice.members],
        "f_bot": one_based(lattice.f_bot),
        "f_top": one_based(lattice.f_top),
        "matrix_is_FmR": lattice.matrix_is_FmR,
        "consistent_with_FmR_status": lattice.consistent,
    }


def wst_payload(M: AciMatrix, d) -> Dict[str, object]:
    return {
        "case": d.case,
        "kind": d.kind,
        "f_bot": one_based(d.f_bot),
        "f_top": one_based(d.f_top),
        "R": constant_grid(M.field, d.R),
        "Q": one_based(d.order),
        "blocks": {"W": matrix_payload(d.W), "S": matrix_payload(d.S), "T": matrix_payload(d.T)},
        "dims": {k: list(v) for k, v in d.dims.items()},
        "arranged": matrix_payload(d.arranged),
        "maxrank": d.max_rank,
    }


def zero_block_payload(M: AciMatrix, w) -> Dict[str, object]:
    return {
        "r": w.r,
        "s": w.s,
        "F": one_based(w.F),
        "R": constant_grid(M.field, w.R),
        "Q": one_based(w.order),
        "arranged": matrix_payload(w.arranged),
    }


def canonical_payload(M: AciMatrix, c) -> Dict[str, object]:
    dims = {k: (list(v) if isinstance(v, tuple) else v) for k, v in c.block_dims.items()}
    return {
        "form_tag": c.form_tag,
        "block_dims": dims,
        "rho": c.rho,
        "outside_theorem": c.outside_theorem,
        "R": constant_grid(M.field, c.R),
        "Q": one_based(c.order),
        "arranged": matrix_payload(c.arranged),
    }


def build_report(command: str, input_name: str, field: FieldSpec, payload, diagnostics=()) -> Dict[str, object]:
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "input": input_name,
        "field": str(field),
        "payload": payload,
        "diagnostics": list(diagnostics),
    }


def dumps(report: Dict[str, object]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
