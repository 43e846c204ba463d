"""Per-polytope analysis record and its JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from typing import Any

from .conifold import conifold_report, hodge_data
from .errors import DomainError
from .polytope import LatticePolytope, facet_has_interior_point, is_reflexive, polar_dual
from .topology import topology_data

REPORT_FIELDS = (
    "source",
    "admissible",
    "smoothable",
    "p",
    "dp",
    "rk",
    "h11_resolved",
    "h21_resolved",
    "h11_smoothed",
    "h21_smoothed",
    "h_cubed",
    "c2_h",
    "c3",
    "ind",
    "multiplicity",
    "facet_interior_point",
    "operator",
    "instantons",
    "error",
)


@dataclass
class Report:
    source: str | None = None
    admissible: bool | None = None
    smoothable: bool | None = None
    p: int | None = None
    dp: int | None = None
    rk: int | None = None
    h11_resolved: int | None = None
    h21_resolved: int | None = None
    h11_smoothed: int | None = None
    h21_smoothed: int | None = None
    h_cubed: int | None = None
    c2_h: int | None = None
    c3: int | None = None
    ind: int | None = None
    multiplicity: int | None = None
    facet_interior_point: bool | None = None
    operator: dict | None = None
    instantons: list[str] | None = None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        """Only the stages that ran; key order is fixed by ``REPORT_FIELDS``."""
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                out[f.name] = v
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    def to_text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.to_dict().items())


def analyze(delta: LatticePolytope, multiplicity: int = 1, source: str | None = None) -> Report:
    """Run the combinatorial pipeline on a Newton polytope ``delta``."""
    rep = Report(source=source)
    if not is_reflexive(delta):
        raise DomainError("input polytope is not reflexive")
    dual = polar_dual(delta)
    rep.facet_interior_point = facet_has_interior_point(delta)
    cr = conifold_report(delta, dual)
    rep.admissible = cr.admissible
    if not cr.admissible:
        return rep
    rep.smoothable = cr.smoothable
    rep.p, rep.dp, rep.rk = cr.p, cr.dp, cr.rk
    if not cr.smoothable:
        return rep
    hd = hodge_data(delta, cr, dual)
    rep.h11_resolved, rep.h21_resolved = hd.h11_resolved, hd.h21_resolved
    rep.h11_smoothed, rep.h21_smoothed = hd.h11_smoothed, hd.h21_smoothed
    td = topology_data(delta, hd, multiplicity)
    rep.h_cubed, rep.c2_h, rep.c3 = td.h_cubed, td.c2_h, td.c3
    rep.ind, rep.multiplicity = td.ind, td.multiplicity
    return rep
