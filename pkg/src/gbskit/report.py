"""End-to-end analysis of a graph-of-groups document.

The report lists the roots, the components of the GBS core with their
class, the counts ``s`` (general GBS components), ``t`` (Z^2 or Klein
bottle components) and ``ignored`` (Z components), and for every
non-cyclic root the constraint a centralizer twist in the kernel must
satisfy.  The rank of that kernel is not computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .core import ComponentClass, classify_component, extract_core
from .development import BallLimits, centralizer_of_power
from .graph import CYCLIC, GraphOfGroupsSpec, sort_key
from .presentation import Presentation, pi1_presentation

REPORT_FORMAT = "report-v1"
NOT_COMPUTED = "not computed"

CASES = {
    ComponentClass.Z: ("Case1", "Z"),
    ComponentClass.Z2: ("Case2", "Z or Z2"),
    ComponentClass.KLEIN_BOTTLE: ("Case2", "Z or Z2"),
    ComponentClass.GENERAL: ("Case3", "Z"),
}


@dataclass(frozen=True)
class ComponentInfo:
    id: str
    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    cls: ComponentClass
    presentation: Optional[Presentation] = None


@dataclass(frozen=True)
class RootInfo:
    root: str
    component: str
    case: str
    constraint: str
    # status / vertices / edges of the explored centralizer ball
    centralizer: dict = field(default_factory=dict, hash=False)


@dataclass(frozen=True)
class AnalysisReport:
    cyclic_roots: tuple[str, ...]
    noncyclic_roots: tuple[str, ...]
    components: tuple[ComponentInfo, ...]
    per_root: tuple[RootInfo, ...]
    limits: BallLimits
    kernel_rank: str = NOT_COMPUTED

    def _count(self, *classes) -> int:
        return sum(c.cls in classes for c in self.components)

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def s(self) -> int:
        return self._count(ComponentClass.GENERAL)

    @property
    def t(self) -> int:
        return self._count(ComponentClass.Z2, ComponentClass.KLEIN_BOTTLE)

    @property
    def ignored(self) -> int:
        return self._count(ComponentClass.Z)


def _sorted_ids(xs) -> tuple[str, ...]:
    return tuple(str(x) for x in sorted(xs, key=sort_key))


def analyze(spec: GraphOfGroupsSpec, limits: BallLimits = BallLimits()) -> AnalysisReport:
    dec = extract_core(spec)
    comps = []
    owner = {}
    for i, c in enumerate(dec.components, 1):
        cid = f"D{i}"
        cls = classify_component(c)
        edges = {min(e, c.reverse(e), key=sort_key) for e in c.edges}
        pres = pi1_presentation(c) if cls is ComponentClass.GENERAL else None
        comps.append(ComponentInfo(cid, _sorted_ids(c.vertices), _sorted_ids(edges), cls, pres))
        for v in c.vertices:
            owner[v] = comps[-1]

    cyclic = [r.id for r in spec.all_roots() if spec.vertex_kind[r.vertex] == CYCLIC]
    noncyclic = [r.id for r in spec.all_roots() if spec.vertex_kind[r.vertex] != CYCLIC]
    per_root = []
    for rid in sorted(noncyclic, key=sort_key):
        comp = owner[rid]
        case, constraint = CASES[comp.cls]
        ball = centralizer_of_power(dec.core, rid, 1, limits).summary()
        per_root.append(RootInfo(rid, comp.id, case, constraint, ball))
    return AnalysisReport(
        _sorted_ids(cyclic), _sorted_ids(noncyclic), tuple(comps), tuple(per_root), limits
    )


def _to_json(r: AnalysisReport) -> dict:
    return {
        "format": REPORT_FORMAT,
        "roots": {"cyclic": list(r.cyclic_roots), "noncyclic": list(r.noncyclic_roots)},
        "components": [
            {
                "id": c.id,
                "vertices": list(c.vertices),
                "edges": list(c.edges),
                "class": c.cls.value,
                "presentation": c.presentation.to_json() if c.presentation else None,
            }
            for c in r.components
        ],
        "k": r.k,
        "s": r.s,
        "t": r.t,
        "ignored": r.ignored,
        "per_root": [
            {
                "root": p.root,
                "component": p.component,
                "case": p.case,
                "constraint": p.constraint,
                "centralizer": dict(p.centralizer),
            }
            for p in r.per_root
        ],
        "limits": {"max_vertices": r.limits.max_vertices, "max_abs_index": r.limits.max_abs_index},
        "kernel_rank": r.kernel_rank,
    }


def _text(r: AnalysisReport) -> str:
    out = [
        f"roots (cyclic): {', '.join(r.cyclic_roots) or '-'}",
        f"roots (non-cyclic): {', '.join(r.noncyclic_roots) or '-'}",
        f"components: {r.k}",
    ]
    for c in r.components:
        out.append(f"  {c.id}: {c.cls.value}  vertices: {' '.join(c.vertices)}  edges: {' '.join(c.edges) or '-'}")
        if c.presentation is not None:
            out.append(f"      presentation: {c.presentation}")
    out += [f"k = {r.k}", f"s = {r.s}", f"t = {r.t}", f"ignored = {r.ignored}"]
    if r.per_root:
        out.append("per-root kernel constraints:")
        for p in r.per_root:
            ball = p.centralizer
            out.append(
                f"  {p.root}: {p.component} {p.case}, c_{p.root} confined to {p.constraint}; "
                f"centralizer ball {ball['status']} ({ball['vertices']} vertices, {ball['edges']} edges)"
            )
    out.append(f"rank(Z) = {r.kernel_rank}")
    out.append(f"limits: max-vertices {r.limits.max_vertices}, max-index {r.limits.max_abs_index}")
    return "\n".join(out) + "\n"


def render_report(r: AnalysisReport, format: str = "text") -> str:
    if format == "text":
        return _text(r)
    if format == "machine":
        return json.dumps(_to_json(r), indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def parse_report(text: str) -> AnalysisReport:
    """Inverse of ``render_report(r, "machine")``."""
    d = json.loads(text)
    if d.get("format") != REPORT_FORMAT:
        raise ValueError(f"expected format {REPORT_FORMAT!r}")
    comps = tuple(
        ComponentInfo(
            c["id"],
            tuple(c["vertices"]),
            tuple(c["edges"]),
            ComponentClass(c["class"]),
            Presentation.from_json(c["presentation"]) if c["presentation"] else None,
        )
        for c in d["components"]
    )
    per_root = tuple(
        RootInfo(p["root"], p["component"], p["case"], p["constraint"], dict(p["centralizer"]))
        for p in d["per_root"]
    )
    lim = d["limits"]
    return AnalysisReport(
        tuple(d["roots"]["cyclic"]),
        tuple(d["roots"]["noncyclic"]),
        comps,
        per_root,
        BallLimits(lim["max_vertices"], lim["max_abs_index"]),
        d["kernel_rank"],
    )
