"""Computations in graphs of groups with cyclic edge groups.

Covers Serre graphs and generalized Baumslag-Solitar (GBS) graphs, a
normal form for words, centralizers of elliptic elements through the
development, the GBS core of a root-decorated graph of groups, centralizer
twists, and a report tying these together.
"""

from .core import (
    ComponentClass,
    CoreDecomposition,
    classify_component,
    collapse_reduce,
    collapse_trace,
    extract_core,
)
from .development import (
    Answer,
    BallLimits,
    DevEdge,
    DevVertex,
    Status,
    centralizer_elements,
    centralizer_of_power,
    component_ball,
    dev_incident,
    elliptic_conjugate,
    is_in_centralizer,
)
from .errors import *  # noqa: F401,F403
from .graph import (
    GBSGraph,
    GraphOfGroupsSpec,
    Root,
    SerreGraph,
    export_dot,
    gbs_graph_of,
    parse_spec,
    serialize_spec,
    validate,
)
from .presentation import Presentation, Relation, pi1_presentation
from .report import AnalysisReport, analyze, parse_report, render_report
from .twists import (
    RelativeEndomorphism,
    apply_to_word,
    check_equivalence_witness,
    compose,
    fixes_centralizer_check,
    identity_endomorphism,
    search_identity_witness,
    twist_from_centralizers,
)
from .words import (
    Word,
    britton_reduce,
    canonical_form,
    classify_element,
    commutes,
    cyclic_reduce,
    equals,
    invert,
    multiply,
    parse_word,
    power,
)

__version__ = "0.1.0"
