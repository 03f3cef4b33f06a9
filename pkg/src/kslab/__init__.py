"""Exact Kochen-Specker colorability checks and the twin-argument pipeline."""

from .contextual import (
    Context,
    ContextualModel,
    HiddenState,
    Verdict,
    build_loophole_model,
    requires_multiple_contexts,
    run_conway_kochen_argument,
    twin_consistency,
    valid_context,
)
from .geometry import QuadExt, Ray, canonicalize, dot, rank, ray
from .ks import (
    DirectionSet,
    SearchReport,
    Status,
    build_structure,
    export_cnf,
    import_cnf_result,
    search_colorings,
    validate_coloring,
)

__version__ = "0.1.0"
