"""Regular plane graphs whose faces share one degree except for a few."""

__version__ = "0.1.0"

from .counting import (  # noqa: E402
    Feasible,
    Infeasible,
    Signature,
    admissible_pairs,
    feasibility_check,
    phi,
    platonic_vertex_count,
    total_faces,
    vertices_for_one_disparate,
)
from .families import (  # noqa: E402
    FamilyId,
    PlatonicId,
    declared_face_vector,
    f3_fixtures,
    generate_family,
    generate_platonic,
)
from .planar_map import (  # noqa: E402
    FaceWalk,
    PlanarMap,
    canonical_code,
    chords_of,
    face_vector,
    genus,
    trace_faces,
)

__all__ = [
    "FaceWalk",
    "FamilyId",
    "Feasible",
    "Infeasible",
    "PlanarMap",
    "PlatonicId",
    "Signature",
    "admissible_pairs",
    "canonical_code",
    "chords_of",
    "declared_face_vector",
    "f3_fixtures",
    "face_vector",
    "feasibility_check",
    "generate_family",
    "generate_platonic",
    "genus",
    "phi",
    "platonic_vertex_count",
    "total_faces",
    "trace_faces",
    "vertices_for_one_disparate",
]
