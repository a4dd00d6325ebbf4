"""Pentagon linkages parameterized by the hyperbolic plane.

A point of the Poincare disk is mapped to an equilateral pentagon linkage:
five unit edge directions (the juzu) whose Moebius-centered sum closes up.
The disk carries the right-angled pentagon tiling; crossing a tile side
swaps two linkage labels, so the tiling's cell complex indexes the 114
combinatorial types of linkage configurations.
"""

from .combinatorics import (
    CellComplex,
    CombinatorialType,
    Juzu,
    build_cell_complex,
    classify,
    enumerate_types,
    type_from_cycle,
)
from .conformal import (
    FoldResult,
    HarmonicField,
    QuadDomain,
    build_quad,
    default_cache_path,
    export_field_json,
    fold,
    load_field,
    psi,
    psi_many,
    save_field,
    solve_field,
)
from .errors import (
    ConvergenceError,
    OutOfRangeError,
    OutsideDiskError,
    ResourceLimitError,
    ThreeCoincideError,
    ValidationError,
)
from .hyperbolic import (
    ALPHA,
    CirclePoint,
    DiskPoint,
    Geodesic,
    MobiusMap,
    central_reflection,
    disk_automorphism,
    hyperbolic_distance,
    point_reflection,
    rotation,
)
from .linkage import (
    ConjectureReport,
    Linkage,
    RecipeTrace,
    RequirementReport,
    check_requirements,
    default_field,
    evaluate,
    evaluate_many,
    probe_conjectures,
)
from .tiling import Tiling, generate_tiling

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "CellComplex",
    "CirclePoint",
    "CombinatorialType",
    "ConjectureReport",
    "ConvergenceError",
    "DiskPoint",
    "FoldResult",
    "Geodesic",
    "HarmonicField",
    "Juzu",
    "Linkage",
    "MobiusMap",
    "OutOfRangeError",
    "OutsideDiskError",
    "QuadDomain",
    "RecipeTrace",
    "RequirementReport",
    "ResourceLimitError",
    "ThreeCoincideError",
    "Tiling",
    "ValidationError",
    "build_cell_complex",
    "build_quad",
    "central_reflection",
    "check_requirements",
    "classify",
    "default_cache_path",
    "default_field",
    "disk_automorphism",
    "enumerate_types",
    "evaluate",
    "evaluate_many",
    "export_field_json",
    "fold",
    "generate_tiling",
    "hyperbolic_distance",
    "load_field",
    "point_reflection",
    "probe_conjectures",
    "psi",
    "psi_many",
    "rotation",
    "save_field",
    "solve_field",
    "type_from_cycle",
    "__version__",
]
