"""Sign-valued p-forms, their distance graphs, and realisations."""

from .calibration import (
    ComassReport,
    Frame,
    calibrated_coordinate_planes,
    comass,
    evaluate,
)
from .config import RunConfig, load_config
from .democratic import (
    CatalogEntry,
    ClassificationCatalog,
    DistanceAssignment,
    Factorization,
    bell,
    circulant_matrix,
    classify_small,
    count_symmetry_families,
    cyclic_shift_generators,
    even_example_matrix,
    product_matrix,
    symmetry_families,
)
from .errors import (
    CapacityError,
    DomainError,
    PreconditionError,
    SpecialFormsError,
)
from .forms import (
    OrientedSubset,
    SignedPermutation,
    SpecialForm,
    apply,
    canonicalize,
    component,
    orbit_equivalent,
    subset_distance,
)
from .graphs import (
    CurveDecomposition,
    CurveFamily,
    DistanceMatrix,
    SymmetryGroupReport,
    curve_decomposition,
    find_relabeling,
    graph_of_form,
    is_admissible,
    is_democratic,
    is_predemocratic,
    symmetries,
    to_dot,
)
from .realization import (
    GraphFunction,
    Realization,
    VerificationReport,
    equivalent,
    forms_of,
    lift_symmetry,
    realize,
    solve,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CatalogEntry",
    "ClassificationCatalog",
    "ComassReport",
    "CurveDecomposition",
    "CurveFamily",
    "DistanceAssignment",
    "DistanceMatrix",
    "DomainError",
    "Factorization",
    "Frame",
    "GraphFunction",
    "OrientedSubset",
    "PreconditionError",
    "Realization",
    "RunConfig",
    "SignedPermutation",
    "SpecialForm",
    "SpecialFormsError",
    "SymmetryGroupReport",
    "VerificationReport",
    "apply",
    "bell",
    "calibrated_coordinate_planes",
    "canonicalize",
    "circulant_matrix",
    "classify_small",
    "comass",
    "component",
    "count_symmetry_families",
    "curve_decomposition",
    "cyclic_shift_generators",
    "equivalent",
    "evaluate",
    "even_example_matrix",
    "find_relabeling",
    "forms_of",
    "graph_of_form",
    "is_admissible",
    "is_democratic",
    "is_predemocratic",
    "lift_symmetry",
    "load_config",
    "orbit_equivalent",
    "product_matrix",
    "realize",
    "solve",
    "subset_distance",
    "symmetries",
    "symmetry_families",
    "to_dot",
    "verify",
]
