"""Exterior calculus on cubical lattices with mesh-width control.

The package builds oriented cube complexes over integer lattices, the
coboundary and its adjoint on square-summable cochains, the equivalent
componentwise picture for lattice differential forms, the fiberwise
frequency-domain matrices of the first-order operator, and a certification
harness that bounds the distance between lattice and continuum resolvents
as an explicit function of the mesh width.
"""

from .cochains import (
    Cochain,
    GradedCochain,
    chirality,
    d,
    d_star,
    delta,
    graded_inner,
    hodge_dirac,
    inner,
    laplacian,
    massive_dirac,
    norm,
)
from .continuum_limit import (
    ConvergenceReport,
    WindowFunction,
    build_window,
    le0_bound,
    le1_bound,
    theorem_rate,
)
from .cube_complex import (
    IndexMap,
    OrientedCube,
    boundary,
    canonicalize,
    cofaces,
    cube,
    format_cube,
    parse_cube,
    reverse,
)
from .forms import (
    FormField,
    form_inner,
    form_norm,
    hodge_star,
    tilde_d,
    tilde_d_star,
    tilde_laplacian,
    u_inverse,
    u_map,
    wedge,
)
from .symbols import (
    SymbolMatrix,
    chirality_matrix,
    continuum_symbol,
    discrete_symbol,
    fiber_resolvent,
    spectral_radius_sweep,
)
from .torus_lab import TorusComplex, assemble, closed_form_spectrum, dirac_spectrum, harmonic_dimensions

__version__ = "0.1.0"

__all__ = [
    "Cochain",
    "GradedCochain",
    "chirality",
    "d",
    "d_star",
    "delta",
    "graded_inner",
    "hodge_dirac",
    "inner",
    "laplacian",
    "massive_dirac",
    "norm",
    "ConvergenceReport",
    "WindowFunction",
    "build_window",
    "le0_bound",
    "le1_bound",
    "theorem_rate",
    "IndexMap",
    "OrientedCube",
    "boundary",
    "canonicalize",
    "cofaces",
    "cube",
    "format_cube",
    "parse_cube",
    "reverse",
    "FormField",
    "form_inner",
    "form_norm",
    "hodge_star",
    "tilde_d",
    "tilde_d_star",
    "tilde_laplacian",
    "u_inverse",
    "u_map",
    "wedge",
    "SymbolMatrix",
    "chirality_matrix",
    "continuum_symbol",
    "discrete_symbol",
    "fiber_resolvent",
    "spectral_radius_sweep",
    "TorusComplex",
    "assemble",
    "closed_form_spectrum",
    "dirac_spectrum",
    "harmonic_dimensions",
    "__version__",
]
