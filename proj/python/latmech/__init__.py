"""Periodic strut-lattice elasticity toolkit.

Stiffness tensors cross the boundary as 6x6 Mandel matrices (numpy arrays).
"""

from ._core import (
    HomogenizationError,
    Lattice,
    __version__,
    catalogue,
    cubic,
    directional_modulus,
    homogenize,
    isotropic,
    kelvin_eigenvalues,
    l_comp,
    l_dir,
    mandel_rotation,
    optimize,
    perturb,
    psd_project,
    relative_density,
    rotate,
    rotate_lattice,
    run_cli,
    tessellate,
)

__all__ = [
    "HomogenizationError",
    "Lattice",
    "__version__",
    "catalogue",
    "cubic",
    "directional_modulus",
    "homogenize",
    "isotropic",
    "kelvin_eigenvalues",
    "l_comp",
    "l_dir",
    "mandel_rotation",
    "optimize",
    "perturb",
    "psd_project",
    "relative_density",
    "rotate",
    "rotate_lattice",
    "run_cli",
    "tessellate",
]
