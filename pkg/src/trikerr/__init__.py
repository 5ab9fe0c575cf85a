"""Driven-dissipative three-mode Kerr cavity: mean-field phase diagram,
closed-system landscape, fluctuation stability and spectra, second-cumulant
moment dynamics, and an exact truncated-Fock reference solver."""

from .params import SystemParams, validate_params
from .meanfield import (conserved_quantities, energy, meanfield_rhs,
                        phase_combo, populations, total_number)
from .integrate import DivergenceError, Trajectory, integrate, rk4_step
from .closed import (boundary_pump, eigenfrequencies, landscape_energy,
                     landscape_extrema, n_real_roots, symplectic_norm)
from .stability import (bogoliubov_matrix, covariance_block_form,
                        covariance_spectrum, is_exceptional,
                        stability_eigenvalues, turning_points,
                        uniform_eigenvalues, uniform_slope)
from .dynamics import (detect_limit_cycle, find_fixed_points, integrate_rk4,
                       label_uniform, random_initial_conditions,
                       uniform_branch)
from .keldysh import (assemble_keldysh_blocks, classical_fields,
                      default_grid, gf_poles_uniform, retarded_gf_uniform,
                      spectral_function, sum_rule, sum_rule_grid)
from .cumulant import (ClosureBreakdown, coherent_moments, cumulant_sweep,
                       integrate_cumulant, single_mode_rhs,
                       single_mode_sweep, three_mode_rhs)
from .oracle import (FockDimensionError, FockSpace, evolve, moment_vector,
                     oracle_sweep, steady_state, superoperator_matrix)
from .phasediagram import (census_point, classify_region, ep_band,
                           grid_point, overlay_closed_boundary, sweep)
from .config import ConfigError, RunConfig, load_config

__version__ = "0.1.0"

__all__ = [
    "SystemParams", "validate_params",
    "meanfield_rhs", "populations", "total_number", "energy",
    "conserved_quantities", "phase_combo",
    "integrate", "rk4_step", "Trajectory", "DivergenceError",
    "landscape_energy", "landscape_extrema", "eigenfrequencies",
    "symplectic_norm", "boundary_pump", "n_real_roots",
    "bogoliubov_matrix", "stability_eigenvalues", "uniform_eigenvalues",
    "uniform_slope", "turning_points", "covariance_spectrum",
    "covariance_block_form", "is_exceptional",
    "integrate_rk4", "random_initial_conditions", "find_fixed_points",
    "uniform_branch", "label_uniform", "detect_limit_cycle",
    "assemble_keldysh_blocks", "classical_fields", "retarded_gf_uniform",
    "gf_poles_uniform", "spectral_function", "default_grid",
    "sum_rule_grid", "sum_rule",
    "coherent_moments", "three_mode_rhs", "integrate_cumulant",
    "cumulant_sweep", "single_mode_rhs", "single_mode_sweep",
    "ClosureBreakdown",
    "FockSpace", "FockDimensionError", "steady_state", "evolve",
    "moment_vector", "superoperator_matrix", "oracle_sweep",
    "census_point", "classify_region", "grid_point", "sweep", "ep_band",
    "overlay_closed_boundary",
    "load_config", "RunConfig", "ConfigError",
    "__version__",
]
