"""Second-order vacuum entanglement between two-level probes coupled to a
massless scalar field."""
__version__ = "0.1.0"

from .errors import InvalidInputError, NumericError, PerturbativeRegimeError, VacprobeError
from .windows import Box, CosineSquared, Gaussian, window_ft, window_value
from .trajectories import Hyperbolic, Inertial, ProbeParams, causally_disconnected, position_at
from .correlators import Regulator, wightman_hyperbolic_cross, wightman_hyperbolic_same, wightman_minkowski
from .qubit_pair import (DensityMatrix4, EntanglementReport, chsh_max, correlation_check, partial_transpose,
                         ppt_verdict, reduced_state, von_neumann_entropy, werner_state)
from .amplitudes import (AmplitudeSet, PairConfig, QuadSettings, assemble_density, compute_amplitudes,
                         conditions_report, hyperbolic_pair, inertial_pair)
from .accelerated import pole_series, ratio_closed_form, ratio_numeric_check, ratio_series
