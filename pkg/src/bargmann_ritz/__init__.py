"""Variational and Rayleigh-Ritz ground states of anharmonic oscillators.

Trial states live in the Segal-Bargmann space of entire functions; exact
reference energies come from a Fock-basis Ritz matrix and an independent
finite-difference solver.
"""

from .models import (Family, ModelError, ModelSpec, cubic_quartic, dimension_total_energy,
                     harmonic, make_model, power2n, quartic)
from .trials import (AdmissibilityError, BargmannSqueezed, Coherent, DisplacedMonomial,
                     Monomial, PositionGaussian, check_admissible)
from .moments import gaussian_moment, trial_energy, trial_moment
from .closed_forms import FormulaId, FormulaMismatch
from .optimize import (MinimizeResult, OptimizeError, SeriesFit, cardano_root, fit_series,
                       minimize_displaced, minimize_scalar)
from .quadrature import Observable, bargmann_expectation, bargmann_inner, quadrature_energy
from .ritz import RitzError, converged_spectrum, hamiltonian_matrix, ritz_spectrum
from .fd import FDError, fd_ground_energy
from .validation import ValidationRecord, validate_all, validate_formula

__version__ = "0.1.0"
