"""Szego quadrature on the unit circle from unitary moment data.

The pipeline: build a Heisenberg model, compute moments
X_j = <psi0|U^j|psi0> exactly from its spectrum, assemble the Toeplitz
Krylov pair, regularize and project to the nearest unitary, and read the
quadrature nodes/weights off the eigensystem of the projected operator.
"""

from .baselines import (LaurentApproximation, estimate_from_moments,
                        fixed_laurent_bound, fourier_coefficients,
                        least_squares_laurent, optimal_laurent)
from .functions import (Gibbs, Greens, Laurent, Monomial, evaluate,
                        node_to_energy, random_laurent)
from .krylov import (KrylovPair, RegularizedGram, assemble, default_eta,
                     gram_schmidt_reference, orthonormalize,
                     project_to_unitary, regularize, stable_unitary)
from .linalg import (HermitianEigensystem, UnitaryEigensystem,
                     hermitian_eigendecompose, psd_power, svd,
                     unitary_eigendecompose)
from .model import (Hamiltonian, PauliTerm, SpectralData, build_heisenberg,
                    materialize_dense, spectral_decompose)
from .moments import (MomentSequence, NoiseModel, antiferromagnet_state,
                      apply_noise, basis_state, combo_state, exact_functional,
                      moments, prepare_state, random_state, support_counts)
from .rule import (SzegoRule, apply_rule, build_general_rules, build_rule,
                   general_matrix_element, matrix_function_element,
                   merge_degenerate_nodes)

__version__ = "0.1.0"
