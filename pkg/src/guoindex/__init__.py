"""Structured nonnegative inverse eigenvalue problems for X-like permutative
matrices and block X-like matrices with circulant blocks."""

from .block import (BlockAssembly, assemble_from_spectral, block_spectrum,
                    coefficients_from_spectral, extract_spectral_family,
                    is_block_permutative, is_nonnegative)
from .circulant import circ, circ_eigenvalues, circ_from_eigenvalues, dft_matrix
from .guo import (ArrangementBijection, EigenMatrix, GuoReport, InvalidEigenMatrix,
                  build_spectral_family_from_E, construct_block, ennss_check,
                  fast_L_product, guo_index_block, phi)
from .oracle import brute_force_threshold, verify_spectrum
from .spectra import is_conjugate_closed, niep_diagnostics, suleimanova_check
from .xlike import (guo_index_xlike, per_x, spectrum_of_xlike, tau_apply,
                    xlike_feasible, xlike_from_list, xlike_linear_combination)

__version__ = "0.1.0"
