"""Ternary bent functions over GF(3^n): construction and exact verification.

The package builds GF(3^n) arithmetic on packed base-3 integers (gf),
computes Walsh spectra exactly in the Eisenstein integers Z[omega]
(eisenstein, spectrum), classifies bentness and weak regularity from the
spectrum (analysis), checks Maiorana-McFarland membership through first
and second derivatives on a chosen subspace (mm), and constructs the
binomial and trinomial families together with their four-variable formal
expansions (families).  The command line lives in cli; formats and plots
handle the file formats and figures it emits.
"""

from .eisenstein import OMEGA, ONE, ZERO, EisensteinInt, omega_pow
from .gf import (DEFAULT_MAX_N, MAX_N_ENV, FieldCtx, FieldError,
                 InternalInconsistencyError, ctx_new, default_modulus,
                 format_elem, format_modulus, format_trits, parse_elem,
                 parse_modulus)
from .spectrum import (NAIVE_MAX_N, TernaryFn, WalshSpectrum, dual_basis,
                       spectrum_fast, spectrum_naive, walsh_at)
from .analysis import (NOT_BENT, NOT_WEAKLY_REGULAR, REGULAR, WEAK_MINUS,
                       Certificate, algebraic_degree, anf, check_bent,
                       dual_of, ea_move, is_balanced)
from .mm import (MMWitness, Subspace, binomial_subspace, check_completed_mm,
                 check_mm_regular, check_mm_self_orthogonal, d1, d2,
                 d2_vanishes_on, trinomial_subspace)
from .families import (FAMILIES, QUARTIC_ORDER16, QUARTIC_PRIMITIVE,
                       MultivariatePoly, coeff_a2, exceptionality_check,
                       find_quartic_root, formal_expand,
                       make_baseline, make_binomial_general,
                       make_binomial_k3mod4, make_exceptional, make_family,
                       make_trinomial, multivariate_expand, quartic_coords,
                       table_from_multivariate, trinomial_coeffs,
                       walsh_closed_form)
from .formats import (CERT_KEYS, TABLE_MAGIC, certificate_to_text,
                      read_certificate, read_sweep, read_table,
                      regularity_token, spectrum_lines, spectrum_sha256,
                      table_sha256, table_to_text, write_certificate,
                      write_spectrum, write_sweep, write_table,
                      write_transcript)

__version__ = "0.1.0"

__all__ = [
    "EisensteinInt", "ZERO", "ONE", "OMEGA", "omega_pow",
    "FieldCtx", "FieldError", "InternalInconsistencyError", "ctx_new",
    "default_modulus", "parse_elem", "format_elem", "format_trits",
    "parse_modulus", "format_modulus", "DEFAULT_MAX_N", "MAX_N_ENV",
    "TernaryFn", "WalshSpectrum", "walsh_at", "spectrum_naive",
    "spectrum_fast", "dual_basis", "NAIVE_MAX_N",
    "Certificate", "check_bent", "anf", "algebraic_degree", "is_balanced",
    "dual_of", "ea_move", "REGULAR", "WEAK_MINUS", "NOT_WEAKLY_REGULAR",
    "NOT_BENT",
    "Subspace", "MMWitness", "d1", "d2", "d2_vanishes_on",
    "check_mm_regular", "check_mm_self_orthogonal", "check_completed_mm",
    "binomial_subspace", "trinomial_subspace",
    "FAMILIES", "make_family", "make_binomial_general",
    "make_binomial_k3mod4", "make_trinomial", "make_baseline",
    "make_exceptional", "coeff_a2", "trinomial_coeffs",
    "find_quartic_root", "quartic_coords", "walsh_closed_form",
    "MultivariatePoly", "multivariate_expand", "formal_expand",
    "table_from_multivariate", "exceptionality_check",
    "QUARTIC_PRIMITIVE", "QUARTIC_ORDER16",
    "TABLE_MAGIC", "CERT_KEYS", "table_to_text", "write_table", "read_table",
    "table_sha256", "regularity_token", "certificate_to_text",
    "write_certificate", "read_certificate", "spectrum_lines",
    "write_spectrum", "spectrum_sha256", "write_sweep", "read_sweep",
    "write_transcript",
    "__version__",
]
