"""Euler-Kronecker constants of prime cyclotomic fields.

Computes the constants attached to the q-th cyclotomic field and its
maximal real subfield, the maximum modulus of the logarithmic derivative
of the Dirichlet L-functions at s = 1, and generalized Euler constants in
arithmetic progressions.  Character sums are evaluated through FFTs over
the cyclic group generated by a primitive root, with a decimation split
that halves the precomputation for the parity-restricted sums.
"""

from .cache import (CacheFormatError, ChecksumMismatchError, FunctionTag,
                    MergeError, ValueTable, closed_form_sum, load, merge,
                    precompute, save)
from .ek import (CharacterSumError, CharacterSums, EKResult, checksum,
                 compute_ek, compute_even_part, compute_mq, compute_odd_sum)
from .fft import DIFPair, Spectrum, dft, dif_split, naive_dft
from .multgroup import (NotPrimeError, PrimeContext, build_context, is_prime,
                        primitive_root)
from .offsets import OffsetSequence, greedy_offsets, scan_candidates, v_of_q
from .specfun import (CONSTANTS, DEFAULT_CONFIG, EULER_GAMMA, GAMMA1,
                      LOG_2PI, ZETA_DD_AT_0, Constants, DisagreementError,
                      EvalConfig, NonConvergenceError, QuadratureError,
                      digamma, gamma_n, log_gamma, psi_n, s_function, s_pair,
                      t_function)
from .stieltjes import StieltjesTable, gamma0_aq, gamma1_aq, gammak_aq

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS", "CacheFormatError", "CharacterSumError", "CharacterSums",
    "ChecksumMismatchError", "Constants", "DEFAULT_CONFIG", "DIFPair",
    "DisagreementError", "EKResult", "EULER_GAMMA", "EvalConfig",
    "FunctionTag", "GAMMA1", "LOG_2PI", "MergeError", "NonConvergenceError",
    "NotPrimeError", "OffsetSequence", "PrimeContext", "QuadratureError",
    "Spectrum", "StieltjesTable", "ValueTable", "ZETA_DD_AT_0",
    "build_context", "checksum", "closed_form_sum", "compute_ek",
    "compute_even_part", "compute_mq", "compute_odd_sum", "dft", "dif_split",
    "digamma", "gamma0_aq", "gamma1_aq", "gamma_n", "gammak_aq",
    "greedy_offsets", "is_prime", "load", "log_gamma", "merge", "naive_dft",
    "precompute", "primitive_root", "psi_n", "s_function", "s_pair", "save",
    "scan_candidates", "t_function", "v_of_q",
]
