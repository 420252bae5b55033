"""Multiphoton coherent states of the harmonic oscillator.

State construction, Heisenberg uncertainty products, Mandel Q photon
statistics, Wigner functions, and cyclic geometric phases for the scalar
multiphoton coherent states and their graded two-component extension.
"""

from ._core import (
    CircleComponent,
    LoopReport,
    UncertaintyResult,
    WignerGrid,
    circle_decomposition,
    coefficients,
    geometric_phase,
    geometric_phase_susy,
    loop_check,
    loop_check_susy,
    mandel_q,
    mandel_q_susy,
    mandel_root_k2,
    normalization,
    supercoherent_components,
    uncertainty,
    uncertainty_susy,
    verify,
    wigner,
    wigner_susy,
)

__version__ = "1.0.0"

__all__ = [
    "CircleComponent",
    "LoopReport",
    "UncertaintyResult",
    "WignerGrid",
    "circle_decomposition",
    "coefficients",
    "geometric_phase",
    "geometric_phase_susy",
    "loop_check",
    "loop_check_susy",
    "mandel_q",
    "mandel_q_susy",
    "mandel_root_k2",
    "normalization",
    "supercoherent_components",
    "uncertainty",
    "uncertainty_susy",
    "verify",
    "wigner",
    "wigner_susy",
]
