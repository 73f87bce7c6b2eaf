from spectral.kernel import interpolation_ratio, kernel_l1_decay, kernel_synthesize, synthesis_residue
from spectral.symbol import delta, eigenvalues, expA_closed, matrix_A, symbol_actions, symbol_grid

__all__ = [
    "delta",
    "eigenvalues",
    "expA_closed",
    "interpolation_ratio",
    "kernel_l1_decay",
    "kernel_synthesize",
    "matrix_A",
    "symbol_actions",
    "symbol_grid",
    "synthesis_residue",
]
