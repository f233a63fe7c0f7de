"""Dense linear-solve kernel shared by the reduced and full solvers.

LU with partial pivoting, a LAPACK reciprocal-condition estimate to detect
the analytic kappa = Gamma = 0 singularity, and one step of iterative
refinement so the resolvent integrals hold to machine precision even for
badly scaled rate combinations.
"""
from __future__ import annotations

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve
from scipy.linalg.lapack import dgecon

from .errors import SingularGenerator

RCOND_FLOOR = 1e-14


class LUFactorization:
    """LU factors of a generator matrix, reusable across solves."""

    def __init__(self, matrix: np.ndarray):
        self.matrix = np.ascontiguousarray(matrix, dtype=float)
        with warnings.catch_warnings():
            # exact zero pivots are reported via rcond below
            warnings.simplefilter("ignore", LinAlgWarning)
            self._lu, self._piv = lu_factor(self.matrix)
        anorm = np.linalg.norm(self.matrix, 1)
        rcond, info = dgecon(self._lu, anorm, norm="1")
        if info != 0:  # pragma: no cover - defensive
            raise SingularGenerator(f"condition estimate failed (info={info})")
        self.rcond = float(rcond)
        if self.rcond < RCOND_FLOOR:
            raise SingularGenerator(
                f"generator is numerically singular (rcond={self.rcond:.2e}); "
                "some probability is never absorbed, so the transport integrals diverge"
            )

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve matrix @ x = rhs with one iterative-refinement step."""
        rhs = np.asarray(rhs, dtype=float)
        x = lu_solve((self._lu, self._piv), rhs)
        residual = rhs - self.matrix @ x
        return x + lu_solve((self._lu, self._piv), residual)
