"""Scikit-learn facade: the disk-to-linkage map as a fitted transformer.

Fitting solves the harmonic field (the expensive precomputation);
transforming maps control points to pentagon vertex coordinates.  This is
the only module that imports scikit-learn.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .conformal import build_quad, solve_field
from .errors import ValidationError
from .linkage import DEFAULT_MESH_SIZE, DEGENERACY_TOL, evaluate_many


def _as_complex(X) -> list[complex]:
    arr = np.asarray(X)
    if np.iscomplexobj(arr) and arr.ndim == 1:
        return [complex(z) for z in arr]
    arr = arr.astype(float, copy=False)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError("X must be an (n, 2) array of disk coordinates")
    return [complex(x, y) for x, y in arr]


class PentagonMap(TransformerMixin, BaseEstimator):
    """Map points of the Poincare disk to equilateral pentagon linkages.

    Parameters
    ----------
    mesh_size : float
        Target mesh edge length for the harmonic-field solve during fit.
    classify_tol : float
        Bead-coincidence tolerance used when classifying linkage types.
    """

    def __init__(self, mesh_size: float = DEFAULT_MESH_SIZE,
                 classify_tol: float = DEGENERACY_TOL):
        self.mesh_size = mesh_size
        self.classify_tol = classify_tol

    def fit(self, X=None, y=None):
        quad = build_quad()
        self.field_ = solve_field(quad, self.mesh_size)
        self.modulus_ = self.field_.modulus
        self.n_features_in_ = 2
        return self

    def _check_fitted(self):
        if not hasattr(self, "field_"):
            raise ValidationError("PentagonMap must be fitted before use")

    def transform(self, X) -> np.ndarray:
        """Vertex coordinates, one row (x0, y0, ..., x4, y4) per point."""
        self._check_fitted()
        traces = evaluate_many(_as_complex(X), self.field_,
                               classify_tol=self.classify_tol)
        out = np.empty((len(traces), 10))
        for i, trace in enumerate(traces):
            for k, p in enumerate(trace.final.vertices):
                out[i, 2 * k] = p.real
                out[i, 2 * k + 1] = p.imag
        return out

    def predict(self, X) -> np.ndarray:
        """Combinatorial type index for each point."""
        self._check_fitted()
        traces = evaluate_many(_as_complex(X), self.field_,
                               classify_tol=self.classify_tol)
        return np.array([t.final.type_index for t in traces], dtype=int)
