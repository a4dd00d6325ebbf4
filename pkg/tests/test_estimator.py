"""Estimator facade tests: sklearn conventions over the disk-to-linkage map."""

import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from pentamap.errors import ValidationError
from pentamap.estimator import PentagonMap


@pytest.fixture(scope="module")
def fitted():
    return PentagonMap(mesh_size=0.01).fit()


class TestFit:
    def test_fit_exposes_field_and_modulus(self, fitted):
        assert fitted.field_.mesh_size == 0.01
        assert abs(fitted.modulus_ - 0.89281029) <= 1e-3
        assert fitted.n_features_in_ == 2

    def test_unfitted_transform_raises(self):
        with pytest.raises(ValidationError, match="fitted"):
            PentagonMap().transform([[0.0, 0.0]])


class TestTransform:
    def test_shape_and_closure(self, fitted):
        X = np.array([[0.0, 0.0], [0.2, 0.1], [-0.3, -0.25]])
        out = fitted.transform(X)
        assert out.shape == (3, 10)
        for row in out:
            vertices = [complex(row[2 * k], row[2 * k + 1]) for k in range(5)]
            assert vertices[0] == 0j
            for k in range(5):
                step = vertices[k] - vertices[k - 1]
                assert abs(abs(step) - 1.0) <= 1e-9

    def test_accepts_complex_vector(self, fitted):
        a = fitted.transform(np.array([0.2 + 0.1j, -0.05j]))
        b = fitted.transform(np.array([[0.2, 0.1], [0.0, -0.05]]))
        assert np.array_equal(a, b)

    def test_rejects_wrong_width(self, fitted):
        with pytest.raises(ValidationError, match="n, 2"):
            fitted.transform(np.zeros((4, 3)))

    def test_predict_types(self, fitted):
        types = fitted.predict(np.array([[0.0, 0.0], [0.2, 0.1]]))
        assert types.dtype.kind == "i"
        assert types[0] == 0


class TestSklearnConventions:
    def test_get_params_round_trip(self):
        est = PentagonMap(mesh_size=0.02, classify_tol=1e-4)
        params = est.get_params()
        assert params == {"mesh_size": 0.02, "classify_tol": 1e-4}
        other = clone(est)
        assert other.get_params() == params

    def test_set_params(self):
        est = PentagonMap().set_params(mesh_size=0.05)
        assert est.mesh_size == 0.05

    def test_pipeline_fit_transform(self):
        X = np.array([[0.0, 0.0], [0.1, -0.2]])
        pipe = Pipeline([("pentagon", PentagonMap(mesh_size=0.02))])
        out = pipe.fit_transform(X)
        assert out.shape == (2, 10)
        assert math.isfinite(out.sum())
