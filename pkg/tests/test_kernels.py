import os
import subprocess
import sys

import numpy as np
import pytest

from adaptscal import kernels
from adaptscal.kernels import available_backends

BACKENDS = available_backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")


def _run(code, value):
    env = dict(os.environ, ADAPTSCAL_KERNELS=value)
    return subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)


def test_env_forces_python_backend():
    out = _run("from adaptscal.kernels import BACKEND; print(BACKEND)", "python")
    assert out.returncode == 0
    assert out.stdout.strip() == "python"


def test_env_rejects_unknown_backend():
    out = _run("import adaptscal.kernels", "fortran")
    assert out.returncode != 0
    assert "ADAPTSCAL_KERNELS" in out.stderr


def test_selected_backend_is_available():
    assert kernels.BACKEND in BACKENDS


@needs_both
class TestBackendsAgree:
    py = BACKENDS["python"]
    cy = BACKENDS.get("cython")
    rng = np.random.default_rng(3)

    def test_project_rows(self):
        V = self.rng.normal(size=(200, 4)) * 3
        np.testing.assert_allclose(self.cy.project_rows(V), self.py.project_rows(V), atol=1e-14)

    @pytest.mark.parametrize("kind,param", [(0, 30.0), (1, 1.5)])
    def test_pairwise_increment(self, kind, param):
        W = self.py.project_rows(self.rng.random((15, 3)))
        W[3] = W[4]
        F = self.rng.random((15, 3))
        a = self.cy.pairwise_increment(W, F, 0.01, kind, param)
        b = self.py.pairwise_increment(W, F, 0.01, kind, param)
        np.testing.assert_allclose(a, b, atol=1e-12, rtol=1e-12)

    @pytest.mark.parametrize("kind,param", [(0, 30.0), (1, 1.0)])
    def test_grad_image_increment(self, kind, param):
        F = self.rng.random((15, 2))
        F[2] = F[5]
        a = self.cy.grad_image_increment(F, 0.01, kind, param)
        b = self.py.grad_image_increment(F, 0.01, kind, param)
        np.testing.assert_allclose(a, b, atol=1e-12, rtol=1e-12)

    @pytest.mark.parametrize("kind,param", [(0, 30.0), (1, 2.0)])
    def test_ensemble_energy(self, kind, param):
        P = self.rng.random((40, 3))
        assert self.cy.ensemble_energy(P, kind, param) == pytest.approx(
            self.py.ensemble_energy(P, kind, param), rel=1e-12)

    def test_nearest_distances(self):
        ref, sol = self.rng.random((300, 3)), self.rng.random((20, 3))
        np.testing.assert_allclose(self.cy.nearest_distances(ref, sol), self.py.nearest_distances(ref, sol),
                                   atol=1e-14)

    def test_gibbs_consensus(self):
        X = self.rng.random((5, 20, 3))
        S = self.rng.random((5, 20))
        np.testing.assert_allclose(self.cy.gibbs_consensus(X, S, 1e5), self.py.gibbs_consensus(X, S, 1e5),
                                   atol=1e-13)
        np.testing.assert_allclose(self.cy.gibbs_consensus(X, S, 3.0), self.py.gibbs_consensus(X, S, 3.0),
                                   atol=1e-13)

    def test_cbo_update(self):
        X = self.rng.random((5, 20, 3))
        Y = self.rng.random((5, 3))
        Z = self.rng.normal(size=X.shape)
        np.testing.assert_allclose(self.cy.cbo_update(X, Y, Z, 1.0, 0.01, 1.0),
                                   self.py.cbo_update(X, Y, Z, 1.0, 0.01, 1.0), atol=1e-14)


def test_coincident_riesz_energy_is_infinite(backend):
    P = np.array([[0.1, 0.2], [0.1, 0.2], [0.5, 0.5]])
    assert np.isinf(backend.ensemble_energy(P, backend.RIESZ if hasattr(backend, "RIESZ") else 1, 1.0))


def test_gibbs_weights_do_not_underflow(backend):
    X = np.array([[[0.0], [1.0]]])
    S = np.array([[50.0, 50.5]])
    Y = backend.gibbs_consensus(X, S, 1e5)
    assert np.all(np.isfinite(Y))
    assert Y[0, 0] == pytest.approx(0.0, abs=1e-12)
