"""Pure numpy implementations of the compiled kernels in ``_core.pyx``.

Used when the extension is not built, or when ``ADAPTSCAL_KERNELS=python``.
Every function has the same signature and contract as its compiled twin;
results agree to rounding, not bit for bit.
"""

import numpy as np

BACKEND = "python"

MORSE = 0
RIESZ = 1


def _radial_derivative(kind, param, r):
    out = np.zeros_like(r)
    pos = r > 0.0
    if kind == MORSE:
        out[pos] = -param * np.exp(-param * r[pos])
    else:
        out[pos] = -param * r[pos] ** (-param - 1.0)
    return out


def _value(kind, param, r):
    if kind == MORSE:
        return np.exp(-param * r)
    out = np.full_like(r, np.inf)
    pos = r > 0.0
    out[pos] = r[pos] ** (-param)
    return out


def project_rows(V):
    V = np.asarray(V, dtype=np.float64)
    m = V.shape[1]
    u = -np.sort(-V, axis=1)
    css = np.cumsum(u, axis=1) - 1.0
    idx = np.arange(1, m + 1)
    cond = u - css / idx > 0.0
    rho = m - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(len(V)), rho] / (rho + 1)
    w = np.maximum(V - theta[:, None], 0.0)
    return w / w.sum(axis=1, keepdims=True)


def _pair_geometry(A):
    diff = A[:, None, :] - A[None, :, :]
    return diff, np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def pairwise_increment(W, F, tau, kind, param):
    W = np.asarray(W, dtype=np.float64)
    F = np.asarray(F, dtype=np.float64)
    N = len(W)
    _, rf = _pair_geometry(F)
    du = _radial_derivative(kind, param, rf)
    dw, rw = _pair_geometry(W)
    coef = np.divide(du, rw, out=np.zeros_like(du), where=rw > 0.0)
    np.fill_diagonal(coef, 0.0)
    return -(tau / N) * np.einsum("ij,ijk->ik", coef, dw)


def grad_image_increment(F, tau, kind, param):
    F = np.asarray(F, dtype=np.float64)
    N = len(F)
    df, rf = _pair_geometry(F)
    du = _radial_derivative(kind, param, rf)
    coef = np.divide(du, rf, out=np.zeros_like(du), where=rf > 0.0)
    np.fill_diagonal(coef, 0.0)
    return (tau / N) * np.einsum("ij,ijk->ik", coef, df)


def ensemble_energy(P, kind, param):
    P = np.asarray(P, dtype=np.float64)
    N = len(P)
    _, r = _pair_geometry(P)
    np.fill_diagonal(r, 1.0)
    u = _value(kind, param, r)
    np.fill_diagonal(u, 0.0)
    return float(u.sum() / (N * N))


def nearest_distances(ref, sol):
    ref = np.asarray(ref, dtype=np.float64)
    sol = np.asarray(sol, dtype=np.float64)
    diff = ref[:, None, :] - sol[None, :, :]
    return np.sqrt(np.einsum("rik,rik->ri", diff, diff).min(axis=1))


def gibbs_consensus(X, S, alpha):
    S = np.asarray(S, dtype=np.float64)
    wts = np.exp(-alpha * (S - S.min(axis=1, keepdims=True)))
    return np.einsum("ih,ihl->il", wts, X) / wts.sum(axis=1)[:, None]


def cbo_update(X, Y, Z, lam, dt, sigma):
    diff = Y[:, None, :] - X
    dist = np.sqrt(np.einsum("ihl,ihl->ih", diff, diff))[:, :, None]
    out = X + lam * dt * diff + sigma * np.sqrt(dt) * dist * Z
    return np.clip(out, 0.0, 1.0)
