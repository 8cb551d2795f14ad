"""Numba-compiled twins of the reference kernels.

Loop-level rewrites of :mod:`ladderlab.kernels.reference` that avoid the
temporaries the vectorized numpy forms allocate. Same signatures, same
semantics; agreement is enforced by tests/test_kernels.py.
"""

import numpy as np
from numba import njit

_GELU_C = 0.7978845608028654
_GELU_A = 0.044715


@njit(cache=True)
def layernorm_fwd(x, gain, bias, eps):
    n, d = x.shape
    y = np.empty_like(x)
    xhat = np.empty_like(x)
    rstd = np.empty(n, dtype=x.dtype)
    for i in range(n):
        s = 0.0
        for j in range(d):
            s += x[i, j]
        mean = s / d
        sq = 0.0
        for j in range(d):
            c = x[i, j] - mean
            sq += c * c
        r = 1.0 / np.sqrt(sq / d + eps)
        rstd[i] = r
        for j in range(d):
            h = (x[i, j] - mean) * r
            xhat[i, j] = h
            y[i, j] = h * gain[j] + bias[j]
    return y, xhat, rstd


@njit(cache=True)
def layernorm_bwd(g, xhat, rstd, gain):
    n, d = g.shape
    dx = np.empty_like(g)
    dgain = np.zeros(d, dtype=g.dtype)
    dbias = np.zeros(d, dtype=g.dtype)
    for i in range(n):
        m1 = 0.0
        m2 = 0.0
        for j in range(d):
            gh = g[i, j] * gain[j]
            m1 += gh
            m2 += gh * xhat[i, j]
        m1 /= d
        m2 /= d
        for j in range(d):
            gh = g[i, j] * gain[j]
            dx[i, j] = (gh - m1 - xhat[i, j] * m2) * rstd[i]
            dgain[j] += g[i, j] * xhat[i, j]
            dbias[j] += g[i, j]
    return dx, dgain, dbias


@njit(cache=True)
def gelu_fwd(x):
    flat = x.ravel()
    out = np.empty_like(flat)
    for i in range(flat.size):
        v = flat[i]
        out[i] = 0.5 * v * (1.0 + np.tanh(_GELU_C * (v + _GELU_A * v**3)))
    return out.reshape(x.shape)


@njit(cache=True)
def gelu_bwd(x, g):
    xf = x.ravel()
    gf = g.ravel()
    out = np.empty_like(xf)
    for i in range(xf.size):
        v = xf[i]
        t = np.tanh(_GELU_C * (v + _GELU_A * v**3))
        du = _GELU_C * (1.0 + 3.0 * _GELU_A * v * v)
        out[i] = gf[i] * (0.5 * (1.0 + t) + 0.5 * v * (1.0 - t * t) * du)
    return out.reshape(x.shape)


@njit(cache=True)
def causal_softmax_fwd(scores):
    r, t, _ = scores.shape
    out = np.zeros_like(scores)
    for b in range(r):
        for i in range(t):
            m = scores[b, i, 0]
            for j in range(1, i + 1):
                if scores[b, i, j] > m:
                    m = scores[b, i, j]
            z = 0.0
            for j in range(i + 1):
                e = np.exp(scores[b, i, j] - m)
                out[b, i, j] = e
                z += e
            for j in range(i + 1):
                out[b, i, j] /= z
    return out


@njit(cache=True)
def causal_softmax_bwd(probs, g):
    r, t, _ = probs.shape
    dx = np.zeros_like(probs)
    for b in range(r):
        for i in range(t):
            dot = 0.0
            for j in range(i + 1):
                dot += g[b, i, j] * probs[b, i, j]
            for j in range(i + 1):
                dx[b, i, j] = probs[b, i, j] * (g[b, i, j] - dot)
    return dx


@njit(cache=True)
def adamw_update(param, grad, m, v, lr, beta1, beta2, eps, weight_decay, t):
    p = param.ravel()
    g = grad.ravel()
    mf = m.ravel()
    vf = v.ravel()
    c1 = 1.0 - beta1**t
    c2 = 1.0 - beta2**t
    decay = 1.0 - lr * weight_decay
    for i in range(p.size):
        p[i] *= decay
        mf[i] = beta1 * mf[i] + (1.0 - beta1) * g[i]
        vf[i] = beta2 * vf[i] + (1.0 - beta2) * g[i] * g[i]
        mhat = mf[i] / c1
        vhat = vf[i] / c2
        p[i] -= lr * mhat / (np.sqrt(vhat) + eps)


@njit(cache=True)
def embedding_grad(ids, g, table_grad):
    n, d = g.shape
    for i in range(n):
        row = ids[i]
        for j in range(d):
            table_grad[row, j] += g[i, j]
