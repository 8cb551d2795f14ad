"""Pure-numpy reference implementations of the hot kernels.

Every function here has a jit twin in :mod:`ladderlab.kernels.jit` with the
same signature and semantics. The reference path is the fallback when numba
is unavailable or disabled via LADDERLAB_BACKEND=numpy, and it is the ground
truth the jit kernels are tested against.
"""

import numpy as np

# tanh-form GELU constants
_GELU_C = 0.7978845608028654  # sqrt(2/pi)
_GELU_A = 0.044715


def layernorm_fwd(x, gain, bias, eps):
    """Row-wise layer norm over the last axis of a 2-d array.

    Returns (y, xhat, rstd); xhat and rstd are saved for the backward pass.
    """
    mean = x.mean(axis=1, keepdims=True)
    var = ((x - mean) ** 2).mean(axis=1, keepdims=True)
    rstd = 1.0 / np.sqrt(var + eps)
    xhat = (x - mean) * rstd
    y = xhat * gain + bias
    return y, xhat, rstd[:, 0]


def layernorm_bwd(g, xhat, rstd, gain):
    """Backward of layernorm_fwd. Returns (dx, dgain, dbias)."""
    d = xhat.shape[1]
    gh = g * gain
    m1 = gh.mean(axis=1, keepdims=True)
    m2 = (gh * xhat).mean(axis=1, keepdims=True)
    dx = (gh - m1 - xhat * m2) * rstd[:, None]
    dgain = (g * xhat).sum(axis=0)
    dbias = g.sum(axis=0)
    return dx, dgain, dbias


def gelu_fwd(x):
    """Elementwise GELU, tanh approximation."""
    return 0.5 * x * (1.0 + np.tanh(_GELU_C * (x + _GELU_A * x**3)))


def gelu_bwd(x, g):
    """Elementwise derivative of the tanh GELU times the incoming gradient."""
    u = _GELU_C * (x + _GELU_A * x**3)
    t = np.tanh(u)
    du = _GELU_C * (1.0 + 3.0 * _GELU_A * x * x)
    return g * (0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * du)


def causal_softmax_fwd(scores):
    """Row-wise softmax over the causal prefix of a (R, T, T) score stack.

    Row t of each T x T matrix is normalized over columns 0..t only; columns
    beyond t come out exactly zero. The max subtraction runs over the allowed
    prefix so masked entries can never influence the result.
    """
    r, t, _ = scores.shape
    out = np.zeros_like(scores)
    for i in range(t):
        s = scores[:, i, : i + 1]
        m = s.max(axis=1, keepdims=True)
        e = np.exp(s - m)
        out[:, i, : i + 1] = e / e.sum(axis=1, keepdims=True)
    return out


def causal_softmax_bwd(probs, g):
    """Backward of causal_softmax_fwd; masked columns stay exactly zero."""
    t = probs.shape[1]
    dx = np.zeros_like(probs)
    for i in range(t):
        p = probs[:, i, : i + 1]
        gi = g[:, i, : i + 1]
        dot = (gi * p).sum(axis=1, keepdims=True)
        dx[:, i, : i + 1] = p * (gi - dot)
    return dx


def adamw_update(param, grad, m, v, lr, beta1, beta2, eps, weight_decay, t):
    """In-place decoupled-weight-decay Adam step with bias correction.

    Decay is applied to the incoming parameter value before the moment-based
    step, so zero gradients shrink params by exactly (1 - lr * weight_decay).
    """
    param *= 1.0 - lr * weight_decay
    m *= beta1
    m += (1.0 - beta1) * grad
    v *= beta2
    v += (1.0 - beta2) * grad * grad
    mhat = m / (1.0 - beta1**t)
    vhat = v / (1.0 - beta2**t)
    param -= lr * mhat / (np.sqrt(vhat) + eps)


def embedding_grad(ids, g, table_grad):
    """Scatter-add the output gradient rows into the embedding table grad."""
    np.add.at(table_grad, ids, g)
