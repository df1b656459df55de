"""Pure-NumPy kernels; reference semantics for the compiled backend.

Parameter layout for dense nets is a single flat float64 array: for each
layer, the (fan_in x fan_out) weight matrix in row-major order followed by
the fan_out bias entries. Hidden layers are ReLU, the output layer is
linear; the training loss is the mean squared error over every batch
element and output component.
"""
from __future__ import annotations

import numpy as np


def param_count(sizes) -> int:
    sizes = np.asarray(sizes, dtype=np.int64)
    return int(sum(sizes[i] * sizes[i + 1] + sizes[i + 1]
                   for i in range(len(sizes) - 1)))


def _layer_views(sizes, params):
    """Yield (W, b) views into the flat parameter array."""
    off = 0
    for i in range(len(sizes) - 1):
        fan_in, fan_out = int(sizes[i]), int(sizes[i + 1])
        w = params[off:off + fan_in * fan_out].reshape(fan_in, fan_out)
        off += fan_in * fan_out
        b = params[off:off + fan_out]
        off += fan_out
        yield w, b


def mlp_forward(sizes, params, x):
    """Batch forward pass; x is (batch, sizes[0]), result (batch, sizes[-1])."""
    h = x
    layers = list(_layer_views(sizes, params))
    for i, (w, b) in enumerate(layers):
        h = h @ w + b
        if i < len(layers) - 1:
            h = np.maximum(h, 0.0)
    return h


def mlp_grad(sizes, params, x, y):
    """MSE loss and its gradient w.r.t. the flat parameters.

    Returns (loss, grad) where loss is computed before any update.
    """
    layers = list(_layer_views(sizes, params))
    acts = [x]
    h = x
    for i, (w, b) in enumerate(layers):
        h = h @ w + b
        if i < len(layers) - 1:
            h = np.maximum(h, 0.0)
        acts.append(h)
    out = acts[-1]
    diff = out - y
    n = diff.size
    loss = float(np.sum(diff * diff) / n)

    grad = np.zeros_like(params)
    delta = (2.0 / n) * diff
    goff = params.size
    for i in range(len(layers) - 1, -1, -1):
        w, _ = layers[i]
        fan_in, fan_out = w.shape
        gb = delta.sum(axis=0)
        gw = acts[i].T @ delta
        goff -= fan_out
        grad[goff:goff + fan_out] = gb
        goff -= fan_in * fan_out
        grad[goff:goff + fan_in * fan_out] = gw.ravel()
        if i > 0:
            delta = delta @ w.T
            delta = delta * (acts[i] > 0.0)
    return loss, grad


def adam_step(params, grad, m, v, t, lr, beta1, beta2, eps):
    """One in-place Adam update; t is the 1-based step count."""
    m *= beta1
    m += (1.0 - beta1) * grad
    v *= beta2
    v += (1.0 - beta2) * grad * grad
    bc1 = 1.0 - beta1 ** t
    bc2 = 1.0 - beta2 ** t
    params -= lr * (m / bc1) / (np.sqrt(v / bc2) + eps)


def q_learning_sweep(next_state, reward, terminal, q, start, max_steps,
                     alpha, gamma, epsilons, explore_u, explore_a):
    """Run one tabular Q-learning episode per epsilon entry.

    Transitions are table-driven (deterministic environments only):
    next_state is (S, A) int64, reward is the (S, A) scalarized reward,
    terminal marks absorbing states. explore_u/explore_a carry the
    pre-drawn exploration randomness, one row per episode, so results are
    identical across backends. q is updated in place; the return value is
    the max absolute TD update per episode.
    """
    n_episodes = len(epsilons)
    deltas = np.zeros(n_episodes)
    for ep in range(n_episodes):
        s = start
        eps = epsilons[ep]
        max_delta = 0.0
        for t in range(max_steps):
            if explore_u[ep, t] < eps:
                a = int(explore_a[ep, t])
            else:
                a = int(np.argmax(q[s]))
            s2 = int(next_state[s, a])
            r = reward[s, a]
            if terminal[s2]:
                target = r
            else:
                target = r + gamma * np.max(q[s2])
            d = target - q[s, a]
            q[s, a] += alpha * d
            if abs(d) > max_delta:
                max_delta = abs(d)
            if terminal[s2]:
                break
            s = s2
        deltas[ep] = max_delta
    return deltas
