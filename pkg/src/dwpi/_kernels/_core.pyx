# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as purepy (see that module's docstring).

Floating arithmetic follows the same operation order as the NumPy
fallback wherever results must match bit-for-bit (the tabular sweep);
dense-net results agree to rounding because matmul summation order
differs from BLAS.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, pow, sqrt

cnp.import_array()


def param_count(sizes):
    sizes = np.asarray(sizes, dtype=np.int64)
    return int(sum(sizes[i] * sizes[i + 1] + sizes[i + 1]
                   for i in range(len(sizes) - 1)))


def mlp_forward(sizes, cnp.float64_t[::1] params, cnp.float64_t[:, ::1] x):
    cdef cnp.int64_t[::1] sz = np.ascontiguousarray(sizes, dtype=np.int64)
    cdef Py_ssize_t n_layers = sz.shape[0] - 1
    cdef Py_ssize_t batch = x.shape[0]
    cdef Py_ssize_t li, i, j, k, fan_in, fan_out, off = 0
    cdef double acc
    cdef cnp.float64_t[:, ::1] h = x
    cdef cnp.float64_t[:, ::1] out
    for li in range(n_layers):
        fan_in = sz[li]
        fan_out = sz[li + 1]
        out_arr = np.empty((batch, fan_out))
        out = out_arr
        for i in range(batch):
            for j in range(fan_out):
                acc = params[off + fan_in * fan_out + j]
                for k in range(fan_in):
                    acc += h[i, k] * params[off + k * fan_out + j]
                if li < n_layers - 1 and acc < 0.0:
                    acc = 0.0
                out[i, j] = acc
        off += fan_in * fan_out + fan_out
        h = out
    return np.asarray(h)


def mlp_grad(sizes, cnp.float64_t[::1] params, cnp.float64_t[:, ::1] x,
             cnp.float64_t[:, ::1] y):
    cdef cnp.int64_t[::1] sz = np.ascontiguousarray(sizes, dtype=np.int64)
    cdef Py_ssize_t n_layers = sz.shape[0] - 1
    cdef Py_ssize_t batch = x.shape[0]
    cdef Py_ssize_t li, i, j, k, fan_in, fan_out
    cdef double acc, loss = 0.0, scale
    cdef list offsets = []
    cdef Py_ssize_t off = 0
    for li in range(n_layers):
        offsets.append(off)
        off += sz[li] * sz[li + 1] + sz[li + 1]

    # forward, keeping activations for the backward pass
    acts = [np.asarray(x)]
    cdef cnp.float64_t[:, ::1] h = x
    cdef cnp.float64_t[:, ::1] out
    for li in range(n_layers):
        fan_in = sz[li]
        fan_out = sz[li + 1]
        off = offsets[li]
        out_arr = np.empty((batch, fan_out))
        out = out_arr
        for i in range(batch):
            for j in range(fan_out):
                acc = params[off + fan_in * fan_out + j]
                for k in range(fan_in):
                    acc += h[i, k] * params[off + k * fan_out + j]
                if li < n_layers - 1 and acc < 0.0:
                    acc = 0.0
                out[i, j] = acc
        acts.append(out_arr)
        h = out

    cdef Py_ssize_t n_out = batch * sz[n_layers]
    out = acts[n_layers]
    cdef cnp.float64_t[:, ::1] delta = np.empty((batch, sz[n_layers]))
    scale = 2.0 / n_out
    for i in range(batch):
        for j in range(sz[n_layers]):
            acc = out[i, j] - y[i, j]
            loss += acc * acc
            delta[i, j] = scale * acc
    loss /= n_out

    grad_arr = np.zeros(params.shape[0])
    cdef cnp.float64_t[::1] grad = grad_arr
    cdef cnp.float64_t[:, ::1] prev_act, new_delta
    for li in range(n_layers - 1, -1, -1):
        fan_in = sz[li]
        fan_out = sz[li + 1]
        off = offsets[li]
        prev_act = acts[li]
        for j in range(fan_out):
            acc = 0.0
            for i in range(batch):
                acc += delta[i, j]
            grad[off + fan_in * fan_out + j] = acc
        for k in range(fan_in):
            for j in range(fan_out):
                acc = 0.0
                for i in range(batch):
                    acc += prev_act[i, k] * delta[i, j]
                grad[off + k * fan_out + j] = acc
        if li > 0:
            new_delta = np.empty((batch, fan_in))
            for i in range(batch):
                for k in range(fan_in):
                    acc = 0.0
                    for j in range(fan_out):
                        acc += delta[i, j] * params[off + k * fan_out + j]
                    if prev_act[i, k] <= 0.0:
                        acc = 0.0
                    new_delta[i, k] = acc
            delta = new_delta
    return loss, grad_arr


def adam_step(cnp.float64_t[::1] params, cnp.float64_t[::1] grad,
              cnp.float64_t[::1] m, cnp.float64_t[::1] v, long t,
              double lr, double beta1, double beta2, double eps):
    cdef Py_ssize_t i, n = params.shape[0]
    cdef double bc1 = 1.0 - pow(beta1, t)
    cdef double bc2 = 1.0 - pow(beta2, t)
    for i in range(n):
        m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i]
        v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i]
        params[i] -= lr * (m[i] / bc1) / (sqrt(v[i] / bc2) + eps)


def q_learning_sweep(cnp.int64_t[:, ::1] next_state,
                     cnp.float64_t[:, ::1] reward,
                     cnp.uint8_t[::1] terminal,
                     cnp.float64_t[:, ::1] q,
                     long start, long max_steps, double alpha, double gamma,
                     cnp.float64_t[::1] epsilons,
                     cnp.float64_t[:, ::1] explore_u,
                     cnp.int64_t[:, ::1] explore_a):
    cdef Py_ssize_t n_episodes = epsilons.shape[0]
    cdef Py_ssize_t n_actions = q.shape[1]
    cdef Py_ssize_t ep, t, a, j
    cdef long s, s2
    cdef double eps, r, target, d, max_delta, best
    deltas_arr = np.zeros(n_episodes)
    cdef cnp.float64_t[::1] deltas = deltas_arr
    for ep in range(n_episodes):
        s = start
        eps = epsilons[ep]
        max_delta = 0.0
        for t in range(max_steps):
            if explore_u[ep, t] < eps:
                a = explore_a[ep, t]
            else:
                a = 0
                best = q[s, 0]
                for j in range(1, n_actions):
                    if q[s, j] > best:
                        best = q[s, j]
                        a = j
            s2 = next_state[s, a]
            r = reward[s, a]
            if terminal[s2]:
                target = r
            else:
                best = q[s2, 0]
                for j in range(1, n_actions):
                    if q[s2, j] > best:
                        best = q[s2, j]
                target = r + gamma * best
            d = target - q[s, a]
            q[s, a] += alpha * d
            if fabs(d) > max_delta:
                max_delta = fabs(d)
            if terminal[s2]:
                break
            s = s2
        deltas[ep] = max_delta
    return deltas_arr
