"""Minimal dense-network core: ReLU MLP, MSE loss, Adam, gradient checks.

Parameters live in one flat float64 array (kernel layout, see
dwpi._kernels.purepy); after training a model is immutable in practice
and safe for concurrent read-only inference.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K

BLOB_VERSION = 1


@dataclass
class Mlp:
    """Fully connected net: ReLU hidden layers, identity output layer."""

    layer_sizes: tuple[int, ...]
    params: np.ndarray

    @classmethod
    def create(cls, layer_sizes, rng: np.random.Generator) -> "Mlp":
        """Glorot-uniform weights, zero biases."""
        sizes = tuple(int(s) for s in layer_sizes)
        if len(sizes) < 2 or any(s <= 0 for s in sizes):
            raise ValueError(f"bad layer sizes {layer_sizes}")
        params = np.zeros(K.param_count(sizes))
        off = 0
        for fan_in, fan_out in zip(sizes, sizes[1:]):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            n_w = fan_in * fan_out
            params[off:off + n_w] = rng.uniform(-limit, limit, size=n_w)
            off += n_w + fan_out
        return cls(sizes, params)

    @property
    def n_params(self) -> int:
        return self.params.size

    def copy(self) -> "Mlp":
        return Mlp(self.layer_sizes, self.params.copy())

    def _sizes(self) -> np.ndarray:
        return np.asarray(self.layer_sizes, dtype=np.int64)


def forward(model: Mlp, x) -> np.ndarray:
    """Deterministic forward pass; accepts a single vector or a batch."""
    x = np.ascontiguousarray(x, dtype=float)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.shape[1] != model.layer_sizes[0]:
        raise ValueError(f"input dim {x.shape[1]} != {model.layer_sizes[0]}")
    out = K.mlp_forward(model._sizes(), model.params, x)
    return out[0] if single else out


@dataclass
class AdamState:
    """Adam accumulators for one model's flat parameter array."""

    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    step: int = 0
    m: np.ndarray = field(default=None)  # type: ignore[assignment]
    v: np.ndarray = field(default=None)  # type: ignore[assignment]

    @classmethod
    def for_model(cls, model: Mlp, learning_rate: float = 0.001,
                  **kw) -> "AdamState":
        return cls(learning_rate=learning_rate,
                   m=np.zeros(model.n_params), v=np.zeros(model.n_params),
                   **kw)


def train_step(model: Mlp, inputs, targets, opt: AdamState) -> float:
    """One Adam step on the batch MSE; returns the pre-update loss."""
    x = np.ascontiguousarray(inputs, dtype=float)
    y = np.ascontiguousarray(targets, dtype=float)
    if x.ndim == 1:
        x, y = x[None, :], y[None, :]
    if x.shape[0] == 0:
        raise ValueError("empty batch")
    if x.shape[0] != y.shape[0] or y.shape[1] != model.layer_sizes[-1]:
        raise ValueError("batch dimensions inconsistent with model")
    loss, grad = K.mlp_grad(model._sizes(), model.params, x, y)
    if not np.isfinite(loss):
        raise FloatingPointError(f"divergence: loss={loss}")
    opt.step += 1
    K.adam_step(model.params, grad, opt.m, opt.v, opt.step,
                opt.learning_rate, opt.beta1, opt.beta2, opt.epsilon)
    return loss


def mse_loss(model: Mlp, inputs, targets) -> float:
    out = forward(model, inputs)
    diff = out - np.asarray(targets, dtype=float)
    return float(np.mean(diff * diff))


def grad_check(model: Mlp, x, y, h: float = 1e-5) -> float:
    """Max relative error of backprop against central finite differences.

    Relative to max(|analytic|, |numeric|, 1e-3) so exact-zero gradients
    compare cleanly.
    """
    x = np.ascontiguousarray(np.atleast_2d(np.asarray(x, dtype=float)))
    y = np.ascontiguousarray(np.atleast_2d(np.asarray(y, dtype=float)))
    sizes = model._sizes()
    _, grad = K.mlp_grad(sizes, model.params, x, y)
    params = model.params
    worst = 0.0
    for i in range(params.size):
        orig = params[i]
        params[i] = orig + h
        up = K.mlp_forward(sizes, params, x)
        params[i] = orig - h
        down = K.mlp_forward(sizes, params, x)
        params[i] = orig
        loss_up = np.mean((up - y) ** 2)
        loss_down = np.mean((down - y) ** 2)
        numeric = (loss_up - loss_down) / (2.0 * h)
        denom = max(abs(grad[i]), abs(numeric), 1e-3)
        worst = max(worst, abs(grad[i] - numeric) / denom)
    return worst


def serialize(model: Mlp) -> str:
    """Self-describing text blob; round-trips bit-exactly."""
    lines = [f"mlp {BLOB_VERSION}",
             "sizes " + " ".join(str(s) for s in model.layer_sizes),
             f"params {model.n_params}"]
    vals = [f"{x:.17g}" for x in model.params]
    for i in range(0, len(vals), 8):
        lines.append(" ".join(vals[i:i + 8]))
    return "\n".join(lines) + "\n"


def deserialize(blob: str) -> Mlp:
    lines = blob.strip().splitlines()
    if len(lines) < 3 or not lines[0].startswith("mlp "):
        raise ValueError("malformed model blob: missing header")
    version = lines[0].split()[1]
    if version != str(BLOB_VERSION):
        raise ValueError(f"unsupported model blob version: {version}")
    if not lines[1].startswith("sizes "):
        raise ValueError("malformed model blob: missing sizes")
    sizes = tuple(int(s) for s in lines[1].split()[1:])
    if not lines[2].startswith("params "):
        raise ValueError("malformed model blob: missing params header")
    count = int(lines[2].split()[1])
    if count != K.param_count(sizes):
        raise ValueError("malformed model blob: size/parameter mismatch")
    flat: list[float] = []
    for line in lines[3:]:
        flat.extend(float(tok) for tok in line.split())
    if len(flat) != count:
        raise ValueError(f"truncated model blob: {len(flat)}/{count} values")
    return Mlp(sizes, np.asarray(flat, dtype=float))
