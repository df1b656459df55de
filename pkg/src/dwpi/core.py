"""Core value types: preference vectors, reward trajectories and returns.

All types here are immutable values; they can be shared freely between
threads. Weights live on the probability simplex (non-negative, summing
to one); rounding for reports happens at reporting time only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

SIMPLEX_TOL = 1e-9


class Step(NamedTuple):
    """One trajectory entry: (state id, action id, per-objective reward)."""

    state: object
    action: int
    reward: np.ndarray


@dataclass(frozen=True)
class PreferenceVector:
    """Weight vector over objectives, one non-negative entry per objective.

    ``cooperative_flag`` is only meaningful in Item Gathering, where it
    states whether the weight on the other agent's collections acts
    positively (flag=1) or negatively (flag=0).
    """

    weights: tuple[float, ...]
    cooperative_flag: Optional[bool] = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("preference needs at least one weight")
        if np.any(w < 0):
            raise ValueError(f"negative preference weight in {self.weights}")
        if abs(w.sum() - 1.0) > 1e-2:
            raise ValueError(f"preference weights must sum to 1, got {w.sum()}")
        object.__setattr__(self, "weights", tuple(float(x) for x in w))

    def __len__(self) -> int:
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


@dataclass(frozen=True)
class Return:
    """Discounted componentwise sum of a trajectory's reward vectors."""

    components: tuple[float, ...]
    gamma: float = 1.0

    def __len__(self) -> int:
        return len(self.components)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.components, dtype=float)


@dataclass
class Trajectory:
    """Ordered (state, action, reward vector) steps for one episode."""

    steps: list[Step] = field(default_factory=list)
    terminal: bool = False

    def __len__(self) -> int:
        return len(self.steps)

    def rewards(self) -> np.ndarray:
        """Stacked (n_steps, n_objectives) reward matrix."""
        return np.stack([s.reward for s in self.steps])


def reward_vector(components: Sequence[float]) -> np.ndarray:
    """Validated per-step reward vector (finite float64 array)."""
    r = np.asarray(components, dtype=float)
    if not np.all(np.isfinite(r)):
        raise ValueError(f"non-finite reward components: {components}")
    return r


def discounted_return(traj: Trajectory, gamma: float = 1.0) -> Return:
    """Componentwise discounted sum of rewards, discount exponent from t=0."""
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    rewards = traj.rewards()
    if gamma == 1.0:
        total = rewards.sum(axis=0)
    else:
        discounts = gamma ** np.arange(len(traj))
        total = discounts @ rewards
    return Return(tuple(float(x) for x in total), gamma=gamma)


def utility(ret: Return, pref: PreferenceVector) -> float:
    """Linear scalarization: dot product of weights and return components."""
    if len(ret) != len(pref):
        raise ValueError(f"dimension mismatch: return has {len(ret)} "
                         f"components, preference has {len(pref)}")
    return float(np.dot(pref.as_array(), ret.as_array()))


def normalize(weights: Sequence[float],
              cooperative_flag: Optional[bool] = None) -> PreferenceVector:
    """Clamp negatives to zero and rescale onto the simplex."""
    w = np.asarray(weights, dtype=float)
    w = np.clip(w, 0.0, None)
    total = w.sum()
    if total <= 0.0:
        raise ValueError("degenerate preference")
    return PreferenceVector(tuple(w / total), cooperative_flag=cooperative_flag)


def effective_weights(pref: PreferenceVector,
                      flip_index: Optional[int] = None) -> np.ndarray:
    """Scalarization weights with the cooperative flag applied.

    When the flag is 0 the weight at ``flip_index`` (the "other agent"
    objective) acts as a penalty, so its sign is flipped.
    """
    w = pref.as_array()
    if flip_index is not None and pref.cooperative_flag is not None:
        if not pref.cooperative_flag:
            w = w.copy()
            w[flip_index] = -w[flip_index]
    return w
