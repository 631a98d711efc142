"""Classical states as finite-support probability densities.

A phase space is a finite set of labels; a state assigns each label a
probability.  Zero-probability labels are dropped on construction, so the
stored keys are exactly the support.  Composite systems live on the
cartesian product of two label sets, and every operation here is exact
rational-style arithmetic on doubles: no renormalization ever happens
behind the caller's back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .linalg import Tolerance, rank

# Absolute tolerance on total probability.
PROB_SUM_EPS = 1e-9

Side = Literal["first", "second"]


@dataclass(frozen=True)
class PhaseSpace:
    """Ordered, finite set of distinct configuration labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("phase space needs at least one label")
        if any(not isinstance(lab, str) or not lab for lab in labels):
            raise ValueError("phase space labels must be non-empty strings")
        if len(set(labels)) != len(labels):
            raise ValueError("phase space labels must be unique")

    def __contains__(self, label) -> bool:
        return label in self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"label {label!r} not in phase space {self.labels}") from None


def _check_weight(p, what: str) -> float:
    p = float(p)
    if not np.isfinite(p) or p < 0.0:
        raise ValueError(f"{what} must be finite and >= 0, got {p!r}")
    return p


@dataclass(frozen=True)
class ClassicalState:
    """Probability density with finite support on a phase space."""

    space: PhaseSpace
    probs: dict[str, float]

    def __post_init__(self):
        for label in self.probs:
            if label not in self.space:
                raise ValueError(f"probability assigned to unknown label {label!r}")
        cleaned: dict[str, float] = {}
        for label in self.space.labels:
            p = _check_weight(self.probs.get(label, 0.0), f"probability of {label!r}")
            if p > 0.0:
                cleaned[label] = p
        total = sum(cleaned.values())
        if abs(total - 1.0) > PROB_SUM_EPS:
            raise ValueError(f"probabilities must sum to 1, got {total!r}")
        object.__setattr__(self, "probs", cleaned)

    def prob(self, label: str) -> float:
        self.space.index(label)
        return self.probs.get(label, 0.0)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(self.probs)

    @property
    def is_pure(self) -> bool:
        return len(self.probs) == 1


@dataclass(frozen=True)
class CompositeClassicalState:
    """Probability density on the cartesian product of two phase spaces."""

    space_x: PhaseSpace
    space_y: PhaseSpace
    probs: dict[tuple[str, str], float]

    def __post_init__(self):
        for x, y in self.probs:
            if x not in self.space_x or y not in self.space_y:
                raise ValueError(f"probability assigned to unknown point ({x!r}, {y!r})")
        cleaned: dict[tuple[str, str], float] = {}
        for x in self.space_x.labels:
            for y in self.space_y.labels:
                p = _check_weight(self.probs.get((x, y), 0.0), f"probability of ({x!r}, {y!r})")
                if p > 0.0:
                    cleaned[(x, y)] = p
        total = sum(cleaned.values())
        if abs(total - 1.0) > PROB_SUM_EPS:
            raise ValueError(f"probabilities must sum to 1, got {total!r}")
        object.__setattr__(self, "probs", cleaned)

    def prob(self, x: str, y: str) -> float:
        self.space_x.index(x)
        self.space_y.index(y)
        return self.probs.get((x, y), 0.0)

    @property
    def support(self) -> tuple[tuple[str, str], ...]:
        return tuple(self.probs)

    @property
    def is_pure(self) -> bool:
        return len(self.probs) == 1

    def probability_matrix(self) -> np.ndarray:
        """Joint probabilities as a (len X) x (len Y) real matrix."""
        m = np.zeros((len(self.space_x), len(self.space_y)))
        for (x, y), p in self.probs.items():
            m[self.space_x.index(x), self.space_y.index(y)] = p
        return m


@dataclass(frozen=True)
class ClassicalSeparableCert:
    """Convex decomposition of a composite state into products of pure states."""

    terms: tuple[tuple[float, ClassicalState, ClassicalState], ...]

    def __post_init__(self):
        terms = tuple((_check_weight(p, "certificate weight"), fx, gy) for p, fx, gy in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("certificate needs at least one term")
        for _, fx, gy in terms:
            if not (fx.is_pure and gy.is_pure):
                raise ValueError("certificate factors must be pure states")
        total = sum(p for p, _, _ in terms)
        if abs(total - 1.0) > PROB_SUM_EPS:
            raise ValueError(f"certificate weights must sum to 1, got {total!r}")

    def recombine(self) -> CompositeClassicalState:
        """Evaluate the convex sum of product terms back into a composite state."""
        _, fx0, gy0 = self.terms[0]
        probs: dict[tuple[str, str], float] = {}
        for p, fx, gy in self.terms:
            for x, px in fx.probs.items():
                for y, py in gy.probs.items():
                    probs[(x, y)] = probs.get((x, y), 0.0) + p * px * py
        return CompositeClassicalState(fx0.space, gy0.space, probs)


def classical_pure(space: PhaseSpace, label: str) -> ClassicalState:
    """The state assigning total probability to a single label."""
    space.index(label)
    return ClassicalState(space, {label: 1.0})


def composite_pure(space_x: PhaseSpace, space_y: PhaseSpace, point: tuple[str, str]) -> CompositeClassicalState:
    """The composite state assigning total probability to a single point."""
    x, y = point
    space_x.index(x)
    space_y.index(y)
    return CompositeClassicalState(space_x, space_y, {(x, y): 1.0})


def decompose_pure(f: ClassicalState) -> list[tuple[float, ClassicalState]]:
    """Split a state into weighted pure states, one per support point.

    The weights are exactly the stored probabilities, so recombining the
    terms reproduces the input bit for bit.
    """
    return [(p, classical_pure(f.space, x)) for x, p in f.probs.items()]


def classical_tensor(f: ClassicalState, g: ClassicalState) -> CompositeClassicalState:
    """Product density: (f (x) g)(x, y) = f(x) * g(y)."""
    probs = {(x, y): px * py for x, px in f.probs.items() for y, py in g.probs.items()}
    return CompositeClassicalState(f.space, g.space, probs)


def marginal(h: CompositeClassicalState, side: Side) -> ClassicalState:
    """Sum out the discarded coordinate, keeping ``side``."""
    probs: dict[str, float] = {}
    if side == "first":
        space = h.space_x
        for (x, _), p in h.probs.items():
            probs[x] = probs.get(x, 0.0) + p
    elif side == "second":
        space = h.space_y
        for (_, y), p in h.probs.items():
            probs[y] = probs.get(y, 0.0) + p
    else:
        raise ValueError(f"side must be 'first' or 'second', got {side!r}")
    return ClassicalState(space, probs)


def classify_classical(h: CompositeClassicalState) -> ClassicalSeparableCert:
    """Constructive separability certificate for a composite classical state.

    Each support point contributes one term: its probability as the
    weight, and the pure states at its coordinates as the product factors.
    This never fails; recombining the certificate reproduces the input.
    """
    terms = [
        (p, classical_pure(h.space_x, x), classical_pure(h.space_y, y))
        for (x, y), p in h.probs.items()
    ]
    return ClassicalSeparableCert(tuple(terms))


def is_product_composite(
    h: CompositeClassicalState, tol: Tolerance = Tolerance()
) -> Optional[tuple[ClassicalState, ClassicalState]]:
    """Recover (f, g) with f (x) g == h, or None if h is not a product.

    A composite state is a product exactly when its joint-probability
    matrix has rank one; the factors are read off the dominant singular
    pair, with f scaled to total probability 1 and the residual scale
    pushed into g.
    """
    m = h.probability_matrix()
    if rank(m, tol) != 1:
        return None
    u, s, vh = np.linalg.svd(m)
    a = u[:, 0].real
    b = vh[0, :].real * float(s[0])
    if a.sum() < 0.0:
        a, b = -a, -b
    a = np.clip(a, 0.0, None)
    b = np.clip(b, 0.0, None)
    scale = float(a.sum())
    f = ClassicalState(
        h.space_x,
        {lab: float(a[i] / scale) for i, lab in enumerate(h.space_x.labels) if a[i] > 0.0},
    )
    g = ClassicalState(
        h.space_y,
        {lab: float(b[j] * scale) for j, lab in enumerate(h.space_y.labels) if b[j] > 0.0},
    )
    return f, g
