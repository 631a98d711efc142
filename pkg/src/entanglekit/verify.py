"""Randomized verification suites for the library's mathematical claims.

Every suite draws its instances from one shared seeded generator, checks
the claimed identities against independent inline computations, and
reports pass/fail together with the first counterexample found, already
converted to a JSON-ready payload.  Running the suites twice with the
same seed produces identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from .bipartite import BipartiteDims, BipartiteVector, kron_op, kron_vec, partial_trace, schmidt
from .classical import (
    ClassicalState,
    CompositeClassicalState,
    PhaseSpace,
    classical_pure,
    classical_tensor,
    classify_classical,
    composite_pure,
    decompose_pure,
    is_product_composite,
    marginal,
)
from .linalg import (
    Tolerance,
    adjoint,
    eig_hermitian,
    factor_positive,
    inner,
    is_hermitian,
    is_positive,
    rank,
    trace,
)
from .quantum import (
    DensityOperator,
    MixedEnsemble,
    PureState,
    ccr_trace_obstruction,
    expectation,
    is_density,
    mix,
    mixture_vs_superposition,
    projector,
)
from .separability import (
    SeparableDecomposition,
    Verdict,
    check_range_criterion,
    classify,
    product_pure,
    range_basis,
    separable_density,
)
from .statefile import cmat_to_json, cvec_to_json

DEFAULT_SEED = 1729
DEFAULT_INSTANCES = 200


@dataclass
class SuiteResult:
    name: str
    description: str
    passed: bool
    instances: int
    counterexample: Optional[dict] = None


class _Counterexample(Exception):
    def __init__(self, payload: dict):
        super().__init__("counterexample found")
        self.payload = payload


def _ensure(cond: bool, payload: Union[dict, Callable[[], dict]]) -> None:
    if not cond:
        raise _Counterexample(payload() if callable(payload) else payload)


# ---------------------------------------------------------------------------
# random instance generators (shared by the suites and the test suite)


def rand_complex(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_unit_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rand_complex(rng, d)
    return v / np.linalg.norm(v)


def rand_pure_state(rng: np.random.Generator, d: int) -> PureState:
    return PureState(rand_unit_vector(rng, d))


def rand_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    a = rand_complex(rng, d, d)
    return (a + a.conj().T) / 2


def rand_nonhermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    while True:
        a = rand_complex(rng, d, d)
        if np.abs(a - a.conj().T).max() > 0.5:
            return a


def rand_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rand_complex(rng, d, d))
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def rand_density(rng: np.random.Generator, d: int, terms: int = 3) -> DensityOperator:
    weights = rng.dirichlet(np.ones(terms))
    ens = MixedEnsemble(tuple((float(w), rand_pure_state(rng, d)) for w in weights))
    return mix(ens)


def rand_independent_pair(rng: np.random.Generator, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Two vectors that are robustly linearly independent."""
    while True:
        a, b = rand_complex(rng, d), rand_complex(rng, d)
        s = np.linalg.svd(np.column_stack([a, b]), compute_uv=False)
        if s[-1] > 0.2 * s[0]:
            return a, b


def rand_phase_space(size: int, prefix: str) -> PhaseSpace:
    return PhaseSpace(tuple(f"{prefix}{k}" for k in range(size)))


def rand_classical_state(rng: np.random.Generator, space: PhaseSpace) -> ClassicalState:
    probs = rng.dirichlet(np.ones(len(space)))
    return ClassicalState(space, {lab: float(p) for lab, p in zip(space.labels, probs)})


def rand_composite_classical(
    rng: np.random.Generator, space_x: PhaseSpace, space_y: PhaseSpace
) -> CompositeClassicalState:
    probs = rng.dirichlet(np.ones(len(space_x) * len(space_y)))
    points = [(x, y) for x in space_x.labels for y in space_y.labels]
    return CompositeClassicalState(
        space_x, space_y, {pt: float(p) for pt, p in zip(points, probs)}
    )


def rand_separable_decomposition(
    rng: np.random.Generator, dims: BipartiteDims, terms: int
) -> SeparableDecomposition:
    weights = rng.dirichlet(np.ones(terms))
    return SeparableDecomposition(
        dims,
        tuple(
            (float(w), rand_pure_state(rng, dims.d1), rand_pure_state(rng, dims.d2))
            for w in weights
        ),
    )


def bell_vector() -> BipartiteVector:
    """(e1 (x) f1 + e2 (x) f2) / sqrt(2) on a 2 x 2 system."""
    vec = np.zeros(4, dtype=complex)
    vec[0] = vec[3] = 1 / np.sqrt(2)
    return BipartiteVector(vec, BipartiteDims(2, 2))


# ---------------------------------------------------------------------------
# independent rank oracles


def _fraction_rank(int_matrix: np.ndarray) -> int:
    """Exact rank of an integer matrix by Gaussian elimination over Q."""
    a = [[Fraction(int(v)) for v in row] for row in int_matrix]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [v / a[r][c] for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def _float_row_reduction_rank(m: np.ndarray, eps: float) -> int:
    """Rank of a complex matrix by row reduction with partial pivoting."""
    a = np.array(m, dtype=complex)
    rows, cols = a.shape
    scale = max(1.0, float(np.abs(a).max()))
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[piv, c]) <= eps * scale:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r:
                a[i] = a[i] - a[i, c] * a[r]
        r += 1
    return r


# ---------------------------------------------------------------------------
# suites

_SUITES: list = []


def _suite(name: str, description: str):
    def register(fn):
        fn.suite_name = name
        fn.suite_description = description
        _SUITES.append(fn)
        return fn

    return register


@_suite(
    "classical-convex-decomposition",
    "every classical density splits into point masses that recombine exactly",
)
def _suite_classical_decomposition(rng, n, tol):
    for k in range(n):
        space = rand_phase_space(int(rng.integers(2, 7)), "x")
        f = rand_classical_state(rng, space)
        terms = decompose_pure(f)
        recombined: dict[str, float] = {}
        for w, fx in terms:
            _ensure(fx.is_pure, lambda k=k: {"instance": k, "reason": "non-pure term"})
            label = fx.support[0]
            _ensure(
                w == f.probs[label],
                lambda k=k, w=w, label=label: {"instance": k, "label": label, "weight": w},
            )
            recombined[label] = recombined.get(label, 0.0) + w * fx.prob(label)
        _ensure(
            recombined == f.probs,
            lambda k=k, f=f: {"instance": k, "probs": dict(f.probs)},
        )
    return n


@_suite(
    "classical-point-mass-tensor",
    "tensor of subsystem point masses equals the composite point mass bit for bit",
)
def _suite_classical_point_mass_tensor(rng, n, tol):
    space_x = rand_phase_space(4, "x")
    space_y = rand_phase_space(4, "y")
    for x in space_x.labels:
        for y in space_y.labels:
            left = classical_tensor(classical_pure(space_x, x), classical_pure(space_y, y))
            right = composite_pure(space_x, space_y, (x, y))
            _ensure(
                left.probs == right.probs,
                lambda x=x, y=y: {"point": [x, y], "reason": "tensor != point mass"},
            )
    for k in range(n):
        sx = rand_phase_space(int(rng.integers(2, 7)), "x")
        sy = rand_phase_space(int(rng.integers(2, 7)), "y")
        x = sx.labels[int(rng.integers(0, len(sx)))]
        y = sy.labels[int(rng.integers(0, len(sy)))]
        left = classical_tensor(classical_pure(sx, x), classical_pure(sy, y))
        _ensure(
            left.probs == composite_pure(sx, sy, (x, y)).probs,
            lambda k=k, x=x, y=y: {"instance": k, "point": [x, y]},
        )
    return 16 + n


@_suite(
    "classical-separability",
    "every composite classical density gets a product certificate that recombines",
)
def _suite_classical_separability(rng, n, tol):
    for k in range(n):
        space_x = rand_phase_space(int(rng.integers(2, 6)), "x")
        space_y = rand_phase_space(int(rng.integers(2, 6)), "y")
        h = rand_composite_classical(rng, space_x, space_y)
        cert = classify_classical(h)
        _ensure(
            len(cert.terms) == len(h.probs),
            lambda k=k: {"instance": k, "reason": "term count != support size"},
        )
        recombined: dict[tuple[str, str], float] = {}
        for w, fx, gy in cert.terms:
            for x, px in fx.probs.items():
                for y, py in gy.probs.items():
                    recombined[(x, y)] = recombined.get((x, y), 0.0) + w * px * py
        err = max(
            abs(recombined.get(pt, 0.0) - h.probs.get(pt, 0.0))
            for pt in set(recombined) | set(h.probs)
        )
        _ensure(err <= 1e-9, lambda k=k, err=err: {"instance": k, "recombination_error": err})
        # marginals of an explicit product recover the factors
        f = rand_classical_state(rng, space_x)
        g = rand_classical_state(rng, space_y)
        prod = classical_tensor(f, g)
        mf, mg = marginal(prod, "first"), marginal(prod, "second")
        err_m = max(
            max(abs(mf.prob(x) - f.prob(x)) for x in space_x.labels),
            max(abs(mg.prob(y) - g.prob(y)) for y in space_y.labels),
        )
        _ensure(err_m <= 1e-9, lambda k=k, err_m=err_m: {"instance": k, "marginal_error": err_m})
        recovered = is_product_composite(prod, tol)
        _ensure(recovered is not None, lambda k=k: {"instance": k, "reason": "product not detected"})
    return n


@_suite(
    "self-adjoint-real-quadratic-forms",
    "self-adjointness is equivalent to real quadratic forms on a complex space",
)
def _suite_self_adjoint(rng, n, tol):
    for k in range(n // 2):
        d = int(rng.integers(2, 7))
        m = rand_hermitian(rng, d)
        _ensure(is_hermitian(m, tol), lambda m=m: {"matrix": cmat_to_json(m)})
        for _ in range(50):
            x = rand_unit_vector(rng, d)
            im = complex(np.vdot(x, m @ x)).imag
            _ensure(
                abs(im) <= tol.eps,
                lambda m=m, x=x, im=im: {
                    "matrix": cmat_to_json(m),
                    "vector": cvec_to_json(x),
                    "imag_part": im,
                },
            )
    for k in range(n - n // 2):
        d = int(rng.integers(2, 7))
        m = rand_nonhermitian(rng, d)
        _ensure(not is_hermitian(m, tol), lambda m=m: {"matrix": cmat_to_json(m)})
        found = any(
            abs(complex(np.vdot(x, m @ x)).imag) > tol.eps
            for x in (rand_unit_vector(rng, d) for _ in range(100))
        )
        _ensure(
            found,
            lambda m=m: {"matrix": cmat_to_json(m), "reason": "no complex witness in 100 draws"},
        )
    # the classic real 2x2 counterexample: real realness does not imply self-adjoint
    a = np.array([[1.0, 2.0], [0.0, 1.0]], dtype=complex)
    _ensure(not is_hermitian(a, tol), {"reason": "triangular example passed is_hermitian"})
    for _ in range(1000):
        x = rng.standard_normal(2).astype(complex)
        _ensure(
            complex(np.vdot(x, a @ x)).imag == 0.0,
            lambda x=x: {"vector": cvec_to_json(x), "reason": "real witness unexpectedly complex"},
        )
    witness = complex(np.vdot(np.array([1.0, 1j]), a @ np.array([1.0, 1j])))
    _ensure(witness == 2 + 2j, {"witness_value": complex_pair(witness)})
    # conjugate symmetry of the inner product
    for k in range(n):
        d = int(rng.integers(1, 7))
        u, v = rand_complex(rng, d), rand_complex(rng, d)
        _ensure(
            abs(inner(u, v) - np.conj(inner(v, u))) <= 1e-12,
            lambda u=u, v=v: {"u": cvec_to_json(u), "v": cvec_to_json(v)},
        )
    return n


def complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


@_suite(
    "positive-factorization",
    "operators factor as adjoint(B) B exactly when their quadratic form is nonnegative",
)
def _suite_positive_factorization(rng, n, tol):
    for k in range(n // 2):
        d = int(rng.integers(2, 9))
        b = rand_complex(rng, d, d)
        t = b.conj().T @ b
        _ensure(is_positive(t, tol), lambda t=t: {"matrix": cmat_to_json(t)})
        b2 = factor_positive(t, tol)
        err = float(np.abs(adjoint(b2) @ b2 - t).max())
        bound = 1e-8 * max(1.0, float(np.abs(t).max()))
        _ensure(
            err <= bound,
            lambda t=t, err=err: {"matrix": cmat_to_json(t), "reconstruction_error": err},
        )
    for k in range(n - n // 2):
        d = int(rng.integers(2, 9))
        u = rand_unitary(rng, d)
        values = rng.uniform(0.1, 2.0, d)
        values[int(rng.integers(0, d))] = -float(rng.uniform(0.1, 2.0))
        h = (u * values) @ u.conj().T
        _ensure(not is_positive(h, tol), lambda h=h: {"matrix": cmat_to_json(h)})
        try:
            factor_positive(h, tol)
        except ValueError:
            pass
        else:
            raise _Counterexample(
                {"matrix": cmat_to_json(h), "reason": "factor_positive accepted a non-positive input"}
            )
    return n


@_suite(
    "projector-laws",
    "rank-one projectors are self-adjoint, idempotent, positive, unit-trace",
)
def _suite_projector_laws(rng, n, tol):
    for k in range(n):
        d = int(rng.integers(2, 7))
        x = rand_pure_state(rng, d)
        p = projector(x)
        fail = lambda reason, x=x: {"vector": cvec_to_json(x.vec), "reason": reason}
        _ensure(is_hermitian(p.mat, tol), lambda: fail("not self-adjoint"))
        _ensure(float(np.abs(p.mat @ p.mat - p.mat).max()) <= 1e-9, lambda: fail("not idempotent"))
        _ensure(rank(p.mat, tol) == 1, lambda: fail("rank != 1"))
        _ensure(abs(trace(p.mat) - 1.0) <= 1e-12, lambda: fail("trace != 1"))
        _ensure(is_positive(p.mat, tol), lambda: fail("not positive"))
        a = rand_hermitian(rng, d)
        gap = abs(complex(np.trace(a @ p.mat)) - complex(np.vdot(x.vec, a @ x.vec)))
        _ensure(
            gap <= 1e-9,
            lambda a=a, x=x, gap=gap: {
                "observable": cmat_to_json(a),
                "vector": cvec_to_json(x.vec),
                "gap": gap,
            },
        )
    return n


@_suite(
    "mixture-density-laws",
    "mixtures are valid densities with linear expectations, and no single vector reproduces them",
)
def _suite_mixture_laws(rng, n, tol):
    for k in range(n):
        d = int(rng.integers(2, 6))
        terms = int(rng.integers(2, 5))
        weights = rng.dirichlet(np.ones(terms))
        states = [rand_pure_state(rng, d) for _ in range(terms)]
        ens = MixedEnsemble(tuple((float(w), x) for w, x in zip(weights, states)))
        rho = mix(ens)
        _ensure(is_density(rho.mat, tol), lambda k=k: {"instance": k, "reason": "mix not a density"})
        a = rand_hermitian(rng, d)
        direct = sum(
            float(w) * complex(np.vdot(x.vec, a @ x.vec)).real for w, x in zip(weights, states)
        )
        _ensure(
            abs(expectation(a, rho, tol) - direct) <= 1e-9,
            lambda k=k: {"instance": k, "reason": "expectation not linear over the ensemble"},
        )
        # flattening two ensembles through outer weights stays a valid density
        q = float(rng.uniform(0.2, 0.8))
        other = MixedEnsemble(
            tuple((float(w), rand_pure_state(rng, d)) for w in rng.dirichlet(np.ones(2)))
        )
        flat = MixedEnsemble(
            tuple((q * w, x) for w, x in ens.terms) + tuple(((1 - q) * w, x) for w, x in other.terms)
        )
        blend = q * rho.mat + (1 - q) * mix(other).mat
        _ensure(
            float(np.abs(mix(flat).mat - blend).max()) <= 1e-12,
            lambda k=k: {"instance": k, "reason": "flattened ensemble disagrees with blend"},
        )
    # a two-state mixture is not the expectation in any single summed vector:
    # exact values first, then existence of a discrepancy over a random batch
    e1 = PureState(np.array([1.0, 0.0], dtype=complex))
    e2 = PureState(np.array([0.0, 1.0], dtype=complex))
    a0 = np.diag([1.0, 0.0]).astype(complex)
    mixture, raw = mixture_vs_superposition(a0, e1, e2, 0.5, normalize=False)
    _ensure(
        abs(mixture - 0.5) <= 1e-12 and abs(raw - 0.25) <= 1e-12,
        {"mixture": mixture, "raw_quadratic_form": raw},
    )
    for k in range(20):
        d = int(rng.integers(2, 6))
        u = rand_unitary(rng, d)
        x1, x2 = PureState(u[:, 0]), PureState(u[:, 1])
        p1 = float(rng.uniform(0.1, 0.9))
        found = False
        for _ in range(20):
            a = rand_hermitian(rng, d)
            m, naive = mixture_vs_superposition(a, x1, x2, p1)
            if abs(m - naive) > tol.eps:
                found = True
                break
        _ensure(
            found,
            lambda k=k, p1=p1: {
                "instance": k,
                "p1": p1,
                "reason": "20 random observables all matched the naive vector value",
            },
        )
    return n


@_suite(
    "schmidt-rank-dichotomy",
    "independent tensor pairs give rank >= 2, dependent pairs reduce to rank 1",
)
def _suite_schmidt_dichotomy(rng, n, tol):
    for k in range(n // 2):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        u1, u2 = rand_independent_pair(rng, d1)
        v1, v2 = rand_independent_pair(rng, d2)
        t = BipartiteVector(kron_vec(u1, v1).vec + kron_vec(u2, v2).vec, BipartiteDims(d1, d2))
        dec = schmidt(t, tol)
        fail = lambda reason, t=t: {"vector": cvec_to_json(t.vec), "reason": reason}
        _ensure(dec.rank >= 2, lambda: fail("independent pair gave rank < 2"))
        _ensure(
            float(np.linalg.norm(dec.reconstruct().vec - t.vec)) <= 1e-9,
            lambda: fail("reconstruction residual too large"),
        )
        _ensure(
            abs(float(np.sum(dec.coeffs**2)) - t.norm**2) <= 1e-9,
            lambda: fail("coefficient squares do not sum to the squared norm"),
        )
        oracle = _float_row_reduction_rank(t.vec.reshape(d1, d2), tol.eps)
        _ensure(oracle == dec.rank, lambda: fail("row-reduction oracle disagrees"))
    for k in range(n - n // 2):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        x = rand_complex(rng, d1)
        alpha, beta = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        y1, y2 = rand_complex(rng, d2), rand_complex(rng, d2)
        t = BipartiteVector(
            kron_vec(alpha * x, y1).vec + kron_vec(beta * x, y2).vec, BipartiteDims(d1, d2)
        )
        if t.norm < 0.1:
            continue
        dec = schmidt(t, tol)
        _ensure(
            dec.rank == 1,
            lambda t=t: {"vector": cvec_to_json(t.vec), "reason": "dependent pair not elementary"},
        )
    # bilinearity of the tensor product, including the null tensor
    for k in range(n):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        x1, x2, y = rand_complex(rng, d1), rand_complex(rng, d1), rand_complex(rng, d2)
        alpha = complex(*rng.standard_normal(2))
        lhs = kron_vec(x1 + x2, y).vec
        rhs = kron_vec(x1, y).vec + kron_vec(x2, y).vec
        _ensure(float(np.abs(lhs - rhs).max()) <= 1e-12, {"instance": k, "identity": "additivity"})
        lhs = kron_vec(alpha * x1, y).vec
        _ensure(
            float(np.abs(lhs - alpha * kron_vec(x1, y).vec).max()) <= 1e-12
            and float(np.abs(lhs - kron_vec(x1, alpha * y).vec).max()) <= 1e-12,
            {"instance": k, "identity": "scalar"},
        )
        zero = kron_vec(np.zeros(d1), y).vec
        _ensure(float(np.abs(zero).max()) == 0.0, {"instance": k, "identity": "null"})
    # SVD rank agrees with exact elimination over the rationals
    for k in range(n):
        rows, cols = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        m = rng.integers(-3, 4, (rows, cols))
        _ensure(
            rank(m.astype(complex), tol) == _fraction_rank(m),
            lambda m=m: {"matrix": [[int(v) for v in row] for row in m]},
        )
    return n


@_suite(
    "product-projector-identity",
    "the projector of a product vector is the product of the factor projectors",
)
def _suite_product_projector(rng, n, tol):
    for k in range(n):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        x, y = rand_pure_state(rng, d1), rand_pure_state(rng, d2)
        t = kron_vec(x.vec, y.vec).vec
        joint = np.outer(t, t.conj())
        split = kron_op(projector(x).mat, projector(y).mat)
        err = float(np.abs(joint - split).max())
        _ensure(
            err <= 1e-10,
            lambda x=x, y=y, err=err: {
                "x": cvec_to_json(x.vec),
                "y": cvec_to_json(y.vec),
                "max_abs_difference": err,
            },
        )
        product_pure(x, y, tol)
    return n


@_suite(
    "product-state-separability",
    "product pure states classify as products, with pure reductions on both sides",
)
def _suite_product_states(rng, n, tol):
    for k in range(n):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        x, y = rand_pure_state(rng, d1), rand_pure_state(rng, d2)
        t = kron_vec(x.vec, y.vec)
        result = classify(t, tol=tol)
        fail = lambda reason, x=x, y=y: {
            "x": cvec_to_json(x.vec),
            "y": cvec_to_json(y.vec),
            "reason": reason,
        }
        _ensure(result.verdict is Verdict.QUANTUM_PRODUCT_PURE, lambda: fail("not product-pure"))
        recovered = kron_vec(result.certificate.x.vec, result.certificate.y.vec)
        overlap = abs(complex(np.vdot(recovered.vec, t.vec)))
        _ensure(abs(overlap - 1.0) <= 1e-9, lambda: fail("recovered factors lost overlap"))
        rho = product_pure(x, y, tol)
        dims = BipartiteDims(d1, d2)
        first = partial_trace(rho, dims, "first", tol)
        second = partial_trace(rho, dims, "second", tol)
        _ensure(
            float(np.abs(first.mat - projector(x).mat).max()) <= 1e-9,
            lambda: fail("first reduction is not the factor projector"),
        )
        _ensure(
            rank(first.mat, tol) == 1 and rank(second.mat, tol) == 1,
            lambda: fail("reductions of a product state are not pure"),
        )
        single = SeparableDecomposition(dims, ((1.0, x, y),))
        _ensure(
            float(np.abs(separable_density(single, tol).mat - rho.mat).max()) <= 1e-12,
            lambda: fail("one-term decomposition differs from the product state"),
        )
    return n


@_suite(
    "range-criterion",
    "the range of a separable mixture is spanned by its product vectors",
)
def _suite_range_criterion(rng, n, tol):
    for k in range(n):
        dims = BipartiteDims(int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        style = k % 4
        if style == 0:
            # parallel product vectors: one-dimensional range
            p = float(rng.uniform(0.2, 0.8))
            x, y = rand_pure_state(rng, dims.d1), rand_pure_state(rng, dims.d2)
            phase_x = np.exp(1j * rng.uniform(0, 2 * np.pi))
            phase_y = np.exp(1j * rng.uniform(0, 2 * np.pi))
            dec = SeparableDecomposition(
                dims,
                (
                    (p, x, y),
                    (1 - p, PureState(phase_x * x.vec), PureState(phase_y * y.vec)),
                ),
            )
        elif style == 1:
            # robustly independent product vectors: both lie in the range
            p = float(rng.uniform(0.2, 0.8))
            u1, u2 = rand_independent_pair(rng, dims.d1)
            dec = SeparableDecomposition(
                dims,
                (
                    (p, PureState(u1 / np.linalg.norm(u1)), rand_pure_state(rng, dims.d2)),
                    (1 - p, PureState(u2 / np.linalg.norm(u2)), rand_pure_state(rng, dims.d2)),
                ),
            )
        else:
            dec = rand_separable_decomposition(rng, dims, int(rng.integers(1, 5)))
        _ensure(
            check_range_criterion(dec, tol),
            lambda dec=dec: {
                "dims": [dec.dims.d1, dec.dims.d2],
                "terms": [
                    {"p": p, "x": cvec_to_json(x.vec), "y": cvec_to_json(y.vec)}
                    for p, x, y in dec.terms
                ],
            },
        )
    return n


@_suite(
    "entangled-pure-states",
    "non-elementary pure states are entangled and both their reductions are mixed",
)
def _suite_entangled_pure(rng, n, tol):
    for k in range(n):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        dims = BipartiteDims(d1, d2)
        if k % 2 == 0:
            u1, u2 = rand_independent_pair(rng, d1)
            v1, v2 = rand_independent_pair(rng, d2)
            vec = kron_vec(u1, v1).vec + kron_vec(u2, v2).vec
            t = BipartiteVector(vec / np.linalg.norm(vec), dims)
            expected_entangled = True
        else:
            t = kron_vec(rand_pure_state(rng, d1).vec, rand_pure_state(rng, d2).vec)
            expected_entangled = False
        result = classify(t, tol=tol)
        oracle_rank = _float_row_reduction_rank(t.vec.reshape(d1, d2), tol.eps)
        fail = lambda reason, t=t: {
            "dims": [t.dims.d1, t.dims.d2],
            "vector": cvec_to_json(t.vec),
            "reason": reason,
        }
        _ensure(
            (result.verdict is Verdict.QUANTUM_ENTANGLED_PURE) == expected_entangled,
            lambda: fail("verdict disagrees with construction"),
        )
        _ensure(
            (oracle_rank >= 2) == expected_entangled,
            lambda: fail("row-reduction oracle disagrees with construction"),
        )
        if not expected_entangled:
            continue
        dec = result.certificate.schmidt
        _ensure(dec.rank >= 2, lambda: fail("entangled certificate has rank < 2"))
        # re-check from the certificate alone: the projector's range is one
        # line spanned by a non-elementary tensor
        rebuilt = dec.reconstruct()
        basis = range_basis(projector(PureState(rebuilt.vec, tol)), tol)
        _ensure(len(basis) == 1, lambda: fail("projector range is not one-dimensional"))
        _ensure(
            schmidt(BipartiteVector(basis[0], dims), tol).rank >= 2,
            lambda: fail("range vector is elementary"),
        )
        rho = projector(PureState(t.vec, tol))
        first = partial_trace(rho, dims, "first", tol)
        second = partial_trace(rho, dims, "second", tol)
        _ensure(
            rank(first.mat, tol) == dec.rank and rank(second.mat, tol) == dec.rank,
            lambda: fail("reduction rank differs from Schmidt rank"),
        )
        top = dec.rank
        spec_first = np.linalg.eigvalsh(first.mat)[::-1][:top]
        spec_second = np.linalg.eigvalsh(second.mat)[::-1][:top]
        squares = np.sort(dec.coeffs**2)[::-1][:top]
        _ensure(
            float(np.abs(spec_first - squares).max()) <= 1e-9
            and float(np.abs(spec_second - squares).max()) <= 1e-9,
            lambda: fail("reduction spectra differ from squared coefficients"),
        )
    bell = bell_vector()
    result = classify(bell, tol=tol)
    _ensure(
        result.verdict is Verdict.QUANTUM_ENTANGLED_PURE,
        {"reason": "bell state not classified as entangled"},
    )
    _ensure(
        float(np.abs(result.certificate.schmidt.coeffs - 1 / np.sqrt(2)).max()) <= 1e-12,
        {"reason": "bell coefficients are not 1/sqrt(2)"},
    )
    rho = projector(PureState(bell.vec))
    for side in ("first", "second"):
        reduced = partial_trace(rho, bell.dims, side, tol)
        _ensure(
            float(np.abs(reduced.mat - np.eye(2) / 2).max()) <= 1e-10,
            {"reason": f"bell {side} reduction is not maximally mixed"},
        )
    return n


@_suite(
    "traceless-commutators",
    "commutators are traceless, so the canonical commutation relation fails in finite dimension",
)
def _suite_traceless_commutators(rng, n, tol):
    for k in range(n):
        d = int(rng.integers(2, 7))
        xm, pm = rand_complex(rng, d, d), rand_complex(rng, d, d)
        val = ccr_trace_obstruction(xm, pm)
        _ensure(
            abs(val) <= 1e-9,
            lambda xm=xm, pm=pm, val=val: {
                "x": cmat_to_json(xm),
                "p": cmat_to_json(pm),
                "trace": complex_pair(val),
            },
        )
    same = rand_complex(rng, 4, 4)
    _ensure(ccr_trace_obstruction(same, same) == 0j, {"reason": "tr[X, X] not exactly zero"})
    return n


@_suite("trace-basis-independence", "the basis sum of diagonal expectations equals the trace")
def _suite_trace_basis_independence(rng, n, tol):
    for k in range(n):
        d = int(rng.integers(2, 7))
        m = rand_complex(rng, d, d)
        u = rand_unitary(rng, d)
        basis_sum = sum(complex(np.vdot(u[:, i], m @ u[:, i])) for i in range(d))
        _ensure(
            abs(basis_sum - trace(m)) <= 1e-9,
            lambda m=m, u=u: {"matrix": cmat_to_json(m), "basis": cmat_to_json(u)},
        )
    return n


def run_all(
    seed: int = DEFAULT_SEED,
    instances: int = DEFAULT_INSTANCES,
    tol: Tolerance = Tolerance(),
) -> list[SuiteResult]:
    """Run every suite off one seeded generator, in registration order."""
    rng = np.random.default_rng(seed)
    results = []
    for fn in _SUITES:
        try:
            count = fn(rng, instances, tol)
            results.append(SuiteResult(fn.suite_name, fn.suite_description, True, count))
        except _Counterexample as exc:
            results.append(
                SuiteResult(fn.suite_name, fn.suite_description, False, instances, exc.payload)
            )
        except (ValueError, RuntimeError) as exc:
            # a suite blowing up is a failure, not a crash: the report must
            # come out falsifiable even for a badly broken build
            results.append(
                SuiteResult(
                    fn.suite_name,
                    fn.suite_description,
                    False,
                    instances,
                    {"error": f"{type(exc).__name__}: {exc}"},
                )
            )
    return results
