"""Geometry and classification of Bell-diagonal (maximally disordered
subsystem) two-qubit states.

The family is parametrized two ways: by the diagonal correlation vector t
(components of sigma_i x sigma_i), and by the mixing weights w over the
four Bell projectors. Both are linearly related; a t-vector describes a
state exactly when all four weights are nonnegative, which carves the
tetrahedron out of the cube [-1,1]^3.

Strata of the tetrahedron:
  * vertices   - the four Bell projectors (all |t_i| = 1),
  * open edges - binary Bell mixtures (exactly one |t_i| = 1), split into
    case A (t_i = +1, two non-singlet states) and case B (t_i = -1,
    singlet plus one other),
  * everything else with all weights positive - generic interior/face
    points.
A state can never have |t_i| = 1 for exactly two axes; seeing that counts
as an internal fault, not a classification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from .linalg import eigh, hermitian_check, hs_norm, partial_trace, pauli, tensor

# Default absolute tolerance for "equals 1", weight negativity, residuals.
DEFAULT_TOL = 1e-9
# Looser validation gate for externally supplied density matrices.
STATE_VALIDATION_TOL = 1e-8

BELL_VERTEX = "bell_vertex"
BINARY_EDGE = "binary_edge"
GENERIC_INTERIOR = "generic_interior"
NON_STATE = "non_state"

# Computational-basis amplitudes of the four Bell states, singlet first.
# Phases are fixed so the t-vector of psi_s has t_s = -1 (s = 1, 2, 3) and
# the singlet has t = (-1, -1, -1).
_BELL_VECTORS = np.array(
    [
        [0, 1, -1, 0],  # psi_0, the singlet
        [1, 0, 0, -1],  # psi_1
        [1, 0, 0, 1],  # psi_2
        [0, 1, 1, 0],  # psi_3
    ],
    dtype=complex,
) / np.sqrt(2)
_BELL_VECTORS.setflags(write=False)

_BELL_T_VECTORS = np.array(
    [
        [-1.0, -1.0, -1.0],
        [-1.0, 1.0, 1.0],
        [1.0, -1.0, 1.0],
        [1.0, 1.0, -1.0],
    ]
)
_BELL_T_VECTORS.setflags(write=False)


class InternalConsistencyError(RuntimeError):
    """A mathematically impossible configuration was observed numerically."""


@dataclass(frozen=True)
class StateVerdict:
    """Joint verdict of the weight test and the eigenvalue test."""

    ok: bool
    min_weight: float
    offending_index: int
    min_eigenvalue: float


@dataclass(frozen=True)
class MdsClass:
    """Classification of a t-vector on the tetrahedron.

    kind is one of BELL_VERTEX, BINARY_EDGE, GENERIC_INTERIOR, NON_STATE.
    For a vertex, `vertex` holds the Bell index. For an edge, `axis` is the
    coordinate with |t_axis| = 1, `case` is "A" (t_axis = +1) or "B"
    (t_axis = -1), and `edge_parameter` is the free coordinate t_{axis+1}
    (cyclic). `weights` always carries the Bell mixing weights of the input.
    """

    kind: str
    weights: np.ndarray
    detail: str
    vertex: int | None = None
    axis: int | None = None
    case: str | None = None
    edge_parameter: float | None = None


@dataclass(frozen=True)
class CanonicalForm:
    """Local unitaries carrying a state onto its diagonal-correlation form."""

    u1: np.ndarray
    u2: np.ndarray
    t: np.ndarray
    residual: float


def bell_state(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Bell state vector and projector for index k (0 is the singlet)."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"Bell index must be in 0..3, got {k}")
    vec = _BELL_VECTORS[k].copy()
    return vec, np.outer(vec, vec.conj())


def bell_t_vector(k: int) -> np.ndarray:
    """t-vector of the k-th Bell projector."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"Bell index must be in 0..3, got {k}")
    return _BELL_T_VECTORS[k].copy()


def t_from_weights(w: np.ndarray) -> np.ndarray:
    """Correlation vector of the Bell mixture with weights (w0, w1, w2, w3)."""
    w = np.asarray(w, dtype=float).reshape(-1)
    if w.shape != (4,):
        raise ValueError(f"expected 4 weights, got shape {w.shape}")
    w0, w1, w2, w3 = w
    return np.array(
        [
            -w1 + w2 + w3 - w0,
            w1 - w2 + w3 - w0,
            w1 + w2 - w3 - w0,
        ]
    )


def weights_from_t(t: np.ndarray) -> np.ndarray:
    """Bell mixing weights of a t-vector (negative entries mean non-state)."""
    t = np.asarray(t, dtype=float).reshape(-1)
    if t.shape != (3,):
        raise ValueError(f"expected a 3-component t-vector, got shape {t.shape}")
    t1, t2, t3 = t
    return np.array(
        [
            (1 - t1 - t2 - t3) / 4,
            (1 - t1 + t2 + t3) / 4,
            (1 + t1 - t2 + t3) / 4,
            (1 + t1 + t2 - t3) / 4,
        ]
    )


def build_T(t: np.ndarray) -> np.ndarray:
    """The operator (1/4)(I x I + sum_i t_i sigma_i x sigma_i)."""
    t = np.asarray(t, dtype=float).reshape(-1)
    if t.shape != (3,):
        raise ValueError(f"expected a 3-component t-vector, got shape {t.shape}")
    out = np.eye(4, dtype=complex)
    for i in range(3):
        out += t[i] * tensor(pauli(i + 1), pauli(i + 1))
    return out / 4


def is_state(t: np.ndarray, tol: float = DEFAULT_TOL) -> StateVerdict:
    """Tetrahedron membership, checked two independent ways.

    The weight test (all Bell weights >= -tol) and the eigenvalue test
    (smallest eigenvalue of the built operator >= -tol) must agree; a
    disagreement beyond numerical reach raises InternalConsistencyError.
    """
    w = weights_from_t(t)
    min_w = float(w.min())
    arg = int(w.argmin())
    eigs, _ = eigh(build_T(t))
    min_eig = float(eigs[-1])
    ok_w = min_w >= -tol
    ok_e = min_eig >= -tol
    if ok_w != ok_e:
        raise InternalConsistencyError(
            f"weight test ({min_w:.3e}) and eigenvalue test ({min_eig:.3e}) "
            f"disagree at tolerance {tol:g}"
        )
    return StateVerdict(ok=ok_w, min_weight=min_w, offending_index=arg, min_eigenvalue=min_eig)


_CYCLIC = {1: (2, 3), 2: (3, 1), 3: (1, 2)}


def classify(t: np.ndarray, tol: float = DEFAULT_TOL) -> MdsClass:
    """Classify a t-vector as vertex, edge, interior, or non-state.

    Counts the axes with |t_i| within tol of 1: three means a Bell vertex
    (identified by sign pattern), one means a binary edge (case A for
    t_i = +1, case B for t_i = -1, with the consistency relation between
    the two free coordinates verified), zero means a generic point with
    all weights positive. A count of two is impossible for states and
    raises InternalConsistencyError.
    """
    t = np.asarray(t, dtype=float).reshape(-1)
    w = weights_from_t(t)
    verdict = is_state(t, tol)
    if not verdict.ok:
        return MdsClass(
            kind=NON_STATE,
            weights=w,
            detail=(
                f"weight w{verdict.offending_index} = {verdict.min_weight:.12g} < -{tol:g}"
            ),
        )
    at_one = [i for i in (1, 2, 3) if abs(abs(t[i - 1]) - 1) <= tol]
    count = len(at_one)
    if count == 2:
        raise InternalConsistencyError(
            f"exactly two |t_i| equal 1 within {tol:g} for a state: t = {t.tolist()}"
        )
    if count == 3:
        signs = tuple(1 if t[i] > 0 else -1 for i in range(3))
        table = {(-1, 1, 1): 1, (1, -1, 1): 2, (1, 1, -1): 3, (-1, -1, -1): 0}
        k = table.get(signs)
        if k is None:
            raise InternalConsistencyError(
                f"state with all |t_i| = 1 has a non-Bell sign pattern {signs}"
            )
        return MdsClass(
            kind=BELL_VERTEX,
            weights=w,
            vertex=k,
            detail=f"sign pattern {signs} identifies Bell projector {k}",
        )
    if count == 1:
        i = at_one[0]
        j, m = _CYCLIC[i]
        case = "A" if t[i - 1] > 0 else "B"
        if case == "A":
            violation = abs(t[m - 1] + t[j - 1])
        else:
            violation = abs(t[m - 1] - t[j - 1])
        if violation > 8 * tol:
            raise InternalConsistencyError(
                f"edge consistency violated on axis {i} case {case}: "
                f"|relation residual| = {violation:.3e}"
            )
        detail = (
            f"axis {i} case {case}: t{i} = {t[i - 1]:.12g}, free coordinate "
            f"t{j} = {t[j - 1]:.12g}, consistency residual {violation:.3e}"
        )
        return MdsClass(
            kind=BINARY_EDGE,
            weights=w,
            axis=i,
            case=case,
            edge_parameter=float(t[j - 1]),
            detail=detail,
        )
    margin = float(1 - np.abs(t).max())
    return MdsClass(
        kind=GENERIC_INTERIOR,
        weights=w,
        detail=f"all |t_i| below 1 (margin {margin:.12g}); all weights nonnegative",
    )


def edge_mixture(cls: MdsClass) -> dict[int, float]:
    """Bell indices and weights of a binary-edge mixture.

    Case A on axis i mixes the two non-singlet states other than i; case B
    mixes state i with the singlet.
    """
    if cls.kind != BINARY_EDGE:
        raise ValueError(f"edge_mixture expects a binary edge, got {cls.kind}")
    i = cls.axis
    j, m = _CYCLIC[i]
    u = cls.edge_parameter
    if cls.case == "A":
        return {j: (1 - u) / 2, m: (1 + u) / 2}
    return {i: (1 + u) / 2, 0: (1 - u) / 2}


def validate_density_matrix(rho: np.ndarray, tol: float = STATE_VALIDATION_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity; return the input as complex."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    chk = hermitian_check(rho, tol)
    if not chk.passes:
        raise ValueError(
            f"density matrix is not Hermitian (max deviation {chk.max_deviation:.3e})"
        )
    tr = np.trace(rho).real
    if abs(tr - 1) > tol:
        raise ValueError(f"density matrix trace is {tr:.12g}, expected 1")
    eigs, _ = eigh(rho, tol)
    if eigs[-1] < -tol:
        raise ValueError(f"density matrix has negative eigenvalue {eigs[-1]:.3e}")
    return rho


def is_mds(rho: np.ndarray, tol: float = STATE_VALIDATION_TOL) -> bool:
    """True when both reduced states equal I/2 within tol."""
    rho = validate_density_matrix(rho, tol)
    half = np.eye(2) / 2
    return (
        np.abs(partial_trace(rho, 1) - half).max() <= tol
        and np.abs(partial_trace(rho, 2) - half).max() <= tol
    )


def _su2_from_rotation(r: np.ndarray) -> np.ndarray:
    """Lift a rotation matrix to SU(2), choosing the lift with nonnegative trace."""
    x, y, z, w = Rotation.from_matrix(r).as_quat()
    u = w * pauli(0) - 1j * (x * pauli(1) + y * pauli(2) + z * pauli(3))
    if np.trace(u).real < 0:
        u = -u
    # guard against a convention mismatch: conjugation must reproduce r
    rec = np.array(
        [
            [np.trace(pauli(i) @ u @ pauli(j) @ u.conj().T).real / 2 for j in (1, 2, 3)]
            for i in (1, 2, 3)
        ]
    )
    if np.abs(rec - r).max() > 1e-9:
        raise InternalConsistencyError("SU(2) lift does not reproduce the rotation")
    return u


def correlation_matrix(rho: np.ndarray) -> np.ndarray:
    """3x3 matrix of expectations of sigma_i x sigma_j."""
    rho = np.asarray(rho, dtype=complex)
    return np.array(
        [
            [np.trace(rho @ tensor(pauli(i), pauli(j))).real for j in (1, 2, 3)]
            for i in (1, 2, 3)
        ]
    )


def canonicalize(rho: np.ndarray, tol: float = DEFAULT_TOL) -> CanonicalForm:
    """Local unitaries (u1, u2) and t with (u1 x u2) rho (u1 x u2)^dagger = T(t).

    The correlation matrix is decomposed as A diag(t) B^T with both factors
    forced into SO(3) (flipping the sign of the last singular value when
    needed); the rotations transpose onto the state's two sides and lift to
    SU(2). Axes are then permuted so |t| is descending, ties broken by
    signed value descending.
    """
    rho = validate_density_matrix(rho)
    half = np.eye(2) / 2
    dev1 = np.abs(partial_trace(rho, 1) - half).max()
    dev2 = np.abs(partial_trace(rho, 2) - half).max()
    if max(dev1, dev2) > STATE_VALIDATION_TOL:
        raise ValueError(
            f"canonicalize expects maximally disordered subsystems; partial traces "
            f"deviate from I/2 by {dev1:.3e} and {dev2:.3e}"
        )
    c = correlation_matrix(rho)
    a, s, bt = np.linalg.svd(c)
    b = bt.T
    da, db = np.linalg.det(a), np.linalg.det(b)
    a = a.copy()
    b = b.copy()
    if da < 0:
        a[:, 2] = -a[:, 2]
    if db < 0:
        b[:, 2] = -b[:, 2]
    t = s.copy()
    t[2] *= np.sign(da) * np.sign(db)
    # canonical axis order: |t| descending, ties by signed value descending
    order = sorted(range(3), key=lambda i: (-abs(t[i]), -t[i]))
    perm = np.zeros((3, 3))
    for new, old in enumerate(order):
        perm[new, old] = 1.0
    if np.linalg.det(perm) < 0:
        perm[0, :] = -perm[0, :]
    r1 = perm @ a.T
    r2 = perm @ b.T
    t = t[order]
    u1 = _su2_from_rotation(r1)
    u2 = _su2_from_rotation(r2)
    transported = tensor(u1, u2) @ rho @ tensor(u1, u2).conj().T
    residual = hs_norm(transported - build_T(t))
    if residual > tol:
        raise InternalConsistencyError(
            f"canonicalization residual {residual:.3e} exceeds {tol:g}"
        )
    return CanonicalForm(u1=u1, u2=u2, t=t, residual=float(residual))


def sample_tetrahedron(seed: int, region: str) -> np.ndarray:
    """Deterministic pseudorandom t-vector in a requested stratum.

    region is "interior", "vertex:K" (K in 0..3), or "edge:I:A" / "edge:I:B"
    (axis I in 1..3). Every returned point satisfies the state test.
    """
    rng = np.random.default_rng(seed)
    parts = region.split(":")
    if parts[0] == "interior":
        return random_interior_t(rng)
    if parts[0] == "vertex" and len(parts) == 2:
        return bell_t_vector(int(parts[1]))
    if parts[0] == "edge" and len(parts) == 3:
        return random_edge_t(rng, int(parts[1]), parts[2])
    raise ValueError(f"unknown region {region!r}")


def random_interior_t(
    rng: np.random.Generator, min_weight: float = 0.01
) -> np.ndarray:
    """t-vector with all four Bell weights >= min_weight (rejection sampling)."""
    while True:
        w = rng.dirichlet(np.ones(4))
        if w.min() >= min_weight:
            return t_from_weights(w)


def random_edge_t(
    rng: np.random.Generator,
    axis: int,
    case: str,
    parameter: float | None = None,
    margin: float = 0.05,
) -> np.ndarray:
    """Open-edge t-vector on the given axis and case.

    The free parameter is sampled in (-1 + margin, 1 - margin) when not
    given. Case A fixes t_axis = +1 with the two free coordinates opposite;
    case B fixes t_axis = -1 with them equal.
    """
    if axis not in (1, 2, 3):
        raise ValueError(f"edge axis must be 1..3, got {axis}")
    if case not in ("A", "B"):
        raise ValueError(f"edge case must be 'A' or 'B', got {case!r}")
    u = parameter if parameter is not None else rng.uniform(-1 + margin, 1 - margin)
    if not -1 < u < 1:
        raise ValueError(f"edge parameter must be in (-1, 1), got {u}")
    j, m = _CYCLIC[axis]
    t = np.zeros(3)
    if case == "A":
        t[axis - 1] = 1.0
        t[m - 1] = u
        t[j - 1] = -u
    else:
        t[axis - 1] = -1.0
        t[j - 1] = u
        t[m - 1] = u
    return t
