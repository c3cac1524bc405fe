"""Subspaces of C^d and the two cosine angles between them.

The infimum cosine angle of V against W is the smallest norm of P_W v over
unit vectors v in V; the supremum cosine angle is the largest.  Both reduce
to singular values of the cross product B^H A of orthonormal bases, which is
how they are computed here.  Degenerate cases follow fixed conventions: a
zero V has infimum angle 1 and supremum angle 0, and the infimum angle is 0
whenever dim W < dim V.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numkernel import (
    DEFAULT_TOL,
    NumericalError,
    Tolerance,
    as_matrix,
    orth,
    rank,
    singular_values,
)

DEFAULT_ANGLE_TOL = 1e-8

# computed cosines this close to an endpoint are backward-error noise; they
# snap so that identities like R(V, W)^2 + S(V, W-perp)^2 = 1 survive the
# cancellation in 1 - s^2 when the true angle is exactly 0 or pi/2
_COS_SNAP = 1e-13


def _clip_cos(s: float) -> float:
    s = float(np.clip(s, 0.0, 1.0))
    if s >= 1.0 - _COS_SNAP:
        return 1.0
    if s <= _COS_SNAP:
        return 0.0
    return s


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^d held as an orthonormal column basis (d x p, p >= 0)."""

    basis: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.basis)
        gram = b.conj().T @ b
        if gram.size and np.abs(gram - np.eye(b.shape[1])).max() > 1e-8:
            raise ValueError("basis columns are not orthonormal")
        object.__setattr__(self, "basis", b)
        b.flags.writeable = False

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def span_of(cls, columns, tol: Tolerance = DEFAULT_TOL) -> "Subspace":
        """Span of the given matrix columns (a d x 0 input gives the zero subspace)."""
        return cls(orth(as_matrix(columns), tol))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        return cls(np.zeros((ambient_dim, 0), dtype=np.complex128))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        return cls(np.eye(ambient_dim, dtype=np.complex128))


def _check_same_ambient(v: Subspace, w: Subspace):
    if v.ambient_dim != w.ambient_dim:
        raise ValueError(
            f"ambient dimensions differ: {v.ambient_dim} vs {w.ambient_dim}"
        )


def project(w: Subspace, vec) -> np.ndarray:
    """Orthogonal projection of a vector onto W."""
    v = np.asarray(vec, dtype=np.complex128)
    if v.shape != (w.ambient_dim,):
        raise ValueError(f"vector has shape {v.shape}, expected ({w.ambient_dim},)")
    return w.basis @ (w.basis.conj().T @ v)


def inf_cos(v: Subspace, w: Subspace) -> float:
    """Infimum cosine angle of V against W.

    Equals min over unit vectors u in V of the norm of P_W u.  Returns 1 for
    a zero V and 0 whenever dim W < dim V (some direction of V must then be
    lost under projection).
    """
    _check_same_ambient(v, w)
    if v.dim == 0:
        return 1.0
    if w.dim < v.dim:
        return 0.0
    s = singular_values(w.basis.conj().T @ v.basis)
    return _clip_cos(s[v.dim - 1])


def sup_cos(v: Subspace, w: Subspace) -> float:
    """Supremum cosine angle of V against W: max norm of P_W u over unit u in V."""
    _check_same_ambient(v, w)
    if v.dim == 0 or w.dim == 0:
        return 0.0
    s = singular_values(w.basis.conj().T @ v.basis)
    return _clip_cos(s[0])


def ortho_complement(w: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Orthogonal complement of W inside its ambient space.

    Computed by completing the orthonormal basis of W to a unitary, so the
    result always has dimension exactly d - dim W.
    """
    d = w.ambient_dim
    if w.dim == 0:
        return Subspace.full(d)
    try:
        u, _, _ = np.linalg.svd(w.basis, full_matrices=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return Subspace(np.ascontiguousarray(u[:, w.dim:]))


def direct_sum_test(v: Subspace, w: Subspace, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the ambient space is V (+) W-perp, i.e. the pair suits oblique
    projection onto V along W-perp."""
    _check_same_ambient(v, w)
    wp = ortho_complement(w, tol)
    if v.dim + wp.dim != v.ambient_dim:
        return False
    stacked = np.concatenate([v.basis, wp.basis], axis=1)
    return rank(stacked, tol) == v.ambient_dim
