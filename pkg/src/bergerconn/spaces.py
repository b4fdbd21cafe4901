"""Spaces of su(n)-equivariant bilinear maps m x m -> m, as explicit nullspaces.

An invariant affine connection corresponds to a bilinear map alpha with

    [h, alpha(X, Y)] = alpha([h, X], Y) + alpha(X, [h, Y])    for all h in h.

This module computes, over the standard basis of m, the space of all such
maps, the subspace of metric-compatible ones (alpha(X, -) skew-adjoint for
g_eps) and the affine subspace whose torsion 3-form is totally skew.

Rank decisions use SVD with a relative cutoff and a guarded singular-value
gap.  The equivariance constraint is imposed for a small generic generating
set of h and the resulting nullspace is then verified against the full
h-basis residual; on failure the full stacked system is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import algebra
from .algebra import Metric, MVec
from .config import TOL_GAP, TOL_NUM, TOL_RANK


class RankGapError(RuntimeError):
    """The singular-value spectrum has no safe gap at the rank decision."""


@dataclass(frozen=True)
class Bilin:
    """Bilinear map m x m -> m as a real rank-3 coefficient tensor.

    coeffs[i, j, k] is the coefficient of e_k in alpha(e_i, e_j) over the
    standard basis.
    """

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        d = 2 * self.n + 1
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (d, d, d):
            raise ValueError(f"coeffs must have shape {(d, d, d)}, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coeffs must be finite")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, n: int) -> "Bilin":
        d = 2 * n + 1
        return cls(n, np.zeros((d, d, d)))

    @classmethod
    def from_function(cls, n: int, f) -> "Bilin":
        """Tabulate f(X, Y) -> MVec on all standard basis pairs."""
        basis = algebra.standard_basis(n)
        d = 2 * n + 1
        c = np.empty((d, d, d))
        for i, X in enumerate(basis):
            for j, Y in enumerate(basis):
                c[i, j] = f(X, Y).coords()
        return cls(n, c)

    def apply(self, X: MVec, Y: MVec) -> MVec:
        if self.n != X.n or X.n != Y.n:
            raise ValueError("dimension mismatch")
        v = np.einsum("i,j,ijk->k", X.coords(), Y.coords(), self.coeffs)
        return MVec.from_coords(self.n, v)

    def __add__(self, other: "Bilin") -> "Bilin":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return Bilin(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other: "Bilin") -> "Bilin":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return Bilin(self.n, self.coeffs - other.coeffs)

    def __rmul__(self, c: float) -> "Bilin":
        return Bilin(self.n, float(c) * self.coeffs)


@dataclass(frozen=True)
class LinearSpace:
    """A (possibly affine) subspace of bilinear maps, given by a basis."""

    ambient_dim: int
    basis: tuple[Bilin, ...]
    offset: Bilin | None = None

    def __post_init__(self):
        if self.basis:
            M = self.matrix()
            s = np.linalg.svd(M, compute_uv=False)
            if s[-1] <= TOL_RANK * max(s[0], 1.0):
                raise ValueError("basis elements are not linearly independent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """Stacked flattened basis, shape (dim, ambient_dim)."""
        return np.array([b.coeffs.ravel() for b in self.basis])

    def element(self, coeffs) -> Bilin:
        """offset + sum_r coeffs[r] * basis[r]."""
        coeffs = np.asarray(coeffs, dtype=float)
        n = self.basis[0].n if self.basis else self.offset.n
        c = np.zeros_like(self.basis[0].coeffs if self.basis else self.offset.coeffs)
        for x, b in zip(coeffs, self.basis):
            c = c + x * b.coeffs
        if self.offset is not None:
            c = c + self.offset.coeffs
        return Bilin(n, c)

    def projection_residual(self, b: Bilin) -> float:
        """Distance from b (minus the offset, if any) to the span of the basis."""
        v = b.coeffs.ravel()
        if self.offset is not None:
            v = v - self.offset.coeffs.ravel()
        if not self.basis:
            return float(np.linalg.norm(v))
        M = self.matrix().T
        x, *_ = np.linalg.lstsq(M, v, rcond=None)
        return float(np.linalg.norm(M @ x - v))


def _nullspace(M: np.ndarray) -> np.ndarray:
    """Rows spanning the nullspace of M, with a guarded rank decision."""
    if M.shape[0] == 0:
        return np.eye(M.shape[1])
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    smax = s[0] if len(s) else 0.0
    if smax == 0.0:
        return np.eye(M.shape[1])
    kept = s > TOL_RANK * smax
    rank = int(np.count_nonzero(kept))
    discarded = s[rank:]
    if rank > 0 and len(discarded) and discarded[0] > 0:
        if s[rank - 1] / discarded[0] < TOL_GAP:
            raise RankGapError(
                f"ambiguous rank: gap {s[rank - 1] / discarded[0]:.2e} below {TOL_GAP:.0e}"
            )
    return vt[rank:]


def _equivariance_operator(A: np.ndarray) -> np.ndarray:
    """Linear operator on flattened rank-3 tensors enforcing h-equivariance
    for the single h whose action on m is A."""
    d = A.shape[0]
    I, I2 = np.eye(d), np.eye(d * d)
    return (
        np.kron(I2, A)
        - np.kron(A.T, I2)
        - np.kron(I, np.kron(A.T, I))
    )


def _generating_actions(n: int) -> np.ndarray:
    """Actions of two fixed generic elements of su(n) on m.

    Generic pairs generate su(n), so their joint invariants coincide with
    the full h-invariants; this is re-verified against the whole h basis.
    """
    A = algebra.adjoint_matrices(n)
    rng = np.random.default_rng(12345)
    w = rng.standard_normal((2, A.shape[0]))
    return np.einsum("gr,rij->gij", w, A)


def _invariant_basis_raw(n: int) -> np.ndarray:
    d = 2 * n + 1
    if n == 1:
        # h = su(1) = 0: every bilinear map is invariant
        return np.eye(d**3)
    gens = _generating_actions(n)
    M = np.vstack([_equivariance_operator(A) for A in gens])
    null = _nullspace(M)
    # verify against the full h basis; fall back to the full stack if needed
    full = algebra.adjoint_matrices(n)
    resid = max(
        np.abs(_equivariance_operator(A) @ null.T).max() for A in full
    )
    if resid > TOL_NUM:
        M = np.vstack([_equivariance_operator(A) for A in full])
        null = _nullspace(M)
    return null


@lru_cache(maxsize=None)
def invariant_bilinear_space(n: int) -> LinearSpace:
    """All su(n)-equivariant bilinear maps m x m -> m.

    Dimension 27, 13, 9, 7 for n = 1, 2, 3 and >= 4.
    """
    d = 2 * n + 1
    null = _invariant_basis_raw(n)
    basis = tuple(Bilin(n, row.reshape(d, d, d)) for row in null)
    return LinearSpace(ambient_dim=d**3, basis=basis)


def _metric_violation(coeffs: np.ndarray, G: np.ndarray) -> np.ndarray:
    """g(alpha(X,Y),Z) + g(Y, alpha(X,Z)) on all basis triples."""
    return np.einsum("ijk,kz->ijz", coeffs, G) + np.einsum("izk,kj->ijz", coeffs, G)


@lru_cache(maxsize=None)
def metric_connection_space(n: int, eps: float) -> LinearSpace:
    """Equivariant maps with alpha(X, -) in so(m, g_eps).

    Dimension 9, 7, 5, 3 for n = 1, 2, 3 and >= 4, independent of eps.
    """
    g = Metric(n, eps)
    G = g.gram()
    inv = invariant_bilinear_space(n)
    V = np.array([_metric_violation(b.coeffs, G).ravel() for b in inv.basis]).T
    null = _nullspace(V)
    d = 2 * n + 1
    basis = []
    for row in null:
        c = np.zeros((d, d, d))
        for x, b in zip(row, inv.basis):
            c += x * b.coeffs
        basis.append(Bilin(n, c))
    return LinearSpace(ambient_dim=d**3, basis=tuple(basis))


def _skew_violation(coeffs: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Failure of total antisymmetry of the lowered torsion of a direction.

    For a difference of two metric connections the bracket term of the
    torsion cancels, so T = alpha - alpha^t and the condition is linear.
    """
    T = coeffs - coeffs.transpose(1, 0, 2)
    om = np.einsum("ijk,kl->ijl", T, G)
    return om + om.transpose(0, 2, 1)


@lru_cache(maxsize=None)
def skew_torsion_space(n: int, eps: float) -> LinearSpace:
    """Affine space of metric connections with totally skew torsion.

    Offset is the Levi-Civita map; the direction basis is aligned with the
    closed-form directions (s-, Theta- and psi-hat-directions), after
    verifying they span the computed nullspace.  Direction dimension
    1, 3, 3, 1 for n = 1, 2, 3 and >= 4.
    """
    from . import families

    g = Metric(n, eps)
    G = g.gram()
    met = metric_connection_space(n, eps)
    V = np.array([_skew_violation(b.coeffs, G).ravel() for b in met.basis]).T
    null = _nullspace(V)
    d = 2 * n + 1
    raw = []
    for row in null:
        c = np.zeros((d, d, d))
        for x, b in zip(row, met.basis):
            c += x * b.coeffs
        raw.append(Bilin(n, c))
    computed = LinearSpace(ambient_dim=d**3, basis=tuple(raw))

    named = families.skew_direction_basis(n, eps)
    if len(named) != computed.dim:
        raise RankGapError(
            f"skew direction count {computed.dim} does not match the "
            f"{len(named)} closed-form directions for n={n}"
        )
    for b in named:
        r = computed.projection_residual(b)
        if r > TOL_NUM * max(1.0, np.abs(b.coeffs).max()):
            raise RankGapError(f"closed-form direction off the computed space: {r:.2e}")
    return LinearSpace(
        ambient_dim=d**3, basis=tuple(named), offset=families.alpha_lc(n, eps)
    )


def levi_civita_generic(n: int, eps: float) -> Bilin:
    """The unique torsion-free element of metric_connection_space(n, eps).

    Solved as a linear system over the metric basis; a metric connection is
    determined by its torsion, so the solution is unique.
    """
    Cm, _ = algebra.structure_tensors(n)
    met = metric_connection_space(n, eps)
    M = np.array(
        [(b.coeffs - b.coeffs.transpose(1, 0, 2)).ravel() for b in met.basis]
    ).T
    x, _, rank, _ = np.linalg.lstsq(M, Cm.ravel(), rcond=None)
    if rank < met.dim:
        raise RankGapError("torsion map degenerate on the metric space")
    resid = np.linalg.norm(M @ x - Cm.ravel())
    if resid > TOL_NUM:
        raise RankGapError(f"no torsion-free metric connection found: {resid:.2e}")
    return met.element(x)
