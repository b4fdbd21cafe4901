"""Generic tensor calculus for invariant connections on a reductive pair.

Given the bilinear map alpha of a connection, the torsion and curvature at
the base point are

    T(X, Y)    = alpha(X, Y) - alpha(Y, X) - [X, Y]_m,
    R(X, Y, Z) = alpha(X, alpha(Y, Z)) - alpha(Y, alpha(X, Z))
                 - alpha([X, Y]_m, Z) - [[X, Y]_h, Z].

Ricci is the contraction Ric(X, Y) = sum_j sign_j g(R(f_j, X, Y), f_j) over
an orthonormal basis (f_j, sign_j); this convention is calibrated so that
the round Levi-Civita connection (eps = -1) has Ric = 2n g.  Everything is
computed over the standard basis of m and serves as the independent oracle
for the closed-form families.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import Metric
from .config import TOL_NUM
from .spaces import Bilin


@dataclass(frozen=True)
class CurvTensor:
    """Curvature coefficients: coeffs[i, j, k, l] = e_l-component of R(e_i, e_j, e_k)."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        d = 2 * self.n + 1
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (d, d, d, d):
            raise ValueError(f"coeffs must have shape {(d,) * 4}")
        object.__setattr__(self, "coeffs", c)

    def max_abs(self) -> float:
        return float(np.abs(self.coeffs).max())


@dataclass(frozen=True)
class Rank2Tensor:
    """A rank-2 tensor over the standard basis (Ricci, S, Gram, ...)."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        d = 2 * self.n + 1
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (d, d):
            raise ValueError(f"coeffs must have shape {(d, d)}")
        object.__setattr__(self, "coeffs", c)


def torsion(alpha: Bilin) -> Bilin:
    Cm, _ = algebra.structure_tensors(alpha.n)
    c = alpha.coeffs - alpha.coeffs.transpose(1, 0, 2) - Cm
    return Bilin(alpha.n, c)


def curvature(alpha: Bilin) -> CurvTensor:
    Cm, Hterm = algebra.structure_tensors(alpha.n)
    a = alpha.coeffs
    R = (
        np.einsum("jkm,iml->ijkl", a, a)
        - np.einsum("ikm,jml->ijkl", a, a)
        - np.einsum("ijm,mkl->ijkl", Cm, a)
        - Hterm
    )
    return CurvTensor(alpha.n, R)


def _orthonormal_weights(g: Metric) -> tuple[np.ndarray, np.ndarray]:
    """Scales turning the standard basis into an orthonormal one, with signs."""
    scale = np.ones(g.dim)
    scale[-1] = 1.0 / np.sqrt(abs(g.eps))
    signs = np.ones(g.dim)
    signs[-1] = -np.sign(g.eps)
    return scale, signs


def ricci(R: CurvTensor, g: Metric) -> Rank2Tensor:
    """Ric(X, Y) = sum_j sign_j g(R(f_j, X, Y), f_j) over the orthonormal basis."""
    if R.n != g.n:
        raise ValueError("dimension mismatch")
    scale, signs = _orthonormal_weights(g)
    G = g.gram()
    # R(f_j, e_x, e_y) has coefficients scale_j * R[j, x, y, :]
    Ric = np.einsum("j,jxyl,lj->xy", signs * scale * scale, R.coeffs, G)
    return Rank2Tensor(R.n, Ric)


def scalar(Ric: Rank2Tensor, g: Metric) -> float:
    """sum_j sign_j Ric(f_j, f_j)."""
    if Ric.n != g.n:
        raise ValueError("dimension mismatch")
    scale, signs = _orthonormal_weights(g)
    return float(np.einsum("j,j,jj->", signs, scale * scale, Ric.coeffs))


def sym(T: Rank2Tensor) -> Rank2Tensor:
    return Rank2Tensor(T.n, 0.5 * (T.coeffs + T.coeffs.T))


def torsion_form(alpha: Bilin, g: Metric) -> np.ndarray:
    """The lowered torsion omega[i, j, k] = g(T(e_i, e_j), e_k)."""
    T = torsion(alpha)
    return np.einsum("ijk,kl->ijl", T.coeffs, g.gram())


def is_skew(omega: np.ndarray, tol: float = TOL_NUM) -> bool:
    """Total antisymmetry of a rank-3 array."""
    return (
        np.abs(omega + omega.transpose(1, 0, 2)).max() <= tol
        and np.abs(omega + omega.transpose(0, 2, 1)).max() <= tol
    )


def is_metric(alpha: Bilin, g: Metric, tol: float = TOL_NUM) -> bool:
    """g(alpha(X,Y),Z) + g(Y, alpha(X,Z)) = 0 on all basis triples."""
    G = g.gram()
    v = np.einsum("ijk,kz->ijz", alpha.coeffs, G) + np.einsum(
        "izk,kj->ijz", alpha.coeffs, G
    )
    return bool(np.abs(v).max() <= tol)


def s_tensor(alpha: Bilin, g: Metric) -> Rank2Tensor:
    """S(X, Y) = sum_j sign_j g(T(f_j, X), T(f_j, Y))."""
    T = torsion(alpha).coeffs
    scale, signs = _orthonormal_weights(g)
    G = g.gram()
    # T(f_j, e_x) has coefficients scale_j * T[j, x, :]
    S = np.einsum("j,jxk,kl,jyl->xy", signs * scale * scale, T, G, T)
    return Rank2Tensor(alpha.n, S)


def einstein_defect(alpha: Bilin, g: Metric) -> float:
    """Frobenius norm of Sym(Ric) - (s / dim) g for the connection alpha."""
    R = curvature(alpha)
    Ric = ricci(R, g)
    s = scalar(Ric, g)
    dev = sym(Ric).coeffs - (s / g.dim) * g.gram()
    return float(np.linalg.norm(dev))
