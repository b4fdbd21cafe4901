"""Einstein-with-skew-torsion condition over the skew-torsion parameters.

For each (n, eps) the skew-torsion connections form an affine space through
the Levi-Civita map, with direction coordinates s (all n), (s1, s2) for
n = 3 and (s3, s4) for n = 2.  The Einstein condition cuts out a quadric:

    n > 3:  s^2 = ((n+1)/(n-1)) (eps+1)/eps
    n = 3:  eps s^2 + s1^2 + s2^2 = 2(eps+1)
    n = 2:  s^2 + s3^2 + s4^2 = 3(eps+1)/eps
    n = 1:  solvable iff eps = -1, and then every s works.

This module renders those equations, classifies the solution variety
(reproducing the four-row table of regimes), confirms solutions numerically
by damped Gauss-Newton on the Einstein defect, and checks the Ricci-flat
and flatness loci.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import families, nomizu
from .algebra import Metric
from .config import TOL_SOL
from .spaces import Bilin, skew_torsion_space


class VarietyClass(enum.Enum):
    EMPTY = "empty"
    ONE_POINT = "1 pt."
    TWO_POINTS = "2 pt."
    LINE = "line"
    ELLIPSOID = "ellipsoid"
    CONE = "cone"
    HYPERBOLOID_ONE_SHEET = "hyperboloid 1-sheet"
    HYPERBOLOID_TWO_SHEETS = "hyperboloid 2-sheets"


_PARAM_NAMES = {1: ("s",), 2: ("s", "s3", "s4"), 3: ("s", "s1", "s2")}


def param_names(n: int) -> tuple[str, ...]:
    return _PARAM_NAMES.get(n, ("s",))


def param_count(n: int) -> int:
    return len(param_names(n))


@dataclass(frozen=True)
class CanonicalEquation:
    """The defining quadric a*s^2 + b*(aux1^2 + aux2^2) = c.

    For n = 1 the set is not a quadric: it is the whole s-line when
    eps = -1 and empty otherwise (encoded by the `line` flag; a = b = c = 0).
    """

    n: int
    eps: float
    a: float
    b: float
    c: float
    names: tuple[str, ...]
    line: bool = False

    def residual(self, params) -> float:
        if self.n == 1:
            return 0.0 if self.line else abs(self.eps + 1.0)
        params = np.atleast_1d(np.asarray(params, dtype=float))
        s = params[0]
        aux2 = float(np.sum(params[1:] ** 2))
        return abs(self.a * s * s + self.b * aux2 - self.c)


def einstein_equation(n: int, eps: float) -> CanonicalEquation:
    if n < 1 or eps == 0:
        raise ValueError("need n >= 1 and eps != 0")
    names = param_names(n)
    if n == 1:
        return CanonicalEquation(n, eps, 0.0, 0.0, 0.0, names, line=(eps == -1.0))
    if n == 2:
        return CanonicalEquation(n, eps, 1.0, 1.0, 3.0 * (eps + 1.0) / eps, names)
    if n == 3:
        return CanonicalEquation(n, eps, eps, 1.0, 2.0 * (eps + 1.0), names)
    return CanonicalEquation(
        n, eps, 1.0, 0.0, ((n + 1.0) / (n - 1.0)) * (eps + 1.0) / eps, names
    )


def classify(n: int, eps: float) -> VarietyClass:
    """Variety type of the Einstein solution set in the skew parameters."""
    eq = einstein_equation(n, eps)
    if n == 1:
        return VarietyClass.LINE if eq.line else VarietyClass.EMPTY
    if n == 2:
        if eq.c > 0:
            return VarietyClass.ELLIPSOID
        return VarietyClass.ONE_POINT if eq.c == 0 else VarietyClass.EMPTY
    if n == 3:
        if eps > 0:
            return VarietyClass.ELLIPSOID
        if eq.c < 0:
            return VarietyClass.HYPERBOLOID_TWO_SHEETS
        return VarietyClass.CONE if eq.c == 0 else VarietyClass.HYPERBOLOID_ONE_SHEET
    if eq.c > 0:
        return VarietyClass.TWO_POINTS
    return VarietyClass.ONE_POINT if eq.c == 0 else VarietyClass.EMPTY


def _family_member(n: int, eps: float, params) -> Bilin:
    """Skew family member through the cached affine space (the direction
    basis is aligned with the parameter coordinates, so this matches
    families.skew_family but avoids re-tabulating the map)."""
    return skew_torsion_space(n, eps).element(np.atleast_1d(params))


def einstein_defect_at(n: int, eps: float, params) -> float:
    """Einstein defect of the skew family member with the given parameters."""
    return nomizu.einstein_defect(_family_member(n, eps, params), Metric(n, eps))


def _defect_residual(n: int, eps: float):
    g = Metric(n, eps)
    G = g.gram()

    def r(x):
        alpha = _family_member(n, eps, x)
        Ric = nomizu.ricci(nomizu.curvature(alpha), g)
        s = nomizu.scalar(Ric, g)
        return (nomizu.sym(Ric).coeffs - (s / g.dim) * G).ravel()

    return r


def _gauss_newton(r, x0, tol, damping=0.5, max_iter=120, fd_step=1e-6):
    x = np.asarray(x0, dtype=float).copy()
    k = len(x)
    for _ in range(max_iter):
        rx = r(x)
        if np.linalg.norm(rx) <= tol:
            return x, float(np.linalg.norm(rx))
        J = np.empty((len(rx), k))
        for i in range(k):
            xp = x.copy()
            xp[i] += fd_step
            J[:, i] = (r(xp) - rx) / fd_step
        step, *_ = np.linalg.lstsq(J, -rx, rcond=None)
        if not np.all(np.isfinite(step)):
            break
        norm = np.linalg.norm(step)
        if norm > 2.0:  # keep iterates near their seed on unbounded varieties
            step *= 2.0 / norm
        x = x + damping * step
    rx = r(x)
    return x, float(np.linalg.norm(rx))


def solve_numeric(n: int, eps: float, count: int = 8, seed: int = 0,
                  n_seeds: int = 64, tol: float = TOL_SOL) -> list[tuple[float, ...]]:
    """Parameter tuples with Einstein defect <= tol, found by damped
    Gauss-Newton from scattered random seeds.

    Raises RuntimeError if the classification predicts solutions but none
    survive the seed budget.
    """
    kind = classify(n, eps)
    if n == 1:
        if kind is VarietyClass.EMPTY:
            return []
        # the whole s-line solves the condition at eps = -1
        out = [(float(s),) for s in np.linspace(-2.0, 2.0, count)]
        for (s,) in out:
            if einstein_defect_at(1, eps, (s,)) > tol:
                raise RuntimeError("line solution fails the defect check")
        return out

    k = param_count(n)
    r = _defect_residual(n, eps)
    rng = np.random.default_rng(seed)
    found = []
    for _ in range(n_seeds):
        x0 = rng.uniform(-4.0, 4.0, size=k)
        # converge well below tol so the 10-digit rounding stays within it
        x, resid = _gauss_newton(r, x0, 0.05 * tol)
        cand = tuple(round(float(v), 10) for v in x)
        if resid <= tol and np.linalg.norm(r(np.array(cand))) <= tol:
            found.append(cand)
    # deduplicate nearby solutions
    unique: list[tuple[float, ...]] = []
    for x in sorted(found):
        if all(max(abs(a - b) for a, b in zip(x, y)) > 1e-6 for y in unique):
            unique.append(x)
    if not unique and kind is not VarietyClass.EMPTY:
        raise RuntimeError(
            f"classification predicts {kind.value} but no numeric solution found"
        )
    return unique[:count]


@dataclass(frozen=True)
class EinsteinVariety:
    """Classification outcome for one (n, eps), with confirmed samples."""

    n: int
    eps: float
    kind: VarietyClass
    equation: CanonicalEquation
    sample_points: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        for x in self.sample_points:
            if self.equation.residual(x) > 10 * TOL_SOL:
                raise ValueError(f"sample {x} violates the canonical equation")


def variety(n: int, eps: float, count: int = 4, seed: int = 0) -> EinsteinVariety:
    eq = einstein_equation(n, eps)
    kind = classify(n, eps)
    samples = () if kind is VarietyClass.EMPTY else tuple(
        solve_numeric(n, eps, count=count, seed=seed)
    )
    return EinsteinVariety(n, eps, kind, eq, samples)


def scalar_curvature_formula(n: int, eps: float, params) -> float:
    """Closed-form scalar curvature of an Einstein solution.

    2n(2n+1) eps (s^2 - 1) for n != 2 and 20 eps (s^2+s3^2+s4^2-1) for
    n = 2; valid on the solution variety.
    """
    params = np.atleast_1d(np.asarray(params, dtype=float))
    if n == 2:
        return 20.0 * eps * (float(np.sum(params**2)) - 1.0)
    return 2 * n * (2 * n + 1) * eps * (params[0] ** 2 - 1.0)


@dataclass(frozen=True)
class RicciFlatLocus:
    """Ricci-flat Einstein solutions: locus description plus verified samples."""

    n: int
    description: str
    samples: tuple[tuple[float, tuple[float, ...]], ...]  # (eps, params)
    ricci_norms: tuple[float, ...]


def ricci_flat_locus(n: int, tol: float = TOL_SOL) -> RicciFlatLocus:
    """The Ricci-flat Einstein-with-skew-torsion connections for each n.

    Emitted samples have vanishing full Ricci tensor.  For n = 2 the locus
    is the unit sphere in (s, s3, s4) at eps = -3/2; only the poles
    (s, s3, s4) = (+-1, 0, 0) have fully zero Ricci (elsewhere an
    antisymmetric Ricci part of size 6*sqrt(s3^2+s4^2) remains while the
    symmetric part and the scalar vanish), so the samples are the poles.
    """
    if n == 1:
        desc = "eps = -1, s = +-1"
        samples = [(-1.0, (1.0,)), (-1.0, (-1.0,))]
    elif n == 2:
        desc = "eps = -3/2, s^2 + s3^2 + s4^2 = 1"
        samples = [(-1.5, (1.0, 0.0, 0.0)), (-1.5, (-1.0, 0.0, 0.0))]
    elif n == 3:
        desc = "any eps >= -2 (eps != 0), s = +-1, s1^2 + s2^2 = eps + 2"
        samples = []
        for eps in (-2.0, -1.0, -0.5, 1.0, 2.0):
            r = np.sqrt(eps + 2.0)
            samples.append((eps, (1.0, r, 0.0)))
            samples.append((eps, (-1.0, 0.0, r)))
    else:
        eps = -(n + 1.0) / 2.0
        desc = f"eps = -(n+1)/2 = {eps}, s = +-1"
        samples = [(eps, (1.0,)), (eps, (-1.0,))]

    norms = []
    for eps, params in samples:
        alpha = _family_member(n, eps, params)
        Ric = nomizu.ricci(nomizu.curvature(alpha), Metric(n, eps))
        norm = float(np.linalg.norm(Ric.coeffs))
        if norm > tol:
            raise RuntimeError(f"sample {(eps, params)} is not Ricci-flat: {norm:.2e}")
        norms.append(norm)
    return RicciFlatLocus(n, desc, tuple(samples), tuple(norms))


@dataclass(frozen=True)
class FlatnessReport:
    """Existence (or exclusion margin) of flat skew-torsion connections."""

    n: int
    eps: float
    flat_exists: bool
    flat_samples: tuple[tuple[float, ...], ...]
    max_norm_on_flat_set: float
    min_norm_on_grid: float


def flat_connection_check(n: int, eps: float, tol: float = TOL_SOL) -> FlatnessReport:
    """Search for flat connections in the skew-torsion family.

    Only n = 3 with the round metric admits them: the circle s = 1,
    s1^2 + s2^2 = 1.  Otherwise the minimum curvature norm over a parameter
    grid is reported as an exclusion margin.
    """
    if n not in (3, 4, 5, 6):
        raise ValueError("supported for n in {3, 4, 5, 6}")

    def curv_norm(params):
        alpha = _family_member(n, eps, params)
        return float(np.linalg.norm(nomizu.curvature(alpha).coeffs))

    if n == 3 and eps == -1.0:
        angles = np.linspace(0.0, 2 * np.pi, 17)
        circle = tuple((1.0, float(np.cos(t)), float(np.sin(t))) for t in angles)
        worst = max(curv_norm(x) for x in circle)
        if worst > tol:
            raise RuntimeError(f"flat circle fails: max |R| = {worst:.2e}")
        return FlatnessReport(n, eps, True, circle, worst, 0.0)

    if n == 3:
        grid = [
            (float(s), float(s1), float(s2))
            for s in np.linspace(-3, 3, 13)
            for s1 in np.linspace(-3, 3, 9)
            for s2 in np.linspace(-3, 3, 9)
        ]
    else:
        grid = [(float(s),) for s in np.linspace(-3, 3, 121)]
    lowest = min(curv_norm(x) for x in grid)
    if lowest <= 1e-3:
        raise RuntimeError(f"unexpected near-flat point: min |R| = {lowest:.2e}")
    return FlatnessReport(n, eps, False, (), float("nan"), lowest)


def min_defect_n1(eps: float, lo: float = -10.0, hi: float = 10.0) -> float:
    """Minimum Einstein defect over s in [lo, hi] for n = 1, grid + refinement."""
    s_grid = np.linspace(lo, hi, 201)
    vals = [einstein_defect_at(1, eps, (s,)) for s in s_grid]
    best = int(np.argmin(vals))
    a = s_grid[max(best - 1, 0)]
    b = s_grid[min(best + 1, len(s_grid) - 1)]
    for _ in range(6):
        s_grid = np.linspace(a, b, 41)
        vals = [einstein_defect_at(1, eps, (s,)) for s in s_grid]
        best = int(np.argmin(vals))
        a = s_grid[max(best - 1, 0)]
        b = s_grid[min(best + 1, len(s_grid) - 1)]
    return float(vals[best])
