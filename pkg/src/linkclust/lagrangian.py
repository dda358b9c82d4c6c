"""Simplex optimization layer for patterns.

Computes the maximum of a pattern's weight polynomial over the probability
simplex, the maximin of its partial derivatives, and the derived minimality
and rigidity certificates.  The optimizer is a multistart projected-gradient
ascent with all restarts batched as rows of a numpy array; the maximin
objective is smoothed by a soft minimum with annealed sharpness and then
polished by Newton steps on the active-set equality system.

Complete graphs and single-transversal-edge patterns bypass the numerics
entirely through exact rational closed forms, so the deciders built on them
are float-free.  Everything else is certified only numerically and the
reports say so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .errors import InvalidInput, NumericFailure
from .patterns import (
    Pattern,
    SimplexPoint,
    lagrange_eval,
    lagrange_grad,
    twin_pairs,
)

__all__ = [
    "OptConfig",
    "OptReport",
    "MinimalityReport",
    "RigidityReport",
    "lagrangian",
    "phi",
    "is_minimal",
    "rigidity_report",
]

_NUMERICAL_NOTE = "numerical estimate, not a proof"


@dataclass(frozen=True)
class OptConfig:
    """Knobs for the simplex optimizer.

    ``restarts`` counts independent starting points (the uniform point plus
    Dirichlet samples); ``strict_gap`` separates true Lagrangian drops from
    float noise in the minimality test; ``pos_gap`` is the positivity margin
    required of the smallest witness coordinate for rigidity.
    """

    restarts: int = 64
    max_iter: int = 10_000
    step_init: float = 0.25
    grad_tol: float = 1e-10
    tol: float = 1e-6
    strict_gap: float = 1e-7
    pos_gap: float = 1e-6
    witness_tol: float = 1e-6
    value_window: float = 1e-9
    softmin_betas: tuple[float, ...] = (16.0, 128.0, 1024.0, 8192.0)
    seed: int = 1729
    closed_forms: bool = True


@dataclass(frozen=True)
class OptReport:
    """Result of one simplex optimization run."""

    value: float
    argmax: SimplexPoint
    restarts_used: int
    converged: bool
    witness_set: tuple[SimplexPoint, ...]
    value_exact: Optional[Fraction] = None


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    margin: float
    gaps: tuple[float, ...]

    def __bool__(self) -> bool:
        return self.minimal


@dataclass(frozen=True)
class RigidityReport:
    """Numerical rigidity classification of a pattern.

    ``maximin`` is the best guaranteed level of all partials, ``smallest_
    coordinate`` the least coordinate seen across the sampled optimal set.
    ``certificate`` describes the obstruction when ``rigid`` is false.
    """

    maximin: float
    smallest_coordinate: float
    rigid: bool
    certificate: Optional[dict]
    witness_set: tuple[SimplexPoint, ...]
    maximin_exact: Optional[Fraction] = None
    smallest_exact: Optional[Fraction] = None
    note: str = field(default=_NUMERICAL_NOTE)


# -- batched polynomial evaluation ------------------------------------------


class _Calc:
    """Vectorized value/gradient/Hessian of a pattern's weight polynomial."""

    def __init__(self, pattern: Pattern):
        self.dim = pattern.num_vertices
        M = pattern.multiplicity_matrix().astype(np.float64)
        coeffs = pattern.monomial_coeffs()
        self._M = M
        self._c = coeffs
        g_rows, g_cols, g_coef = [], [], []
        h_rows, h_idx, h_coef = [], [], []
        for e in range(M.shape[0]):
            for k in range(self.dim):
                if M[e, k] >= 1:
                    row = M[e].copy()
                    row[k] -= 1
                    g_rows.append(row)
                    g_cols.append(k)
                    g_coef.append(coeffs[e] * M[e, k])
                    for k2 in range(self.dim):
                        if row[k2] >= 1:
                            row2 = row.copy()
                            row2[k2] -= 1
                            h_rows.append(row2)
                            h_idx.append((k, k2))
                            h_coef.append(coeffs[e] * M[e, k] * row[k2])
        self._g_rows = np.array(g_rows, dtype=np.float64).reshape(-1, self.dim)
        self._g_cols = np.array(g_cols, dtype=np.int64)
        self._g_coef = np.array(g_coef, dtype=np.float64)
        self._h_rows = np.array(h_rows, dtype=np.float64).reshape(-1, self.dim)
        self._h_idx = np.array(h_idx, dtype=np.int64).reshape(-1, 2)
        self._h_coef = np.array(h_coef, dtype=np.float64)

    def value(self, X: np.ndarray) -> np.ndarray:
        if self._M.shape[0] == 0:
            return np.zeros(X.shape[0])
        mono = np.prod(X[:, None, :] ** self._M[None, :, :], axis=2)
        return mono @ self._c

    def grad(self, X: np.ndarray) -> np.ndarray:
        out = np.zeros((X.shape[0], self.dim))
        if self._g_rows.shape[0] == 0:
            return out
        terms = np.prod(X[:, None, :] ** self._g_rows[None, :, :], axis=2)
        terms *= self._g_coef[None, :]
        for k in range(self.dim):
            sel = self._g_cols == k
            if np.any(sel):
                out[:, k] = terms[:, sel].sum(axis=1)
        return out

    def hess(self, X: np.ndarray) -> np.ndarray:
        out = np.zeros((X.shape[0], self.dim, self.dim))
        if self._h_rows.shape[0] == 0:
            return out
        terms = np.prod(X[:, None, :] ** self._h_rows[None, :, :], axis=2)
        terms *= self._h_coef[None, :]
        for t in range(self._h_idx.shape[0]):
            k, k2 = self._h_idx[t]
            out[:, k, k2] += terms[:, t]
        return out


def _project_rows(Y: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the probability simplex."""
    R, dim = Y.shape
    U = np.sort(Y, axis=1)[:, ::-1]
    css = np.cumsum(U, axis=1) - 1.0
    ks = np.arange(1, dim + 1, dtype=np.float64)
    positive = U - css / ks > 0
    rho = dim - 1 - np.argmax(positive[:, ::-1], axis=1)
    theta = css[np.arange(R), rho] / (rho + 1.0)
    return np.maximum(Y - theta[:, None], 0.0)


def _starts(dim: int, restarts: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed))
    X = np.empty((max(restarts, 1), dim))
    X[0] = 1.0 / dim
    if restarts > 1:
        X[1:] = rng.dirichlet(np.ones(dim), size=restarts - 1)
    return X


def _ascend(
    value_fn: Callable[[np.ndarray], np.ndarray],
    grad_fn: Callable[[np.ndarray], np.ndarray],
    X: np.ndarray,
    max_iter: int,
    step_init: float,
    grad_tol: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Projected-gradient ascent on all rows of X; returns (X, converged)."""
    R = X.shape[0]
    step = np.full(R, step_init)
    f = value_fn(X)
    converged = np.zeros(R, dtype=bool)
    for _ in range(max_iter):
        G = grad_fn(X)
        Y = _project_rows(X + step[:, None] * G)
        fY = value_fn(Y)
        disp = np.max(np.abs(Y - X), axis=1)
        converged |= disp <= grad_tol * np.maximum(step, 1e-300)
        better = fY > f
        X = np.where(better[:, None], Y, X)
        f = np.where(better, fY, f)
        step = np.where(better, np.minimum(step * 1.25, 4.0), step * 0.5)
        converged |= step < 1e-13
        if converged.all():
            break
    return X, converged


# -- Newton polish -----------------------------------------------------------


def _feasible(x: np.ndarray) -> Optional[np.ndarray]:
    if np.min(x) < -1e-9:
        return None
    x = np.maximum(x, 0.0)
    s = x.sum()
    if s <= 0 or abs(s - 1.0) > 1e-6:
        return None
    return x / s


def _polish_face_max(calc: _Calc, x: np.ndarray) -> Optional[np.ndarray]:
    """Newton on the first-order system of a maximum restricted to a face:
    all support partials equal, support coordinates summing to one."""
    x = x.copy()
    for _ in range(3):
        support = np.nonzero(x > 1e-9)[0]
        s = len(support)
        if s == 0:
            return None
        y = x[support]
        ok = False
        for _ in range(40):
            full = np.zeros_like(x)
            full[support] = y
            g = calc.grad(full[None, :])[0][support]
            H = calc.hess(full[None, :])[0][np.ix_(support, support)]
            z = g.mean()
            F = np.concatenate([g - z, [y.sum() - 1.0]])
            if np.max(np.abs(F)) < 1e-13:
                ok = True
                break
            J = np.zeros((s + 1, s + 1))
            J[:s, :s] = H
            J[:s, s] = -1.0
            J[s, :s] = 1.0
            try:
                delta = np.linalg.solve(J, -F)
            except np.linalg.LinAlgError:
                delta, *_ = np.linalg.lstsq(J, -F, rcond=None)
            if not np.all(np.isfinite(delta)) or np.max(np.abs(delta)) > 10.0:
                break
            y = y + delta[:s]
            if np.min(y) < -1e-6:
                break
        full = np.zeros_like(x)
        full[support] = y
        if ok:
            return _feasible(full)
        nxt = _feasible(full)
        if nxt is None or np.array_equal(nxt > 1e-9, x > 1e-9):
            return None
        x = nxt
    return None


def _polish_maximin(calc: _Calc, x: np.ndarray) -> Optional[np.ndarray]:
    """Newton on the maximin first-order system: the active partials all
    equal a common level, support coordinates summing to one."""
    g0 = calc.grad(x[None, :])[0]
    lo = g0.min()
    best = None
    for active_tol in (1e-8, 1e-4):
        active = np.nonzero(g0 <= lo + active_tol)[0]
        support = np.nonzero(x > 1e-9)[0]
        a, s = len(active), len(support)
        if s == 0 or a == 0:
            continue
        y = x[support].copy()
        for _ in range(40):
            full = np.zeros_like(x)
            full[support] = y
            g = calc.grad(full[None, :])[0]
            H = calc.hess(full[None, :])[0]
            z = g[active].mean()
            F = np.concatenate([g[active] - z, [y.sum() - 1.0]])
            if np.max(np.abs(F)) < 1e-13:
                break
            J = np.zeros((a + 1, s + 1))
            J[:a, :s] = H[np.ix_(active, support)]
            J[:a, s] = -1.0
            J[a, :s] = 1.0
            try:
                if a == s:
                    delta = np.linalg.solve(J, -F)
                else:
                    delta, *_ = np.linalg.lstsq(J, -F, rcond=None)
            except np.linalg.LinAlgError:
                delta, *_ = np.linalg.lstsq(J, -F, rcond=None)
            if not np.all(np.isfinite(delta)) or np.max(np.abs(delta)) > 10.0:
                break
            y = y + delta[:s]
            if np.min(y) < -1e-6:
                break
        full = np.zeros_like(x)
        full[support] = y
        cand = _feasible(full)
        if cand is not None:
            val = calc.grad(cand[None, :])[0].min()
            if best is None or val > best[0]:
                best = (val, cand)
    return None if best is None else best[1]


# -- candidate selection -------------------------------------------------------


def _select(
    candidates: list[np.ndarray],
    score: Callable[[np.ndarray], float],
    witness_tol: float,
    value_window: float,
) -> tuple[float, tuple[float, ...], list[tuple[float, ...]]]:
    scored = sorted(
        ((score(c), tuple(float(v) for v in c)) for c in candidates),
        key=lambda t: (-t[0], t[1]),
    )
    best_val, best_arg = scored[0]
    witnesses: list[tuple[float, ...]] = []
    for val, arg in scored:
        if val < best_val - value_window:
            break
        if all(
            max(abs(a - b) for a, b in zip(arg, w)) > witness_tol for w in witnesses
        ):
            witnesses.append(arg)
    return best_val, best_arg, witnesses


def _closed_lagrangian(pattern: Pattern) -> Optional[Fraction]:
    if pattern.is_complete_graph():
        l = pattern.num_vertices
        return Fraction(l - 1, 2 * l)
    if pattern.is_single_transversal_edge():
        return Fraction(1, pattern.r**pattern.r)
    return None


def _closed_maximin(pattern: Pattern) -> Optional[tuple[Fraction, Fraction]]:
    """(maximin level, smallest optimal coordinate) when known exactly."""
    if pattern.is_complete_graph():
        l = pattern.num_vertices
        return Fraction(l - 1, l), Fraction(1, l)
    if pattern.is_single_transversal_edge():
        r = pattern.r
        return Fraction(1, r ** (r - 1)), Fraction(1, r)
    return None


def _exact_report(pattern: Pattern, exact: Fraction) -> OptReport:
    u = SimplexPoint.uniform(pattern.num_vertices)
    return OptReport(
        value=float(exact),
        argmax=u,
        restarts_used=0,
        converged=True,
        witness_set=(u,),
        value_exact=exact,
    )


@lru_cache(maxsize=512)
def _lagrangian_cached(pattern: Pattern, cfg: OptConfig) -> OptReport:
    if not pattern.edges:
        u = SimplexPoint.uniform(pattern.num_vertices)
        return OptReport(0.0, u, 0, True, (u,), Fraction(0))
    if cfg.closed_forms:
        exact = _closed_lagrangian(pattern)
        if exact is not None:
            return _exact_report(pattern, exact)

    calc = _Calc(pattern)
    X = _starts(pattern.num_vertices, cfg.restarts, cfg.seed)
    X, conv = _ascend(
        calc.value, calc.grad, X, cfg.max_iter, cfg.step_init, cfg.grad_tol
    )
    candidates = [X[i] for i in range(X.shape[0])]
    polished_any = False
    extra = []
    for c in candidates:
        p = _polish_face_max(calc, c)
        if p is not None:
            extra.append(p)
            polished_any = True
    candidates.extend(extra)

    def score(c: np.ndarray) -> float:
        return lagrange_eval(pattern, c)

    best_val, best_arg, witnesses = _select(
        candidates, score, cfg.witness_tol, cfg.value_window
    )
    if not (bool(conv.any()) or polished_any):
        raise NumericFailure("simplex ascent did not converge", best_val)
    return OptReport(
        value=best_val,
        argmax=SimplexPoint.normalized(best_arg),
        restarts_used=X.shape[0],
        converged=True,
        witness_set=tuple(SimplexPoint.normalized(w) for w in witnesses),
        value_exact=None,
    )


def lagrangian(pattern: Pattern, cfg: OptConfig = OptConfig()) -> OptReport:
    """Maximum of the pattern's weight polynomial over the simplex.

    Returns the best value across all restarts, with ties broken toward the
    lexicographically smallest maximizer.  ``value_exact`` is set when a
    rational closed form applies.
    """
    return _lagrangian_cached(pattern, cfg)


@lru_cache(maxsize=512)
def _phi_cached(pattern: Pattern, cfg: OptConfig) -> OptReport:
    dim = pattern.num_vertices
    if not pattern.edges:
        u = SimplexPoint.uniform(dim)
        return OptReport(0.0, u, 0, True, (u,), Fraction(0))
    if cfg.closed_forms:
        closed = _closed_maximin(pattern)
        if closed is not None:
            return _exact_report(pattern, closed[0])

    calc = _Calc(pattern)
    X = _starts(dim, cfg.restarts, cfg.seed)
    per_stage = max(200, cfg.max_iter // max(len(cfg.softmin_betas), 1))
    conv = np.zeros(X.shape[0], dtype=bool)
    for beta in cfg.softmin_betas:

        def value_fn(Z: np.ndarray, b: float = beta) -> np.ndarray:
            g = calc.grad(Z)
            m = g.min(axis=1)
            return m - np.log(np.exp(-b * (g - m[:, None])).sum(axis=1)) / b

        def grad_fn(Z: np.ndarray, b: float = beta) -> np.ndarray:
            g = calc.grad(Z)
            w = np.exp(-b * (g - g.min(axis=1, keepdims=True)))
            w /= w.sum(axis=1, keepdims=True)
            return np.einsum("rk,rkj->rj", w, calc.hess(Z))

        X, conv = _ascend(
            value_fn, grad_fn, X, per_stage, cfg.step_init, cfg.grad_tol
        )

    candidates = [X[i] for i in range(X.shape[0])]
    polished_any = False
    extra = []
    for c in candidates:
        p = _polish_maximin(calc, c)
        if p is not None:
            extra.append(p)
            polished_any = True
    candidates.extend(extra)

    def score(c: np.ndarray) -> float:
        return min(lagrange_grad(pattern, c))

    best_val, best_arg, witnesses = _select(
        candidates, score, cfg.witness_tol, cfg.value_window
    )
    if not (bool(conv.any()) or polished_any):
        raise NumericFailure("maximin ascent did not converge", best_val)
    return OptReport(
        value=best_val,
        argmax=SimplexPoint.normalized(best_arg),
        restarts_used=X.shape[0],
        converged=True,
        witness_set=tuple(SimplexPoint.normalized(w) for w in witnesses),
        value_exact=None,
    )


def phi(pattern: Pattern, cfg: OptConfig = OptConfig()) -> OptReport:
    """Maximin of the weight polynomial's partials over the simplex.

    The witness set collects the distinct near-optimal points found across
    restarts; it samples the optimal set of the maximin problem.
    """
    return _phi_cached(pattern, cfg)


def is_minimal(pattern: Pattern, cfg: OptConfig = OptConfig()) -> MinimalityReport:
    """Whether deleting any vertex strictly drops the simplex maximum.

    The drop must exceed ``cfg.strict_gap`` for every vertex; the report
    carries the smallest drop seen.
    """
    if pattern.num_vertices < 2:
        raise InvalidInput("minimality needs at least 2 vertices")
    whole = lagrangian(pattern, cfg)
    gaps = []
    for i in range(pattern.num_vertices):
        sub = lagrangian(pattern.vertex_deleted(i), cfg)
        if whole.value_exact is not None and sub.value_exact is not None:
            gaps.append(float(whole.value_exact - sub.value_exact))
        else:
            gaps.append(whole.value - sub.value)
    margin = min(gaps)
    return MinimalityReport(minimal=margin > cfg.strict_gap, margin=margin, gaps=tuple(gaps))


def _slide_to_twin(w: SimplexPoint, i: int, j: int) -> SimplexPoint:
    coords = list(w.coords)
    coords[j] += coords[i]
    coords[i] = 0.0
    return SimplexPoint.normalized(coords)


def rigidity_report(pattern: Pattern, cfg: OptConfig = OptConfig()) -> RigidityReport:
    """Numerical rigidity classification.

    Rigid means: the sampled optimal set of the maximin problem stays away
    from the simplex boundary (smallest coordinate above ``cfg.pos_gap``)
    and every sampled optimum has all partials equal to the maximin level
    within ``cfg.tol``.  Twin vertices defeat both conditions, because mass
    can be shifted freely between twins without leaving the optimal set;
    when twins exist the slid witnesses are added explicitly, which drives
    the smallest coordinate to zero.
    """
    if pattern.num_vertices < 2:
        raise InvalidInput("rigidity needs at least 2 vertices")
    rep = phi(pattern, cfg)
    witnesses = list(rep.witness_set)
    pairs = twin_pairs(pattern)
    if pairs:
        slid = []
        for i, j in pairs:
            for w in witnesses:
                slid.append(_slide_to_twin(w, i, j))
                slid.append(_slide_to_twin(w, j, i))
        witnesses.extend(slid)

    smallest = min(min(w.coords) for w in witnesses)
    worst_dev = max(
        max(abs(g - rep.value) for g in lagrange_grad(pattern, w)) for w in witnesses
    )
    equal_partials = worst_dev <= cfg.tol
    rigid = (not pairs) and smallest > cfg.pos_gap and equal_partials

    certificate: Optional[dict] = None
    if not rigid:
        if pairs:
            i, j = pairs[0]
            certificate = {
                "kind": "twins",
                "pair": (i, j),
                "witness": _slide_to_twin(witnesses[0], i, j).coords,
            }
        elif smallest <= cfg.pos_gap:
            bad = min(witnesses, key=lambda w: min(w.coords))
            certificate = {
                "kind": "boundary_witness",
                "witness": bad.coords,
                "smallest_coordinate": smallest,
            }
        else:
            bad = max(
                witnesses,
                key=lambda w: max(abs(g - rep.value) for g in lagrange_grad(pattern, w)),
            )
            certificate = {
                "kind": "unequal_partials",
                "witness": bad.coords,
                "partials": lagrange_grad(pattern, bad),
            }

    smallest_exact: Optional[Fraction] = None
    if rep.value_exact is not None and not pairs:
        closed = _closed_maximin(pattern) if cfg.closed_forms else None
        if closed is not None:
            smallest_exact = closed[1]

    return RigidityReport(
        maximin=rep.value,
        smallest_coordinate=smallest,
        rigid=rigid,
        certificate=certificate,
        witness_set=tuple(witnesses),
        maximin_exact=rep.value_exact,
        smallest_exact=smallest_exact,
    )
