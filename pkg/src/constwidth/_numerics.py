"""Batched one-dimensional searches and quadrature.

Every routine works on arrays of independent brackets at once so that the
verification grids (hundreds of bases, several basins each) cost a few dozen
vectorized curve evaluations instead of tens of thousands of scalar calls.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

T = TypeVar("T")
R = TypeVar("R")


def golden_section(
    fun: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    tol: float = 1e-12,
    maximize: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Locate an extremum of ``fun`` inside each bracket ``[lo[k], hi[k]]``.

    ``fun`` receives an array shaped like ``lo`` and must return values of the
    same shape; element ``k`` of its input always belongs to bracket ``k``.
    The number of iterations is fixed by the widest bracket, so the result is
    deterministic. Returns ``(x, f(x))`` for the best point visited.
    """
    a = np.array(lo, dtype=float, copy=True)
    b = np.array(hi, dtype=float, copy=True)
    if a.size == 0:
        return a, a.copy()
    sign = -1.0 if maximize else 1.0

    def g(x: np.ndarray) -> np.ndarray:
        return sign * np.asarray(fun(x), dtype=float)

    width = float(np.max(b - a))
    n_iter = 0 if width <= tol else int(math.ceil(math.log(tol / width) / math.log(_INV_PHI)))
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = g(c)
    fd = g(d)
    for _ in range(n_iter):
        left = fc < fd  # keep [a, d]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = b - _INV_PHI * (b - a)
        new_d = a + _INV_PHI * (b - a)
        x_new = np.where(left, new_c, new_d)
        f_new = g(x_new)
        c, d, fc, fd = (
            np.where(left, new_c, d),
            np.where(left, c, new_d),
            np.where(left, f_new, fd),
            np.where(left, fc, f_new),
        )
    mid = 0.5 * (a + b)
    fm = g(mid)
    cand_x = np.stack([mid, c, d])
    cand_f = np.stack([fm, fc, fd])
    best = np.argmin(cand_f, axis=0)
    x = np.take_along_axis(cand_x, best[None], axis=0)[0]
    fx = np.take_along_axis(cand_f, best[None], axis=0)[0]
    return x, sign * fx


def bisect(
    fun: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    tol: float = 1e-12,
) -> np.ndarray:
    """Batched bisection for roots of ``fun`` given sign-changing brackets."""
    a = np.array(lo, dtype=float, copy=True)
    b = np.array(hi, dtype=float, copy=True)
    if a.size == 0:
        return a
    fa = np.asarray(fun(a), dtype=float)
    width = float(np.max(b - a))
    n_iter = 0 if width <= tol else int(math.ceil(math.log2(width / tol)))
    for _ in range(n_iter):
        m = 0.5 * (a + b)
        fm = np.asarray(fun(m), dtype=float)
        same = np.sign(fm) == np.sign(fa)
        a = np.where(same, m, a)
        fa = np.where(same, fm, fa)
        b = np.where(same, b, m)
    return 0.5 * (a + b)


def gauss_legendre(
    fun: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float,
    nodes: int = 16,
    max_doublings: int = 20,
) -> float:
    """Composite Gauss-Legendre with panel doubling.

    Stops when two successive estimates differ by less than ``rtol`` (an
    absolute tolerance in the integrand's units). Raises ``ArithmeticError``
    if that never happens within ``max_doublings``.
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    prev = None
    panels = 1
    for _ in range(max_doublings + 1):
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mids = 0.5 * (edges[1:] + edges[:-1])
        pts = mids[:, None] + half[:, None] * x[None, :]
        vals = np.asarray(fun(pts.ravel()), dtype=float).reshape(pts.shape)
        est = float(np.sum(half * (vals @ w)))
        if prev is not None and abs(est - prev) < rtol:
            return est
        prev = est
        panels *= 2
    raise ArithmeticError(f"quadrature did not converge on [{a}, {b}]")


def thread_count() -> int:
    env = os.environ.get("CONSTWIDTH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def chunked(n: int, size: int) -> list[slice]:
    return [slice(i, min(i + size, n)) for i in range(0, n, size)]


def ordered_map(fn: Callable[[T], R], items: Sequence[T] | Iterable[T]) -> list[R]:
    """Map over ``items`` on a thread pool; results keep input order.

    Chunking is decided by the caller, never by the pool size, so outputs are
    identical for any ``CONSTWIDTH_THREADS`` value.
    """
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
