"""Theoretical modularity bounds for random regular, forest, PA and SPA graphs.

Natural logarithms throughout; ``0 * log 0`` is taken as 0. Bounds that carry
an arbitrarily small ``epsilon`` in their statement are reported at
``epsilon = 0``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

LN2 = math.log(2.0)
GRID_STEP = 1e-4
SCAN_STEPS = 1000
TOP_OFFSET = 1e-6


class BoundDomainError(ValueError):
    pass


class RootBracketError(RuntimeError):
    pass


def _xlogx(a):
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(a == 0.0, 0.0, a * np.log(np.where(a > 0, a, np.nan)))


def _f(x, y, d):
    """Vectorised ``f`` without domain checks; NaN outside the domain."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        logx = np.log(x)
        log1x = np.log1p(-x)
    rest = d - 2.0 * x * d + x * y
    return (x * (y / 2.0 - 1.0) * logx
            + (1.0 - x) * (d - 1.0) * log1x
            + d * math.log(d) / 2.0
            - x * _xlogx(y) / 2.0
            - x * _xlogx(d - y)
            - _xlogx(rest) / 2.0)


def f_reg(x: float, y: float, d: int) -> float:
    """Exponential growth rate of the expected number of sets of size ``xn``
    inducing ``yxn/2`` edges in a random d-regular pairing.

    ``y = d`` is allowed and returns the limit value.
    """
    if not 0.0 < x < 1.0:
        raise BoundDomainError("x must lie in (0, 1)")
    if not 0.0 < y <= d:
        raise BoundDomainError("y must lie in (0, d]")
    if d < 3:
        raise BoundDomainError("d must be >= 3")
    if d - 2 * x * d + x * y < 0:
        raise BoundDomainError("d - 2xd + xy must be non-negative")
    return float(_f(x, y, d))


def _bisect_rows(x, lo, hi, d, tol):
    # invariant: f(lo) >= 0 > f(hi)
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        pos = _f(x, mid, d) >= 0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
    return 0.5 * (lo + hi)


def y_bar_many(x, d: int, tol: float = 1e-10, block: int = 50) -> np.ndarray:
    """Largest root in ``y`` of ``f(x, y, d)`` for each entry of ``x``.

    Scans ``y`` downward from ``d (1 - 1e-6)`` in steps of ``d / 1000`` until the
    sign first turns non-negative, then bisects that bracket.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any((x <= 0) | (x >= 1)):
        raise BoundDomainError("x must lie in (0, 1)")
    if d < 3:
        raise BoundDomainError("d must be >= 3")
    top = d * (1.0 - TOP_OFFSET)
    ys = top - (d / SCAN_STEPS) * np.arange(SCAN_STEPS)
    ys = ys[ys > 0]
    lo = np.full(x.size, np.nan)
    hi = np.full(x.size, np.nan)
    todo = np.arange(x.size)
    if np.any(_f(x, top, d) >= 0):
        raise RootBracketError("f is not negative just below y = d")
    for start in range(0, ys.size, block):
        if todo.size == 0:
            break
        cols = ys[start:start + block + 1] if start == 0 else ys[start - 1:start + block]
        vals = _f(x[todo, None], cols[None, :], d)
        nonneg = vals >= 0
        found = nonneg.any(axis=1)
        first = np.argmax(nonneg, axis=1)
        rows = todo[found]
        lo[rows] = cols[first[found]]
        hi[rows] = cols[first[found] - 1]
        todo = todo[~found]
    if todo.size:
        # near x = 1 the positive window around y = xd is narrower than one
        # scan step; f(x, xd, d) > 0 always, so it closes the bracket
        xd = x[todo] * d
        above = ys[None, :] > xd[:, None]
        if not np.all(above.any(axis=1)):
            raise RootBracketError(f"no sign change of f for x = {x[todo[0]]!r}, d = {d}")
        lo[todo] = xd
        hi[todo] = np.where(above, ys[None, :], np.inf).min(axis=1)
        if np.any(_f(x[todo], xd, d) < 0):
            raise RootBracketError(f"f(x, xd, d) < 0 for d = {d}")
    return _bisect_rows(x, lo, hi, d, tol)


def y_bar(x: float, d: int, tol: float = 1e-10) -> float:
    return float(y_bar_many([x], d, tol)[0])


def golden_section_max(func, a: float, b: float, tol: float = 1e-6, max_iter: int = 200):
    """Maximise a unimodal ``func`` on ``[a, b]``; returns ``(x, func(x))``."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    e = a + invphi * (b - a)
    fc, fe = func(c), func(e)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fe:
            b, e, fe = e, c, fc
            c = b - invphi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, e, fe
            e = a + invphi * (b - a)
            fe = func(e)
    x = c if fc >= fe else e
    return x, max(fc, fe)


def u3_argmax(d: int, tol: float = 1e-6) -> tuple[float, float]:
    """``(x_hat, U3)``: the maximiser and value of ``y_bar(x, d)/d - x``."""
    if d < 3:
        raise BoundDomainError("d must be >= 3")
    xs = np.arange(1, int(round(1 / GRID_STEP))) * GRID_STEP
    vals = y_bar_many(xs, d, tol=1e-9) / d - xs
    i = int(np.argmax(vals))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, xs.size - 1)]
    x_hat, best = golden_section_max(lambda x: y_bar(x, d, 1e-12) / d - x, a, b, tol)
    if best < vals[i]:
        return float(xs[i]), float(vals[i])
    return float(x_hat), float(best)


def u3(d: int, tol: float = 1e-6) -> float:
    """``sup_x (y_bar(x, d)/d - x)``: upper bound on q* of random d-regular graphs."""
    return u3_argmax(d, tol)[1]


def u4(d: int, k_max: int = 200) -> tuple[float, int]:
    """Best value of ``y_bar(1/k, d)/d - 1/k`` over ``k = 2..k_max`` and its ``k``."""
    if k_max < 2:
        raise BoundDomainError("k_max must be >= 2")
    ks = np.arange(2, k_max + 1)
    vals = y_bar_many(1.0 / ks, d, tol=1e-12) / d - 1.0 / ks
    i = int(np.argmax(vals))
    return float(vals[i]), int(ks[i])


def _eta_lhs(e):
    return (1 - e) * math.log1p(-e) + (1 + e) * math.log1p(e) if e < 1 else 2 * LN2


def eta(d: int, tol: float = 1e-13) -> float:
    """Root in ``(0, 1)`` of ``(1-e)ln(1-e) + (1+e)ln(1+e) = (4/d) ln 2``."""
    if d < 3:
        raise BoundDomainError("d must be >= 3")
    target = 4.0 * LN2 / d
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _eta_lhs(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def u1(d: int) -> float:
    return max(0.5 + eta(d) / 2.0, 0.75)


def u2(d: int) -> float:
    """Bound for partitions with bounded part sizes (epsilon taken to 0)."""
    return eta(d)


def spectral_upper(lambda_: float, d: int) -> float:
    if lambda_ < 0:
        raise BoundDomainError("lambda must be non-negative")
    return lambda_ / d


def friedman_upper(d: int) -> float:
    """``2 / sqrt(d)``, clipped at 1 since modularity never reaches 1 anyway."""
    return min(1.0, 2.0 / math.sqrt(d))


def trivial_upper(rho: float, d: int) -> float:
    if rho < 0:
        raise BoundDomainError("rho must be non-negative")
    return max(1.0 - rho / d, 0.75)


def restricted_upper(rho: float, d: int) -> float:
    if rho < 0:
        raise BoundDomainError("rho must be non-negative")
    return 1.0 - 2.0 * rho / d


def pa_lower_l1(m: int) -> float:
    if m < 1:
        raise BoundDomainError("m must be >= 1")
    return 1.0 / m


def binomial_mean_abs_deviation(m: int) -> Fraction:
    """``E|Bin(m, 1/2) - m/2|`` as an exact fraction."""
    if m % 2 == 0:
        s = sum(i * math.comb(m, m // 2 + i) for i in range(1, m // 2 + 1))
        return Fraction(2 * s, 2 ** m)
    s = sum(Fraction(2 * i - 1, 2) * math.comb(m, (m - 1) // 2 + i)
            for i in range(1, (m + 1) // 2 + 1))
    return 2 * s / 2 ** m


def pa_lower_l2(m: int) -> float:
    """Majority-colouring lower bound ``E|Bin(m, 1/2) - m/2| / m``."""
    if m < 1:
        raise BoundDomainError("m must be >= 1")
    return float(binomial_mean_abs_deviation(m) / m)


def mihail_expansion_lower(m: int) -> float:
    return m / 2.0 - 0.75


def pa_upper(m: int) -> float:
    """``max(15/16, 3/4 + 3/(8m))``: the degree-tax branch against the expansion branch."""
    if m < 2:
        raise BoundDomainError("the PA upper bound needs m >= 2")
    return max(15.0 / 16.0, 0.75 + 3.0 / (8.0 * m))


def forest_lower(n: int, delta: float) -> float:
    return 1.0 - 3.0 * math.sqrt(delta / n)


def avg_degree_lower(n: int, delta: float, dbar: float) -> float:
    return 2.0 / dbar - 3.0 * math.sqrt(delta / (n * dbar)) - delta / (n * dbar)


def spa_rate_exponent(dim: int, pA1: float) -> float:
    return max(-1.0 / dim, -1.0 + pA1) / 2.0


def spa_rate(n: float, dim: int, pA1: float) -> float:
    """Unnormalised ``n^{max(-1/dim, pA1-1)/2} (ln n)^{9/2}`` from the strip argument."""
    if pA1 >= 1:
        raise BoundDomainError("need p * A1 < 1")
    return n ** spa_rate_exponent(dim, pA1) * math.log(n) ** 4.5


@dataclass
class BoundTable:
    parameter: int
    kind: str  # "d" (regular degree) or "m" (PA edges per vertex)
    values: dict[str, float] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)


def regular_bounds(d: int, tol: float = 1e-6) -> BoundTable:
    return BoundTable(d, "d", {
        "U1": u1(d),
        "U2": u2(d),
        "U3": u3(d, tol),
        "spectral_friedman": friedman_upper(d),
        "lower_2_over_d": 2.0 / d,
    }, {"U3": tol})


def pa_bounds(m: int) -> BoundTable:
    values = {"L1": pa_lower_l1(m), "L2": pa_lower_l2(m)}
    if m >= 2:
        values["upper"] = pa_upper(m)
        values["mihail_rho"] = mihail_expansion_lower(m)
    return BoundTable(m, "m", values)


def bound_table(d_range=range(3, 11), m_range=(7, 8, 9, 10, 100, 1000),
                tol: float = 1e-6) -> list[BoundTable]:
    return [regular_bounds(d, tol) for d in d_range] + [pa_bounds(m) for m in m_range]


def write_bounds_csv(tables, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["param", "name", "value"])
        for t in tables:
            for name, value in t.values.items():
                w.writerow([f"{t.kind}={t.parameter}", name, f"{value:.6f}"])


def format_tables(tables) -> str:
    """Plain-text rendering in the two-table layout (regular rows, then PA rows)."""
    lines = []
    reg = [t for t in tables if t.kind == "d"]
    pa = [t for t in tables if t.kind == "m"]
    if reg:
        lines.append(f"{'d':>4} {'U1':>8} {'U2':>8} {'U3':>8}")
        for t in reg:
            v = t.values
            lines.append(f"{t.parameter:>4} {v['U1']:8.4f} {v['U2']:8.4f} {v['U3']:8.4f}")
    if pa:
        if lines:
            lines.append("")
        lines.append(f"{'m':>5} {'L1':>8} {'L2':>8}")
        for t in pa:
            lines.append(f"{t.parameter:>5} {t.values['L1']:8.4f} {t.values['L2']:8.4f}")
    return "\n".join(lines)
