"""Exact rational linear programming by Fourier-Motzkin elimination.

Inequalities are rows (coeffs, rhs) meaning coeffs . x <= rhs, everything a
Fraction.  Scale stays at a handful of variables and tens of constraints,
where elimination with deduplication is exact, simple and fast.  Minimizers
are recovered by back-substitution; variables are assigned in index order
and take the lowest feasible value, so ties resolve to the
lexicographically smallest minimizer (free directions get 0).
"""

from __future__ import annotations

from fractions import Fraction

Row = tuple[tuple[Fraction, ...], Fraction]


class InfeasibleSystem(Exception):
    pass


def _prune(rows: list[Row]) -> list[Row]:
    # normalize scale, drop trivial rows, keep the tightest rhs per normal
    best: dict[tuple[Fraction, ...], Fraction] = {}
    for coeffs, rhs in rows:
        scale = next((abs(c) for c in coeffs if c != 0), None)
        if scale is None:
            if rhs < 0:
                raise InfeasibleSystem("0 <= negative")
            continue
        coeffs = tuple(c / scale for c in coeffs)
        rhs = rhs / scale
        if coeffs not in best or rhs < best[coeffs]:
            best[coeffs] = rhs
    return [(c, r) for c, r in best.items()]


def _eliminate(rows: list[Row], j: int) -> list[Row]:
    uppers = [r for r in rows if r[0][j] > 0]
    lowers = [r for r in rows if r[0][j] < 0]
    out = [r for r in rows if r[0][j] == 0]
    for lc, lr in lowers:
        for uc, ur in uppers:
            a, b = uc[j], -lc[j]
            coeffs = tuple(b * u + a * l for u, l in zip(uc, lc))
            out.append((coeffs, b * ur + a * lr))
    return _prune(out)


def feasible(rows: list[Row], nvars: int) -> bool:
    """Is {x : coeffs . x <= rhs for all rows} nonempty?"""
    try:
        cur = _prune(list(rows))
        for j in range(nvars - 1, -1, -1):
            cur = _eliminate(cur, j)
    except InfeasibleSystem:
        return False
    return True


def minimize_last(rows: list[Row], nvars: int):
    """Minimize the last variable; returns (value, assignment) or (None, None).

    (None, None) means unbounded below.  Raises InfeasibleSystem if the
    system is empty (callers here always build feasible systems).
    """
    snapshots: list[tuple[int, list[Row]]] = []
    cur = _prune(list(rows))
    for j in range(nvars - 2, -1, -1):
        snapshots.append((j, cur))
        cur = _eliminate(cur, j)
    t = nvars - 1
    lo = None
    for coeffs, rhs in cur:
        if coeffs[t] < 0:
            bound = rhs / coeffs[t]
            if lo is None or bound > lo:
                lo = bound
    if lo is None:
        return None, None
    assign: list[Fraction | None] = [None] * nvars
    assign[t] = lo
    for j, rows_b in reversed(snapshots):
        lo_j = hi_j = None
        for coeffs, rhs in rows_b:
            c = coeffs[j]
            if c == 0:
                continue
            rest = rhs - sum(
                coeffs[k] * assign[k]
                for k in range(nvars)
                if k != j and coeffs[k] != 0
            )
            bound = rest / c
            if c > 0:
                if hi_j is None or bound < hi_j:
                    hi_j = bound
            else:
                if lo_j is None or bound > lo_j:
                    lo_j = bound
        if lo_j is not None:
            assign[j] = lo_j
        elif hi_j is not None:
            assign[j] = hi_j
        else:
            assign[j] = Fraction(0)
    return lo, tuple(assign[:t])


def minimize_max_affine(
    slopes: list[tuple[Fraction, ...]],
    offsets: list[Fraction],
    box: Fraction | None = None,
):
    """min over xi of max_i (slopes[i] . xi + offsets[i]), exactly.

    Returns (value, argmin) as Fractions, or (None, None) when unbounded
    below.  An optional box constraint |xi_j| <= box keeps the program
    bounded (used to extract separating directions).
    """
    r = len(slopes[0])
    rows: list[Row] = []
    for m, c in zip(slopes, offsets):
        rows.append((tuple(m) + (Fraction(-1),), Fraction(-c)))
    if box is not None:
        for j in range(r):
            unit = [Fraction(0)] * (r + 1)
            unit[j] = Fraction(1)
            rows.append((tuple(unit), Fraction(box)))
            unit[j] = Fraction(-1)
            rows.append((tuple(unit), Fraction(box)))
    return minimize_last(rows, r + 1)
