"""Exact rational linear-programming feasibility (phase-one simplex, Bland's rule).

Only feasibility is ever needed here: projectivity witnesses and proper
intersection of cones.  Problems are tiny (tens of variables), so a dense
tableau over ``Fraction`` is fine.
"""
from __future__ import annotations

from fractions import Fraction


def feasible_point(a_ub=(), b_ub=(), a_eq=(), b_eq=(), nvars: int | None = None):
    """A rational point x with ``a_ub x <= b_ub`` and ``a_eq x == b_eq``.

    Variables are free.  Returns None when the system is infeasible.
    """
    a_ub, a_eq = list(a_ub), list(a_eq)
    if nvars is None:
        nvars = len((a_ub or a_eq)[0])
    n_ub = len(a_ub)
    rows = []
    rhs = []
    # columns: x+ (nvars), x- (nvars), slacks (n_ub), artificials (one per row)
    nslack = n_ub
    for i, (row, b) in enumerate(zip(a_ub, b_ub)):
        r = [Fraction(v) for v in row] + [Fraction(-v) for v in row]
        s = [Fraction(0)] * nslack
        s[i] = Fraction(1)
        rows.append(r + s)
        rhs.append(Fraction(b))
    for row, b in zip(a_eq, b_eq):
        rows.append([Fraction(v) for v in row] + [Fraction(-v) for v in row] + [Fraction(0)] * nslack)
        rhs.append(Fraction(b))
    m = len(rows)
    if m == 0:
        return tuple(Fraction(0) for _ in range(nvars))
    nstruct = 2 * nvars + nslack
    ncol = nstruct + m
    tab = []
    for i in range(m):
        sgn = -1 if rhs[i] < 0 else 1
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append([sgn * v for v in rows[i]] + art + [sgn * rhs[i]])
    basis = [nstruct + i for i in range(m)]
    # objective: minimize sum of artificials -> reduced costs row
    obj = [Fraction(0)] * (ncol + 1)
    for i in range(m):
        for j in range(ncol + 1):
            obj[j] -= tab[i][j]
    for i in range(m):
        obj[nstruct + i] += 1

    while True:
        enter = next((j for j in range(ncol) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            aij = tab[i][enter]
            if aij > 0:
                ratio = tab[i][-1] / aij
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded phase-one objective cannot happen
            break
        _pivot(tab, obj, leave, enter)
        basis[leave] = enter

    if -obj[-1] != 0:
        return None
    x = [Fraction(0)] * (2 * nvars)
    for i, b in enumerate(basis):
        if b < 2 * nvars:
            x[b] = tab[i][-1]
    return tuple(x[k] - x[nvars + k] for k in range(nvars))


def _pivot(tab, obj, r, c):
    prow = tab[r]
    inv = 1 / prow[c]
    if inv != 1:
        for j in range(len(prow)):
            if prow[j]:
                prow[j] *= inv
    nz = [j for j, v in enumerate(prow) if v]
    for row in tab:
        if row is not prow:
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    f = obj[c]
    if f:
        for j in nz:
            obj[j] -= f * prow[j]
