"""Exact sparse linear algebra over a Scalar field.

Rows are sparse dicts mapping hashable column keys to Scalars.  The
workhorse is an incremental reduced echelon structure: every stored
pivot row is normalized (pivot coefficient 1) and contains no other
pivot column, so reducing a vector is a single pass.  Pivot columns are
chosen by a caller-supplied priority key, which lets quotient reductions
prefer to eliminate non-basis monomials.
"""

from __future__ import annotations


class Echelon:
    """Incrementally built reduced row echelon form."""

    def __init__(self, key=None):
        self._key = key if key is not None else lambda c: c
        self.pivots: dict = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Fully reduce a row against the stored pivots (returns a new dict)."""
        row = {c: v for c, v in row.items() if not v.is_zero()}
        for col in [c for c in row if c in self.pivots]:
            coeff = row.pop(col)
            for c2, v2 in self.pivots[col].items():
                if c2 == col:
                    continue
                s = row.get(c2)
                s = -coeff * v2 if s is None else s - coeff * v2
                if s.is_zero():
                    row.pop(c2, None)
                else:
                    row[c2] = s
        return row

    def add(self, row: dict):
        """Insert a row; returns its pivot column, or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        piv = min(row, key=self._key)
        inv = row[piv]
        row = {c: v / inv for c, v in row.items()}
        for prow in self.pivots.values():
            f = prow.get(piv)
            if f is None or f.is_zero():
                continue
            del prow[piv]
            for c2, v2 in row.items():
                if c2 == piv:
                    continue
                s = prow.get(c2)
                s = -f * v2 if s is None else s - f * v2
                if s.is_zero():
                    prow.pop(c2, None)
                else:
                    prow[c2] = s
        self.pivots[piv] = row
        return piv

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def nullspace(rows, columns, ctx, key=None) -> list:
    """Basis of solutions of the homogeneous system given by ``rows``.

    ``columns`` lists every unknown; the returned solutions are dicts
    with one basis vector per free column (that column's value is 1).
    """
    order = {c: i for i, c in enumerate(columns)}
    ech = Echelon(key=key or (lambda c: order[c]))
    for r in rows:
        ech.add(r)
    basis = []
    for f in columns:
        if f in ech.pivots:
            continue
        sol = {f: ctx.one}
        for p, prow in ech.pivots.items():
            cf = prow.get(f)
            if cf is not None and not cf.is_zero():
                sol[p] = -cf
        basis.append(sol)
    return basis


RHS = ("__rhs__",)


def solve(rows, columns, ctx):
    """Particular solution of an inhomogeneous system, or None.

    Each row may carry an entry under the ``RHS`` key holding its
    right-hand side.  Free unknowns are set to zero; the returned pair is
    (solution dict, list of free columns).
    """
    order = {c: i for i, c in enumerate(columns)}
    order[RHS] = len(order)
    ech = Echelon(key=lambda c: order[c])
    for r in rows:
        ech.add(r)
    if RHS in ech.pivots:
        return None
    sol = {}
    free = [c for c in columns if c not in ech.pivots]
    for p, prow in ech.pivots.items():
        val = prow.get(RHS)
        if val is not None and not val.is_zero():
            sol[p] = val
    return sol, free
