"""Exact Gaussian elimination over the rationals on sparse rows."""

from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    pass


def solve(matrix, rhs):
    """Solve ``matrix @ X = rhs`` exactly.

    ``matrix`` is n x n and ``rhs`` is n x m, both given as sequences of rows
    (dense lists) or as lists of ``{col: value}`` dicts.  Returns X as a list
    of n dense rows of length m.  Gauss-Jordan elimination; only nonzero
    entries are touched, which keeps Markov-chain systems cheap.
    """
    n = len(matrix)
    if len(rhs) != n:
        raise ValueError("row count mismatch")
    m = None
    rows = []
    for i in range(n):
        a = matrix[i]
        b = rhs[i]
        a = {j: Fraction(v) for j, v in (a.items() if isinstance(a, dict) else enumerate(a)) if v}
        b = {j: Fraction(v) for j, v in (b.items() if isinstance(b, dict) else enumerate(b)) if v}
        if not isinstance(rhs[i], dict):
            m = len(rhs[i])
        rows.append((a, b))
    if m is None:
        m = 1 + max((max(b) for _, b in rows if b), default=-1)

    # column -> set of rows with a nonzero there
    occupancy: dict = {}
    for i, (a, _) in enumerate(rows):
        for j in a:
            occupancy.setdefault(j, set()).add(i)

    pivot_row_of = {}
    done = set()
    for col in range(n):
        candidates = [i for i in occupancy.get(col, ()) if i not in done]
        if not candidates:
            raise SingularMatrixError(f"no pivot in column {col}")
        # sparsest row first limits fill-in
        p = min(candidates, key=lambda i: (len(rows[i][0]), i))
        done.add(p)
        pivot_row_of[col] = p
        pa, pb = rows[p]
        inv = 1 / pa[col]
        pa = {j: v * inv for j, v in pa.items()}
        pb = {j: v * inv for j, v in pb.items()}
        rows[p] = (pa, pb)
        for i in list(occupancy[col]):
            if i == p:
                continue
            a, b = rows[i]
            f = a[col]
            for j, v in pa.items():
                nv = a.get(j, 0) - f * v
                if nv:
                    if j not in a:
                        occupancy.setdefault(j, set()).add(i)
                    a[j] = nv
                elif j in a:
                    del a[j]
                    occupancy[j].discard(i)
            for j, v in pb.items():
                nv = b.get(j, 0) - f * v
                if nv:
                    b[j] = nv
                else:
                    b.pop(j, None)
    out = []
    for col in range(n):
        _, b = rows[pivot_row_of[col]]
        out.append([b.get(j, Fraction(0)) for j in range(m)])
    return out


def solve_vector(matrix, vec):
    return [row[0] for row in solve(matrix, [[v] for v in vec])]
