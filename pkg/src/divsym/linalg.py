"""Exact Gauss-Jordan elimination over Fractions."""

from __future__ import annotations

from fractions import Fraction

from divsym.errors import PreconditionError


def solve(a, b):
    """Solve A X = B exactly.

    ``a`` is a k x k list of lists, ``b`` a k x r list of lists.  Entries are
    anything Fraction accepts.  Raises PreconditionError when A is singular.
    """
    k = len(a)
    if any(len(row) != k for row in a) or len(b) != k:
        raise PreconditionError("shape mismatch in linear system")
    r = len(b[0]) if k else 0
    aug = [[Fraction(v) for v in a[i]] + [Fraction(v) for v in b[i]] for i in range(k)]
    for col in range(k):
        piv = next((i for i in range(col, k) if aug[i][col]), None)
        if piv is None:
            raise PreconditionError("singular linear system")
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        inv = 1 / prow[col]
        if inv != 1:
            prow = aug[col] = [v * inv for v in prow]
        nz = [j for j in range(col, k + r) if prow[j]]
        for i in range(k):
            if i == col:
                continue
            row = aug[i]
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    return [row[k:] for row in aug]
