"""Exact dense linear algebra over any small field.

Works on lists of lists whose entries support +, -, *, bool() and
.inverse(); both gf.FieldElement and cyclotomic.Cyclotomic qualify.
Matrices here are tiny (dimension n(n-1)/2 <= 10 at the scales the engine
enumerates), so plain Gaussian elimination is the whole story.
"""

from __future__ import annotations


def echelon(rows: list[list]) -> list[list]:
    """Reduced row echelon form, zero rows dropped; input is not mutated."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis: list[list] = []
    pivots: list[int] = []
    for row in rows:
        for b, c in zip(basis, pivots):
            if row[c]:
                f = row[c]
                row = [x - f * y for x, y in zip(row, b)]
        lead = next((c for c in range(ncols) if row[c]), None)
        if lead is None:
            continue
        inv = row[lead].inverse()
        row = [x * inv for x in row]
        for i, (b, c) in enumerate(zip(basis, pivots)):
            if b[lead]:
                f = b[lead]
                basis[i] = [x - f * y for x, y in zip(b, row)]
        basis.append(row)
        pivots.append(lead)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [basis[i] for i in order]


def rank(rows: list[list]) -> int:
    return len(echelon(rows))


def intersection_dim(rows_a: list[list], rows_b: list[list]) -> int:
    """dim(span A ∩ span B) = dim A + dim B - dim(A + B)."""
    a = rank(rows_a)
    b = rank(rows_b)
    return a + b - rank(list(rows_a) + list(rows_b))


def solve(matrix: list[list], rhs: list) -> list:
    """Solve the square full-rank system matrix @ x = rhs exactly.

    Raises ValueError on a singular matrix.
    """
    d = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(d)]
    for c in range(d):
        piv = next((r for r in range(c, d) if aug[r][c]), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv for x in aug[c]]
        for r in range(d):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][d] for r in range(d)]
