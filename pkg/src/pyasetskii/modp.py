"""Dense exact linear algebra over a prime field F_p.

Matrices are lists of row lists of ints reduced mod p.  Dimensions in this
package stay tiny (at most a few dozen), so plain Gaussian elimination with
Python integers is exact and fast enough; no floating point is involved
anywhere.
"""

from __future__ import annotations


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list[list[int]]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def transpose(a: list[list[int]]) -> list[list[int]]:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    rows = len(a)
    inner = len(a[0]) if a else 0
    cols = len(b[0]) if b else 0
    if inner != len(b):
        raise ValueError("shape mismatch")
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] = (oi[j] + aik * bk[j]) % p
    return out

def mat_vec(a: list[list[int]], v: list[int], p: int) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def scale(a: list[list[int]], c: int, p: int) -> list[list[int]]:
    return [[(c * x) % p for x in row] for row in a]


def add_into(acc: list[list[int]], a: list[list[int]], c: int, p: int) -> None:
    for i, row in enumerate(a):
        acc_i = acc[i]
        for j, x in enumerate(row):
            if x:
                acc_i[j] = (acc_i[j] + c * x) % p


def is_zero(a: list[list[int]]) -> bool:
    return all(x == 0 for row in a for x in row)


def rank(a: list[list[int]], p: int) -> int:
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] % p), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def nullspace(a: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {v : Av = 0} over F_p, one vector per free column of the
    reduced row echelon form."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return []
    m = [[x % p for x in row] for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-m[ri][fc]) % p
        basis.append(v)
    return basis
