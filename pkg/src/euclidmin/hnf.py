"""Integer and rational matrix utilities: column HNF, kernels, solving.

Matrices are lists of rows. The Hermite normal form used throughout is the
upper-triangular column form: the lattice is spanned by the columns, the
diagonal is positive, and every entry to the right of the diagonal is
reduced modulo the diagonal entry of its row.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_columns(columns: list[list[int]]) -> list[list[int]]:
    """Upper-triangular column HNF of the lattice spanned by the columns.

    Requires the columns to span a full-rank lattice in Z^n.
    """
    if not columns:
        raise ValueError("no columns")
    n = len(columns[0])
    cols = [list(c) for c in columns]
    hnf_cols: list[list[int] | None] = [None] * n
    for i in range(n - 1, -1, -1):
        live = [c for c in cols if any(c[k] for k in range(i + 1))]
        cols = []
        pivot = None
        for c in live:
            if c[i] == 0:
                cols.append(c)
                continue
            if pivot is None:
                pivot = c
                continue
            a, b = pivot[i], c[i]
            g, x, y = xgcd(a, b)
            u, v = a // g, b // g
            new_p = [x * pa + y * ca for pa, ca in zip(pivot, c)]
            new_c = [-v * pa + u * ca for pa, ca in zip(pivot, c)]
            pivot, _ = new_p, None
            assert new_c[i] == 0
            cols.append(new_c)
        if pivot is None:
            raise ValueError("columns do not span a full-rank lattice")
        if pivot[i] < 0:
            pivot = [-x for x in pivot]
        hnf_cols[i] = pivot
    # reduce above-diagonal entries: for row i, entries in columns j > i
    for j in range(n):
        cj = hnf_cols[j]
        for i in range(j - 1, -1, -1):
            ci = hnf_cols[i]
            q = cj[i] // ci[i]
            if q:
                for k in range(i + 1):
                    cj[k] -= q * ci[k]
    return [[hnf_cols[j][i] for j in range(n)] for i in range(n)]


def kernel_int(rows: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel {z in Z^m : A z = 0} of a k x m matrix."""
    k = len(rows)
    m = len(rows[0]) if k else 0
    # column operations on A, mirrored on an identity; zero columns of the
    # reduced A mark kernel vectors in the transform.
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def col(mat, j):
        return [mat[i][j] for i in range(len(mat))]

    def combine(mat, dst, src, x, y, xx, yy):
        for i in range(len(mat)):
            mat[i][dst], mat[i][src] = (x * mat[i][dst] + y * mat[i][src],
                                        xx * mat[i][dst] + yy * mat[i][src])

    pivot_col = 0
    for r in range(k):
        nz = [t for t in range(pivot_col, m) if a[r][t] != 0]
        if not nz:
            continue
        p = nz[0]
        for t in nz[1:]:
            g, x, y = xgcd(a[r][p], a[r][t])
            ap, at = a[r][p] // g, a[r][t] // g
            combine(a, p, t, x, y, -at, ap)
            combine(u, p, t, x, y, -at, ap)
        if p != pivot_col:
            for mat in (a, u):
                for i in range(len(mat)):
                    mat[i][p], mat[i][pivot_col] = mat[i][pivot_col], mat[i][p]
        pivot_col += 1
    return [col(u, j) for j in range(pivot_col, m)]


def mat_vec(m, v):
    return [sum(mi[j] * v[j] for j in range(len(v))) for mi in m]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(rows)]


def mat_det(m) -> Fraction:
    """Determinant by fraction-based Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if a[r][i] != 0), None)
        if p is None:
            return Fraction(0)
        if p != i:
            a[i], a[p] = a[p], a[i]
            det = -det
        det *= a[i][i]
        inv = 1 / a[i][i]
        for r in range(i + 1, n):
            if a[r][i]:
                f = a[r][i] * inv
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return det


def mat_inverse(m) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(m)]
    for i in range(n):
        p = next((r for r in range(i, n) if a[r][i] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[i], a[p] = a[p], a[i]
        inv = 1 / a[i][i]
        a[i] = [x * inv for x in a[i]]
        for r in range(n):
            if r != i and a[r][i]:
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return [row[n:] for row in a]


def solve_upper(h, v):
    """Solve H x = v for upper-triangular H with nonzero diagonal; exact."""
    n = len(h)
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(v[i]) - sum(Fraction(h[i][j]) * x[j] for j in range(i + 1, n))
        x[i] = s / h[i][i]
    return x


def solve_linear_mod_lattice(a_cols, w_cols, target):
    """Find integer u with A u = target - W w for some integer w.

    A and W are given as lists of columns over Z; returns u or None when the
    target is not in the column span of [A | W].
    """
    n = len(target)
    cols = [list(c) for c in a_cols] + [list(c) for c in w_cols]
    m = len(cols)
    # track transformation: cols stay integer combinations of originals
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    mat = [[cols[j][i] for j in range(m)] for i in range(n)]
    # column echelon, one row at a time
    piv = []
    pc = 0
    for r in range(n):
        nz = [t for t in range(pc, m) if mat[r][t] != 0]
        if not nz:
            piv.append(None)
            continue
        p = nz[0]
        for t in nz[1:]:
            g, x, y = xgcd(mat[r][p], mat[r][t])
            ap, at = mat[r][p] // g, mat[r][t] // g
            for mm in (mat, u):
                for i in range(len(mm)):
                    mm[i][p], mm[i][t] = (x * mm[i][p] + y * mm[i][t],
                                          -at * mm[i][p] + ap * mm[i][t])
        if p != pc:
            for mm in (mat, u):
                for i in range(len(mm)):
                    mm[i][p], mm[i][pc] = mm[i][pc], mm[i][p]
        piv.append(pc)
        pc += 1
    # back-solve target against echelon columns
    t = list(target)
    coeff = [0] * m
    for r in range(n):
        if t[r] == 0:
            continue
        j = piv[r]
        if j is None or mat[r][j] == 0 or t[r] % mat[r][j] != 0:
            return None
        q = t[r] // mat[r][j]
        coeff[j] = q
        for i in range(n):
            t[i] -= q * mat[i][j]
    if any(t):
        return None
    orig = [sum(u[i][j] * coeff[j] for j in range(m)) for i in range(m)]
    return orig[:len(a_cols)]


def fp_kernel(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the kernel of a matrix over F_p, entries lifted to [0, p)."""
    k = len(rows)
    m = len(rows[0]) if k else 0
    a = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, k) if a[i][c] % p), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(k):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == k:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-a[i][fc]) % p
        basis.append(v)
    return basis


def lcm_list(xs) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out
