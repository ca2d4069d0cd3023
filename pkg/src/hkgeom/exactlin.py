"""Exact linear algebra over the rationals and the integers.

Everything here is pure Python on ``fractions.Fraction`` and ``int``; no
floating point enters. This module backs the discrete invariants of the
toolkit: signatures of integral quadratic forms, kernels of rational
functionals, Smith normal forms for cochain solving, and an LLL wrapper
used by the integer-relation detectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DomainError

Vec = list[Fraction]
Mat = list[list[Fraction]]


def fr(x) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions; reject floats."""
    if isinstance(x, float):
        raise DomainError("exact arithmetic rejects floats; pass int, Fraction or 'p/q'")
    return Fraction(x)


def frmat(rows) -> Mat:
    return [[fr(x) for x in row] for row in rows]


def frvec(row) -> Vec:
    return [fr(x) for x in row]


def identity(n: int) -> Mat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Mat, v: Vec) -> Vec:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v: Vec, a: Mat) -> Vec:
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def dot(u: Vec, v: Vec) -> Fraction:
    return sum(x * y for x, y in zip(u, v))


def is_symmetric(a) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i)
    )


def det(a: Mat) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination with pivoting."""
    n = len(a)
    m = [[fr(x) for x in row] for row in a]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        d = m[col][col]
        result *= d
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / d
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return sign * result


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [[fr(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        d = m[r][c]
        m[r] = [x / d for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def nullspace(a: Mat) -> list[Vec]:
    """Basis of the right kernel {x : a x = 0}, exact over Q."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(a: Mat, b: Vec) -> Vec | None:
    """One solution of a x = b over Q, or None if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(map(fr, a[i])) + [fr(b[i])] for i in range(rows)]
    red, pivots = rref(aug)
    for r in range(len(pivots), rows):
        if red[r][cols] != 0:
            return None
    if pivots and pivots[-1] == cols:
        return None
    x = [Fraction(0)] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return x


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [list(map(fr, a[i])) + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise DomainError("matrix is singular")
    return [row[n:] for row in red]


def _inertia_int(s: list[list[int]]) -> tuple[int, int, int]:
    """Integer fast path for inertia: fraction-free elimination.

    Instead of dividing by the pivot d, the remaining block is replaced by
    d * S - (outer product), which scales the restricted form by d; a sign
    flag tracks whether the block's form is currently negated. A positive
    gcd is divided out after every step to control entry growth (scaling a
    symmetric form by a positive integer preserves inertia).
    """
    n = len(s)
    m = [row[:] for row in s]
    pos = neg = zero = 0
    negated = False
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is not None:
            d = m[piv][piv]
            if (d > 0) != negated:
                pos += 1
            else:
                neg += 1
            rest = [j for j in active if j != piv]
            col = {j: m[j][piv] for j in rest}
            for j in rest:
                row_j, row_p, cj = m[j], m[piv], col[j]
                for k in rest:
                    row_j[k] = d * row_j[k] - cj * row_p[k]
            if d < 0:
                negated = not negated
            active = rest
        else:
            pair = None
            for ii, i in enumerate(active):
                for j in active[ii + 1 :]:
                    if m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                zero += len(active)
                break
            i, j = pair
            a = m[i][j]
            pos += 1
            neg += 1
            rest = [k for k in active if k not in (i, j)]
            coli = {k: m[k][i] for k in rest}
            colj = {k: m[k][j] for k in rest}
            a2 = a * a
            for k in rest:
                row_k, ski, skj = m[k], coli[k], colj[k]
                for l in rest:
                    row_k[l] = -a2 * row_k[l] + a * (ski * colj[l] + skj * coli[l])
            negated = not negated  # block form scaled by det = -a^2 < 0
            active = rest
        if active:
            g = 0
            for j in active:
                for k in active:
                    g = gcd(g, abs(m[j][k]))
                    if g == 1:
                        break
                if g == 1:
                    break
            if g > 1:
                for j in active:
                    row_j = m[j]
                    for k in active:
                        row_j[k] //= g
    return pos, neg, zero


def inertia(s) -> tuple[int, int, int]:
    """Exact inertia (positive, negative, zero) of a symmetric matrix over Q.

    Symmetric Gaussian elimination: diagonal pivots contribute their sign;
    when the active diagonal vanishes, a nonzero off-diagonal entry gives a
    hyperbolic 2x2 block contributing (1, 1). Congruence preserves inertia,
    so the count is exact.
    """
    n = len(s)
    if not is_symmetric(s):
        raise DomainError("inertia requires a symmetric matrix")
    if all(isinstance(x, int) for row in s for x in row):
        return _inertia_int([list(row) for row in s])
    m = [[fr(x) for x in row] for row in s]
    pos = neg = zero = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is not None:
            d = m[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            rest = [j for j in active if j != piv]
            for j in rest:
                if m[j][piv]:
                    f = m[j][piv] / d
                    row_j, row_p = m[j], m[piv]
                    for k in rest:
                        row_j[k] -= f * row_p[k]
            active = rest
            continue
        pair = None
        for ii, i in enumerate(active):
            for j in active[ii + 1 :]:
                if m[i][j] != 0:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            zero += len(active)
            break
        i, j = pair
        a = m[i][j]
        pos += 1
        neg += 1
        rest = [k for k in active if k not in (i, j)]
        for k in rest:
            ski, skj = m[k][i], m[k][j]
            if ski or skj:
                row_k = m[k]
                for l in rest:
                    row_k[l] -= (ski * m[l][j] + skj * m[l][i]) / a
        active = rest
    return pos, neg, zero


def gram_restrict(gram: Mat, basis: list[Vec]) -> Mat:
    """Gram matrix of the bilinear form restricted to the given basis."""
    gb = [mat_vec(gram, v) for v in basis]
    return [[dot(basis[i], gb[j]) for j in range(len(basis))] for i in range(len(basis))]


def content(v: list[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def clear_denominators(v: Vec) -> list[int]:
    """Scale a rational vector by the lcm of denominators; returns ints."""
    lcm = 1
    for x in v:
        d = fr(x).denominator
        lcm = lcm // gcd(lcm, d) * d
    return [int(fr(x) * lcm) for x in v]


def primitive_vector(v) -> list[int]:
    """Primitive integer vector spanning the same line as v (v != 0)."""
    w = clear_denominators([fr(x) for x in v])
    c = content(w)
    if c == 0:
        raise DomainError("zero vector has no primitive representative")
    return [x // c for x in w]


# -- Smith normal form --------------------------------------------------------


def smith_normal_form(a: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form with transforms: returns (s, u, v) with u a v = s.

    u and v are unimodular; s is diagonal with s[i][i] | s[i+1][i+1] >= 0.
    Standard pivot-and-reduce algorithm; fine for the cochain-sized matrices
    this package needs.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    s = [[int(x) for x in row] for row in a]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, f):  # row_i -= f * row_j  (in s and u)
        s[i] = [x - f * y for x, y in zip(s[i], s[j])]
        u[i] = [x - f * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, f):  # col_i -= f * col_j  (in s and v)
        for r in range(rows):
            s[r][i] -= f * s[r][j]
        for r in range(cols):
            v[r][i] -= f * v[r][j]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            s[r][i], s[r][j] = s[r][j], s[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(rows, cols):
        # locate a pivot of minimal absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(s[i][j])
                if x and (best is None or x < best):
                    best = x
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        # clear row and column t by euclidean reduction
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    row_op(i, t, q)
                    if s[i][t]:
                        swap_rows(t, i)
                    dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    col_op(j, t, q)
                    if s[t][j]:
                        swap_cols(t, j)
                    dirty = True
            if not dirty:
                break
        # divisibility: fold any non-divisible trailing entry into row t
        fixed = True
        d = s[t][t]
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if s[i][j] % d:
                    row_op(t, i, -1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if s[t][t] < 0:
                s[t] = [-x for x in s[t]]
                u[t] = [-x for x in u[t]]
            t += 1
    return s, u, v


def snf_diagonal(a: list[list[int]]) -> list[int]:
    s, _, _ = smith_normal_form(a)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


def invariant_factors(values: list[int]) -> list[int]:
    """Canonical invariant-factor chain of a product of cyclic groups.

    Input: cyclic orders (>= 1). Output: nontrivial factors d1 | d2 | ...
    computed via the SNF of the diagonal matrix.
    """
    vals = [v for v in values if v != 1]
    if not vals:
        return []
    n = len(vals)
    diag = [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return [d for d in snf_diagonal(diag) if d != 1]


# -- LLL ----------------------------------------------------------------------


def lll_reduce(rows: list[list[int]]) -> list[list[int]]:
    """LLL-reduced basis of the lattice spanned by the given independent rows."""
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix.from_list([[int(x) for x in r] for r in rows], ZZ)
    red = dm.lll()
    return [[int(x) for x in row] for row in red.to_list()]
