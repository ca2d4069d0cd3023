"""Integral quadratic lattices: signatures, dual forms, reflections, spinor norms.

All arithmetic in this module is exact (ints and Fractions). Floating point
is deliberately absent: signatures and spinor signs are discrete invariants
and must not depend on rounding.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from functools import cached_property

from . import exactlin as ex
from .errors import DomainError, InternalInconsistencyError

# -- core types ----------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class QuadLattice:
    """Free abelian group Z^rank with an integral symmetric bilinear form.

    gram[i][j] = b(e_i, e_j); the quadratic form is q(v) = v^T gram v.
    """

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if n == 0:
            raise DomainError("lattice rank must be positive")
        if any(len(row) != n for row in g):
            raise DomainError("gram matrix must be square")
        if any(not isinstance(x, int) for row in g for x in row):
            raise DomainError("gram entries must be integers")
        if not ex.is_symmetric(g):
            raise DomainError("gram matrix must be symmetric")
        if self.det == 0:
            raise DomainError("degenerate form")

    @classmethod
    def from_rows(cls, rows) -> "QuadLattice":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        d = ex.det([list(row) for row in self.gram])
        assert d.denominator == 1
        return int(d)

    @cached_property
    def signature(self) -> tuple[int, int]:
        """Exact inertia (p, m) of the gram matrix, p + m = rank."""
        pos, neg, zero = ex.inertia([list(row) for row in self.gram])
        if zero:
            raise DomainError("degenerate form")
        return pos, neg

    @cached_property
    def dual_gram(self) -> list[list[Fraction]]:
        """Inverse gram matrix: the form q^vee on the dual in the dual basis."""
        return ex.inverse([list(row) for row in self.gram])

    @cached_property
    def adjugate(self) -> list[list[int]]:
        """det * gram^{-1}, an integer matrix; fast path for dual values."""
        d = self.det
        adj = [[x * d for x in row] for row in self.dual_gram]
        assert all(x.denominator == 1 for row in adj for x in row)
        return [[int(x) for x in row] for row in adj]

    def bform(self, u, v) -> Fraction:
        gu = ex.mat_vec([list(r) for r in self.gram], ex.frvec(v))
        return ex.dot(ex.frvec(u), gu)

    def q(self, v) -> Fraction:
        return self.bform(v, v)

    def is_hyperkahler_type(self) -> bool:
        return self.signature == (3, self.rank - 3)


@dataclasses.dataclass(frozen=True)
class Isometry:
    """Integer matrix g with g^T gram g = gram and det(g) = +-1."""

    lattice: QuadLattice
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = [list(row) for row in self.matrix]
        n = self.lattice.rank
        if len(g) != n or any(len(row) != n for row in g):
            raise DomainError("isometry matrix has wrong shape")
        if any(not isinstance(x, int) for row in g for x in row):
            raise DomainError("isometry matrix must have integer entries")
        gram = [list(row) for row in self.lattice.gram]
        gtg = ex.mat_mul(ex.mat_mul(ex.transpose(g), gram), g)
        if gtg != ex.frmat(gram):
            raise DomainError("matrix does not preserve the form")
        d = ex.det(ex.frmat(g))
        if d not in (1, -1):
            raise DomainError("isometry determinant must be +-1")

    def rational_rows(self) -> ex.Mat:
        return ex.frmat(self.matrix)


@dataclasses.dataclass(frozen=True)
class WallForm:
    """Dual-lattice functional delta(v) = coords . v with rational coords."""

    lattice: QuadLattice
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise DomainError("wall form has wrong length")
        if all(c == 0 for c in self.coords):
            raise DomainError("wall form must be nonzero")

    @classmethod
    def from_coords(cls, lattice: QuadLattice, coords) -> "WallForm":
        return cls(lattice, tuple(ex.fr(c) for c in coords))

    def __call__(self, v) -> Fraction:
        return ex.dot(list(self.coords), ex.frvec(v))

    @cached_property
    def indivisible(self) -> bool:
        """True when the lcm-cleared integer coordinate vector has content 1."""
        cleared = ex.clear_denominators(list(self.coords))
        return ex.content(cleared) == 1

    @cached_property
    def dual_value(self) -> Fraction:
        return dual_value(self.lattice, self.coords)

    @cached_property
    def negative(self) -> bool:
        return is_negative_form(self.lattice, self.coords)

    def primitive(self) -> "WallForm":
        return WallForm.from_coords(self.lattice, ex.primitive_vector(list(self.coords)))


# -- standard lattices ---------------------------------------------------------

_E8_EDGES = ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7))


def hyperbolic_plane() -> QuadLattice:
    """The even unimodular plane U with gram [[0,1],[1,0]]."""
    return QuadLattice.from_rows([[0, 1], [1, 0]])


def e8_lattice() -> QuadLattice:
    """Positive definite even unimodular E8 (Cartan-matrix gram)."""
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = -1
    return QuadLattice.from_rows(g)


def rank_one(k: int) -> QuadLattice:
    if k == 0:
        raise DomainError("degenerate form")
    return QuadLattice.from_rows([[int(k)]])


def direct_sum(*lattices: QuadLattice) -> QuadLattice:
    if not lattices:
        raise DomainError("direct sum needs at least one summand")
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        r = L.rank
        for i in range(r):
            for j in range(r):
                g[off + i][off + j] = L.gram[i][j]
        off += r
    return QuadLattice.from_rows(g)


def rescale(L: QuadLattice, s: int) -> QuadLattice:
    if s == 0:
        raise DomainError("cannot rescale a form by 0")
    return QuadLattice.from_rows([[s * x for x in row] for row in L.gram])


def k3_lattice() -> QuadLattice:
    """U^3 + E8(-1)^2: rank 22, signature (3,19), unimodular."""
    u = hyperbolic_plane()
    e8m = rescale(e8_lattice(), -1)
    return direct_sum(u, u, u, e8m, e8m)


def standard_lattice(name: str, *params) -> QuadLattice:
    """Build a named lattice: U, E8, rank1(k), rescale(L, s), K3, U3."""
    key = name.upper()
    if key == "U":
        return hyperbolic_plane()
    if key == "E8":
        return e8_lattice()
    if key == "RANK1":
        return rank_one(int(params[0]))
    if key == "RESCALE":
        return rescale(params[0], int(params[1]))
    if key == "DIRECT_SUM":
        return direct_sum(*params)
    if key == "K3":
        return k3_lattice()
    if key == "U3":
        return direct_sum(*([hyperbolic_plane()] * 3))
    raise DomainError(f"unknown lattice name {name!r}")


# -- operations ----------------------------------------------------------------


def signature(L: QuadLattice) -> tuple[int, int]:
    return L.signature


def dual_value(L: QuadLattice, coords) -> Fraction:
    """q^vee(delta) = coords . gram^{-1} . coords, exact over Q."""
    if all(isinstance(x, int) for x in coords):
        adj = L.adjugate
        n = L.rank
        acc = 0
        for i in range(n):
            ci = coords[i]
            if ci:
                row = adj[i]
                acc += ci * sum(row[j] * coords[j] for j in range(n))
        return Fraction(acc, L.det)
    c = ex.frvec(coords)
    return ex.dot(c, ex.mat_vec(L.dual_gram, c))


def kernel_signature(L: QuadLattice, coords) -> tuple[int, int]:
    """Exact inertia of q restricted to ker(delta); radical not counted.

    Uses the integer kernel basis w_i = c_p e_i - c_i e_p (i != p) for the
    lcm-cleared coordinate vector c with pivot p, so the restricted gram is
    integral and the fast inertia path applies.
    """
    c = ex.clear_denominators(ex.frvec(coords))
    if all(x == 0 for x in c):
        raise DomainError("zero functional")
    n = L.rank
    p = next(i for i in range(n) if c[i] != 0)
    g = L.gram
    cp = c[p]
    idx = [i for i in range(n) if i != p]
    # restricted gram entries b(w_i, w_j) expanded in terms of gram entries
    restricted = []
    for i in idx:
        row = []
        gi = g[i]
        gp = g[p]
        for j in idx:
            val = (
                cp * cp * gi[j]
                - cp * c[j] * gi[p]
                - c[i] * cp * gp[j]
                + c[i] * c[j] * gp[p]
            )
            row.append(val)
        restricted.append(row)
    pos, neg, _zero = ex.inertia(restricted)
    return pos, neg


def is_negative_form(L: QuadLattice, coords) -> bool:
    """True iff q^vee(delta) < 0; cross-checked against the kernel inertia.

    For a lattice of signature (3, n) the two criteria are equivalent:
    the kernel of a negative functional has signature (3, n-1). Both are
    computed and compared; disagreement raises.
    """
    c = ex.frvec(coords)
    if all(x == 0 for x in c):
        raise DomainError("zero functional")
    qv = dual_value(L, c)
    by_sign = qv < 0
    p, m = L.signature
    ker = kernel_signature(L, c)
    by_kernel = ker == (p, m - 1)
    if by_sign != by_kernel:
        raise InternalInconsistencyError(
            f"dual value {qv} and kernel inertia {ker} disagree"
        )
    return by_sign


def reflection_matrix(L: QuadLattice, v) -> ex.Mat:
    """Matrix of r_v(x) = x - (2 b(x,v)/q(v)) v, exact over Q."""
    qv = L.q(v)
    if qv == 0:
        raise DomainError("isotropic reflection vector")
    vv = ex.frvec(v)
    gv = ex.mat_vec([list(r) for r in L.gram], vv)
    n = L.rank
    mat = ex.identity(n)
    for i in range(n):
        for j in range(n):
            mat[i][j] -= 2 * vv[i] * gv[j] / qv
    return mat


@dataclasses.dataclass(frozen=True)
class Reflection:
    """A rational reflection of the ambient quadratic space."""

    lattice: QuadLattice
    vector: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    integral: bool

    @property
    def norm(self) -> Fraction:
        return self.lattice.q(self.vector)


def reflection(L: QuadLattice, v) -> Reflection:
    mat = reflection_matrix(L, v)
    integral = all(x.denominator == 1 for row in mat for x in row)
    return Reflection(
        lattice=L,
        vector=tuple(ex.frvec(v)),
        matrix=tuple(tuple(row) for row in mat),
        integral=integral,
    )


def is_isometry_matrix(L: QuadLattice, g: ex.Mat) -> bool:
    gram = ex.frmat([list(r) for r in L.gram])
    return ex.mat_mul(ex.mat_mul(ex.transpose(g), gram), g) == gram


def _candidate_vectors(basis: list[ex.Vec], order: list[int] | None) -> list[ex.Vec]:
    idx = list(range(len(basis)))
    if order:
        perm = [order[i % len(order)] % len(basis) for i in range(len(basis))]
        seen, idx = set(), []
        for p in perm:
            if p not in seen:
                seen.add(p)
                idx.append(p)
        idx += [i for i in range(len(basis)) if i not in seen]
    cands = [basis[i] for i in idx]
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            u, w = basis[idx[a]], basis[idx[b]]
            cands.append([x + y for x, y in zip(u, w)])
            cands.append([x - y for x, y in zip(u, w)])
    return cands


def reflection_vectors(L: QuadLattice, g: ex.Mat, order: list[int] | None = None) -> list[ex.Vec]:
    """Cartan-Dieudonne decomposition: vectors w_i with g = r_{w_1} ... r_{w_k}.

    Recursive: find an anisotropic v in the current invariant subspace and
    either recurse on v-perp (g fixes v), peel off one reflection in v - g v
    (anisotropic mirror), or two reflections via v + g v (isotropic mirror).
    Terminates in at most 2 * rank reflections. The ``order`` argument only
    permutes the candidate search and must not change the resulting spinor
    sign; tests rely on that.
    """
    gram = [list(r) for r in L.gram]
    if not is_isometry_matrix(L, g):
        raise DomainError("matrix does not preserve the form")

    def qq(v):
        return ex.dot(v, ex.mat_vec(gram, v))

    def bb(u, v):
        return ex.dot(u, ex.mat_vec(gram, v))

    def apply(mat, v):
        return ex.mat_vec(mat, v)

    def recurse(gmat: ex.Mat, basis: list[ex.Vec]) -> list[ex.Vec]:
        if not basis:
            return []
        if all(apply(gmat, b) == b for b in basis):
            return []
        v = next((c for c in _candidate_vectors(basis, order) if qq(c) != 0), None)
        if v is None:
            raise InternalInconsistencyError("no anisotropic vector in a nondegenerate subspace")
        gv = apply(gmat, v)
        qv = qq(v)

        def orth_basis():
            projected = [[x - (bb(b, v) / qv) * y for x, y in zip(b, v)] for b in basis]
            red, pivots = ex.rref(projected)
            return [red[i] for i in range(len(pivots))]

        if gv == v:
            return recurse(gmat, orth_basis())
        w = [x - y for x, y in zip(v, gv)]
        if qq(w) != 0:
            g2 = ex.mat_mul(reflection_matrix(L, w), gmat)
            return [w] + recurse(g2, orth_basis())
        w1 = [x + y for x, y in zip(v, gv)]
        # q(v - gv) = 0 and q(v) != 0 force q(v + gv) = 4 q(v) != 0
        g2 = ex.mat_mul(
            reflection_matrix(L, v), ex.mat_mul(reflection_matrix(L, w1), gmat)
        )
        return [w1, v] + recurse(g2, orth_basis())

    basis0 = [[Fraction(int(i == j)) for j in range(L.rank)] for i in range(L.rank)]
    vectors = recurse([list(map(ex.fr, row)) for row in g], basis0)
    if len(vectors) > 2 * L.rank:
        raise InternalInconsistencyError("reflection decomposition exceeded 2 * rank")
    return vectors


def spinor_norm_sign(L: QuadLattice, g, order: list[int] | None = None) -> int:
    """Real spinor norm of g for the form -q, as a sign in {+1, -1}.

    Decomposes g into reflections r_{v_i} and returns the sign of the
    product of -q(v_i). Independent of the decomposition.
    """
    if isinstance(g, Isometry):
        g = g.rational_rows()
    else:
        g = ex.frmat(g)
    sign = 1
    for w in reflection_vectors(L, g, order=order):
        qw = ex.dot(w, ex.mat_vec([list(r) for r in L.gram], w))
        sign *= 1 if -qw > 0 else -1
    return sign


def in_o_sharp(L: QuadLattice, g, order: list[int] | None = None) -> bool:
    """Membership in the kernel of the real spinor norm for -q inside O(q)."""
    return spinor_norm_sign(L, g, order=order) == +1
