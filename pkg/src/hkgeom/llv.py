"""Cohomology rings as structure constants and the Lie algebras they carry.

A ring is a graded basis with integer cup-product structure constants, an
integration functional on the top degree, and a designated degree-2 block
identified with a quadratic lattice. On such data the module builds the
Lefschetz operators e_eta (cup product), the grading operator h (eigenvalue
2m - k on degree k), the dual operators f_eta completing sl2 triples, the
bracket closure of families of such operators, the Fujiki-constant fit, the
rotation generator realizing the weight decomposition of a period point, and
the Hodge decomposition with its signature certificates.

Sign conventions: [h, e] = -2e, [h, f] = +2f, [e, f] = -h.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exactlin as ex
from .config import DEFAULT_TOL, Tolerances
from .errors import DomainError, HardLefschetzError, NumericalError
from .lattice import QuadLattice, k3_lattice
from .period import (
    PeriodPoint,
    conic_contains,
    gram_float,
    PositiveThreePlane,
    qform,
)


@dataclasses.dataclass(frozen=True)
class CohomologyRing:
    """Graded ring with integer structure constants and a top-degree integral.

    degrees[i] is the cohomological degree of basis element i (0..4m).
    products maps (i, j) to a dict {k: c} meaning e_i e_j = sum c e_k.
    integration[i] is the integral of basis element i (nonzero only in the
    top degree). lattice_indices designate the degree-2 block whose cup
    products realize the bilinear form of ``lattice``.
    """

    m: int
    degrees: tuple[int, ...]
    products: tuple  # ((i, j, k, c), ...) sparse integer quadruples
    integration: tuple[int, ...]
    lattice_indices: tuple[int, ...]
    lattice: QuadLattice

    @cached_property
    def dim(self) -> int:
        return len(self.degrees)

    @cached_property
    def _table(self) -> dict:
        tab: dict = {}
        for i, j, k, c in self.products:
            tab.setdefault((i, j), {})[k] = tab.setdefault((i, j), {}).get(k, 0) + c
        return tab

    def validate(self) -> None:
        """Exhaustive exact checks: grading, graded commutativity,
        associativity on all basis triples, Poincare nondegeneracy, and the
        degree-2 block reproducing the lattice form."""
        n = self.dim
        top = 4 * self.m
        if any(d < 0 or d > top for d in self.degrees):
            raise DomainError("degrees out of range")
        if any(self.integration[i] and self.degrees[i] != top for i in range(n)):
            raise DomainError("integration supported off the top degree")
        for (i, j), terms in self._table.items():
            for k, c in terms.items():
                if c and self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    raise DomainError("structure constants break the grading")
        for i in range(n):
            for j in range(n):
                left = self.cup_basis(i, j)
                right = self.cup_basis(j, i)
                sign = (-1) ** (self.degrees[i] * self.degrees[j])
                if left != [sign * x for x in right]:
                    raise DomainError("graded commutativity fails")
        for i in range(n):
            for j in range(n):
                ij = self.cup_basis(i, j)
                for k in range(n):
                    lhs = self.cup_vector(ij, self.basis_vector(k))
                    rhs = self.cup_vector(self.basis_vector(i), self.cup_basis(j, k))
                    if lhs != rhs:
                        raise DomainError(f"associativity fails on ({i},{j},{k})")
        pairing = [
            [self.integrate(self.cup_basis(i, j)) for j in range(n)] for i in range(n)
        ]
        if ex.det(ex.frmat(pairing)) == 0:
            raise DomainError("Poincare pairing is degenerate")
        if len(self.lattice_indices) != self.lattice.rank:
            raise DomainError("lattice block size does not match the lattice rank")
        if any(self.degrees[i] != 2 for i in self.lattice_indices):
            raise DomainError("lattice block must sit in degree 2")

    def basis_vector(self, i: int) -> list[int]:
        v = [0] * self.dim
        v[i] = 1
        return v

    def cup_basis(self, i: int, j: int) -> list[int]:
        out = [0] * self.dim
        for k, c in self._table.get((i, j), {}).items():
            out[k] += c
        return out

    def cup_vector(self, x, y) -> list:
        """Cup product of coefficient vectors, exact for int/Fraction input."""
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in self._table.get((i, j), {}).items():
                    out[k] += xi * yj * c
        return out

    def integrate(self, x) -> int | Fraction:
        return sum(xi * w for xi, w in zip(x, self.integration))

    def degree_indices(self, d: int) -> list[int]:
        return [i for i in range(self.dim) if self.degrees[i] == d]

    def embed_lattice_vector(self, eta) -> np.ndarray:
        """Lift a lattice vector to ring coordinates on the degree-2 block."""
        out = np.zeros(self.dim)
        for a, idx in enumerate(self.lattice_indices):
            out[idx] = float(eta[a])
        return out


def k3_ring() -> CohomologyRing:
    """The rank-24 ring: unit, 22 degree-2 classes with the K3 form, point class."""
    L = k3_lattice()
    n = L.rank
    dim = n + 2
    degrees = [0] + [2] * n + [4]
    products = []
    for i in range(dim):
        products.append((0, i, i, 1))
        if i != 0:
            products.append((i, 0, i, 1))
    for a in range(n):
        for b in range(n):
            g = L.gram[a][b]
            if g:
                products.append((1 + a, 1 + b, dim - 1, g))
    integration = [0] * dim
    integration[dim - 1] = 1
    return CohomologyRing(
        m=1,
        degrees=tuple(degrees),
        products=tuple(products),
        integration=tuple(integration),
        lattice_indices=tuple(range(1, n + 1)),
        lattice=L,
    )


# -- graded operators -------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class GradedOperator:
    """Matrix on the total basis, homogeneous of a fixed degree shift."""

    ring: CohomologyRing
    matrix: np.ndarray
    degree: int

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        for i in range(self.ring.dim):
            for j in range(self.ring.dim):
                if m[i, j] and self.ring.degrees[i] != self.ring.degrees[j] + self.degree:
                    raise DomainError("matrix entries off the degree-shift blocks")


def _block_check_matrix(ring: CohomologyRing, mat: np.ndarray, degree: int, tol: float = 0.0):
    for i in range(ring.dim):
        for j in range(ring.dim):
            if abs(mat[i, j]) > tol and ring.degrees[i] != ring.degrees[j] + degree:
                raise DomainError("matrix entries off the degree-shift blocks")


def lefschetz_e(ring: CohomologyRing, eta) -> GradedOperator:
    """Cup product with a degree-2 class eta (lattice coordinates)."""
    n = ring.lattice.rank
    if len(eta) != n:
        raise DomainError("eta must be a degree-2 class in lattice coordinates")
    mat = np.zeros((ring.dim, ring.dim))
    for a, idx in enumerate(ring.lattice_indices):
        ea = float(eta[a])
        if ea == 0.0:
            continue
        for j in range(ring.dim):
            for k, c in ring._table.get((idx, j), {}).items():
                mat[k, j] += ea * c
    return GradedOperator(ring, mat, degree=+2)


def grading_h(ring: CohomologyRing) -> GradedOperator:
    """Diagonal operator with eigenvalue 2m - k on the degree-k block."""
    diag = [2 * ring.m - d for d in ring.degrees]
    return GradedOperator(ring, np.diag(np.array(diag, dtype=float)), degree=0)


def lefschetz_f(
    ring: CohomologyRing, eta, tol: float = 1e-9
) -> GradedOperator:
    """The degree -2 operator completing (e_eta, h, f_eta) to an sl2 triple.

    Solved from the bracket relation [e, f] = -h as a linear system over the
    degree -2 block entries ([h, f] = 2f holds automatically for block
    matrices). An inconsistent system is exactly the failure of hard
    Lefschetz for eta and raises HardLefschetzError.
    """
    e_op = lefschetz_e(ring, eta).matrix
    h_op = grading_h(ring).matrix
    positions = [
        (i, j)
        for j in range(ring.dim)
        for i in range(ring.dim)
        if ring.degrees[i] == ring.degrees[j] - 2
    ]
    if not positions:
        raise HardLefschetzError("ring has no degree -2 block")
    cols = []
    for (i, j) in positions:
        basis_mat = np.zeros((ring.dim, ring.dim))
        basis_mat[i, j] = 1.0
        cols.append((e_op @ basis_mat - basis_mat @ e_op).ravel())
    a_mat = np.array(cols).T
    rhs = (-h_op).ravel()
    sol, *_ = np.linalg.lstsq(a_mat, rhs, rcond=None)
    residual = np.linalg.norm(a_mat @ sol - rhs)
    scale = max(np.linalg.norm(h_op), 1.0)
    if residual > tol * scale:
        raise HardLefschetzError(
            f"hard Lefschetz fails for this class (residual {residual:.3e})"
        )
    f_mat = np.zeros((ring.dim, ring.dim))
    for (i, j), v in zip(positions, sol):
        f_mat[i, j] = v
    return GradedOperator(ring, f_mat, degree=-2)


def sl2_residuals(ring: CohomologyRing, eta) -> dict[str, float]:
    """Operator-norm residuals of the three bracket relations for eta."""
    e_op = lefschetz_e(ring, eta).matrix
    h_op = grading_h(ring).matrix
    f_op = lefschetz_f(ring, eta).matrix

    def br(x, y):
        return x @ y - y @ x

    return {
        "he_plus_2e": float(np.linalg.norm(br(h_op, e_op) + 2 * e_op, ord=2)),
        "hf_minus_2f": float(np.linalg.norm(br(h_op, f_op) - 2 * f_op, ord=2)),
        "ef_plus_h": float(np.linalg.norm(br(e_op, f_op) + h_op, ord=2)),
    }


# -- bracket closure ---------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class LieClosure:
    """Orthonormalized basis of the Lie algebra generated by the input operators."""

    ring: CohomologyRing
    elements: tuple[GradedOperator, ...]
    dimension: int
    by_degree: dict[int, int]
    residual: float

    def degree_zero_basis(self) -> list[np.ndarray]:
        return [op.matrix for op in self.elements if op.degree == 0]


def lie_closure(
    generators,
    tau: float | None = None,
    cap: int = 600,
    residual_samples: int = 400,
    seed: int = 0,
) -> LieClosure:
    """Close a family of graded operators under the bracket, numerically.

    Maintains per-degree orthonormal bases of flattened matrices; a bracket
    joins the basis when its residual after projection exceeds tau (relative
    to the bracket norm). Brackets are processed in deterministic FIFO order,
    so the result is stable for a fixed input order. Raises when the
    dimension exceeds ``cap`` (runaway non-closure).
    """
    if not generators:
        raise DomainError("no generators")
    ring = generators[0].ring
    if any(g.ring is not ring and g.ring != ring for g in generators):
        raise DomainError("generators act on different rings")
    tau = DEFAULT_TOL.lie if tau is None else tau
    blocks: dict[int, list[np.ndarray]] = {}
    stacks: dict[int, np.ndarray] = {}
    elements: list[tuple[int, np.ndarray]] = []

    def try_add(mat: np.ndarray, degree: int) -> bool:
        norm = np.linalg.norm(mat)
        if norm < 1e-13:
            return False
        v = mat.ravel() / norm
        basis = blocks.setdefault(degree, [])
        if basis:
            q = stacks[degree]
            r = v - q.T @ (q @ v)
            r -= q.T @ (q @ r)
        else:
            r = v.copy()
        rnorm = np.linalg.norm(r)
        if rnorm <= tau:
            return False
        r /= rnorm
        basis.append(r)
        stacks[degree] = np.vstack(basis)
        elements.append((degree, r.reshape(ring.dim, ring.dim)))
        if len(elements) > cap:
            raise NumericalError(f"closure dimension exceeded the cap {cap}")
        return True

    for g in generators:
        try_add(np.asarray(g.matrix, dtype=float), g.degree)
    queue = deque(range(len(elements)))
    while queue:
        idx = queue.popleft()
        deg_x, x = elements[idx]
        snapshot = len(elements)
        mats = np.array([m for _, m in elements[:snapshot]])
        brackets = x[None, :, :] @ mats - mats @ x[None, :, :]
        for j in range(snapshot):
            if try_add(brackets[j], elements[j][0] + deg_x):
                queue.append(len(elements) - 1)
    # independent residual sweep over sampled pairs
    rng = np.random.default_rng(seed)
    count = len(elements)
    worst = 0.0
    pairs = (
        [(i, j) for i in range(count) for j in range(i)]
        if count * (count - 1) // 2 <= residual_samples
        else [
            (int(a), int(b))
            for a, b in zip(
                rng.integers(0, count, residual_samples),
                rng.integers(0, count, residual_samples),
            )
        ]
    )
    for i, j in pairs:
        deg = elements[i][0] + elements[j][0]
        bracket = elements[i][1] @ elements[j][1] - elements[j][1] @ elements[i][1]
        norm = np.linalg.norm(bracket)
        if norm < 1e-13:
            continue
        v = bracket.ravel() / norm
        for u in blocks.get(deg, []):
            v -= (u @ v) * u
        worst = max(worst, float(np.linalg.norm(v)))
    by_degree = {d: len(b) for d, b in sorted(blocks.items()) if b}
    ops = tuple(
        GradedOperator(ring, m, degree=d) for d, m in elements
    )
    return LieClosure(
        ring=ring,
        elements=ops,
        dimension=len(elements),
        by_degree=by_degree,
        residual=worst,
    )


def lie_closure_exact(ring: CohomologyRing, generators: list[tuple[int, list[list]]], cap: int = 600):
    """Exact-rational bracket closure: the oracle for the float path.

    Generators are (degree, matrix) pairs with Fraction/int entries. Returns
    (dimension, by_degree) computed with exact rank decisions.
    """
    blocks: dict[int, list[list[Fraction]]] = {}
    pivots: dict[int, list[int]] = {}
    elements: list[tuple[int, ex.Mat]] = []

    def try_add(mat: ex.Mat, degree: int) -> bool:
        flat = [x for row in mat for x in row]
        if all(x == 0 for x in flat):
            return False
        basis = blocks.setdefault(degree, [])
        piv = pivots.setdefault(degree, [])
        v = list(flat)
        for row, p in zip(basis, piv):
            if v[p]:
                f = v[p] / row[p]
                v = [a - f * b for a, b in zip(v, row)]
        lead = next((i for i, x in enumerate(v) if x != 0), None)
        if lead is None:
            return False
        basis.append(v)
        piv.append(lead)
        elements.append((degree, mat))
        if len(elements) > cap:
            raise NumericalError(f"closure dimension exceeded the cap {cap}")
        return True

    for degree, mat in generators:
        try_add(ex.frmat(mat), degree)
    queue = deque(range(len(elements)))
    while queue:
        idx = queue.popleft()
        deg_x, x = elements[idx]
        for j in range(len(elements)):
            deg_y, y = elements[j]
            bracket_m = ex.mat_mul(x, y)
            yx = ex.mat_mul(y, x)
            bracket = [
                [a - b for a, b in zip(r1, r2)] for r1, r2 in zip(bracket_m, yx)
            ]
            if try_add(bracket, deg_x + deg_y):
                queue.append(len(elements) - 1)
    by_degree = {d: len(b) for d, b in sorted(blocks.items()) if b}
    return len(elements), by_degree


def so5_closure(ring: CohomologyRing, plane: PositiveThreePlane, tau: float | None = None) -> LieClosure:
    """Closure of the sl2 pairs over a q-orthonormal basis of a positive 3-plane."""
    gens = []
    for eta in plane.frame:
        gens.append(lefschetz_e(ring, eta))
        gens.append(lefschetz_f(ring, eta))
    return lie_closure(gens, tau=tau)


def full_llv_closure(ring: CohomologyRing, tau: float | None = None, cap: int = 600) -> LieClosure:
    """Closure of the Lefschetz pairs over the whole degree-2 basis.

    e_eta enters for every basis vector; f_eta needs q(eta) != 0 (hard
    Lefschetz), so isotropic basis vectors are patched by the first partner
    that makes the square nonzero. The patched classes still span, which is
    what generation needs.
    """
    L = ring.lattice
    n = L.rank
    gens = []
    for a in range(n):
        eta = [0] * n
        eta[a] = 1
        gens.append(lefschetz_e(ring, eta))
    for a in range(n):
        eta = [0] * n
        eta[a] = 1
        if L.q(eta) == 0:
            partner = next(
                b for b in range(n) if _mixed_square_nonzero(L, a, b)
            )
            eta[partner] += 1
        gens.append(lefschetz_f(ring, eta))
    return lie_closure(gens, tau=tau, cap=cap)


def _mixed_square_nonzero(L: QuadLattice, a: int, b: int) -> bool:
    if a == b:
        return False
    eta = [0] * L.rank
    eta[a] = 1
    eta[b] = 1
    return L.q(eta) != 0


# -- Fujiki constant ----------------------------------------------------------------


def fujiki_constant(ring: CohomologyRing, samples: int | None = None, seed: int = 0) -> Fraction:
    """The rational constant c with q(a)^m = c * integral(a^{2m}), fit exactly.

    Samples random integer degree-2 classes, computes both sides with exact
    integer arithmetic, and requires a single consistent c across samples;
    an inconsistent pair raises with the offending sample.
    """
    L = ring.lattice
    n = L.rank
    count = samples if samples is not None else max(2 * n * n, 32)
    rng = np.random.default_rng(seed)
    c_val: Fraction | None = None
    witness = None
    for _ in range(count):
        a = [int(x) for x in rng.integers(-9, 10, size=n)]
        if not any(a):
            continue
        vec = [0] * ring.dim
        for i, idx in enumerate(ring.lattice_indices):
            vec[idx] = a[i]
        power = vec
        for _k in range(2 * ring.m - 1):
            power = ring.cup_vector(power, vec)
        integral = ring.integrate(power)
        qm = Fraction(L.q(a)) ** ring.m
        if integral == 0:
            if qm != 0:
                raise NumericalError(f"Fujiki relation violated on {a}")
            continue
        c_here = qm / integral
        if c_val is None:
            c_val, witness = c_here, a
        elif c_here != c_val:
            raise NumericalError(
                f"Fujiki relation violated: {witness} gives {c_val}, {a} gives {c_here}"
            )
    if c_val is None:
        raise NumericalError("no informative samples for the Fujiki fit")
    return c_val


# -- weight operator and Hodge decomposition ----------------------------------------


def deligne_generator(
    closure: LieClosure, z: PeriodPoint, tol: float = 1e-8
) -> GradedOperator:
    """The rotation generator of the period plane inside the degree-0 part.

    Solves for X in the closure's degree-0 block with X a = 2b, X b = -2a,
    X = 0 on the rest of the 3-plane and on the unit; its eigenvalue on the
    line of sigma is -2i, on the conjugate +2i, and 0 on the rest of the
    degree-2 block, matching the infinitesimal weights -(p - q) i of the
    Hodge bigrading.
    """
    ring = closure.ring
    L = ring.lattice
    basis = closure.degree_zero_basis()
    if not basis:
        raise DomainError("closure has no degree-0 part")
    plane_vectors = _closure_plane(closure)
    if not conic_contains(plane_vectors, z):
        raise DomainError("period point does not lie on the conic of the closure plane")
    a_emb = ring.embed_lattice_vector(z.re)
    b_emb = ring.embed_lattice_vector(z.im)
    g = gram_float(L)
    # third frame vector of the plane, orthogonal to the period plane
    w = None
    for row in plane_vectors.frame:
        cand = row - (row @ g @ z.re) * z.re - (row @ g @ z.im) * z.im
        if qform(L, cand) > 1e-6:
            w = cand / np.sqrt(qform(L, cand))
            break
    if w is None:
        raise NumericalError("could not extract the third frame vector")
    w_emb = ring.embed_lattice_vector(w)
    unit = np.zeros(ring.dim)
    unit[ring.degree_indices(0)[0]] = 1.0
    conditions = [
        (a_emb, 2 * b_emb),
        (b_emb, -2 * a_emb),
        (w_emb, np.zeros(ring.dim)),
        (unit, np.zeros(ring.dim)),
    ]
    rows = []
    rhs = []
    for vin, vout in conditions:
        block = np.array([mat @ vin for mat in basis]).T
        rows.append(block)
        rhs.append(vout)
    a_sys = np.vstack(rows)
    b_sys = np.concatenate(rhs)
    sol, *_ = np.linalg.lstsq(a_sys, b_sys, rcond=None)
    residual = float(np.linalg.norm(a_sys @ sol - b_sys))
    if residual > tol * max(1.0, float(np.linalg.norm(b_sys))):
        raise NumericalError(f"weight-operator solve inconsistent (residual {residual:.3e})")
    x_mat = sum(c * mat for c, mat in zip(sol, basis))
    return GradedOperator(ring, x_mat, degree=0)


def _closure_plane(closure: LieClosure) -> PositiveThreePlane:
    """Recover the positive 3-plane of an sl2-family closure from its e-block.

    The degree +2 part of the closure is the span of the cup operators of
    the plane's classes; reading off their degree-2 columns reconstructs the
    plane.
    """
    from .period import orient_three_plane

    ring = closure.ring
    vectors = []
    unit_index = ring.degree_indices(0)[0]
    for op in closure.elements:
        if op.degree != +2:
            continue
        col = op.matrix[:, unit_index]
        eta = np.array([col[idx] for idx in ring.lattice_indices])
        vectors.append(eta)
    if len(vectors) != 3:
        raise DomainError("closure degree +2 part does not define a 3-plane")
    return orient_three_plane(ring.lattice, vectors)


def weight_spectrum(ring: CohomologyRing, x: GradedOperator) -> dict[int, list[complex]]:
    """Eigenvalues of the weight operator per cohomological degree block."""
    out: dict[int, list[complex]] = {}
    for d in sorted(set(ring.degrees)):
        idx = ring.degree_indices(d)
        block = x.matrix[np.ix_(idx, idx)]
        evals = np.linalg.eigvals(block)
        out[d] = sorted((complex(v) for v in evals), key=lambda c: (c.imag, c.real))
    return out


@dataclasses.dataclass(frozen=True)
class HodgeDecomposition:
    h20: np.ndarray  # complex line of sigma
    h02: np.ndarray  # conjugate line
    h11: np.ndarray  # basis rows of the h_q-orthogonal complement
    inertia_h11: tuple[int, int]

    @property
    def dims(self) -> tuple[int, int, int]:
        return 1, self.h11.shape[0], 1


def hodge_decompose(L: QuadLattice, z: PeriodPoint, tol: Tolerances = DEFAULT_TOL) -> HodgeDecomposition:
    """Split the complexified lattice by the period point, with certificates.

    H^{2,0} = C sigma, H^{0,2} = C conj(sigma), H^{1,1} their h_q-orthogonal
    complement; verifies h_q-orthogonality and that the hermitian form has
    inertia (1, n) on H^{1,1} (numerical eigenvalue count).
    """
    g = gram_float(L)
    sigma = z.sigma
    sbar = np.conj(sigma)
    pairings = np.vstack([sbar @ g, sigma @ g])  # h(x, sigma) = x^T G conj(sigma)
    _, svals, vt = np.linalg.svd(pairings)
    h11 = np.conj(vt[2:])
    for row in h11:
        if abs(row @ g @ np.conj(sigma)) > 1e-8 or abs(row @ g @ sigma) > 1e-8:
            raise NumericalError("H^{1,1} fails h_q-orthogonality")
    herm = h11 @ g @ np.conj(h11).T
    evals = np.linalg.eigvalsh((herm + np.conj(herm).T) / 2)
    pos = int((evals > 1e-9).sum())
    neg = int((evals < -1e-9).sum())
    if pos + neg != len(evals):
        raise NumericalError("H^{1,1} inertia is numerically ambiguous")
    expected = (1, L.rank - 3)
    if (pos, neg) != expected:
        raise NumericalError(
            f"H^(1,1) inertia {(pos, neg)} differs from {expected}; invalid input"
        )
    h_sigma = float(np.real(sigma @ g @ np.conj(sigma)))
    if h_sigma <= 0:
        raise NumericalError("h_q is not positive on the sigma line")
    return HodgeDecomposition(
        h20=sigma, h02=sbar, h11=h11, inertia_h11=(pos, neg)
    )
