"""Integer-matrix K-theory for discrete graph algebras and the symbolic
propagation rules for the model construction.

For a finite discrete graph the K-groups are the cokernel and kernel of
I - A^t with columns restricted to the regular vertices, computed by an
exact Smith normal form with unimodular transforms.  When no vertex is
regular the canonical map is an isomorphism, so K_0 is free on the
vertices with the unit class at (1, ..., 1) and K_1 vanishes.  For the
model graph the vertex-space K-theory is declared backend metadata (the
Z factor contributes the K-theory of a point, by hypothesis), and
propagation is the identity with the unit class preserved for compact X.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import DiscreteGraph, OneVertexLoopGraph
from .spaces import (
    CantorBackend,
    CircleBackend,
    CountableBackend,
    FiniteBackend,
    SpaceBackend,
)


class KTheoryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer matrices and Smith normal form
# ---------------------------------------------------------------------------


def _ident(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                row = out[i]
                for j in range(cols):
                    row[j] += f * bk[j]
    return out


def mat_det(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def validate_matrix(entries) -> list[list[int]]:
    if not isinstance(entries, list) or not entries:
        raise KTheoryError("matrix must be a non-empty list of rows")
    width = None
    for r, row in enumerate(entries):
        if not isinstance(row, list) or not row:
            raise KTheoryError(f"row {r} is not a non-empty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise KTheoryError(f"row {r} has length {len(row)}, expected {width}")
        for c, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise KTheoryError(f"entry ({r}, {c}) is not an integer")
    return [row[:] for row in entries]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def snf(matrix):
    """Smith normal form: returns (D, P, Q) with P * M * Q = D, P and Q
    unimodular, and D diagonal with a divisibility chain d1 | d2 | ...

    Pivots are cleared with 2x2 Bezout transforms (determinant one), so
    each step replaces the pivot by a gcd; this terminates quickly and
    avoids the coefficient explosion of quotient-only elimination.
    """
    a = [row[:] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    p = _ident(rows)
    q = _ident(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def row_combine(t, i):
        """Unimodular rows transform making a[t][t] = gcd, a[i][t] = 0."""
        at, ai = a[t][t], a[i][t]
        if ai == 0:
            return
        if at and ai % at == 0:
            f = ai // at
            a[i] = [x - f * y for x, y in zip(a[i], a[t])]
            p[i] = [x - f * y for x, y in zip(p[i], p[t])]
            return
        g, x, y = _xgcd(at, ai)
        u, v = -(ai // g), at // g
        a[t], a[i] = (
            [x * rt + y * ri for rt, ri in zip(a[t], a[i])],
            [u * rt + v * ri for rt, ri in zip(a[t], a[i])],
        )
        p[t], p[i] = (
            [x * rt + y * ri for rt, ri in zip(p[t], p[i])],
            [u * rt + v * ri for rt, ri in zip(p[t], p[i])],
        )

    def col_combine(t, j):
        """Unimodular columns transform making a[t][t] = gcd, a[t][j] = 0."""
        at, aj = a[t][t], a[t][j]
        if aj == 0:
            return
        if at and aj % at == 0:
            f = aj // at
            for row in a:
                row[j] -= f * row[t]
            for row in q:
                row[j] -= f * row[t]
            return
        g, x, y = _xgcd(at, aj)
        u, v = -(aj // g), at // g
        for row in a:
            row[t], row[j] = x * row[t] + y * row[j], u * row[t] + v * row[j]
        for row in q:
            row[t], row[j] = x * row[t] + y * row[j], u * row[t] + v * row[j]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            for i in range(t + 1, rows):
                row_combine(t, i)
            for j in range(t + 1, cols):
                col_combine(t, j)
            # Bezout column steps can reintroduce entries below the pivot
            if all(a[i][t] == 0 for i in range(t + 1, rows)) and all(
                a[t][j] == 0 for j in range(t + 1, cols)
            ):
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            p[t] = [-x for x in p[t]]
        # enforce divisibility: fold in any entry the pivot misses
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            p[t] = [x + y for x, y in zip(p[t], p[offender])]
            continue
        t += 1
    if rows <= 8 and cols <= 8:
        # per-call self-check on small inputs: the factorization really
        # holds and the transforms really are unimodular
        if mat_mul(mat_mul(p, matrix), q) != a:
            raise KTheoryError("internal error: P*M*Q != D")
        if abs(mat_det(p)) != 1 or abs(mat_det(q)) != 1:
            raise KTheoryError("internal error: non-unimodular transform")
    return a, p, q


def invariant_factors(matrix) -> list[int]:
    d, _p, _q = snf(matrix)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i]:
            out.append(abs(d[i][i]))
    return out


# ---------------------------------------------------------------------------
# finitely generated abelian groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FGAbelianGroup:
    """Invariant-factor normal form: Z^rank + Z/d1 + ... with d1 | d2 | ...

    ``unit_class``, when present, is a vector in the canonical
    coordinates (torsion coordinates first, reduced mod d_i, then the
    free coordinates).
    """

    rank: int
    torsion: tuple[int, ...] = ()
    unit_class: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise KTheoryError("rank must be non-negative")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise KTheoryError("invariant factors must be >= 2")
            if i and d % self.torsion[i - 1]:
                raise KTheoryError("invariant factors must form a divisibility chain")
        if self.unit_class is not None:
            expected = self.rank + len(self.torsion)
            if len(self.unit_class) != expected:
                raise KTheoryError(
                    f"unit class has length {len(self.unit_class)}, expected {expected}"
                )
            reduced = tuple(
                v % d for v, d in zip(self.unit_class, self.torsion)
            ) + tuple(self.unit_class[len(self.torsion) :])
            object.__setattr__(self, "unit_class", reduced)

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def without_unit(self) -> "FGAbelianGroup":
        return FGAbelianGroup(self.rank, self.torsion, None)

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        body = " + ".join(parts) if parts else "0"
        if self.unit_class is not None:
            body += f" with unit {list(self.unit_class)}"
        return body


@dataclass(frozen=True)
class SymbolicGroup:
    """A declared group outside the finitely generated range, kept as an
    opaque named object (e.g. the free abelian group of countable rank
    for locally constant integer functions on a Cantor space)."""

    name: str
    pointed: bool = False

    def without_unit(self) -> "SymbolicGroup":
        return SymbolicGroup(self.name, False)

    def __str__(self):
        return self.name + (" with canonical unit" if self.pointed else "")


KGroup = FGAbelianGroup | SymbolicGroup

Z_POINTED = FGAbelianGroup(1, (), (1,))
ZERO_GROUP = FGAbelianGroup(0)


# ---------------------------------------------------------------------------
# cokernel / kernel with unit tracking
# ---------------------------------------------------------------------------


def cokernel_with_unit(matrix, unit_vector=None):
    """Structure of Z^rows / im(matrix) plus the class of ``unit_vector``.

    With P*M*Q = D, left-multiplication by P identifies the quotient
    with Z^rows / im(D); coordinates with d_i = 1 vanish, d_i >= 2 give
    torsion, and rows beyond the rank stay free.
    """
    rows = len(matrix)
    d, p, _q = snf(matrix)
    diag = []
    for i in range(min(rows, len(matrix[0]) if matrix else 0)):
        diag.append(abs(d[i][i]))
    while diag and diag[-1] == 0:
        diag.pop()
    torsion_slots = [(i, di) for i, di in enumerate(diag) if di >= 2]
    free_slots = list(range(len(diag), rows))
    group_rank = len(free_slots)
    torsion = tuple(di for _i, di in torsion_slots)
    unit = None
    if unit_vector is not None:
        image = [sum(p[i][j] * unit_vector[j] for j in range(rows)) for i in range(rows)]
        unit = tuple(image[i] % di for i, di in torsion_slots) + tuple(
            image[i] for i in free_slots
        )
    return FGAbelianGroup(group_rank, torsion, unit)


def kernel_rank(matrix) -> int:
    cols = len(matrix[0]) if matrix else 0
    return cols - len(invariant_factors(matrix))


# ---------------------------------------------------------------------------
# graph K-theory
# ---------------------------------------------------------------------------


def connecting_matrix(graph: DiscreteGraph):
    """I - A^t with columns restricted to the regular vertices, where
    A[v][w] counts edges from v to w (d = v, r = w)."""
    verts = graph.vertices
    regular = graph.regular_vertices()
    counts = graph.adjacency()
    matrix = []
    for v in verts:
        row = []
        for w in regular:
            entry = (1 if v == w else 0) - counts.get((w, v), 0)
            row.append(entry)
        matrix.append(row)
    return matrix, regular


def graph_ktheory(graph) -> tuple[FGAbelianGroup, FGAbelianGroup]:
    """(K_0 with unit class, K_1) of the algebra of a discrete graph.

    With no regular vertices the canonical map identifies K_0 with the
    free group on the vertices (unit at (1, ..., 1)) and K_1 = 0;
    otherwise K_0 = coker and K_1 = ker of the connecting matrix.
    """
    if isinstance(graph, OneVertexLoopGraph):
        if graph.regular_override:
            raise KTheoryError(
                "the loop vertex receives infinitely many edges; it cannot be regular"
            )
        return Z_POINTED, ZERO_GROUP
    if not isinstance(graph, DiscreteGraph):
        raise KTheoryError(f"not a discrete graph: {graph!r}")
    regular = graph.regular_vertices()
    nverts = len(graph.vertices)
    if not regular:
        return (
            FGAbelianGroup(nverts, (), (1,) * nverts),
            ZERO_GROUP,
        )
    matrix, _ = connecting_matrix(graph)
    k0 = cokernel_with_unit(matrix, [1] * nverts)
    k1 = FGAbelianGroup(kernel_rank(matrix))
    return k0, k1


# ---------------------------------------------------------------------------
# declared K-theory of space backends, and model propagation
# ---------------------------------------------------------------------------

#: Provenance note attached to every declared (not computed) value.
DECLARED = "declared backend metadata, not computed from the topology"


def declared_space_ktheory(backend: SpaceBackend) -> tuple[KGroup, KGroup]:
    """The declared K-theory of C(X) (or C_0(X)) for an X backend.

    Computed only for finite discrete spaces; the circle and Cantor
    values are standard topological facts entered as metadata.
    """
    if isinstance(backend, FiniteBackend):
        n = backend.size
        return FGAbelianGroup(n, (), (1,) * n), ZERO_GROUP
    if isinstance(backend, CircleBackend):
        return FGAbelianGroup(1, (), (1,)), FGAbelianGroup(1)
    if isinstance(backend, CantorBackend):
        return SymbolicGroup("free abelian of countable rank", pointed=True), ZERO_GROUP
    if isinstance(backend, CountableBackend):
        return SymbolicGroup("free abelian of countable rank", pointed=False), ZERO_GROUP
    raise KTheoryError(f"no declared K-theory for {backend!r}")


def z_factor_ktheory(system) -> tuple[KGroup, KGroup]:
    """Declared K-theory of the Z factor's function algebra.  The vetted
    stand-ins declare the K-theory of a point, which is the hypothesis
    the whole construction rests on."""
    if system.point_like_ktheory:
        return Z_POINTED, ZERO_GROUP
    backend = system.backend
    if isinstance(backend, FiniteBackend):
        return declared_space_ktheory(backend)
    raise KTheoryError(f"no declared K-theory for the system {system!r}")


def model_ktheory(x_backend: SpaceBackend, z_meta: tuple[KGroup, KGroup]):
    """K-theory of the model-graph algebra over (Z, X).

    Requires the Z factor to contribute the K-theory of a point (Z
    pointed at the generator, 0); the result is then the declared
    K-theory of X, unit class preserved exactly when X is compact.
    """
    if z_meta != (Z_POINTED, ZERO_GROUP):
        raise KTheoryError(
            "the Z factor must have the K-theory of a point "
            f"(got K0 = {z_meta[0]}, K1 = {z_meta[1]})"
        )
    k0, k1 = declared_space_ktheory(x_backend)
    if not x_backend.compact:
        k0 = k0.without_unit()
    return k0, k1


def stabilize_ktheory(kpair):
    """Tensoring with the compacts: groups unchanged, unit class dropped
    (stable algebras are non-unital)."""
    k0, k1 = kpair
    return k0.without_unit(), k1.without_unit()


# ---------------------------------------------------------------------------
# dimension arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DimBudget:
    """Covering dimensions of the two factors; ``dps_declared`` marks the
    Z value as coming from the point-like-system construction, which
    only produces dimensions 2 or 3."""

    dim_z: int
    dim_x: int
    x_is_point: bool = False
    dps_declared: bool = False

    def __post_init__(self):
        if self.dim_z < 0 or self.dim_x < 0:
            raise KTheoryError("dimensions must be non-negative")
        if self.dps_declared and self.dim_z not in (2, 3):
            raise KTheoryError("the point-like system has covering dimension 2 or 3")


@dataclass(frozen=True)
class DimBoundResult:
    bound: int
    refined: int | None


def dim_bound(budget: DimBudget) -> DimBoundResult:
    """Upper bound 2*dim_z + dim_x + 1 for the boundary-space dimension
    (infinite paths contribute dim_z, finite ones dim_z + dim_x, plus
    one for the union); over a one-point X the boundary is a product of
    the Z factor and a Cantor space, so the exact value is dim_z."""
    bound = 2 * budget.dim_z + budget.dim_x + 1
    refined = budget.dim_z if budget.x_is_point else None
    return DimBoundResult(bound, refined)
