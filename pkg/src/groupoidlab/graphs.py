"""Topological graphs, finite paths and the minimality/contracting checks.

Two graph families are supported exactly:

* the model graph over a minimal system: vertices Z x X, edges
  Z x X x N with domain (z, x, m) -> (z, x) and range
  (z, x, m) -> (rho(z), x_m), where (x_m) is the canonical dense
  sequence of the X backend;
* discrete directed graphs (finite ones ingested from JSON, plus the
  builtin one-vertex graph with countably many loops).

Open subsets of path spaces are restricted to boxes: per-coordinate
space boxes together with finite or cofinite edge-index sets.  Images
under the domain/range maps and under powers of the dynamics are again
boxes, which makes the contracting conditions exactly decidable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qphi import QPhi
from .spaces import (
    Arc,
    Box,
    CantorBox,
    CircleBox,
    FiniteBackend,
    FiniteBox,
    FinitePoint,
    MinimalSystem,
    PairPoint,
    Point,
    ProductBackend,
    ProductBox,
    SpaceBackend,
    box_contains,
    box_intersect,
    box_is_empty,
    box_rep_point,
    cantor_covered_by_words,
    circle_covered_by_arcs,
    dense_sequence,
)


class GraphError(ValueError):
    pass


class CompositionError(GraphError):
    pass


# ---------------------------------------------------------------------------
# edges and graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelEdge:
    """Edge (z, x, m) of the model graph; m >= 1 indexes the dense sequence."""

    z: Point
    x: Point
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("edge index must be >= 1")


@dataclass(frozen=True)
class DiscreteEdge:
    src: str
    dst: str
    label: str | int


Edge = ModelEdge | DiscreteEdge


class ModelGraph:
    """The graph over Z x X driven by a minimal system on Z."""

    def __init__(self, z_system: MinimalSystem, x_backend: SpaceBackend):
        self.z_system = z_system
        self.x_backend = x_backend
        self.vertex_backend = ProductBackend(z_system.backend, x_backend)
        self._x_cache: dict[int, Point] = {}

    def x_point(self, m: int) -> Point:
        if m not in self._x_cache:
            self._x_cache[m] = dense_sequence(self.x_backend, m)
        return self._x_cache[m]

    def d(self, e: ModelEdge) -> PairPoint:
        return PairPoint(e.z, e.x)

    def r(self, e: ModelEdge) -> PairPoint:
        return PairPoint(self.z_system.forward(e.z), self.x_point(e.m))

    def is_singular(self, vertex: PairPoint) -> bool:
        # every vertex receives edges of unboundedly many indices
        return True

    def x_is_point(self) -> bool:
        return isinstance(self.x_backend, FiniteBackend) and self.x_backend.size == 1

    def __repr__(self):
        return f"<ModelGraph Z={self.z_system.name} X={self.x_backend!r}>"


class OneVertexLoopGraph:
    """A single vertex with countably many loops, labelled 1, 2, 3, ...

    The vertex is singular: it receives infinitely many edges.  Forcing
    it regular (``regular_override=True``) produces an invalid K-theory
    input, kept available for testing the row-finiteness guard.
    """

    vertex = "*"

    def __init__(self, regular_override: bool = False):
        self.regular_override = regular_override

    def d(self, e: DiscreteEdge) -> str:
        return self.vertex

    def r(self, e: DiscreteEdge) -> str:
        return self.vertex

    def edge(self, label: int) -> DiscreteEdge:
        if label < 1:
            raise ValueError("loop labels start at 1")
        return DiscreteEdge(self.vertex, self.vertex, label)

    def is_singular(self, vertex) -> bool:
        return not self.regular_override

    def is_regular(self, vertex) -> bool:
        return self.regular_override

    def __repr__(self):
        return "<OneVertexLoopGraph>"


class DiscreteGraph:
    """A finite directed graph; d(e) = source, r(e) = target.

    A vertex is regular when it receives at least one and finitely many
    edges, unless an explicit singular override is given.
    """

    def __init__(self, vertices, edges, singular_override=()):
        self.vertices = list(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphError("duplicate vertex names")
        self.edges = []
        for src, dst, label in edges:
            if src not in vset or dst not in vset:
                raise GraphError(f"edge ({src!r}, {dst!r}, {label!r}) uses unknown vertex")
            self.edges.append(DiscreteEdge(src, dst, label))
        unknown = set(singular_override) - vset
        if unknown:
            raise GraphError(f"singular override names unknown vertices: {sorted(unknown)}")
        self.singular_override = frozenset(singular_override)
        self._indegree = {v: 0 for v in self.vertices}
        for e in self.edges:
            self._indegree[e.dst] += 1

    def d(self, e: DiscreteEdge) -> str:
        return e.src

    def r(self, e: DiscreteEdge) -> str:
        return e.dst

    def indegree(self, vertex) -> int:
        return self._indegree[vertex]

    def is_regular(self, vertex) -> bool:
        if vertex in self.singular_override:
            return False
        return self._indegree[vertex] > 0

    def is_singular(self, vertex) -> bool:
        return not self.is_regular(vertex)

    def regular_vertices(self) -> list:
        return [v for v in self.vertices if self.is_regular(v)]

    def adjacency(self) -> dict:
        """counts[(v, w)] = number of edges from v to w (d = v, r = w)."""
        counts: dict[tuple, int] = {}
        for e in self.edges:
            counts[(e.src, e.dst)] = counts.get((e.src, e.dst), 0) + 1
        return counts

    def __repr__(self):
        return f"<DiscreteGraph |V|={len(self.vertices)} |E|={len(self.edges)}>"


TopGraph = ModelGraph | OneVertexLoopGraph | DiscreteGraph


def build_model_graph(z_system: MinimalSystem, x_backend: SpaceBackend) -> ModelGraph:
    """Assemble the model graph; the Z factor must be one of the vetted
    systems (or the declared negative control)."""
    if not isinstance(x_backend, FiniteBackend) and x_backend.kind not in (
        "circle",
        "cantor",
    ):
        raise GraphError(f"unsupported X backend {x_backend!r}")
    if z_system.backend.kind not in ("circle", "cantor", "finite"):
        raise GraphError(f"unsupported Z system {z_system!r}")
    return ModelGraph(z_system, x_backend)


# ---------------------------------------------------------------------------
# finite paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinitePath:
    """Edges (e_1, ..., e_n) with d(e_i) = r(e_{i+1}); n = 0 stores a vertex.

    The graph is carried along so endpoints can be computed; graphs are
    compared by identity.
    """

    graph: TopGraph
    edges: tuple[Edge, ...]
    base: object = None  # vertex, for zero-length paths

    def __post_init__(self):
        if not self.edges and self.base is None:
            raise GraphError("zero-length path needs a vertex")
        g = self.graph
        for i in range(len(self.edges) - 1):
            if g.d(self.edges[i]) != g.r(self.edges[i + 1]):
                raise CompositionError(
                    f"edges {i + 1} and {i + 2} do not compose: "
                    f"d = {g.d(self.edges[i])!r} vs r = {g.r(self.edges[i + 1])!r}"
                )

    def __len__(self):
        return len(self.edges)

    def r(self):
        return self.graph.r(self.edges[0]) if self.edges else self.base

    def d(self):
        return self.graph.d(self.edges[-1]) if self.edges else self.base

    def __eq__(self, other):
        if not isinstance(other, FinitePath):
            return NotImplemented
        if self.graph is not other.graph:
            return False
        if self.edges != other.edges:
            return False
        return self.edges or self.base == other.base

    def __hash__(self):
        return hash((id(self.graph), self.edges, None if self.edges else self.base))


def vertex_path(graph: TopGraph, vertex) -> FinitePath:
    return FinitePath(graph, (), vertex)


def compose_paths(mu: FinitePath, nu: FinitePath) -> FinitePath:
    """Concatenate mu followed by nu; requires d(mu) = r(nu) exactly."""
    if mu.graph is not nu.graph:
        raise CompositionError("paths live in different graphs")
    if len(mu) == 0 and len(nu) == 0:
        if mu.base != nu.base:
            raise CompositionError(f"vertex mismatch: {mu.base!r} vs {nu.base!r}")
        return mu
    if mu.d() != nu.r():
        raise CompositionError(f"junction mismatch: d(mu) = {mu.d()!r} but r(nu) = {nu.r()!r}")
    if len(nu) == 0:
        return mu
    if len(mu) == 0:
        return nu
    return FinitePath(mu.graph, mu.edges + nu.edges)


def orbit_plus(graph: TopGraph, vertex, depth: int) -> set:
    """All ranges of paths out of ``vertex`` with length and edge indices
    bounded by ``depth``."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if isinstance(graph, ModelGraph):
        out = {vertex}
        z = vertex.left
        for n in range(1, depth + 1):
            zn = graph.z_system.power(z, n)
            for m in range(1, depth + 1):
                out.add(PairPoint(zn, graph.x_point(m)))
        return out
    if isinstance(graph, OneVertexLoopGraph):
        return {graph.vertex}
    # finite discrete graph: breadth-first over reversed edges
    out = {vertex}
    frontier = {vertex}
    for _ in range(depth):
        nxt = set()
        for e in graph.edges:
            if graph.d(e) in frontier:
                nxt.add(graph.r(e))
        frontier = nxt - out
        out |= nxt
        if not frontier:
            break
    return out


def witness_path(graph: ModelGraph, x: Point, z: Point, k: int) -> FinitePath:
    """The length-(k+1) path from (rho^-(k+1) z, x) to (z, x_1): first an
    index-1 edge, then k index-k edges walking the inverse orbit."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sys = graph.z_system
    edges = [ModelEdge(sys.power(z, -1), graph.x_point(k), 1)]
    for i in range(2, k + 1):
        edges.append(ModelEdge(sys.power(z, -i), graph.x_point(k), k))
    edges.append(ModelEdge(sys.power(z, -(k + 1)), x, k))
    return FinitePath(graph, tuple(edges))


# ---------------------------------------------------------------------------
# index sets and path boxes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexSet:
    """A finite or cofinite subset of the positive integers."""

    members: frozenset[int]
    cofinite: bool = False  # True: complement of ``members``

    def __post_init__(self):
        if any(i < 1 for i in self.members):
            raise ValueError("edge indices start at 1")

    def contains(self, m: int) -> bool:
        return (m not in self.members) if self.cofinite else (m in self.members)

    def is_empty(self) -> bool:
        return not self.cofinite and not self.members

    def intersect(self, other: "IndexSet") -> "IndexSet":
        if not self.cofinite and not other.cofinite:
            return IndexSet(self.members & other.members)
        if self.cofinite and other.cofinite:
            return IndexSet(self.members | other.members, True)
        fin, cof = (self, other) if not self.cofinite else (other, self)
        return IndexSet(frozenset(m for m in fin.members if m not in cof.members))

    def some_members(self, count: int) -> list[int]:
        if not self.cofinite:
            return sorted(self.members)[:count]
        out, m = [], 1
        while len(out) < count:
            if m not in self.members:
                out.append(m)
            m += 1
        return out


ALL_INDICES = IndexSet(frozenset(), True)


@dataclass(frozen=True)
class EdgeBox:
    """A box of model-graph edges: (z box) x (x box) x (index set)."""

    zbox: Box
    xbox: Box
    indices: IndexSet

    def is_empty(self) -> bool:
        return box_is_empty(self.zbox) or box_is_empty(self.xbox) or self.indices.is_empty()

    def contains(self, e: ModelEdge) -> bool:
        return (
            box_contains(self.zbox, e.z)
            and box_contains(self.xbox, e.x)
            and self.indices.contains(e.m)
        )

    def intersect(self, other: "EdgeBox") -> "EdgeBox":
        return EdgeBox(
            box_intersect(self.zbox, other.zbox),
            box_intersect(self.xbox, other.xbox),
            self.indices.intersect(other.indices),
        )


@dataclass(frozen=True)
class OpenPathBox:
    """A box of length-n paths: one EdgeBox per coordinate.

    Membership additionally imposes the path constraints, so the box
    denotes (product box) intersected with the path space.
    """

    graph: ModelGraph
    coords: tuple[EdgeBox, ...]

    def __post_init__(self):
        if not self.coords:
            raise GraphError("path boxes must have length >= 1")

    def __len__(self):
        return len(self.coords)

    def contains(self, path: FinitePath) -> bool:
        if len(path) != len(self.coords):
            return False
        return all(cb.contains(e) for cb, e in zip(self.coords, path.edges))

    def truncate(self, k: int) -> "OpenPathBox":
        return OpenPathBox(self.graph, self.coords[:k])

    def r_image(self):
        """(z box, x points) of ranges of member paths; the first
        coordinate's index set must be finite for the x part to be a
        finite set of dense-sequence points."""
        first = self.coords[0]
        if first.indices.cofinite:
            return None
        zimg = self.graph.z_system.translate_box(first.zbox, 1)
        xpts = [self.graph.x_point(m) for m in sorted(first.indices.members)]
        return zimg, xpts

    def d_image(self):
        """The box of domains of member paths: last coordinate's z and x.

        Exact for path-saturated boxes (the witness boxes are: the final
        x is free and every base point in the translate is realised); in
        general it is a superset of the set-level image.
        """
        last = self.coords[-1]
        return last.zbox, last.xbox

    def _z_chain(self):
        """The exact box of admissible base points for the last edge."""
        sys = self.graph.z_system
        n = len(self.coords)
        zc = self.coords[-1].zbox
        for i, cb in enumerate(self.coords[:-1]):
            zc = box_intersect(zc, sys.translate_box(cb.zbox, -(n - 1 - i)))
        return zc

    def _index_choice(self, i: int):
        """An index for coordinate i compatible with the x constraint of
        coordinate i-1, or None if provably none exists.

        Finite index sets are scanned exactly.  A cofinite set always
        admits a choice when the x box is non-empty: the box contains a
        basic open, whose representative recurs at infinitely many dense-
        sequence positions; the scan below therefore terminates.
        """
        g = self.graph
        idx = self.coords[i].indices
        if i == 0:
            cands = idx.some_members(1)
            return cands[0] if cands else None
        xbox = self.coords[i - 1].xbox
        if box_is_empty(xbox):
            return None
        if not idx.cofinite:
            for m in sorted(idx.members):
                if box_contains(xbox, g.x_point(m)):
                    return m
            return None
        m = 1
        while True:
            if idx.contains(m) and box_contains(xbox, g.x_point(m)):
                return m
            m += 1

    def sample_path(self) -> FinitePath | None:
        """An explicit member path, or None exactly when the box is empty."""
        g = self.graph
        sys = g.z_system
        n = len(self.coords)
        zc = self._z_chain()
        if box_is_empty(zc) or box_is_empty(self.coords[-1].xbox):
            return None
        chosen: list[int] = []
        for i in range(n):
            m = self._index_choice(i)
            if m is None:
                return None
            chosen.append(m)
        z_last = box_rep_point(zc)
        x_last = box_rep_point(self.coords[-1].xbox)
        edges = []
        for i in range(n):
            z_i = sys.power(z_last, (n - 1 - i))
            x_i = x_last if i == n - 1 else g.x_point(chosen[i + 1])
            edges.append(ModelEdge(z_i, x_i, chosen[i]))
        return FinitePath(g, tuple(edges))

    def is_empty(self) -> bool:
        """Exact emptiness: the transported z constraints must intersect,
        the final x box must be non-empty, and each coordinate must admit
        an index whose dense-sequence value meets the previous x box."""
        if any(cb.is_empty() for cb in self.coords):
            return True
        if box_is_empty(self._z_chain()):
            return True
        return any(self._index_choice(i) is None for i in range(len(self.coords)))


def pitchfork(u: OpenPathBox, v: OpenPathBox) -> OpenPathBox | None:
    """Truncate both boxes to the minimum length and intersect them
    coordinatewise; None is the empty marker."""
    k = min(len(u), len(v))
    coords = tuple(a.intersect(b) for a, b in zip(u.coords[:k], v.coords[:k]))
    if any(cb.is_empty() for cb in coords):
        return None
    return OpenPathBox(u.graph, coords)


# ---------------------------------------------------------------------------
# contracting witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContractingWitness:
    """V = (z box) x (x box) in the vertex space, plus path boxes U_1..U_N."""

    graph: ModelGraph
    v_zbox: Box
    v_xbox: Box
    path_boxes: tuple[OpenPathBox, ...]

    @property
    def n(self) -> int:
        return len(self.path_boxes)


class WitnessSearchError(GraphError):
    pass


def _box_closure_targets(b: Box):
    """Closure of a box as data for exact coverage checks."""
    return b


def _covers_space(system: MinimalSystem, boxes: list[Box], target: Box | None) -> bool:
    """Does the union of open boxes cover the closure of ``target``
    (None: the whole space)?  Exact per backend."""
    backend = system.backend
    if backend.kind == "circle":
        arcs: list[Arc] = []
        for b in boxes:
            if isinstance(b, CircleBox):
                if b.full:
                    return True
                arcs.extend(b.arcs)
        return circle_covered_by_arcs(tuple(arcs), target)
    if backend.kind == "cantor":
        words = []
        for b in boxes:
            words.extend(b.words)
        return cantor_covered_by_words(words, target)
    if isinstance(backend, FiniteBackend):
        got = set()
        for b in boxes:
            got |= set(b.indices)
        need = set(range(backend.size)) if target is None else set(target.indices)
        return need <= got
    raise TypeError(f"coverage not supported on {backend!r}")


def point_outside_closure(backend: SpaceBackend, b: Box) -> Point | None:
    """A point outside the closure of the box, or None if the closure is
    the whole space.  Closures are decided syntactically per box kind."""
    if isinstance(b, CircleBox):
        if b.full:
            return None
        if not b.arcs:
            return CirclePointZero()
        # complement of the closed arcs is a finite union of open arcs;
        # try the midpoint after each arc end
        for a in b.arcs:
            cand_start = (a.start + a.length).mod1()
            # find distance to the next arc start going forward
            best = QPhi(1)
            for other in b.arcs:
                gap = (other.start - cand_start).mod1()
                if QPhi(0) < gap < best:
                    best = gap
            if best > QPhi(0):
                cand = (cand_start + best / 2).mod1()
                if not any(x.contains(cand, closed=True) for x in b.arcs):
                    from .spaces import CirclePoint

                    return CirclePoint(cand)
        return None
    if isinstance(b, CantorBox):
        if b.is_full():
            return None
        depth = max((len(w) for w in b.words), default=0)
        for v in range(1 << depth):
            word = tuple((v >> j) & 1 for j in range(depth))
            if not any(word[: len(w)] == w for w in b.words):
                from .spaces import PadicPoint

                return PadicPoint(word, (0,))
        return None
    if isinstance(b, FiniteBox):
        if b.size is None:
            missing = 0
            while missing in b.indices:
                missing += 1
            return FinitePoint(missing, None)
        for i in range(b.size):
            if i not in b.indices:
                return FinitePoint(i, b.size)
        return None
    raise TypeError(f"unsupported box {b!r}")


def CirclePointZero():
    from .spaces import CirclePoint

    return CirclePoint(QPhi(0))


def make_witness_path_box(graph: ModelGraph, u_zbox: Box, k: int) -> OpenPathBox:
    """The box of all witness paths with z ranging over ``u_zbox`` and the
    final x coordinate free."""
    sys = graph.z_system
    full_x = graph.x_backend.full_box()
    coords = [EdgeBox(sys.translate_box(u_zbox, -1), full_x, IndexSet(frozenset({1})))]
    for i in range(2, k + 1):
        coords.append(
            EdgeBox(sys.translate_box(u_zbox, -i), full_x, IndexSet(frozenset({k})))
        )
    coords.append(
        EdgeBox(sys.translate_box(u_zbox, -(k + 1)), full_x, IndexSet(frozenset({k})))
    )
    return OpenPathBox(graph, tuple(coords))


def find_contracting_witness(
    graph: ModelGraph, u_zbox: Box, v_xbox: Box, cap: int = 200
) -> ContractingWitness:
    """Find the least N whose inverse-orbit translates of ``u_zbox`` cover
    Z, and assemble the witness V = u_zbox x v_xbox with path boxes
    U_1..U_N.

    Preconditions: both boxes non-empty, the closure of V a proper
    subset of the vertex space, and the first dense-sequence point of X
    inside ``v_xbox`` (the ranges of all witness paths have x = x_1).
    """
    sys = graph.z_system
    if box_is_empty(u_zbox) or box_is_empty(v_xbox):
        raise WitnessSearchError("U and V_X must be non-empty")
    x1 = graph.x_point(1)
    if not box_contains(v_xbox, x1):
        raise WitnessSearchError("V_X must contain the first dense-sequence point x_1")
    if point_outside_closure(sys.backend, u_zbox) is None and (
        point_outside_closure(graph.x_backend, v_xbox) is None
    ):
        raise WitnessSearchError("closure(U x V_X) must be a proper subset of the vertex space")
    translates: list[Box] = []
    n = 0
    while n < cap:
        n += 1
        translates.append(sys.translate_box(u_zbox, -(n + 1)))
        if _covers_space(sys, translates, None):
            break
    else:
        raise WitnessSearchError(f"no cover of Z within {cap} translates")
    boxes = tuple(make_witness_path_box(graph, u_zbox, k) for k in range(1, n + 1))
    return ContractingWitness(graph, u_zbox, v_xbox, boxes)


@dataclass(frozen=True)
class WitnessReport:
    ranges_inside: bool
    pairwise_disjoint: bool
    domains_cover_strictly: bool
    exterior_point: object
    details: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.ranges_inside and self.pairwise_disjoint and self.domains_cover_strictly


def _open_box_covers_closure(backend: SpaceBackend, open_box: Box, target: Box) -> bool:
    """Does the open box contain the closure of the target box?  Exact
    for arcs, cylinders, finite sets and products of those."""
    if isinstance(open_box, CircleBox):
        if open_box.full:
            return True
        return circle_covered_by_arcs(open_box.arcs, target)
    if isinstance(open_box, CantorBox):
        return cantor_covered_by_words(open_box.words, target)
    if isinstance(open_box, FiniteBox):
        return target.indices <= open_box.indices
    if isinstance(open_box, ProductBox) and isinstance(target, ProductBox):
        return _open_box_covers_closure(
            backend.left, open_box.left, target.left
        ) and _open_box_covers_closure(backend.right, open_box.right, target.right)
    raise TypeError("unsupported closure coverage check")


def _box_subset(inner: Box, outer: Box, system: MinimalSystem) -> bool:
    """inner subset of outer, exactly; used for z parts of r-images."""
    if isinstance(inner, CircleBox) and isinstance(outer, CircleBox):
        if outer.full:
            return True
        if inner.full:
            return False
        # open arcs inside an open union: sweep each arc as an open target
        lifted = []
        for a in outer.arcs:
            for k in (-1, 0, 1, 2):
                lifted.append((a.start + QPhi(k), a.start + a.length + QPhi(k)))
        from .spaces import _cover_line

        return all(
            _cover_line(a.start, a.start + a.length, lifted, False) for a in inner.arcs
        )
    if isinstance(inner, CantorBox) and isinstance(outer, CantorBox):
        return cantor_covered_by_words(outer.words, inner)
    if isinstance(inner, FiniteBox) and isinstance(outer, FiniteBox):
        return inner.indices <= outer.indices
    raise TypeError("unsupported subset check")


def verify_contracting_witness(witness: ContractingWitness) -> WitnessReport:
    """Check the three contracting conditions, each exactly:

    (i)   ranges of every path box lie inside V;
    (ii)  the path boxes are pairwise pitchfork-disjoint;
    (iii) the closure of V is covered by the union of the domains, and
          some explicit point of that union lies outside the closure.
    """
    g = witness.graph
    sys = g.z_system
    details = []

    cond_i = True
    for idx, pb in enumerate(witness.path_boxes):
        img = pb.r_image()
        if img is None:
            cond_i = False
            details.append(f"U_{idx + 1}: cofinite first index set, range not a finite x set")
            continue
        zimg, xpts = img
        if not _box_subset(zimg, witness.v_zbox, sys):
            cond_i = False
            details.append(f"U_{idx + 1}: z-range escapes V")
        if not all(box_contains(witness.v_xbox, x) for x in xpts):
            cond_i = False
            details.append(f"U_{idx + 1}: x-range escapes V")

    cond_ii = True
    for a in range(len(witness.path_boxes)):
        for b in range(a + 1, len(witness.path_boxes)):
            if pitchfork(witness.path_boxes[a], witness.path_boxes[b]) is not None:
                cond_ii = False
                details.append(f"U_{a + 1} and U_{b + 1} are not pitchfork-disjoint")

    d_zboxes = [pb.d_image()[0] for pb in witness.path_boxes]
    covers = _covers_space(sys, d_zboxes, _box_closure_targets(witness.v_zbox))
    # sufficient decidable form of product coverage: the z domains cover
    # closure(U) while every single x domain covers closure(V_X)
    x_full = all(
        _open_box_covers_closure(g.x_backend, pb.d_image()[1], witness.v_xbox)
        for pb in witness.path_boxes
    )
    exterior = None
    z_out = point_outside_closure(sys.backend, witness.v_zbox)
    x_out = point_outside_closure(g.x_backend, witness.v_xbox)
    if z_out is not None:
        # (z_out, anything in some domain x-box); domains have full x part
        for pb in witness.path_boxes:
            dz, dx = pb.d_image()
            if box_contains(dz, z_out) and not box_is_empty(dx):
                exterior = PairPoint(z_out, box_rep_point(dx))
                break
    if exterior is None and x_out is not None:
        for pb in witness.path_boxes:
            dz, dx = pb.d_image()
            if box_contains(dx, x_out) and not box_is_empty(dz):
                exterior = PairPoint(box_rep_point(dz), x_out)
                break
    cond_iii = covers and x_full and exterior is not None
    if not covers:
        details.append("domains do not cover the closure of V in the Z factor")
    if not x_full:
        details.append("domain x parts do not cover the closure of V_X")
    if exterior is None:
        details.append("no exterior witness point: closure(V) is not strictly contained")

    return WitnessReport(cond_i, cond_ii, cond_iii, exterior, tuple(details))
