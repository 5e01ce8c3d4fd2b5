"""Boundary path spaces, the shift, and the convergence oracle.

For the model graph every vertex is singular, so the boundary consists
of all finite paths together with the infinite ones.  Infinite paths
are stored as a base point plus an eventually periodic index sequence,
the exact shift-invariant dense subfamily on which equality and the
shift are decidable.  The topology is never materialised; it is probed
through a three-condition convergence test on finitely described
sequences, with an explicit "undecidable for this description" outcome
for anything outside the supported descriptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qphi import QPhi
from .spaces import (
    CirclePoint,
    FinitePoint,
    PadicPoint,
    PairPoint,
    Point,
    _canon_ev_periodic,
    dense_indices_hitting,
)
from .graphs import (
    DiscreteEdge,
    DiscreteGraph,
    FinitePath,
    GraphError,
    ModelEdge,
    ModelGraph,
    OneVertexLoopGraph,
    vertex_path,
)


class BoundaryError(GraphError):
    pass


class ShiftDomainError(BoundaryError):
    """Raised when shifting a zero-length path (a singular vertex)."""


# ---------------------------------------------------------------------------
# eventually periodic integer sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvPeriodic:
    """head + cycle^infinity, canonical (primitive cycle, minimal head)."""

    head: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        head, cycle = _canon_ev_periodic(self.head, self.cycle)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "cycle", cycle)

    def item(self, i: int) -> int:
        if i < len(self.head):
            return self.head[i]
        return self.cycle[(i - len(self.head)) % len(self.cycle)]

    def shifted(self, n: int = 1) -> "EvPeriodic":
        if n < 0:
            raise ValueError("cannot shift backwards")
        head, cycle = self.head, self.cycle
        drop = min(n, len(head))
        head = head[drop:]
        n -= drop
        if n:
            n %= len(cycle)
            cycle = cycle[n:] + cycle[:n]
        return EvPeriodic(head, cycle)

    def cons(self, value: int) -> "EvPeriodic":
        return EvPeriodic((value,) + self.head, self.cycle)

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self.item(i) for i in range(n))


def constant_sequence(value: int) -> EvPeriodic:
    return EvPeriodic((), (value,))


# ---------------------------------------------------------------------------
# boundary paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteBoundaryPath:
    """A finite path whose domain vertex is singular."""

    path: FinitePath

    def __post_init__(self):
        g = self.path.graph
        if not g.is_singular(self.path.d()):
            raise BoundaryError(f"domain vertex {self.path.d()!r} is regular")

    @property
    def graph(self):
        return self.path.graph

    def __len__(self):
        return len(self.path)


@dataclass(frozen=True)
class InfiniteModelPath:
    """The infinite model-graph path with edges
    (rho^-i(z), x_{n_{i+1}}, n_i) for i = 1, 2, ...; canonical in (z, idx)."""

    graph: ModelGraph
    z: Point
    idx: EvPeriodic

    def __post_init__(self):
        if any(v < 1 for v in self.idx.head + self.idx.cycle):
            raise BoundaryError("edge indices must be >= 1")

    def edge_at(self, i: int) -> ModelEdge:
        """The i-th edge, i >= 1."""
        sys = self.graph.z_system
        return ModelEdge(
            sys.power(self.z, -i), self.graph.x_point(self.idx.item(i)), self.idx.item(i - 1)
        )

    def expand(self, k: int) -> FinitePath:
        return FinitePath(self.graph, tuple(self.edge_at(i) for i in range(1, k + 1)))

    def __eq__(self, other):
        if not isinstance(other, InfiniteModelPath):
            return NotImplemented
        return self.graph is other.graph and self.z == other.z and self.idx == other.idx

    def __hash__(self):
        return hash((id(self.graph), self.z, self.idx))

    def __len__(self):
        raise TypeError("infinite path; use path_length()")


@dataclass(frozen=True)
class InfiniteDiscretePath:
    """An eventually periodic infinite edge-label word in a discrete graph
    (all edges must be composable; trivially so for one-vertex graphs)."""

    graph: object
    labels: EvPeriodic

    def __post_init__(self):
        g = self.graph
        if isinstance(g, OneVertexLoopGraph):
            if any(v < 1 for v in self.labels.head + self.labels.cycle):
                raise BoundaryError("loop labels must be >= 1")
            return
        if isinstance(g, DiscreteGraph):
            by_label = {e.label: e for e in g.edges}
            probe = len(self.labels.head) + 2 * len(self.labels.cycle)
            for i in range(probe):
                a = by_label[self.labels.item(i)]
                b = by_label[self.labels.item(i + 1)]
                if g.d(a) != g.r(b):
                    raise BoundaryError(f"labels {i + 1} and {i + 2} do not compose")
            return
        raise BoundaryError(f"unsupported graph {g!r}")

    def edge_at(self, i: int) -> DiscreteEdge:
        g = self.graph
        label = self.labels.item(i - 1)
        if isinstance(g, OneVertexLoopGraph):
            return g.edge(label)
        return next(e for e in g.edges if e.label == label)

    def __eq__(self, other):
        if not isinstance(other, InfiniteDiscretePath):
            return NotImplemented
        return self.graph is other.graph and self.labels == other.labels

    def __hash__(self):
        return hash((id(self.graph), self.labels))


BoundaryPath = FiniteBoundaryPath | InfiniteModelPath | InfiniteDiscretePath

INFINITE = float("inf")


def path_length(mu: BoundaryPath):
    if isinstance(mu, FiniteBoundaryPath):
        return len(mu.path)
    return INFINITE


def range_vertex(mu: BoundaryPath):
    if isinstance(mu, FiniteBoundaryPath):
        return mu.path.r()
    if isinstance(mu, InfiniteModelPath):
        # r(first edge) = (z, x_{n_1})
        return PairPoint(mu.z, mu.graph.x_point(mu.idx.item(0)))
    return mu.graph.vertex if isinstance(mu.graph, OneVertexLoopGraph) else mu.graph.r(
        mu.edge_at(1)
    )


def prefix_path(mu: BoundaryPath, k: int) -> FinitePath:
    """The first k edges of mu as a finite path (k = 0: the range vertex)."""
    if k == 0:
        g = mu.graph if not isinstance(mu, FiniteBoundaryPath) else mu.path.graph
        return vertex_path(g, range_vertex(mu))
    if isinstance(mu, FiniteBoundaryPath):
        if k > len(mu.path):
            raise BoundaryError("prefix longer than the path")
        return FinitePath(mu.path.graph, mu.path.edges[:k])
    if isinstance(mu, InfiniteModelPath):
        return mu.expand(k)
    return FinitePath(mu.graph, tuple(mu.edge_at(i) for i in range(1, k + 1)))


def shift(mu: BoundaryPath) -> BoundaryPath:
    """Remove the first edge; defined away from the singular vertices."""
    if isinstance(mu, FiniteBoundaryPath):
        p = mu.path
        if len(p) == 0:
            raise ShiftDomainError("the shift is undefined on zero-length boundary paths")
        if len(p) == 1:
            return FiniteBoundaryPath(vertex_path(p.graph, p.d()))
        return FiniteBoundaryPath(FinitePath(p.graph, p.edges[1:]))
    if isinstance(mu, InfiniteModelPath):
        sys = mu.graph.z_system
        return InfiniteModelPath(mu.graph, sys.power(mu.z, -1), mu.idx.shifted())
    return InfiniteDiscretePath(mu.graph, mu.labels.shifted())


def shift_power(mu: BoundaryPath, n: int) -> BoundaryPath:
    if n < 0:
        raise ValueError("n must be >= 0")
    if isinstance(mu, InfiniteModelPath) and n:
        return InfiniteModelPath(
            mu.graph, mu.graph.z_system.power(mu.z, -n), mu.idx.shifted(n)
        )
    if isinstance(mu, InfiniteDiscretePath) and n:
        return InfiniteDiscretePath(mu.graph, mu.labels.shifted(n))
    out = mu
    for _ in range(n):
        out = shift(out)
    return out


# ---------------------------------------------------------------------------
# parameterizations
# ---------------------------------------------------------------------------


def param_f(graph: ModelGraph, z: Point, idx: EvPeriodic) -> InfiniteModelPath:
    """Infinite paths from (base point, index sequence)."""
    return InfiniteModelPath(graph, z, idx)


def param_f_inv(mu: InfiniteModelPath) -> tuple[Point, EvPeriodic]:
    return mu.z, mu.idx


def param_f_k(graph: ModelGraph, z: Point, x: Point, idx: tuple[int, ...]) -> FinitePath:
    """The length-k path with edges (rho^-i(z), x_{n_{i+1}}, n_i) and final
    edge (rho^-k(z), x, n_k); k = 0 gives the vertex (z, x)."""
    k = len(idx)
    if k == 0:
        return vertex_path(graph, PairPoint(z, x))
    sys = graph.z_system
    edges = []
    for i in range(1, k):
        edges.append(ModelEdge(sys.power(z, -i), graph.x_point(idx[i]), idx[i - 1]))
    edges.append(ModelEdge(sys.power(z, -k), x, idx[k - 1]))
    return FinitePath(graph, tuple(edges))


def param_f_k_inv(path: FinitePath) -> tuple[Point, Point, tuple[int, ...]]:
    if len(path) == 0:
        v = path.base
        return v.left, v.right, ()
    g = path.graph
    z = g.z_system.forward(path.edges[0].z)
    x = path.edges[-1].x
    idx = tuple(e.m for e in path.edges)
    return z, x, idx


def homeo_h(graph: ModelGraph, z: Point, nu) -> BoundaryPath:
    """The boundary homeomorphism Z x dF -> dE for one-point X: the word
    (m_1, ..., m_k) maps to the path with edges (rho^-i(z), *, m_i)."""
    if not graph.x_is_point():
        raise BoundaryError("h is only defined over a one-point X backend")
    star = graph.x_point(1)
    if isinstance(nu, FiniteBoundaryPath):
        labels = tuple(e.label for e in nu.path.edges)
        return FiniteBoundaryPath(param_f_k(graph, z, star, labels))
    if isinstance(nu, InfiniteDiscretePath):
        return InfiniteModelPath(graph, z, nu.labels)
    raise BoundaryError(f"not a boundary path of the loop graph: {nu!r}")


def homeo_h_inv(graph_f: OneVertexLoopGraph, mu: BoundaryPath) -> tuple[Point, BoundaryPath]:
    if isinstance(mu, InfiniteModelPath):
        return mu.z, InfiniteDiscretePath(graph_f, mu.idx)
    if isinstance(mu, FiniteBoundaryPath):
        g = mu.path.graph
        if not isinstance(g, ModelGraph) or not g.x_is_point():
            raise BoundaryError("h_inv expects a path of the one-point-X model graph")
        if len(mu.path) == 0:
            return mu.path.base.left, FiniteBoundaryPath(vertex_path(graph_f, graph_f.vertex))
        z, _x, idx = param_f_k_inv(mu.path)
        word = FinitePath(graph_f, tuple(graph_f.edge(m) for m in idx))
        return z, FiniteBoundaryPath(word)
    raise BoundaryError(f"unsupported path {mu!r}")


# ---------------------------------------------------------------------------
# sequence descriptions and the convergence oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantPointRule:
    """z_n = value for all n."""

    value: Point

    def limit(self) -> Point:
        return self.value

    def term(self, n: int) -> Point:
        return self.value


@dataclass(frozen=True)
class ApproachPointRule:
    """z_n -> target with d(z_n, target) = 2^-n exactly.

    On the circle: z_n = target + 2^-n.  On the Cantor backend: flip
    bit n of the target.  Either way convergence is decidable.
    """

    target: Point

    def limit(self) -> Point:
        return self.target

    def term(self, n: int) -> Point:
        t = self.target
        if isinstance(t, CirclePoint):
            return CirclePoint((t.value + QPhi(Fraction(1, 1 << (n + 1)))).mod1())
        if isinstance(t, PadicPoint):
            # agree on the first n+1 bits, flip the next, pad with zeros
            bits = list(t.bits(n + 2))
            bits[n + 1] ^= 1
            return PadicPoint(tuple(bits), (0,))
        raise BoundaryError(f"no approach rule on {t!r}")


PointSeqRule = ConstantPointRule | ApproachPointRule


@dataclass(frozen=True)
class ConstantTail:
    """mu^(n) = path for every n past the head."""

    path: BoundaryPath


@dataclass(frozen=True)
class EscapingTail:
    """mu^(n) = prefix extended by one edge whose index escapes to
    infinity through the positions where the dense sequence returns to
    the required x value.

    ``x_box_index`` selects which basic open's representative equals the
    x coordinate of d(prefix); over a one-point X it is 0.
    """

    prefix: BoundaryPath  # finite
    x_last: Point
    x_box_index: int = 0
    rep_start: int = 0

    def __post_init__(self):
        if not isinstance(self.prefix, FiniteBoundaryPath):
            raise BoundaryError("escaping tails extend a finite prefix")
        g = self.graph()
        from .spaces import box_rep_point

        target_x = self.prefix.path.d().right
        rep = box_rep_point(g.x_backend.basic_open(self.x_box_index))
        if rep != target_x:
            raise BoundaryError(
                "x_box_index must select a basic open whose representative is "
                "the x coordinate of d(prefix); otherwise the appended edges "
                "do not compose"
            )

    def graph(self) -> ModelGraph:
        return self.prefix.path.graph

    def appended_edge(self, n: int) -> ModelEdge:
        g = self.graph()
        target = self.prefix.path.d()
        # r(new edge) must equal d(prefix): (rho(z'), x_m) = (w, x*)
        idx = dense_indices_hitting(g.x_backend, self.x_box_index, self.rep_start + n + 1)[-1]
        return ModelEdge(g.z_system.power(target.left, -1), self.x_last, idx)

    def term(self, n: int) -> FiniteBoundaryPath:
        g = self.graph()
        e = self.appended_edge(n)
        tail = FinitePath(g, (e,))
        p = self.prefix.path
        full = tail if len(p) == 0 else FinitePath(g, p.edges + (e,))
        return FiniteBoundaryPath(full)


@dataclass(frozen=True)
class BasePointTail:
    """Fixed indices, moving base point: mu^(n) = f(z_n, idx) for infinite
    index data, or the length-k path with final x coordinate ``x_last``
    for a finite index tuple."""

    graph: ModelGraph
    z_rule: PointSeqRule
    idx: EvPeriodic | tuple[int, ...]
    x_last: Point | None = None

    def is_infinite(self) -> bool:
        return isinstance(self.idx, EvPeriodic)

    def term(self, n: int) -> BoundaryPath:
        z = self.z_rule.term(n)
        if self.is_infinite():
            return InfiniteModelPath(self.graph, z, self.idx)
        if self.idx == ():
            return FiniteBoundaryPath(vertex_path(self.graph, PairPoint(z, self.x_last)))
        return FiniteBoundaryPath(param_f_k(self.graph, z, self.x_last, self.idx))

    def limit_path(self) -> BoundaryPath:
        z = self.z_rule.limit()
        if self.is_infinite():
            return InfiniteModelPath(self.graph, z, self.idx)
        if self.idx == ():
            return FiniteBoundaryPath(vertex_path(self.graph, PairPoint(z, self.x_last)))
        return FiniteBoundaryPath(param_f_k(self.graph, z, self.x_last, self.idx))


@dataclass(frozen=True)
class HeadOnlyTail:
    """No tail rule: only finitely many entries are described.  Every
    convergence question about such a description is undecidable."""


TailRule = ConstantTail | EscapingTail | BasePointTail | HeadOnlyTail


@dataclass(frozen=True)
class SequenceDescription:
    """Finitely described sequence of boundary paths: explicit head
    entries (which never influence convergence) plus a tail rule."""

    head: tuple[BoundaryPath, ...]
    tail: TailRule

    def term(self, n: int) -> BoundaryPath:
        if n < len(self.head):
            return self.head[n]
        shifted = n - len(self.head)
        if isinstance(self.tail, ConstantTail):
            return self.tail.path
        if isinstance(self.tail, (EscapingTail, BasePointTail)):
            return self.tail.term(shifted)
        raise BoundaryError("head-only description has no tail terms")


PASS = "pass"
FAIL = "fail"
UNDECIDABLE = "undecidable"


@dataclass(frozen=True)
class ConvergenceReport:
    """Outcome per condition: range convergence, prefix stabilisation,
    and escape of the (|mu|+1)-th edges from every compact set."""

    ranges: str
    prefixes: str
    escape: str
    notes: tuple[str, ...] = ()

    @property
    def verdict(self) -> str:
        they = (self.ranges, self.prefixes, self.escape)
        if FAIL in they:
            return FAIL
        if UNDECIDABLE in they:
            return UNDECIDABLE
        return PASS

    @property
    def holds(self) -> bool:
        return self.verdict == PASS


def _vertices_equal(a, b) -> bool:
    return a == b


def _limit_range_of_tail(tail: TailRule):
    """The limit of r(mu^(n)) when the rule determines it; None if the
    ranges do not converge; UNDECIDABLE sentinel when unsupported."""
    if isinstance(tail, ConstantTail):
        return range_vertex(tail.path)
    if isinstance(tail, EscapingTail):
        p = tail.prefix.path
        if len(p) >= 1:
            return p.r()
        # single appended edges: r = d(prefix vertex) itself
        return p.base
    if isinstance(tail, BasePointTail):
        z_lim = tail.z_rule.limit()
        if tail.is_infinite():
            return PairPoint(z_lim, tail.graph.x_point(tail.idx.item(0)))
        if tail.idx == ():
            return PairPoint(z_lim, tail.x_last)
        first = tail.idx[0]
        return PairPoint(z_lim, tail.graph.x_point(first))
    return UNDECIDABLE


def converges(desc: SequenceDescription, mu: BoundaryPath) -> ConvergenceReport:
    """Decide whether the described sequence converges to mu.

    Three conditions are reported separately: (ranges) the range
    vertices converge to r(mu); (prefixes) every finite prefix of mu is
    eventually matched; (escape) when mu is finite, the edges one past
    its length leave every compact subset of the edge space.  The
    verdict never depends on the explicit head entries.
    """
    tail = desc.tail
    notes: list[str] = []

    if isinstance(tail, HeadOnlyTail):
        return ConvergenceReport(
            UNDECIDABLE,
            UNDECIDABLE,
            UNDECIDABLE,
            ("no tail rule: convergence is undecidable for this description",),
        )

    # (i) ranges
    lim = _limit_range_of_tail(tail)
    if lim is UNDECIDABLE:
        ranges = UNDECIDABLE
        notes.append("range limit not determined by the tail rule")
    else:
        ranges = PASS if _vertices_equal(lim, range_vertex(mu)) else FAIL

    # (ii) prefixes
    mu_len = path_length(mu)
    if isinstance(tail, ConstantTail):
        nu = tail.path
        nu_len = path_length(nu)
        if mu_len == INFINITE:
            prefixes = PASS if nu == mu else FAIL
        else:
            if nu_len < mu_len:
                prefixes = FAIL
            else:
                prefixes = (
                    PASS
                    if (mu_len == 0 or prefix_path(nu, int(mu_len)) == prefix_path(mu, int(mu_len)))
                    else FAIL
                )
    elif isinstance(tail, EscapingTail):
        pref = tail.prefix
        pl = len(pref.path)
        if mu_len == INFINITE or mu_len > pl + 1:
            prefixes = FAIL  # lengths are bounded by |prefix| + 1
        elif mu_len <= pl:
            prefixes = (
                PASS
                if (mu_len == 0 or prefix_path(pref, int(mu_len)) == prefix_path(mu, int(mu_len)))
                else FAIL
            )
        else:
            # mu_len == pl + 1: the last compared edge has escaping index
            prefixes = FAIL
            notes.append("the appended edges never stabilise: their indices escape")
    else:  # BasePointTail
        if tail.is_infinite():
            if mu_len != INFINITE:
                prefixes = PASS if mu_len == 0 else _base_point_prefixes(tail, mu)
            else:
                prefixes = (
                    PASS
                    if (
                        isinstance(mu, InfiniteModelPath)
                        and mu.graph is tail.graph
                        and mu.idx == tail.idx
                        and mu.z == tail.z_rule.limit()
                    )
                    else FAIL
                )
        else:
            k = len(tail.idx)
            if mu_len == INFINITE or mu_len > k:
                prefixes = FAIL
            else:
                prefixes = PASS if mu_len == 0 else _base_point_prefixes(tail, mu)

    # (iii) escape
    if mu_len == INFINITE:
        escape = PASS
    else:
        mu_len = int(mu_len)
        if isinstance(tail, ConstantTail):
            nu_len = path_length(tail.path)
            if nu_len <= mu_len:
                escape = PASS
            else:
                escape = FAIL
                notes.append(
                    "a constant longer path keeps its next edge inside a compact set"
                )
        elif isinstance(tail, EscapingTail):
            pl = len(tail.prefix.path)
            if pl < mu_len:
                escape = PASS  # terms are shorter than mu past that point
            elif pl == mu_len:
                escape = PASS  # appended edge indices are unbounded
            else:
                escape = FAIL
                notes.append("the edge after position |mu| is eventually constant")
        else:
            if tail.is_infinite():
                escape = FAIL
                notes.append("infinite terms with fixed indices stay in a compact set")
            else:
                k = len(tail.idx)
                if k <= mu_len:
                    escape = PASS
                else:
                    escape = FAIL
                    notes.append(
                        "terms extend past |mu| with a fixed index inside a compact space"
                    )

    return ConvergenceReport(ranges, prefixes, escape, tuple(notes))


def _base_point_prefixes(tail: BasePointTail, mu: BoundaryPath) -> str:
    """Prefix condition for moving-base terms: mu must match the
    parameterised path at the limit base point, up to its length."""
    mu_len = path_length(mu)
    limit = tail.limit_path()
    if mu_len == INFINITE:
        return PASS if limit == mu else FAIL
    k = int(mu_len)
    if k == 0:
        return PASS
    try:
        lim_prefix = prefix_path(limit, k)
    except BoundaryError:
        return FAIL
    return PASS if lim_prefix == prefix_path(mu, k) else FAIL


# ---------------------------------------------------------------------------
# serialization: line format for boundary paths
# ---------------------------------------------------------------------------


def point_token(pt: Point) -> str:
    if isinstance(pt, CirclePoint):
        return f"C:{pt.value.p}:{pt.value.q}"
    if isinstance(pt, PadicPoint):
        pre = "".join(map(str, pt.pre))
        per = "".join(map(str, pt.per))
        return f"P:{pre}.{per}"
    if isinstance(pt, FinitePoint):
        size = "*" if pt.size is None else str(pt.size)
        return f"F:{pt.index}/{size}"
    if isinstance(pt, PairPoint):
        return f"({point_token(pt.left)};{point_token(pt.right)})"
    raise TypeError(f"not a point: {pt!r}")


def point_from_token(tok: str) -> Point:
    tok = tok.strip()
    if tok.startswith("(") and tok.endswith(")"):
        depth = 0
        for i, ch in enumerate(tok):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == ";" and depth == 1:
                return PairPoint(point_from_token(tok[1:i]), point_from_token(tok[i + 1 : -1]))
        raise ValueError(f"malformed pair token {tok!r}")
    kind, _, rest = tok.partition(":")
    if kind == "C":
        p, _, q = rest.partition(":")
        return CirclePoint(QPhi(Fraction(p), Fraction(q)))
    if kind == "P":
        pre, _, per = rest.partition(".")
        return PadicPoint(tuple(map(int, pre)), tuple(map(int, per)))
    if kind == "F":
        idx, _, size = rest.partition("/")
        return FinitePoint(int(idx), None if size == "*" else int(size))
    raise ValueError(f"unknown point token {tok!r}")


def _ev_periodic_token(seq: EvPeriodic) -> str:
    head = ",".join(map(str, seq.head))
    cycle = ",".join(map(str, seq.cycle))
    return f"{head}|{cycle}"


def _ev_periodic_from_token(tok: str) -> EvPeriodic:
    head, _, cycle = tok.partition("|")
    head_t = tuple(int(v) for v in head.split(",") if v)
    cycle_t = tuple(int(v) for v in cycle.split(",") if v)
    return EvPeriodic(head_t, cycle_t)


def path_to_line(mu: BoundaryPath) -> str:
    """One-line format: ``INF z=<point> idx=<pre>|<cycle>`` for infinite
    model paths, ``FIN <edges>`` / ``FIN @<vertex>`` for finite ones, and
    the W-suffixed variants for loop-graph words."""
    if isinstance(mu, InfiniteModelPath):
        return f"INF z={point_token(mu.z)} idx={_ev_periodic_token(mu.idx)}"
    if isinstance(mu, InfiniteDiscretePath):
        return f"INFW idx={_ev_periodic_token(mu.labels)}"
    p = mu.path
    if isinstance(p.graph, OneVertexLoopGraph):
        if len(p) == 0:
            return "FINW @"
        return "FINW " + " ".join(str(e.label) for e in p.edges)
    if len(p) == 0:
        v = p.base
        return f"FIN @({point_token(v.left)};{point_token(v.right)})"
    toks = [f"({point_token(e.z)};{point_token(e.x)};{e.m})" for e in p.edges]
    return "FIN " + " ".join(toks)


def path_from_line(line: str, graph) -> BoundaryPath:
    line = line.strip()
    kind, _, rest = line.partition(" ")
    if kind == "INF":
        z_part, idx_part = rest.split(" ")
        z = point_from_token(z_part.removeprefix("z="))
        idx = _ev_periodic_from_token(idx_part.removeprefix("idx="))
        return InfiniteModelPath(graph, z, idx)
    if kind == "INFW":
        idx = _ev_periodic_from_token(rest.removeprefix("idx="))
        return InfiniteDiscretePath(graph, idx)
    if kind == "FINW":
        if rest == "@":
            return FiniteBoundaryPath(vertex_path(graph, graph.vertex))
        edges = tuple(graph.edge(int(t)) for t in rest.split())
        return FiniteBoundaryPath(FinitePath(graph, edges))
    if kind == "FIN":
        if rest.startswith("@"):
            v = point_from_token(rest[1:])
            return FiniteBoundaryPath(vertex_path(graph, v))
        edges = []
        for tok in rest.split():
            body = tok[1:-1]
            depth = 0
            parts = []
            last = 0
            for i, ch in enumerate(body):
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                elif ch == ";" and depth == 0:
                    parts.append(body[last:i])
                    last = i + 1
            parts.append(body[last:])
            z_tok, x_tok, m_tok = parts
            edges.append(ModelEdge(point_from_token(z_tok), point_from_token(x_tok), int(m_tok)))
        return FiniteBoundaryPath(FinitePath(graph, tuple(edges)))
    raise ValueError(f"unknown line kind {kind!r}")
