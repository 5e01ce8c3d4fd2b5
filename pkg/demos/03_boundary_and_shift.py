"""Boundary paths, the shift, and the convergence oracle.

Infinite paths are parameterised by a base point and an eventually
periodic index sequence; over a one-point X the whole boundary is
homeomorphic to Z x (boundary of the one-vertex loop graph), and the
topology is probed through a three-condition convergence test.
"""

from groupoidlab import (
    ConstantTail,
    EscapingTail,
    EvPeriodic,
    FiniteBoundaryPath,
    ModelEdge,
    OneVertexLoopGraph,
    PadicPoint,
    SequenceDescription,
    build_model_graph,
    converges,
    homeo_h,
    homeo_h_inv,
    odometer,
    param_f,
    path_to_line,
    point_backend,
    shift,
    vertex_path,
)
from groupoidlab.graphs import FinitePath
from groupoidlab.spaces import FinitePoint, PairPoint

graph = build_model_graph(odometer(), point_backend())
zero = PadicPoint((), (0,))
star = FinitePoint(0, 1)

print("== infinite paths ==")
mu = param_f(graph, zero, EvPeriodic((5,), (2,)))
print("path:", path_to_line(mu))
print("first three edges:")
for i in (1, 2, 3):
    print("  ", mu.edge_at(i))
print("shifted:", path_to_line(shift(mu)))

print()
print("== the boundary homeomorphism over a one-point X ==")
loop = OneVertexLoopGraph()
word = FiniteBoundaryPath(FinitePath(loop, (loop.edge(3), loop.edge(1))))
image = homeo_h(graph, zero, word)
print("h(0, word 3 1) =", path_to_line(image))
print("h inverse recovers:", homeo_h_inv(loop, image)[1].path.edges)

print()
print("== the convergence oracle ==")
v = FiniteBoundaryPath(vertex_path(graph, PairPoint(zero, star)))

constant = SequenceDescription((), ConstantTail(mu))
print("constant sequence -> itself:        ", converges(constant, mu).verdict)

escaping = SequenceDescription((), EscapingTail(v, star, 0, 0))
print("edges with escaping indices -> vertex:", converges(escaping, v).verdict)
print("   (the terms are", path_to_line(escaping.term(0)), ",",
      path_to_line(escaping.term(1)), ", ...)")

const_edge = FiniteBoundaryPath(
    FinitePath(graph, (ModelEdge(odometer().power(zero, -1), star, 7),))
)
stuck = SequenceDescription((), ConstantTail(const_edge))
rep = converges(stuck, v)
print("a constant single edge -> vertex:    ", rep.verdict,
      f"(ranges {rep.ranges}, prefixes {rep.prefixes}, escape {rep.escape})")
print("   the constant edge stays inside a compact set, so the escape")
print("   condition fails and the sequence does not converge to the vertex")
