"""Digraphs, direct products and s-arcs.

A digraph here is an irreflexive antisymmetric relation on {0, ..., n-1}, stored as
sorted out-neighbor tuples. An s-arc is a tuple ``(v0, ..., vs)`` with each
consecutive pair an arc. The orbit computations in this module are the direct
oracle that every group-theoretic criterion is compared against.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from arctest.algebra.perm import Perm, invert
from arctest.algebra.permgroup import PermGroup
from arctest.core.errors import (
    AntisymmetryError,
    InvalidDigraphError,
    NotAutomorphismError,
    NotTransitiveError,
    ProductFactorError,
    ReflexiveArcError,
    VertexRangeError,
)

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]
SArc = Tuple[int, ...]


class Digraph:
    """Vertex count plus sorted out-neighbor tuples, validated on construction."""

    def __init__(self, n: int, out: Sequence[Iterable[int]]):
        if n < 0:
            raise InvalidDigraphError(f"vertex count must be non-negative, got {n}")
        if len(out) != n:
            raise InvalidDigraphError(f"expected {n} out-neighbor lists, got {len(out)}")
        self.n = n
        self.out: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(set(row))) for row in out)
        self._out_sets: Optional[List[FrozenSet[int]]] = None
        self._in: Optional[Tuple[Tuple[int, ...], ...]] = None
        self._validate()

    def _validate(self) -> None:
        for u, row in enumerate(self.out):
            for v in row:
                if not 0 <= v < self.n:
                    raise VertexRangeError(f"arc ({u}, {v}) leaves the vertex set of size {self.n}")
                if v == u:
                    raise ReflexiveArcError(f"loop at vertex {u}")
        sets = self.out_sets
        for u, row in enumerate(self.out):
            for v in row:
                if u in sets[v]:
                    raise AntisymmetryError(f"both ({u}, {v}) and ({v}, {u}) are arcs")

    @property
    def out_sets(self) -> List[FrozenSet[int]]:
        if self._out_sets is None:
            self._out_sets = [frozenset(row) for row in self.out]
        return self._out_sets

    @property
    def in_neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        if self._in is None:
            rows: List[List[int]] = [[] for _ in range(self.n)]
            for u, row in enumerate(self.out):
                for v in row:
                    rows[v].append(u)
            self._in = tuple(tuple(row) for row in rows)
        return self._in

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out == other.out

    def __hash__(self) -> int:
        return hash((self.n, self.out))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arc_count})"

    @property
    def arc_count(self) -> int:
        return sum(len(row) for row in self.out)

    def arcs(self) -> Iterator[Arc]:
        for u, row in enumerate(self.out):
            for v in row:
                yield u, v

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_sets[u]

    def is_automorphism(self, perm: Perm) -> bool:
        if perm.degree != self.n:
            return False
        images = perm.images
        sets = self.out_sets
        return all(images[v] in sets[images[u]] for u, row in enumerate(self.out) for v in row)

    def relabel(self, perm: Perm) -> "Digraph":
        """The digraph with arcs (u^p, v^p)."""
        images = perm.images
        rows: List[List[int]] = [[] for _ in range(self.n)]
        for u, row in enumerate(self.out):
            rows[images[u]] = [images[v] for v in row]
        return Digraph(self.n, rows)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.arcs())
        return graph

    def to_json(self) -> Dict[str, object]:
        return {"n": self.n, "arcs": [list(arc) for arc in self.arcs()]}


def new_digraph(n: int, arcs: Iterable[Sequence[int]]) -> Digraph:
    """Validate an arc list; duplicates are merged.

    Raises:
        VertexRangeError: If an endpoint is not below ``n``
        ReflexiveArcError: For a loop
        AntisymmetryError: For a pair of opposite arcs
    """
    rows: List[List[int]] = [[] for _ in range(max(n, 0))]
    for arc in arcs:
        if len(arc) != 2:
            raise InvalidDigraphError(f"arc must have two endpoints: {list(arc)}")
        u, v = int(arc[0]), int(arc[1])
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"arc ({u}, {v}) leaves the vertex set of size {n}")
        rows[u].append(v)
    return Digraph(n, rows)


def regularity(graph: Digraph) -> Optional[int]:
    """Common in- and out-valency, or None if the digraph is not regular."""
    if graph.n == 0:
        return 0
    k = len(graph.out[0])
    if any(len(row) != k for row in graph.out):
        return None
    if any(len(row) != k for row in graph.in_neighbors):
        return None
    return k


def is_connected(graph: Digraph) -> bool:
    """Whether the underlying undirected graph is connected."""
    if graph.n <= 1:
        return True
    return nx.is_weakly_connected(graph.to_networkx())


def is_directed_cycle(graph: Digraph) -> bool:
    return regularity(graph) == 1 and is_connected(graph)


def direct_product(left: Digraph, right: Digraph) -> Digraph:
    """(u1, v1) -> (u2, v2) iff u1 -> u2 and v1 -> v2; vertex (u, v) has index u * |right| + v."""
    m = right.n
    rows = []
    for u in range(left.n):
        for v in range(m):
            rows.append([x * m + y for x in left.out[u] for y in right.out[v]])
    return Digraph(left.n * m, rows)


def power(graph: Digraph, m: int) -> Digraph:
    """Direct product of ``m`` copies; tuple (x1, ..., xm) is the base-n number x1...xm."""
    if m < 1:
        raise ValueError(f"power needs m >= 1, got {m}")
    result = graph
    for _ in range(m - 1):
        result = direct_product(graph, result)
    return result


def enumerate_s_arcs(graph: Digraph, s: int) -> List[SArc]:
    """All s-arcs in lexicographic order."""
    _check_s(s)
    arcs: List[SArc] = [(v,) for v in range(graph.n)]
    for _ in range(s):
        arcs = [arc + (w,) for arc in arcs for w in graph.out[arc[-1]]]
    return arcs


def count_s_arcs(graph: Digraph, s: int) -> int:
    """Number of s-arcs, by counting walks backwards from their last vertex."""
    _check_s(s)
    counts = [1] * graph.n
    for _ in range(s):
        counts = [sum(counts[w] for w in row) for row in graph.out]
    return sum(counts)


def first_s_arc(graph: Digraph, s: int) -> Optional[SArc]:
    """Lexicographically least s-arc, or None if there is none."""
    _check_s(s)
    # layers[j][v]: some j-arc starts at v
    ok = [True] * graph.n
    layers = [ok]
    for _ in range(s):
        ok = [any(ok[w] for w in row) for row in graph.out]
        layers.append(ok)
    if not any(layers[s]):
        return None
    start = next(v for v in range(graph.n) if layers[s][v])
    arc = [start]
    for remaining in range(s - 1, -1, -1):
        arc.append(next(w for w in graph.out[arc[-1]] if layers[remaining][w]))
    return tuple(arc)


def _check_s(s: int) -> None:
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s}")


def require_automorphisms(graph: Digraph, group: PermGroup) -> None:
    """Raises NotAutomorphismError unless every generator preserves the arcs."""
    if group.degree != graph.n:
        raise NotAutomorphismError(f"group degree {group.degree} != vertex count {graph.n}")
    for index, g in enumerate(group.generators):
        if not graph.is_automorphism(g):
            raise NotAutomorphismError(f"generator {index} does not preserve the arc set")


def tuple_orbit(group: PermGroup, start: Sequence[int], limit: Optional[int] = None) -> Set[SArc]:
    """Orbit of a vertex tuple under the generators; stops once it exceeds ``limit``."""
    gens = [g.images for g in group.generators]
    first = tuple(start)
    seen = {first}
    stack = [first]
    while stack:
        current = stack.pop()
        for images in gens:
            image = tuple(map(images.__getitem__, current))
            if image not in seen:
                seen.add(image)
                if limit is not None and len(seen) > limit:
                    return seen
                stack.append(image)
    return seen


def is_G_s_arc_transitive(graph: Digraph, group: PermGroup, s: int) -> bool:  # noqa: N802
    """Whether the orbit of one s-arc is the set of all s-arcs.

    Raises:
        NotAutomorphismError: If a generator does not preserve the arcs
    """
    require_automorphisms(graph, group)
    total = count_s_arcs(graph, s)
    arc = first_s_arc(graph, s)
    if arc is None:
        return True
    size = len(tuple_orbit(group, arc, limit=total))
    logger.debug("s=%d: orbit %d of %d s-arcs", s, size, total)
    return size == total


def stabilizer_chain_criterion(graph: Digraph, group: PermGroup, s: int) -> bool:
    """s-arc-transitivity from stabilizer orders along the first s-arc.

    For an arc-transitive group, the digraph is s-arc-transitive iff for every
    1 <= i < s the stabilizer of (v1..vi) is the product of the stabilizers of
    (v0..vi) and (v1..v(i+1)); the two meet in the stabilizer of (v0..v(i+1)).

    Raises:
        NotAutomorphismError: If a generator does not preserve the arcs
    """
    if not is_G_s_arc_transitive(graph, group, 1):
        return False
    arc = first_s_arc(graph, s)
    if arc is None or s < 2:
        return True
    head = group.prefix_stabilizer_orders(arc)
    tail = group.prefix_stabilizer_orders(arc[1:])
    for i in range(1, s):
        if head[i + 2] * tail[i] != head[i + 1] * tail[i + 1]:
            logger.debug("chain criterion fails at i=%d", i)
            return False
    return True


@dataclass(frozen=True)
class ProductFactor:
    """A recovered factor Σ with the relabeling h such that power(Σ, m) == Γ^h.

    Attributes:
        factor: The digraph Σ on the coordinate set
        relabeling: The vertex permutation h of Γ
        coordinate_maps: h_1, ..., h_m acting on coordinates (h_1 is the identity)
    """

    factor: Digraph
    relabeling: Perm
    coordinate_maps: Tuple[Perm, ...]


def decode(vertex: int, size: int, m: int) -> Tuple[int, ...]:
    coords = []
    for _ in range(m):
        vertex, digit = divmod(vertex, size)
        coords.append(digit)
    return tuple(reversed(coords))


def encode(coords: Sequence[int], size: int) -> int:
    vertex = 0
    for digit in coords:
        vertex = vertex * size + digit
    return vertex


def extract_product_factor(
    graph: Digraph,
    delta_size: int,
    m: int,
    group: PermGroup,
    arc: Arc,
    component: Optional[PermGroup] = None,
) -> ProductFactor:
    """Recover Σ with Γ^h = Σ^m from an arc (α, ..., α) -> (β1, ..., βm).

    Each h_i is drawn from the stabilizer of α in ``component`` (default ``group``)
    and carries β_i to β1. Σ has the arcs α^n -> β1^n for n in ``group``.

    Raises:
        ProductFactorError: If the arc is not of the stated shape, no h_i exists,
            or power(Σ, m) differs from the relabeled digraph
        NotTransitiveError: If ``group`` is not transitive on the coordinates
    """
    if delta_size ** m != graph.n:
        raise ProductFactorError(f"{graph.n} vertices is not {delta_size}^{m}")
    if group.degree != delta_size:
        raise ProductFactorError(f"group degree {group.degree} != coordinate count {delta_size}")
    if not group.is_transitive():
        raise NotTransitiveError("the coordinate group must be transitive")
    u, v = arc
    if not graph.has_arc(u, v):
        raise ProductFactorError(f"({u}, {v}) is not an arc")
    source = decode(u, delta_size, m)
    target = decode(v, delta_size, m)
    alpha = source[0]
    if any(coord != alpha for coord in source):
        raise ProductFactorError(f"arc tail {source} is not a constant tuple")

    stabilizer = (component or group).point_stabilizer(alpha)
    beta = target[0]
    carry = _orbit_transversal(delta_size, stabilizer.generators, beta)
    maps: List[Perm] = []
    for coord in target:
        if coord not in carry:
            raise ProductFactorError(f"no element fixing {alpha} carries {coord} to {beta}")
        maps.append(invert(carry[coord]))

    relabel_images = tuple(
        encode([maps[i].images[x] for i, x in enumerate(decode(w, delta_size, m))], delta_size)
        for w in range(graph.n)
    )
    relabeling = Perm._trusted(relabel_images)
    relabeled = graph.relabel(relabeling)

    pairs = tuple_orbit(group, (alpha, beta))
    try:
        factor = new_digraph(delta_size, pairs)
    except InvalidDigraphError as exc:
        raise ProductFactorError(f"recovered arc set is not a digraph: {exc}") from exc
    if power(factor, m) != relabeled:
        raise ProductFactorError("power of the recovered factor differs from the relabeled digraph")
    logger.debug("recovered factor with %d arcs", factor.arc_count)
    return ProductFactor(factor, relabeling, tuple(maps))


def _orbit_transversal(degree: int, generators: Sequence[Perm], root: int) -> Dict[int, Perm]:
    transversal = {root: Perm.identity(degree)}
    queue = deque([root])
    while queue:
        point = queue.popleft()
        u = transversal[point]
        for s in generators:
            image = s.images[point]
            if image not in transversal:
                transversal[image] = u * s
                queue.append(image)
    return transversal
