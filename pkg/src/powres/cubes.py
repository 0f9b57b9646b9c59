"""The power graph G^r of a rooted tree and its cubical cell complex.

Vertices of G^r are the compositions ``a`` of r into q + 1 parts, embedded
in Z^q by ``phi(a) = Phi @ (a_1, ..., a_q)``.  Edges replace one factor
v_tau(i) by v_i.  A cell is keyed by its sink ``b`` and a direction set
``B`` contained in supp(b); geometry (coordinates, vertex sets) is derived
from the key on demand.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .monomial import ExponentVector, enumerate_Nr, shift, supp, unit_vector, vadd
from .tree import RootedTree, path_matrix

DEFAULT_MAX_CELLS = 200_000

Point = tuple[int, ...]


class ResourceLimitError(RuntimeError):
    pass


def max_cells() -> int:
    return int(os.environ.get("POWRES_MAX_CELLS", DEFAULT_MAX_CELLS))


@dataclass(frozen=True, order=True)
class Cube:
    sink: ExponentVector
    directions: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    def __str__(self) -> str:
        dirs = "{" + ",".join(map(str, self.directions)) + "}"
        return f"C({','.join(map(str, self.sink))}; {dirs})"


class Embedding:
    """phi for a fixed rooted tree; caches the path matrix."""

    def __init__(self, tree: RootedTree):
        self.tree = tree
        self.matrix = path_matrix(tree)

    def __call__(self, a: Sequence[int]) -> Point:
        q = self.tree.q
        return tuple(sum(self.matrix[i][j] * a[j + 1] for j in range(q)) for i in range(q))


def phi_injective(tree: RootedTree, r: int) -> tuple[bool, tuple[ExponentVector, ExponentVector] | None]:
    """Is phi one-to-one on N_r?  Returns a colliding pair if not."""
    phi = Embedding(tree)
    seen: dict[Point, ExponentVector] = {}
    for a in enumerate_Nr(tree.q, r):
        p = phi(a)
        if p in seen:
            return False, (seen[p], a)
        seen[p] = a
    return True, None


def cube(tree: RootedTree, b: Sequence[int], B: Iterable[int]) -> Cube:
    b = tuple(b)
    if len(b) != tree.q + 1:
        raise ValueError(f"sink {b} has the wrong length for q = {tree.q}")
    if any(x < 0 for x in b):
        raise ValueError(f"sink {b} has a negative entry")
    B = tuple(sorted(set(B)))
    if not set(B) <= set(supp(b)):
        raise ValueError(f"directions {B} not contained in supp{b} = {supp(b)}")
    return Cube(b, B)


def source(tree: RootedTree, c: Cube) -> ExponentVector:
    a = c.sink
    for i in c.directions:
        a = shift(a, plus=tree.tau(i), minus=i)
    return a


def cube_vertices(tree: RootedTree, c: Cube) -> list[ExponentVector]:
    """The 2^|B| compositions at the corners, indexed like subsets of B (bitmask order)."""
    out = []
    d = c.directions
    for mask in range(1 << len(d)):
        a = c.sink
        for k, i in enumerate(d):
            if (mask >> k) & 1:
                a = shift(a, plus=tree.tau(i), minus=i)
        out.append(a)
    return out


def faces(tree: RootedTree, c: Cube) -> list[Cube]:
    """Codimension-one faces: first all C(b, B - j_k), then all C(b - f_j_k + f_tau(j_k), B - j_k)."""
    upper = []
    lower = []
    for j in c.directions:
        rest = tuple(x for x in c.directions if x != j)
        upper.append(Cube(c.sink, rest))
        lower.append(Cube(shift(c.sink, plus=tree.tau(j), minus=j), rest))
    return upper + lower


def all_faces(tree: RootedTree, c: Cube) -> set[Cube]:
    """Every face of c (including c), in closed form: C(b - sum_{C'}(f_i - f_tau(i)), B - C)."""
    out = set()
    for k in range(len(c.directions) + 1):
        for removed in combinations(c.directions, k):
            rest = tuple(x for x in c.directions if x not in removed)
            for j in range(len(removed) + 1):
                for moved in combinations(removed, j):
                    b = c.sink
                    for i in moved:
                        b = shift(b, plus=tree.tau(i), minus=i)
                    out.add(Cube(b, rest))
    return out


def translate(c: Cube, j: int) -> Cube:
    return Cube(shift(c.sink, plus=j), c.directions)


@dataclass
class PowerGraph:
    tree: RootedTree
    r: int
    vertices: list[ExponentVector]
    edges: list[tuple[ExponentVector, ExponentVector, int]]
    coords: dict[ExponentVector, Point]


def power_graph(tree: RootedTree, r: int) -> PowerGraph:
    """Build G^r from its definition: for W in N_{r-1} and a tree edge e_i, join W v_tau(i) -> W v_i."""
    if r < 1:
        raise ValueError("r must be positive")
    q = tree.q
    phi = Embedding(tree)
    vertices = enumerate_Nr(q, r)
    edges = set()
    for w in enumerate_Nr(q, r - 1):
        for i in range(1, q + 1):
            edges.add((vadd(w, unit_vector(tree.tau(i), q)), vadd(w, unit_vector(i, q)), i))
    pos = {v: k for k, v in enumerate(vertices)}
    ordered = sorted(edges, key=lambda e: (pos[e[1]], e[2]))
    return PowerGraph(tree, r, vertices, ordered, {v: phi(v) for v in vertices})


def cell_count(q: int, r: int, t: int) -> int:
    if t < 0 or t > min(q, r):
        return 0
    return comb(q, t) * comb(q + r - t, r - t)


@dataclass
class CellComplex:
    """The cubical complex on G^r, cells grouped by dimension in canonical order."""

    tree: RootedTree
    r: int
    cells: list[list[Cube]]
    index: dict[Cube, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {}
        for group in self.cells:
            for k, c in enumerate(group):
                self.index[c] = k

    @property
    def q(self) -> int:
        return self.tree.q

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.cells)

    def all_cells(self) -> Iterator[Cube]:
        for group in self.cells:
            yield from group

    def __contains__(self, c: Cube) -> bool:
        return c in self.index

    @cached_property
    def embedding(self) -> Embedding:
        return Embedding(self.tree)

    def coords(self, a: Sequence[int]) -> Point:
        return self.embedding(a)

    def vertex_points(self, c: Cube) -> frozenset[Point]:
        return frozenset(self.embedding(a) for a in cube_vertices(self.tree, c))

    def box(self, c: Cube) -> tuple[Point, Point]:
        """Lower and upper corner of the cube as an axis-parallel box."""
        hi = self.embedding(c.sink)
        lo = tuple(x - (1 if i + 1 in c.directions else 0) for i, x in enumerate(hi))
        return lo, hi


def assemble_complex(tree: RootedTree, r: int) -> CellComplex:
    """All cubes C(b, B) with b in N_r and B a subset of supp(b)."""
    if r < 1:
        raise ValueError("r must be positive")
    q = tree.q
    total = sum(cell_count(q, r, t) for t in range(min(q, r) + 1))
    if total > max_cells():
        raise ResourceLimitError(
            f"complex for q={q}, r={r} has {total} cells, above the limit of {max_cells()} "
            "(set POWRES_MAX_CELLS to raise it)"
        )
    top = min(q, r)
    cells: list[list[Cube]] = [[] for _ in range(top + 1)]
    for b in enumerate_Nr(q, r):
        s = supp(b)
        for t in range(len(s) + 1):
            for B in combinations(s, t):
                cells[t].append(Cube(b, B))
    cx = CellComplex(tree, r, cells)
    # distinct keys must give distinct geometric cubes
    seen: dict[tuple, Cube] = {}
    for c in cx.all_cells():
        key = cx.box(c)
        if key in seen:
            raise AssertionError(f"cells {seen[key]} and {c} occupy the same cube")
        seen[key] = c
    return cx


# ---------------------------------------------------------------------------
# validation


@dataclass
class PolyhedralReport:
    ok: bool
    pairs_checked: int
    violations: list[tuple[Cube, Cube, str]] = field(default_factory=list)


def is_face(tree: RootedTree, f: Cube, c: Cube) -> bool:
    return f in all_faces(tree, c)


def _box_intersection(p: tuple[Point, Point], s: tuple[Point, Point]):
    lo = tuple(map(max, p[0], s[0]))
    hi = tuple(map(min, p[1], s[1]))
    if any(a > b for a, b in zip(lo, hi)):
        return None
    return lo, hi


def intersection_by_proof(cx: CellComplex, c1: Cube, c2: Cube) -> Cube | None:
    """The common face C(c, C) with C = (B - B0) & (D - D0), B0/D0 minimal."""
    phi = cx.embedding
    tree = cx.tree
    pb, pd = phi(c1.sink), phi(c2.sink)
    best = None
    for k in range(len(c1.directions) + 1):
        for B0 in combinations(c1.directions, k):
            pt = tuple(x - (1 if i + 1 in B0 else 0) for i, x in enumerate(pb))
            diff = tuple(y - x for x, y in zip(pt, pd))
            # pt is a vertex of the second cube iff pd - pt is a 0/1 vector supported in D
            if all(d in (0, 1) for d in diff) and all(
                d == 0 or (i + 1) in c2.directions for i, d in enumerate(diff)
            ):
                D0 = tuple(i + 1 for i, d in enumerate(diff) if d)
                if best is None or len(B0) < len(best[0]):
                    best = (B0, D0)
        if best is not None:
            break
    if best is None:
        return None
    B0, D0 = best
    c = c1.sink
    for i in B0:
        c = shift(c, plus=tree.tau(i), minus=i)
    C = tuple(sorted((set(c1.directions) - set(B0)) & (set(c2.directions) - set(D0))))
    return Cube(c, C)


def validate_polyhedral(cx: CellComplex) -> PolyhedralReport:
    """Check that any two cells meet in a common face (or not at all).

    Two independent routes: intersect the solid boxes coordinate-wise and
    look the result up among the cells, and rebuild the common face from
    the minimal direction sets as in the classical argument.  Both must
    agree and be faces of both cells.
    """
    by_box = {cx.box(c): c for c in cx.all_cells()}
    cells = list(cx.all_cells())
    face_sets = {c: all_faces(cx.tree, c) for c in cells}
    violations = []
    pairs = 0
    for x in range(len(cells)):
        c1 = cells[x]
        for y in range(x + 1, len(cells)):
            c2 = cells[y]
            pairs += 1
            meet = _box_intersection(cx.box(c1), cx.box(c2))
            proof = intersection_by_proof(cx, c1, c2)
            if meet is None:
                if proof is not None:
                    violations.append((c1, c2, f"disjoint boxes but constructed face {proof}"))
                continue
            common = by_box.get(meet)
            if common is None:
                violations.append((c1, c2, f"intersection box {meet} is not a cell"))
                continue
            if common not in face_sets[c1] or common not in face_sets[c2]:
                violations.append((c1, c2, f"{common} is not a face of both"))
            if proof != common:
                violations.append((c1, c2, f"constructed face {proof} differs from {common}"))
    return PolyhedralReport(not violations, pairs, violations)


def check_face_closure(cx: CellComplex) -> list[tuple[Cube, Cube]]:
    """Faces (iterated through ``faces``) missing from the complex."""
    missing = []
    for c in cx.all_cells():
        stack = [c]
        while stack:
            d = stack.pop()
            for f in faces(cx.tree, d):
                if f not in cx:
                    missing.append((c, f))
                else:
                    stack.append(f)
    return missing


def check_source_sink(cx: CellComplex) -> list[Cube]:
    """Cells whose induced subgraph of phi(G^r) lacks a unique source/sink at the claimed corners."""
    graph = power_graph(cx.tree, cx.r)
    phi = cx.embedding
    out_edges: dict[Point, set[Point]] = {}
    for a, b, _ in graph.edges:
        out_edges.setdefault(phi(a), set()).add(phi(b))
    bad = []
    for c in cx.all_cells():
        pts = cx.vertex_points(c)
        indeg = {p: 0 for p in pts}
        outdeg = {p: 0 for p in pts}
        n_edges = 0
        for p in pts:
            for s in out_edges.get(p, ()):
                if s in pts:
                    outdeg[p] += 1
                    indeg[s] += 1
                    n_edges += 1
        sources = [p for p in pts if indeg[p] == 0]
        sinks = [p for p in pts if outdeg[p] == 0]
        expected_edges = c.dim * 2 ** (c.dim - 1) if c.dim else 0
        if (
            sources != [phi(source(cx.tree, c))]
            or sinks != [phi(c.sink)]
            or n_edges != expected_edges
        ):
            bad.append(c)
    return bad


def edge_sets(tree: RootedTree, r: int) -> tuple[set, set, set]:
    """Edges of G^r three ways: by definition, by the exponent rule, by coordinates.

    Each set holds (a, b) pairs of compositions.
    """
    q = tree.q
    phi = Embedding(tree)
    verts = enumerate_Nr(q, r)
    by_def = {(a, b) for a, b, _ in power_graph(tree, r).edges}
    by_exp = set()
    by_coord = set()
    coords = {v: phi(v) for v in verts}
    for a in verts:
        for b in verts:
            d = tuple(y - x for x, y in zip(a, b))
            for i in range(1, q + 1):
                if d == vadd(unit_vector(i, q), tuple(-x for x in unit_vector(tree.tau(i), q))):
                    by_exp.add((a, b))
            diff = tuple(y - x for x, y in zip(coords[a], coords[b]))
            if sorted(diff) == [0] * (q - 1) + [1]:
                by_coord.add((a, b))
    return by_def, by_exp, by_coord


@dataclass
class CoveringReport:
    ok: bool
    uncovered: list[Cube]
    stray: list[Cube]


def covering_check(tree: RootedTree, r: int) -> CoveringReport:
    """Every cube of G^{r+1} is a translate t_j of a cube of G^r (requires r >= q)."""
    if r < tree.q:
        raise ValueError(f"covering needs r >= q, got r={r} < q={tree.q}")
    small = assemble_complex(tree, r)
    big = assemble_complex(tree, r + 1)
    images = {translate(c, j) for c in small.all_cells() for j in range(tree.q + 1)}
    uncovered = [c for c in big.all_cells() if c not in images]
    stray = sorted(c for c in images if c not in big)
    return CoveringReport(not uncovered and not stray, uncovered, stray)
