"""Trees supporting the minimal free resolution of a pd-1 monomial ideal.

Vertices of a rooted tree carry the generators of the ideal.  After
``root_and_label`` the root is vertex 0 and every other vertex i has a
parent ``tau(i) < i``; the edge ``e_i`` runs from ``tau(i)`` to ``i``.

A tree supports a (cellular) resolution iff, for every multidegree
``b``, the subgraph induced on the vertices whose label divides ``x^b``
is connected or empty.  Only the finitely many lcms of generators need
to be tested: the induced vertex set at any ``b`` coincides with the one
at the lcm of the generators dividing ``x^b``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .monomial import Monomial, MonomialIdeal


class NotATreeError(ValueError):
    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


class NotProjectiveDimensionOne(ValueError):
    """No tree on the generators supports a minimal resolution.

    ``certificate`` holds the closest candidate tree (as an edge list) and
    a multidegree at which it fails.
    """

    def __init__(self, message: str, certificate: dict | None = None):
        super().__init__(message)
        self.certificate = certificate or {}


class IntakeError(ValueError):
    """The ideal is outside the class handled here (not square-free, too many generators)."""


@dataclass(frozen=True)
class RootedTree:
    labels: tuple[Monomial, ...]
    parents: tuple[int, ...]  # parents[i - 1] == tau(i)

    def __post_init__(self):
        if len(self.parents) != len(self.labels) - 1:
            raise ValueError("need exactly one parent per non-root vertex")
        for i, p in enumerate(self.parents, start=1):
            if not 0 <= p < i:
                raise ValueError(f"vertex {i} has parent {p}; labels must increase away from the root")

    @property
    def q(self) -> int:
        return len(self.labels) - 1

    @property
    def ring(self):
        return self.labels[0].ring

    def tau(self, i: int) -> int:
        if not 1 <= i <= self.q:
            raise IndexError(f"edge index {i} outside 1..{self.q}")
        return self.parents[i - 1]

    def edges(self) -> list[tuple[int, int]]:
        """Directed edges (tau(i), i), listed by i."""
        return [(self.parents[i - 1], i) for i in range(1, self.q + 1)]

    def edge_label(self, i: int) -> Monomial:
        return self.labels[i].lcm(self.labels[self.tau(i)])

    def path_to_root(self, j: int) -> list[int]:
        """Edge indices on the path from v_0 to v_j, nearest the root first."""
        path = []
        while j != 0:
            path.append(j)
            j = self.parents[j - 1]
        return path[::-1]


@dataclass
class SupportReport:
    ok: bool
    minimal_edges: bool
    disconnected: list[Monomial] = field(default_factory=list)
    nonminimal_edges: list[int] = field(default_factory=list)
    degrees_checked: int = 0

    @property
    def witness(self) -> Monomial | None:
        return self.disconnected[0] if self.disconnected else None


def root_and_label(
    labels: Sequence[Monomial], edges: Sequence[tuple[int, int]], root: int = 0
) -> RootedTree:
    """Relabel an unrooted tree so that indices increase away from ``root``.

    Breadth-first from the root; siblings are visited in lexicographic
    order of their monomials (larger first), so the result depends only
    on the labelled tree and the root, not on the input numbering.
    """
    n = len(labels)
    if not 0 <= root < n:
        raise ValueError(f"root {root} is not a vertex")
    if len(edges) != n - 1:
        raise NotATreeError(f"{n} vertices need {n - 1} edges, got {len(edges)}", list(edges))
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise NotATreeError(f"bad edge ({u}, {v})", (u, v))
        adj[u].append(v)
        adj[v].append(u)

    order = [root]
    parent_of = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u], key=lambda w: (labels[w].sort_key(), w)):
            if v in parent_of:
                if parent_of[u] != v:
                    raise NotATreeError("cycle through edge", (u, v))
                continue
            parent_of[v] = u
            order.append(v)
            queue.append(v)
    if len(order) != n:
        missing = sorted(set(range(n)) - set(order))
        raise NotATreeError("graph is disconnected", missing)

    new_index = {old: new for new, old in enumerate(order)}
    parents = tuple(new_index[parent_of[old]] for old in order[1:])
    return RootedTree(tuple(labels[old] for old in order), parents)


def path_matrix(tree: RootedTree) -> list[list[int]]:
    """Edge/vertex path incidence: entry (i, j) is 1 iff e_i lies on the path v_0 -> v_j.

    Rows and columns are indexed 1..q (stored 0-based).
    """
    q = tree.q
    phi = [[0] * q for _ in range(q)]
    for j in range(1, q + 1):
        for i in tree.path_to_root(j):
            phi[i - 1][j - 1] = 1
    return phi


def lcm_lattice(monos: Sequence[Monomial]) -> list[Monomial]:
    """All lcms of nonempty subsets, built incrementally with deduplication."""
    seen: set[tuple[int, ...]] = set()
    out: list[Monomial] = []
    for m in monos:
        new = [m] + [m.lcm(x) for x in out]
        for x in new:
            if x.exponents not in seen:
                seen.add(x.exponents)
                out.append(x)
    return out


def _vertex_masks(labels: Sequence[Monomial]) -> list[tuple[Monomial, int]]:
    masks = []
    for b in lcm_lattice(labels):
        mask = 0
        for v, m in enumerate(labels):
            if m.divides(b):
                mask |= 1 << v
        masks.append((b, mask))
    return masks


def _connected_on(mask: int, edges: Sequence[tuple[int, int]]) -> bool:
    # a forest restricted to a vertex set is connected iff it has |set| - 1 edges there
    inside = sum(1 for u, v in edges if (mask >> u) & 1 and (mask >> v) & 1)
    return inside == bin(mask).count("1") - 1


def same_generators(labels: Sequence[Monomial], I: MonomialIdeal) -> bool:
    """Do the labels list the generators of I, in some order and in the same ring?"""
    return labels[0].ring == I.ring and sorted(m.exponents for m in labels) == sorted(
        g.exponents for g in I.generators
    )


def validate_support(tree: RootedTree, I: MonomialIdeal) -> SupportReport:
    if not same_generators(tree.labels, I):
        raise ValueError("tree labels do not match the generators of the ideal")
    nonminimal = [
        i for i in range(1, tree.q + 1) if tree.edge_label(i) in (tree.labels[i], tree.labels[tree.tau(i)])
    ]
    edges = tree.edges()
    masks = _vertex_masks(tree.labels)
    bad = [b for b, mask in masks if mask and not _connected_on(mask, edges)]
    bad.sort(key=lambda m: (m.degree, m.sort_key()))
    return SupportReport(
        ok=not bad and not nonminimal,
        minimal_edges=not nonminimal,
        disconnected=bad,
        nonminimal_edges=nonminimal,
        degrees_checked=len(masks),
    )


def prufer_to_edges(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence over vertices 0..n-1 into a sorted edge list."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = next(u for u in range(n) if degree[u] == 1)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return sorted(edges)


def spanning_trees(n: int) -> Iterator[list[tuple[int, int]]]:
    """Spanning trees of K_n in lexicographic order of their Prüfer sequences."""
    if n <= 2:
        yield prufer_to_edges((), n)
        return
    for seq in product(range(n), repeat=n - 2):
        yield prufer_to_edges(seq, n)


def check_intake(I: MonomialIdeal) -> None:
    if not I.is_squarefree:
        bad = next(g for g in I.generators if not g.is_squarefree)
        raise IntakeError(f"ideal is not square-free: {bad}")
    if I.q + 1 > I.ring.n:
        raise IntakeError(
            f"{I.q + 1} square-free generators in {I.ring.n} variables: "
            "a projective dimension one ideal has at most as many generators as variables"
        )


def build_support_tree(I: MonomialIdeal, root: int = 0) -> RootedTree:
    """Exhaustive search for a tree supporting the minimal resolution of ``I``.

    Candidates are the spanning trees of the complete graph on the
    generators, in Prüfer order; the first one passing every lcm-lattice
    connectivity test wins, and is then rooted at generator ``root``.
    """
    check_intake(I)
    labels = I.generators
    n = len(labels)
    if not 0 <= root < n:
        raise ValueError(f"root {root} is not a generator index")
    lattice = [(b, mask) for b, mask in _vertex_masks(labels) if mask]
    # a degree divisible by exactly two generators forces that edge
    forced = set()
    for _, mask in lattice:
        members = tuple(k for k in range(n) if (mask >> k) & 1)
        if len(members) == 2:
            forced.add(members)

    for edges in spanning_trees(n):
        if forced.issubset(edges) and all(_connected_on(mask, edges) for _, mask in lattice):
            return root_and_label(labels, edges, root)

    best = None
    for edges in spanning_trees(n):
        failures = [b for b, mask in lattice if not _connected_on(mask, edges)]
        if best is None or len(failures) < len(best[1]):
            best = (edges, failures)
    edges, failures = best
    failures.sort(key=lambda m: (m.degree, m.sort_key()))
    raise NotProjectiveDimensionOne(
        f"no spanning tree on the generators of {I} supports a resolution; "
        f"best candidate {edges} fails at {len(failures)} multidegree(s), e.g. {failures[0]}",
        {"edges": edges, "multidegree": failures[0], "failures": len(failures)},
    )


def format_tree(tree: RootedTree) -> str:
    """Tree text format: ``label: i <monomial>`` and ``edge: i j`` lines."""
    lines = [f"vars: {','.join(tree.ring.names)}"]
    lines += [f"label: {i} {m}" for i, m in enumerate(tree.labels)]
    lines += [f"edge: {u} {v}" for u, v in tree.edges()]
    return "\n".join(lines) + "\n"


def parse_tree(text: str, ring=None) -> tuple[list[Monomial], list[tuple[int, int]]]:
    """Parse the tree text format into (labels, edges); feed to ``root_and_label``."""
    from .monomial import Ring, parse_monomial

    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    names = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        if key == "vars":
            names = tuple(v.strip() for v in rest.replace(" ", ",").split(",") if v.strip())
        elif key == "label":
            idx, _, mono = rest.strip().partition(" ")
            labels[int(idx)] = mono.strip()
        elif key == "edge":
            parts = rest.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'edge: i j'")
            edges.append((int(parts[0]), int(parts[1])))
        else:
            raise ValueError(f"line {lineno}: unknown record {key!r}")
    if sorted(labels) != list(range(len(labels))):
        raise ValueError("vertex labels must be numbered 0..q without gaps")
    if ring is None:
        if names is None:
            raise ValueError("tree file needs a 'vars:' line or an explicit ring")
        ring = Ring(names)
    monos = [parse_monomial(labels[i], ring) for i in range(len(labels))]
    return monos, edges


def tree_for_ideal(I: MonomialIdeal, labels: Sequence[Monomial], edges, root: int = 0) -> RootedTree:
    """Root a user-supplied tree whose labels must be the generators of ``I``."""
    if not same_generators(labels, I):
        raise ValueError("tree labels do not match the generators of the ideal")
    return root_and_label(labels, edges, root)
