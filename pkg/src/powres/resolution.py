"""Oriented and homogenized chain complexes of the cubical complex.

Differentials are sparse: ``diffs[i]`` maps ``(row, col)`` to a term
``(coefficient, monomial)``, rows indexing the basis in degree i - 1 and
columns the basis in degree i.  Every entry is a single term, so no
polynomial arithmetic is needed except when composing maps.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Hashable, Sequence

from .cubes import CellComplex, Cube, cube_vertices, faces
from .monomial import Monomial, MonomialIdeal, Ring, shift
from .tree import RootedTree, same_generators

Term = tuple[int, Monomial]
SparseMatrix = dict[tuple[int, int], Term]


@dataclass
class GradedComplex:
    """A (possibly augmented) complex of free modules with monomial-term matrices.

    ``diffs[0]`` is unused (empty); ``diffs[i]`` maps degree i to i - 1.
    ``labels[i][k]`` is the multidegree of basis element k in degree i,
    or None for an ungraded complex.  ``augmentation`` lists the images of
    the degree-0 basis in the ring (generators of the ideal resolved).
    """

    ring: Ring
    bases: list[list[Hashable]]
    diffs: list[SparseMatrix]
    labels: list[list[Monomial]] | None = None
    augmentation: list[Monomial] | None = None
    index: list[dict[Hashable, int]] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = [{b: k for k, b in enumerate(basis)} for basis in self.bases]

    @property
    def length(self) -> int:
        """Largest i with a nonzero module."""
        nz = [i for i, b in enumerate(self.bases) if b]
        return nz[-1] if nz else -1

    def rank(self, i: int) -> int:
        return len(self.bases[i]) if 0 <= i < len(self.bases) else 0

    def ranks(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    def column(self, i: int, col: int) -> dict[int, Term]:
        return {row: t for (row, c), t in self.diffs[i].items() if c == col}

    def dense(self, i: int) -> list[list[int]]:
        """Scalar coefficient matrix of the i-th differential."""
        rows, cols = self.rank(i - 1), self.rank(i)
        m = [[0] * cols for _ in range(rows)]
        for (r, c), (coef, _) in self.diffs[i].items():
            m[r][c] = coef
        return m

    def copy(self) -> "GradedComplex":
        return GradedComplex(
            self.ring,
            [list(b) for b in self.bases],
            [dict(d) for d in self.diffs],
            None if self.labels is None else [list(x) for x in self.labels],
            None if self.augmentation is None else list(self.augmentation),
        )


def cell_label(tree: RootedTree, c: Cube) -> Monomial:
    """m^b times, for each direction j, the variables of m_tau(j) missing from m_j.

    Exponent vectors index the tree's vertices, which need not follow the
    generator order of the ideal the tree came from.
    """
    m = tree.labels
    out = _label_power(tree, c.sink)
    for j in c.directions:
        out = out * (m[tree.tau(j)] / m[tree.tau(j)].gcd(m[j]))
    return out


def _label_power(tree: RootedTree, a: Sequence[int]) -> Monomial:
    out = tree.ring.one()
    for g, k in zip(tree.labels, a):
        out = out * g**k
    return out


def brute_force_label(tree: RootedTree, c: Cube) -> Monomial:
    """lcm of the vertex labels over all 2^|B| corners of the cube."""
    out = tree.ring.one()
    for a in cube_vertices(tree, c):
        out = out.lcm(_label_power(tree, a))
    return out


def _boundary(tree: RootedTree, c: Cube) -> list[tuple[int, Cube, int]]:
    """(sign, face, direction) triples of the cellular boundary.

    With B = {j_1 < ... < j_i}: C(b, B - j_k) carries (-1)^(k+1) and
    C(b - f_j_k + f_tau(j_k), B - j_k) carries (-1)^k.
    """
    fs = faces(tree, c)
    i = c.dim
    out = []
    for k, j in enumerate(c.directions, start=1):
        out.append(((-1) ** (k + 1), fs[k - 1], j))
        out.append(((-1) ** k, fs[i + k - 1], j))
    return out


def oriented_chain_complex(cx: CellComplex) -> GradedComplex:
    ring = cx.tree.ring
    one = ring.one()
    diffs: list[SparseMatrix] = [{}]
    for i in range(1, len(cx.cells)):
        d: SparseMatrix = {}
        for col, c in enumerate(cx.cells[i]):
            for sign, f, _ in _boundary(cx.tree, c):
                d[(cx.index[f], col)] = (sign, one)
        diffs.append(d)
    return GradedComplex(ring, [list(g) for g in cx.cells], diffs)


def homogenize(cx: CellComplex, I: MonomialIdeal | None = None) -> GradedComplex:
    """The labelled complex with lcm-ratio coefficients, augmented onto the generators of I^r.

    The coefficient in front of C(b, B - j) is lcm(m_j, m_tau(j)) / m_j and
    in front of C(b - f_j + f_tau(j), B - j) it is lcm(m_j, m_tau(j)) / m_tau(j).
    """
    tree = cx.tree
    m = tree.labels
    if I is not None and not same_generators(m, I):
        raise ValueError("tree labels are not the generators of the ideal")
    diffs: list[SparseMatrix] = [{}]
    for i in range(1, len(cx.cells)):
        d: SparseMatrix = {}
        for col, c in enumerate(cx.cells[i]):
            for sign, f, j in _boundary(tree, c):
                edge = m[j].lcm(m[tree.tau(j)])
                coef = edge / m[j] if f.sink == c.sink else edge / m[tree.tau(j)]
                d[(cx.index[f], col)] = (sign, coef)
        diffs.append(d)
    labels = [[cell_label(tree, c) for c in group] for group in cx.cells]
    aug = [_label_power(tree, c.sink) for c in cx.cells[0]]
    return GradedComplex(tree.ring, [list(g) for g in cx.cells], diffs, labels, aug)


def homogenize_by_lcm(cx: CellComplex) -> GradedComplex:
    """Homogenization straight from the definition: coefficient lcm(c) / lcm(c')."""
    tree = cx.tree
    labels = [[brute_force_label(tree, c) for c in group] for group in cx.cells]
    diffs: list[SparseMatrix] = [{}]
    for i in range(1, len(cx.cells)):
        d: SparseMatrix = {}
        for col, c in enumerate(cx.cells[i]):
            for sign, f, _ in _boundary(tree, c):
                row = cx.index[f]
                d[(row, col)] = (sign, labels[i][col] / labels[i - 1][row])
        diffs.append(d)
    aug = [_label_power(tree, c.sink) for c in cx.cells[0]]
    return GradedComplex(tree.ring, [list(g) for g in cx.cells], diffs, labels, aug)


def simplify_ratios(tree: RootedTree, b: Sequence[int], B: Sequence[int], i: int):
    """Compare brute-force label ratios of a cube and its two faces across direction i.

    Returns ``(ratio_upper, ratio_lower, ok)`` where ok means the ratios are
    lcm(m_i, m_tau(i)) / m_i and lcm(m_i, m_tau(i)) / m_tau(i).
    """
    b = tuple(b)
    B = tuple(sorted(B))
    if i not in B or not all(b[j] > 0 for j in B) or 0 in B:
        raise ValueError(f"need i in B and B inside supp(b); got i={i}, B={B}, b={b}")
    rest = tuple(j for j in B if j != i)
    whole = brute_force_label(tree, Cube(b, B))
    upper = whole / brute_force_label(tree, Cube(b, rest))
    lower = whole / brute_force_label(tree, Cube(shift(b, plus=tree.tau(i), minus=i), rest))
    edge = tree.edge_label(i)
    ok = upper == edge / tree.labels[i] and lower == edge / tree.labels[tree.tau(i)]
    return upper, lower, ok


def betti_formula(q: int, r: int, t: int) -> int:
    if t < 0 or t > min(q, r):
        return 0
    return comb(q, t) * comb(q + r - t, r - t)


def betti_numbers(q: int, r: int) -> tuple[int, ...]:
    return tuple(betti_formula(q, r, t) for t in range(min(q, r) + 1))


def pd_formula(q: int, r: int) -> tuple[int, int]:
    """(pd of I^r, pd of I^r / I^(r+1)); the second is reported, not verified."""
    pd_power = min(q, r)
    pd_quotient = q + 1 if r >= q - 1 else r + 2
    return pd_power, pd_quotient


# ---------------------------------------------------------------------------
# algebra on sparse term matrices


def compose(
    outer: SparseMatrix, inner: SparseMatrix
) -> dict[tuple[int, int], dict[tuple[int, ...], int]]:
    """outer @ inner with polynomial entries ``{exponents: coefficient}``, zeros dropped."""
    by_row: dict[int, list[tuple[int, Term]]] = defaultdict(list)
    for (r, c), t in outer.items():
        by_row[c].append((r, t))
    out: dict[tuple[int, int], dict[tuple[int, ...], int]] = defaultdict(lambda: defaultdict(int))
    for (mid, col), (c2, m2) in inner.items():
        for row, (c1, m1) in by_row.get(mid, ()):
            out[(row, col)][(m1 * m2).exponents] += c1 * c2
    return {
        k: {e: v for e, v in poly.items() if v}
        for k, poly in out.items()
        if any(poly.values())
    }


def augmentation_defects(F: GradedComplex) -> dict[int, dict[tuple[int, ...], int]]:
    """Columns of the first differential not killed by the augmentation."""
    if F.augmentation is None or len(F.diffs) < 2:
        return {}
    acc: dict[int, dict[tuple[int, ...], int]] = defaultdict(lambda: defaultdict(int))
    for (r, c), (coef, mono) in F.diffs[1].items():
        acc[c][(mono * F.augmentation[r]).exponents] += coef
    return {c: {e: v for e, v in p.items() if v} for c, p in acc.items() if any(p.values())}


def homogeneity_defects(F: GradedComplex) -> list[tuple[int, int, int]]:
    """Entries (i, row, col) where coefficient * label(row) != label(col)."""
    if F.labels is None:
        return []
    bad = []
    for i in range(1, len(F.diffs)):
        for (r, c), (_, mono) in F.diffs[i].items():
            if mono * F.labels[i - 1][r] != F.labels[i][c]:
                bad.append((i, r, c))
    if F.augmentation is not None and F.labels:
        for k, (g, lab) in enumerate(zip(F.augmentation, F.labels[0])):
            if g != lab:
                bad.append((0, k, k))
    return bad


def unit_entries(F: GradedComplex) -> list[tuple[int, int, int]]:
    """Nonzero entries whose monomial is 1 (these break minimality)."""
    return [
        (i, r, c)
        for i in range(1, len(F.diffs))
        for (r, c), (coef, mono) in F.diffs[i].items()
        if coef and mono.is_one
    ]
