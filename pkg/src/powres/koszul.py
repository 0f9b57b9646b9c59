"""The degree-r strand of the Koszul complex on the tree syzygies.

Over S = R[T_0, ..., T_q] the syzygies of I coming from the tree edges are

    g_k = lcm(m_k, m_tau(k)) / m_k * T_k  -  lcm(m_k, m_tau(k)) / m_tau(k) * T_tau(k)

for k = 1..q.  The T-degree r strand of their Koszul complex has basis
``e_J (x) T^w`` with J a subset of {1..q} of size i and w a composition of
r - i.  Elements of S are stored as dicts from T-exponent vectors to
(coefficient, R-monomial) terms; there is no general polynomial engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cubes import CellComplex, Cube
from .monomial import ExponentVector, Monomial, MonomialIdeal, enumerate_Nr, shift
from .resolution import GradedComplex, SparseMatrix
from .tree import RootedTree


@dataclass(frozen=True)
class SyzygyGenerator:
    index: int
    terms: tuple[tuple[int, int, Monomial], ...]  # (T index, sign, coefficient monomial)

    def evaluate(self, labels) -> dict[tuple[int, ...], int]:
        """Substitute T_i -> m_i; the syzygy property says the result is zero."""
        acc: dict[tuple[int, ...], int] = {}
        for t, sign, coef in self.terms:
            key = (coef * labels[t]).exponents
            acc[key] = acc.get(key, 0) + sign
        return {k: v for k, v in acc.items() if v}

    def format(self) -> str:
        parts = []
        for t, sign, coef in self.terms:
            s = f"{coef}*T{t}" if not coef.is_one else f"T{t}"
            parts.append(("- " if sign < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def syzygy_generators(tree: RootedTree, I: MonomialIdeal | None = None) -> list[SyzygyGenerator]:
    m = tree.labels
    gens = []
    for k in range(1, tree.q + 1):
        t = tree.tau(k)
        edge = m[k].lcm(m[t])
        g = SyzygyGenerator(k, ((k, 1, edge / m[k]), (t, -1, edge / m[t])))
        if g.evaluate(m):
            raise AssertionError(f"g_{k} is not a syzygy")
        gens.append(g)
    return gens


def colex_subsets(q: int, i: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(1, q + 1), i), key=lambda s: tuple(reversed(s)))


@dataclass
class StrandComplex(GradedComplex):
    """A GradedComplex whose basis elements are (J, w) pairs."""

    r: int = 0
    syzygies: list[SyzygyGenerator] = field(default_factory=list)


def _t_label(tree: RootedTree, w) -> Monomial:
    out = tree.ring.one()
    for g, k in zip(tree.labels, w):
        out = out * g**k
    return out


def koszul_strand(tree: RootedTree, r: int, I: MonomialIdeal | None = None) -> StrandComplex:
    """Strand 0 -> ... -> wedge^i F (x) S_{r-i} -> ... -> S_r, augmented onto I^r."""
    if r < 1:
        raise ValueError("r must be positive")
    q = tree.q
    gens = syzygy_generators(tree, I)
    top = min(q, r)
    bases = [[(J, w) for J in colex_subsets(q, i) for w in enumerate_Nr(q, r - i)] for i in range(top + 1)]
    index = [{b: k for k, b in enumerate(basis)} for basis in bases]

    diffs: list[SparseMatrix] = [{}]
    for i in range(1, top + 1):
        d: dict[tuple[int, int], dict[tuple[int, ...], int]] = {}
        for col, (J, w) in enumerate(bases[i]):
            for k, j in enumerate(J, start=1):
                rest = J[: k - 1] + J[k:]
                for t, sign, coef in gens[j - 1].terms:
                    row = index[i - 1][(rest, shift(w, plus=t))]
                    poly = d.setdefault((row, col), {})
                    key = coef.exponents
                    poly[key] = poly.get(key, 0) + (-1) ** (k - 1) * sign
        mat: SparseMatrix = {}
        for pos, poly in d.items():
            poly = {e: v for e, v in poly.items() if v}
            if not poly:
                continue
            if len(poly) != 1:
                raise AssertionError(f"entry {pos} of the strand differential is not a single term")
            (e, v), = poly.items()
            mat[pos] = (v, tree.ring.monomial(e))
        diffs.append(mat)

    labels = []
    for i in range(top + 1):
        row = []
        for J, w in bases[i]:
            lab = _t_label(tree, w)
            for j in J:
                lab = lab * tree.edge_label(j)
            row.append(lab)
        labels.append(row)
    aug = [_t_label(tree, w) for _, w in bases[0]]
    return StrandComplex(tree.ring, bases, diffs, labels, aug, r=r, syzygies=gens)


def rho(c: Cube) -> tuple[tuple[int, ...], ExponentVector]:
    """u_C(b,B) -> e_B (x) T^(b - sum_{i in B} f_i)."""
    w = c.sink
    for i in c.directions:
        w = shift(w, minus=i)
    return c.directions, w


@dataclass
class IsoReport:
    ok: bool
    bijective: bool
    degree_preserving: bool
    mismatches: list[tuple[int, Cube]]


def rho_isomorphism(F: GradedComplex, K: GradedComplex) -> IsoReport:
    """Check that rho is a graded basis bijection commuting with the differentials."""
    if len(F.bases) != len(K.bases) or F.ranks() != K.ranks():
        raise ValueError(f"rank mismatch: {F.ranks()} vs {K.ranks()}")
    bijective = True
    graded = True
    mapping: list[list[int]] = []
    for i, basis in enumerate(F.bases):
        images = [K.index[i].get(rho(c)) for c in basis]
        if None in images or len(set(images)) != len(images):
            bijective = False
        mapping.append(images)
        if F.labels is not None and K.labels is not None:
            for k, img in enumerate(images):
                if img is not None and F.labels[i][k] != K.labels[i][img]:
                    graded = False
    mismatches = []
    if bijective:
        for i in range(1, len(F.bases)):
            pushed = {(mapping[i - 1][r], mapping[i][c]): t for (r, c), t in F.diffs[i].items()}
            if pushed != K.diffs[i]:
                cols = {c for (_, c) in set(pushed) ^ set(K.diffs[i])}
                cols |= {c for key, t in pushed.items() if K.diffs[i].get(key) != t for c in [key[1]]}
                inverse = {img: k for k, img in enumerate(mapping[i])}
                mismatches += [(i, F.bases[i][inverse[c]]) for c in sorted(cols)]
        if F.augmentation is not None and K.augmentation is not None:
            for k, img in enumerate(mapping[0]):
                if F.augmentation[k] != K.augmentation[img]:
                    mismatches.append((0, F.bases[0][k]))
    return IsoReport(bijective and graded and not mismatches, bijective, graded, mismatches)


def strand_for_complex(cx: CellComplex) -> StrandComplex:
    return koszul_strand(cx.tree, cx.r)
