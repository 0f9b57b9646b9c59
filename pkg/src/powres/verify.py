"""Certify that a homogenized complex is a minimal free resolution.

Exactness is checked one multidegree at a time.  For a monomial ``x^b``
the degree-b strand of a labelled complex is the complex of vector spaces
spanned by the cells whose label divides ``x^b``, with the scalar parts of
the differential as matrices.  Which cells appear depends only on which
labels divide ``x^b``, and that pattern is unchanged between ``x^b`` and
the lcm of the labels dividing it.  So the lcm lattice of the labels is a
complete list of multidegrees to test; any other ``b`` repeats one of them.

A field is an int: 0 for Q, a prime p for F_p (see ``linalg``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cubes import (
    CellComplex,
    assemble_complex,
    check_face_closure,
    check_source_sink,
    edge_sets,
    phi_injective,
    translate,
    validate_polyhedral,
)
from .linalg import QQ, field_name, rank
from .monomial import Monomial, MonomialIdeal, check_power_injectivity, enumerate_Nr, power_generator
from .resolution import (
    GradedComplex,
    augmentation_defects,
    betti_numbers,
    brute_force_label,
    cell_label,
    compose,
    homogenize,
    homogenize_by_lcm,
    simplify_ratios,
    unit_entries,
)
from .tree import RootedTree, lcm_lattice, root_and_label, spanning_trees, validate_support


def check_d_squared(F: GradedComplex) -> bool:
    """Consecutive differentials compose to zero, including the augmentation."""
    for i in range(2, len(F.diffs)):
        if compose(F.diffs[i - 1], F.diffs[i]):
            return False
    return not augmentation_defects(F)


@dataclass
class DegreeRecord:
    multidegree: Monomial
    dims: tuple[int, ...]
    ranks: tuple[int, ...]  # ranks[i] is the rank of d_i restricted; ranks[0] = 0
    homology: tuple[int, ...]

    @property
    def exact(self) -> bool:
        return self.homology[0] == 1 and not any(self.homology[1:])


@dataclass
class ExactnessReport:
    field: int
    records: list[DegreeRecord]
    augmentation_ok: bool = True

    @property
    def failures(self) -> list[DegreeRecord]:
        return [rec for rec in self.records if not rec.exact]

    @property
    def ok(self) -> bool:
        return self.augmentation_ok and not self.failures

    @property
    def witness(self) -> Monomial | None:
        bad = self.failures
        return bad[0].multidegree if bad else None

    def rank_table(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        return {rec.multidegree.exponents: rec.ranks for rec in self.records}

    def summary(self) -> str:
        head = f"exactness over {field_name(self.field)}: {len(self.records)} multidegrees"
        if self.ok:
            return head + ", all exact"
        if not self.augmentation_ok:
            return head + ", augmentation is not onto the minimal generators"
        rec = self.failures[0]
        return head + f", {len(self.failures)} failing, first at {rec.multidegree} with homology {rec.homology}"


def _restricted_rank(F: GradedComplex, i: int, keep_rows: list[int], keep_cols: list[int], p: int) -> int:
    if not keep_rows or not keep_cols:
        return 0
    rpos = {r: k for k, r in enumerate(keep_rows)}
    cpos = {c: k for k, c in enumerate(keep_cols)}
    m = [[0] * len(keep_cols) for _ in keep_rows]
    for (r, c), (coef, _) in F.diffs[i].items():
        if r in rpos and c in cpos:
            m[rpos[r]][cpos[c]] = coef
    return rank(m, p)


def _sorted_lattice(labels: Iterable[Monomial]) -> list[Monomial]:
    lattice = lcm_lattice(list(labels))
    lattice.sort(key=lambda m: (m.degree, m.sort_key()))
    return lattice


def augmentation_is_minimal(F: GradedComplex, I: MonomialIdeal | None, r: int | None) -> bool:
    """The degree-0 basis maps bijectively onto the minimal generators m^a of I^r."""
    if F.augmentation is None:
        return False
    images = [g.exponents for g in F.augmentation]
    if len(set(images)) != len(images):
        return False
    if I is None or r is None:
        return True
    injective, _ = check_power_injectivity(I, r)
    if not injective:
        return False
    expected = {power_generator(I, a).exponents for a in enumerate_Nr(I.q, r)}
    return set(images) == expected


def degreewise_exactness(
    F: GradedComplex, I: MonomialIdeal | None = None, r: int | None = None, field: int = QQ
) -> ExactnessReport:
    if F.labels is None:
        raise ValueError("exactness needs a labelled complex")
    all_labels = [m for group in F.labels for m in group]
    records = []
    n = len(F.bases)
    for b in _sorted_lattice(all_labels):
        keep = [[k for k, m in enumerate(F.labels[i]) if m.divides(b)] for i in range(n)]
        dims = tuple(len(k) for k in keep)
        ranks = [0] + [_restricted_rank(F, i, keep[i - 1], keep[i], field) for i in range(1, n)]
        homology = []
        for i in range(n):
            nxt = ranks[i + 1] if i + 1 < n else 0
            homology.append(dims[i] - ranks[i] - nxt)
        records.append(DegreeRecord(b, dims, tuple(ranks), tuple(homology)))
    return ExactnessReport(field, records, augmentation_is_minimal(F, I, r))


@dataclass
class BettiReport:
    ok: bool
    ranks: tuple[int, ...]
    expected: tuple[int, ...]
    pd: int


def betti_agreement(F: GradedComplex, q: int, r: int) -> BettiReport:
    ranks = tuple(x for x in F.ranks())
    while ranks and ranks[-1] == 0:
        ranks = ranks[:-1]
    expected = betti_numbers(q, r)
    return BettiReport(ranks == expected, ranks, expected, len(ranks) - 1)


@dataclass
class CharReport:
    ok: bool
    reports: dict[int, ExactnessReport]
    disagreements: list[tuple[int, Monomial]] = field(default_factory=list)


def char_independence(
    F: GradedComplex, primes: Sequence[int] = (2, 3, 5), I: MonomialIdeal | None = None, r: int | None = None
) -> CharReport:
    """Degreewise ranks over each F_p must equal the ranks over Q."""
    reports = {QQ: degreewise_exactness(F, I, r, QQ)}
    base = reports[QQ].rank_table()
    bad = []
    for p in primes:
        if p == QQ:
            continue
        reports[p] = degreewise_exactness(F, I, r, p)
        for rec in reports[p].records:
            if base[rec.multidegree.exponents] != rec.ranks:
                bad.append((p, rec.multidegree))
    return CharReport(not bad, reports, bad)


# ---------------------------------------------------------------------------
# translations between consecutive powers


@dataclass
class ChainMapReport:
    ok: bool
    commutes: dict[int, bool]
    labels_scale: dict[int, bool]
    surjective: bool | None  # None when r < q (not claimed)
    missed: list = field(default_factory=list)


def _translation_matrix(small: CellComplex, big: CellComplex, j: int, i: int, one: Monomial):
    return {(big.index[translate(c, j)], col): (1, one) for col, c in enumerate(small.cells[i])}


def chain_map_check(tree: RootedTree, r: int, I: MonomialIdeal | None = None) -> ChainMapReport:
    """t_j: u_C(b,B) -> u_C(b+f_j,B) is a chain map of degree m_j, onto when r >= q."""
    if r < 1:
        raise ValueError("r must be positive")
    small = assemble_complex(tree, r)
    big = assemble_complex(tree, r + 1)
    Fs, Fb = homogenize(small), homogenize(big)
    one = tree.ring.one()
    top = len(small.cells)
    commutes, scales = {}, {}
    for j in range(tree.q + 1):
        mj = tree.labels[j]
        scales[j] = all(
            Fb.labels[i][big.index[translate(c, j)]] == mj * Fs.labels[i][k]
            for i in range(top)
            for k, c in enumerate(small.cells[i])
        )
        ok = True
        for i in range(1, top):
            t_hi = _translation_matrix(small, big, j, i, one)
            t_lo = _translation_matrix(small, big, j, i - 1, one)
            if _poly_matrix(compose(Fb.diffs[i], t_hi)) != _poly_matrix(compose(t_lo, Fs.diffs[i])):
                ok = False
        # the augmentation picks up the factor m_j
        for k, c in enumerate(small.cells[0]):
            if Fb.augmentation[big.index[translate(c, j)]] != mj * Fs.augmentation[k]:
                ok = False
        commutes[j] = ok
    surjective = None
    missed: list = []
    if r >= tree.q:
        hit = {translate(c, j) for c in small.all_cells() for j in range(tree.q + 1)}
        missed = [c for c in big.all_cells() if c not in hit]
        surjective = not missed
    ok = all(commutes.values()) and all(scales.values()) and surjective is not False
    return ChainMapReport(ok, commutes, scales, surjective, missed)


def _poly_matrix(m):
    return {k: dict(v) for k, v in m.items()}


# ---------------------------------------------------------------------------
# negative controls: the checks must be able to fail


def flip_one_sign(F: GradedComplex) -> GradedComplex:
    """Copy of F with the sign of one entry of the top differential negated."""
    G = F.copy()
    i = max(k for k in range(1, len(G.diffs)) if G.diffs[k])
    key = min(G.diffs[i])
    coef, mono = G.diffs[i][key]
    G.diffs[i][key] = (-coef, mono)
    return G


def unsupported_tree(tree: RootedTree, I: MonomialIdeal) -> RootedTree | None:
    """The first spanning tree on the generators that fails the support test."""
    labels = tree.labels
    for edges in spanning_trees(len(labels)):
        cand = root_and_label(labels, edges)
        if not validate_support(cand, I).ok:
            return cand
    return None


@dataclass
class ControlReport:
    sign_flip_detected: bool
    wrong_tree_detected: bool | None  # None when every tree supports (e.g. q = 1)
    wrong_tree_witness: Monomial | None = None

    @property
    def ok(self) -> bool:
        return self.sign_flip_detected and self.wrong_tree_detected is not False


def negative_controls(
    tree: RootedTree, I: MonomialIdeal, r: int, wrong: RootedTree | None = None
) -> ControlReport:
    F = homogenize(assemble_complex(tree, r))
    G = flip_one_sign(F)
    flipped = not check_d_squared(G) or not degreewise_exactness(G, I, r).ok
    wrong = wrong or unsupported_tree(tree, I)
    if wrong is None:
        return ControlReport(flipped, None)
    # on an unsupported tree the closed-form labels mean nothing; use the lcm definition
    W = homogenize_by_lcm(assemble_complex(wrong, r))
    rep = degreewise_exactness(W, I, r)
    return ControlReport(flipped, not rep.ok, rep.witness)


# ---------------------------------------------------------------------------


@dataclass
class Certificate:
    q: int
    r: int
    d_squared: bool
    minimal: bool
    exactness: dict[int, ExactnessReport]
    betti: BettiReport
    char_ok: bool
    controls: ControlReport | None = None

    @property
    def ok(self) -> bool:
        return (
            self.d_squared
            and self.minimal
            and all(rep.ok for rep in self.exactness.values())
            and self.betti.ok
            and self.char_ok
            and (self.controls is None or self.controls.ok)
        )

    def lines(self) -> list[str]:
        def mark(flag):
            return "ok" if flag else "FAIL"

        out = [
            f"q={self.q} r={self.r} ranks {' '.join(map(str, self.betti.ranks))} pd {self.betti.pd}",
            f"d^2 = 0 and augmentation: {mark(self.d_squared)}",
            f"minimal (no unit entries): {mark(self.minimal)}",
        ]
        out += [f"{rep.summary()}: {mark(rep.ok)}" for rep in self.exactness.values()]
        out.append(f"betti numbers match formula {self.betti.expected}: {mark(self.betti.ok)}")
        out.append(f"ranks independent of the field: {mark(self.char_ok)}")
        if self.controls is not None:
            c = self.controls
            out.append(f"negative control, flipped sign detected: {mark(c.sign_flip_detected)}")
            if c.wrong_tree_detected is None:
                out.append("negative control, wrong tree: none exists")
            else:
                out.append(
                    f"negative control, wrong tree detected at {c.wrong_tree_witness}: {mark(c.wrong_tree_detected)}"
                )
        return out


def certify(
    tree: RootedTree,
    I: MonomialIdeal,
    r: int,
    fields: Sequence[int] = (QQ,),
    controls: bool = False,
) -> Certificate:
    F = homogenize(assemble_complex(tree, r), I)
    fields = list(dict.fromkeys([QQ, *fields]))
    ch = char_independence(F, [p for p in fields if p != QQ], I, r)
    return Certificate(
        tree.q,
        r,
        check_d_squared(F),
        not unit_entries(F),
        ch.reports,
        betti_agreement(F, tree.q, r),
        ch.ok,
        negative_controls(tree, I, r) if controls else None,
    )


def structural_checks(tree: RootedTree, I: MonomialIdeal, r: int) -> dict[str, bool]:
    """Geometric and combinatorial properties of the cube complex on G^r, by name."""
    cx = assemble_complex(tree, r)
    by_def, by_exp, by_coord = edge_sets(tree, r)
    ratios = all(
        simplify_ratios(tree, c.sink, c.directions, i)[2]
        for c in cx.all_cells()
        for i in c.directions
    )
    return {
        "phi injective": phi_injective(tree, r)[0],
        "edge descriptions agree": by_def == by_exp == by_coord,
        "unique source and sink": not check_source_sink(cx),
        "faces closed": not check_face_closure(cx),
        "intersections are faces": validate_polyhedral(cx).ok,
        "labels match lcm of corners": all(
            cell_label(tree, c) == brute_force_label(tree, c) for c in cx.all_cells()
        ),
        "label ratios": ratios,
        "power generators distinct": check_power_injectivity(I, r)[0],
    }
