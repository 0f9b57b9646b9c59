"""JSON documents and Macaulay2 scripts.

Every JSON document carries ``schema_version``.  Monomials are written as
strings in the variable names of the ring, and exponent vectors as lists.
Differentials are lists of ``[row, col, coefficient, monomial]`` triplets.
"""

from __future__ import annotations

import json
from typing import Any

from .cubes import CellComplex, Cube
from .koszul import StrandComplex
from .monomial import MonomialIdeal, Ring, parse_monomial
from .resolution import GradedComplex, betti_numbers, cell_label
from .tree import RootedTree

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def _tree_doc(tree: RootedTree) -> dict:
    return {"labels": [str(m) for m in tree.labels], "parents": list(tree.parents)}


def _read_tree(doc: dict, ring: Ring) -> RootedTree:
    labels = tuple(parse_monomial(s, ring) for s in doc["labels"])
    return RootedTree(labels, tuple(doc["parents"]))


def _basis_doc(b) -> Any:
    if isinstance(b, Cube):
        return {"sink": list(b.sink), "B": list(b.directions)}
    J, w = b
    return {"J": list(J), "w": list(w)}


def _read_basis(doc: dict):
    if "sink" in doc:
        return Cube(tuple(doc["sink"]), tuple(doc["B"]))
    return tuple(doc["J"]), tuple(doc["w"])


def export_json(obj=None, **meta) -> dict:
    """Document for a CellComplex or GradedComplex; ``None`` gives the bare header."""
    doc: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    if obj is None:
        pass
    elif isinstance(obj, CellComplex):
        tree = obj.tree
        doc.update(
            kind="cell_complex",
            ring=list(tree.ring.names),
            tree=_tree_doc(tree),
            r=obj.r,
            cells=[
                {
                    "dim": c.dim,
                    "sink": list(c.sink),
                    "B": list(c.directions),
                    "coords": list(obj.coords(c.sink)),
                    "monomial_label": str(cell_label(tree, c)),
                }
                for c in obj.all_cells()
            ],
        )
    elif isinstance(obj, GradedComplex):
        doc.update(
            kind="strand" if isinstance(obj, StrandComplex) else "graded_complex",
            ring=list(obj.ring.names),
            bases=[[_basis_doc(b) for b in basis] for basis in obj.bases],
            differentials=[
                [[r, c, coef, str(m)] for (r, c), (coef, m) in sorted(d.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
                for d in obj.diffs[1:]
            ],
        )
        if obj.labels is not None:
            doc["labels"] = [[str(m) for m in group] for group in obj.labels]
        if obj.augmentation is not None:
            doc["augmentation"] = [str(m) for m in obj.augmentation]
        if isinstance(obj, StrandComplex):
            doc["r"] = obj.r
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    doc.update(meta)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _check_header(doc: dict, kind: str) -> None:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {doc.get('schema_version')!r}")
    if doc.get("kind") != kind:
        raise SchemaError(f"expected a {kind} document, got {doc.get('kind')!r}")


def import_cell_complex(doc: dict) -> CellComplex:
    _check_header(doc, "cell_complex")
    ring = Ring(tuple(doc["ring"]))
    tree = _read_tree(doc["tree"], ring)
    top = max((c["dim"] for c in doc["cells"]), default=-1)
    cells: list[list[Cube]] = [[] for _ in range(top + 1)]
    for c in doc["cells"]:
        cube = Cube(tuple(c["sink"]), tuple(c["B"]))
        if cube.dim != c["dim"]:
            raise SchemaError(f"cell {cube} listed with dim {c['dim']}")
        cells[c["dim"]].append(cube)
    cx = CellComplex(tree, doc["r"], cells)
    for c in doc["cells"]:
        cube = Cube(tuple(c["sink"]), tuple(c["B"]))
        if list(cx.coords(cube.sink)) != c["coords"] or str(cell_label(tree, cube)) != c["monomial_label"]:
            raise SchemaError(f"stored geometry of {cube} does not match the tree")
    return cx


def import_graded_complex(doc: dict) -> GradedComplex:
    kind = doc.get("kind")
    _check_header(doc, kind if kind in ("graded_complex", "strand") else "graded_complex")
    ring = Ring(tuple(doc["ring"]))
    bases = [[_read_basis(b) for b in basis] for basis in doc["bases"]]
    diffs = [{}] + [
        {(r, c): (coef, parse_monomial(m, ring)) for r, c, coef, m in d} for d in doc["differentials"]
    ]
    labels = None
    if "labels" in doc:
        labels = [[parse_monomial(m, ring) for m in group] for group in doc["labels"]]
    aug = [parse_monomial(m, ring) for m in doc["augmentation"]] if "augmentation" in doc else None
    if kind == "strand":
        return StrandComplex(ring, bases, diffs, labels, aug, r=doc["r"])
    return GradedComplex(ring, bases, diffs, labels, aug)


# ---------------------------------------------------------------------------
# Macaulay2


def _m2_matrix(name: str, F: GradedComplex, i: int) -> str:
    rows, cols = F.rank(i - 1), F.rank(i)
    entries = [["0"] * cols for _ in range(rows)]
    for (r, c), (coef, m) in F.diffs[i].items():
        mono = str(m)
        if mono == "1":
            entries[r][c] = str(coef)
        else:
            entries[r][c] = {1: "", -1: "-"}.get(coef, f"{coef}*") + mono
    body = ",\n    ".join("{" + ", ".join(row) + "}" for row in entries)
    return f"{name} = map(R^{rows}, R^{cols}, {{\n    {body}}});"


def export_m2(F: GradedComplex, I: MonomialIdeal, r: int) -> str:
    """A self-contained Macaulay2 script that checks the complex against ``res``."""
    names = ", ".join(I.ring.names)
    gens = ", ".join(str(g) for g in I.generators)
    aug = ", ".join(str(m) for m in F.augmentation or [])
    lines = [
        "-- minimal free resolution of a power of a monomial ideal",
        f"R = QQ[{names}];",
        f"I = monomialIdeal({gens});",
        f"r = {r};",
        f"D0 = matrix{{{{{aug}}}}};",
    ]
    top = len(F.bases) - 1
    for i in range(1, top + 1):
        lines.append(_m2_matrix(f"D{i}", F, i))
    lines.append("assert(D0*D1 == 0);" if top >= 1 else "-- no differentials")
    for i in range(2, top + 1):
        lines.append(f"assert(D{i - 1}*D{i} == 0);")
    lines.append("assert(ideal D0 == ideal(I^r));")
    betti = "{" + ", ".join(str(x) for x in betti_numbers(len(I.generators) - 1, r)) + "}"
    lines += [
        "C = res module ideal(I^r);",
        f"assert(apply(length C + 1, i -> rank C_i) == {betti});",
        "assert({" + ", ".join(f"numcols D{i}" for i in range(top + 1)) + f"}} == {betti});",
        'print "all assertions passed"',
    ]
    return "\n".join(lines) + "\n"
