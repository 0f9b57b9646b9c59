"""``powres``: resolutions of powers of pd-1 square-free monomial ideals.

Exit status: 0 on success, 1 when the input is rejected on mathematical
grounds (no supporting tree, failed verification, ...), 2 on usage errors.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import io as pio
from .cubes import ResourceLimitError, assemble_complex, covering_check
from .koszul import koszul_strand, rho_isomorphism
from .linalg import field_name, parse_fields
from .monomial import (
    DuplicateGeneratorError,
    IdealSyntaxError,
    MonomialIdeal,
    NonMinimalGeneratorsError,
    parse_ideal,
    parse_monomial,
)
from .resolution import betti_numbers, homogenize, oriented_chain_complex, pd_formula
from .svg import render_svg
from .tree import (
    IntakeError,
    NotATreeError,
    NotProjectiveDimensionOne,
    RootedTree,
    build_support_tree,
    format_tree,
    parse_tree,
    path_matrix,
    tree_for_ideal,
    validate_support,
)
from .verify import certify, chain_map_check, structural_checks


class Rejected(click.ClickException):
    exit_code = 1


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise click.FileError(path, hint=e.strerror) from e


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise click.FileError(path, hint=e.strerror) from e


def load_ideal(path: str) -> MonomialIdeal:
    try:
        return parse_ideal(_read(path))
    except IdealSyntaxError as e:
        raise Rejected(f"{path}: {e}") from e
    except (NonMinimalGeneratorsError, DuplicateGeneratorError) as e:
        raise Rejected(f"{path}: {e}") from e


def load_tree(I: MonomialIdeal, ideal_path: str, tree_path: str | None, root: str | None) -> RootedTree:
    root_index = _root_index(I, root)
    try:
        if tree_path is None:
            return build_support_tree(I, root_index)
        labels, edges = parse_tree(_read(tree_path), I.ring)
        tree = tree_for_ideal(I, labels, edges, _root_index_in(labels, I, root_index))
    except NotProjectiveDimensionOne as e:
        cert = e.certificate
        raise Rejected(
            f"{ideal_path}: not of projective dimension one: no spanning tree supports a resolution\n"
            f"certificate: best tree {cert.get('edges')} is disconnected at multidegree {cert.get('multidegree')} "
            f"({cert.get('failures')} failing multidegrees)"
        ) from e
    except IntakeError as e:
        raise Rejected(f"{ideal_path}: {e}") from e
    except (NotATreeError, ValueError) as e:
        raise Rejected(f"{tree_path}: {e}") from e
    rep = validate_support(tree, I)
    if not rep.ok:
        why = f"disconnected at {rep.witness}" if rep.witness else f"non-minimal edges {rep.nonminimal_edges}"
        raise Rejected(f"{tree_path}: tree does not support a minimal resolution ({why})")
    return tree


def _root_index(I: MonomialIdeal, root: str | None) -> int:
    """Generator index from either an integer or a monomial string."""
    if root is None:
        return 0
    if root.isdigit():
        k = int(root)
        if k > I.q:
            raise click.BadParameter(f"no generator {k}", param_hint="--root")
        return k
    try:
        m = parse_monomial(root, I.ring)
    except (IdealSyntaxError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint="--root") from e
    for k, g in enumerate(I.generators):
        if g == m:
            return k
    raise click.BadParameter(f"{root} is not a generator", param_hint="--root")


def _root_index_in(labels, I: MonomialIdeal, k: int) -> int:
    target = I.generators[k]
    return next(i for i, m in enumerate(labels) if m == target)


def _guard(fn):
    """Turn resource errors into domain rejections."""
    try:
        return fn()
    except ResourceLimitError as e:
        raise Rejected(str(e)) from e


def _matrix_text(m) -> str:
    return "\n".join("  [" + " ".join(f"{x:>2}" for x in row) + "]" for row in m)


ideal_option = click.option("--ideal", "ideal_path", required=True, type=click.Path(dir_okay=False), help="ideal file")
r_option = click.option("--r", "r", required=True, type=click.IntRange(min=1), help="power")
tree_option = click.option("--tree", "tree_path", type=click.Path(dir_okay=False), help="use this tree instead of searching")
root_option = click.option("--root", default=None, help="root generator (index or monomial)")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Cellular minimal free resolutions of powers of pd-1 monomial ideals."""


@main.command()
@ideal_option
@root_option
def tree(ideal_path, root):
    """Find a supporting tree; print it with parents and path matrix."""
    I = load_ideal(ideal_path)
    t = load_tree(I, ideal_path, None, root)
    click.echo(format_tree(t), nl=False)
    click.echo("tau: " + " ".join(str(t.tau(i)) for i in range(1, t.q + 1)))
    click.echo("Phi:")
    if t.q:
        click.echo(_matrix_text(path_matrix(t)))


@main.command()
@ideal_option
@r_option
@tree_option
@root_option
@click.option("--validate", is_flag=True, help="run the structural checks")
@click.option("--json", "as_json", is_flag=True, help="print the complex as JSON")
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False), help="write a picture (q <= 3)")
def power(ideal_path, r, tree_path, root, validate, as_json, svg_path):
    """Build the cube complex of the r-th power graph."""
    I = load_ideal(ideal_path)
    t = load_tree(I, ideal_path, tree_path, root)
    cx = _guard(lambda: assemble_complex(t, r))
    if svg_path:
        if t.q > 3:
            raise Rejected(f"cannot draw q = {t.q} > 3")
        _write(svg_path, render_svg(cx))
    if as_json:
        click.echo(pio.dumps(pio.export_json(cx)), nl=False)
    else:
        click.echo(f"q={t.q} r={r} f-vector: {' '.join(map(str, cx.f_vector()))}")
        for group in cx.cells:
            for c in group:
                click.echo(f"  {c}  at {cx.coords(c.sink)}")
    if validate:
        checks = structural_checks(t, I, r)
        if r >= t.q:
            checks["translates cover the next power"] = covering_check(t, r).ok
        for name, ok in checks.items():
            click.echo(f"{name}: {'ok' if ok else 'FAIL'}", err=as_json)
        if not all(checks.values()):
            raise Rejected("structural validation failed")


@main.command()
@ideal_option
@r_option
@tree_option
@root_option
@click.option("--format", "fmt", type=click.Choice(["text", "json", "m2"]), default="text", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="write here instead of stdout")
def resolve(ideal_path, r, tree_path, root, fmt, output):
    """Minimal free resolution of I^r."""
    I = load_ideal(ideal_path)
    t = load_tree(I, ideal_path, tree_path, root)
    F = _guard(lambda: homogenize(assemble_complex(t, r), I))
    if fmt == "json":
        _write(output, pio.dumps(pio.export_json(F, r=r)))
    elif fmt == "m2":
        _write(output, pio.export_m2(F, I, r))
    else:
        _write(output, _resolution_text(F, t.q, r))


def _resolution_text(F, q: int, r: int) -> str:
    lines = [f"ranks: {' '.join(map(str, F.ranks()))}", f"pd: {F.length}"]
    lines.append("F_0 -> I^r: " + ", ".join(str(m) for m in F.augmentation))
    for i in range(1, len(F.bases)):
        lines.append(f"d_{i}:")
        for col, c in enumerate(F.bases[i]):
            terms = [
                f"{'+' if coef > 0 else '-'}{'' if m.is_one else m}[{F.bases[i - 1][row]}]"
                for (row, cc), (coef, m) in sorted(F.diffs[i].items())
                if cc == col
            ]
            lines.append(f"  {c} ({F.labels[i][col]}) -> {' '.join(terms)}")
    return "\n".join(lines) + "\n"


@main.command()
@ideal_option
@r_option
@tree_option
@root_option
@click.option("--check-iso", is_flag=True, help="compare with the cube complex resolution")
@click.option("--json", "as_json", is_flag=True)
def koszul(ideal_path, r, tree_path, root, check_iso, as_json):
    """Degree-r strand of the Koszul complex on the tree syzygies."""
    I = load_ideal(ideal_path)
    t = load_tree(I, ideal_path, tree_path, root)
    K = koszul_strand(t, r, I)
    if as_json:
        click.echo(pio.dumps(pio.export_json(K)), nl=False)
    else:
        for g in K.syzygies:
            click.echo(f"g_{g.index} = {g.format()}")
        click.echo(f"ranks: {' '.join(map(str, K.ranks()))}")
    if check_iso:
        F = _guard(lambda: homogenize(assemble_complex(t, r), I))
        rep = rho_isomorphism(F, K)
        click.echo(f"rho isomorphism: {'ok' if rep.ok else 'FAIL'}", err=as_json)
        if not rep.ok:
            for i, c in rep.mismatches[:10]:
                click.echo(f"  mismatch in degree {i} at {c}", err=True)
            raise Rejected("strand is not isomorphic to the cube complex resolution")


@main.command()
@ideal_option
@r_option
@tree_option
@root_option
@click.option("--fields", default="q", show_default=True, help="comma list: q for the rationals, primes for F_p")
@click.option("--negative-controls", is_flag=True, help="also confirm that corrupted inputs fail")
@click.option("--json", "as_json", is_flag=True)
def verify(ideal_path, r, tree_path, root, fields, negative_controls, as_json):
    """Certify that the complex is a minimal free resolution of I^r."""
    try:
        fs = parse_fields(fields)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--fields") from e
    I = load_ideal(ideal_path)
    t = load_tree(I, ideal_path, tree_path, root)
    cert = _guard(lambda: certify(t, I, r, fs, controls=negative_controls))
    chain = chain_map_check(t, r) if t.q >= 1 else None
    if as_json:
        doc = pio.export_json(
            None,
            kind="certificate",
            ok=cert.ok and (chain is None or chain.ok),
            q=t.q,
            r=r,
            ranks=list(cert.betti.ranks),
            pd=cert.betti.pd,
            d_squared=cert.d_squared,
            minimal=cert.minimal,
            exact={field_name(p): rep.ok for p, rep in cert.exactness.items()},
            char_independent=cert.char_ok,
            betti_formula=cert.betti.ok,
            chain_maps=None if chain is None else chain.ok,
        )
        if cert.controls is not None:
            doc["negative_controls"] = {
                "sign_flip_detected": cert.controls.sign_flip_detected,
                "wrong_tree_detected": cert.controls.wrong_tree_detected,
            }
        click.echo(pio.dumps(doc), nl=False)
    else:
        for line in cert.lines():
            click.echo(line)
        if chain is not None:
            surj = "" if chain.surjective is None else f", onto: {'ok' if chain.surjective else 'FAIL'}"
            click.echo(f"translations are chain maps: {'ok' if chain.ok else 'FAIL'}{surj}")
    if not cert.ok or (chain is not None and not chain.ok):
        raise Rejected("verification failed")


@main.command()
@click.option("--q", "q", required=True, type=click.IntRange(min=0))
@click.option("--r", "r", required=True, type=click.IntRange(min=1))
@click.option("--pd", "show_pd", is_flag=True, help="also print pd of I^r and of I^r/I^(r+1)")
def betti(q, r, show_pd):
    """Betti numbers of I^r for an ideal with q + 1 generators."""
    click.echo(" ".join(map(str, betti_numbers(q, r))))
    if show_pd:
        a, b = pd_formula(q, r)
        click.echo(f"pd I^r = {a}, pd I^r/I^(r+1) = {b}")


@main.command()
@click.option("--ideal", "ideal_path", type=click.Path(dir_okay=False), default=None)
@click.option("--r", "r", type=click.IntRange(min=1), default=None)
@tree_option
@root_option
@click.option("--what", type=click.Choice(["complex", "resolution", "chains", "strand"]), default="resolution", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "m2", "svg"]), default="json", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def export(ideal_path, r, tree_path, root, what, fmt, output):
    """Write a complex as JSON, a Macaulay2 script or an SVG picture."""
    if ideal_path is None:
        if fmt != "json" or r is not None:
            raise click.UsageError("--ideal is required unless exporting the empty JSON document")
        _write(output, pio.dumps(pio.export_json()))
        return
    if r is None:
        raise click.UsageError("--r is required with --ideal")
    I = load_ideal(ideal_path)
    t = load_tree(I, ideal_path, tree_path, root)
    cx = _guard(lambda: assemble_complex(t, r))
    if fmt == "svg":
        if t.q > 3:
            raise Rejected(f"cannot draw q = {t.q} > 3")
        _write(output, render_svg(cx))
        return
    if what == "complex":
        obj = cx
    elif what == "chains":
        obj = oriented_chain_complex(cx)
    elif what == "strand":
        obj = koszul_strand(t, r, I)
    else:
        obj = homogenize(cx, I)
    if fmt == "m2":
        if what != "resolution":
            raise click.UsageError("the Macaulay2 export is only for --what resolution")
        _write(output, pio.export_m2(obj, I, r))
    else:
        _write(output, pio.dumps(pio.export_json(obj)))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
