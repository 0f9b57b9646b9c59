"""Monomials, monomial ideals and the index sets of their powers.

A power ``I^r`` of ``I = (m_0, ..., m_q)`` is generated by the products
``m^a = m_0^a_0 ... m_q^a_q`` where ``a`` runs over the compositions of
``r`` into ``q + 1`` nonnegative parts.  Compositions are plain tuples of
ints throughout the package and are always listed in descending
lexicographic order, e.g. for q = 2, r = 2::

    (2,0,0) (1,1,0) (1,0,1) (0,2,0) (0,1,1) (0,0,2)

Every matrix layout downstream depends on that order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

ExponentVector = tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class IdealSyntaxError(ValueError):
    """Raised on malformed ideal text; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class NonMinimalGeneratorsError(ValueError):
    def __init__(self, i: int, j: int, divisor: "Monomial", multiple: "Monomial"):
        super().__init__(f"generator {i} ({divisor}) divides generator {j} ({multiple})")
        self.witness = (i, j)


class DuplicateGeneratorError(ValueError):
    def __init__(self, i: int, j: int, mono: "Monomial"):
        super().__init__(f"generators {i} and {j} are both {mono}")
        self.witness = (i, j)


@dataclass(frozen=True)
class Ring:
    """Polynomial ring descriptor: just the ordered variable names."""

    names: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.names)

    def one(self) -> "Monomial":
        return Monomial(self, (0,) * self.n)

    def var(self, name: str) -> "Monomial":
        exps = [0] * self.n
        exps[self.names.index(name)] = 1
        return Monomial(self, tuple(exps))

    def monomial(self, exponents: Sequence[int]) -> "Monomial":
        return Monomial(self, tuple(exponents))


@dataclass(frozen=True)
class Monomial:
    ring: Ring
    exponents: ExponentVector

    def __post_init__(self):
        if len(self.exponents) != self.ring.n:
            raise ValueError(f"expected {self.ring.n} exponents, got {len(self.exponents)}")
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    def _check(self, other: "Monomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring.names} vs {other.ring.names}")

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.ring, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise ValueError("negative power")
        return Monomial(self.ring, tuple(k * a for a in self.exponents))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        self._check(other)
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.ring, tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.ring, tuple(map(max, self.exponents, other.exponents)))

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.ring, tuple(map(min, self.exponents, other.exponents)))

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_one(self) -> bool:
        return not any(self.exponents)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def support(self) -> tuple[str, ...]:
        return tuple(x for x, e in zip(self.ring.names, self.exponents) if e)

    def __str__(self) -> str:
        if self.is_one:
            return "1"
        parts = []
        for x, e in zip(self.ring.names, self.exponents):
            if e == 1:
                parts.append(x)
            elif e > 1:
                parts.append(f"{x}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def sort_key(self) -> tuple[int, ...]:
        """Key for lexicographic order, larger monomials first when sorted ascending."""
        return tuple(-e for e in self.exponents)


def lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return m1.lcm(m2)


def lcm_all(monos: Iterable[Monomial], ring: Ring) -> Monomial:
    out = ring.one()
    for m in monos:
        out = out.lcm(m)
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by a minimal generating set, in a fixed order."""

    ring: Ring
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError(f"generator {g} lives in another ring")
        for i, j in combinations(range(len(self.generators)), 2):
            gi, gj = self.generators[i], self.generators[j]
            if gi == gj:
                raise DuplicateGeneratorError(i, j, gi)
            if gi.divides(gj):
                raise NonMinimalGeneratorsError(i, j, gi, gj)
            if gj.divides(gi):
                raise NonMinimalGeneratorsError(j, i, gj, gi)

    @property
    def q(self) -> int:
        """Index of the last generator; there are q + 1 of them."""
        return len(self.generators) - 1

    @property
    def is_squarefree(self) -> bool:
        return all(g.is_squarefree for g in self.generators)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def ideal(names: Sequence[str], *gens: Sequence[int]) -> MonomialIdeal:
    """Shorthand constructor: ``ideal("xyzu", (1,1,0,0), ...)``."""
    ring = Ring(tuple(names))
    return MonomialIdeal(ring, tuple(ring.monomial(g) for g in gens))


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?:\s*\^\s*(?P<exp>\d+))?|(?P<star>\*)|(?P<sep>,))")


def _parse_product(text: str, offset: int) -> list[tuple[str, int, int]]:
    """Split one generator into (name, exponent, position) factors."""
    factors = []
    pos = 0
    expect_factor = True
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.group("sep"):
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise IdealSyntaxError(f"unexpected character {text[pos + stripped]!r}", offset + pos + stripped)
        start = offset + m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group("star"):
            if expect_factor:
                raise IdealSyntaxError("'*' without a preceding factor", start)
            expect_factor = True
        else:
            if not expect_factor:
                raise IdealSyntaxError("missing '*' between factors", start)
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
            if exp == 0:
                raise IdealSyntaxError("zero exponent", start)
            factors.append((m.group("name"), exp, start))
            expect_factor = False
        pos = m.end()
    if expect_factor:
        raise IdealSyntaxError("empty or incomplete generator", offset + len(text.rstrip()))
    return factors


def parse_ideal(text: str, names: Sequence[str] | None = None) -> MonomialIdeal:
    """Parse the ideal text format.

    Generators are separated by commas or newlines; each is a ``*``-product
    of ``name`` or ``name^k`` factors.  A line ``vars: x,y,z`` fixes the
    variable order, otherwise variables are ordered by first appearance.
    ``#`` starts a comment.
    """
    header = list(names) if names is not None else None
    chunks: list[tuple[str, int]] = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        stripped = body.strip()
        if stripped.lower().startswith("vars:"):
            if header is not None:
                raise IdealSyntaxError("duplicate variable header", offset)
            header = [v.strip() for v in stripped[5:].replace(" ", ",").split(",") if v.strip()]
            for v in header:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                    raise IdealSyntaxError(f"bad variable name {v!r}", offset)
            if len(set(header)) != len(header):
                raise IdealSyntaxError("repeated variable in header", offset)
        else:
            start = 0
            for piece in body.split(","):
                if piece.strip():
                    chunks.append((piece, offset + start))
                elif body.strip():
                    raise IdealSyntaxError("empty generator", offset + start)
                start += len(piece) + 1
        offset += len(line)
    if not chunks:
        raise IdealSyntaxError("no generators", 0)

    parsed = [_parse_product(chunk, off) for chunk, off in chunks]
    if header is None:
        header = []
        for factors in parsed:
            for name, _, _ in factors:
                if name not in header:
                    header.append(name)
    ring = Ring(tuple(header))
    gens = []
    for factors in parsed:
        exps = [0] * ring.n
        for name, e, pos in factors:
            if name not in ring.names:
                raise IdealSyntaxError(f"variable {name!r} not declared in header", pos)
            exps[ring.names.index(name)] += e
        gens.append(Monomial(ring, tuple(exps)))
    return MonomialIdeal(ring, tuple(gens))


def parse_monomial(text: str, ring: Ring) -> Monomial:
    text = text.strip()
    if text == "1":
        return ring.one()
    exps = [0] * ring.n
    for name, e, pos in _parse_product(text, 0):
        if name not in ring.names:
            raise IdealSyntaxError(f"unknown variable {name!r}", pos)
        exps[ring.names.index(name)] += e
    return Monomial(ring, tuple(exps))


# ---------------------------------------------------------------------------
# compositions


def enumerate_Nr(q: int, r: int) -> list[ExponentVector]:
    """All compositions of ``r`` into ``q + 1`` parts, descending lex order."""
    if q < 0 or r < 0:
        raise ValueError(f"need q >= 0 and r >= 0, got q={q}, r={r}")
    return list(_compositions(q + 1, r))


def _compositions(parts: int, total: int) -> Iterator[ExponentVector]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(parts - 1, total - first):
            yield (first,) + rest


def count_Nr(q: int, r: int) -> int:
    return comb(q + r, r)


def unit_vector(i: int, q: int) -> ExponentVector:
    """The basis vector f_i of Z^{q+1}, indices starting at 0."""
    return tuple(1 if k == i else 0 for k in range(q + 1))


def vadd(a: Sequence[int], b: Sequence[int]) -> ExponentVector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> ExponentVector:
    return tuple(x - y for x, y in zip(a, b))


def shift(a: Sequence[int], plus: int | None = None, minus: int | None = None) -> ExponentVector:
    """``a + f_plus - f_minus`` (either index may be omitted)."""
    out = list(a)
    if plus is not None:
        out[plus] += 1
    if minus is not None:
        out[minus] -= 1
    return tuple(out)


def supp(a: Sequence[int]) -> tuple[int, ...]:
    """Indices j > 0 with a_j != 0; index 0 is never part of the support."""
    return tuple(j for j in range(1, len(a)) if a[j])


def power_generator(I: MonomialIdeal, a: Sequence[int]) -> Monomial:
    if len(a) != len(I.generators):
        raise ValueError(f"exponent vector of length {len(a)} for {len(I.generators)} generators")
    out = I.ring.one()
    for g, k in zip(I.generators, a):
        if k < 0:
            raise ValueError(f"negative multiplicity in {tuple(a)}")
        if k:
            out = out * g**k
    return out


def check_power_injectivity(
    I: MonomialIdeal, r: int
) -> tuple[bool, tuple[ExponentVector, ExponentVector] | None]:
    """Is ``a -> m^a`` injective on compositions of r?  Returns a colliding pair if not."""
    if r < 1:
        raise ValueError("r must be positive")
    seen: dict[ExponentVector, ExponentVector] = {}
    for a in enumerate_Nr(I.q, r):
        key = power_generator(I, a).exponents
        if key in seen:
            return False, (seen[key], a)
        seen[key] = a
    return True, None
