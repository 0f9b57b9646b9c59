"""Exact ranks of small integer matrices over Q and over prime fields."""

from __future__ import annotations

from typing import Sequence

QQ = 0  # field descriptor for the rationals; any prime p stands for F_p


def field_name(p: int) -> str:
    return "QQ" if p == QQ else f"GF({p})"


def parse_fields(text: str) -> list[int]:
    """``"q,2,3,5"`` -> ``[0, 2, 3, 5]``."""
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        if tok in ("q", "qq", "0"):
            out.append(QQ)
        else:
            p = int(tok)
            if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
                raise ValueError(f"{p} is not prime")
            out.append(p)
    return out


def rank_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination; all arithmetic stays in Z."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nrows):
            f = m[i][col]
            row_i, row_r = m[i], m[rank]
            for j in range(col + 1, ncols):
                # exact division is the point of Bareiss
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        row_r = [(x * inv) % p for x in m[rank]]
        m[rank] = row_r
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], row_r)]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(rows: Sequence[Sequence[int]], field: int = QQ) -> int:
    return rank_bareiss(rows) if field == QQ else rank_mod_p(rows, field)
