"""Random square-free ideals of projective dimension one, for testing.

Start from a random tree T on q + 1 vertices.  Each edge splits T into two
sides; give the edge one variable per side and let m_v be the product of
the variables on v's side of every edge.  Then m_u and m_v differ exactly
along the path from u to v, and T supports the resolution of the ideal.
Dropping a few variables or adding private ones keeps the family varied;
every candidate is re-checked by the tree search before being returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .monomial import DuplicateGeneratorError, MonomialIdeal, NonMinimalGeneratorsError, Ring
from .tree import NotProjectiveDimensionOne, RootedTree, build_support_tree, prufer_to_edges


@dataclass(frozen=True)
class Instance:
    ideal: MonomialIdeal
    tree: RootedTree
    seed: int


def _sides(n: int, edges, e) -> set[int]:
    u, v = e
    adj = {k: set() for k in range(n)}
    for a, b in edges:
        if (a, b) != e:
            adj[a].add(b)
            adj[b].add(a)
    side, stack = {u}, [u]
    while stack:
        w = stack.pop()
        for x in adj[w] - side:
            side.add(x)
            stack.append(x)
    return side


def tree_ideal(n: int, edges, drop=(), extra=()) -> MonomialIdeal:
    """Ideal of the tree on vertices 0..n-1, minus the variables in ``drop``.

    ``extra`` lists vertices that get one private variable each.
    """
    names: list[str] = []
    cols: list[set[int]] = []  # for each variable, the vertices it divides
    for k, e in enumerate(edges):
        near = _sides(n, edges, e)
        for tag, members in (("a", near), ("b", set(range(n)) - near)):
            name = f"{tag}{k + 1}"
            if name not in drop:
                names.append(name)
                cols.append(members)
    for k, v in enumerate(extra):
        names.append(f"c{k + 1}")
        cols.append({v})
    ring = Ring(tuple(names))
    gens = tuple(ring.monomial(tuple(int(v in col) for col in cols)) for v in range(n))
    return MonomialIdeal(ring, gens)


def random_instance(q: int, seed: int, max_tries: int = 200) -> Instance:
    """A random pd-1 square-free ideal with q + 1 generators, shuffled, with its tree."""
    rng = random.Random(seed)
    n = q + 1
    for _ in range(max_tries):
        seq = [rng.randrange(n) for _ in range(n - 2)] if n > 2 else []
        edges = prufer_to_edges(seq, n)
        all_vars = [f"{t}{k + 1}" for k in range(len(edges)) for t in "ab"]
        drop = rng.sample(all_vars, rng.randint(0, max(0, len(all_vars) - n)))
        extra = [v for v in range(n) if rng.random() < 0.25]
        try:
            I = tree_ideal(n, edges, drop, extra)
        except (NonMinimalGeneratorsError, DuplicateGeneratorError):
            continue
        order = list(range(n))
        rng.shuffle(order)
        I = MonomialIdeal(I.ring, tuple(I.generators[k] for k in order))
        if not I.is_squarefree or I.q + 1 > I.ring.n:
            continue
        try:
            tree = build_support_tree(I)
        except NotProjectiveDimensionOne:
            continue
        return Instance(I, tree, seed)
    raise RuntimeError(f"no pd-1 instance found for q={q}, seed={seed}")


def instance_family(count: int, q_max: int = 3, start_seed: int = 0) -> list[Instance]:
    """``count`` distinct instances, cycling through q = 1..q_max.

    Small q has few distinct ideals; once a slot keeps producing repeats it
    passes to the next q.
    """
    out: list[Instance] = []
    seen = set()
    seed = start_seed
    slot = 0
    while len(out) < count:
        q = 1 + slot % q_max
        for _ in range(20):
            inst = random_instance(q, seed)
            seed += 1
            key = (inst.ideal.ring.names, tuple(g.exponents for g in inst.ideal.generators))
            if key not in seen:
                seen.add(key)
                out.append(inst)
                break
        slot += 1
    return out
