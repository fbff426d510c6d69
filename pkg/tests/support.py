"""Shared generators for randomized tests: words, covers, automorphisms."""

from __future__ import annotations

import random
from typing import Sequence

from freecomm import (
    PartialIso,
    Subgroup,
    Word,
    apply_hom,
    embed_aut,
    generator,
    intersect,
    kernel_mod_p,
    restrict,
    subgroup_from_document,
)


def random_word(rng: random.Random, rank: int, max_len: int = 8) -> Word:
    letters = []
    pool = [i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)]
    for _ in range(rng.randrange(max_len + 1)):
        letters.append(rng.choice(pool))
    return Word(letters)


def random_nontrivial_word(rng: random.Random, rank: int, max_len: int = 8) -> Word:
    while True:
        w = random_word(rng, rank, max_len)
        if w:
            return w


def _random_transitive_action(rng: random.Random, rank: int, degree: int):
    """One permutation of range(degree) per generator, jointly transitive."""
    while True:
        perms = [rng.sample(range(degree), degree) for _ in range(rank)]
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for perm in perms:
                for u in (perm[v], perm.index(v)):
                    if u not in seen:
                        seen.add(u)
                        frontier.append(u)
        if len(seen) == degree:
            return perms


def random_cover(rng: random.Random, rank: int, index: int) -> Subgroup:
    """Point stabilizer of a random transitive action: a subgroup of that index.

    Built through the document loader so the tests exercise the public
    constructor on graphs that are covers by construction.
    """
    perms = _random_transitive_action(rng, rank, index)
    edges = []
    for label, perm in enumerate(perms, start=1):
        for v in range(index):
            edges.append([v, perm[v], label])
    doc = {"rank": rank, "basepoint": 0, "edges": edges}
    return subgroup_from_document(doc)


IDENTITY_IMAGES = {
    rank: tuple(generator(i) for i in range(1, rank + 1)) for rank in (2, 3, 4, 5)
}


def nielsen_moves(rank: int) -> list[tuple[Word, ...]]:
    """Elementary Nielsen transformations as generator image tuples."""
    moves = []
    ident = tuple(generator(i) for i in range(1, rank + 1))
    for i in range(rank):
        flipped = list(ident)
        flipped[i] = ident[i].inverse()
        moves.append(tuple(flipped))
        for j in range(rank):
            if i == j:
                continue
            swapped = list(ident)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            moves.append(tuple(swapped))
            for sign in (1, -1):
                pushed = list(ident)
                pushed[i] = ident[i] * (ident[j] if sign > 0 else ident[j].inverse())
                moves.append(tuple(pushed))
    return moves


def compose_images(
    outer: Sequence[Word], inner: Sequence[Word]
) -> tuple[Word, ...]:
    """Images of the composite sending g first through inner, then outer."""
    return tuple(apply_hom(outer, w) for w in inner)


def random_aut_images(
    rng: random.Random, rank: int, num_moves: int = 4
) -> tuple[Word, ...]:
    moves = nielsen_moves(rank)
    images = tuple(generator(i) for i in range(1, rank + 1))
    for _ in range(num_moves):
        images = compose_images(rng.choice(moves), images)
    return images


def random_small_domain(rng: random.Random, rank: int) -> Subgroup:
    """A subgroup of index at most 6, mixing kernels and random covers."""
    kind = rng.randrange(3)
    if kind == 0:
        p = rng.choice((2, 3, 5))
        weights = [rng.randrange(p) for _ in range(rank)]
        if all(w % p == 0 for w in weights):
            weights[rng.randrange(rank)] = 1
        return kernel_mod_p(rank, weights, p)
    if kind == 1:
        a = kernel_mod_p(rank, [1] + [rng.randrange(2) for _ in range(rank - 1)], 2)
        b = kernel_mod_p(rank, [rng.randrange(3) for _ in range(rank - 1)] + [1], 3)
        return intersect(a, b)
    return random_cover(rng, rank, rng.randrange(2, 7))


def random_restriction_iso(rng: random.Random, rank: int) -> PartialIso:
    """Restriction of a random automorphism to a random small domain."""
    aut = embed_aut(random_aut_images(rng, rank))
    return restrict(aut, random_small_domain(rng, rank))


def random_tiny_domain(rng: random.Random, rank: int) -> Subgroup:
    """Index 2 or 3, short basis words: safe for nested compositions."""
    p = rng.choice((2, 3))
    weights = [rng.randrange(p) for _ in range(rank)]
    if all(w % p == 0 for w in weights):
        weights[rng.randrange(rank)] = 1
    return kernel_mod_p(rank, weights, p)


def random_tiny_iso(rng: random.Random, rank: int) -> PartialIso:
    aut = embed_aut(random_aut_images(rng, rank, num_moves=2))
    return restrict(aut, random_tiny_domain(rng, rank))
