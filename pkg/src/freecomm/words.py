"""Freely reduced words over a ranked generating alphabet.

A word is a tuple of nonzero integers: letter ``+i`` is the i-th generator
(1-based), ``-i`` its inverse.  Construction reduces eagerly, so two words
are equal in the free group exactly when they compare equal as sequences.

Text form uses lowercase letters for generators and uppercase for their
inverses, so ``"aBBa"`` is x·y⁻²·x; ``""`` and ``"1"`` both denote the
identity.  Text is limited to rank 26; the integer encoding is not.

Everything here is immutable and pure.  Exponent arithmetic uses plain
Python integers, so it is exact at any size.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

from .errors import RankMismatchError, WordError

__all__ = [
    "EPSILON",
    "Word",
    "abelianize",
    "apply_hom",
    "concat",
    "conjugate",
    "cyclic_split",
    "generator",
    "imprimitivity_certificate",
    "invert",
    "max_generator",
    "nth_root",
    "parse_word",
    "power",
    "reduce",
    "word_to_text",
]


class Word(tuple):
    """A freely reduced word, stored as a tuple of signed letters.

    >>> Word((1, 2, -2, 1))
    Word('aa')
    >>> Word((1, -1))
    Word('1')
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        stack: list[int] = []
        for a in letters:
            if type(a) is not int or a == 0:
                raise WordError(f"letters must be nonzero integers, got {a!r}")
            if stack and stack[-1] == -a:
                stack.pop()
            else:
                stack.append(a)
        return tuple.__new__(cls, stack)

    def __mul__(self, other: "Word") -> "Word":
        return Word(tuple.__add__(self, tuple(other)))

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def inverse(self) -> "Word":
        return invert(self)

    def __repr__(self) -> str:
        if all(abs(a) <= 26 for a in self):
            return f"Word({word_to_text(self)!r})"
        return f"Word({tuple(self)!r})"


EPSILON = Word()


def reduce(letters: Iterable[int], rank: Optional[int] = None) -> Word:
    """Freely reduce a letter sequence; validate indices when rank is given."""
    w = Word(letters)
    if rank is not None and w and max_generator(w) > rank:
        raise RankMismatchError(f"letter index exceeds rank {rank}: {tuple(w)}")
    return w


def generator(i: int) -> Word:
    """The length-one word for the i-th generator (i >= 1)."""
    if i < 1:
        raise WordError(f"generator index must be >= 1, got {i}")
    return Word((i,))


def max_generator(w: Sequence[int]) -> int:
    """Largest generator index used in w (0 for the identity)."""
    return max((abs(a) for a in w), default=0)


def concat(u: Word, v: Word) -> Word:
    """Product u·v, freely reduced."""
    return Word(tuple(u) + tuple(v))


def invert(w: Word) -> Word:
    """Inverse word: reversed letters with flipped signs."""
    return Word(tuple(-a for a in reversed(w)))


def cyclic_split(w: Word) -> tuple[Word, Word]:
    """Split w = u⁻¹·c·u with c cyclically reduced; returns (u, c)."""
    letters = list(w)
    conj: list[int] = []
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        conj.append(letters.pop())
        letters.pop(0)
    u = Word(reversed(conj))
    return u, Word(letters)


def power(w: Word, n: int) -> Word:
    """w**n for any integer n, computed via the cyclically reduced core."""
    if n == 0 or not w:
        return EPSILON
    if n < 0:
        return power(invert(w), -n)
    u, c = cyclic_split(w)
    # c**n needs no reduction: c is cyclically reduced.
    return Word(tuple(invert(u)) + tuple(c) * n + tuple(u))


def conjugate(w: Word, g: Word) -> Word:
    """g⁻¹·w·g."""
    return Word(tuple(invert(g)) + tuple(w) + tuple(g))


def nth_root(w: Word, n: int) -> Optional[Word]:
    """The unique v with v**n == w, or None if no such word exists.

    Uniqueness holds because free groups have unique roots.  The identity
    has itself as a root for every n, and every word is its own 1st root.

    >>> nth_root(parse_word("Ababaa"), 2)
    Word('Abaa')
    """
    if n < 1:
        raise WordError(f"root exponent must be >= 1, got {n}")
    if not w:
        return EPSILON
    if n == 1:
        return w
    u, c = cyclic_split(w)
    if len(c) % n != 0:
        return None
    m = len(c) // n
    piece = tuple(c)[:m]
    if tuple(c) != piece * n:
        return None
    return Word(tuple(invert(u)) + piece + tuple(u))


def apply_hom(images: Sequence[Word], w: Word) -> Word:
    """Substitute images[i-1] for each letter ±i of w.

    This is the homomorphism from the free group whose rank is
    ``len(images)`` determined by the image list.
    """
    out: list[int] = []
    for a in w:
        i = abs(a)
        if i > len(images):
            raise RankMismatchError(
                f"word uses generator {i} but only {len(images)} images given"
            )
        img = images[i - 1]
        out.extend(img if a > 0 else invert(img))
    return Word(out)


def abelianize(w: Word, rank: int) -> tuple[int, ...]:
    """Exponent-sum vector of w in Z^rank."""
    if rank < 0:
        raise WordError(f"rank must be >= 0, got {rank}")
    if max_generator(w) > rank:
        raise RankMismatchError(f"letter index exceeds rank {rank}: {tuple(w)}")
    vec = [0] * rank
    for a in w:
        vec[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(vec)


def imprimitivity_certificate(w: Word, rank: int) -> Optional[int]:
    """A sound certificate that w is not part of any free basis.

    Returns d > 1 when every exponent sum of w is divisible by d (then w
    cannot be primitive, since a basis element has a unit coordinate in
    some abelianized basis).  Returns None when no conclusion is drawn:
    this check never certifies primitivity, and the zero vector (e.g. any
    commutator) is deliberately inconclusive.
    """
    if not w:
        raise WordError("the identity has no primitivity certificate")
    vec = abelianize(w, rank)
    d = 0
    for entry in vec:
        d = math.gcd(d, entry)
    return d if d > 1 else None


_ORD_A_LOWER = ord("a")
_ORD_A_UPPER = ord("A")


def parse_word(text: str, rank: Optional[int] = None) -> Word:
    """Parse letter syntax: lowercase = generator, uppercase = inverse.

    >>> parse_word("aBa")
    Word('aBa')
    >>> parse_word("1")
    Word('1')
    """
    text = text.strip()
    if text in ("", "1"):
        return EPSILON
    letters = []
    for ch in text:
        if "a" <= ch <= "z":
            letters.append(ord(ch) - _ORD_A_LOWER + 1)
        elif "A" <= ch <= "Z":
            letters.append(-(ord(ch) - _ORD_A_UPPER + 1))
        else:
            raise WordError(f"invalid character {ch!r} in word {text!r}")
    return reduce(letters, rank)


def word_to_text(w: Word) -> str:
    """Inverse of parse_word; the identity prints as "1"."""
    if not w:
        return "1"
    if max_generator(w) > 26:
        raise WordError("text form supports at most 26 generators")
    out = []
    for a in w:
        if a > 0:
            out.append(chr(_ORD_A_LOWER + a - 1))
        else:
            out.append(chr(_ORD_A_UPPER - a - 1))
    return "".join(out)
