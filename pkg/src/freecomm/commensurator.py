"""Partial isomorphisms between finite-index subgroups of a free group.

A PartialIso maps one finite-index subgroup onto another, specified by
the images of the domain's canonical basis.  Two such maps are
equivalent when they agree on a common finite-index subgroup; since
free groups have the unique root property, agreement on the
intersection of the domains decides this, so the equivalence classes
carry a well-defined composition: these classes form the abstract
commensurator of the free group.

Everything here is exact.  Validation of bijectivity leans on free
groups being hopfian: a map onto a free group of the same finite rank
from a free group of that rank is automatically injective, so checking
"images generate the codomain" plus "ranks agree" certifies an
isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _functools_reduce
from typing import Optional, Sequence, Union

from .errors import DocumentError, InvalidIsoError, NotInSubgroupError, RankMismatchError
from .stallings import (
    Subgroup,
    from_generators,
    graph_from_document,
    graph_to_document,
    intersect,
    is_normal,
    join,
    kernel_mod_p,
    rewrite_over_basis,
    subindex,
    whole_group,
    witness_expresser,
)
from .words import (
    EPSILON,
    Word,
    apply_hom,
    concat,
    invert,
    max_generator,
    nth_root,
    parse_word,
    power,
    word_to_text,
)

__all__ = [
    "CommClass",
    "NoExtension",
    "PartialIso",
    "apply",
    "compose",
    "compose_many",
    "compute_extension",
    "embed_aut",
    "equivalent",
    "equivalent_bruteforce",
    "extendAB_certificate",
    "extend_pair",
    "identity_iso",
    "image_subgroup",
    "invert_iso",
    "is_identity_class",
    "iso_from_document",
    "iso_to_document",
    "make_iso",
    "restrict",
    "subindex_of_iso",
    "transfer_to_overgroup",
    "transfer_to_subgroup",
]


@dataclass(frozen=True)
class PartialIso:
    """An isomorphism between two finite-index subgroups.

    images[i] is the image of the i-th canonical basis element of the
    domain, written in the ambient generators.  Instances are built
    through make_iso, which validates the invariants.
    """

    domain: Subgroup
    codomain: Subgroup
    images: tuple[Word, ...]

    @property
    def rank(self) -> int:
        return self.domain.rank


@dataclass(frozen=True)
class NoExtension:
    """Certificate that a partial isomorphism extends to no ambient automorphism."""

    reason: str
    generator: Optional[int] = None
    exponent: Optional[int] = None
    word: Optional[Word] = None


def make_iso(domain: Subgroup, codomain: Subgroup, images: Sequence[Word]) -> PartialIso:
    """Validate and build a PartialIso.

    Rejects images outside the codomain, images that generate a proper
    subgroup of the codomain, and rank mismatches between the two sides
    (a rank-preserving surjection between free groups of equal finite
    rank is an isomorphism, so these checks certify bijectivity).
    """
    if domain.rank != codomain.rank:
        raise RankMismatchError(
            f"mixed ambient ranks {domain.rank} and {codomain.rank}"
        )
    import math

    if domain.index() is math.inf or codomain.index() is math.inf:
        raise InvalidIsoError("domain and codomain must have finite index")
    images = tuple(Word(w) for w in images)
    dom_basis = domain.basis.elements
    if len(images) != len(dom_basis):
        raise InvalidIsoError(
            f"expected {len(dom_basis)} images (one per domain basis element), "
            f"got {len(images)}"
        )
    for w in images:
        if not codomain.contains(w):
            raise InvalidIsoError(
                f"image {word_to_text(w)!r} lies outside the codomain"
            )
    folded = from_generators(domain.rank, images)
    if folded != codomain:
        raise InvalidIsoError("images generate a proper subgroup of the codomain")
    if len(dom_basis) != len(codomain.basis.elements):
        raise InvalidIsoError(
            f"rank drop: domain has rank {len(dom_basis)} but codomain has "
            f"rank {len(codomain.basis.elements)}; the map cannot be injective"
        )
    return PartialIso(domain=domain, codomain=codomain, images=images)


def identity_iso(h: Subgroup) -> PartialIso:
    """The identity map of a finite-index subgroup."""
    return make_iso(h, h, h.basis.elements)


def apply(phi: PartialIso, w: Word) -> Word:
    """Image of w (which must lie in the domain) under the map."""
    return apply_hom(phi.images, phi.domain.express_in_basis(w))


def image_subgroup(phi: PartialIso, k: Subgroup) -> Subgroup:
    """Image of a subgroup K of the domain."""
    return from_generators(phi.rank, [apply(phi, b) for b in k.basis.elements])


def invert_iso(phi: PartialIso) -> PartialIso:
    """The inverse map, with basis images recovered by witness folding."""
    express = witness_expresser(phi.rank, phi.images)
    preimages = []
    for c in phi.codomain.basis.elements:
        expr = express(c)
        assert expr is not None, "codomain basis element missed the image fold"
        preimages.append(apply_hom(phi.domain.basis.elements, expr))
    return make_iso(phi.codomain, phi.domain, preimages)


def compose(alpha: PartialIso, beta: PartialIso) -> PartialIso:
    """The product map: first alpha, then beta.

    Defined on the preimage under alpha of codomain(alpha) ∩ domain(beta),
    mapping onto the image of that intersection under beta.
    """
    if alpha.rank != beta.rank:
        raise RankMismatchError(f"mixed ambient ranks {alpha.rank} and {beta.rank}")
    mid = intersect(alpha.codomain, beta.domain)
    dom = image_subgroup(invert_iso(alpha), mid)
    images = [apply(beta, apply(alpha, b)) for b in dom.basis.elements]
    cod = from_generators(alpha.rank, images)
    return make_iso(dom, cod, images)


def compose_many(isos: Sequence[PartialIso]) -> PartialIso:
    """Left-to-right composition of a non-empty sequence."""
    if not isos:
        raise ValueError("compose_many needs at least one map")
    return _functools_reduce(compose, isos)


def equivalent(alpha: PartialIso, beta: PartialIso) -> bool:
    """Agreement on a common finite-index subgroup.

    Tested on the intersection of the two domains; by the unique root
    property this is equivalent to agreement on any smaller
    finite-index subgroup.
    """
    if alpha.rank != beta.rank:
        raise RankMismatchError(f"mixed ambient ranks {alpha.rank} and {beta.rank}")
    common = intersect(alpha.domain, beta.domain)
    return all(
        apply(alpha, b) == apply(beta, b) for b in common.basis.elements
    )


def _candidate_subgroups(rank: int, top: Subgroup, max_index: int):
    """Finite-index subgroups of `top` with ambient index <= max_index.

    Yields `top` itself plus its intersections with a family of mod-p
    kernels.  Used by the brute-force equivalence oracle: agreement on
    any member certifies equivalence, and agreement anywhere implies
    agreement on `top` (raise each element to the power landing in the
    witness subgroup and extract unique roots), so the family loses no
    decisions.
    """
    seen = set()
    top_index = top.index()
    if top_index <= max_index:
        seen.add(top)
        yield top
    weight_sets = {
        2: [(1,), (0, 1), (1, 1), (1, 0)],
        3: [(1,), (0, 1), (1, 1), (1, 2), (1, 0)],
    }
    for p, weight_rows in weight_sets.items():
        if top_index * p > max_index:
            continue
        for row in weight_rows:
            weights = tuple(row[i] if i < len(row) else 0 for i in range(rank))
            if all(w % p == 0 for w in weights):
                continue
            ker = kernel_mod_p(rank, weights, p)
            cand = intersect(top, ker)
            if cand.index() <= max_index and cand not in seen:
                seen.add(cand)
                yield cand


def equivalent_bruteforce(alpha: PartialIso, beta: PartialIso, max_index: int) -> bool:
    """Search for a finite-index subgroup on which the two maps agree.

    Checks basis-by-basis agreement on candidate subgroups of the
    domain intersection whose ambient index is at most max_index; no
    shortcut through the restriction argument is taken on any single
    candidate.  Candidates are independent, so evaluation order cannot
    change the answer.
    """
    if alpha.rank != beta.rank:
        raise RankMismatchError(f"mixed ambient ranks {alpha.rank} and {beta.rank}")
    common = intersect(alpha.domain, beta.domain)
    for h in _candidate_subgroups(alpha.rank, common, max_index):
        if all(apply(alpha, b) == apply(beta, b) for b in h.basis.elements):
            return True
    return False


@dataclass(frozen=True)
class CommClass:
    """A commensurator element: a partial isomorphism up to equivalence."""

    representative: PartialIso

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommClass):
            return NotImplemented
        return equivalent(self.representative, other.representative)

    def __hash__(self) -> int:
        # classes admit no cheap canonical form; hash only the ambient rank
        return hash(("CommClass", self.representative.rank))


def restrict(phi: PartialIso, k: Subgroup) -> PartialIso:
    """The same map with its domain cut down to K <= domain."""
    if k.rank != phi.rank:
        raise RankMismatchError(f"mixed ambient ranks {k.rank} and {phi.rank}")
    for b in k.basis.elements:
        if not phi.domain.contains(b):
            raise NotInSubgroupError(
                f"restriction target is not contained in the domain "
                f"({word_to_text(b)!r} escapes)"
            )
    images = [apply(phi, b) for b in k.basis.elements]
    cod = from_generators(phi.rank, images)
    return make_iso(k, cod, images)


def embed_aut(images: Sequence[Word]) -> PartialIso:
    """An ambient automorphism, given by generator images, as a PartialIso.

    The domain and codomain are the whole group; images must define an
    automorphism (their fold is the whole group; hopfian gives
    injectivity).
    """
    images = tuple(Word(w) for w in images)
    rank = len(images)
    if rank < 1:
        raise InvalidIsoError("an automorphism needs at least one generator image")
    rose = whole_group(rank)
    for w in images:
        if max_generator(w) > rank:
            raise RankMismatchError(f"image {word_to_text(w)!r} exceeds rank {rank}")
    if from_generators(rank, images) != rose:
        raise InvalidIsoError(
            "images do not generate the whole group, so this is not an automorphism"
        )
    return make_iso(rose, rose, images)


def is_identity_class(phi: PartialIso) -> bool:
    """Whether the map agrees with the identity on its domain."""
    return equivalent(phi, identity_iso(phi.domain))


def compute_extension(phi: PartialIso) -> Union[tuple[Word, ...], NoExtension]:
    """Extend a partial isomorphism to an ambient automorphism, if possible.

    For each ambient generator g, the smallest power g^m lying in the
    domain is mapped through phi and an m-th root extracted; unique
    roots make the candidate image forced, so failure of any root, or
    of the validation of the assembled candidate, certifies that no
    extension exists.  Returns the generator images of the unique
    extension, or a NoExtension certificate.
    """
    import math

    if phi.domain.index() is math.inf or phi.codomain.index() is math.inf:
        raise InvalidIsoError("extension analysis needs finite index on both sides")
    rank = phi.rank
    graph = phi.domain.graph
    candidates = []
    for i in range(1, rank + 1):
        # order of the basepoint in the coset action of generator i
        m = 1
        v = graph.out[0][i]
        while v != 0:
            v = graph.out[v][i]
            m += 1
        mapped = apply(phi, power(Word((i,)), m))
        root = nth_root(mapped, m)
        if root is None:
            return NoExtension(
                reason=f"the image of generator {i} raised to {m} has no root "
                f"of exponent {m}, so no automorphism can extend the map",
                generator=i,
                exponent=m,
                word=mapped,
            )
        candidates.append(root)
    if from_generators(rank, candidates) != whole_group(rank):
        return NoExtension(
            reason="the forced candidate images do not generate the whole group"
        )
    for b, img in zip(phi.domain.basis.elements, phi.images):
        if apply_hom(candidates, b) != img:
            return NoExtension(
                reason="the forced candidate automorphism does not agree with "
                f"the map on {word_to_text(b)!r}"
            )
    return tuple(candidates)


def extendAB_certificate(phi: PartialIso, a: Subgroup, b: Subgroup) -> bool:
    """Non-extendability certificate relative to a generating pair A, B.

    Requires join(A, B) to be the whole group and phi to be a self-map
    of its domain.  True when phi is not the identity class yet fixes
    the intersection of its domain with A and with B elementwise: any
    ambient automorphism extending phi would then fix A and B, hence
    everything, contradicting phi ≠ id.
    """
    if a.rank != phi.rank or b.rank != phi.rank:
        raise RankMismatchError("ambient ranks of the subgroups do not match the map")
    if join(a, b) != whole_group(phi.rank):
        raise ValueError("the two subgroups do not generate the whole group")
    if phi.domain != phi.codomain:
        raise InvalidIsoError("certificate applies to self-maps only")
    if is_identity_class(phi):
        return False
    for part in (intersect(phi.domain, a), intersect(phi.domain, b)):
        for w in part.basis.elements:
            if apply(phi, w) != w:
                return False
    return True


def extend_pair(phi1: PartialIso, phi2: PartialIso) -> PartialIso:
    """Common extension of two maps to the join of their domains.

    Requires domain(phi2) normal in the ambient group and agreement of
    the two maps on the intersection of the domains.  Every element of
    the join factors as h1·h2 (h1 from domain(phi1), h2 from
    domain(phi2)); the extension maps it to phi1(h1)·phi2(h2).
    """
    if phi1.rank != phi2.rank:
        raise RankMismatchError(f"mixed ambient ranks {phi1.rank} and {phi2.rank}")
    h1, h2 = phi1.domain, phi2.domain
    if not is_normal(h2):
        raise InvalidIsoError("the second map's domain must be normal")
    common = intersect(h1, h2)
    for w in common.basis.elements:
        if apply(phi1, w) != apply(phi2, w):
            raise InvalidIsoError(
                "the maps disagree on the intersection of their domains "
                f"(at {word_to_text(w)!r})"
            )
    j = join(h1, h2)
    # coset bookkeeping: reach every coset of the normal subgroup that meets
    # the join, recording a representative from domain(phi1)
    graph2 = h2.graph
    reach: dict[int, Word] = {0: EPSILON}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for b in h1.basis.elements:
                t = graph2.trace(v, b)
                if t not in reach:
                    reach[t] = concat(reach[v], b)
                    nxt.append(t)
        frontier = nxt
    images = []
    for w in j.basis.elements:
        v = graph2.trace(0, w)
        rep = reach.get(v)
        assert rep is not None, "join element escaped the reachable cosets"
        tail = concat(invert(rep), w)
        images.append(concat(apply(phi1, rep), apply(phi2, tail)))
    cod = from_generators(phi1.rank, images)
    return make_iso(j, cod, images)


def transfer_to_subgroup(alpha: PartialIso, h: Subgroup) -> PartialIso:
    """View an ambient-group map as one over the free group on basis(H).

    The new domain is the part of H whose image stays in H; all words
    are rewritten over the canonical basis of H, whose letters are the
    generators of the new ambient free group.
    """
    import math

    if h.rank != alpha.rank:
        raise RankMismatchError(f"mixed ambient ranks {h.rank} and {alpha.rank}")
    if h.index() is math.inf:
        raise InvalidIsoError("transfer needs a finite-index subgroup")
    h_basis = h.basis.elements
    pre = image_subgroup(invert_iso(alpha), intersect(alpha.codomain, h))
    dom_ambient = intersect(pre, h)
    dom = rewrite_over_basis(h, dom_ambient)
    images = []
    for c in dom.basis.elements:
        ambient = apply_hom(h_basis, c)
        images.append(h.express_in_basis(apply(alpha, ambient)))
    cod = from_generators(len(h_basis), images)
    return make_iso(dom, cod, images)


def transfer_to_overgroup(beta: PartialIso, h: Subgroup) -> PartialIso:
    """Inverse direction: lift a map over the free group on basis(H) back
    to the ambient group of H.

    beta's ambient rank must equal the rank of H as a free group; its
    words are read as products of basis(H) elements.
    """
    h_basis = h.basis.elements
    if beta.rank != len(h_basis):
        raise RankMismatchError(
            f"the map is over rank {beta.rank} but H has basis size {len(h_basis)}"
        )
    lifted = [apply_hom(h_basis, d) for d in beta.domain.basis.elements]
    dom = from_generators(h.rank, lifted)
    images = []
    for b in dom.basis.elements:
        d = h.express_in_basis(b)
        images.append(apply_hom(h_basis, apply(beta, d)))
    cod = from_generators(h.rank, images)
    return make_iso(dom, cod, images)


def subindex_of_iso(alpha: PartialIso) -> int:
    """Larger of the subindices of the domain and the codomain."""
    return max(subindex(alpha.domain), subindex(alpha.codomain))


# ---------------------------------------------------------------------------
# serialization


def iso_to_document(phi: PartialIso) -> dict:
    """Plain-data form; image order follows the domain's canonical basis."""
    return {
        "rank": phi.rank,
        "domain": graph_to_document(phi.domain.graph),
        "codomain": graph_to_document(phi.codomain.graph),
        "images": [word_to_text(w) for w in phi.images],
    }


def iso_from_document(doc) -> PartialIso:
    """Validate and build a PartialIso from its plain-data form."""
    if not isinstance(doc, dict):
        raise DocumentError("iso document must be an object")
    for field in ("rank", "domain", "codomain", "images"):
        if field not in doc:
            raise DocumentError(f"iso document missing field {field!r}")
    rank = doc["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise DocumentError(f"rank must be a positive integer, got {rank!r}")
    domain = Subgroup(graph_from_document(doc["domain"]))
    codomain = Subgroup(graph_from_document(doc["codomain"]))
    if domain.rank != rank or codomain.rank != rank:
        raise DocumentError("domain/codomain rank disagrees with the document rank")
    raw_images = doc["images"]
    if not isinstance(raw_images, list) or not all(isinstance(s, str) for s in raw_images):
        raise DocumentError("images must be a list of word strings")
    try:
        images = [parse_word(s, rank=rank) for s in raw_images]
    except Exception as exc:
        raise DocumentError(f"bad image word: {exc}") from exc
    try:
        return make_iso(domain, codomain, images)
    except (InvalidIsoError, RankMismatchError) as exc:
        raise DocumentError(f"invalid iso document: {exc}") from exc
