"""Core graphs for finitely generated subgroups of free groups.

A subgroup H of the free group F_rank is represented by its folded core
graph: a based, edge-labeled digraph in which words trace paths (letter
+l follows the l-labeled edge forward, -l backward) and membership in H
is "traces a closed loop at the basepoint".  The graph is kept in a
canonical form (breadth-first vertex numbering from the basepoint,
scanning labels in increasing order, outgoing before incoming), so two
subgroups are equal exactly when their graphs compare equal.

Finite index corresponds to the graph being a cover (every vertex has
exactly one edge per label in each direction); the index is then the
vertex count.  Graph constructions fail fast once they would exceed a
configurable vertex cap (FREECOMM_INDEX_CAP, default 10 000).

Folding optionally carries witness words: each vertex and edge remembers
how it was reached as a product of the input generators, which yields,
for any word of the subgroup, an explicit expression over the original
generating set.  This uses a weighted union-find, so corrections from
vertex identifications compose automatically.

All public objects are immutable; operations return new values.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    DocumentError,
    IndexCapError,
    InfiniteIndexError,
    NotInSubgroupError,
    RankMismatchError,
)
from .words import EPSILON, Word, concat, conjugate, invert, max_generator, word_to_text

__all__ = [
    "Basis",
    "CoreGraph",
    "Subgroup",
    "canonical_form",
    "conjugate_subgroup",
    "equals",
    "express_over",
    "from_generators",
    "graph_from_document",
    "graph_to_document",
    "graph_to_dot",
    "intersect",
    "is_normal",
    "join",
    "kernel_mod_p",
    "overgroups",
    "rewrite_over_basis",
    "subgroup_from_document",
    "subindex",
    "vertex_cap",
    "whole_group",
    "witness_expresser",
]

DEFAULT_VERTEX_CAP = 10_000
VERTEX_CAP_ENV = "FREECOMM_INDEX_CAP"

Edge = tuple[int, int, int]  # (source, label, target)


def vertex_cap() -> int:
    """Current vertex cap; the FREECOMM_INDEX_CAP env var overrides the default."""
    raw = os.environ.get(VERTEX_CAP_ENV)
    if raw is None:
        return DEFAULT_VERTEX_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise IndexCapError(f"{VERTEX_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise IndexCapError(f"{VERTEX_CAP_ENV} must be positive, got {cap}")
    return cap


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class CoreGraph:
    """A folded, based, edge-labeled graph with non-negative integer vertices.

    Instances produced by this module are canonical: the basepoint is 0,
    vertices are numbered in canonical BFS order and edges are sorted.
    """

    rank: int
    edges: tuple[Edge, ...]
    basepoint: int = 0

    @cached_property
    def num_vertices(self) -> int:
        n = self.basepoint + 1
        for u, _, v in self.edges:
            n = max(n, u + 1, v + 1)
        return n

    @cached_property
    def out(self) -> tuple[dict, ...]:
        """out[v][label] = head of the label-edge leaving v, if any."""
        table: tuple[dict, ...] = tuple({} for _ in range(self.num_vertices))
        for u, l, v in self.edges:
            table[u][l] = v
        return table

    @cached_property
    def inc(self) -> tuple[dict, ...]:
        """inc[v][label] = tail of the label-edge entering v, if any."""
        table: tuple[dict, ...] = tuple({} for _ in range(self.num_vertices))
        for u, l, v in self.edges:
            table[v][l] = u
        return table

    def step(self, vertex: int, letter: int) -> Optional[int]:
        """Follow one letter from a vertex; None if the edge is missing."""
        if letter > 0:
            return self.out[vertex].get(letter)
        return self.inc[vertex].get(-letter)

    def trace(self, vertex: int, w: Word) -> Optional[int]:
        """Endpoint of the path spelling w from vertex, or None if it leaves."""
        pos: Optional[int] = vertex
        for a in w:
            pos = self.step(pos, a)
            if pos is None:
                return None
        return pos

    def is_cover(self) -> bool:
        """True when every vertex has a full set of edges both ways."""
        return all(
            len(self.out[v]) == self.rank and len(self.inc[v]) == self.rank
            for v in range(self.num_vertices)
        )


def _bfs(rank: int, base, out: dict, inc: dict):
    """Canonical BFS from the basepoint.

    Scans labels in increasing order, outgoing before incoming.  Returns
    (numbering, visit sequence, parents) where parents[v] = (parent,
    label, direction) describes the discovering tree edge.
    """
    number = {base: 0}
    seq = [base]
    parents: dict = {}
    i = 0
    while i < len(seq):
        v = seq[i]
        i += 1
        ov = out.get(v, {})
        iv = inc.get(v, {})
        for l in range(1, rank + 1):
            w = ov.get(l)
            if w is not None and w not in number:
                number[w] = len(seq)
                seq.append(w)
                parents[w] = (v, l, 1)
            w = iv.get(l)
            if w is not None and w not in number:
                number[w] = len(seq)
                seq.append(w)
                parents[w] = (v, l, -1)
    return number, seq, parents


def _adjacency(edges) -> tuple[dict, dict]:
    out: dict = {}
    inc: dict = {}
    for u, l, v in edges:
        out.setdefault(u, {})[l] = v
        inc.setdefault(v, {})[l] = u
    return out, inc


def _canonical(rank: int, base, edges) -> CoreGraph:
    """Renumber a folded connected graph into canonical form."""
    out, inc = _adjacency(edges)
    number, seq, _parents = _bfs(rank, base, out, inc)
    vertices = set(out) | set(inc) | {base}
    if len(number) < len(vertices):
        raise ValueError("graph is not connected from the basepoint")
    new_edges = tuple(sorted((number[u], l, number[v]) for u, l, v in edges))
    return CoreGraph(rank=rank, edges=new_edges, basepoint=0)


def _core(base, edges) -> set:
    """Drop trees hanging off the graph; the basepoint survives regardless."""
    edges = set(edges)
    deg: dict = {}
    incident: dict = {}
    for e in edges:
        u, _, v = e
        for x in (u, v):
            deg[x] = deg.get(x, 0) + 1
            incident.setdefault(x, set()).add(e)
    stack = [v for v, d in deg.items() if d <= 1 and v != base]
    while stack:
        v = stack.pop()
        if v == base or deg.get(v, 0) > 1:
            continue
        for e in list(incident.get(v, ())):
            if e not in edges:
                continue
            edges.discard(e)
            u, _, w2 = e
            for x in (u, w2):
                deg[x] -= 1
                if x != v and x != base and deg[x] <= 1:
                    stack.append(x)
        incident.get(v, set()).clear()
    return edges


def canonical_form(graph: CoreGraph) -> CoreGraph:
    """Canonical relabeling of a folded connected graph."""
    return _canonical(graph.rank, graph.basepoint, graph.edges)


# ---------------------------------------------------------------------------
# folding

# The folder identifies vertices until no vertex has two same-labeled
# edges in the same direction.  With witness tracking on, every vertex
# carries a "potential" word over the input generator alphabet relating
# it to its union-find parent, and every stored edge carries the witness
# of its traversal; identifications then need no global rewriting.


class _FoldGraph:
    def __init__(self, rank: int, witness: bool = False, cap: Optional[int] = None):
        self.rank = rank
        self.witness = witness
        self.cap = vertex_cap() if cap is None else cap
        self.parent: list[int] = []
        self.pot: list[Optional[Word]] = []
        self.out: list[dict] = []  # per root: label -> (target id, witness)
        self.inc: list[dict] = []  # per root: label -> source id
        self.pending: deque = deque()

    # -- union-find with potentials

    def new_vertex(self) -> int:
        if len(self.parent) >= self.cap:
            raise IndexCapError(
                f"construction exceeded the vertex cap ({self.cap}); "
                f"raise {VERTEX_CAP_ENV} to allow larger graphs"
            )
        v = len(self.parent)
        self.parent.append(v)
        self.pot.append(EPSILON if self.witness else None)
        self.out.append({})
        self.inc.append({})
        return v

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def find_pot(self, x: int) -> tuple[int, Word]:
        """Root of x and the witness relating x's frame to the root's."""
        chain = []
        while self.parent[x] != x:
            chain.append(x)
            x = self.parent[x]
        root = x
        for y in reversed(chain):
            p = self.parent[y]
            if p != root:
                self.pot[y] = concat(self.pot[y], self.pot[p])
                self.parent[y] = root
        return root, (self.pot[chain[0]] if chain else EPSILON)

    def _pot_of(self, x: int) -> tuple[int, Word]:
        if self.witness:
            return self.find_pot(x)
        return self.find(x), EPSILON

    # -- edge insertion and folding

    def add_edge(self, u: int, letter: int, v: int, aux: Optional[Word] = None) -> None:
        if self.witness and aux is None:
            aux = EPSILON
        self.pending.append(("e", u, letter, v, aux))
        self._drain()

    def _drain(self) -> None:
        while self.pending:
            item = self.pending.popleft()
            if item[0] == "e":
                self._insert(*item[1:])
            else:
                self._merge(*item[1:])

    def _insert(self, u: int, letter: int, v: int, aux: Optional[Word]) -> None:
        ur, pu = self._pot_of(u)
        vr, pv = self._pot_of(v)
        if self.witness:
            eff = concat(concat(invert(pu), aux), pv)
        else:
            eff = None
        cur = self.out[ur].get(letter)
        if cur is not None:
            t_id, a1 = cur
            t1r, pt = self._pot_of(t_id)
            alpha = concat(a1, pt) if self.witness else None
            self.out[ur][letter] = (t1r, alpha)
            if t1r == vr:
                return  # parallel duplicate; the stored witness stays
            # fold the two targets together
            gamma = concat(invert(eff), alpha) if self.witness else None
            self.pending.append(("m", vr, t1r, gamma))
            return
        cin = self.inc[vr].get(letter)
        if cin is not None:
            s1r, ps = self._pot_of(cin)
            self.inc[vr][letter] = s1r
            entry = self.out[s1r][letter]
            t_id, a1 = entry
            if self.witness:
                _, pt = self._pot_of(t_id)
                alpha = concat(a1, pt)
            else:
                alpha = None
            if s1r == ur:
                return  # same edge slot; nothing new
            # fold the two sources together
            gamma = concat(eff, invert(alpha)) if self.witness else None
            self.pending.append(("m", ur, s1r, gamma))
            return
        self.out[ur][letter] = (vr, eff)
        self.inc[vr][letter] = ur

    def _merge(self, x: int, y: int, gamma: Optional[Word]) -> None:
        xr, px = self._pot_of(x)
        yr, py = self._pot_of(y)
        if xr == yr:
            return
        g = concat(concat(invert(px), gamma), py) if self.witness else None
        # keep the vertex with more edges live
        if len(self.out[xr]) + len(self.inc[xr]) > len(self.out[yr]) + len(self.inc[yr]):
            xr, yr = yr, xr
            g = invert(g) if self.witness else None
        # detach the dead vertex's edges (both sides) before re-rooting,
        # while find() still reports xr as its own root
        dead_out = self.out[xr]
        dead_inc = self.inc[xr]
        self.out[xr] = {}
        self.inc[xr] = {}
        ginv = invert(g) if self.witness else None
        requeue = []
        for l, (t_id, a) in dead_out.items():
            tr = self.find(t_id)
            if tr != xr:
                back = self.inc[tr].get(l)
                if back is not None and self.find(back) == xr:
                    del self.inc[tr][l]
            requeue.append(("e", yr, l, t_id, concat(ginv, a) if self.witness else None))
        for l, s_id in dead_inc.items():
            sr = self.find(s_id)
            if sr == xr:
                continue  # self-loop, already queued above
            entry = self.out[sr].pop(l, None)
            if entry is None:
                continue
            t_id, a = entry
            requeue.append(("e", sr, l, t_id, a))
        self.parent[xr] = yr
        if self.witness:
            self.pot[xr] = g
        self.pending.extend(requeue)

    # -- building blocks

    def add_loop(self, base: int, w: Word, seed: Optional[Word] = None) -> None:
        """Attach a petal spelling w at base; its witness is seed."""
        if not w:
            return
        pos = base
        for i, a in enumerate(w):
            last = i == len(w) - 1
            nxt = base if last else self.new_vertex()
            aux: Optional[Word] = None
            if self.witness:
                aux = seed if i == 0 else EPSILON
                if aux is None:
                    aux = EPSILON
            if a > 0:
                self.add_edge(pos, a, nxt, aux)
            else:
                self.add_edge(nxt, -a, pos, invert(aux) if self.witness else None)
            pos = nxt

    def folded_edges(self, base: int) -> tuple[int, set]:
        roots = [v for v in range(len(self.parent)) if self.find(v) == v]
        edges = set()
        for r in roots:
            for l, (t_id, _a) in self.out[r].items():
                edges.add((r, l, self.find(t_id)))
        return self.find(base), edges

    # -- witness tracing

    def express(self, base: int, w: Word) -> Optional[Word]:
        """A word over the generator alphabet mapping onto w, or None.

        Requires witness mode.  Returns None when w is not in the
        subgroup the folded graph represents.
        """
        pos = base
        acc: list[int] = []
        for a in w:
            r, pp = self.find_pot(pos)
            l = abs(a)
            if a > 0:
                entry = self.out[r].get(l)
                if entry is None:
                    return None
                t_id, ea = entry
                acc.extend(pp)
                acc.extend(ea)
                pos = t_id
            else:
                s_id = self.inc[r].get(l)
                if s_id is None:
                    return None
                sr, _ = self.find_pot(s_id)
                t_id, ea = self.out[sr][l]
                _, pt = self.find_pot(t_id)
                # step backward: undo the edge witness, land in the source frame
                acc.extend(pp)
                acc.extend(invert(concat(ea, pt)))
                pos = sr
        er, pe = self.find_pot(pos)
        br, pb = self.find_pot(base)
        if er != br:
            return None
        return concat(concat(Word(acc), pe), invert(pb))


def _build_bouquet(rank: int, gens: Sequence[Word], witness: bool) -> _FoldGraph:
    fg = _FoldGraph(rank, witness=witness)
    base = fg.new_vertex()
    for i, g in enumerate(gens):
        if max_generator(g) > rank:
            raise RankMismatchError(f"generator {word_to_text(g)!r} exceeds rank {rank}")
        fg.add_loop(base, g, Word((i + 1,)) if witness else None)
    return fg


def express_over(rank: int, gens: Sequence[Word], w: Word) -> Optional[Word]:
    """Express w as a word in the given generators, or None if impossible.

    The result v satisfies apply_hom(gens, v) == w whenever it exists; it
    is one valid expression, not a canonical one.
    """
    return witness_expresser(rank, gens)(w)


def witness_expresser(rank: int, gens: Sequence[Word]):
    """Reusable form of express_over for many words over one generating set."""
    fg = _build_bouquet(rank, list(gens), witness=True)

    def express(w: Word) -> Optional[Word]:
        if max_generator(w) > rank:
            raise RankMismatchError(f"word {word_to_text(w)!r} exceeds rank {rank}")
        return fg.express(0, w)

    return express


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Basis:
    """A free basis read off a core graph's canonical spanning tree."""

    elements: tuple[Word, ...]
    tree_edges: frozenset


@dataclass(frozen=True)
class Subgroup:
    """A finitely generated subgroup of F_rank, held as a canonical core graph."""

    graph: CoreGraph

    @property
    def rank(self) -> int:
        """Ambient rank (of the whole free group, not of this subgroup)."""
        return self.graph.rank

    def contains(self, w: Word) -> bool:
        if max_generator(w) > self.rank:
            raise RankMismatchError(f"word {word_to_text(w)!r} exceeds rank {self.rank}")
        return self.graph.trace(0, w) == 0

    def index(self):
        """Index in the ambient free group: an int, or math.inf."""
        return self.graph.num_vertices if self.graph.is_cover() else math.inf

    @cached_property
    def _tree(self):
        """(parents, paths): canonical spanning tree and base-to-vertex words."""
        g = self.graph
        out = {v: g.out[v] for v in range(g.num_vertices)}
        inc = {v: g.inc[v] for v in range(g.num_vertices)}
        number, seq, parents = _bfs(g.rank, 0, out, inc)
        assert all(number[v] == v for v in seq), "graph not in canonical form"
        paths: list[Word] = [EPSILON] * g.num_vertices
        for v in seq[1:]:
            p, l, direction = parents[v]
            paths[v] = Word(tuple(paths[p]) + (l if direction > 0 else -l,))
        tree_edges = set()
        for v, (p, l, direction) in parents.items():
            tree_edges.add((p, l, v) if direction > 0 else (v, l, p))
        return parents, tuple(paths), frozenset(tree_edges)

    @cached_property
    def basis(self) -> Basis:
        """Canonical free basis; its size is the rank of the subgroup."""
        _, paths, tree_edges = self._tree
        elements = []
        for u, l, v in sorted(self.graph.edges):
            if (u, l, v) in tree_edges:
                continue
            elements.append(Word(tuple(paths[u]) + (l,) + tuple(invert(paths[v]))))
        return Basis(elements=tuple(elements), tree_edges=tree_edges)

    @cached_property
    def _basis_index(self) -> dict:
        _, paths, tree_edges = self._tree
        table = {}
        i = 0
        for u, l, v in sorted(self.graph.edges):
            if (u, l, v) in tree_edges:
                continue
            table[(u, l, v)] = i
            i += 1
        return table

    def express_in_basis(self, w: Word) -> Word:
        """Rewrite w (which must lie in this subgroup) over the canonical basis.

        The result v satisfies apply_hom(basis.elements, v) == w.
        """
        if max_generator(w) > self.rank:
            raise RankMismatchError(f"word {word_to_text(w)!r} exceeds rank {self.rank}")
        g = self.graph
        table = self._basis_index
        pos = 0
        letters: list[int] = []
        for a in w:
            l = abs(a)
            if a > 0:
                nxt = g.out[pos].get(l)
                if nxt is None:
                    raise NotInSubgroupError(f"{word_to_text(w)!r} is not in the subgroup")
                idx = table.get((pos, l, nxt))
                if idx is not None:
                    letters.append(idx + 1)
                pos = nxt
            else:
                prv = g.inc[pos].get(l)
                if prv is None:
                    raise NotInSubgroupError(f"{word_to_text(w)!r} is not in the subgroup")
                idx = table.get((prv, l, pos))
                if idx is not None:
                    letters.append(-(idx + 1))
                pos = prv
        if pos != 0:
            raise NotInSubgroupError(f"{word_to_text(w)!r} is not in the subgroup")
        return Word(letters)

    def coset_representatives(self) -> tuple[Word, ...]:
        """Spanning-tree transversal words, one per vertex, in canonical order."""
        if not self.graph.is_cover():
            raise InfiniteIndexError("coset representatives need finite index")
        _, paths, _ = self._tree
        return paths


def _make_subgroup(rank: int, base, edges) -> Subgroup:
    return Subgroup(_canonical(rank, base, _core(base, set(edges))))


def whole_group(rank: int) -> Subgroup:
    """The full free group as a subgroup of itself (a one-vertex rose)."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    return Subgroup(CoreGraph(rank=rank, edges=tuple((0, l, 0) for l in range(1, rank + 1))))


def from_generators(rank: int, gens: Iterable[Word]) -> Subgroup:
    """Fold the given words into the core graph of the subgroup they generate."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    fg = _build_bouquet(rank, [Word(g) for g in gens], witness=False)
    base, edges = fg.folded_edges(0)
    return _make_subgroup(rank, base, edges)


def equals(h: Subgroup, k: Subgroup) -> bool:
    """Equality as subgroups (the canonical graphs coincide)."""
    return h == k


def _require_same_rank(h: Subgroup, k: Subgroup) -> int:
    if h.rank != k.rank:
        raise RankMismatchError(f"mixed ambient ranks {h.rank} and {k.rank}")
    return h.rank


def intersect(h: Subgroup, k: Subgroup) -> Subgroup:
    """Intersection via the fiber product of the two core graphs."""
    rank = _require_same_rank(h, k)
    ga, gb = h.graph, k.graph
    cap = vertex_cap()
    start = (0, 0)
    seen = {start: 0}
    queue = deque([start])
    edges = set()
    while queue:
        pair = queue.popleft()
        a, b = pair
        pid = seen[pair]
        for l in range(1, rank + 1):
            a2 = ga.out[a].get(l)
            b2 = gb.out[b].get(l)
            if a2 is not None and b2 is not None:
                np = (a2, b2)
                if np not in seen:
                    if len(seen) >= cap:
                        raise IndexCapError(
                            f"fiber product exceeded the vertex cap ({cap})"
                        )
                    seen[np] = len(seen)
                    queue.append(np)
                edges.add((pid, l, seen[np]))
            a2 = ga.inc[a].get(l)
            b2 = gb.inc[b].get(l)
            if a2 is not None and b2 is not None:
                np = (a2, b2)
                if np not in seen:
                    if len(seen) >= cap:
                        raise IndexCapError(
                            f"fiber product exceeded the vertex cap ({cap})"
                        )
                    seen[np] = len(seen)
                    queue.append(np)
                edges.add((seen[np], l, pid))
    return _make_subgroup(rank, 0, edges)


def join(h: Subgroup, k: Subgroup) -> Subgroup:
    """Smallest subgroup containing both: wedge the graphs and fold."""
    rank = _require_same_rank(h, k)
    fg = _FoldGraph(rank)
    ids_h = [fg.new_vertex() for _ in range(h.graph.num_vertices)]
    ids_k = [
        ids_h[0] if v == 0 else fg.new_vertex() for v in range(k.graph.num_vertices)
    ]
    for u, l, v in h.graph.edges:
        fg.add_edge(ids_h[u], l, ids_h[v])
    for u, l, v in k.graph.edges:
        fg.add_edge(ids_k[u], l, ids_k[v])
    base, edges = fg.folded_edges(ids_h[0])
    return _make_subgroup(rank, base, edges)


def _join_word(h: Subgroup, w: Word) -> Subgroup:
    """Join with the cyclic subgroup generated by one word."""
    fg = _FoldGraph(h.rank)
    ids = [fg.new_vertex() for _ in range(h.graph.num_vertices)]
    for u, l, v in h.graph.edges:
        fg.add_edge(ids[u], l, ids[v])
    fg.add_loop(ids[0], w)
    base, edges = fg.folded_edges(ids[0])
    return _make_subgroup(h.rank, base, edges)


def conjugate_subgroup(h: Subgroup, g: Word) -> Subgroup:
    """The subgroup g⁻¹·H·g."""
    if max_generator(g) > h.rank:
        raise RankMismatchError(f"word {word_to_text(g)!r} exceeds rank {h.rank}")
    t = h.graph.trace(0, g)
    if t is not None:
        # same graph, basepoint moved to the endpoint of g
        return _make_subgroup(h.rank, t, h.graph.edges)
    return from_generators(h.rank, [conjugate(b, g) for b in h.basis.elements])


def is_normal(h: Subgroup) -> bool:
    """Normality in the ambient group; requires finite index."""
    if not h.graph.is_cover():
        raise InfiniteIndexError("normality test needs finite index")
    return all(
        conjugate_subgroup(h, Word((i,))) == h for i in range(1, h.rank + 1)
    )


def kernel_mod_p(rank: int, weights: Sequence[int], p: int) -> Subgroup:
    """Kernel of the map to Z/p sending generator i to weights[i-1].

    The coset graph has the residues as vertices and the i-labeled edge
    r -> r + weights[i-1]; the component of 0 is the kernel's core graph.
    """
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    if p < 2:
        raise ValueError(f"modulus must be >= 2, got {p}")
    if len(weights) != rank:
        raise RankMismatchError(f"expected {rank} weights, got {len(weights)}")
    if all(w % p == 0 for w in weights):
        raise ValueError("all weights vanish mod p; the kernel is the whole group")
    if p > vertex_cap():
        raise IndexCapError(f"modulus {p} exceeds the vertex cap ({vertex_cap()})")
    edges = set()
    for r in range(p):
        for i, w in enumerate(weights, start=1):
            edges.add((r, i, (r + w) % p))
    # keep the component of 0 (proper when gcd(weights, p) > 1)
    out, inc = _adjacency(edges)
    number, _, _ = _bfs(rank, 0, out, inc)
    edges = {e for e in edges if e[0] in number}
    return _make_subgroup(rank, 0, edges)


def rewrite_over_basis(h: Subgroup, k: Subgroup) -> Subgroup:
    """K <= H, expressed as a subgroup of the free group on basis(H)."""
    _require_same_rank(h, k)
    m = len(h.basis.elements)
    if m == 0:
        raise ValueError("cannot rewrite over the basis of the trivial subgroup")
    return from_generators(m, [h.express_in_basis(b) for b in k.basis.elements])


def overgroups(h: Subgroup) -> list[Subgroup]:
    """All subgroups between H and the whole group (H has finite index).

    Every overgroup is generated by H together with the coset
    representatives it contains, so closing the single-representative
    joins under pairwise joins enumerates the full (finite) interval.
    """
    reps = h.coset_representatives()
    members = {h}
    todo = deque()
    for w in reps:
        j = _join_word(h, w)
        if j not in members:
            members.add(j)
            todo.append(j)
    while todo:
        a = todo.popleft()
        for b in list(members):
            j = join(a, b)
            if j not in members:
                members.add(j)
                todo.append(j)
    return sorted(members, key=lambda s: (s.index(), s.graph.edges))


def subindex(h: Subgroup) -> int:
    """Smallest n admitting a chain from H to the whole group with all
    relative indices <= n.

    Computed as a minimax path weight over the overgroup interval, which
    suffices because any chain can be intersected down into it.
    """
    import heapq

    if not h.graph.is_cover():
        raise InfiniteIndexError("subindex needs finite index")
    rose = whole_group(h.rank)
    if h == rose:
        return 1
    lattice = overgroups(h)
    idx = {s: s.index() for s in lattice}
    best = {h: 1}
    heap = [(1, 0, h)]
    counter = 1
    while heap:
        d, _, u = heapq.heappop(heap)
        if u == rose:
            return d
        if d > best.get(u, math.inf):
            continue
        for v in lattice:
            if v is u or idx[v] >= idx[u]:
                continue
            if idx[u] % idx[v] != 0:
                continue
            if not all(v.contains(b) for b in u.basis.elements):
                continue
            nd = max(d, idx[u] // idx[v])
            if nd < best.get(v, math.inf):
                best[v] = nd
                heapq.heappush(heap, (nd, counter, v))
                counter += 1
    raise RuntimeError("overgroup search never reached the whole group")


# ---------------------------------------------------------------------------
# serialization


def graph_to_document(g: CoreGraph) -> dict:
    """Plain-data form: rank, basepoint, and [source, target, label] rows."""
    return {
        "rank": g.rank,
        "basepoint": g.basepoint,
        "edges": [[u, v, l] for u, l, v in g.edges],
    }


def graph_from_document(doc) -> CoreGraph:
    """Validate and canonicalize a graph document.

    Raises DocumentError naming the violated invariant: malformed rows,
    labels out of range, unfolded or disconnected graphs, and dangling
    non-basepoint vertices are all rejected.
    """
    if not isinstance(doc, dict):
        raise DocumentError("graph document must be an object")
    try:
        rank = doc["rank"]
        basepoint = doc["basepoint"]
        rows = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"graph document missing field: {exc}") from exc
    if not isinstance(rank, int) or rank < 1:
        raise DocumentError(f"rank must be a positive integer, got {rank!r}")
    if not isinstance(basepoint, int) or basepoint < 0:
        raise DocumentError(f"basepoint must be a non-negative integer, got {basepoint!r}")
    if not isinstance(rows, list):
        raise DocumentError("edges must be a list of [source, target, label] rows")
    edges = set()
    for row in rows:
        if (
            not isinstance(row, list)
            or len(row) != 3
            or not all(isinstance(x, int) for x in row)
        ):
            raise DocumentError(f"bad edge row {row!r}: expected [source, target, label]")
        s, t, l = row
        if s < 0 or t < 0:
            raise DocumentError(f"bad edge row {row!r}: vertices are non-negative")
        if not 1 <= l <= rank:
            raise DocumentError(f"bad edge row {row!r}: label out of range 1..{rank}")
        edges.add((s, l, t))
    out: dict = {}
    inc: dict = {}
    for u, l, v in edges:
        if l in out.setdefault(u, {}):
            raise DocumentError(f"not folded: vertex {u} has two outgoing edges labeled {l}")
        if l in inc.setdefault(v, {}):
            raise DocumentError(f"not folded: vertex {v} has two incoming edges labeled {l}")
        out[u][l] = v
        inc[v][l] = u
    vertices = set(out) | set(inc) | {basepoint}
    number, _, _ = _bfs(rank, basepoint, out, inc)
    if len(number) < len(vertices):
        raise DocumentError("not connected: some vertex is unreachable from the basepoint")
    for v in vertices:
        deg = len(out.get(v, {})) + len(inc.get(v, {}))
        if deg <= 1 and v != basepoint:
            raise DocumentError(f"not a core graph: vertex {v} has degree {deg}")
    return _canonical(rank, basepoint, edges)


def subgroup_from_document(doc) -> Subgroup:
    return Subgroup(graph_from_document(doc))


def _letter_name(l: int) -> str:
    return chr(ord("a") + l - 1) if l <= 26 else f"x{l}"


def graph_to_dot(g: CoreGraph, name: str = "stallings") -> str:
    """Graphviz text; the basepoint is drawn with a double circle."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(g.num_vertices):
        shape = "doublecircle" if v == g.basepoint else "circle"
        lines.append(f'  {v} [shape={shape}];')
    for u, l, v in g.edges:
        lines.append(f'  {u} -> {v} [label="{_letter_name(l)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
