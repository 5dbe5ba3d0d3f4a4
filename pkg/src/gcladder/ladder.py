"""Ladder diagrams and their face lattices.

A composition k = (k_1, ..., k_s) of n determines a directed grid graph
anchored at the origin: the induced subgraph of the non-negative quadrant
grid on all points lying weakly below-left of one of the terminal corners
(n_i, n - n_i), where n_i are the partial sums of k.  Every edge steps one
unit up or right, so any directed origin-to-terminal path is monotone and
of length n.

A *face* of the diagram is an edge subset that covers every terminal corner
and is a union of such origin-to-terminal paths; its dimension is its cycle
rank.  Faces are stored as bit vectors over a canonical edge numbering
(horizontal edges first, then vertical, each block sorted by head
coordinate), which makes the lattice operations integer bit arithmetic and
serialization deterministic.

Two independent enumerators are provided: ``enumerate_faces`` recurses over
assignment words (attaching the terminal-edge gadget of each word to every
face of the corresponding child diagram), while ``brute_force_faces``
filters all 2^|E| edge subsets through the face recognizer and never shares
code with the recursion.
"""

from __future__ import annotations

import functools

import numpy as np

from . import kernels
from .words import (
    all_words,
    interleave,
    r_transform,
    reduce_composition,
    word_tilde,
    word_weight,
)

# Brute force walks all 2^|E| subsets; refuse anything bigger than this.
MAX_BRUTE_FORCE_EDGES = 22
# Face bit vectors ride in signed 64-bit arrays during enumeration.
_MAX_MASK_BITS = 62


class LadderDiagram:
    """The grid graph of a reduced composition, with canonical edge indexing.

    Instances are interned per reduced composition (see ``build_diagram``),
    immutable after construction, and safe to share across threads.
    """

    __slots__ = (
        "composition",
        "n",
        "s",
        "partial_sums",
        "terminals",
        "vertices",
        "vertex_index",
        "edges",
        "edge_index",
        "edge_tails",
        "edge_heads",
        "edges_topo",
        "origin_index",
        "terminal_indices",
        "terminal_in_masks",
        "in_edges",
        "out_edges",
        "full_mask",
        "axes_mask",
    )

    def __init__(self, composition):
        comp = reduce_composition(composition)
        if comp != tuple(composition):
            raise ValueError("LadderDiagram requires a reduced composition; use build_diagram")
        self.composition = comp
        self.n = sum(comp)
        self.s = len(comp)
        sums = [0]
        for p in comp:
            sums.append(sums[-1] + p)
        self.partial_sums = tuple(sums)
        n = self.n
        # v_0 = (0, n) down to v_s = (n, 0); the degenerate diagram keeps the
        # origin as its single (terminal) vertex.
        self.terminals = tuple((m, n - m) for m in sums)

        # Column heights: for column a, points up to n - min{partial sum >= a}.
        def height(a):
            for m in sums:
                if m >= a:
                    return n - m
            raise AssertionError

        verts = [
            (a, b) for a in range(n + 1) for b in range(height(a) + 1)
        ]
        verts.sort(key=lambda v: (v[0] + v[1], v[0]))  # topological order
        self.vertices = tuple(verts)
        self.vertex_index = {v: i for i, v in enumerate(verts)}
        vset = self.vertex_index

        horiz = []
        vert = []
        for (a, b) in sorted(vset):
            if (a + 1, b) in vset:
                horiz.append(((a, b), (a + 1, b)))
            if (a, b + 1) in vset:
                vert.append(((a, b), (a, b + 1)))
        # Canonical order: horizontals h(i,j) = ((i-1,j),(i,j)) sorted by head
        # (i, j), then verticals v(i,j) = ((i,j-1),(i,j)) likewise.
        horiz.sort(key=lambda e: e[1])
        vert.sort(key=lambda e: e[1])
        edges = tuple(horiz + vert)
        self.edges = edges
        self.edge_index = {e: i for i, e in enumerate(edges)}
        self.edge_tails = tuple(vset[e[0]] for e in edges)
        self.edge_heads = tuple(vset[e[1]] for e in edges)
        order = sorted(range(len(edges)), key=lambda e: sum(edges[e][0]))
        self.edges_topo = tuple(order)
        self.origin_index = vset[(0, 0)]
        self.terminal_indices = tuple(vset[t] for t in self.terminals)
        in_edges = [[] for _ in verts]
        out_edges = [[] for _ in verts]
        for e in range(len(edges)):
            out_edges[self.edge_tails[e]].append(e)
            in_edges[self.edge_heads[e]].append(e)
        self.in_edges = tuple(tuple(es) for es in in_edges)
        self.out_edges = tuple(tuple(es) for es in out_edges)
        self.terminal_in_masks = tuple(
            sum(1 << e for e in self.in_edges[t]) for t in self.terminal_indices
        )
        self.full_mask = (1 << len(edges)) - 1
        axes = 0
        for i in range(n):
            axes |= 1 << self.edge_index[((i, 0), (i + 1, 0))]
            axes |= 1 << self.edge_index[((0, i), (0, i + 1))]
        self.axes_mask = axes

    @property
    def num_edges(self):
        return len(self.edges)

    def edge_bit(self, tail, head):
        """Bit value of a geometric edge, or 0 if absent from the diagram."""
        idx = self.edge_index.get((tuple(tail), tuple(head)))
        return 0 if idx is None else 1 << idx

    def __repr__(self):
        return f"LadderDiagram{self.composition}"


@functools.lru_cache(maxsize=None)
def _build_reduced(comp):
    return LadderDiagram(comp)


def build_diagram(k):
    """The interned diagram of a composition (zero parts are stripped)."""
    return _build_reduced(reduce_composition(k))


class DiagramFace:
    """An edge subset of a diagram satisfying the face conditions.

    Construction does not re-validate; use ``is_face`` (or the enumerators,
    which only produce valid faces) when the subset is untrusted.
    """

    __slots__ = ("diagram", "mask", "_dim")

    def __init__(self, diagram, mask, dim=None):
        self.diagram = diagram
        self.mask = int(mask)
        self._dim = dim

    @property
    def dim(self):
        if self._dim is None:
            self._dim = face_dimension(self)
        return self._dim

    def edge_indices(self):
        m = self.mask
        out = []
        while m:
            e = (m & -m).bit_length() - 1
            out.append(e)
            m &= m - 1
        return out

    def edge_set(self):
        return [self.diagram.edges[e] for e in self.edge_indices()]

    def vertex_indices(self):
        if self.diagram.n == 0:
            return {self.diagram.origin_index}
        vs = set()
        for e in self.edge_indices():
            vs.add(self.diagram.edge_tails[e])
            vs.add(self.diagram.edge_heads[e])
        return vs

    def is_full(self):
        return self.mask == self.diagram.full_mask

    def contains(self, other):
        _require_same_diagram(self, other)
        return self.mask | other.mask == self.mask

    def __eq__(self, other):
        if not isinstance(other, DiagramFace):
            return NotImplemented
        return (
            self.diagram.composition == other.diagram.composition
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.diagram.composition, self.mask))

    def __repr__(self):
        width = max(1, (self.diagram.num_edges + 3) // 4)
        return f"DiagramFace({self.diagram.composition}, 0x{self.mask:0{width}x})"


class _Bottom:
    """Formal least element of the face lattice (the empty polytope face)."""

    __slots__ = ()

    def __repr__(self):
        return "BOTTOM"


BOTTOM = _Bottom()


def _require_same_diagram(f1, f2):
    if f1.diagram is not f2.diagram:
        raise ValueError(
            f"faces live on different diagrams: {f1.diagram} vs {f2.diagram}"
        )


def _reach_forward(diagram, mask):
    fwd = [False] * len(diagram.vertices)
    fwd[diagram.origin_index] = True
    tails, heads = diagram.edge_tails, diagram.edge_heads
    for e in diagram.edges_topo:
        if mask >> e & 1 and fwd[tails[e]]:
            fwd[heads[e]] = True
    return fwd


def _reach_backward(diagram, mask):
    bwd = [False] * len(diagram.vertices)
    for t in diagram.terminal_indices:
        bwd[t] = True
    tails, heads = diagram.edge_tails, diagram.edge_heads
    for e in reversed(diagram.edges_topo):
        if mask >> e & 1 and bwd[heads[e]]:
            bwd[tails[e]] = True
    return bwd


def is_face(diagram, mask):
    """Face recognizer: terminals covered and every edge lies on a directed
    origin-to-terminal path inside the subset.

    Since all edges step up or right, those paths are exactly the monotone
    shortest paths, so this matches the union-of-paths definition.
    """
    mask = int(mask)
    if mask & ~diagram.full_mask:
        raise ValueError("edge subset uses bits outside the diagram")
    if diagram.n == 0:
        return mask == 0
    for tmask in diagram.terminal_in_masks:
        if not mask & tmask:
            return False
    fwd = _reach_forward(diagram, mask)
    bwd = _reach_backward(diagram, mask)
    tails, heads = diagram.edge_tails, diagram.edge_heads
    m = mask
    while m:
        e = (m & -m).bit_length() - 1
        if not (fwd[tails[e]] and bwd[heads[e]]):
            return False
        m &= m - 1
    return True


def is_face_local(diagram, mask):
    """Face recognizer by the local characterization: terminals covered and
    no non-extremal vertex has incoming edges without outgoing ones or vice
    versa (the six impossible one-sided configurations).

    Kept separate from ``is_face`` so the equivalence of the two
    characterizations is testable rather than assumed.
    """
    mask = int(mask)
    if mask & ~diagram.full_mask:
        raise ValueError("edge subset uses bits outside the diagram")
    if diagram.n == 0:
        return mask == 0
    for tmask in diagram.terminal_in_masks:
        if not mask & tmask:
            return False
    extremal = set(diagram.terminal_indices)
    extremal.add(diagram.origin_index)
    for v in range(len(diagram.vertices)):
        if v in extremal:
            continue
        has_in = any(mask >> e & 1 for e in diagram.in_edges[v])
        has_out = any(mask >> e & 1 for e in diagram.out_edges[v])
        if has_in != has_out:
            return False
    return True


def face_dimension(face):
    """Cycle rank |E| - |V| + 1 of a face; the face must be connected."""
    d = face.diagram
    if d.n == 0:
        return 0
    edges = face.edge_indices()
    verts = face.vertex_indices()
    components = _component_count(d, edges, verts)
    if components != 1:
        raise AssertionError(
            f"face has {components} components; recognizer invariant violated"
        )
    return len(edges) - len(verts) + 1


def _component_count(diagram, edge_indices, vertex_indices):
    parent = {v: v for v in vertex_indices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edge_indices:
        a, b = find(diagram.edge_tails[e]), find(diagram.edge_heads[e])
        if a != b:
            parent[a] = b
    return len({find(v) for v in vertex_indices})


def join(f1, f2):
    """Least upper bound: the edge-set union (always a face)."""
    if f1 is BOTTOM:
        return f2
    if f2 is BOTTOM:
        return f1
    _require_same_diagram(f1, f2)
    return DiagramFace(f1.diagram, f1.mask | f2.mask)


def meet(f1, f2):
    """Greatest lower bound: the maximal face inside the edge intersection,
    or BOTTOM when the intersection contains no face.
    """
    if f1 is BOTTOM or f2 is BOTTOM:
        return BOTTOM
    _require_same_diagram(f1, f2)
    d = f1.diagram
    mask = f1.mask & f2.mask
    tails, heads = d.edge_tails, d.edge_heads
    while True:
        # Drop edges not on any surviving origin-to-terminal path.
        fwd = _reach_forward(d, mask)
        bwd = _reach_backward(d, mask)
        kept = 0
        m = mask
        while m:
            e = (m & -m).bit_length() - 1
            if fwd[tails[e]] and bwd[heads[e]]:
                kept |= 1 << e
            m &= m - 1
        if kept == mask:
            break
        mask = kept
    if is_face(d, mask):
        return DiagramFace(d, mask)
    return BOTTOM


def assignment_of_face(face):
    """Word of incoming-edge choices at the interior terminals of a face."""
    d = face.diagram
    letters = []
    for t in range(1, d.s):
        a, b = d.terminals[t]
        alpha = 1 if face.mask & d.edge_bit((a - 1, b), (a, b)) else 0
        beta = 1 if face.mask & d.edge_bit((a, b - 1), (a, b)) else 0
        if not (alpha or beta):
            raise ValueError(f"terminal {(a, b)} is uncovered; not a face")
        letters.append((alpha, beta))
    return tuple(letters)


def _gadget_mask(diagram, word):
    """Bit mask of the terminal-edge gadget selected by an assignment word."""
    d = diagram
    n = d.n
    mask = d.edge_bit((0, n - 1), (0, n)) | d.edge_bit((n - 1, 0), (n, 0))
    for t, (alpha, beta) in enumerate(word, start=1):
        a, b = d.terminals[t]
        if alpha:
            mask |= d.edge_bit((a - 1, b), (a, b))
        if beta:
            mask |= d.edge_bit((a, b - 1), (a, b))
    return mask


def child_composition(composition, word):
    """Reduced composition of the child diagram of an assignment-word branch."""
    comp = reduce_composition(composition)
    return reduce_composition(interleave(r_transform(comp, word), word_tilde(word)))


def _translation_table(child, parent):
    # Child diagrams share the parent's origin and coordinates, so geometric
    # edge identity is the embedding.
    table = []
    for e in child.edges:
        idx = parent.edge_index.get(e)
        if idx is None:
            raise AssertionError(f"child edge {e} missing from {parent}")
        table.append(idx)
    return table


@functools.lru_cache(maxsize=None)
def _face_arrays(comp):
    """All faces of the reduced composition as sorted (masks, dims) arrays."""
    d = _build_reduced(comp)
    if d.num_edges > _MAX_MASK_BITS:
        raise ValueError(
            f"{d} has {d.num_edges} edges; array enumeration is capped at "
            f"{_MAX_MASK_BITS}-bit masks"
        )
    if d.n == 0:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int16)
    mask_parts = []
    dim_parts = []
    for w in all_words(d.s - 1):
        child_comp = child_composition(comp, w)
        cmasks, cdims = _face_arrays(child_comp)
        child = _build_reduced(child_comp)
        gmask = _gadget_mask(d, w)
        table = _translation_table(child, d)
        pmasks = np.full(cmasks.shape, gmask, dtype=np.int64)
        for b, parent_bit in enumerate(table):
            pmasks |= ((cmasks >> b) & 1) << parent_bit
        mask_parts.append(pmasks)
        dim_parts.append((cdims + word_weight(w)).astype(np.int16))
    masks = np.concatenate(mask_parts)
    dims = np.concatenate(dim_parts)
    order = np.argsort(masks, kind="stable")
    masks = masks[order]
    dims = dims[order]
    if masks.size > 1 and not np.all(masks[1:] > masks[:-1]):
        raise AssertionError(f"face recursion produced duplicate masks for {comp}")
    return masks, dims


def enumerate_faces(diagram):
    """All faces of a diagram, sorted by edge bit vector."""
    masks, dims = _face_arrays(diagram.composition)
    return [DiagramFace(diagram, int(m), int(dim)) for m, dim in zip(masks, dims)]


def face_census(k):
    """Face counts by dimension, computed by the recursive enumerator."""
    _, dims = _face_arrays(reduce_composition(k))
    counts = np.bincount(dims)
    return {i: int(c) for i, c in enumerate(counts) if c}


def brute_force_faces(diagram, max_edges=MAX_BRUTE_FORCE_EDGES):
    """Independent oracle: filter all 2^|E| subsets through the recognizer.

    Runs on the numba kernel (or the numpy fallback; see ``kernels``).
    """
    if diagram.num_edges > max_edges:
        raise ValueError(
            f"{diagram} has {diagram.num_edges} edges; brute force is capped "
            f"at {max_edges}"
        )
    if diagram.n == 0:
        return [DiagramFace(diagram, 0, 0)]
    masks = kernels.accepted_face_masks(diagram)
    return [DiagramFace(diagram, int(m)) for m in masks]


def decompose_face(face):
    """Split a face into its assignment word and a face of the child diagram.

    Inverse of ``compose_face``; the face dimension is the child dimension
    plus the word weight.
    """
    d = face.diagram
    if d.n == 0:
        raise ValueError("the degenerate diagram has no decomposition step")
    w = assignment_of_face(face)
    gmask = _gadget_mask(d, w)
    if face.mask & gmask != gmask:
        raise AssertionError("assignment gadget not contained in face")
    rest = face.mask & ~gmask
    child = build_diagram(child_composition(d.composition, w))
    table = _translation_table(child, d)
    back = {parent_bit: b for b, parent_bit in enumerate(table)}
    cmask = 0
    m = rest
    while m:
        e = (m & -m).bit_length() - 1
        if e not in back:
            raise AssertionError(f"edge {d.edges[e]} survives outside the child diagram")
        cmask |= 1 << back[e]
        m &= m - 1
    return w, DiagramFace(child, cmask)


def compose_face(diagram, word, child_face):
    """Attach the terminal gadget of a word to a face of the child diagram."""
    expected = child_composition(diagram.composition, word)
    if child_face.diagram.composition != expected:
        raise ValueError(
            f"child face lives on {child_face.diagram.composition}, expected {expected}"
        )
    child = child_face.diagram
    table = _translation_table(child, diagram)
    mask = _gadget_mask(diagram, word)
    m = child_face.mask
    while m:
        e = (m & -m).bit_length() - 1
        mask |= 1 << table[e]
        m &= m - 1
    return DiagramFace(diagram, mask)


def transpose_face(face):
    """Reflect a face across the diagonal onto the reversed composition."""
    d = face.diagram
    rd = build_diagram(tuple(reversed(d.composition)))
    mask = 0
    for (ta, tb), (ha, hb) in face.edge_set():
        idx = rd.edge_index[((tb, ta), (hb, ha))]
        mask |= 1 << idx
    return DiagramFace(rd, mask, face._dim)


def compositions_of(n):
    """All compositions of n into positive parts, lexicographically."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions_of(n - first):
            yield (first,) + rest


def diagram_edge_count(k):
    """Edge count of the diagram of k, without interning the diagram."""
    comp = reduce_composition(k)
    n = sum(comp)
    if n == 0:
        return 0
    sums = [0]
    for p in comp:
        sums.append(sums[-1] + p)

    def height(a):
        return n - min(m for m in sums if m >= a)

    n_vertices = sum(height(a) + 1 for a in range(n + 1))
    cycle_rank = sum(
        comp[i] * comp[j] for i in range(len(comp)) for j in range(i + 1, len(comp))
    )
    return n_vertices - 1 + cycle_rank


def compositions_with_edge_bound(max_edges):
    """Every composition whose diagram has at most ``max_edges`` edges.

    Finite because the two boundary axes alone contribute 2n edges.
    """
    out = []
    n = 1
    while 2 * n <= max_edges:
        for comp in compositions_of(n):
            if diagram_edge_count(comp) <= max_edges:
                out.append(comp)
        n += 1
    return out
