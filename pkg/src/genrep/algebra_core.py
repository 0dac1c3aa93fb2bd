"""Quivers, truncated path algebras, semisimple sequences, dominance, realizability.

A truncated path algebra is KQ modulo the ideal generated by all paths of
length L+1, so path length is well defined and every basis question reduces
to counting composable arrow sequences of length at most L.

Composition convention: the product pq means "first q, then p".  A path
stores its arrows in display order, i.e. ``arrows[0]`` is applied last and
``arrows[-1]`` first; extending a path by an arrow prepends.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ValidationError

DimensionVector = tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path in the quiver, tagged by its start vertex.

    ``arrows`` is in display order (leftmost = last applied).  The trivial
    path at a vertex has an empty arrow tuple.
    """

    start: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def initial_subpath(self, length: int) -> "Path":
        if not 0 <= length <= self.length:
            raise ValueError("bad subpath length")
        return Path(self.start, self.arrows[self.length - length:])


class Quiver:
    """Finite quiver with ordered vertices and arrows; loops and parallels allowed."""

    def __init__(self, vertices, arrows):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        self.arrows: tuple[Arrow, ...] = tuple(
            a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2]))
            for a in arrows
        )
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex identifiers")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate arrow identifiers")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValidationError(f"arrow {a.name} references undeclared vertex")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self.arrows_from = {v: tuple(a for a in self.arrows if a.source == v) for v in self.vertices}
        self.arrows_into = {v: tuple(a for a in self.arrows if a.target == v) for v in self.vertices}

    def __repr__(self):
        return f"Quiver(vertices={list(self.vertices)}, arrows={[a.name for a in self.arrows]})"


class TruncatedAlgebra:
    """KQ / <paths of length L+1>; Loewy length L+1."""

    def __init__(self, quiver: Quiver, L: int):
        if L < 1:
            raise ValidationError("path length bound L must be >= 1")
        self.quiver = quiver
        self.L = L

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def n(self) -> int:
        return len(self.quiver.vertices)

    def vertex_pos(self, v: str) -> int:
        try:
            return self.quiver.vertex_index[v]
        except KeyError:
            raise ValidationError(f"unknown vertex {v!r}") from None

    def trivial_path(self, v: str) -> Path:
        self.vertex_pos(v)
        return Path(v, ())

    def path_end(self, p: Path) -> str:
        if not p.arrows:
            return p.start
        return self.quiver.arrow_by_name[p.arrows[0]].target

    def extend(self, p: Path, arrow: Arrow) -> Path:
        """Left-compose ``arrow`` with ``p`` (apply p first, then arrow)."""
        if arrow.source != self.path_end(p):
            raise ValidationError(f"arrow {arrow.name} not composable with path")
        return Path(p.start, (arrow.name,) + p.arrows)

    def path_sort_key(self, p: Path):
        idx = self.quiver.arrow_index
        return tuple(idx[a] for a in p.arrows)

    def zero_vector(self) -> DimensionVector:
        return (0,) * self.n

    def extension_counts(self, layer: DimensionVector) -> DimensionVector:
        """Per-vertex count of one-arrow extensions available from a layer.

        Entry j is A_j = sum_i (#arrows i->j) * layer[i].
        """
        counts = [0] * self.n
        for a in self.quiver.arrows:
            counts[self.vertex_pos(a.target)] += layer[self.vertex_pos(a.source)]
        return tuple(counts)

    def __repr__(self):
        return f"TruncatedAlgebra({self.quiver!r}, L={self.L})"


@dataclass(frozen=True)
class SemisimpleSequence:
    """Candidate radical layering: per-vertex multiplicities for layers 0..L."""

    layers: tuple[DimensionVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(tuple(int(x) for x in row) for row in self.layers))
        widths = {len(row) for row in self.layers}
        if len(widths) > 1:
            raise ValidationError("ragged semisimple sequence")
        if any(x < 0 for row in self.layers for x in row):
            raise ValidationError("negative multiplicity in semisimple sequence")

    @property
    def top(self) -> DimensionVector:
        return self.layers[0]

    @property
    def total_dim(self) -> int:
        return sum(sum(row) for row in self.layers)

    @property
    def dim_vector(self) -> DimensionVector:
        return tuple(sum(col) for col in zip(*self.layers))

    def layer(self, l: int) -> DimensionVector:
        return self.layers[l]

    def __str__(self):
        return "(" + ", ".join(str(list(row)) for row in self.layers) + ")"


def top_elements(alg: TruncatedAlgebra, S: SemisimpleSequence) -> tuple[str, ...]:
    """Norming vertices of the distinguished top elements z_1..z_t.

    Grouped by vertex in quiver order: vertex v appears S.top[v] times.
    """
    out = []
    for v in alg.vertices:
        out.extend([v] * S.top[alg.vertex_pos(v)])
    return tuple(out)


def check_sequence(alg: TruncatedAlgebra, S: SemisimpleSequence) -> SemisimpleSequence:
    if len(S.layers) != alg.L + 1:
        raise ValidationError(f"sequence has {len(S.layers)} layers, algebra needs {alg.L + 1}")
    if any(len(row) != alg.n for row in S.layers):
        raise ValidationError("sequence width does not match vertex count")
    return S


def enumerate_paths(alg: TruncatedAlgebra, start: str, length: int) -> list[Path]:
    """All paths of exactly the given length from ``start``, canonically ordered.

    Order is lexicographic by arrow input index, leftmost (last applied)
    arrow most significant.
    """
    alg.vertex_pos(start)
    if not 0 <= length <= alg.L:
        raise ValidationError(f"length must be in 0..{alg.L}")
    paths = [alg.trivial_path(start)]
    for _ in range(length):
        paths = [alg.extend(p, a) for p in paths for a in alg.quiver.arrows_from[alg.path_end(p)]]
    paths.sort(key=alg.path_sort_key)
    return paths


def count_paths(alg: TruncatedAlgebra, start: str, length: int) -> int:
    return len(enumerate_paths(alg, start, length))


def projective_dim(alg: TruncatedAlgebra, vertex: str) -> int:
    """K-dimension of the indecomposable projective at ``vertex``: all paths of length <= L."""
    return sum(count_paths(alg, vertex, l) for l in range(alg.L + 1))


def projective_dim_vector(alg: TruncatedAlgebra, vertex: str) -> DimensionVector:
    """Dimension vector of the indecomposable projective at ``vertex``."""
    dims = [0] * alg.n
    for l in range(alg.L + 1):
        for p in enumerate_paths(alg, vertex, l):
            dims[alg.vertex_pos(alg.path_end(p))] += 1
    return tuple(dims)


def projective_layering(alg: TruncatedAlgebra, S0: DimensionVector) -> SemisimpleSequence:
    """Radical layering of the projective cover of the top S0."""
    layers = []
    for l in range(alg.L + 1):
        row = [0] * alg.n
        for v in alg.vertices:
            for _ in range(S0[alg.vertex_pos(v)]):
                for p in enumerate_paths(alg, v, l):
                    row[alg.vertex_pos(alg.path_end(p))] += 1
        layers.append(tuple(row))
    return SemisimpleSequence(tuple(layers))


def _partial_sums(S: SemisimpleSequence):
    acc = [0] * len(S.layers[0])
    out = []
    for row in S.layers:
        acc = [a + b for a, b in zip(acc, row)]
        out.append(tuple(acc))
    return out


def dominates(S: SemisimpleSequence, S2: SemisimpleSequence) -> bool:
    """True iff S <= S2 in the dominance order (S2 dominates S).

    S <= S2 means every partial sum of layers 0..r of S2 contains the
    corresponding partial sum of S, componentwise.
    """
    if len(S.layers) != len(S2.layers):
        raise ValidationError("sequences have different layer counts")
    if S.total_dim != S2.total_dim:
        raise ValidationError("sequences have different total dimension")
    for a, b in zip(_partial_sums(S), _partial_sums(S2)):
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def realizable(alg: TruncatedAlgebra, S: SemisimpleSequence) -> bool:
    """Whether some module has radical layering S.

    Checks, for every level l in 0..L-1 and vertex j, that the one-arrow
    extensions available from layer l cover layer l+1:
    sum_i (#arrows i->j) * S_l[i] >= S_{l+1}[j].  Equivalent to the
    existence of a compatible skeleton.
    """
    check_sequence(alg, S)
    for l in range(alg.L):
        avail = alg.extension_counts(S.layers[l])
        if any(avail[j] < S.layers[l + 1][j] for j in range(alg.n)):
            return False
    return True


def enumerate_sequences(alg: TruncatedAlgebra, dimvec: DimensionVector,
                        top: DimensionVector | None = None) -> list[SemisimpleSequence]:
    """All realizable sequences with layerwise sum ``dimvec`` (and given top).

    Output is in lexicographic order on the flattened layer matrix.
    """
    dimvec = tuple(int(x) for x in dimvec)
    if len(dimvec) != alg.n:
        raise ValidationError("dimension vector width does not match vertex count")
    if any(x < 0 for x in dimvec):
        raise ValidationError("negative entry in dimension vector")
    if not any(dimvec):
        raise ValidationError("dimension vector must be nonzero")

    def vectors_upto(caps):
        return product(*(range(c + 1) for c in caps))

    if top is not None:
        top = tuple(int(x) for x in top)
        tops = [top] if (any(top) and all(t <= d for t, d in zip(top, dimvec))) else []
    else:
        tops = [t for t in vectors_upto(dimvec) if any(t)]

    results: list[SemisimpleSequence] = []

    def descend(layers, remaining):
        if len(layers) == alg.L + 1:
            if not any(remaining):
                results.append(SemisimpleSequence(tuple(layers)))
            return
        avail = alg.extension_counts(layers[-1])
        caps = tuple(min(a, r) for a, r in zip(avail, remaining))
        for nxt in vectors_upto(caps):
            descend(layers + [nxt], tuple(r - x for r, x in zip(remaining, nxt)))

    for t in tops:
        descend([t], tuple(d - x for d, x in zip(dimvec, t)))
    return results


# ---------------------------------------------------------------------------
# JSON interfaces
# ---------------------------------------------------------------------------

def algebra_from_json(data: dict) -> TruncatedAlgebra:
    """Quiver input: {"vertices": [...], "arrows": [{"name","source","target"}], "max_path_length": L}."""
    try:
        vertices = data["vertices"]
        arrows = [Arrow(str(a["name"]), str(a["source"]), str(a["target"])) for a in data["arrows"]]
        L = int(data["max_path_length"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed algebra input: {exc}") from None
    return TruncatedAlgebra(Quiver(vertices, arrows), L)


def algebra_to_json(alg: TruncatedAlgebra) -> dict:
    return {
        "vertices": list(alg.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in alg.quiver.arrows],
        "max_path_length": alg.L,
    }


def sequence_from_json(data: dict, alg: TruncatedAlgebra) -> SemisimpleSequence:
    """Sequence input: {"layers": [[...], ...]}, rows l = 0..L, columns in vertex order."""
    try:
        rows = [tuple(int(x) for x in row) for row in data["layers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed sequence input: {exc}") from None
    S = check_sequence(alg, SemisimpleSequence(tuple(rows)))
    if S.total_dim == 0:
        raise ValidationError("all-zero semisimple sequence")
    return S


def sequence_to_json(S: SemisimpleSequence) -> dict:
    return {"layers": [list(row) for row in S.layers]}
