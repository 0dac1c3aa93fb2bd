"""Skeleta compatible with a semisimple sequence, critical paths, and N-invariants.

A skeleton is a forest of labeled paths (r, p), one tree per distinguished
top element z_r, closed under initial subpaths, whose length-l members
realize layer l of the sequence vertex by vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice, product
from math import comb

from .algebra_core import (
    Path,
    SemisimpleSequence,
    TruncatedAlgebra,
    check_sequence,
    realizable,
    top_elements,
)
from .errors import EnumerationCapError, UnrealizableError, ValidationError

DEFAULT_CAP = 10**6

Element = tuple[int, Path]  # (top index r, path starting at e(r)); r is 1-based


class Skeleton:
    """Immutable skeleton; equality and hashing ignore the algebra handle."""

    def __init__(self, alg: TruncatedAlgebra, top: tuple[str, ...], elements):
        self.alg = alg
        self.top = tuple(top)
        self.element_set = frozenset(elements)
        self.elements: tuple[Element, ...] = tuple(
            sorted(self.element_set, key=lambda e: self._key(e)))
        layers: dict[int, list[Element]] = {}
        for el in self.elements:
            layers.setdefault(el[1].length, []).append(el)
        self._layers = {l: tuple(els) for l, els in layers.items()}

    def _key(self, el: Element):
        r, p = el
        return (p.length, r, self.alg.path_sort_key(p))

    def layer(self, l: int) -> tuple[Element, ...]:
        return self._layers.get(l, ())

    def end(self, el: Element) -> str:
        return self.alg.path_end(el[1])

    def __contains__(self, el: Element) -> bool:
        return el in self.element_set

    def __len__(self) -> int:
        return len(self.element_set)

    def __eq__(self, other):
        return (isinstance(other, Skeleton)
                and self.top == other.top and self.element_set == other.element_set)

    def __hash__(self):
        return hash((self.top, self.element_set))

    def __repr__(self):
        return f"Skeleton(top={self.top}, size={len(self)})"

    def sequence(self) -> SemisimpleSequence:
        """The unique semisimple sequence this skeleton is compatible with."""
        alg = self.alg
        layers = []
        for l in range(alg.L + 1):
            row = [0] * alg.n
            for el in self.layer(l):
                row[alg.vertex_pos(self.end(el))] += 1
            layers.append(tuple(row))
        return SemisimpleSequence(tuple(layers))

    def tree_dim_vectors(self) -> dict[int, tuple[int, ...]]:
        """Per top index r, the dimension vector of the members of tree r."""
        alg = self.alg
        out = {r: [0] * alg.n for r in range(1, len(self.top) + 1)}
        for r, p in self.elements:
            out[r][alg.vertex_pos(self.alg.path_end(p))] += 1
        return {r: tuple(v) for r, v in out.items()}


@dataclass(frozen=True)
class CriticalPath:
    """An arrow extension alpha*p of a skeleton member that left the skeleton."""

    arrow: str
    parent: Element

    @property
    def r(self) -> int:
        return self.parent[0]

    def path(self, alg: TruncatedAlgebra) -> Path:
        return alg.extend(self.parent[1], alg.quiver.arrow_by_name[self.arrow])

    @property
    def length(self) -> int:
        return self.parent[1].length + 1


@dataclass(frozen=True)
class SigmaSet:
    """A critical path with its sigma-set, split by length.

    ``zero_part`` holds the members of the same length as the critical path,
    ``one_part`` the strictly longer ones; ``members`` is their union.
    """

    critical: CriticalPath
    members: tuple[Element, ...]
    zero_part: tuple[Element, ...]
    one_part: tuple[Element, ...]


def _level_candidates(sk_alg: TruncatedAlgebra, layer: tuple[Element, ...], vertex: str):
    """Extension candidates into ``vertex``, ordered by (parent order, arrow order)."""
    out = []
    for el in layer:
        end = sk_alg.path_end(el[1])
        for a in sk_alg.quiver.arrows_from[end]:
            if a.target == vertex:
                out.append((el[0], sk_alg.extend(el[1], a)))
    return out


def iter_skeleta(alg: TruncatedAlgebra, S: SemisimpleSequence):
    """Lazily yield all skeleta compatible with S, in canonical order.

    Level by level: at level l+1 and vertex j, every S_{l+1}[j]-subset of
    the available extensions of layer l is a valid choice; subsets are taken
    in combination order over candidates ordered by (parent, arrow).
    """
    check_sequence(alg, S)
    top = top_elements(alg, S)
    base = tuple((r + 1, alg.trivial_path(v)) for r, v in enumerate(top))

    def descend(l: int, layers):
        if l == alg.L:
            yield Skeleton(alg, top, [el for layer in layers for el in layer])
            return
        prev = layers[-1]
        per_vertex = []
        for j, v in enumerate(alg.vertices):
            cands = _level_candidates(alg, prev, v)
            need = S.layers[l + 1][j]
            if len(cands) < need:
                return
            per_vertex.append(combinations(cands, need))
        for choice in product(*per_vertex):
            nxt = tuple(el for group in choice for el in group)
            yield from descend(l + 1, layers + [nxt])

    yield from descend(0, [base])


def enumerate_skeleta(alg: TruncatedAlgebra, S: SemisimpleSequence,
                      cap: int = DEFAULT_CAP) -> list[Skeleton]:
    """All compatible skeleta; empty iff S is unrealizable.  Raises above ``cap``."""
    out = list(islice(iter_skeleta(alg, S), cap + 1))
    if len(out) > cap:
        raise EnumerationCapError(cap)
    return out


def canonical_skeleton(alg: TruncatedAlgebra, S: SemisimpleSequence) -> Skeleton:
    """First skeleton in enumeration order; raises if S is unrealizable."""
    for sk in iter_skeleta(alg, S):
        return sk
    raise UnrealizableError(f"no skeleton compatible with {S}")


def count_skeleta(alg: TruncatedAlgebra, S: SemisimpleSequence) -> int:
    """Closed form: product over levels and vertices of binomial(A, m).

    A is the number of available extensions into the vertex, m the required
    layer multiplicity; a vanishing binomial (A < m) makes the count 0,
    i.e. S unrealizable.
    """
    check_sequence(alg, S)
    total = 1
    for l in range(alg.L):
        avail = alg.extension_counts(S.layers[l])
        for j in range(alg.n):
            total *= comb(avail[j], S.layers[l + 1][j])
    return total


def critical_paths(alg: TruncatedAlgebra, sk: Skeleton) -> list[SigmaSet]:
    """Every critical path of the skeleton with its sigma-set, canonically ordered.

    A pair (arrow alpha, member (r,p)) is critical when alpha*p has length
    <= L and lies outside the skeleton.  Its sigma-set collects the members
    at least as long as alpha*p ending in the same vertex.
    """
    out = []
    for el in sk.elements:
        r, p = el
        if p.length + 1 > alg.L:
            continue
        for a in alg.quiver.arrows_from[alg.path_end(p)]:
            ext = alg.extend(p, a)
            if (r, ext) in sk:
                continue
            length, end = ext.length, alg.path_end(ext)
            zero, one = [], []
            for mem in sk.elements:
                if mem[1].length >= length and sk.end(mem) == end:
                    (zero if mem[1].length == length else one).append(mem)
            out.append(SigmaSet(CriticalPath(a.name, el), tuple(zero + one),
                                tuple(zero), tuple(one)))
    out.sort(key=lambda s: (s.critical.length, sk._key(s.critical.parent),
                            alg.quiver.arrow_index[s.critical.arrow]))
    return out


def invariants_N(alg: TruncatedAlgebra, S: SemisimpleSequence,
                 skeleton: Skeleton | None = None) -> tuple[int, int, int]:
    """(N, N0, N1) summed over the critical paths of a compatible skeleton.

    Independent of the skeleton choice; computed from the canonical one by
    default.
    """
    if skeleton is None:
        if not realizable(alg, S):
            raise UnrealizableError(f"{S} is not realizable")
        skeleton = canonical_skeleton(alg, S)
    sets = critical_paths(alg, skeleton)
    n0 = sum(len(s.zero_part) for s in sets)
    n1 = sum(len(s.one_part) for s in sets)
    return (n0 + n1, n0, n1)


# ---------------------------------------------------------------------------
# JSON interfaces
# ---------------------------------------------------------------------------

def element_to_json(el: Element) -> dict:
    return {"r": el[0], "arrows": list(el[1].arrows)}


def skeleton_to_json(sk: Skeleton) -> dict:
    return {
        "top": [{"r": i + 1, "vertex": v} for i, v in enumerate(sk.top)],
        "elements": [element_to_json(el) for el in sk.elements],
    }


def skeleton_from_json(data: dict, alg: TruncatedAlgebra) -> Skeleton:
    try:
        tops = sorted(data["top"], key=lambda t: int(t["r"]))
        top = tuple(str(t["vertex"]) for t in tops)
        raw = [(int(e["r"]), tuple(str(a) for a in e["arrows"])) for e in data["elements"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed skeleton input: {exc}") from None
    elements = set()
    for r, arrows in raw:
        if not 1 <= r <= len(top):
            raise ValidationError(f"skeleton element references unknown top index {r}")
        p = alg.trivial_path(top[r - 1])
        for name in reversed(arrows):
            arrow = alg.quiver.arrow_by_name.get(name)
            if arrow is None:
                raise ValidationError(f"unknown arrow {name!r} in skeleton")
            p = alg.extend(p, arrow)
        if p.length > alg.L:
            raise ValidationError("skeleton element longer than L")
        for l in range(p.length + 1):
            elements.add((r, p.initial_subpath(l)))
    for r in range(1, len(top) + 1):
        elements.add((r, alg.trivial_path(top[r - 1])))
    return Skeleton(alg, top, elements)
