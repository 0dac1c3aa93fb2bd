"""Syzygies of generic modules: cyclic decompositions, iteration, projective dimension.

Over a truncated path algebra the first syzygy of the generic module with
layering S splits into cyclic summands, one per critical path alpha*p of a
compatible skeleton, of type Lambda e / J^m e with e the endpoint of alpha
and m = L+1 - len(alpha*p).  Iterating stays inside this finite family of
cyclic types, so projective dimension reduces to reachability in a finite
state graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra_core import (
    DimensionVector,
    SemisimpleSequence,
    TruncatedAlgebra,
    count_paths,
    enumerate_paths,
    realizable,
)
from .errors import UnrealizableError, ValidationError
from .skeleta import Skeleton, canonical_skeleton, critical_paths


@dataclass(frozen=True)
class CyclicType:
    """The cyclic module Lambda e / J^m e."""

    vertex: str
    truncation: int  # m, 1 <= m <= L+1

    def __str__(self):
        return f"{self.vertex}/J^{self.truncation}"


def cyclic_dim(alg: TruncatedAlgebra, c: CyclicType) -> int:
    return sum(count_paths(alg, c.vertex, l) for l in range(min(c.truncation, alg.L + 1)))


def cyclic_dim_vector(alg: TruncatedAlgebra, c: CyclicType) -> DimensionVector:
    dims = [0] * alg.n
    for l in range(min(c.truncation, alg.L + 1)):
        for p in enumerate_paths(alg, c.vertex, l):
            dims[alg.vertex_pos(alg.path_end(p))] += 1
    return tuple(dims)


def is_projective(alg: TruncatedAlgebra, c: CyclicType) -> bool:
    """Lambda e / J^m e is projective iff m = L+1 or J^m e = 0."""
    if not 1 <= c.truncation <= alg.L + 1:
        raise ValidationError(f"truncation {c.truncation} out of range 1..{alg.L + 1}")
    return c.truncation == alg.L + 1 or count_paths(alg, c.vertex, c.truncation) == 0


class SyzygyProfile:
    """Multiset of cyclic types; the state object of the syzygy recursion."""

    def __init__(self, summands):
        counts: dict[CyclicType, int] = {}
        for item in summands:
            if isinstance(item, tuple):
                c, mult = item
            else:
                c, mult = item, 1
            if mult:
                counts[c] = counts.get(c, 0) + mult
        self._items = tuple(sorted(counts.items(),
                                   key=lambda kv: (kv[0].vertex, kv[0].truncation)))

    def items(self) -> tuple[tuple[CyclicType, int], ...]:
        return self._items

    @property
    def is_empty(self) -> bool:
        return not self._items

    def total_dim(self, alg: TruncatedAlgebra) -> int:
        return sum(cyclic_dim(alg, c) * m for c, m in self._items)

    def dim_vector(self, alg: TruncatedAlgebra) -> DimensionVector:
        dims = [0] * alg.n
        for c, m in self._items:
            for j, d in enumerate(cyclic_dim_vector(alg, c)):
                dims[j] += m * d
        return tuple(dims)

    def __eq__(self, other):
        return isinstance(other, SyzygyProfile) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        inner = ", ".join(f"{c} x{m}" for c, m in self._items)
        return f"SyzygyProfile({inner})"


def first_syzygy(alg: TruncatedAlgebra, S: SemisimpleSequence,
                 skeleton: Skeleton | None = None) -> SyzygyProfile:
    """Profile of the first syzygy of the generic module with layering S.

    One cyclic summand per critical path; the multiset does not depend on
    the compatible skeleton chosen.
    """
    if skeleton is None:
        if not realizable(alg, S):
            raise UnrealizableError(f"{S} is not realizable")
        skeleton = canonical_skeleton(alg, S)
    summands = []
    for sset in critical_paths(alg, skeleton):
        end = alg.path_end(sset.critical.path(alg))
        summands.append(CyclicType(end, alg.L + 1 - sset.critical.length))
    return SyzygyProfile(summands)


def syzygy_of_cyclic(alg: TruncatedAlgebra, c: CyclicType) -> SyzygyProfile:
    """Syzygy of Lambda e / J^m e: one summand (end(u), L+1-m) per length-m path u."""
    if is_projective(alg, c):
        return SyzygyProfile([])
    return SyzygyProfile([
        CyclicType(alg.path_end(u), alg.L + 1 - c.truncation)
        for u in enumerate_paths(alg, c.vertex, c.truncation)
    ])


def _omega(alg: TruncatedAlgebra, profile: SyzygyProfile) -> SyzygyProfile:
    out = []
    for c, m in profile.items():
        for c2, m2 in syzygy_of_cyclic(alg, c).items():
            out.append((c2, m * m2))
    return SyzygyProfile(out)


def iterated_syzygy(alg: TruncatedAlgebra, S: SemisimpleSequence, k: int) -> SyzygyProfile:
    """Omega^k of the generic module, k >= 1.

    Projective summands of an intermediate profile are genuine kernel
    summands of that stage but contribute nothing further: minimal covers
    of projectives have zero kernel.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    profile = first_syzygy(alg, S)
    for _ in range(k - 1):
        profile = _omega(alg, profile)
    return profile


def projective_dimension(alg: TruncatedAlgebra, S: SemisimpleSequence):
    """Generic projective dimension: an integer, or math.inf.

    Computed on the finite state graph of cyclic types (vertex, m), m <= L:
    pd of a projective state is 0, otherwise 1 + max over syzygy summands;
    any state on or reaching a cycle has infinite dimension.  The answer is
    0 when the first syzygy is empty, else 1 + max over its summands.
    """
    memo: dict[CyclicType, object] = {}
    onstack: set[CyclicType] = set()

    def pd(c: CyclicType):
        if c in memo:
            return memo[c]
        if is_projective(alg, c):
            memo[c] = 0
            return 0
        if c in onstack:
            return math.inf
        onstack.add(c)
        best = 0
        for c2, _ in syzygy_of_cyclic(alg, c).items():
            sub = pd(c2)
            if sub == math.inf:
                best = math.inf
                break
            best = max(best, sub)
        onstack.discard(c)
        result = math.inf if best == math.inf else 1 + best
        memo[c] = result
        return result

    omega1 = first_syzygy(alg, S)
    if omega1.is_empty:
        return 0
    worst = 0
    for c, _ in omega1.items():
        sub = pd(c)
        if sub == math.inf:
            return math.inf
        worst = max(worst, sub)
    return 1 + worst


# ---------------------------------------------------------------------------
# JSON interfaces
# ---------------------------------------------------------------------------

def profile_to_json(profile: SyzygyProfile) -> list[dict]:
    return [
        {"vertex": c.vertex, "truncation": c.truncation, "multiplicity": m}
        for c, m in profile.items()
    ]


def projdim_to_json(value) -> dict:
    return {"projdim": "infinity" if value == math.inf else int(value)}
