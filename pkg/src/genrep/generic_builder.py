"""Generic and graded-generic projective presentations, hypergraphs, bundle geometry.

The generic module for a realizable sequence S is presented by one relation
per critical path of a compatible skeleton:

    alpha*p z_r  -  sum over sigma-set members q z_s of  x(alpha*p z_r, q z_s) * q z_s

with formal scalars x(...) standing in for algebraically independent values.
In graded mode the sum runs over the equal-length part of the sigma-set only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra_core import SemisimpleSequence, TruncatedAlgebra, realizable
from .errors import UnrealizableError, ValidationError
from .skeleta import (
    Element,
    SigmaSet,
    Skeleton,
    canonical_skeleton,
    critical_paths,
    element_to_json,
    invariants_N,
)


def _element_key(el: Element):
    r, p = el
    return (r, p.start, p.arrows)


@dataclass(frozen=True)
class ScalarId:
    """Formal scalar x(critical, member); one per disjoint-union index of N."""

    name: str
    critical: tuple
    member: tuple

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Relation:
    sigma_set: SigmaSet
    terms: tuple[tuple[Element, ScalarId], ...]

    @property
    def critical(self):
        return self.sigma_set.critical


@dataclass(frozen=True)
class GenericPresentation:
    algebra: TruncatedAlgebra
    sequence: SemisimpleSequence
    skeleton: Skeleton
    graded: bool
    relations: tuple[Relation, ...]

    @property
    def scalar_ids(self) -> tuple[ScalarId, ...]:
        return tuple(sid for rel in self.relations for _, sid in rel.terms)

    @property
    def mode(self) -> str:
        return "graded" if self.graded else "ungraded"


def generic_presentation(alg: TruncatedAlgebra, S: SemisimpleSequence,
                         skeleton: Skeleton | None = None,
                         graded: bool = False) -> GenericPresentation:
    """Presentation of the generic (or graded-generic) module with layering S.

    Scalar identifiers enumerate the disjoint union indexing N (ungraded)
    or N0 (graded); relations follow the critical-path order of the skeleton.
    """
    if skeleton is None:
        if not realizable(alg, S):
            raise UnrealizableError(f"{S} is not realizable")
        skeleton = canonical_skeleton(alg, S)
    relations = []
    counter = 0
    for sset in critical_paths(alg, skeleton):
        part = sset.zero_part if graded else sset.members
        crit_key = (sset.critical.r, sset.critical.parent[1].arrows, sset.critical.arrow)
        terms = []
        for mem in part:
            sid = ScalarId(f"x_{counter}", crit_key, _element_key(mem))
            terms.append((mem, sid))
            counter += 1
        relations.append(Relation(sset, tuple(terms)))
    return GenericPresentation(alg, S, skeleton, graded, tuple(relations))


@dataclass(frozen=True)
class Hypergraph:
    """Skeleton plus, per critical path, the sigma-set members with nonzero coefficient."""

    skeleton: Skeleton
    edges: tuple[tuple[SigmaSet, tuple[Element, ...]], ...]

    def top_component_partition(self) -> list[frozenset[int]]:
        """Connected components of the top-element graph induced by the hyperedges."""
        t = len(self.skeleton.top)
        parent = list(range(t + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for sset, members in self.edges:
            for mem in members:
                union(sset.critical.r, mem[0])
        groups: dict[int, set[int]] = {}
        for r in range(1, t + 1):
            groups.setdefault(find(r), set()).add(r)
        return sorted((frozenset(g) for g in groups.values()), key=min)


def hypergraph(pres: GenericPresentation, assignment=None) -> Hypergraph:
    """Hyperedges of the presented module.

    With no assignment, generic scalars are all nonzero and every declared
    term survives; an explicit assignment (ScalarId -> field element)
    filters the members down to the nonzero coefficients.
    """
    edges = []
    for rel in pres.relations:
        if assignment is None:
            members = tuple(mem for mem, _ in rel.terms)
        else:
            members = tuple(mem for mem, sid in rel.terms if assignment[sid] != 0)
        edges.append((rel.sigma_set, members))
    return Hypergraph(pres.skeleton, tuple(edges))


@dataclass(frozen=True)
class GrassmannFactor:
    vertex: str
    subspace_dim: int   # v - u: codimension left after carving out the layer
    ambient_dim: int    # v: available extensions into the vertex

    @property
    def dim(self) -> int:
        return self.subspace_dim * (self.ambient_dim - self.subspace_dim)


@dataclass(frozen=True)
class BundleReport:
    """Dimension data of Grass(S) as a tower over the graded base."""

    sequence: SemisimpleSequence
    fiber_dim: int                                  # N1: affine fiber over the graded base
    levels: tuple[tuple[GrassmannFactor, ...], ...]  # base factors, level 0..L-1
    N: int
    N0: int
    N1: int

    @property
    def grass_dim(self) -> int:
        return self.N

    @property
    def graded_dim(self) -> int:
        return self.N0


def bundle_tower(alg: TruncatedAlgebra, S: SemisimpleSequence) -> BundleReport:
    """Grassmann-bundle tower of the graded base plus the affine fiber dimension.

    Level 0 uses the length-one extensions available from the top; level l
    uses the extensions of layer l of the canonical skeleton.  The sum of
    the factor dimensions is N0 and the full variety has dimension N.
    """
    if not realizable(alg, S):
        raise UnrealizableError(f"{S} is not realizable")
    sk = canonical_skeleton(alg, S)
    N, N0, N1 = invariants_N(alg, S, skeleton=sk)
    levels = []
    for l in range(alg.L):
        counts = [0] * alg.n
        for el in sk.layer(l):
            end = alg.path_end(el[1])
            for a in alg.quiver.arrows_from[end]:
                counts[alg.vertex_pos(a.target)] += 1
        factors = tuple(
            GrassmannFactor(v, counts[j] - S.layers[l + 1][j], counts[j])
            for j, v in enumerate(alg.vertices))
        levels.append(factors)
    report = BundleReport(S, N1, tuple(levels), N, N0, N1)
    if sum(f.dim for lv in levels for f in lv) != N0:
        raise ValidationError("tower dimensions do not sum to N0")  # pragma: no cover
    return report


# ---------------------------------------------------------------------------
# JSON interfaces
# ---------------------------------------------------------------------------

def _sigma_set_to_json(alg: TruncatedAlgebra, s: SigmaSet) -> dict:
    crit = s.critical
    return {
        "arrow": crit.arrow,
        "parent": element_to_json(crit.parent),
        "path": {"r": crit.r, "arrows": list(crit.path(alg).arrows)},
        "sigma_set": [element_to_json(m) for m in s.members],
        "zero_part": [element_to_json(m) for m in s.zero_part],
        "one_part": [element_to_json(m) for m in s.one_part],
    }


def critical_report_json(alg: TruncatedAlgebra, sk: Skeleton) -> list[dict]:
    return [_sigma_set_to_json(alg, s) for s in critical_paths(alg, sk)]


def presentation_to_json(pres: GenericPresentation) -> dict:
    alg = pres.algebra
    return {
        "mode": pres.mode,
        "relations": [
            {
                "critical": _sigma_set_to_json(alg, rel.sigma_set)["path"],
                "terms": [
                    {"member": element_to_json(mem), "scalar": sid.name}
                    for mem, sid in rel.terms
                ],
            }
            for rel in pres.relations
        ],
    }


def hypergraph_to_json(hg: Hypergraph) -> dict:
    alg = hg.skeleton.alg
    return {
        "skeleton": {"elements": [element_to_json(e) for e in hg.skeleton.elements]},
        "hyperedges": [
            {
                "critical": _sigma_set_to_json(alg, sset)["path"],
                "members": [element_to_json(m) for m in members],
            }
            for sset, members in hg.edges
        ],
    }


def bundle_report_to_json(rep: BundleReport) -> dict:
    return {
        "N": rep.N,
        "N0": rep.N0,
        "N1": rep.N1,
        "dim_grass": rep.grass_dim,
        "dim_graded_grass": rep.graded_dim,
        "fiber_dim": rep.fiber_dim,
        "tower": [
            {
                "level": l,
                "factors": [
                    {"vertex": f.vertex, "subspace_dim": f.subspace_dim,
                     "ambient_dim": f.ambient_dim, "dim": f.dim}
                    for f in level
                ],
            }
            for l, level in enumerate(rep.levels)
        ],
    }
