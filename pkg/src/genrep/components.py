"""Irreducible-component sifting for module varieties of a fixed dimension vector.

Candidate components correspond to realizable semisimple sequences; a
sequence is pruned when it survives every implemented necessary condition
for lying in the closure of another stratum.  The verdict ``possible``
never asserts containment, only that no implemented condition excludes it.

Necessary conditions for Mod(S_inner) to lie in the closure of
Mod(S_outer), applied in order:
  dominance    - the inner (more degenerate) sequence must dominate,
  annihilators - arrows killing all outer modules must kill inner ones,
  socle        - the outer generic socle embeds in the inner one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra_core import (
    DimensionVector,
    SemisimpleSequence,
    TruncatedAlgebra,
    dominates,
    enumerate_sequences,
    realizable,
)
from .errors import UnrealizableError, ValidationError
from .matrix_rep import FieldSpec, generic_socle
from .skeleta import Skeleton, canonical_skeleton


def annihilating_arrows(alg: TruncatedAlgebra, S: SemisimpleSequence,
                        skeleton: Skeleton | None = None) -> frozenset[str]:
    """Arrows that kill every module with radical layering S.

    An arrow qualifies when every skeleton member ending at its source dies
    under extension: the extension is longer than L, or is critical with an
    empty sigma-set.  The answer only depends on layer counts, so it is
    independent of the compatible skeleton used.
    """
    if skeleton is None:
        if not realizable(alg, S):
            raise UnrealizableError(f"{S} is not realizable")
        skeleton = canonical_skeleton(alg, S)
    tails = _tail_sums(alg, S)
    out = []
    for a in alg.quiver.arrows:
        kills_all = True
        for el in skeleton.elements:
            r, p = el
            if alg.path_end(p) != a.source:
                continue
            if p.length + 1 > alg.L:
                continue
            ext = alg.extend(p, a)
            if (r, ext) in skeleton:
                kills_all = False
                break
            if tails[ext.length][alg.vertex_pos(a.target)]:
                # nonempty sigma-set: the critical extension survives generically
                kills_all = False
                break
        if kills_all:
            out.append(a.name)
    return frozenset(out)


def _tail_sums(alg: TruncatedAlgebra, S: SemisimpleSequence):
    """tails[l][j] = number of layer entries at vertex j in layers l..L."""
    acc = [0] * alg.n
    tails = [None] * (alg.L + 2)
    tails[alg.L + 1] = tuple(acc)
    for l in range(alg.L, -1, -1):
        acc = [a + b for a, b in zip(acc, S.layers[l])]
        tails[l] = tuple(acc)
    return tails


@dataclass(frozen=True)
class PruningVerdict:
    inner: SemisimpleSequence
    outer: SemisimpleSequence
    verdict: str        # excluded-dominance | excluded-annihilator | excluded-socle | possible
    evidence: dict
    confidence: str     # certified | seeded-generic


def closure_containment_test(alg: TruncatedAlgebra, S_inner: SemisimpleSequence,
                             S_outer: SemisimpleSequence, seeds=(0, 1, 2),
                             fs: FieldSpec = FieldSpec(),
                             _socle_cache: dict | None = None) -> PruningVerdict:
    """First implemented necessary condition that rules out containment, or ``possible``."""
    if S_inner.dim_vector != S_outer.dim_vector:
        raise ValidationError("containment test requires equal dimension vectors")
    if not dominates(S_outer, S_inner):
        return PruningVerdict(S_inner, S_outer, "excluded-dominance",
                              {"reason": "inner sequence does not dominate outer"},
                              "certified")
    ann_outer = annihilating_arrows(alg, S_outer)
    ann_inner = annihilating_arrows(alg, S_inner)
    missing = sorted(ann_outer - ann_inner)
    if missing:
        return PruningVerdict(S_inner, S_outer, "excluded-annihilator",
                              {"arrows": missing}, "certified")

    def soc(S):
        if _socle_cache is not None and S.layers in _socle_cache:
            return _socle_cache[S.layers]
        value = generic_socle(alg, S, seeds, fs)
        if _socle_cache is not None:
            _socle_cache[S.layers] = value
        return value

    soc_outer, soc_inner = soc(S_outer), soc(S_inner)
    if any(o > i for o, i in zip(soc_outer, soc_inner)):
        return PruningVerdict(S_inner, S_outer, "excluded-socle",
                              {"socle_outer": list(soc_outer),
                               "socle_inner": list(soc_inner)},
                              "seeded-generic")
    return PruningVerdict(S_inner, S_outer, "possible", {}, "seeded-generic")


@dataclass(frozen=True)
class SequencePoset:
    sequences: tuple[SemisimpleSequence, ...]
    hasse_edges: tuple[tuple[int, int], ...]   # (lower, upper) index pairs, covers only
    minimal: tuple[int, ...]


def sequence_poset(alg: TruncatedAlgebra, sequences) -> SequencePoset:
    sequences = tuple(sequences)
    below = {
        (i, j)
        for i, a in enumerate(sequences)
        for j, b in enumerate(sequences)
        if i != j and dominates(a, b)
    }
    covers = []
    for i, j in sorted(below):
        if not any((i, k) in below and (k, j) in below for k in range(len(sequences))):
            covers.append((i, j))
    minimal = tuple(i for i in range(len(sequences))
                    if not any((k, i) in below for k in range(len(sequences))))
    return SequencePoset(sequences, tuple(covers), minimal)


@dataclass(frozen=True)
class ComponentReport:
    dim_vector: DimensionVector
    poset: SequencePoset
    verdicts: tuple[PruningVerdict, ...]
    class0: tuple[int, ...]                    # dominance-minimal sequences
    candidates: tuple[int, ...]
    possibly_redundant: dict[int, tuple[int, ...]]
    lower_bound: int
    upper_bound: int
    seeds: tuple[int, ...]
    field_modulus: int | None

    @property
    def sequences(self):
        return self.poset.sequences


def component_report(alg: TruncatedAlgebra, dimvec: DimensionVector,
                     top: DimensionVector | None = None,
                     max_top_dim: int | None = None,
                     seeds=(0, 1, 2), fs: FieldSpec = FieldSpec()) -> ComponentReport:
    """Sift the realizable sequences of a dimension vector for component candidates.

    Every ordered pair is run through the containment test; a sequence that
    is ``possible`` inside some other sequence is only possibly a component
    (reported with its potential containers).  Dominance-minimal sequences
    are components outright (class 0).  The candidate count is bracketed by
    the number of minimal sequences and the number of realizable ones.
    """
    sequences = enumerate_sequences(alg, dimvec, top=top)
    if max_top_dim is not None:
        sequences = [S for S in sequences if sum(S.top) <= max_top_dim]
    poset = sequence_poset(alg, sequences)
    cache: dict = {}
    verdicts = []
    containers: dict[int, list[int]] = {i: [] for i in range(len(sequences))}
    for i, inner in enumerate(sequences):
        for j, outer in enumerate(sequences):
            if i == j:
                continue
            v = closure_containment_test(alg, inner, outer, seeds, fs, _socle_cache=cache)
            verdicts.append(v)
            if v.verdict == "possible":
                containers[i].append(j)
    candidates = tuple(i for i in range(len(sequences)) if not containers[i])
    redundant = {i: tuple(js) for i, js in containers.items() if js}
    return ComponentReport(
        dim_vector=tuple(dimvec),
        poset=poset,
        verdicts=tuple(verdicts),
        class0=poset.minimal,
        candidates=candidates,
        possibly_redundant=redundant,
        lower_bound=len(poset.minimal),
        upper_bound=len(sequences),
        seeds=tuple(seeds),
        field_modulus=fs.modulus,
    )


# ---------------------------------------------------------------------------
# JSON interfaces
# ---------------------------------------------------------------------------

def verdict_to_json(v: PruningVerdict) -> dict:
    return {
        "inner": [list(r) for r in v.inner.layers],
        "outer": [list(r) for r in v.outer.layers],
        "verdict": v.verdict,
        "evidence": v.evidence,
        "confidence": v.confidence,
    }


def report_to_json(rep: ComponentReport) -> dict:
    seqs = [[list(r) for r in S.layers] for S in rep.sequences]
    return {
        "dim_vector": list(rep.dim_vector),
        "sequences": seqs,
        "hasse_edges": [list(e) for e in rep.poset.hasse_edges],
        "class0": [seqs[i] for i in rep.class0],
        "candidates": [seqs[i] for i in rep.candidates],
        "possibly_redundant": [
            {"sequence": seqs[i], "possible_containers": [seqs[j] for j in js]}
            for i, js in sorted(rep.possibly_redundant.items())
        ],
        "lower_bound": rep.lower_bound,
        "upper_bound": rep.upper_bound,
        "pairs": [verdict_to_json(v) for v in rep.verdicts],
        "seed": list(rep.seeds),
        "field_modulus": rep.field_modulus,
        "confidence": "seeded-generic",
    }
