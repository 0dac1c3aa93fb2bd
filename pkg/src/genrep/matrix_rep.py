"""Explicit quiver representations over a field, plus everything computed from them.

Materializes generic presentations at concrete scalars, computes radical
layerings, socles, Hom/Ext dimensions, distinguished skeleta of a module
point, and (in)decomposability certificates.

Fields are either F_p for a large prime p (default the Mersenne prime
2^61 - 1) or exact rationals.  Matrices are dense lists of Python ints
(mod p) or Fractions; all arithmetic is exact.  Rank over the rationals
uses fraction-free (Bareiss) elimination on a denominator-cleared integer
matrix; rank mod p uses standard elimination.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra_core import (
    Path,
    SemisimpleSequence,
    TruncatedAlgebra,
    realizable,
    top_elements,
)
from .errors import (
    DegenerateAssignmentError,
    EnumerationCapError,
    MethodDisagreementError,
    SeedStabilityError,
    UnrealizableError,
    ValidationError,
)
from .generic_builder import GenericPresentation, ScalarId, generic_presentation, hypergraph
from .homology import CyclicType, SyzygyProfile, iterated_syzygy
from .skeleta import Skeleton, iter_skeleta

MERSENNE_61 = 2**61 - 1
MIN_RANDOM_MODULUS = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Prime field F_p, or exact rationals when ``modulus`` is None."""

    modulus: int | None = MERSENNE_61

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ValidationError(f"{self.modulus} is not prime")

    @property
    def exact(self) -> bool:
        return self.modulus is None

    def element(self, x) -> object:
        if self.exact:
            return x if isinstance(x, Fraction) else Fraction(x)
        return int(x) % self.modulus

    def zero(self):
        return Fraction(0) if self.exact else 0

    def one(self):
        return Fraction(1) if self.exact else 1

    def add(self, a, b):
        return a + b if self.exact else (a + b) % self.modulus

    def sub(self, a, b):
        return a - b if self.exact else (a - b) % self.modulus

    def mul(self, a, b):
        return a * b if self.exact else (a * b) % self.modulus

    def inv(self, a):
        if self.exact:
            return Fraction(1) / a
        return pow(a, self.modulus - 2, self.modulus)

    def neg(self, a):
        return -a if self.exact else (-a) % self.modulus


RATIONALS = FieldSpec(None)


def _freeze(mat):
    return tuple(tuple(row) for row in mat)


# ---------------------------------------------------------------------------
# dense linear algebra
# ---------------------------------------------------------------------------

def zero_matrix(fs: FieldSpec, rows: int, cols: int):
    z = fs.zero()
    return [[z] * cols for _ in range(rows)]


def identity_matrix(fs: FieldSpec, n: int):
    m = zero_matrix(fs, n, n)
    for i in range(n):
        m[i][i] = fs.one()
    return m


def mat_mul(fs: FieldSpec, A, B):
    if not A or not B:
        return [[fs.zero()] * (len(B[0]) if B else 0) for _ in A]
    rows, inner, cols = len(A), len(B), len(B[0])
    out = zero_matrix(fs, rows, cols)
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if a == 0:
                continue
            Bk = B[k]
            Oi = out[i]
            for j in range(cols):
                Oi[j] = fs.add(Oi[j], fs.mul(a, Bk[j]))
    return out


def mat_vec(fs: FieldSpec, A, x):
    return [
        _dot(fs, row, x)
        for row in A
    ]


def _dot(fs: FieldSpec, row, x):
    acc = fs.zero()
    for a, b in zip(row, x):
        if a != 0 and b != 0:
            acc = fs.add(acc, fs.mul(a, b))
    return acc


def _rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] % p:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rank_bareiss(rows):
    # fraction-free elimination over the integers
    M = [list(r) for r in rows]
    m = len(M)
    n = len(M[0]) if M else 0
    rank = 0
    prev = 1
    for col in range(n):
        pivot = None
        for i in range(rank, m):
            if M[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                M[i][j] = (M[rank][col] * M[i][j] - M[i][col] * M[rank][j]) // prev
            M[i][col] = 0
        prev = M[rank][col]
        rank += 1
        if rank == m:
            break
    return rank


def mat_rank(fs: FieldSpec, rows) -> int:
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        return 0
    if not fs.exact:
        return _rank_mod_p(rows, fs.modulus)
    cleared = []
    for r in rows:
        fracs = [Fraction(x) for x in r]
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        cleared.append([int(f * den) for f in fracs])
    return _rank_bareiss(cleared)


def kernel_dim(fs: FieldSpec, rows, ncols: int) -> int:
    return ncols - mat_rank(fs, rows)


def kernel_basis(fs: FieldSpec, rows, ncols: int) -> list[list]:
    """Basis of the right kernel, one vector per free column of the rref."""
    R = [[fs.element(x) for x in r] for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(R)) if R[i][col] != 0), None)
        if piv is None:
            continue
        R[rank], R[piv] = R[piv], R[rank]
        inv = fs.inv(R[rank][col])
        R[rank] = [fs.mul(inv, x) for x in R[rank]]
        for i in range(len(R)):
            if i != rank and R[i][col] != 0:
                c = R[i][col]
                R[i] = [fs.sub(a, fs.mul(c, b)) for a, b in zip(R[i], R[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(R):
            break
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [fs.zero()] * ncols
        v[free] = fs.one()
        for i, pc in enumerate(pivots):
            v[pc] = fs.neg(R[i][free])
        basis.append(v)
    return basis


class RowSpace:
    """Incrementally maintained reduced row-echelon basis of a subspace."""

    def __init__(self, fs: FieldSpec, width: int):
        self.fs = fs
        self.width = width
        self.rows: list[list] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> list:
        fs = self.fs
        v = [fs.element(x) for x in vec]
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c != 0:
                v = [fs.sub(a, fs.mul(c, b)) for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def add(self, vec):
        """Insert ``vec``; returns the new reduced basis row, or None if dependent."""
        fs = self.fs
        v = self.reduce(vec)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return None
        inv = fs.inv(v[piv])
        v = [fs.mul(inv, x) for x in v]
        for row in self.rows:
            c = row[piv]
            if c != 0:
                row[:] = [fs.sub(a, fs.mul(c, b)) for a, b in zip(row, v)]
        at = next((k for k, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, piv)
        return v


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Representation:
    """Per-vertex spaces and per-arrow matrices (target_dim x source_dim).

    Matrices are tuples of tuples; treat instances as immutable.
    """

    algebra: TruncatedAlgebra
    field: FieldSpec
    dims: tuple[int, ...]
    matrices: dict[str, tuple]
    basis_labels: dict[str, tuple] | None = None
    top_elements: tuple[tuple[str, tuple], ...] | None = None

    def dim_at(self, v: str) -> int:
        return self.dims[self.algebra.vertex_pos(v)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def matrix(self, arrow_name: str):
        return self.matrices[arrow_name]


def _same_algebra(a: TruncatedAlgebra, b: TruncatedAlgebra) -> bool:
    return (a.vertices == b.vertices and a.L == b.L
            and [(x.name, x.source, x.target) for x in a.quiver.arrows]
            == [(x.name, x.source, x.target) for x in b.quiver.arrows])


@dataclass(frozen=True)
class ScalarAssignment:
    """Nonzero field values for every formal scalar of a presentation."""

    values: dict
    seed: int | None
    provenance: str

    def __getitem__(self, sid: ScalarId):
        return self.values[sid]

    def __contains__(self, sid: ScalarId):
        return sid in self.values


def seeded_assignment(pres: GenericPresentation, seed: int,
                      fs: FieldSpec = FieldSpec()) -> ScalarAssignment:
    """Distinct nonzero values drawn from a seeded PRNG.

    In exact-rational mode the scalars are the first primes 2, 3, 5, ...
    so exact runs are reproducible without a modulus.
    """
    ids = pres.scalar_ids
    if fs.exact:
        values = {}
        n, primes = 2, []
        while len(primes) < len(ids):
            if _is_prime(n):
                primes.append(n)
            n += 1
        for sid, p in zip(ids, primes):
            values[sid] = Fraction(p)
        return ScalarAssignment(values, seed, "exact-primes")
    if fs.modulus <= MIN_RANDOM_MODULUS:
        raise ValidationError(
            f"field modulus must exceed {MIN_RANDOM_MODULUS} for randomized evaluation")
    rng = random.Random(seed)
    seen: set[int] = set()
    values = {}
    for sid in ids:
        while True:
            x = rng.randrange(1, fs.modulus)
            if x not in seen:
                seen.add(x)
                values[sid] = x
                break
    return ScalarAssignment(values, seed, "seeded-random")


def user_assignment(values: dict, fs: FieldSpec = FieldSpec()) -> ScalarAssignment:
    vals = {sid: fs.element(v) for sid, v in values.items()}
    if any(v == 0 for v in vals.values()):
        raise ValidationError("scalar assignments must be nonzero")
    return ScalarAssignment(vals, None, "user-supplied")


def materialize(pres: GenericPresentation, assign: ScalarAssignment,
                fs: FieldSpec = FieldSpec()) -> Representation:
    """Evaluate a generic presentation at concrete scalars.

    Basis = skeleton elements; the arrow action sends a basis element to a
    basis element (inside the skeleton), to the assigned combination of its
    sigma-set (critical), or to zero (beyond length L).  The result must
    have the presentation's radical layering, otherwise the assignment was
    degenerate and an error is raised.
    """
    alg = pres.algebra
    sk = pres.skeleton
    by_vertex: dict[str, list] = {v: [] for v in alg.vertices}
    for el in sk.elements:
        by_vertex[sk.end(el)].append(el)
    index = {el: i for v in alg.vertices for i, el in enumerate(by_vertex[v])}
    dims = tuple(len(by_vertex[v]) for v in alg.vertices)

    rel_map = {}
    for rel in pres.relations:
        crit = rel.sigma_set.critical
        rel_map[(crit.arrow, crit.parent)] = rel

    for rel in pres.relations:
        for _, sid in rel.terms:
            if sid not in assign:
                raise ValidationError(f"assignment missing scalar {sid.name}")

    matrices = {}
    for a in alg.quiver.arrows:
        src, tgt = a.source, a.target
        mat = zero_matrix(fs, len(by_vertex[tgt]), len(by_vertex[src]))
        for j, el in enumerate(by_vertex[src]):
            r, p = el
            if p.length + 1 > alg.L:
                continue
            ext = alg.extend(p, a)
            if (r, ext) in sk:
                mat[index[(r, ext)]][j] = fs.one()
                continue
            rel = rel_map[(a.name, el)]
            for mem, sid in rel.terms:
                mat[index[mem]][j] = fs.add(mat[index[mem]][j], fs.element(assign[sid]))
        matrices[a.name] = _freeze(mat)

    tops = []
    for r, v in enumerate(sk.top, start=1):
        vec = [fs.zero()] * len(by_vertex[v])
        vec[index[(r, alg.trivial_path(v))]] = fs.one()
        tops.append((v, tuple(vec)))

    rep = Representation(alg, fs, dims, matrices,
                         basis_labels={v: tuple(by_vertex[v]) for v in alg.vertices},
                         top_elements=tuple(tops))
    if radical_layering(rep) != pres.sequence:
        raise DegenerateAssignmentError(
            "assignment collapsed the radical layering; draw a fresh seed")
    return rep


def _radical_spaces(rep: Representation) -> list[dict[str, RowSpace]]:
    """Bases of J^l M per vertex, l = 0..L+1; the last must be zero."""
    alg, fs = rep.algebra, rep.field
    spaces = []
    full = {}
    for v in alg.vertices:
        rs = RowSpace(fs, rep.dim_at(v))
        for row in identity_matrix(fs, rep.dim_at(v)):
            rs.add(row)
        full[v] = rs
    spaces.append(full)
    for _ in range(alg.L + 1):
        prev = spaces[-1]
        nxt = {v: RowSpace(fs, rep.dim_at(v)) for v in alg.vertices}
        for a in alg.quiver.arrows:
            mat = rep.matrices[a.name]
            for row in prev[a.source].rows:
                nxt[a.target].add(mat_vec(fs, mat, row))
        spaces.append(nxt)
    return spaces


def radical_layering(rep: Representation) -> SemisimpleSequence:
    """Per-vertex dimensions of J^l M / J^{l+1} M for l = 0..L."""
    alg = rep.algebra
    spaces = _radical_spaces(rep)
    if any(spaces[alg.L + 1][v].dim for v in alg.vertices):
        raise ValidationError("representation is not annihilated by paths of length L+1")
    layers = []
    for l in range(alg.L + 1):
        layers.append(tuple(spaces[l][v].dim - spaces[l + 1][v].dim for v in alg.vertices))
    return SemisimpleSequence(tuple(layers))


def socle(rep: Representation) -> tuple[int, ...]:
    """Per-vertex socle dimensions: joint kernel of all arrows leaving the vertex."""
    alg, fs = rep.algebra, rep.field
    out = []
    for v in alg.vertices:
        d = rep.dim_at(v)
        stacked = []
        for a in alg.quiver.arrows_from[v]:
            stacked.extend(rep.matrices[a.name])
        out.append(kernel_dim(fs, stacked, d) if stacked else d)
    return tuple(out)


def hom_dim(rep_a: Representation, rep_b: Representation) -> int:
    """Dimension of the intertwiner space Hom(A, B)."""
    if not _same_algebra(rep_a.algebra, rep_b.algebra):
        raise ValidationError("representations live over different algebras")
    if rep_a.field != rep_b.field:
        raise ValidationError("representations live over different fields")
    alg, fs = rep_a.algebra, rep_a.field
    offsets, total = {}, 0
    for v in alg.vertices:
        offsets[v] = total
        total += rep_b.dim_at(v) * rep_a.dim_at(v)
    rows = []
    for a in alg.quiver.arrows:
        A = rep_a.matrices[a.name]
        B = rep_b.matrices[a.name]
        s, t = a.source, a.target
        dAs, dAt = rep_a.dim_at(s), rep_a.dim_at(t)
        dBs, dBt = rep_b.dim_at(s), rep_b.dim_at(t)
        for i in range(dBt):
            for j in range(dAs):
                row = [fs.zero()] * total
                for k in range(dAt):
                    if A[k][j] != 0:
                        row[offsets[t] + i * dAt + k] = fs.add(
                            row[offsets[t] + i * dAt + k], A[k][j])
                for k in range(dBs):
                    if B[i][k] != 0:
                        idx = offsets[s] + k * dAs + j
                        row[idx] = fs.sub(row[idx], B[i][k])
                rows.append(row)
    return kernel_dim(fs, rows, total)


def path_action(rep: Representation, p: Path):
    """Matrix of the action of a path: component at start -> component at end."""
    fs = rep.field
    mat = identity_matrix(fs, rep.dim_at(p.start))
    for name in reversed(p.arrows):
        mat = mat_mul(fs, rep.matrices[name], mat)
    return mat


def hom_dim_from_cyclic(alg: TruncatedAlgebra, c: CyclicType, rep: Representation) -> int:
    """dim Hom(Lambda e / J^m e, N) = dim { n in eN : J^m n = 0 }.

    The kernel of the stacked action matrices of all length-m paths out of
    e; a projective cyclic imposes no constraint.
    """
    from .algebra_core import enumerate_paths

    d = rep.dim_at(c.vertex)
    if c.truncation >= alg.L + 1:
        return d
    paths = enumerate_paths(alg, c.vertex, c.truncation)
    if not paths:
        return d
    stacked = []
    for p in paths:
        stacked.extend(path_action(rep, p))
    return kernel_dim(rep.field, stacked, d)


def hom_profile_dim(alg: TruncatedAlgebra, profile: SyzygyProfile, rep: Representation) -> int:
    return sum(m * hom_dim_from_cyclic(alg, c, rep) for c, m in profile.items())


# ---------------------------------------------------------------------------
# Ext dimensions, two ways
# ---------------------------------------------------------------------------

def _hom_from_projective_cover_of_top(S0, alg, rep) -> int:
    return sum(S0[i] * rep.dims[i] for i in range(alg.n))


def _hom_from_cover_of_profile(alg, profile: SyzygyProfile, rep) -> int:
    return sum(m * rep.dim_at(c.vertex) for c, m in profile.items())


def _ext1_restriction_method(pres: GenericPresentation, assign: ScalarAssignment,
                             rep_n: Representation) -> int:
    """dim Ext^1 as corank of the restriction map Hom(P, N) -> Hom(Omega^1, N).

    Uses the explicit embedding Omega^1 = C <= JP: a homomorphism P -> N is
    a choice of images n_r in e(r)N, and its restriction to C is determined
    by the values on the relation generators.
    """
    alg, fs = pres.algebra, rep_n.field
    tops = pres.skeleton.top
    offsets, total = [], 0
    for v in tops:
        offsets.append(total)
        total += rep_n.dim_at(v)

    hom_c = 0
    rows = []
    for rel in pres.relations:
        crit = rel.sigma_set.critical
        cpath = crit.path(alg)
        end = alg.path_end(cpath)
        hom_c += hom_dim_from_cyclic(
            alg, CyclicType(end, alg.L + 1 - cpath.length), rep_n)
        d_end = rep_n.dim_at(end)
        blocks = [[fs.zero()] * total for _ in range(d_end)]

        def accumulate(path: Path, r: int, scale):
            mat = path_action(rep_n, path)
            off = offsets[r - 1]
            for i in range(d_end):
                for j in range(rep_n.dim_at(path.start)):
                    if mat[i][j] != 0:
                        blocks[i][off + j] = fs.add(blocks[i][off + j],
                                                    fs.mul(scale, mat[i][j]))

        accumulate(cpath, crit.r, fs.one())
        for mem, sid in rel.terms:
            accumulate(mem[1], mem[0], fs.neg(fs.element(assign[sid])))
        rows.extend(blocks)
    return hom_c - mat_rank(fs, rows)


def ext_dim_detail(alg: TruncatedAlgebra, S_M: SemisimpleSequence, rep_n: Representation,
                   k: int, seeds, fs: FieldSpec = FieldSpec()) -> dict:
    """Per-seed Ext^k(G(S_M), N) with both methods at k = 1.

    Method 1 is the alternating formula on the minimal resolution read off
    the syzygy profiles; method 2 (k = 1 only) is the corank of the
    explicit restriction map.  Disagreement between methods or across seeds
    is an error, never averaged.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not realizable(alg, S_M):
        raise UnrealizableError(f"{S_M} is not realizable")
    pres = generic_presentation(alg, S_M)
    per_seed = []
    for seed in seeds:
        assign = seeded_assignment(pres, seed, fs)
        rep_g = materialize(pres, assign, fs)
        hom_k = hom_profile_dim(alg, iterated_syzygy(alg, S_M, k), rep_n)
        if k == 1:
            hom_km1 = hom_dim(rep_g, rep_n)
            hom_cover = _hom_from_projective_cover_of_top(S_M.top, alg, rep_n)
        else:
            prev = iterated_syzygy(alg, S_M, k - 1)
            hom_km1 = hom_profile_dim(alg, prev, rep_n)
            hom_cover = _hom_from_cover_of_profile(alg, prev, rep_n)
        value = hom_k - hom_cover + hom_km1
        record = {"seed": seed, "alternating": value}
        if k == 1:
            other = _ext1_restriction_method(pres, assign, rep_n)
            record["restriction"] = other
            if other != value:
                raise MethodDisagreementError(
                    f"ext methods disagree at seed {seed}: {value} vs {other}")
        per_seed.append(record)
    values = {r["alternating"] for r in per_seed}
    if len(values) > 1:
        raise SeedStabilityError(f"ext value varies across seeds: {per_seed}")
    return {"k": k, "value": values.pop(), "per_seed": per_seed,
            "field_modulus": fs.modulus}


def ext_dim(alg: TruncatedAlgebra, S_M: SemisimpleSequence, rep_n: Representation,
            k: int, seeds, fs: FieldSpec = FieldSpec()) -> int:
    return ext_dim_detail(alg, S_M, rep_n, k, seeds, fs)["value"]


# ---------------------------------------------------------------------------
# module points and distinguished skeleta
# ---------------------------------------------------------------------------

def projective_representation(alg: TruncatedAlgebra, tops: tuple[str, ...],
                              fs: FieldSpec = RATIONALS) -> Representation:
    """The projective P = ⊕_r Lambda z_r with its path basis and marked tops."""
    from .algebra_core import enumerate_paths

    elements = []
    for r, v in enumerate(tops, start=1):
        alg.vertex_pos(v)
        for l in range(alg.L + 1):
            for p in enumerate_paths(alg, v, l):
                elements.append((r, p))
    by_vertex: dict[str, list] = {v: [] for v in alg.vertices}
    for el in sorted(elements, key=lambda e: (e[1].length, e[0], alg.path_sort_key(e[1]))):
        by_vertex[alg.path_end(el[1])].append(el)
    index = {el: i for v in alg.vertices for i, el in enumerate(by_vertex[v])}
    dims = tuple(len(by_vertex[v]) for v in alg.vertices)
    matrices = {}
    for a in alg.quiver.arrows:
        mat = zero_matrix(fs, len(by_vertex[a.target]), len(by_vertex[a.source]))
        for j, (r, p) in enumerate(by_vertex[a.source]):
            if p.length + 1 <= alg.L:
                mat[index[(r, alg.extend(p, a))]][j] = fs.one()
        matrices[a.name] = _freeze(mat)
    top_vecs = []
    for r, v in enumerate(tops, start=1):
        vec = [fs.zero()] * len(by_vertex[v])
        vec[index[(r, alg.trivial_path(v))]] = fs.one()
        top_vecs.append((v, tuple(vec)))
    return Representation(alg, fs, dims, matrices,
                          basis_labels={v: tuple(by_vertex[v]) for v in alg.vertices},
                          top_elements=tuple(top_vecs))


def quotient_representation(rep: Representation, sub_vectors) -> Representation:
    """Quotient of ``rep`` by the submodule generated by the given vectors.

    ``sub_vectors`` is an iterable of (vertex, vector); the span is closed
    under the arrow action before forming the quotient.  Marked top elements
    are carried along by projection.
    """
    alg, fs = rep.algebra, rep.field
    spaces = {v: RowSpace(fs, rep.dim_at(v)) for v in alg.vertices}
    pending = [(v, list(vec)) for v, vec in sub_vectors]
    while pending:
        v, vec = pending.pop()
        added = spaces[v].add(vec)
        if added is None:
            continue
        for a in alg.quiver.arrows_from[v]:
            pending.append((a.target, mat_vec(fs, rep.matrices[a.name], added)))

    keep = {}
    for v in alg.vertices:
        pivots = set(spaces[v].pivots)
        keep[v] = [i for i in range(rep.dim_at(v)) if i not in pivots]

    def project(v: str, vec):
        reduced = spaces[v].reduce(vec)
        return [reduced[i] for i in keep[v]]

    dims = tuple(len(keep[v]) for v in alg.vertices)
    matrices = {}
    for a in alg.quiver.arrows:
        src, tgt = a.source, a.target
        cols = []
        for i in keep[src]:
            unit = [fs.zero()] * rep.dim_at(src)
            unit[i] = fs.one()
            cols.append(project(tgt, mat_vec(fs, rep.matrices[a.name], unit)))
        matrices[a.name] = _freeze(
            [[cols[j][i] for j in range(len(keep[src]))] for i in range(len(keep[tgt]))])
    tops = None
    if rep.top_elements is not None:
        tops = tuple((v, tuple(project(v, list(vec)))) for v, vec in rep.top_elements)
    return Representation(alg, fs, dims, matrices, basis_labels=None, top_elements=tops)


def module_point(alg: TruncatedAlgebra, tops, relations,
                 fs: FieldSpec = RATIONALS) -> Representation:
    """P/C for generators given as coefficient combinations of paths on tops.

    Each relation is a list of (coeff, r, arrows); arrows are in display
    order (leftmost applied last).  Components at distinct vertices of one
    generator split into separate submodule generators.
    """
    tops = tuple(str(v) for v in tops)
    P = projective_representation(alg, tops, fs)
    by_vertex = P.basis_labels
    index = {v: {el: i for i, el in enumerate(by_vertex[v])} for v in alg.vertices}
    gens = []
    for rel in relations:
        comps: dict[str, list] = {}
        for coeff, r, arrows in rel:
            if not 1 <= int(r) <= len(tops):
                raise ValidationError(f"relation references unknown top index {r}")
            p = Path(tops[int(r) - 1], tuple(str(a) for a in arrows))
            v = tops[int(r) - 1]
            for name in reversed(p.arrows):
                a = alg.quiver.arrow_by_name.get(name)
                if a is None or a.source != v:
                    raise ValidationError(f"non-composable path in relation: {arrows}")
                v = a.target
            if p.length > alg.L:
                continue
            end = alg.path_end(p)
            vec = comps.setdefault(end, [fs.zero()] * P.dim_at(end))
            i = index[end][(int(r), p)]
            vec[i] = fs.add(vec[i], fs.element(coeff))
        for v, vec in comps.items():
            if any(x != 0 for x in vec):
                gens.append((v, vec))
    return quotient_representation(P, gens)


def _check_tops_full(rep: Representation, spaces) -> None:
    alg, fs = rep.algebra, rep.field
    if rep.top_elements is None:
        raise ValidationError("representation has no marked top elements")
    radical = spaces[1]
    top_dim = sum(rep.dims) - sum(radical[v].dim for v in alg.vertices)
    if len(rep.top_elements) != top_dim:
        raise ValidationError("marked top elements do not form a full sequence")
    for v in alg.vertices:
        probe = RowSpace(fs, rep.dim_at(v))
        for row in radical[v].rows:
            probe.add(row)
        for w, vec in rep.top_elements:
            if w == v and probe.add(list(vec)) is None:
                raise ValidationError("marked top elements are dependent modulo JM")


def distinguished_skeleta_of(rep: Representation, cap: int = 10**6) -> list[Skeleton]:
    """All distinguished skeleta of a module point with marked top elements.

    A compatible abstract skeleton qualifies when, for every layer l, the
    vectors p*m_r over its layer-l members are independent modulo J^{l+1}M.
    Marked tops are grouped by vertex to align with the distinguished
    indexing z_1..z_t.
    """
    alg, fs = rep.algebra, rep.field
    spaces = _radical_spaces(rep)
    _check_tops_full(rep, spaces)
    S = radical_layering(rep)
    order = sorted(range(len(rep.top_elements)),
                   key=lambda i: alg.vertex_pos(rep.top_elements[i][0]))
    tops = [rep.top_elements[i] for i in order]
    if tuple(v for v, _ in tops) != top_elements(alg, S):
        raise ValidationError("marked top elements do not match the layering's top")

    out = []
    count = 0
    for sk in iter_skeleta(alg, S):
        count += 1
        if count > cap:
            raise EnumerationCapError(cap)
        good = True
        for l in range(alg.L + 1):
            layer = sk.layer(l)
            if not layer:
                continue
            probes = {v: None for v in alg.vertices}
            for r, p in layer:
                v_top, vec = tops[r - 1]
                w = mat_vec(fs, path_action(rep, p), list(vec))
                end = alg.path_end(p)
                if probes[end] is None:
                    probe = RowSpace(fs, rep.dim_at(end))
                    for row in spaces[l + 1][end].rows:
                        probe.add(row)
                    probes[end] = probe
                if probes[end].add(w) is None:
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(sk)
    return out


# ---------------------------------------------------------------------------
# decomposability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionVerdict:
    verdict: str              # indecomposable-certified | decomposable-certified | undecided
    witness: dict
    confidence: str           # certified | seeded-generic


def graded_decomposition(alg: TruncatedAlgebra, S: SemisimpleSequence,
                         skeleton: Skeleton | None = None):
    """Direct summands of the graded generic module, from the auxiliary graph.

    Vertices are the top elements; z_r and z_s are joined when a critical
    path of one tree has an equal-length, equal-endpoint sigma-set member
    in the other.  Returns (top index tuple, dimension vector) per
    component.
    """
    pres = generic_presentation(alg, S, skeleton=skeleton, graded=True)
    hg = hypergraph(pres)
    parts = hg.top_component_partition()
    trees = pres.skeleton.tree_dim_vectors()
    out = []
    for part in parts:
        dims = [0] * alg.n
        for r in part:
            for j, d in enumerate(trees[r]):
                dims[j] += d
        out.append((tuple(sorted(part)), tuple(dims)))
    return out


def decomposability(alg: TruncatedAlgebra, S: SemisimpleSequence, graded: bool = False,
                    seeds=(0, 1, 2), fs: FieldSpec = FieldSpec()) -> DecompositionVerdict:
    """Certify (in)decomposability of the generic module with layering S.

    Decomposable: the generic hypergraph splits the top elements (graded
    mode reports the auxiliary-graph components).  Indecomposable: the
    auxiliary graph is connected with squarefree top, or a materialized
    evaluation has endomorphism ring K.  Anything else is undecided.
    """
    if not realizable(alg, S):
        raise UnrealizableError(f"{S} is not realizable")
    squarefree = all(x <= 1 for x in S.top)
    comps = graded_decomposition(alg, S)
    if graded:
        if len(comps) > 1:
            return DecompositionVerdict(
                "decomposable-certified",
                {"components": [{"tops": list(zs), "dim_vector": list(dv)} for zs, dv in comps]},
                "certified")
        if squarefree:
            return DecompositionVerdict(
                "indecomposable-certified",
                {"reason": "auxiliary graph connected, squarefree top"},
                "certified")
    else:
        pres = generic_presentation(alg, S)
        parts = hypergraph(pres).top_component_partition()
        if len(parts) > 1:
            trees = pres.skeleton.tree_dim_vectors()
            witness = []
            for part in parts:
                dims = [0] * alg.n
                for r in part:
                    for j, d in enumerate(trees[r]):
                        dims[j] += d
                witness.append({"tops": sorted(part), "dim_vector": dims})
            return DecompositionVerdict(
                "decomposable-certified", {"components": witness}, "certified")
        if len(comps) == 1 and squarefree:
            return DecompositionVerdict(
                "indecomposable-certified",
                {"reason": "graded auxiliary graph connected, squarefree top"},
                "certified")
    # fall back to an End = K witness on a materialized point
    pres = generic_presentation(alg, S, graded=graded)
    end_dims = []
    for seed in seeds:
        rep = materialize(pres, seeded_assignment(pres, seed, fs), fs)
        e = hom_dim(rep, rep)
        if e == 1:
            return DecompositionVerdict(
                "indecomposable-certified",
                {"reason": "endomorphism ring K at a verified point",
                 "seed": seed, "end_dim": 1},
                "certified")
        end_dims.append({"seed": seed, "end_dim": e})
    return DecompositionVerdict("undecided", {"end_dims": end_dims}, "seeded-generic")


# ---------------------------------------------------------------------------
# stability helpers and JSON
# ---------------------------------------------------------------------------

def stable_over_seeds(compute, seeds):
    """Evaluate ``compute(seed)`` on every seed; all results must agree."""
    results = [(s, compute(s)) for s in seeds]
    values = {v for _, v in results}
    if len(values) > 1:
        raise SeedStabilityError(f"seeded values disagree: {results}")
    return results[0][1]


def generic_socle(alg: TruncatedAlgebra, S: SemisimpleSequence, seeds=(0, 1, 2),
                  fs: FieldSpec = FieldSpec()) -> tuple[int, ...]:
    """Socle dimension vector of the generic module, seed-stability checked."""
    pres = generic_presentation(alg, S)

    def compute(seed):
        return socle(materialize(pres, seeded_assignment(pres, seed, fs), fs))

    return stable_over_seeds(compute, seeds)


def generic_end_dim(alg: TruncatedAlgebra, S: SemisimpleSequence, seeds=(0, 1, 2),
                    fs: FieldSpec = FieldSpec()) -> int:
    pres = generic_presentation(alg, S)

    def compute(seed):
        rep = materialize(pres, seeded_assignment(pres, seed, fs), fs)
        return hom_dim(rep, rep)

    return stable_over_seeds(compute, seeds)


def generic_hom_dim(alg: TruncatedAlgebra, S_a: SemisimpleSequence,
                    S_b: SemisimpleSequence, seeds=(0, 1, 2),
                    fs: FieldSpec = FieldSpec(), seed_offset: int = 0x9E3779B9) -> int:
    """hom between independently materialized generic modules of two sequences."""
    pres_a = generic_presentation(alg, S_a)
    pres_b = generic_presentation(alg, S_b)

    def compute(seed):
        rep_a = materialize(pres_a, seeded_assignment(pres_a, seed, fs), fs)
        rep_b = materialize(pres_b, seeded_assignment(pres_b, seed + seed_offset, fs), fs)
        return hom_dim(rep_a, rep_b)

    return stable_over_seeds(compute, seeds)


def representation_to_json(rep: Representation) -> dict:
    def enc(x):
        return str(x) if isinstance(x, Fraction) else int(x)

    return {
        "field_modulus": rep.field.modulus,
        "dims": {v: rep.dim_at(v) for v in rep.algebra.vertices},
        "matrices": {name: [[enc(x) for x in row] for row in mat]
                     for name, mat in rep.matrices.items()},
    }


def module_point_from_json(data: dict, alg: TruncatedAlgebra,
                           fs: FieldSpec = RATIONALS) -> Representation:
    """{"tops":[{"vertex":...}],"relations":[[{"coeff","r","arrows"}...]]} -> P/C."""
    try:
        tops = [str(t["vertex"]) for t in data["tops"]]
        relations = [
            [(_parse_coeff(term.get("coeff", 1), fs), int(term["r"]),
              tuple(str(a) for a in term["arrows"]))
             for term in rel]
            for rel in data["relations"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed module point: {exc}") from None
    return module_point(alg, tops, relations, fs)


def _parse_coeff(raw, fs: FieldSpec):
    if isinstance(raw, str):
        return fs.element(Fraction(raw)) if fs.exact else fs.element(int(raw))
    return fs.element(raw)
