import pytest

from genrep.algebra_core import Arrow, Quiver, SemisimpleSequence, TruncatedAlgebra


def _alg(vertices, arrows, L):
    return TruncatedAlgebra(Quiver(vertices, [Arrow(*a) for a in arrows]), L)


def seq(*layers):
    return SemisimpleSequence(tuple(tuple(row) for row in layers))


@pytest.fixture(scope="session")
def double_back():
    # 1 <--> 2 with one arrow a: 1->2 and two back-arrows b1, b2: 2->1; paths of length 3 vanish
    return _alg(["1", "2"], [("a", "1", "2"), ("b1", "2", "1"), ("b2", "2", "1")], 2)


@pytest.fixture(scope="session")
def relay():
    # two arrows 1->2, one 2->3, two 3->2; Loewy length 4
    return _alg(
        ["1", "2", "3"],
        [("a1", "1", "2"), ("a2", "1", "2"), ("b", "2", "3"), ("g1", "3", "2"), ("g2", "3", "2")],
        3,
    )


@pytest.fixture(scope="session")
def loop_out():
    # loop at 1 plus an arrow 1->2, Loewy length 3
    return _alg(["1", "2"], [("a", "1", "1"), ("b", "1", "2")], 2)


@pytest.fixture(scope="session")
def chain_with_returns():
    # 1 -> 2 and 1 -> 6 feeding a zigzag 2<->3<->4<->5<->6, Loewy length 6
    return _alg(
        ["1", "2", "3", "4", "5", "6"],
        [
            ("c12", "1", "2"), ("c16", "1", "6"),
            ("f23", "2", "3"), ("f34", "3", "4"), ("f45", "4", "5"), ("f56", "5", "6"),
            ("b32", "3", "2"), ("b43", "4", "3"), ("b54", "5", "4"), ("b65", "6", "5"),
        ],
        5,
    )


@pytest.fixture(scope="session")
def line_swing():
    # 1 -> 2, 2 <-> 3, Loewy length 3
    return _alg(["1", "2", "3"], [("u", "1", "2"), ("v", "2", "3"), ("w", "3", "2")], 2)


@pytest.fixture(scope="session")
def six_vertex():
    # 1 -a-> 4 =b1,b2=> 6 <-g- 2, 3 -d-> 5 -e-> 6; hereditary, modeled with L = 2
    return _alg(
        ["1", "2", "3", "4", "5", "6"],
        [("al", "1", "4"), ("b1", "4", "6"), ("b2", "4", "6"),
         ("g", "2", "6"), ("d", "3", "5"), ("e", "5", "6")],
        2,
    )


@pytest.fixture(scope="session")
def kronecker():
    return _alg(["1", "2"], [("al", "1", "2"), ("be", "1", "2")], 1)


@pytest.fixture(scope="session")
def a2():
    return _alg(["1", "2"], [("g", "1", "2")], 1)


@pytest.fixture(scope="session")
def diamond():
    # 1 -> 2 -> 3 and 1 -> 4 -> 3, truncated at L = 2
    return _alg(["1", "2", "3", "4"],
                [("p", "1", "2"), ("q", "2", "3"), ("r", "1", "4"), ("s", "4", "3")], 2)


@pytest.fixture(scope="session")
def y_quiver():
    # 1 -> 2 -> 3 <- 4, modeled with L = 2
    return _alg(["1", "2", "3", "4"],
                [("a", "1", "2"), ("b", "2", "3"), ("c", "4", "3")], 2)


@pytest.fixture(scope="session")
def with_isolated():
    # arrow 1->2 next to an isolated vertex 3
    return _alg(["1", "2", "3"], [("a", "1", "2")], 2)


def presentation_kernel_layering(alg, S, sd):
    """Kernel of the cover P -> G(S) at seed sd, computed as explicit
    matrices and layered as a subrepresentation of P."""
    from genrep.algebra_core import top_elements
    from genrep.generic_builder import generic_presentation
    from genrep.matrix_rep import (
        FieldSpec, RowSpace, kernel_basis, mat_vec, materialize, path_action,
        projective_representation, seeded_assignment,
    )

    fs = FieldSpec()
    pres = generic_presentation(alg, S)
    G = materialize(pres, seeded_assignment(pres, sd), fs)
    P = projective_representation(alg, top_elements(alg, S), fs)
    kernel = {}
    for v in alg.vertices:
        cols = []
        for r, p in P.basis_labels[v]:
            _, tvec = G.top_elements[r - 1]
            cols.append(mat_vec(fs, path_action(G, p), list(tvec)))
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(G.dim_at(v))]
        kernel[v] = kernel_basis(fs, rows, P.dim_at(v))
    spaces = []
    first = {v: RowSpace(fs, P.dim_at(v)) for v in alg.vertices}
    for v in alg.vertices:
        for vec in kernel[v]:
            first[v].add(vec)
    spaces.append(first)
    for _ in range(alg.L + 1):
        prev = spaces[-1]
        nxt = {v: RowSpace(fs, P.dim_at(v)) for v in alg.vertices}
        for a in alg.quiver.arrows:
            for row in prev[a.source].rows:
                nxt[a.target].add(mat_vec(fs, P.matrices[a.name], row))
        spaces.append(nxt)
    assert all(spaces[alg.L + 1][v].dim == 0 for v in alg.vertices)
    return [tuple(spaces[l][v].dim - spaces[l + 1][v].dim for v in alg.vertices)
            for l in range(alg.L + 1)]


def profile_predicted_layering(alg, profile):
    from genrep.algebra_core import enumerate_paths
    layers = [[0] * alg.n for _ in range(alg.L + 1)]
    for c, mult in profile.items():
        for l in range(min(c.truncation, alg.L + 1)):
            for p in enumerate_paths(alg, c.vertex, l):
                layers[l][alg.vertex_pos(alg.path_end(p))] += mult
    return [tuple(row) for row in layers]
