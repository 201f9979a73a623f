import random
from itertools import combinations

from maghom.snf import (
    SparseMatrix,
    homology_of_complex,
    rank_fraction_free,
    smith_normal_form,
    sparse_matmul,
)


def snf_dense(rows):
    return smith_normal_form(SparseMatrix.from_dense(rows))


def test_known_small_forms():
    assert snf_dense([[0]]).rank == 0
    assert snf_dense([[7]]) == type(snf_dense([[7]]))(1, (7,))
    r = snf_dense([[2, 4], [4, 8]])
    assert (r.rank, r.divisors) == (1, (2,))
    r = snf_dense([[2, 0], [0, 3]])          # chain fix-up: diag (1, 6)
    assert (r.rank, r.divisors) == (2, (6,))
    r = snf_dense([[1, 0], [0, 1]])
    assert (r.rank, r.divisors) == (2, ())


def test_divisor_chain_property():
    rng = random.Random(11)
    for _ in range(100):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        m = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        res = snf_dense(m)
        for a, b in zip(res.divisors, res.divisors[1:]):
            assert b % a == 0
        assert res.rank <= min(nr, nc)


def test_rank_agrees_with_fraction_free_elimination():
    rng = random.Random(20240817)
    for _ in range(200):
        nr, nc = rng.randint(1, 12), rng.randint(1, 12)
        m = [[rng.randint(-10, 10) for _ in range(nc)] for _ in range(nr)]
        assert snf_dense(m).rank == rank_fraction_free(m)


def test_invariance_under_elementary_operations():
    rng = random.Random(5)
    base = [[2, 0, 0], [0, 6, 0], [0, 0, 0]]
    for _ in range(25):
        m = [row[:] for row in base]
        for _ in range(12):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-3, 3)
            if rng.random() < 0.5:
                for t in range(3):
                    m[i][t] += c * m[j][t]          # row op
            else:
                for t in range(3):
                    m[t][i] += c * m[t][j]          # column op
        res = snf_dense(m)
        assert (res.rank, res.divisors) == (2, (2, 6))


def simplicial_chain(maximal_faces):
    """Dims and boundaries of the complex generated by the given faces."""
    cells = set()
    for f in maximal_faces:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            cells.update(combinations(f, k))
    by_dim = {}
    for s in sorted(cells, key=lambda s: (len(s), s)):
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim)
    dims = [len(by_dim[d]) for d in range(top + 1)]
    boundaries = {}
    for d in range(1, top + 1):
        lower = {s: i for i, s in enumerate(by_dim[d - 1])}
        entries = {}
        for col, s in enumerate(by_dim[d]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                entries[(lower[face], col)] = (-1) ** i
        boundaries[d] = SparseMatrix(entries, dims[d - 1], dims[d])
    return dims, boundaries


def test_torsion_of_projective_plane():
    # 6-vertex triangulation; integral homology is Z, Z/2, 0
    faces = [
        (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
        (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5),
    ]
    dims, boundaries = simplicial_chain(faces)
    for d in range(2, len(dims)):
        assert sparse_matmul(boundaries[d - 1], boundaries[d]).is_zero()
    h = homology_of_complex(dims, boundaries)
    assert h[0] == (1, ())
    assert h[1] == (0, (2,))
    assert h[2] == (0, ())


def test_torus_homology():
    # 3x3 grid torus, each square split into two triangles: Z, Z^2, Z
    def vid(i, j):
        return 3 * (i % 3) + (j % 3)

    faces = []
    for i in range(3):
        for j in range(3):
            faces.append((vid(i, j), vid(i + 1, j), vid(i, j + 1)))
            faces.append((vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)))
    dims, boundaries = simplicial_chain(faces)
    assert dims == [9, 27, 18]
    h = homology_of_complex(dims, boundaries)
    assert h[0] == (1, ())
    assert h[1] == (2, ())
    assert h[2] == (1, ())


def test_sparse_matmul_shapes():
    a = SparseMatrix({(0, 1): 2}, 2, 3)
    b = SparseMatrix({(1, 0): 3}, 3, 1)
    prod = sparse_matmul(a, b)
    assert prod.entries == {(0, 0): 6}
    assert (prod.nrows, prod.ncols) == (2, 1)
