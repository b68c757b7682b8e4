import random

from osprep.exactfield import ONE, ZERO, FieldScalar, Rat
from osprep.linalg import SpanBasis, kernel_basis, rank, row_reduce, solve


def random_matrix(rng, rows, cols, field=False):
    def scalar():
        q = Rat(rng.randrange(-4, 5), rng.randrange(1, 4))
        if field:
            return FieldScalar(q, Rat(rng.randrange(-2, 3)))
        return q
    return [[scalar() for _ in range(cols)] for _ in range(rows)]


def matvec(mat, x, zero):
    out = []
    for row in mat:
        acc = zero
        for a, b in zip(row, x):
            acc = acc + a * b
        out.append(acc)
    return out


def test_kernel_vectors_annihilate():
    rng = random.Random(5)
    for trial in range(20):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
        field = trial % 2 == 0
        mat = random_matrix(rng, rows, cols, field)
        one, zero = (ONE, ZERO) if field else (Rat(1), Rat(0))
        kern = kernel_basis(mat, cols, one, zero)
        assert len(kern) == cols - rank(mat)
        for vec in kern:
            assert all(not v for v in matvec(mat, vec, zero))


def test_solve_consistency():
    rng = random.Random(9)
    for _ in range(20):
        rows, cols = rng.randrange(1, 5), rng.randrange(1, 5)
        mat = random_matrix(rng, rows, cols)
        x = [Rat(rng.randrange(-3, 4)) for _ in range(cols)]
        rhs = matvec(mat, x, Rat(0))
        sol = solve(mat, rhs)
        assert sol is not None
        assert matvec(mat, sol, Rat(0)) == rhs


def test_solve_detects_inconsistency():
    mat = [[Rat(1), Rat(0)], [Rat(1), Rat(0)]]
    assert solve(mat, [Rat(1), Rat(2)]) is None


def test_rank_transpose_invariant():
    rng = random.Random(13)
    for _ in range(10):
        mat = random_matrix(rng, rng.randrange(1, 5), rng.randrange(1, 5))
        t = [list(col) for col in zip(*mat)]
        assert rank(mat) == rank(t)


def test_span_basis_membership():
    rng = random.Random(3)
    for _ in range(10):
        dim = 6
        vecs = []
        for _ in range(4):
            vecs.append({k: Rat(rng.randrange(-3, 4)) for k in range(dim)
                         if rng.random() < 0.7})
        span = SpanBasis()
        for v in vecs:
            span.add(v)
        # random combinations stay inside
        comb = {}
        for v in vecs:
            c = Rat(rng.randrange(-2, 3))
            for k, val in v.items():
                comb[k] = comb.get(k, Rat(0)) + c * val
        assert span.contains(comb)
        # rank never exceeds the feeding count and matches a dense rank
        dense = [[v.get(k, Rat(0)) for k in range(dim)] for v in vecs]
        assert len(span) == rank(dense)
