"""
Tests for exact linear algebra over cyclotomic fields
"""

from tgwa.algebra import linalg


def _matrix(field, rows):
    return [[field(v) for v in row] for row in rows]


def test_rref_and_pivots(q):
    reduced, pivots = linalg.rref(_matrix(q, [[0, 2, 4], [0, 1, 3]]))
    assert pivots == [1, 2]
    assert reduced == _matrix(q, [[0, 1, 0], [0, 0, 1]])


def test_rank_and_nullspace(q):
    m = _matrix(q, [[1, 2, 3], [2, 4, 6]])
    assert linalg.rank(m) == 1
    basis = linalg.nullspace(m, q)
    assert len(basis) == 2
    for v in basis:
        product = linalg.matmul(m, [[c] for c in v], q)
        assert all(row[0].is_zero() for row in product)


def test_nullspace_of_an_empty_system_is_everything(q):
    assert linalg.nullspace([], q, 2) == linalg.identity(q, 2)


def test_solve(q):
    m = _matrix(q, [[1, 1], [1, -1]])
    assert linalg.solve(m, [q(3), q(1)], q) == [q(2), q(1)]
    assert linalg.solve(_matrix(q, [[1, 1], [2, 2]]), [q(1), q(3)], q) is None


def test_inverse_over_q12(q12):
    z = q12.zeta()
    m = [[z, q12(1)], [q12.zero, z]]
    inv = linalg.inverse(m, q12)
    assert inv == [[z.inverse(), -(z ** -2)], [q12.zero, z.inverse()]]
    assert linalg.matmul(m, inv, q12) == linalg.identity(q12, 2)


def test_singular_matrix_has_no_inverse(q12):
    z = q12.zeta()
    assert linalg.inverse([[z, z * z], [q12(1), z]], q12) is None


def test_express_in_span(q12):
    z = q12.zeta()
    vectors = [{(0,): q12(1)}, {(1,): z}]
    target = {(0,): q12(3), (1,): z ** 3}
    assert linalg.express_in_span(vectors, target, q12) == [q12(3), z ** 2]
    assert linalg.express_in_span(vectors, {(2,): q12(1)}, q12) is None
