"""
Exact linear algebra over a CycloField

Matrices are lists of rows of Scalars; the elimination itself runs on
sympy DomainMatrix over the field's domain.
"""

from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from tgwa.algebra.scalars import CycloField, Scalar

Matrix = List[List[Scalar]]


def zeros(field: CycloField, rows: int, cols: int) -> Matrix:
    return [[field.zero] * cols for _ in range(rows)]


def identity(field: CycloField, n: int) -> Matrix:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def to_domain_matrix(matrix: Sequence[Sequence[Scalar]], field: CycloField, cols: int = None) -> DomainMatrix:
    rows = [[field.to_domain(v) for v in row] for row in matrix]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), cols), field.domain)


def from_domain_matrix(dm: DomainMatrix, field: CycloField) -> Matrix:
    return [[field.from_domain(v) for v in row] for row in dm.to_list()]


def _field_of(matrix: Sequence[Sequence[Scalar]]) -> CycloField:
    return matrix[0][0].field


def matmul(a: Matrix, b: Matrix, field: CycloField) -> Matrix:
    product = to_domain_matrix(a, field, len(b)).matmul(to_domain_matrix(b, field, len(b[0]) if b else 0))
    return from_domain_matrix(product, field)


def rref(matrix: Sequence[Sequence[Scalar]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns"""
    field = _field_of(matrix)
    reduced, pivots = to_domain_matrix(matrix, field).rref()
    return from_domain_matrix(reduced, field), list(pivots)


def rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    return to_domain_matrix(matrix, _field_of(matrix)).rank()


def nullspace(matrix: Sequence[Sequence[Scalar]], field: CycloField, cols: int = None) -> List[List[Scalar]]:
    """Basis of {x : matrix x = 0}"""
    if cols is None:
        cols = len(matrix[0]) if matrix else 0
    if not matrix:
        return identity(field, cols)
    reduced, pivots = to_domain_matrix(matrix, field, cols).rref()
    return from_domain_matrix(reduced.nullspace_from_rref(pivots), field)


def solve(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], field: CycloField) -> Optional[List[Scalar]]:
    """One solution of matrix x = rhs (free variables zero), or None"""
    cols = len(matrix[0]) if matrix else 0
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = to_domain_matrix(augmented, field, cols + 1).rref()
    if cols in pivots:
        return None
    rows = reduced.to_list()
    x = [field.zero] * cols
    for row, p in zip(rows, pivots):
        x[p] = field.from_domain(row[cols])
    return x


def inverse(matrix: Sequence[Sequence[Scalar]], field: CycloField) -> Optional[Matrix]:
    try:
        return from_domain_matrix(to_domain_matrix(matrix, field).inv(), field)
    except DMNonInvertibleMatrixError:
        return None


def coordinates(vectors: Sequence[Mapping[Hashable, Scalar]], field: CycloField,
                extra: Sequence[Mapping[Hashable, Scalar]] = ()) -> Tuple[List[Hashable], Matrix]:
    """Matrix whose columns are the given sparse vectors, over their joint support"""
    keys = sorted({k for v in list(vectors) + list(extra) for k in v})
    matrix = [[v.get(k, field.zero) for v in vectors] for k in keys]
    return keys, matrix


def express_in_span(vectors: Sequence[Mapping[Hashable, Scalar]], target: Mapping[Hashable, Scalar],
                    field: CycloField) -> Optional[List[Scalar]]:
    """Coefficients c with sum c_i v_i = target, or None when target is outside the span"""
    if not vectors:
        return [] if all(c.is_zero() for c in target.values()) else None
    keys, matrix = coordinates(vectors, field, [target])
    if not keys:
        return [field.zero] * len(vectors)
    rhs = [target.get(k, field.zero) for k in keys]
    return solve(matrix, rhs, field)


def sparse(values: Dict[Hashable, Scalar]) -> Dict[Hashable, Scalar]:
    return {k: v for k, v in values.items() if not v.is_zero()}
