import random

import pytest

from gdinverse import GF, QQ, Matrix, NotInvariant, NotNilpotent, jordan_chains, jordan_matrix, kernel_basis, shift_block
from gdinverse.construct import jordan_type, partitions, random_invertible


def test_shift_block():
    J = shift_block(QQ, 3)
    assert J == Matrix(QQ, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert (J**3).is_zero() and not (J**2).is_zero()


@pytest.mark.parametrize("f", [QQ, GF(2), GF(5)])
def test_chains_of_conjugated_jordan_matrix(f):
    rng = random.Random(7)
    for n in range(1, 6):
        for part in partitions(n):
            N = jordan_type(f, None, part, random_invertible(f, n, rng))
            ch = jordan_chains(N)
            assert ch.lengths == part
            B = ch.basis_matrix()
            # N maps each chain vector to the next and kills the tail
            assert N @ B == B @ jordan_matrix(f, part)
            assert ch.segre(n) == tuple(part.count(j) for j in range(1, n + 1))


def test_chains_on_subspace(ref):
    Ar = ref**3
    ch = jordan_chains(ref, kernel_basis(Ar))
    assert ch.lengths == (2, 3) and ch.dim == 5
    assert ch.offsets() == (0, 2)


def test_errors():
    A = Matrix(QQ, [[1, 0], [0, 0]])
    with pytest.raises(NotNilpotent):
        jordan_chains(A)
    with pytest.raises(NotInvariant):
        jordan_chains(Matrix(QQ, [[0, 1], [0, 0]]), [Matrix.column(QQ, [0, 1])])
