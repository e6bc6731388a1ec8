import itertools
import random

import pytest

from gdinverse import GF, QQ, Matrix, core_nilpotent, drazin_inverse, index_profile, inverse
from gdinverse.construct import random_jordan_type
from gdinverse.drazin import drazin_equations


def test_reference_core_nilpotent(ref, data):
    cn = core_nilpotent(ref)
    assert cn.A1 == data("reference_core.txt")
    assert cn.A2 == data("reference_nilpotent.txt")
    assert cn.A1 + cn.A2 == ref


def test_reference_drazin(ref, data):
    P = data("reference_basis.txt")
    AD = drazin_inverse(ref)
    z = [0] * 5
    hand = P @ Matrix(QQ, [[1, -1] + z, [-1, 2] + z] + [[0] * 7] * 5) @ inverse(P)
    assert AD == hand
    assert all(drazin_equations(ref, AD, 3).values())


def test_invertible_and_nilpotent():
    A = Matrix(QQ, [[2, 1], [1, 1]])
    assert drazin_inverse(A) == inverse(A)
    N = Matrix(GF(3), [[0, 1], [0, 0]])
    assert drazin_inverse(N).is_zero()


@pytest.mark.parametrize("f", [QQ, GF(2), GF(3), GF(7)])
def test_random_properties(f):
    rng = random.Random(11)
    for _ in range(40):
        A = random_jordan_type(f, rng.randint(1, 5), rng)
        r = index_profile(A).r
        AD = drazin_inverse(A)
        assert all(drazin_equations(A, AD, r).values())
        cn = core_nilpotent(A)
        assert (cn.A1 @ cn.A2).is_zero() and (cn.A2 @ cn.A1).is_zero()
        assert (cn.A2 ** max(r, 1)).is_zero()
        assert index_profile(cn.A1).r <= 1


def all_square(q, n):
    f = GF(q)
    for vals in itertools.product(range(q), repeat=n * n):
        yield Matrix(f, [vals[i * n : (i + 1) * n] for i in range(n)], n)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 2), (2, 3)])
def test_unique_solution_by_enumeration(q, n):
    rng = random.Random(q * 10 + n)
    cands = list(all_square(q, n))
    mats = cands if len(cands) <= 16 else rng.sample(cands, 12)
    for A in mats:
        r = index_profile(A).r
        sols = [X for X in cands if all(drazin_equations(A, X, r).values())]
        assert sols == [drazin_inverse(A)]
