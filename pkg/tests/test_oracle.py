import random

import numpy as np
import pytest

from gdinverse import GF, QQ, BudgetExceeded, CertificationFailure, InfiniteField, Matrix, jordan_matrix, rank, verify_gdrazin
from gdinverse import gdrazin as gdrazin_mod
from gdinverse.construct import random_matrix
from gdinverse.oracle import (
    certify_parameterization,
    default_corpus,
    enumerate_solutions,
    index_mod,
    rank_mod,
    select,
)


def test_rank_mod_matches_exact_rank():
    rng = random.Random(0)
    for q in (2, 3, 5):
        for _ in range(50):
            M = random_matrix(GF(q), rng.randint(1, 4), rng.randint(1, 4), rng)
            assert rank_mod(np.array(M.rows()), q) == rank(M)


def test_index_mod():
    assert index_mod(np.array(jordan_matrix(GF(2), [1, 3]).rows()), 2) == 3
    assert index_mod(np.eye(3, dtype=np.int64), 3) == 0


def test_enumeration_single_block():
    A = jordan_matrix(GF(2), [3])
    sols = enumerate_solutions(A, "gdrazin_2eq")
    assert len(sols) == 32
    assert all(verify_gdrazin(A, X).two_equation_ok for X in sols)
    assert sols == sorted(sols, key=lambda X: X.entries())


def test_one_inverse_count():
    A = Matrix(GF(3), [[1, 0], [0, 0]])
    assert len(enumerate_solutions(A, "one_inverse")) == 3**3


def test_certify_report_line():
    rep = certify_parameterization(jordan_matrix(GF(2), [3]), matrix_id="nil3")
    assert rep.certified
    assert rep.line() == "PASS nil3 q=2 n=3 index=3 gd=32 formula=32 gd3=32 one_inverse=32 drazin=1"


def test_budget_and_field_guards():
    with pytest.raises(BudgetExceeded):
        certify_parameterization(Matrix.zeros(GF(3), 4), budget=1 << 24)
    with pytest.raises(BudgetExceeded):
        enumerate_solutions(Matrix.zeros(GF(2), 3), "drazin", budget=100)
    with pytest.raises(InfiniteField):
        enumerate_solutions(Matrix.zeros(QQ, 1), "drazin")
    with pytest.raises(ValueError):
        enumerate_solutions(Matrix.zeros(GF(2), 1), "moore_penrose")


def test_broken_parameterization_is_caught(monkeypatch):
    real = gdrazin_mod.build_JU_minus

    def drop_lambda(shape, params):
        return real(shape, gdrazin_mod.GDrazinParams(shape, params.field, params.alpha, (0,) * shape.n_lambda))

    monkeypatch.setattr(gdrazin_mod, "build_JU_minus", drop_lambda)
    A = jordan_matrix(GF(2), [1, 2])
    with pytest.raises(CertificationFailure) as info:
        certify_parameterization(A, matrix_id="broken")
    w = info.value.witness
    assert w is not None and verify_gdrazin(A, w).two_equation_ok
    rep = certify_parameterization(A, strict=False)
    assert not rep.certified and rep.problems


def test_corpus_composition():
    corpus = default_corpus()
    ids = [e.id for e in corpus]
    assert len(ids) == len(set(ids))
    assert len(select(corpus, 2, 2)) == 16
    # 64 nilpotent 3x3 plus one representative per (core size, partition) pair
    assert len(select(corpus, 3, 2)) == 64 + 7
    assert len(select(corpus, 4, 2)) == 12
    assert len(select(corpus, 3, 3)) == 7
    assert default_corpus()[-1].matrix == corpus[-1].matrix
