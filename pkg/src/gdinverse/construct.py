"""Builders for structured and random test matrices."""

from __future__ import annotations

import random
from functools import lru_cache

from .field import Field
from .matrix import Matrix, block_diag, inverse, rank
from .nilpotent import jordan_matrix


@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Integer partitions of ``n`` as ascending tuples."""
    largest = n if largest is None else largest
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append(tuple(sorted(rest + (first,))))
    return tuple(out)


def random_matrix(field: Field, nrows: int, ncols: int, rng: random.Random, bound: int = 3) -> Matrix:
    if field.is_finite:
        p = field.characteristic
        draw = lambda: rng.randrange(p)  # noqa: E731
    else:
        draw = lambda: rng.randint(-bound, bound)  # noqa: E731
    return Matrix(field, [[draw() for _ in range(ncols)] for _ in range(nrows)], ncols)


def random_invertible(field: Field, n: int, rng: random.Random) -> Matrix:
    """Random invertible matrix.

    Over GF(p) by rejection (uniform on GL_n).  Over Q as a product of unit
    lower and upper triangular integer matrices with a row permutation, so the
    inverse stays integral.
    """
    if field.is_finite:
        while True:
            M = random_matrix(field, n, n, rng)
            if rank(M) == n:
                return M
    L = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    LU = Matrix(field, L, n) @ Matrix(field, U, n)
    return Matrix._raw(field, tuple(LU.row(i) for i in perm), n)


def random_core(field: Field, m: int, rng: random.Random) -> Matrix:
    """Random invertible block with unrestricted determinant."""
    while True:
        M = random_matrix(field, m, m, rng)
        if rank(M) == m:
            return M


def jordan_type(field: Field, core: Matrix | None, partition, P: Matrix | None = None) -> Matrix:
    """``P @ block_diag(core, J) @ P^-1`` with ``J`` nilpotent of block sizes ``partition``."""
    parts = [core] if core is not None and core.nrows else []
    parts.append(jordan_matrix(field, sorted(partition)))
    M = block_diag(field, *parts)
    if P is None:
        return M
    return P @ M @ inverse(P)


def random_jordan_type(field: Field, n: int, rng: random.Random) -> Matrix:
    """Random ``n x n`` matrix with a prescribed random core size and nilpotent shape."""
    m = rng.randint(0, n)
    core = random_core(field, m, rng) if m else None
    shapes = partitions(n - m)
    partition = shapes[rng.randrange(len(shapes))]
    return jordan_type(field, core, partition, random_invertible(field, n, rng))
