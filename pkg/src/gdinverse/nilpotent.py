"""Jordan chain bases for nilpotent maps restricted to an invariant subspace."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotInvariant, NotNilpotent, ShapeMismatch
from .field import Field
from .matrix import EchelonSpan, Matrix, block_diag, hstack, kernel_basis, solve


def shift_block(field: Field, j: int) -> Matrix:
    """j x j nilpotent Jordan block with ones on the subdiagonal."""
    z, o = field.zero, field.one
    return Matrix._raw(field, tuple(tuple(o if r == c + 1 else z for c in range(j)) for r in range(j)), j)


def jordan_matrix(field: Field, lengths: Sequence[int]) -> Matrix:
    """Block diagonal of subdiagonal shift blocks, in the given order."""
    return block_diag(field, *(shift_block(field, j) for j in lengths))


@dataclass(frozen=True)
class JordanChains:
    """Chains ``(v, Nv, ..., N^(j-1) v)`` ordered by ascending length ``j``."""

    field: Field
    ambient_dim: int
    generators: tuple[Matrix, ...]
    lengths: tuple[int, ...]
    vectors: tuple[Matrix, ...]  # all chain vectors, chain by chain, head first

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def count(self) -> int:
        return len(self.lengths)

    def basis_matrix(self) -> Matrix:
        if not self.vectors:
            return Matrix.zeros(self.field, self.ambient_dim, 0)
        return hstack(self.vectors)

    def offsets(self) -> tuple[int, ...]:
        """Position of each chain head within :attr:`vectors`."""
        out, pos = [], 0
        for j in self.lengths:
            out.append(pos)
            pos += j
        return tuple(out)

    def segre(self, order: int | None = None) -> tuple[int, ...]:
        """Number of chains of each length 1..order."""
        order = max(self.lengths, default=0) if order is None else order
        return tuple(self.lengths.count(j) for j in range(1, order + 1))


def jordan_chains(N: Matrix, subspace: Sequence[Matrix] | None = None) -> JordanChains:
    """Jordan chains of ``N`` on the span of ``subspace`` (default: everything).

    Kernel filtration: with ``K_i = ker N^i`` inside the subspace, walk from
    the top layer down; at layer ``i`` keep the images of longer chains and
    extend them greedily with RREF kernel vectors of ``K_i`` independent
    modulo ``K_{i-1}``.
    """
    f = N.field
    n = N.nrows
    if not N.is_square:
        raise ShapeMismatch("jordan_chains needs a square matrix")
    if subspace is None:
        subspace = Matrix.identity(f, n).columns()
    subspace = list(subspace)
    d = len(subspace)
    if d == 0:
        return JordanChains(f, n, (), (), ())
    B = hstack(subspace)
    try:
        M = solve(B, N @ B)
    except ShapeMismatch:
        raise NotInvariant("subspace is not invariant under N") from None

    powers = [Matrix.identity(f, d)]
    while not powers[-1].is_zero():
        if len(powers) > d:
            raise NotNilpotent(f"no power <= {d} annihilates the subspace")
        powers.append(powers[-1] @ M)
    order = len(powers) - 1
    kernels = [kernel_basis(Pw) for Pw in powers]  # kernels[i] = ker M^i

    by_length: dict[int, list[Matrix]] = {}
    carried: list[Matrix] = []  # layer-i images of longer chains
    for i in range(order, 0, -1):
        span = EchelonSpan(f, d)
        for v in kernels[i - 1]:
            span.add(v)
        for v in carried:
            span.add(v)
        fresh = [w for w in kernels[i] if span.add(w)]
        by_length[i] = fresh
        carried = [M @ v for v in carried + fresh]

    generators, lengths, vectors = [], [], []
    for j in range(1, order + 1):
        for c in by_length.get(j, []):
            v = B @ c
            generators.append(v)
            lengths.append(j)
            for _ in range(j):
                vectors.append(v)
                v = N @ v
    return JordanChains(f, n, tuple(generators), tuple(lengths), tuple(vectors))
