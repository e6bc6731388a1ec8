"""Index, nullity/Segre sequences and the core/nilpotent splitting of a matrix."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeMismatch
from .matrix import Matrix, block_diag, hstack, image_basis, inverse, kernel_basis, rank, solve
from .nilpotent import JordanChains, jordan_chains, jordan_matrix


@dataclass(frozen=True)
class IndexProfile:
    n: int
    r: int
    ranks: tuple[int, ...]  # rank(A^1), ..., rank(A^r)
    nullities: tuple[int, ...]  # nu_1, ..., nu_r
    segre: tuple[int, ...]  # delta_1, ..., delta_r

    @property
    def nu1(self) -> int:
        return self.nullities[0] if self.r else 0

    @property
    def nur(self) -> int:
        return self.nullities[-1] if self.r else 0

    @property
    def core_dim(self) -> int:
        return self.n - self.nur


def segre_from_nullities(nullities) -> tuple[int, ...]:
    """Solve the triangular system for the block counts delta_1..delta_r.

    Row ``k`` (k = 1..r) reads
    ``sum_{j > r-k} (j - r + k) * delta_j = nu_r - nu_{r-k}`` with
    ``nu_0 = 0``; it is solved from ``delta_r`` downward.
    """
    r = len(nullities)
    nu = (0,) + tuple(nullities)
    delta = [0] * (r + 1)
    for k in range(1, r + 1):
        j0 = r - k + 1
        acc = nu[r] - nu[r - k]
        for j in range(j0 + 1, r + 1):
            acc -= (j - r + k) * delta[j]
        if acc < 0:
            raise ValueError(f"nullity sequence {nullities} gives negative block count")
        delta[j0] = acc
    return tuple(delta[1:])


def index_profile(A: Matrix) -> IndexProfile:
    if not A.is_square:
        raise ShapeMismatch("index_profile needs a square matrix")
    n = A.nrows
    ranks = [n]
    power = Matrix.identity(A.field, n)
    while True:
        power = power @ A
        ranks.append(rank(power))
        if ranks[-1] == ranks[-2]:
            break
    r = len(ranks) - 2
    rk = tuple(ranks[1 : r + 1])
    nullities = tuple(n - x for x in rk)
    return IndexProfile(n, r, rk, nullities, segre_from_nullities(nullities))


@dataclass(frozen=True)
class ASTDecomposition:
    """``A == P @ block_diag(A_W, J_U) @ P_inv``.

    The first ``m`` columns of ``P`` span the range of ``A^r`` (the core
    part), the remaining ones are Jordan chains spanning the null space of
    ``A^r``; ``chain_info`` lists ``(length, column of chain head in P)``.
    """

    A: Matrix
    profile: IndexProfile
    P: Matrix
    P_inv: Matrix
    A_W: Matrix
    J_U: Matrix
    chains: JordanChains
    chain_info: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return self.A_W.nrows

    @property
    def r(self) -> int:
        return self.profile.r

    @property
    def lengths(self) -> tuple[int, ...]:
        return self.chains.lengths

    def block_form(self) -> Matrix:
        return block_diag(self.A.field, self.A_W, self.J_U)

    def to_basis(self, X: Matrix) -> Matrix:
        """``P_inv @ X @ P``: ``X`` written in the decomposition basis."""
        return self.P_inv @ X @ self.P

    def from_basis(self, Y: Matrix) -> Matrix:
        return self.P @ Y @ self.P_inv


def ast_decompose(A: Matrix, profile: IndexProfile | None = None) -> ASTDecomposition:
    """Split ``A`` into an invertible part on R(A^r) and a nilpotent part on N(A^r).

    Only ranges and null spaces of ``A^r`` are used; no characteristic
    polynomial is formed.
    """
    if not A.is_square:
        raise ShapeMismatch("ast_decompose needs a square matrix")
    f = A.field
    n = A.nrows
    profile = profile or index_profile(A)
    Ar = A ** profile.r
    W = image_basis(Ar)
    chains = jordan_chains(A, kernel_basis(Ar))
    cols = W + list(chains.vectors)
    P = hstack(cols) if cols else Matrix.zeros(f, 0)
    P_inv = inverse(P)
    m = len(W)
    if m:
        WB = hstack(W)
        A_W = solve(WB, A @ WB)
    else:
        A_W = Matrix.zeros(f, 0)
    J_U = jordan_matrix(f, chains.lengths)
    info = tuple((j, m + off) for j, off in zip(chains.lengths, chains.offsets()))
    assert P.nrows == n
    return ASTDecomposition(A, profile, P, P_inv, A_W, J_U, chains, info)
