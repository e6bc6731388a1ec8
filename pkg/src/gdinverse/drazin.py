"""Drazin inverse and core-nilpotent decomposition."""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import Matrix, block_diag, inverse
from .spectral import ASTDecomposition, ast_decompose


def drazin_inverse(A: Matrix, ast: ASTDecomposition | None = None) -> Matrix:
    """Inverse of ``A`` on the range of ``A^r``, zero on the null space of ``A^r``."""
    ast = ast or ast_decompose(A)
    f = A.field
    k = ast.J_U.nrows
    inner = block_diag(f, inverse(ast.A_W), Matrix.zeros(f, k))
    return ast.from_basis(inner)


@dataclass(frozen=True)
class CoreNilpotent:
    core: Matrix  # A1 = A A^D A, index <= 1
    nilpotent: Matrix  # A2 = A - A1

    @property
    def A1(self) -> Matrix:
        return self.core

    @property
    def A2(self) -> Matrix:
        return self.nilpotent


def core_nilpotent(A: Matrix, ast: ASTDecomposition | None = None) -> CoreNilpotent:
    AD = drazin_inverse(A, ast)
    A1 = A @ AD @ A
    return CoreNilpotent(A1, A - A1)


def drazin_equations(A: Matrix, X: Matrix, k: int) -> dict[str, bool]:
    """The three defining identities of the Drazin inverse at index ``k``."""
    Ak = A**k
    return {
        "power": Ak @ A @ X == Ak,
        "outer": X @ A @ X == X,
        "commute": X @ A == A @ X,
    }
