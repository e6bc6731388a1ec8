"""Parameterization of all G-Drazin inverses of a square matrix.

A G-Drazin inverse of ``A`` (index ``r``) is any ``X`` with ``A X A = A`` and
``X A^r = A^r X``.  In the basis of :func:`~gdinverse.spectral.ast_decompose`
every such ``X`` is ``block_diag(A_W^-1, G)`` where ``G`` is a generalized
inverse of the nilpotent Jordan matrix ``J_U``.  Writing ``G`` chain by chain:

* the column of each chain head is free (the *alpha* slots, one per entry of
  that column, ``nu_1 * nu_r`` in total);
* the column of a non-head chain vector ``N^i v`` carries a fixed 1 at
  ``N^(i-1) v`` plus free entries in the chain-tail rows (the *lambda* slots,
  ``nu_1 * (nu_r - nu_1)`` in total).

Every other entry of ``G`` is zero, so the slot values can be read back from
``P^-1 X P``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import FieldMismatch, NotGDrazin, ParseError, ShapeMismatch, StructureViolation
from .field import Field, is_prime
from .matrix import Matrix, block_diag, inverse
from .spectral import ASTDecomposition, IndexProfile, ast_decompose, index_profile
from .textio import content_lines, parse_scalar, tokens

RATIONAL_SAMPLE_RANGE = (-9, 9)


@dataclass(frozen=True)
class GDrazinShape:
    """Slot layout for chains of the given (ascending) lengths.

    Blocks are indexed by ordered chain pairs ``(l, m)`` (0-based).  Block
    ``(l, m)`` owns the alpha slots of the head column of chain ``m`` in the
    rows of chain ``l`` and the lambda slots of the tail row of chain ``l`` in
    the non-head columns of chain ``m``.
    """

    lengths: tuple[int, ...]

    def __post_init__(self):
        if any(j < 1 for j in self.lengths) or list(self.lengths) != sorted(self.lengths):
            raise ValueError(f"chain lengths must be positive and ascending: {self.lengths}")

    @property
    def nu1(self) -> int:
        return len(self.lengths)

    @property
    def size(self) -> int:
        return sum(self.lengths)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, pos = [], 0
        for j in self.lengths:
            out.append(pos)
            pos += j
        return tuple(out)

    @cached_property
    def block_pairs(self) -> tuple[tuple[int, int], ...]:
        k = self.nu1
        diag = [(l, l) for l in range(k)]
        off = [(l, m) for l in range(k) for m in range(k) if l != m]
        return tuple(diag + off)

    def block_alpha_slots(self, l: int, m: int) -> list[tuple[int, int]]:
        ol, om = self.offsets[l], self.offsets[m]
        return [(ol + t, om) for t in range(self.lengths[l])]

    def block_lambda_slots(self, l: int, m: int) -> list[tuple[int, int]]:
        tail = self.offsets[l] + self.lengths[l] - 1
        om = self.offsets[m]
        return [(tail, om + t) for t in range(1, self.lengths[m])]

    @cached_property
    def alpha_slots(self) -> tuple[tuple[int, int], ...]:
        return tuple(s for l, m in self.block_pairs for s in self.block_alpha_slots(l, m))

    @cached_property
    def lambda_slots(self) -> tuple[tuple[int, int], ...]:
        return tuple(s for l, m in self.block_pairs for s in self.block_lambda_slots(l, m))

    @property
    def n_alpha(self) -> int:
        return len(self.alpha_slots)

    @property
    def n_lambda(self) -> int:
        return len(self.lambda_slots)

    @property
    def n_lambda_diagonal(self) -> int:
        return sum(len(self.block_lambda_slots(l, l)) for l in range(self.nu1))

    @property
    def n_params(self) -> int:
        return self.n_alpha + self.n_lambda

    @cached_property
    def unit_positions(self) -> tuple[tuple[int, int], ...]:
        """Entries fixed to 1: row of ``N^(i-1) v``, column of ``N^i v``."""
        return tuple((o + t - 1, o + t) for o, j in zip(self.offsets, self.lengths) for t in range(1, j))

    def block_sizes(self) -> list[tuple[int, int]]:
        """(#alpha, #lambda) per block, in ``block_pairs`` order."""
        return [(self.lengths[l], self.lengths[m] - 1) for l, m in self.block_pairs]


@dataclass(frozen=True)
class GDrazinParams:
    """Slot values (raw field elements) aligned with ``shape.alpha_slots`` and
    ``shape.lambda_slots``."""

    shape: GDrazinShape
    field: Field
    alpha: tuple
    lam: tuple

    def __post_init__(self):
        if len(self.alpha) != self.shape.n_alpha or len(self.lam) != self.shape.n_lambda:
            raise ShapeMismatch(
                f"expected {self.shape.n_alpha} alpha and {self.shape.n_lambda} lambda values, "
                f"got {len(self.alpha)} and {len(self.lam)}"
            )

    @classmethod
    def from_values(cls, shape: GDrazinShape, field: Field, values) -> GDrazinParams:
        """Build from a flat sequence in block order (alphas, then lambdas, per block)."""
        values = [field.convert(v) for v in values]
        if len(values) != shape.n_params:
            raise ShapeMismatch(f"expected {shape.n_params} values, got {len(values)}")
        alpha, lam, pos = [], [], 0
        for na, nl in shape.block_sizes():
            alpha.extend(values[pos : pos + na])
            pos += na
            lam.extend(values[pos : pos + nl])
            pos += nl
        return cls(shape, field, tuple(alpha), tuple(lam))

    @classmethod
    def zeros(cls, shape: GDrazinShape, field: Field) -> GDrazinParams:
        z = field.zero
        return cls(shape, field, (z,) * shape.n_alpha, (z,) * shape.n_lambda)

    def blocks(self) -> list[tuple[tuple[int, int], tuple, tuple]]:
        out, ia, il = [], 0, 0
        for (l, m), (na, nl) in zip(self.shape.block_pairs, self.shape.block_sizes()):
            out.append(((l, m), self.alpha[ia : ia + na], self.lam[il : il + nl]))
            ia += na
            il += nl
        return out

    def values(self) -> tuple:
        return tuple(v for _, a, lam in self.blocks() for v in a + lam)


def build_JU_minus(shape: GDrazinShape, params: GDrazinParams) -> Matrix:
    """The generalized inverse of the Jordan matrix selected by ``params``."""
    if params.shape != shape:
        raise ShapeMismatch(f"params for {params.shape.lengths}, shape {shape.lengths}")
    f = params.field
    k = shape.size
    G = [[f.zero] * k for _ in range(k)]
    for i, j in shape.unit_positions:
        G[i][j] = f.one
    for (i, j), v in zip(shape.alpha_slots, params.alpha):
        G[i][j] = v
    for (i, j), v in zip(shape.lambda_slots, params.lam):
        G[i][j] = v
    return Matrix._raw(f, tuple(map(tuple, G)), k)


@dataclass(frozen=True)
class GDrazinReport:
    r: int
    axa: bool  # A X A = A
    commute_r: bool  # X A^r = A^r X
    left_r1: bool  # X A^(r+1) = A^r
    right_r1: bool  # A^(r+1) X = A^r

    @property
    def two_equation_ok(self) -> bool:
        return self.axa and self.commute_r

    @property
    def three_equation_ok(self) -> bool:
        return self.axa and self.left_r1 and self.right_r1

    wl_system_ok = three_equation_ok

    @property
    def all_ok(self) -> bool:
        return self.axa and self.commute_r and self.left_r1 and self.right_r1

    def lines(self) -> list[str]:
        b = lambda x: "true" if x else "false"  # noqa: E731
        return [
            f"index {self.r}",
            f"AXA=A {b(self.axa)}",
            f"XA^r=A^rX {b(self.commute_r)}",
            f"XA^(r+1)=A^r {b(self.left_r1)}",
            f"A^(r+1)X=A^r {b(self.right_r1)}",
            f"two_equation_system {b(self.two_equation_ok)}",
            f"three_equation_system {b(self.three_equation_ok)}",
        ]


def verify_gdrazin(A: Matrix, X: Matrix, profile: IndexProfile | None = None) -> GDrazinReport:
    if not A.is_square or X.shape != A.shape:
        raise ShapeMismatch(f"A is {A.shape}, X is {X.shape}")
    if X.field is not A.field:
        raise FieldMismatch(f"{A.field} vs {X.field}")
    r = (profile or index_profile(A)).r
    Ar = A**r
    Ar1 = Ar @ A
    return GDrazinReport(
        r=r,
        axa=A @ X @ A == A,
        commute_r=X @ Ar == Ar @ X,
        left_r1=X @ Ar1 == Ar,
        right_r1=Ar1 @ X == Ar,
    )


class GDrazinFamily:
    """All G-Drazin inverses of one matrix, with the decomposition cached."""

    def __init__(self, A: Matrix, ast: ASTDecomposition | None = None):
        self.A = A
        self.ast = ast or ast_decompose(A)
        self.shape = GDrazinShape(self.ast.lengths)
        self.A_W_inv = inverse(self.ast.A_W)

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def profile(self) -> IndexProfile:
        return self.ast.profile

    def _check(self, params: GDrazinParams):
        if params.field is not self.field:
            raise FieldMismatch(f"params over {params.field}, matrix over {self.field}")
        if params.shape != self.shape:
            raise ShapeMismatch(f"params for chains {params.shape.lengths}, matrix has {self.shape.lengths}")

    def build(self, params: GDrazinParams) -> Matrix:
        self._check(params)
        G = build_JU_minus(self.shape, params)
        return self.ast.from_basis(block_diag(self.field, self.A_W_inv, G))

    def extract(self, X: Matrix, verify: bool = True) -> GDrazinParams:
        if verify:
            report = verify_gdrazin(self.A, X, self.profile)
            if not report.two_equation_ok:
                raise NotGDrazin("X is not a G-Drazin inverse: " + ", ".join(report.lines()[1:3]))
        Y = self.ast.to_basis(X)
        m = self.ast.m
        n = self.A.nrows
        W, U = range(m), range(m, n)
        if not (Y.submatrix(W, U).is_zero() and Y.submatrix(U, W).is_zero()):
            raise StructureViolation("X couples the core and nilpotent subspaces")
        if Y.submatrix(W, W) != self.A_W_inv:
            raise StructureViolation("X does not invert A on the core subspace")
        G = Y.submatrix(U, U)
        shape = self.shape
        free = set(shape.alpha_slots) | set(shape.lambda_slots)
        units = set(shape.unit_positions)
        f = self.field
        for i in range(shape.size):
            for j in range(shape.size):
                if (i, j) in free:
                    continue
                if G[i, j] != (f.one if (i, j) in units else f.zero):
                    raise StructureViolation(f"entry ({i}, {j}) of the nilpotent block is not a free slot")
        alpha = tuple(G[i, j] for i, j in shape.alpha_slots)
        lam = tuple(G[i, j] for i, j in shape.lambda_slots)
        return GDrazinParams(shape, f, alpha, lam)

    def random_params(self, rng: random.Random) -> GDrazinParams:
        f = self.field
        if f.is_finite:
            draw = lambda: rng.randrange(f.characteristic)  # noqa: E731
        else:
            lo, hi = RATIONAL_SAMPLE_RANGE
            draw = lambda: rng.randint(lo, hi)  # noqa: E731
        return GDrazinParams.from_values(self.shape, f, [draw() for _ in range(self.shape.n_params)])

    def sample(self, seed: int) -> tuple[GDrazinParams, Matrix]:
        params = self.random_params(random.Random(seed))
        return params, self.build(params)

    def exponent(self) -> int:
        return gdrazin_exponent(self.profile)


def gdrazin_exponent(profile: IndexProfile) -> int:
    """Number of free parameters: nu1*nur + (nur - nu1) + (nu1 - 1)(nur - nu1)."""
    if profile.r == 0:
        return 0
    a, b = profile.nu1, profile.nur
    return a * b + (b - a) + (a - 1) * (b - a)


def param_shape(A: Matrix) -> GDrazinShape:
    return GDrazinFamily(A).shape


def gdrazin_from_params(A: Matrix, params: GDrazinParams, ast: ASTDecomposition | None = None) -> Matrix:
    return GDrazinFamily(A, ast).build(params)


def params_from_gdrazin(A: Matrix, X: Matrix, ast: ASTDecomposition | None = None) -> GDrazinParams:
    return GDrazinFamily(A, ast).extract(X)


def sample_gdrazin(A: Matrix, seed: int, ast: ASTDecomposition | None = None) -> tuple[GDrazinParams, Matrix]:
    """Seeded random member of the family.

    Slot values are uniform over GF(p) and uniform integers in
    ``RATIONAL_SAMPLE_RANGE`` over Q, drawn in block order.
    """
    return GDrazinFamily(A, ast).sample(seed)


def count_gdrazin(A: Matrix, q: int) -> int:
    """Size of the family when the ground field has ``q`` elements."""
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    return q ** gdrazin_exponent(index_profile(A))


# ---------------------------------------------------------------------------
# Parameter files
# ---------------------------------------------------------------------------


def format_params(params: GDrazinParams) -> str:
    fmt = params.field.format
    lines = ["shape" + "".join(f" {j}" for j in params.shape.lengths)]
    for (l, m), a, lam in params.blocks():
        line = f"block {l + 1} {m + 1} : " + " ".join(fmt(v) for v in a) + " |"
        if lam:
            line += " " + " ".join(fmt(v) for v in lam)
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_params(text: str, field: Field, shape: GDrazinShape | None = None) -> GDrazinParams:
    """Read a parameter file; block lines must follow the canonical order."""
    lines = list(content_lines(text))
    if not lines:
        raise ParseError("empty parameter file", 1, 1)
    lineno, raw = lines[0]
    toks = list(tokens(raw))
    if toks[0][1] != "shape":
        raise ParseError("expected 'shape <j_1> ... <j_k>'", lineno, toks[0][0])
    try:
        lengths = tuple(int(t) for _, t in toks[1:])
        file_shape = GDrazinShape(lengths)
    except ValueError as exc:
        raise ParseError(f"bad shape line: {exc}", lineno, toks[0][0]) from None
    if shape is not None and shape != file_shape:
        raise ShapeMismatch(f"file shape {file_shape.lengths} does not match {shape.lengths}")
    pairs = file_shape.block_pairs
    sizes = file_shape.block_sizes()
    if len(lines) - 1 != len(pairs):
        where = lines[len(pairs) + 1][0] if len(lines) - 1 > len(pairs) else lines[-1][0] + 1
        raise ParseError(f"expected {len(pairs)} block lines, found {len(lines) - 1}", where, 1)
    values = []
    for (lineno, raw), (l, m), (na, nl) in zip(lines[1:], pairs, sizes):
        toks = list(tokens(raw))
        head = [t for _, t in toks[:4]]
        if len(toks) < 4 or head[0] != "block" or head[3] != ":":
            raise ParseError("expected 'block <l> <m> : <alpha> | <lambda>'", lineno, toks[0][0])
        if head[1:3] != [str(l + 1), str(m + 1)]:
            raise ParseError(f"expected block {l + 1} {m + 1}", lineno, toks[1][0] if len(toks) > 1 else 1)
        rest = toks[4:]
        bars = [i for i, (_, t) in enumerate(rest) if t == "|"]
        if len(bars) != 1:
            raise ParseError("expected exactly one '|' separator", lineno, toks[3][0])
        a_toks, l_toks = rest[: bars[0]], rest[bars[0] + 1 :]
        if len(a_toks) != na:
            raise ParseError(f"expected {na} alpha entries, found {len(a_toks)}", lineno, toks[3][0])
        if len(l_toks) != nl:
            raise ParseError(f"expected {nl} lambda entries, found {len(l_toks)}", lineno, rest[bars[0]][0])
        values.extend(parse_scalar(field, t, lineno, c) for c, t in a_toks + l_toks)
    return GDrazinParams.from_values(file_shape, field, values)


__all__ = [
    "GDrazinFamily",
    "GDrazinParams",
    "GDrazinReport",
    "GDrazinShape",
    "build_JU_minus",
    "count_gdrazin",
    "format_params",
    "gdrazin_exponent",
    "gdrazin_from_params",
    "param_shape",
    "params_from_gdrazin",
    "parse_params",
    "sample_gdrazin",
    "verify_gdrazin",
]
