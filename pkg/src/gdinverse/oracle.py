"""Exhaustive ground truth over small prime fields.

Every ``n x n`` matrix over GF(q) is scanned and tested against the defining
equations.  The scan uses plain integer arithmetic mod ``q`` in numpy and
its own rank routine; it shares nothing with the exact-matrix code it checks
beyond the input entries.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .construct import jordan_type, partitions, random_core, random_invertible
from .drazin import drazin_inverse
from .errors import BudgetExceeded, CertificationFailure, InfiniteField
from .field import GF
from .gdrazin import GDrazinFamily, GDrazinParams, gdrazin_exponent
from .matrix import Matrix

SYSTEMS = ("one_inverse", "gdrazin_2eq", "gdrazin_3eq", "drazin")
DEFAULT_BUDGET = 1 << 24
CORPUS_SEED = 20190417


def _to_array(A: Matrix) -> tuple[np.ndarray, int]:
    if not A.field.is_finite:
        raise InfiniteField("enumeration needs a finite field")
    return np.array(A.rows(), dtype=np.int64).reshape(A.shape), A.field.characteristic


def rank_mod(M: np.ndarray, q: int) -> int:
    M = [[int(x) % q for x in row] for row in M]
    rows, cols = len(M), len(M[0]) if M else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, q)
        M[r] = [x * inv % q for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                g = M[i][c]
                M[i] = [(x - g * y) % q for x, y in zip(M[i], M[r])]
        r += 1
    return r


def index_mod(A: np.ndarray, q: int) -> int:
    n = A.shape[0]
    power = np.eye(n, dtype=np.int64)
    prev = n
    k = 0
    while True:
        power = power @ A % q
        cur = rank_mod(power, q)
        if cur == prev:
            return k
        prev = cur
        k += 1


def _digits(count: int, width: int, q: int) -> np.ndarray:
    """Rows 0..count-1 written in base q, most significant digit first."""
    idx = np.arange(count, dtype=np.int64)
    out = np.empty((count, width), dtype=np.int64)
    for pos in range(width - 1, -1, -1):
        out[:, pos] = idx % q
        idx //= q
    return out


def _partitions(n: int, q: int) -> Iterator[np.ndarray]:
    """Candidate matrices in odometer order, one batch per first row."""
    tail_width = n * (n - 1)
    count = q**tail_width
    tail = _digits(count, tail_width, q).reshape(count, n - 1, n)
    heads = _digits(q**n, n, q)
    for head in heads:
        X = np.empty((tail.shape[0], n, n), dtype=np.int64)
        X[:, 0, :] = head
        X[:, 1:, :] = tail
        yield X


def _masks(A: np.ndarray, q: int, r: int, X: np.ndarray, systems: Sequence[str]) -> dict[str, np.ndarray]:
    n = A.shape[0]
    Ar = np.eye(n, dtype=np.int64)
    for _ in range(r):
        Ar = Ar @ A % q
    Ar1 = Ar @ A % q

    def eq(L, R):
        return np.all(L % q == R % q, axis=(1, 2))

    out = {}
    AX = np.matmul(A, X) % q
    axa = eq(np.matmul(AX, A), A)
    if "one_inverse" in systems:
        out["one_inverse"] = axa
    if "gdrazin_2eq" in systems:
        out["gdrazin_2eq"] = axa & eq(np.matmul(X, Ar), np.matmul(Ar, X))
    if "gdrazin_3eq" in systems:
        out["gdrazin_3eq"] = axa & eq(np.matmul(X, Ar1), Ar) & eq(np.matmul(Ar1, X), Ar)
    if "drazin" in systems:
        XA = np.matmul(X, A) % q
        out["drazin"] = eq(np.matmul(Ar1, X), Ar) & eq(np.matmul(XA, X), X) & eq(XA, AX)
    return out


def check_budget(n: int, q: int, budget: int) -> None:
    if q ** (n * n) > budget:
        raise BudgetExceeded(f"{q}^{n * n} candidates exceed the budget {budget}")


def solution_arrays(A: Matrix, systems: Sequence[str] = SYSTEMS, budget: int = DEFAULT_BUDGET) -> dict[str, np.ndarray]:
    """Solutions of each requested system as ``(count, n, n)`` integer arrays."""
    unknown = set(systems) - set(SYSTEMS)
    if unknown:
        raise ValueError(f"unknown systems {sorted(unknown)}")
    Aa, q = _to_array(A)
    n = A.nrows
    check_budget(n, q, budget)
    r = index_mod(Aa, q)
    found: dict[str, list[np.ndarray]] = {s: [] for s in systems}
    for X in _partitions(n, q):
        for s, mask in _masks(Aa, q, r, X, systems).items():
            if mask.any():
                found[s].append(X[mask])
    return {s: (np.concatenate(v) if v else np.empty((0, n, n), dtype=np.int64)) for s, v in found.items()}


def enumerate_solutions(A: Matrix, system: str, budget: int = DEFAULT_BUDGET) -> list[Matrix]:
    """Every solution of ``system`` over GF(q), in odometer order."""
    arr = solution_arrays(A, (system,), budget)[system]
    return [Matrix(A.field, X.tolist(), A.ncols) for X in arr]


def _keyset(arr: np.ndarray) -> set[tuple[int, ...]]:
    return {tuple(int(x) for x in X.ravel()) for X in arr}


@dataclass
class OracleReport:
    matrix_id: str
    q: int
    n: int
    index: int
    count_one_inverse: int
    count_gdrazin_2eq: int
    count_gdrazin_3eq: int
    count_drazin: int
    count_formula: int
    parameterization_size: int
    matches_parameterization: bool
    matches_count_formula: bool
    systems_agree: bool
    drazin_unique: bool
    one_inverse_count_ok: bool
    drazin_is_gdrazin: bool
    problems: list[str] = dc_field(default_factory=list)

    @property
    def certified(self) -> bool:
        return (
            self.matches_parameterization
            and self.matches_count_formula
            and self.systems_agree
            and self.drazin_unique
            and self.one_inverse_count_ok
            and self.drazin_is_gdrazin == (self.index <= 1)
        )

    def line(self) -> str:
        status = "PASS" if self.certified else "FAIL"
        return (
            f"{status} {self.matrix_id} q={self.q} n={self.n} index={self.index} "
            f"gd={self.count_gdrazin_2eq} formula={self.count_formula} "
            f"gd3={self.count_gdrazin_3eq} one_inverse={self.count_one_inverse} drazin={self.count_drazin}"
        )


def _witness(field, n, a: set, b: set):
    diff = sorted(a ^ b)
    return Matrix(field, [diff[0][i * n : (i + 1) * n] for i in range(n)], n) if diff else None


def parameterization_image(family: GDrazinFamily) -> set[tuple[int, ...]]:
    f = family.field
    shape = family.shape
    out = set()
    for values in itertools.product(f.elements(), repeat=shape.n_params):
        X = family.build(GDrazinParams.from_values(shape, f, values))
        out.add(X.entries())
    return out


def certify_parameterization(
    A: Matrix, budget: int = DEFAULT_BUDGET, matrix_id: str = "matrix", strict: bool = True
) -> OracleReport:
    """Compare brute force with the parameterization, the count formula and
    the Drazin inverse.  With ``strict`` a mismatch raises
    :class:`CertificationFailure` carrying a witness matrix."""
    f = A.field
    Aa, q = _to_array(A)
    n = A.nrows
    check_budget(n, q, budget)
    sols = solution_arrays(A, SYSTEMS, budget)
    r = index_mod(Aa, q)
    gd2 = _keyset(sols["gdrazin_2eq"])
    gd3 = _keyset(sols["gdrazin_3eq"])
    dz = _keyset(sols["drazin"])

    family = GDrazinFamily(A)
    image = parameterization_image(family)
    n_params = family.shape.n_params
    formula = q ** gdrazin_exponent(family.profile)
    AD = drazin_inverse(A, family.ast).entries()
    rk = rank_mod(Aa, q)

    report = OracleReport(
        matrix_id=matrix_id,
        q=q,
        n=n,
        index=r,
        count_one_inverse=len(sols["one_inverse"]),
        count_gdrazin_2eq=len(gd2),
        count_gdrazin_3eq=len(gd3),
        count_drazin=len(dz),
        count_formula=formula,
        parameterization_size=len(image),
        matches_parameterization=gd2 == image and len(image) == q**n_params,
        matches_count_formula=len(gd2) == formula,
        systems_agree=gd2 == gd3,
        drazin_unique=dz == {AD},
        one_inverse_count_ok=len(sols["one_inverse"]) == q ** (n * n - rk * rk),
        drazin_is_gdrazin=AD in gd2,
    )
    checks = [
        (report.matches_parameterization, "brute-force G-Drazin set differs from the parameterization image", gd2, image),
        (report.systems_agree, "two- and three-equation systems differ", gd2, gd3),
        (report.drazin_unique, "Drazin system solutions differ from drazin_inverse(A)", dz, {AD}),
    ]
    for ok, msg, a, b in checks:
        if not ok:
            report.problems.append(msg)
            if strict:
                raise CertificationFailure(f"{matrix_id}: {msg}", _witness(f, n, a, b))
    if not report.certified:
        report.problems.append("count identity failed")
        if strict:
            raise CertificationFailure(f"{matrix_id}: " + "; ".join(report.problems))
    return report


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    matrix: Matrix

    @property
    def n(self) -> int:
        return self.matrix.nrows

    @property
    def q(self) -> int:
        return self.matrix.field.characteristic


def all_matrices(n: int, q: int) -> Iterator[Matrix]:
    f = GF(q)
    for values in itertools.product(range(q), repeat=n * n):
        yield Matrix(f, [values[i * n : (i + 1) * n] for i in range(n)], n)


def _is_nilpotent(M: Matrix) -> bool:
    return (M ** M.nrows).is_zero()


def jordan_representatives(n: int, q: int, rng: random.Random) -> list[CorpusEntry]:
    """Every (core size, nilpotent shape) pair, randomly conjugated."""
    f = GF(q)
    out = []
    for m in range(n + 1):
        for part in partitions(n - m):
            core = random_core(f, m, rng) if m else None
            P = random_invertible(f, n, rng)
            tag = "+".join(map(str, part)) or "0"
            out.append(CorpusEntry(f"gf{q}-{n}x{n}-core{m}-nil{tag}", jordan_type(f, core, part, P)))
    return out


def default_corpus(seed: int = CORPUS_SEED) -> list[CorpusEntry]:
    rng = random.Random(seed)
    out = [CorpusEntry(f"gf2-2x2-all-{k:02d}", M) for k, M in enumerate(all_matrices(2, 2))]
    nil = [M for M in all_matrices(3, 2) if _is_nilpotent(M)]
    out += [CorpusEntry(f"gf2-3x3-nilpotent-{k:02d}", M) for k, M in enumerate(nil)]
    for n, q in ((3, 2), (4, 2), (3, 3)):
        out += jordan_representatives(n, q, rng)
    return out


def select(corpus: Iterable[CorpusEntry], n: int | None = None, q: int | None = None) -> list[CorpusEntry]:
    return [e for e in corpus if (n is None or e.n == n) and (q is None or e.q == q)]
