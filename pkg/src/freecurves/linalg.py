"""Exact dense linear algebra over Q, Q(i) and GF(p).

Every routine goes through a reduced row echelon form, so results (ranks,
kernel bases, particular solutions) are canonical and identical across
engines:

``bareiss``  pure-Python fraction-free elimination over Z (Q only)
``gauss``    pure-Python Gauss-Jordan in the field (any field)
``flint``    FLINT's fmpz_mat / nmod_mat (Q and GF(p))

``auto`` picks ``flint`` for Q and GF(p) and ``gauss`` for Q(i).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import List, Sequence

import flint
from gmpy2 import mpq

from .scalars import Field

# Fixed prime for modular rank bounds (rank mod p <= rank over Q).
BOUND_PRIME = 2**61 - 1

Row = Sequence  # dense list of raw field values


@dataclass
class RREF:
    rows: List[list]  # nonzero rows of the reduced echelon form; pivot entries are 1
    pivots: List[int]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> List[int]:
        piv = set(self.pivots)
        return [j for j in range(self.ncols) if j not in piv]


def _choose(field: Field, engine: str) -> str:
    if engine != "auto":
        if engine == "bareiss" and field.kind != "Q":
            raise ValueError("bareiss engine works over Q only")
        if engine == "flint" and field.kind == "QI":
            raise ValueError("flint engine does not support Q(i)")
        return engine
    return "gauss" if field.kind == "QI" else "flint"


def _integer_rows(rows: Sequence[Row]) -> List[List[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for r in rows:
        den = 1
        for v in r:
            if v:
                den = lcm(den, int(mpq(v).denominator))
        out.append([int(mpq(v) * den) for v in r])
    return out


# --- pure engines --------------------------------------------------------------

def _gauss_rref(rows: Sequence[Row], ncols: int, field: Field) -> RREF:
    M = [[field.coerce(v) for v in r] for r in rows]
    red = field.reduce
    pivots: List[int] = []
    r = 0
    nrows = len(M)
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if not field.is_zero(M[i][col])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.inv(M[r][col])
        M[r] = [red(v * inv) for v in M[r]]
        prow = M[r]
        for i in range(nrows):
            if i != r:
                c = M[i][col]
                if not field.is_zero(c):
                    M[i] = [red(a - c * b) for a, b in zip(M[i], prow)]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return RREF(M[:r], pivots, ncols)


def bareiss_echelon(rows: Sequence[Sequence[int]], ncols: int):
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon rows, pivot columns).  Every intermediate division is
    exact; entries of the result are minors of the input.
    """
    M = [list(r) for r in rows]
    nrows = len(M)
    pivots: List[int] = []
    prev = 1
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        prow = M[r]
        for i in range(r + 1, nrows):
            row = M[i]
            a = row[col]
            if a == 0:
                if p != prev:
                    for j in range(col + 1, ncols):
                        row[j] = (p * row[j]) // prev
            else:
                for j in range(col + 1, ncols):
                    row[j] = (p * row[j] - a * prow[j]) // prev
                row[col] = 0
        prev = p
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return M[:r], pivots


def _bareiss_rref(rows: Sequence[Row], ncols: int) -> RREF:
    ech, pivots = bareiss_echelon(_integer_rows(rows), ncols)
    R = [[mpq(v) for v in row] for row in ech]
    for k in range(len(R) - 1, -1, -1):
        col = pivots[k]
        inv = 1 / R[k][col]
        R[k] = [v * inv for v in R[k]]
        for i in range(k):
            c = R[i][col]
            if c:
                R[i] = [a - c * b for a, b in zip(R[i], R[k])]
    return RREF(R, pivots, ncols)


# --- FLINT engine -----------------------------------------------------------------

def _flint_rref(rows: Sequence[Row], ncols: int, field: Field) -> RREF:
    nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return RREF([], [], ncols)
    if field.kind == "Fp":
        A = flint.nmod_mat(nrows, ncols, [int(v) % field.p for r in rows for v in r], field.p)
        R, rank = A.rref()
        table = R.entries()
        pivots, out = [], []
        for i in range(rank):
            base = i * ncols
            row = [int(table[base + j]) for j in range(ncols)]
            pivots.append(next(j for j, v in enumerate(row) if v))
            out.append(row)
        return RREF(out, pivots, ncols)
    A = flint.fmpz_mat(nrows, ncols, [v for r in _integer_rows(rows) for v in r])
    R, den, rank = A.rref()
    den = int(den)
    table = R.entries()
    pivots, out = [], []
    for i in range(rank):
        base = i * ncols
        row = [mpq(int(table[base + j]), den) for j in range(ncols)]
        pivots.append(next(j for j, v in enumerate(row) if v))
        out.append(row)
    return RREF(out, pivots, ncols)


# --- public ---------------------------------------------------------------------

def rref(rows: Sequence[Row], ncols: int, field: Field, engine: str = "auto") -> RREF:
    eng = _choose(field, engine)
    if eng == "flint":
        return _flint_rref(rows, ncols, field)
    if eng == "bareiss":
        return _bareiss_rref(rows, ncols)
    return _gauss_rref(rows, ncols, field)


def rank(rows: Sequence[Row], ncols: int, field: Field, engine: str = "auto") -> int:
    eng = _choose(field, engine)
    if not rows or ncols == 0:
        return 0
    if eng == "flint":
        if field.kind == "Fp":
            return flint.nmod_mat(len(rows), ncols, [int(v) % field.p for r in rows for v in r], field.p).rank()
        return flint.fmpz_mat(len(rows), ncols, [v for r in _integer_rows(rows) for v in r]).rank()
    return rref(rows, ncols, field, eng).rank


def rank_lower_bound(rows: Sequence[Row], ncols: int, field: Field) -> int:
    """Rank modulo a fixed prime: a lower bound for the rank over Q.

    Rows must have integral coefficients after row scaling (always true for
    Q); for GF(p) this is the exact rank.
    """
    if not rows or ncols == 0:
        return 0
    if field.kind == "Fp":
        return rank(rows, ncols, field)
    if field.kind != "Q":
        return rank(rows, ncols, field)
    data = []
    for r in _integer_rows(rows):
        data.extend(v % BOUND_PRIME for v in r)
    return flint.nmod_mat(len(rows), ncols, data, BOUND_PRIME).rank()


def kernel_from_rref(R: RREF, field: Field) -> List[list]:
    """Canonical kernel basis: one vector per free column, with a 1 there."""
    zero, one = field.zero, field.one
    basis = []
    for j in R.free_columns():
        v = [zero] * R.ncols
        v[j] = one
        for k, pc in enumerate(R.pivots):
            c = R.rows[k][j]
            if not field.is_zero(c):
                v[pc] = field.reduce(-c)
        basis.append(v)
    return basis


def nullspace(rows: Sequence[Row], ncols: int, field: Field, engine: str = "auto") -> List[list]:
    if not rows:
        return kernel_from_rref(RREF([], [], ncols), field)
    return kernel_from_rref(rref(rows, ncols, field, engine), field)


def solve(rows: Sequence[Row], ncols: int, rhs: Sequence, field: Field, engine: str = "auto"):
    """A particular solution of A x = rhs (free variables zero), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R = rref(aug, ncols + 1, field, engine)
    if R.pivots and R.pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for k, pc in enumerate(R.pivots):
        x[pc] = R.rows[k][ncols]
    return x


def mat_vec(rows: Sequence[Row], v: Sequence, field: Field) -> list:
    red = field.reduce
    out = []
    for r in rows:
        acc = field.zero
        for a, b in zip(r, v):
            if a and b:
                acc = acc + a * b
        out.append(red(acc))
    return out


# --- small square matrices (multiplication matrices) ---------------------------

def mat_mul(A: Sequence[Row], B: Sequence[Row], field: Field) -> List[list]:
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    if field.kind == "Fp" and n:
        C = flint.nmod_mat(n, m, [int(v) for r in A for v in r], field.p) * \
            flint.nmod_mat(m, k, [int(v) for r in B for v in r], field.p)
        return [[int(C[i, j]) for j in range(k)] for i in range(n)]
    if field.kind == "Q" and n:
        C = flint.fmpq_mat(n, m, [flint.fmpq(int(mpq(v).numerator), int(mpq(v).denominator)) for r in A for v in r]) * \
            flint.fmpq_mat(m, k, [flint.fmpq(int(mpq(v).numerator), int(mpq(v).denominator)) for r in B for v in r])
        return [[mpq(int(C[i, j].p), int(C[i, j].q)) for j in range(k)] for i in range(n)]
    red = field.reduce
    Bt = list(zip(*B))
    out = []
    for r in A:
        row = []
        for col in Bt:
            acc = field.zero
            for a, b in zip(r, col):
                if a and b:
                    acc = acc + a * b
            row.append(red(acc))
        out.append(row)
    return out


def identity(n: int, field: Field) -> List[list]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_sub_scalar(A: Sequence[Row], c, field: Field) -> List[list]:
    """A - c*I."""
    return [[field.reduce(v - c) if i == j else v for j, v in enumerate(r)] for i, r in enumerate(A)]


def mat_pow(A: Sequence[Row], k: int, field: Field) -> List[list]:
    result = identity(len(A), field)
    base = [list(r) for r in A]
    while k:
        if k & 1:
            result = mat_mul(result, base, field)
        k >>= 1
        if k:
            base = mat_mul(base, base, field)
    return result
