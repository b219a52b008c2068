"""Exact rank, closure, circuit and pivot computations over the rationals.

Everything here is exact: matrices hold Python ints or Fractions, rank
uses fraction-free Bareiss elimination, and incremental span queries go
through an integer echelon basis.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .masks import mask_vector, validate_mask

__all__ = [
    "ExactMatrix",
    "EchelonBasis",
    "bareiss_rank",
    "mask_rank",
    "is_independent",
    "closure",
    "fundamental_circuit",
    "rank_mod_p",
    "solve_square_system",
]


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in rows:
        if any(isinstance(x, Fraction) for x in row):
            mult = lcm(*(x.denominator if isinstance(x, Fraction) else 1 for x in row)) if row else 1
            out.append([int(x * mult) for x in row])
        else:
            out.append(list(row))
    return out


def bareiss_rank(rows) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    mat = _integer_rows(rows)
    if not mat:
        return 0
    m, ncols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, m):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        p = pr[col]
        for i in range(rank + 1, m):
            ri = mat[i]
            f = ri[col]
            mat[i] = [(p * ri[j] - f * pr[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def _normalize_int_row(row):
    """Divide out the gcd and make the leading nonzero entry positive.

    Returns None for the zero row.  Proportional rows normalize to the
    same tuple, which is what closure-delta grouping relies on.
    """
    g = 0
    for x in row:
        g = gcd(g, x)
    if g == 0:
        return None
    for x in row:
        if x:
            if x < 0:
                g = -g
            break
    return tuple(x // g for x in row)


class EchelonBasis:
    """Incrementally built, fully reduced integer row basis.

    Every stored row is gcd-normalized and zero at every other row's
    pivot position, so reducing a vector is a single pass and membership
    in the span is "residual == 0".  Kept exact via fraction-free row
    operations; entries stay tiny for 0/1 inputs.
    """

    __slots__ = ("size", "_rows", "_pivots")

    def __init__(self, size: int):
        self.size = size
        self._rows: list[tuple[int, ...]] = []
        self._pivots: list[int] = []

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis.__new__(EchelonBasis)
        other.size = self.size
        other._rows = list(self._rows)
        other._pivots = list(self._pivots)
        return other

    @property
    def rank(self) -> int:
        return len(self._rows)

    def residual(self, vec) -> tuple[int, ...]:
        """Eliminate all pivot positions from ``vec`` (fraction-free)."""
        v = list(vec)
        for p, row in zip(self._pivots, self._rows):
            c = v[p]
            if c:
                a = row[p]
                v = [a * x - c * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, vec) -> bool:
        return not any(self.residual(vec))

    def add(self, vec) -> bool:
        """Extend the span by ``vec``; False if it was already contained."""
        res = _normalize_int_row(self.residual(vec))
        if res is None:
            return False
        p = next(j for j, x in enumerate(res) if x)
        a = res[p]
        for i, row in enumerate(self._rows):
            c = row[p]
            if c:
                self._rows[i] = _normalize_int_row([a * x - c * y for x, y in zip(row, res)])
        self._rows.append(res)
        self._pivots.append(p)
        return True

    def add_masks(self, masks, n) -> int:
        added = 0
        for m in masks:
            if self.add(mask_vector(m, n)):
                added += 1
        return added


def _validated_masks(masks, n):
    out = list(masks)
    for m in out:
        validate_mask(m, n)
    return out


def mask_rank(masks, n: int) -> int:
    """Rank over Q of a collection of 0/1 normal vectors."""
    cols = _validated_masks(masks, n)
    if not cols:
        return 0
    return bareiss_rank([mask_vector(m, n) for m in cols])


def is_independent(masks, n: int) -> bool:
    cols = list(masks)
    return mask_rank(cols, n) == len(cols)


def closure(subset, universe, n: int):
    """All hyperplanes of ``universe`` lying in the span of ``subset``."""
    sub = _validated_masks(subset, n)
    uni = _validated_masks(universe, n)
    uniset = set(uni)
    for m in sub:
        if m not in uniset:
            raise ValueError(f"mask {m} not in the universe")
    basis = EchelonBasis(n)
    basis.add_masks(sub, n)
    return {h for h in uni if basis.contains(mask_vector(h, n))}


def _span_coefficients(base_masks, target, n):
    """Coefficients expressing ``target`` over ``base_masks`` or None.

    ``base_masks`` must be independent, so a representation is unique.
    """
    m = len(base_masks)
    rows = [
        [Fraction((bm >> i) & 1) for bm in base_masks] + [Fraction((target >> i) & 1)]
        for i in range(n)
    ]
    piv_cols = []
    r = 0
    for c in range(m):
        sel = next((i for i in range(r, n) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pr = rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c] / pr[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        piv_cols.append(c)
        r += 1
    if any(rows[i][m] for i in range(r, n)):
        return None
    coeffs = [Fraction(0)] * m
    for idx, c in enumerate(piv_cols):
        coeffs[c] = rows[idx][m] / rows[idx][c]
    return coeffs


def fundamental_circuit(independent_masks, e: int, n: int):
    """The unique circuit inside ``independent_masks + [e]`` through e.

    Returns a frozenset; raises if e already belongs to the set or lies
    outside its span.
    """
    base = _validated_masks(independent_masks, n)
    validate_mask(e, n)
    if e in base:
        raise ValueError("element already belongs to the independent set")
    if not is_independent(base, n):
        raise ValueError("base set is not independent")
    coeffs = _span_coefficients(base, e, n)
    if coeffs is None:
        raise ValueError("element does not lie in the closure of the base set")
    support = [bm for bm, c in zip(base, coeffs) if c]
    return frozenset(support) | {e}


def rank_mod_p(masks, n: int, p: int) -> int:
    """Rank of the 0/1 columns over the prime field F_p (cross-check path)."""
    cols = _validated_masks(masks, n)
    rows = [list(mask_vector(m, n)) for m in cols]
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col] % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def solve_square_system(matrix_rows, rhs):
    """Solve A x = b exactly for square nonsingular integer A.

    Fraction-free forward elimination followed by back substitution;
    returns a list of Fractions.
    """
    m = len(matrix_rows)
    mat = [list(row) + [b] for row, b in zip(_integer_rows(matrix_rows), rhs)]
    prev = 1
    for col in range(m):
        piv = next((i for i in range(col, m) if mat[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        mat[col], mat[piv] = mat[piv], mat[col]
        pr = mat[col]
        p = pr[col]
        for i in range(col + 1, m):
            f = mat[i][col]
            mat[i] = [(p * mat[i][j] - f * pr[j]) // prev for j in range(m + 1)]
        prev = p
    xs = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        s = Fraction(mat[i][m])
        for j in range(i + 1, m):
            s -= mat[i][j] * xs[j]
        xs[i] = s / mat[i][i]
    return xs


def _as_exact(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise ValueError(f"entries must be ints or Fractions, got {type(x).__name__}")


class ExactMatrix:
    """Dense matrix of exact rationals (ints, Fractions where needed)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        data = [[_as_exact(x) for x in row] for row in entries]
        if data and any(len(r) != len(data[0]) for r in data):
            raise ValueError("ragged rows")
        self.entries = data
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_mask_columns(cls, masks, n: int) -> "ExactMatrix":
        cols = [validate_mask(m, n) for m in masks]
        return cls([[(m >> i) & 1 for m in cols] for i in range(n)])

    def column(self, j: int):
        return [row[j] for row in self.entries]

    def rank(self) -> int:
        return bareiss_rank(self.entries)

    def pivot(self, row: int, col: int) -> "ExactMatrix":
        """Scale ``row`` so entry (row, col) becomes 1, clear the rest of
        the column with row operations.  Column-matroid preserving."""
        p = self.entries[row][col]
        if p == 0:
            raise ValueError(f"zero pivot entry at ({row}, {col})")
        out = [list(r) for r in self.entries]
        if p != 1:
            out[row] = [_as_exact(Fraction(x, 1) / p) for x in out[row]]
        pr = out[row]
        for i in range(self.rows):
            if i != row and out[i][col]:
                f = out[i][col]
                out[i] = [_as_exact(a - f * b) for a, b in zip(out[i], pr)]
        return ExactMatrix(out)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"ExactMatrix({self.entries!r})"
