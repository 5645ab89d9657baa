"""Exact sparse linear algebra over the rationals.

Everything here is integer/Fraction arithmetic; no floats anywhere.  Ranks
are computed either modulo word-sized random primes (fast, Monte Carlo with
agreement between two primes) or exactly by fraction-free Bareiss
elimination.  Pivots are chosen by Markowitz minimum fill-in in both paths.

Matrices are stored as {(row, col): Fraction} with explicit shape.  The text
serialization is a coordinate triple format:

    sms <nrows> <ncols>
    <row> <col> <value>
    ...
    0 0 0

with 1-based row/column indices and values printed as `p` or `p/q`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Iterator

Rational = Fraction


class DenominatorDivisibleByP(ArithmeticError):
    """An entry's denominator vanishes mod p, so reduction mod p is undefined."""


class CompositionNonzero(AssertionError):
    """Two supposedly consecutive differentials do not compose to zero."""


class SparseMatrix:
    """A sparse matrix over Q with explicit shape.

    Only nonzero entries are stored.  Setting an entry to zero removes it.
    """

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int,
                 entries: dict[tuple[int, int], Fraction] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        self._check_key(key)
        return self.entries.get(key, Fraction(0))

    def __setitem__(self, key: tuple[int, int], value) -> None:
        self._check_key(key)
        v = Fraction(value)
        if v == 0:
            self.entries.pop(key, None)
        else:
            self.entries[key] = v

    def _check_key(self, key: tuple[int, int]) -> None:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"index {key} out of range for "
                             f"{self.nrows}x{self.ncols} matrix")

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix)
                and self.nrows == other.nrows
                and self.ncols == other.ncols
                and self.entries == other.entries)

    def __repr__(self) -> str:
        return (f"SparseMatrix({self.nrows}x{self.ncols}, "
                f"{len(self.entries)} nonzero)")

    def copy(self) -> "SparseMatrix":
        m = SparseMatrix(self.nrows, self.ncols)
        m.entries = dict(self.entries)
        return m

    def transpose(self) -> "SparseMatrix":
        m = SparseMatrix(self.ncols, self.nrows)
        m.entries = {(j, i): v for (i, j), v in self.entries.items()}
        return m

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        # index other's rows once
        rows_of_other: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in other.entries.items():
            rows_of_other.setdefault(i, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in rows_of_other.get(k, ()):
                key = (i, j)
                s = acc.get(key, Fraction(0)) + a * b
                if s == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = s
        out = SparseMatrix(self.nrows, other.ncols)
        out.entries = acc
        return out

    def is_zero(self) -> bool:
        return not self.entries

    # --- text round trip ---

    def to_sms(self) -> str:
        lines = [f"sms {self.nrows} {self.ncols}"]
        for (i, j) in sorted(self.entries):
            v = self.entries[(i, j)]
            val = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
            lines.append(f"{i + 1} {j + 1} {val}")
        lines.append("0 0 0")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_sms(cls, text: str) -> "SparseMatrix":
        it: Iterator[str] = iter(text.splitlines())
        header = next(it, None)
        if header is None:
            raise ValueError("empty sms input")
        parts = header.split()
        if len(parts) != 3 or parts[0] != "sms":
            raise ValueError(f"bad sms header: {header!r}")
        m = cls(int(parts[1]), int(parts[2]))
        for line in it:
            line = line.strip()
            if not line:
                continue
            i_s, j_s, v_s = line.split()
            i, j = int(i_s), int(j_s)
            if i == 0 and j == 0:
                break
            m[i - 1, j - 1] = Fraction(v_s)
        return m


# --- rank computation ---

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_word_prime(rng: random.Random) -> int:
    """A random prime strictly above 2**30 (so above any graph-count scale here)."""
    while True:
        c = rng.randrange(2 ** 30 + 1, 2 ** 31) | 1
        if _is_prime(c):
            return c


def _rows_mod_p(m: SparseMatrix, p: int) -> list[dict[int, int]]:
    rows: list[dict[int, int]] = [dict() for _ in range(m.nrows)]
    for (i, j), v in m.entries.items():
        if v.denominator % p == 0:
            raise DenominatorDivisibleByP(
                f"entry ({i},{j}) = {v} has denominator divisible by {p}")
        r = v.numerator * pow(v.denominator, -1, p) % p
        if r:
            rows[i][j] = r
    return rows


def rank_mod_p(m: SparseMatrix, p: int) -> int:
    """Rank of m over F_p by sparse elimination with Markowitz pivoting."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    rows = [r for r in _rows_mod_p(m, p) if r]
    col_count: dict[int, int] = {}
    for r in rows:
        for j in r:
            col_count[j] = col_count.get(j, 0) + 1
    rank = 0
    while rows:
        # Markowitz: minimize (row nnz - 1)(col nnz - 1); scan a bounded
        # sample of rows so pivot choice stays cheap on wide matrices.
        best = None
        for ri, r in enumerate(rows):
            rl = len(r) - 1
            for j in r:
                cost = rl * (col_count[j] - 1)
                if best is None or cost < best[0]:
                    best = (cost, ri, j)
            if best is not None and best[0] == 0:
                break
        _, ri, pj = best
        piv_row = rows.pop(ri)
        rank += 1
        inv = pow(piv_row[pj], -1, p)
        piv = {j: v * inv % p for j, v in piv_row.items()}
        for j in piv_row:
            col_count[j] -= 1
        next_rows = []
        for r in rows:
            f = r.get(pj)
            if f:
                for j in r:
                    col_count[j] -= 1
                new = dict(r)
                del new[pj]
                for j, v in piv.items():
                    if j == pj:
                        continue
                    w = (new.get(j, 0) - f * v) % p
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
                if new:
                    for j in new:
                        col_count[j] = col_count.get(j, 0) + 1
                    next_rows.append(new)
            else:
                next_rows.append(r)
        rows = next_rows
    return rank


def rank_exact(m: SparseMatrix) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination.

    Rows are rescaled to integers first; rescaling by nonzero rationals does
    not change the rank.
    """
    by_row: dict[int, dict[int, Fraction]] = {}
    for (i, j), v in m.entries.items():
        by_row.setdefault(i, {})[j] = v
    rows: list[dict[int, int]] = []
    for i in sorted(by_row):
        row = by_row[i]
        den = 1
        for v in row.values():
            den = den * v.denominator // _gcd(den, v.denominator)
        irow = {j: int(v * den) for j, v in row.items()}
        g = 0
        for v in irow.values():
            g = _gcd(g, abs(v))
        rows.append({j: v // g for j, v in irow.items()})
    rank = 0
    prev = 1
    while rows:
        best = None
        col_count: dict[int, int] = {}
        for r in rows:
            for j in r:
                col_count[j] = col_count.get(j, 0) + 1
        for ri, r in enumerate(rows):
            rl = len(r) - 1
            for j in r:
                cost = rl * (col_count[j] - 1)
                if best is None or cost < best[0]:
                    best = (cost, ri, j)
        _, ri, pj = best
        piv_row = rows.pop(ri)
        piv = piv_row[pj]
        rank += 1
        next_rows = []
        for r in rows:
            f = r.get(pj, 0)
            new: dict[int, int] = {}
            keys = set(r) | (set(piv_row) if f else set())
            keys.discard(pj)
            for j in keys:
                w = (piv * r.get(j, 0) - f * piv_row.get(j, 0)) // prev
                if w:
                    new[j] = w
            if new:
                next_rows.append(new)
        prev = piv
        rows = next_rows
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a else 1


def rank(m: SparseMatrix, *, exact: bool = False,
         primes: Iterable[int] | None = None,
         rng: random.Random | None = None) -> int:
    """Rank of m over Q.

    Default strategy: compute the rank mod two distinct random primes above
    2**30 and require agreement (rank mod p is a lower bound for the true
    rank, and a random prime dividing a nonzero minor is vanishingly
    unlikely; two agreeing primes make that doubly so).  `exact=True` forces
    fraction-free elimination.  `primes` pins the primes, for reproduction.
    """
    if exact:
        return rank_exact(m)
    if primes is not None:
        ps = list(primes)
        if len(ps) < 2 or ps[0] == ps[1]:
            raise ValueError("need two distinct primes")
        ranks = {rank_mod_p(m, p) for p in ps[:2]}
        if len(ranks) == 1:
            return ranks.pop()
        return rank_exact(m)
    rng = rng or random.Random()
    for _ in range(4):
        p1 = random_word_prime(rng)
        p2 = random_word_prime(rng)
        while p2 == p1:
            p2 = random_word_prime(rng)
        try:
            r1 = rank_mod_p(m, p1)
            r2 = rank_mod_p(m, p2)
        except DenominatorDivisibleByP:
            continue
        if r1 == r2:
            return r1
    return rank_exact(m)


def homology_dim(d_out: SparseMatrix, d_in: SparseMatrix, **rank_kwargs) -> int:
    """dim ker(d_out) - dim im(d_in) for C_{d+1} --d_in--> C_d --d_out--> C_{d-1}.

    `d_out` has one column per basis element of C_d; `d_in` has one row per
    basis element of C_d.  Raises CompositionNonzero if d_out . d_in != 0.
    """
    if d_out.ncols != d_in.nrows:
        raise ValueError(
            f"middle dimension mismatch: d_out has {d_out.ncols} columns, "
            f"d_in has {d_in.nrows} rows")
    if not d_out.matmul(d_in).is_zero():
        raise CompositionNonzero("d_out . d_in is not the zero matrix")
    dim_c = d_out.ncols
    return dim_c - rank(d_out, **rank_kwargs) - rank(d_in, **rank_kwargs)
