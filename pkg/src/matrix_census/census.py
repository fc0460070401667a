"""Exact counts of matrices by characteristic polynomial.

Two independent routes to every count: closed-form products (gl_order,
count_irreducible_case, count_with_charpoly) and a brute-force census that
enumerates every matrix by index and tallies characteristic polynomials.
The census kernel works on flat element-index lists with dense field tables,
far from the object layer, so agreement between the two routes is a genuine
cross-check.

All counts are exact integers; the q-Pochhammer-style partial product is an
exact Fraction.
"""

from __future__ import annotations

import functools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .centralizer import centralizer_unit_count
from .errors import BudgetError
from .factor import factorize, is_irreducible
from .field import FieldSpec
from .matrix import SquareMatrix
from .poly import Polynomial, monic_polys

DEFAULT_ENUMERATION_BUDGET = 2 ** 26

# Test hook: a nonzero offset deliberately corrupts the closed-form counts so
# the suite can confirm that verification really fails on a wrong formula.
_TEST_FORMULA_OFFSET = 0


@dataclass(frozen=True)
class CensusReport:
    q: int
    n: int
    entries: dict  # Polynomial -> exact count, canonically ordered
    total: int


@dataclass(frozen=True)
class PartitionReport:
    q: int
    n: int
    entries: dict  # Polynomial -> closed-form count, canonically ordered
    lhs_total: int
    rhs_total: int
    equal: bool


@dataclass(frozen=True)
class OrbitStabilizerReport:
    matrix: SquareMatrix
    charpoly: Polynomial
    gl_order: int
    stabilizer_order: int
    orbit_size: int
    formula_count: int
    consistent: bool


@functools.lru_cache(maxsize=None)
def f_product(u: int, v: int) -> Fraction:
    """Partial product prod_{i=1}^{v} (1 - u^(-i)), exact."""
    if not isinstance(u, int) or u < 2:
        raise ValueError("base must be an integer >= 2")
    if not isinstance(v, int) or v < 0:
        raise ValueError("length must be a nonnegative integer")
    out = Fraction(1)
    for i in range(1, v + 1):
        out *= 1 - Fraction(1, u ** i)
    return out


@functools.lru_cache(maxsize=None)
def gl_order(q: int, n: int) -> int:
    """|GL_n(GF(q))| = prod_{k=0}^{n-1} (q^n - q^k)."""
    if not isinstance(q, int) or q < 2:
        raise ValueError("field order must be an integer >= 2")
    if not isinstance(n, int) or n < 1:
        raise ValueError("dimension must be a positive integer")
    qn = q ** n
    out = 1
    for k in range(n):
        out *= qn - q ** k
    assert out == q ** (n * n) * f_product(q, n)
    return out


@functools.lru_cache(maxsize=None)
def _count_irreducible_pure(q: int, n: int) -> int:
    qn = q ** n
    out = 1
    for i in range(1, n):
        out *= qn - q ** i
    num = gl_order(q, n)
    assert out * (qn - 1) == num
    return out


def count_irreducible_case(q: int, n: int) -> int:
    """Matrices with a prescribed irreducible characteristic polynomial:
    prod_{i=1}^{n-1} (q^n - q^i), independent of which irreducible it is."""
    if not isinstance(q, int) or q < 2:
        raise ValueError("field order must be an integer >= 2")
    if not isinstance(n, int) or n < 1:
        raise ValueError("dimension must be a positive integer")
    return _count_irreducible_pure(q, n) + _TEST_FORMULA_OFFSET


def count_with_charpoly(g: Polynomial, *, seed: int = 0) -> int:
    """Number of deg(g) x deg(g) matrices whose charpoly is the monic g.

    Computed from the factorization shape of g by the all-integer
    rearrangement gl(q,n) * q^(sum d_i n_i^2 - n) / prod gl(q^d_i, n_i);
    test builds recompute the rational form and check integrality.
    """
    if g.is_zero or g.degree < 1:
        raise ValueError("characteristic polynomial must have degree >= 1")
    if not g.is_monic:
        raise ValueError("characteristic polynomial must be monic")
    q = g.field.q
    n = g.degree
    fact = factorize(g, seed=seed)
    num = gl_order(q, n) * q ** (sum(f.degree * m * m for f, m in fact.factors) - n)
    den = 1
    for f, m in fact.factors:
        den *= gl_order(q ** f.degree, m)
    assert num % den == 0
    count = num // den
    if __debug__:
        rat = Fraction(q ** (n * n - n)) * f_product(q, n)
        for f, m in fact.factors:
            rat /= f_product(q ** f.degree, m)
        assert rat == count, "rational and integer forms disagree"
        if len(fact.factors) == 1 and fact.factors[0][1] == 1:
            assert count == _count_irreducible_pure(q, n)
    return count + _TEST_FORMULA_OFFSET


def _census_chunk(field: FieldSpec, n: int, start: int, stop: int) -> dict:
    """Tally charpoly coefficient tuples (descending) over an index range."""
    q = field.q
    add, mul, neg = field.index_tables()
    counts = {}
    n2 = n * n
    a = []
    t = start
    for _ in range(n2):
        a.append(t % q)
        t //= q
    row_off = [i * n for i in range(n)]
    for _ in range(start, stop):
        p = [1]
        for i in range(n):
            ro = row_off[i]
            d = a[ro + i]
            col = [1, neg[d]]
            if i:
                w = [a[row_off[t2] + i] for t2 in range(i)]
                for j in range(i):
                    s = 0
                    for t2 in range(i):
                        wt = w[t2]
                        if wt:
                            s = add[s * q + mul[a[ro + t2] * q + wt]]
                    col.append(neg[s])
                    if j < i - 1:
                        nw = []
                        for u in range(i):
                            uo = row_off[u]
                            s2 = 0
                            for t2 in range(i):
                                wt = w[t2]
                                if wt:
                                    s2 = add[s2 * q + mul[a[uo + t2] * q + wt]]
                            nw.append(s2)
                        w = nw
            lp = len(p)
            lc = len(col)
            np_ = []
            for s in range(i + 2):
                acc = 0
                tlo = s - lc + 1
                if tlo < 0:
                    tlo = 0
                thi = s if s < lp else lp - 1
                for t2 in range(tlo, thi + 1):
                    pv = p[t2]
                    if pv:
                        acc = add[acc * q + mul[col[s - t2] * q + pv]]
                np_.append(acc)
            p = np_
        key = tuple(p)
        counts[key] = counts.get(key, 0) + 1
        j = 0
        while j < n2:
            dj = a[j] + 1
            if dj == q:
                a[j] = 0
                j += 1
            else:
                a[j] = dj
                break
    return counts


def census_bruteforce(spec: FieldSpec, n: int, *,
                      budget: int = DEFAULT_ENUMERATION_BUDGET,
                      threads: int = 1,
                      chunk_size: int = 1 << 14) -> CensusReport:
    """Enumerate every n x n matrix by index and tally charpolys.

    Workers own disjoint index ranges with private histograms; the merged
    report is identical for any chunking or thread count.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("dimension must be a positive integer")
    q = spec.q
    total = q ** (n * n)
    if total > budget:
        raise BudgetError(
            f"census of {q}^{n * n} = {total} matrices exceeds the "
            f"budget {budget}")
    merged = {}
    if n == 1:
        # charpoly of [c] is x - c; still an honest walk over every matrix
        neg = spec.neg
        for c in range(total):
            key = (1, neg(c))
            merged[key] = merged.get(key, 0) + 1
        polys = sorted(
            (Polynomial._raw(spec, list(reversed(key))) for key in merged),
            key=Polynomial.sort_key)
        entries = {g: merged[tuple(reversed(g.coeff_indices))] for g in polys}
        return CensusReport(q, 1, entries, sum(entries.values()))
    ranges = [(s, min(s + chunk_size, total))
              for s in range(0, total, chunk_size)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = pool.map(
                lambda r: _census_chunk(spec, n, r[0], r[1]), ranges)
            for part in partials:
                for key, c in part.items():
                    merged[key] = merged.get(key, 0) + c
    else:
        for s, e in ranges:
            for key, c in _census_chunk(spec, n, s, e).items():
                merged[key] = merged.get(key, 0) + c
    polys = sorted(
        (Polynomial._raw(spec, list(reversed(key))) for key in merged),
        key=Polynomial.sort_key)
    entries = {g: merged[tuple(reversed(g.coeff_indices))] for g in polys}
    got = sum(entries.values())
    assert got == total, "census lost matrices"
    return CensusReport(q, n, entries, got)


def verify_partition(spec: FieldSpec, n: int, *,
                     budget: int = DEFAULT_ENUMERATION_BUDGET,
                     seed: int = 0) -> PartitionReport:
    """Sum the closed-form count over every monic degree-n polynomial and
    compare with q^(n^2).  No matrix enumeration is involved."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("dimension must be a positive integer")
    q = spec.q
    if q ** n > budget:
        raise BudgetError(
            f"{q}^{n} = {q ** n} monic polynomials exceed the budget {budget}")
    entries = {}
    for g in monic_polys(spec, n):
        entries[g] = count_with_charpoly(g, seed=seed)
    entries = dict(sorted(entries.items(), key=lambda kv: kv[0].sort_key()))
    lhs = sum(entries.values())
    rhs = q ** (n * n)
    return PartitionReport(q, n, entries, lhs, rhs, lhs == rhs)


def orbit_stabilizer_report(M: SquareMatrix) -> OrbitStabilizerReport:
    """Conjugation-orbit bookkeeping for a matrix with irreducible charpoly."""
    f = M.charpoly()
    if not is_irreducible(f):
        raise ValueError(
            "orbit report requires an irreducible characteristic polynomial")
    q = M.field.q
    n = M.n
    stab = centralizer_unit_count(M)
    glo = gl_order(q, n)
    assert glo % stab == 0
    orbit = glo // stab
    formula = count_irreducible_case(q, n)
    return OrbitStabilizerReport(
        M, f, glo, stab, orbit, formula, orbit == formula)
