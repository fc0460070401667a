"""Square matrices over a FieldSpec.

Entries are stored as a flat tuple of element indices, row major.  The
characteristic polynomial is computed by the division-free Berkowitz
recurrence, so it is exact for every field size; the determinant is recovered
from it as (-1)^n * charpoly(0).

``row_echelon`` and ``nullspace`` are module-level helpers on plain lists of
row vectors (used by the centralizer solver and the canonical-form search);
pivoting always picks the first row with a nonzero entry, so every reduced
form and every kernel basis is deterministic.
"""

from __future__ import annotations

from .errors import ParseError, SingularMatrixError
from .field import FieldElement, FieldSpec
from .poly import Polynomial


def _coerce_index(field, c) -> int:
    """Entry to its index: elements pass through, ints reduce mod p over a
    prime field and must be canonical indices over an extension."""
    if isinstance(c, FieldElement):
        if c.field != field:
            raise ValueError("entry from a different field")
        return c.index
    if isinstance(c, int):
        if field.k == 1:
            return c % field.p
        if 0 <= c < field.q:
            return c
        raise ValueError(f"entry index {c} out of range [0, {field.q})")
    raise ValueError(f"bad entry {c!r}")


class SquareMatrix:
    __slots__ = ("field", "n", "_e")

    def __init__(self, field: FieldSpec, rows):
        rows = list(rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must have positive dimension")
        flat = []
        for r in rows:
            r = list(r)
            if len(r) != n:
                raise ValueError(f"expected {n} entries per row, got {len(r)}")
            for c in r:
                flat.append(_coerce_index(field, c))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_e", tuple(flat))

    def __setattr__(self, name, value):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def _raw(cls, field, n: int, flat) -> "SquareMatrix":
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "_e", tuple(flat))
        return obj

    @classmethod
    def zero(cls, field, n: int) -> "SquareMatrix":
        return cls._raw(field, n, (0,) * (n * n))

    @classmethod
    def identity(cls, field, n: int) -> "SquareMatrix":
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = 1
        return cls._raw(field, n, flat)

    @classmethod
    def scalar(cls, field, n: int, c) -> "SquareMatrix":
        c = _coerce_index(field, c)
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = c
        return cls._raw(field, n, flat)

    @classmethod
    def diagonal(cls, field, entries) -> "SquareMatrix":
        entries = [_coerce_index(field, c) for c in entries]
        n = len(entries)
        flat = [0] * (n * n)
        for i, c in enumerate(entries):
            flat[i * n + i] = c
        return cls._raw(field, n, flat)

    @classmethod
    def from_flat(cls, field, n: int, flat) -> "SquareMatrix":
        flat = list(flat)
        if len(flat) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(flat)}")
        rows = [flat[i * n:(i + 1) * n] for i in range(n)]
        return cls(field, rows)

    @classmethod
    def from_index(cls, field, n: int, index: int) -> "SquareMatrix":
        """Inverse of matrix_index: base-q digits, entry (0,0) least significant."""
        q = field.q
        total = q ** (n * n)
        if not 0 <= index < total:
            raise ValueError(f"matrix index {index} out of range [0, {total})")
        flat = []
        for _ in range(n * n):
            flat.append(index % q)
            index //= q
        return cls._raw(field, n, flat)

    def matrix_index(self) -> int:
        v = 0
        q = self.field.q
        for c in reversed(self._e):
            v = v * q + c
        return v

    @property
    def flat_indices(self) -> tuple:
        return self._e

    def entry_index(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"entry ({i}, {j}) out of range")
        return self._e[i * self.n + j]

    def __getitem__(self, key) -> FieldElement:
        i, j = key
        return FieldElement(self.field, self.entry_index(i, j))

    def rows_idx(self) -> list:
        n = self.n
        return [list(self._e[i * n:(i + 1) * n]) for i in range(n)]

    def _check(self, other):
        if not isinstance(other, SquareMatrix):
            raise TypeError(f"expected a SquareMatrix, got {other!r}")
        if other.field != self.field or other.n != self.n:
            raise ValueError("matrices of different shape or field")

    def __add__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        add = self.field.add
        return SquareMatrix._raw(
            self.field, self.n,
            [add(a, b) for a, b in zip(self._e, other._e)])

    def __sub__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        sub = self.field.sub
        return SquareMatrix._raw(
            self.field, self.n,
            [sub(a, b) for a, b in zip(self._e, other._e)])

    def __neg__(self):
        neg = self.field.neg
        return SquareMatrix._raw(self.field, self.n, [neg(a) for a in self._e])

    def __mul__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        n = self.n
        add, mul = self.field.add, self.field.mul
        a, b = self._e, other._e
        out = [0] * (n * n)
        for i in range(n):
            ro = i * n
            for t in range(n):
                c = a[ro + t]
                if c:
                    bo = t * n
                    for j in range(n):
                        v = b[bo + j]
                        if v:
                            out[ro + j] = add(out[ro + j], mul(c, v))
        return SquareMatrix._raw(self.field, n, out)

    def scale(self, c) -> "SquareMatrix":
        c = _coerce_index(self.field, c)
        mul = self.field.mul
        return SquareMatrix._raw(self.field, self.n,
                                 [mul(a, c) for a in self._e])

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("matrix exponent must be a nonnegative integer")
        result = SquareMatrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def transpose(self) -> "SquareMatrix":
        n = self.n
        out = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                out[j * n + i] = self._e[i * n + j]
        return SquareMatrix._raw(self.field, n, out)

    def apply(self, v) -> tuple:
        """Matrix times column vector of element indices."""
        v = [c.index if isinstance(c, FieldElement) else c for c in v]
        if len(v) != self.n:
            raise ValueError(f"expected a vector of length {self.n}")
        n = self.n
        add, mul = self.field.add, self.field.mul
        out = []
        for i in range(n):
            ro = i * n
            s = 0
            for j, c in enumerate(v):
                if c:
                    s = add(s, mul(self._e[ro + j], c))
            out.append(s)
        return tuple(out)

    def charpoly(self) -> Polynomial:
        """det(xI - M), monic of degree n, by the Berkowitz recurrence."""
        desc = _berkowitz(self.field, self._e, self.n)
        return Polynomial._raw(self.field, list(reversed(desc)))

    def minpoly(self) -> Polynomial:
        """Least common multiple of the orders of the standard basis vectors."""
        n = self.n
        field = self.field
        result = Polynomial.one(field)
        for i in range(n):
            v = [0] * n
            v[i] = 1
            order = _vector_order(self, v)
            g = result.gcd(order)
            result = (result * order) // g
            if result.degree == n:
                break
        return result.monic()

    def rank_kernel(self):
        """(rank, deterministic echelonized kernel basis)."""
        rref, pivots = row_echelon(self.field, self.rows_idx())
        return len(pivots), _kernel_from_rref(self.field, rref, pivots, self.n)

    def det(self) -> FieldElement:
        """(-1)^n times the constant term of the characteristic polynomial."""
        c0 = self.charpoly().coeff_indices[0]
        if self.n % 2:
            c0 = self.field.neg(c0)
        return FieldElement(self.field, c0)

    def invert(self) -> "SquareMatrix":
        n = self.n
        field = self.field
        aug = []
        for i in range(n):
            row = list(self._e[i * n:(i + 1) * n]) + [0] * n
            row[n + i] = 1
            aug.append(row)
        rref, pivots = row_echelon(field, aug)
        if len(pivots) < n or pivots[:n] != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        flat = []
        for i in range(n):
            flat.extend(rref[i][n:])
        return SquareMatrix._raw(field, n, flat)

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return (self.field, self.n, self._e) == (other.field, other.n, other._e)

    def __hash__(self):
        return hash((self.field, self.n, self._e))

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"SquareMatrix({self.field}, {format_matrix(self)!r})"


def _berkowitz(field: FieldSpec, flat, n: int) -> list:
    """Characteristic polynomial coefficients, descending, leading first."""
    add, mul, neg = field.add, field.mul, field.neg
    p = [1]
    for i in range(n):
        d = flat[i * n + i]
        dots = []
        if i:
            w = [flat[t * n + i] for t in range(i)]
            ro = i * n
            for j in range(i):
                s = 0
                for t in range(i):
                    wt = w[t]
                    if wt:
                        s = add(s, mul(flat[ro + t], wt))
                dots.append(s)
                if j < i - 1:
                    nw = []
                    for u in range(i):
                        uo = u * n
                        s2 = 0
                        for t in range(i):
                            wt = w[t]
                            if wt:
                                s2 = add(s2, mul(flat[uo + t], wt))
                        nw.append(s2)
                    w = nw
        col = [1, neg(d)] + [neg(x) for x in dots]
        lp = len(p)
        lc = len(col)
        np_ = []
        for s in range(i + 2):
            acc = 0
            tlo = s - lc + 1
            if tlo < 0:
                tlo = 0
            thi = s if s < lp else lp - 1
            for t in range(tlo, thi + 1):
                pv = p[t]
                if pv:
                    acc = add(acc, mul(col[s - t], pv))
            np_.append(acc)
        p = np_
    return p


def _vector_order(M: SquareMatrix, v) -> Polynomial:
    """Monic generator of {f : f(M) v = 0}; the zero vector has order 1."""
    field = M.field
    n = M.n
    v = [c.index if isinstance(c, FieldElement) else c for c in v]
    sub, mul, inv = field.sub, field.mul, field.inv
    # echelon rows of the Krylov flags, each with the combination that made it
    rows = []  # (pivot, reduced vector, combination coeffs over v, Mv, ...)
    u = list(v)
    j = 0
    while True:
        cur = list(u)
        comb = [0] * (j + 1)
        comb[j] = 1
        for pivot, rv, rc in rows:
            c = cur[pivot]
            if c:
                for t in range(n):
                    if rv[t]:
                        cur[t] = sub(cur[t], mul(c, rv[t]))
                for t, x in enumerate(rc):
                    if x:
                        comb[t] = sub(comb[t], mul(c, x))
        pivot = next((t for t, c in enumerate(cur) if c), None)
        if pivot is None:
            # dependency found: sum(comb[t] M^t v) = 0 with comb[j] = 1,
            # so comb is the monic order itself
            return Polynomial._raw(field, list(comb))
        ic = inv(cur[pivot])
        cur = [mul(c, ic) for c in cur]
        comb = [mul(c, ic) for c in comb]
        rows.append((pivot, cur, comb))
        u = list(M.apply(u))
        j += 1


def row_echelon(field: FieldSpec, rows):
    """Reduced row echelon form in place; returns (nonzero rows, pivot cols)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    sub, mul, inv = field.sub, field.mul, field.inv
    pivots = []
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        row = rows[r]
        ic = inv(row[col])
        if ic != 1:
            rows[r] = row = [mul(c, ic) for c in row]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                ri = rows[i]
                for t in range(col, ncols):
                    if row[t]:
                        ri[t] = sub(ri[t], mul(c, row[t]))
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _kernel_from_rref(field, rref, pivots, ncols):
    neg = field.neg
    pivot_set = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [0] * ncols
        v[j] = 1
        for r, pc in enumerate(pivots):
            if rref[r][j]:
                v[pc] = neg(rref[r][j])
        basis.append(tuple(v))
    return basis


def nullspace(field: FieldSpec, rows, ncols: int):
    """Deterministic echelonized basis of {v : R v = 0} for the given rows."""
    rref, pivots = row_echelon(field, rows)
    return _kernel_from_rref(field, rref, pivots, ncols)


def evaluate_poly(f: Polynomial, M: SquareMatrix) -> SquareMatrix:
    """f(M) by Horner."""
    if f.field != M.field:
        raise ValueError("polynomial and matrix over different fields")
    acc = SquareMatrix.zero(M.field, M.n)
    for c in reversed(f.coeff_indices):
        acc = acc * M + SquareMatrix.scalar(M.field, M.n, c)
    return acc


def poly_times_vector(f: Polynomial, M: SquareMatrix, v) -> tuple:
    """f(M) applied to a vector, without forming f(M)."""
    if f.field != M.field:
        raise ValueError("polynomial and matrix over different fields")
    add, mul = M.field.add, M.field.mul
    v = [c.index if isinstance(c, FieldElement) else c for c in v]
    acc = [0] * M.n
    for c in reversed(f.coeff_indices):
        acc = list(M.apply(acc))
        if c:
            for t in range(M.n):
                if v[t]:
                    acc[t] = add(acc[t], mul(c, v[t]))
    return tuple(acc)


def format_matrix(M: SquareMatrix) -> str:
    """Rows joined by ';', entries by ',', each entry an element index."""
    n = M.n
    return ";".join(
        ",".join(str(c) for c in M._e[i * n:(i + 1) * n]) for i in range(n))


def parse_matrix(text: str, field: FieldSpec) -> SquareMatrix:
    rows_text = text.split(";")
    n = len(rows_text)
    offset = 0
    rows = []
    for rt in rows_text:
        entries = rt.split(",")
        if len(entries) != n:
            raise ParseError(
                f"expected {n} entries per row, got {len(entries)}", offset)
        row = []
        for et in entries:
            at = offset + (len(et) - len(et.lstrip()))
            s = et.strip()
            if not s or not all(ch.isdigit() for ch in s):
                raise ParseError(f"bad entry {s!r}", at)
            v = int(s)
            if v >= field.q:
                raise ParseError(
                    f"entry {v} out of range [0, {field.q})", at)
            row.append(v)
            offset += len(et) + 1
        rows.append(row)
    return SquareMatrix(field, rows)
