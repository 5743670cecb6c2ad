"""Exact rational linear algebra built on fractions.Fraction.

Scalars are plain ints wherever the value is integral and Fraction otherwise;
the two mix freely in arithmetic and compare (and hash) equal when they
should. Everything here is exact, there are no floats anywhere in the
package. Keeping integral values as int is a deliberate speed choice: the
structure constants we push through these routines are almost always
integers, and int arithmetic is roughly an order of magnitude faster than
Fraction arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

Q = int | Fraction

Vec = tuple


def qnorm(x):
    """Collapse Fraction(n, 1) to int n; leave everything else alone."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def qparse(value):
    """Parse a scalar from JSON-ish input: int, or "p/q" / "p" strings."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational scalar: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return qnorm(value)
    if isinstance(value, str):
        try:
            return qnorm(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {value!r}: {exc}") from None
    if isinstance(value, float):
        raise ValueError(
            f"floats are not accepted (got {value!r}); write exact rationals like \"5/2\""
        )
    raise ValueError(f"not a rational scalar: {value!r}")


def qstr(x) -> str:
    x = qnorm(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def qjson(x):
    """JSON form: bare int when integral, "p/q" string otherwise."""
    x = qnorm(x)
    return x if isinstance(x, int) else qstr(x)


# vectors are plain tuples of scalars

def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    if c == 1:
        return tuple(v)
    return tuple(qnorm(c * a) for a in v)


def vzero(n: int):
    return (0,) * n


def viszero(v) -> bool:
    return all(a == 0 for a in v)


def rref(rows: Iterable[Sequence]) -> tuple[list[tuple], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != 1:
            inv = 1 / Fraction(pv)
            m[r] = [qnorm(inv * a) for a in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row = m[r]
                m[i] = [qnorm(a - f * b) for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def kernel_basis(rows: Iterable[Sequence], ncols: int) -> list[tuple]:
    """Basis of the null space of the matrix with the given rows."""
    red, pivots = rref(rows)
    pivset = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = qnorm(-red[i][fc])
        basis.append(tuple(v))
    return basis


class MatrixQ:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols: int | None = None):
        rws = tuple(tuple(qnorm(x) for x in r) for r in rows)
        self.rows = rws
        self.nrows = len(rws)
        if rws:
            widths = {len(r) for r in rws}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
            if ncols is not None and ncols != self.ncols:
                raise ValueError("ncols does not match rows")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs explicit ncols")
            self.ncols = ncols

    @staticmethod
    def identity(n: int) -> "MatrixQ":
        return MatrixQ([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @staticmethod
    def zeros(n: int, m: int) -> "MatrixQ":
        return MatrixQ([[0] * m for _ in range(n)], ncols=m)

    @staticmethod
    def diagonal(entries) -> "MatrixQ":
        es = [qnorm(e) for e in entries]
        n = len(es)
        return MatrixQ([[es[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixQ)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(qstr(x) for x in r) for r in self.rows)
        return f"MatrixQ[{self.nrows}x{self.ncols}: {body}]"

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return MatrixQ(
            [vadd(a, b) for a, b in zip(self.rows, other.rows)], ncols=self.ncols
        )

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return MatrixQ(
            [vsub(a, b) for a, b in zip(self.rows, other.rows)], ncols=self.ncols
        )

    def __neg__(self) -> "MatrixQ":
        return MatrixQ([vscale(-1, r) for r in self.rows], ncols=self.ncols)

    def scale(self, c) -> "MatrixQ":
        return MatrixQ([vscale(c, r) for r in self.rows], ncols=self.ncols)

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            if cols:
                out.append([qnorm(sum(a * b for a, b in zip(r, c))) for c in cols])
            else:
                out.append([])
        return MatrixQ(out, ncols=other.ncols)

    def apply(self, v) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(qnorm(sum(a * b for a, b in zip(r, v))) for r in self.rows)

    def transpose(self) -> "MatrixQ":
        return MatrixQ(list(zip(*self.rows)) if self.rows else [], ncols=self.nrows)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of non-square matrix")
        return qnorm(sum(self.rows[i][i] for i in range(self.nrows)))

    def inverse(self) -> "MatrixQ":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = [list(self.rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
        red, pivots = rref(aug)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return MatrixQ([r[n:] for r in red], ncols=n)

    def is_invertible(self) -> bool:
        _, pivots = rref(self.rows)
        return self.is_square() and len(pivots) == self.nrows

    def rank(self) -> int:
        _, pivots = rref(self.rows)
        return len(pivots)


def char_poly(mat: MatrixQ) -> tuple:
    """Characteristic polynomial det(tI - M), coefficients descending, monic.

    Faddeev-LeVerrier: exact, division only by 1..n.
    """
    if not mat.is_square():
        raise ValueError("char_poly of non-square matrix")
    n = mat.nrows
    coeffs = [1]
    acc = MatrixQ.identity(n)
    for k in range(1, n + 1):
        acc = mat @ acc
        ck = qnorm(Fraction(-acc.trace(), k))
        coeffs.append(ck)
        if k < n:
            acc = acc + MatrixQ.identity(n).scale(ck)
    return tuple(coeffs)


def _divisors(n: int) -> list[int]:
    # positive divisors by trial division; n >= 1
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    out.sort()
    return out


def rational_roots(coeffs: Sequence) -> dict:
    """All rational roots (with multiplicity) of a polynomial over Q.

    Coefficients descending, leading coefficient nonzero. Complete: a root
    p/q in lowest terms of an integer polynomial has p | constant term and
    q | leading coefficient, and every candidate is verified by exact Horner
    with deflation for multiplicities.
    """
    cs = [qnorm(c) for c in coeffs]
    if not cs or cs[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    roots: dict = {}
    while len(cs) > 1 and cs[-1] == 0:
        roots[0] = roots.get(0, 0) + 1
        cs.pop()
    if len(cs) == 1:
        return roots
    den = 1
    for c in cs:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    lead_divs = _divisors(abs(ints[0]))
    const_divs = _divisors(abs(ints[-1]))
    cands = set()
    for p in const_divs:
        for q in lead_divs:
            cand = qnorm(Fraction(p, q))
            cands.add(cand)
            cands.add(-cand)
    cur: list = list(ints)
    for cand in sorted(cands, key=lambda x: (Fraction(x).denominator, abs(x), x < 0)):
        while len(cur) > 1:
            # exact synthetic division at cand
            acc = cur[0]
            quot = [cur[0]]
            for c in cur[1:]:
                acc = qnorm(acc * cand + c)
                quot.append(acc)
            if acc != 0:
                break
            roots[cand] = roots.get(cand, 0) + 1
            cur = quot[:-1]
    return roots


def rational_spectrum(mat: MatrixQ) -> dict:
    """Rational eigenvalues with algebraic multiplicities."""
    return rational_roots(char_poly(mat))


def eigenspace(mat: MatrixQ, lam) -> "SubspaceQ":
    n = mat.nrows
    shifted = mat - MatrixQ.identity(n).scale(lam)
    return SubspaceQ(n, kernel_basis(shifted.rows, n))


class SubspaceQ:
    """Subspace of Q^n in canonical form: basis rows are the RREF.

    Equal subspaces compare (and hash) equal regardless of the spanning set
    they were built from.
    """

    __slots__ = ("ambient", "basis", "_pivots")

    def __init__(self, ambient: int, vectors: Iterable = ()):
        rows = [v for v in vectors if not viszero(v)]
        for v in rows:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        red, pivots = rref(rows)
        self.ambient = ambient
        self.basis = tuple(red)
        self._pivots = tuple(pivots)

    @staticmethod
    def zero(ambient: int) -> "SubspaceQ":
        return SubspaceQ(ambient)

    @staticmethod
    def full(ambient: int) -> "SubspaceQ":
        return SubspaceQ(ambient, MatrixQ.identity(ambient).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceQ)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        rows = "; ".join(" ".join(qstr(x) for x in r) for r in self.basis)
        return f"SubspaceQ[dim {self.dim} of Q^{self.ambient}: {rows}]"

    def coordinates(self, v):
        """Coefficients of v in the canonical basis, or None if v is outside.

        RREF makes this a read-off: the coefficient of basis row i is the
        entry of v at that row's pivot column.
        """
        if len(v) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        coeffs = tuple(v[p] for p in self._pivots)
        residual = list(v)
        for c, row in zip(coeffs, self.basis):
            if c != 0:
                residual = [qnorm(a - c * b) for a, b in zip(residual, row)]
        if any(a != 0 for a in residual):
            return None
        return coeffs

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_space(self, other: "SubspaceQ") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sum_with(self, other: "SubspaceQ") -> "SubspaceQ":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return SubspaceQ(self.ambient, list(self.basis) + list(other.basis))

    @staticmethod
    def sum_of(spaces: Sequence["SubspaceQ"], ambient: int) -> "SubspaceQ":
        vecs: list = []
        for s in spaces:
            if s.ambient != ambient:
                raise ValueError("ambient mismatch")
            vecs.extend(s.basis)
        return SubspaceQ(ambient, vecs)

    def intersect(self, other: "SubspaceQ") -> "SubspaceQ":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        r, s = self.dim, other.dim
        if r == 0 or s == 0:
            return SubspaceQ.zero(self.ambient)
        rows = []
        for i in range(self.ambient):
            rows.append(
                [self.basis[j][i] for j in range(r)]
                + [qnorm(-other.basis[j][i]) for j in range(s)]
            )
        vecs = []
        for k in kernel_basis(rows, r + s):
            v = [0] * self.ambient
            for j in range(r):
                if k[j] != 0:
                    kj = k[j]
                    v = [qnorm(a + kj * b) for a, b in zip(v, self.basis[j])]
            vecs.append(tuple(v))
        return SubspaceQ(self.ambient, vecs)

    @staticmethod
    def is_direct(spaces: Sequence["SubspaceQ"], ambient: int, equals: "SubspaceQ | None" = None) -> bool:
        """Whether the sum of the spaces is direct (and optionally equals a target)."""
        total = SubspaceQ.sum_of(spaces, ambient)
        if total.dim != sum(s.dim for s in spaces):
            return False
        if equals is not None and total != equals:
            return False
        return True


# -- sparse vectors ----------------------------------------------------
#
# Hot loops in the axiom checkers use plain dicts {index: coeff} with no
# stored zeros.  Mutating accumulators in place keeps the instance count
# of Fraction objects down.

SVec = dict


def sv_axpy(acc: dict, scalar, vec: dict) -> None:
    """acc += scalar * vec, in place, dropping entries that cancel."""
    if scalar == 0 or not vec:
        return
    for idx, coeff in vec.items():
        new = qnorm(acc.get(idx, 0) + scalar * coeff)
        if new == 0:
            acc.pop(idx, None)
        else:
            acc[idx] = new


def sv_scale(vec: dict, scalar) -> dict:
    if scalar == 0:
        return {}
    return {idx: qnorm(scalar * coeff) for idx, coeff in vec.items()}


def sv_add(u: dict, v: dict) -> dict:
    out = dict(u)
    sv_axpy(out, 1, v)
    return out


def sv_sub(u: dict, v: dict) -> dict:
    out = dict(u)
    sv_axpy(out, -1, v)
    return out


def sv_from_seq(seq) -> dict:
    return {i: qnorm(c) for i, c in enumerate(seq) if c != 0}


def sv_to_tuple(vec: dict, n: int) -> tuple:
    out = [0] * n
    for idx, coeff in vec.items():
        out[idx] = coeff
    return tuple(out)


def mat_columns_sv(mat: "MatrixQ") -> list:
    """Columns of a matrix as sparse vectors."""
    cols = [{} for _ in range(mat.ncols)]
    for i, row in enumerate(mat.rows):
        for j, coeff in enumerate(row):
            if coeff != 0:
                cols[j][i] = coeff
    return cols


def mat_apply_sv(cols: list, vec: dict) -> dict:
    """Apply a matrix, given as sparse columns, to a sparse vector."""
    out: dict = {}
    for idx, coeff in vec.items():
        sv_axpy(out, coeff, cols[idx])
    return out
