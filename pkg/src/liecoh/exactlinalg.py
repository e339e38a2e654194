"""Exact linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` and never rounds.
Matrices are stored as sparse rows (``dict`` column -> Fraction), which keeps
the large but very sparse coboundary matrices cheap while still being
convenient for the small ad-matrices of a Lie algebra.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NonSquare, ZeroPolynomial

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

# sparse path kicks in for matrices with at most this density above this size
SPARSE_DENSITY = 0.05
SPARSE_MIN_SIZE = 200


def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fmt(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` or ``"p"``."""
    return str(Fraction(x))


def vec(values: Iterable) -> Vector:
    return tuple(Q(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vec(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def integer_normalize(u: Sequence) -> Vector:
    """Scale to coprime integers with a positive leading entry."""
    nz = [a for a in u if a != 0]
    if not nz:
        return tuple(Fraction(a) for a in u)
    den = lcm(*(Fraction(a).denominator for a in nz))
    ints = [int(Fraction(a) * den) for a in u]
    g = gcd(*ints)
    if nz[0] < 0:
        g = -g
    return tuple(Fraction(a // g) for a in ints)


class RatMatrix:
    """Immutable rational matrix backed by sparse rows."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: int | None = None):
        dense = [list(r) for r in rows]
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        sparse = []
        for r in dense:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
            sparse.append({j: Q(a) for j, a in enumerate(r) if a != 0})
        self.nrows = len(dense)
        self.ncols = ncols
        self._rows = sparse

    @classmethod
    def from_sparse(cls, nrows: int, ncols: int, rows: Sequence[dict]) -> "RatMatrix":
        m = cls.__new__(cls)
        m.nrows = nrows
        m.ncols = ncols
        m._rows = [{j: Q(a) for j, a in r.items() if a != 0} for r in rows]
        if len(m._rows) != nrows:
            raise ValueError("row count mismatch")
        return m

    @classmethod
    def _wrap(cls, nrows: int, ncols: int, rows: list) -> "RatMatrix":
        # trusted constructor: rows already hold nonzero Fractions only
        m = cls.__new__(cls)
        m.nrows = nrows
        m.ncols = ncols
        m._rows = rows
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "RatMatrix":
        if ncols is None:
            ncols = nrows
        return cls._wrap(nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._wrap(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        return cls._wrap(n, n, [({i: Q(a)} if a != 0 else {}) for i, a in enumerate(entries)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "RatMatrix":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        rows: list[dict] = [{} for _ in range(nrows)]
        for j, c in enumerate(cols):
            for i, a in enumerate(c):
                if a != 0:
                    rows[i][j] = Q(a)
        return cls._wrap(nrows, len(cols), rows)

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._rows[i].get(j, Fraction(0))

    def sparse_row(self, i: int) -> dict:
        return dict(self._rows[i])

    def row(self, i: int) -> Vector:
        r = self._rows[i]
        return tuple(r.get(j, Fraction(0)) for j in range(self.ncols))

    def col(self, j: int) -> Vector:
        return tuple(r.get(j, Fraction(0)) for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def density(self) -> float:
        size = self.nrows * self.ncols
        return self.nnz() / size if size else 0.0

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(not r for r in self._rows)

    def trace(self) -> Fraction:
        self._need_square()
        return sum((r.get(i, Fraction(0)) for i, r in enumerate(self._rows)), Fraction(0))

    def _need_square(self):
        if self.nrows != self.ncols:
            raise NonSquare(f"matrix of shape {self.shape} is not square")

    # -- arithmetic ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(fmt(a) for a in self.row(i)) + "]" for i in range(self.nrows))
        return f"RatMatrix([{body}])"

    def _combine(self, other: "RatMatrix", sign: int) -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for j, v in b.items():
                s = r.get(j, Fraction(0)) + sign * v
                if s:
                    r[j] = s
                else:
                    r.pop(j, None)
            rows.append(r)
        return RatMatrix._wrap(self.nrows, self.ncols, rows)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._wrap(self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self._rows])

    def scale(self, c) -> "RatMatrix":
        c = Q(c)
        if c == 0:
            return RatMatrix.zeros(self.nrows, self.ncols)
        return RatMatrix._wrap(self.nrows, self.ncols, [{j: c * v for j, v in r.items()} for r in self._rows])

    def __rmul__(self, c) -> "RatMatrix":
        return self.scale(c)

    def __mul__(self, c) -> "RatMatrix":
        if isinstance(c, RatMatrix):
            return self @ c
        return self.scale(c)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        rows = []
        for r in self._rows:
            acc: dict = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            rows.append({j: v for j, v in acc.items() if v})
        return RatMatrix._wrap(self.nrows, other.ncols, rows)

    def apply(self, v: Sequence) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * v[j] for j, a in r.items()), Fraction(0)) for r in self._rows)

    def transpose(self) -> "RatMatrix":
        rows: list[dict] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, a in r.items():
                rows[j][i] = a
        return RatMatrix._wrap(self.ncols, self.nrows, rows)

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __pow__(self, k: int) -> "RatMatrix":
        self._need_square()
        result = RatMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def commutator(self, other: "RatMatrix") -> "RatMatrix":
        return self @ other - other @ self

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row mismatch in hstack")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            r.update({j + self.ncols: v for j, v in b.items()})
            rows.append(r)
        return RatMatrix._wrap(self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in vstack")
        return RatMatrix._wrap(self.nrows + other.nrows, self.ncols,
                               [dict(r) for r in self._rows] + [dict(r) for r in other._rows])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        pos = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rows:
            out.append({pos[j]: a for j, a in self._rows[i].items() if j in pos})
        return RatMatrix._wrap(len(rows), len(cols), out)


# ---------------------------------------------------------------------------
# elimination


def _int_rows(rows: Iterable[dict]) -> list[dict]:
    out = []
    for r in rows:
        if not r:
            continue
        den = lcm(*(a.denominator for a in r.values()))
        ir = {j: int(a * den) for j, a in r.items()}
        g = gcd(*ir.values())
        if g != 1:
            ir = {j: a // g for j, a in ir.items()}
        out.append(ir)
    return out


def _rank_sparse(rows: list[dict]) -> int:
    # forward elimination keyed on leading column; short rows first limits fill-in
    pivots: dict[int, dict] = {}
    for row in sorted(rows, key=len):
        row = dict(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {j: a * v for j, v in row.items()}
            for j, v in piv.items():
                s = new.get(j, 0) - b * v
                if s:
                    new[j] = s
                else:
                    del new[j]
            if new:
                g = gcd(*new.values())
                if g != 1:
                    new = {j: v // g for j, v in new.items()}
            row = new
    return len(pivots)


def _rank_dense(rows: list[dict], ncols: int) -> int:
    mat = [[r.get(j, 0) for j in range(ncols)] for r in rows]
    rank = 0
    nrows = len(mat)
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        a = prow[c]
        for i in range(rank + 1, nrows):
            b = mat[i][c]
            if not b:
                continue
            g = gcd(a, b)
            aa, bb = a // g, b // g
            r = mat[i]
            new = [aa * x - bb * y for x, y in zip(r, prow)]
            g = gcd(*new)
            if g > 1:
                new = [x // g for x in new]
            mat[i] = new
        rank += 1
        if rank == nrows:
            break
    return rank


def uses_sparse_path(M: RatMatrix) -> bool:
    return min(M.nrows, M.ncols) > SPARSE_MIN_SIZE and M.density() <= SPARSE_DENSITY


def rank(M: RatMatrix, method: str = "auto") -> int:
    """Rank over the rationals (exact)."""
    rows = _int_rows(M._rows)
    if not rows:
        return 0
    if method == "auto":
        method = "sparse" if uses_sparse_path(M) else "dense"
    if method == "sparse":
        return _rank_sparse(rows)
    if method == "dense":
        return _rank_dense(rows, M.ncols)
    raise ValueError(f"unknown rank method {method!r}")


def rref(M: RatMatrix) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows (sparse, pivot entry 1) and their pivot columns.
    Pivots are taken column by column, using the first row that has a nonzero
    entry in that column.
    """
    rows = [dict(r) for r in M._rows if r]
    pivrows: list[dict] = []
    pivcols: list[int] = []
    remaining = rows
    for c in range(M.ncols):
        idx = next((k for k, r in enumerate(remaining) if c in r), None)
        if idx is None:
            continue
        prow = remaining.pop(idx)
        inv = 1 / prow[c]
        prow = {j: v * inv for j, v in prow.items()}
        for k, r in enumerate(remaining):
            f = r.get(c)
            if f:
                remaining[k] = _axpy(r, prow, -f)
        for k, r in enumerate(pivrows):
            f = r.get(c)
            if f:
                pivrows[k] = _axpy(r, prow, -f)
        pivrows.append(prow)
        pivcols.append(c)
        remaining = [r for r in remaining if r]
        if not remaining:
            break
    return pivrows, pivcols


def _axpy(r: dict, p: dict, f) -> dict:
    out = dict(r)
    for j, v in p.items():
        s = out.get(j, 0) + f * v
        if s:
            out[j] = s
        else:
            out.pop(j, None)
    return out


def kernel_basis(M: RatMatrix) -> list[Vector]:
    """Basis of the right null space, one vector per free column (ascending).

    Each vector is scaled to coprime integers with a positive leading entry.
    """
    pivrows, pivcols = rref(M)
    pivset = set(pivcols)
    out = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * M.ncols
        v[f] = Fraction(1)
        for r, pc in zip(pivrows, pivcols):
            a = r.get(f)
            if a:
                v[pc] = -a
        out.append(integer_normalize(v))
    return out


def row_space(vectors: Sequence[Sequence], n: int | None = None) -> list[Vector]:
    """Canonical basis of the span: reduced echelon rows, integer-cleared."""
    vectors = list(vectors)
    if n is None:
        n = len(vectors[0]) if vectors else 0
    if not vectors:
        return []
    pivrows, _ = rref(RatMatrix(vectors, ncols=n))
    return [integer_normalize(tuple(r.get(j, Fraction(0)) for j in range(n))) for r in pivrows]


def inverse(M: RatMatrix) -> RatMatrix:
    M._need_square()
    n = M.nrows
    pivrows, pivcols = rref(M.hstack(RatMatrix.identity(n)))
    if pivcols[:n] != list(range(n)) or len(pivcols) < n:
        raise ValueError("matrix is singular")
    rows = [{j - n: v for j, v in r.items() if j >= n} for r in pivrows[:n]]
    return RatMatrix._wrap(n, n, rows)


def solve(M: RatMatrix, b: Sequence) -> Vector | None:
    """One solution of ``M x = b`` (free variables zero) or None."""
    aug = M.hstack(RatMatrix.from_columns([b], nrows=M.nrows))
    pivrows, pivcols = rref(aug)
    if pivcols and pivcols[-1] == M.ncols:
        return None
    x = [Fraction(0)] * M.ncols
    for r, pc in zip(pivrows, pivcols):
        x[pc] = r.get(M.ncols, Fraction(0))
    return tuple(x)


# ---------------------------------------------------------------------------
# polynomials


class RatPolynomial:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "RatPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "RatPolynomial":
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no monic form")
        lc = self.lead()
        return RatPolynomial(a / lc for a in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and a == 1:
                terms.append(mono)
            elif mono and a == -1:
                terms.append("-" + mono)
            else:
                terms.append(fmt(a) + ("*" + mono if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")

    def __add__(self, other: "RatPolynomial") -> "RatPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "RatPolynomial":
        return RatPolynomial(-a for a in self.coeffs)

    def __sub__(self, other: "RatPolynomial") -> "RatPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RatPolynomial":
        if not isinstance(other, RatPolynomial):
            return RatPolynomial(Q(other) * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RatPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPolynomial(out)

    __rmul__ = __mul__

    def divmod(self, other: "RatPolynomial") -> tuple["RatPolynomial", "RatPolynomial"]:
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead()
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lc
            quo[k - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return RatPolynomial(quo), RatPolynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "RatPolynomial") -> "RatPolynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "RatPolynomial") -> "RatPolynomial":
        return self.divmod(other)[1]

    def derivative(self) -> "RatPolynomial":
        return RatPolynomial(k * a for k, a in enumerate(self.coeffs) if k > 0)

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def eval_matrix(self, M: RatMatrix) -> RatMatrix:
        M._need_square()
        n = M.nrows
        acc = RatMatrix.zeros(n)
        eye = RatMatrix.identity(n)
        for a in reversed(self.coeffs):
            acc = acc @ M + eye.scale(a)
        return acc


def poly_gcd(a: RatPolynomial, b: RatPolynomial) -> RatPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def char_poly(M: RatMatrix) -> RatPolynomial:
    """Monic det(xI - M) via the Faddeev-LeVerrier recurrence."""
    M._need_square()
    n = M.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    eye = RatMatrix.identity(n)
    Mk = RatMatrix.zeros(n)
    for k in range(1, n + 1):
        Mk = M @ Mk + eye.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(M @ Mk).trace() / k
    return RatPolynomial(coeffs)


def squarefree_radical(p: RatPolynomial) -> RatPolynomial:
    """p / gcd(p, p'), made monic."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if p.degree == 0:
        return RatPolynomial([1])
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _integer_coeffs(p: RatPolynomial) -> list[int]:
    den = lcm(*(a.denominator for a in p.coeffs))
    ints = [int(a * den) for a in p.coeffs]
    g = gcd(*ints)
    return [a // g for a in ints]


def rational_roots(p: RatPolynomial) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial, ascending."""
    if p.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    roots = []
    coeffs = list(p.coeffs)
    if coeffs and coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    q = RatPolynomial(coeffs)
    if q.degree >= 1:
        q = squarefree_radical(q)
        ints = _integer_coeffs(q)
        a0, an = ints[0], ints[-1]
        for num in _divisors(a0):
            for den in _divisors(an):
                for s in (1, -1):
                    r = Fraction(s * num, den)
                    if r not in roots and q(r) == 0:
                        roots.append(r)
    return sorted(roots)


def rational_eigenvalues(M: RatMatrix) -> tuple[tuple[Fraction, ...], bool]:
    """All rational eigenvalues with algebraic multiplicity, and a split flag."""
    p = char_poly(M)
    out = []
    for r in rational_roots(p):
        lin = RatPolynomial([-r, 1])
        while True:
            quo, rem = p.divmod(lin)
            if not rem.is_zero():
                break
            out.append(r)
            p = quo
    return tuple(out), len(out) == M.nrows


def semisimple_part(M: RatMatrix) -> RatMatrix:
    """Semisimple part of the Jordan-Chevalley decomposition.

    Newton iteration S <- S - r(S) r'(S)^{-1} on the squarefree radical r of
    the characteristic polynomial. Needs no factorization, so it works for
    non-split matrices too.
    """
    M._need_square()
    r = squarefree_radical(char_poly(M))
    dr = r.derivative()
    S = M
    for _ in range(M.nrows + 2):
        rS = r.eval_matrix(S)
        if rS.is_zero():
            return S
        S = S - rS @ inverse(dr.eval_matrix(S))
    raise ArithmeticError("Newton iteration for the semisimple part did not converge")


def nilpotent_part(M: RatMatrix) -> RatMatrix:
    return M - semisimple_part(M)


def is_nilpotent_matrix(M: RatMatrix) -> bool:
    M._need_square()
    return (M ** M.nrows).is_zero() if M.nrows else True


def generalized_eigenspace(M: RatMatrix, lam) -> list[Vector]:
    """Basis of ker (M - lam I)^n."""
    M._need_square()
    n = M.nrows
    A = M - RatMatrix.identity(n).scale(Q(lam))
    return kernel_basis(A ** n)


def restrict(M: RatMatrix, basis: Sequence[Sequence]) -> RatMatrix:
    """Matrix of M on the invariant subspace spanned by ``basis`` (in that basis)."""
    if not basis:
        return RatMatrix.zeros(0)
    B = RatMatrix.from_columns(basis)
    cols = []
    for b in basis:
        x = solve(B, M.apply(b))
        if x is None:
            raise ValueError("subspace is not invariant under the matrix")
        cols.append(x)
    return RatMatrix.from_columns(cols, nrows=len(basis))
