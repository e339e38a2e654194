"""Representations of Lie algebras and one-dimensional characters."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from itertools import combinations
from typing import Sequence

from .errors import ModuleMismatch, NotAnIdeal
from .exactlinalg import Q, RatMatrix, Vector, fmt, unit_vec
from .liealg import LieAlgebra, Subspace, ad_basis, subalgebra


class LieModule:
    """A representation: ``rho[i]`` is the matrix of the i-th basis element."""

    def __init__(self, algebra: LieAlgebra, rho: Sequence[RatMatrix], check: bool = True):
        self.algebra = algebra
        self.rho = tuple(rho)
        if len(self.rho) != algebra.dim:
            raise ModuleMismatch("need one matrix per basis element")
        self.dim = self.rho[0].nrows if self.rho else 0
        for m in self.rho:
            if m.shape != (self.dim, self.dim):
                raise ModuleMismatch("module matrices have inconsistent shapes")
        if check:
            self.validate()

    def validate(self) -> None:
        L = self.algebra
        for i, j in combinations(range(L.dim), 2):
            lhs = self.act(L.bracket_basis(i, j))
            if lhs != self.rho[i].commutator(self.rho[j]):
                raise ModuleMismatch(f"rho fails to be a homomorphism on the pair {(i, j)}")

    def act(self, v) -> RatMatrix:
        """Matrix of a general element, given as a dense vector or a sparse dict."""
        items = v.items() if isinstance(v, dict) else enumerate(v)
        out = RatMatrix.zeros(self.dim)
        for i, a in items:
            if a:
                out = out + self.rho[i].scale(a)
        return out

    def restrict(self, U: Subspace) -> "LieModule":
        """Restriction to a subalgebra, in the basis ``U.basis``."""
        return LieModule(subalgebra(U), [self.act(b) for b in U.basis], check=False)

    def is_trivial(self) -> bool:
        return all(m.is_zero() for m in self.rho)

    def __repr__(self) -> str:
        return f"LieModule(dim={self.dim}, algebra_dim={self.algebra.dim})"


def trivial_module(L: LieAlgebra) -> LieModule:
    return LieModule(L, [RatMatrix.zeros(1) for _ in range(L.dim)], check=False)


def adjoint_module(L: LieAlgebra) -> LieModule:
    return LieModule(L, [ad_basis(L, i) for i in range(L.dim)], check=False)


def quotient_module(M: LieModule, vectors: Sequence[Sequence]) -> LieModule:
    """M / W for an invariant subspace W spanned by ``vectors``.

    The quotient basis is the images of the standard basis vectors at the
    non-pivot columns of W's echelon form.
    """
    from .exactlinalg import inverse, row_space

    W = row_space(vectors, M.dim) if vectors else []
    piv = [next(j for j, a in enumerate(w) if a) for w in W]
    comp = [j for j in range(M.dim) if j not in set(piv)]
    P = RatMatrix.from_columns(list(W) + [unit_vec(M.dim, j) for j in comp], nrows=M.dim)
    Pinv = inverse(P)
    k = len(W)
    mats = []
    for m in M.rho:
        conj = Pinv @ m @ P
        for i in range(k, M.dim):
            if any(conj[i, j] for j in range(k)):
                raise NotAnIdeal("subspace is not invariant under the module action")
        mats.append(conj.submatrix(list(range(k, M.dim)), list(range(k, M.dim))))
    return LieModule(M.algebra, mats, check=False)


@total_ordering
class Character:
    """A rational linear functional vanishing on the derived subalgebra."""

    __slots__ = ("algebra", "values")

    def __init__(self, algebra: LieAlgebra, values: Sequence, check: bool = True):
        self.algebra = algebra
        self.values: Vector = tuple(Q(a) for a in values)
        if len(self.values) != algebra.dim:
            raise ModuleMismatch("character needs one value per basis element")
        if check:
            for i, j in combinations(range(algebra.dim), 2):
                if self(algebra.bracket_basis(i, j)):
                    raise ModuleMismatch(f"not a character: nonzero on [x{i + 1},x{j + 1}]")

    @classmethod
    def zero(cls, L: LieAlgebra) -> "Character":
        return cls(L, [0] * L.dim, check=False)

    def __call__(self, v) -> Fraction:
        items = v.items() if isinstance(v, dict) else enumerate(v)
        return sum((self.values[i] * a for i, a in items if a), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.values == other.values

    def __lt__(self, other: "Character") -> bool:
        return self.values < other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __add__(self, other: "Character") -> "Character":
        return Character(self.algebra, [a + b for a, b in zip(self.values, other.values)], check=False)

    def __neg__(self) -> "Character":
        return Character(self.algebra, [-a for a in self.values], check=False)

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def scale(self, c) -> "Character":
        return Character(self.algebra, [Q(c) * a for a in self.values], check=False)

    def is_zero(self) -> bool:
        return not any(self.values)

    def restrict(self, U: Subspace) -> "Character":
        return Character(subalgebra(U), [self(b) for b in U.basis], check=False)

    def module(self) -> LieModule:
        return LieModule(self.algebra, [RatMatrix([[a]]) for a in self.values], check=False)

    def to_strings(self) -> list[str]:
        return [fmt(a) for a in self.values]

    def __repr__(self) -> str:
        return f"Character({', '.join(self.to_strings())})"


def character_sum(L: LieAlgebra, chars: Sequence[Character]) -> Character:
    vals = [Fraction(0)] * L.dim
    for c in chars:
        vals = [a + b for a, b in zip(vals, c.values)]
    return Character(L, vals, check=False)
