"""Named algebras: the worked examples, Borel subalgebras, filiform families
and seeded random toral extensions of nilpotent algebras."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .errors import NonSplit
from .exactlinalg import RatMatrix, is_nilpotent_matrix, kernel_basis, nilpotent_part, rank
from .filiform import filiform, s_n_algebra, s_n_derivations
from .liealg import (
    LieAlgebra,
    abelian,
    derivation_space,
    diagonal_derivations,
    direct_sum,
    heisenberg3,
    semidirect,
    validate,
)
from .rootsys import borel_algebra, borel_nilradical, root_system


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], LieAlgebra]
    params: dict = field(default_factory=dict)
    note: str = ""
    # a x| H presentation by commuting semisimple derivations, when known
    torus: Callable[[], tuple[list[RatMatrix], LieAlgebra]] | None = None


# ---------------------------------------------------------------------------
# worked examples


def sec4_1() -> LieAlgebra:
    """[u,x]=x, [u,y]=y, [u,z]=2z, [x,y]=z."""
    return LieAlgebra(4, {(0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 2}, (1, 2): {3: 1}}, ["u", "x", "y", "z"])


def two_dim_nonabelian() -> LieAlgebra:
    return LieAlgebra(2, {(0, 1): {1: 1}}, ["u", "x"])


def sec4_2(D: Sequence[Sequence]) -> LieAlgebra:
    """D x| h with h abelian and D an arbitrary rational operator."""
    M = RatMatrix([[Fraction(a) for a in row] for row in D])
    return semidirect([M], abelian(M.nrows), ["D"] + [f"h{i + 1}" for i in range(M.nrows)])


def sec4_3_torus(weights: Sequence[Sequence[int]]) -> tuple[list[RatMatrix], LieAlgebra]:
    n = len(weights[0])
    return [RatMatrix.diag(row) for row in weights], abelian(n)


def sec4_3(weights: Sequence[Sequence[int]]) -> LieAlgebra:
    """a x| h with h abelian and a spanned by diagonal operators (one row of weights each)."""
    A, h = sec4_3_torus(weights)
    r = len(A)
    return semidirect(A, h, [f"D{a + 1}" for a in range(r)] + [f"h{i + 1}" for i in range(h.dim)])


# ---------------------------------------------------------------------------
# seeded random toral extensions


def free_2step(k: int = 3) -> LieAlgebra:
    """Free 2-step nilpotent algebra on k generators."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    table = {(i, j): {k + t: 1} for t, (i, j) in enumerate(pairs)}
    labels = [f"x{i + 1}" for i in range(k)] + [f"y{i + 1}{j + 1}" for i, j in pairs]
    return LieAlgebra(k + len(pairs), table, labels)


def _seeds() -> list[LieAlgebra]:
    return [
        heisenberg3(),
        direct_sum(heisenberg3(), abelian(1)),
        filiform(2),
        filiform(3),
        free_2step(3),
        direct_sum(heisenberg3(), heisenberg3()),
        abelian(3),
    ]


def _combo(mats: Sequence[RatMatrix], coeffs: Sequence, n: int) -> RatMatrix:
    acc = RatMatrix.zeros(n)
    for c, M in zip(coeffs, mats):
        if c:
            acc = acc + M.scale(c)
    return acc


def _random_nilpotent_commuting(rng: random.Random, H: LieAlgebra, T: RatMatrix) -> RatMatrix | None:
    """A nonzero nilpotent derivation of H commuting with T, if one is found."""
    basis = derivation_space(H)
    comms = [D.commutator(T) for D in basis]
    rows = [[c[i, j] for c in comms] for i in range(H.dim) for j in range(H.dim)]
    ders = [_combo(basis, c, H.dim) for c in kernel_basis(RatMatrix(rows, ncols=len(basis)))]
    for _ in range(32):
        C = RatMatrix.zeros(H.dim)
        for D in ders:
            C = C + D.scale(rng.randint(-1, 1))
        try:
            N = C if is_nilpotent_matrix(C) else nilpotent_part(C)
        except NonSplit:
            continue
        if not N.is_zero():
            return N
    return None


def random_toral_extension(seed: int) -> tuple[LieAlgebra, list[RatMatrix], LieAlgebra, bool]:
    """(algebra, derivations, nilpotent seed, has_nilpotent_part).

    A nilpotent seed is extended by one or two commuting rational diagonal
    derivations; for a single derivation a commuting nilpotent derivation
    may be added, so the extension is not toral on the nose.
    """
    rng = random.Random(seed)
    seeds = _seeds()
    H = seeds[rng.randrange(len(seeds))]
    diag = diagonal_derivations(H)
    r = 1 if len(diag) < 2 else rng.choice((1, 2))
    while True:
        A = []
        for _ in range(r):
            T = RatMatrix.zeros(H.dim)
            for D in diag:
                T = T + D.scale(rng.randint(-2, 2))
            A.append(T)
        flat = [[a for row in T.tolist() for a in row] for T in A]
        if rank(RatMatrix(flat)) == r:
            break
    with_nil = False
    if r == 1:
        N = _random_nilpotent_commuting(rng, H, A[0])
        if N is not None:
            A = [A[0] + N]
            with_nil = True
    G = semidirect(A, H)
    return G, A, H, with_nil


N_RANDOM = 10


# ---------------------------------------------------------------------------
# the catalog


SEC4_3_WEIGHTS = {
    "sec4_3_r1n3": ((1, 2, 3),),
    "sec4_3_r1n5": ((1, -1, 2, 0, 1),),
    "sec4_3_r2n4": ((1, 0, 1, 2), (0, 1, 1, -1)),
    "sec4_3_r2n5": ((1, 1, 0, 0, 2), (0, 1, 1, -1, 0)),
}

SEC4_2_OPERATORS = {
    "sec4_2_diag": ((1, 0, 0), (0, 2, 0), (0, 0, -1)),
    "sec4_2_jordan": ((1, 1, 0), (0, 1, 0), (0, 0, 2)),
    "sec4_2_nilpotent": ((0, 1, 0), (0, 0, 1), (0, 0, 0)),
}

BOREL_TYPES = ("A1", "A1xA1", "A2", "B2", "G2")


def _borel_torus(t: str):
    R = root_system(t)
    b = borel_algebra(R)
    n = borel_nilradical(R)
    r = R.rank
    from .exactlinalg import unit_vec
    from .liealg import ad_matrix

    A = []
    for i in range(r):
        M = ad_matrix(b, unit_vec(b.dim, i))
        A.append(M.submatrix(range(r, b.dim), range(r, b.dim)))
    return A, n


def _random_torus(seed: int):
    _, A, H, with_nil = random_toral_extension(seed)
    return (A, H) if not with_nil else None


@lru_cache(maxsize=None)
def _entries() -> dict[str, CatalogEntry]:
    out: dict[str, CatalogEntry] = {}

    def add(e: CatalogEntry) -> None:
        out[e.name] = e

    add(CatalogEntry("sec4_1", sec4_1, note="four-dimensional example with a character of vanishing cohomology"))
    add(CatalogEntry("two_dim_nonabelian", two_dim_nonabelian, note="[u,x]=x"))
    add(CatalogEntry("heisenberg3", heisenberg3, note="three-dimensional Heisenberg algebra"))
    for n in (1, 2, 3, 4):
        add(CatalogEntry(f"abelian{n}", lambda n=n: abelian(n), {"n": n}))
    for name, D in SEC4_2_OPERATORS.items():
        add(CatalogEntry(name, lambda D=D: sec4_2(D), {"D": [list(r) for r in D]}, "D x| abelian"))
    for name, W in SEC4_3_WEIGHTS.items():
        add(CatalogEntry(name, lambda W=W: sec4_3(W), {"weights": [list(r) for r in W]},
                         "diagonal torus x| abelian", torus=lambda W=W: sec4_3_torus(W)))
    for t in BOREL_TYPES:
        add(CatalogEntry(f"borel_{t}", lambda t=t: borel_algebra(root_system(t)), {"type": t},
                         "Borel subalgebra", torus=lambda t=t: _borel_torus(t)))
        if t != "A1":
            add(CatalogEntry(f"borel_nil_{t}", lambda t=t: borel_nilradical(root_system(t)), {"type": t},
                             "nilradical of the Borel subalgebra"))
    for n in range(1, 9):
        add(CatalogEntry(f"filiform{n}", lambda n=n: filiform(n), {"n": n}, "standard filiform"))
    for n in range(1, 8):
        add(CatalogEntry(f"s{n}", lambda n=n: s_n_algebra(n), {"n": n}, "two-dimensional torus x| filiform",
                         torus=lambda n=n: (list(s_n_derivations(n)), filiform(n))))
    for k in range(N_RANDOM):
        torus = None if random_toral_extension(k)[3] else (lambda k=k: _random_torus(k))
        add(CatalogEntry(f"random{k}", lambda k=k: random_toral_extension(k)[0], {"seed": k},
                         "toral extension of a nilpotent seed", torus=torus))
    return out


def catalog_names() -> list[str]:
    return sorted(_entries())


def catalog_entry(name: str) -> CatalogEntry:
    try:
        return _entries()[name]
    except KeyError:
        raise KeyError(f"unknown catalog algebra {name!r}") from None


_PARAM = re.compile(r"^(abelian|filiform|s)(\d+)$")


@lru_cache(maxsize=None)
def load(name: str) -> LieAlgebra:
    """Build a catalog algebra by name; ``abelianN``, ``filiformN`` and ``sN``
    accept any N within the size guard."""
    entries = _entries()
    if name in entries:
        L = entries[name].build()
    else:
        m = _PARAM.match(name)
        if not m:
            raise KeyError(f"unknown catalog algebra {name!r}")
        kind, n = m.group(1), int(m.group(2))
        L = {"abelian": abelian, "filiform": filiform, "s": s_n_algebra}[kind](n)
    validate(L)
    return L


def corpus_names() -> list[str]:
    """Split solvable catalog members of dimension at most 11."""
    return [n for n in catalog_names() if load(n).dim <= 11]
