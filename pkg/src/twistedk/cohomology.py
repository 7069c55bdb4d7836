"""Integral and mod-n simplicial cohomology with explicit cocycle generators.

Besides the groups themselves this module carries the coefficient-sequence
operations for ``0 -> Z -> Z -> Z/n -> 0``: reduction mod n, the Bockstein
``H^k(X; Z/n) -> H^{k+1}(X; Z)``, integral lifting, and order/torsion
bookkeeping.  Q/Z-coefficient statements are handled one modulus at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from functools import reduce
from typing import Optional, Sequence

from . import cache
from .complex import SimplicialComplex
from .groups import (
    INFINITE,
    INTEGERS,
    AbelianGroupPresentation,
    CoefficientRing,
    Lattice,
    subquotient,
    zero_group,
)
from .linalg import IntegerMatrix, lcm, smith_normal_form, solve_integer, solve_mod

__all__ = [
    "CohClass",
    "bockstein",
    "class_of",
    "class_order",
    "coboundary_witness",
    "cohomology",
    "element",
    "integral_lift",
    "reduce_mod",
    "torsion_subgroup",
    "zero_class",
]


def _coboundary_snf(K: SimplicialComplex, k: int):
    store = K.cache()
    key = ("snf", k)
    if key not in store:
        store[key] = smith_normal_form(K.coboundary_matrix(k))
    return store[key]


def _relations(K: SimplicialComplex, k: int) -> list:
    if k <= 0:
        return []
    return K.coboundary_matrix(k - 1).columns()


def _integral_presentation(K: SimplicialComplex, k: int) -> AbelianGroupPresentation:
    snf = _coboundary_snf(K, k)
    r = snf.rank
    nk = K.count(k)
    cycles = Lattice(nk, [snf.V.column(j) for j in range(r, nk)], [snf.V_inv.rows[j] for j in range(r, nk)])
    return subquotient(cycles, _relations(K, k), k, INTEGERS)


def _modular_presentation(K: SimplicialComplex, k: int, n: int) -> AbelianGroupPresentation:
    snf = _coboundary_snf(K, k)
    nk = K.count(k)
    diag = snf.diagonal
    # y = V^-1 c solves D y = 0 (mod n) iff y_i is a multiple of n / gcd(n, d_i)
    steps = [n // gcd(n, diag[i]) if i < len(diag) and diag[i] else 1 for i in range(nk)]
    L = reduce(lcm, steps, 1)
    basis = [[v * s for v in snf.V.column(i)] for i, s in enumerate(steps)]
    rows = [[v * (L // s) for v in snf.V_inv.rows[i]] for i, s in enumerate(steps)]
    cycles = Lattice(nk, basis, rows, L)
    relations = _relations(K, k) + [[n if j == i else 0 for j in range(nk)] for i in range(nk)]
    return subquotient(cycles, relations, k, CoefficientRing(n))


def cohomology(K: SimplicialComplex, k: int, ring: CoefficientRing = INTEGERS) -> AbelianGroupPresentation:
    """``H^k(K; ring)`` as a presentation with cocycle generators.

    Degrees above the dimension give the zero group.  Results are cached per
    (complex, degree, ring).
    """
    if k < 0:
        raise ValueError(f"cohomological degree must be >= 0, got {k}")
    if K.count(k) == 0:
        return zero_group(k, ring)

    def compute():
        if ring.is_integral:
            return _integral_presentation(K, k)
        return _modular_presentation(K, k, ring.modulus)

    return cache.get_or_compute((K.digest, k, str(ring)), compute)


@dataclass(frozen=True, eq=False)
class CohClass:
    """A cohomology class with its coordinates and a cocycle representative.

    Equality compares (complex, degree, ring, coordinates), i.e. classes, not
    cochains.
    """

    complex: SimplicialComplex
    degree: int
    ring: CoefficientRing
    coords: tuple
    representative: tuple

    @property
    def group(self) -> AbelianGroupPresentation:
        return cohomology(self.complex, self.degree, self.ring)

    @property
    def complex_id(self) -> str:
        return self.complex.digest

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "CohClass"):
        if not isinstance(other, CohClass):
            raise TypeError(f"cannot combine a class with {type(other).__name__}")
        if (self.complex, self.degree, self.ring) != (other.complex, other.degree, other.ring):
            raise ValueError("classes live in different cohomology groups")

    def __add__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        G = self.group
        rep = self.ring.reduce(a + b for a, b in zip(self.representative, other.representative))
        return CohClass(self.complex, self.degree, self.ring,
                        G.normalize([a + b for a, b in zip(self.coords, other.coords)]), rep)

    def __neg__(self) -> "CohClass":
        return (-1) * self

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def __rmul__(self, m: int) -> "CohClass":
        if not isinstance(m, int):
            return NotImplemented
        rep = self.ring.reduce(m * a for a in self.representative)
        return CohClass(self.complex, self.degree, self.ring, self.group.normalize([m * c for c in self.coords]), rep)

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return (self.complex, self.degree, self.ring, self.coords) == (
            other.complex, other.degree, other.ring, other.coords)

    def __hash__(self):
        return hash((self.complex.digest, self.degree, self.ring, self.coords))

    def __repr__(self):
        return f"CohClass(H^{self.degree}(; {self.ring}), coords={list(self.coords)})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "ring": str(self.ring),
            "group": self.group.describe(),
            "coords": list(self.coords),
            "representative": list(self.representative),
        }


def is_cocycle(K: SimplicialComplex, k: int, ring: CoefficientRing, values: Sequence[int]) -> bool:
    return not any(ring.reduce(K.coboundary(k, values)))


def class_of(K: SimplicialComplex, k: int, ring: CoefficientRing, values: Sequence[int]) -> CohClass:
    """The class of a cocycle; raises ``ValueError`` if it is not one."""
    values = ring.reduce(int(v) for v in values)
    if len(values) != K.count(k):
        raise ValueError(f"cochain of length {len(values)} for {K.count(k)} {k}-simplices")
    if not is_cocycle(K, k, ring, values):
        raise ValueError(f"cochain is not a {k}-cocycle over {ring}")
    G = cohomology(K, k, ring)
    return CohClass(K, k, ring, G.coordinates(values), values)


def element(K: SimplicialComplex, k: int, ring: CoefficientRing, coords: Sequence[int]) -> CohClass:
    """The class with the given coordinates, represented by the generator combination."""
    G = cohomology(K, k, ring)
    coords = G.normalize([int(c) for c in coords])
    rep = G.combination(coords) if G.ngens else (0,) * K.count(k)
    return CohClass(K, k, ring, coords, ring.reduce(rep))


def zero_class(K: SimplicialComplex, k: int, ring: CoefficientRing = INTEGERS) -> CohClass:
    return element(K, k, ring, [0] * cohomology(K, k, ring).ngens)


def generators(K: SimplicialComplex, k: int, ring: CoefficientRing = INTEGERS) -> list:
    G = cohomology(K, k, ring)
    return [element(K, k, ring, [int(i == j) for j in range(G.ngens)]) for i in range(G.ngens)]


def all_classes(K: SimplicialComplex, k: int, ring: CoefficientRing) -> list:
    """Every class of a finite cohomology group."""
    return [element(K, k, ring, c) for c in cohomology(K, k, ring).elements()]


def coboundary_witness(x: CohClass) -> Optional[list]:
    """A cochain ``b`` with ``coboundary(b) == x.representative`` in the ring, or None."""
    K, k = x.complex, x.degree
    if K.count(k) == 0:
        return []
    if k == 0:
        return [] if not any(x.representative) else None
    A = K.coboundary_matrix(k - 1)
    if A.ncols == 0:
        return None if any(x.representative) else []
    if x.ring.is_integral:
        return solve_integer(A, list(x.representative))
    return solve_mod(A, list(x.representative), x.ring.modulus)


def reduce_mod(x: CohClass, n: int) -> CohClass:
    """Image of an integral class under ``Z -> Z/n``."""
    if not x.ring.is_integral:
        raise ValueError("reduce_mod expects an integral class")
    return class_of(x.complex, x.degree, CoefficientRing(n), x.representative)


class BocksteinError(AssertionError):
    """The lifted coboundary was not divisible by n; the cochain complex is broken."""


def bockstein(y: CohClass) -> CohClass:
    """Connecting map ``H^k(X; Z/n) -> H^{k+1}(X; Z)``.

    Lift the representative to integers in ``[0, n)``, take the integral
    coboundary, and divide it by n.
    """
    if y.ring.is_integral:
        raise ValueError("bockstein expects a Z/n class")
    n = y.ring.modulus
    K, k = y.complex, y.degree
    lifted = [v % n for v in y.representative]
    image = K.coboundary(k, lifted)
    if any(v % n for v in image):
        raise BocksteinError("coboundary of the lift is not divisible by the modulus")
    return class_of(K, k + 1, INTEGERS, [v // n for v in image])


def integral_lift(y: CohClass) -> Optional[CohClass]:
    """An integral class reducing to ``y``, or None when ``y`` does not lift.

    Solves ``coboundary(z) = 0`` and ``z - coboundary(b) - n t = lift(y)``
    simultaneously for integer cochains ``z, b, t``.
    """
    if y.ring.is_integral:
        raise ValueError("integral_lift expects a Z/n class")
    n = y.ring.modulus
    K, k = y.complex, y.degree
    nk, nprev, nnext = K.count(k), K.count(k - 1) if k else 0, K.count(k + 1)
    if nk == 0:
        return zero_class(K, k)
    delta = K.coboundary_matrix(k)
    delta_prev = K.coboundary_matrix(k - 1) if k else IntegerMatrix.zeros(nk, 0)
    ncols = nk + nprev + nk
    rows = []
    for i in range(nnext):
        rows.append(list(delta.rows[i]) + [0] * (nprev + nk))
    for i in range(nk):
        row = [0] * ncols
        row[i] = 1
        for j in range(nprev):
            row[nk + j] = -delta_prev.rows[i][j]
        row[nk + nprev + i] = -n
        rows.append(row)
    system = IntegerMatrix(nnext + nk, ncols, rows)
    sol = solve_integer(system, [0] * nnext + [v % n for v in y.representative])
    if sol is None:
        return None
    return class_of(K, k, INTEGERS, sol[:nk])


def torsion_subgroup(G: AbelianGroupPresentation) -> AbelianGroupPresentation:
    if not G.ring.is_integral:
        raise ValueError("torsion_subgroup expects an integral presentation")
    return G.torsion_part()


def class_order(x: CohClass):
    """Least m >= 1 with m x = 0, or ``INFINITE``."""
    return x.group.element_order(x.coords)


def n_torsion(G: AbelianGroupPresentation, n: int) -> set:
    """Coordinates of every element killed by n (a finite set)."""
    T = G.torsion_part()
    f = G.free_rank
    return {
        (0,) * f + tuple(c)
        for c in T.elements()
        if not any(n * a % t for a, t in zip(c, T.torsion))
    }


__all__ += ["INFINITE", "is_cocycle", "generators", "all_classes", "n_torsion", "BocksteinError"]
