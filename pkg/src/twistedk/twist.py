"""Dixmier-Douady twists: classes in H^3(X; Z) with their group laws.

A twist records whether it is presented by an infinite-dimensional
projective bundle or by a PU_n datum.  That flavor is bookkeeping only; the
group structure comes entirely from the underlying class, except that a
PU_n twist must be killed by n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cohomology import (
    INFINITE,
    CohClass,
    bockstein,
    class_order,
    coboundary_witness,
    cohomology,
    element,
    zero_class,
)
from .complex import SimplicialComplex
from .groups import INTEGERS, CoefficientRing
from .linalg import IntegerMatrix, solve_integer

__all__ = [
    "Flavor",
    "GammaClass",
    "NotFound",
    "NotTorsion",
    "Twist",
    "delta_from_gamma",
    "is_trivial",
    "realize_torsion",
    "twist_add",
    "twist_conjugate",
    "twist_from_coords",
    "twist_order",
    "zero_twist",
]


class NotTorsion(ValueError):
    """The class has infinite order, so no finite-dimensional datum realises it."""


class NotFound(RuntimeError):
    """The modulus search bound was exhausted without a preimage."""


@dataclass(frozen=True)
class Flavor:
    """``rank=None`` for an infinite-dimensional twist, else the n of PU_n."""

    rank: Optional[int] = None

    def __post_init__(self):
        if self.rank is not None and self.rank < 1:
            raise ValueError(f"PU_n needs n >= 1, got {self.rank}")

    @property
    def finite(self) -> bool:
        return self.rank is not None

    def __str__(self):
        return "infinite" if self.rank is None else f"PU_{self.rank}"


INFINITE_DIM = Flavor()


def FiniteDim(n: int) -> Flavor:
    return Flavor(n)


@dataclass(frozen=True)
class Twist:
    cls: CohClass
    flavor: Flavor = INFINITE_DIM

    def __post_init__(self):
        if self.cls.degree != 3 or not self.cls.ring.is_integral:
            raise ValueError("a twist is an integral class of degree 3")
        if self.flavor.finite and not (self.flavor.rank * self.cls).is_zero():
            raise ValueError(f"a {self.flavor} twist must be killed by {self.flavor.rank}")

    @property
    def complex(self) -> SimplicialComplex:
        return self.cls.complex

    @property
    def coords(self) -> tuple:
        return self.cls.coords

    def to_json(self) -> dict:
        order = twist_order(self)
        return {
            "coords": list(self.coords),
            "group": self.cls.group.describe(),
            "order": "infinite" if order == INFINITE else order,
            "flavor": str(self.flavor),
            "representative": list(self.cls.representative),
        }


def twist_from_coords(K: SimplicialComplex, coords, flavor: Flavor = INFINITE_DIM) -> Twist:
    return Twist(element(K, 3, INTEGERS, coords), flavor)


def zero_twist(K: SimplicialComplex) -> Twist:
    return Twist(zero_class(K, 3))


@dataclass(frozen=True)
class GammaClass:
    """A class in ``H^2(X; Z/n)``.  ``n == 1`` stands for the trivial datum (``cls`` None)."""

    complex: SimplicialComplex
    n: int
    cls: Optional[CohClass]

    def __post_init__(self):
        if self.n == 1:
            if self.cls is not None:
                raise ValueError("the n = 1 gamma class carries no cohomology class")
            return
        if self.cls is None or self.cls.degree != 2 or self.cls.ring != CoefficientRing(self.n):
            raise ValueError(f"gamma class must live in H^2(X; Z/{self.n})")


def _same_complex(a: Twist, b: Twist):
    if a.complex != b.complex:
        raise ValueError("twists live on different complexes")


def twist_add(a: Twist, b: Twist) -> Twist:
    """Sum of twists; PU_r and PU_s combine to PU_rs (tensor product of matrix bundles)."""
    _same_complex(a, b)
    if a.flavor.finite and b.flavor.finite:
        flavor = Flavor(a.flavor.rank * b.flavor.rank)
    else:
        flavor = INFINITE_DIM
    return Twist(a.cls + b.cls, flavor)


def twist_conjugate(a: Twist) -> Twist:
    return Twist(-a.cls, a.flavor)


def is_trivial(a: Twist):
    """``(trivial, certificate)``; when trivial, ``coboundary(certificate)`` is the representative."""
    if not a.cls.is_zero():
        return False, None
    cert = coboundary_witness(a.cls)
    if cert is None:
        raise AssertionError("zero coordinates but the representative is not a coboundary")
    return True, cert


def twist_order(a: Twist):
    return class_order(a.cls)


def delta_from_gamma(g: GammaClass) -> Twist:
    """The PU_n twist ``bockstein(gamma)``; asserts that n kills it."""
    if g.n == 1:
        return Twist(zero_class(g.complex, 3), Flavor(1))
    image = bockstein(g.cls)
    if not (g.n * image).is_zero():
        raise AssertionError(f"bockstein image is not killed by {g.n}")
    return Twist(image, Flavor(g.n))


def bockstein_matrix(K: SimplicialComplex, k: int, n: int) -> IntegerMatrix:
    """Coordinates of the Bockstein images of the ``H^k(Z/n)`` generators, as columns."""
    src = cohomology(K, k, CoefficientRing(n))
    tgt = cohomology(K, k + 1, INTEGERS)
    cols = []
    for i in range(src.ngens):
        g = element(K, k, CoefficientRing(n), [int(i == j) for j in range(src.ngens)])
        cols.append(list(bockstein(g).coords))
    return IntegerMatrix.from_columns(cols, tgt.ngens)


def _bockstein_preimage(x: CohClass, n: int) -> Optional[CohClass]:
    K = x.complex
    ring = CoefficientRing(n)
    src = cohomology(K, x.degree - 1, ring)
    tgt = x.group
    B = bockstein_matrix(K, x.degree - 1, n)
    # solve B g + T s = x, T carrying the target's torsion relations
    tors = [i for i, t in enumerate(tgt.orders) if t]
    rows = []
    for i in range(tgt.ngens):
        rel = [tgt.orders[i] if i == j else 0 for j in tors]
        rows.append(list(B.rows[i]) + rel)
    system = IntegerMatrix(tgt.ngens, src.ngens + len(tors), rows)
    sol = solve_integer(system, list(x.coords))
    if sol is None:
        return None
    return element(K, x.degree - 1, ring, sol[: src.ngens])


def realize_torsion(x: CohClass, start: Optional[int] = None, bound: Optional[int] = None) -> GammaClass:
    """A modulus k and ``g`` in ``H^2(X; Z/k)`` with ``bockstein(g) == x``.

    Moduli are tried in the sequence ``start, start + m, start + 2m, ...``
    (m the order of x, ``start`` defaulting to m) up to ``bound`` (default 4m).
    """
    if x.degree != 3 or not x.ring.is_integral:
        raise ValueError("realize_torsion expects a class in H^3(X; Z)")
    m = class_order(x)
    if m == INFINITE:
        raise NotTorsion("class has infinite order")
    if m == 1:
        return GammaClass(x.complex, 1, None)
    start = m if start is None else start
    bound = 4 * m if bound is None else bound
    if start % m:
        raise ValueError(f"search start {start} is not a multiple of the order {m}")
    for k in range(start, bound + 1, m):
        g = _bockstein_preimage(x, k)
        if g is not None:
            gamma = GammaClass(x.complex, k, g)
            if bockstein(g) != x:
                raise AssertionError("preimage check failed")
            return gamma
    raise NotFound(f"no Bockstein preimage with modulus up to {bound}")
