"""Cup and cup-i products on ordered simplicial cochains, Steenrod squares.

The cup product is the Alexander-Whitney front-face/back-face formula.  For
i >= 1 the cup-i products are only evaluated mod 2, which is all that the
squares and the integral operation Sq^3_Z = beta_2 Sq^2 rho_2 need.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .cohomology import CohClass, bockstein, class_of, reduce_mod, zero_class
from .complex import SimplicialComplex
from .groups import INTEGERS, CoefficientRing

__all__ = ["Cochain", "cup", "cup_cochains", "cup_i", "sq", "sq3_integral"]

Z2 = CoefficientRing(2)


@dataclass(frozen=True)
class Cochain:
    """One ring element per k-simplex, in the complex's stored order."""

    complex: SimplicialComplex
    degree: int
    ring: CoefficientRing
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.complex.count(self.degree):
            raise ValueError(
                f"{self.degree}-cochain needs {self.complex.count(self.degree)} values, got {len(self.values)}")
        object.__setattr__(self, "values", self.ring.reduce(int(v) for v in self.values))

    @classmethod
    def of(cls, x: CohClass) -> "Cochain":
        return cls(x.complex, x.degree, x.ring, x.representative)

    def coboundary(self) -> "Cochain":
        K = self.complex
        return Cochain(K, self.degree + 1, self.ring, tuple(K.coboundary(self.degree, self.values)))

    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.complex, self.degree, self.ring) != (other.complex, other.degree, other.ring):
            raise ValueError("cochains of different type")
        return Cochain(self.complex, self.degree, self.ring, tuple(a + b for a, b in zip(self.values, other.values)))


def _common_ring(a: CoefficientRing, b: CoefficientRing) -> CoefficientRing:
    if a == b:
        return a
    if a.is_integral:
        return b
    if b.is_integral:
        return a
    raise ValueError(f"cannot multiply classes over {a} and {b}")


def cup_cochains(K: SimplicialComplex, p: int, a, q: int, b) -> list:
    """Alexander-Whitney product of a p-cochain and a q-cochain, as raw values."""
    if K.count(p + q) == 0:
        return []
    ip = K.index_map(p)
    iq = K.index_map(q)
    return [a[ip[s[: p + 1]]] * b[iq[s[p:]]] for s in K.simplices[p + q]]


def cup(x: CohClass, y: CohClass) -> CohClass:
    """Class of the Alexander-Whitney product of the representatives.

    An integral factor is reduced into the other factor's Z/n ring first.
    """
    if x.complex != y.complex:
        raise ValueError("cup product of classes on different complexes")
    ring = _common_ring(x.ring, y.ring)
    K = x.complex
    deg = x.degree + y.degree
    if K.count(deg) == 0:
        return zero_class(K, deg, ring)
    values = cup_cochains(K, x.degree, x.representative, y.degree, y.representative)
    return class_of(K, deg, ring, values)


@lru_cache(maxsize=None)
def _cup_i_terms(p: int, q: int, i: int) -> tuple:
    """Vertex positions (front, back) of each term of the cup-i formula.

    On the simplex ``0 < 1 < ... < N`` (N = p + q - i) pick
    ``0 <= j_0 < ... < j_i <= N`` and cut it into the intervals
    ``[0, j_0], [j_0, j_1], ..., [j_i, N]``.  The first factor is evaluated on
    the union of the even-numbered intervals, the second on the odd ones.
    """
    N = p + q - i
    terms = []
    for cuts in itertools.combinations(range(N + 1), i + 1):
        bounds = (0,) + cuts + (N,)
        front, back = set(), set()
        for r in range(i + 2):
            part = range(bounds[r], bounds[r + 1] + 1)
            (front if r % 2 == 0 else back).update(part)
        if len(front) == p + 1 and len(back) == q + 1:
            terms.append((tuple(sorted(front)), tuple(sorted(back))))
    return tuple(terms)


def cup_i(c: Cochain, d: Cochain, i: int) -> Cochain:
    """Steenrod's cup-i product; mod 2 for i >= 1, any ring for i = 0."""
    if c.complex != d.complex:
        raise ValueError("cup-i of cochains on different complexes")
    p, q = c.degree, d.degree
    if not 0 <= i <= min(p, q):
        raise ValueError(f"cup-{i} needs 0 <= i <= min({p}, {q})")
    K = c.complex
    if i == 0:
        ring = _common_ring(c.ring, d.ring)
        return Cochain(K, p + q, ring, tuple(cup_cochains(K, p, c.values, q, d.values)))
    if c.ring != Z2 or d.ring != Z2:
        raise ValueError("cup-i with i >= 1 is only defined here for Z/2 cochains")
    N = p + q - i
    out = []
    if K.count(N):
        ip, iq = K.index_map(p), K.index_map(q)
        terms = _cup_i_terms(p, q, i)
        a, b = c.values, d.values
        for s in K.simplices[N]:
            total = 0
            for front, back in terms:
                total += a[ip[tuple(s[j] for j in front)]] * b[iq[tuple(s[j] for j in back)]]
            out.append(total & 1)
    return Cochain(K, N, Z2, tuple(out))


def sq(k: int, x: CohClass) -> CohClass:
    """Steenrod square ``Sq^k`` on mod-2 cohomology, via ``x cup_{m-k} x``."""
    if k < 0:
        raise ValueError(f"Sq^k needs k >= 0, got {k}")
    if x.ring != Z2:
        raise ValueError("Steenrod squares act on Z/2 classes")
    m = x.degree
    K = x.complex
    if k > m or K.count(m + k) == 0:
        return zero_class(K, m + k, Z2)
    c = Cochain.of(x)
    return class_of(K, m + k, Z2, cup_i(c, c, m - k).values)


def sq3_integral(x: CohClass) -> CohClass:
    """Integral ``Sq^3_Z = beta_2 . Sq^2 . rho_2`` landing in ``H^{p+3}(X; Z)``."""
    if not x.ring.is_integral:
        raise ValueError("sq3_integral expects an integral class")
    K = x.complex
    if K.count(x.degree + 3) == 0:
        return zero_class(K, x.degree + 3, INTEGERS)
    return bockstein(sq(2, reduce_mod(x, 2)))
