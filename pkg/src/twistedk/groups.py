"""Finitely generated abelian groups presented as subquotients of Z^N.

A group is always described as ``K / I`` for lattices ``I <= K <= Z^N``.  The
Smith form of ``I`` written in a basis of ``K`` gives the invariant factors,
explicit generators (vectors of ``Z^N``), and a rational coordinate map that
sends any vector of ``K`` to its coordinates against those generators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterator, Optional, Sequence

from .linalg import IntegerMatrix, lcm, smith_normal_form

INFINITE = math.inf


@dataclass(frozen=True, order=True)
class CoefficientRing:
    """Z when ``modulus`` is None, otherwise Z/modulus."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"Z/n coefficients need n >= 2, got {self.modulus}")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        text = text.strip()
        if text == "Z":
            return INTEGERS
        if text.startswith("Z/"):
            try:
                return cls(int(text[2:]))
            except ValueError:
                pass
        raise ValueError(f"unknown coefficient ring {text!r} (expected Z or Z/n)")

    @property
    def is_integral(self) -> bool:
        return self.modulus is None

    def reduce(self, values):
        if self.modulus is None:
            return tuple(values)
        n = self.modulus
        return tuple(v % n for v in values)

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


INTEGERS = CoefficientRing()


def ZMod(n: int) -> CoefficientRing:
    return CoefficientRing(n)


def _column_major(rows, ncols: int) -> list:
    """Nonzero entries of each column as (row, value) pairs."""
    cols = [[] for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, a in enumerate(row):
            if a:
                cols[j].append((i, a))
    return cols


def _sparse_apply(cols: list, nrows: int, v: Sequence[int]) -> list:
    out = [0] * nrows
    for j, x in enumerate(v):
        if x:
            for i, a in cols[j]:
                out[i] += a * x
    return out


class Lattice:
    """A sublattice of Z^N with a basis and an exact coordinate map.

    ``coordinates(v) = coord_rows @ v / denominator`` for every ``v`` in the
    lattice; the division is exact exactly on lattice vectors.
    """

    def __init__(self, ambient: int, basis: list, coord_rows: list, denominator: int = 1):
        self.ambient = ambient
        self.basis = basis
        self.coord_rows = coord_rows
        self.denominator = denominator

    @property
    def rank(self) -> int:
        return len(self.basis)

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence[int]], ambient: int) -> "Lattice":
        G = IntegerMatrix.from_columns(gens, ambient)
        snf = smith_normal_form(G)
        diag = snf.invariant_factors
        L = reduce(lcm, diag, 1)
        basis = [[u * d for u in snf.U_inv.column(i)] for i, d in enumerate(diag)]
        rows = [[u * (L // d) for u in snf.U.rows[i]] for i, d in enumerate(diag)]
        return cls(ambient, basis, rows, L)

    def coordinates(self, v: Sequence[int]) -> list:
        if not hasattr(self, "_columns"):
            self._columns = _column_major(self.coord_rows, self.ambient)
        out = []
        for s in _sparse_apply(self._columns, len(self.coord_rows), v):
            q, r = divmod(s, self.denominator)
            if r:
                raise ValueError("vector does not lie in the lattice")
            out.append(q)
        return out

    def contains(self, v: Sequence[int]) -> bool:
        try:
            w = self.coordinates(v)
        except ValueError:
            return False
        back = [sum(b[i] * c for b, c in zip(self.basis, w)) for i in range(self.ambient)]
        return back == list(v)


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """``Z^free_rank + Z/t1 + Z/t2 + ...`` with generators and a coordinate map.

    Generators come free ones first, then torsion ones in divisor-chain
    order; coordinates follow the same order, torsion entries reduced into
    ``[0, t)``.  ``generators`` are vectors of the ambient ``Z^N`` (cochains
    for cohomology groups).
    """

    free_rank: int
    torsion: tuple
    generators: tuple
    degree: int = 0
    ring: CoefficientRing = INTEGERS
    coord_rows: tuple = field(default=(), repr=False)
    coord_denominator: int = field(default=1, repr=False)

    def __post_init__(self):
        if any(t < 2 for t in self.torsion):
            raise ValueError(f"torsion coefficients must be >= 2: {self.torsion}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisor chain")
        if len(self.generators) != self.free_rank + len(self.torsion):
            raise ValueError("generator count does not match free rank plus torsion")

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> tuple:
        """Order of each generator, 0 standing for infinite."""
        return (0,) * self.free_rank + tuple(self.torsion)

    @property
    def order(self):
        if self.free_rank:
            return INFINITE
        return math.prod(self.torsion)

    def is_zero(self) -> bool:
        return self.ngens == 0

    def normalize(self, coords: Sequence[int]) -> tuple:
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return tuple(c % t if t else c for c, t in zip(coords, self.orders))

    def coordinates(self, v: Sequence[int]) -> tuple:
        """Coordinates of an ambient vector that lies in the kernel lattice."""
        L = self.coord_denominator
        out = []
        cols = self.__dict__.get("_cols")
        if cols is None or len(cols) != len(v):
            cols = _column_major(self.coord_rows, len(v))
            object.__setattr__(self, "_cols", cols)
        for s in _sparse_apply(cols, len(self.coord_rows), v):
            q, r = divmod(s, L)
            if r:
                raise ValueError("vector is not in the cycle lattice of this group")
            out.append(q)
        return self.normalize(out)

    def combination(self, coords: Sequence[int]) -> tuple:
        """Ambient vector ``sum coords[i] * generators[i]``."""
        coords = list(coords)
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        if not self.generators:
            return ()
        n = len(self.generators[0])
        out = [0] * n
        for c, g in zip(coords, self.generators):
            if c:
                for i, x in enumerate(g):
                    if x:
                        out[i] += c * x
        return tuple(out)

    def element_order(self, coords: Sequence[int]):
        coords = self.normalize(coords)
        result = 1
        for c, t in zip(coords, self.orders):
            if t == 0:
                if c:
                    return INFINITE
            else:
                result = lcm(result, t // math.gcd(c, t))
        return result

    def elements(self) -> Iterator[tuple]:
        """Every element's coordinates; only for finite groups."""
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(t) for t in self.torsion))

    def subgroup_generated(self, gens: Sequence[Sequence[int]]) -> set:
        """All elements of the subgroup spanned by ``gens`` (finite groups)."""
        gens = [self.normalize(g) for g in gens]
        zero = (0,) * self.ngens
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.normalize([a + b for a, b in zip(x, g)])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def torsion_part(self) -> "AbelianGroupPresentation":
        f = self.free_rank
        return AbelianGroupPresentation(
            free_rank=0,
            torsion=self.torsion,
            generators=self.generators[f:],
            degree=self.degree,
            ring=self.ring,
            coord_rows=self.coord_rows[f:],
            coord_denominator=self.coord_denominator,
        )

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    __str__ = describe

    def same_group(self, other: "AbelianGroupPresentation") -> bool:
        return self.free_rank == other.free_rank and tuple(self.torsion) == tuple(other.torsion)

    def to_json(self) -> dict:
        return {
            "group": self.describe(),
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "degree": self.degree,
            "ring": str(self.ring),
            "generators": [list(g) for g in self.generators],
            "coord_rows": [list(r) for r in self.coord_rows],
            "coord_denominator": self.coord_denominator,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AbelianGroupPresentation":
        return cls(
            free_rank=doc["free_rank"],
            torsion=tuple(doc["torsion"]),
            generators=tuple(tuple(g) for g in doc["generators"]),
            degree=doc["degree"],
            ring=CoefficientRing.parse(doc["ring"]),
            coord_rows=tuple(tuple(r) for r in doc["coord_rows"]),
            coord_denominator=doc["coord_denominator"],
        )


def zero_group(degree: int = 0, ring: CoefficientRing = INTEGERS) -> AbelianGroupPresentation:
    return AbelianGroupPresentation(0, (), (), degree, ring)


def subquotient(
    K: Lattice,
    relations: Sequence[Sequence[int]],
    degree: int = 0,
    ring: CoefficientRing = INTEGERS,
) -> AbelianGroupPresentation:
    """Present ``K / I`` where ``I`` is spanned by ``relations`` (each in ``K``)."""
    a = K.rank
    M = IntegerMatrix.from_columns([K.coordinates(r) for r in relations], a)
    snf = smith_normal_form(M)
    diag = snf.diagonal
    rank = snf.rank
    free = list(range(rank, a))
    tors = [i for i in range(rank) if diag[i] > 1]
    order = free + tors

    modulus = ring.modulus
    gens, rows = [], []
    for i in order:
        col = snf.U_inv.column(i)
        g = [0] * K.ambient
        for j, c in enumerate(col):
            if c:
                for k, b in enumerate(K.basis[j]):
                    if b:
                        g[k] += c * b
        urow = snf.U.rows[i]
        row = [0] * K.ambient
        for j, c in enumerate(urow):
            if c:
                for k, b in enumerate(K.coord_rows[j]):
                    if b:
                        row[k] += c * b
        if modulus is not None:
            # n * e_k lies in I, so reducing entries keeps the same class
            g = [x % modulus for x in g]
        else:
            lead = next((x for x in g if x), 0)
            if lead < 0:
                g = [-x for x in g]
                row = [-x for x in row]
        gens.append(tuple(g))
        rows.append(row)

    L = K.denominator
    common = reduce(math.gcd, (x for r in rows for x in r), L)
    if common > 1:
        rows = [[x // common for x in r] for r in rows]
        L //= common
    return AbelianGroupPresentation(
        free_rank=len(free),
        torsion=tuple(diag[i] for i in tors),
        generators=tuple(gens),
        degree=degree,
        ring=ring,
        coord_rows=tuple(tuple(r) for r in rows),
        coord_denominator=L,
    )
