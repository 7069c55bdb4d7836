"""Finite ordered simplicial complexes and their integral (co)chain complexes.

Vertices are integers and every simplex is stored as a strictly increasing
tuple, so the global integer order fixes all orientation signs (boundary,
cup and cup-i products alike).
"""

from __future__ import annotations

import hashlib
import itertools
import json
from importlib import resources
from typing import Iterable, Mapping, Optional, Sequence

import yaml

from .linalg import IntegerMatrix

__all__ = [
    "ComplexFormatError",
    "SimplicialComplex",
    "SimplicialMap",
    "boundary_matrix",
    "builtin",
    "mapping_cone",
    "moore",
    "parse_complex",
    "rp2",
    "serialize_complex",
    "sphere",
    "suspension",
]


class ComplexFormatError(ValueError):
    """Raised for malformed complex documents or invalid simplices."""


class SimplicialComplex:
    """Immutable face-closed simplicial complex.

    ``simplices[k]`` is the sorted tuple of k-simplices.  Instances hash and
    compare by content, so they can key caches of derived data.
    """

    __slots__ = ("name", "simplices", "_index", "_digest", "_cache")

    def __init__(self, simplices: Sequence[Sequence[Sequence[int]]], name: Optional[str] = None):
        by_dim = tuple(tuple(sorted(set(tuple(s) for s in layer))) for layer in simplices)
        while by_dim and not by_dim[-1]:
            by_dim = by_dim[:-1]
        if not by_dim:
            raise ComplexFormatError("complex is empty")
        for k, layer in enumerate(by_dim):
            for s in layer:
                if len(s) != k + 1:
                    raise ComplexFormatError(f"simplex {s} stored in dimension {k}")
                if any(a >= b for a, b in zip(s, s[1:])):
                    raise ComplexFormatError(f"simplex {s} is not strictly increasing")
        index = tuple({s: i for i, s in enumerate(layer)} for layer in by_dim)
        for k in range(1, len(by_dim)):
            lower = index[k - 1]
            for s in by_dim[k]:
                for face in itertools.combinations(s, k):
                    if face not in lower:
                        raise ComplexFormatError(f"face {face} of {s} is missing")
        self.name = name
        self.simplices = by_dim
        self._index = index
        body = json.dumps([list(map(list, layer)) for layer in by_dim], separators=(",", ":"))
        self._digest = hashlib.sha256(body.encode()).hexdigest()
        self._cache = {}

    @classmethod
    def from_maximal(cls, maximal: Iterable[Sequence[int]], name: Optional[str] = None) -> "SimplicialComplex":
        layers: dict = {}
        for s in maximal:
            s = tuple(s)
            if len(set(s)) != len(s):
                raise ComplexFormatError(f"repeated vertex in simplex {list(s)}")
            s = tuple(sorted(s))
            for k in range(1, len(s) + 1):
                layers.setdefault(k - 1, set()).update(itertools.combinations(s, k))
        if not layers:
            raise ComplexFormatError("complex is empty")
        top = max(layers)
        return cls([sorted(layers.get(k, ())) for k in range(top + 1)], name=name)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def vertices(self) -> tuple:
        return tuple(s[0] for s in self.simplices[0])

    @property
    def f_vector(self) -> tuple:
        return tuple(len(layer) for layer in self.simplices)

    @property
    def digest(self) -> str:
        """SHA-256 of the canonical simplex lists (the name is not included)."""
        return self._digest

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k <= self.dim else 0

    def layer(self, k: int) -> tuple:
        return self.simplices[k] if 0 <= k <= self.dim else ()

    def index(self, simplex: Sequence[int]) -> int:
        simplex = tuple(simplex)
        return self._index[len(simplex) - 1][simplex]

    def index_map(self, k: int) -> dict:
        """Mapping from k-simplex to its position in ``simplices[k]``."""
        return self._index[k] if 0 <= k <= self.dim else {}

    def __contains__(self, simplex) -> bool:
        simplex = tuple(sorted(simplex))
        k = len(simplex) - 1
        return 0 <= k <= self.dim and simplex in self._index[k]

    def maximal_simplices(self) -> list:
        covered = set()
        for k in range(1, self.dim + 1):
            for s in self.simplices[k]:
                covered.update(itertools.combinations(s, k))
        return [s for layer in self.simplices for s in layer if s not in covered]

    def face_indices(self, k: int) -> tuple:
        """For each k-simplex, the indices of its faces with vertex i omitted."""
        key = ("faces", k)
        if key not in self._cache:
            lower = self._index[k - 1]
            self._cache[key] = tuple(
                tuple(lower[s[:i] + s[i + 1:]] for i in range(k + 1)) for s in self.simplices[k]
            )
        return self._cache[key]

    def boundary_matrix(self, k: int) -> IntegerMatrix:
        if not 1 <= k <= self.dim:
            raise ValueError(f"boundary degree {k} outside 1..{self.dim}")
        key = ("boundary", k)
        if key not in self._cache:
            M = IntegerMatrix.zeros(self.count(k - 1), self.count(k))
            for j, faces in enumerate(self.face_indices(k)):
                for i, f in enumerate(faces):
                    M.rows[f][j] = -1 if i % 2 else 1
            self._cache[key] = M
        return self._cache[key]

    def coboundary_matrix(self, k: int) -> IntegerMatrix:
        """Matrix of the coboundary from k-cochains to (k+1)-cochains, any k."""
        key = ("coboundary", k)
        if key not in self._cache:
            if 0 <= k < self.dim:
                M = self.boundary_matrix(k + 1).T
            else:
                M = IntegerMatrix.zeros(self.count(k + 1), self.count(k))
            self._cache[key] = M
        return self._cache[key]

    def coboundary(self, k: int, values: Sequence[int]) -> list:
        """Apply the coboundary to a k-cochain given as a value per k-simplex."""
        if len(values) != self.count(k):
            raise ValueError(f"cochain of length {len(values)} for {self.count(k)} {k}-simplices")
        if k + 1 > self.dim or k < -1:
            return []
        if k == -1:
            return [0] * self.count(0)
        return [
            sum(-values[f] if i % 2 else values[f] for i, f in enumerate(faces))
            for faces in self.face_indices(k + 1)
        ]

    def cache(self) -> dict:
        """Per-complex scratch space for derived data (safe: the complex is immutable)."""
        return self._cache

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._digest == other._digest

    def __hash__(self):
        return hash(self._digest)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"SimplicialComplex({label}f_vector={self.f_vector})"


class SimplicialMap:
    """Vertex map between complexes that sends simplices onto simplices."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, vertex_map: Mapping[int, int]):
        vertex_map = dict(vertex_map)
        missing = [v for v in source.vertices if v not in vertex_map]
        if missing:
            raise ValueError(f"vertex map undefined on {missing}")
        for layer in source.simplices:
            for s in layer:
                image = tuple(sorted({vertex_map[v] for v in s}))
                if image not in target:
                    raise ValueError(f"image {image} of simplex {s} is not a simplex of the target")
        self.source = source
        self.target = target
        self.vertex_map = vertex_map

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def pullback(self, k: int, values: Sequence[int]) -> list:
        """Pull a k-cochain on the target back to the source."""
        out = []
        for s in self.source.layer(k):
            image = tuple(self.vertex_map[v] for v in s)
            if len(set(image)) < len(image):
                out.append(0)
                continue
            order = sorted(range(len(image)), key=image.__getitem__)
            sign = _permutation_sign(order)
            out.append(sign * values[self.target.index(tuple(sorted(image)))])
        return out


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def boundary_matrix(K: SimplicialComplex, k: int) -> IntegerMatrix:
    return K.boundary_matrix(k)


def parse_complex(text: str) -> SimplicialComplex:
    """Read a ``name:`` / ``maximal:`` document into its face closure."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ComplexFormatError(f"malformed complex document: {exc}".splitlines()[0]) from exc
    if not isinstance(doc, dict) or "maximal" not in doc:
        raise ComplexFormatError("complex document needs a 'maximal:' field")
    unknown = set(doc) - {"name", "maximal"}
    if unknown:
        raise ComplexFormatError(f"unknown fields {sorted(unknown)}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ComplexFormatError("'name' must be a string")
    maximal = doc["maximal"]
    if not isinstance(maximal, list) or not maximal:
        raise ComplexFormatError("complex is empty")
    for s in maximal:
        if not isinstance(s, list) or not s or not all(isinstance(v, int) and not isinstance(v, bool) for v in s):
            raise ComplexFormatError(f"simplex {s!r} is not a nonempty list of integers")
    return SimplicialComplex.from_maximal(maximal, name=name)


def serialize_complex(K: SimplicialComplex) -> str:
    maximal = sorted(K.maximal_simplices(), key=lambda s: (len(s), s))
    lines = []
    if K.name:
        lines.append(f"name: {json.dumps(K.name)}")
    lines.append("maximal:")
    lines.extend(f"  - [{', '.join(map(str, s))}]" for s in maximal)
    return "\n".join(lines) + "\n"


def sphere(n: int) -> SimplicialComplex:
    """Boundary of the standard (n+1)-simplex on vertices 0..n+1."""
    if n < 0:
        raise ValueError(f"sphere dimension must be >= 0, got {n}")
    return SimplicialComplex.from_maximal(itertools.combinations(range(n + 2), n + 1), name=f"sphere:{n}")


def point() -> SimplicialComplex:
    return SimplicialComplex([[(0,)]], name="point")


def circle(m: int) -> SimplicialComplex:
    if m < 3:
        raise ValueError("a simplicial circle needs at least 3 vertices")
    return SimplicialComplex.from_maximal(((i, (i + 1) % m) for i in range(m)), name=f"circle:{m}")


def wrap_map(n: int) -> SimplicialMap:
    """Degree-n map from the 3n-vertex circle onto the 3-vertex circle."""
    return SimplicialMap(circle(3 * n), circle(3), {i: i % 3 for i in range(3 * n)})


def mapping_cone(f: SimplicialMap, name: Optional[str] = None) -> SimplicialComplex:
    """Simplicial mapping cylinder of ``f`` with its source end coned off.

    Target vertices keep their labels; source vertex ``v`` becomes a new
    vertex numbered above every target vertex (source order preserved) and
    the cone apex comes last.  A source simplex ``v0 < ... < vk`` contributes
    the cylinder cells ``{v0', ..., vj', f(vj), ..., f(vk)}`` for each j and
    the cone cell ``{apex, v0', ..., vk'}``.
    """
    base = max(f.target.vertices) + 1
    prime = {v: base + i for i, v in enumerate(f.source.vertices)}
    apex = base + len(prime)
    cells = list(f.target.maximal_simplices())
    for layer in f.source.simplices:
        for s in layer:
            for j in range(len(s)):
                cells.append(tuple(prime[v] for v in s[: j + 1]) + tuple(f(v) for v in s[j:]))
            cells.append((apex,) + tuple(prime[v] for v in s))
    return SimplicialComplex.from_maximal((tuple(set(c)) for c in cells), name=name)


def suspension(K: SimplicialComplex, name: Optional[str] = None) -> SimplicialComplex:
    """Double cone on ``K`` with two new apex vertices above all old ones."""
    a = max(K.vertices) + 1
    b = a + 1
    cells = []
    for s in K.maximal_simplices():
        cells.append(s + (a,))
        cells.append(s + (b,))
    return SimplicialComplex.from_maximal(cells, name=name or (f"susp:{K.name}" if K.name else None))


def moore(n: int) -> SimplicialComplex:
    """Moore space with H^1 = 0 and H^2 = Z/n, the cone on the degree-n circle map."""
    if n < 2:
        raise ValueError(f"moore(n) needs n >= 2, got {n}")
    return mapping_cone(wrap_map(n), name=f"moore:{n}")


def rp2() -> SimplicialComplex:
    """The 6-vertex minimal triangulation of the real projective plane."""
    text = resources.files("twistedk").joinpath("fixtures/rp2.yaml").read_text()
    return parse_complex(text)


SPHERE_RANGE = range(0, 7)
MOORE_RANGE = range(2, 13)


def builtin(tag: str) -> SimplicialComplex:
    """Resolve ``sphere:n``, ``moore:n``, ``rp2``, ``point`` or ``susp:<tag>``."""
    tag = tag.strip()
    if tag.startswith("susp:"):
        inner = builtin(tag[5:])
        return suspension(inner, name=tag)
    if tag == "rp2":
        return rp2()
    if tag == "point":
        return point()
    kind, _, arg = tag.partition(":")
    if kind in ("sphere", "moore"):
        try:
            n = int(arg)
        except ValueError:
            raise ValueError(f"builtin {tag!r} needs an integer parameter") from None
        if kind == "sphere":
            if n not in SPHERE_RANGE:
                raise ValueError(f"sphere:n supports 0 <= n <= 6, got {n}")
            return sphere(n)
        if n not in MOORE_RANGE:
            raise ValueError(f"moore:n supports 2 <= n <= 12, got {n}")
        return moore(n)
    raise ValueError(f"unknown builtin complex {tag!r}")
