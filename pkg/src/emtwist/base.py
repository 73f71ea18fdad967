"""Finite ordered simplicial complexes, their cochains, and prisms ``K x Delta^k``.

Simplices are strictly increasing vertex tuples.  A cochain is a map from
k-simplices to ``pi``; a chain is a dict from simplices to integers.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .coeffs import CoeffGroup
from .errors import FormatError, NotACocycle
from .linalg import SparseIntMatrix, solve_mod

Simplex = tuple[int, ...]
Chain = dict[Simplex, int]


def face_of(s: Simplex, j: int) -> Simplex:
    """``s_j``: omit vertex j."""
    return s[:j] + s[j + 1:]


class BaseComplex:
    """A finite ordered simplicial complex, closed under faces on construction."""

    def __init__(self, nvertices: int, simplices: Iterable[Sequence[int]]):
        closed: set[Simplex] = set()
        for raw in simplices:
            s = tuple(int(v) for v in raw)
            if not s:
                raise FormatError("empty simplex")
            if any(b <= a for a, b in zip(s, s[1:])):
                raise FormatError(f"simplex {list(raw)} is not strictly increasing")
            if s[0] < 0 or s[-1] >= nvertices:
                raise FormatError(f"simplex {list(raw)} has a vertex outside 0..{nvertices - 1}")
            if s in closed:
                continue
            for k in range(1, len(s) + 1):
                closed.update(combinations(s, k))
        self.nvertices = nvertices
        self.simplices: tuple[Simplex, ...] = tuple(sorted(closed, key=lambda s: (len(s), s)))
        self._set = frozenset(closed)

    def __contains__(self, s) -> bool:
        return tuple(s) in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseComplex) and self.nvertices == other.nvertices and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.nvertices, self._set))

    def __repr__(self) -> str:
        return f"BaseComplex(vertices={self.nvertices}, f={self.f_vector})"

    @cached_property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @cached_property
    def _by_dim(self) -> list[list[Simplex]]:
        out: list[list[Simplex]] = [[] for _ in range(self.dim + 1)]
        for s in self.simplices:
            out[len(s) - 1].append(s)
        return out

    def simplices_of_dim(self, k: int) -> list[Simplex]:
        return self._by_dim[k] if 0 <= k <= self.dim else []

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self._by_dim)

    def index(self, k: int) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices_of_dim(k))}

    def boundary_matrix(self, k: int) -> SparseIntMatrix:
        """Simplicial ``d_k: C_k -> C_{k-1}``."""
        rows = self.index(k - 1)
        cols = []
        for s in self.simplices_of_dim(k):
            cols.append({rows[face_of(s, j)]: (-1) ** j for j in range(len(s))} if k > 0 else {})
        return SparseIntMatrix.from_columns(len(rows), cols)

    def coboundary_matrix(self, k: int) -> SparseIntMatrix:
        return self.boundary_matrix(k + 1).transpose()

    def to_json(self) -> dict:
        top = [s for s in self.simplices if not any(t != s and set(s) <= set(t) for t in self.simplices if len(t) == len(s) + 1)]
        return {"vertices": self.nvertices, "simplices": [list(s) for s in top]}

    @classmethod
    def from_json(cls, data: Mapping) -> "BaseComplex":
        try:
            n = int(data["vertices"])
            simplices = data["simplices"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"base complex needs 'vertices' and 'simplices': {exc}") from exc
        for entry in simplices:
            if not isinstance(entry, (list, tuple)) or not all(isinstance(v, int) for v in entry):
                raise FormatError(f"malformed simplex entry {entry!r}")
        return cls(n, simplices)


def point() -> BaseComplex:
    return BaseComplex(1, [(0,)])


def standard_simplex(m: int) -> BaseComplex:
    return BaseComplex(m + 1, [tuple(range(m + 1))])


def simplex_boundary(m: int) -> BaseComplex:
    """``d Delta^m``, a triangulated ``S^{m-1}``; ``simplex_boundary(3)`` is the 2-sphere."""
    return BaseComplex(m + 1, list(combinations(range(m + 1), m)))


# ---------------------------------------------------------------------------
# cochains


class BaseCochain:
    """A k-cochain on a BaseComplex with values in ``pi``."""

    __slots__ = ("complex", "degree", "group", "values")

    def __init__(self, K: BaseComplex, degree: int, group: CoeffGroup, values: Mapping[Sequence[int], int] | None = None):
        self.complex = K
        self.degree = degree
        self.group = group
        vals: dict[Simplex, int] = {}
        for s, v in (values or {}).items():
            s = tuple(s)
            if len(s) != degree + 1 or s not in K:
                raise FormatError(f"{list(s)} is not a {degree}-simplex of the complex")
            v = group.reduce(vals.get(s, 0) + v)
            if v:
                vals[s] = v
            else:
                vals.pop(s, None)
        self.values = vals

    def __call__(self, s: Sequence[int]) -> int:
        return self.values.get(tuple(s), 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BaseCochain)
            and self.degree == other.degree
            and self.group == other.group
            and self.values == other.values
        )

    def __repr__(self) -> str:
        return f"BaseCochain(deg={self.degree}, {self.group}, {self.values})"

    def _combine(self, other: "BaseCochain", sign: int) -> "BaseCochain":
        if self.degree != other.degree or self.group != other.group:
            raise ValueError("cochains of different degree or group")
        vals = dict(self.values)
        for s, v in other.values.items():
            vals[s] = vals.get(s, 0) + sign * v
        return BaseCochain(self.complex, self.degree, self.group, vals)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return BaseCochain(self.complex, self.degree, self.group, {s: -v for s, v in self.values.items()})

    def scale(self, k: int) -> "BaseCochain":
        return BaseCochain(self.complex, self.degree, self.group, {s: k * v for s, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def vector(self) -> list[int]:
        return [self(s) for s in self.complex.simplices_of_dim(self.degree)]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "modulus": self.group.modulus or None,
            "values": [[list(s), v] for s, v in sorted(self.values.items())],
        }

    @classmethod
    def from_json(cls, K: BaseComplex, data: Mapping, group: CoeffGroup | None = None) -> "BaseCochain":
        try:
            degree = int(data["degree"])
            modulus = data.get("modulus")
            entries = data["values"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"cochain needs 'degree' and 'values': {exc}") from exc
        g = CoeffGroup(int(modulus) if modulus else 0)
        if group is not None:
            if modulus is not None and g != group:
                raise FormatError(f"cochain modulus {modulus} does not match {group}")
            g = group
        vals: dict[Simplex, int] = {}
        for entry in entries:
            if (
                not isinstance(entry, (list, tuple))
                or len(entry) != 2
                or not isinstance(entry[0], (list, tuple))
                or not isinstance(entry[1], int)
            ):
                raise FormatError(f"malformed cochain entry {entry!r}")
            vals[tuple(entry[0])] = vals.get(tuple(entry[0]), 0) + entry[1]
        return cls(K, degree, g, vals)


def zero_cochain(K: BaseComplex, degree: int, group: CoeffGroup) -> BaseCochain:
    return BaseCochain(K, degree, group)


def coboundary(c: BaseCochain) -> BaseCochain:
    """``(dc)(s) = sum_j (-1)^j c(s_j)``."""
    K = c.complex
    vals = {}
    for s in K.simplices_of_dim(c.degree + 1):
        v = sum((-1) ** j * c(face_of(s, j)) for j in range(len(s)))
        if v:
            vals[s] = v
    return BaseCochain(K, c.degree + 1, c.group, vals)


def is_cocycle(c: BaseCochain) -> bool:
    return coboundary(c).is_zero()


def cohomologous(c1: BaseCochain, c2: BaseCochain) -> BaseCochain | None:
    """A cochain b with ``db = c1 - c2``, or None when the difference is not a coboundary."""
    if c1.degree != c2.degree or c1.group != c2.group:
        raise ValueError("cochains of different degree or group")
    K, k, g = c1.complex, c1.degree, c1.group
    diff = (c1 - c2).vector()
    if not any(diff):
        return zero_cochain(K, k - 1, g)
    if k == 0:
        return None
    sol = solve_mod(K.coboundary_matrix(k - 1), diff, g.modulus)
    if sol is None:
        return None
    return BaseCochain(K, k - 1, g, dict(zip(K.simplices_of_dim(k - 1), sol)))


# ---------------------------------------------------------------------------
# simplicial maps and pullbacks


class SimplicialMap:
    """A vertex map ``f: K -> L`` sending simplices to (possibly collapsed) simplices."""

    def __init__(self, source: BaseComplex, target: BaseComplex, vertex_map: Callable[[int], int] | Sequence[int]):
        self.source = source
        self.target = target
        if callable(vertex_map):
            vertex_map = [vertex_map(v) for v in range(source.nvertices)]
        self.vmap = tuple(vertex_map)
        for s in source.simplices:
            img = self(s)
            if any(b < a for a, b in zip(img, img[1:])) or tuple(sorted(set(img))) not in target:
                raise ValueError(f"{s} does not map to an ordered simplex")

    def __call__(self, s: Sequence[int]) -> Simplex:
        return tuple(self.vmap[v] for v in s)

    def pullback(self, c: BaseCochain) -> BaseCochain:
        """``(f^*c)(s) = c(f(s))``, zero where ``f`` collapses ``s``."""
        vals = {}
        for s in self.source.simplices_of_dim(c.degree):
            img = self(s)
            if len(set(img)) == len(img):
                v = c(img)
                if v:
                    vals[s] = v
        return BaseCochain(self.source, c.degree, c.group, vals)

    def push_chain(self, ch: Mapping[Simplex, int]) -> Chain:
        out: Chain = {}
        for s, v in ch.items():
            img = self(s)
            if len(set(img)) == len(img):
                out[img] = out.get(img, 0) + v
        return {s: v for s, v in out.items() if v}


# ---------------------------------------------------------------------------
# chains


def chain_boundary(ch: Mapping[Simplex, int]) -> Chain:
    out: Chain = {}
    for s, v in ch.items():
        if len(s) == 1:
            continue
        for j in range(len(s)):
            f = face_of(s, j)
            out[f] = out.get(f, 0) + (-1) ** j * v
    return {s: v for s, v in out.items() if v}


def chain_add(*chains: Mapping[Simplex, int], signs: Sequence[int] | None = None) -> Chain:
    out: Chain = {}
    for i, ch in enumerate(chains):
        e = 1 if signs is None else signs[i]
        for s, v in ch.items():
            out[s] = out.get(s, 0) + e * v
    return {s: v for s, v in out.items() if v}


def evaluate(c: BaseCochain, ch: Mapping[Simplex, int]) -> int:
    return c.group.reduce(sum(v * c(s) for s, v in ch.items()))


def shuffles(m: int, k: int) -> list[tuple[tuple[int, ...], int]]:
    """Lattice paths ``(0,0) -> (m,k)`` as step words (0 = base step, 1 = Delta^k step) with shuffle signs.

    The sign is the parity of the number of (base step, Delta^k step)
    pairs in which the Delta^k step comes first.
    """
    out = []
    for pos in combinations(range(m + k), k):
        word = [0] * (m + k)
        for q in pos:
            word[q] = 1
        inv = 0
        seen_fiber = 0
        for x in word:
            if x:
                seen_fiber += 1
            else:
                inv += seen_fiber
        out.append((tuple(word), -1 if inv % 2 else 1))
    return out


class Prism:
    """The product ``K x Delta^k`` (k = 1 or 2) in its shuffle triangulation.

    Vertex ``(v, j)`` is encoded as ``v * (k + 1) + j`` so that integer order
    is the lexicographic order and ``b_i < b'_i`` for k = 1.
    """

    def __init__(self, K: BaseComplex, k: int):
        if k < 1:
            raise ValueError("k >= 1")
        self.base = K
        self.k = k
        top = []
        for s in K.simplices:
            m = len(s) - 1
            for word, _ in shuffles(m, k):
                top.append(self._path(s, word))
        self.complex = BaseComplex(K.nvertices * (k + 1), top)

    def vertex(self, v: int, j: int) -> int:
        return v * (self.k + 1) + j

    def split(self, w: int) -> tuple[int, int]:
        return divmod(w, self.k + 1)

    def _path(self, s: Simplex, word: Sequence[int], start: int = 0) -> Simplex:
        a, j = 0, start
        out = [self.vertex(s[0], j)]
        for x in word:
            if x:
                j += 1
            else:
                a += 1
            out.append(self.vertex(s[a], j))
        return tuple(out)

    def ez_chain(self, s: Simplex) -> Chain:
        """Eilenberg-Zilber shuffle chain of ``s x iota_k``."""
        return {self._path(s, word): sign for word, sign in shuffles(len(s) - 1, self.k)}

    def inclusion(self, j: int) -> SimplicialMap:
        """``i_j: K -> K x Delta^k`` onto the copy ``K x {j}``."""
        return SimplicialMap(self.base, self.complex, [self.vertex(v, j) for v in range(self.base.nvertices)])

    def projection(self) -> SimplicialMap:
        return SimplicialMap(self.complex, self.base, [self.split(w)[0] for w in range(self.complex.nvertices)])

    def pr_star(self, z: BaseCochain) -> BaseCochain:
        return self.projection().pullback(z)

    def restrict(self, c: BaseCochain, j: int) -> BaseCochain:
        return self.inclusion(j).pullback(c)

    def place(self, c: BaseCochain, j: int = 0) -> BaseCochain:
        """The cochain equal to ``c`` on the copy ``K x {j}`` and 0 elsewhere."""
        vals = {tuple(self.vertex(v, j) for v in s): x for s, x in c.values.items()}
        return BaseCochain(self.complex, c.degree, c.group, vals)


def prism(K: BaseComplex) -> Prism:
    return Prism(K, 1)


def prism2(K: BaseComplex) -> Prism:
    return Prism(K, 2)


def w1_chain(P: Prism, s: Simplex) -> Chain:
    """``sum_i (-1)^i (b_0 .. b_i b'_i .. b'_m)``; satisfies ``d w1 + w1 d = i1 - i0``."""
    if P.k != 1:
        raise ValueError("w1 lives on K x Delta^1")
    m = len(s) - 1
    out = {}
    for i in range(m + 1):
        t = tuple(P.vertex(v, 0) for v in s[: i + 1]) + tuple(P.vertex(v, 1) for v in s[i:])
        out[t] = (-1) ** i
    return out


def w2_chain(P: Prism, s: Simplex) -> Chain:
    """Shuffle chain of ``s x Delta^2``; satisfies ``d w2 - w2 d = (i01 + i12 - i02) w1``."""
    if P.k != 2:
        raise ValueError("w2 lives on K x Delta^2")
    return P.ez_chain(s)


def edge_inclusions(P2: Prism) -> dict[str, SimplicialMap]:
    """``i_01, i_12, i_02: K x Delta^1 -> K x Delta^2``."""
    P1 = prism(P2.base)
    out = {}
    for name, (a, b) in {"01": (0, 1), "12": (1, 2), "02": (0, 2)}.items():
        vm = []
        for w in range(P1.complex.nvertices):
            v, j = P1.split(w)
            vm.append(P2.vertex(v, (a, b)[j]))
        out[name] = SimplicialMap(P1.complex, P2.complex, vm)
    return out


def prism_cocycle(c: BaseCochain, z: BaseCochain, P: Prism | None = None) -> BaseCochain:
    """``Pr^* z + d c_bar`` on ``K x I`` with ``c_bar`` the cochain c placed on ``K x 0``."""
    if z.degree != c.degree + 1:
        raise ValueError("need deg z = deg c + 1")
    if not is_cocycle(z):
        raise NotACocycle("z is not a cocycle")
    P = P or prism(z.complex)
    return P.pr_star(z) + coboundary(P.place(c, 0))
