"""Flag complexes, links, chain complexes over F_p and reduced homology.

A size-k clique spans a (k-1)-simplex.  All boundary signs use the
fixed vertex order of the ambient graph: removing the vertex in 1-based
position i contributes the sign (-1)**(i-1).
"""

from __future__ import annotations

from .errors import SchemaError
from .fpmatrix import MatrixFp, check_prime, rank_fp
from .graph import SimplicialGraph, enumerate_cliques, induced_subgraph


class FlagComplex:
    """The simplices (nonempty cliques) of a graph, grouped by size."""

    __slots__ = ("ambient", "simplices")

    def __init__(self, ambient: SimplicialGraph, simplices):
        self.ambient = ambient
        self.simplices = [tuple(group) for group in simplices]
        while self.simplices and not self.simplices[-1]:
            self.simplices.pop()

    @property
    def is_empty(self) -> bool:
        return not self.simplices

    @property
    def dim(self) -> int:
        """Top simplex dimension; -1 for the empty complex."""
        return len(self.simplices) - 1

    def group(self, size: int):
        """All simplices with ``size`` vertices."""
        if 1 <= size <= len(self.simplices):
            return self.simplices[size - 1]
        return ()

    def vertex_count(self) -> int:
        return len(self.group(1))

    def __eq__(self, other):
        return isinstance(other, FlagComplex) and self.simplices == other.simplices

    def __repr__(self):
        counts = [len(g) for g in self.simplices]
        return f"FlagComplex(sizes={counts})"


def flag_complex(g: SimplicialGraph) -> FlagComplex:
    """Complex glued from every nonempty clique of g."""
    groups = enumerate_cliques(g, len(g.vertices))
    return FlagComplex(g, groups[1:])


def link_complex(g: SimplicialGraph, support, s) -> FlagComplex:
    """Link of the clique ``s`` inside the flag complex on ``support``.

    The result is the flag complex of the subgraph induced on the
    common neighbors of s intersected with support; for s = () it is
    the flag complex of the subgraph induced on support.
    """
    s = tuple(s)
    if not g.is_clique(s):
        raise ValueError(f"not a clique: {s!r}")
    cand = set(support)
    for v in cand:
        if v not in g:
            raise SchemaError(f"unknown vertex: {v!r}")
    for v in s:
        cand &= g.neighbors(v)
    return flag_complex(induced_subgraph(g, cand))


class ChainComplexFp:
    """Graded F_p vector spaces with boundary maps d_n: degree n -> n-1.

    ``dims`` maps each degree in [lo, hi] to its basis size and
    ``boundaries[n]`` holds d_n for lo < n <= hi (absent means zero).
    ``chain_floor`` is the least degree n for which d_n . d_(n+1) = 0 is
    part of the contract; homology is defined from that degree up.  For
    simplicial complexes the whole range qualifies.  The support
    complex of a character keeps its bottom rung (the augmentation
    receiving the empty clique) for display, but its chain condition
    and homology start at degree 1.
    """

    __slots__ = ("p", "lo", "hi", "dims", "boundaries", "basis_labels",
                 "chain_floor", "_ranks")

    def __init__(self, p, lo, hi, dims, boundaries, basis_labels=None,
                 chain_floor=None):
        check_prime(p)
        if hi < lo:
            raise ValueError("empty degree range")
        self.p = p
        self.lo = lo
        self.hi = hi
        self.dims = {n: int(dims.get(n, 0)) for n in range(lo, hi + 1)}
        self.boundaries = dict(boundaries)
        self.basis_labels = dict(basis_labels or {})
        self.chain_floor = lo if chain_floor is None else chain_floor
        self._ranks = {}
        for n, m in self.boundaries.items():
            if not (lo < n <= hi):
                raise ValueError(f"boundary degree out of range: {n}")
            if (m.rows, m.cols) != (self.dims[n - 1], self.dims[n]):
                raise ValueError(f"boundary {n} has shape {(m.rows, m.cols)}, "
                                 f"expected {(self.dims[n - 1], self.dims[n])}")

    def boundary(self, n: int) -> MatrixFp:
        """d_n, materialized as a zero matrix when absent."""
        if n in self.boundaries:
            return self.boundaries[n]
        rows = self.dims.get(n - 1, 0)
        cols = self.dims.get(n, 0)
        return MatrixFp(rows, cols, self.p)

    def boundary_rank(self, n: int) -> int:
        if n not in self._ranks:
            self._ranks[n] = rank_fp(self.boundary(n)) if n in self.boundaries else 0
        return self._ranks[n]

    def dd_violation(self):
        """First degree n >= chain_floor with d_n . d_(n+1) != 0, else None."""
        for n in range(max(self.chain_floor, self.lo + 1), self.hi):
            if not self.boundary(n).mul(self.boundary(n + 1)).is_zero():
                return n
        return None

    def homology(self) -> dict:
        """Dimension of ker d_n / im d_(n+1) for chain_floor <= n <= hi."""
        out = {}
        for n in range(max(self.chain_floor, self.lo), self.hi + 1):
            dim = self.dims[n] - self.boundary_rank(n) - self.boundary_rank(n + 1)
            if dim < 0:
                raise AssertionError(f"negative homology dimension at degree {n}")
            out[n] = dim
        return out


def simplicial_chain_complex(k: FlagComplex, p: int, augmented: bool = True
                             ) -> ChainComplexFp:
    """Chain complex of a flag complex; size-n cliques sit in degree n-1.

    With ``augmented`` the complex gains degree -1 of dimension 1 and
    the map sending every vertex to 1.
    """
    check_prime(p)
    lo = -1 if augmented else 0
    hi = max(k.dim, lo)
    dims = {}
    labels = {}
    if augmented:
        dims[-1] = 1
        labels[-1] = [()]
    for d in range(0, k.dim + 1):
        dims[d] = len(k.group(d + 1))
        labels[d] = list(k.group(d + 1))
    boundaries = {}
    if augmented and dims.get(0):
        boundaries[0] = MatrixFp(1, dims[0], p,
                                 {(0, j): 1 for j in range(dims[0])})
    for d in range(1, k.dim + 1):
        index_below = {simplex: i for i, simplex in enumerate(k.group(d))}
        entries = {}
        for j, simplex in enumerate(k.group(d + 1)):
            sign = 1
            for pos in range(len(simplex)):
                face = simplex[:pos] + simplex[pos + 1:]
                i = index_below[face]
                entries[(i, j)] = (entries.get((i, j), 0) + sign) % p
                sign = -sign
        boundaries[d] = MatrixFp(dims[d - 1], dims[d], p, entries)
    return ChainComplexFp(p, lo, hi, dims, boundaries, labels)


def reduced_homology(k: FlagComplex, p: int) -> dict:
    """Reduced homology dimensions over F_p, degrees -1 .. dim(k).

    The empty complex has dimension 1 in degree -1 and nothing else.
    The Euler characteristic of the result is checked against the
    alternating sum of the chain dimensions.
    """
    cx = simplicial_chain_complex(k, p, augmented=True)
    h = cx.homology()
    chain_euler = sum((-1) ** n * d for n, d in cx.dims.items())
    homology_euler = sum((-1) ** n * d for n, d in h.items())
    assert chain_euler == homology_euler, "Euler characteristic mismatch"
    return h


def is_k_acyclic(k: FlagComplex, p: int, level: int) -> bool:
    """True iff the reduced homology vanishes in degrees -1 .. level.

    Level -1 therefore just asks the complex to be nonempty; the empty
    complex has one dimension of reduced homology in degree -1.
    """
    if level < -1:
        raise ValueError("level must be >= -1")
    h = reduced_homology(k, p)
    return all(h.get(i, 0) == 0 for i in range(-1, level + 1))
