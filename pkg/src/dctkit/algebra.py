"""Bound quiver algebras kQ/I over a prime field.

A presentation is a quiver, a list of parallel-path relations, and a
nilpotency bound N asserting rad^N = 0 in the quotient.  The algebra is
realized linearly: a canonical basis of residue classes of paths of length
below N is carved out of the span of all such paths by row-reducing the
span of truncated products u*r*v, and admissibility of the relation ideal
is certified by bounded-degree ideal membership for every path of length
exactly N (a failure reports a witness path).

Paths are written in traversal order: the word (a, b) means "walk a, then
b", so it composes when target(a) = source(b).  Products in the algebra
concatenate words the same way, which makes the projective right module at
a vertex v the span of residue paths starting at v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import config
from .errors import CapExceeded, DimensionMismatch, NotAdmissible
from .exactlin import PrimeField, _rref_data


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """A finite quiver with string vertex labels and named arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]]):
        vertices = [str(v) for v in vertices]
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex labels")
        if not vertices:
            raise ValueError("a quiver needs at least one vertex")
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        arr = []
        names = set()
        for name, src, tgt in arrows:
            name = str(name)
            if name in names:
                raise ValueError(f"duplicate arrow name {name!r}")
            if str(src) not in self._vindex or str(tgt) not in self._vindex:
                raise ValueError(f"arrow {name!r} references an unknown vertex")
            names.add(name)
            arr.append(Arrow(name, self._vindex[str(src)], self._vindex[str(tgt)]))
        self.arrows: Tuple[Arrow, ...] = tuple(arr)
        self._aindex = {a.name: i for i, a in enumerate(self.arrows)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label: str) -> int:
        try:
            return self._vindex[str(label)]
        except KeyError:
            raise ValueError(f"unknown vertex {label!r}") from None

    def arrow_index(self, name: str) -> int:
        try:
            return self._aindex[str(name)]
        except KeyError:
            raise ValueError(f"unknown arrow {name!r}") from None

    def reversed(self) -> "Quiver":
        return Quiver(
            self.vertices,
            [
                (a.name, self.vertices[a.target], self.vertices[a.source])
                for a in self.arrows
            ],
        )

    def __repr__(self):
        arrows = ", ".join(
            f"{a.name}:{self.vertices[a.source]}->{self.vertices[a.target]}"
            for a in self.arrows
        )
        return f"Quiver({list(self.vertices)}; {arrows})"


@dataclass(frozen=True)
class Path:
    """A directed path, stored as arrow indices in traversal order.

    The source vertex is carried explicitly so that length-zero paths
    (the vertex idempotents) are representable.
    """

    source: int
    arrows: Tuple[int, ...]

    def target(self, quiver: Quiver) -> int:
        return quiver.arrows[self.arrows[-1]].target if self.arrows else self.source

    def __len__(self):
        return len(self.arrows)


@dataclass(frozen=True)
class RelationElement:
    """A linear combination of parallel paths of length at least two."""

    terms: Tuple[Tuple[int, Path], ...]
    source: int
    target: int


def _sort_key(quiver: Quiver, path: Path):
    return (len(path.arrows), tuple(quiver.arrows[i].name for i in path.arrows), path.source)


def _enumerate_paths(quiver: Quiver, max_len: int) -> List[Path]:
    """All paths of length <= max_len, sorted length-lexicographically by arrow name."""
    out = [Path(v, ()) for v in range(quiver.n_vertices)]
    frontier = list(out)
    for _ in range(max_len):
        new = []
        for path in frontier:
            at = path.target(quiver)
            for i, a in enumerate(quiver.arrows):
                if a.source == at:
                    new.append(Path(path.source, path.arrows + (i,)))
        out.extend(new)
        if len(out) > config.PATH_CAP:
            raise CapExceeded(
                f"path enumeration exceeded {config.PATH_CAP} paths; "
                "the quiver has too many cycles for this bound"
            )
        frontier = new
        if not frontier:
            break
    out.sort(key=lambda p: _sort_key(quiver, p))
    return out


def _parse_relations(quiver: Quiver, relations, field: PrimeField) -> List[RelationElement]:
    parsed = []
    for rel in relations:
        terms = []
        src = tgt = None
        for coeff, word in rel:
            arrows = tuple(quiver.arrow_index(a) for a in word)
            if len(arrows) < 2:
                raise ValueError("relation paths must have length at least 2")
            for x, y in zip(arrows, arrows[1:]):
                if quiver.arrows[x].target != quiver.arrows[y].source:
                    raise ValueError(f"relation word {list(word)} is not a path")
            path = Path(quiver.arrows[arrows[0]].source, arrows)
            psrc, ptgt = path.source, path.target(quiver)
            if src is None:
                src, tgt = psrc, ptgt
            elif (psrc, ptgt) != (src, tgt):
                raise ValueError("relation terms are not parallel paths")
            c = coeff % field.p
            if c:
                terms.append((c, path))
        if terms:
            parsed.append(RelationElement(tuple(terms), src, tgt))
    return parsed


class BoundQuiverAlgebra:
    """A finite-dimensional quotient of a path algebra by an admissible ideal.

    Attributes:
        quiver: the underlying quiver.
        relations: parsed relation elements.
        bound: the nilpotency witness N (rad^N = 0).
        field: scalars.
        path_basis: residue paths forming the canonical basis.
    """

    def __init__(self, quiver, relations, bound, field, _internal=None):
        self.quiver = quiver
        self.relations = relations
        self.bound = bound
        self.field = field
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        if _internal is not None:
            (self.path_basis, self._nf) = _internal
        else:
            self.path_basis, self._nf = self._build_basis()
        self._index = {p: i for i, p in enumerate(self.path_basis)}
        self._mult: Dict[Tuple[int, int], Optional[np.ndarray]] = {}

    # -- construction -------------------------------------------------

    def _build_basis(self):
        quiver, field, n = self.quiver, self.field, self.bound
        short = [p for p in _enumerate_paths(quiver, n - 1)]
        index = {p: i for i, p in enumerate(short)}
        span_rows = []
        for rel in self.relations:
            for u in short:
                if u.target(quiver) != rel.source:
                    continue
                for w in short:
                    if w.source != rel.target:
                        continue
                    if len(u) + len(w) > n - 2:
                        continue
                    vec = np.zeros(len(short), dtype=np.int64)
                    for coeff, t in rel.terms:
                        full = u.arrows + t.arrows + w.arrows
                        if len(full) < n:
                            vec[index[Path(u.source, full)]] += coeff
                    vec %= field.p
                    if vec.any():
                        span_rows.append(vec)
        if span_rows:
            reduced, pivots = _rref_data(field, np.array(span_rows, dtype=np.int64))
        else:
            reduced, pivots = np.zeros((0, len(short)), dtype=np.int64), []
        pivot_set = set(pivots)
        basis = [p for i, p in enumerate(short) if i not in pivot_set]
        basis_pos = [i for i in range(len(short)) if i not in pivot_set]
        # normal form of the i-th short path, as coordinates over the basis
        nf_full = np.eye(len(short), dtype=np.int64)
        for r, c in enumerate(pivots):
            nf_full[c] = (-reduced[r]) % field.p
            nf_full[c, c] = 0
        nf = {p: nf_full[i][basis_pos] % field.p for i, p in enumerate(short)}
        self._check_admissible(short)
        return tuple(basis), nf

    def _check_admissible(self, short):
        quiver, field, n = self.quiver, self.field, self.bound
        max_rel = max((max(len(t) for _, t in r.terms) for r in self.relations), default=0)
        degree = n + max_rel
        full = _enumerate_paths(quiver, degree)
        top = [p for p in full if len(p) == n]
        if not top:
            return
        index = {p: i for i, p in enumerate(full)}
        cert_rows = []
        for rel in self.relations:
            rel_max = max(len(t) for _, t in rel.terms)
            for u in full:
                if u.target(quiver) != rel.source:
                    continue
                for w in full:
                    if w.source != rel.target:
                        continue
                    if len(u) + len(w) + rel_max > degree:
                        continue
                    vec = np.zeros(len(full), dtype=np.int64)
                    for coeff, t in rel.terms:
                        vec[index[Path(u.source, u.arrows + t.arrows + w.arrows)]] += coeff
                    vec %= field.p
                    if vec.any():
                        cert_rows.append(vec)
        if cert_rows:
            reduced, pivots = _rref_data(field, np.array(cert_rows, dtype=np.int64))
        else:
            reduced, pivots = np.zeros((0, len(full)), dtype=np.int64), []
        pivot_of = {c: r for r, c in enumerate(pivots)}
        for path in top:
            vec = np.zeros(len(full), dtype=np.int64)
            vec[index[path]] = 1
            for c in range(len(full)):
                if vec[c] and c in pivot_of:
                    vec = (vec - vec[c] * reduced[pivot_of[c]]) % field.p
            if vec.any():
                names = tuple(quiver.arrows[i].name for i in path.arrows)
                raise NotAdmissible(
                    f"path {'*'.join(names)} of length {n} does not lie in the "
                    "relation ideal; the nilpotency bound is not witnessed",
                    witness=names,
                )

    # -- basic structure ----------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.path_basis)

    def basis_index(self, path: Path) -> int:
        return self._index[path]

    def basis_source(self, i: int) -> int:
        return self.path_basis[i].source

    def basis_target(self, i: int) -> int:
        return self.path_basis[i].target(self.quiver)

    def basis_indices_from(self, v: int) -> List[int]:
        return [i for i, p in enumerate(self.path_basis) if p.source == v]

    def basis_indices_between(self, u: int, v: int) -> List[int]:
        return [
            i
            for i, p in enumerate(self.path_basis)
            if p.source == u and p.target(self.quiver) == v
        ]

    def idempotent(self, v: int) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.int64)
        vec[self.basis_index(Path(v, ()))] = 1
        return vec

    def unit(self) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.int64)
        for v in range(self.quiver.n_vertices):
            vec[self.basis_index(Path(v, ()))] = 1
        return vec

    def _basis_product(self, i: int, j: int) -> Optional[np.ndarray]:
        """Coordinates of basis_i * basis_j, or None for zero."""
        key = (i, j)
        if key not in self._mult:
            p, q = self.path_basis[i], self.path_basis[j]
            if p.target(self.quiver) != q.source:
                self._mult[key] = None
            else:
                word = p.arrows + q.arrows
                if len(word) >= self.bound:
                    self._mult[key] = None
                else:
                    vec = self._nf[Path(p.source, word)]
                    self._mult[key] = vec if vec.any() else None
        return self._mult[key]

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two coordinate vectors over the path basis."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("coordinate vectors of wrong length")
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(np.asarray(x) % self.field.p)[0]:
            for j in np.nonzero(np.asarray(y) % self.field.p)[0]:
                prod = self._basis_product(int(i), int(j))
                if prod is not None:
                    out += int(x[i]) * int(y[j]) * prod
        return out % self.field.p

    # -- the opposite algebra -----------------------------------------

    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra, built by reversing every stored path.

        Reversal is an anti-isomorphism, so the reversed path basis is a
        valid basis of the opposite algebra and normal forms carry over
        coordinate for coordinate.  The operation is strictly involutive:
        opposite() of the result is this very object again.
        """
        if self._opposite is not None:
            return self._opposite
        quiver_op = self.quiver.reversed()

        def rev(path: Path) -> Path:
            return Path(path.target(self.quiver), tuple(reversed(path.arrows)))

        relations_op = [
            RelationElement(
                tuple((c, rev(t)) for c, t in rel.terms), rel.target, rel.source
            )
            for rel in self.relations
        ]
        basis_op = tuple(rev(p) for p in self.path_basis)
        nf_op = {rev(p): vec for p, vec in self._nf.items()}
        opp = BoundQuiverAlgebra(
            quiver_op,
            relations_op,
            self.bound,
            self.field,
            _internal=(basis_op, nf_op),
        )
        opp._opposite = self
        self._opposite = opp
        return opp

    def __repr__(self):
        return (
            f"BoundQuiverAlgebra(dim={self.dim}, vertices={len(self.quiver.vertices)}, "
            f"arrows={len(self.quiver.arrows)}, p={self.field.p}, N={self.bound})"
        )


def build_algebra(
    quiver: Quiver,
    relations,
    bound: int,
    field: PrimeField,
) -> BoundQuiverAlgebra:
    """Build kQ/I from a presentation.

    Args:
        quiver: the quiver Q.
        relations: iterable of relations, each a list of (coefficient, word)
            terms where a word is a sequence of arrow names in traversal
            order.
        bound: nilpotency witness N >= 1; rad^N = 0 must hold in kQ/I.
        field: the prime field of scalars.

    Raises:
        NotAdmissible: when some path of length N is not certified to lie
            in the relation ideal.
        ValueError: malformed presentation.
    """
    if bound < 1:
        raise ValueError("nilpotency bound must be at least 1")
    parsed = _parse_relations(quiver, relations, field)
    return BoundQuiverAlgebra(quiver, parsed, bound, field)
