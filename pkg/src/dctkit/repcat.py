"""Finite-dimensional right modules over a bound quiver algebra.

A module is a representation of the quiver: one F_p-space per vertex and
one matrix per arrow, mapping the source space to the target space, with
every relation evaluating to zero.  Morphisms are tuples of vertex
matrices intertwining the arrow actions.

Hom spaces are computed exactly as kernels of the intertwining system and
always come back in the same canonical order, so everything downstream
(approximations, resolutions, scans) is deterministic.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import config, exactlin
from .algebra import BoundQuiverAlgebra, Path
from .errors import (
    CapExceeded,
    DimensionMismatch,
    InvalidModule,
    InvalidMorphism,
    InvalidSubmodule,
)
from .exactlin import Matrix


class Module:
    """A right module, given by vertex dimensions and arrow matrices.

    Args:
        algebra: the bound quiver algebra acted by.
        dims: one dimension per vertex, in quiver vertex order.
        maps: one Matrix per arrow, in quiver arrow order; the matrix for
            an arrow a: s -> t has shape dims[t] x dims[s].

    Raises:
        InvalidModule: wrong shapes or a violated relation.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, dims, maps, _skip_check=False):
        self.algebra = algebra
        self.dims: Tuple[int, ...] = tuple(int(d) for d in dims)
        self.maps: Tuple[Matrix, ...] = tuple(maps)
        quiver = algebra.quiver
        if len(self.dims) != quiver.n_vertices or len(self.maps) != len(quiver.arrows):
            raise InvalidModule("dimension vector or map list has wrong length")
        for a, m in zip(quiver.arrows, self.maps):
            if (m.rows, m.cols) != (self.dims[a.target], self.dims[a.source]):
                raise InvalidModule(
                    f"matrix for arrow {a.name} has shape {m.rows}x{m.cols}, "
                    f"expected {self.dims[a.target]}x{self.dims[a.source]}"
                )
        if not _skip_check and not relations_hold(algebra, self.dims, self.maps):
            raise InvalidModule("a relation does not vanish on this representation")
        self._cache: Dict = {}

    @property
    def field(self):
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> Dict[str, int]:
        return {v: d for v, d in zip(self.algebra.quiver.vertices, self.dims)}

    def path_action(self, path: Path) -> Matrix:
        """The matrix of acting by a path, target-space x source-space."""
        m = Matrix.identity(self.field, self.dims[path.source])
        for a in path.arrows:
            m = self.maps[a] @ m
        return m

    def __repr__(self):
        return f"Module(dims={list(self.dims)})"


def relations_hold(algebra: BoundQuiverAlgebra, dims, maps) -> bool:
    dims = tuple(dims)
    for rel in algebra.relations:
        total = Matrix.zeros(algebra.field, dims[rel.target], dims[rel.source])
        for coeff, path in rel.terms:
            m = Matrix.identity(algebra.field, dims[path.source])
            for a in path.arrows:
                m = maps[a] @ m
            total = total + m.scale(coeff)
        if not total.is_zero():
            return False
    return True


class Morphism:
    """A module morphism: one matrix per vertex, intertwining the arrows."""

    def __init__(self, domain: Module, codomain: Module, comps, _skip_check=False):
        self.domain = domain
        self.codomain = codomain
        self.comps: Tuple[Matrix, ...] = tuple(comps)
        if len(self.comps) != domain.algebra.quiver.n_vertices:
            raise InvalidMorphism("wrong number of vertex components")
        for v, c in enumerate(self.comps):
            if (c.rows, c.cols) != (codomain.dims[v], domain.dims[v]):
                raise InvalidMorphism(f"component at vertex {v} has wrong shape")
        if not _skip_check:
            for a in domain.algebra.quiver.arrows:
                i = domain.algebra.quiver.arrow_index(a.name)
                lhs = self.comps[a.target] @ domain.maps[i]
                rhs = codomain.maps[i] @ self.comps[a.source]
                if lhs != rhs:
                    raise InvalidMorphism(f"component fails to intertwine arrow {a.name}")

    @classmethod
    def zero(cls, domain: Module, codomain: Module) -> "Morphism":
        f = domain.field
        return cls(
            domain,
            codomain,
            [Matrix.zeros(f, codomain.dims[v], domain.dims[v]) for v in range(len(domain.dims))],
            _skip_check=True,
        )

    @classmethod
    def identity(cls, module: Module) -> "Morphism":
        return cls(
            module,
            module,
            [Matrix.identity(module.field, d) for d in module.dims],
            _skip_check=True,
        )

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition self after other."""
        if other.codomain is not self.domain:
            if other.codomain.dims != self.domain.dims:
                raise DimensionMismatch("composition of non-composable morphisms")
        return Morphism(
            other.domain,
            self.codomain,
            [a @ b for a, b in zip(self.comps, other.comps)],
            _skip_check=True,
        )

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(
            self.domain,
            self.codomain,
            [a + b for a, b in zip(self.comps, other.comps)],
            _skip_check=True,
        )

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(
            self.domain,
            self.codomain,
            [a - b for a, b in zip(self.comps, other.comps)],
            _skip_check=True,
        )

    def __neg__(self) -> "Morphism":
        return Morphism(self.domain, self.codomain, [-a for a in self.comps], _skip_check=True)

    def scale(self, c: int) -> "Morphism":
        return Morphism(
            self.domain, self.codomain, [m.scale(c) for m in self.comps], _skip_check=True
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def is_mono(self) -> bool:
        return all(exactlin.rank(c) == c.cols for c in self.comps)

    def is_epi(self) -> bool:
        return all(exactlin.rank(c) == c.rows for c in self.comps)

    def is_iso(self) -> bool:
        return all(exactlin.is_invertible(c) for c in self.comps)

    def inverse(self) -> "Morphism":
        comps = []
        for c in self.comps:
            inv = exactlin.inverse(c)
            if inv is None:
                raise InvalidMorphism("morphism is not invertible")
            comps.append(inv)
        return Morphism(self.codomain, self.domain, comps, _skip_check=True)

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and self.domain is other.domain
            and self.codomain is other.codomain
            and all(a == b for a, b in zip(self.comps, other.comps))
        )

    def __hash__(self):
        return hash(tuple(self.comps))

    def __repr__(self):
        return f"Morphism({self.domain!r} -> {self.codomain!r})"


# -- hom spaces ---------------------------------------------------------


def hom_flat_dim(x: Module, y: Module) -> int:
    return sum(a * b for a, b in zip(x.dims, y.dims))


def hom_vec(f: Morphism) -> np.ndarray:
    """Flatten a morphism: vertex components row-major, vertex order."""
    parts = [c.data.reshape(-1) for c in f.comps]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def morphism_from_vec(x: Module, y: Module, vec, _skip_check=False) -> Morphism:
    vec = np.asarray(vec, dtype=np.int64).reshape(-1)
    comps = []
    at = 0
    for v in range(len(x.dims)):
        r, c = y.dims[v], x.dims[v]
        comps.append(Matrix(x.field, vec[at : at + r * c].reshape(r, c)))
        at += r * c
    return Morphism(x, y, comps, _skip_check=_skip_check)


def hom_basis(x: Module, y: Module) -> Tuple[Morphism, ...]:
    """Canonical basis of Hom(x, y), cached on the domain module."""
    key = ("hom", id(y))
    cached = x._cache.get(key)
    if cached is not None and cached[0] is y:
        return cached[1]
    field = x.field
    n = hom_flat_dim(x, y)
    offsets = []
    at = 0
    for v in range(len(x.dims)):
        offsets.append(at)
        at += y.dims[v] * x.dims[v]
    rows = []
    for a in x.algebra.quiver.arrows:
        i = x.algebra.quiver.arrow_index(a.name)
        s, t = a.source, a.target
        # f_t @ X_a - Y_a @ f_s = 0 on flattened row-major unknowns
        block = np.zeros((y.dims[t] * x.dims[s], n), dtype=np.int64)
        if block.shape[0]:
            left = np.kron(np.eye(y.dims[t], dtype=np.int64), x.maps[i].data.T)
            block[:, offsets[t] : offsets[t] + y.dims[t] * x.dims[t]] += left
            right = np.kron(y.maps[i].data, np.eye(x.dims[s], dtype=np.int64))
            block[:, offsets[s] : offsets[s] + y.dims[s] * x.dims[s]] -= right
            rows.append(block % field.p)
    if rows:
        system = Matrix(field, np.vstack(rows))
    else:
        system = Matrix.zeros(field, 0, n)
    k = exactlin.kernel_basis(system)
    basis = tuple(
        morphism_from_vec(x, y, k.data[:, j], _skip_check=True) for j in range(k.cols)
    )
    x._cache[key] = (y, basis)
    return basis


def hom_dim(x: Module, y: Module) -> int:
    return len(hom_basis(x, y))


def hom_space_matrix(x: Module, y: Module) -> Matrix:
    """Columns are the flattened canonical hom basis (ambient flat coords)."""
    basis = hom_basis(x, y)
    field = x.field
    n = hom_flat_dim(x, y)
    if not basis:
        return Matrix.zeros(field, n, 0)
    return Matrix(field, np.stack([hom_vec(f) for f in basis], axis=1))


def hom_image(x: Module, g: Morphism) -> Matrix:
    """Image of Hom(x, g): Hom(x, dom g) -> Hom(x, cod g), flat coordinates."""
    cols = [hom_vec(g @ f) for f in hom_basis(x, g.domain)]
    n = hom_flat_dim(x, g.codomain)
    if not cols:
        return Matrix.zeros(x.field, n, 0)
    return exactlin.canonical_basis(Matrix(x.field, np.stack(cols, axis=1)))


def hom_coimage(g: Morphism, y: Module) -> Matrix:
    """Image of Hom(g, y): Hom(cod g, y) -> Hom(dom g, y), flat coordinates."""
    cols = [hom_vec(f @ g) for f in hom_basis(g.codomain, y)]
    n = hom_flat_dim(g.domain, y)
    if not cols:
        return Matrix.zeros(y.field, n, 0)
    return exactlin.canonical_basis(Matrix(y.field, np.stack(cols, axis=1)))


def factor_through(g: Morphism, f: Morphism) -> Optional[Morphism]:
    """Find h with f @ h = g, where g: W -> N and f: M -> N; None if impossible."""
    if g.codomain is not f.codomain and g.codomain.dims != f.codomain.dims:
        raise DimensionMismatch("codomains differ")
    basis = hom_basis(g.domain, f.domain)
    field = g.domain.field
    n = hom_flat_dim(g.domain, g.codomain)
    if basis:
        a = Matrix(field, np.stack([hom_vec(f @ h) for h in basis], axis=1))
    else:
        a = Matrix.zeros(field, n, 0)
    b = Matrix(field, hom_vec(g).reshape(-1, 1))
    sol = exactlin.solve(a, b)
    if sol is None:
        return None
    out = Morphism.zero(g.domain, f.domain)
    for j, h in enumerate(basis):
        c = sol[j, 0]
        if c:
            out = out + h.scale(c)
    return out


def cofactor_through(g: Morphism, f: Morphism) -> Optional[Morphism]:
    """Find h with h @ f = g, where g: L -> W and f: L -> M; None if impossible."""
    if g.domain is not f.domain and g.domain.dims != f.domain.dims:
        raise DimensionMismatch("domains differ")
    basis = hom_basis(f.codomain, g.codomain)
    field = g.domain.field
    n = hom_flat_dim(g.domain, g.codomain)
    if basis:
        a = Matrix(field, np.stack([hom_vec(h @ f) for h in basis], axis=1))
    else:
        a = Matrix.zeros(field, n, 0)
    b = Matrix(field, hom_vec(g).reshape(-1, 1))
    sol = exactlin.solve(a, b)
    if sol is None:
        return None
    out = Morphism.zero(f.codomain, g.codomain)
    for j, h in enumerate(basis):
        c = sol[j, 0]
        if c:
            out = out + h.scale(c)
    return out


def is_split_epi(g: Morphism) -> bool:
    return factor_through(Morphism.identity(g.codomain), g) is not None


def is_split_mono(f: Morphism) -> bool:
    return cofactor_through(Morphism.identity(f.domain), f) is not None


# -- kernels, images, quotients -----------------------------------------


def kernel(f: Morphism) -> Tuple[Module, Morphism]:
    """Kernel submodule with its inclusion."""
    x = f.domain
    bases = [exactlin.kernel_basis(c) for c in f.comps]
    return _submodule_from_bases(x, bases)


def image(f: Morphism) -> Tuple[Module, Morphism]:
    """Image submodule of the codomain with its inclusion."""
    y = f.codomain
    bases = [exactlin.image_basis(c) for c in f.comps]
    return _submodule_from_bases(y, bases)


def cokernel(f: Morphism) -> Tuple[Module, Morphism]:
    """Cokernel with its projection from the codomain."""
    y = f.codomain
    field = y.field
    comps = []
    projs = []
    secs = []
    for v in range(len(y.dims)):
        full = Matrix.identity(field, y.dims[v])
        c, q = exactlin.quotient(full, exactlin.image_basis(f.comps[v]))
        secs.append(c)
        projs.append(q)
        comps.append(c.cols)
    maps = []
    for a in y.algebra.quiver.arrows:
        i = y.algebra.quiver.arrow_index(a.name)
        maps.append(projs[a.target] @ y.maps[i] @ secs[a.source])
    coker = Module(y.algebra, comps, maps, _skip_check=True)
    proj = Morphism(y, coker, projs, _skip_check=True)
    return coker, proj


def _submodule_from_bases(x: Module, bases: Sequence[Matrix]) -> Tuple[Module, Morphism]:
    """Wrap arrow-invariant vertex subspaces as a module with inclusion."""
    maps = []
    for a in x.algebra.quiver.arrows:
        i = x.algebra.quiver.arrow_index(a.name)
        rhs = x.maps[i] @ bases[a.source]
        sol = exactlin.solve(bases[a.target], rhs)
        if sol is None:
            raise InvalidSubmodule(
                f"subspaces are not invariant under arrow {a.name}"
            )
        maps.append(sol)
    sub = Module(x.algebra, [b.cols for b in bases], maps, _skip_check=True)
    incl = Morphism(sub, x, bases, _skip_check=True)
    return sub, incl


def submodule(x: Module, spans: Sequence[Matrix]) -> Tuple[Module, Morphism]:
    """The submodule spanned by the given vertex subspaces.

    Raises InvalidSubmodule when the spans are not arrow-invariant.
    """
    bases = [exactlin.canonical_basis(s) for s in spans]
    return _submodule_from_bases(x, bases)


def submodule_generated(x: Module, spans: Sequence[Matrix]) -> Tuple[Module, Morphism]:
    """Close the given vertex subspaces under the arrow action, then wrap."""
    field = x.field
    cur = [exactlin.canonical_basis(s) for s in spans]
    while True:
        changed = False
        for a in x.algebra.quiver.arrows:
            i = x.algebra.quiver.arrow_index(a.name)
            pushed = x.maps[i] @ cur[a.source]
            if pushed.cols and not exactlin.contains(cur[a.target], pushed):
                cur[a.target] = exactlin.subspace_sum(cur[a.target], pushed)
                changed = True
        if not changed:
            break
    return _submodule_from_bases(x, cur)


def quotient_module(x: Module, incl: Morphism) -> Tuple[Module, Morphism]:
    """Quotient of x by the image of a mono into it, with the projection."""
    return cokernel(incl)


# -- construction of the standard modules --------------------------------


def zero_module(algebra: BoundQuiverAlgebra) -> Module:
    n = algebra.quiver.n_vertices
    field = algebra.field
    maps = [
        Matrix.zeros(field, 0, 0) for _ in algebra.quiver.arrows
    ]
    return Module(algebra, [0] * n, maps, _skip_check=True)


def simple(algebra: BoundQuiverAlgebra, v) -> Module:
    quiver = algebra.quiver
    vi = quiver.vertex_index(v) if isinstance(v, str) else v
    dims = [1 if i == vi else 0 for i in range(quiver.n_vertices)]
    field = algebra.field
    maps = [
        Matrix.zeros(field, dims[a.target], dims[a.source]) for a in quiver.arrows
    ]
    return Module(algebra, dims, maps, _skip_check=True)


def projective(algebra: BoundQuiverAlgebra, v) -> Module:
    """The indecomposable projective at v: residue paths starting at v."""
    quiver = algebra.quiver
    vi = quiver.vertex_index(v) if isinstance(v, str) else v
    idx = algebra.basis_indices_from(vi)
    by_vertex: List[List[int]] = [[] for _ in range(quiver.n_vertices)]
    for i in idx:
        by_vertex[algebra.basis_target(i)].append(i)
    pos = {i: (w, k) for w in range(quiver.n_vertices) for k, i in enumerate(by_vertex[w])}
    dims = [len(b) for b in by_vertex]
    field = algebra.field
    maps = []
    for a in quiver.arrows:
        m = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
        for k, i in enumerate(by_vertex[a.source]):
            path = algebra.path_basis[i]
            word = path.arrows + (quiver.arrow_index(a.name),)
            if len(word) >= algebra.bound:
                continue
            vec = algebra._nf[Path(path.source, word)]
            for j in np.nonzero(vec)[0]:
                w, row = pos[int(j)]
                if w != a.target:
                    raise InvalidModule("normal form does not preserve path targets")
                m[row, k] = vec[j]
        maps.append(Matrix(field, m))
    return Module(algebra, dims, maps, _skip_check=True)


def injective(algebra: BoundQuiverAlgebra, v) -> Module:
    """The indecomposable injective at v, dual of the opposite projective."""
    return duality(projective(algebra.opposite(), v))


def regular(algebra: BoundQuiverAlgebra):
    """The algebra as a right module over itself, with its projective summands."""
    return direct_sum(
        [projective(algebra, v) for v in range(algebra.quiver.n_vertices)]
    )


def duality(x: Module) -> Module:
    """The vector-space dual as a module over the opposite algebra."""
    opp = x.algebra.opposite()
    maps = [x.maps[i].transpose() for i in range(len(x.maps))]
    return Module(opp, x.dims, maps, _skip_check=True)


def duality_morphism(f: Morphism) -> Morphism:
    """D is contravariant: a map X -> Y dualizes to D(Y) -> D(X)."""
    return Morphism(
        duality(f.codomain),
        duality(f.domain),
        [c.transpose() for c in f.comps],
        _skip_check=True,
    )


def rebase(f: Morphism, domain: Module, codomain: Module) -> Morphism:
    """The same matrices as a morphism between entrywise-equal modules."""
    if domain.dims != f.domain.dims or codomain.dims != f.codomain.dims:
        raise DimensionMismatch("rebase targets have different dimensions")
    return Morphism(domain, codomain, f.comps, _skip_check=True)


def direct_sum(mods: Sequence[Module], algebra=None):
    """Finite direct sum.

    Returns:
        (sum module, inclusions, projections), all in the input order.
    """
    if not mods and algebra is None:
        raise ValueError("empty direct sum needs an explicit algebra")
    alg = algebra if algebra is not None else mods[0].algebra
    field = alg.field
    quiver = alg.quiver
    dims = [sum(m.dims[v] for m in mods) for v in range(quiver.n_vertices)]
    maps = []
    for a in quiver.arrows:
        i = quiver.arrow_index(a.name)
        maps.append(exactlin.block_diag(field, [m.maps[i] for m in mods]))
    total = Module(alg, dims, maps, _skip_check=True)
    incs, projs = [], []
    offsets = [0] * quiver.n_vertices
    for m in mods:
        inc_comps, proj_comps = [], []
        for v in range(quiver.n_vertices):
            inc = np.zeros((dims[v], m.dims[v]), dtype=np.int64)
            pro = np.zeros((m.dims[v], dims[v]), dtype=np.int64)
            o = offsets[v]
            for k in range(m.dims[v]):
                inc[o + k, k] = 1
                pro[k, o + k] = 1
            inc_comps.append(Matrix(field, inc))
            proj_comps.append(Matrix(field, pro))
        incs.append(Morphism(m, total, inc_comps, _skip_check=True))
        projs.append(Morphism(total, m, proj_comps, _skip_check=True))
        for v in range(quiver.n_vertices):
            offsets[v] += m.dims[v]
    return total, incs, projs


def glue_columns(cod: Module, summands: Sequence[Module], pieces: Sequence[Morphism]):
    """Assemble (sum of summands) -> cod from one morphism per summand."""
    total, incs, projs = direct_sum(list(summands), algebra=cod.algebra)
    out = Morphism.zero(total, cod)
    for piece, proj in zip(pieces, projs):
        out = out + (piece @ proj)
    return total, out, incs, projs


def glue_rows(dom: Module, summands: Sequence[Module], pieces: Sequence[Morphism]):
    """Assemble dom -> (sum of summands) from one morphism per summand."""
    total, incs, projs = direct_sum(list(summands), algebra=dom.algebra)
    out = Morphism.zero(dom, total)
    for piece, inc in zip(pieces, incs):
        out = out + (inc @ piece)
    return total, out, incs, projs


# -- radical series, covers, envelopes -----------------------------------


def radical(x: Module) -> Tuple[Module, Morphism]:
    """The radical x . rad(algebra): span of all arrow images."""
    field = x.field
    quiver = x.algebra.quiver
    spans = []
    for v in range(quiver.n_vertices):
        pieces = [
            x.maps[quiver.arrow_index(a.name)]
            for a in quiver.arrows
            if a.target == v
        ]
        stacked = exactlin.hstack(pieces, field=field, rows=x.dims[v])
        spans.append(exactlin.canonical_basis(stacked))
    return _submodule_from_bases(x, spans)


def _top_data(x: Module):
    """Vertexwise complements of the radical with their projections."""
    field = x.field
    quiver = x.algebra.quiver
    reps, projs = [], []
    rad_spans = []
    for v in range(quiver.n_vertices):
        pieces = [
            x.maps[quiver.arrow_index(a.name)]
            for a in quiver.arrows
            if a.target == v
        ]
        rad_spans.append(
            exactlin.canonical_basis(exactlin.hstack(pieces, field=field, rows=x.dims[v]))
        )
    for v in range(quiver.n_vertices):
        c, q = exactlin.quotient(Matrix.identity(field, x.dims[v]), rad_spans[v])
        reps.append(c)
        projs.append(q)
    return reps, projs


def top(x: Module) -> Tuple[Module, Morphism]:
    """The largest semisimple quotient, with the projection onto it."""
    reps, projs = _top_data(x)
    field = x.field
    quiver = x.algebra.quiver
    dims = [c.cols for c in reps]
    maps = []
    for a in quiver.arrows:
        maps.append(Matrix.zeros(field, dims[a.target], dims[a.source]))
    t = Module(x.algebra, dims, maps, _skip_check=True)
    proj = Morphism(x, t, projs, _skip_check=True)
    # arrows land in the radical, so the projection really is a morphism
    for a in quiver.arrows:
        i = quiver.arrow_index(a.name)
        if not (projs[a.target] @ x.maps[i]).is_zero():
            raise InvalidModule("radical complement leaked through an arrow")
    return t, proj


def socle(x: Module) -> Tuple[Module, Morphism]:
    """The largest semisimple submodule: joint kernels of outgoing arrows."""
    field = x.field
    quiver = x.algebra.quiver
    spans = []
    for v in range(quiver.n_vertices):
        pieces = [
            x.maps[quiver.arrow_index(a.name)]
            for a in quiver.arrows
            if a.source == v
        ]
        stacked = exactlin.vstack(pieces, field=field, cols=x.dims[v])
        spans.append(exactlin.kernel_basis(stacked))
    return _submodule_from_bases(x, spans)


def projective_cover(x: Module):
    """Minimal projective cover.

    Returns:
        (P, epi, vertices) where P is a direct sum of indecomposable
        projectives, epi: P -> x is the cover, and vertices lists the
        vertex (index) of each summand in order.
    """
    reps, _ = _top_data(x)
    quiver = x.algebra.quiver
    summand_vertices = []
    summands = []
    pieces = []
    for v in range(quiver.n_vertices):
        for k in range(reps[v].cols):
            gen = reps[v].col(k)
            pv = projective(x.algebra, v)
            comps = []
            for w in range(quiver.n_vertices):
                cols = []
                for i in _projective_basis_indices(x.algebra, v, w):
                    path = x.algebra.path_basis[i]
                    cols.append(x.path_action(path) @ gen)
                comps.append(
                    exactlin.hstack(cols, field=x.field, rows=x.dims[w])
                )
            summands.append(pv)
            summand_vertices.append(v)
            pieces.append(Morphism(pv, x, comps, _skip_check=True))
    if not summands:
        z = zero_module(x.algebra)
        return z, Morphism.zero(z, x), []
    total, epi, _, _ = glue_columns(x, summands, pieces)
    if not epi.is_epi():
        raise InvalidModule("projective cover failed to be surjective")
    return total, epi, summand_vertices


def _projective_basis_indices(algebra: BoundQuiverAlgebra, v: int, w: int) -> List[int]:
    """Basis path indices of the projective at v sitting over vertex w.

    The order must agree with projective(): paths from v grouped by target,
    in path-basis order.
    """
    return [i for i in algebra.basis_indices_from(v) if algebra.basis_target(i) == w]


def injective_envelope(x: Module) -> Tuple[Module, Morphism]:
    """Minimal injective envelope, computed through the duality."""
    dx = duality(x)
    p, epi, _ = projective_cover(dx)
    env = duality(p)
    mono = rebase(duality_morphism(epi), x, env)
    if not mono.is_mono():
        raise InvalidModule("injective envelope failed to be injective")
    return env, mono


# -- decompositions and isomorphism tests ---------------------------------


def _scan_space(field, count_exponent: int, cap) -> int:
    """Number of scan iterations p^count_exponent, guarded by the cap."""
    total = field.p ** count_exponent
    limit = config.scan_cap(cap)
    if total > limit:
        raise CapExceeded(
            f"scan of size {field.p}^{count_exponent} exceeds the cap {limit}"
        )
    return total


def _combination(basis: Sequence[Morphism], counter: int, p: int) -> Morphism:
    f = None
    for b in basis:
        digit = counter % p
        counter //= p
        if digit:
            term = b.scale(digit)
            f = term if f is None else f + term
    if f is None:
        raise ValueError("zero combination")
    return f


def nontrivial_idempotent(x: Module, cap=None) -> Optional[Morphism]:
    """First nontrivial idempotent endomorphism in scan order, if any."""
    basis = hom_basis(x, x)
    total = _scan_space(x.field, len(basis), cap)
    ident = Morphism.identity(x)
    for counter in range(1, total):
        e = _combination(basis, counter, x.field.p)
        if e == ident:
            continue
        if (e @ e) == e and not e.is_zero():
            return e
    return None


def is_indecomposable(x: Module, cap=None) -> bool:
    if x.is_zero():
        return False
    return nontrivial_idempotent(x, cap) is None


def split_summands(x: Module, cap=None) -> List[Tuple[Module, Morphism, Morphism]]:
    """Split into indecomposable summands.

    Returns:
        list of (summand, inclusion, projection) with sum(inc @ proj) = id.
    """
    if x.is_zero():
        return []
    e = nontrivial_idempotent(x, cap)
    if e is None:
        return [(x, Morphism.identity(x), Morphism.identity(x))]
    a, inc_a = image(e)
    b, inc_b = kernel(e)
    total, theta, _, projs = glue_columns(x, [a, b], [inc_a, inc_b])
    theta_inv = theta.inverse()
    out = []
    for piece, proj in ((a, projs[0]), (b, projs[1])):
        back = proj @ theta_inv
        for z, inc_z, proj_z in split_summands(piece, cap):
            out.append((z, (inc_a if piece is a else inc_b) @ inc_z, proj_z @ back))
    return out


def decompose(x: Module, cap=None) -> List[Tuple[Module, int]]:
    """Indecomposable summands grouped into (representative, multiplicity)."""
    groups: List[Tuple[Module, int]] = []
    for z, _, _ in split_summands(x, cap):
        for k, (rep, mult) in enumerate(groups):
            if are_isomorphic(rep, z, cap):
                groups[k] = (rep, mult + 1)
                break
        else:
            groups.append((z, 1))
    return groups


def find_isomorphism(x: Module, y: Module, cap=None) -> Optional[Morphism]:
    if x.dims != y.dims:
        return None
    if x.is_zero():
        return Morphism.zero(x, y)
    basis = hom_basis(x, y)
    if not basis:
        return None
    if hom_dim(x, x) != hom_dim(y, y) or len(basis) != hom_dim(y, x):
        return None
    total = _scan_space(x.field, len(basis), cap)
    for counter in range(1, total):
        f = _combination(basis, counter, x.field.p)
        if f.is_iso():
            return f
    return None


def are_isomorphic(x: Module, y: Module, cap=None) -> bool:
    return find_isomorphism(x, y, cap) is not None


def is_radical_morphism(f: Morphism, cap=None) -> bool:
    """True when no component between indecomposable summands is invertible."""
    if f.domain.is_zero() or f.codomain.is_zero():
        return True
    dom_parts = split_summands(f.domain, cap)
    cod_parts = split_summands(f.codomain, cap)
    for _, inc, _ in dom_parts:
        for _, _, proj in cod_parts:
            if (proj @ f @ inc).is_iso():
                return False
    return True
