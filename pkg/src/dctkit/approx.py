"""Approximations by an additive subcategory, and minimal versions of maps.

An AddCategory is the additive closure of finitely many generator modules.
Right approximations are assembled from full hom bases and then shrunk to
their right-minimal versions by splitting off what a non-invertible
self-correction detects (iterated image/kernel splitting).  Left-sided
notions go through the vector-space duality.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import config, exactlin, repcat
from .errors import CapExceeded, DimensionMismatch
from .exactlin import Matrix
from .repcat import Module, Morphism


class AddCategory:
    """The additive closure of a finite list of modules, with a size d."""

    def __init__(self, generators: Sequence[Module], d: int):
        if d < 1:
            raise ValueError("the dimension parameter must be at least 1")
        self.generators: Tuple[Module, ...] = tuple(generators)
        if not self.generators:
            raise ValueError("an additive category needs at least one generator")
        self.algebra = self.generators[0].algebra
        for g in self.generators:
            if g.algebra is not self.algebra:
                raise DimensionMismatch("generators over different algebras")
        self.d = d

    def additive_generator(self) -> Module:
        total, _, _ = repcat.direct_sum(list(self.generators), algebra=self.algebra)
        return total

    def _summand_pool(self, cap=None) -> List[Module]:
        if not hasattr(self, "_pool"):
            pool: List[Module] = []
            for g in self.generators:
                for z, _, _ in repcat.split_summands(g, cap):
                    if not any(repcat.are_isomorphic(z, w, cap) for w in pool):
                        pool.append(z)
            self._pool = pool
        return self._pool

    def contains(self, x: Module, cap=None) -> bool:
        """Whether every indecomposable summand of x occurs in a generator."""
        if x.is_zero():
            return True
        pool = self._summand_pool(cap)
        for z, _, _ in repcat.split_summands(x, cap):
            if not any(repcat.are_isomorphic(z, w, cap) for w in pool):
                return False
        return True

    def is_generating_cogenerating(self, cap=None) -> bool:
        """Whether every indecomposable projective and injective lies inside."""
        if not hasattr(self, "_gen_cogen"):
            ok = True
            for v in range(self.algebra.quiver.n_vertices):
                if not self.contains(repcat.projective(self.algebra, v), cap):
                    ok = False
                    break
                if not self.contains(repcat.injective(self.algebra, v), cap):
                    ok = False
                    break
            self._gen_cogen = ok
        return self._gen_cogen


def right_approximation(cat: AddCategory, x: Module) -> Morphism:
    """A (not necessarily minimal) right approximation: all hom bases glued."""
    summands: List[Module] = []
    pieces: List[Morphism] = []
    for g in cat.generators:
        for f in repcat.hom_basis(g, x):
            summands.append(g)
            pieces.append(f)
    if not summands:
        z = repcat.zero_module(x.algebra)
        return Morphism.zero(z, x)
    _, out, _, _ = repcat.glue_columns(x, summands, pieces)
    return out


def left_approximation(cat: AddCategory, x: Module) -> Morphism:
    """A (not necessarily minimal) left approximation: all hom bases stacked."""
    summands: List[Module] = []
    pieces: List[Morphism] = []
    for g in cat.generators:
        for f in repcat.hom_basis(x, g):
            summands.append(g)
            pieces.append(f)
    if not summands:
        z = repcat.zero_module(x.algebra)
        return Morphism.zero(x, z)
    _, out, _, _ = repcat.glue_rows(x, summands, pieces)
    return out


def is_right_approximation(cat: AddCategory, g: Morphism) -> bool:
    for gen in cat.generators:
        if repcat.hom_image(gen, g).cols != repcat.hom_dim(gen, g.codomain):
            return False
    return True


def is_left_approximation(cat: AddCategory, f: Morphism) -> bool:
    for gen in cat.generators:
        if repcat.hom_coimage(f, gen).cols != repcat.hom_dim(f.domain, gen):
            return False
    return True


# -- minimal versions ------------------------------------------------------


def _null_endos(g: Morphism) -> List[Morphism]:
    """Basis of the endomorphisms of the domain killed by postcomposing g."""
    end = repcat.hom_basis(g.domain, g.domain)
    if not end:
        return []
    field = g.domain.field
    cols = [repcat.hom_vec(g @ e) for e in end]
    mat = Matrix(field, np.stack(cols, axis=1))
    coords = exactlin.kernel_basis(mat)
    out = []
    for k in range(coords.cols):
        f = None
        for j in range(len(end)):
            c = coords[j, k]
            if c:
                term = end[j].scale(c)
                f = term if f is None else f + term
        out.append(f if f is not None else Morphism.zero(g.domain, g.domain))
    return out


def _first_noninvertible_correction(
    g: Morphism, basis: List[Morphism], cap=None
) -> Optional[Morphism]:
    """First phi = id + psi with g o phi = g that is not invertible, if any."""
    if not basis:
        return None
    field = g.domain.field
    total = repcat._scan_space(field, len(basis), cap)
    ident = Morphism.identity(g.domain)
    for counter in range(1, total):
        psi = repcat._combination(basis, counter, field.p)
        phi = ident + psi
        if not phi.is_iso():
            return phi
    return None


def is_right_minimal(g: Morphism, cap=None) -> bool:
    return _first_noninvertible_correction(g, _null_endos(g), cap) is None


def right_minimalize(g: Morphism, cap=None) -> Tuple[Morphism, Morphism]:
    """Right-minimal version of g, with the inclusion of the kept summand.

    Returns (g_min, incl) where g_min = g @ incl and incl splits.
    """
    incl_total = Morphism.identity(g.domain)
    while True:
        phi = _first_noninvertible_correction(g, _null_endos(g), cap)
        if phi is None:
            return g, incl_total
        n = max(g.domain.total_dim, 1)
        phi_n = phi
        for _ in range(n - 1):
            phi_n = phi_n @ phi
        kept, inc = repcat.image(phi_n)
        if kept.total_dim == g.domain.total_dim:
            raise CapExceeded("minimalization failed to shrink the domain")
        g = g @ inc
        incl_total = incl_total @ inc


def is_left_minimal(f: Morphism, cap=None) -> bool:
    return is_right_minimal(repcat.duality_morphism(f), cap)


def left_minimalize(f: Morphism, cap=None) -> Tuple[Morphism, Morphism]:
    """Left-minimal version of f, with the projection onto the kept summand.

    Returns (f_min, proj) where f_min = proj @ f and proj splits.
    """
    df = repcat.duality_morphism(f)
    dmin, dincl = right_minimalize(df, cap)
    f_min = repcat.rebase(
        repcat.duality_morphism(dmin), f.domain, repcat.duality(dmin.domain)
    )
    proj = repcat.rebase(
        repcat.duality_morphism(dincl), f.codomain, f_min.codomain
    )
    return f_min, proj


def minimal_right_approximation(cat: AddCategory, x: Module, cap=None) -> Morphism:
    g, _ = right_minimalize(right_approximation(cat, x), cap)
    return g


def minimal_left_approximation(cat: AddCategory, x: Module, cap=None) -> Morphism:
    f, _ = left_minimalize(left_approximation(cat, x), cap)
    return f


# -- radical subspaces -----------------------------------------------------


def _rad_between_indecomposables(x: Module, y: Module, cap=None) -> Matrix:
    """Flat-coordinate span of non-isomorphisms between indecomposables."""
    field = x.field
    n = repcat.hom_flat_dim(x, y)
    basis = repcat.hom_basis(x, y)
    if not basis:
        return Matrix.zeros(field, n, 0)
    if x.dims != y.dims or repcat.find_isomorphism(x, y, cap) is None:
        return repcat.hom_space_matrix(x, y)
    cols = []
    total = repcat._scan_space(field, len(basis), cap)
    for counter in range(1, total):
        f = repcat._combination(basis, counter, field.p)
        if not f.is_iso():
            cols.append(repcat.hom_vec(f))
    if not cols:
        return Matrix.zeros(field, n, 0)
    return exactlin.canonical_basis(Matrix(field, np.stack(cols, axis=1)))


def rad_hom_basis(x: Module, y: Module, cap=None) -> Matrix:
    """Flat-coordinate basis of the radical subspace of Hom(x, y)."""
    field = x.field
    n = repcat.hom_flat_dim(x, y)
    if x.is_zero() or y.is_zero():
        return Matrix.zeros(field, n, 0)
    dom_parts = repcat.split_summands(x, cap)
    cod_parts = repcat.split_summands(y, cap)
    pieces = []
    for zi, _, proj_i in dom_parts:
        for zj, inc_j, _ in cod_parts:
            rad = _rad_between_indecomposables(zi, zj, cap)
            for k in range(rad.cols):
                r = repcat.morphism_from_vec(zi, zj, rad.data[:, k], _skip_check=True)
                pieces.append(repcat.hom_vec(inc_j @ r @ proj_i))
    if not pieces:
        return Matrix.zeros(field, n, 0)
    return exactlin.canonical_basis(Matrix(field, np.stack(pieces, axis=1)))
