"""Longer-than-short exact sequences and their calculus.

A DSequence is a complex T_0 -> T_1 -> ... -> T_n with zero composites,
usually with d+2 terms.  Hom-exactness against the generators of an
additive category is what the one-sided exactness tests measure: applying
Hom(G, -) (left test) or Hom(-, G) (right test) must give vector-space
sequences that are exact at every spot except the trailing one.

Null homotopies are found by solving one joint linear system over all
degrees, so the returned homotopy is canonical.  Pullbacks of a sequence
tail along a map into its end are built as a staircase of classical
pullbacks interleaved with right approximations; the defining property —
the mapping cone of the resulting morphism of complexes is left d-exact —
is what the tests check.  Pushouts are the duals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import exactlin, homological, repcat
from .approx import (
    AddCategory,
    minimal_right_approximation,
    right_approximation,
    right_minimalize,
)
from .errors import DimensionMismatch, InvalidMorphism, VerificationFailed
from .exactlin import Matrix
from .repcat import Module, Morphism


class DSequence:
    """A finite complex of modules, maps running left to right."""

    def __init__(
        self,
        terms: Sequence[Module],
        maps: Sequence[Morphism],
        category: Optional[AddCategory] = None,
        _skip_check=False,
    ):
        self.terms: Tuple[Module, ...] = tuple(terms)
        self.maps: Tuple[Morphism, ...] = tuple(maps)
        self.category = category
        if len(self.terms) != len(self.maps) + 1:
            raise DimensionMismatch("a complex needs one more term than maps")
        if not self.maps:
            raise DimensionMismatch("a complex needs at least one map")
        for i, m in enumerate(self.maps):
            if m.domain is not self.terms[i] or m.codomain is not self.terms[i + 1]:
                raise InvalidMorphism(f"map {i} does not connect terms {i} and {i + 1}")
        if not _skip_check:
            for i in range(len(self.maps) - 1):
                if not (self.maps[i + 1] @ self.maps[i]).is_zero():
                    raise InvalidMorphism(f"composite of maps {i} and {i + 1} is nonzero")

    @property
    def d(self) -> int:
        return len(self.maps) - 1

    @property
    def left_map(self) -> Morphism:
        return self.maps[0]

    @property
    def right_map(self) -> Morphism:
        return self.maps[-1]

    @property
    def left_term(self) -> Module:
        return self.terms[0]

    @property
    def right_term(self) -> Module:
        return self.terms[-1]

    def interior(self) -> Tuple[Module, ...]:
        return self.terms[1:-1]

    def check_membership(self, cap=None) -> bool:
        """Whether all terms lie in the attached category, if one is attached."""
        if self.category is None:
            return True
        return all(self.category.contains(t, cap) for t in self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        dims = " -> ".join(str(t.total_dim) for t in self.terms)
        return f"DSequence({dims})"


class ComplexMorphism:
    """A degreewise morphism between two complexes of equal length."""

    def __init__(self, src: DSequence, dst: DSequence, maps: Sequence[Morphism]):
        self.src = src
        self.dst = dst
        self.maps: Tuple[Morphism, ...] = tuple(maps)
        if not is_chain_map(src, dst, self.maps):
            raise InvalidMorphism("the degreewise maps do not commute with the complexes")

    def cone(self) -> DSequence:
        return mapping_cone(self.src, self.dst, self.maps)

    def __repr__(self):
        return f"ComplexMorphism({self.src!r} => {self.dst!r})"


def is_chain_map(src: DSequence, dst: DSequence, phis: Sequence[Morphism]) -> bool:
    if len(phis) != len(src.terms) or len(src.terms) != len(dst.terms):
        return False
    for i in range(len(src.maps)):
        if (phis[i + 1] @ src.maps[i]) != (dst.maps[i] @ phis[i]):
            return False
    return True


# -- hom-exactness tests -----------------------------------------------------


def hom_induced_matrix(g: Module, f: Morphism) -> Matrix:
    """Matrix of Hom(g, f) from hom-basis coordinates to hom-basis coordinates."""
    dom_basis = repcat.hom_basis(g, f.domain)
    cod = repcat.hom_space_matrix(g, f.codomain)
    field = g.field
    if not dom_basis:
        return Matrix.zeros(field, cod.cols, 0)
    flat = Matrix(
        field, np.stack([repcat.hom_vec(f @ h) for h in dom_basis], axis=1)
    )
    sol = exactlin.solve(cod, flat)
    if sol is None:
        raise InvalidMorphism("composite left the hom space, which cannot happen")
    return sol


def hom_induced_matrix_contra(f: Morphism, g: Module) -> Matrix:
    """Matrix of Hom(f, g): Hom(cod f, g) -> Hom(dom f, g) in hom bases."""
    dom_basis = repcat.hom_basis(f.codomain, g)
    cod = repcat.hom_space_matrix(f.domain, g)
    field = g.field
    if not dom_basis:
        return Matrix.zeros(field, cod.cols, 0)
    flat = Matrix(
        field, np.stack([repcat.hom_vec(h @ f) for h in dom_basis], axis=1)
    )
    sol = exactlin.solve(cod, flat)
    if sol is None:
        raise InvalidMorphism("composite left the hom space, which cannot happen")
    return sol


def _first_inexact_position(mats: List[Matrix]) -> Optional[int]:
    """First failure of 0 -> V_0 -> ... -> V_n being exact away from V_n.

    mats[i] maps V_i to V_{i+1}; returns the failing position, None if exact.
    """
    for i, m in enumerate(mats):
        nullity = m.cols - exactlin.rank(m)
        expected = 0 if i == 0 else exactlin.rank(mats[i - 1])
        if nullity != expected:
            return i
    return None


@dataclass
class ExactnessFailure:
    """Which generator and position witnessed a hom-exactness failure."""

    side: str
    generator: int
    position: int


def left_d_exactness_certificate(
    seq: DSequence, cat: AddCategory
) -> Optional[ExactnessFailure]:
    for gi, g in enumerate(cat.generators):
        mats = [hom_induced_matrix(g, f) for f in seq.maps]
        pos = _first_inexact_position(mats)
        if pos is not None:
            return ExactnessFailure("into", gi, pos)
    return None


def right_d_exactness_certificate(
    seq: DSequence, cat: AddCategory
) -> Optional[ExactnessFailure]:
    for gi, g in enumerate(cat.generators):
        mats = [hom_induced_matrix_contra(f, g) for f in reversed(seq.maps)]
        pos = _first_inexact_position(mats)
        if pos is not None:
            return ExactnessFailure("from", gi, pos)
    return None


def is_left_d_exact(seq: DSequence, cat: AddCategory) -> bool:
    return left_d_exactness_certificate(seq, cat) is None


def is_right_d_exact(seq: DSequence, cat: AddCategory) -> bool:
    return right_d_exactness_certificate(seq, cat) is None


def is_d_exact(seq: DSequence, cat: AddCategory) -> bool:
    """Hom-exact on both sides; cross-checked against plain exactness.

    When the category is generating and cogenerating, a sequence that is
    hom-exact on both sides must also be exact as modules with injective
    start and surjective end; a violation means the computation broke,
    so it raises instead of returning.
    """
    ok = is_left_d_exact(seq, cat) and is_right_d_exact(seq, cat)
    if ok and cat.is_generating_cogenerating():
        if not is_exact_complex(seq):
            raise VerificationFailed(
                "hom-exact sequence is not exact as modules over a "
                "generating-cogenerating category"
            )
    return ok


def is_exact_complex(seq: DSequence, mono_start: bool = True, epi_end: bool = True) -> bool:
    """Module-level exactness at interior terms, optionally at the ends."""
    if mono_start and not seq.maps[0].is_mono():
        return False
    if epi_end and not seq.maps[-1].is_epi():
        return False
    for i in range(1, len(seq.terms) - 1):
        prev, nxt = seq.maps[i - 1], seq.maps[i]
        for v in range(len(seq.terms[i].dims)):
            ker = exactlin.kernel_basis(nxt.comps[v])
            im = exactlin.image_basis(prev.comps[v])
            if not exactlin.subspace_eq(ker, im):
                return False
    return True


# -- homotopies ------------------------------------------------------------


def _solve_homotopy(
    src: DSequence,
    dst: DSequence,
    phis: Sequence[Morphism],
    zero_slots: Sequence[int] = (),
) -> Optional[List[Morphism]]:
    """Solve phi = h o a + b o h jointly; None when no homotopy exists.

    The unknown h_i maps src term i+1 to dst term i; slots listed in
    zero_slots are pinned to the zero morphism.
    """
    n = len(src.terms)
    if len(dst.terms) != n or len(phis) != n:
        raise DimensionMismatch("homotopy data has mismatched lengths")
    field = src.terms[0].field
    slots = list(range(n - 1))
    bases = [
        [] if i in zero_slots else list(repcat.hom_basis(src.terms[i + 1], dst.terms[i]))
        for i in slots
    ]
    widths = [len(b) for b in bases]
    offsets = [sum(widths[:i]) for i in slots]
    total_vars = sum(widths)
    eq_rows = []
    rhs_rows = []
    for j in range(n):
        n_j = repcat.hom_flat_dim(src.terms[j], dst.terms[j])
        block = np.zeros((n_j, total_vars), dtype=np.int64)
        if j < n - 1:
            for k, h in enumerate(bases[j]):
                block[:, offsets[j] + k] = repcat.hom_vec(h @ src.maps[j])
        if j > 0:
            for k, h in enumerate(bases[j - 1]):
                block[:, offsets[j - 1] + k] = (
                    block[:, offsets[j - 1] + k] + repcat.hom_vec(dst.maps[j - 1] @ h)
                ) % field.p
        eq_rows.append(block % field.p)
        rhs_rows.append(repcat.hom_vec(phis[j]))
    system = Matrix(field, np.vstack(eq_rows)) if eq_rows else Matrix.zeros(field, 0, 0)
    rhs = Matrix(field, np.concatenate(rhs_rows).reshape(-1, 1))
    sol = exactlin.solve(system, rhs)
    if sol is None:
        return None
    out: List[Morphism] = []
    for i in slots:
        h = Morphism.zero(src.terms[i + 1], dst.terms[i])
        for k, b in enumerate(bases[i]):
            c = sol[offsets[i] + k, 0]
            if c:
                h = h + b.scale(c)
        out.append(h)
    return out


def null_homotopy(phi: ComplexMorphism) -> Optional[List[Morphism]]:
    """A null homotopy of a chain map, preferring one with vanishing start.

    When the degree-zero component is zero, a homotopy whose first slot
    is pinned to zero is tried first and kept when it exists.
    """
    if phi.maps[0].is_zero():
        h = _solve_homotopy(phi.src, phi.dst, phi.maps, zero_slots=(0,))
        if h is not None:
            return h
    return _solve_homotopy(phi.src, phi.dst, phi.maps)


def identity_chain(seq: DSequence) -> List[Morphism]:
    return [Morphism.identity(t) for t in seq.terms]


def contraction(seq: DSequence) -> Optional[List[Morphism]]:
    """A null homotopy of the identity, when the complex is contractible."""
    return _solve_homotopy(seq, seq, identity_chain(seq))


def is_contractible(seq: DSequence) -> bool:
    """Split-end test: the end map admits a section."""
    return repcat.is_split_epi(seq.right_map)


# -- classical squares -------------------------------------------------------


def pullback(f: Morphism, g: Morphism):
    """Classical pullback of f: X -> Z and g: Y -> Z.

    Returns (P, to_x, to_y, incl) with incl the kernel inclusion into X + Y.
    """
    if f.codomain is not g.codomain:
        raise DimensionMismatch("pullback legs must share a codomain")
    total, _, projs = repcat.direct_sum([f.domain, g.domain])
    combined = (f @ projs[0]) - (g @ projs[1])
    p, incl = repcat.kernel(combined)
    return p, projs[0] @ incl, projs[1] @ incl, incl


def pushout(f: Morphism, g: Morphism):
    """Classical pushout of f: Z -> X and g: Z -> Y.

    Returns (Q, from_x, from_y, proj) with proj the cokernel projection.
    """
    if f.domain is not g.domain:
        raise DimensionMismatch("pushout legs must share a domain")
    total, incs, _ = repcat.direct_sum([f.codomain, g.codomain])
    combined = (incs[0] @ f) - (incs[1] @ g)
    q, proj = repcat.cokernel(combined)
    return q, proj @ incs[0], proj @ incs[1], proj


def _pair_into_sum(src: Module, total: Module, first: Morphism, second: Morphism) -> Morphism:
    """The map src -> total whose blocks are the two given legs."""
    comps = []
    for v in range(len(src.dims)):
        comps.append(
            exactlin.vstack(
                [first.comps[v], second.comps[v]], field=src.field, cols=src.dims[v]
            )
        )
    return Morphism(src, total, comps, _skip_check=True)


# -- pullback and pushout staircases ----------------------------------------


def _pullback_staircase(cat: AddCategory, bottom: DSequence, fmap: Morphism, minimal, cap):
    """Shared construction; also returns the final stage's kernel inclusion."""
    d = cat.d
    if len(bottom.terms) != d + 1:
        raise DimensionMismatch("the tail must have d+1 terms")
    if fmap.codomain is not bottom.right_term:
        raise DimensionMismatch("the leg must map into the right end of the tail")
    delta = bottom.maps[d - 1]
    alpha = fmap
    tops_rev: List[Module] = [fmap.domain]
    top_maps_rev: List[Morphism] = []
    downs_rev: List[Morphism] = [fmap]
    last_incl: Optional[Morphism] = None
    for i in range(d, 0, -1):
        p, q, r, incl = pullback(delta, alpha)
        if i > 1:
            if minimal:
                approx = minimal_right_approximation(cat, p, cap)
            else:
                approx = right_approximation(cat, p)
            tops_rev.append(approx.domain)
            top_maps_rev.append(r @ approx)
            downs_rev.append(q @ approx)
            zero_leg = Morphism.zero(bottom.terms[i - 2], alpha.domain)
            pair = _pair_into_sum(
                bottom.terms[i - 2], incl.codomain, bottom.maps[i - 2], zero_leg
            )
            delta = repcat.factor_through(pair, incl)
            if delta is None:
                raise InvalidMorphism("staircase step failed to land in the pullback")
            alpha = approx
        else:
            tops_rev.append(p)
            top_maps_rev.append(r)
            downs_rev.append(q)
            last_incl = incl
    top = DSequence(list(reversed(tops_rev)), list(reversed(top_maps_rev)))
    morphism = ComplexMorphism(top, bottom, list(reversed(downs_rev)))
    return morphism, last_incl, alpha.domain


def d_pullback(
    cat: AddCategory, bottom: DSequence, fmap: Morphism, minimal: bool = True, cap=None
) -> ComplexMorphism:
    """Pull a (d+1)-term tail back along a map into its right end.

    The mapping cone of the returned morphism of complexes is left
    d-exact; right approximations of the intermediate pullbacks are
    minimal unless minimal=False.
    """
    morphism, _, _ = _pullback_staircase(cat, bottom, fmap, minimal, cap)
    return morphism


def d_pullback_complete(
    cat: AddCategory, seq: DSequence, fmap: Morphism, minimal: bool = True, cap=None
):
    """Pull a full (d+2)-term sequence back, inducing the kernel row.

    Returns the completed morphism of complexes: its source keeps the
    original left term, mapped by the identity.
    """
    if len(seq.terms) != cat.d + 2:
        raise DimensionMismatch("the sequence must have d+2 terms")
    tail = DSequence(seq.terms[1:], seq.maps[1:], _skip_check=True)
    morphism, incl, next_obj = _pullback_staircase(cat, tail, fmap, minimal, cap)
    left = seq.left_term
    zero_leg = Morphism.zero(left, next_obj)
    pair = _pair_into_sum(left, incl.codomain, seq.maps[0], zero_leg)
    induced = repcat.factor_through(pair, incl)
    if induced is None:
        raise InvalidMorphism("left term failed to land in the stage-one pullback")
    top = DSequence(
        [left] + list(morphism.src.terms),
        [induced] + list(morphism.src.maps),
    )
    chain = [Morphism.identity(left)] + list(morphism.maps)
    return ComplexMorphism(top, seq, chain)


def _dual_sequence(seq: DSequence) -> DSequence:
    """The reversed complex of dual modules over the opposite algebra."""
    terms = [repcat.duality(t) for t in reversed(seq.terms)]
    maps = []
    for i, m in enumerate(reversed(seq.maps)):
        dm = repcat.duality_morphism(m)
        maps.append(repcat.rebase(dm, terms[i], terms[i + 1]))
    return DSequence(terms, maps, _skip_check=True)


def _dual_category(cat: AddCategory) -> AddCategory:
    cached = getattr(cat, "_dual", None)
    if cached is None:
        cached = AddCategory([repcat.duality(g) for g in cat.generators], cat.d)
        cat._dual = cached
    return cached


def d_pushout(
    cat: AddCategory, head: DSequence, gmap: Morphism, minimal: bool = True, cap=None
) -> ComplexMorphism:
    """Push a (d+1)-term head out along a map from its left end.

    Dual staircase: the mapping cone of the result is right d-exact.
    """
    if gmap.domain is not head.left_term:
        raise DimensionMismatch("the leg must map out of the left end of the head")
    dual = _dual_sequence(head)
    dual_leg = repcat.duality_morphism(gmap)
    dual_leg = repcat.rebase(dual_leg, dual_leg.domain, dual.right_term)
    morphism, _, _ = _pullback_staircase(
        _dual_category(cat), dual, dual_leg, minimal, cap
    )
    bottom = _dual_sequence(morphism.src)
    terms = [gmap.codomain] + list(bottom.terms[1:])
    maps = [repcat.rebase(bottom.maps[0], terms[0], terms[1])] + list(bottom.maps[1:])
    bottom = DSequence(terms, maps, _skip_check=True)
    downs = []
    for i, m in enumerate(reversed(morphism.maps)):
        dm = repcat.duality_morphism(m)
        downs.append(repcat.rebase(dm, head.terms[i], bottom.terms[i]))
    return ComplexMorphism(head, bottom, downs)


def d_pushout_complete(
    cat: AddCategory, seq: DSequence, gmap: Morphism, minimal: bool = True, cap=None
):
    """Push a full (d+2)-term sequence out, inducing the cokernel row."""
    if len(seq.terms) != cat.d + 2:
        raise DimensionMismatch("the sequence must have d+2 terms")
    dual = _dual_sequence(seq)
    dual_leg = repcat.duality_morphism(gmap)
    dual_leg = repcat.rebase(dual_leg, dual_leg.domain, dual.right_term)
    completed = d_pullback_complete(_dual_category(cat), dual, dual_leg, minimal, cap)
    bottom = _dual_sequence(completed.src)
    terms = [gmap.codomain] + list(bottom.terms[1:-1]) + [seq.right_term]
    maps = [repcat.rebase(bottom.maps[0], terms[0], terms[1])]
    for i in range(1, len(bottom.maps) - 1):
        maps.append(bottom.maps[i])
    maps.append(
        repcat.rebase(bottom.maps[-1], terms[-2], terms[-1])
    )
    bottom = DSequence(terms, maps, _skip_check=True)
    downs = []
    for i, m in enumerate(reversed(completed.maps)):
        dm = repcat.duality_morphism(m)
        downs.append(repcat.rebase(dm, seq.terms[i], bottom.terms[i]))
    return ComplexMorphism(seq, bottom, downs)


def mapping_cone(src: DSequence, dst: DSequence, phis: Sequence[Morphism]) -> DSequence:
    """Cone of a chain map between complexes of equal length.

    Term i is (src term i) + (dst term i-1), with the source differential
    negated, matching the usual sign convention.
    """
    if not is_chain_map(src, dst, phis):
        raise InvalidMorphism("cone input is not a chain map")
    n = len(src.terms)
    algebra = src.terms[0].algebra
    zero = repcat.zero_module(algebra)
    src_ext = list(src.terms) + [zero]
    dst_ext = [zero] + list(dst.terms)
    terms = []
    sums = []
    for i in range(n + 1):
        total, incs, projs = repcat.direct_sum([src_ext[i], dst_ext[i]])
        terms.append(total)
        sums.append((incs, projs))
    maps = []
    for i in range(n):
        incs_next, projs_cur = sums[i + 1][0], sums[i][1]
        out = Morphism.zero(terms[i], terms[i + 1])
        if i < n - 1:
            out = out - (incs_next[0] @ src.maps[i] @ projs_cur[0])
        out = out + (incs_next[1] @ phis[i] @ projs_cur[0])
        if i > 0:
            out = out + (incs_next[1] @ dst.maps[i - 1] @ projs_cur[1])
        maps.append(out)
    return DSequence(terms, maps)


# -- defects ----------------------------------------------------------------


@dataclass
class DefectSpace:
    """A hom space modulo the part hit through the sequence's end map."""

    ambient: Matrix
    image: Matrix
    reps: Matrix
    proj: Matrix

    @property
    def dim(self) -> int:
        return self.reps.cols


def defect_contravariant(seq: DSequence, x: Module) -> DefectSpace:
    """Hom(x, right end) modulo maps lifting along the end map."""
    ambient = repcat.hom_space_matrix(x, seq.right_term)
    image = repcat.hom_image(x, seq.right_map)
    reps, proj = exactlin.quotient(ambient, image)
    return DefectSpace(ambient, image, reps, proj)


def defect_covariant(seq: DSequence, y: Module) -> DefectSpace:
    """Hom(left end, y) modulo maps extending along the start map."""
    ambient = repcat.hom_space_matrix(seq.left_term, y)
    image = repcat.hom_coimage(seq.left_map, y)
    reps, proj = exactlin.quotient(ambient, image)
    return DefectSpace(ambient, image, reps, proj)


def long_exact_extension_ok(seq: DSequence, x: Module) -> bool:
    """Dimension bookkeeping for the extension of the hom sequence by Ext^d.

    Checks hom-exactness of 0 -> (x, T_0) -> ... -> (x, T_n) away from
    the last spot, then that the leftover at the last spot matches the
    kernel of the induced map on Ext^d between the first two terms.
    """
    mats = [hom_induced_matrix(x, f) for f in seq.maps]
    if _first_inexact_position(mats) is not None:
        return False
    defect = defect_contravariant(seq, x).dim
    ext_mat = homological.ext_map_post(x, seq.left_map, seq.d)
    ext_kernel = ext_mat.cols - exactlin.rank(ext_mat)
    return defect == ext_kernel


# -- construction from the right end ----------------------------------------


def build_left_d_exact(cat: AddCategory, g: Morphism, cap=None) -> DSequence:
    """Resolve the kernel of g by minimal right approximations, d-1 times.

    Starting from g: C -> N, each step takes the kernel of the last map
    and covers it by a right-minimalized right approximation; the final
    kernel is kept as the left term, giving d+2 terms in total.
    """
    maps_rev: List[Morphism] = [g]
    terms_rev: List[Module] = [g.codomain, g.domain]
    cur = g
    for _ in range(cat.d - 1):
        k, incl = repcat.kernel(cur)
        approx, _ = right_minimalize(right_approximation(cat, k), cap)
        cur = incl @ approx
        maps_rev.append(cur)
        terms_rev.append(cur.domain)
    k, incl = repcat.kernel(cur)
    maps_rev.append(incl)
    terms_rev.append(k)
    return DSequence(list(reversed(terms_rev)), list(reversed(maps_rev)))
