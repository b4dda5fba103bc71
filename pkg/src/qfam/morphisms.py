"""Unital *-homomorphisms between finite-dimensional C*-algebras.

A morphism is stored as its matrix over the canonical bases: column j holds
the coordinates of the image of the j-th domain matrix unit. Verification is
numerical; :meth:`StarMorphism.defects` reports how far the map is from
being multiplicative, adjoint-preserving and unital, each measured as a
worst-case operator norm. Defect computation is deferred and cached, so
intermediate maps built by composition or tensoring are never verified
unless asked.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    FdCStarAlgebra,
    LinearFunctional,
    adjoint_permutation,
    make_algebra,
    max_image_defect,
    multiplication_table,
    tensor_layout,
)
from .errors import (
    IncompatibleAlgebraError,
    InvalidCharacterError,
    InvalidMatrixError,
    NotAHomomorphismError,
    ResourceLimitError,
)

# Cap on n for enumerating all n^n self-maps of an n-point set.
SET_MAP_CAP = 6

# Above this many complex entries the multiplicativity check is chunked.
_DEFECT_CHUNK = 4_000_000


@lru_cache(maxsize=None)
def scalar_algebra() -> FdCStarAlgebra:
    """The complex numbers as a one-block algebra of size 1."""
    return make_algebra([1])


class StarMorphism:
    """A linear map between algebras, given by its canonical-basis matrix."""

    __slots__ = ("domain", "codomain", "matrix", "__dict__")

    def __init__(
        self,
        domain: FdCStarAlgebra,
        codomain: FdCStarAlgebra,
        matrix: np.ndarray,
    ) -> None:
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (codomain.dim, domain.dim):
            raise InvalidMatrixError(
                f"matrix shape {matrix.shape} does not match "
                f"({codomain.dim}, {domain.dim})"
            )
        matrix = matrix.copy()
        matrix.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.domain:
            raise IncompatibleAlgebraError("argument is not in the domain algebra")
        return self.codomain.from_vec(self.matrix @ x.to_vec())

    @property
    def map_matrix(self) -> np.ndarray:
        """The matrix over canonical bases (column j = image of basis j)."""
        return self.matrix

    @cached_property
    def defect_report(self) -> dict[str, float]:
        """Worst-case defects: mult_defect, star_defect, unit_defect.

        Computed lazily and cached, so maps built as intermediates (tensor
        lifts, compositions) cost nothing until someone asks.
        """
        return _defect_report(self)

    def is_star_hom(self, tol: float = DEFAULT_TOL) -> bool:
        """True when all defects stay within tol scaled by the matrix norm."""
        scale = max(1.0, float(np.abs(self.matrix).max()))
        return all(v <= tol * scale * scale for v in self.defect_report.values())

    def __repr__(self) -> str:
        return f"StarMorphism({self.domain!r} -> {self.codomain!r})"


def _defect_report(phi: StarMorphism) -> dict[str, float]:
    dom, cod, mat = phi.domain, phi.codomain, phi.matrix
    d = dom.dim

    unit = max_image_defect(cod, (phi(dom.identity()) - cod.identity()).to_vec())

    star_diff = mat[:, adjoint_permutation(dom)] - np.conj(mat[adjoint_permutation(cod), :])
    star = max_image_defect(cod, star_diff)

    # phi(e_i)phi(e_j) - phi(e_i e_j), batched per codomain block.
    tbl = multiplication_table(dom)
    tidx = np.where(tbl >= 0, tbl, d).reshape(-1)
    padded = np.concatenate([mat, np.zeros((cod.dim, 1))], axis=1)
    mult = 0.0
    for off, n in cod.block_slices():
        images = mat[off : off + n * n, :].T.reshape(d, n, n)
        targets = padded[off : off + n * n, tidx].T.reshape(d, d, n, n)
        step = max(1, _DEFECT_CHUNK // max(1, d * n * n))
        for lo in range(0, d, step):
            hi = min(d, lo + step)
            prod = np.einsum("ipq,jqr->ijpr", images[lo:hi], images)
            diff = prod - targets[lo:hi]
            if n == 1:
                worst = float(np.abs(diff).max()) if diff.size else 0.0
            else:
                svals = np.linalg.svd(diff.reshape(-1, n, n), compute_uv=False)
                worst = float(svals[:, 0].max()) if svals.size else 0.0
            mult = max(mult, worst)
    return {"mult_defect": mult, "star_defect": star, "unit_defect": unit}


def make_and_verify_morphism(
    domain: FdCStarAlgebra,
    codomain: FdCStarAlgebra,
    matrix: np.ndarray,
) -> StarMorphism:
    """Build a morphism with its defect report already computed.

    Never rejects: a transpose map comes back with a large mult_defect
    rather than an exception, so faults are measurable. Callers that need
    a guaranteed homomorphism should test is_star_hom or use
    require_star_hom.
    """
    phi = StarMorphism(domain, codomain, matrix)
    phi.defect_report  # force and cache
    return phi


def require_star_hom(phi: StarMorphism, tol: float = DEFAULT_TOL) -> StarMorphism:
    """Return phi if it verifies as a unital *-homomorphism, else raise."""
    if not phi.is_star_hom(tol):
        raise NotAHomomorphismError(
            "map fails the homomorphism checks: "
            + ", ".join(f"{k}={v:.3e}" for k, v in phi.defect_report.items())
        )
    return phi


def identity_morphism(algebra: FdCStarAlgebra) -> StarMorphism:
    return StarMorphism(algebra, algebra, np.eye(algebra.dim, dtype=complex))


def compose_morphisms(outer: StarMorphism, inner: StarMorphism) -> StarMorphism:
    """outer after inner."""
    if inner.codomain != outer.domain:
        raise IncompatibleAlgebraError(
            f"cannot compose: inner codomain {inner.codomain} differs from "
            f"outer domain {outer.domain}"
        )
    return StarMorphism(inner.domain, outer.codomain, outer.matrix @ inner.matrix)


def tensor_morphisms(
    phi: StarMorphism,
    psi: StarMorphism,
    layout_in=None,
    layout_out=None,
) -> StarMorphism:
    """The map phi (x) psi between the tensor product algebras.

    Layouts default to the canonical ones for the factor pairs; passing
    explicit layouts just asserts the factors match.
    """
    lin = layout_in if layout_in is not None else tensor_layout(phi.domain, psi.domain)
    lout = (
        layout_out
        if layout_out is not None
        else tensor_layout(phi.codomain, psi.codomain)
    )
    if (lin.left, lin.right) != (phi.domain, psi.domain) or (
        lout.left,
        lout.right,
    ) != (phi.codomain, psi.codomain):
        raise IncompatibleAlgebraError("layout factors do not match the morphisms")
    mat = np.zeros((lout.product.dim, lin.product.dim), dtype=complex)
    mat[np.ix_(lout.kron_to_prod, lin.kron_to_prod)] = np.kron(phi.matrix, psi.matrix)
    return StarMorphism(lin.product, lout.product, mat)


def flip(left: FdCStarAlgebra, right: FdCStarAlgebra) -> StarMorphism:
    """The tensor swap x (x) y -> y (x) x as a morphism of product algebras."""
    fwd = tensor_layout(left, right)
    rev = tensor_layout(right, left)
    mat = np.zeros((rev.product.dim, fwd.product.dim), dtype=complex)
    rows = rev.pair_index.T.reshape(-1)  # [j, i] flattened in (i, j) order
    mat[rows, fwd.pair_index.reshape(-1)] = 1.0
    return StarMorphism(fwd.product, rev.product, mat)


class Character(StarMorphism):
    """A unital *-homomorphism onto the complex numbers."""

    def __init__(self, domain: FdCStarAlgebra, matrix: np.ndarray) -> None:
        super().__init__(domain, scalar_algebra(), matrix)

    def value(self, x: AlgebraElement) -> complex:
        return complex(self(x).blocks[0][0, 0])

    def as_functional(self) -> LinearFunctional:
        return LinearFunctional.from_values(self.domain, self.matrix.reshape(-1))

    @classmethod
    def from_functional(
        cls, functional: LinearFunctional, tol: float = DEFAULT_TOL
    ) -> "Character":
        chi = cls(functional.algebra, functional.covector.reshape(1, -1))
        if not chi.is_star_hom(tol):
            raise InvalidCharacterError(
                "functional is not multiplicative and unital: "
                + ", ".join(f"{k}={v:.3e}" for k, v in chi.defect_report.items())
            )
        return chi


def characters_of(algebra: FdCStarAlgebra) -> list[Character]:
    """All characters; one per size-1 block, in block order."""
    out = []
    for (off, n) in algebra.block_slices():
        if n != 1:
            continue
        row = np.zeros((1, algebra.dim), dtype=complex)
        row[0, off] = 1.0
        out.append(Character(algebra, row))
    return out


def functions_algebra(npoints: int) -> FdCStarAlgebra:
    """Complex functions on an n-point set: n blocks of size 1."""
    if npoints < 1:
        raise InvalidMatrixError("need at least one point")
    return make_algebra([1] * npoints)


def enumerate_set_map_tables(n: int) -> list[tuple[int, ...]]:
    """All self-maps of {0, ..., n-1} as lookup tables, lexicographic."""
    if n < 1:
        raise ResourceLimitError("need at least one point")
    if n > SET_MAP_CAP:
        raise ResourceLimitError(
            f"{n}^{n} maps exceed the enumeration cap (n <= {SET_MAP_CAP})"
        )
    return [tuple(t) for t in itertools.product(range(n), repeat=n)]


def set_map_morphism(table: Sequence[int]) -> StarMorphism:
    """Pullback f -> f o t on functions over a finite set, t a lookup table.

    Column j of the matrix is the indicator of the fiber t^{-1}(j).
    """
    table = [int(t) for t in table]
    n = len(table)
    alg = functions_algebra(n)
    if any(t < 0 or t >= n for t in table):
        raise InvalidMatrixError(f"table {table} is not a self-map of {n} points")
    mat = np.zeros((n, n), dtype=complex)
    for i, t in enumerate(table):
        mat[i, t] = 1.0
    return StarMorphism(alg, alg, mat)


def enumerate_set_maps(n: int) -> list[StarMorphism]:
    """All n^n unital *-endomorphisms of functions on n points.

    Morphism k is the pullback of the k-th lookup table in lexicographic
    order; there are exactly n^n of them (4 for n = 2).
    """
    return [set_map_morphism(t) for t in enumerate_set_map_tables(n)]
