"""Quantum semigroups: an algebra with a coassociative comultiplication.

The comultiplication is a unital *-homomorphism from the algebra into its
tensor square. All structural laws (coassociativity, counit, the action
equation for a family, morphism compatibility) are checked numerically and
reported as worst-case operator-norm defects, so a deliberately perturbed
structure map yields a quantifiably nonzero defect instead of an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import (
    AlgebraElement,
    FdCStarAlgebra,
    LinearFunctional,
    max_image_defect,
    tensor_layout,
)
from .errors import (
    IncompatibleAlgebraError,
    InvalidMatrixError,
    InvalidSemigroupError,
    MissingComponentError,
)
from .families import QuantumFamily, action_coefficients, invariance_defects
from .linalg import numeric_rank
from .morphisms import (
    Character,
    StarMorphism,
    compose_morphisms,
    functions_algebra,
    identity_morphism,
    tensor_morphisms,
)


@dataclass(frozen=True)
class QuantumSemigroup:
    """An algebra A with a comultiplication A -> A (x) A and optional counit.

    Construction only validates shapes; the structure laws are checked by
    the defect functions so that broken structures can still be measured.
    """

    algebra: FdCStarAlgebra
    comultiplication: StarMorphism
    counit: Character | None = None

    def __post_init__(self) -> None:
        square = tensor_layout(self.algebra, self.algebra).product
        delta = self.comultiplication
        if delta.domain != self.algebra or delta.codomain != square:
            raise InvalidMatrixError(
                "comultiplication must map the algebra into its tensor square"
            )
        if self.counit is not None and self.counit.domain != self.algebra:
            raise InvalidMatrixError("counit must be defined on the same algebra")

    def __repr__(self) -> str:
        return f"QuantumSemigroup({self.algebra!r})"


def coassociativity_defect(sg: QuantumSemigroup) -> float:
    """Worst norm of ((Delta (x) id) - (id (x) Delta)) Delta on the basis."""
    delta = sg.comultiplication
    ident = identity_morphism(sg.algebra)
    left = compose_morphisms(tensor_morphisms(delta, ident), delta)
    right = compose_morphisms(tensor_morphisms(ident, delta), delta)
    return max_image_defect(left.codomain, left.matrix - right.matrix)


def counit_defect(sg: QuantumSemigroup) -> float:
    """Worst deviation of (eps (x) id) Delta and (id (x) eps) Delta from id."""
    if sg.counit is None:
        raise MissingComponentError("semigroup has no counit attached")
    delta = sg.comultiplication
    ident = identity_morphism(sg.algebra)
    eye = np.eye(sg.algebra.dim)
    left = compose_morphisms(tensor_morphisms(sg.counit, ident), delta)
    right = compose_morphisms(tensor_morphisms(ident, sg.counit), delta)
    return max(
        max_image_defect(sg.algebra, left.matrix - eye),
        max_image_defect(sg.algebra, right.matrix - eye),
    )


def action_defect(family: QuantumFamily, sg: QuantumSemigroup) -> float:
    """Worst norm of ((Psi (x) id) Psi - (id (x) Delta) Psi) on the basis."""
    if family.label != sg.algebra:
        raise IncompatibleAlgebraError(
            "family label algebra differs from the semigroup algebra"
        )
    if not family.is_self_map:
        raise IncompatibleAlgebraError("the action equation needs a self-map family")
    psi = family.morphism
    lifted = tensor_morphisms(psi, identity_morphism(sg.algebra))
    left = compose_morphisms(lifted, psi)
    right = compose_morphisms(
        tensor_morphisms(identity_morphism(family.source), sg.comultiplication), psi
    )
    return max_image_defect(left.codomain, left.matrix - right.matrix)


def qs_morphism_defect(
    lam: StarMorphism, source: QuantumSemigroup, target: QuantumSemigroup
) -> float:
    """Worst norm of ((lam (x) lam) Delta_source - Delta_target lam)."""
    if lam.domain != source.algebra or lam.codomain != target.algebra:
        raise IncompatibleAlgebraError(
            "map must go from the source semigroup algebra to the target one"
        )
    left = compose_morphisms(tensor_morphisms(lam, lam), source.comultiplication)
    right = compose_morphisms(target.comultiplication, lam)
    return max_image_defect(left.codomain, left.matrix - right.matrix)


def convolve(
    f: LinearFunctional, g: LinearFunctional, sg: QuantumSemigroup
) -> LinearFunctional:
    """Convolution (f (x) g) o Delta of two functionals on the algebra."""
    if f.algebra != sg.algebra or g.algebra != sg.algebra:
        raise IncompatibleAlgebraError(
            "both functionals must live on the semigroup algebra"
        )
    layout = tensor_layout(sg.algebra, sg.algebra)
    pcov = np.empty(layout.product.dim, dtype=complex)
    pcov[layout.pair_index] = np.outer(f.covector, g.covector)
    values = sg.comultiplication.matrix.T @ pcov
    return LinearFunctional.from_values(sg.algebra, values)


@dataclass(frozen=True)
class CancellationReport:
    """Numeric rank of one cancellation span, and whether it is full."""

    side: str
    rank: int
    full: bool


def cancellation_rank(sg: QuantumSemigroup, side: str = "left") -> CancellationReport:
    """Rank of the left span (e_i (x) 1) Delta(e_j) or the right span
    Delta(e_i) (1 (x) e_j) inside the tensor square.

    A full span (rank equal to dim squared) is the quantum form of the
    corresponding cancellation law; on the algebra of functions on a finite
    semigroup it holds exactly when all translations on that side are
    injective.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    alg = sg.algebra
    layout = tensor_layout(alg, alg)
    square = layout.product
    ident = alg.identity()
    cols = []
    for i in range(alg.dim):
        e_i = alg.basis_element(i)
        fixed = layout.elem(e_i, ident) if side == "left" else layout.elem(ident, e_i)
        for j in range(alg.dim):
            dj = square.from_vec(sg.comultiplication.matrix[:, j])
            prod = fixed * dj if side == "left" else dj * fixed
            cols.append(prod.to_vec())
    rank = numeric_rank(np.column_stack(cols))
    return CancellationReport(side=side, rank=rank, full=rank == alg.dim**2)


def coideal_defect(
    family: QuantumFamily,
    sg: QuantumSemigroup,
    omega: LinearFunctional,
    basis: Sequence[AlgebraElement] | None = None,
) -> float:
    """Worst defect of Delta(X_l) = sum_p X_p (x) a[p, l] + 1 (x) X_l.

    X_l = (omega (x) id) Psi(m_l) - omega(m_l) 1 are the invariance
    generators of omega for the family, and a[p, l] the coefficients of the
    family over the basis (canonical by default). When the action equation
    holds, the identity holds for every basis; its defect measures how far
    the generators are from spanning a right coideal.
    """
    if family.label != sg.algebra:
        raise IncompatibleAlgebraError(
            "family label algebra differs from the semigroup algebra"
        )
    if basis is None:
        basis = family.source.basis()
    report = invariance_defects(family, omega, basis=basis)
    coeffs = action_coefficients(family, basis)  # (k, l, coordinate)
    alg = sg.algebra
    layout = tensor_layout(alg, alg)
    xmat = np.column_stack([x.to_vec() for x in report.generators])  # (dA, l)
    lhs = sg.comultiplication.matrix @ xmat  # (dA^2, l)
    ivec = alg.identity().to_vec()
    # rhs table over pairs (A coordinate, A coordinate) per generator.
    rhs_tables = np.einsum("ip,pla->lia", xmat, coeffs) + np.einsum(
        "i,al->lia", ivec, xmat
    )
    worst = 0.0
    for l in range(len(report.generators)):
        rhs = np.empty(layout.product.dim, dtype=complex)
        rhs[layout.pair_index] = rhs_tables[l]
        worst = max(worst, max_image_defect(layout.product, lhs[:, l] - rhs))
    return worst


# -- classical (commutative) semigroups ------------------------------------


def table_is_associative(table: Sequence[Sequence[int]]) -> bool:
    try:
        arr = np.asarray(table, dtype=np.intp)
    except (ValueError, TypeError):
        return False
    n = arr.shape[0] if arr.ndim == 2 else 0
    if n == 0 or arr.shape != (n, n) or arr.min() < 0 or arr.max() >= n:
        return False
    # (x y) z == x (y z) as an n^3 tensor comparison
    return bool(np.array_equal(arr[arr], arr[:, arr]))


def table_identity(table: Sequence[Sequence[int]]) -> int | None:
    """Index of the two-sided identity element, or None."""
    arr = np.asarray(table, dtype=np.intp)
    n = arr.shape[0]
    ran = np.arange(n)
    for e in range(n):
        if np.array_equal(arr[e], ran) and np.array_equal(arr[:, e], ran):
            return int(e)
    return None


def table_is_left_cancellative(table: Sequence[Sequence[int]]) -> bool:
    """Every row of the table is a permutation (left translations injective)."""
    arr = np.asarray(table, dtype=np.intp)
    return all(len(set(row.tolist())) == arr.shape[0] for row in arr)


def table_is_right_cancellative(table: Sequence[Sequence[int]]) -> bool:
    """Every column of the table is a permutation."""
    return table_is_left_cancellative(np.asarray(table, dtype=np.intp).T)


def classical_semigroup_algebra(table: Sequence[Sequence[int]]) -> QuantumSemigroup:
    """Functions on a finite semigroup with the multiplication-dual coproduct.

    table[s][t] is the 0-based product s t. Delta(delta_j) is the sum of
    delta_s (x) delta_t over the pairs with s t = j; when the table has a
    two-sided identity the counit is evaluation there.
    """
    arr = np.asarray(table, dtype=np.intp)
    n = arr.shape[0] if arr.ndim == 2 else 0
    if arr.ndim != 2 or arr.shape != (n, n) or n == 0:
        raise InvalidSemigroupError("multiplication table must be square")
    if arr.min() < 0 or arr.max() >= n:
        raise InvalidSemigroupError("table entries must index the elements")
    if not table_is_associative(arr):
        raise InvalidSemigroupError("multiplication table is not associative")
    alg = functions_algebra(n)
    layout = tensor_layout(alg, alg)
    mat = np.zeros((layout.product.dim, n), dtype=complex)
    for s in range(n):
        for t in range(n):
            mat[layout.pair_index[s, t], arr[s, t]] += 1.0
    delta = StarMorphism(alg, layout.product, mat)
    counit = None
    e = table_identity(arr)
    if e is not None:
        row = np.zeros((1, n), dtype=complex)
        row[0, e] = 1.0
        counit = Character(alg, row)
    return QuantumSemigroup(alg, delta, counit)


def group_table(n: int) -> list[list[int]]:
    """Multiplication table of the cyclic group of order n."""
    if n < 1:
        raise InvalidSemigroupError("order must be positive")
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def left_zero_table(n: int) -> list[list[int]]:
    """Table of the left-zero semigroup: s t = s."""
    if n < 1:
        raise InvalidSemigroupError("order must be positive")
    return [[i for _ in range(n)] for i in range(n)]


def map_monoid_table(n: int) -> tuple[list[list[int]], list[tuple[int, ...]]]:
    """Multiplication table of all self-maps of n points, and the maps.

    Maps are ordered lexicographically by lookup table. The product u v is
    "apply u, then v", the order that makes the composition-dual coproduct
    satisfy the action equation for the family of all maps.
    """
    from .morphisms import enumerate_set_map_tables

    maps = enumerate_set_map_tables(n)
    index = {m: i for i, m in enumerate(maps)}
    table = [
        [index[tuple(v[u[x]] for x in range(n))] for v in maps] for u in maps
    ]
    return table, maps
