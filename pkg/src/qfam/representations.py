"""Matrices over an algebra: corepresentation-style grids, magic unitaries,
and the structure matrix attached to a family by an invariant state.

A grid is a tuple of tuples of algebra elements, all from one algebra. The
checks here measure, in operator norm, how far a grid is from satisfying
the comultiplication rule, from being an isometry as a block matrix, or
from being a magic unitary (projection entries, rows and columns summing
to the identity).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    FdCStarAlgebra,
    LinearFunctional,
    make_algebra,
    orthonormal_basis,
    sigma_map,
    tensor_layout,
)
from .errors import (
    DegenerateStateError,
    IncompatibleAlgebraError,
    InvalidMatrixError,
    NotMagicError,
    PreconditionError,
)
from .families import QuantumFamily, action_coefficients, invariance_defects
from .linalg import numeric_rank
from .morphisms import StarMorphism, functions_algebra, scalar_algebra
from .semigroups import QuantumSemigroup


def _as_grid(
    algebra: FdCStarAlgebra, entries: Sequence[Sequence[AlgebraElement]]
) -> tuple[tuple[AlgebraElement, ...], ...]:
    rows = tuple(tuple(row) for row in entries)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise InvalidMatrixError("entries must form a nonempty rectangular grid")
    for row in rows:
        for v in row:
            if not isinstance(v, AlgebraElement) or v.algebra != algebra:
                raise IncompatibleAlgebraError(
                    "all grid entries must belong to the stated algebra"
                )
    return rows


@dataclass(frozen=True)
class Representation:
    """A square grid (v[k][l]) of elements of one algebra."""

    algebra: FdCStarAlgebra
    entries: tuple[tuple[AlgebraElement, ...], ...]

    def __post_init__(self) -> None:
        rows = _as_grid(self.algebra, self.entries)
        if len(rows) != len(rows[0]):
            raise InvalidMatrixError("grid must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)


def representation_defect(rep: Representation, sg: QuantumSemigroup) -> float:
    """Worst norm of Delta(v[k][l]) - sum_r v[k][r] (x) v[r][l]."""
    if rep.algebra != sg.algebra:
        raise IncompatibleAlgebraError("grid and semigroup algebras differ")
    layout = tensor_layout(rep.algebra, rep.algebra)
    n = rep.size
    worst = 0.0
    for k in range(n):
        for l in range(n):
            lhs = sg.comultiplication(rep.entries[k][l])
            rhs = layout.product.zero()
            for r in range(n):
                rhs = rhs + layout.elem(rep.entries[k][r], rep.entries[r][l])
            worst = max(worst, (lhs - rhs).norm())
    return worst


def matrix_isometry_defect(
    entries: Sequence[Sequence[AlgebraElement]],
) -> float:
    """Worst norm of sum_k v[k][l]* v[k][t] - delta_{lt} 1.

    Zero means the grid, read as a block matrix, is an isometry.
    """
    rows = tuple(tuple(r) for r in entries)
    algebra = rows[0][0].algebra
    ident = algebra.identity()
    ncols = len(rows[0])
    worst = 0.0
    for l in range(ncols):
        for t in range(ncols):
            acc = algebra.zero()
            for row in rows:
                acc = acc + row[l].adjoint() * row[t]
            if l == t:
                acc = acc - ident
            worst = max(worst, acc.norm())
    return worst


def tensor_representation_entries(
    left: Sequence[Sequence[AlgebraElement]],
    right: Sequence[Sequence[AlgebraElement]],
) -> list[list[AlgebraElement]]:
    """Entry grid of the tensor product matrix, pairs ordered left-major."""
    l0 = left[0][0].algebra
    if any(v.algebra != l0 for row in left for v in row) or any(
        v.algebra != l0 for row in right for v in row
    ):
        raise IncompatibleAlgebraError("both grids must live over one algebra")
    out = []
    for k in range(len(left)):
        for kp in range(len(right)):
            row = []
            for l in range(len(left[0])):
                for lp in range(len(right[0])):
                    row.append(left[k][l] * right[kp][lp])
            out.append(row)
    return out


def tensor_representations(left: Representation, right: Representation) -> Representation:
    """Product grid with entries v[k][l] w[k'][l'], pair indices left-major.

    Both factors must live over the same algebra; an isometric pair yields
    an isometric product, and the comultiplication rule is preserved.
    """
    if left.algebra != right.algebra:
        raise IncompatibleAlgebraError("factors live over different algebras")
    entries = tensor_representation_entries(left.entries, right.entries)
    return Representation(left.algebra, tuple(tuple(r) for r in entries))


@dataclass(frozen=True)
class MagicUnitary:
    """A square grid of elements meant to be projections with magic sums."""

    algebra: FdCStarAlgebra
    entries: tuple[tuple[AlgebraElement, ...], ...]

    def __post_init__(self) -> None:
        rows = _as_grid(self.algebra, self.entries)
        if len(rows) != len(rows[0]):
            raise InvalidMatrixError("a magic unitary grid must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MagicReport:
    """Defects of the magic unitary laws plus the largest entry commutator.

    A strictly positive max_commutator certifies that the entries do not
    all commute, so the grid cannot come from a set of permutations.
    """

    passed: bool
    defects: dict[str, float]
    max_commutator: float


def magic_unitary_check(u: MagicUnitary, tol: float = DEFAULT_TOL) -> MagicReport:
    """Check entries are projections and rows and columns each sum to 1."""
    n = u.size
    ident = u.algebra.identity()
    idem = 0.0
    herm = 0.0
    for row in u.entries:
        for p in row:
            idem = max(idem, (p * p - p).norm())
            herm = max(herm, (p.adjoint() - p).norm())
    rows = 0.0
    cols = 0.0
    for k in range(n):
        racc = u.algebra.zero()
        cacc = u.algebra.zero()
        for l in range(n):
            racc = racc + u.entries[k][l]
            cacc = cacc + u.entries[l][k]
        rows = max(rows, (racc - ident).norm())
        cols = max(cols, (cacc - ident).norm())
    comm = 0.0
    flat = [p for row in u.entries for p in row]
    for a in range(len(flat)):
        for b in range(a + 1, len(flat)):
            comm = max(comm, (flat[a] * flat[b] - flat[b] * flat[a]).norm())
    defects = {"idempotent": idem, "hermitian": herm, "row_sums": rows, "col_sums": cols}
    return MagicReport(
        passed=all(v <= tol for v in defects.values()),
        defects=defects,
        max_commutator=comm,
    )


def projection_family_check(
    entries: Sequence[AlgebraElement], tol: float = DEFAULT_TOL
) -> tuple[float, float]:
    """(sum defect, pairwise orthogonality defect) of a list of projections.

    Projections summing to the identity are automatically pairwise
    orthogonal, so a tiny first defect forces a tiny second one; both are
    reported so that the implication can be observed numerically.
    """
    entries = list(entries)
    if not entries:
        raise InvalidMatrixError("need at least one projection")
    algebra = entries[0].algebra
    acc = algebra.zero()
    for p in entries:
        acc = acc + p
    sum_defect = (acc - algebra.identity()).norm()
    ortho = 0.0
    for a in range(len(entries)):
        for b in range(len(entries)):
            if a != b:
                ortho = max(ortho, (entries[a] * entries[b]).norm())
    return float(sum_defect), float(ortho)


def wang_family(u: MagicUnitary, tol: float = DEFAULT_TOL) -> QuantumFamily:
    """The family on functions over n points defined by an n x n magic unitary.

    The j-th point indicator maps to sum_i (indicator i) (x) u[i][j]. The
    magic relations make this a unital *-homomorphism; the grid is checked
    first and rejected with NotMagicError when it fails.
    """
    report = magic_unitary_check(u, tol)
    if not report.passed:
        raise NotMagicError(
            "grid is not a magic unitary: "
            + ", ".join(f"{k}={v:.3e}" for k, v in report.defects.items())
        )
    n = u.size
    source = functions_algebra(n)
    layout = tensor_layout(source, u.algebra)
    mat = np.zeros((layout.product.dim, n), dtype=complex)
    for j in range(n):
        col = layout.product.zero()
        for i in range(n):
            col = col + layout.elem(source.basis_element(i), u.entries[i][j])
        mat[:, j] = col.to_vec()
    return QuantumFamily(
        source, source, u.algebra, StarMorphism(source, layout.product, mat)
    )


def permutation_magic_unitary(perm: Sequence[int]) -> MagicUnitary:
    """The scalar magic unitary with entry [i == perm[j]] at (i, j)."""
    perm = [int(p) for p in perm]
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise InvalidMatrixError(f"{perm} is not a permutation of 0..{n - 1}")
    alg = scalar_algebra()
    one = alg.identity()
    zero = alg.zero()
    entries = [[one if i == perm[j] else zero for j in range(n)] for i in range(n)]
    return MagicUnitary(alg, tuple(tuple(r) for r in entries))


def nonclassical_magic_4x4(theta: float) -> MagicUnitary:
    """A 4 x 4 magic unitary over the 2 x 2 matrices with noncommuting entries.

    Built from two projections p (onto the first coordinate) and q (onto
    the line at angle theta); the largest entry commutator has norm
    |sin(theta) cos(theta)|, so any theta not a multiple of pi/2 gives a
    grid that cannot come from permutations.
    """
    alg = make_algebra([2])
    c, s = np.cos(theta), np.sin(theta)
    if abs(c * s) < 1e-12:
        warnings.warn(
            "theta is a multiple of pi/2; the grid has commuting entries",
            stacklevel=2,
        )
    p = alg.element([np.array([[1.0, 0.0], [0.0, 0.0]])])
    q = alg.element([np.array([[c * c, c * s], [c * s, s * s]])])
    one = alg.identity()
    zero = alg.zero()
    pc = one - p
    qc = one - q
    entries = (
        (p, pc, zero, zero),
        (pc, p, zero, zero),
        (zero, zero, q, qc),
        (zero, zero, qc, q),
    )
    return MagicUnitary(alg, entries)


@dataclass(frozen=True)
class ActionMatrixReport:
    """Structure matrix of a family over an orthonormal basis of the source.

    coefficients[k, l] holds the label-algebra coordinates of the
    element a[k, l] with Psi(m_l) = sum_k m_k (x) a[k, l]. When omega is an
    invariant state the matrix is an isometry; the conjugate-isometry
    defect is reported too when omega is a trace, and the comultiplication
    rule defect when a semigroup is supplied.
    """

    basis: tuple[AlgebraElement, ...]
    coefficients: np.ndarray
    entries: tuple[tuple[AlgebraElement, ...], ...]
    isometry_defect: float
    conjugate_isometry_defect: float | None
    representation_defect: float | None


def action_matrix(
    family: QuantumFamily,
    omega: LinearFunctional,
    sg: QuantumSemigroup | None = None,
) -> ActionMatrixReport:
    """Coefficient matrix of a self-map family over an omega-ON basis."""
    if not family.is_self_map:
        raise IncompatibleAlgebraError("coefficient matrix needs a self-map family")
    if omega.algebra != family.source:
        raise IncompatibleAlgebraError("functional lives over a different algebra")
    if not (omega.is_state() and omega.is_faithful()):
        raise DegenerateStateError("needs a faithful state on the source algebra")
    basis = orthonormal_basis(family.source, omega)
    coeffs = action_coefficients(family, basis)
    param = family.label
    d = family.source.dim
    entries = tuple(
        tuple(param.from_vec(coeffs[k, l]) for l in range(d)) for k in range(d)
    )
    iso = matrix_isometry_defect(entries)
    conj_iso = None
    if omega.is_trace():
        conj = tuple(tuple(v.adjoint() for v in row) for row in entries)
        conj_iso = matrix_isometry_defect(conj)
    rep_defect = None
    if sg is not None:
        rep_defect = representation_defect(Representation(param, entries), sg)
    return ActionMatrixReport(
        basis=tuple(basis),
        coefficients=coeffs,
        entries=entries,
        isometry_defect=float(iso),
        conjugate_isometry_defect=conj_iso,
        representation_defect=rep_defect,
    )


@dataclass(frozen=True)
class ModularReport:
    """Compatibility of the family coefficients with the modular structure.

    sigma_matrix[i, p] expands the modular image of the i-th basis element
    back over the basis. identity_defect is the worst norm of
    sum_{p,q} a[p][i] s[p, q] a[q][j]* - s[i, j] 1, and
    left_invertibility_defect the worst norm of
    sum_t inv(s)[i, t] D[t, j] - delta_{ij} 1 for the same middle sums D,
    which exhibits a one-sided inverse for the conjugated coefficient
    matrix. For a tracial omega, s is the identity and the first defect
    reduces to the conjugate matrix being an isometry.
    """

    identity_defect: float
    left_invertibility_defect: float
    sigma_matrix: np.ndarray
    basis: tuple[AlgebraElement, ...]


def modular_report(
    family: QuantumFamily,
    omega: LinearFunctional,
    tol: float = DEFAULT_TOL,
    require_invariant: bool = True,
) -> ModularReport:
    """Check the modular compatibility identity of an invariant state.

    Raises PreconditionError when omega is not a faithful state or (unless
    require_invariant is switched off) not invariant under the family.
    """
    if not family.is_self_map:
        raise IncompatibleAlgebraError("modular check needs a self-map family")
    if omega.algebra != family.source:
        raise IncompatibleAlgebraError("functional lives over a different algebra")
    if not omega.is_state():
        raise PreconditionError("hypothesis violated: omega is not a state")
    if not omega.is_faithful():
        raise PreconditionError("hypothesis violated: omega is not faithful")
    basis = orthonormal_basis(family.source, omega)
    if require_invariant:
        inv = invariance_defects(family, omega, basis=basis)
        if inv.defect > max(tol, 1e-8):
            raise PreconditionError(
                "hypothesis violated: omega is not invariant under the family "
                f"(defect {inv.defect:.3e})"
            )
    sigma = sigma_map(family.source, omega)
    bmat = np.column_stack([m.to_vec() for m in basis])
    smat = np.linalg.solve(bmat, sigma @ bmat).T  # rows: sigma(m_i) over basis
    coeffs = action_coefficients(family, basis)
    param = family.label
    d = family.source.dim
    a = [[param.from_vec(coeffs[k, l]) for l in range(d)] for k in range(d)]
    astar = [[a[k][l].adjoint() for l in range(d)] for k in range(d)]
    ident = param.identity()
    middle = [[param.zero() for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            acc = param.zero()
            for p in range(d):
                for q in range(d):
                    s_pq = smat[p, q]
                    if abs(s_pq) > 1e-15:
                        acc = acc + s_pq * (a[p][i] * astar[q][j])
            middle[i][j] = acc
    identity_defect = 0.0
    for i in range(d):
        for j in range(d):
            identity_defect = max(
                identity_defect, (middle[i][j] - smat[i, j] * ident).norm()
            )
    sinv = np.linalg.inv(smat)
    left_defect = 0.0
    for i in range(d):
        for j in range(d):
            acc = param.zero()
            for t in range(d):
                if abs(sinv[i, t]) > 1e-15:
                    acc = acc + sinv[i, t] * middle[t][j]
            if i == j:
                acc = acc - ident
            left_defect = max(left_defect, acc.norm())
    return ModularReport(
        identity_defect=float(identity_defect),
        left_invertibility_defect=float(left_defect),
        sigma_matrix=smat,
        basis=tuple(basis),
    )


def modular_compatibility_defect(
    family: QuantumFamily, omega: LinearFunctional, tol: float = DEFAULT_TOL
) -> float:
    """Just the identity defect from modular_report."""
    return modular_report(family, omega, tol).identity_defect


@dataclass(frozen=True)
class DensityReport:
    """Rank of the span Psi(b)(1 (x) a) inside the product algebra."""

    rank: int
    total: int
    full: bool


def podles_rank(family: QuantumFamily) -> DensityReport:
    """Rank of the span of Psi(e_i) (1 (x) f_j) over all basis pairs.

    A full span is the nondegeneracy condition for the family viewed as an
    action: the orbit of the source under the family, localized by the
    label algebra, fills the whole product.
    """
    layout = family.layout
    ident = family.target_factor.identity()
    cols = []
    for i in range(family.source.dim):
        img = layout.product.from_vec(family.morphism.matrix[:, i])
        for j in range(family.label.dim):
            loc = layout.elem(ident, family.label.basis_element(j))
            cols.append((img * loc).to_vec())
    rank = numeric_rank(np.column_stack(cols))
    total = layout.product.dim
    return DensityReport(rank=rank, total=total, full=rank == total)
