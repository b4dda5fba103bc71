"""Finite-dimensional C*-algebras as direct sums of complex matrix blocks.

Everything in this package lives over an :class:`FdCStarAlgebra`, a finite
direct sum M_{n_1} + ... + M_{n_K} of full matrix algebras. Elements are
stored blockwise, functionals through density elements, and tensor products
through explicit index maps so that every linear map has a reproducible
matrix over the canonical basis of matrix units.

Conventions fixed here and relied on by every other module:

* the canonical basis consists of the matrix units E^(k)_{r,s} ordered
  lexicographically by (block, row, column);
* tensor products order the product blocks with the left factor major, and
  inside a block pair use the Kronecker (row-major) convention;
* all scalars are complex128; checks report a defect value and the caller
  compares it against a tolerance, by default 1e-9 scaled by operand norms;
* norms of elements are operator norms (largest singular value over blocks).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateStateError,
    IncompatibleAlgebraError,
    InvalidDimensionError,
)

DEFAULT_TOL = 1e-9
FAITHFULNESS_FLOOR = 1e-12


@dataclass(frozen=True)
class FdCStarAlgebra:
    """A finite direct sum of full matrix algebras, given by its block sizes.

    Two instances compare equal iff they have the same block dimension list,
    so the tensor product of algebras built along different routes is the
    same algebra whenever the flattened dimensions agree.
    """

    block_dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(self.block_dims)
        if len(dims) == 0:
            raise InvalidDimensionError("an algebra needs at least one block")
        for n in dims:
            if not isinstance(n, (int, np.integer)) or n < 1:
                raise InvalidDimensionError(
                    f"block dimension {n!r} is not a positive integer"
                )
        object.__setattr__(self, "block_dims", tuple(int(n) for n in dims))

    @cached_property
    def dim(self) -> int:
        """Total linear dimension, the sum of the squared block sizes."""
        return int(sum(n * n for n in self.block_dims))

    @cached_property
    def _offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for n in self.block_dims:
            out.append(acc)
            acc += n * n
        return tuple(out)

    def block_slices(self) -> tuple[tuple[int, int], ...]:
        """(offset, size) of the coordinate range of each block."""
        return tuple(zip(self._offsets, self.block_dims))

    def basis_index(self, block: int, row: int, col: int) -> int:
        return self._offsets[block] + row * self.block_dims[block] + col

    @cached_property
    def basis_labels(self) -> tuple[tuple[int, int, int], ...]:
        """(block, row, col) of each canonical matrix unit, in lex order."""
        out = []
        for k, n in enumerate(self.block_dims):
            for r in range(n):
                for s in range(n):
                    out.append((k, r, s))
        return tuple(out)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(
            self, [np.zeros((n, n), dtype=complex) for n in self.block_dims]
        )

    def identity(self) -> "AlgebraElement":
        return AlgebraElement(self, [np.eye(n, dtype=complex) for n in self.block_dims])

    def basis_element(self, index: int) -> "AlgebraElement":
        k, r, s = self.basis_labels[index]
        blocks = [np.zeros((n, n), dtype=complex) for n in self.block_dims]
        blocks[k][r, s] = 1.0
        return AlgebraElement(self, blocks)

    def basis(self) -> list["AlgebraElement"]:
        return list(_canonical_basis(self))

    def element(self, blocks: Iterable) -> "AlgebraElement":
        return AlgebraElement(self, blocks)

    def from_vec(self, vec: np.ndarray) -> "AlgebraElement":
        vec = np.asarray(vec, dtype=complex).reshape(self.dim)
        blocks = [
            vec[off : off + n * n].reshape(n, n) for off, n in self.block_slices()
        ]
        return AlgebraElement(self, blocks)

    def __repr__(self) -> str:
        return f"FdCStarAlgebra({list(self.block_dims)})"


def make_algebra(block_dims: Sequence[int]) -> FdCStarAlgebra:
    """Build the direct sum of full matrix algebras with the given sizes."""
    return FdCStarAlgebra(tuple(block_dims))


@lru_cache(maxsize=None)
def _canonical_basis(algebra: FdCStarAlgebra) -> tuple["AlgebraElement", ...]:
    return tuple(algebra.basis_element(i) for i in range(algebra.dim))


class AlgebraElement:
    """One complex matrix per block of a parent algebra.

    Instances are immutable after construction; arithmetic returns new
    elements and raises when the operands belong to different algebras.
    """

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra: FdCStarAlgebra, blocks: Iterable) -> None:
        mats = tuple(np.array(b, dtype=complex) for b in blocks)
        if len(mats) != len(algebra.block_dims):
            raise IncompatibleAlgebraError(
                f"expected {len(algebra.block_dims)} blocks, got {len(mats)}"
            )
        for mat, n in zip(mats, algebra.block_dims):
            if mat.shape != (n, n):
                raise IncompatibleAlgebraError(
                    f"block of shape {mat.shape} does not match size {n}"
                )
            mat.setflags(write=False)
        self.algebra = algebra
        self.blocks = mats

    def _require_same(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected an AlgebraElement, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise IncompatibleAlgebraError(
                f"operands live over {self.algebra} and {other.algebra}"
            )

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same(other)
        return AlgebraElement(
            self.algebra, [a + b for a, b in zip(self.blocks, other.blocks)]
        )

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same(other)
        return AlgebraElement(
            self.algebra, [a - b for a, b in zip(self.blocks, other.blocks)]
        )

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, [-a for a in self.blocks])

    def __mul__(self, other):
        if isinstance(other, Number):
            return AlgebraElement(self.algebra, [a * other for a in self.blocks])
        self._require_same(other)
        return AlgebraElement(
            self.algebra, [a @ b for a, b in zip(self.blocks, other.blocks)]
        )

    def __rmul__(self, other):
        if isinstance(other, Number):
            return AlgebraElement(self.algebra, [other * a for a in self.blocks])
        return NotImplemented

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, [a.conj().T for a in self.blocks])

    def norm(self) -> float:
        """Operator norm: the largest singular value over all blocks."""
        worst = 0.0
        for mat in self.blocks:
            if mat.shape == (1, 1):
                worst = max(worst, abs(mat[0, 0]))
            else:
                worst = max(worst, float(np.linalg.norm(mat, 2)))
        return float(worst)

    def to_vec(self) -> np.ndarray:
        return np.concatenate([m.ravel() for m in self.blocks])

    def __repr__(self) -> str:
        return f"AlgebraElement({self.algebra!r})"


def operator_norm(x: AlgebraElement) -> float:
    """Operator norm of an element (largest singular value over blocks)."""
    return x.norm()


def column_element_norms(algebra: FdCStarAlgebra, matrix: np.ndarray) -> np.ndarray:
    """Operator norm of the element encoded by each column of matrix."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    ncols = matrix.shape[1]
    out = np.zeros(ncols)
    for off, n in algebra.block_slices():
        sub = matrix[off : off + n * n, :].T.reshape(ncols, n, n)
        if n == 1:
            vals = np.abs(sub[:, 0, 0])
        else:
            vals = np.linalg.svd(sub, compute_uv=False)[:, 0]
        np.maximum(out, vals, out=out)
    return out


def max_image_defect(codomain: FdCStarAlgebra, matrix_diff: np.ndarray) -> float:
    """Worst operator norm over the columns of a matrix of element differences."""
    norms = column_element_norms(codomain, matrix_diff)
    return float(norms.max()) if norms.size else 0.0


@lru_cache(maxsize=None)
def multiplication_table(algebra: FdCStarAlgebra) -> np.ndarray:
    """Index of e_i * e_j in the canonical basis, or -1 when the product is 0."""
    d = algebra.dim
    table = np.full((d, d), -1, dtype=np.intp)
    for k, n in enumerate(algebra.block_dims):
        for r in range(n):
            for s in range(n):
                i = algebra.basis_index(k, r, s)
                for s2 in range(n):
                    j = algebra.basis_index(k, s, s2)
                    table[i, j] = algebra.basis_index(k, r, s2)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def adjoint_permutation(algebra: FdCStarAlgebra) -> np.ndarray:
    """Permutation p with e_i^* = e_{p[i]} on the canonical basis."""
    perm = np.empty(algebra.dim, dtype=np.intp)
    for i, (k, r, s) in enumerate(algebra.basis_labels):
        perm[i] = algebra.basis_index(k, s, r)
    perm.setflags(write=False)
    return perm


class LinearFunctional:
    """A functional omega(x) = sum_k trace(rho_k x_k) stored via its density."""

    __slots__ = ("algebra", "density", "_cov")

    def __init__(self, algebra: FdCStarAlgebra, density: AlgebraElement) -> None:
        if density.algebra != algebra:
            raise IncompatibleAlgebraError("density must live in the same algebra")
        self.algebra = algebra
        self.density = density
        self._cov = None

    @property
    def covector(self) -> np.ndarray:
        """Values on the canonical basis, as a vector of length dim."""
        if self._cov is None:
            cov = np.concatenate([rho.T.ravel() for rho in self.density.blocks])
            cov.setflags(write=False)
            self._cov = cov
        return self._cov

    def __call__(self, x: AlgebraElement) -> complex:
        if x.algebra != self.algebra:
            raise IncompatibleAlgebraError("argument lives over a different algebra")
        return complex(np.dot(self.covector, x.to_vec()))

    @classmethod
    def from_values(
        cls, algebra: FdCStarAlgebra, values: np.ndarray
    ) -> "LinearFunctional":
        """Functional with the given values on the canonical basis."""
        values = np.asarray(values, dtype=complex).reshape(algebra.dim)
        blocks = [
            values[off : off + n * n].reshape(n, n).T
            for off, n in algebra.block_slices()
        ]
        return cls(algebra, AlgebraElement(algebra, blocks))

    def is_state(self, tol: float = DEFAULT_TOL) -> bool:
        """Hermitian positive semidefinite density with total trace 1."""
        total = 0.0 + 0.0j
        for rho in self.density.blocks:
            if np.abs(rho - rho.conj().T).max() > tol:
                return False
            if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -tol:
                return False
            total += np.trace(rho)
        return abs(total - 1.0) <= tol

    def is_faithful(self, floor: float = FAITHFULNESS_FLOOR) -> bool:
        """Every density block has minimum eigenvalue at or above the floor."""
        for rho in self.density.blocks:
            if np.abs(rho - rho.conj().T).max() > DEFAULT_TOL:
                return False
            if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < floor:
                return False
        return True

    def is_trace(self, tol: float = DEFAULT_TOL) -> bool:
        """Every density block is a nonnegative scalar multiple of the identity."""
        for rho, n in zip(self.density.blocks, self.algebra.block_dims):
            c = np.trace(rho) / n
            if abs(c.imag) > tol or c.real < -tol:
                return False
            if np.abs(rho - c * np.eye(n)).max() > tol:
                return False
        return True

    def __repr__(self) -> str:
        return f"LinearFunctional({self.algebra!r})"


def classify_state(omega: LinearFunctional, tol: float = DEFAULT_TOL) -> bool:
    """True iff the density is PSD Hermitian with total trace 1."""
    return omega.is_state(tol)


def classify_faithful(
    omega: LinearFunctional, floor: float = FAITHFULNESS_FLOOR
) -> bool:
    """True iff every density block has min eigenvalue at or above the floor."""
    return omega.is_faithful(floor)


def classify_trace(omega: LinearFunctional, tol: float = DEFAULT_TOL) -> bool:
    """True iff every density block is a nonnegative multiple of the identity."""
    return omega.is_trace(tol)


def trace_state(algebra: FdCStarAlgebra) -> LinearFunctional:
    """The normalized trace; on a commutative algebra, the uniform measure."""
    total = sum(algebra.block_dims)
    density = algebra.identity() * (1.0 / total)
    return LinearFunctional(algebra, density)


@dataclass(frozen=True)
class TensorLayout:
    """Index bookkeeping for the tensor product of two algebras.

    The product algebra has one block per pair of factor blocks, ordered
    with the left factor major; inside a block pair the matrix indices
    follow the Kronecker convention. The same layout rules compose
    associatively, so coordinates of iterated products can be reused
    without reindexing.
    """

    left: FdCStarAlgebra
    right: FdCStarAlgebra

    @cached_property
    def product(self) -> FdCStarAlgebra:
        dims = [n * m for n in self.left.block_dims for m in self.right.block_dims]
        return FdCStarAlgebra(tuple(dims))

    @cached_property
    def pair_index(self) -> np.ndarray:
        """pair_index[i, j] = product basis index of e_i (x) f_j."""
        prod = self.product
        nright = len(self.right.block_dims)
        out = np.empty((self.left.dim, self.right.dim), dtype=np.intp)
        for k, n in enumerate(self.left.block_dims):
            for l, m in enumerate(self.right.block_dims):
                off = prod._offsets[k * nright + l]
                nm = n * m
                for r in range(n):
                    for s in range(n):
                        i = self.left.basis_index(k, r, s)
                        base = out[i]
                        for rho in range(m):
                            row = r * m + rho
                            for sig in range(m):
                                j = self.right.basis_index(l, rho, sig)
                                base[j] = off + row * nm + (s * m + sig)
        out.setflags(write=False)
        return out

    @cached_property
    def kron_to_prod(self) -> np.ndarray:
        """Product basis index for each Kronecker coordinate i*dim(right)+j."""
        return self.pair_index.reshape(-1)

    def elem(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """The element x (x) y of the product algebra."""
        if x.algebra != self.left or y.algebra != self.right:
            raise IncompatibleAlgebraError(
                "factors do not match the declared layout factors"
            )
        blocks = [np.kron(a, b) for a in x.blocks for b in y.blocks]
        return AlgebraElement(self.product, blocks)

    def split(self, vec: np.ndarray) -> np.ndarray:
        """Rearrange product coordinates into a (dim left, dim right) table."""
        return np.asarray(vec)[self.pair_index]

    def combine(self, table: np.ndarray) -> np.ndarray:
        """Inverse of split."""
        out = np.empty(self.product.dim, dtype=complex)
        out[self.pair_index] = table
        return out


@lru_cache(maxsize=None)
def tensor_layout(left: FdCStarAlgebra, right: FdCStarAlgebra) -> TensorLayout:
    """Cached tensor layout for a pair of algebras."""
    return TensorLayout(left, right)


def tensor_product(a, b):
    """Tensor product of two algebras (a layout) or two elements."""
    if isinstance(a, FdCStarAlgebra) and isinstance(b, FdCStarAlgebra):
        return tensor_layout(a, b)
    if isinstance(a, AlgebraElement) and isinstance(b, AlgebraElement):
        return tensor_layout(a.algebra, b.algebra).elem(a, b)
    raise IncompatibleAlgebraError(
        "tensor_product expects two algebras or two elements"
    )


def _bilinear_table(algebra: FdCStarAlgebra, omega: LinearFunctional) -> np.ndarray:
    """T[i, j] = omega(e_i e_j) over the canonical basis."""
    table = multiplication_table(algebra)
    cov = np.concatenate([omega.covector, [0.0]])
    idx = np.where(table >= 0, table, algebra.dim)
    return cov[idx]


def orthonormal_basis(
    algebra: FdCStarAlgebra,
    omega: LinearFunctional,
    floor: float = FAITHFULNESS_FLOOR,
) -> list[AlgebraElement]:
    """Gram-Schmidt of the canonical basis for the inner product omega(x* y).

    The canonical order is kept, so the result is deterministic. Raises
    DegenerateStateError when the Gram matrix has an eigenvalue below the
    faithfulness floor.
    """
    if omega.algebra != algebra:
        raise IncompatibleAlgebraError("functional lives over a different algebra")
    d = algebra.dim
    gram = _bilinear_table(algebra, omega)[adjoint_permutation(algebra), :]
    min_eig = float(np.linalg.eigvalsh((gram + gram.conj().T) / 2).min())
    if min_eig < floor:
        raise DegenerateStateError(
            f"Gram matrix minimum eigenvalue {min_eig:.3e} is below {floor:g}"
        )
    cols: list[np.ndarray] = []
    for i in range(d):
        v = np.zeros(d, dtype=complex)
        v[i] = 1.0
        for _ in range(2):  # second pass keeps the basis orthonormal to ~1e-15
            for u in cols:
                v = v - (u.conj() @ (gram @ v)) * u
        nrm2 = float((v.conj() @ (gram @ v)).real)
        if nrm2 < floor:
            raise DegenerateStateError("Gram-Schmidt collapsed; functional degenerate")
        cols.append(v / np.sqrt(nrm2))
    return [algebra.from_vec(c) for c in cols]


def sigma_map(
    algebra: FdCStarAlgebra,
    omega: LinearFunctional,
    floor: float = FAITHFULNESS_FLOOR,
) -> np.ndarray:
    """Matrix, over the canonical basis, of the map sigma with
    omega(x y) = omega(y sigma(x)) for all x and y.

    For a faithful omega with density rho this is x -> rho x rho^{-1}; it
    is the identity exactly when omega is tracial, and always the identity
    on a commutative algebra. Solved as a linear system over the canonical
    basis; a non-faithful omega raises DegenerateStateError.
    """
    if omega.algebra != algebra:
        raise IncompatibleAlgebraError("functional lives over a different algebra")
    if not omega.is_faithful(floor):
        raise DegenerateStateError("the exchange map needs a faithful functional")
    table = _bilinear_table(algebra, omega)
    try:
        return np.linalg.solve(table, table.T)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - guarded above
        raise DegenerateStateError("bilinear Gram system is singular") from exc
