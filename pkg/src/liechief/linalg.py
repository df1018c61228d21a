"""Exact dense linear algebra over GF(p) and Q.

GF(p) matrices are numpy int64 arrays with entries in [0, p); products are
accumulated in int64 and reduced afterwards, which is exact for p <= 2**16
at the dimensions this package works at.  Rational matrices are numpy object
arrays holding ints / fractions.Fraction, so every operation is exact.
Pivoting is always "first nonzero", making every echelon form canonical and
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_PRIME = 1 << 16


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """A prime field GF(p), or Q when characteristic is 0."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p < 2 or p > MAX_PRIME or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"characteristic must be 0 or a prime <= {MAX_PRIME}, got {p}")

    @property
    def is_modular(self) -> bool:
        return self.characteristic != 0

    @property
    def dtype(self):
        return np.int64 if self.is_modular else object

    def zeros(self, *shape) -> np.ndarray:
        if self.is_modular:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = 0
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = 1
        return a

    def mat(self, rows) -> np.ndarray:
        """Build a canonical matrix from nested scalars."""
        a = np.array(rows, dtype=self.dtype)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        return self.reduce(a)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.characteristic if self.is_modular else a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a @ b)

    def inv_scalar(self, x):
        if self.is_modular:
            return pow(int(x), -1, self.characteristic)
        return Fraction(1, 1) / Fraction(x)

    def scalar(self, x):
        """Canonical representative of a scalar (int for GF(p), Fraction-compatible for Q)."""
        if self.is_modular:
            return int(x) % self.characteristic
        return x if isinstance(x, (int, Fraction)) else Fraction(x)


GF = lambda p: Field(p)
QQ = Field(0)


def _first_nonzero(v: np.ndarray) -> int:
    """Index of the first nonzero entry, or -1."""
    if v.dtype == object:
        for j, x in enumerate(v):
            if x != 0:
                return j
        return -1
    nz = np.nonzero(v)[0]
    return int(nz[0]) if nz.size else -1


class EchelonBasis:
    """Mutable accumulator of a reduced row-echelon basis.

    Internal building block for spans, spinning and kernels; public API
    objects snapshot it into an immutable Subspace.  Rows are kept fully
    reduced (RREF) at all times with pivots in increasing column order, so
    reduction against the basis is a single matrix product.
    """

    def __init__(self, field: Field, ambient: int):
        self.field = field
        self.ambient = ambient
        self._rows: np.ndarray | None = None
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residue of v modulo the current row space."""
        f = self.field
        v = f.reduce(np.asarray(v, dtype=f.dtype))
        if self._rows is None:
            return v.copy()
        coeffs = v[self.pivots]
        if not coeffs.any():
            return v.copy()
        return f.reduce(v - coeffs @ self._rows)

    def contains(self, v) -> bool:
        return _first_nonzero(self.reduce(v)) < 0

    def insert(self, v) -> bool:
        """Add v to the span; True if the rank grew."""
        f = self.field
        v = self.reduce(v)
        lead = _first_nonzero(v)
        if lead < 0:
            return False
        v = f.reduce(v * f.inv_scalar(v[lead]))
        at = len([p for p in self.pivots if p < lead])
        if self._rows is None:
            self._rows = v.reshape(1, -1)
        else:
            col = self._rows[:, lead]
            if col.any():
                self._rows = f.reduce(self._rows - np.outer(col.copy(), v))
            self._rows = np.insert(self._rows, at, v, axis=0)
        self.pivots.insert(at, lead)
        return True

    def matrix(self) -> np.ndarray:
        if self._rows is None:
            return self.field.zeros(0, self.ambient)
        return self._rows.copy()

    def snapshot(self) -> "Subspace":
        return Subspace(self.field, self.ambient, self.matrix(), tuple(self.pivots))


class Subspace:
    """A subspace of F^n, stored as its canonical RREF basis.

    Two Subspace values are equal iff the echelon bases agree entrywise.
    """

    def __init__(self, field: Field, ambient: int, basis: np.ndarray, pivots: tuple[int, ...]):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @staticmethod
    def from_vectors(field: Field, ambient: int, vectors) -> "Subspace":
        eb = EchelonBasis(field, ambient)
        for v in vectors:
            eb.insert(v)
        return eb.snapshot()

    @staticmethod
    def zero(field: Field, ambient: int) -> "Subspace":
        return Subspace(field, ambient, field.zeros(0, ambient), ())

    @staticmethod
    def full(field: Field, ambient: int) -> "Subspace":
        return Subspace(field, ambient, field.eye(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _key(self):
        return (self.ambient, self.pivots, tuple(self.basis.reshape(-1).tolist()))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def reduce(self, v: np.ndarray) -> np.ndarray:
        f = self.field
        v = f.reduce(np.asarray(v, dtype=f.dtype))
        if self.dim == 0:
            return v.copy()
        coeffs = v[list(self.pivots)]
        if not coeffs.any():
            return v.copy()
        return f.reduce(v - coeffs @ self.basis)

    def contains(self, v) -> bool:
        return _first_nonzero(self.reduce(v)) < 0

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def coords(self, v) -> np.ndarray:
        """Coordinates of v in the echelon basis (v must lie in the span)."""
        v = self.field.reduce(np.asarray(v, dtype=self.field.dtype))
        c = v[list(self.pivots)] if self.pivots else self.field.zeros(0)
        if _first_nonzero(self.reduce(v)) >= 0:
            raise ValueError("vector not in subspace")
        return c

    def embed(self, coords) -> np.ndarray:
        """Inverse of coords: linear combination of the basis rows."""
        coords = np.asarray(coords, dtype=self.field.dtype)
        if self.dim == 0:
            return self.field.zeros(self.ambient)
        return self.field.reduce(coords @ self.basis)

    # -- complement bookkeeping (deterministic pivot extension) --

    @property
    def copivots(self) -> tuple[int, ...]:
        """Ambient coordinates not used as pivots; they index a fixed complement."""
        pset = set(self.pivots)
        return tuple(j for j in range(self.ambient) if j not in pset)

    def quotient_coords(self, v) -> np.ndarray:
        """Coordinates of v mod this subspace, in the standard complement basis."""
        return self.reduce(v)[list(self.copivots)] if self.ambient else self.field.zeros(0)

    def section(self, qcoords) -> np.ndarray:
        """Canonical lift of quotient coordinates back to the ambient space."""
        v = self.field.zeros(self.ambient)
        for j, c in zip(self.copivots, np.asarray(qcoords, dtype=self.field.dtype)):
            v[j] = c
        return self.field.reduce(v)

    # -- lattice operations --

    def _check_ambient(self, other: "Subspace"):
        if self.ambient != other.ambient or self.field != other.field:
            raise DimensionMismatch("subspaces live in different ambient spaces")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        eb = EchelonBasis(self.field, self.ambient)
        for row in self.basis:
            eb.insert(row)
        for row in other.basis:
            eb.insert(row)
        return eb.snapshot()

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus-free intersection: solve a*U = b*V via a kernel."""
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        stacked = np.concatenate([self.basis, other.basis]).T  # columns: U rows then V rows
        stacked = stacked.copy()
        for j in range(other.dim):  # negate the V block
            col = self.dim + j
            stacked[:, col] = self.field.reduce(-stacked[:, col])
        ker = kernel_basis(self.field, stacked)
        eb = EchelonBasis(self.field, self.ambient)
        for kv in ker.basis:
            eb.insert(self.field.reduce(kv[: self.dim] @ self.basis))
        return eb.snapshot()


def rref(field: Field, m: np.ndarray) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form and rank; idempotent, deterministic pivoting."""
    m = field.reduce(np.asarray(m, dtype=field.dtype))
    eb = EchelonBasis(field, m.shape[1] if m.ndim == 2 else 0)
    for row in m:
        eb.insert(row)
    out = field.zeros(*m.shape)
    mat = eb.matrix()
    if len(eb):
        out[: len(eb)] = mat
    return out, len(eb)


def rank(field: Field, m: np.ndarray) -> int:
    return rref(field, m)[1]


def row_space(field: Field, m: np.ndarray) -> Subspace:
    return Subspace.from_vectors(field, m.shape[1], list(m))


def kernel_basis(field: Field, m: np.ndarray) -> Subspace:
    """Right kernel {v : m v = 0} as a canonical Subspace."""
    m = np.asarray(m, dtype=field.dtype)
    rows, cols = m.shape
    eb = EchelonBasis(field, cols)
    for row in m:
        eb.insert(row)
    pivots = set(eb.pivots)
    basis_mat = eb.matrix()
    vectors = []
    for j in range(cols):
        if j in pivots:
            continue
        v = field.zeros(cols)
        v[j] = 1
        # back-substitute: pivot coordinate of the solution kills column j
        for row, piv in zip(basis_mat, eb.pivots):
            v[piv] = field.scalar(-row[j])
        vectors.append(v)
    return Subspace.from_vectors(field, cols, vectors)


def solve(field: Field, a: np.ndarray, b: np.ndarray):
    """Some x with a x = b (free variables zeroed), or None if inconsistent."""
    a = np.asarray(a, dtype=field.dtype)
    b = np.asarray(b, dtype=field.dtype)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"a has {a.shape[0]} rows, b has {b.shape[0]}")
    rows, cols = a.shape
    aug = field.zeros(rows, cols + 1)
    aug[:, :cols] = field.reduce(a)
    aug[:, cols] = field.reduce(b)
    red, _ = rref(field, aug)
    x = field.zeros(cols)
    for row in red:
        lead = _first_nonzero(row)
        if lead < 0:
            continue
        if lead == cols:
            return None
        # RREF + zeroed free variables: the pivot value is the augmented entry
        x[lead] = field.scalar(row[cols])
    return field.reduce(x)


def random_matrix(field: Field, rows: int, cols: int, rng) -> np.ndarray:
    """Uniform random matrix (small-integer entries over Q); test utility."""
    if field.is_modular:
        p = field.characteristic
        return np.array([[rng.randrange(p) for _ in range(cols)] for _ in range(rows)], dtype=np.int64)
    a = field.zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            a[i, j] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return a
