"""Lie algebras given by structure constants over an exact field.

Brackets are stored as a full antisymmetric tensor c[i][j][k] with
[e_i, e_j] = sum_k c[i][j][k] e_k, built from an upper-triangular input
table.  An optional [p]-map (one image vector per basis element) makes the
algebra restricted; the nonlinear p-power of an arbitrary element is
evaluated with the Jacobson sum formula.
"""

from __future__ import annotations

import itertools

import numpy as np

from .linalg import EchelonBasis, Field, Subspace, kernel_basis


class JacobiViolation(ValueError):
    def __init__(self, i, j, k):
        super().__init__(f"Jacobi identity fails on basis triple ({i},{j},{k})")
        self.triple = (i, j, k)


class AntisymmetryViolation(ValueError):
    pass


class NotAnIdeal(ValueError):
    pass


class NotASubalgebra(ValueError):
    pass


class LieAlgebra:
    def __init__(self, field: Field, c: np.ndarray, labels=None, pmap=None, _checked=False):
        self.field = field
        self.c = field.reduce(np.asarray(c, dtype=field.dtype))
        self.dim = self.c.shape[0]
        self.labels = list(labels) if labels else [f"x{i}" for i in range(self.dim)]
        self.pmap = None if pmap is None else field.reduce(np.asarray(pmap, dtype=field.dtype))
        if self.pmap is not None and field.characteristic == 0:
            raise ValueError("a [p]-map needs prime characteristic")
        if not _checked:
            self._validate()

    def _validate(self):
        n, f = self.dim, self.field
        if self.c.shape != (n, n, n):
            raise ValueError("structure constants must be dim x dim x dim")
        for i in range(n):
            if any(x != 0 for x in self.c[i, i]):
                raise AntisymmetryViolation(f"[e_{i}, e_{i}] != 0")
            for j in range(i + 1, n):
                if any(x != 0 for x in f.reduce(self.c[i, j] + self.c[j, i])):
                    raise AntisymmetryViolation(f"c[{i}][{j}] != -c[{j}][{i}]")
        ad = self.ad_basis
        for i, j, k in itertools.combinations(range(n), 3):
            res = f.reduce(-(ad[k] @ self.c[i, j]) - (ad[i] @ self.c[j, k]) - (ad[j] @ self.c[k, i]))
            if any(x != 0 for x in res):
                raise JacobiViolation(i, j, k)

    @property
    def ad_basis(self) -> list[np.ndarray]:
        """ad(e_i) matrices; ad(e_i)[k, j] = c[i][j][k]."""
        if not hasattr(self, "_ad_basis"):
            self._ad_basis = [self.c[i].T.copy() for i in range(self.dim)]
        return self._ad_basis

    def ad(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=self.field.dtype)
        m = self.field.zeros(self.dim, self.dim)
        for i in range(self.dim):
            if x[i] != 0:
                m = m + x[i] * self.ad_basis[i]
        return self.field.reduce(m)

    def bracket(self, x, y) -> np.ndarray:
        return self.field.reduce(self.ad(x) @ np.asarray(y, dtype=self.field.dtype))

    def basis_vector(self, i) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def bracket_spaces(self, u: Subspace, v: Subspace) -> Subspace:
        """Span of [u, v]."""
        eb = EchelonBasis(self.field, self.dim)
        for a in u.basis:
            ada = self.ad(a)
            for b in v.basis:
                eb.insert(ada @ b)
        return eb.snapshot()

    def is_ideal(self, space: Subspace) -> bool:
        full = self.full_space()
        return space.contains_subspace(self.bracket_spaces(full, space))

    def is_subalgebra(self, space: Subspace) -> bool:
        return space.contains_subspace(self.bracket_spaces(space, space))

    def center(self) -> Subspace:
        """{x : ad(x) = 0}, computed as a kernel over the ad coefficients."""
        n = self.dim
        m = self.field.zeros(n * n, n)
        for i in range(n):
            m[:, i] = self.ad_basis[i].reshape(-1)
        return kernel_basis(self.field, m)

    def __repr__(self):
        p = self.field.characteristic
        f = f"GF({p})" if p else "Q"
        r = ", restricted" if self.pmap is not None else ""
        return f"LieAlgebra(dim={self.dim} over {f}{r})"


class IdealHandle:
    """A subspace certified to satisfy [L, space] <= space at construction."""

    def __init__(self, parent: LieAlgebra, space: Subspace):
        if not parent.is_ideal(space):
            raise NotAnIdeal(f"subspace of dim {space.dim} is not an ideal")
        self.parent = parent
        self.space = space

    @property
    def dim(self):
        return self.space.dim

    def __repr__(self):
        return f"IdealHandle(dim={self.dim} in {self.parent!r})"


def build_lie_algebra(field: Field, dim: int, table, labels=None, pmap=None) -> LieAlgebra:
    """Assemble an algebra from an i<j bracket table {(i, j): coordinate vector}.

    The antisymmetric completion is applied; Jacobi is verified on all basis
    triples.  pmap, when given, maps basis index -> image coordinate vector.
    """
    c = field.zeros(dim, dim, dim)
    for (i, j), vec in table.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"bracket key ({i},{j}) out of range")
        v = field.reduce(np.asarray(vec, dtype=field.dtype))
        if i == j:
            if any(x != 0 for x in v):
                raise AntisymmetryViolation(f"[e_{i}, e_{i}] must be 0")
            continue
        if i > j:
            i, j, v = j, i, field.reduce(-v)
        c[i, j] = v
        c[j, i] = field.reduce(-v)
    pm = None
    if pmap is not None:
        pm = field.zeros(dim, dim)
        for i, vec in pmap.items():
            pm[int(i)] = field.reduce(np.asarray(vec, dtype=field.dtype))
    return LieAlgebra(field, c, labels=labels, pmap=pm)


def lie_from_matrices(field: Field, mats, labels=None, pmap_from_power: int | None = None) -> LieAlgebra:
    """Algebra spanned by linearly independent matrices, closed under commutator.

    With pmap_from_power = p, the [p]-map is the p-th matrix power (valid for
    matrix algebras closed under it, e.g. gl_n subalgebras in char p).
    """
    from .linalg import solve

    n = len(mats)
    flat = Subspace.from_vectors(field, mats[0].size, [m.reshape(-1) for m in mats])
    if flat.dim != n:
        raise ValueError("matrices are linearly dependent")
    stacked = np.stack([field.reduce(np.asarray(m, dtype=field.dtype).reshape(-1)) for m in mats]).T

    def coords(mat):
        v = field.reduce(np.asarray(mat, dtype=field.dtype).reshape(-1))
        if not flat.contains(v):
            raise NotASubalgebra("matrices not closed under commutator / p-power")
        return solve(field, stacked, v)

    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            comm = field.reduce(mats[i] @ mats[j] - mats[j] @ mats[i])
            table[(i, j)] = coords(comm)
    pmap = None
    if pmap_from_power:
        pmap = {}
        for i in range(n):
            m = field.eye(mats[i].shape[0])
            for _ in range(pmap_from_power):
                m = field.matmul(m, mats[i])
            pmap[i] = coords(m)
    return build_lie_algebra(field, n, table, labels=labels, pmap=pmap)


# -- series ----------------------------------------------------------------


def derived_and_central_series(L: LieAlgebra):
    """Derived and lower-central chains, with solvability/nilpotency flags."""
    derived = [L.full_space()]
    while True:
        nxt = L.bracket_spaces(derived[-1], derived[-1])
        if nxt.dim == derived[-1].dim:
            break
        derived.append(nxt)
    central = [L.full_space()]
    while True:
        nxt = L.bracket_spaces(L.full_space(), central[-1])
        if nxt.dim == central[-1].dim:
            break
        central.append(nxt)
    return derived, central, derived[-1].dim == 0, central[-1].dim == 0


def is_solvable(L: LieAlgebra) -> bool:
    return derived_and_central_series(L)[2]


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    return L.bracket_spaces(L.full_space(), L.full_space())


# -- quotients --------------------------------------------------------------


class QuotientMap:
    """Projection L -> L/I together with its canonical linear section.

    The section embeds quotient coordinates at the non-pivot positions of the
    ideal's echelon basis (greedy pivot extension), so it is reproducible.
    """

    def __init__(self, L: LieAlgebra, ideal: Subspace):
        self.domain = L
        self.ideal = ideal
        f = L.field
        n, copivots = L.dim, ideal.copivots
        self.proj = f.zeros(len(copivots), n)
        for i in range(n):
            self.proj[:, i] = ideal.quotient_coords(L.basis_vector(i))
        self.section_mat = f.zeros(n, len(copivots))
        for a, j in enumerate(copivots):
            self.section_mat[j, a] = 1

    def push(self, v) -> np.ndarray:
        return self.domain.field.matmul(self.proj, np.asarray(v, dtype=self.domain.field.dtype))

    def lift(self, vbar) -> np.ndarray:
        return self.domain.field.matmul(self.section_mat, np.asarray(vbar, dtype=self.domain.field.dtype))

    def push_matrix_action(self, mats) -> list[np.ndarray]:
        """Conjugate L-action matrices to quotient coordinates (when they preserve the ideal)."""
        f = self.domain.field
        return [f.reduce(self.proj @ m @ self.section_mat) for m in mats]


def quotient_algebra(L: LieAlgebra, ideal: Subspace | IdealHandle):
    """(L/I, projection).  Raises NotAnIdeal unless [L, I] <= I."""
    space = ideal.space if isinstance(ideal, IdealHandle) else ideal
    if not L.is_ideal(space):
        raise NotAnIdeal("quotient needs an ideal")
    f = L.field
    qm = QuotientMap(L, space)
    m = len(space.copivots)
    c = f.zeros(m, m, m)
    reps = [L.basis_vector(j) for j in space.copivots]
    for a in range(m):
        for b in range(a + 1, m):
            v = qm.push(L.bracket(reps[a], reps[b]))
            c[a, b] = v
            c[b, a] = f.reduce(-v)
    pmap = None
    if L.pmap is not None and is_p_closed(L, space):
        pmap = f.zeros(m, m)
        for a, j in enumerate(space.copivots):
            pmap[a] = qm.push(L.pmap[j])
    labels = [L.labels[j] + "~" for j in space.copivots]
    return LieAlgebra(f, c, labels=labels, pmap=pmap), qm


def subalgebra_on(L: LieAlgebra, space: Subspace) -> LieAlgebra:
    """The Lie algebra structure on a bracket-closed subspace, in its basis coordinates."""
    if not L.is_subalgebra(space):
        raise NotASubalgebra("subspace not closed under bracket")
    f = L.field
    m = space.dim
    c = f.zeros(m, m, m)
    for a in range(m):
        for b in range(a + 1, m):
            v = space.coords(L.bracket(space.basis[a], space.basis[b]))
            c[a, b] = v
            c[b, a] = f.reduce(-v)
    pmap = None
    if L.pmap is not None and is_p_closed(L, space):
        pmap = f.zeros(m, m)
        for a in range(m):
            pmap[a] = space.coords(p_power(L, space.basis[a]))
    return LieAlgebra(f, c, labels=[f"s{a}" for a in range(m)], pmap=pmap)


# -- constructions ----------------------------------------------------------


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    if L1.field != L2.field:
        raise ValueError("summands over different fields")
    f = L1.field
    n1, n2 = L1.dim, L2.dim
    n = n1 + n2
    c = f.zeros(n, n, n)
    c[:n1, :n1, :n1] = L1.c
    c[n1:, n1:, n1:] = L2.c
    pmap = None
    if L1.pmap is not None and L2.pmap is not None:
        pmap = f.zeros(n, n)
        pmap[:n1, :n1] = L1.pmap
        pmap[n1:, n1:] = L2.pmap
    return LieAlgebra(f, c, labels=L1.labels + L2.labels, pmap=pmap, _checked=True)


def semidirect_product(L: LieAlgebra, rep) -> LieAlgebra:
    """L acting on an abelian ideal V through rep: the split extension L |x V."""
    f = L.field
    nl, d = L.dim, rep.dim
    n = nl + d
    c = f.zeros(n, n, n)
    c[:nl, :nl, :nl] = L.c
    for i in range(nl):
        m = rep.matrices[i]
        for b in range(d):
            c[i, nl + b, nl:] = m[:, b]
            c[nl + b, i, nl:] = f.reduce(-m[:, b])
    pmap = None
    if L.pmap is not None and rep.is_restricted():
        pmap = f.zeros(n, n)
        pmap[:nl, :nl] = L.pmap
    return LieAlgebra(f, c, labels=L.labels + [f"v{b}" for b in range(d)], pmap=pmap)


# -- the [p]-map ------------------------------------------------------------


def jacobson_s_terms(L: LieAlgebra, x, y) -> list[np.ndarray]:
    """The correction terms s_1..s_{p-1} of the sum formula for (x+y)^[p].

    i * s_i(x, y) is the tau^(i-1) coefficient of ad(tau*x + y)^(p-1) applied
    to x, expanded as a polynomial in tau with coefficients in L.
    """
    p = L.field.characteristic
    f = L.field
    A, B = L.ad(x), L.ad(y)
    # vector-valued polynomial in tau, as a coefficient list
    poly = [f.reduce(np.asarray(x, dtype=f.dtype))]
    for _ in range(p - 1):
        nxt = [f.zeros(L.dim) for _ in range(len(poly) + 1)]
        for deg, vec in enumerate(poly):
            nxt[deg] = f.reduce(nxt[deg] + B @ vec)
            nxt[deg + 1] = f.reduce(nxt[deg + 1] + A @ vec)
        poly = nxt
    terms = []
    for i in range(1, p):
        coeff = poly[i - 1] if i - 1 < len(poly) else f.zeros(L.dim)
        terms.append(f.reduce(coeff * pow(i, -1, p)))
    return terms


def p_power(L: LieAlgebra, x) -> np.ndarray:
    """x^[p] for an arbitrary element, via the Jacobson sum formula."""
    if L.pmap is None:
        raise ValueError("algebra has no [p]-map")
    f = L.field
    p = f.characteristic
    x = f.reduce(np.asarray(x, dtype=f.dtype))
    support = [i for i in range(L.dim) if x[i] != 0]
    if not support:
        return f.zeros(L.dim)
    k = support[0]
    lead = f.reduce(x[k] * L.basis_vector(k))
    out = f.reduce(pow(int(x[k]), p, p) * L.pmap[k])
    if len(support) == 1:
        return out
    rest = x.copy()
    rest[k] = 0
    out = f.reduce(out + p_power(L, rest))
    for s in jacobson_s_terms(L, lead, rest):
        out = f.reduce(out + s)
    return out


def is_p_closed(L: LieAlgebra, space: Subspace) -> bool:
    if L.pmap is None:
        return False
    return all(space.contains(p_power(L, row)) for row in space.basis)


# -- derivations ------------------------------------------------------------


def derivation_algebra(L: LieAlgebra) -> LieAlgebra:
    """All D with D[x,y] = [Dx,y] + [x,Dy], as a Lie algebra under commutator.

    In prime characteristic the p-th matrix power of a derivation is again a
    derivation, so the result carries that [p]-map.
    """
    f, n = L.field, L.dim
    if n == 0:
        return L
    eqs = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = f.zeros(n, n)  # coefficient of D[r][s]
                row[k] = row[k] + L.c[i, j]
                row[:, i] = row[:, i] - L.c[:, j, k]
                row[:, j] = row[:, j] - L.c[i, :, k]
                eqs.append(f.reduce(row.reshape(-1)))
    if eqs:
        ker = kernel_basis(f, np.stack(eqs))
    else:
        ker = Subspace.full(f, n * n)
    mats = [row.reshape(n, n) for row in ker.basis]
    m = len(mats)
    c = f.zeros(m, m, m)
    for a in range(m):
        for b in range(a + 1, m):
            comm = f.reduce(mats[a] @ mats[b] - mats[b] @ mats[a])
            v = ker.coords(comm.reshape(-1))
            c[a, b] = v
            c[b, a] = f.reduce(-v)
    pmap = None
    if f.is_modular:
        p = f.characteristic
        pmap = f.zeros(m, m)
        for a in range(m):
            mp = f.eye(n)
            for _ in range(p):
                mp = f.matmul(mp, mats[a])
            pmap[a] = ker.coords(mp.reshape(-1))
    der = LieAlgebra(f, c, labels=[f"D{a}" for a in range(m)], pmap=pmap)
    der.derivation_matrices = mats
    return der


def inner_derivation_space(L: LieAlgebra) -> Subspace:
    """Image of ad inside gl(L), flattened."""
    return Subspace.from_vectors(L.field, L.dim * L.dim, [m.reshape(-1) for m in (L.ad(L.basis_vector(i)) for i in range(L.dim))])
