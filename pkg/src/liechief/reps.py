"""L-modules as matrix representations, and the MeatAxe machinery.

A Representation stores one action matrix per basis element of the algebra
and verifies the bracket relation at construction.  Irreducibility over a
finite field is decided with the Norton criterion: a singular element of the
enveloping associative algebra is located by randomized words, every line of
its kernel is spun, and one kernel line of the transposed matrices is spun on
the dual side.  Witnesses (proper invariant subspaces) are returned exactly.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .lie import LieAlgebra, NotASubalgebra, subalgebra_on
from .linalg import EchelonBasis, Subspace, kernel_basis

MAX_MODULE_DIM = 512
_LINE_LIMIT = 1024
_RANDOM_TRIES = 300


class ScaleGuardError(RuntimeError):
    pass


class NotAModule(ValueError):
    pass


class Representation:
    def __init__(self, algebra: LieAlgebra, matrices, check=True, dim=None):
        self.algebra = algebra
        f = algebra.field
        self.field = f
        self.matrices = [f.reduce(np.asarray(m, dtype=f.dtype)) for m in matrices]
        if len(self.matrices) != algebra.dim:
            raise NotAModule("need one action matrix per basis element")
        if self.matrices:
            self.dim = self.matrices[0].shape[0]
        elif dim is None:
            raise NotAModule("a module over the zero algebra needs an explicit dim")
        else:
            self.dim = dim
        for m in self.matrices:
            if m.shape != (self.dim, self.dim):
                raise NotAModule("action matrices must be square of equal size")
        if check:
            self._check_bracket()

    def _check_bracket(self):
        f = self.field
        for i in range(self.algebra.dim):
            for j in range(i + 1, self.algebra.dim):
                lhs = self.act(self.algebra.c[i, j])
                rhs = f.reduce(self.matrices[i] @ self.matrices[j] - self.matrices[j] @ self.matrices[i])
                if (lhs != rhs).any():
                    raise NotAModule(f"bracket relation fails on basis pair ({i},{j})")

    def act(self, x) -> np.ndarray:
        f = self.field
        x = np.asarray(x, dtype=f.dtype)
        m = f.zeros(self.dim, self.dim)
        for i in range(self.algebra.dim):
            if x[i] != 0:
                m = m + x[i] * self.matrices[i]
        return f.reduce(m)

    def apply(self, x, v) -> np.ndarray:
        return self.field.matmul(self.act(x), np.asarray(v, dtype=self.field.dtype))

    def is_restricted(self) -> bool:
        """rho(e_i^[p]) = rho(e_i)^p on every basis element."""
        L = self.algebra
        if L.pmap is None:
            return False
        f, p = self.field, self.field.characteristic
        for i in range(L.dim):
            mp = f.eye(self.dim)
            for _ in range(p):
                mp = f.matmul(mp, self.matrices[i])
            if (mp != self.act(L.pmap[i])).any():
                return False
        return True

    def is_trivial(self) -> bool:
        return all(not m.any() for m in self.matrices)

    def __repr__(self):
        return f"Representation(dim={self.dim} of {self.algebra!r})"


def trivial_rep(L: LieAlgebra, dim: int = 1) -> Representation:
    return Representation(L, [L.field.zeros(dim, dim) for _ in range(L.dim)], check=False, dim=dim)


def adjoint_rep(L: LieAlgebra) -> Representation:
    """ad(e_i) matrices; the bracket relation is the Jacobi identity."""
    return Representation(L, L.ad_basis, check=False)


# -- spinning ----------------------------------------------------------------


def spin_matrices(field, matrices, vectors, ambient) -> Subspace:
    """Smallest subspace containing the vectors and stable under the matrices."""
    eb = EchelonBasis(field, ambient)
    queue = [np.asarray(v, dtype=field.dtype) for v in vectors]
    fresh = [v for v in queue if eb.insert(v)]
    while fresh:
        v = fresh.pop()
        for m in matrices:
            w = field.matmul(m, v)
            if eb.insert(w):
                fresh.append(w)
    return eb.snapshot()


def spin(rep: Representation, vectors) -> Subspace:
    return spin_matrices(rep.field, rep.matrices, vectors, rep.dim)


def invariants(rep: Representation) -> Subspace:
    """M^L = intersection of the kernels of the action matrices."""
    if rep.algebra.dim == 0:
        return Subspace.full(rep.field, rep.dim)
    stacked = np.concatenate(rep.matrices, axis=0)
    return kernel_basis(rep.field, stacked)


# -- sub/quotient/functor modules --------------------------------------------


def sub_rep(rep: Representation, space: Subspace, check=True) -> Representation:
    """Action on an invariant subspace, in its echelon-basis coordinates."""
    f = rep.field
    mats = []
    for m in rep.matrices:
        out = f.zeros(space.dim, space.dim)
        for a in range(space.dim):
            w = f.matmul(m, space.basis[a])
            if check and not space.contains(w):
                raise NotAModule("subspace is not invariant")
            out[:, a] = w[list(space.pivots)]
        mats.append(out)
    return Representation(rep.algebra, mats, check=False)


def quotient_rep(rep: Representation, space: Subspace) -> Representation:
    """Action on the quotient by an invariant subspace, in complement coordinates."""
    f = rep.field
    copiv = space.copivots
    mats = []
    for m in rep.matrices:
        out = f.zeros(len(copiv), len(copiv))
        for a, j in enumerate(copiv):
            out[:, a] = space.quotient_coords(m[:, j])
        mats.append(out)
    return Representation(rep.algebra, mats, check=False)


def dual_rep(rep: Representation) -> Representation:
    return Representation(rep.algebra, [rep.field.reduce(-m.T) for m in rep.matrices], check=False)


def hom_rep(r1: Representation, r2: Representation) -> Representation:
    """Hom(V1, V2) with (x.f) = rho2(x) f - f rho1(x); f flattened row-major as d2 x d1."""
    if r1.algebra is not r2.algebra:
        raise NotAModule("hom needs modules over one algebra")
    f = r1.field
    i1, i2 = f.eye(r1.dim), f.eye(r2.dim)
    mats = [f.reduce(np.kron(m2, i1) - np.kron(i2, m1.T)) for m1, m2 in zip(r1.matrices, r2.matrices)]
    return Representation(r1.algebra, mats, check=False)


def tensor_with_coords(space: Subspace, rep: Representation) -> Representation:
    """Restrict rep to an invariant subspace given ambient coordinates; alias of sub_rep."""
    return sub_rep(rep, space)


def restrict_to(rep: Representation, space: Subspace):
    """(subalgebra on the subspace, module restricted to it)."""
    sub = subalgebra_on(rep.algebra, space)
    mats = [rep.act(space.basis[a]) for a in range(space.dim)]
    return sub, Representation(sub, mats)


# -- intertwiners -------------------------------------------------------------


def intertwiner_space(r1: Representation, r2: Representation) -> Subspace:
    """All T with T rho1(x) = rho2(x) T, flattened row-major (d2 x d1)."""
    return invariants(hom_rep(r1, r2))


def end_dim(rep: Representation) -> int:
    return intertwiner_space(rep, rep).dim


def is_isomorphic(r1: Representation, r2: Representation) -> bool:
    """For irreducible modules: nonzero intertwiner of equal dimension."""
    if r1.dim != r2.dim:
        return False
    return intertwiner_space(r1, r2).dim > 0


def endomorphisms_invertible(rep: Representation) -> bool:
    """Schur check: every nonzero element of a basis of End_L is invertible."""
    from .linalg import rank

    d = rep.dim
    for row in intertwiner_space(rep, rep).basis:
        if rank(rep.field, row.reshape(d, d)) != d:
            return False
    return True


# -- MeatAxe ------------------------------------------------------------------


class NortonCertificate:
    """Evidence for irreducibility: the singular witness element and counts."""

    def __init__(self, element, nullity, lines_spun, dual_vector):
        self.element = element
        self.nullity = nullity
        self.lines_spun = lines_spun
        self.dual_vector = dual_vector

    def __repr__(self):
        return f"NortonCertificate(nullity={self.nullity}, lines={self.lines_spun})"


def _kernel_lines(field, ker: Subspace):
    """All 1-dimensional subspaces of a kernel, as normalized ambient vectors."""
    q = field.characteristic
    k = ker.dim
    count = (q**k - 1) // (q - 1)
    if count > _LINE_LIMIT:
        return None
    lines = []
    for coeffs in itertools.product(range(q), repeat=k):
        lead = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if lead is None or coeffs[lead] != 1:
            continue  # normalize: first nonzero coefficient is 1
        v = field.reduce(np.array(coeffs, dtype=np.int64) @ ker.basis)
        lines.append(v)
    return lines


def _random_algebra_element(field, mats, rng) -> np.ndarray:
    """A random element of the (non-unital) associative envelope of the action."""
    p = field.characteristic

    def word():
        m = mats[rng.randrange(len(mats))]
        for _ in range(rng.randint(0, 2)):
            m = field.matmul(m, mats[rng.randrange(len(mats))])
        return m

    a = field.reduce(rng.randrange(1, p) * word())
    for _ in range(rng.randint(0, 2)):
        a = field.reduce(a + rng.randrange(1, p) * word())
    return a


def _random_vector(field, dim, rng) -> np.ndarray:
    v = np.array([rng.randrange(field.characteristic) for _ in range(dim)], dtype=np.int64)
    if not v.any():
        v[rng.randrange(dim)] = 1
    return v


def _perp(field, space: Subspace, ambient: int) -> Subspace:
    if space.dim == 0:
        return Subspace.full(field, ambient)
    return kernel_basis(field, space.basis)


def is_irreducible(rep: Representation, rng=None):
    """(irreducible?, witness, certificate) by the Norton criterion.

    When reducible, witness is a proper nonzero invariant subspace.  When
    irreducible, the certificate holds a singular algebra element all of
    whose kernel lines spin to the full space, plus the dual-side vector.
    """
    if not rep.field.is_modular:
        raise ScaleGuardError("MeatAxe irreducibility needs a finite field")
    if rep.dim > MAX_MODULE_DIM:
        raise ScaleGuardError(f"module dim {rep.dim} exceeds the desk-scale bound {MAX_MODULE_DIM}")
    rng = rng or random.Random(0)
    f, d = rep.field, rep.dim
    if d == 0:
        raise NotAModule("zero module")
    nonzero = [m for m in rep.matrices if m.any()]
    if d == 1:
        return True, None, NortonCertificate(None, 0, 0, None)
    if not nonzero:
        line = Subspace.from_vectors(f, d, [f.eye(d)[0]])
        return False, line, None
    transposed = [m.T.copy() for m in nonzero]
    q = f.characteristic

    # cheap probes: submodules generated by random vectors, on both sides
    for _ in range(6):
        sub = spin_matrices(f, nonzero, [_random_vector(f, d, rng)], d)
        if 0 < sub.dim < d:
            return False, sub, None
        dual = spin_matrices(f, transposed, [_random_vector(f, d, rng)], d)
        if 0 < dual.dim < d:
            return False, _perp(f, dual, d), None

    eye = f.eye(d)
    for _ in range(_RANDOM_TRIES):
        b = _random_algebra_element(f, nonzero, rng)
        # scan eigenvalue shifts for a singular element with a small kernel
        best = None
        for lam in range(q):
            a = f.reduce(b - lam * eye)
            ker = kernel_basis(f, a)
            if ker.dim == 0 or ker.dim == d:
                continue
            if best is None or ker.dim < best[1].dim:
                best = (a, ker)
        if best is None:
            continue
        a, ker = best
        lines = _kernel_lines(f, ker)
        if lines is None:
            # kernel too large to certify with; still useful as a probe
            for _ in range(3):
                v = f.reduce(np.array([rng.randrange(q) for _ in range(ker.dim)], dtype=np.int64) @ ker.basis)
                if v.any():
                    sub = spin_matrices(f, nonzero, [v], d)
                    if sub.dim < d:
                        return False, sub, None
            continue
        for v in lines:
            sub = spin_matrices(f, nonzero, [v], d)
            if sub.dim < d:
                return False, sub, None
        kert = kernel_basis(f, a.T.copy())
        w = kert.basis[0]
        dual_span = spin_matrices(f, transposed, [w], d)
        if dual_span.dim < d:
            return False, _perp(f, dual_span, d), None
        return True, None, NortonCertificate(a, ker.dim, len(lines), w)
    # exhaustive fallback: every line of the module (tiny modules only)
    if (q**d - 1) // (q - 1) <= _LINE_LIMIT:
        full = Subspace.full(f, d)
        lines = _kernel_lines(f, full)
        for v in lines:
            sub = spin_matrices(f, nonzero, [v], d)
            if sub.dim < d:
                return False, sub, None
        return True, None, NortonCertificate(None, d, len(lines), None)
    raise RuntimeError("MeatAxe failed to locate a singular algebra element")


def composition_series(rep: Representation, seed: int = 0):
    """Increasing chain of invariant subspaces with irreducible factors.

    Returns (chain, factors): chain = [0 = M_0, ..., M_r = M] as Subspaces of
    the ambient module, factors = the irreducible factor representations in
    matching order.  Deterministic for a fixed seed.
    """
    rng = random.Random(seed)

    def series(r: Representation):
        irr, witness, _ = is_irreducible(r, rng)
        if irr:
            return [Subspace.zero(r.field, r.dim), Subspace.full(r.field, r.dim)], [r]
        sub = sub_rep(r, witness, check=False)
        quo = quotient_rep(r, witness)
        chain_s, fac_s = series(sub)
        chain_q, fac_q = series(quo)
        chain = []
        for piece in chain_s:  # subspace of witness-coordinates -> ambient
            vecs = [r.field.reduce(row @ witness.basis) for row in piece.basis]
            chain.append(Subspace.from_vectors(r.field, r.dim, vecs))
        for piece in chain_q[1:]:  # preimage of quotient subspaces
            vecs = list(witness.basis) + [witness.section(row) for row in piece.basis]
            chain.append(Subspace.from_vectors(r.field, r.dim, vecs))
        return chain, fac_s + fac_q

    chain, factors = series(rep)
    dims = [s.dim for s in chain]
    assert dims == sorted(set(dims)), "chain must strictly increase"
    assert sum(fac.dim for fac in factors) == rep.dim
    return chain, factors


# -- iso classes ---------------------------------------------------------------


def _trace_fingerprint(rep: Representation):
    """Basis-conjugation invariant data used only for stable label ordering."""
    f = rep.field
    n = rep.algebra.dim
    tr1 = tuple(int(np.trace(m)) % f.characteristic if f.is_modular else np.trace(m) for m in rep.matrices)
    tr2 = []
    for i in range(n):
        for j in range(i, n):
            t = np.trace(f.matmul(rep.matrices[i], rep.matrices[j]))
            tr2.append(int(t) % f.characteristic if f.is_modular else t)
    return (rep.dim, tr1, tuple(tr2))


class IsoClasses:
    """Registry of pairwise non-isomorphic irreducible representatives."""

    def __init__(self):
        self.reps: list[Representation] = []

    def classify(self, rep: Representation) -> int:
        for idx, r in enumerate(self.reps):
            if is_isomorphic(r, rep):
                return idx
        self.reps.append(rep)
        return len(self.reps) - 1

    def fingerprints(self):
        return [_trace_fingerprint(r) for r in self.reps]


# -- annihilator and socle ------------------------------------------------------


def annihilator(L: LieAlgebra, rep: Representation) -> Subspace:
    """{x in L : rho(x) = 0}; an ideal, and the center when rep is adjoint."""
    d = rep.dim
    m = L.field.zeros(d * d, L.dim)
    for i in range(L.dim):
        m[:, i] = rep.matrices[i].reshape(-1)
    return kernel_basis(L.field, m)


def socle_minimal_ideals(L: LieAlgebra, seed: int = 0) -> list[Subspace]:
    """All minimal ideals = minimal submodules of the adjoint module.

    Minimal submodules isomorphic to an irreducible S are the images of the
    nonzero elements of Hom_L(S, ad); distinct images are collected up to the
    canonical echelon form.  Finite fields only.
    """
    if not L.field.is_modular:
        raise ScaleGuardError("minimal-ideal enumeration needs a finite field")
    if L.dim == 0:
        return []
    ad = adjoint_rep(L)
    _, factors = composition_series(ad, seed)
    classes = IsoClasses()
    for fac in factors:
        classes.classify(fac)
    q = L.field.characteristic
    found: list[Subspace] = []
    for S in classes.reps:
        homs = intertwiner_space(S, ad)  # maps S -> L, flattened dim(L) x dim(S)
        h = homs.dim
        if h == 0:
            continue
        if (q**h - 1) // (q - 1) > _LINE_LIMIT:
            raise ScaleGuardError("too many candidate minimal ideals to enumerate")
        seen = set()
        for coeffs in itertools.product(range(q), repeat=h):
            if all(c == 0 for c in coeffs):
                continue
            T = L.field.reduce(np.array(coeffs, dtype=np.int64) @ homs.basis).reshape(L.dim, S.dim)
            img = Subspace.from_vectors(L.field, L.dim, list(T.T))
            if img.dim == S.dim and img not in seen:
                seen.add(img)
                found.append(img)
    found.sort(key=lambda s: (s.dim, tuple(np.asarray(s.basis, dtype=np.int64).reshape(-1))))
    return found
