"""Chevalley-Eilenberg cochain complex in degrees 0..2.

Cochain bases are lexicographic n-subsets of the algebra basis tensored with
the module basis, in a fixed global order, so every differential matrix is
reproducible.  H^2 uses an internally built C^3 differential.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .lie import LieAlgebra, NotAnIdeal
from .linalg import EchelonBasis, Subspace, kernel_basis, rank, solve
from .reps import Representation, end_dim, invariants, quotient_rep, sub_rep


@dataclass
class CohomologyResult:
    degree: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_f: int
    dim_over_d: int | None = None

    def __post_init__(self):
        assert self.dim_f == self.dim_cocycles - self.dim_coboundaries >= 0


def _subsets(n, k):
    return list(itertools.combinations(range(n), k))


def cochain_dim(L: LieAlgebra, rep: Representation, n: int) -> int:
    from math import comb

    return comb(L.dim, n) * rep.dim


def _insert_sign(k, tail):
    """Sign and position for sorting k into the strictly increasing tail; None on repeat."""
    if k in tail:
        return None, None
    pos = sum(1 for t in tail if t < k)
    return (-1) ** pos, tuple(sorted(tail + (k,)))


def differential(L: LieAlgebra, rep: Representation, n: int) -> np.ndarray:
    """Matrix of d^n : C^n(L, M) -> C^(n+1)(L, M) in the fixed bases.

    (df)(x_0..x_n) = sum_i (-1)^i x_i.f(..x_i^..) +
                     sum_{i<j} (-1)^(i+j) f([x_i,x_j], ..x_i^..x_j^..).
    """
    if n < 0 or n > 2:
        raise ValueError("differential implemented for degrees 0..2")
    f = L.field
    m = rep.dim
    dom = _subsets(L.dim, n)
    cod = _subsets(L.dim, n + 1)
    dom_index = {T: a for a, T in enumerate(dom)}
    mat = f.zeros(len(cod) * m, len(dom) * m)

    def add_block(row_subset_idx, col_subset, block):
        r0 = row_subset_idx * m
        c0 = dom_index[col_subset] * m
        mat[r0 : r0 + m, c0 : c0 + m] = f.reduce(mat[r0 : r0 + m, c0 : c0 + m] + block)

    for u_idx, U in enumerate(cod):
        for i in range(len(U)):
            V = U[:i] + U[i + 1 :]
            add_block(u_idx, V, (-1) ** i * rep.matrices[U[i]])
        for i, j in itertools.combinations(range(len(U)), 2):
            w = L.c[U[i], U[j]]
            V = tuple(x for a, x in enumerate(U) if a not in (i, j))
            sgn_ij = (-1) ** (i + j)
            for k in range(L.dim):
                if w[k] == 0:
                    continue
                sgn, T = _insert_sign(k, V)
                if sgn is None:
                    continue
                add_block(u_idx, T, (sgn_ij * sgn * w[k]) * f.eye(m))
    return mat


def cohomology(L: LieAlgebra, rep: Representation, n: int) -> CohomologyResult:
    """Cocycle/coboundary ranks and dim H^n; dim over D only for irreducible coefficients."""
    f = L.field
    d_n = differential(L, rep, n)
    z = d_n.shape[1] - rank(f, d_n)
    if n == 0:
        b = 0
    else:
        d_prev = differential(L, rep, n - 1)
        if d_n.shape[0] and d_prev.shape[1]:
            assert not f.reduce(d_n @ d_prev).any(), "d o d != 0"
        b = rank(f, d_prev)
    res = CohomologyResult(n, z, b, z - b)
    if n == 0:
        assert res.dim_f == invariants(rep).dim
    return res


def cohomology_over_d(L: LieAlgebra, rep: Representation, n: int, certified_irreducible: bool = False):
    """Attach dim_over_D = dim_F H^n / dim_F End_L(M) when the module is irreducible."""
    res = cohomology(L, rep, n)
    if certified_irreducible:
        e = end_dim(rep)
        assert res.dim_f % e == 0, "End_L(S) must act on H^n"
        res.dim_over_d = res.dim_f // e
    return res


# -- ideals: induced structures on C^1(I, M) ----------------------------------


def _ideal_action_matrices(L: LieAlgebra, ideal: Subspace) -> list[np.ndarray]:
    """L acting on the ideal (sub-adjoint), in the ideal's basis coordinates."""
    f = L.field
    mats = []
    for i in range(L.dim):
        m = f.zeros(ideal.dim, ideal.dim)
        for a in range(ideal.dim):
            w = L.bracket(L.basis_vector(i), ideal.basis[a])
            m[:, a] = ideal.coords(w)
        mats.append(m)
    return mats


def cochain1_action(L: LieAlgebra, ideal: Subspace, rep: Representation) -> Representation:
    """L-module structure on C^1(I, M) by (x.f)(y) = x.f(y) - f([x,y]).

    Vectors use the cochain layout of `differential`: index = (I-basis) * dim M
    + (M-basis), so cocycle and coboundary spaces of the restricted complex
    are honest subspaces of this module.
    """
    f = L.field
    iad = _ideal_action_matrices(L, ideal)
    eye_i, eye_m = f.eye(ideal.dim), f.eye(rep.dim)
    mats = [
        f.reduce(np.kron(eye_i, rep.matrices[i]) - np.kron(iad[i].T, eye_m))
        for i in range(L.dim)
    ]
    return Representation(L, mats, check=False)


def h1_of_ideal_with_action(L: LieAlgebra, ideal: Subspace, rep: Representation):
    """(L-module structure on H^1(I, M), dim of its invariants).

    The outer action on 1-cochains is (x.f)(y) = x.f(y) - f([x,y]); it
    preserves cocycles and coboundaries (asserted), the ideal itself acts
    trivially on H^1 (asserted), and the induced module on Z^1/B^1 is
    returned as an honest Representation of L.
    """
    if not L.is_ideal(ideal):
        raise NotAnIdeal("outer action needs an ideal")
    f = L.field
    cochain_action = cochain1_action(L, ideal, rep)
    sub_L, rep_I = _restrict_rep_to_ideal(L, ideal, rep)
    d1 = differential(sub_L, rep_I, 1)
    d0 = differential(sub_L, rep_I, 0)
    zspace = kernel_basis(f, d1)
    bspace = Subspace.from_vectors(f, d0.shape[0], list(d0.T))
    for m in cochain_action.matrices:
        for row in zspace.basis:
            assert zspace.contains(f.matmul(m, row)), "action must preserve cocycles"
        for row in bspace.basis:
            assert bspace.contains(f.matmul(m, row)), "action must preserve coboundaries"
    z_rep = sub_rep(cochain_action, zspace, check=False)
    b_in_z = Subspace.from_vectors(f, zspace.dim, [zspace.coords(row) for row in bspace.basis])
    h_rep = quotient_rep(z_rep, b_in_z)
    for a in range(ideal.dim):
        assert not h_rep.act(ideal.basis[a]).any(), "ideal must act trivially on H^1"
    return h_rep, invariants(h_rep).dim


def _restrict_rep_to_ideal(L: LieAlgebra, ideal: Subspace, rep: Representation):
    """Ideal as a standalone algebra plus the module restricted to it."""
    from .lie import subalgebra_on

    sub_L = subalgebra_on(L, ideal)
    mats = [rep.act(ideal.basis[a]) for a in range(ideal.dim)]
    return sub_L, Representation(sub_L, mats, check=False)


# -- extension cocycles and the five-term sequence ------------------------------


def extension_cocycle(L: LieAlgebra, ideal: Subspace):
    """The 2-cocycle of 0 -> I -> L -> L/I -> 0 for the canonical linear section.

    Returns (quotient algebra Q, quotient map, omega) with omega[(a,b)] an
    I-coordinate vector for each a < b in the Q-basis.
    """
    from .lie import quotient_algebra

    Q, qm = quotient_algebra(L, ideal)
    omega = {}
    for a in range(Q.dim):
        for b in range(a + 1, Q.dim):
            va, vb = qm.lift(Q.basis_vector(a)), qm.lift(Q.basis_vector(b))
            w = L.field.reduce(L.bracket(va, vb) - qm.lift(Q.c[a, b]))
            omega[(a, b)] = ideal.coords(w)
    return Q, qm, omega


def _cochain_vector_from_pairs(Q: LieAlgebra, mdim: int, omega: dict) -> np.ndarray:
    f = Q.field
    pairs = _subsets(Q.dim, 2)
    vec = f.zeros(len(pairs) * mdim)
    for idx, (a, b) in enumerate(pairs):
        vec[idx * mdim : (idx + 1) * mdim] = omega[(a, b)]
    return vec


@dataclass
class FiveTermReport:
    """Exactness bookkeeping for 0 -> H1(L/I, M) -> H1(L, M) -> Hom_L(I/[I,I], M) -> H2(L/I, M)."""

    dims: dict
    inflation_injective: bool
    exact_at_h1: bool
    exact_at_hom: bool

    @property
    def exact(self):
        return self.inflation_injective and self.exact_at_h1 and self.exact_at_hom


class _ClassSpace:
    """Coordinates on Z/B for explicit maps between cohomology groups."""

    def __init__(self, field, z: Subspace, b_vectors):
        self.field = field
        self.z = z
        self.b_in_z = Subspace.from_vectors(field, z.dim, [z.coords(v) for v in b_vectors])
        self.dim = z.dim - self.b_in_z.dim

    def coords_of_cocycle(self, v) -> np.ndarray:
        return self.b_in_z.quotient_coords(self.z.coords(v))

    def representatives(self):
        """One cocycle per class-basis vector (canonical complement lift)."""
        reps = []
        for a in range(self.dim):
            unit = self.field.zeros(self.dim)
            unit[a] = 1
            reps.append(self.z.embed(self.b_in_z.section(unit)))
        return reps


def five_term_exactness(L: LieAlgebra, ideal: Subspace, rep: Representation) -> FiveTermReport:
    """Verify the five-term exact sequence with coefficients killed by the ideal.

    Requires the ideal to act trivially on the module; the three interior
    nodes are checked by explicit inflation / restriction / transgression
    matrices and rank bookkeeping.
    """
    f = L.field
    for a in range(ideal.dim):
        if rep.act(ideal.basis[a]).any():
            raise ValueError("five-term specialization needs the ideal to act trivially")
    Q, qm, omega = extension_cocycle(L, ideal)
    qrep = Representation(Q, [rep.act(qm.lift(Q.basis_vector(a))) for a in range(Q.dim)])

    h1q = _ClassSpace(f, kernel_basis(f, differential(Q, qrep, 1)), list(differential(Q, qrep, 0).T))
    h1l = _ClassSpace(f, kernel_basis(f, differential(L, rep, 1)), list(differential(L, rep, 0).T))
    h2q = _ClassSpace(f, kernel_basis(f, differential(Q, qrep, 2)), list(differential(Q, qrep, 1).T))

    # node 3: Hom_L(I/[I,I], M) = L-equivariant maps inside C^1(I, M)
    hom_node = invariants(cochain1_action(L, ideal, rep))

    m = rep.dim

    def infl_of(cocycle_on_q):
        """Precompose a 1-cochain on Q with the projection."""
        out = f.zeros(L.dim * m)
        fq = cocycle_on_q.reshape(Q.dim, m)
        for x in range(L.dim):
            out[x * m : (x + 1) * m] = f.reduce(qm.proj[:, x] @ fq)
        return out

    def restr_of(cocycle_on_l):
        fl = cocycle_on_l.reshape(L.dim, m)
        rows = [f.reduce(ideal.basis[a] @ fl) for a in range(ideal.dim)]
        return np.concatenate(rows) if rows else f.zeros(0)

    def transgress(hom_vec):
        """f -> class of f o omega in H^2(Q, M)."""
        fmat = hom_vec.reshape(ideal.dim, m)
        tg = {}
        for a in range(Q.dim):
            for b in range(a + 1, Q.dim):
                tg[(a, b)] = f.reduce(omega[(a, b)] @ fmat)
        return _cochain_vector_from_pairs(Q, m, tg)

    # matrices on class coordinates
    infl_mat = f.zeros(h1l.dim, h1q.dim)
    for a, z in enumerate(h1q.representatives()):
        infl_mat[:, a] = h1l.coords_of_cocycle(infl_of(z))
    restr_mat = f.zeros(hom_node.dim, h1l.dim)
    for a, z in enumerate(h1l.representatives()):
        # restriction of a cocycle lands in the equivariant node (ideal acts trivially)
        restr_mat[:, a] = hom_node.coords(restr_of(z))
    tg_mat = f.zeros(h2q.dim, hom_node.dim)
    for a in range(hom_node.dim):
        tg_mat[:, a] = h2q.coords_of_cocycle(transgress(hom_node.basis[a]))

    inflation_injective = kernel_basis(f, infl_mat).dim == 0
    im_infl = Subspace.from_vectors(f, h1l.dim, list(infl_mat.T))
    ker_restr = kernel_basis(f, restr_mat)
    im_restr = Subspace.from_vectors(f, hom_node.dim, list(restr_mat.T))
    ker_tg = kernel_basis(f, tg_mat)

    return FiveTermReport(
        dims={
            "h1_quotient": h1q.dim,
            "h1_total": h1l.dim,
            "hom_node": hom_node.dim,
            "h2_quotient": h2q.dim,
            "rank_inflation": im_infl.dim,
            "rank_restriction": im_restr.dim,
        },
        inflation_injective=inflation_injective,
        exact_at_h1=im_infl == ker_restr,
        exact_at_hom=im_restr == ker_tg,
    )


def h1_isomorphism_no_invariants(L: LieAlgebra, ideal: Subspace, rep: Representation):
    """The degenerate five-term case M^I = 0: H^1(L,M) -> H^1(I,M)^L is bijective.

    Returns (dim H^1(L, M), dim H^1(I, M)^L, restriction bijective?).
    """
    f = L.field
    sub_L, rep_I = _restrict_rep_to_ideal(L, ideal, rep)
    if invariants(rep_I).dim != 0:
        raise ValueError("this specialization needs M^I = 0")
    h_rep, inv_dim = h1_of_ideal_with_action(L, ideal, rep)
    h1l = _ClassSpace(f, kernel_basis(f, differential(L, rep, 1)), list(differential(L, rep, 0).T))
    # restriction into H^1(I, M) class coordinates, then into the invariant subspace
    zi = kernel_basis(f, differential(sub_L, rep_I, 1))
    bi = list(differential(sub_L, rep_I, 0).T)
    h1i = _ClassSpace(f, zi, bi)
    inv_sub = invariants(h_rep)
    m = rep.dim
    restr_mat = f.zeros(inv_sub.dim, h1l.dim)
    for a, z in enumerate(h1l.representatives()):
        fl = z.reshape(L.dim, m)
        rows = [f.reduce(ideal.basis[b] @ fl) for b in range(ideal.dim)]
        cls = h1i.coords_of_cocycle(np.concatenate(rows))
        restr_mat[:, a] = inv_sub.coords(cls)
    bijective = h1l.dim == inv_dim and rank(f, restr_mat) == h1l.dim
    return h1l.dim, inv_dim, bijective


def is_coboundary(L: LieAlgebra, rep: Representation, two_cochain: np.ndarray):
    """Solve d^1 phi = omega; the solving 1-cochain or None."""
    d1 = differential(L, rep, 1)
    return solve(L.field, d1, two_cochain)
