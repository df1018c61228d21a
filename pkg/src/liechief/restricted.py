"""Restricted structure: [p]-maps, u(L), restricted cohomology, blocks.

Degree-one restricted cohomology is computed as restricted derivations
modulo inner derivations (the Hochschild description), so the truncated
enveloping algebra is only ever needed to enumerate the irreducible
restricted modules, harvested as composition factors of its regular module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .chief import chief_series, quotient_module_by_annihilator, split_multiplicity
from .cohomology import CohomologyResult, cohomology
from .lie import LieAlgebra, derived_subalgebra, p_power, quotient_algebra
from .linalg import Subspace, kernel_basis, rank
from .reps import (
    IsoClasses,
    MAX_MODULE_DIM,
    Representation,
    ScaleGuardError,
    _trace_fingerprint,
    composition_series,
    end_dim,
    hom_rep,
    is_isomorphic,
    trivial_rep,
)

U_DIM_GUARD = 4096


class PMapViolation(ValueError):
    def __init__(self, axiom, detail):
        super().__init__(f"[p]-map axiom '{axiom}' fails: {detail}")
        self.axiom = axiom


class NotRestricted(ValueError):
    pass


def _mat_pow(field, m, k):
    out = field.eye(m.shape[0])
    for _ in range(k):
        out = field.matmul(out, m)
    return out


def verify_pmap(L: LieAlgebra, rng=None) -> dict:
    """Exact verification of the restrictedness axioms.

    ad(x^[p]) = ad(x)^p is checked on the basis; the sum formula and
    p-homogeneity are checked through the evaluator on all basis pairs and
    on random elements (the evaluator realizes the canonical Jacobson
    extension of the basis data, so these checks pin its consistency).
    """
    if L.pmap is None or not L.field.is_modular:
        raise PMapViolation("presence", "no [p]-map / characteristic zero")
    f, p = L.field, L.field.characteristic
    rng = rng or random.Random(0)
    for i in range(L.dim):
        if (L.ad(L.pmap[i]) != _mat_pow(f, L.ad_basis[i], p)).any():
            raise PMapViolation("ad-power", f"basis element {i}")
    checked_pairs = 0
    for i, j in itertools.combinations(range(L.dim), 2):
        x = f.reduce(L.basis_vector(i) + L.basis_vector(j))
        if (L.ad(p_power(L, x)) != _mat_pow(f, L.ad(x), p)).any():
            raise PMapViolation("sum-formula", f"basis pair ({i},{j})")
        checked_pairs += 1
    random_checks = 0
    for _ in range(5):
        x = np.array([rng.randrange(p) for _ in range(L.dim)], dtype=np.int64)
        lam = rng.randrange(1, p)
        lhs = p_power(L, f.reduce(lam * x))
        rhs = f.reduce(pow(lam, p, p) * p_power(L, x))
        if (lhs != rhs).any():
            raise PMapViolation("p-homogeneity", f"lambda={lam}, x={x.tolist()}")
        if (L.ad(p_power(L, x)) != _mat_pow(f, L.ad(x), p)).any():
            raise PMapViolation("sum-formula", f"random x={x.tolist()}")
        random_checks += 1
    return {"basis": L.dim, "pairs": checked_pairs, "random": random_checks}


def p_image_mod_derived(L: LieAlgebra) -> int:
    """dim of the image of x -> x^[p] inside L/[L,L].

    The p-map is p-semilinear modulo [L,L] and the base field is prime, so
    the image span is generated by the basis p-powers.
    """
    if L.pmap is None:
        raise NotRestricted("needs a [p]-map")
    der = derived_subalgebra(L)
    vecs = [der.quotient_coords(L.pmap[i]) for i in range(L.dim)]
    return Subspace.from_vectors(L.field, L.dim - der.dim, vecs).dim


# -- restricted H^1 -----------------------------------------------------------


def assert_restricted(rep: Representation):
    if not rep.is_restricted():
        raise NotRestricted("module does not satisfy rho(x^[p]) = rho(x)^p")


def restricted_h1(L: LieAlgebra, rep: Representation) -> CohomologyResult:
    """H^1_* = (restricted derivations L -> M) / (inner derivations).

    A linear d: L -> M is a restricted cocycle iff d([x,y]) = x.d(y) - y.d(x)
    on basis pairs and d(x^[p]) = rho(x)^(p-1) d(x) on basis elements; the
    basis checks suffice because the restrictedness defect of a derivation is
    p-semilinear.
    """
    if L.pmap is None:
        raise NotRestricted("algebra has no [p]-map")
    assert_restricted(rep)
    f, p = L.field, L.field.characteristic
    n, m = L.dim, rep.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            blk = f.zeros(m, m * n)  # unknown D flattened row-major (m x n)
            for col in range(n):
                if L.c[i, j][col] != 0:
                    for r in range(m):
                        blk[r, r * n + col] = blk[r, r * n + col] + L.c[i, j][col]
            blk2 = f.zeros(m, m * n)
            for r in range(m):
                for s in range(m):
                    blk2[r, s * n + j] = blk2[r, s * n + j] - rep.matrices[i][r, s]
                    blk2[r, s * n + i] = blk2[r, s * n + i] + rep.matrices[j][r, s]
            rows.append(f.reduce(blk + blk2))
    for i in range(n):
        blk = f.zeros(m, m * n)
        for col in range(n):
            if L.pmap[i][col] != 0:
                for r in range(m):
                    blk[r, r * n + col] = blk[r, r * n + col] + L.pmap[i][col]
        mp = _mat_pow(f, rep.matrices[i], p - 1)
        for r in range(m):
            for s in range(m):
                blk[r, s * n + i] = blk[r, s * n + i] - mp[r, s]
        rows.append(f.reduce(blk))
    system = np.concatenate(rows, axis=0) if rows else f.zeros(0, m * n)
    z = kernel_basis(f, system).dim
    inner = f.zeros(m * n, m)
    for i in range(n):
        for r in range(m):
            inner[r * n + i, :] = rep.matrices[i][r, :]
    b = rank(f, inner)
    return CohomologyResult(1, z, b, z - b)


def six_term_consistency(L: LieAlgebra, rep: Representation):
    """dim H^1_*(L,S) = dim H^1(L,S) for nontrivial restricted irreducible S."""
    r = restricted_h1(L, rep).dim_f
    o = cohomology(L, rep, 1).dim_f
    return r, o, r == o


# -- u(L) ----------------------------------------------------------------------


class UAlg:
    """Restricted enveloping algebra on the PBW monomial basis e^a, a in [0,p)^n.

    Left multiplication by each generator is straightened recursively
    (commutation moves, then p-truncation by x^p = x^[p]) and memoized.
    """

    def __init__(self, L: LieAlgebra):
        if L.pmap is None:
            raise NotRestricted("u(L) needs a restricted algebra")
        p = L.field.characteristic
        if p**L.dim > U_DIM_GUARD:
            raise ScaleGuardError(f"dim u(L) = {p}^{L.dim} exceeds guard {U_DIM_GUARD}")
        self.base = L
        self.p = p
        self.dim = p**L.dim
        self.monomials = list(itertools.product(range(p), repeat=L.dim))
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self._cache: dict = {}
        f = L.field
        self.generator_actions = []
        for g in range(L.dim):
            mat = f.zeros(self.dim, self.dim)
            for col, mono in enumerate(self.monomials):
                for m2, cf in self._mult_gen(g, mono).items():
                    mat[self.index[m2], col] = f.scalar(mat[self.index[m2], col] + cf)
            self.generator_actions.append(mat)

    def _mult_gen(self, g: int, mono: tuple) -> dict:
        """Expansion of e_g * e^mono in the monomial basis."""
        key = (g, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        L, p = self.base, self.p
        j = next((i for i in range(g) if mono[i] > 0), None)
        out: dict = {}

        def add(m, c):
            c = (out.get(m, 0) + c) % p
            if c:
                out[m] = c
            elif m in out:
                del out[m]

        if j is None:
            lifted = list(mono)
            lifted[g] += 1
            if lifted[g] < p:
                add(tuple(lifted), 1)
            else:
                lifted[g] = 0  # e_g^p acts as e_g^[p]
                tail = tuple(lifted)
                for k in range(L.dim):
                    cf = int(L.pmap[g][k])
                    if cf:
                        for m2, c2 in self._mult_gen(k, tail).items():
                            add(m2, cf * c2)
        else:
            dropped = list(mono)
            dropped[j] -= 1
            tail = tuple(dropped)
            for m2, c2 in self._mult_gen(g, tail).items():  # e_g * tail
                for m3, c3 in self._mult_gen(j, m2).items():  # then e_j in front
                    add(m3, c2 * c3)
            for k in range(L.dim):
                cf = int(L.c[g, j][k])
                if cf:
                    for m2, c2 in self._mult_gen(k, tail).items():
                        add(m2, cf * c2)
        self._cache[key] = out
        return out

    def regular_rep(self) -> Representation:
        """u(L) as a restricted L-module by left multiplication."""
        rep = Representation(self.base, self.generator_actions, check=True)
        assert_restricted(rep)
        return rep

    def spot_check_associativity(self, rng, trials: int = 10):
        """(e_i e_j) m == e_i (e_j m) on random basis triples."""
        f = self.base.field
        for _ in range(trials):
            i, j = rng.randrange(self.base.dim), rng.randrange(self.base.dim)
            mono = self.monomials[rng.randrange(self.dim)]
            v = f.zeros(self.dim)
            v[self.index[mono]] = 1
            lhs = f.matmul(self.generator_actions[i], f.matmul(self.generator_actions[j], v))
            ej_mono = self._mult_gen(j, mono)
            rhs = f.zeros(self.dim)
            for m2, c2 in ej_mono.items():
                for m3, c3 in self._mult_gen(i, m2).items():
                    rhs[self.index[m3]] = f.scalar(rhs[self.index[m3]] + c2 * c3)
            if (lhs != rhs).any():
                raise AssertionError("associativity spot check failed")
        return trials


def u_algebra(L: LieAlgebra) -> UAlg:
    return UAlg(L)


def restricted_irreducibles(L: LieAlgebra, seed: int = 0) -> list[Representation]:
    """All irreducible restricted modules, via the regular module of u(L).

    Every irreducible is a quotient of u(L), hence occurs among the
    composition factors of the regular representation.  The list is sorted
    by a basis-invariant fingerprint so it is stable across seeds.
    """
    cache = getattr(L, "_irr_cache", None)
    if cache is None:
        cache = L._irr_cache = {}
    if seed in cache:
        return cache[seed]
    p = L.field.characteristic
    if p**L.dim > MAX_MODULE_DIM:
        raise ScaleGuardError(f"regular module dim {p}^{L.dim} exceeds MeatAxe guard {MAX_MODULE_DIM}")
    ualg = u_algebra(L)
    reg = ualg.regular_rep()
    _, factors = composition_series(reg, seed)
    classes = IsoClasses()
    for fac in factors:
        classes.classify(fac)
    reps = sorted(classes.reps, key=_trace_fingerprint)
    for r in reps:
        assert_restricted(r)
    cache[seed] = reps
    return reps


def regular_module_multiplicities(L: LieAlgebra, seed: int = 0):
    """(irreducibles, multiplicities) of the u(L) regular module's factors."""
    ualg = u_algebra(L)
    _, factors = composition_series(ualg.regular_rep(), seed)
    classes = IsoClasses()
    counts: dict[int, int] = {}
    for fac in factors:
        idx = classes.classify(fac)
        counts[idx] = counts.get(idx, 0) + 1
    order = sorted(range(len(classes.reps)), key=lambda i: _trace_fingerprint(classes.reps[i]))
    return [classes.reps[i] for i in order], [counts[i] for i in order]


def ext1_dim(L: LieAlgebra, s_rep: Representation, t_rep: Representation) -> int:
    """dim Ext^1_{u(L)}(S, T) = dim H^1_*(L, Hom(S, T))."""
    h = hom_rep(s_rep, t_rep)
    assert_restricted(h)
    return restricted_h1(L, h).dim_f


@dataclass
class BlockPartition:
    irreducibles: list[Representation]
    components: list[tuple[int, ...]]
    principal_index: int

    def component_of(self, idx: int) -> int:
        for c, comp in enumerate(self.components):
            if idx in comp:
                return c
        raise KeyError(idx)

    def in_principal_block(self, idx: int) -> bool:
        return self.component_of(idx) == self.principal_index


def trivial_index(reps: list[Representation]) -> int:
    for i, r in enumerate(reps):
        if r.dim == 1 and r.is_trivial():
            return i
    raise ValueError("trivial module missing from the irreducible list")


def blocks(L: LieAlgebra, seed: int = 0) -> BlockPartition:
    """Connected components of the Ext^1 graph on the restricted irreducibles."""
    cache = getattr(L, "_block_cache", None)
    if cache is None:
        cache = L._block_cache = {}
    if seed in cache:
        return cache[seed]
    reps = restricted_irreducibles(L, seed)
    k = len(reps)
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(k):
        for j in range(k):
            if i != j and ext1_dim(L, reps[i], reps[j]) > 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    comps: dict[int, list[int]] = {}
    for i in range(k):
        comps.setdefault(find(i), []).append(i)
    components = sorted(tuple(sorted(v)) for v in comps.values())
    triv = trivial_index(reps)
    principal = next(c for c, comp in enumerate(components) if triv in comp)
    part = BlockPartition(reps, components, principal)
    cache[seed] = part
    return part


def second_loewy_multiplicity(L: LieAlgebra, s_rep: Representation) -> int:
    """Multiplicity of S in the second Loewy layer of the projective cover of F.

    dim End_L(S) * multiplicity = dim Ext^1_{u(L)}(F, S) = dim H^1_*(L, S);
    the division is exact or the computation is wrong.
    """
    h = restricted_h1(L, s_rep).dim_f
    e = end_dim(s_rep)
    if h % e != 0:
        raise ArithmeticError("End_L(S) must divide dim H^1_*(L,S)")
    return h // e


def find_nonvanishing_module(L: LieAlgebra, seed: int = 0):
    """First restricted irreducible S with H^1(L/ann, S) != 0, or None.

    None means the restricted search space is exhausted, not a refutation
    for non-solvable L (the theorem guarantees an ordinary irreducible).
    """
    for s_rep in restricted_irreducibles(L, seed):
        _, Lq, s_on_q = quotient_module_by_annihilator(L, s_rep)
        h = cohomology(Lq, s_on_q, 1).dim_f
        if h:
            return s_rep, h
    return None


# -- theorem suite -------------------------------------------------------------


def restricted_h1_of_quotient(L: LieAlgebra, s_rep: Representation) -> int:
    """dim H^1_*(L/ann_L(S), S); ann is [p]-closed because S is restricted."""
    ann, Lq, s_on_q = quotient_module_by_annihilator(L, s_rep)
    if Lq.pmap is None:
        raise NotRestricted("annihilator of a restricted module must be [p]-closed")
    return restricted_h1(Lq, s_on_q).dim_f


def loewy_bound_entries(L: LieAlgebra, seed: int = 0, names=None):
    """Second-layer multiplicity >= split multiplicity, per nontrivial irreducible."""
    series = chief_series(L, seed)
    out = []
    reps = restricted_irreducibles(L, seed)
    for i, s_rep in enumerate(reps):
        if i == trivial_index(reps):
            continue
        second = second_loewy_multiplicity(L, s_rep)
        split = split_multiplicity(series, s_rep)
        out.append(
            {
                "name": names(s_rep) if names else f"S{i}",
                "second_layer": second,
                "split": split,
                "holds": second >= split,
                "strict": second > split,
            }
        )
    return out


def llpim_entries(L: LieAlgebra, seed: int = 0, names=None, solvable: bool | None = None):
    """Second-layer multiplicities against split counts (Gaschuetz-style).

    The trivial case second(F) = [L:F]_split - dim <L^[p]> / ([L,L] cap ...)
    holds for every restricted algebra; the S != F equality needs solvable L.
    """
    from .lie import is_solvable

    if solvable is None:
        solvable = is_solvable(L)
    series = chief_series(L, seed)
    triv = trivial_rep(L)
    out = []
    second_f = second_loewy_multiplicity(L, triv)
    expected = split_multiplicity(series, triv) - p_image_mod_derived(L)
    out.append(
        {
            "name": names(triv) if names else "F",
            "trivial": True,
            "second_layer": second_f,
            "expected": expected,
            "holds": second_f == expected,
        }
    )
    if solvable:
        reps = restricted_irreducibles(L, seed)
        for i, s_rep in enumerate(reps):
            if i == trivial_index(reps):
                continue
            second = second_loewy_multiplicity(L, s_rep)
            split = split_multiplicity(series, s_rep)
            out.append(
                {
                    "name": names(s_rep) if names else f"S{i}",
                    "trivial": False,
                    "second_layer": second,
                    "expected": split,
                    "holds": second == split,
                }
            )
    return out


def chief_factors_in_principal_block(L: LieAlgebra, seed: int = 0):
    """Every abelian chief factor lies in the principal block (checked by label)."""
    series = chief_series(L, seed)
    abelian = [rec for rec in series.factors if rec.is_abelian]
    if not abelian:
        return {"abelian_factors": 0, "all_in_principal": True, "details": []}
    part = blocks(L, seed)
    details = []
    for rec in abelian:
        idx = next(
            (i for i, r in enumerate(part.irreducibles) if is_isomorphic(r, rec.factor_module)),
            None,
        )
        ok = idx is not None and part.in_principal_block(idx)
        details.append({"step": rec.step, "irreducible": idx, "in_principal": ok})
    return {
        "abelian_factors": len(abelian),
        "all_in_principal": all(d["in_principal"] for d in details),
        "details": details,
    }


def pim_conditions(L: LieAlgebra, seed: int = 0, names=None):
    """Conditions (ii)-(ix) of the solvability characterization, computed.

    Returns {condition: {'holds': bool, 'witnesses': [...]}} over the
    restricted irreducibles (nontrivial ones; principal-block variants
    restrict the scan to that block).
    """
    series = chief_series(L, seed)
    reps = restricted_irreducibles(L, seed)
    triv = trivial_index(reps)
    part = blocks(L, seed)
    name = names if names else (lambda r: f"S{r.dim}")
    conds: dict[str, dict] = {}

    def record(cond, s_rep, ok, data):
        entry = conds.setdefault(cond, {"holds": True, "witnesses": []})
        if not ok:
            entry["holds"] = False
            entry["witnesses"].append({"S": name(s_rep), **data})

    for i, s_rep in enumerate(reps):
        if i == triv:
            continue
        in_principal = part.in_principal_block(i)
        e = end_dim(s_rep)
        _, Lq, s_on_q = quotient_module_by_annihilator(L, s_rep)
        h1_quot = cohomology(Lq, s_on_q, 1).dim_f
        h1_full = cohomology(L, s_rep, 1).dim_f
        h1r_quot = restricted_h1_of_quotient(L, s_rep)
        h1r_full = restricted_h1(L, s_rep).dim_f
        split = split_multiplicity(series, s_rep)
        second = second_loewy_multiplicity(L, s_rep)
        record("ii", s_rep, h1_quot == 0, {"h1_quotient": h1_quot})
        record("iii", s_rep, h1_full == e * split, {"h1": h1_full, "end": e, "split": split})
        record("iv", s_rep, h1r_quot == 0, {"h1r_quotient": h1r_quot})
        record("vi", s_rep, h1r_full == e * split, {"h1r": h1r_full, "end": e, "split": split})
        record("viii", s_rep, second == split, {"second": second, "split": split})
        if in_principal:
            record("v", s_rep, h1r_quot == 0, {"h1r_quotient": h1r_quot})
            record("vii", s_rep, h1r_full == e * split, {"h1r": h1r_full, "end": e, "split": split})
            record("ix", s_rep, second == split, {"second": second, "split": split})
    for cond in ("ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"):
        conds.setdefault(cond, {"holds": True, "witnesses": []})
    return conds


def splitsolv_entries(L: LieAlgebra, seed: int = 0):
    """Solvable L: nontrivial split chief factors appear in the second Loewy layer."""
    series = chief_series(L, seed)
    out = []
    for rec in series.factors:
        if not (rec.is_abelian and rec.is_split):
            continue
        if rec.factor_module.is_trivial():
            continue
        second = second_loewy_multiplicity(L, rec.factor_module)
        out.append({"step": rec.step, "second_layer": second, "holds": second >= 1})
    return out
