"""Built-in example algebras, their declared modules and induction triples.

The two 7- and 14-dimensional characteristic-three entries are generated
programmatically: psl3 as sl3 modulo its centre (the identity matrix is
traceless in characteristic three), and its derivation algebra from the
linear derivation solver, carrying the p-th-matrix-power [p]-map.
"""

from __future__ import annotations

import numpy as np

from .fileio import LoadedSpec
from .lie import (
    LieAlgebra,
    build_lie_algebra,
    derivation_algebra,
    direct_sum,
    lie_from_matrices,
    quotient_algebra,
    subalgebra_on,
)
from .linalg import GF, QQ, Subspace
from .reps import Representation, adjoint_rep, is_isomorphic, trivial_rep


def _l2(p: int) -> LieAlgebra:
    return build_lie_algebra(
        GF(p), 2, {(0, 1): [0, 1]}, labels=["t", "e"], pmap={0: [1, 0], 1: [0, 0]}
    )


def _sl2_table():
    # basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f
    return {(0, 1): [0, 0, 1], (2, 0): [2, 0, 0], (2, 1): [0, -2, 0]}


def _sl3_gf3() -> LieAlgebra:
    f = GF(3)

    def unit(r, c):
        m = f.zeros(3, 3)
        m[r, c] = 1
        return m

    mats = [
        unit(0, 1),
        unit(0, 2),
        unit(1, 0),
        unit(1, 2),
        unit(2, 0),
        unit(2, 1),
        f.reduce(unit(0, 0) - unit(1, 1)),
        f.reduce(unit(1, 1) - unit(2, 2)),
    ]
    labels = ["e12", "e13", "e21", "e23", "e31", "e32", "h1", "h2"]
    return lie_from_matrices(f, mats, labels=labels, pmap_from_power=3)


def _psl3_gf3() -> LieAlgebra:
    sl3 = _sl3_gf3()
    centre = sl3.center()
    assert centre.dim == 1  # spanned by the identity matrix in char 3
    quotient, _ = quotient_algebra(sl3, centre)
    return quotient


def _sl2_q_modules(L: LieAlgebra) -> dict[str, Representation]:
    f = QQ
    v0 = trivial_rep(L)
    v2 = adjoint_rep(L)
    # degree-4 forms in (x, y): e = x d/dy, f = y d/dx, h = x d/dx - y d/dy
    e = f.zeros(5, 5)
    fm = f.zeros(5, 5)
    h = f.zeros(5, 5)
    for k in range(5):
        if k > 0:
            e[k - 1, k] = k
        if k < 4:
            fm[k + 1, k] = 4 - k
        h[k, k] = 4 - 2 * k
    v4 = Representation(L, [e, fm, h])
    return {"V(0)": v0, "V(2)": v2, "V(4)": v4}


def _build_catalog() -> dict[str, LoadedSpec]:
    entries: dict[str, LoadedSpec] = {}

    def add(name, algebra, modules=None, chain=None, induction=None, note=""):
        entries[name] = LoadedSpec(
            name=name,
            algebra=algebra,
            modules=modules or {},
            chief_chain=chain,
            induction=induction or [],
            note=note,
        )

    f2, f3, f5 = GF(2), GF(3), GF(5)
    add("abelian_2_2", build_lie_algebra(f2, 2, {}, labels=["a", "b"], pmap={0: [0, 0], 1: [0, 0]}))
    add("abelian_2_3", build_lie_algebra(f3, 2, {}, labels=["a", "b"], pmap={0: [0, 0], 1: [0, 0]}))
    add("torus1_gf5", build_lie_algebra(f5, 1, {}, labels=["x"], pmap={0: [1]}),
        note="one-dimensional torus: x^[p] = x")

    for p in (3, 5):
        l2 = _l2(p)
        e_line = Subspace.from_vectors(GF(p), 2, [np.array([0, 1])])
        seed = trivial_rep(subalgebra_on(l2, e_line))
        add(f"l2_gf{p}", l2, induction=[(e_line, seed)],
            note="non-abelian two-dimensional algebra, t^[p] = t, e^[p] = 0")

    heis = build_lie_algebra(
        f3, 3, {(0, 1): [0, 0, 1]}, labels=["x", "y", "z"],
        pmap={0: [0, 0, 0], 1: [0, 0, 0], 2: [0, 0, 0]},
    )
    heis_ideal = Subspace.from_vectors(f3, 3, [np.array([0, 1, 0]), np.array([0, 0, 1])])
    add("heisenberg_gf3", heis,
        induction=[(heis_ideal, trivial_rep(subalgebra_on(heis, heis_ideal)))],
        note="Heisenberg algebra with the zero [p]-map")

    add("sl2_gf5", build_lie_algebra(
        f5, 3, _sl2_table(), labels=["e", "f", "h"],
        pmap={0: [0, 0, 0], 1: [0, 0, 0], 2: [0, 0, 1]},
    ))

    sl2q = build_lie_algebra(QQ, 3, _sl2_table(), labels=["e", "f", "h"])
    add("sl2_q", sl2q, modules=_sl2_q_modules(sl2q), chain=[Subspace.full(QQ, 3)])

    b2q = build_lie_algebra(QQ, 2, {(0, 1): [0, 1]}, labels=["t", "e"])
    s1 = Representation(b2q, [QQ.mat([[1]]), QQ.mat([[0]])])
    add("borel2_q", b2q, modules={"S1": s1},
        chain=[Subspace.from_vectors(QQ, 2, [np.array([0, 1], dtype=object)]), Subspace.full(QQ, 2)])

    psl3 = _psl3_gf3()
    add("psl3_gf3", psl3, note="sl3 over GF(3) modulo its one-dimensional centre")
    der = derivation_algebra(psl3)
    add("der_psl3_gf3", der, note="derivation algebra of psl3 over GF(3), dim 14")

    l2xu = direct_sum(_l2(5), build_lie_algebra(f5, 1, {}, labels=["u"], pmap={0: [0]}))
    l2_part = Subspace.from_vectors(f5, 3, [np.array([1, 0, 0]), np.array([0, 1, 0])])
    sub = subalgebra_on(l2xu, l2_part)
    f1_seed = Representation(sub, [f5.mat([[1]]), f5.mat([[0]])])
    add("l2xu_gf5", l2xu, induction=[(l2_part, f1_seed)],
        note="l2 times a central u with u^[p] = 0; induction seed is the weight-one character")

    return entries


_CATALOG: dict[str, LoadedSpec] | None = None


def catalog() -> dict[str, LoadedSpec]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return _CATALOG


def catalog_names() -> list[str]:
    return sorted(catalog())


def get(name: str) -> LoadedSpec:
    entries = catalog()
    if name not in entries:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {', '.join(sorted(entries))}")
    return entries[name]


# -- canonical display names for irreducible modules ---------------------------


class ModuleNamer:
    """Stable display names for irreducible modules of one algebra.

    A family of pairwise distinct dimensions is named L(dim-1); a family of
    characters is named F / F<weight>; anything else falls back to S<i> in
    fingerprint order.  Declared modules keep their declared names.
    """

    def __init__(self):
        self.known: list[tuple[str, Representation]] = []

    def register(self, name: str, rep: Representation):
        self.known.append((name, rep))

    def register_family(self, reps: list[Representation]):
        dims = [r.dim for r in reps]
        if dims and all(d == 1 for d in dims):
            for r in reps:
                scalars = [r.field.scalar(m[0, 0]) for m in r.matrices]
                nonzero = [i for i, s in enumerate(scalars) if s != 0]
                if not nonzero:
                    name = "F"
                elif nonzero == [0]:
                    name = f"F{scalars[0]}"
                else:
                    name = "F(" + ",".join(str(scalars[i]) for i in nonzero) + ")"
                self.register(name, r)
        elif dims and len(set(dims)) == len(dims) and max(dims) > 1:
            for r in reps:
                self.register(f"L({r.dim - 1})", r)
        else:
            for i, r in enumerate(reps):
                self.register(f"S{i}", r)

    def name(self, rep: Representation) -> str:
        for name, known in self.known:
            if rep is known or is_isomorphic(known, rep):
                return name
        name = "F" if (rep.dim == 1 and rep.is_trivial()) else f"M{rep.dim}.{len(self.known)}"
        self.register(name, rep)
        return name
