"""Built-in category/module data sets.

``vec_group`` generates the pointed category of any finite group from its
multiplication table (all associator entries 1), together with the trivial
rank-one module. ``rep_s3`` carries the standard real orthogonal associator
table of the rank-3 ring with x*x = 1 + s + x, which also serves as a module
over itself with L := F.
"""

from __future__ import annotations

import itertools

import numpy as np

from .catdata import (
    FusionCategoryData,
    FusionRing,
    ModuleCategoryData,
    fp_dimensions,
    make_fusion_ring,
    module_fp_dimensions,
)

SQ2 = float(np.sqrt(2.0))


# ---------------------------------------------------------------------------
# pointed categories Vec(G)


def _perm_compose(f, g):
    # apply g first, then f
    return tuple(f[g[i]] for i in range(len(g)))


def z2_group():
    """Element labels and multiplication table of Z2."""
    labels = ["0", "1"]
    table = {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "0"}
    return labels, table


def s3_group():
    """Element labels and multiplication table of the symmetric group S3."""
    ident = (0, 1, 2)
    s = (1, 2, 0)
    t = (1, 0, 2)
    elems = [ident, s, _perm_compose(s, s), t, _perm_compose(s, t), _perm_compose(s, _perm_compose(s, t))]
    labels = ["1", "s", "s2", "t", "st", "s2t"]
    by_perm = {p: labels[i] for i, p in enumerate(elems)}
    table = {
        (labels[i], labels[j]): by_perm[_perm_compose(elems[i], elems[j])]
        for i in range(6)
        for j in range(6)
    }
    return labels, table


def vec_group(labels, table) -> FusionCategoryData:
    """Pointed fusion category of a finite group; every allowed F-symbol is 1."""
    unit = labels[0]
    n_map = {(g, h, table[(g, h)]): 1 for g, h in itertools.product(labels, repeat=2)}
    ring = make_fusion_ring(labels, unit, n_map)
    idx = ring.label_index
    prod = {(idx[g], idx[h]): idx[table[(g, h)]] for g, h in itertools.product(labels, repeat=2)}
    f = {}
    for a, b, c in itertools.product(range(ring.rank), repeat=3):
        e = prod[(a, b)]
        ff = prod[(b, c)]
        d = prod[(e, c)]
        f[(a, b, c, d, 0, e, 0, 0, ff, 0)] = 1.0 + 0.0j
    dims = np.ones(ring.rank)
    kappa = {lab: 1 for lab in labels}
    return FusionCategoryData(ring, f, dims, unitary=True, kappa=kappa)


def trivial_module(cat: FusionCategoryData) -> ModuleCategoryData:
    """Rank-one module over a pointed category; every allowed L-symbol is 1."""
    ring = cat.ring
    nm = np.ones((ring.rank, 1, 1), dtype=np.int64)
    for a in range(ring.rank):
        nm[a, 0, 0] = 1
    l = {}
    for a, b in itertools.product(range(ring.rank), repeat=2):
        for e in ring.outcomes(a, b):
            l[(a, b, 0, 0, 0, e, 0, 0, 0, 0)] = 1.0 + 0.0j
    mod = ModuleCategoryData(("*",), nm, l)
    mod.module_dims = module_fp_dimensions(cat, mod)
    return mod


# ---------------------------------------------------------------------------
# the rank-3 ring of S3 representations


# (a, b, c, d, e, f) -> value, multiplicity-free; omitted entries are zero.
_REP_S3_TABLE = [
    ("1", "1", "1", "1", "1", "1", 1.0),
    ("1", "1", "psi", "psi", "1", "psi", 1.0),
    ("1", "1", "pi", "pi", "1", "pi", 1.0),
    ("1", "psi", "1", "psi", "psi", "psi", 1.0),
    ("1", "psi", "psi", "1", "psi", "1", 1.0),
    ("1", "psi", "pi", "pi", "psi", "pi", 1.0),
    ("1", "pi", "1", "pi", "pi", "pi", 1.0),
    ("1", "pi", "psi", "pi", "pi", "pi", 1.0),
    ("1", "pi", "pi", "1", "pi", "1", 1.0),
    ("1", "pi", "pi", "psi", "pi", "psi", 1.0),
    ("1", "pi", "pi", "pi", "pi", "pi", 1.0),
    ("psi", "1", "1", "psi", "psi", "1", 1.0),
    ("psi", "1", "psi", "1", "psi", "psi", 1.0),
    ("psi", "1", "pi", "pi", "psi", "pi", 1.0),
    ("psi", "psi", "1", "1", "1", "psi", 1.0),
    ("psi", "psi", "psi", "psi", "1", "1", 1.0),
    ("psi", "psi", "pi", "pi", "1", "pi", 1.0),
    ("psi", "pi", "1", "pi", "pi", "pi", 1.0),
    ("psi", "pi", "psi", "pi", "pi", "pi", 1.0),
    ("psi", "pi", "pi", "psi", "pi", "1", 1.0),
    ("psi", "pi", "pi", "1", "pi", "psi", 1.0),
    ("psi", "pi", "pi", "pi", "pi", "pi", -1.0),
    ("pi", "1", "1", "pi", "pi", "1", 1.0),
    ("pi", "1", "psi", "pi", "pi", "psi", 1.0),
    ("pi", "1", "pi", "1", "pi", "pi", 1.0),
    ("pi", "1", "pi", "psi", "pi", "pi", 1.0),
    ("pi", "1", "pi", "pi", "pi", "pi", 1.0),
    ("pi", "psi", "1", "pi", "pi", "psi", 1.0),
    ("pi", "psi", "psi", "pi", "pi", "1", 1.0),
    ("pi", "psi", "pi", "1", "pi", "pi", 1.0),
    ("pi", "psi", "pi", "psi", "pi", "pi", 1.0),
    ("pi", "psi", "pi", "pi", "pi", "pi", -1.0),
    ("pi", "pi", "1", "1", "1", "pi", 1.0),
    ("pi", "pi", "1", "psi", "psi", "pi", 1.0),
    ("pi", "pi", "1", "pi", "pi", "pi", 1.0),
    ("pi", "pi", "psi", "psi", "1", "pi", 1.0),
    ("pi", "pi", "psi", "1", "psi", "pi", 1.0),
    ("pi", "pi", "psi", "pi", "pi", "pi", -1.0),
    ("pi", "pi", "pi", "pi", "1", "1", 0.5),
    ("pi", "pi", "pi", "pi", "1", "psi", 0.5),
    ("pi", "pi", "pi", "pi", "1", "pi", 1.0 / SQ2),
    ("pi", "pi", "pi", "pi", "psi", "1", 0.5),
    ("pi", "pi", "pi", "pi", "psi", "psi", 0.5),
    ("pi", "pi", "pi", "pi", "psi", "pi", -1.0 / SQ2),
    ("pi", "pi", "pi", "pi", "pi", "1", 1.0 / SQ2),
    ("pi", "pi", "pi", "pi", "pi", "psi", -1.0 / SQ2),
    ("pi", "pi", "pi", "1", "pi", "pi", 1.0),
    ("pi", "pi", "pi", "psi", "pi", "pi", -1.0),
    # ("pi","pi","pi","pi","pi","pi") is 0 and therefore omitted
]


def rep_s3_ring() -> FusionRing:
    n_map = {}
    for x in ("1", "psi", "pi"):
        n_map[("1", x, x)] = 1
        n_map[(x, "1", x)] = 1
    n_map[("psi", "psi", "1")] = 1
    n_map[("psi", "pi", "pi")] = 1
    n_map[("pi", "psi", "pi")] = 1
    n_map[("pi", "pi", "1")] = 1
    n_map[("pi", "pi", "psi")] = 1
    n_map[("pi", "pi", "pi")] = 1
    return make_fusion_ring(("1", "psi", "pi"), "1", n_map)


def rep_s3() -> FusionCategoryData:
    ring = rep_s3_ring()
    idx = ring.label_index
    f = {}
    for a, b, c, d, e, ff, val in _REP_S3_TABLE:
        f[(idx[a], idx[b], idx[c], idx[d], 0, idx[e], 0, 0, idx[ff], 0)] = complex(val)
    dims = fp_dimensions(ring)
    kappa = {"1": 1, "psi": 1, "pi": 1}
    return FusionCategoryData(ring, f, dims, unitary=True, kappa=kappa)


def rep_s3_self_module(cat: FusionCategoryData | None = None) -> ModuleCategoryData:
    """The category of S3 representations as a module over itself, L := F."""
    if cat is None:
        cat = rep_s3()
    ring = cat.ring
    l = {key: val for key, val in cat.f.items()}
    mod = ModuleCategoryData(ring.labels, ring.n.copy(), l)
    mod.module_dims = module_fp_dimensions(cat, mod)
    return mod


# ---------------------------------------------------------------------------
# Haagerup fusion data (rings only; F/L data live in user-supplied files)


def h3_fusion_ring() -> FusionRing:
    """Rank-6 ring with invertibles {1, a, a2} and x*y rows of the rho family."""
    labels = ("1", "a", "a2", "r", "ar", "a2r")
    x_part = ("r", "ar", "a2r")

    def row(lhs, rhs_plain, with_x=None):
        entries = {}
        for y, out in rhs_plain.items():
            entries[(lhs, y, out)] = 1
        if with_x:
            for y, extra in with_x.items():
                for out in extra:
                    entries[(lhs, y, out)] = entries.get((lhs, y, out), 0) + 1
                for out in x_part:
                    entries[(lhs, y, out)] = entries.get((lhs, y, out), 0) + 1
        return entries

    n_map = {}
    for y in labels:
        n_map[("1", y, y)] = 1
        if y != "1":
            n_map[(y, "1", y)] = 1
    n_map.update(row("a", {"a": "a2", "a2": "1", "r": "ar", "ar": "a2r", "a2r": "r"}))
    n_map.update(row("a2", {"a": "1", "a2": "a", "r": "a2r", "ar": "r", "a2r": "ar"}))
    n_map.update(row("r", {"a": "a2r", "a2": "ar"}, {"r": ["1"], "ar": ["a2"], "a2r": ["a"]}))
    n_map.update(row("ar", {"a": "r", "a2": "a2r"}, {"r": ["a"], "ar": ["1"], "a2r": ["a2"]}))
    n_map.update(row("a2r", {"a": "ar", "a2": "r"}, {"r": ["a2"], "ar": ["a"], "a2r": ["1"]}))
    return make_fusion_ring(labels, "1", n_map)


def m31_module_fusion() -> tuple[tuple[str, ...], np.ndarray]:
    """Module labels and Nm coefficients of the rank-4 module over h3."""
    ring = h3_fusion_ring()
    mlabels = ("G", "aG", "a2G", "L")
    midx = {m: i for i, m in enumerate(mlabels)}
    action = {
        "1": {"G": ["G"], "aG": ["aG"], "a2G": ["a2G"], "L": ["L"]},
        "a": {"G": ["aG"], "aG": ["a2G"], "a2G": ["G"], "L": ["L"]},
        "a2": {"G": ["a2G"], "aG": ["G"], "a2G": ["aG"], "L": ["L"]},
        "r": {"G": ["aG", "a2G", "L"], "aG": ["G", "aG", "L"], "a2G": ["G", "a2G", "L"], "L": ["G", "aG", "a2G", "L"]},
        "ar": {"G": ["G", "a2G", "L"], "aG": ["aG", "a2G", "L"], "a2G": ["G", "aG", "L"], "L": ["G", "aG", "a2G", "L"]},
        "a2r": {"G": ["G", "aG", "L"], "aG": ["G", "a2G", "L"], "a2G": ["aG", "a2G", "L"], "L": ["G", "aG", "a2G", "L"]},
    }
    nm = np.zeros((ring.rank, 4, 4), dtype=np.int64)
    for a_lab, rows in action.items():
        for m_lab, outs in rows.items():
            for n_lab in outs:
                nm[ring.label_index[a_lab], midx[m_lab], midx[n_lab]] += 1
    return mlabels, nm


def h1_fusion_ring() -> FusionRing:
    """Rank-4 target ring of the Haagerup pipeline; has multiplicity."""
    labels = ("1", "mu", "eta", "nu")
    prods = {
        ("mu", "mu"): {"1": 1, "nu": 1},
        ("mu", "eta"): {"eta": 1, "nu": 1},
        ("mu", "nu"): {"eta": 1, "mu": 1, "nu": 1},
        ("eta", "eta"): {"1": 1, "eta": 1, "mu": 1, "nu": 1},
        ("eta", "nu"): {"eta": 1, "mu": 1, "nu": 2},
        ("nu", "nu"): {"1": 1, "eta": 2, "mu": 1, "nu": 2},
    }
    n_map = {}
    for x in labels:
        n_map[("1", x, x)] = 1
        if x != "1":
            n_map[(x, "1", x)] = 1
    for (x, y), outs in prods.items():
        for z, k in outs.items():
            n_map[(x, y, z)] = k
            n_map[(y, x, z)] = k
    return make_fusion_ring(labels, "1", n_map)


# ---------------------------------------------------------------------------
# registry


def _fix_vec_z2():
    cat = vec_group(*z2_group())
    return cat, trivial_module(cat)


def _fix_vec_s3():
    cat = vec_group(*s3_group())
    return cat, trivial_module(cat)


def _fix_rep_s3():
    return rep_s3(), None


def _fix_rep_s3_self():
    cat = rep_s3()
    return cat, rep_s3_self_module(cat)


FIXTURES = {
    "vec_Z2": _fix_vec_z2,
    "vec_S3": _fix_vec_s3,
    "rep_S3": _fix_rep_s3,
    "rep_S3_self": _fix_rep_s3_self,
}


def fixture(name: str):
    """Return (category, module-or-None) for a registered fixture name."""
    try:
        maker = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {sorted(FIXTURES)}") from None
    return maker()
