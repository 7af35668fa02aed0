"""The module tube algebra and its tensor-product space.

A basis element is an annular diagram with inner (source) boundary pair
``(m, n)``, outer (target) boundary pair ``(p, q)`` and a category strand
``x`` attached by a splitting vertex ``alpha < Nm(x,m,p)`` on the source
side and a fusion vertex ``beta < Nm(x,n,q)`` on the target side.

``compose(A, B)`` is operator-ordered: ``B`` is applied first, so it needs
``B.p == A.m`` and ``B.q == A.n``. On group-algebra data this reduces to
multiplication of the strand labels, ``T_g o T_h = T_{gh}``.

The tensor space is the formal span of ordered pairs ``(A, B)`` with
``A.q == B.p`` (``A`` is the lower tube). A tube acts on the outside of a
pair by splitting into two half-tubes joined by a resolution of the
identity on the shared middle strand, with the insertion coefficient
``sqrt(d_u / (d_x d_mid))`` fixed by the dual-basis bubble normalization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .catdata import (
    COEFF_FLOOR,
    FusionCategoryData,
    ModuleCategoryData,
    fp_dimensions,
    module_fp_dimensions,
)
from .errors import IncompletenessError, UnsupportedStructureError


@dataclass(frozen=True, order=True)
class Tube:
    """Tube basis element; all fields are integer indices."""

    m: int
    n: int
    p: int
    q: int
    x: int
    alpha: int
    beta: int


TubeVector = dict  # Tube -> complex; absent keys are zero


def vec_add(dst: TubeVector, src: TubeVector, scale=1.0):
    for key, val in src.items():
        new = dst.get(key, 0.0) + scale * val
        if abs(new) > COEFF_FLOOR:
            dst[key] = new
        elif key in dst:
            del dst[key]
    return dst


def vec_scale(v: TubeVector, scale) -> TubeVector:
    return {k: scale * val for k, val in v.items()}


def vec_chop(v: TubeVector, floor=COEFF_FLOOR) -> TubeVector:
    return {k: val for k, val in v.items() if abs(val) > floor}


def vec_norm_inf(v: TubeVector) -> float:
    return max((abs(val) for val in v.values()), default=0.0)


def enumerate_basis(cat: FusionCategoryData, mod: ModuleCategoryData) -> list[Tube]:
    """All tube basis elements, lexicographic in (m, n, p, q, x, alpha, beta)."""
    nm = mod.nm
    nmods = mod.num_modules
    rank = cat.ring.rank
    out = []
    for m, n, p, q in itertools.product(range(nmods), repeat=4):
        for x in range(rank):
            for al in range(nm[x, m, p]):
                for be in range(nm[x, n, q]):
                    out.append(Tube(m, n, p, q, x, al, be))
    return out


def tube_dimension(cat: FusionCategoryData, mod: ModuleCategoryData) -> int:
    """Closed form sum_{m,n,p,q,x} Nm(x,m,p) Nm(x,n,q)."""
    nm = mod.nm
    per_x = nm.sum(axis=(1, 2))
    return int(np.sum(per_x**2))


class TubeAlgebra:
    """Tube algebra with precomputed structure constants.

    Composition and the tensor action need only the L-symbols and their
    inverses; the star structure, functional and inner product additionally
    need unitary data and are gated on the ``unitary`` flag.
    """

    def __init__(
        self,
        cat: FusionCategoryData,
        mod: ModuleCategoryData,
        build_structure: bool = True,
        unitary: bool | None = None,
    ):
        self.cat = cat
        self.mod = mod
        self.ring = cat.ring
        if cat.dims is None:
            cat.dims = fp_dimensions(cat.ring)
        if mod.module_dims is None:
            mod.module_dims = module_fp_dimensions(cat, mod)
        self.d = cat.dims
        self.dm = mod.module_dims
        self.basis = enumerate_basis(cat, mod)
        self.dim = len(self.basis)
        self.index = {t: i for i, t in enumerate(self.basis)}
        self.unit_vector: TubeVector = {
            Tube(m, n, m, n, self.ring.unit, 0, 0): 1.0 + 0.0j
            for m, n in itertools.product(range(mod.num_modules), repeat=2)
        }
        self.unitary = bool(cat.unitary) if unitary is None else bool(unitary)
        self._l_maps: dict[tuple, tuple] = {}
        self._linv: dict[tuple, np.ndarray] = {}
        self._star: list[TubeVector] | None = None
        self._gram: np.ndarray | None = None
        self.structure: dict[tuple[int, int], list[tuple[int, complex]]] | None = None
        if build_structure:
            self._build_structure()

    # -- L-block access ----------------------------------------------------

    def _l_data(self, a, b, m, n):
        """(block, inverse, row position map, col position map) for L^{abm}_n."""
        key = (a, b, m, n)
        cached = self._l_maps.get(key)
        if cached is not None:
            return cached
        blk = self.mod.l_block(self.ring, a, b, m, n)
        rows = {t: i for i, t in enumerate(self.mod.l_rows(self.ring, a, b, m, n))}
        cols = {t: j for j, t in enumerate(self.mod.l_cols(a, b, m, n))}
        if blk.size:
            if blk.shape[0] != blk.shape[1]:
                raise IncompletenessError(f"L block {key} is not square: {blk.shape}")
            try:
                inv = np.linalg.inv(blk)
            except np.linalg.LinAlgError as exc:
                raise IncompletenessError(f"L block {key} is singular or incomplete") from exc
            if not np.all(np.isfinite(inv)):
                raise IncompletenessError(f"L block {key} is singular or incomplete")
        else:
            inv = blk
        cached = (blk, inv, rows, cols)
        self._l_maps[key] = cached
        return cached

    # -- composition ---------------------------------------------------------

    def compose_elements(self, a_outer: Tube, b_inner: Tube) -> TubeVector:
        """a_outer o b_inner (inner applied first); zero unless boundaries match."""
        if b_inner.p != a_outer.m or b_inner.q != a_outer.n:
            return {}
        A, B = a_outer, b_inner
        out: TubeVector = {}
        nm = self.mod.nm
        top_blk, top_inv, top_rows, top_cols = self._l_data(A.x, B.x, B.n, A.q)
        bot_blk, bot_inv, bot_rows, bot_cols = self._l_data(A.x, B.x, B.m, A.p)
        top_col = top_cols[(B.beta, B.q, A.beta)]
        bot_col = bot_cols[(B.alpha, B.p, A.alpha)]
        for y in self.ring.outcomes(A.x, B.x):
            scale = np.sqrt(self.d[B.x] * self.d[A.x] / self.d[y])
            for zeta in range(self.ring.n[A.x, B.x, y]):
                for sigma in range(nm[y, B.m, A.p]):
                    bot = bot_blk[bot_rows[(zeta, y, sigma)], bot_col]
                    if abs(bot) <= COEFF_FLOOR:
                        continue
                    for tau in range(nm[y, B.n, A.q]):
                        top = top_inv[top_col, top_rows[(zeta, y, tau)]]
                        coeff = scale * top * bot
                        if abs(coeff) <= COEFF_FLOOR:
                            continue
                        key = Tube(B.m, B.n, A.p, A.q, y, sigma, tau)
                        out[key] = out.get(key, 0.0) + coeff
        return vec_chop(out)

    def _build_structure(self):
        sc: dict[tuple[int, int], list[tuple[int, complex]]] = {}
        for i, A in enumerate(self.basis):
            for j, B in enumerate(self.basis):
                if B.p != A.m or B.q != A.n:
                    continue
                prod = self.compose_elements(A, B)
                if prod:
                    sc[(i, j)] = [(self.index[t], v) for t, v in prod.items()]
        self.structure = sc

    def compose(self, u: TubeVector, v: TubeVector) -> TubeVector:
        """u o v for vectors (v applied first)."""
        out: TubeVector = {}
        if self.structure is not None:
            for tu, cu in u.items():
                i = self.index[tu]
                for tv, cv in v.items():
                    terms = self.structure.get((i, self.index[tv]))
                    if terms:
                        scale = cu * cv
                        for k, coeff in terms:
                            key = self.basis[k]
                            out[key] = out.get(key, 0.0) + scale * coeff
            return vec_chop(out)
        for tu, cu in u.items():
            for tv, cv in v.items():
                vec_add(out, self.compose_elements(tu, tv), cu * cv)
        return vec_chop(out)

    # -- star structure, functional, inner product ---------------------------

    def _require_unitary(self):
        if not self.unitary:
            raise UnsupportedStructureError(
                "star/omega/inner need unitary category and module data"
            )

    def star_element(self, t: Tube) -> TubeVector:
        """Adjoint of a basis tube; swaps source and target boundaries."""
        self._require_unitary()
        xd = self.ring.dual[t.x]
        u = self.ring.unit
        nm = self.mod.nm
        coeff0 = self.d[t.x] * np.sqrt(self.dm[t.m] * self.dm[t.n] / (self.dm[t.p] * self.dm[t.q]))
        m_blk, _, m_rows, m_cols = self._l_data(xd, t.x, t.m, t.m)
        n_blk, _, n_rows, n_cols = self._l_data(xd, t.x, t.n, t.n)
        m_row = m_rows[(0, u, 0)]
        n_row = n_rows[(0, u, 0)]
        out: TubeVector = {}
        for sigma in range(nm[xd, t.p, t.m]):
            lm = np.conj(m_blk[m_row, m_cols[(t.alpha, t.p, sigma)]])
            if abs(lm) <= COEFF_FLOOR:
                continue
            for tau in range(nm[xd, t.q, t.n]):
                ln = n_blk[n_row, n_cols[(t.beta, t.q, tau)]]
                val = coeff0 * lm * ln
                if abs(val) <= COEFF_FLOOR:
                    continue
                key = Tube(t.p, t.q, t.m, t.n, xd, sigma, tau)
                out[key] = out.get(key, 0.0) + val
        return out

    def _star_table(self) -> list[TubeVector]:
        if self._star is None:
            self._star = [self.star_element(t) for t in self.basis]
        return self._star

    def star(self, v: TubeVector) -> TubeVector:
        """Antilinear involution extended from the basis table."""
        table = self._star_table()
        out: TubeVector = {}
        for t, c in v.items():
            vec_add(out, table[self.index[t]], np.conj(c))
        return out

    def omega(self, v: TubeVector) -> complex:
        """Identity-strand functional weighted by the module dimensions."""
        u = self.ring.unit
        total = 0.0 + 0.0j
        for t, c in v.items():
            if t.x == u:
                total += c * self.dm[t.m] * self.dm[t.n]
        return complex(total)

    def inner(self, a: TubeVector, b: TubeVector) -> complex:
        """<a, b> = omega(a* o b); sesquilinear, linear in the second slot."""
        self._require_unitary()
        return self.omega(self.compose(self.star(a), b))

    def gram(self) -> np.ndarray:
        """Inner products of all basis pairs."""
        if self._gram is None:
            self._require_unitary()
            g = np.zeros((self.dim, self.dim), dtype=complex)
            table = self._star_table()
            for i, ti in enumerate(self.basis):
                star_i = table[i]
                for j, tj in enumerate(self.basis):
                    if ti.m != tj.m or ti.n != tj.n or ti.p != tj.p or ti.q != tj.q:
                        continue
                    g[i, j] = self.omega(self.compose(star_i, {tj: 1.0}))
            self._gram = g
        return self._gram

    def inner_fast(self, a: TubeVector, b: TubeVector) -> complex:
        g = self.gram()
        va = np.zeros(self.dim, dtype=complex)
        vb = np.zeros(self.dim, dtype=complex)
        for t, c in a.items():
            va[self.index[t]] = c
        for t, c in b.items():
            vb[self.index[t]] = c
        return complex(va.conj() @ g @ vb)


# ---------------------------------------------------------------------------
# tensor-product space (formal pair space)


class PairSpace:
    """Formal span of compatible ordered tube pairs, with the outer action."""

    def __init__(self, algebra: TubeAlgebra):
        self.algebra = algebra
        self.pairs = [
            (a, b)
            for a in algebra.basis
            for b in algebra.basis
            if a.q == b.p
        ]
        self.pair_index = {pq: i for i, pq in enumerate(self.pairs)}
        self.dim = len(self.pairs)

    def _half_tubes(self, t: Tube):
        """Split a tube into (coefficient, bottom half, top half) triples."""
        alg = self.algebra
        nm = alg.mod.nm
        out = []
        for mid in range(alg.mod.num_modules):
            for u in range(alg.mod.num_modules):
                for gamma in range(nm[t.x, mid, u]):
                    coeff = np.sqrt(alg.dm[u] / (alg.d[t.x] * alg.dm[mid]))
                    bottom = Tube(t.m, mid, t.p, u, t.x, t.alpha, gamma)
                    top = Tube(mid, t.n, u, t.q, t.x, gamma, t.beta)
                    out.append((coeff, bottom, top))
        return out

    def act_element_on_pair(self, t: Tube, pair) -> dict:
        """Outer action of a tube basis element on one formal pair."""
        a, b = pair
        if a.p != t.m or b.q != t.n:
            return {}
        alg = self.algebra
        nm = alg.mod.nm
        mid = a.q
        out: dict = {}
        for u in range(alg.mod.num_modules):
            for gamma in range(nm[t.x, mid, u]):
                coeff = np.sqrt(alg.dm[u] / (alg.d[t.x] * alg.dm[mid]))
                bottom = alg.compose_elements(Tube(t.m, mid, t.p, u, t.x, t.alpha, gamma), a)
                if not bottom:
                    continue
                top = alg.compose_elements(Tube(mid, t.n, u, t.q, t.x, gamma, t.beta), b)
                if not top:
                    continue
                for ta, ca in bottom.items():
                    for tb, cb in top.items():
                        key = (ta, tb)
                        out[key] = out.get(key, 0.0) + coeff * ca * cb
        return out

    def act_matrix(self, v: TubeVector) -> np.ndarray:
        """Matrix of the outer action of a tube vector on the pair basis."""
        mat = np.zeros((self.dim, self.dim), dtype=complex)
        for t, c in v.items():
            for j, pair in enumerate(self.pairs):
                for key, val in self.act_element_on_pair(t, pair).items():
                    mat[self.pair_index[key], j] += c * val
        return mat

    def pair_inner(self, i: int, j: int) -> complex:
        """Balanced inner product of two formal pair basis vectors."""
        alg = self.algebra
        (a1, b1), (a2, b2) = self.pairs[i], self.pairs[j]
        g = alg.gram()
        first = g[alg.index[a1], alg.index[a2]]
        second = g[alg.index[b1], alg.index[b2]]
        return complex(first * second / np.sqrt(alg.dm[a1.q] * alg.dm[a2.q]))
