"""Skeletal fusion-category and module-category data.

Objects are handled as integer indices into a label tuple. Associator data
are stored sparsely: a map from the full index tuple to a complex number,
with absent keys meaning zero.

Index conventions
-----------------
An F-block ``F^{abc}_d`` is the matrix taking the left-tree basis
``(alpha, e, beta)`` with ``alpha < N(a,b,e)``, ``beta < N(e,c,d)`` to the
right-tree basis ``(mu, f, nu)`` with ``mu < N(b,c,f)``, ``nu < N(a,f,d)``.
Rows are ordered by ``(e, alpha, beta)`` with ``e`` ascending in label order
and multiplicity indices ascending; columns by ``(f, mu, nu)`` likewise.

An L-block ``L^{abm}_n`` of a module category takes ``(alpha, e, beta)`` with
``alpha < N(a,b,e)``, ``beta < Nm(e,m,n)`` to ``(mu, p, nu)`` with
``mu < Nm(b,m,p)``, ``nu < Nm(a,p,n)``; same ordering rule with ``e`` over
category labels and ``p`` over module labels.

Sparse F keys are ``(a, b, c, d, alpha, e, beta, mu, f, nu)``; sparse L keys
are ``(a, b, m, n, alpha, e, beta, mu, p, nu)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DataInconsistencyError,
    DecomposableModuleError,
    IncompletenessError,
    StructuralDataError,
)

DEFAULT_RANK_TOL = 1e-8
DEFAULT_RESIDUAL_TOL = 1e-9
DEFAULT_REGRESSION_TOL = 1e-8
COEFF_FLOOR = 1e-14


# ---------------------------------------------------------------------------
# fusion ring


@dataclass(eq=False)
class FusionRing:
    """Fusion coefficients of a finite set of simple objects.

    ``n[a, b, c]`` is the multiplicity of ``c`` in ``a (x) b``; ``dual[a]``
    is the index of the dual object.
    """

    labels: tuple[str, ...]
    unit: int
    n: np.ndarray
    dual: tuple[int, ...]

    def __post_init__(self):
        self.n = np.asarray(self.n, dtype=np.int64)
        self.rank = len(self.labels)
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._outcomes = [
            [np.flatnonzero(self.n[a, b]).tolist() for b in range(self.rank)]
            for a in range(self.rank)
        ]

    def index(self, label: str) -> int:
        return self.label_index[label]

    def outcomes(self, a: int, b: int) -> list[int]:
        """Indices c with N(a,b,c) > 0."""
        return self._outcomes[a][b]


def make_fusion_ring(labels, unit_label, n_map, dual_map=None) -> FusionRing:
    """Build a :class:`FusionRing` from label-keyed fusion coefficients.

    ``n_map`` maps label triples to non-negative integers. Structural
    problems (unknown labels, negative counts) raise
    :class:`StructuralDataError`; axiom violations do not, use
    :func:`validate_fusion_ring` for those.
    """
    labels = tuple(labels)
    if not labels:
        raise StructuralDataError("label list is empty")
    if len(set(labels)) != len(labels):
        raise StructuralDataError("duplicate labels")
    index = {lab: i for i, lab in enumerate(labels)}
    if unit_label not in index:
        raise StructuralDataError(f"unit label {unit_label!r} not in label list")
    r = len(labels)
    n = np.zeros((r, r, r), dtype=np.int64)
    for key, value in n_map.items():
        try:
            a, b, c = (index[k] for k in key)
        except KeyError as exc:
            raise StructuralDataError(f"unknown label in N key {key!r}") from exc
        if int(value) != value or value < 0:
            raise StructuralDataError(f"N{key!r} = {value!r} is not a non-negative integer")
        n[a, b, c] = int(value)
    if dual_map is None:
        dual = _infer_duals(labels, index[unit_label], n)
    else:
        try:
            dual = tuple(index[dual_map[lab]] for lab in labels)
        except KeyError as exc:
            raise StructuralDataError(f"bad dual map: {exc}") from exc
    return FusionRing(labels, index[unit_label], n, dual)


def _infer_duals(labels, unit, n) -> tuple[int, ...]:
    dual = []
    for x in range(len(labels)):
        cands = [y for y in range(len(labels)) if n[x, y, unit] > 0]
        dual.append(cands[0] if cands else x)
    return tuple(dual)


@dataclass
class Violation:
    axiom: str
    where: tuple
    detail: str

    def __str__(self):
        return f"{self.axiom} at {self.where}: {self.detail}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom, where, detail):
        self.violations.append(Violation(axiom, where, detail))

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def validate_fusion_ring(ring: FusionRing) -> ValidationReport:
    """Check unit, associativity and dual axioms; report every violation."""
    report = ValidationReport()
    r, n, u = ring.rank, ring.n, ring.unit
    lab = ring.labels
    for x, y in itertools.product(range(r), repeat=2):
        want = 1 if x == y else 0
        if n[u, x, y] != want:
            report.add("unit", (lab[u], lab[x], lab[y]), f"N = {n[u, x, y]}, expected {want}")
        if n[x, u, y] != want:
            report.add("unit", (lab[x], lab[u], lab[y]), f"N = {n[x, u, y]}, expected {want}")
    # associativity via the tensor contraction sum_e N(a,b,e)N(e,c,d)
    lhs = np.einsum("abe,ecd->abcd", n, n)
    rhs = np.einsum("afd,bcf->abcd", n, n)
    for idx in zip(*np.nonzero(lhs != rhs)):
        a, b, c, d = (int(i) for i in idx)
        report.add(
            "associativity",
            (lab[a], lab[b], lab[c], lab[d]),
            f"sum_e N(a,b,e)N(e,c,d) = {lhs[a, b, c, d]} != {rhs[a, b, c, d]}",
        )
    for x in range(r):
        cands = [y for y in range(r) if n[x, y, u] > 0 or n[y, x, u] > 0]
        good = (
            len(cands) == 1
            and n[x, cands[0], u] == 1
            and n[cands[0], x, u] == 1
        )
        if not good:
            report.add("duals", (lab[x],), f"dual candidates {[lab[y] for y in cands]}")
        elif cands[0] != ring.dual[x]:
            report.add("duals", (lab[x],), f"declared dual {lab[ring.dual[x]]}, fusion says {lab[cands[0]]}")
    return report


# ---------------------------------------------------------------------------
# Frobenius-Perron dimensions


def _power_iterate(mat: np.ndarray, maxiter: int = 20000, tol: float = 1e-16):
    v = np.full(mat.shape[0], 1.0 / np.sqrt(mat.shape[0]))
    lam = 0.0
    for _ in range(maxiter):
        w = mat @ v
        lam = float(v @ w)
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            return v, lam, False
        w /= nrm
        if np.linalg.norm(w - v) < tol:
            return w, lam, True
        v = w
    return v, lam, False


def _generates(ring: FusionRing, a: int) -> bool:
    seen = {ring.unit, a}
    frontier = [a]
    while frontier:
        x = frontier.pop()
        for y in list(seen):
            for c in ring.outcomes(x, y) + ring.outcomes(y, x):
                if c not in seen:
                    seen.add(c)
                    frontier.append(c)
    return len(seen) == ring.rank


def fp_dimensions(ring: FusionRing, tol: float = 1e-12) -> np.ndarray:
    """Positive solution of d_a d_b = sum_c N(a,b,c) d_c.

    Power iteration on the fusion matrix of a generating object, falling back
    to the sum of all fusion matrices (primitive, so always convergent), with
    a final Rayleigh refinement.
    """
    mats = [ring.n[a].astype(float) for a in range(ring.rank)]
    v = None
    for a in range(ring.rank):
        if a == ring.unit or not _generates(ring, a):
            continue
        cand, _, converged = _power_iterate(mats[a])
        if converged:
            v = cand
            break
    if v is None:
        total = sum(mats)
        v, _, converged = _power_iterate(total)
        if not converged:
            raise DataInconsistencyError("Frobenius-Perron iteration did not converge")
        # Rayleigh refinement: one inverse-iteration step against the summed matrix
        lam = float(v @ total @ v)
        try:
            w = np.linalg.lstsq(total - (lam + 1e-9) * np.eye(ring.rank), v, rcond=None)[0]
            w /= np.linalg.norm(w)
            if np.all(w < 0):
                w = -w
            if np.all(w > 0):
                v = w
        except np.linalg.LinAlgError:
            pass
    if v[ring.unit] <= 0:
        v = -v
    d = v / v[ring.unit]
    if np.any(d <= 0):
        raise DataInconsistencyError("no positive dimension vector found")
    residual = max(
        abs(d[a] * d[b] - float(ring.n[a, b] @ d))
        for a in range(ring.rank)
        for b in range(ring.rank)
    )
    if residual > max(tol, 1e-12) * max(1.0, float(np.max(d)) ** 2):
        raise DataInconsistencyError(f"dimension recurrence residual {residual:.3e}")
    return d


# ---------------------------------------------------------------------------
# category / module data


@dataclass(eq=False)
class FusionCategoryData:
    """A fusion ring together with sparse F-symbols and dimensions."""

    ring: FusionRing
    f: dict[tuple, complex]
    dims: np.ndarray
    unitary: bool = False
    kappa: dict[int, int] | None = None

    def __post_init__(self):
        self.dims = np.asarray(self.dims, dtype=float)
        self._blocks: dict[tuple, np.ndarray] = {}

    @property
    def is_real(self) -> bool:
        return all(abs(complex(v).imag) < COEFF_FLOOR for v in self.f.values())

    def f_rows(self, a, b, c, d):
        n = self.ring.n
        return [
            (al, e, be)
            for e in range(self.ring.rank)
            for al in range(n[a, b, e])
            for be in range(n[e, c, d])
        ]

    def f_cols(self, a, b, c, d):
        n = self.ring.n
        return [
            (mu, ff, nu)
            for ff in range(self.ring.rank)
            for mu in range(n[b, c, ff])
            for nu in range(n[a, ff, d])
        ]

    def f_block(self, a, b, c, d) -> np.ndarray:
        """The F^{abc}_d matrix; empty (0 x 0) when fusion forbids."""
        key = (a, b, c, d)
        blk = self._blocks.get(key)
        if blk is not None:
            return blk
        rows = self.f_rows(a, b, c, d)
        cols = self.f_cols(a, b, c, d)
        blk = np.zeros((len(rows), len(cols)), dtype=complex)
        for i, (al, e, be) in enumerate(rows):
            for j, (mu, ff, nu) in enumerate(cols):
                blk[i, j] = self.f.get((a, b, c, d, al, e, be, mu, ff, nu), 0.0)
        self._blocks[key] = blk
        return blk

    def f4(self, a, b, c, d, e, ff) -> np.ndarray:
        """Sub-block with fixed middle labels, shape (al, be, mu, nu)."""
        n = self.ring.n
        out = np.zeros((n[a, b, e], n[e, c, d], n[b, c, ff], n[a, ff, d]), dtype=complex)
        if out.size:
            for al, be, mu, nu in np.ndindex(out.shape):
                out[al, be, mu, nu] = self.f.get((a, b, c, d, al, e, be, mu, ff, nu), 0.0)
        return out

    def set_block(self, a, b, c, d, block: np.ndarray):
        """Write a dense block back into the sparse map."""
        rows = self.f_rows(a, b, c, d)
        cols = self.f_cols(a, b, c, d)
        for key in [k for k in self.f if k[:4] == (a, b, c, d)]:
            del self.f[key]
        for i, (al, e, be) in enumerate(rows):
            for j, (mu, ff, nu) in enumerate(cols):
                v = complex(block[i, j])
                if abs(v) > COEFF_FLOOR:
                    self.f[(a, b, c, d, al, e, be, mu, ff, nu)] = v
        self._blocks.pop((a, b, c, d), None)

    def admissible_quadruples(self):
        n = self.ring.n
        r = self.ring.rank
        for a, b, c, d in itertools.product(range(r), repeat=4):
            if np.any(n[a, b] * n[:, c, d]) and np.any(n[b, c] * n[a, :, d]):
                yield a, b, c, d


@dataclass(eq=False)
class ModuleCategoryData:
    """Module labels, module fusion coefficients and sparse L-symbols."""

    module_labels: tuple[str, ...]
    nm: np.ndarray
    l: dict[tuple, complex]
    module_dims: np.ndarray | None = None

    def __post_init__(self):
        self.nm = np.asarray(self.nm, dtype=np.int64)
        self.num_modules = len(self.module_labels)
        self.module_index = {lab: i for i, lab in enumerate(self.module_labels)}
        self._blocks: dict[tuple, np.ndarray] = {}
        if self.module_dims is not None:
            self.module_dims = np.asarray(self.module_dims, dtype=float)

    @property
    def is_real(self) -> bool:
        return all(abs(complex(v).imag) < COEFF_FLOOR for v in self.l.values())

    def l_rows(self, ring: FusionRing, a, b, m, n):
        return [
            (al, e, be)
            for e in range(ring.rank)
            for al in range(ring.n[a, b, e])
            for be in range(self.nm[e, m, n])
        ]

    def l_cols(self, a, b, m, n):
        return [
            (mu, p, nu)
            for p in range(self.num_modules)
            for mu in range(self.nm[b, m, p])
            for nu in range(self.nm[a, p, n])
        ]

    def l_block(self, ring: FusionRing, a, b, m, n) -> np.ndarray:
        key = (a, b, m, n)
        blk = self._blocks.get(key)
        if blk is not None:
            return blk
        rows = self.l_rows(ring, a, b, m, n)
        cols = self.l_cols(a, b, m, n)
        blk = np.zeros((len(rows), len(cols)), dtype=complex)
        for i, (al, e, be) in enumerate(rows):
            for j, (mu, p, nu) in enumerate(cols):
                blk[i, j] = self.l.get((a, b, m, n, al, e, be, mu, p, nu), 0.0)
        self._blocks[key] = blk
        return blk

    def l4(self, ring: FusionRing, a, b, m, n, e, p) -> np.ndarray:
        out = np.zeros(
            (ring.n[a, b, e], self.nm[e, m, n], self.nm[b, m, p], self.nm[a, p, n]),
            dtype=complex,
        )
        if out.size:
            for al, be, mu, nu in np.ndindex(out.shape):
                out[al, be, mu, nu] = self.l.get((a, b, m, n, al, e, be, mu, p, nu), 0.0)
        return out


def module_fp_dimensions(cat: FusionCategoryData, mod: ModuleCategoryData, tol: float = 1e-12) -> np.ndarray:
    """Positive solution of d_a d_m = sum_n Nm(a,m,n) d_n, normalized so the
    squared module dimensions sum to the squared object dimensions.

    A solution space of dimension > 1 means the module is decomposable.
    """
    ring = cat.ring
    nmods = mod.num_modules
    # Nm[a] has rows indexed by m, columns by n: the recurrence is Nm[a] @ d = d_a d.
    stacked = np.vstack([
        mod.nm[a].astype(float) - cat.dims[a] * np.eye(nmods)
        for a in range(ring.rank)
    ])
    _, svals, vh = np.linalg.svd(stacked)
    null_dim = int(np.sum(svals < 1e-8 * max(1.0, svals[0]))) + (nmods - len(svals) if len(svals) < nmods else 0)
    if null_dim == 0:
        raise DataInconsistencyError("module dimension recurrence has no solution")
    if null_dim > 1:
        raise DecomposableModuleError(
            "module dimension recurrence has a solution space of dimension "
            f"{null_dim}; the module category must be indecomposable"
        )
    w = vh[-1].real
    if np.all(w <= 0):
        w = -w
    if np.any(w <= 0):
        raise DataInconsistencyError("module dimension vector is not positive")
    w *= np.sqrt(float(np.sum(cat.dims**2) / np.sum(w**2)))
    residual = max(
        abs(cat.dims[a] * w[m] - float(mod.nm[a, m] @ w))
        for a in range(ring.rank)
        for m in range(nmods)
    )
    if residual > max(tol, 1e-12) * max(1.0, float(np.max(w)) ** 2):
        raise DataInconsistencyError(f"module dimension residual {residual:.3e}")
    return w


def validate_module_fusion(cat: FusionCategoryData, mod: ModuleCategoryData) -> ValidationReport:
    """Check module unit and mixed associativity axioms."""
    report = ValidationReport()
    ring = cat.ring
    u = ring.unit
    lab, mlab = ring.labels, mod.module_labels
    for m, n in itertools.product(range(mod.num_modules), repeat=2):
        want = 1 if m == n else 0
        if mod.nm[u, m, n] != want:
            report.add("module-unit", (lab[u], mlab[m], mlab[n]), f"Nm = {mod.nm[u, m, n]}, expected {want}")
    lhs = np.einsum("abe,emn->abmn", ring.n, mod.nm)
    rhs = np.einsum("apn,bmp->abmn", mod.nm, mod.nm)
    for idx in zip(*np.nonzero(lhs != rhs)):
        a, b, m, n = (int(i) for i in idx)
        report.add(
            "mixed-associativity",
            (lab[a], lab[b], mlab[m], mlab[n]),
            f"{lhs[a, b, m, n]} != {rhs[a, b, m, n]}",
        )
    return report


# ---------------------------------------------------------------------------
# pentagon checks


def check_pentagon(cat: FusionCategoryData) -> float:
    """Max absolute deviation over all pentagon instances."""
    ring = cat.ring
    r = ring.rank
    n = ring.n
    worst = 0.0
    for a, b, c, d, e in itertools.product(range(r), repeat=5):
        for f in ring.outcomes(a, b):
            for x in ring.outcomes(c, d):
                if n[f, x, e] == 0:
                    continue
                for g in ring.outcomes(f, c):
                    if n[g, d, e] == 0:
                        continue
                    t1 = cat.f4(f, c, d, e, g, x)      # (beta, gamma, rho, zeta)
                    for y in ring.outcomes(b, x):
                        if n[a, y, e] == 0:
                            continue
                        t2 = cat.f4(a, b, x, e, f, y)  # (alpha, zeta, sigma, tau)
                        lhs = np.einsum("bgrz,azst->abgrst", t1, t2)
                        rhs = np.zeros_like(lhs)
                        for z in ring.outcomes(b, c):
                            if n[a, z, g] == 0 or n[z, d, y] == 0:
                                continue
                            t3 = cat.f4(a, b, c, g, f, z)  # (alpha, beta, lam, mu)
                            t4 = cat.f4(a, z, d, e, g, y)  # (mu, gamma, nu, tau)
                            t5 = cat.f4(b, c, d, y, z, x)  # (lam, nu, rho, sigma)
                            rhs += np.einsum("ablm,mgnt,lnrs->abgrst", t3, t4, t5)
                        dev = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
                        if dev > worst:
                            worst = dev
    return worst


def check_module_pentagon(cat: FusionCategoryData, mod: ModuleCategoryData) -> float:
    """Max absolute deviation over all mixed-pentagon instances."""
    ring = cat.ring
    r, nm = ring.rank, mod.nm
    n = ring.n
    worst = 0.0
    for f, c in itertools.product(range(r), repeat=2):
        for m, nn in itertools.product(range(mod.num_modules), repeat=2):
            for g in ring.outcomes(f, c):
                if nm[g, m, nn] == 0:
                    continue
                for p in range(mod.num_modules):
                    if nm[c, m, p] == 0:
                        continue
                    t1 = mod.l4(ring, f, c, m, nn, g, p)   # (beta, gamma, rho, zeta)
                    for a, b in itertools.product(range(r), repeat=2):
                        if n[a, b, f] == 0:
                            continue
                        for q in range(mod.num_modules):
                            if nm[b, p, q] == 0 or nm[a, q, nn] == 0:
                                continue
                            t2 = mod.l4(ring, a, b, p, nn, f, q)  # (alpha, zeta, sigma, tau)
                            lhs = np.einsum("bgrz,azst->abgrst", t1, t2)
                            rhs = np.zeros_like(lhs)
                            for z in ring.outcomes(b, c):
                                if n[a, z, g] == 0 or nm[z, m, q] == 0:
                                    continue
                                t3 = cat.f4(a, b, c, g, f, z)          # (alpha, beta, lam, mu)
                                t4 = mod.l4(ring, a, z, m, nn, g, q)   # (mu, gamma, nu, tau)
                                t5 = mod.l4(ring, b, c, m, q, z, p)    # (lam, nu, rho, sigma)
                                rhs += np.einsum("ablm,mgnt,lnrs->abgrst", t3, t4, t5)
                            dev = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
                            if dev > worst:
                                worst = dev
    return worst


# ---------------------------------------------------------------------------
# gauge transformations


@dataclass
class GaugeTransform:
    """Basis change on fusion spaces.

    ``kind`` is "category" (matrices keyed by object triples (a,b,c) of size
    N(a,b,c)) or "module" (keyed by (a,m,n) of size Nm(a,m,n)). Missing keys
    act as the identity.
    """

    kind: str
    mats: dict[tuple, np.ndarray]

    def mat(self, key, size) -> np.ndarray:
        m = self.mats.get(key)
        if m is None:
            return np.eye(size, dtype=complex)
        m = np.asarray(m, dtype=complex)
        if m.shape != (size, size):
            raise StructuralDataError(f"gauge matrix for {key} has shape {m.shape}, expected {(size, size)}")
        return m

    def inv(self, key, size) -> np.ndarray:
        m = self.mat(key, size)
        try:
            return np.linalg.inv(m)
        except np.linalg.LinAlgError as exc:
            raise StructuralDataError(f"gauge matrix for {key} is singular") from exc


def apply_gauge(data, gauge: GaugeTransform, cat: FusionCategoryData | None = None):
    """Return gauge-transformed data of the same type.

    For a category gauge on :class:`FusionCategoryData`, transforms the
    F-symbols; for a module gauge on :class:`ModuleCategoryData` (pass the
    underlying category via ``cat``), transforms the L-symbols.
    """
    if isinstance(data, FusionCategoryData):
        if gauge.kind != "category":
            raise StructuralDataError("category data needs a category gauge")
        return _apply_gauge_category(data, gauge)
    if isinstance(data, ModuleCategoryData):
        if gauge.kind != "module":
            raise StructuralDataError("module data needs a module gauge")
        if cat is None:
            raise StructuralDataError("module gauge application needs the category")
        return _apply_gauge_module(cat, data, gauge)
    raise StructuralDataError(f"cannot gauge a {type(data).__name__}")


def _apply_gauge_category(cat: FusionCategoryData, gauge: GaugeTransform) -> FusionCategoryData:
    ring = cat.ring
    n = ring.n
    new_f: dict[tuple, complex] = {}
    out = FusionCategoryData(ring, new_f, cat.dims.copy(), cat.unitary, cat.kappa)
    for a, b, c, d in cat.admissible_quadruples():
        for e in ring.outcomes(a, b):
            if n[e, c, d] == 0:
                continue
            minv_ab_e = gauge.inv((a, b, e), n[a, b, e])
            minv_ec_d = gauge.inv((e, c, d), n[e, c, d])
            for ff in ring.outcomes(b, c):
                if n[a, ff, d] == 0:
                    continue
                blk = cat.f4(a, b, c, d, e, ff)
                if not blk.size or not np.any(blk):
                    continue
                m_bc_f = gauge.mat((b, c, ff), n[b, c, ff])
                m_af_d = gauge.mat((a, ff, d), n[a, ff, d])
                out4 = np.einsum(
                    "gdst,ag,bd,sm,tn->abmn", blk, minv_ab_e, minv_ec_d, m_bc_f, m_af_d
                )
                for al, be, mu, nu in np.ndindex(out4.shape):
                    v = complex(out4[al, be, mu, nu])
                    if abs(v) > COEFF_FLOOR:
                        new_f[(a, b, c, d, al, e, be, mu, ff, nu)] = v
    return out


def _apply_gauge_module(cat: FusionCategoryData, mod: ModuleCategoryData, gauge: GaugeTransform) -> ModuleCategoryData:
    ring = cat.ring
    nm = mod.nm
    new_l: dict[tuple, complex] = {}
    out = ModuleCategoryData(mod.module_labels, nm, new_l, mod.module_dims)
    for a, b in itertools.product(range(ring.rank), repeat=2):
        for m, nn in itertools.product(range(mod.num_modules), repeat=2):
            for e in ring.outcomes(a, b):
                if nm[e, m, nn] == 0:
                    continue
                minv_em_n = gauge.inv((e, m, nn), nm[e, m, nn])
                for p in range(mod.num_modules):
                    if nm[b, m, p] == 0 or nm[a, p, nn] == 0:
                        continue
                    blk = mod.l4(ring, a, b, m, nn, e, p)
                    if not blk.size or not np.any(blk):
                        continue
                    m_bm_p = gauge.mat((b, m, p), nm[b, m, p])
                    m_ap_n = gauge.mat((a, p, nn), nm[a, p, nn])
                    out4 = np.einsum("adst,bd,sm,tn->abmn", blk, minv_em_n, m_bm_p, m_ap_n)
                    for al, be, mu, nu in np.ndindex(out4.shape):
                        v = complex(out4[al, be, mu, nu])
                        if abs(v) > COEFF_FLOOR:
                            new_l[(a, b, m, nn, al, e, be, mu, p, nu)] = v
    return out


# ---------------------------------------------------------------------------
# gauge-convention report


@dataclass
class GaugeReport:
    unit_f_deviation: float
    f_unitarity_deviation: float
    kappa: dict[str, int] | None
    unit_l_deviation: float | None = None
    l_unitarity_deviation: float | None = None

    def unitary(self, tol=1e-10) -> bool:
        ok = self.f_unitarity_deviation <= tol
        if self.l_unitarity_deviation is not None:
            ok = ok and self.l_unitarity_deviation <= tol
        return ok

    def nice_gauge(self, tol=1e-10) -> bool:
        ok = self.unit_f_deviation <= tol
        if self.unit_l_deviation is not None:
            ok = ok and self.unit_l_deviation <= tol
        return ok


def check_gauge_conventions(cat: FusionCategoryData, mod: ModuleCategoryData | None = None) -> GaugeReport:
    """Report nice-gauge and unitarity properties, extracting kappa signs."""
    ring = cat.ring
    u = ring.unit
    unit_dev = 0.0
    for b, c, d in itertools.product(range(ring.rank), repeat=3):
        for a_pos, key in (("left", (u, b, c, d)), ("mid", (b, u, c, d)), ("right", (b, c, u, d))):
            blk = cat.f_block(*key)
            if blk.size:
                unit_dev = max(unit_dev, float(np.max(np.abs(blk - np.eye(blk.shape[0])))))
    unitary_dev = 0.0
    for a, b, c, d in cat.admissible_quadruples():
        blk = cat.f_block(a, b, c, d)
        if blk.size:
            unitary_dev = max(
                unitary_dev,
                float(np.max(np.abs(blk.conj().T @ blk - np.eye(blk.shape[1])))),
            )
    kappa: dict[str, int] | None = {}
    for a in range(ring.rank):
        val = cat.f.get((a, ring.dual[a], a, a, 0, u, 0, 0, u, 0), 0.0)
        scaled = complex(val) * cat.dims[a]
        if abs(scaled.imag) < 1e-8 and abs(abs(scaled.real) - 1.0) < 1e-8:
            kappa[ring.labels[a]] = 1 if scaled.real > 0 else -1
        else:
            kappa = None
            break
    if mod is None:
        return GaugeReport(unit_dev, unitary_dev, kappa)
    unit_l_dev = 0.0
    for b in range(ring.rank):
        for m, nn in itertools.product(range(mod.num_modules), repeat=2):
            for key in ((u, b, m, nn), (b, u, m, nn)):
                blk = mod.l_block(ring, *key)
                if blk.size:
                    unit_l_dev = max(unit_l_dev, float(np.max(np.abs(blk - np.eye(blk.shape[0])))))
    l_dev = 0.0
    for a, b in itertools.product(range(ring.rank), repeat=2):
        for m, nn in itertools.product(range(mod.num_modules), repeat=2):
            blk = mod.l_block(ring, a, b, m, nn)
            if blk.size:
                l_dev = max(l_dev, float(np.max(np.abs(blk.conj().T @ blk - np.eye(blk.shape[1])))))
    return GaugeReport(unit_dev, unitary_dev, kappa, unit_l_dev, l_dev)


def require_invertible_blocks(cat: FusionCategoryData, mod: ModuleCategoryData | None = None, tol: float = DEFAULT_RANK_TOL):
    """Raise IncompletenessError when an admissible F/L block is missing or singular."""
    ring = cat.ring
    for a, b, c, d in cat.admissible_quadruples():
        blk = cat.f_block(a, b, c, d)
        if blk.shape[0] != blk.shape[1]:
            raise IncompletenessError(f"F block {(a, b, c, d)} is not square: {blk.shape}")
        if blk.size:
            svals = np.linalg.svd(blk, compute_uv=False)
            if svals[-1] <= tol * max(1.0, svals[0]):
                raise IncompletenessError(f"F block {(a, b, c, d)} is singular")
    if mod is None:
        return
    for a, b in itertools.product(range(ring.rank), repeat=2):
        for m, nn in itertools.product(range(mod.num_modules), repeat=2):
            blk = mod.l_block(ring, a, b, m, nn)
            if blk.shape[0] != blk.shape[1]:
                raise IncompletenessError(f"L block {(a, b, m, nn)} is not square: {blk.shape}")
            if blk.size:
                svals = np.linalg.svd(blk, compute_uv=False)
                if svals[-1] <= tol * max(1.0, svals[0]):
                    raise IncompletenessError(f"L block {(a, b, m, nn)} is singular")
