"""Gradings induced by commuting ad-semisimple elements.

A grading by sigma_1..sigma_r attaches a degree vector (entries in the
field) to each basis vector of a simultaneous eigenbasis of g and M.  A
basis cochain (S, v) then has degree deg_M(v) - sum_{i in S} deg_g(i), and
the coboundary preserves it, so the complex splits into per-degree blocks.
Every cocycle of nonzero degree r with respect to some sigma is the
coboundary of r^{-1} * contract(F, sigma), which is why only the
degree-zero block carries cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .complex import (Cochain, apply_coboundary, cochain_basis, contract, direct_rows, subsets,
                      subset_index)
from .errors import GradingError, InternalError, NotSemisimpleError, NotSplitError, ValidationError
from .fields import Field, roots_with_multiplicity
from .lie import GModule, LieAlgebra, make_algebra, make_module
from .linalg import SparseMatrix, charpoly, dense_matmul, kernel_basis, solve


@dataclass(frozen=True)
class EigenDecomposition:
    values: tuple  # one eigenvalue per eigenvector
    vectors: tuple  # eigenvectors (dense coordinate lists)

    def multiplicities(self) -> dict:
        out: dict = {}
        for v in self.values:
            out[v] = out.get(v, 0) + 1
        return out


def _sort_key(field: Field):
    return (lambda x: x) if field.p == 0 else (lambda x: x % field.p)


def eigen_decompose(mat: Sequence[Sequence], field: Field, what: str = "operator") -> EigenDecomposition:
    """Diagonalize ``mat`` over ``field`` or raise.

    Raises NotSplitError when the characteristic polynomial has roots
    outside the field, NotSemisimpleError when eigenspaces are too small.
    """
    n = len(mat)
    if n == 0:
        return EigenDecomposition((), ())
    cp = charpoly(mat, field)
    roots = roots_with_multiplicity(cp, field)
    if sum(roots.values()) != n:
        raise NotSplitError(f"{what} does not split over {field}")
    values, vectors = [], []
    for lam in sorted(roots, key=_sort_key(field)):
        shifted = [[field(mat[i][j] - (lam if i == j else 0)) for j in range(n)] for i in range(n)]
        ker = kernel_basis(SparseMatrix.from_dense(field, shifted))
        if len(ker) != roots[lam]:
            raise NotSemisimpleError(
                f"{what} is not semisimple: eigenvalue {lam} has multiplicity {roots[lam]} "
                f"but a {len(ker)}-dimensional eigenspace")
        for v in ker:
            values.append(lam)
            vectors.append(tuple(v))
    return EigenDecomposition(tuple(values), tuple(vectors))


@dataclass(frozen=True)
class AdssData:
    on_algebra: EigenDecomposition
    on_module: EigenDecomposition


def verify_adss(algebra: LieAlgebra, module: GModule, sigma: Sequence) -> AdssData:
    """Check that ``sigma`` acts diagonalizably over k on g and on M."""
    F = algebra.field
    sigma = F.vector(sigma)
    if len(sigma) != algebra.dim:
        raise GradingError(f"element has {len(sigma)} coordinates, algebra has {algebra.dim}")
    g = eigen_decompose(algebra.ad(sigma), F, "ad(sigma) on g")
    m = eigen_decompose(module.act(sigma, F), F, "sigma on M")
    return AdssData(g, m)


def _invert(mat: Sequence[Sequence], field: Field) -> list[list]:
    n = len(mat)
    A = SparseMatrix.from_dense(field, mat)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        x = solve(A, e)
        if x is None:
            raise InternalError("eigenbasis change is singular")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _refine(mats: Sequence, field: Field, n: int, what: str) -> tuple[list, list]:
    """Simultaneous eigenbasis of commuting diagonalizable ``mats``.

    Returns (vectors, labels) where labels[k] is the tuple of eigenvalues of
    vectors[k].  Each eigenspace of the first operator is split by the
    second, and so on.
    """
    blocks = [([[1 if i == j else 0 for i in range(n)] for j in range(n)], ())]
    for s, M in enumerate(mats):
        new_blocks = []
        for vecs, label in blocks:
            k = len(vecs)
            if k == 0:
                continue
            # restriction X with M B = B X, B having the block vectors as columns
            B = SparseMatrix.from_dense(field, [[vecs[c][r] for c in range(k)] for r in range(n)])
            MB = dense_matmul(M, [[vecs[c][r] for c in range(k)] for r in range(n)], field)
            X_cols = []
            for c in range(k):
                x = solve(B, [MB[r][c] for r in range(n)])
                if x is None:
                    raise GradingError(f"{what}: eigenspace not invariant; elements do not commute")
                X_cols.append(x)
            X = [[X_cols[c][r] for c in range(k)] for r in range(k)]
            dec = eigen_decompose(X, field, what)
            for lam, coords in zip(dec.values, dec.vectors):
                v = [field(sum(coords[c] * vecs[c][r] for c in range(k))) for r in range(n)]
                new_blocks.append(([v], label + (lam,)))
        # regroup vectors sharing a label into one block for the next operator
        grouped: dict = {}
        order = []
        for vs, lab in new_blocks:
            if lab not in grouped:
                grouped[lab] = []
                order.append(lab)
            grouped[lab].extend(vs)
        blocks = [(grouped[lab], lab) for lab in order]
    vectors, labels = [], []
    for vecs, lab in blocks:
        for v in vecs:
            vectors.append(v)
            labels.append(lab)
    return vectors, labels


def _standard_degrees(mats: Sequence, field: Field, n: int) -> list | None:
    """Degree vectors if every standard basis vector is a simultaneous eigenvector."""
    degs = [[] for _ in range(n)]
    for M in mats:
        for j in range(n):
            if any(M[i][j] != 0 for i in range(n) if i != j):
                return None
            degs[j].append(field(M[j][j]))
    return [tuple(d) for d in degs]


@dataclass(frozen=True, eq=False)
class Grading:
    """Simultaneous eigen-data for commuting adss elements.

    ``algebra`` and ``module`` are expressed in the eigenbasis; when the
    input basis already is one, they are the input objects themselves and
    both change-of-basis matrices are the identity.
    """
    field: Field
    sigmas: tuple  # coordinates in the eigenbasis
    algebra_degrees: tuple
    module_degrees: tuple
    algebra: LieAlgebra
    module: GModule
    algebra_change: tuple  # columns: eigenvectors in original coordinates
    module_change: tuple
    source_algebra: LieAlgebra
    source_module: GModule
    identity: bool

    @property
    def rank(self) -> int:
        return len(self.sigmas)

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.sigmas)

    def restrict(self, which: Sequence[int]) -> "Grading":
        """The grading by a subset of the sigmas (same eigenbasis)."""
        which = list(which)
        pick = lambda d: tuple(d[s] for s in which)
        return Grading(self.field, tuple(self.sigmas[s] for s in which),
                       tuple(pick(d) for d in self.algebra_degrees),
                       tuple(pick(d) for d in self.module_degrees),
                       self.algebra, self.module, self.algebra_change, self.module_change,
                       self.source_algebra, self.source_module, self.identity)

    def to_eigen_coordinates(self, x: Sequence) -> list:
        """Algebra element in input coordinates -> eigenbasis coordinates."""
        if self.identity:
            return self.field.vector(x)
        inv = _invert([list(r) for r in self.algebra_change], self.field)
        return [self.field(sum(inv[i][j] * x[j] for j in range(len(x)))) for i in range(len(x))]


def make_grading(algebra: LieAlgebra, module: GModule, sigmas: Sequence[Sequence]) -> Grading:
    F = algebra.field
    sigmas = [F.vector(s) for s in sigmas]
    for a, b in combinations(range(len(sigmas)), 2):
        if any(algebra.bracket(sigmas[a], sigmas[b])):
            raise GradingError(f"grading elements {a} and {b} do not commute")
    for s, sig in enumerate(sigmas):
        try:
            verify_adss(algebra, module, sig)
        except (NotSplitError, NotSemisimpleError) as exc:
            raise type(exc)(f"grading element {s}: {exc}") from None
    ad_mats = [algebra.ad(s) for s in sigmas]
    act_mats = [module.act(s, F) for s in sigmas]
    n, m = algebra.dim, module.dim
    g_std = _standard_degrees(ad_mats, F, n)
    m_std = _standard_degrees(act_mats, F, m)
    if g_std is not None and m_std is not None:
        eye = lambda d: tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
        return Grading(F, tuple(tuple(s) for s in sigmas), tuple(g_std), tuple(m_std),
                       algebra, module, eye(n), eye(m), algebra, module, True)

    g_vecs, g_labels = _refine(ad_mats, F, n, "ad(sigma) on g")
    m_vecs, m_labels = _refine(act_mats, F, m, "sigma on M")
    P = [[g_vecs[c][r] for c in range(n)] for r in range(n)]
    Q = [[m_vecs[c][r] for c in range(m)] for r in range(m)]
    P_inv = _invert(P, F)
    Q_inv = _invert(Q, F)

    def to_new(vec):
        return [F(sum(P_inv[i][j] * vec[j] for j in range(n))) for i in range(n)]

    brackets = {}
    for a in range(n):
        for b in range(a + 1, n):
            br = to_new(algebra.bracket(g_vecs[a], g_vecs[b]))
            terms = {k: c for k, c in enumerate(br) if c}
            if terms:
                brackets[(a, b)] = terms
    names = [f"y{k}" for k in range(n)]
    new_alg = make_algebra(F, n, brackets, names, name=f"{algebra.name}[eigenbasis]")
    action = []
    for a in range(n):
        A = module.act(g_vecs[a], F)
        action.append(dense_matmul(Q_inv, dense_matmul(A, Q, F), F))
    if module.kind == "trivial":
        new_mod = make_module("trivial", new_alg)
    else:
        new_mod = make_module("explicit", new_alg, action)
    new_sigmas = tuple(tuple(to_new(s)) for s in sigmas)
    return Grading(F, new_sigmas, tuple(g_labels), tuple(m_labels), new_alg, new_mod,
                   tuple(tuple(r) for r in P), tuple(tuple(r) for r in Q), algebra, module, False)


def cartan_grading(algebra: LieAlgebra, module: GModule, cartan_indices: Sequence[int]) -> Grading:
    return make_grading(algebra, module, [algebra.basis_vector(i) for i in cartan_indices])


def cochain_degree(grading: Grading, basis_element: tuple, n: int | None = None) -> tuple:
    """deg_M(v) - sum_{i in S} deg_g(i), componentwise in the field."""
    S, v = basis_element
    if n is not None and len(S) != n:
        raise GradingError(f"basis element {S} is not an {n}-subset")
    F = grading.field
    out = list(grading.module_degrees[v])
    for i in S:
        d = grading.algebra_degrees[i]
        for s in range(len(out)):
            out[s] -= d[s]
    return tuple(F(x) for x in out)


def degree_buckets(grading: Grading, n: int) -> dict:
    """Degree vector -> sorted list of C^n basis indices of that degree."""
    alg, mod = grading.algebra, grading.module
    m = mod.dim
    F = grading.field
    r = grading.rank
    out: dict = {}
    for k, S in enumerate(subsets(alg.dim, n)):
        base = [0] * r
        for i in S:
            d = grading.algebra_degrees[i]
            for s in range(r):
                base[s] -= d[s]
        for v in range(m):
            dv = grading.module_degrees[v]
            deg = tuple(F(base[s] + dv[s]) for s in range(r))
            out.setdefault(deg, []).append(k * m + v)
    return out


def graded_block(grading: Grading, n: int, degree: tuple, src: list | None = None,
                 dst: list | None = None) -> SparseMatrix:
    """Block of delta_n between degree-``degree`` basis elements.

    Only the rows of the block are assembled.  Any entry reaching a column
    of another degree would break degree preservation and raises
    InternalError.
    """
    alg, mod = grading.algebra, grading.module
    if src is None:
        src = degree_buckets(grading, n).get(degree, [])
    if dst is None:
        dst = degree_buckets(grading, n + 1).get(degree, []) if n + 1 <= alg.dim else []
    m = mod.dim
    cmap = {k: c for c, k in enumerate(src)}
    sidx = subset_index(alg.dim, n)
    dsub = subsets(alg.dim, n + 1)
    keys = [(dsub[k // m], k % m) for k in dst]
    rows = []
    for _, row in direct_rows(alg, mod, n, keys):
        out = {}
        for (S, v), val in row.items():
            col = sidx[S] * m + v
            c = cmap.get(col)
            if c is None:
                raise InternalError(
                    f"coboundary mixes degrees: row of degree {degree} hits C^{n} index {col}")
            out[c] = val
        rows.append(dict(sorted(out.items())))
    return SparseMatrix(grading.field, len(dst), len(src), rows)


def check_degree_preservation(grading: Grading, n: int, matrix: SparseMatrix) -> None:
    """Every nonzero entry of a full delta_n must join equal-degree basis elements."""
    src = {k: d for d, ks in degree_buckets(grading, n).items() for k in ks}
    dst = {k: d for d, ks in degree_buckets(grading, n + 1).items() for k in ks}
    for r, row in enumerate(matrix.rows):
        for c in row:
            if src[c] != dst[r]:
                raise InternalError(f"delta_{n} entry ({r}, {c}) joins degrees {src[c]} and {dst[r]}")


@dataclass
class ReducedComplex:
    grading: Grading
    indices: dict  # n -> C^n indices of degree zero
    matrices: dict  # n -> restricted delta_n

    def dims(self) -> list[int]:
        return [len(self.indices[n]) for n in sorted(self.indices)]


def degree_zero_subcomplex(grading: Grading, max_n: int | None = None) -> ReducedComplex:
    """The subcomplex of degree-zero cochains with its restricted coboundaries."""
    dim = grading.algebra.dim
    if max_n is None:
        max_n = dim
    zero = grading.zero
    indices = {n: degree_buckets(grading, n).get(zero, []) for n in range(0, min(max_n + 1, dim) + 1)}
    matrices = {}
    for n in range(0, max_n + 1):
        src = indices.get(n, [])
        dst = indices.get(n + 1, []) if n + 1 <= dim else []
        matrices[n] = graded_block(grading, n, zero, src, dst)
    return ReducedComplex(grading, {n: indices[n] for n in range(0, max_n + 1) if n in indices}, matrices)


# -- theorem operations ------------------------------------------------------


def cochain_degrees(F: Cochain, grading: Grading) -> dict:
    """Split F by degree vector: degree -> Cochain."""
    parts: dict = {}
    for k, c in F.coeffs.items():
        deg = cochain_degree(grading, F.basis.element(k))
        parts.setdefault(deg, {})[k] = c
    return {d: Cochain(F.basis, co) for d, co in parts.items()}


def _check_space(F: Cochain, grading: Grading):
    if F.basis.algebra is not grading.algebra:
        raise GradingError("cochain must be expressed in the grading's eigenbasis algebra")


def primitive_of_homogeneous_cocycle(F: Cochain, grading: Grading, which: int = 0, r=None) -> Cochain:
    """G = r^{-1} * contract(F, sigma) with delta G == F, for F of degree r != 0.

    Homogeneity and the degree r refer to the single element
    ``grading.sigmas[which]``.
    """
    _check_space(F, grading)
    single = grading.restrict([which])
    parts = cochain_degrees(F, single)
    if len(parts) > 1:
        raise GradingError(f"cochain is not homogeneous: degrees {sorted(parts, key=str)}")
    fld = grading.field
    deg = next(iter(parts))[0] if parts else None
    if r is not None:
        r = fld(r)
        if deg is not None and deg != r:
            raise GradingError(f"cochain has degree {deg}, not {r}")
    else:
        if deg is None:
            raise GradingError("zero cochain has no degree; pass r")
        r = deg
    if r == 0:
        raise GradingError("degree zero: use the contraction-cocycle path instead")
    if F.n == 0:
        if F.is_zero():
            return F
        raise GradingError("a nonzero 0-cochain of nonzero degree cannot be a cocycle")
    if not apply_coboundary(F).is_zero():
        raise GradingError("cochain is not a cocycle")
    G = contract(F, grading.sigmas[which]).scale(fld.inv(r))
    if apply_coboundary(G) != F:
        raise InternalError("delta(r^-1 contract(F, sigma)) != F")
    return G


def iterated_contraction_check(F: Cochain, grading: Grading) -> Cochain:
    """Contract a degree-zero cocycle by sigma_1, then sigma_2, ...; each step stays a cocycle."""
    _check_space(F, grading)
    if F.n < grading.rank:
        raise GradingError(f"cannot contract a {F.n}-cochain {grading.rank} times")
    parts = cochain_degrees(F, grading)
    if any(d != grading.zero for d in parts):
        raise GradingError("cochain is not homogeneous of degree zero")
    if not apply_coboundary(F).is_zero():
        raise GradingError("cochain is not a cocycle")
    out = F
    for s, sig in enumerate(grading.sigmas):
        out = contract(out, sig)
        if not apply_coboundary(out).is_zero():
            raise InternalError(f"contraction by element {s} is not a cocycle")
    return out


def degree_zero_part_of_cocycle(F: Cochain, grading: Grading) -> tuple[Cochain, Cochain]:
    """Return (F_0, P) with F - F_0 == delta P.

    Each homogeneous part F_d with d != 0 contributes d_s^{-1} contract(F_d, sigma_s)
    for the first s with d_s != 0.
    """
    _check_space(F, grading)
    if not apply_coboundary(F).is_zero():
        raise GradingError("cochain is not a cocycle")
    fld = grading.field
    parts = cochain_degrees(F, grading)
    zero_part = parts.pop(grading.zero, Cochain(F.basis, {}))
    if F.n == 0:
        if parts:
            raise InternalError("nonzero-degree 0-cocycle")
        return zero_part, Cochain(F.basis, {})
    prim = Cochain(cochain_basis(F.basis.algebra, F.basis.module, F.n - 1), {})
    for d, Fd in parts.items():
        s = next(i for i, x in enumerate(d) if x != 0)
        prim = prim + contract(Fd, grading.sigmas[s]).scale(fld.inv(d[s]))
    if apply_coboundary(prim) != F - zero_part:
        raise InternalError("F - F_0 != delta(primitive)")
    return zero_part, prim
