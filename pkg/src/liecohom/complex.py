"""The Chevalley-Eilenberg cochain complex C^*(g, M).

Basis of C^n: pairs ``(S, v)`` with ``S`` a strictly increasing n-subset of
algebra indices and ``v`` a module index; subsets in lexicographic order,
module index varying fastest.  ``(S, v)`` denotes the cochain that sends
``(x_S[0], ..., x_S[n-1])`` to ``m_v`` and vanishes on every other sorted
tuple of basis elements.

Two coboundary assemblies live here and share nothing but
:func:`sort_with_sign`:

* :func:`coboundary_matrix_direct` expands the two-sum formula on every
  (n+1)-subset;
* :func:`coboundary_matrix_recursive` peels off the first argument and
  reuses the coboundary one degree down through the contraction.

:func:`apply_coboundary` is a third, column-wise route used for checks on
individual cochains.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .errors import CohomologyError
from .lie import GModule, LieAlgebra
from .linalg import SparseMatrix, determinant


def sort_with_sign(indices: Sequence[int]) -> tuple[tuple | None, int]:
    """Sort ``indices``; return (sorted tuple, permutation sign), or (None, 0) on a repeat."""
    idx = list(indices)
    sign = 1
    n = len(idx)
    for i in range(1, n):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and idx[j - 1] == idx[j]:
            return None, 0
    return tuple(idx), sign


@lru_cache(maxsize=None)
def subsets(dim: int, n: int) -> tuple:
    if n < 0 or n > dim:
        return ()
    return tuple(combinations(range(dim), n))


@lru_cache(maxsize=None)
def subset_index(dim: int, n: int) -> dict:
    return {s: k for k, s in enumerate(subsets(dim, n))}


@dataclass(frozen=True, eq=False)
class CochainBasis:
    algebra: LieAlgebra
    module: GModule
    n: int

    @property
    def dim_module(self) -> int:
        return self.module.dim

    @property
    def subsets(self) -> tuple:
        return subsets(self.algebra.dim, self.n)

    def __len__(self) -> int:
        if self.n < 0 or self.n > self.algebra.dim:
            return 0
        return comb(self.algebra.dim, self.n) * self.module.dim

    @property
    def elements(self) -> list[tuple]:
        m = self.module.dim
        return [(S, v) for S in self.subsets for v in range(m)]

    def index(self, S: tuple, v: int) -> int:
        return subset_index(self.algebra.dim, self.n)[tuple(S)] * self.module.dim + v

    def element(self, k: int) -> tuple:
        m = self.module.dim
        return self.subsets[k // m], k % m

    def label(self, k: int) -> str:
        S, v = self.element(k)
        names = self.algebra.basis_names
        wedge = "^".join(names[i] + "*" for i in S) or "1"
        return wedge if self.module.dim == 1 else f"{wedge} (x) m{v}"


def cochain_basis(algebra: LieAlgebra, module: GModule, n: int) -> CochainBasis:
    if n < 0:
        raise CohomologyError("cochain degree must be non-negative")
    return CochainBasis(algebra, module, n)


@dataclass(eq=False)
class Cochain:
    basis: CochainBasis
    coeffs: dict = dc_field(default_factory=dict)  # basis index -> nonzero raw scalar

    def __post_init__(self):
        F = self.basis.algebra.field
        size = len(self.basis)
        clean = {}
        for k, c in self.coeffs.items():
            if not 0 <= k < size:
                raise CohomologyError(f"cochain index {k} out of range for C^{self.basis.n}")
            c = F(c)
            if c != 0:
                clean[k] = c
        self.coeffs = clean

    @property
    def n(self) -> int:
        return self.basis.n

    @property
    def field(self):
        return self.basis.algebra.field

    @classmethod
    def from_terms(cls, basis: CochainBasis, terms: dict) -> "Cochain":
        """``terms`` maps (S, v) or S (trivial module) to coefficients; S may be unsorted."""
        out: dict = {}
        alg = basis.algebra
        for key, c in terms.items():
            key = tuple(key)
            if key and isinstance(key[0], (tuple, list)):
                S, v = tuple(key[0]), key[1]
            else:
                S, v = key, 0
            S = tuple(alg.index(x) if isinstance(x, str) else x for x in S)
            S2, s = sort_with_sign(S)
            if s == 0:
                continue
            k = basis.index(S2, v)
            out[k] = out.get(k, 0) + s * c
        return cls(basis, out)

    @classmethod
    def from_vector(cls, basis: CochainBasis, vec: Sequence) -> "Cochain":
        return cls(basis, {k: c for k, c in enumerate(vec) if c})

    def to_vector(self) -> list:
        v = [0] * len(self.basis)
        for k, c in self.coeffs.items():
            v[k] = c
        return v

    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self, c) -> "Cochain":
        return Cochain(self.basis, {k: x * c for k, x in self.coeffs.items()})

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return Cochain(self.basis, out)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def _check(self, other):
        if other.n != self.n or other.basis.algebra is not self.basis.algebra:
            raise CohomologyError("cochains live in different spaces")

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"Cochain(n={self.n}, 0)"
        terms = " + ".join(f"{c}*{self.basis.label(k)}" for k, c in sorted(self.coeffs.items()))
        return f"Cochain(n={self.n}, {terms})"


# -- direct assembly --------------------------------------------------------


def _action_entries(module: GModule) -> list[list[list[tuple]]]:
    """entries[t][w] = [(v, a)] with a = A_t[w][v] != 0."""
    out = []
    for A in module.action:
        out.append([[(v, a) for v, a in enumerate(A[w]) if a] for w in range(module.dim)])
    return out


def direct_rows(algebra: LieAlgebra, module: GModule, n: int,
                row_keys: Sequence[tuple] | None = None) -> Iterator[tuple]:
    """Yield ``((T, w), {(S, v): coeff})`` for rows of delta: C^n -> C^{n+1}.

    Evaluates
    sum_i (-1)^i [a_i, F(.., a_i omitted, ..)]
      + sum_{i<j} (-1)^{i+j} F([a_i, a_j], .., a_i, a_j omitted, ..)
    on ``a = x_T``.
    """
    F = algebra.field
    dim, m = algebra.dim, module.dim
    acts = _action_entries(module)
    br = algebra.brackets
    if row_keys is None:
        row_keys = ((T, w) for T in subsets(dim, n + 1) for w in range(m))
    for T, w in row_keys:
        acc: dict = {}
        for i, t in enumerate(T):
            entries = acts[t][w]
            if not entries:
                continue
            rest = T[:i] + T[i + 1:]
            sgn = -1 if i % 2 else 1
            for v, a in entries:
                key = (rest, v)
                acc[key] = acc.get(key, 0) + sgn * a
        for i in range(len(T)):
            for j in range(i + 1, len(T)):
                terms = br[T[i]][T[j]]
                if not terms:
                    continue
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                sgn = -1 if (i + j) % 2 else 1
                for k, c in terms.items():
                    S, s = sort_with_sign((k,) + rest)
                    if s:
                        key = (S, w)
                        acc[key] = acc.get(key, 0) + sgn * s * c
        row = {}
        for key, val in acc.items():
            val = F(val)
            if val != 0:
                row[key] = val
        yield (T, w), row


def _keyed_to_matrix(algebra, module, n, keyed_rows) -> SparseMatrix:
    src = cochain_basis(algebra, module, n)
    dst = cochain_basis(algebra, module, n + 1)
    m = module.dim
    sidx = subset_index(algebra.dim, n)
    rows = [{} for _ in range(len(dst))]
    for (T, w), row in keyed_rows:
        r = dst.index(T, w)
        out = {sidx[S] * m + v: val for (S, v), val in row.items()}
        rows[r] = dict(sorted(out.items()))
    return SparseMatrix(algebra.field, len(dst), len(src), rows)


def coboundary_matrix_direct(algebra: LieAlgebra, module: GModule, n: int) -> SparseMatrix:
    """Matrix of delta: C^n -> C^{n+1} in the standard cochain bases."""
    if n < 0:
        raise CohomologyError("degree must be non-negative")
    return _keyed_to_matrix(algebra, module, n, direct_rows(algebra, module, n))


# -- recursive assembly -----------------------------------------------------


def recursive_keyed_rows(algebra: LieAlgebra, module: GModule, max_n: int) -> Iterator[tuple[int, dict]]:
    """Yield ``(n, {(T, w): {(S, v): coeff}})`` for n = 0..max_n.

    Uses
    (dF)(a_0, .., a_n) = [a_0, F(a_1, .., a_n)]
        + sum_{1<=i<=n} (-1)^i F([a_0, a_i], a_1, .., a_i omitted, .., a_n)
        - (d(contract(F, a_0)))(a_1, .., a_n)
    with the previous level supplying the last term.
    """
    F = algebra.field
    dim, m = algebra.dim, module.dim
    br = algebra.brackets
    action = module.action
    prev: dict = {}
    for n in range(0, max_n + 1):
        level: dict = {}
        for T in subsets(dim, n + 1):
            t0, R = T[0], T[1:]
            for w in range(m):
                acc: dict = {}
                A = action[t0]
                for v in range(m):
                    a = A[w][v]
                    if a:
                        key = (R, v)
                        acc[key] = acc.get(key, 0) + a
                for i in range(1, n + 1):
                    terms = br[t0][T[i]]
                    if not terms:
                        continue
                    others = R[:i - 1] + R[i:]
                    sgn = -1 if i % 2 else 1
                    for k, c in terms.items():
                        S, s = sort_with_sign((k,) + others)
                        if s:
                            key = (S, w)
                            acc[key] = acc.get(key, 0) + sgn * s * c
                if n >= 1:
                    for (S1, v), d in prev[(R, w)].items():
                        # contraction coordinate: (contract F)_(S1, v) = s * F_(sorted(t0, S1), v)
                        S, s = sort_with_sign((t0,) + S1)
                        if s:
                            key = (S, v)
                            acc[key] = acc.get(key, 0) - d * s
                row = {}
                for key, val in acc.items():
                    val = F(val)
                    if val != 0:
                        row[key] = val
                level[(T, w)] = row
        yield n, level
        prev = level


def coboundary_matrix_recursive(algebra: LieAlgebra, module: GModule, n: int) -> SparseMatrix:
    if n < 0:
        raise CohomologyError("degree must be non-negative")
    if n >= algebra.dim:
        return _keyed_to_matrix(algebra, module, n, ())
    for k, level in recursive_keyed_rows(algebra, module, n):
        if k == n:
            return _keyed_to_matrix(algebra, module, n, level.items())
    raise AssertionError("unreachable")


def recursive_coboundaries(algebra: LieAlgebra, module: GModule, max_n: int | None = None):
    """Yield ``(n, matrix)`` from the recursive assembly, one level at a time."""
    if max_n is None:
        max_n = algebra.dim
    top = min(max_n, algebra.dim - 1)
    for n, level in recursive_keyed_rows(algebra, module, top):
        yield n, _keyed_to_matrix(algebra, module, n, level.items())
    for n in range(top + 1, max_n + 1):
        yield n, _keyed_to_matrix(algebra, module, n, ())


# -- cochain-level operations -------------------------------------------------


def contract(F: Cochain, sigma: Sequence) -> Cochain:
    """The (n-1)-cochain (a_1, ..) -> F(sigma, a_1, ..)."""
    if F.n == 0:
        raise CohomologyError("cannot contract a 0-cochain")
    fld = F.field
    sigma = [fld(c) for c in sigma]
    target = cochain_basis(F.basis.algebra, F.basis.module, F.n - 1)
    m = F.basis.module.dim
    out: dict = {}
    for idx, c in F.coeffs.items():
        S, v = F.basis.element(idx)
        for pos, k in enumerate(S):
            sk = sigma[k]
            if not sk:
                continue
            S1 = S[:pos] + S[pos + 1:]
            S2, s = sort_with_sign((k,) + S1)
            assert S2 == S
            j = target.index(S1, v)
            out[j] = out.get(j, 0) + s * sk * c
    return Cochain(target, out)


def evaluate_cochain(F: Cochain, args: Sequence[Sequence]) -> list:
    """Multilinear alternating evaluation; returns module coordinates."""
    if len(args) != F.n:
        raise CohomologyError(f"{F.n}-cochain evaluated on {len(args)} arguments")
    fld = F.field
    out = [0] * F.basis.module.dim
    for idx, c in F.coeffs.items():
        S, v = F.basis.element(idx)
        minor = [[args[j][i] for j in range(F.n)] for i in S]
        d = determinant(minor, fld) if F.n else 1
        if d:
            out[v] += c * d
    return [fld(x) for x in out]


def _bracket_inverse(algebra: LieAlgebra) -> dict:
    """k -> [(a, b, c)] with a < b and c = coefficient of x_k in [x_a, x_b]."""
    inv: dict = {}
    for a, b, terms in algebra.structure_pairs():
        for k, c in terms.items():
            inv.setdefault(k, []).append((a, b, c))
    return inv


def apply_coboundary(F: Cochain) -> Cochain:
    """delta F computed column by column from F's support."""
    alg, mod = F.basis.algebra, F.basis.module
    fld = alg.field
    dst = cochain_basis(alg, mod, F.n + 1)
    if F.n + 1 > alg.dim:
        return Cochain(dst, {})
    inv = _bracket_inverse(alg)
    out: dict = {}

    def add(T, w, val):
        k = dst.index(T, w)
        out[k] = out.get(k, 0) + val

    for idx, c in F.coeffs.items():
        S, v = F.basis.element(idx)
        Sset = set(S)
        for t in range(alg.dim):
            if t in Sset:
                continue
            T, _ = sort_with_sign(S + (t,))
            i = T.index(t)
            sgn = -1 if i % 2 else 1
            A = mod.action[t]
            for w in range(mod.dim):
                a = A[w][v]
                if a:
                    add(T, w, sgn * a * c)
        for pos, k in enumerate(S):
            rest = S[:pos] + S[pos + 1:]
            s = -1 if pos % 2 else 1
            rset = set(rest)
            for a, b, cab in inv.get(k, ()):
                if a in rset or b in rset:
                    continue
                T, _ = sort_with_sign(rest + (a, b))
                i, j = T.index(a), T.index(b)
                sgn = -1 if (i + j) % 2 else 1
                add(T, v, sgn * s * cab * c)
    return Cochain(dst, {k: fld(x) for k, x in out.items()})


def is_cocycle(F: Cochain) -> bool:
    return apply_coboundary(F).is_zero()
