"""Lie algebras given by structure constants, their modules, and builders.

Structure constants are stored as a full ``dim x dim`` table of sparse
dicts: ``brackets[i][j] == {k: c}`` means ``[x_i, x_j] = sum c * x_k``.
Builders for the sl(N) family derive every constant from explicit matrix
commutators over the requested field, so reduction mod p happens for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .errors import ValidationError
from .fields import Field

Vector = list  # dense coefficient vector of raw field values


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    field: Field
    dim: int
    basis_names: tuple
    brackets: tuple  # brackets[i][j] -> dict {k: coeff}
    name: str = "custom"

    def bracket_basis(self, i: int, j: int) -> dict:
        return self.brackets[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        F = self.field
        out = [0] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            row = self.brackets[i]
            for j, b in ys:
                for k, c in row[j].items():
                    out[k] += a * b * c
        return [F(v) for v in out]

    def ad(self, x: Sequence) -> list[list]:
        """Matrix of ad x; column j is [x, x_j]."""
        F = self.field
        mat = [[0] * self.dim for _ in range(self.dim)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(self.dim):
                for k, c in self.brackets[i][j].items():
                    mat[k][j] += a * c
        return [[F(v) for v in r] for r in mat]

    def basis_vector(self, i: int) -> Vector:
        v = [0] * self.dim
        v[i] = 1
        return v

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    def element(self, terms: Mapping[str, object]) -> Vector:
        v = [0] * self.dim
        for name, c in terms.items():
            v[self.index(name)] = self.field(c)
        return v

    def jacobi_violations(self, limit: int | None = None) -> list[tuple]:
        """Triples i<j<k on which the Jacobi sum is nonzero."""
        bad = []
        for i, j, k in combinations(range(self.dim), 3):
            if any(self._jacobi(i, j, k)):
                bad.append((i, j, k))
                if limit is not None and len(bad) >= limit:
                    break
        return bad

    def _jacobi(self, i: int, j: int, k: int) -> Vector:
        e = self.basis_vector
        a, b, c = e(i), e(j), e(k)
        F = self.field
        s1 = self.bracket(a, self.bracket(b, c))
        s2 = self.bracket(b, self.bracket(c, a))
        s3 = self.bracket(c, self.bracket(a, b))
        return [F(x + y + z) for x, y, z in zip(s1, s2, s3)]

    def structure_pairs(self) -> list[tuple]:
        """(i, j, {k: c}) for i < j with a nonzero bracket."""
        return [(i, j, self.brackets[i][j])
                for i in range(self.dim) for j in range(i + 1, self.dim)
                if self.brackets[i][j]]


def make_algebra(field: Field, dim: int, brackets: Mapping, names: Sequence[str] | None = None,
                 name: str = "custom") -> LieAlgebra:
    """Build and validate an algebra from its upper-triangular brackets.

    ``brackets`` maps ``(i, j)`` with ``i < j`` to ``{k: coeff}``; the lower
    half is filled in by antisymmetry and Jacobi is checked on every triple.
    """
    if names is None:
        names = [f"x{i}" for i in range(dim)]
    names = tuple(names)
    if len(names) != dim:
        raise ValidationError(f"{len(names)} basis names for dimension {dim}")
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for (i, j), terms in brackets.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValidationError(f"bracket index ({i}, {j}) out of range for dim {dim}")
        if i >= j:
            raise ValidationError(f"bracket ({i}, {j}) must have i < j")
        vals = {}
        for k, c in dict(terms).items():
            if not 0 <= k < dim:
                raise ValidationError(f"bracket ({i}, {j}) has term index {k} out of range")
            c = field(c)
            if c != 0:
                vals[k] = c
        table[i][j] = vals
        table[j][i] = {k: field(-c) for k, c in vals.items()}
    alg = LieAlgebra(field, dim, names, tuple(tuple(r) for r in table), name)
    bad = alg.jacobi_violations(limit=1)
    if bad:
        i, j, k = bad[0]
        raise ValidationError(
            f"Jacobi identity fails on ({names[i]}, {names[j]}, {names[k]}) = indices {bad[0]}")
    return alg


@dataclass(frozen=True, eq=False)
class GModule:
    dim: int
    action: tuple  # action[i] is a dim x dim matrix: m -> [x_i, m]
    kind: str = "explicit"

    def act(self, x: Sequence, field: Field) -> list[list]:
        """Matrix of the action of the algebra element ``x``."""
        out = [[0] * self.dim for _ in range(self.dim)]
        for i, a in enumerate(x):
            if a:
                A = self.action[i]
                for r in range(self.dim):
                    for c in range(self.dim):
                        if A[r][c]:
                            out[r][c] += a * A[r][c]
        return [[field(v) for v in r] for r in out]


def representation_violations(algebra: LieAlgebra, action: Sequence, limit: int | None = None):
    """Pairs (i, j) where A_i A_j - A_j A_i differs from sum_k c_ij^k A_k."""
    F = algebra.field
    d = len(action[0]) if action else 0
    bad = []
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            Ai, Aj = action[i], action[j]
            lhs = [[sum(Ai[r][t] * Aj[t][c] - Aj[r][t] * Ai[t][c] for t in range(d))
                    for c in range(d)] for r in range(d)]
            for k, coef in algebra.brackets[i][j].items():
                Ak = action[k]
                for r in range(d):
                    for c in range(d):
                        lhs[r][c] -= coef * Ak[r][c]
            if any(F(v) != 0 for row in lhs for v in row):
                bad.append((i, j))
                if limit is not None and len(bad) >= limit:
                    return bad
    return bad


def make_module(spec: str, algebra: LieAlgebra, matrices: Sequence | None = None) -> GModule:
    """``spec`` is "trivial", "adjoint" or "explicit" (with ``matrices``)."""
    F = algebra.field
    n = algebra.dim
    if spec == "trivial":
        return GModule(1, tuple(((0,),) for _ in range(n)), "trivial")
    if spec == "adjoint":
        action = [algebra.ad(algebra.basis_vector(i)) for i in range(n)]
        kind = "adjoint"
    elif spec == "explicit":
        if matrices is None or len(matrices) != n:
            raise ValidationError(f"explicit module needs {n} action matrices")
        d = len(matrices[0])
        for A in matrices:
            if len(A) != d or any(len(r) != d for r in A):
                raise ValidationError("action matrices must be square of one size")
        action = [[[F(v) for v in r] for r in A] for A in matrices]
        kind = "explicit"
    else:
        raise ValidationError(f"unknown module spec {spec!r}")
    bad = representation_violations(algebra, action, limit=1)
    if bad:
        i, j = bad[0]
        raise ValidationError(
            f"representation law fails for pair ({algebra.basis_names[i]}, "
            f"{algebra.basis_names[j]}) = indices {bad[0]}")
    return GModule(len(action[0]), tuple(tuple(tuple(r) for r in A) for A in action), kind)


# -- builders -------------------------------------------------------------


@dataclass(frozen=True)
class CartanTag:
    indices: tuple = ()


def _unit(N: int, i: int, j: int) -> dict:
    return {(i, j): 1}


def _h(N: int, i: int) -> dict:
    return {(i, i): 1, (i + 1, i + 1): -1}


def _commutator(a: dict, b: dict, field: Field) -> dict:
    out: dict = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + x * y
    for (i, k), y in b.items():
        for (k2, j), x in a.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) - y * x
    out = {key: field(v) for key, v in out.items()}
    return {key: v for key, v in out.items() if v != 0}


def _sl_coordinates(mat: dict, N: int, index: dict, field: Field) -> dict:
    """Coordinates of a trace-zero matrix in the h_i / e_ij basis."""
    coords: dict = {}
    diag = [mat.get((i, i), 0) for i in range(N)]
    running = 0
    for i in range(N - 1):
        running += diag[i]
        c = field(running)
        if c != 0:
            coords[("h", i)] = c
    if field(running + diag[N - 1]) != 0:
        raise ValidationError("commutator is not trace zero")
    for (i, j), v in mat.items():
        if i != j and v != 0:
            coords[("e", i, j)] = v
    out = {}
    for key, v in coords.items():
        if key not in index:
            raise ValidationError(f"bracket leaves the subalgebra (component {key})")
        out[index[key]] = v
    return out


def _e_name(N: int, i: int, j: int) -> str:
    return f"e{i + 1}{j + 1}" if N < 10 else f"e{i + 1},{j + 1}"


def _matrix_algebra(N: int, keys: list, field: Field, name: str) -> LieAlgebra:
    mats, names = [], []
    for key in keys:
        if key[0] == "h":
            mats.append(_h(N, key[1]))
            names.append(f"h{key[1] + 1}")
        else:
            mats.append(_unit(N, key[1], key[2]))
            names.append(_e_name(N, key[1], key[2]))
    index = {k: n for n, k in enumerate(keys)}
    brackets = {}
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            comm = _commutator(mats[a], mats[b], field)
            coords = _sl_coordinates(comm, N, index, field)
            if coords:
                brackets[(a, b)] = coords
    return make_algebra(field, len(keys), brackets, names, name)


BUILTIN_NAMES = ("sl", "borel_sl", "nilpotent_sl", "cartan_sl", "abelian", "heisenberg")


def builtin_algebra(name: str, param: int, field: Field) -> tuple[LieAlgebra, CartanTag]:
    """Build one of the named algebras.

    Basis order for the sl family: h_1..h_{N-1}, then e_ij (i < j) in
    lexicographic order, then (for sl only) e_ji (i < j) in the same order.
    ``heisenberg`` with parameter n has dimension 2n + 1 and
    [x_i, x_{n+i}] = x_{2n}.
    """
    name = name.replace("-", "_")
    if name in ("sl", "borel_sl", "nilpotent_sl", "cartan_sl"):
        N = param
        if N < 2:
            raise ValidationError(f"{name} needs N >= 2, got {N}")
        hs = [("h", i) for i in range(N - 1)]
        pos = [("e", i, j) for i in range(N) for j in range(i + 1, N)]
        neg = [("e", j, i) for i in range(N) for j in range(i + 1, N)]
        keys = {"sl": hs + pos + neg, "borel_sl": hs + pos,
                "nilpotent_sl": pos, "cartan_sl": hs}[name]
        alg = _matrix_algebra(N, keys, field, f"{name}({N})")
        tag = CartanTag(tuple(range(N - 1))) if name != "nilpotent_sl" else CartanTag()
        return alg, tag
    if name == "abelian":
        if param < 1:
            raise ValidationError("abelian needs dimension >= 1")
        return make_algebra(field, param, {}, name=f"abelian({param})"), CartanTag()
    if name == "heisenberg":
        n = param
        if n < 1:
            raise ValidationError("heisenberg needs n >= 1")
        brackets = {(i, n + i): {2 * n: 1} for i in range(n)}
        return make_algebra(field, 2 * n + 1, brackets, name=f"heisenberg({n})"), CartanTag()
    raise ValidationError(f"unknown builtin algebra {name!r}; choose from {BUILTIN_NAMES}")


def check_cartan_tag(algebra: LieAlgebra, tag: CartanTag) -> None:
    for a, b in combinations(tag.indices, 2):
        if algebra.brackets[a][b]:
            raise ValidationError(
                f"Cartan generators {algebra.basis_names[a]} and {algebra.basis_names[b]} do not commute")
