"""Betti numbers, invariants and the Borel cohomology check."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field as dc_field
from math import comb
from typing import Sequence

from .complex import coboundary_matrix_direct, cochain_basis
from .fields import Field
from .grading import Grading, cartan_grading, degree_buckets, degree_zero_subcomplex, graded_block
from .lie import GModule, LieAlgebra, builtin_algebra, make_module
from .linalg import IncrementalBasis, SparseMatrix, kernel_basis, rank


@dataclass
class DegreeRecord:
    n: int
    dim_C_full: int
    dim_C_reduced: int | None
    dim_Z: int
    dim_B: int
    betti: int


@dataclass
class CohomologyReport:
    algebra: dict
    module: dict
    field: str
    mode: str
    per_n: list
    representatives: dict | None = None  # n -> list of {index: scalar-string} on the full basis
    timings_ms: dict = dc_field(default_factory=dict)  # str(n) or "setup" -> ms

    @property
    def betti(self) -> list[int]:
        return [r.betti for r in self.per_n]

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "algebra": self.algebra,
            "module": self.module,
            "field": self.field,
            "mode": self.mode,
            "per_n": [asdict(r) for r in self.per_n],
        }
        if self.representatives is not None:
            out["representatives"] = {str(n): reps for n, reps in self.representatives.items()}
        if timings:
            out["timings_ms"] = dict(self.timings_ms)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CohomologyReport":
        reps = data.get("representatives")
        if reps is not None:
            reps = {int(n): v for n, v in reps.items()}
        return cls(
            algebra=data["algebra"],
            module=data["module"],
            field=data["field"],
            mode=data["mode"],
            per_n=[DegreeRecord(**r) for r in data["per_n"]],
            representatives=reps,
            timings_ms=dict(data.get("timings_ms", {})),
        )

    def same_content(self, other: "CohomologyReport") -> bool:
        return self.to_dict(timings=False) == other.to_dict(timings=False)


def describe_algebra(algebra: LieAlgebra) -> dict:
    return {"name": algebra.name, "dim": algebra.dim, "basis": list(algebra.basis_names)}


def describe_module(module: GModule) -> dict:
    return {"kind": module.kind, "dim": module.dim}


def _representatives(delta_prev: SparseMatrix | None, delta_n: SparseMatrix, field: Field) -> list[list]:
    """Cocycles whose classes form a basis of H^n."""
    span = IncrementalBasis(field)
    if delta_prev is not None:
        for col in delta_prev.columns():
            if col:
                span.add(dict(col))
    reps = []
    for v in kernel_basis(delta_n):
        if span.add(v):
            reps.append(v)
    return reps


def betti_numbers(algebra: LieAlgebra, module: GModule, grading: Grading | None = None,
                  max_n: int | None = None, witness: bool = False) -> CohomologyReport:
    """Betti numbers from the full complex, or the degree-zero subcomplex when graded."""
    F = algebra.field
    dim = algebra.dim
    if max_n is None:
        max_n = dim
    max_n = min(max_n, dim)
    mode = "full" if grading is None else "reduced"
    timings: dict = {}
    ranks: dict = {}
    dims_reduced: dict = {}
    reduced = None
    if grading is not None:
        t0 = time.perf_counter()
        reduced = degree_zero_subcomplex(grading, max_n)
        setup = (time.perf_counter() - t0) * 1000
    prev = None
    per_n, reps = [], {}
    for n in range(0, max_n + 1):
        t0 = time.perf_counter()
        if reduced is None:
            mat = coboundary_matrix_direct(algebra, module, n)
            dim_c = len(cochain_basis(algebra, module, n))
        else:
            mat = reduced.matrices[n]
            dim_c = len(reduced.indices[n])
            dims_reduced[n] = dim_c
        ranks[n] = rank(mat)
        rank_prev = ranks.get(n - 1, 0)
        dim_z = dim_c - ranks[n]
        rec = DegreeRecord(n, comb(dim, n) * module.dim, dims_reduced.get(n), dim_z, rank_prev,
                           dim_z - rank_prev)
        if witness:
            vecs = _representatives(prev, mat, F)
            idx = None if reduced is None else reduced.indices[n]
            reps[n] = [{str(k if idx is None else idx[k]): F.format(c) for k, c in enumerate(v) if c}
                       for v in vecs]
        per_n.append(rec)
        timings[str(n)] = round((time.perf_counter() - t0) * 1000, 3)
        prev = mat if witness else None
    if reduced is not None:
        timings["setup"] = round(setup, 3)
    alg_desc = describe_algebra(algebra)
    if grading is not None and not grading.identity:
        alg_desc["eigenbasis"] = True
    return CohomologyReport(alg_desc, describe_module(module), str(F), mode, per_n,
                            reps if witness else None, timings)


def invariants(algebra: LieAlgebra, module: GModule) -> list[list]:
    """Basis of M^g: the common kernel of all action matrices."""
    rows = []
    for A in module.action:
        rows.extend(list(r) for r in A)
    if not rows:
        return [[1 if i == j else 0 for j in range(module.dim)] for i in range(module.dim)]
    return kernel_basis(SparseMatrix.from_dense(algebra.field, rows, module.dim))


def graded_betti(grading: Grading, n: int) -> dict:
    """Nonzero Betti numbers of H^n split by degree vector."""
    dim = grading.algebra.dim
    if n < 0 or n > dim:
        return {}
    here = degree_buckets(grading, n)
    below = degree_buckets(grading, n - 1) if n >= 1 else {}
    above = degree_buckets(grading, n + 1) if n + 1 <= dim else {}
    out = {}
    for deg, idx in here.items():
        r_n = rank(graded_block(grading, n, deg, idx, above.get(deg, [])))
        r_prev = 0
        if n >= 1 and deg in below:
            r_prev = rank(graded_block(grading, n - 1, deg, below[deg], idx))
        b = len(idx) - r_n - r_prev
        if b:
            out[deg] = b
    return out


@dataclass
class BorelVerdict:
    N: int
    field: str
    in_hypotheses: bool
    expected: list
    betti_full: list | None
    betti_reduced: list | None
    per_n: list  # True/False per n, None outside the hypotheses
    passed: bool | None

    def to_dict(self) -> dict:
        return asdict(self)


def verify_borel_theorem(N: int, field: Field, modes: Sequence[str] = ("full", "reduced")) -> BorelVerdict:
    """Compare H^n(b, k) with the exterior powers of the Cartan for borel_sl(N).

    Outside p = 0 or p > N the computed numbers are recorded without a verdict.
    """
    alg, tag = builtin_algebra("borel_sl", N, field)
    mod = make_module("trivial", alg)
    expected = [comb(N - 1, n) for n in range(alg.dim + 1)]
    full = betti_numbers(alg, mod).betti if "full" in modes else None
    red = None
    if "reduced" in modes:
        red = betti_numbers(alg, mod, cartan_grading(alg, mod, tag.indices)).betti
    ok_hyp = field.p == 0 or field.p > N
    if not ok_hyp:
        return BorelVerdict(N, str(field), False, expected, full, red, [None] * len(expected), None)
    per_n = []
    for n in range(len(expected)):
        ok = True
        for seq in (full, red):
            if seq is not None and seq[n] != expected[n]:
                ok = False
        per_n.append(ok)
    return BorelVerdict(N, str(field), True, expected, full, red, per_n, all(per_n))
