"""Seeded verification suites and family experiments.

Each suite derives one RNG per item from ``derive_seed(seed, index)``, so
results do not depend on how items are scheduled.  Items are plain dicts
(JSON-ready); a suite returns a :class:`SuiteResult` whose ``ok`` flag says
whether every item satisfied the property under test.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from .algebra import multiindex as mi
from .algebra.fields import GF, QQ, Field, format_scalar
from .algebra.poly import Poly, PolyVec
from .dsl import format_operator, operator_grid
from .families import (DEFAULT_BOUND, FamilySpec, Mode, bad_primes, constant_coefficient_family,
                       derive_seed, instantiate, pattern_violations, random_nonzero_poly,
                       random_operator, random_poly, random_polyvec, random_unitriangular,
                       reduce_mod_p, sample, subspace_L_family, triangular_family,
                       universal_family, zero_constant_term_family)
from .jets import base_change_check, jet_map_to_op, op_to_jet_map
from .kernel import (SURROGATE_NOTE, find_plateau, kernel_basis, kernel_dims, kernel_scan,
                     zero_kernel_certificate)
from .operators.actions import InvertiblePolyMatrix, conjugate_glr
from .operators.core import MatrixOperator, ScalarOperator, op_apply, op_compose

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class SuiteResult:
    suite: str
    inputs: dict
    items: List[dict]
    ok: bool
    summary: dict = dc_field(default_factory=dict)

    @property
    def failures(self) -> List[dict]:
        return [it for it in self.items if not it.get("ok", True)]

    def to_report(self) -> dict:
        return {"kind": self.suite, "inputs": self.inputs, "ok": self.ok,
                "summary": self.summary, "results": self.items}


# ---------------------------------------------------------------------------
# parallel map

def thread_count(default: int = 1) -> int:
    """Worker count from JETKERNEL_THREADS (0 = one per CPU)."""
    raw = os.environ.get("JETKERNEL_THREADS", "").strip()
    if not raw:
        return default
    n = int(raw)
    if n < 0:
        raise ValueError("JETKERNEL_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def parallel_map(func: Callable, items: Sequence, workers: Optional[int] = None) -> list:
    """``[func(x) for x in items]``, possibly in worker processes, in input order."""
    workers = thread_count() if workers is None else workers
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * workers))))


def _rng(seed: int, k: int) -> random.Random:
    return random.Random(derive_seed(seed, k))


def _vec_str(v: PolyVec) -> List[str]:
    return [str(p) for p in v]


# ---------------------------------------------------------------------------
# jet correspondence

def _jetcorr_item(args) -> dict:
    seed, k, vectors, vec_degree, bound, maxes = args
    rng = _rng(seed, k)
    r = rng.randint(1, maxes["r"])
    nvars = rng.randint(1, maxes["nvars"])
    N = rng.randint(0, maxes["N"])
    M = rng.randint(0, maxes["M"])
    D = random_operator(rng, r, nvars, N, M, bound)
    T = op_to_jet_map(D, N)
    mismatches = 0
    for _ in range(vectors):
        v = random_polyvec(rng, r, nvars, rng.randint(0, vec_degree), bound)
        if op_apply(D, v) != T(v):
            mismatches += 1
    roundtrip = jet_map_to_op(T) == D
    return {"index": k, "r": r, "nvars": nvars, "N": N, "M": M,
            "operator": operator_grid(D), "mismatches": mismatches,
            "roundtrip": roundtrip, "ok": mismatches == 0 and roundtrip}


def run_jetcorr(samples: int = 100, seed: int = 0, vectors: int = 20, vec_degree: int = 8,
                bound: int = DEFAULT_BOUND, r: int = 2, nvars: int = 2, N: int = 2, M: int = 2,
                workers: Optional[int] = None) -> SuiteResult:
    """Operator action versus jet map composed with the Taylor map."""
    maxes = {"r": r, "nvars": nvars, "N": N, "M": M}
    items = parallel_map(_jetcorr_item,
                         [(seed, k, vectors, vec_degree, bound, maxes) for k in range(samples)],
                         workers)
    bad = sum(1 for it in items if not it["ok"])
    inputs = {"samples": samples, "seed": seed, "bound": bound, "vectors": vectors,
              "vec_degree": vec_degree, **maxes}
    return SuiteResult("jetcorr", inputs, items, bad == 0,
                       {"checked": samples * vectors, "failing_operators": bad})


# ---------------------------------------------------------------------------
# composition and Hasse identities

_COMPOSE_FIELDS = (QQ, GF(2), GF(3), GF(5))


def _compose_item(args) -> dict:
    seed, k, bound = args
    rng = _rng(seed, k)
    field = _COMPOSE_FIELDS[rng.randrange(len(_COMPOSE_FIELDS))]
    r = rng.randint(1, 2)
    nvars = rng.randint(1, 2)
    D1 = random_operator(rng, r, nvars, rng.randint(0, 2), rng.randint(0, 2), bound, field)
    D2 = random_operator(rng, r, nvars, rng.randint(0, 2), rng.randint(0, 2), bound, field)
    v = random_polyvec(rng, r, nvars, rng.randint(0, 5), bound, field)
    ok = op_apply(op_compose(D1, D2), v) == op_apply(D1, op_apply(D2, v))
    return {"index": k, "field": field.name, "r": r, "nvars": nvars, "ok": ok}


def hasse_identity_failures(max_order: int = 3, max_vars: int = 2,
                            fields: Iterable[Field] = (QQ, GF(2), GF(3))) -> List[str]:
    """Check h^[I] h^[J] = C(I+J, I) h^[I+J] for all |I|, |J| <= max_order."""
    failures = []
    for field in fields:
        for nvars in range(1, max_vars + 1):
            indices = mi.monomials_upto(nvars, max_order)
            for I in indices:
                hI = ScalarOperator.hasse(I, nvars, field)
                for J in indices:
                    lhs = hI @ ScalarOperator.hasse(J, nvars, field)
                    IJ = mi.add(I, J)
                    c = Poly.constant(mi.binomial(IJ, I), nvars, field)
                    rhs = ScalarOperator.hasse(IJ, nvars, field, coeff=c)
                    if lhs != rhs:
                        failures.append(f"{field.name}: h{I} h{J}")
    return failures


def run_compose(samples: int = 500, seed: int = 0, bound: int = DEFAULT_BOUND,
                workers: Optional[int] = None) -> SuiteResult:
    items = parallel_map(_compose_item, [(seed, k, bound) for k in range(samples)], workers)
    hasse = hasse_identity_failures()
    bad = sum(1 for it in items if not it["ok"])
    return SuiteResult("compose", {"samples": samples, "seed": seed, "bound": bound},
                       items, bad == 0 and not hasse,
                       {"compose_failures": bad, "hasse_identity_failures": hasse})


# ---------------------------------------------------------------------------
# triangular zero-kernel family

def triangular_sample(seed: int, k: int, bound: int = DEFAULT_BOUND, r: int = 3,
                      nvars: int = 2, N: int = 2, M: int = 2) -> MatrixOperator:
    """Sample k: shape and nonzero diagonal drawn from the item RNG."""
    rng = _rng(seed, k)
    r = rng.randint(1, r)
    nvars = rng.randint(1, nvars)
    N = rng.randint(0, N)
    M = rng.randint(0, M)
    diag = [random_nonzero_poly(rng, nvars, rng.randint(0, M), bound) for _ in range(r)]
    spec = triangular_family(diag, N, M)
    return instantiate(sample(spec, rng.getrandbits(64), bound))


def _lem2411_item(args) -> dict:
    seed, k, bound, nmax, maxes = args
    D = triangular_sample(seed, k, bound, **maxes)
    dims = kernel_dims(D, nmax)
    cert = zero_kernel_certificate(D, nmax)
    return {"index": k, "r": D.r, "nvars": D.nvars, "operator": operator_grid(D),
            "dims": dims, "certificate": None if cert is None else {
                "n": cert.n, "size": len(cert.col_indices),
                "minor_value": format_scalar(cert.minor_value)},
            "ok": not any(dims) and cert is not None}


def run_lem2411(samples: int = 200, seed: int = 7, nmax: int = 12,
                bound: int = DEFAULT_BOUND, r: int = 3, nvars: int = 2, N: int = 2, M: int = 2,
                workers: Optional[int] = None) -> SuiteResult:
    """Lower triangular operators with nonzero order-0 diagonal have zero kernel."""
    maxes = {"r": r, "nvars": nvars, "N": N, "M": M}
    items = parallel_map(_lem2411_item,
                         [(seed, k, bound, nmax, maxes) for k in range(samples)], workers)
    nonzero = sum(1 for it in items if any(it["dims"]))
    uncertified = sum(1 for it in items if it["certificate"] is None)
    return SuiteResult("lem2411", {"samples": samples, "seed": seed, "bound": bound,
                                   "nmax": nmax, **maxes},
                       items, nonzero == 0 and uncertified == 0,
                       {"nonzero_kernels": nonzero, "missing_certificates": uncertified})


# ---------------------------------------------------------------------------
# constant-kernel family (and its perturbation)

def constant_kernel_sample(seed: int, k: int, bound: int = DEFAULT_BOUND, r: int = 3,
                           N: int = 2, M: int = 2, perturb_all: bool = False) -> MatrixOperator:
    rng = _rng(seed, k)
    r = rng.randint(1, r)
    N = rng.randint(1, N)
    M = rng.randint(0, M)
    spec = zero_constant_term_family(r, N, M, perturb_all=perturb_all)
    return instantiate(sample(spec, rng.getrandbits(64), bound))


def _constant_basis(r: int, field: Field = QQ) -> List[PolyVec]:
    return [PolyVec.unit(j, r, Poly.one(1, field)) for j in range(r)]


def _lem1121_item(args) -> dict:
    seed, k, bound, nmax, maxes, perturb_all = args
    D = constant_kernel_sample(seed, k, bound, perturb_all=perturb_all, **maxes)
    report = kernel_scan(D, nmax)
    expected = _constant_basis(D.r, D.field)
    dims = report.dims_list
    bases_ok = all(report.bases[n] == expected for n in range(nmax + 1))
    constants_killed = all(not any(op_apply(D, e)) for e in expected)
    item = {"index": k, "r": D.r, "operator": operator_grid(D), "dims": dims,
            "constants_in_kernel": constants_killed, "basis_is_constants": bases_ok,
            "ok": constants_killed and bases_ok and all(d == D.r for d in dims)}
    if not item["ok"]:
        item["basis"] = [_vec_str(v) for v in report.bases[nmax]]
    return item


def run_lem1121(samples: int = 100, seed: int = 0, nmax: int = 12, bound: int = DEFAULT_BOUND,
                r: int = 3, N: int = 2, M: int = 2, perturb_all: bool = False,
                workers: Optional[int] = None) -> SuiteResult:
    """Kernel is exactly the constant vectors in every degree.

    With ``perturb_all`` every entry (diagonal included) receives free terms
    of order >= 1 on top of the h^[1] diagonal.
    """
    maxes = {"r": r, "N": N, "M": M}
    items = parallel_map(_lem1121_item, [(seed, k, bound, nmax, maxes, perturb_all)
                                         for k in range(samples)], workers)
    bad = sum(1 for it in items if not it["ok"])
    constants = all(it["constants_in_kernel"] for it in items)
    summary = {"mismatches": bad, "constants_always_in_kernel": constants}
    if perturb_all:
        # special points may jump up; the generic value must still be r
        special = [it["index"] for it in items if not it["ok"]]
        upward = all(all(d >= it["r"] for d in it["dims"]) for it in items)
        ok = constants and upward and 10 * len(special) <= samples
        summary.update(special_points=special,
                       generic_fraction=1 - len(special) / max(samples, 1))
    else:
        ok = bad == 0
    name = "prop1124" if perturb_all else "lem1121"
    return SuiteResult(name, {"samples": samples, "seed": seed, "bound": bound, "nmax": nmax,
                              **maxes},
                       items, ok, summary)


def run_prop1124(samples: int = 100, seed: int = 0, nmax: int = 12,
                 bound: int = DEFAULT_BOUND, r: int = 3, N: int = 2, M: int = 2,
                 workers: Optional[int] = None) -> SuiteResult:
    return run_lem1121(samples, seed, nmax, bound, r, N, M, perturb_all=True, workers=workers)


# ---------------------------------------------------------------------------
# genericity of the universal and constant-coefficient families

def family_spec(mode, r: int, nvars: int, N: int, M: int, rng: Optional[random.Random] = None,
                bound: int = DEFAULT_BOUND, field: Field = QQ) -> FamilySpec:
    """FamilySpec for ``mode``; the triangular diagonal is drawn from ``rng``."""
    mode = Mode.parse(mode)
    if mode is Mode.UNIVERSAL:
        return universal_family(r, nvars, N, M, field)
    if mode is Mode.CONSTANT:
        return constant_coefficient_family(r, nvars, N, field)
    if mode is Mode.TRIANGULAR:
        rng = rng or random.Random(0)
        return triangular_family([random_nonzero_poly(rng, nvars, M, bound, field)
                                  for _ in range(r)], N, M)
    if mode is Mode.ZERO_CONSTANT_TERM:
        if nvars != 1:
            raise ValueError("zero-constant-term family is defined for nvars = 1")
        return zero_constant_term_family(r, N, M, field=field)
    return subspace_L_family(r, nvars, N, M, field)


def _scan_item(args) -> dict:
    seed, k, mode, shape, bound, nmax, plateau = args
    rng = _rng(seed, k)
    spec = family_spec(mode, shape["r"], shape["nvars"], shape["N"], shape["M"], rng, bound)
    point = sample(spec, rng.getrandbits(64), bound)
    D = instantiate(point)
    dims = kernel_dims(D, nmax)
    item = {"index": k, "sample_seed": point.seed, "operator": operator_grid(D), "dims": dims,
            "stabilized_at": find_plateau(dims, plateau),
            "pattern_ok": not pattern_violations(spec, D)}
    if dims[-1]:
        item["kernel_vector"] = _vec_str(kernel_basis(D, nmax)[0])
    return item


def scan_family(mode, r: int, nvars: int, N: int, M: int, samples: int, seed: int = 0,
                bound: int = DEFAULT_BOUND, nmax: int = 12, plateau: int = 3,
                workers: Optional[int] = None) -> SuiteResult:
    """Kernel dimensions of seeded samples of one family."""
    mode = Mode.parse(mode)
    shape = {"r": r, "nvars": nvars, "N": N, "M": M}
    items = parallel_map(_scan_item, [(seed, k, mode.value, shape, bound, nmax, plateau)
                                      for k in range(samples)], workers)
    zero = sum(1 for it in items if not it["dims"][-1])
    return SuiteResult("scan-family", {"mode": mode.value, **shape, "samples": samples,
                                       "seed": seed, "bound": bound, "nmax": nmax,
                                       "plateau": plateau},
                       items, all(it["pattern_ok"] for it in items),
                       {"zero_kernel": zero, "nonzero_kernel": samples - zero})


def run_genericity(samples: int = 50, seed: int = 0, nmax: int = 25, bound: int = DEFAULT_BOUND,
                   r: int = 2, nvars: int = 1, N: int = 2, M: int = 2,
                   threshold: Optional[int] = None,
                   workers: Optional[int] = None) -> SuiteResult:
    """Universal and constant-coefficient samples: count zero kernels.

    ``threshold`` defaults to 98% of ``samples`` (49 of 50).
    """
    if threshold is None:
        threshold = math.ceil(0.98 * samples)
    uni = scan_family(Mode.UNIVERSAL, r, nvars, N, M, samples, seed, bound, nmax,
                      workers=workers)
    const = scan_family(Mode.CONSTANT, r, nvars, N, 0, samples, seed, bound, nmax,
                        workers=workers)
    zu, zc = uni.summary["zero_kernel"], const.summary["zero_kernel"]
    items = ([dict(it, mode="universal") for it in uni.items]
             + [dict(it, mode="constant") for it in const.items])
    return SuiteResult("genericity", {"samples": samples, "seed": seed, "bound": bound,
                                      "nmax": nmax, "r": r, "nvars": nvars, "N": N, "M": M,
                                      "threshold": threshold},
                       items, zu >= threshold and zc >= threshold,
                       {"universal_zero": zu, "constant_zero": zc})


# ---------------------------------------------------------------------------
# subspace L

def _subspaceL_item(args) -> dict:
    seed, k, shape, bound, nmax = args
    rng = _rng(seed, k)
    spec = subspace_L_family(shape["r"], shape["nvars"], shape["N"], shape["M"])
    D = instantiate(sample(spec, rng.getrandbits(64), bound))
    dims = kernel_dims(D, nmax)
    r, n = D.r, D.nvars
    # direct check that x_1^a e_j is annihilated
    killed = all(not any(op_apply(D, PolyVec.unit(j, r, Poly.monomial(mi.unit_index(n, 0, a),
                                                                     n))))
                 for a in range(nmax + 1) for j in range(r))
    bound_ok = all(d >= r * (m + 1) for m, d in enumerate(dims))
    return {"index": k, "operator": operator_grid(D), "dims": dims,
            "x1_vectors_killed": killed, "ok": killed and bound_ok}


def run_subspaceL(samples: int = 50, seed: int = 0, nmax: int = 8, bound: int = DEFAULT_BOUND,
                  r: int = 2, nvars: int = 2, N: int = 2, M: int = 2,
                  workers: Optional[int] = None) -> SuiteResult:
    """dims(n) >= r (n + 1): all vectors in x_1 alone lie in the kernel."""
    shape = {"r": r, "nvars": nvars, "N": N, "M": M}
    items = parallel_map(_subspaceL_item, [(seed, k, shape, bound, nmax)
                                           for k in range(samples)], workers)
    bad = sum(1 for it in items if not it["ok"])
    return SuiteResult("subspaceL", {"samples": samples, "seed": seed, "bound": bound,
                                     "nmax": nmax, **shape},
                       items, bad == 0, {"violations": bad})


# ---------------------------------------------------------------------------
# conjugation transport

def conjugation_pair(seed: int, k: int, bound: int = DEFAULT_BOUND):
    """(D, A): D alternates between subspace-L and constant-kernel samples."""
    rng = _rng(seed, k)
    if k % 2 == 0:
        spec = subspace_L_family(2, 2, rng.randint(1, 2), rng.randint(0, 1))
    else:
        spec = zero_constant_term_family(rng.randint(2, 3), rng.randint(1, 2), rng.randint(0, 2))
    D = instantiate(sample(spec, rng.getrandbits(64), bound))
    A = random_unitriangular(rng, D.r, D.nvars, degree=rng.randint(1, 2), bound=3)
    return D, A


def _conjugation_item(args) -> dict:
    seed, k, bound, n = args
    D, A = conjugation_pair(seed, k, bound)
    AD = conjugate_glr(D, A)
    basis = kernel_basis(D, n)
    transported = [A.apply_inverse(v) for v in basis]
    killed = all(not any(op_apply(AD, w)) for w in transported)
    d_A = A.inverse_degree
    dim_after = len(kernel_basis(AD, n + d_A)) if basis else 0
    return {"index": k, "r": D.r, "nvars": D.nvars, "operator": operator_grid(D),
            "A": [[str(p) for p in row] for row in A.forward],
            "conjugated": operator_grid(AD), "kernel_dim": len(basis),
            "transported_dim": dim_after,
            "ok": killed and dim_after >= len(basis)}


def worked_conjugation() -> str:
    """diag(h, h) conjugated by [[1, 0], [x, 1]], printed in the DSL."""
    h = ScalarOperator.hasse((1,), 1)
    D = MatrixOperator.diagonal([h, h])
    A = InvertiblePolyMatrix.unitriangular({(1, 0): Poly.variable(0, 1)}, 2, 1)
    return format_operator(conjugate_glr(D, A))


WORKED_CONJUGATION_EXPECTED = "h(1,1); 0\n1; h(1,1)"


def run_conjugation(samples: int = 50, seed: int = 0, n: int = 3, bound: int = DEFAULT_BOUND,
                    workers: Optional[int] = None) -> SuiteResult:
    items = parallel_map(_conjugation_item, [(seed, k, bound, n) for k in range(samples)],
                         workers)
    worked = worked_conjugation()
    bad = sum(1 for it in items if not it["ok"])
    return SuiteResult("conjugation", {"samples": samples, "seed": seed, "bound": bound, "n": n},
                       items, bad == 0 and worked == WORKED_CONJUGATION_EXPECTED,
                       {"violations": bad, "worked_example": worked})


# ---------------------------------------------------------------------------
# reduction mod p

def modp_compare(D: MatrixOperator, primes: Sequence[int], nmax: int) -> dict:
    """Q-dims against GF(p)-dims at each degree; bad primes are skipped."""
    dims_q = kernel_dims(D, nmax)
    bad = bad_primes(D)
    per_prime = {}
    ok = True
    for p in primes:
        if p in bad:
            per_prime[str(p)] = {"skipped": "bad prime"}
            continue
        dims_p = kernel_dims(reduce_mod_p(D, p), nmax)
        good = all(a >= b for a, b in zip(dims_p, dims_q))
        ok = ok and good
        per_prime[str(p)] = {"dims": dims_p, "ok": good,
                             "jumps": [n for n in range(nmax + 1) if dims_p[n] > dims_q[n]]}
    return {"dims_Q": dims_q, "bad_primes": bad, "primes": per_prime, "ok": ok}


def _modp_item(args) -> dict:
    seed, k, bound, nmax, primes = args
    D = constant_kernel_sample(seed, k, bound)
    out = modp_compare(D, primes, nmax)
    out["ok"] = out["ok"] and any(out["dims_Q"])
    return dict({"index": k, "operator": operator_grid(D)}, **out)


def run_modp(samples: int = 30, seed: int = 0, nmax: int = 6,
             primes: Sequence[int] = DEFAULT_PRIMES, bound: int = DEFAULT_BOUND,
             workers: Optional[int] = None) -> SuiteResult:
    primes = list(primes)
    items = parallel_map(_modp_item, [(seed, k, bound, nmax, primes) for k in range(samples)],
                         workers)
    bad = sum(1 for it in items if not it["ok"])
    bad_set = sorted({p for it in items for p in it["bad_primes"]})
    return SuiteResult("modp", {"samples": samples, "seed": seed, "bound": bound, "nmax": nmax,
                                "primes": primes},
                       items, bad == 0, {"violations": bad, "bad_set": bad_set})


# ---------------------------------------------------------------------------
# characteristic p filtration

def run_charp(p: int = 3, nmax: int = 7) -> SuiteResult:
    """h^[1] over GF(p): x^k is killed exactly when p divides k."""
    D = MatrixOperator.scalar(ScalarOperator.hasse((1,), 1, GF(p)))
    report = kernel_scan(D, nmax)
    oracle = [sum(1 for k in range(n + 1) if k % p == 0) for n in range(nmax + 1)]
    item = {"operator": operator_grid(D), "dims": report.dims_list, "expected": oracle,
            "basis": [_vec_str(v) for v in report.bases[nmax]],
            "stabilized_at": report.stabilized_at, "ok": report.dims_list == oracle}
    return SuiteResult("charp", {"p": p, "nmax": nmax}, [item], item["ok"],
                       {"dims": report.dims_list})


# ---------------------------------------------------------------------------
# base change of jet presentations

def relator_set(seed: int, k: int, bound: int = DEFAULT_BOUND) -> tuple:
    rng = _rng(seed, k)
    nvars = rng.randint(1, 2)
    count = rng.randint(1, 3)
    rels = [random_poly(rng, nvars, rng.randint(1, 3), bound) for _ in range(count)]
    return rels, nvars


def _basechange_item(args) -> dict:
    seed, k, bound, primes, max_order = args
    rels, nvars = relator_set(seed, k, bound)
    N = _rng(seed, k).randint(0, max_order)
    checks = {str(p): base_change_check(rels, N, p, nvars).equal for p in primes}
    return {"index": k, "nvars": nvars, "N": N, "relators": [str(f) for f in rels],
            "equal": checks, "ok": all(checks.values())}


def run_basechange(samples: int = 20, seed: int = 0, primes: Sequence[int] = (2, 3, 5),
                   max_order: int = 3, bound: int = DEFAULT_BOUND,
                   workers: Optional[int] = None) -> SuiteResult:
    primes = list(primes)
    items = parallel_map(_basechange_item, [(seed, k, bound, primes, max_order)
                                            for k in range(samples)], workers)
    bad = sum(1 for it in items if not it["ok"])
    return SuiteResult("basechange", {"samples": samples, "seed": seed, "bound": bound,
                                      "primes": primes, "max_order": max_order},
                       items, bad == 0, {"disagreements": bad})


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "jetcorr": run_jetcorr,
    "compose": run_compose,
    "lem2411": run_lem2411,
    "lem1121": run_lem1121,
    "prop1124": run_prop1124,
    "genericity": run_genericity,
    "subspaceL": run_subspaceL,
    "conjugation": run_conjugation,
    "modp": run_modp,
    "charp": run_charp,
    "basechange": run_basechange,
}

FIELD_NOTE = SURROGATE_NOTE
