"""Dense real matrix kernels and eigenvalue-ordering classifiers.

Conventions used throughout:

* eigenvalues sort by (modulus, real part, imaginary part), all descending;
* exterior powers are written in the basis of i-element index subsets in
  lexicographic order, entry (S, T) being the minor with rows S, columns T;
* classification is relative: a gap at index i means
  ``moduli[i-1] > (1 + tol) * moduli[i]``.

The symbolic spectrum algebra (union / tensor / wedge on literal value
multisets) is the independent oracle the numerical kernels are tested
against.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError, NumericalError, SizeError

MAX_DIM = 2000
DEFAULT_TOL = 1e-6
# Above this exterior dimension, classification switches from the dense
# minor matrix to subset products of eigenvalues.
DENSE_EXTERIOR_LIMIT = 1024


def matrix_hash(m: np.ndarray) -> str:
    data = np.ascontiguousarray(m)
    return hashlib.sha256(data.tobytes()).hexdigest()[:16]


def _as_square(m, *, allow_complex: bool = False) -> np.ndarray:
    a = np.asarray(m, dtype=complex if allow_complex else float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise SizeError(f"dimension {a.shape[0]} exceeds the cap {MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return a


def eigenvalue_sort_key(z: complex):
    return (-abs(z), -z.real, -z.imag)


def sort_eigenvalues(values: Iterable[complex]) -> tuple[complex, ...]:
    return tuple(sorted((complex(v) for v in values), key=eigenvalue_sort_key))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[complex, ...]
    moduli: tuple[float, ...]
    singular_values: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "moduli": list(self.moduli),
            "singular_values": list(self.singular_values),
        }


def spectrum(m) -> Spectrum:
    """Eigenvalues and singular values, both in decreasing order."""
    a = _as_square(m)
    try:
        eig = np.linalg.eigvals(a)
        sv = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"dense solver failed: {exc}",
                             matrix_hash=matrix_hash(a)) from exc
    eigs = sort_eigenvalues(eig)
    return Spectrum(
        eigenvalues=eigs,
        moduli=tuple(abs(z) for z in eigs),
        singular_values=tuple(float(s) for s in sv),
    )


def top_eigenvalue_2x2_unimodular(m: np.ndarray) -> complex:
    """Largest eigenvalue of a 2x2 real matrix whose determinant is 1 by
    construction.  Computed from the trace alone, which stays accurate even
    when the entries dwarf the eigenvalues (conjugation-heavy words)."""
    t = float(m[0, 0] + m[1, 1])
    disc = t * t - 4.0
    if disc >= 0.0:
        root = math.sqrt(disc)
        lam = (t + root) / 2.0 if t >= 0 else (t - root) / 2.0
        return complex(lam)
    return complex(t / 2.0, math.sqrt(-disc) / 2.0)


def kronecker(a, b) -> np.ndarray:
    ma, mb = _as_square(a), _as_square(b)
    if ma.shape[0] * mb.shape[0] > MAX_DIM:
        raise SizeError(
            f"Kronecker product dimension {ma.shape[0] * mb.shape[0]} exceeds {MAX_DIM}")
    return np.kron(ma, mb)


def exterior_dim(d: int, i: int) -> int:
    return math.comb(d, i)


def exterior_power(m, i: int) -> np.ndarray:
    """Matrix of the induced action on i-vectors: entries are i x i minors,
    basis subsets in lexicographic order."""
    a = _as_square(m)
    d = a.shape[0]
    if not 1 <= i <= d:
        raise InputError(f"exterior index {i} out of range 1..{d}")
    n = exterior_dim(d, i)
    if n > MAX_DIM:
        raise SizeError(f"exterior power dimension {n} exceeds {MAX_DIM}")
    if i == 1:
        return a.copy()
    subs = np.array(list(itertools.combinations(range(d), i)))
    out = np.empty((n, n))
    # chunk the row blocks so the (rows, n, i, i) minor tensor stays small
    chunk = max(1, 4_000_000 // (n * i * i))
    for start in range(0, n, chunk):
        rows = subs[start:start + chunk]
        blocks = a[rows[:, None, :, None], subs[None, :, None, :]]
        out[start:start + chunk] = np.linalg.det(blocks)
    return out


# ---------------------------------------------------------------------------
# Classification

@dataclass(frozen=True)
class ProximalityClass:
    """Eigenvalue-ordering classification of one matrix.

    ``proximal[k]`` is the gap flag at index k+1 (i.e. moduli[k] exceeds
    moduli[k+1] by the relative tolerance).  ``indeterminate`` is set when a
    modulus or a realness call sits in the gray zone around the tolerance;
    consumers must not treat gray results as decisive.
    """

    dim: int
    tol: float
    proximal: tuple[bool, ...]
    semiproximal: bool
    positively_semiproximal: bool
    top_eigenvalue: Optional[complex]
    top_modulus: float
    top_multiplicity: int
    top_moduli: tuple[float, ...]
    indeterminate: bool

    def is_proximal_at(self, i: int) -> bool:
        if not 1 <= i <= self.dim - 1:
            raise InputError(f"proximality index {i} out of range 1..{self.dim - 1}")
        return self.proximal[i - 1]

    def to_json(self) -> dict:
        top = self.top_eigenvalue
        return {
            "dim": self.dim,
            "tol": self.tol,
            "proximal": list(self.proximal),
            "semiproximal": self.semiproximal,
            "positively_semiproximal": self.positively_semiproximal,
            "top_eigenvalue": None if top is None else [top.real, top.imag],
            "top_modulus": self.top_modulus,
            "top_multiplicity": self.top_multiplicity,
            "top_moduli": list(self.top_moduli),
            "indeterminate": self.indeterminate,
        }


def _classify_values(eigs: Sequence[complex], tol: float, dim: int) -> ProximalityClass:
    moduli = [abs(z) for z in eigs]
    l1 = moduli[0]
    proximal = tuple(moduli[k] > (1.0 + tol) * moduli[k + 1] for k in range(dim - 1))
    if l1 == 0.0:
        return ProximalityClass(dim, tol, proximal, False, False, None, 0.0, dim,
                                tuple(moduli[:8]), False)
    cluster = [z for z in eigs if abs(z) >= (1.0 - tol) * l1]
    real_pos = any(abs(z.imag) <= tol * l1 and z.real > 0 for z in cluster)
    real_neg = any(abs(z.imag) <= tol * l1 and z.real < 0 for z in cluster)
    gray_modulus = any((1.0 - 10.0 * tol) * l1 <= abs(z) < (1.0 - tol) * l1
                       for z in eigs)
    gray_real = any(tol * l1 < abs(z.imag) <= 10.0 * tol * l1 for z in cluster)
    return ProximalityClass(
        dim=dim,
        tol=tol,
        proximal=proximal,
        semiproximal=real_pos or real_neg,
        positively_semiproximal=real_pos,
        top_eigenvalue=complex(eigs[0]) if proximal and proximal[0] else None,
        top_modulus=l1,
        top_multiplicity=len(cluster),
        top_moduli=tuple(moduli[:8]),
        indeterminate=gray_modulus or gray_real,
    )


def classify(m, tol: float = DEFAULT_TOL) -> ProximalityClass:
    spec = spectrum(m)
    return _classify_values(spec.eigenvalues, tol, len(spec.eigenvalues))


def _subset_products_desc(values: Sequence[complex], i: int):
    """Yield i-subset products in nonincreasing modulus order.

    Values are sorted by decreasing modulus and subsets explored best-first
    by single right-shifts, so products come off the heap in nonincreasing
    modulus order without enumerating all C(d, i) subsets.
    """
    d = len(values)
    if not 1 <= i <= d:
        raise InputError(f"subset size {i} out of range 1..{d}")
    vals = sort_eigenvalues(values)
    logs = [math.log(abs(z)) if abs(z) > 0 else -math.inf for z in vals]
    start = tuple(range(i))
    heap = [(-sum(logs[k] for k in start), start)]
    seen = {start}
    while heap:
        negsum, subset = heapq.heappop(heap)
        prod = complex(1.0)
        for k in subset:
            prod *= vals[k]
        yield prod
        for pos in range(i):
            nxt = subset[pos] + 1
            if nxt >= d:
                continue
            if pos + 1 < i and nxt == subset[pos + 1]:
                continue
            child = subset[:pos] + (nxt,) + subset[pos + 1:]
            if child not in seen:
                seen.add(child)
                heapq.heappush(heap, (negsum + logs[subset[pos]] - logs[nxt], child))


def top_subset_products(values: Sequence[complex], i: int, count: int
                        ) -> list[complex]:
    """The ``count`` largest-by-modulus products over i-element subsets."""
    return list(itertools.islice(_subset_products_desc(values, i), count))


@dataclass(frozen=True)
class ExteriorClassification:
    """Classification of the i-th exterior power of a matrix.

    ``method`` records whether the dense minor matrix was classified or the
    eigenvalue subset-product route was used (for exterior dimensions past
    the dense cap).  Both describe the same spectrum.
    """

    index: int
    method: str
    p1_proximal: bool
    semiproximal: bool
    positively_semiproximal: bool
    top_eigenvalue: Optional[complex]
    top_modulus: float
    top_multiplicity: int
    top_moduli: tuple[float, ...]
    indeterminate: bool
    tol: float

    def to_json(self) -> dict:
        top = self.top_eigenvalue
        return {
            "index": self.index,
            "method": self.method,
            "p1_proximal": self.p1_proximal,
            "semiproximal": self.semiproximal,
            "positively_semiproximal": self.positively_semiproximal,
            "top_eigenvalue": None if top is None else [top.real, top.imag],
            "top_modulus": self.top_modulus,
            "top_multiplicity": self.top_multiplicity,
            "top_moduli": list(self.top_moduli),
            "indeterminate": self.indeterminate,
            "tol": self.tol,
        }


def classify_exterior(m, i: int, tol: float = DEFAULT_TOL,
                      dense_limit: int = DENSE_EXTERIOR_LIMIT
                      ) -> ExteriorClassification:
    """Classify the induced action on i-vectors without requiring the dense
    matrix to fit when C(d, i) is large."""
    a = _as_square(m)
    d = a.shape[0]
    if not 1 <= i <= d:
        raise InputError(f"exterior index {i} out of range 1..{d}")
    if exterior_dim(d, i) <= dense_limit:
        pc = classify(exterior_power(a, i), tol)
        return ExteriorClassification(
            index=i, method="dense-minors",
            p1_proximal=pc.proximal[0] if pc.proximal else False,
            semiproximal=pc.semiproximal,
            positively_semiproximal=pc.positively_semiproximal,
            top_eigenvalue=pc.top_eigenvalue,
            top_modulus=pc.top_modulus,
            top_multiplicity=pc.top_multiplicity,
            top_moduli=pc.top_moduli,
            indeterminate=pc.indeterminate,
            tol=tol,
        )
    eigs = spectrum(a).eigenvalues
    # every eigenvalue of the exterior power is an i-subset product; pop in
    # decreasing modulus until safely past the top tie cluster
    prods: list[complex] = []
    cap = 4096
    for prod in _subset_products_desc(eigs, i):
        prods.append(prod)
        past_cluster = abs(prod) < (1 - 10 * tol) * abs(prods[0])
        if (past_cluster and len(prods) >= 9) or len(prods) >= cap:
            break
    sorted_prods = sort_eigenvalues(prods)
    pc = _classify_values(sorted_prods, tol, len(sorted_prods))
    l1 = pc.top_modulus
    # p1 gap needs the best product to beat the second-best distinct modulus
    distinct_second = next((abs(z) for z in sorted_prods if abs(z) < (1 - tol) * l1),
                           None)
    p1 = (pc.top_multiplicity == 1 and distinct_second is not None
          and l1 > (1 + tol) * distinct_second)
    return ExteriorClassification(
        index=i, method="subset-products",
        p1_proximal=p1,
        semiproximal=pc.semiproximal,
        positively_semiproximal=pc.positively_semiproximal,
        top_eigenvalue=complex(sorted_prods[0]) if p1 else None,
        top_modulus=l1,
        top_multiplicity=pc.top_multiplicity,
        top_moduli=tuple(abs(z) for z in sorted_prods[:8]),
        indeterminate=pc.indeterminate,
        tol=tol,
    )


# ---------------------------------------------------------------------------
# Symbolic spectrum algebra (exact oracle)

def spectrum_union(*parts: Sequence[complex]) -> tuple[complex, ...]:
    """Spectrum of a block sum: multiset union."""
    out: list[complex] = []
    for p in parts:
        out.extend(complex(z) for z in p)
    return sort_eigenvalues(out)


def spectrum_tensor(s1: Sequence[complex], s2: Sequence[complex]
                    ) -> tuple[complex, ...]:
    """Spectrum of a Kronecker product: all pairwise products."""
    return sort_eigenvalues(complex(a) * complex(b) for a in s1 for b in s2)


def spectrum_wedge(s: Sequence[complex], i: int) -> tuple[complex, ...]:
    """Spectrum of the i-th exterior power: all i-subset products."""
    vals = [complex(z) for z in s]
    if not 1 <= i <= len(vals):
        raise InputError(f"subset size {i} out of range 1..{len(vals)}")
    prods = []
    for subset in itertools.combinations(vals, i):
        p = complex(1.0)
        for z in subset:
            p *= z
        prods.append(p)
    return sort_eigenvalues(prods)


def predicted_spectrum(expr) -> tuple[complex, ...]:
    """Evaluate a spectrum expression tree.

    Nodes are tuples: ``("lit", values)``, ``("union", e1, e2)``,
    ``("tensor", e1, e2)``, ``("wedge", e, i)``.
    """
    if not isinstance(expr, tuple) or not expr:
        raise InputError("spectrum expression must be a nonempty tuple")
    op = expr[0]
    if op == "lit":
        return sort_eigenvalues(expr[1])
    if op == "union":
        return spectrum_union(*(predicted_spectrum(e) for e in expr[1:]))
    if op == "tensor":
        if len(expr) != 3:
            raise InputError("tensor node needs exactly two operands")
        return spectrum_tensor(predicted_spectrum(expr[1]), predicted_spectrum(expr[2]))
    if op == "wedge":
        if len(expr) != 3:
            raise InputError("wedge node needs an operand and an index")
        return spectrum_wedge(predicted_spectrum(expr[1]), int(expr[2]))
    raise InputError(f"unknown spectrum operator {op!r}")
