"""Obstruction machinery.

* a bounded deterministic search for words with negative leading eigenvalue
  (commutator seed with trace < -2, then a power scan along a fixed coset);
* exact-ratio convergence reports for the two limit identities behind that
  search;
* finite-ball domination sweeps between representations;
* certificates recording exterior indices at which a designated witness
  fails positive semiproximality, re-checkable from serialized data;
* rank-one sampling of attracting lines of tensor-built representations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (DegenerateConfigurationError, InputError, SamplingError,
                     SearchError)
from .linalg import (DEFAULT_TOL, ExteriorClassification, classify,
                     classify_exterior, sort_eigenvalues,
                     top_eigenvalue_2x2_unimodular)
from .reps import RepSpec
from .words import (Alphabet, Presentation, Word, commutator, enumerate_ball,
                    in_index_two_core)

SCHEMA_VERSION = 1
TRANSVERSALITY_TOL = 1e-8


# ---------------------------------------------------------------------------
# Negative leading eigenvalue search

@dataclass(frozen=True)
class SignWitness:
    """A word whose image is proximal with real negative top eigenvalue."""

    word: Word
    lambda1: float
    base_word: Word
    power: int
    coset: Word
    search_trace: tuple[dict, ...]
    tol: float

    def to_json(self) -> dict:
        return {
            "word": str(self.word),
            "lambda1": self.lambda1,
            "base_word": str(self.base_word),
            "power": self.power,
            "coset": str(self.coset),
            "candidates_examined": len(self.search_trace),
            "tol": self.tol,
        }


def _commutator_candidates(alphabet: Alphabet, cap: int):
    """Commutators [u, v] in shortlex pair order: generator pairs first,
    then pairs involving length-2 words.  Deduplicated, nontrivial."""
    short = [w for w in enumerate_ball(alphabet, 2) if len(w) >= 1]
    ones = [w for w in short if len(w) == 1]
    seen = set()
    count = 0
    for pool in (ones, short):
        for u in pool:
            for v in pool:
                if count >= cap:
                    return
                w0 = commutator(u, v)
                if not w0.letters or w0.letters in seen:
                    continue
                seen.add(w0.letters)
                count += 1
                yield u, v, w0


def _eigenframe_2x2(m: np.ndarray) -> np.ndarray:
    """Columns: attracting then repelling eigenvector."""
    vals, vecs = np.linalg.eig(m)
    order = np.argsort(-np.abs(vals))
    frame = vecs[:, order]
    if np.max(np.abs(frame.imag)) < 1e-12 * np.max(np.abs(frame.real)):
        frame = frame.real
    return frame


def find_negative_lambda(rep: RepSpec, coset: Word, *,
                         max_candidates: int = 200, max_power: int = 64,
                         tol: float = DEFAULT_TOL) -> SignWitness:
    """Find w = w0^m * coset with real negative leading eigenvalue.

    Stage one scans commutator candidates w0 until trace < -2 (a discrete
    free 2x2 group always contains such an element).  Stage two walks the
    powers w0^m * coset until the guaranteed sign flip shows a negative
    leading eigenvalue.  Fails loudly with the examined trace when the
    budget runs out; that is never a nonexistence claim.
    """
    if rep.dim != 2:
        raise InputError("the sign search runs on 2x2 representations")
    if coset.alphabet.names != rep.alphabet.names:
        raise InputError("coset word uses a different alphabet")
    trace: list[dict] = []
    coset_img = rep.evaluate(coset)
    for u, v, w0 in _commutator_candidates(rep.alphabet, max_candidates):
        m0 = rep.evaluate(w0)
        tr = float(m0[0, 0] + m0[1, 1])
        entry = {"candidate": str(w0), "trace": tr}
        if tr >= -2.0 - 1e-9:
            entry["rejected"] = "trace not below -2"
            trace.append(entry)
            continue
        if not coset.letters:
            lam = (tr - math.sqrt(tr * tr - 4.0)) / 2.0
            entry["accepted"] = "negative eigenvalue from trace"
            trace.append(entry)
            return SignWitness(word=w0, lambda1=lam, base_word=w0, power=1,
                               coset=coset, search_trace=tuple(trace), tol=tol)
        frame = _eigenframe_2x2(m0)
        predicted = (np.linalg.inv(frame) @ coset_img @ frame)[0, 0]
        if abs(predicted) <= TRANSVERSALITY_TOL * np.linalg.norm(coset_img):
            entry["rejected"] = "coset not transverse to candidate axes"
            trace.append(entry)
            continue
        power_img = np.eye(2)
        for m in range(1, max_power + 1):
            power_img = power_img @ m0
            if np.max(np.abs(power_img)) > 1e250:
                entry["rejected"] = f"power overflow at exponent {m}"
                break
            lam = top_eigenvalue_2x2_unimodular(power_img @ coset_img)
            if abs(lam.imag) <= tol * abs(lam) and lam.real < 0:
                entry["accepted"] = f"sign flip at power {m}"
                trace.append(entry)
                witness = (w0 ** m) * coset
                _revalidate_sign_witness(rep, witness, tol)
                return SignWitness(word=witness, lambda1=lam.real, base_word=w0,
                                   power=m, coset=coset,
                                   search_trace=tuple(trace), tol=tol)
        entry.setdefault("rejected", f"no sign flip within power {max_power}")
        trace.append(entry)
    raise SearchError(
        f"no witness found within {max_candidates} candidates "
        f"and power cap {max_power}", trace=trace)


def _revalidate_sign_witness(rep: RepSpec, witness: Word, tol: float):
    pc = classify(rep.evaluate(witness.cyclic_reduction()), tol)
    lam = pc.top_eigenvalue
    if not pc.proximal[0] or lam is None or lam.real >= 0 or \
            abs(lam.imag) > tol * abs(lam):
        raise SearchError(
            f"witness {witness} failed re-validation: {pc.to_json()}")


# ---------------------------------------------------------------------------
# Limit identities behind the power scan

@dataclass(frozen=True)
class LimitFormulaReport:
    ratios: tuple[complex, ...]
    predicted: float
    final_error: float
    converged: bool
    consecutive: tuple[complex, ...]
    base_top_eigenvalue: float
    consecutive_error: float

    def to_json(self) -> dict:
        return {
            "ratios": [[z.real, z.imag] for z in self.ratios],
            "predicted": self.predicted,
            "final_error": self.final_error,
            "converged": self.converged,
            "base_top_eigenvalue": self.base_top_eigenvalue,
            "consecutive_error": self.consecutive_error,
        }


def limit_formula_check(rep: RepSpec, w0: Word, a: Word, n_max: int = 30,
                        conv_tol: float = 1e-4) -> LimitFormulaReport:
    """Track lambda1(w0^n a) / lambda1(w0^n) against its frame-coordinate
    limit, and the consecutive ratio against lambda1(w0).

    Powers are evaluated on the rescaled matrix w0 / lambda1, which keeps
    every intermediate bounded; the ratio is exact under that rescaling.
    """
    if rep.dim != 2:
        raise InputError("limit formulas are checked on 2x2 representations")
    m0 = rep.evaluate(w0)
    pc = classify(m0)
    lam0 = pc.top_eigenvalue
    if not pc.proximal[0] or lam0 is None or abs(lam0.imag) > 1e-9 * abs(lam0):
        raise InputError("base word must have a real proximal leading eigenvalue")
    lam0 = lam0.real
    frame = _eigenframe_2x2(m0)
    ma = rep.evaluate(a)
    predicted = (np.linalg.inv(frame) @ ma @ frame)[0, 0]
    if abs(predicted.imag) > 1e-9 * max(abs(predicted), 1.0):
        raise DegenerateConfigurationError("predicted limit is not real")
    predicted = float(predicted.real)
    if abs(predicted) < TRANSVERSALITY_TOL * np.linalg.norm(ma):
        raise DegenerateConfigurationError(
            "predicted limit vanishes: coset fixed lines are not transverse")
    q = m0 / lam0
    ratios = []
    power = np.eye(2)
    for _ in range(n_max):
        power = power @ q
        # lambda1(w0^n a) / lambda1(w0)^n, exactly
        vals = sort_eigenvalues(np.linalg.eigvals(power @ ma))
        ratios.append(complex(vals[0]))
    consecutive = tuple(lam0 * ratios[k + 1] / ratios[k]
                        for k in range(len(ratios) - 1))
    final_error = abs(ratios[-1] - predicted)
    consecutive_error = abs(consecutive[-1] - lam0)
    return LimitFormulaReport(
        ratios=tuple(ratios),
        predicted=predicted,
        final_error=final_error,
        converged=final_error <= conv_tol * max(1.0, abs(predicted)),
        consecutive=consecutive,
        base_top_eigenvalue=lam0,
        consecutive_error=consecutive_error,
    )


# ---------------------------------------------------------------------------
# Domination sweeps

@dataclass(frozen=True)
class DominationReport:
    """Finite-ball margin of log l1(upper) - exponent * log l1(lower).

    The required inequality is non-strict, so `passed` tolerates exact ties
    up to rounding; `boundary` flags margins at zero.  The identity word is
    excluded (its margin is identically zero).
    """

    exponent: float
    radius: int
    margin: float
    argmin: str
    per_length: tuple[tuple[int, float], ...]
    passed: bool
    boundary: bool
    words_checked: int

    def to_json(self) -> dict:
        return {
            "exponent": self.exponent,
            "radius": self.radius,
            "margin": self.margin,
            "argmin": self.argmin,
            "per_length": [[l, m] for l, m in self.per_length],
            "passed": self.passed,
            "boundary": self.boundary,
            "words_checked": self.words_checked,
        }


def check_domination(upper: RepSpec, lower: RepSpec, exponent: float,
                     radius: int, *, tie_tol: float = 1e-9) -> DominationReport:
    """Exhaustive margin sweep over the reduced ball (length >= 1).

    Top moduli are class functions, so each word is evaluated on its cyclic
    reduction; conjugation padding would only degrade conditioning.
    """
    if upper.alphabet.names != lower.alphabet.names:
        raise InputError("domination sides use different alphabets")
    per_length: dict[int, float] = {}
    margin = math.inf
    argmin = ""
    count = 0
    cache: dict[tuple, float] = {}
    for w in enumerate_ball(upper.alphabet, radius):
        if not w.letters:
            continue
        count += 1
        core = w.cyclic_reduction()
        if not core.letters:
            continue  # conjugation-trivial: margin identically zero, like e
        if core.letters not in cache:
            lu = math.log(upper.top_modulus(core))
            ll = math.log(lower.top_modulus(core))
            cache[core.letters] = lu - exponent * ll
        m = cache[core.letters]
        length = len(w)
        per_length[length] = min(per_length.get(length, math.inf), m)
        if m < margin:
            margin = m
            argmin = str(core)
    return DominationReport(
        exponent=float(exponent), radius=radius, margin=margin, argmin=argmin,
        per_length=tuple(sorted(per_length.items())),
        passed=margin >= -tie_tol,
        boundary=abs(margin) <= tie_tol,
        words_checked=count,
    )


# ---------------------------------------------------------------------------
# Certificates

@dataclass(frozen=True)
class IndexEntry:
    index: int
    covered: bool
    witness: Optional[str]
    reason: str
    classification: Optional[ExteriorClassification]

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "covered": self.covered,
            "witness": self.witness,
            "reason": self.reason,
            "classification": None if self.classification is None
            else self.classification.to_json(),
        }


@dataclass(frozen=True)
class ObstructionCertificate:
    """Record of exterior indices at which witnesses fail positive
    semiproximality, together with parity evidence and the declared,
    unverified subgroup hypotheses.

    Semantics: were the representation a limit of representations with the
    index-i gap property, each listed witness would have positively
    semiproximal i-th exterior image; the recorded classification rules
    that out at the stated tolerance.
    """

    construction: dict
    rep_digest: str
    dim: int
    tol: float
    witnesses: tuple[str, ...]
    parity_evidence: tuple[dict, ...]
    entries: tuple[IndexEntry, ...]
    assumptions: tuple[str, ...]
    covered_all: bool
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "construction": self.construction,
            "rep_digest": self.rep_digest,
            "dim": self.dim,
            "tol": self.tol,
            "witnesses": list(self.witnesses),
            "parity_evidence": list(self.parity_evidence),
            "entries": [e.to_json() for e in self.entries],
            "assumptions": list(self.assumptions),
            "covered_all": self.covered_all,
        }


def certify_not_limit(rep: RepSpec, witnesses: Sequence[Word],
                      indices: Sequence[int], p: Presentation,
                      tol: float = DEFAULT_TOL,
                      assumptions: Sequence[str] = ()) -> ObstructionCertificate:
    """For each index, find a witness whose exterior image is not positively
    semiproximal; indeterminate classifications leave the index uncovered
    rather than covering or failing it."""
    if not witnesses:
        raise InputError("at least one witness word is required")
    parity = []
    for w in witnesses:
        if not in_index_two_core(w, p):
            raise InputError(
                f"witness {w} is not in the index-two core of the presentation")
        parity.append({
            "witness": str(w),
            "exponent_sums": list(w.exponent_sums()),
            "relator_count": len(p.relators),
        })
    images = [rep.evaluate(w) for w in witnesses]
    entries = []
    for i in indices:
        if not 1 <= i <= rep.dim // 2:
            raise InputError(f"exterior index {i} out of range 1..{rep.dim // 2}")
        entry = None
        saw_indeterminate = False
        for w, img in zip(witnesses, images):
            cls = classify_exterior(img, i, tol)
            if cls.indeterminate:
                saw_indeterminate = True
                continue
            if not cls.positively_semiproximal:
                entry = IndexEntry(i, True, str(w),
                                   "witness fails positive semiproximality", cls)
                break
        if entry is None:
            reason = ("all decisive witnesses positively semiproximal"
                      if not saw_indeterminate else
                      "classification indeterminate at this tolerance")
            entry = IndexEntry(i, False, None, reason, None)
        entries.append(entry)
    return ObstructionCertificate(
        construction=dict(rep.provenance),
        rep_digest=rep.digest(),
        dim=rep.dim,
        tol=tol,
        witnesses=tuple(str(w) for w in witnesses),
        parity_evidence=tuple(parity),
        entries=tuple(entries),
        assumptions=tuple(assumptions),
        covered_all=all(e.covered for e in entries),
    )


def verify_certificate(cert: ObstructionCertificate | dict, rep: RepSpec) -> bool:
    """Recompute every covered entry from the representation alone."""
    doc = cert.to_json() if isinstance(cert, ObstructionCertificate) else cert
    if doc["rep_digest"] != rep.digest():
        return False
    for entry in doc["entries"]:
        if not entry["covered"]:
            continue
        w = Word.parse(rep.alphabet, entry["witness"])
        cls = classify_exterior(rep.evaluate(w), entry["index"], doc["tol"])
        if cls.positively_semiproximal or cls.indeterminate:
            return False
        recorded = entry["classification"]
        if recorded is not None:
            top = recorded["top_modulus"]
            if top > 0 and abs(top - cls.top_modulus) > 1e-6 * top:
                return False
    return True


# ---------------------------------------------------------------------------
# Attracting-line sampling for tensor-built representations

@dataclass(frozen=True)
class LimitSetSample:
    factor_dims: tuple[int, int]
    words: tuple[str, ...]
    vectors: np.ndarray
    defects: tuple[float, ...]
    max_defect: float
    attempted: int
    factor_stats: dict

    def to_json(self) -> dict:
        return {
            "factor_dims": list(self.factor_dims),
            "count": len(self.words),
            "attempted": self.attempted,
            "max_defect": self.max_defect,
            "factor_stats": self.factor_stats,
        }

    def to_csv(self) -> str:
        lines = []
        dim = self.vectors.shape[1] if len(self.words) else 0
        header = ["word"] + [f"x{k}" for k in range(dim)] + ["rank_defect"]
        lines.append(",".join(header))
        for w, vec, d in zip(self.words, self.vectors, self.defects):
            lines.append(",".join(['"' + w + '"']
                                  + [repr(float(x)) for x in vec]
                                  + [repr(float(d))]))
        return "\n".join(lines) + "\n"


def _random_reduced_word(alphabet: Alphabet, length: int,
                         rng: np.random.Generator) -> Word:
    symbols = alphabet.symbols()
    letters: list[tuple[int, int]] = []
    while len(letters) < length:
        idx, sign = symbols[rng.integers(len(symbols))]
        if letters and letters[-1][0] == idx and letters[-1][1] == -sign:
            continue
        letters.append((idx, sign))
    return Word(alphabet, tuple(letters))


def _line_angle_stats(lines: np.ndarray) -> dict:
    if len(lines) < 2:
        return {"count": int(len(lines))}
    gram = np.abs(lines @ lines.T)
    np.fill_diagonal(gram, -1.0)
    nearest = np.arccos(np.clip(gram.max(axis=1), -1.0, 1.0))
    return {
        "count": int(len(lines)),
        "nearest_neighbor_min": float(nearest.min()),
        "nearest_neighbor_median": float(np.median(nearest)),
        "spread_max": float(np.arccos(np.clip(gram[gram > -1].min(), -1.0, 1.0))),
    }


def sample_limit_set(rep: RepSpec, sample_words: int, seed: int = 0, *,
                     min_length: int = 4, max_length: int = 10,
                     min_proximal: int = 30,
                     tol: float = DEFAULT_TOL) -> LimitSetSample:
    """Sample attracting lines of proximal word images and measure how far
    each is from a pure tensor (second-to-first singular value of the
    reshaped representative; scale invariant)."""
    factors = rep.provenance.get("tensor_factors")
    if not factors or len(factors) != 2:
        raise InputError("representation provenance does not record tensor factors")
    d1, d2 = int(factors[0]), int(factors[1])
    if d1 * d2 != rep.dim:
        raise InputError("recorded tensor factors do not multiply to the dimension")
    rng = np.random.default_rng(seed)
    words, vecs, defects = [], [], []
    left_lines, right_lines = [], []
    for _ in range(sample_words):
        length = int(rng.integers(min_length, max_length + 1))
        w = _random_reduced_word(rep.alphabet, length, rng)
        m = rep.evaluate(w)
        try:
            vals, eigvecs = np.linalg.eig(m)
        except np.linalg.LinAlgError:
            continue
        order = np.argsort(-np.abs(vals))
        top, second = vals[order[0]], vals[order[1]]
        if abs(top) <= (1 + tol) * abs(second):
            continue
        if abs(top.imag) > tol * abs(top):
            continue
        v = eigvecs[:, order[0]]
        pivot = np.argmax(np.abs(v))
        v = v / v[pivot]
        if np.max(np.abs(v.imag)) > 1e-8 * np.max(np.abs(v.real)):
            continue
        v = v.real / np.linalg.norm(v.real)
        mat = v.reshape(d1, d2)
        u, sv, vt = np.linalg.svd(mat)
        defect = float(sv[1] / sv[0]) if len(sv) > 1 else 0.0
        words.append(str(w))
        vecs.append(v)
        defects.append(defect)
        left_lines.append(u[:, 0])
        right_lines.append(vt[0])
    if len(words) < min_proximal:
        raise SamplingError(
            f"only {len(words)} proximal samples out of {sample_words}")
    return LimitSetSample(
        factor_dims=(d1, d2),
        words=tuple(words),
        vectors=np.array(vecs),
        defects=tuple(defects),
        max_defect=max(defects),
        attempted=sample_words,
        factor_stats={
            "left": _line_angle_stats(np.array(left_lines)),
            "right": _line_angle_stats(np.array(right_lines)),
        },
    )
