"""Named check suites composing the library's operations into audits.

Each suite takes the loaded algebra, any certified maps, and a seeded RNG,
and emits one record per check.  Suites add no mathematics of their own;
they only orchestrate module operations and collect witnesses.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra import Algebra, matrix_algebra, two_sided_ideal
from .errors import SkewexError, UnknownSuite
from .idempotents import (
    IdempotentSet,
    enumerate_idempotents,
    image_idempotent_audit,
    image_kernel_idempotent_report,
    image_trace_certificate,
    ms_check,
    ms_witness_check,
    rank_one_idempotent_grid,
    trace_rank_idempotent,
    NOT_MS,
)
from .laurent import (
    LaurentSkewPoly,
    coefficient_sum_membership,
    conjugate_by_x,
    laurent_mul,
    laurent_quotient,
)
from .laurent import extension_embedding_injective as laurent_embedding_injective
from .linalg import Mat, Poly, Subspace, Vec, column_space, is_zero_vec, kernel, rat
from .maps import (
    AlgebraEndo,
    Derivation,
    EDerivation,
    LinearEndo,
    automorphism_order,
    derivation_space,
    kernel_chain,
    kernel_chain_preimage,
)
from .ore import (
    SkewPoly,
    commutator_power,
    constant_term_identity,
    constant_terms,
    extension_embedding_injective,
    ideal_constant_term,
    ore_quotient,
    simple_image_check,
)
from .sampling import random_element, sample_automorphisms
from .serialize import algebra_to_json, map_to_json, vector_to_json

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not-applicable"


@dataclass
class CheckRecord:
    suite: str
    check: str
    status: str
    witness: dict
    elapsed_ms: float

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.check,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class Report:
    records: list[CheckRecord] = field(default_factory=list)

    def extend(self, records) -> None:
        self.records.extend(records)

    @property
    def exit_code(self) -> int:
        statuses = {r.status for r in self.records}
        if FAIL in statuses:
            return 1
        if INCONCLUSIVE in statuses and statuses <= {PASS, INCONCLUSIVE, NOT_APPLICABLE}:
            return 3
        return 0

    def counts(self) -> dict:
        out: dict[str, int] = {}
        for r in self.records:
            out[r.status] = out.get(r.status, 0) + 1
        return out


@dataclass
class SuiteContext:
    algebra: Algebra
    maps: list[LinearEndo]
    rng: random.Random
    automorphism_samples: int = 10
    order_bound: int = 64
    trials: int = 100
    _derivations: Optional[list[Derivation]] = None
    _automorphisms: Optional[list[AlgebraEndo]] = None

    def derivations(self) -> list[Derivation]:
        if self._derivations is None:
            given = [m for m in self.maps if isinstance(m, Derivation)]
            self._derivations = given or derivation_space(self.algebra)
        return self._derivations

    def endomorphisms(self) -> list[AlgebraEndo]:
        out = [m for m in self.maps if isinstance(m, AlgebraEndo)]
        for m in self.maps:
            if isinstance(m, EDerivation):
                out.append(m.phi)
        return out

    def automorphisms(self) -> list[AlgebraEndo]:
        if self._automorphisms is None:
            given = [m for m in self.endomorphisms() if m.is_invertible()]
            sampled = sample_automorphisms(self.algebra, self.rng, self.automorphism_samples)
            seen = set()
            out = []
            for endo in given + sampled:
                if endo.matrix.entries not in seen:
                    seen.add(endo.matrix.entries)
                    out.append(endo)
            self._automorphisms = out
        return self._automorphisms


class _Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.records: list[CheckRecord] = []

    def add(self, check: str, status: str, witness: dict, started: float) -> None:
        elapsed = (time.perf_counter() - started) * 1000.0
        self.records.append(CheckRecord(self.suite, check, status, witness, elapsed))

    def run(self, check: str, fn: Callable[[], tuple[str, dict]]) -> None:
        started = time.perf_counter()
        try:
            status, witness = fn()
        except SkewexError as exc:
            status, witness = FAIL, {"error": str(exc)}
        self.add(check, status, witness, started)


def _matrix_size(algebra: Algebra) -> Optional[int]:
    root = round(algebra.dim ** 0.5)
    if root < 2 or root * root != algebra.dim:
        return None
    return root if algebra.sc == matrix_algebra(root).sc else None


def _idempotent_context(algebra: Algebra) -> IdempotentSet:
    if algebra.is_commutative():
        return enumerate_idempotents(algebra)
    items = [tuple(0 * x for x in algebra.unit), algebra.unit]
    provenance = ["sum", "sum"]
    size = _matrix_size(algebra)
    if size is not None:
        for e in rank_one_idempotent_grid(size):
            items.append(e)
            provenance.append("grid")
    return IdempotentSet(tuple(items), False, "noncommutative: enumeration is partial",
                         tuple(provenance))


def _audit_map(rec: _Recorder, algebra: Algebra, label: str, matrix: Mat,
               idems: IdempotentSet, endo_for_witness, role: str) -> None:
    def check() -> tuple[str, dict]:
        witness: dict = {"map": label}
        trace_ok = image_trace_certificate(algebra, matrix)
        witness["trace_certificate"] = trace_ok
        findings = image_idempotent_audit(algebra, LinearEndo(algebra, matrix), idems)
        size = _matrix_size(algebra)
        grid_findings = []
        if size is not None:
            image = column_space(matrix)
            grid_findings = [e for e in rank_one_idempotent_grid(size) if image.contains(e)]
        if findings or grid_findings or not trace_ok:
            witness["findings"] = [vector_to_json(e) for e in findings + grid_findings]
            witness["algebra"] = algebra_to_json(algebra)
            witness["offending_map"] = map_to_json(endo_for_witness, role)
            return FAIL, witness
        # the trace certificate alone is decisive, so a partial idempotent
        # list never downgrades a clean audit
        return PASS, witness

    rec.run(f"image_audit[{label}]", check)


def suite_thm19_derivation(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("thm19_derivation")
    if not ctx.derivations():
        rec.add("inner_extension[none]", NOT_APPLICABLE,
                {"note": "the derivation space is zero"}, time.perf_counter())
        return rec.records
    for idx, d in enumerate(ctx.derivations()):
        def check(d=d, idx=idx) -> tuple[str, dict]:
            result = ore_quotient(ctx.algebra, d)
            ext = result.algebra
            ok = extension_embedding_injective(result)
            ok = ok and is_zero_vec(_poly_at(ext, result.p, result.u))
            for a in range(ctx.algebra.dim):
                img = result.embed.column(a)
                comm = tuple(
                    x - y for x, y in zip(ext.multiply(result.u, img),
                                          ext.multiply(img, result.u))
                )
                if comm != result.embed.apply(d.matrix.apply(ctx.algebra.basis_element(a))):
                    ok = False
            trace_zero = all(
                ext.trace_of(result.embed.apply(d.matrix.apply(ctx.algebra.basis_element(a)))) == 0
                for a in range(ctx.algebra.dim)
            )
            witness = {
                "map_index": idx,
                "relation_degree": result.p.degree,
                "extension_dim": ext.dim,
                "free_module": result.free_module,
                "defect_dim": result.defect_dim,
                "commutator_traces_zero": trace_zero,
            }
            return (PASS if ok and trace_zero else FAIL), witness

        rec.run(f"inner_extension[{idx}]", check)
    return rec.records


def suite_thm19_automorphism(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("thm19_automorphism")
    autos = ctx.automorphisms()
    if not autos:
        rec.add("inner_extension[none]", NOT_APPLICABLE,
                {"note": "no automorphisms available"}, time.perf_counter())
        return rec.records
    for idx, phi in enumerate(autos):
        def check(phi=phi, idx=idx) -> tuple[str, dict]:
            result = laurent_quotient(ctx.algebra, phi)
            ext = result.algebra
            ok = laurent_embedding_injective(result)
            ok = ok and is_zero_vec(_poly_at(ext, result.p, result.u))
            ok = ok and ext.multiply(result.u, result.u_inverse) == ext.unit
            ok = ok and ext.multiply(result.u_inverse, result.u) == ext.unit
            for a in range(ctx.algebra.dim):
                img = result.embed.column(a)
                conj = ext.multiply(ext.multiply(result.u, img), result.u_inverse)
                if conj != result.embed.apply(phi.matrix.apply(ctx.algebra.basis_element(a))):
                    ok = False
            witness = {
                "map_index": idx,
                "relation_degree": result.p.degree,
                "extension_dim": ext.dim,
                "free_module": result.free_module,
                "defect_dim": result.defect_dim,
            }
            return (PASS if ok else FAIL), witness

        rec.run(f"inner_extension[{idx}]", check)
    return rec.records


def _poly_at(ext: Algebra, p: Poly, u: Vec) -> Vec:
    from ._extension import poly_of_element

    return poly_of_element(ext, p, u)


def suite_thm16_audit(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("thm16_audit")
    idems = _idempotent_context(ctx.algebra)
    for idx, d in enumerate(ctx.derivations()):
        _audit_map(rec, ctx.algebra, f"derivation[{idx}]", d.matrix, idems, d, "derivation")
    for idx, phi in enumerate(ctx.automorphisms()):
        delta = Mat.identity(ctx.algebra.dim) - phi.matrix
        _audit_map(rec, ctx.algebra, f"one_minus_automorphism[{idx}]", delta, idems,
                   phi, "endomorphism")
    return rec.records


def suite_prop22(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("prop22")
    idems = _idempotent_context(ctx.algebra)
    endos = ctx.endomorphisms() or ctx.automorphisms()
    for idx, phi in enumerate(endos):
        def check(phi=phi, idx=idx) -> tuple[str, dict]:
            report = image_kernel_idempotent_report(ctx.algebra, phi, idems)
            witness = {
                "map_index": idx,
                "idempotents_checked": len(report.entries),
                "complete": idems.complete,
            }
            if not (report.consistent and report.ideal_contained):
                witness["algebra"] = algebra_to_json(ctx.algebra)
                witness["offending_map"] = map_to_json(phi, "endomorphism")
                return FAIL, witness
            if not idems.complete:
                return INCONCLUSIVE, witness
            return PASS, witness

        rec.run(f"image_kernel_biconditional[{idx}]", check)
    return rec.records


def suite_prop24(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("prop24")
    idems = _idempotent_context(ctx.algebra)
    endos = ctx.endomorphisms() or ctx.automorphisms()
    for idx, phi in enumerate(endos):
        def check(phi=phi, idx=idx) -> tuple[str, dict]:
            delta = Mat.identity(ctx.algebra.dim) - phi.matrix
            verdict = ms_check(ctx.algebra, column_space(delta), idems)
            witness = {"map_index": idx, "verdict": verdict.status}
            if verdict.status == NOT_MS:
                witness["witness_idempotent"] = vector_to_json(verdict.witness)
                witness["algebra"] = algebra_to_json(ctx.algebra)
                witness["offending_map"] = map_to_json(phi, "endomorphism")
                return FAIL, witness
            if not idems.complete:
                return INCONCLUSIVE, witness
            return PASS, witness

        rec.run(f"difference_image_is_ms[{idx}]", check)
    return rec.records


def suite_cor25(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("cor25")
    idems = _idempotent_context(ctx.algebra)
    found = 0
    for idx, phi in enumerate(ctx.automorphisms()):
        order = automorphism_order(phi, ctx.order_bound)
        if order is None:
            continue
        found += 1
        delta = Mat.identity(ctx.algebra.dim) - phi.matrix
        _audit_map(rec, ctx.algebra, f"finite_order[{idx},order={order}]", delta,
                   idems, phi, "endomorphism")
    if not found:
        started = time.perf_counter()
        rec.add("finite_order[none]", NOT_APPLICABLE,
                {"note": "no finite-order automorphism in the sample"}, started)
    return rec.records


def suite_cor34(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("cor34")
    derivations = ctx.derivations()
    for idx, d in enumerate(derivations):
        def check(d=d, idx=idx) -> tuple[str, dict]:
            report = simple_image_check(ctx.algebra, d)
            witness = {
                "map_index": idx,
                "left_full": report.left_full,
                "right_full": report.right_full,
                "simple": report.simple,
                "nonzero": report.nonzero,
            }
            if not report.applicable:
                return NOT_APPLICABLE, witness
            return (PASS if report.left_full and report.right_full else FAIL), witness

        rec.run(f"image_spans[{idx}]", check)
    if not derivations:
        started = time.perf_counter()
        rec.add("image_spans[none]", NOT_APPLICABLE, {"note": "no derivations"}, started)
    return rec.records


def suite_lemma(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("lemma_suite")
    algebra = ctx.algebra
    rng = ctx.rng
    derivations = [d for d in ctx.derivations() if not d.matrix.is_zero()]

    def binomial_commutators() -> tuple[str, dict]:
        checked = 0
        for d in derivations[:3]:
            for n in range(7):
                a = random_element(algebra, rng)
                commutator_power(n, a, d)
                checked += 1
        return PASS, {"instances": checked}

    rec.run("binomial_commutator", binomial_commutators)

    def constant_term_checks() -> tuple[str, dict]:
        checked = 0
        for d in derivations[:3]:
            for _ in range(max(1, ctx.trials // 10)):
                q = Poly.of([rat(rng.randint(-3, 3)) for _ in range(rng.randint(1, 6))])
                if q.is_zero():
                    q = Poly.one()
                b = random_element(algebra, rng)
                constant_term_identity(q, b, d)
                report = ideal_constant_term(q, b, rng.randint(0, 2), rng.randint(0, 2), d)
                if not report.member:
                    return FAIL, {"value": vector_to_json(report.value)}
                checked += 1
        return PASS, {"instances": checked}

    rec.run("scalar_poly_constant_term", constant_term_checks)

    def round_trip() -> tuple[str, dict]:
        checked = 0
        for d in derivations[:3]:
            for _ in range(5):
                coeffs = [random_element(algebra, rng) for _ in range(rng.randint(1, 4))]
                f = SkewPoly.of(algebra, coeffs)
                constant_terms(f, d)
                checked += 1
        return PASS, {"instances": checked}

    rec.run("left_right_round_trip", round_trip)

    def preimages() -> tuple[str, dict]:
        checked = 0
        for phi in ctx.endomorphisms():
            chain, _ = kernel_chain(phi)
            for a in chain.basis:
                b = kernel_chain_preimage(phi, a)
                checked += 1
                _ = b
        return PASS, {"instances": checked}

    rec.run("kernel_chain_preimage", preimages)

    def coefficient_sums() -> tuple[str, dict]:
        checked = 0
        for phi in ctx.automorphisms()[:4]:
            for _ in range(5):
                terms = [(rng.randint(-2, 2), rat(rng.randint(-2, 2))) for _ in range(3)]
                b = random_element(algebra, rng)
                c = random_element(algebra, rng)
                report = coefficient_sum_membership(
                    terms, b, c, rng.randint(-2, 2), rng.randint(-2, 2), phi
                )
                if not report.member:
                    return FAIL, {"value": vector_to_json(report.value)}
                checked += 1
        return PASS, {"instances": checked}

    rec.run("coefficient_sum_membership", coefficient_sums)

    def conjugation_coherence() -> tuple[str, dict]:
        checked = 0
        for phi in ctx.automorphisms()[:4]:
            for k in range(-4, 5):
                for a_idx in range(algebra.dim):
                    a = algebra.basis_element(a_idx)
                    lhs = laurent_mul(
                        laurent_mul(LaurentSkewPoly.x(algebra, k),
                                    LaurentSkewPoly.constant(algebra, a), phi),
                        LaurentSkewPoly.x(algebra, -k), phi,
                    )
                    expected = LaurentSkewPoly.constant(algebra, conjugate_by_x(a, k, phi))
                    if lhs.terms != expected.terms:
                        return FAIL, {"k": k, "basis": a_idx}
                    checked += 1
        return PASS, {"instances": checked}

    rec.run("conjugation_coherence", conjugation_coherence)

    def embeddings() -> tuple[str, dict]:
        from .linalg import minimal_polynomial

        def by_degree(maps):
            return sorted(maps, key=lambda m: minimal_polynomial(m.matrix).degree)

        checked = 0
        for d in by_degree(derivations)[:2]:
            result = ore_quotient(algebra, d)
            if kernel(result.embed).dim != 0:
                return FAIL, {"mode": "derivation"}
            checked += 1
        for phi in by_degree(ctx.automorphisms())[:2]:
            result = laurent_quotient(algebra, phi)
            if kernel(result.embed).dim != 0:
                return FAIL, {"mode": "automorphism"}
            checked += 1
        return PASS, {"instances": checked}

    rec.run("extension_embeddings", embeddings)
    return rec.records


def suite_ms_oracle(ctx: SuiteContext) -> list[CheckRecord]:
    rec = _Recorder("ms_oracle")
    algebra = ctx.algebra
    idems = _idempotent_context(algebra)
    closures = {tuple(e): two_sided_ideal(algebra, [e]) for e in idems.items}

    def enumeration() -> tuple[str, dict]:
        witness = {
            "count": len(idems.items),
            "complete": idems.complete,
            "reason": idems.inconclusive_reason,
        }
        for e in idems.items:
            tr = trace_rank_idempotent(algebra, e)
            if not tr.equal:
                witness["offender"] = vector_to_json(e)
                return FAIL, witness
        if not idems.complete:
            return INCONCLUSIVE, witness
        return PASS, witness

    rec.run("enumeration_and_trace_rank", enumeration)

    def ideals_are_ms() -> tuple[str, dict]:
        # the idempotent criterion over the cached closures; distinct closure
        # values are few (two on a simple algebra), so group by them
        distinct: dict[tuple, Subspace] = {}
        for v in closures.values():
            distinct.setdefault(v.basis, v)
        checked = 0
        for v in distinct.values():
            full = v.dim == algebra.dim
            for f in idems.items:
                if full or v.contains(f):
                    closure_f = closures[tuple(f)]
                    if not full and not closure_f.is_subspace_of(v):
                        return FAIL, {"idempotent": vector_to_json(f)}
            checked += 1
        return (PASS if idems.complete else INCONCLUSIVE), {"distinct_ideals": checked}

    rec.run("principal_ideals_are_ms", ideals_are_ms)

    def witness_probes() -> tuple[str, dict]:
        checked = 0
        for e in idems.items:
            ideal = closures[tuple(e)]
            for _ in range(3):
                a = e
                b = random_element(algebra, ctx.rng)
                c = random_element(algebra, ctx.rng)
                outcome = ms_witness_check(algebra, ideal, a, b, c)
                if outcome == "fail":
                    return FAIL, {"idempotent": vector_to_json(e)}
                checked += 1
        return PASS, {"instances": checked}

    rec.run("membership_probes", witness_probes)
    return rec.records


SUITE_REGISTRY: dict[str, Callable[[SuiteContext], list[CheckRecord]]] = {
    "thm19_derivation": suite_thm19_derivation,
    "thm19_automorphism": suite_thm19_automorphism,
    "thm16_audit": suite_thm16_audit,
    "prop22": suite_prop22,
    "prop24": suite_prop24,
    "cor25": suite_cor25,
    "cor34": suite_cor34,
    "lemma_suite": suite_lemma,
    "ms_oracle": suite_ms_oracle,
}


def run_suite(names: list[str], ctx: SuiteContext) -> Report:
    report = Report()
    for name in names:
        if name not in SUITE_REGISTRY:
            raise UnknownSuite(f"unknown suite {name!r}; known: {sorted(SUITE_REGISTRY)}")
        report.extend(SUITE_REGISTRY[name](ctx))
    return report
