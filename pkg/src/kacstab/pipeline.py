"""End-to-end stage orchestration: forms, roots, semistables, A(σ), gap, heart, collection."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cone import (GapCertificate, HeartCertificate, ImaginaryCone, build_A_sigma, heart_simples,
                   imaginary_cone, phase_gap)
from .errors import NotABasis
from .exceptional import ExceptionalCollection, ExceptionalReport, extract_sigma_exceptional, verify_exceptional
from .quiver import FormPair, Quiver, QuiverType, classify_type, forms
from .roots import DEFAULT_BUDGET, RootData, Vector
from .stability import DEFAULT_CAP, CentralCharge, GenericHomTable, SupportData, semistable_classes_up_to, support_constant
from .gaussian import PhaseKey

DEFAULT_RETRIES = 3


class TableCache:
    """One generic hom table per quiver, grown when the bound outgrows its cap."""

    def __init__(self):
        self._tables: dict[Quiver, GenericHomTable] = {}

    def get(self, f: FormPair, h: int) -> GenericHomTable:
        q = f.quiver
        t = self._tables.get(q)
        need = max(DEFAULT_CAP, h)
        if t is None or t.cap < need:
            t = GenericHomTable(f, cap=need)
            self._tables[q] = t
        return t


@dataclass
class StageResult:
    quiver: Quiver
    forms: FormPair
    qtype: QuiverType
    h: int
    roots: RootData
    ss: list[tuple[Vector, PhaseKey]]
    support: SupportData
    cone: ImaginaryCone
    components: list
    gap: GapCertificate
    heart: HeartCertificate
    attempts: list[int] = field(default_factory=list)


def run_gap_stage(q: Quiver, Z: CentralCharge, h: int, *, retries: int = DEFAULT_RETRIES,
                  budget: int = DEFAULT_BUDGET, cache: TableCache | None = None,
                  roots_cache: dict | None = None, sink: dict | None = None) -> StageResult:
    """Run everything up to the heart certificate, doubling h on NotABasis.

    ``sink``, when given, receives each stage's JSON as soon as it is available,
    so callers can report partial progress after a failure.
    """
    sink = {} if sink is None else sink
    f = forms(q)
    sink["forms"] = {"euler": [list(r) for r in f.euler], "cartan": [list(r) for r in f.cartan]}
    qt = classify_type(f)
    sink["type"] = {"kind": qt.kind.value, "delta": list(qt.delta) if qt.delta else None}
    cache = cache or TableCache()
    attempts = []
    for attempt in range(retries + 1):
        attempts.append(h)
        sink["attempts"] = list(attempts)
        table = cache.get(f, h)
        key = (q, h)
        rd = roots_cache.get(key) if roots_cache is not None else None
        if rd is None:
            rd = RootData(f, q, h, budget=budget)
            if roots_cache is not None:
                roots_cache[key] = rd
        sink["roots"] = {"h": h, "real": len(rd.real), "imaginary": len(rd.imaginary),
                         "positive": len(rd.positive_roots())}
        ss = semistable_classes_up_to(Z, table, rd)
        sink["semistable"] = [{"root": list(r), "phase": p.to_json()} for r, p in ss]
        sd = support_constant(Z, ss)
        sink["support"] = sd.to_json()
        cone = imaginary_cone(qt, rd.imaginary, h)
        sink["cone"] = cone.to_json()
        comps = build_A_sigma(cone, Z, sd.eps2, sd.norm2)
        sink["components"] = [c.to_json() for c in comps]
        gap = phase_gap(comps, ss)
        sink["gap"] = gap.to_json()
        try:
            heart = heart_simples(gap, ss, f, Z, table=table)
            sink["heart"] = heart.to_json()
        except NotABasis:
            if attempt == retries:
                raise
            h *= 2
            continue
        return StageResult(q, f, qt, h, rd, ss, sd, cone, comps, gap, heart, attempts)
    raise AssertionError("unreachable")


@dataclass
class Analysis:
    stage: StageResult
    collection: ExceptionalCollection
    report: ExceptionalReport


def analyze(q: Quiver, Z: CentralCharge, h: int, **kw) -> Analysis:
    cache = kw.pop("cache", None) or TableCache()
    sink = kw.get("sink")
    st = run_gap_stage(q, Z, h, cache=cache, **kw)
    table = cache.get(st.forms, st.h)
    coll = extract_sigma_exceptional(st.heart, st.forms, table)
    report = verify_exceptional(coll, st.forms, table)
    if sink is not None:
        sink["exceptional"] = dict(coll.to_json(), report=report.to_json())
    return Analysis(st, coll, report)
