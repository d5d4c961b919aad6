"""Compare computed invariants of catalog entries with their expected values."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .catalog import CatalogEntry
from .jacobian import JacobianReport, analyze
from .singular_locus import total_milnor

JACOBIAN_KEYS = ("kind", "exponents", "b", "tau", "ct", "st", "mdr", "almost", "n", "n_at",
                 "betti", "shape")
MILNOR_KEYS = ("mu", "defect")


@dataclass(frozen=True)
class EntryResult:
    name: str
    ok: bool
    mismatches: tuple  # (key, expected, computed)
    seconds: float
    error: str | None = None


def report_values(report: JacobianReport) -> dict:
    """The catalog-comparable view of a full report."""
    cls = report.classification
    n = {k: v for k, v in enumerate(report.n_dims.values) if v}
    out = {"kind": cls.kind, "exponents": cls.exponents, "b": cls.b, "tau": cls.tau,
           "ct": cls.ct, "st": cls.st, "mdr": cls.mdr, "almost": cls.almost, "n": n}
    if report.betti is not None:
        out["betti"] = report.betti.as_resolution()
        s = report.shape
        out["shape"] = (s.kind, tuple(s.exponents), s.b)
    return out


def computed_values(entry: CatalogEntry, seed=0, field=None) -> dict:
    wants_betti = any(k in entry.expected for k in ("betti", "shape"))
    report = analyze(entry.curve(seed=seed), field=field, seed=seed, betti=wants_betti)
    values = report_values(report)
    if any(k in entry.expected for k in MILNOR_KEYS):
        m = total_milnor(entry.curve(seed=seed), seed=seed)
        values["mu"], values["defect"] = m.mu, m.defect
    return values


def verify_entry(entry: CatalogEntry, seed=0, field=None) -> EntryResult:
    start = time.perf_counter()
    try:
        got = computed_values(entry, seed, field)
    except Exception as exc:  # reported per entry, never fatal for a batch
        return EntryResult(entry.name, False, (), time.perf_counter() - start,
                           f"{type(exc).__name__}: {exc}")
    if "n_at" in entry.expected:
        got["n_at"] = {k: got["n"].get(k, 0) for k in entry.expected["n_at"]}
    bad = tuple((k, v, got.get(k)) for k, v in entry.expected.items() if got.get(k) != v)
    return EntryResult(entry.name, not bad, bad, time.perf_counter() - start)


def _verify_star(args):
    return verify_entry(*args)


def verify_corpus(entries, seed=0, field=None, workers: int | None = None) -> list:
    """Verify entries, in parallel processes when ``workers`` != 1; order is preserved."""
    jobs = [(e, seed, field) for e in entries]
    if workers == 1 or len(jobs) < 2:
        return [_verify_star(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_star, jobs))
