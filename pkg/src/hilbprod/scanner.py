"""Exhaustive desk-scale scans over partition pairs, with reproducible reports.

Three scan families:

* ``verify_lemma_inequalities`` checks the strict binomial-product
  inequalities between partitions of different lengths (resp. of the same
  length, oriented at the first differing part), together with their
  intermediate product forms, for every qualifying pair up to ``n_max`` and
  every shift ``1 <= p <= p_max``.  Rational comparisons are done in exact
  cross-multiplied integer form, never floating point.  A violation is a
  first-class finding, not an engine error; these inequalities genuinely
  fail once unit parts accumulate (earliest witnesses: (3,4) vs (1,1,5) at
  p=5 for the cross-ratio form, both sides 72/25; (5,5) vs (1,1,8) at p=1,
  both products 36; same-length (1,5,5) vs (2,2,7) at p=1, both 72).
* ``verify_majorization`` asserts that k-coloured partition counts respect
  strict majorization (k >= 3) on every comparable same-length pair.
* ``scan_conjecture`` records every collision of coloured-count tuples on
  distinct same-length pairs.  It reports and never asserts: a collision
  would be a finding, not a test failure.

Reports are deterministic for fixed parameters and engine version: work is
bucketed by n, buckets are merged in sorted order, and the worker count never
affects the output (``wall_time_ms`` is the one volatile field and is
excluded from the fingerprint).
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Any, Iterable, Mapping

from ._version import __version__
from .errors import UsageError
from .partitions import (
    Majorization,
    Partition,
    colored_count_tuple,
    majorizes,
    partitions_by_length,
)

__all__ = [
    "Violation",
    "ScanReport",
    "verify_lemma_inequalities",
    "verify_majorization",
    "scan_conjecture",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("scan_kind", "n", "a", "b", "k_or_p", "value_a", "value_b")


@dataclass(frozen=True)
class Violation:
    scan_kind: str
    n: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    k_or_p: int
    value_a: int
    value_b: int
    form: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "scan_kind": self.scan_kind,
            "n": self.n,
            "a": list(self.a),
            "b": list(self.b),
            "k_or_p": self.k_or_p,
            "value_a": self.value_a,
            "value_b": self.value_b,
            "form": self.form,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Violation":
        return cls(
            d["scan_kind"],
            d["n"],
            tuple(d["a"]),
            tuple(d["b"]),
            d["k_or_p"],
            d["value_a"],
            d["value_b"],
            d.get("form", ""),
        )


@dataclass(frozen=True)
class ScanReport:
    scan_kind: str
    parameters: tuple[tuple[str, Any], ...]
    pairs_checked: int
    violations: tuple[Violation, ...]
    wall_time_ms: int
    engine_version: str

    def parameter(self, name: str) -> Any:
        return dict(self.parameters)[name]

    def to_dict(self) -> dict[str, Any]:
        return {
            "scan_kind": self.scan_kind,
            "parameters": dict(self.parameters),
            "pairs_checked": self.pairs_checked,
            "violations": [v.to_dict() for v in self.violations],
            "wall_time_ms": self.wall_time_ms,
            "engine_version": self.engine_version,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ScanReport":
        return cls(
            scan_kind=d["scan_kind"],
            parameters=tuple(sorted(d["parameters"].items())),
            pairs_checked=d["pairs_checked"],
            violations=tuple(Violation.from_dict(v) for v in d["violations"]),
            wall_time_ms=d["wall_time_ms"],
            engine_version=d["engine_version"],
        )

    def fingerprint(self) -> str:
        """Canonical JSON of everything except the volatile wall time."""
        content = self.to_dict()
        del content["wall_time_ms"]
        return json.dumps(content, sort_keys=True)

    def to_records(self) -> list[dict[str, Any]]:
        """Record-set form: one header record, then one record per violation."""
        header = self.to_dict()
        del header["violations"]
        header["record"] = "header"
        records = [header]
        for v in self.violations:
            record = v.to_dict()
            record["record"] = "violation"
            records.append(record)
        return records

    @classmethod
    def from_records(cls, records: list[Mapping[str, Any]]) -> "ScanReport":
        if not records or records[0].get("record") != "header":
            raise ValueError("record set must start with a header record")
        header = dict(records[0])
        header.pop("record")
        header["violations"] = []
        report = cls.from_dict(header)
        violations = tuple(
            Violation.from_dict(r) for r in records[1:] if r.get("record") == "violation"
        )
        return cls(
            scan_kind=report.scan_kind,
            parameters=report.parameters,
            pairs_checked=report.pairs_checked,
            violations=violations,
            wall_time_ms=report.wall_time_ms,
            engine_version=report.engine_version,
        )

    def write_records(self, path: str | Path) -> None:
        """JSON Lines: the header record, then one line per violation."""
        with open(path, "w") as handle:
            for record in self.to_records():
                handle.write(json.dumps(record, sort_keys=True) + "\n")

    def csv_rows(self) -> list[dict[str, Any]]:
        return [
            {
                "scan_kind": v.scan_kind,
                "n": v.n,
                "a": ",".join(map(str, v.a)),
                "b": ",".join(map(str, v.b)),
                "k_or_p": v.k_or_p,
                "value_a": v.value_a,
                "value_b": v.value_b,
            }
            for v in self.violations
        ]

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(CSV_COLUMNS))
            writer.writeheader()
            writer.writerows(self.csv_rows())


# -- pair generators -----------------------------------------------------------


def _diff_length_pairs(n: int) -> Iterable[tuple[Partition, Partition]]:
    """Pairs (shorter, longer) across length buckets, deterministic order."""
    buckets = partitions_by_length(n)
    lengths = sorted(buckets)
    for i, r in enumerate(lengths):
        for s_len in lengths[i + 1 :]:
            for a in buckets[r]:
                for b in buckets[s_len]:
                    yield a, b


def _same_length_pairs(n: int) -> Iterable[tuple[Partition, Partition]]:
    """Unordered distinct same-length pairs, each oriented so that the
    partition that is smaller at the first differing index comes first."""
    buckets = partitions_by_length(n)
    for r in sorted(buckets):
        bucket = buckets[r]
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                a, b = bucket[i], bucket[j]
                for x, y in zip(a.parts, b.parts):
                    if x != y:
                        if x > y:
                            a, b = b, a
                        break
                yield a, b


# -- bucket workers --------------------------------------------------------


def _shift_products(parts: tuple[int, ...], p_max: int) -> tuple[list[int], list[int]]:
    """Per shift p: (prod of (part+p), prod of C(part+p, p)), 1-indexed by p."""
    shift = [0] * (p_max + 1)
    binom = [0] * (p_max + 1)
    for p in range(1, p_max + 1):
        sh = 1
        bi = 1
        for part in parts:
            sh *= part + p
            bi *= comb(part + p, p)
        shift[p] = sh
        binom[p] = bi
    return shift, binom


def _lemma_bucket(task: tuple) -> tuple[int, list[Violation]]:
    _, n, p_max, mode = task
    scan_kind = f"lemma_{mode}"
    violations: list[Violation] = []
    pairs = 0
    cache: dict[tuple[int, ...], tuple[list[int], list[int]]] = {}

    def products(p: Partition) -> tuple[list[int], list[int]]:
        got = cache.get(p.parts)
        if got is None:
            got = _shift_products(p.parts, p_max)
            cache[p.parts] = got
        return got

    if mode == "diff_length":
        pair_iter = _diff_length_pairs(n)
    else:
        pair_iter = _same_length_pairs(n)

    for a, b in pair_iter:
        pairs += 1
        shift_a, binom_a = products(a)
        shift_b, binom_b = products(b)
        r, s_len = a.length, b.length
        # plain product of (part + 1): the p = 1 base form
        if not shift_a[1] < shift_b[1]:
            violations.append(
                Violation(
                    scan_kind, n, a.parts, b.parts, 1,
                    shift_a[1], shift_b[1], "unit-shift-product",
                )
            )
        for p in range(1, p_max + 1):
            # prod (part+p)/p compared exactly: cross-multiply by p^length
            lhs = shift_a[p] * p**s_len
            rhs = shift_b[p] * p**r
            if not lhs < rhs:
                violations.append(
                    Violation(
                        scan_kind, n, a.parts, b.parts, p,
                        lhs, rhs, "shift-ratio-cross-multiplied",
                    )
                )
            if not binom_a[p] < binom_b[p]:
                violations.append(
                    Violation(
                        scan_kind, n, a.parts, b.parts, p,
                        binom_a[p], binom_b[p], "binomial-product",
                    )
                )
    return pairs, violations


def _majorization_bucket(task: tuple) -> tuple[int, list[Violation]]:
    _, n, k_tuple = task
    violations: list[Violation] = []
    pairs = 0
    for a, b in _same_length_pairs(n):
        pairs += 1
        order = majorizes(b, a)
        if order is Majorization.STRICTLY_MAJORIZES:
            smaller, bigger = a, b
        elif order is Majorization.MAJORIZED_BY:
            smaller, bigger = b, a
        else:
            continue
        for k in k_tuple:
            low = colored_count_tuple(k, smaller)
            high = colored_count_tuple(k, bigger)
            if not high > low:
                violations.append(
                    Violation(
                        "majorization", n, smaller.parts, bigger.parts, k,
                        low, high, "strict-majorization-inequality",
                    )
                )
    return pairs, violations


def _conjecture_bucket(task: tuple) -> tuple[int, list[Violation]]:
    _, n, k_tuple = task
    violations: list[Violation] = []
    pairs = 0
    for a, b in _same_length_pairs(n):
        pairs += 1
        for k in k_tuple:
            va = colored_count_tuple(k, a)
            vb = colored_count_tuple(k, b)
            if va == vb:
                violations.append(
                    Violation(
                        "conjecture", n, a.parts, b.parts, k,
                        va, vb, "collision",
                    )
                )
    return pairs, violations


_BUCKET_WORKERS = {
    "lemma": _lemma_bucket,
    "majorization": _majorization_bucket,
    "conjecture": _conjecture_bucket,
}


def _dispatch_bucket(task: tuple) -> tuple[int, list[Violation]]:
    return _BUCKET_WORKERS[task[0]](task)


def _run_buckets(
    tasks: list[tuple], workers: int
) -> tuple[int, list[Violation]]:
    if workers <= 1:
        results = [_dispatch_bucket(task) for task in tasks]
    else:
        # bucketed map with a deterministic merge: executor.map preserves
        # task order, so the report is byte-identical for any worker count
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_dispatch_bucket, tasks))
    pairs = 0
    violations: list[Violation] = []
    for bucket_pairs, bucket_violations in results:
        pairs += bucket_pairs
        violations.extend(bucket_violations)
    return pairs, violations


# -- public scans ----------------------------------------------------------


def verify_lemma_inequalities(
    n_max: int,
    p_max: int,
    mode: str,
    *,
    workers: int = 1,
) -> ScanReport:
    """Scan the strict product inequalities over every qualifying pair.

    ``mode`` is ``"diff_length"`` (pairs of different lengths, shorter side
    expected strictly smaller) or ``"same_length"`` (distinct same-length
    pairs oriented at the first differing part).  Three forms are checked
    per pair: the unit-shift product ``prod(part + 1)``, the shifted ratio
    ``prod((part + p)/p)`` in cross-multiplied integer form, and the
    binomial product ``prod C(part + p, p)``.  Every failed strict
    comparison is recorded as a violation; the report is the evidence
    either way.
    """
    if mode not in ("diff_length", "same_length"):
        raise UsageError(f"mode must be diff_length or same_length, got {mode!r}")
    if n_max < 4:
        raise UsageError(f"n_max must be >= 4, got {n_max}")
    if p_max < 1:
        raise UsageError(f"p_max must be >= 1, got {p_max}")
    start = time.perf_counter()
    tasks = [("lemma", n, p_max, mode) for n in range(1, n_max + 1)]
    pairs, violations = _run_buckets(tasks, workers)
    return ScanReport(
        scan_kind=f"lemma_{mode}",
        parameters=(("n_max", n_max), ("p_max", p_max)),
        pairs_checked=pairs,
        violations=tuple(violations),
        wall_time_ms=int((time.perf_counter() - start) * 1000),
        engine_version=__version__,
    )


def verify_majorization(
    k_set: Iterable[int],
    n_max: int,
    *,
    workers: int = 1,
) -> ScanReport:
    """Assert coloured counts respect strict majorization for every k in k_set.

    Every distinct same-length pair is examined (that is what
    ``pairs_checked`` counts); the inequality is asserted on the strictly
    comparable ones.
    """
    k_tuple = tuple(sorted(set(k_set)))
    if not k_tuple:
        raise UsageError("k_set must be nonempty")
    if min(k_tuple) < 3:
        raise UsageError(
            f"majorization monotonicity needs k >= 3, got {min(k_tuple)}"
        )
    if n_max < 1:
        raise UsageError(f"n_max must be >= 1, got {n_max}")
    start = time.perf_counter()
    tasks = [("majorization", n, k_tuple) for n in range(1, n_max + 1)]
    pairs, violations = _run_buckets(tasks, workers)
    return ScanReport(
        scan_kind="majorization",
        parameters=(("k_set", list(k_tuple)), ("n_max", n_max)),
        pairs_checked=pairs,
        violations=tuple(violations),
        wall_time_ms=int((time.perf_counter() - start) * 1000),
        engine_version=__version__,
    )


def scan_conjecture(
    k_set: Iterable[int],
    n_max: int,
    *,
    workers: int = 1,
) -> ScanReport:
    """Record coloured-count collisions on distinct same-length pairs.

    Purely exploratory: any k (including 1, 2, 3) is accepted and collisions
    are reported as findings with full witnesses, never raised.
    """
    k_tuple = tuple(sorted(set(k_set)))
    if not k_tuple:
        raise UsageError("k_set must be nonempty")
    if n_max < 1:
        raise UsageError(f"n_max must be >= 1, got {n_max}")
    start = time.perf_counter()
    tasks = [("conjecture", n, k_tuple) for n in range(1, n_max + 1)]
    pairs, violations = _run_buckets(tasks, workers)
    return ScanReport(
        scan_kind="conjecture",
        parameters=(("k_set", list(k_tuple)), ("n_max", n_max)),
        pairs_checked=pairs,
        violations=tuple(violations),
        wall_time_ms=int((time.perf_counter() - start) * 1000),
        engine_version=__version__,
    )
