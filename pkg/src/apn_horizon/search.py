"""Exhaustive sweeps over (b, c) for fixed (m, r) and their reports."""
from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bluher, family, orbits
from . import field as fieldmod
from .errors import CapExceeded, ParameterError
from .family import DDT_CAP, FamilyParams
from .field import fmt_hex
from .subfield import SubfieldView, view_for

log = logging.getLogger(__name__)

SWEEP_CAP = 22
MODES = ("fast", "direct", "both")
CONJECTURE_HOLDS = "conjecture-holds"
WITNESSES_FOUND = "apn-witnesses-found"
_C_CHUNK = 1 << 16


class OracleMismatch(AssertionError):
    """The fast path and the direct zero count disagree on some pair."""


@dataclass(frozen=True)
class Witness:
    b: int
    c: int
    zeros: int = 0
    uniformity: int | None = None


@dataclass
class SearchReport:
    m: int
    r: int
    modulus: int
    xi: int
    generator: int
    verdict: str
    pairs_checked: int
    orbit_classes: int
    pair_orbit_classes: int
    witnesses: list[Witness] = field(default_factory=list)
    evidence_mode: str = "fast"
    wall_time: float = 0.0

    def summary_record(self) -> dict:
        return {
            "record": "summary",
            "m": self.m,
            "r": self.r,
            "modulus": fmt_hex(self.modulus),
            "xi": fmt_hex(self.xi),
            "generator": fmt_hex(self.generator),
            "verdict": self.verdict,
            "pairs_checked": self.pairs_checked,
            "orbit_classes": self.orbit_classes,
            "pair_orbit_classes": self.pair_orbit_classes,
            "witnesses": [_witness_record(w) for w in self.witnesses],
            "evidence_mode": self.evidence_mode,
            "wall_time": round(self.wall_time, 3),
        }

    def witness_records(self) -> list[dict]:
        return [
            {"record": "witness", "m": self.m, "r": self.r, **_witness_record(w)}
            for w in self.witnesses
        ]


def _witness_record(w: Witness) -> dict:
    return {"b": fmt_hex(w.b), "c": fmt_hex(w.c), "zeros": w.zeros, "uniformity": w.uniformity}


@dataclass(frozen=True)
class C0Report:
    m: int
    r: int
    b_checked: int
    failures: int
    max_attempts: int
    fallbacks: int
    rootless_b: list[int] = field(default_factory=list)

    def record(self) -> dict:
        d = asdict(self)
        d["rootless_b"] = [fmt_hex(b) for b in self.rootless_b]
        return {"record": "sweep-c0", **d}


@dataclass(frozen=True)
class AuditReport:
    m: int
    r: int
    pairs: int
    exhaustive: bool
    # confusion[(apn_by_ddt, zero_free)] = count
    confusion: dict[tuple[bool, bool], int]
    min_uniformity_with_zeros: int | None

    @property
    def diagonal(self) -> bool:
        return self.confusion[(True, False)] == 0 and self.confusion[(False, True)] == 0

    def record(self) -> dict:
        c = self.confusion
        return {
            "record": "audit",
            "m": self.m,
            "r": self.r,
            "pairs": self.pairs,
            "exhaustive": self.exhaustive,
            "confusion": {
                "apn_and_zero_free": c[(True, True)],
                "apn_with_zeros": c[(True, False)],
                "not_apn_zero_free": c[(False, True)],
                "not_apn_with_zeros": c[(False, False)],
            },
            "diagonal": self.diagonal,
        }


def check_window(m: int, r: int) -> None:
    if m % 2 or m < 4:
        raise ParameterError(f"m must be even and at least 4, got {m}")
    if not family.in_window(m, r):
        raise ParameterError(f"r={r} is outside the window gcd(r, m) = 1, r < m/2 for m={m}")


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("APN_HORIZON_THREADS", "1"))
    return max(1, threads)


# ---------------------------------------------------------------------------
# c = 0
# ---------------------------------------------------------------------------


def _veval_P_c0(view: SubfieldView, r: int, bs: np.ndarray, xs: np.ndarray) -> np.ndarray:
    ctx, q = view.ctx, view.q
    inner = ctx.vmul(bs, ctx.vfrob(xs, r)) ^ 1
    return ctx.vpow(inner, q + 1) ^ ctx.vpow(xs, q + 1)


def sweep_c0(m: int, r: int, modulus: int | None = None) -> C0Report:
    """Construct and re-check a zero of P_{0,b} for every b."""
    check_window(m, r)
    ctx = fieldmod.get_field(m, modulus)
    view = view_for(ctx)
    bs = np.arange(1, ctx.size, dtype=np.int64)
    xs = family.vconstruct_zero_c0(view, r, bs)
    bad = np.flatnonzero(_veval_P_c0(view, r, bs, xs) != 0)
    failures, fallbacks, max_attempts = 0, 0, 1
    rootless: list[int] = []
    for i in bad:
        b = int(bs[i])
        try:
            _, attempts = family.construct_zero_c0_traced(view, b, r)
        except AssertionError:
            failures += 1
            rootless.append(b)
            continue
        fallbacks += 1
        max_attempts = max(max_attempts, attempts)
    # b = 0: P = X^(q+1) + 1, zero at 1
    zero_b0 = family.construct_zero_c0(view, 0, r)
    if family.eval_P(FamilyParams(m, r, 0, 0, ctx), zero_b0) != 0:
        failures += 1
        rootless.insert(0, 0)
    return C0Report(m, r, ctx.size, failures, max_attempts, fallbacks, rootless)


# ---------------------------------------------------------------------------
# main sweep
# ---------------------------------------------------------------------------


def _sweep_chunk(ctx, view, bset, r, mode, b, c_lo, c_hi):
    """Zero-free c in [c_lo, c_hi) for this b, plus the fast/direct mismatch list."""
    cs = np.arange(c_lo, c_hi, dtype=np.int64)
    bs = np.full_like(cs, b)
    fast = direct = None
    if mode in ("fast", "both"):
        fast, _, _ = bluher.has_zero_fast_batch(ctx, view, bset, r, bs, cs)
    if mode in ("direct", "both"):
        direct = family.count_zeros_batch(ctx, r, bs, cs) > 0
    mismatches: list[int] = []
    if fast is not None and direct is not None:
        mismatches = [int(c) for c in cs[fast != direct]]
    verdict = direct if direct is not None else fast
    return [int(c) for c in cs[~verdict]], mismatches


def verify_conjecture(
    m: int,
    r: int,
    mode: str = "fast",
    threads: int | None = None,
    modulus: int | None = None,
    force: bool = False,
    ddt_cap: int = DDT_CAP,
    progress: bool = False,
) -> SearchReport:
    """Sweep every orbit representative b and every c, deciding whether P_{c,b} has a zero."""
    started = time.perf_counter()
    check_window(m, r)
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
    if m > SWEEP_CAP and not force:
        raise CapExceeded(f"m={m} exceeds the sweep cap {SWEEP_CAP}; pass force to run anyway")
    ctx = fieldmod.get_field(m, modulus)
    view = view_for(ctx)
    bset = bluher.bluher_set_for(view, r) if mode != "direct" else None
    part = orbits.partition(ctx, view, r)
    pair_classes = orbits.pair_orbit_count(ctx, view, r)

    tasks = [
        (b, lo, min(lo + _C_CHUNK, ctx.size))
        for b in part.representatives
        for lo in range(1, ctx.size, _C_CHUNK)
    ]
    workers = resolve_threads(threads)
    zero_free: list[tuple[int, int]] = []
    mismatches: list[tuple[int, int]] = []
    last_note = time.perf_counter()

    def run(task):
        b, lo, hi = task
        return task, _sweep_chunk(ctx, view, bset, r, mode, b, lo, hi)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for done, ((b, _, _), (free, bad)) in enumerate(pool.map(run, tasks), 1):
            zero_free.extend((b, c) for c in free)
            mismatches.extend((b, c) for c in bad)
            now = time.perf_counter()
            if progress and now - last_note > 5.0:
                log.info("m=%d r=%d: %d/%d chunks, %.1fs", m, r, done, len(tasks), now - started)
                last_note = now
    if mismatches:
        b, c = mismatches[0]
        raise OracleMismatch(
            f"fast and direct verdicts differ on {len(mismatches)} pairs, first (b, c) = ({b:#x}, {c:#x})"
        )

    c0 = sweep_c0(m, r, modulus)
    zero_free.extend((b, 0) for b in c0.rootless_b)

    witnesses = [_revalidate(ctx, r, b, c, ddt_cap) for b, c in sorted(zero_free)]
    report = SearchReport(
        m=m,
        r=r,
        modulus=ctx.modulus,
        xi=view.xi,
        generator=ctx.generator,
        verdict=WITNESSES_FOUND if witnesses else CONJECTURE_HOLDS,
        pairs_checked=len(part) * ctx.order + ctx.size,
        orbit_classes=len(part),
        pair_orbit_classes=pair_classes,
        witnesses=witnesses,
        evidence_mode=mode,
    )
    report.wall_time = time.perf_counter() - started
    return report


def _revalidate(ctx, r: int, b: int, c: int, ddt_cap: int) -> Witness:
    params = FamilyParams(ctx.m, r, b, c, ctx)
    zeros = family.count_zeros_P(params).count
    if zeros:
        raise OracleMismatch(f"pair ({b:#x}, {c:#x}) reported zero-free but P has {zeros} zeros")
    uniformity = None
    if 2 * ctx.m <= ddt_cap:
        uniformity = family.differential_uniformity(params, cap=ddt_cap).uniformity
        if uniformity != 2:
            raise OracleMismatch(
                f"pair ({b:#x}, {c:#x}) has zero-free P but differential uniformity {uniformity}"
            )
    return Witness(b, c, 0, uniformity)


# ---------------------------------------------------------------------------
# equivalence audit
# ---------------------------------------------------------------------------


def equivalence_audit(
    m: int,
    r: int,
    exhaustive: bool | None = None,
    samples: int = 500,
    seed: int = 0,
    modulus: int | None = None,
    cap: int = 16,
) -> AuditReport:
    """Cross-tabulate the direct differential check against zero-freeness of P."""
    check_window(m, r)
    if 2 * m > cap:
        raise CapExceeded(f"audit needs 2m <= {cap}, got m={m}")
    ctx = fieldmod.get_field(m, modulus)
    if exhaustive is None:
        exhaustive = m <= 4
    all_b, all_c = np.divmod(np.arange(ctx.size * ctx.size, dtype=np.int64), ctx.size)
    counts = family.count_zeros_batch(ctx, r, all_b, all_c)
    if exhaustive:
        chosen = range(all_b.size)
    else:
        rng = random.Random(seed)
        picked = set(rng.sample(range(all_b.size), min(samples, all_b.size)))
        picked.update(int(i) for i in np.flatnonzero(counts == 0))
        chosen = sorted(picked)
    confusion = {(a, z): 0 for a in (True, False) for z in (True, False)}
    min_u = None
    for i in chosen:
        params = FamilyParams(m, r, int(all_b[i]), int(all_c[i]), ctx)
        rep = family.differential_uniformity(params, early_exit=True, cap=cap)
        zero_free = bool(counts[i] == 0)
        confusion[(rep.is_apn, zero_free)] += 1
        if not zero_free:
            min_u = rep.uniformity if min_u is None else min(min_u, rep.uniformity)
    return AuditReport(m, r, len(chosen), exhaustive, confusion, min_u)
