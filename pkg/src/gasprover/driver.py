"""End-to-end pipeline: local stability pre-check, contraction-exponent
search, positivity proof, and batch ("webbook") reporting.

Verdicts follow a three-valued contract: "true" (global asymptotic stability
proven, always with a Proven certificate attached), "false" (the equilibrium
is not locally asymptotically stable, or an exact negative witness was found),
and "FAIL" (the method was inconclusive within the given budgets).
"""
from __future__ import annotations

import math
import random
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .conjecture import MeshParams, conjecture_k
from .positivity import ProofCertificate, prove_nonneg
from .recurrence import (
    Equilibrium,
    RecurrenceSpec,
    UnsupportedInputError,
    build_contraction_poly,
    find_equilibrium,
    parse_rde,
)
from .stability import LasVerdict, las_check

__all__ = [
    "PipelineResult",
    "WebbookReport",
    "las_check",
    "prove",
    "prove_k",
    "webbook",
]


@dataclass
class PipelineResult:
    verdict: str  # true | false | FAIL
    reason: str
    K: int | None = None
    equilibrium: Equilibrium | None = None
    las: LasVerdict | None = None
    certificate: ProofCertificate | None = None
    timings: dict = field(default_factory=dict)


def prove_k(
    spec: RecurrenceSpec, K: int, depth_limit: int = 12
) -> PipelineResult:
    """Decide whether the given contraction exponent K works.

    "true" iff the contraction polynomial is proven non-negative on the
    orthant. An identically-zero polynomial (periodic maps at even powers)
    is "false": strict contraction demands strict positivity off the
    equilibrium.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    timings = {}
    t0 = time.perf_counter()
    eq = find_equilibrium(spec)
    timings["equilibrium"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    P = build_contraction_poly(spec, eq, K)
    timings["build"] = time.perf_counter() - t0
    if P.is_zero():
        return PipelineResult(
            "false",
            "identically-zero-for-strictness",
            K=K,
            equilibrium=eq,
            timings=timings,
        )
    t0 = time.perf_counter()
    cert = prove_nonneg(P, eq.value, depth_limit)
    timings["positivity"] = time.perf_counter() - t0
    if cert.verdict == "Proven":
        return PipelineResult(
            "true", "positivity-proven", K=K, equilibrium=eq,
            certificate=cert, timings=timings,
        )
    if cert.verdict == "Disproven":
        return PipelineResult(
            "false", "negative-witness", K=K, equilibrium=eq,
            certificate=cert, timings=timings,
        )
    return PipelineResult(
        "FAIL", "positivity-undecided", K=K, equilibrium=eq,
        certificate=cert, timings=timings,
    )


def prove(
    spec: RecurrenceSpec,
    maxK: int = 10,
    params: MeshParams | None = None,
    depth_limit: int = 12,
    prove_each_k: bool = False,
) -> PipelineResult:
    """Full pipeline: local stability, K search, positivity proof.

    With prove_each_k the positivity prover itself is run for every K from 1
    upward; otherwise a mesh search conjectures the starting K first, which
    is usually much cheaper.
    """
    if maxK < 1:
        raise ValueError("maxK must be >= 1")
    if params is None:
        params = MeshParams(maxK=maxK)
    timings = {}
    t0 = time.perf_counter()
    eq = find_equilibrium(spec)
    las = las_check(spec, eq)
    timings["las"] = time.perf_counter() - t0
    if las.outcome == "unstable":
        return PipelineResult(
            "false", "not-locally-asymptotically-stable",
            equilibrium=eq, las=las, timings=timings,
        )
    if las.outcome == "inconclusive":
        return PipelineResult(
            "FAIL", "local-stability-inconclusive",
            equilibrium=eq, las=las, timings=timings,
        )

    start_k = 1
    if not prove_each_k:
        t0 = time.perf_counter()
        mesh_params = MeshParams(params.eps, params.N, params.restarts, maxK)
        conjectured = conjecture_k(spec, eq, mesh_params)
        timings["conjecture"] = time.perf_counter() - t0
        if conjectured is None:
            return PipelineResult(
                "FAIL", "no-contraction-exponent-conjectured",
                equilibrium=eq, las=las, timings=timings,
            )
        start_k = conjectured

    t0 = time.perf_counter()
    last_cert = None
    for K in range(start_k, maxK + 1):
        P = build_contraction_poly(spec, eq, K)
        if P.is_zero():
            continue
        cert = prove_nonneg(P, eq.value, depth_limit)
        last_cert = cert
        if cert.verdict == "Proven":
            timings["positivity"] = time.perf_counter() - t0
            return PipelineResult(
                "true", "positivity-proven", K=K, equilibrium=eq,
                las=las, certificate=cert, timings=timings,
            )
    timings["positivity"] = time.perf_counter() - t0
    return PipelineResult(
        "FAIL", "max-k-exhausted", K=maxK, equilibrium=eq,
        las=las, certificate=last_cert, timings=timings,
    )


# ---------------------------------------------------------------------------
# Webbook: batch proving over randomly instantiated parameter templates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WebbookRow:
    values: tuple[tuple[str, Fraction], ...]
    rde: str
    status: str  # true | false | FAIL | skipped
    detail: str
    equilibrium: Fraction | None = None
    K: int | None = None


@dataclass
class WebbookReport:
    template: str
    seed: int
    rows: list[WebbookRow]

    def to_text(self) -> str:
        lines = [f"template: {self.template}", f"seed: {self.seed}"]
        header = ("params", "equilibrium", "K", "verdict", "detail")
        table = [header]
        for row in self.rows:
            params = ", ".join(f"{n}={v}" for n, v in row.values)
            table.append(
                (
                    params,
                    "-" if row.equilibrium is None else str(row.equilibrium),
                    "-" if row.K is None else str(row.K),
                    row.status,
                    row.detail,
                )
            )
        widths = [max(len(r[i]) for r in table) for i in range(len(header))]
        for r in table:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"


_MAX_DENOMINATOR = 64


def _sample_rational(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    """A rational in (lo, hi] with denominator at most 64."""
    for _ in range(1000):
        q = rng.randrange(1, _MAX_DENOMINATOR + 1)
        p_lo = math.floor(lo * q) + 1
        p_hi = math.floor(hi * q)
        if p_lo > p_hi:
            continue
        return Fraction(rng.randrange(p_lo, p_hi + 1), q)
    raise ValueError(f"cannot sample a rational in ({lo}, {hi}]")


def webbook(
    template: str,
    ranges: dict[str, tuple[Fraction, Fraction]],
    count: int,
    seed: int,
    maxK: int = 10,
    params: MeshParams | None = None,
    depth_limit: int = 12,
    order: int | None = None,
) -> WebbookReport:
    """Instantiate the template `count` times at random rational parameter
    values drawn from half-open ranges (lo, hi], prove each instance, and
    collect a deterministic tabular report.

    Instances whose coefficients come out non-positive are skipped and
    recorded as such rather than aborting the batch.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    for name, (lo, hi) in ranges.items():
        if not re.fullmatch(r"[A-Za-z_]\w*", name) or re.fullmatch(r"x\d+", name):
            raise ValueError(f"invalid parameter name: {name}")
        if lo >= hi:
            raise ValueError(f"empty range for {name}: ({lo}, {hi}]")
    rng = random.Random(seed)
    names = sorted(ranges)
    rows = []
    for _ in range(count):
        values = tuple(
            (name, _sample_rational(rng, *ranges[name])) for name in names
        )
        rde = template
        for name, v in values:
            rde = re.sub(
                rf"\b{re.escape(name)}\b",
                f"({v.numerator}/{v.denominator})",
                rde,
            )
        try:
            spec = parse_rde(rde, order)
            result = prove(spec, maxK, params, depth_limit)
        except UnsupportedInputError as exc:
            rows.append(WebbookRow(values, rde, "skipped", exc.kind))
            continue
        rows.append(
            WebbookRow(
                values,
                rde,
                result.verdict,
                result.reason,
                equilibrium=result.equilibrium.value
                if result.equilibrium
                else None,
                K=result.K,
            )
        )
    return WebbookReport(template, seed, rows)
