"""Positivity of polynomials on the positive orthant by region splitting.

The orthant is split at the distinguished point xbar into 2^n regions, each
mapped back onto the orthant by exact shift/inversion substitutions. Cheap
coefficient tests certify or refute each region; inconclusive regions are
mapped onto a finite box and subdivided recursively, every sub-box being
mapped onto the orthant again. The whole run is recorded as a replayable
certificate, and refutations carry an exact witness point in the original
coordinates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .parsing import parse_rational
from .polynomial import MultiPoly


@dataclass(frozen=True)
class RegionSpec:
    """One of the 2^n orthant regions: per variable low [0,xbar] or high [xbar,inf)."""

    highs: tuple[bool, ...]
    xbar: Fraction

    @property
    def label(self) -> str:
        if len(self.highs) == 2:
            ew = "E" if self.highs[0] else "W"
            ns = "N" if self.highs[1] else "S"
            return ns + ew
        return "".join("H" if h else "L" for h in self.highs)


@dataclass(frozen=True)
class BoxSpec:
    """Axis-aligned rational box; open_low marks axes open on the low side."""

    bounds: tuple[tuple[Fraction, Fraction], ...]
    open_low: tuple[bool, ...]

    def contains(self, point) -> bool:
        for x, (a, b), op in zip(point, self.bounds, self.open_low):
            if not ((a < x if op else a <= x) and x <= b):
                return False
        return True


@dataclass(frozen=True)
class TestOutcome:
    test: str  # PosCoeffs | SubPolyN | LCoeff | Const | ZeroOnlyAtOrigin
    result: str  # pass | fail | refute
    detail: dict = field(default_factory=dict)


@dataclass
class CertNode:
    path: tuple[str, ...]
    region: RegionSpec
    box: BoxSpec | None  # None for region-level nodes
    digest: str
    outcomes: list[TestOutcome]
    status: str  # pass | refute | split | depth-limit | cannot-finitize


@dataclass
class ProofCertificate:
    input_digest: str
    nvars: int
    xbar: Fraction
    depth_limit: int
    verdict: str  # Proven | Disproven | Fail
    nodes: list[CertNode]
    witness: list[Fraction] | None = None
    witness_value: Fraction | None = None
    fail_reason: str | None = None


# ---------------------------------------------------------------------------
# Region construction
# ---------------------------------------------------------------------------


def _region_specs(nvars: int, xbar: Fraction) -> list[RegionSpec]:
    if xbar == 0:
        return [RegionSpec(tuple([True] * nvars), xbar)]
    specs = []
    for code in range(2 ** nvars - 1, -1, -1):
        highs = tuple(bool((code >> (nvars - 1 - i)) & 1) for i in range(nvars))
        specs.append(RegionSpec(highs, xbar))
    return specs


def region_poly(P: MultiPoly, region: RegionSpec) -> MultiPoly:
    """P transformed so the region corresponds to the whole positive orthant."""
    xbar = region.xbar
    result = P.shift([xbar if h else Fraction(0) for h in region.highs])
    if xbar != 0:
        for i, high in enumerate(region.highs):
            if not high:
                result = result.invert_var(i)._shift_one(i, 1 / xbar)
    return result


def region_to_original(region: RegionSpec, point) -> list[Fraction]:
    """Map a point in region coordinates back to the original orthant."""
    out = []
    for w, high in zip(point, region.highs):
        if high:
            out.append(w + region.xbar)
        else:
            out.append(1 / (w + 1 / region.xbar))
    return out


def orthant_split(P: MultiPoly, xbar: Fraction):
    """The 2^n region polynomials (single all-high region when xbar = 0)."""
    if P.is_zero():
        raise ValueError("cannot split the zero polynomial")
    if xbar < 0:
        raise ValueError("split point must be non-negative")
    return [(r, region_poly(P, r)) for r in _region_specs(P.nvars, xbar)]


# ---------------------------------------------------------------------------
# Coefficient tests
# ---------------------------------------------------------------------------


def test_poscoeffs(P: MultiPoly) -> TestOutcome:
    for exps, coeff in P.sorted_terms():
        if coeff < 0:
            return TestOutcome(
                "PosCoeffs", "fail", {"negative_term": list(exps), "coeff": coeff}
            )
    const = P.constant_term()
    if const > 0:
        return TestOutcome("PosCoeffs", "pass", {"constant": const})
    return TestOutcome("PosCoeffs", "fail", {"reason": "constant-zero"})


def zero_only_at_origin(P: MultiPoly) -> TestOutcome:
    if any(c < 0 for c in P.terms.values()) or P.constant_term() != 0:
        raise ValueError("requires non-negative coefficients and zero constant")
    n = P.nvars
    supports = [frozenset(i for i, e in enumerate(exps) if e) for exps in P.terms]
    for mask in range(1, 2 ** n - 1):
        subset = frozenset(i for i in range(n) if (mask >> i) & 1)
        if not any(s.isdisjoint(subset) for s in supports):
            return TestOutcome(
                "ZeroOnlyAtOrigin", "fail", {"vanishing_subset": sorted(subset)}
            )
    return TestOutcome("ZeroOnlyAtOrigin", "pass")


def _leading_principal_minors(A: list[list[Fraction]]) -> list[Fraction]:
    """Determinants of the leading k-by-k blocks, by exact Gaussian elimination."""
    n = len(A)
    minors = []
    for k in range(1, n + 1):
        m = [row[:k] for row in A[:k]]
        det = Fraction(1)
        for col in range(k):
            pivot = next((r for r in range(col, k) if m[r][col] != 0), None)
            if pivot is None:
                det = Fraction(0)
                break
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det *= m[col][col]
            for r in range(col + 1, k):
                f = m[r][col] / m[col][col]
                for c in range(col, k):
                    m[r][c] -= f * m[col][c]
        minors.append(det)
    return minors


def quadratic_form_matrix(P: MultiPoly) -> list[list[Fraction]]:
    """Symmetric matrix of the degree-2 part, off-diagonal entries halved."""
    n = P.nvars
    A = [[Fraction(0)] * n for _ in range(n)]
    for exps, coeff in P.terms.items():
        if sum(exps) != 2:
            continue
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 1:
            A[support[0]][support[0]] = coeff
        else:
            i, j = support
            A[i][j] = A[j][i] = coeff / 2
    return A


def test_subpoly_n(P: MultiPoly) -> TestOutcome:
    for exps, coeff in P.terms.items():
        if coeff >= 0:
            continue
        support = [i for i, e in enumerate(exps) if e]
        if sum(exps) != 2 or len(support) != 2:
            return TestOutcome(
                "SubPolyN",
                "fail",
                {"reason": "not-applicable", "negative_term": list(exps)},
            )
    A = quadratic_form_matrix(P)
    minors = _leading_principal_minors(A)
    detail: dict = {"minors": minors}
    if P.nvars == 2:
        a, c = A[0][0], A[1][1]
        b = 2 * A[0][1]
        detail.update({"a": a, "b": b, "c": c, "d": 4 * a * c - b * b})
    if all(m > 0 for m in minors):
        return TestOutcome("SubPolyN", "pass", detail)
    detail["reason"] = "not-positive-definite"
    return TestOutcome("SubPolyN", "fail", detail)


def test_lcoeff(P: MultiPoly) -> TestOutcome:
    if P.is_zero():
        return TestOutcome("LCoeff", "fail", {"reason": "zero-polynomial"})
    top = P.total_degree()
    if top == 0:
        return TestOutcome("LCoeff", "fail", {"reason": "constant-polynomial"})
    leaders = {e: c for e, c in P.terms.items() if sum(e) == top}
    if all(c < 0 for c in leaders.values()):
        return TestOutcome(
            "LCoeff", "refute", {"total_degree": top, "leaders": len(leaders)}
        )
    return TestOutcome("LCoeff", "fail", {"reason": "mixed-sign-leaders"})


def test_const(P: MultiPoly) -> TestOutcome:
    const = P.constant_term()
    if const < 0:
        return TestOutcome("Const", "refute", {"constant": const})
    return TestOutcome("Const", "fail", {"constant": const})


# ---------------------------------------------------------------------------
# Finitization and subdivision
# ---------------------------------------------------------------------------


def finitize(P: MultiPoly, region: RegionSpec) -> tuple[MultiPoly, BoxSpec]:
    """Map an unbounded region onto a finite box by inverting high variables.

    The result is built from the original polynomial: high variables x become
    1/x on (0, 1/xbar], low variables keep [0, xbar].
    """
    if region.xbar == 0:
        raise ValueError("cannot finitize a region with zero split point")
    result = P
    bounds = []
    open_low = []
    for i, high in enumerate(region.highs):
        if high:
            result = result.invert_var(i)
            bounds.append((Fraction(0), 1 / region.xbar))
            open_low.append(True)
        else:
            bounds.append((Fraction(0), region.xbar))
            open_low.append(False)
    return result, BoxSpec(tuple(bounds), tuple(open_low))


def finitized_to_original(region: RegionSpec, point) -> list[Fraction]:
    return [
        1 / x if high else x for x, high in zip(point, region.highs)
    ]


def subdivide(box: BoxSpec) -> list[tuple[str, BoxSpec]]:
    """The 2^n half-boxes, labelled by a bit string (1 = upper half per axis)."""
    n = len(box.bounds)
    children = []
    for code in range(2 ** n):
        bits = [(code >> (n - 1 - i)) & 1 for i in range(n)]
        bounds = []
        open_low = []
        for i, ((a, b), bit) in enumerate(zip(box.bounds, bits)):
            mid = (a + b) / 2
            if bit:
                bounds.append((mid, b))
                open_low.append(True)
            else:
                bounds.append((a, mid))
                open_low.append(box.open_low[i])
        children.append(
            ("".join(map(str, bits)), BoxSpec(tuple(bounds), tuple(open_low)))
        )
    return children


def boxed_to_box(box: BoxSpec, point) -> list[Fraction]:
    """Map a point in box-mapped orthant coordinates into the box itself."""
    out = []
    for w, (a, b) in zip(point, box.bounds):
        out.append(1 / (w + 1 / (b - a)) + a)
    return out


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------


def _search_negative(P: MultiPoly, outward: bool) -> list[Fraction] | None:
    """A point on the all-ones ray where P < 0: inward 1/2^m or outward 2^m."""
    n = P.nvars
    for m in range(1, 64):
        t = Fraction(2) ** m if outward else Fraction(1, 2 ** m)
        point = [t] * n
        if P.evaluate(point) < 0:
            return point
    return None


def _refine_witness(P: MultiPoly, point) -> list[Fraction]:
    return point


# ---------------------------------------------------------------------------
# Main driver
# ---------------------------------------------------------------------------


def _run_tests(P: MultiPoly):
    """Returns (status, outcomes, witness_in_local_coords)."""
    outcomes = []
    pc = test_poscoeffs(P)
    outcomes.append(pc)
    if pc.result == "pass":
        return "pass", outcomes, None
    if pc.detail.get("reason") == "constant-zero":
        zo = zero_only_at_origin(P)
        outcomes.append(zo)
        if zo.result == "pass":
            return "pass", outcomes, None
    sp = test_subpoly_n(P)
    outcomes.append(sp)
    if sp.result == "pass" and P.constant_term() >= 0:
        return "pass", outcomes, None
    lc = test_lcoeff(P)
    outcomes.append(lc)
    if lc.result == "refute":
        witness = _search_negative(P, outward=True)
        if witness is not None:
            return "refute", outcomes, witness
        outcomes[-1] = TestOutcome(
            "LCoeff", "fail", {"reason": "no-witness-on-ray"}
        )
    co = test_const(P)
    outcomes.append(co)
    if co.result == "refute":
        witness = _search_negative(P, outward=False)
        if witness is not None:
            return "refute", outcomes, witness
        outcomes[-1] = TestOutcome("Const", "fail", {"reason": "no-witness-on-ray"})
    return "split", outcomes, None


def prove_nonneg(
    P: MultiPoly, xbar: Fraction, depth_limit: int = 12
) -> ProofCertificate:
    """Certify P >= 0 on the orthant (zero allowed only at the xbar corner image).

    Returns a certificate whose verdict is Proven, Disproven (with an exact
    negative witness in the original coordinates), or Fail when the recursion
    cap is reached.
    """
    if P.is_zero():
        raise ValueError("cannot prove the zero polynomial non-negative")
    cert = ProofCertificate(
        input_digest=P.digest(),
        nvars=P.nvars,
        xbar=xbar,
        depth_limit=depth_limit,
        verdict="Proven",
        nodes=[],
    )
    hit_depth_limit = False
    cannot_finitize = False

    def record(node: CertNode):
        cert.nodes.append(node)

    def disprove(point, value):
        cert.verdict = "Disproven"
        cert.witness = point
        cert.witness_value = value

    def solve_box(region, P_fin, box, path, depth) -> bool:
        """True means a refutation was found (stop everything)."""
        nonlocal hit_depth_limit
        if depth > depth_limit:
            hit_depth_limit = True
            record(CertNode(path, region, box, "", [], "depth-limit"))
            return False
        for bits, child in subdivide(box):
            mapped = P_fin.box_map(child.bounds)
            child_path = path + (bits,)
            status, outcomes, local = _run_tests(mapped)
            record(
                CertNode(child_path, region, child, mapped.digest(), outcomes, status)
            )
            if status == "refute":
                in_box = boxed_to_box(child, local)
                original = finitized_to_original(region, in_box)
                value = P.evaluate(original)
                assert value < 0
                disprove(original, value)
                return True
            if status == "split":
                if solve_box(region, P_fin, child, child_path, depth + 1):
                    return True
        return False

    for region in _region_specs(P.nvars, xbar):
        rp = region_poly(P, region)
        status, outcomes, local = _run_tests(rp)
        node = CertNode((region.label,), region, None, rp.digest(), outcomes, status)
        if status == "refute":
            record(node)
            original = region_to_original(region, local)
            value = P.evaluate(original)
            assert value < 0
            disprove(original, value)
            return cert
        if status == "split":
            if region.xbar == 0:
                node.status = "cannot-finitize"
                cannot_finitize = True
                record(node)
                continue
            record(node)
            P_fin, box = finitize(P, region)
            if solve_box(region, P_fin, box, (region.label,), 1):
                return cert
        else:
            record(node)

    if cert.verdict == "Proven" and (hit_depth_limit or cannot_finitize):
        cert.verdict = "Fail"
        cert.fail_reason = (
            "depth-limit" if hit_depth_limit else "cannot-finitize-zero-split"
        )
    return cert


# ---------------------------------------------------------------------------
# Serialization and replay
# ---------------------------------------------------------------------------


def _frac_str(x: Fraction) -> str:
    return str(x)


def _detail_json(detail: dict):
    out = {}
    for k, v in detail.items():
        if isinstance(v, Fraction):
            out[k] = _frac_str(v)
        elif isinstance(v, list) and v and isinstance(v[0], Fraction):
            out[k] = [_frac_str(f) for f in v]
        else:
            out[k] = v
    return out


def certificate_to_json(cert: ProofCertificate) -> str:
    doc = {
        "input_digest": cert.input_digest,
        "nvars": cert.nvars,
        "xbar": _frac_str(cert.xbar),
        "depth_limit": cert.depth_limit,
        "verdict": cert.verdict,
        "witness": [_frac_str(x) for x in cert.witness] if cert.witness else None,
        "witness_value": (
            _frac_str(cert.witness_value) if cert.witness_value is not None else None
        ),
        "fail_reason": cert.fail_reason,
        "tree": [
            {
                "path": list(node.path),
                "region": {
                    "highs": ["H" if h else "L" for h in node.region.highs],
                    "xbar": _frac_str(node.region.xbar),
                },
                "box": (
                    {
                        "bounds": [
                            [_frac_str(a), _frac_str(b)] for a, b in node.box.bounds
                        ],
                        "open_low": list(node.box.open_low),
                    }
                    if node.box is not None
                    else None
                ),
                "digest": node.digest,
                "tests": [
                    {
                        "test": o.test,
                        "result": o.result,
                        "detail": _detail_json(o.detail),
                    }
                    for o in node.outcomes
                ],
                "status": node.status,
            }
            for node in cert.nodes
        ],
    }
    return json.dumps(doc, indent=2)


def certificate_from_json(text: str) -> ProofCertificate:
    doc = json.loads(text)
    nodes = []
    for raw in doc["tree"]:
        region = RegionSpec(
            tuple(h == "H" for h in raw["region"]["highs"]),
            parse_rational(raw["region"]["xbar"]),
        )
        box = None
        if raw["box"] is not None:
            box = BoxSpec(
                tuple(
                    (parse_rational(a), parse_rational(b))
                    for a, b in raw["box"]["bounds"]
                ),
                tuple(raw["box"]["open_low"]),
            )
        outcomes = [
            TestOutcome(t["test"], t["result"], t["detail"]) for t in raw["tests"]
        ]
        nodes.append(
            CertNode(tuple(raw["path"]), region, box, raw["digest"], outcomes, raw["status"])
        )
    return ProofCertificate(
        input_digest=doc["input_digest"],
        nvars=doc["nvars"],
        xbar=parse_rational(doc["xbar"]),
        depth_limit=doc["depth_limit"],
        verdict=doc["verdict"],
        nodes=nodes,
        witness=(
            [parse_rational(x) for x in doc["witness"]] if doc["witness"] else None
        ),
        witness_value=(
            parse_rational(doc["witness_value"])
            if doc["witness_value"] is not None
            else None
        ),
        fail_reason=doc["fail_reason"],
    )


def replay_certificate(cert: ProofCertificate, P: MultiPoly) -> bool:
    """Re-derive every stored polynomial digest from P; False on any mismatch."""
    if P.digest() != cert.input_digest:
        return False
    finitized: dict[tuple[bool, ...], MultiPoly] = {}
    for node in cert.nodes:
        if node.status in ("depth-limit",):
            continue
        if node.box is None:
            expected = region_poly(P, node.region)
        else:
            key = node.region.highs
            if key not in finitized:
                finitized[key] = finitize(P, node.region)[0]
            expected = finitized[key].box_map(node.box.bounds)
        if expected.digest() != node.digest:
            return False
    if cert.verdict == "Disproven":
        if cert.witness is None or P.evaluate(cert.witness) >= 0:
            return False
        if P.evaluate(cert.witness) != cert.witness_value:
            return False
    return True
