"""Measure a matrix and check claimed parameters against the measurements."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .codes import (CodeError, ParityCheckMatrix, capsule_spectrum, check_profile,
                    is_locally_optimal, matrix_set_bridge, min_distance_small,
                    syndrome_distances)
from .io import digest
from .pg import GeometryError, is_minimal_saturating
from .syndromes import DEFAULT_MAX_SYNDROMES, CapExceeded

PASS, FAIL, SKIP = "pass", "fail", "skipped"

CLAIM_KEYS = ("n", "r", "rank", "d", "R", "ell", "surface_covering", "locally_optimal", "minimal")
_BOOL_KEYS = {"surface_covering", "locally_optimal", "minimal"}


def parse_claim(text: str) -> tuple[str, int | bool]:
    """``"R=2"`` -> ``("R", 2)``; booleans accept true/false/yes/no/1/0."""
    if "=" not in text:
        raise ValueError(f"claim {text!r} is not KEY=VALUE")
    k, v = (s.strip() for s in text.split("=", 1))
    if k not in CLAIM_KEYS:
        raise ValueError(f"unknown claim {k!r}; known: {', '.join(CLAIM_KEYS)}")
    if k in _BOOL_KEYS:
        low = v.lower()
        if low in ("true", "yes", "1"):
            return k, True
        if low in ("false", "no", "0"):
            return k, False
        raise ValueError(f"claim {k} needs a boolean, got {v!r}")
    return k, int(v)


@dataclass
class ClaimResult:
    key: str
    claimed: object
    measured: object
    status: str
    detail: str = ""


@dataclass
class VerifyReport:
    digest: str
    provenance: str
    q: int
    measured: dict = field(default_factory=dict)
    claims: list[ClaimResult] = field(default_factory=list)
    skipped: dict = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def status(self) -> str:
        states = {c.status for c in self.claims}
        if FAIL in states:
            return FAIL
        if SKIP in states:
            return SKIP
        return PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, SKIP: 3}[self.status]

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "digest": self.digest, "provenance": self.provenance, "q": self.q,
            "measured": self.measured, "skipped": self.skipped,
            "claims": [c.__dict__ for c in self.claims], "status": self.status,
        }
        if timing:
            out["runtime_s"] = round(self.runtime, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True, default=str)

    def to_text(self, timing: bool = False) -> str:
        m = self.measured
        lines = [f"matrix {self.digest[:16]}  GF({self.q})  {self.provenance}".rstrip()]
        for key in ("n", "r", "rank", "syndromes", "d", "R", "ell", "surface_covering",
                    "locally_optimal", "removable", "minimal", "consistent"):
            if key in m:
                lines.append(f"  {key:17s} {m[key]}")
        for key, why in self.skipped.items():
            lines.append(f"  {key:17s} skipped ({why})")
        for c in self.claims:
            extra = f"  {c.detail}" if c.detail else ""
            lines.append(f"claim {c.key}={c.claimed}: measured {c.measured} -> {c.status}{extra}")
        lines.append(f"status {self.status}" + (f" ({self.runtime:.2f}s)" if timing else ""))
        return "\n".join(lines)


def _judge(key, claimed, measured, exact=True) -> ClaimResult:
    if measured is None:
        return ClaimResult(key, claimed, None, SKIP, "not measured")
    if key == "d" and not exact:
        # measured is a lower bound
        if claimed < measured:
            return ClaimResult(key, claimed, f">={measured}", FAIL)
        return ClaimResult(key, claimed, f">={measured}", SKIP, "distance beyond the search cap")
    return ClaimResult(key, claimed, measured, PASS if claimed == measured else FAIL)


def verify(H: ParityCheckMatrix, claims: dict | None = None, *,
           max_syndromes: int | None = None, max_d: int = 4,
           local_opt: bool = True, minimal: bool = False) -> VerifyReport:
    """Measure ``H`` and compare with ``claims`` (keys from :data:`CLAIM_KEYS`)."""
    claims = dict(claims or {})
    start = time.monotonic()
    limit = DEFAULT_MAX_SYNDROMES if max_syndromes is None else max_syndromes
    rep = VerifyReport(digest(H), H.provenance, H.q)
    m = rep.measured
    m["n"], m["r"], m["rank"] = H.n, H.r, H.rank()
    m["syndromes"] = H.q**H.r
    dist = min_distance_small(H, cap_d=max_d)
    m["d"] = str(dist)
    if "minimal" in claims:
        minimal = True
    R = None
    if m["rank"] < H.r:
        rep.skipped["R"] = "rank deficient"
    elif m["syndromes"] > limit:
        for key in ("R", "ell", "surface_covering", "locally_optimal", "minimal"):
            rep.skipped[key] = f"{m['syndromes']} syndromes > cap {limit}"
    else:
        dist_arr = syndrome_distances(H, limit)
        R = int(dist_arr.max())
        m["R"] = R
        if R <= 7:
            prof = capsule_spectrum(H, r_cap=max(R, 1), max_syndromes=limit)
            check_profile(prof, dist_arr)
            m["consistent"] = True
            m["ell"] = prof.ell_max(R)
            m["surface_covering"] = m["ell"] == R
        else:
            rep.skipped["ell"] = "covering radius above 7"
        del dist_arr
        if local_opt or "locally_optimal" in claims:
            try:
                lo = is_locally_optimal(H, R, max_syndromes=limit)
                m["locally_optimal"] = lo.optimal
                m["removable"] = lo.removable
            except (CapExceeded, CodeError) as exc:
                rep.skipped["locally_optimal"] = str(exc)
        if minimal:
            try:
                S = matrix_set_bridge(H)
                m["minimal"] = is_minimal_saturating(S, R - 1).minimal
            except (CapExceeded, GeometryError, CodeError) as exc:
                rep.skipped["minimal"] = str(exc)
    measured_vals = {k: m.get(k) for k in CLAIM_KEYS}
    measured_vals["d"] = dist.d
    for key, val in claims.items():
        rep.claims.append(_judge(key, val, measured_vals.get(key), dist.exact if key == "d" else True))
    rep.runtime = time.monotonic() - start
    return rep
