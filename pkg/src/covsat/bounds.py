"""Closed-form upper bounds on the length function ``l_q(r, R)``.

``l_q(r, R)`` is the least length of a q-ary linear code with codimension
``r`` and covering radius ``R``.  Every evaluator re-checks its hypotheses and
returns a :class:`BoundValue` that is either a number or "n/a" with a
machine-readable reason code.  Arithmetic is exact (integers and
:class:`fractions.Fraction`); square roots only occur for perfect powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import ceil_log, even_m1
from .gf import is_prime, prime_power

EXACT_VALUES = {
    # (q, r, R): the length function is known exactly
    (4, 4, 2): 9,
}

LOWER_BOUND_NOTE = "asymptotic lower bound l_q(r,R) >= c q^((r-R)/R) (order of magnitude only)"


@dataclass(frozen=True)
class BoundValue:
    name: str
    value: Fraction | int | None
    reason: str = ""
    case: str = ""
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.value is not None

    @property
    def floor(self) -> int | None:
        """Largest integer length the bound allows."""
        if self.value is None:
            return None
        return int(Fraction(self.value).__floor__())

    def __str__(self):
        if self.value is None:
            return f"{self.name}: n/a ({self.reason})"
        v = Fraction(self.value)
        shown = str(v.numerator) if v.denominator == 1 else f"{v} (~{float(v):.3f})"
        tag = f" case {self.case}" if self.case else ""
        return f"{self.name}: {shown}{tag}" + (f" [{self.note}]" if self.note else "")


def _na(name: str, reason: str) -> BoundValue:
    return BoundValue(name, None, reason)


def _is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except ValueError:
        return False
    return True


def iroot(n: int, k: int) -> int | None:
    """Exact integer ``k``-th root of ``n``, or ``None``."""
    if n < 0:
        return None
    x = round(n ** (1.0 / k))
    for c in (x - 1, x, x + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def _tR(r: int, R: int) -> int | None:
    return r // R if R > 0 and r % R == 0 else None


# ---------------------------------------------------------------------------
# r = tR


def bound_known_tR(q: int, r: int, R: int) -> BoundValue:
    """R q^(t-1) + ceil(R/3) q^(t-2) + delta for ``r = tR``."""
    name = "known_tR"
    if not _is_prime_power(q):
        return _na(name, "q-not-prime-power")
    if R < 4:
        return _na(name, "R-below-4")
    t = _tR(r, R)
    if t is None:
        return _na(name, "r-not-multiple-of-R")
    if t < 2:
        return _na(name, "t-below-2")
    note = ""
    if t == 2 and q >= 4:
        delta, case = 0, "t=2"
    elif t == 3 and (q == 16 or q >= 23):
        delta, case = 0, "t=3"
        note = "reads 'q = 16, q >= 23' as q = 16 or q >= 23"
    elif q >= 7 and q != 9 and t >= 5 and t != 6:
        delta, case = 0, "t>=5"
    elif q >= 7 and q != 9 and t in (4, 6):
        delta, case = (2 * R % 3) * (q ** (t - 3) + 1), f"t={t}"
    else:
        return _na(name, "delta-undefined")
    value = R * q ** (t - 1) + -(-R // 3) * q ** (t - 2) + delta
    return BoundValue(name, value, case=case, note=note)


def new_tR_case(q: int, R: int, t: int) -> tuple[str, int] | None:
    """Case label and Delta of the new r = tR bound, or ``None``."""
    if R < 4 or t < 2:
        return None
    if t == 2 and (q == 4 or q >= 7):
        return "i", 0
    if t == 2 and q == 5 and R in (4, 5):
        return "ii", 0
    if q >= 7 and q % 2 == 1 and t >= ceil_log(q, R) + 3:
        return "iii", 0
    if q >= 8 and q % 2 == 0:
        m1 = even_m1(q, R)
        if m1 + 2 < t < 3 * m1 + 2:
            return "iv", sum(q ** (t - j) for j in range(2, t + 1))
        if t == m1 + 2 or t >= 3 * m1 + 2:
            return "v", sum(q ** (t - j) for j in range(2, m1 + 3))
    return None


def bound_new_tR(q: int, r: int, R: int) -> BoundValue:
    """R q^(t-1) + q^(t-2) + Delta for ``r = tR``."""
    name = "new_tR"
    if not _is_prime_power(q):
        return _na(name, "q-not-prime-power")
    if R < 4:
        return _na(name, "R-below-4")
    t = _tR(r, R)
    if t is None:
        return _na(name, "r-not-multiple-of-R")
    found = new_tR_case(q, R, t)
    if found is None:
        return _na(name, "no-case-applies")
    case, delta = found
    return BoundValue(name, R * q ** (t - 1) + q ** (t - 2) + delta, case=case)


# ---------------------------------------------------------------------------
# even R, r = tR + R/2


def phi(q: int) -> int:
    """Order of the largest proper subfield of GF(q) (``q = p^h``, ``h >= 2``)."""
    p, h = prime_power(q)
    if h < 2:
        raise ValueError(f"GF({q}) has no proper subfield other than itself being prime")
    smallest = next(d for d in range(2, h + 1) if h % d == 0 and is_prime(d))
    return p ** (h // smallest)


def f_q(q: int, r: int, R: int) -> int:
    """Correction term: ``q^(t-3) + q^(t-4)`` when ``r`` is ``9R/2`` or ``13R/2``, else 0."""
    if 2 * r == 9 * R:
        t = 4
    elif 2 * r == 13 * R:
        t = 6
    else:
        return 0
    return q ** (t - 3) + q ** (t - 4)


def _floor_pow(q: int, e: int) -> int:
    return q**e if e >= 0 else 0


EVEN_R_BOUNDS = ("prop12_h1", "prop12_h2", "prop12_h3", "thm22_i", "thm22_ii")


def bound_even_R(q: int, r: int, R: int, which: str) -> BoundValue:
    if which not in EVEN_R_BOUNDS:
        raise ValueError(f"unknown bound {which!r}; choose from {EVEN_R_BOUNDS}")
    name = which
    if not _is_prime_power(q):
        return _na(name, "q-not-prime-power")
    if R < 2 or R % 2:
        return _na(name, "R-not-even")
    if (2 * r - R) % (2 * R):
        return _na(name, "r-not-tR+R/2")
    t = (2 * r - R) // (2 * R)
    if t < 1:
        return _na(name, "t-below-1")
    s = iroot(q, 2)
    if s is None:
        return _na(name, "q-not-square")
    # q^(t - 1/2) = s^(2t - 1)
    main = Fraction(s ** (2 * t - 1))
    fl = _floor_pow(q, t - 2)
    p, h = prime_power(q)
    half = Fraction(R, 2)
    if which == "prop12_h1":
        if q < 16 or not _is_prime_power(s):
            return _na(name, "q-not-square-of-prime-power-ge-16")
        value = half * (3 - Fraction(1, s)) * main + half * fl
    elif which == "prop12_h2":
        s4 = iroot(q, 4)
        if s4 is None or not _is_prime_power(s4):
            return _na(name, "q-not-fourth-power")
        value = R * (1 + Fraction(1, s4) + Fraction(1, s)) * main + half * fl
    elif which == "prop12_h3":
        s6 = iroot(q, 6)
        if s6 is None or not is_prime(s6) or s6 > 73:
            return _na(name, "q-not-sixth-power-of-prime-le-73")
        if t in (4, 6):
            return _na(name, "t-excluded")
        s3 = iroot(q, 3)
        value = R * (1 + Fraction(1, s6) + Fraction(1, s3) + Fraction(1, s)) * main + R * fl
    else:
        if h % 2 or h // 2 < 2:
            return _na(name, "q-not-p^(2eta)-with-eta-ge-2")
        f = f_q(q, r, R)
        if which == "thm22_i":
            if p < 3:
                return _na(name, "p-below-3")
            ph = phi(s)
            coef = 1 + Fraction(s - 1, s * (ph - 1))
        else:
            if p < 7:
                return _na(name, "p-below-7")
            coef = 1 + Fraction(1, p) + Fraction(1, s)
        value = R * coef * main + R * fl + half * f
    v = Fraction(value)
    return BoundValue(name, v.numerator if v.denominator == 1 else v, case=f"t={t}")


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    q: int
    r: int
    R: int
    entries: list[BoundValue]
    constructed: int | None = None
    notes: list[str] = field(default_factory=list)

    def applicable(self) -> list[BoundValue]:
        return [e for e in self.entries if e.applicable]

    def get(self, name: str) -> BoundValue | None:
        return next((e for e in self.entries if e.name == name), None)

    @property
    def best(self) -> BoundValue | None:
        app = self.applicable()
        return min(app, key=lambda e: e.floor) if app else None

    @property
    def margin(self) -> int | None:
        """``constructed - best bound`` (0: the bound is met)."""
        if self.constructed is None or self.best is None:
            return None
        return self.constructed - self.best.floor

    @property
    def meets_new_bound(self) -> bool | None:
        new = self.get("new_tR")
        if self.constructed is None or new is None or not new.applicable:
            return None
        return self.constructed == new.floor

    @property
    def suboptimal(self) -> bool:
        return self.margin is not None and self.margin > 0

    def as_dict(self) -> dict:
        return {
            "q": self.q, "r": self.r, "R": self.R, "constructed": self.constructed,
            "entries": [
                {"name": e.name, "value": None if e.value is None else str(e.value),
                 "floor": e.floor, "case": e.case, "reason": e.reason, "note": e.note}
                for e in self.entries
            ],
            "best": None if self.best is None else self.best.name,
            "margin": self.margin, "meets_new_bound": self.meets_new_bound,
            "notes": self.notes,
        }

    def to_text(self) -> str:
        lines = [f"bounds q={self.q} r={self.r} R={self.R}"]
        lines += ["  " + str(e) for e in self.entries]
        if self.constructed is not None:
            lines.append(f"  constructed n={self.constructed} margin={self.margin}"
                         + (" (suboptimal)" if self.suboptimal else ""))
            known = self.get("known_tR")
            if known is not None and known.applicable:
                lines.append(f"  versus known_tR: {known.floor - self.constructed:+d}")
        lines += ["  note: " + n for n in self.notes]
        return "\n".join(lines)


def compare(q: int, r: int, R: int, constructed_n: int | None = None) -> BoundReport:
    entries = [bound_known_tR(q, r, R), bound_new_tR(q, r, R)]
    if R % 2 == 0:
        entries += [bound_even_R(q, r, R, w) for w in EVEN_R_BOUNDS]
    exact = EXACT_VALUES.get((q, r, R))
    if exact is not None:
        entries.append(BoundValue("exact", exact, note="length function value known exactly"))
    return BoundReport(q, r, R, entries, constructed_n, [LOWER_BOUND_NOTE])
