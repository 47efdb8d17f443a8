"""The alternating binomial sums behind M*M = I and their three-term recurrences.

``s1`` is the diagonal entry of M*M for a row of size ``a``; ``s2`` the
off-diagonal entry for rows A != B described by ``a = |A|``, ``b = |B|``,
``w = |A & B|``. Both sums satisfy linear recurrences in ``r`` with polynomial
coefficients; the coefficients below are transcribed as given and checked
against the direct sums, never used to derive them.
"""
from __future__ import annotations

from dataclasses import dataclass

from .report import Report
from .scalar import binomial

S1 = "S1"
S2 = "S2"


def in_domain(n: int, r: int) -> bool:
    return 2 * r < n


@dataclass(frozen=True)
class S1Params:
    n: int
    a: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.a <= self.n:
            raise ValueError(f"S1 needs 0 <= a <= n, got n={self.n}, a={self.a}")

    @property
    def m(self) -> int:
        return self.n - self.a

    def valid_at(self, r: int) -> bool:
        """Whether (n, a, r) lies in the range where S1 = 1 is claimed."""
        return self.a <= r and in_domain(self.n, r)

    def as_dict(self) -> dict:
        return {"n": self.n, "a": self.a}


@dataclass(frozen=True)
class S2Params:
    n: int
    a: int
    b: int
    w: int

    def __post_init__(self):
        n, a, b, w = self.n, self.a, self.b, self.w
        if not (0 <= w <= min(a, b) and a + b - w <= n):
            raise ValueError(f"no sets with |A|={a}, |B|={b}, |A&B|={w} inside {{1..{n}}}")
        if a == b == w:
            raise ValueError("S2 needs A != B, but (a, b, w) = (a, a, a) forces A = B")

    @property
    def m(self) -> int:
        return self.n - self.a - self.b + self.w

    def valid_at(self, r: int) -> bool:
        return max(self.a, self.b) <= r and in_domain(self.n, r)

    def as_dict(self) -> dict:
        return {"n": self.n, "a": self.a, "b": self.b, "w": self.w}


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def s1(p: S1Params, r: int) -> int:
    if r < 0:
        raise ValueError("r must be nonnegative")
    n, a = p.n, p.a
    total = 0
    for u in range(r + 1):
        if binomial(n - a, u) == 0:
            continue
        if n - 1 - a - u < 0:
            raise ValueError(f"S1 term u={u} leaves the binomial range (n={n}, a={a}, r={r})")
        total += (
            _sign(u + a)
            * binomial(n - a, u)
            * binomial(n - 1 - a - u, r - u)
            * binomial(n - 1 - a - u, r - a)
        )
    return total


def s2(p: S2Params, r: int) -> int:
    if r < 0:
        raise ValueError("r must be nonnegative")
    n, a, b, m = p.n, p.a, p.b, p.m
    total = 0
    for u in range(r + 1):
        first = binomial(m, u)
        if first == 0:
            continue
        if n - 1 - a - u < 0 or n - 1 - b - u < 0:
            raise ValueError(f"S2 term u={u} leaves the binomial range ({p}, r={r})")
        total += (
            _sign(u + a)
            * first
            * binomial(n - 1 - a - u, r - u)
            * binomial(n - 1 - b - u, r - b)
        )
    return total


# --- recurrence coefficients ----------------------------------------------------
# c0 * S(r) + c1 * S(r+1) + c2 * S(r+2) = 0

def s1_coefficients(a: int, m: int, r: int) -> tuple[int, int, int]:
    c0 = -(a - r - 1) * (m - r - 1) * (a + m - 2 * r - 4) * (a + m - r - 1)
    c1 = (a + m - 2 * r - 3) * (
        a**2 * m - a**2 * r - a**2 + a * m**2 - 2 * a * m * r - 2 * a * m + a * r**2 + a * r - a
        - m**2 * r - m**2 + m * r**2 + m * r - m + 2 * r**2 + 6 * r + 4
    )
    c2 = -(r + 2) * (a - r - 2) * (m - r - 2) * (a + m - 2 * r - 2)
    return c0, c1, c2


def s2_coefficients(a: int, b: int, m: int, w: int, r: int) -> tuple[int, int, int]:
    c0 = -(a - r - 1) * (b + m - r - w - 1) * (a + b + m - 2 * r - w - 4) * (a + b + m - r - w - 1)
    c1 = -(a + b + m - 2 * r - w - 3) * (
        a**2 * b - a**2 * r - a**2 * w - 2 * a**2 + a * b**2 + a * b * m - 2 * a * b * r - 3 * a * b * w - 4 * a * b
        - 2 * a * m * w - a * m + a * r**2 + 4 * a * r * w + 5 * a * r + 2 * a * w**2 + 7 * a * w + 5 * a
        - b**2 * r - b**2 * w - 2 * b**2 - 2 * b * m * w - b * m + b * r**2 + 4 * b * r * w + 5 * b * r
        + 2 * b * w**2 + 7 * b * w + 5 * b + m**2 * r - m**2 * w + m**2 - m * r**2 + 2 * m * r * w - m * r
        + 2 * m * w**2 + 4 * m * w + m - 3 * r**2 * w - 2 * r**2 - 3 * r * w**2 - 11 * r * w - 6 * r
        - w**3 - 5 * w**2 - 9 * w - 4
    )
    c2 = (r + 2) * (b - r - 2) * (-a - m + r + w + 2) * (a + b + m - 2 * r - w - 2)
    return c0, c1, c2


@dataclass(frozen=True)
class RecurrenceCertificate:
    ident: str

    def coefficients(self, params, r: int) -> tuple[int, int, int]:
        if self.ident == S1:
            return s1_coefficients(params.a, params.m, r)
        return s2_coefficients(params.a, params.b, params.m, params.w, r)

    def value(self, params, r: int) -> int:
        return s1(params, r) if self.ident == S1 else s2(params, r)

    @property
    def claimed(self) -> int:
        return 1 if self.ident == S1 else 0


CERTIFICATES = {S1: RecurrenceCertificate(S1), S2: RecurrenceCertificate(S2)}


def make_params(ident: str, n: int, a: int, b: int | None = None, w: int | None = None):
    if ident == S1:
        return S1Params(n, a)
    if ident == S2:
        if b is None or w is None:
            raise ValueError("S2 needs b and w")
        return S2Params(n, a, b, w)
    raise ValueError(f"unknown sum {ident!r}")


def recurrence_residual(ident: str, params, r: int, *, explore: bool = False) -> int:
    """c0 S(r) + c1 S(r+1) + c2 S(r+2) with S evaluated by direct summation.

    Points with r + 2 outside the claimed range are rejected unless ``explore``.
    """
    if not explore and not (params.valid_at(r) and params.valid_at(r + 2)):
        raise ValueError(f"{ident} recurrence point outside the claimed range: {params}, r={r}")
    cert = CERTIFICATES[ident]
    c0, c1, c2 = cert.coefficients(params, r)
    return c0 * cert.value(params, r) + c1 * cert.value(params, r + 1) + c2 * cert.value(params, r + 2)


def partial_alternating_sum(s: int, t: int, r_star: int) -> tuple[int, int]:
    """Direct value of sum_{u=t}^{r*} (-1)^(s-u) C(s-t, u-t) and its closed form."""
    if not 0 <= t <= r_star <= s:
        raise ValueError(f"need 0 <= t <= r_star <= s, got t={t}, r_star={r_star}, s={s}")
    direct = sum(_sign(s - u) * binomial(s - t, u - t) for u in range(t, r_star + 1))
    if t == s == r_star:
        closed = 1
    elif t < s == r_star:
        closed = 0
    else:
        closed = _sign(s - r_star) * binomial(s - 1 - t, r_star - t)
    return direct, closed


def replay_induction(ident: str, n: int, a: int, b: int | None = None, w: int | None = None,
                     r_max: int = 0) -> Report:
    """Re-run the induction in r that derives the closed value from the recurrence.

    The induction starts at the first r where the sum is claimed, r0 =
    max(a, b) (r0 = 0, 1 when a = b = 0): base values at r0 and r0 + 1 are
    checked by direct summation, then each S(r+2) is propagated from the
    recurrence, which requires a nonzero leading coefficient, and compared to
    the direct sum and to the claimed constant.
    """
    params = make_params(ident, n, a, b, w)
    rep = Report("replay-induction", {"sum": ident, **params.as_dict(), "r_max": r_max})
    if not in_domain(n, r_max):
        raise ValueError(f"r_max={r_max} must satisfy r_max < n/2 (n={n})")
    cert = CERTIFICATES[ident]
    r0 = a if ident == S1 else max(a, b)
    if r0 > r_max:
        rep.add(True, step="vacuous", note=f"no claimed value with r <= r_max (first is r={r0})")
        return rep.stop_clock()
    known: dict[int, int] = {}
    for r in (r0, r0 + 1):
        if r > r_max:
            break
        got = cert.value(params, r)
        known[r] = got
        rep.add(got == cert.claimed, step="base", r=r, expected=cert.claimed, got=got)
    for r in range(r0, r_max - 1):
        c0, c1, c2 = cert.coefficients(params, r)
        if c2 == 0:
            rep.add(False, step="leading coefficient", r=r, c2=0)
            break
        numer = -(c0 * known[r] + c1 * known[r + 1])
        if numer % c2:
            rep.add(False, step="propagate", r=r + 2, detail="recurrence gives a non-integer value",
                    numerator=numer, c2=c2)
            break
        prop = numer // c2
        direct = cert.value(params, r + 2)
        known[r + 2] = prop
        rep.add(prop == direct == cert.claimed, step="propagate", r=r + 2, c2=c2,
                expected=cert.claimed, propagated=prop, direct=direct)
    return rep.stop_clock()


def s1_tuples(n: int):
    """(params, r) over the claimed range: a <= r < n/2."""
    for r in range((n - 1) // 2 + 1):
        for a in range(r + 1):
            yield S1Params(n, a), r


def s2_tuples(n: int):
    for r in range((n - 1) // 2 + 1):
        for a in range(r + 1):
            for b in range(r + 1):
                for w in range(min(a, b) + 1):
                    if a == b == w or a + b - w > n:
                        continue
                    yield S2Params(n, a, b, w), r


def verify_sums(n_max: int, n_min: int = 2) -> Report:
    """S1 = 1 and S2 = 0 over every claimed tuple with n_min <= n <= n_max."""
    rep = Report("verify-sums", {"n_min": n_min, "n_max": n_max})
    for n in range(n_min, n_max + 1):
        for ident, tuples, claimed, fn in ((S1, s1_tuples, 1, s1), (S2, s2_tuples, 0, s2)):
            count = 0
            bad = None
            for params, r in tuples(n):
                count += 1
                got = fn(params, r)
                if got != claimed and bad is None:
                    bad = {**params.as_dict(), "r": r, "got": got}
            rep.add(bad is None, sum=ident, n=n, tuples=count, expected=claimed, **({"first_failure": bad} if bad else {}))
    return rep.stop_clock()


def verify_recurrences(n_max: int, n_min: int = 2) -> Report:
    """Zero residuals and a passing induction replay over the in-range grid."""
    rep = Report("verify-recurrences", {"n_min": n_min, "n_max": n_max})
    for n in range(n_min, n_max + 1):
        r_top = (n - 1) // 2
        for ident, tuples in ((S1, s1_tuples), (S2, s2_tuples)):
            points = 0
            bad = None
            starts = set()
            for params, r in tuples(n):
                starts.add(params)
                if not params.valid_at(r + 2):
                    continue
                points += 1
                res = recurrence_residual(ident, params, r)
                if res != 0 and bad is None:
                    bad = {**params.as_dict(), "r": r, "residual": res}
            rep.add(bad is None, check="residual", sum=ident, n=n, points=points,
                    **({"first_failure": bad} if bad else {}))
            replays = 0
            bad = None
            for params in sorted(starts, key=lambda q: tuple(q.as_dict().values())):
                kw = params.as_dict()
                sub = replay_induction(ident, r_max=r_top, **kw)
                replays += 1
                if not sub.passed and bad is None:
                    bad = sub.failures[0]
            rep.add(bad is None, check="induction", sum=ident, n=n, replays=replays,
                    **({"first_failure": bad} if bad else {}))
    return rep.stop_clock()


def verify_alt_sum(s_max: int) -> Report:
    rep = Report("verify-alt-sum", {"s_max": s_max})
    for s in range(s_max + 1):
        count = 0
        bad = None
        for r_star in range(s + 1):
            for t in range(r_star + 1):
                count += 1
                direct, closed = partial_alternating_sum(s, t, r_star)
                if direct != closed and bad is None:
                    bad = {"t": t, "r_star": r_star, "direct": direct, "closed": closed}
        rep.add(bad is None, s=s, cases=count, **({"first_failure": bad} if bad else {}))
    return rep.stop_clock()
