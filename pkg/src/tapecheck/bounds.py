"""Time bounds: floor evaluation, the linear-inequality decision, convergence
witnesses, and the certified crossing-length constant.

Two bound families ship built in.  ``LinearBound`` represents T(n) = C*n + D
and supports the full contract, including the crossing-length constant.
``PolyBound`` represents integer polynomials of degree >= 2; those grow too
fast for the crossing-length machinery (n*log n / T(n) tends to 0, not
infinity) but are manageable and serve as pass-gadget bounds.

The crossing-length constant comes from a three-step construction: find a
threshold N beyond which the inequality

    3*(q*n^((log q)/sqrt(g)) - 1)/(q-1)  <=  n - 3 - n/sqrt(g) + c*sqrt(g)/log n

holds for every c >= 0 (this needs g(n) >= max(16, 4*(log q)^2) and
sqrt(n) <= n/12), take the smallest c that makes it hold on [2, N), and clamp
c up to ceil(T(0)) and ceil(T(1)).  All real arithmetic is interval arithmetic
with outward rounding, so the returned c can only overshoot, never undershoot.
The scan of [2, N) certifies whole subranges at once wherever g is known to be
monotone, and falls back to pointwise evaluation near the critical region; the
pointwise work is capped by an effort limit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BoundComputationInfeasible, EffortExceeded, UnsupportedBound
from .realnum import Iv, ceil_hi, iv_int, iv_ratio


def _ceildiv(a: int, b: int) -> int:
    return -(-a // b)


class LinearBound:
    """T(n) = C*n + D with C, D natural numbers."""

    def __init__(self, C: int, D: int):
        if C < 0 or D < 0:
            raise ValueError("linear bound needs C >= 0 and D >= 0")
        self.C = C
        self.D = D

    def __repr__(self) -> str:
        return f"LinearBound(C={self.C}, D={self.D})"

    def describe(self) -> str:
        return f"{self.C}n+{self.D}"

    def floor_eval(self, n: int) -> int:
        return self.C * n + self.D

    def eval_ratio(self, n: int) -> tuple[int, int]:
        return (self.C * n + self.D, 1)

    def decide_linear_inequality(self, A: Sequence[int], B: Sequence[int]) -> bool:
        # T(A0 + sum x_i A_i) < B0 + sum x_i B_i for some x in N^k iff the
        # inequality already holds at x = 0 or some slope B_i beats C*A_i.
        if self.C * A[0] + self.D < B[0]:
            return True
        return any(B[i] > self.C * A[i] for i in range(1, len(A)))

    def convergence_witness(self, K: int) -> int:
        # For n >= 1, T(n) <= (C+D)*n, so g(n) >= log2(n)/(C+D).
        if self.C + self.D == 0:
            return 2
        return max(2, 2 ** (K * (self.C + self.D)))

    def find_trivial_n0(self) -> Optional[int]:
        if self.D == 0:
            return 0
        if self.C == 0:
            return self.D
        return None

    def g_nondecreasing_from(self) -> Optional[int]:
        # d/dn [n ln n / (Cn+D)] has numerator Cn + D ln n + D > 0 for n >= 1.
        return 2 if self.C + self.D >= 1 else None

    def g_threshold(self, K: int) -> int:
        """Least certified n >= 2 with g(n) >= K (tight; g is monotone)."""
        if self.C + self.D == 0:
            return 2
        lo, hi = 2, 4
        while not _g_iv(self, hi).lo >= K:
            lo, hi = hi, hi * 2
            if hi > 2 ** 256:
                raise BoundComputationInfeasible("no g threshold below 2^256")
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if _g_iv(self, mid).lo >= K:
                hi = mid
            else:
                lo = mid
        return hi

    def omega_nlogn_anchor(self, base: int) -> Optional[int]:
        return None  # linear bounds are never Omega(n log n)


class PolyBound:
    """T(n) = sum coeffs[i] * n^i, degree >= 2, natural coefficients."""

    def __init__(self, coeffs: Sequence[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) < 3:
            raise ValueError("polynomial bound must have degree >= 2 (use LinearBound below that)")
        if any(c < 0 for c in cs):
            raise ValueError("polynomial coefficients must be natural numbers")
        self.coeffs = tuple(cs)

    def __repr__(self) -> str:
        return f"PolyBound(coeffs={list(self.coeffs)})"

    def describe(self) -> str:
        terms = [f"{c}n^{i}" for i, c in enumerate(self.coeffs) if c]
        return "+".join(reversed(terms)) or "0"

    def floor_eval(self, n: int) -> int:
        return sum(c * n**i for i, c in enumerate(self.coeffs))

    def eval_ratio(self, n: int) -> tuple[int, int]:
        return (self.floor_eval(n), 1)

    def _slope(self, n: int) -> int:
        # h(n) = T(n)/n ignoring the constant term; nondecreasing in n.
        return sum(c * n ** (i - 1) for i, c in enumerate(self.coeffs) if i >= 1)

    def decide_linear_inequality(self, A: Sequence[int], B: Sequence[int]) -> bool:
        # T(n)/n computably tends to infinity, so beyond a threshold no x can
        # satisfy the strict inequality; brute-force the finite box below it.
        k = len(A) - 1
        growth = max(_ceildiv(B[i], A[i]) for i in range(len(A)))
        n_c = 1
        while self._slope(n_c) < growth:
            n_c *= 2
        ys = [max(0, _ceildiv(n_c - A[0], A[i])) for i in range(1, k + 1)]
        total = 1
        for y in ys:
            total *= max(y, 1)
            if total > 10**7:
                raise EffortExceeded("manageability brute-force box too large")
        for xs in itertools.product(*(range(y) for y in ys)):
            arg = A[0] + sum(x * a for x, a in zip(xs, A[1:]))
            rhs = B[0] + sum(x * b for x, b in zip(xs, B[1:]))
            if self.floor_eval(arg) < rhs:
                return True
        return False

    def convergence_witness(self, K: int) -> int:
        raise UnsupportedBound(
            "n*log(n)/T(n) does not tend to infinity for a degree >= 2 polynomial"
        )

    def find_trivial_n0(self) -> Optional[int]:
        for n in range(0, 1025):
            if self.floor_eval(n) < n + 1:
                return n
        return None

    def g_nondecreasing_from(self) -> Optional[int]:
        return None

    def g_threshold(self, K: int) -> int:
        return self.convergence_witness(K)

    def omega_nlogn_anchor(self, base: int) -> Optional[int]:
        # T(n+1)-T(n) >= 2n outgrows the increment of 3n*log_base(n)+6n+1,
        # which is at most 3*log2(n+1) + 3/ln(2) + 6 < 2n from n = 11 on.
        return 11


class PiecewiseLinearBound:
    """Finitely many linear pieces; the last piece extends to infinity.

    pieces are (from_n, C, D) with strictly increasing from_n starting at 0;
    T(n) = C*n + D for the piece whose from_n is the largest one <= n.  The
    final piece drives the asymptotics, so manageability reduces to the
    linear closed form beyond the last breakpoint plus a finite box below it,
    and the convergence witness is the final piece's witness clamped past the
    breakpoint.
    """

    def __init__(self, pieces: Sequence[tuple[int, int, int]]):
        ps = [(int(a), int(c), int(d)) for a, c, d in pieces]
        if not ps or ps[0][0] != 0:
            raise ValueError("pieces must start at n = 0")
        if any(a >= b for (a, _, _), (b, _, _) in zip(ps, ps[1:])):
            raise ValueError("piece starts must be strictly increasing")
        if any(c < 0 or d < 0 for _, c, d in ps):
            raise ValueError("piece coefficients must be natural numbers")
        self.pieces = tuple(ps)
        self.last_from, self.final_c, self.final_d = self.pieces[-1]

    def __repr__(self) -> str:
        return f"PiecewiseLinearBound(pieces={list(self.pieces)})"

    def describe(self) -> str:
        return ";".join(f"{a}:{c}n+{d}" for a, c, d in self.pieces)

    def _piece_at(self, n: int) -> tuple[int, int]:
        for start, c, d in reversed(self.pieces):
            if n >= start:
                return c, d
        raise AssertionError("pieces start at 0")

    def floor_eval(self, n: int) -> int:
        c, d = self._piece_at(n)
        return c * n + d

    def eval_ratio(self, n: int) -> tuple[int, int]:
        return (self.floor_eval(n), 1)

    def decide_linear_inequality(self, A: Sequence[int], B: Sequence[int]) -> bool:
        # Beyond the last breakpoint the bound is the final line: a positive
        # slope B_i - C_f*A_i pushes the right side past it for large x_i.
        if any(B[i] > self.final_c * A[i] for i in range(1, len(A))):
            return True
        # All slopes are <= 0 there, so shrinking any coordinate (while the
        # argument stays past the breakpoint) only helps; every potential
        # witness therefore has a counterpart inside this box.
        k = len(A) - 1
        ys = [max(0, _ceildiv(max(0, self.last_from - A[0]), A[i])) + 1 for i in range(1, k + 1)]
        total = 1
        for y in ys:
            total *= y + 1
            if total > 10**7:
                raise EffortExceeded("piecewise manageability box too large")
        for xs in itertools.product(*(range(y + 1) for y in ys)):
            arg = A[0] + sum(x * a for x, a in zip(xs, A[1:]))
            rhs = B[0] + sum(x * b for x, b in zip(xs, B[1:]))
            if self.floor_eval(arg) < rhs:
                return True
        return False

    def convergence_witness(self, K: int) -> int:
        if self.final_c + self.final_d == 0:
            return max(2, self.last_from)
        return max(2, self.last_from, 2 ** (K * (self.final_c + self.final_d)))

    def find_trivial_n0(self) -> Optional[int]:
        for n in range(0, self.last_from + 1):
            if self.floor_eval(n) < n + 1:
                return n
        if self.final_c == 0:
            return max(self.last_from + 1, self.final_d)
        return None

    def g_nondecreasing_from(self) -> Optional[int]:
        if self.final_c + self.final_d == 0:
            return None
        return max(2, self.last_from)

    def g_threshold(self, K: int) -> int:
        if self.final_c + self.final_d == 0:
            return max(2, self.last_from)
        floor_n = max(2, self.last_from)
        lo, hi = floor_n, max(4, 2 * floor_n)
        while not _g_iv(self, hi).lo >= K:
            lo, hi = hi, hi * 2
            if hi > 2 ** 256:
                raise BoundComputationInfeasible("no g threshold below 2^256")
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if _g_iv(self, mid).lo >= K:
                hi = mid
            else:
                lo = mid
        return max(hi, floor_n)

    def omega_nlogn_anchor(self, base: int) -> Optional[int]:
        return None  # eventually linear, never Omega(n log n)


TimeBound = LinearBound | PolyBound | PiecewiseLinearBound


def parse_bound_spec(text: str) -> LinearBound:
    try:
        c_str, d_str = text.split(",")
        return LinearBound(int(c_str), int(d_str))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bound must be given as 'C,D', got {text!r}") from exc


def load_bound_table(doc: dict) -> TimeBound:
    """Declarative bound document: {"kind": "linear", "C":..., "D":...},
    {"kind": "poly", "coeffs": [...]}, or {"kind": "piecewise",
    "pieces": [{"from": 0, "C":..., "D":...}, ...]}."""
    kind = doc.get("kind")
    if kind == "linear":
        return LinearBound(int(doc["C"]), int(doc["D"]))
    if kind == "poly":
        return PolyBound([int(c) for c in doc["coeffs"]])
    if kind == "piecewise":
        return PiecewiseLinearBound(
            [(p["from"], p["C"], p["D"]) for p in doc["pieces"]]
        )
    raise ValueError(f"unknown bound kind {kind!r}")


# --- spec operations -------------------------------------------------------

def floor_eval(bound: TimeBound, n: int) -> int:
    return bound.floor_eval(n)


def decide_linear_inequality(bound: TimeBound, A: Sequence[int], B: Sequence[int]) -> bool:
    """True iff T(A0 + sum x_i*A_i) < B0 + sum x_i*B_i for some x in N^k."""
    A = tuple(int(a) for a in A)
    B = tuple(int(b) for b in B)
    if not A:
        raise ValueError("A must be non-empty")
    if len(A) != len(B):
        raise ValueError(f"dimension mismatch: |A|={len(A)} vs |B|={len(B)}")
    if any(a < 1 for a in A):
        raise ValueError("all A coefficients must be >= 1")
    if any(b < 0 for b in B):
        raise ValueError("all B coefficients must be >= 0")
    return bound.decide_linear_inequality(A, B)


def convergence_witness(bound: TimeBound, K: int) -> int:
    """n_K such that n*log2(n)/T(n) >= K for all n >= n_K."""
    if K < 0:
        raise ValueError("K must be a natural number")
    return bound.convergence_witness(K)


def find_trivial_n0(bound: TimeBound) -> Optional[int]:
    return bound.find_trivial_n0()


def ceil_of_bound_at(bound: TimeBound, n: int) -> int:
    num, den = bound.eval_ratio(n)
    return _ceildiv(num, den)


def sequence_count_bound(q: int, c: int) -> int:
    """Number of distinct state sequences of length <= c over q states, exactly."""
    if q < 2:
        raise ValueError("q must be >= 2")
    if c < 0:
        raise ValueError("c must be >= 0")
    return (q ** (c + 1) - 1) // (q - 1)


# --- crossing-length constant ----------------------------------------------

@dataclass(frozen=True)
class KobayashiConstant:
    c: int
    state_count: int
    bound_label: str


def _g_iv(bound: TimeBound, n: int) -> Iv:
    """g(n) = n*log2(n)/T(n) as an interval, n >= 2."""
    num, den = bound.eval_ratio(n)
    if num <= 0:
        raise UnsupportedBound("bound evaluates to 0 at n >= 2; no machine can comply")
    n_iv = iv_int(n)
    return n_iv.mul_pos(n_iv.log2()).div_pos(iv_ratio(num, den))


def _ineq_parts(q: int, bound: TimeBound, n: int) -> tuple[Iv, Iv, Iv]:
    """LHS, c-free RHS and the c coefficient of the crossing-length inequality at n."""
    n_iv = iv_int(n)
    log_n = n_iv.log2()
    sg = _g_iv(bound, n).sqrt()
    exponent = iv_int(q).log2().div_pos(sg)
    n_pow = exponent.mul_pos(log_n).exp2()
    lhs = iv_int(3).mul_pos((iv_int(q).mul_pos(n_pow) - iv_int(1))).div_pos(iv_int(q - 1))
    base = n_iv - iv_int(3) - n_iv.div_pos(sg)
    coef = sg.div_pos(log_n)
    return lhs, base, coef


def required_c_at(q: int, bound: TimeBound, n: int) -> int:
    """Smallest conservative c making the inequality hold at this n."""
    lhs, base, coef = _ineq_parts(q, bound, n)
    gap = lhs - base
    if gap.hi <= 0:
        return 0
    zero = iv_int(0).lo
    gap_pos = Iv(gap.lo if gap.lo > 0 else zero, gap.hi)
    return max(0, ceil_hi(gap_pos.div_pos(Iv(coef.lo, coef.lo))))


def ineq1_holds(q: int, bound: TimeBound, n: int, c: int) -> bool:
    """Certified check of the inequality at n (true only if provably true)."""
    lhs, base, coef = _ineq_parts(q, bound, n)
    rhs = base + iv_int(c).mul_pos(coef)
    return lhs.hi <= rhs.lo


def _range_c_upper(q: int, bound: TimeBound, a: int, b: int) -> int:
    """Sound upper bound on the c required anywhere in [a, b], valid when g is
    nondecreasing there: bound g below by g(a), n by [a, b] per term direction."""
    g_lo = Iv(_g_iv(bound, a).lo)
    if not g_lo.lo > 0:
        raise UnsupportedBound("bound is zero inside the scan range")
    sg = g_lo.sqrt()
    exponent = iv_int(q).log2().div_pos(sg)
    n_pow = exponent.mul_pos(iv_int(b).log2()).exp2()
    lhs = iv_int(3).mul_pos(iv_int(q).mul_pos(n_pow) - iv_int(1)).div_pos(iv_int(q - 1))
    base = iv_int(a) - iv_int(3) - iv_int(b).div_pos(sg)
    coef = sg.div_pos(iv_int(b).log2())  # coef >= sqrt(g_lo)/log2(b) on the range
    gap = lhs - base
    if gap.hi <= 0:
        return 0
    zero = iv_int(0).lo
    gap_pos = Iv(gap.lo if gap.lo > 0 else zero, gap.hi)
    return max(0, ceil_hi(gap_pos.div_pos(Iv(coef.lo, coef.lo))))


_SCAN_CHUNK = 2048


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def spend(self, amount: int) -> None:
        self.left -= amount
        if self.left < 0:
            raise BoundComputationInfeasible(
                "bound computation infeasible: pointwise scan exceeded the effort limit"
            )


def _required_c_over(
    q: int, bound: TimeBound, a: int, b: int, mono_from: Optional[int], budget: _Budget
) -> int:
    """Exact max of the per-point c requirement over [a, b].

    Where g is monotone, windows carry a sound upper bound on their best
    possible requirement, so a best-first refinement prunes every window whose
    bound cannot beat the max already found; pointwise work concentrates on
    the critical region.  Elsewhere (below mono_from) the scan is pointwise.
    """
    import heapq

    if a > b:
        return 0
    best = 0
    head_end = b if mono_from is None else min(b, mono_from - 1)
    if a <= head_end:
        budget.spend(head_end - a + 1)
        best = max(required_c_at(q, bound, n) for n in range(a, head_end + 1))
        a = head_end + 1
    if a > b:
        return best

    heap = [(-_range_c_upper(q, bound, a, b), a, b)]
    budget.spend(1)
    while heap:
        neg_ub, lo, hi = heapq.heappop(heap)
        if -neg_ub <= best:
            break  # best-first: every remaining window is bounded lower still
        if hi - lo + 1 <= _SCAN_CHUNK:
            budget.spend(hi - lo + 1)
            best = max(best, max(required_c_at(q, bound, n) for n in range(lo, hi + 1)))
            continue
        mid = (lo + hi) // 2
        for x, y in ((lo, mid), (mid + 1, hi)):
            budget.spend(1)
            heapq.heappush(heap, (-_range_c_upper(q, bound, x, y), x, y))
    return best


_KOBAYASHI_CACHE: dict[tuple[int, str], KobayashiConstant] = {}


def kobayashi_constant(q: int, bound: TimeBound, effort: int = 2_000_000) -> KobayashiConstant:
    """Certified upper bound on crossing-sequence length for q-state machines
    running within the bound.  Raises UnsupportedBound if the bound cannot
    certify convergence, BoundComputationInfeasible if the scan blows the
    effort limit."""
    if q < 2:
        raise ValueError("q must be >= 2")
    cache_key = (q, bound.describe())
    cached = _KOBAYASHI_CACHE.get(cache_key)
    if cached is not None:
        return cached
    num0, _ = bound.eval_ratio(0)
    num2, _ = bound.eval_ratio(2)
    if num2 <= 0:
        raise UnsupportedBound("bound is zero from n = 2 on; no machine can comply")

    lq = iv_int(q).log2()
    k_req = max(16, ceil_hi(iv_int(4).mul_pos(lq.mul_pos(lq))))
    threshold = max(144, bound.g_threshold(k_req))  # inequality holds for n >= threshold, any c

    budget = _Budget(effort)
    c_scan = _required_c_over(q, bound, 2, threshold - 1, bound.g_nondecreasing_from(), budget)
    c = max(c_scan, ceil_of_bound_at(bound, 0), ceil_of_bound_at(bound, 1))
    result = KobayashiConstant(c=c, state_count=q, bound_label=bound.describe())
    _KOBAYASHI_CACHE[cache_key] = result
    return result
