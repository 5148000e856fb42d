"""Truncated distribution algebras of SL2 over a prime field.

The algebra at level n has basis Y^(a) H^(b) X^(c), 0 <= a, b, c < p^n, with
coefficients in F_p.  Structure constants are *derived*, not transcribed:
the defining data are the generating-function relations

    X(t) X(u) = X(t + u)                    Y(t) Y(u) = Y(t + u)
    H(t) H(u) = H(t + u + tu)
    H(t) X(u) = X((1+t)^2 u) H(t)           H(t) Y(u) = Y((1+t)^-2 u) H(t)
    X(t) Y(u) = Y(u / (1+tu)) H(tu) X(t / (1+tu))

where X(t) = sum_n t^n X^(n) and so on.  Every structure constant is a
coefficient of a truncated bivariate power series obtained by substituting
the argument series above; closed-form product formulas are treated as
claims and compared against these oracles (see erratum_report, which
records where the printed forms disagree).

Also here: the warm-up distribution algebras of the additive and
multiplicative groups, computed from first principles by duality against
the coordinate Hopf algebras, and the level-lowering (Frobenius-style)
maps between truncation levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import rank_mod_p
from .qcomb import is_prime

HypMonomial = tuple[int, int, int]  # (Y-part, H-part, X-part)
HypElement = dict[HypMonomial, int]


@dataclass(frozen=True)
class HypParams:
    """Prime p and truncation level n: indices run over [0, p^n)."""

    p: int
    level: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus must be prime, got {self.p}")
        if self.level < 1:
            raise ValueError("level must be >= 1")

    @property
    def bound(self) -> int:
        return self.p ** self.level


class TruncatedSeries2:
    """Bivariate power series in t, u over F_p, truncated at (order_t, order_u)."""

    __slots__ = ("p", "order_t", "order_u", "coeffs")

    def __init__(self, p: int, order_t: int, order_u: int,
                 coeffs: dict[tuple[int, int], int] | None = None):
        self.p = p
        self.order_t = order_t
        self.order_u = order_u
        self.coeffs = coeffs if coeffs is not None else {}

    @staticmethod
    def one(p: int, order_t: int, order_u: int) -> "TruncatedSeries2":
        return TruncatedSeries2(p, order_t, order_u, {(0, 0): 1})

    def __mul__(self, other: "TruncatedSeries2") -> "TruncatedSeries2":
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), v1 in self.coeffs.items():
            for (i2, j2), v2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i > self.order_t or j > self.order_u:
                    continue
                key = (i, j)
                val = (out.get(key, 0) + v1 * v2) % self.p
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return TruncatedSeries2(self.p, self.order_t, self.order_u, out)

    def pow(self, k: int) -> "TruncatedSeries2":
        result = TruncatedSeries2.one(self.p, self.order_t, self.order_u)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def get(self, i: int, j: int) -> int:
        return self.coeffs.get((i, j), 0)


def _inv_one_plus_tu(p: int, order_t: int, order_u: int) -> TruncatedSeries2:
    """1/(1+tu) = sum (-1)^k (tu)^k, truncated."""
    out = {}
    for k in range(min(order_t, order_u) + 1):
        v = (-1) ** k % p
        if v:
            out[(k, k)] = v
    return TruncatedSeries2(p, order_t, order_u, out)


def _one_plus_t_pow(p: int, e: int, order_t: int) -> dict[int, int]:
    """Coefficients of (1+t)^e mod p up to t^order_t, any integer e."""
    if e >= 0:
        return {k: c for k in range(min(e, order_t) + 1)
                if (c := math.comb(e, k) % p)}
    inv = {k: (-1) ** k % p for k in range(order_t + 1)}  # (1+t)^-1
    out = {0: 1}
    for _ in range(-e):
        new: dict[int, int] = {}
        for k1, v1 in out.items():
            for k2, v2 in inv.items():
                k = k1 + k2
                if k > order_t:
                    continue
                val = (new.get(k, 0) + v1 * v2) % p
                if val:
                    new[k] = val
                else:
                    new.pop(k, None)
        out = new
    return out


class _HypEngine:
    """Oracle tables for one (p, level) pair."""

    def __init__(self, params: HypParams):
        self.params = params
        self.p = params.p
        self.bound = params.bound
        self._xy: dict[tuple[int, int], HypElement] = {}
        self._hh: dict[tuple[int, int], dict[int, int]] = {}
        self._move: dict[tuple[int, int], dict[int, int]] = {}
        self._xx: dict[tuple[int, int], int] = {}

    def xy_table(self, n: int, m: int) -> HypElement:
        """Normal order of X^(n) Y^(m) by bivariate coefficient extraction."""
        key = (n, m)
        memo = self._xy.get(key)
        if memo is not None:
            return memo
        p = self.p
        inv = _inv_one_plus_tu(p, n, m)
        su = TruncatedSeries2(p, n, m, {(0, 1): 1}) * inv   # u/(1+tu)
        st = TruncatedSeries2(p, n, m, {(1, 0): 1}) * inv   # t/(1+tu)
        su_pows = [TruncatedSeries2.one(p, n, m)]
        for _ in range(m):
            su_pows.append(su_pows[-1] * su)
        st_pows = [TruncatedSeries2.one(p, n, m)]
        for _ in range(n):
            st_pows.append(st_pows[-1] * st)
        out: HypElement = {}
        for a in range(m + 1):
            for c in range(n + 1):
                prod = su_pows[a] * st_pows[c]
                for b in range(min(n, m) + 1):
                    v = prod.get(n - b, m - b)
                    if v:
                        out[(a, b, c)] = v
        self._xy[key] = out
        return out

    def hh_table(self, m: int, n: int) -> dict[int, int]:
        """H^(m) H^(n) = sum_k c_k H^(k), from H(t)H(u) = H(t+u+tu)."""
        key = (m, n)
        memo = self._hh.get(key)
        if memo is not None:
            return memo
        p = self.p
        w = TruncatedSeries2(p, m, n, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
        out: dict[int, int] = {}
        wk = TruncatedSeries2.one(p, m, n)
        for k in range(m + n + 1):
            if k:
                wk = wk * w
            v = wk.get(m, n)
            if v:
                out[k] = v
        self._hh[key] = out
        return out

    def move_table(self, b: int, weight: int) -> dict[int, int]:
        """Coefficients c_j with H^(b) G^(x) = sum_j c_j G^(x) H^(j), where G
        is a generator of H-weight `weight` and x absorbs into weight.

        From H(t) G(u) = G((1+t)^weight u) H(t): c_j = [(1+t)^weight]_(b-j).
        The same table moves G^(x) rightward past H^(b) with weight negated.
        """
        key = (b, weight)
        memo = self._move.get(key)
        if memo is not None:
            return memo
        ser = _one_plus_t_pow(self.p, weight, b)
        out = {j: ser[b - j] for j in range(b + 1) if (b - j) in ser}
        self._move[key] = out
        return out

    def xx_merge(self, m: int, n: int) -> int:
        """Scalar c with X^(m) X^(n) = c X^(m+n), from X(t)X(u) = X(t+u)."""
        key = (m, n)
        memo = self._xx.get(key)
        if memo is None:
            w = TruncatedSeries2(self.p, m, n, {(1, 0): 1, (0, 1): 1})
            memo = w.pow(m + n).get(m, n)
            self._xx[key] = memo
        return memo

    def mono_mul(self, left: HypMonomial, right: HypMonomial) -> HypElement:
        a, b, c = left
        a2, b2, c2 = right
        p = self.p
        bound = self.bound
        out: HypElement = {}
        for (x, y, z), v in self.xy_table(c, a2).items():
            y_merge = self.xx_merge(a, x)
            if not y_merge:
                continue
            x_merge = self.xx_merge(z, c2)
            if not x_merge:
                continue
            assert a + x < bound and z + c2 < bound
            base = v * y_merge * x_merge % p
            # H^(b) slides right past Y^(x); X^(z) slides left past H^(b2).
            for j, cj in self.move_table(b, -2 * x).items():
                for i, ci in self.move_table(b2, -2 * z).items():
                    for k1, ck1 in self.hh_table(j, y).items():
                        for k2, ck2 in self.hh_table(k1, i).items():
                            coeff = base * cj * ci * ck1 * ck2 % p
                            if not coeff:
                                continue
                            assert k2 < bound
                            key = (a + x, k2, z + c2)
                            val = (out.get(key, 0) + coeff) % p
                            if val:
                                out[key] = val
                            else:
                                out.pop(key, None)
        return out


_HYP_ENGINES: dict[tuple[int, int], _HypEngine] = {}


def _engine(params: HypParams) -> _HypEngine:
    key = (params.p, params.level)
    eng = _HYP_ENGINES.get(key)
    if eng is None:
        eng = _HypEngine(params)
        _HYP_ENGINES[key] = eng
    return eng


def hyp_monomial(params: HypParams, a: int, b: int, c: int, coeff: int = 1) -> HypElement:
    bound = params.bound
    if not (0 <= a < bound and 0 <= b < bound and 0 <= c < bound):
        raise ValueError(f"monomial indices must lie in [0, {bound})")
    coeff %= params.p
    return {(a, b, c): coeff} if coeff else {}


def hyp_add(x: HypElement, y: HypElement, p: int) -> HypElement:
    out = dict(x)
    for k, v in y.items():
        val = (out.get(k, 0) + v) % p
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


def hyp_scale(x: HypElement, c: int, p: int) -> HypElement:
    c %= p
    return {k: v * c % p for k, v in x.items()} if c else {}


def hyp_multiply(params: HypParams, x: HypElement, y: HypElement) -> HypElement:
    eng = _engine(params)
    p = params.p
    out: HypElement = {}
    for ma, ca in x.items():
        for mb, cb in y.items():
            c = ca * cb % p
            for mono, coeff in eng.mono_mul(ma, mb).items():
                val = (out.get(mono, 0) + c * coeff) % p
                if val:
                    out[mono] = val
                else:
                    out.pop(mono, None)
    return out


def xy_normal_order(params: HypParams, n: int, m: int) -> HypElement:
    """Normal-ordered X^(n) Y^(m), straight from the generating-function oracle."""
    if not (0 <= n < params.bound and 0 <= m < params.bound):
        raise ValueError("indices outside the truncation bound")
    return dict(_engine(params).xy_table(n, m))


def hx_normal_order(params: HypParams, b: int, c: int) -> HypElement:
    """Normal-ordered H^(b) X^(c) = sum_j [(1+t)^(2c)]_(b-j) X^(c) H^(j)."""
    eng = _engine(params)
    return {(0, j, c): v for j, v in eng.move_table(b, 2 * c).items()}


def hy_normal_order(params: HypParams, b: int, a: int) -> HypElement:
    """Normal-ordered H^(b) Y^(a) = sum_j [(1+t)^(-2a)]_(b-j) Y^(a) H^(j)."""
    eng = _engine(params)
    return {(a, j, 0): v for j, v in eng.move_table(b, -2 * a).items()}


def frobenius_pi(params: HypParams, x: HypElement, k: int) -> HypElement:
    """The level-lowering map onto level 1: a monomial survives iff all of
    its indices are divisible by p^k, and then the indices shift down."""
    if params.level != k + 1:
        raise ValueError(f"element lives at level {params.level}, expected {k + 1}")
    step = params.p ** k
    out: HypElement = {}
    for (a, b, c), v in x.items():
        if a % step or b % step or c % step:
            continue
        out[(a // step, b // step, c // step)] = v
    return out


def hyp_basis(params: HypParams):
    bound = params.bound
    for a in range(bound):
        for b in range(bound):
            for c in range(bound):
                yield (a, b, c)


def kernel_dimensions(params: HypParams, k: int) -> dict:
    """Dimension bookkeeping for the level-lowering map out of level k+1.

    The map sends basis monomials to basis monomials or zero, so the exact
    rank is the count of surviving monomials and the kernel has dimension
    p^(3(k+1)) - p^(3k).  The left ideal generated by the augmentation part
    of the level-k subalgebra (which the counit kills: every non-unit
    divided-power monomial has counit zero) is contained in that kernel and
    is confirmed to span it by exact rank over F_p; each enumerated product
    is also checked to map to zero.
    """
    if params.level != k + 1:
        raise ValueError("parameters must sit at level k+1")
    p = params.p
    step = p ** k
    total = params.bound ** 3
    surviving = sum(1 for mono in hyp_basis(params)
                    if not (mono[0] % step or mono[1] % step or mono[2] % step))
    kernel_dim = total - surviving
    expected = p ** (3 * (k + 1)) - p ** (3 * k)

    low_bound = p ** k
    index = {mono: i for i, mono in enumerate(hyp_basis(params))}
    containment_ok = True

    def rows():
        nonlocal containment_ok
        for big in hyp_basis(params):
            for small in ((a, b, c) for a in range(low_bound)
                          for b in range(low_bound) for c in range(low_bound)):
                if small == (0, 0, 0):
                    continue
                prod = hyp_multiply(params, hyp_monomial(params, *big),
                                    hyp_monomial(params, *small))
                if prod:
                    if frobenius_pi(params, prod, k):
                        containment_ok = False
                    yield {index[mono]: v for mono, v in prod.items()}

    span_rank = rank_mod_p(rows(), p, stop_at=kernel_dim)
    return {
        "p": p, "k": k,
        "dim_level_k": p ** (3 * k),
        "dim_level_k_plus_1": total,
        "kernel_dim": kernel_dim,
        "kernel_dim_expected": expected,
        "kernel_matches": kernel_dim == expected,
        "ideal_span_rank": span_rank,
        "ideal_spans_kernel": span_rank == kernel_dim,
        "products_contained_in_kernel": containment_ok,
    }


# -- warm-up algebras by duality ---------------------------------------------


def _poly_mul_mod(a: dict[int, int], b: dict[int, int], p: int, cap: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, v in a.items():
        for j, w in b.items():
            k = i + j
            if k > cap:
                continue
            val = (out.get(k, 0) + v * w) % p
            if val:
                out[k] = val
            else:
                out.pop(k, None)
    return out


def additive_group_product(p: int, a: int, b: int, cap: int) -> dict[int, int]:
    """gamma_a * gamma_b in the distribution algebra of the additive group,
    evaluated by duality: (gamma_a gamma_b)(t^m) through Delta(t) = t(x)1 + 1(x)t."""
    out: dict[int, int] = {}
    for m in range(cap + 1):
        total = 0
        for i in range(m + 1):
            # gamma_a(t^i) gamma_b(t^(m-i))
            if i == a and m - i == b:
                total += math.comb(m, i)
        total %= p
        if total:
            out[m] = total
    return out


def multiplicative_group_product(p: int, a: int, b: int, cap: int) -> dict[int, int]:
    """pi_a * pi_b in the distribution algebra of the multiplicative group.

    Duality oracle: evaluate on (t-1)^m using Delta(t) = t (x) t, i.e.
    Delta((t-1)^m) = ((t-1) (x) t + 1 (x) (t-1))^m, expanding t-powers back
    into the (t-1) basis.
    """
    out: dict[int, int] = {}
    for m in range(min(cap, a + b) + 1):
        total = 0
        for i in range(m + 1):
            # (t-1)^i (x) t^i (t-1)^(m-i), with binom(m, i) ways
            if i != a:
                continue
            # expand t^i (t-1)^(m-i) in powers of s = t-1 and apply pi_b
            t_pow = {j: math.comb(i, j) % p for j in range(i + 1)}
            shifted = _poly_mul_mod(t_pow, {m - i: 1}, p, cap=a + b)
            total += math.comb(m, i) * shifted.get(b, 0)
        total %= p
        if total:
            out[m] = total
    return out


def ga_gm_models(p: int, cap: int = 8) -> dict:
    """Product tables of the two warm-up algebras, from the duality oracles,
    with the closed-form claims evaluated alongside."""
    if not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")
    ga: dict[tuple[int, int], dict[int, int]] = {}
    ga_matches = True
    for a in range(cap + 1):
        for b in range(cap + 1):
            oracle = additive_group_product(p, a, b, 2 * cap)
            ga[(a, b)] = oracle
            closed = {a + b: math.comb(a + b, a) % p} \
                if math.comb(a + b, a) % p else {}
            ga_matches = ga_matches and oracle == closed
    gm: dict[tuple[int, int], dict[int, int]] = {}
    for a in range(cap + 1):
        for b in range(cap + 1):
            gm[(a, b)] = multiplicative_group_product(p, a, b, 2 * cap)
    return {"p": p, "cap": cap,
            "additive": ga, "additive_closed_form_matches": ga_matches,
            "multiplicative": gm}


# -- printed closed forms and the erratum report -------------------------------


def printed_xy_closed_form(p: int, n: int, m: int) -> HypElement:
    """The closed form for X^(n) Y^(m) as printed: signed binomial with
    upper index m+n-l-k (treated as a claim, not a definition)."""
    out: HypElement = {}
    for l in range(min(m, n) + 1):
        for k in range(l + 1):
            c = (-1) ** (l - k) * math.comb(m + n - l - k, l - k) % p
            if not c:
                continue
            key = (m - l, k, n - l)
            val = (out.get(key, 0) + c) % p
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def printed_xy_bracket_case(p: int, pn: int, pm: int) -> HypElement:
    """The printed special case for [X^(p^n), Y^(p^m)]: binom(l+k, l-k)."""
    out: HypElement = {}
    for l in range(1, min(pn, pm) + 1):
        for k in range(l + 1):
            c = math.comb(l + k, l - k) % p
            if not c:
                continue
            key = (pm - l, k, pn - l)
            val = (out.get(key, 0) + c) % p
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def format_hyp(x: HypElement) -> str:
    if not x:
        return "0"
    parts = []
    for (a, b, c), v in sorted(x.items()):
        letters = [f"Y({a})" if a else "", f"H({b})" if b else "",
                   f"X({c})" if c else ""]
        mono = "*".join(s for s in letters if s) or "1"
        parts.append(f"{v}*{mono}" if v != 1 or mono == "1" else mono)
    return " + ".join(parts)


def erratum_report(p: int, level: int = 1, cap: int | None = None) -> dict:
    """Compare the printed closed forms against the generating-function and
    duality oracles, and record every disagreement verbatim."""
    params = HypParams(p, level)
    eng = _engine(params)
    cap = params.bound if cap is None else cap

    xy_mismatches = []
    for n in range(cap):
        for m in range(cap):
            oracle = eng.xy_table(n, m)
            printed = printed_xy_closed_form(p, n, m)
            if oracle != printed:
                xy_mismatches.append({
                    "n": n, "m": m,
                    "oracle": format_hyp(oracle),
                    "printed": format_hyp(printed)})

    case_mismatches = []
    for nn in range(level):
        for mm in range(level):
            pn, pm = p ** nn, p ** mm
            oracle = dict(eng.xy_table(pn, pm))
            yx = (pm, 0, pn)
            val = (oracle.get(yx, 0) - 1) % p
            if val:
                oracle[yx] = val
            else:
                oracle.pop(yx, None)
            printed = printed_xy_bracket_case(p, pn, pm)
            if oracle != printed:
                case_mismatches.append({
                    "exp_n": nn, "exp_m": mm,
                    "oracle_bracket": format_hyp(oracle),
                    "printed": format_hyp(printed)})

    hx_mismatches = []
    for mm in range(level + 1):
        for nn in range(level + 1):
            if p ** max(mm, nn) >= params.bound * p:
                continue
            hm, xn = p ** mm, p ** nn
            big = HypParams(p, max(level, mm + 1, nn + 1))
            lhs = hyp_multiply(big, hyp_monomial(big, 0, hm, 0),
                               hyp_monomial(big, 0, 0, xn))
            rhs = hyp_multiply(big, hyp_monomial(big, 0, 0, xn),
                               hyp_monomial(big, 0, hm, 0))
            comm = dict(lhs)
            for k, v in rhs.items():
                val = (comm.get(k, 0) - v) % p
                if val:
                    comm[k] = val
                else:
                    comm.pop(k, None)
            printed = {(0, 0, xn): 2 % p} if mm == nn else {}
            printed = {k: v for k, v in printed.items() if v}
            if comm != printed:
                hx_mismatches.append({
                    "exp_m": mm, "exp_n": nn,
                    "oracle": format_hyp(comm), "printed": format_hyp(printed)})

    gm_cap = min(cap, 6)
    gm_as_printed = []       # all terms on index m+n-1, as literally printed
    gm_digit_corrected = []  # terms on m+n-i
    for a in range(gm_cap):
        for b in range(gm_cap):
            oracle = multiplicative_group_product(p, a, b, 2 * gm_cap)
            printed_literal: dict[int, int] = {}
            printed_fixed: dict[int, int] = {}
            for i in range(min(a, b) + 1):
                coeff = (math.factorial(a + b - i)
                         // (math.factorial(a - i) * math.factorial(b - i)
                             * math.factorial(i))) % p
                for table, idx in ((printed_literal, a + b - 1),
                                   (printed_fixed, a + b - i)):
                    val = (table.get(idx, 0) + coeff) % p
                    if val:
                        table[idx] = val
                    else:
                        table.pop(idx, None)
            if oracle != printed_literal:
                gm_as_printed.append({"m": a, "n": b,
                                      "oracle": repr(sorted(oracle.items())),
                                      "printed": repr(sorted(printed_literal.items()))})
            if oracle != printed_fixed:
                gm_digit_corrected.append({"m": a, "n": b,
                                           "oracle": repr(sorted(oracle.items())),
                                           "candidate": repr(sorted(printed_fixed.items()))})

    return {
        "p": p,
        "xy_closed_form": {
            "instances": cap * cap,
            "mismatches": xy_mismatches,
            "agrees": not xy_mismatches,
        },
        "xy_bracket_case": {
            "instances": level * level,
            "mismatches": case_mismatches,
            "agrees": not case_mismatches,
        },
        "hx_bracket_case": {
            "instances": (level + 1) ** 2,
            "mismatches": hx_mismatches,
            "agrees": not hx_mismatches,
        },
        "gm_product": {
            "instances": gm_cap * gm_cap,
            "as_printed_mismatches": gm_as_printed,
            "digit_corrected_mismatches": gm_digit_corrected,
            "as_printed_agrees": not gm_as_printed,
            "digit_corrected_agrees": not gm_digit_corrected,
        },
    }


def erratum_text(report: dict) -> str:
    lines = [f"Closed-form vs oracle comparison at p = {report['p']}"]
    xy = report["xy_closed_form"]
    lines.append(
        f"  XY normal-order closed form: {len(xy['mismatches'])} of "
        f"{xy['instances']} instances disagree with the series oracle")
    for mm in xy["mismatches"][:3]:
        lines.append(f"    X({mm['n']})Y({mm['m']}): oracle {mm['oracle']}"
                     f" | printed {mm['printed']}")
    case = report["xy_bracket_case"]
    lines.append(
        f"  XY bracket special case: {len(case['mismatches'])} of "
        f"{case['instances']} instances disagree")
    hx = report["hx_bracket_case"]
    lines.append(
        f"  HX bracket special case: {len(hx['mismatches'])} of "
        f"{hx['instances']} instances disagree")
    for mm in hx["mismatches"][:2]:
        lines.append(f"    [H(p^{mm['exp_m']}), X(p^{mm['exp_n']})]: oracle "
                     f"{mm['oracle']} | printed {mm['printed']}")
    gm = report["gm_product"]
    lines.append(
        f"  Multiplicative-group product, subscripts as printed: "
        f"{len(gm['as_printed_mismatches'])} of {gm['instances']} disagree; "
        f"digit-corrected subscripts: "
        f"{len(gm['digit_corrected_mismatches'])} disagree")
    return "\n".join(lines)
