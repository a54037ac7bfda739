"""Divided-power monomial basis and straightening for hyperalgebras of map algebras.

Generators are divided powers (x^±_alpha ⊗ b)^(k), Cartan binomials
binom(h_i ⊗ 1, k), and the degree-r coefficients L(i,c,r) of the series
exp(-sum_{s>=1} (h_i ⊗ c^s)/s u^s).  Ordered products of these, one factor
per generator label, form a basis of the integral form; every element of the
envelope that lies in the integral form collects into that basis with integer
coefficients, and `collect` certifies this on the fly.

Monomials are tuples of gensym tuples (kind, idx, exps, k) with kind
F_DP < H_BINOM < L_GEN < E_DP; plain tuple sorting is the basis order.
A HyperElt is a dict mapping monomials to integer coefficients.
"""
from __future__ import annotations

import itertools
import math
import random
import re
from fractions import Fraction

from .oracle import CARTAN, LOWER, RAISE, OracleElt
from .scalars import vec_add_scaled

F_DP, H_BINOM, L_GEN, E_DP = 0, 1, 2, 3

_KIND_NAMES = {F_DP: "F", H_BINOM: "H", L_GEN: "L", E_DP: "E"}


class NotInZFormError(ValueError):
    """Raised when an element fails to collect with integer coefficients."""


# -- gensym and monomial construction ----------------------------------------

def lower_dp(alpha, b, k):
    if k < 1:
        raise ValueError("divided-power exponent must be >= 1")
    return (F_DP, alpha, tuple(b), k)


def raise_dp(alpha, b, k):
    if k < 1:
        raise ValueError("divided-power exponent must be >= 1")
    return (E_DP, alpha, tuple(b), k)


def cartan_binom(i, k, unit):
    if k < 1:
        raise ValueError("binomial order must be >= 1")
    return (H_BINOM, i, tuple(unit), k)


def lambda_gen(i, c, r, unit):
    if r < 1:
        raise ValueError("series order must be >= 1")
    if tuple(c) == tuple(unit):
        raise ValueError("the unit coefficient is carried by Cartan binomials")
    return (L_GEN, i, tuple(c), r)


def ordered_monomial(gens):
    """Sort gensyms into the basis order; reject duplicate generator labels."""
    m = tuple(sorted(gens))
    seen = set()
    for kind, idx, exps, k in m:
        if k < 1:
            raise ValueError("trivial factors are omitted, not stored")
        label = (kind, idx) if kind == H_BINOM else (kind, idx, exps)
        if label in seen:
            raise ValueError(f"repeated generator label {label} in monomial")
        seen.add(label)
    return m


def monomial_degree(m):
    """Total divided-power degree over the root-vector factors."""
    return sum(k for kind, _i, _e, k in m if kind in (F_DP, E_DP))


def monomial_adeg(o, m):
    return sum(k * o.algebra.deg(exps) for _kind, _i, exps, k in m)


def monomial_weight_drop(o, m):
    """Root-lattice weight lowered by the monomial (lowering counts positive)."""
    drop = [0] * o.datum.rank
    for kind, idx, _exps, k in m:
        if kind not in (F_DP, E_DP):
            continue
        sign = k if kind == F_DP else -k
        for i, c in enumerate(o.datum.pos_roots[idx]):
            drop[i] += sign * c
    return tuple(drop)


# -- truncated u-series over envelope elements --------------------------------

def _series_mul(o, s1, s2, order):
    out = [o.zero() for _ in range(order + 1)]
    for i, a in enumerate(s1):
        if not a or i > order:
            continue
        for j, b in enumerate(s2):
            if i + j > order:
                break
            if b:
                out[i + j] = out[i + j] + a * b
    return out


def _series_dp_coeff(o, s, dp, n):
    """Coefficient of u^n in the dp-th divided power of the series s."""
    pw = [o.one()] + [o.zero()] * n
    for _ in range(dp):
        pw = _series_mul(o, pw, s, n)
    return Fraction(1, math.factorial(dp)) * pw[n]


def _series_exp(o, s, order):
    # s must have zero constant term; s^n then starts in degree n
    out = [o.one()] + [o.zero()] * order
    pw = [o.one()] + [o.zero()] * order
    for n in range(1, order + 1):
        pw = _series_mul(o, pw, s, order)
        cn = Fraction(1, math.factorial(n))
        for d in range(n, order + 1):
            if pw[d]:
                out[d] = out[d] + cn * pw[d]
    return out


# -- Cartan series coefficients ------------------------------------------------

def _as_combo(a):
    """Normalize an algebra element to a dict basis -> coefficient."""
    if isinstance(a, dict):
        return dict(a)
    return {tuple(a): 1}


def _combo_mul(A, c1, c2):
    out = {}
    for b1, v1 in c1.items():
        for b2, v2 in c2.items():
            b = A.mul(b1, b2)
            s = out.get(b, 0) + v1 * v2
            if s:
                out[b] = s
            else:
                del out[b]
    return out


def _hvec_elt(o, hvec, b):
    out = o.zero()
    for i, c in enumerate(hvec):
        if c:
            out = out + c * o.h(i, b)
    return out


def _lambda_series_coeff(o, hvec, combo, r):
    if r < 0:
        raise ValueError("series order must be >= 0")
    if r == 0:
        return o.one()
    A = o.algebra
    pw = {A.unit(): 1}
    s = [o.zero()]
    for n in range(1, r + 1):
        pw = _combo_mul(A, pw, combo)
        term = o.zero()
        for b, cb in pw.items():
            term = term + (-Fraction(cb, n)) * _hvec_elt(o, hvec, b)
        s.append(term)
    return _series_exp(o, s, r)[r]


def lambda_poly(o, i, a, r):
    """Coefficient of u^r in exp(-sum_{s>=1} (h_i ⊗ a^s)/s u^s).

    a is a single coefficient-algebra basis element or a dict combination.
    """
    hvec = tuple(1 if j == i else 0 for j in range(o.datum.rank))
    return _lambda_series_coeff(o, hvec, _as_combo(a), r)


def lambda_poly_root(o, alpha, a, r):
    """Same series for the coroot of an arbitrary positive root."""
    return _lambda_series_coeff(o, o.datum.coroots[alpha], _as_combo(a), r)


def lambda_power_reduction(o, i, a, k, r):
    """Rewrite the order-r series coefficient at a^k through those at a.

    Returns a dict mapping ascending tuples (s_1, ..., s_l) to integers m so
    that the series coefficient L(i, a^k, r) equals
    sum m * L(i,a,s_1) ... L(i,a,s_l); the total weight sum(s_j) of every
    tuple is r*k and the single-part tuple (r*k,) carries coefficient k.
    """
    A = o.algebra
    a = tuple(a)
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    target = lambda_poly(o, i, {A.pow(a, k): 1}, r)
    n = r * k
    parts = sorted(_partitions(n))
    cols = []
    for pi in parts:
        e = o.one()
        for s in pi:
            e = e * lambda_poly(o, i, {a: 1}, s)
        cols.append(e)
    sol = _solve_exact(o, cols, target)
    out = {}
    for pi, x in zip(parts, sol):
        if x:
            if x.denominator != 1:
                raise NotInZFormError(f"series reduction produced non-integer weight {x}")
            out[pi] = int(x)
    return out


def _partitions(n):
    """All partitions of n as ascending tuples."""
    if n == 0:
        return [()]
    out = []

    def rec(rest, minpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(minpart, rest + 1):
            acc.append(p)
            rec(rest - p, p, acc)
            acc.pop()

    rec(n, 1, [])
    return out


def _solve_exact(o, cols, target):
    """Solve sum x_j cols[j] = target exactly; unique solution expected."""
    words = sorted({w for e in cols for w in e.terms} | set(target.terms))
    rows = [[e.terms.get(w, Fraction(0)) for e in cols] + [target.terms.get(w, Fraction(0))]
            for w in words]
    ncol = len(cols)
    pivots = []
    rank = 0
    for col in range(ncol):
        piv = next((j for j in range(rank, len(rows)) if rows[j][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for j in range(len(rows)):
            if j != rank and rows[j][col]:
                c = rows[j][col]
                rows[j] = [x - c * y for x, y in zip(rows[j], rows[rank])]
        pivots.append(col)
        rank += 1
    if rank < ncol:
        raise ValueError("reduction system is underdetermined")
    for j in range(rank, len(rows)):
        if rows[j][ncol]:
            raise ValueError("reduction system is inconsistent")
    sol = [Fraction(0)] * ncol
    for j, col in enumerate(pivots):
        sol[col] = rows[j][ncol]
    return sol


# -- lowering series --------------------------------------------------------

def xminus_series_dp_coeff(o, alpha, a, b, dp, n):
    """Coefficient of u^n in the dp-th divided power of
    sum_{j>=0} (x^-_alpha ⊗ a^j b^{j+1}) u^{j+1}."""
    A = o.algebra
    a, b = tuple(a), tuple(b)
    s = [o.zero()]
    for j in range(n):
        exps = A.mul(A.pow(a, j), A.pow(b, j + 1))
        s.append(o.x_minus(alpha, exps))
    return _series_dp_coeff(o, s, dp, n)


# -- expansion into the envelope ----------------------------------------------

_GEN_CACHE = {}
_MON_CACHE = {}


def expand_gen(o, g):
    """The gensym as an envelope element."""
    key = (o, g)
    got = _GEN_CACHE.get(key)
    if got is not None:
        return got
    kind, idx, exps, k = g
    if kind in (F_DP, E_DP):
        letter = o.letter(LOWER if kind == F_DP else RAISE, idx, exps)
        out = OracleElt(o, {(letter,) * k: Fraction(1, math.factorial(k))})
    elif kind == H_BINOM:
        x = o.h(idx, exps)
        acc = o.one()
        for j in range(k):
            acc = acc * (x - j * o.one())
        out = Fraction(1, math.factorial(k)) * acc
    else:
        hvec = tuple(1 if j == idx else 0 for j in range(o.datum.rank))
        out = _lambda_series_coeff(o, hvec, {exps: 1}, k)
    _GEN_CACHE[key] = out
    return out


def expand_monomial(o, m):
    key = (o, m)
    got = _MON_CACHE.get(key)
    if got is None:
        got = expand_word(o, m)
        _MON_CACHE[key] = got
    return got


def expand_word(o, gens):
    out = o.one()
    for g in gens:
        out = out * expand_gen(o, g)
    return out


# -- collection into the ordered basis ----------------------------------------

def _monomial_of_word(o, w):
    unit = o.algebra.unit()
    gens = []
    for letter, grp in itertools.groupby(w):
        k = len(tuple(grp))
        block, idx, _deg, exps = letter
        if block == LOWER:
            gens.append((F_DP, idx, exps, k))
        elif block == RAISE:
            gens.append((E_DP, idx, exps, k))
        elif exps == unit:
            gens.append((H_BINOM, idx, exps, k))
        else:
            gens.append((L_GEN, idx, exps, k))
    return tuple(sorted(gens))


_LEAD_CACHE = {}


def _leading_coeff(m):
    """Coefficient of the longest envelope word in expand_monomial(m)."""
    c = _LEAD_CACHE.get(m)
    if c is None:
        c = Fraction(1)
        for kind, _i, _e, k in m:
            c /= math.factorial(k)
            if kind == L_GEN and k % 2:
                c = -c
        _LEAD_CACHE[m] = c
    return c


def collect(o, e):
    """Express an envelope element in the ordered divided-power basis.

    Greedy elimination of the longest remaining word; the subtracted basis
    expansions only produce strictly shorter corrections, so words of one
    length can be eliminated in a single descending sweep per length bucket.
    Raises NotInZFormError when a collected coefficient is not an integer.
    """
    by_len = {}
    for w, c in e.terms.items():
        if c:
            by_len.setdefault(len(w), {})[w] = c
    out = {}
    while by_len:
        length = max(by_len)
        bucket = by_len.pop(length)
        for w in sorted(bucket, reverse=True):
            c = bucket[w]
            if not c:
                continue
            m = _monomial_of_word(o, w)
            q = c / _leading_coeff(m)
            if q.denominator != 1:
                raise NotInZFormError(
                    f"coefficient {q} at {format_monomial(o, m)} is not an integer")
            q = int(q)
            out[m] = q
            for w2, c2 in expand_monomial(o, m).terms.items():
                if len(w2) == length:
                    continue  # the leading word itself; cancels exactly
                b2 = by_len.setdefault(len(w2), {})
                nc = b2.get(w2, 0) - q * c2
                if nc:
                    b2[w2] = nc
                else:
                    b2.pop(w2, None)
    return {m: c for m, c in out.items() if c}


def straighten(o, gens):
    """Ordered-basis form of a product of gensyms, with certified integer weights."""
    return collect(o, expand_word(o, gens))


def hyper_mul(o, h1, h2):
    """Product of two basis-form elements, restraightened."""
    out = {}
    for m1, c1 in h1.items():
        e1 = expand_monomial(o, m1)
        for m2, c2 in h2.items():
            prod = collect(o, e1 * expand_monomial(o, m2))
            for m, c in prod.items():
                s = out.get(m, 0) + c1 * c2 * c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out


def quotient_drop_raising(h):
    """Project a basis-form element modulo the right ideal generated by raisings."""
    return {m: c for m, c in h.items()
            if all(kind != E_DP for kind, _i, _e, _k in m)}


def oracle_drop_raising(e):
    """Same projection at the envelope level: drop words with raising letters."""
    return OracleElt(e.oracle, {w: c for w, c in e.terms.items()
                                if all(l[0] != RAISE for l in w)})


# -- textual and JSON forms -----------------------------------------------------

def format_gensym(o, g):
    kind, idx, exps, k = g
    b = o.algebra.format(exps)
    if kind == H_BINOM:
        return f"H({idx + 1})^[{k}]"
    if kind == L_GEN:
        return f"L({idx + 1},{b},{k})"
    return f"{_KIND_NAMES[kind]}({o.datum.format_root(idx)},{b})^({k})"


def format_monomial(o, m):
    if not m:
        return "1"
    return " ".join(format_gensym(o, g) for g in m)


def format_hyper(o, h):
    if not h:
        return "0"
    bits = []
    for m in sorted(h):
        bits.append(f"{h[m]}*{format_monomial(o, m)}")
    return " + ".join(bits)


_GEN_RE = re.compile(r"([FE])\(([^,()]+),([^,()]+)\)\^\((\d+)\)")
_H_RE = re.compile(r"H\((\d+)\)\^\[(\d+)\]")
_L_RE = re.compile(r"L\((\d+),([^,()]+),(\d+)\)")


def parse_gensym(o, tok):
    m = _GEN_RE.fullmatch(tok)
    if m:
        kind = F_DP if m.group(1) == "F" else E_DP
        alpha = o.datum.parse_root(m.group(2))
        return (kind, alpha, o.algebra.parse(m.group(3)), int(m.group(4)))
    m = _H_RE.fullmatch(tok)
    if m:
        return cartan_binom(int(m.group(1)) - 1, int(m.group(2)), o.algebra.unit())
    m = _L_RE.fullmatch(tok)
    if m:
        return lambda_gen(int(m.group(1)) - 1, o.algebra.parse(m.group(2)),
                          int(m.group(3)), o.algebra.unit())
    raise ValueError(f"bad generator token {tok!r}")


def parse_monomial(o, s):
    s = s.strip()
    if s == "1":
        return ()
    return ordered_monomial(parse_gensym(o, tok) for tok in s.split())


def hyper_to_json(o, h):
    return [[format_monomial(o, m), str(h[m])] for m in sorted(h)]


def hyper_from_json(o, pairs):
    out = {}
    for ms, cs in pairs:
        c = int(cs)
        if c:
            out[parse_monomial(o, ms)] = c
    return out


# -- identity verification -------------------------------------------------------

def _binom_elt(o, hvec, shift, m):
    """binom(h + shift, m) for h = sum hvec[i] h_i ⊗ 1, as an envelope element."""
    x = _hvec_elt(o, hvec, o.algebra.unit()) + shift * o.one()
    acc = o.one()
    for j in range(m):
        acc = acc * (x - j * o.one())
    return Fraction(1, math.factorial(m)) * acc


def _unit_hvec(o, i):
    return tuple(1 if j == i else 0 for j in range(o.datum.rank))


def _report(o, params, lhs, rhs, residual=None):
    if residual is None:
        residual = lhs - rhs
    return {
        "params": dict(params),
        "pass": not residual.terms,
        "lhs": o.format_elt(lhs),
        "rhs": o.format_elt(rhs),
        "residual": o.format_elt(residual),
    }


def _check_basicrel(o, p):
    alpha, a, b = p["alpha"], tuple(p["a"]), tuple(p["b"])
    r, s = p["r"], p["s"]
    if not 1 <= r <= s:
        raise ValueError("requires 1 <= r <= s")
    A = o.algebra
    lhs = oracle_drop_raising(
        expand_gen(o, raise_dp(alpha, a, r)) * expand_gen(o, lower_dp(alpha, b, s)))
    ab = A.mul(a, b)
    rhs = o.zero()
    for j in range(r + 1):
        term = xminus_series_dp_coeff(o, alpha, a, b, s - r, s - r + j)
        rhs = rhs + term * lambda_poly_root(o, alpha, ab, r - j)
    if r % 2:
        rhs = -rhs
    return _report(o, p, lhs, rhs)


def _check_commutrels1(o, p):
    alpha, beta = p["alpha"], p["beta"]
    s1, s2 = p.get("sign1", "+"), p.get("sign2", "-")
    a, b, k, l = tuple(p["a"]), tuple(p["b"]), p["k"], p["l"]
    if alpha == beta and s1 != s2:
        raise ValueError("opposite powers along one root form the rank-one case")
    g1 = raise_dp(alpha, a, k) if s1 == "+" else lower_dp(alpha, a, k)
    g2 = raise_dp(beta, b, l) if s2 == "+" else lower_dp(beta, b, l)
    comm = expand_gen(o, g1) * expand_gen(o, g2) - expand_gen(o, g2) * expand_gen(o, g1)
    collected = collect(o, comm)
    bad = {m: c for m, c in collected.items() if monomial_degree(m) >= k + l}
    return {
        "params": dict(p),
        "pass": not bad,
        "lhs": format_hyper(o, collected),
        "rhs": f"(root-vector degree < {k + l})",
        "residual": format_hyper(o, bad),
    }


def _check_commutrels2(o, p):
    alpha, k, l = p["alpha"], p["k"], p["l"]
    unit = o.algebra.unit()
    lhs = expand_gen(o, raise_dp(alpha, unit, l)) * expand_gen(o, lower_dp(alpha, unit, k))
    hvec = o.datum.coroots[alpha]
    rhs = o.zero()
    for m in range(min(k, l) + 1):
        term = o.one()
        if m < k:
            term = term * expand_gen(o, lower_dp(alpha, unit, k - m))
        term = term * _binom_elt(o, hvec, 2 * m - k - l, m)
        if m < l:
            term = term * expand_gen(o, raise_dp(alpha, unit, l - m))
        rhs = rhs + term
    return _report(o, p, lhs, rhs)


def _check_commutrels3(o, p):
    i, alpha, sign = p["i"], p["alpha"], p.get("sign", "+")
    a, k, l = tuple(p["a"]), p["k"], p["l"]
    g = raise_dp(alpha, a, k) if sign == "+" else lower_dp(alpha, a, k)
    dp = expand_gen(o, g)
    pai = o.datum.root_pairing(o.datum.pos_roots[alpha], i)
    shift = k * pai if sign == "+" else -k * pai
    lhs = _binom_elt(o, _unit_hvec(o, i), 0, l) * dp
    rhs = dp * _binom_elt(o, _unit_hvec(o, i), shift, l)
    return _report(o, p, lhs, rhs)


def _check_commutrels4(o, p):
    alpha, sign, a, k, l = p["alpha"], p.get("sign", "-"), tuple(p["a"]), p["k"], p["l"]
    mk = raise_dp if sign == "+" else lower_dp
    lhs = expand_gen(o, mk(alpha, a, k)) * expand_gen(o, mk(alpha, a, l))
    rhs = math.comb(k + l, k) * expand_gen(o, mk(alpha, a, k + l))
    return _report(o, p, lhs, rhs)


def _check_commutrels5(o, p):
    alpha, a, b = p["alpha"], tuple(p["a"]), tuple(p["b"])
    r, k = p["r"], p["k"]
    A = o.algebra
    lhs = lambda_poly_root(o, alpha, a, r) * expand_gen(o, lower_dp(alpha, b, k))
    series = [(j + 1) * o.x_minus(alpha, A.mul(A.pow(a, j), b)) for j in range(r + 1)]
    rhs = o.zero()
    for s in range(r + 1):
        rhs = rhs + _series_dp_coeff(o, series, k, r - s) * lambda_poly_root(o, alpha, a, s)
    return _report(o, p, lhs, rhs)


def _check_a_k_reduction(o, p):
    i, a, k, r = p["i"], tuple(p["a"]), p["k"], p["r"]
    red = lambda_power_reduction(o, i, a, k, r)
    lhs = lambda_poly(o, i, {o.algebra.pow(a, k): 1}, r)
    rhs = o.zero()
    for parts, c in red.items():
        term = o.one()
        for s in parts:
            term = term * lambda_poly(o, i, {a: 1}, s)
        rhs = rhs + c * term
    rep = _report(o, p, lhs, rhs)
    rep["reduction"] = {",".join(map(str, parts)): c for parts, c in sorted(red.items())}
    return rep


def random_gen_word(o, rng, max_k=3, max_deg=2, max_len=3):
    """A random short product of gensyms within the given size window."""
    A, d = o.algebra, o.datum
    mons = A.monomials_up_to_deg(max_deg)
    nonunit = [b for b in mons if b != A.unit()]
    gens = []
    for _ in range(rng.randint(1, max_len)):
        kind = rng.choice((F_DP, H_BINOM, L_GEN, E_DP) if nonunit else (F_DP, H_BINOM, E_DP))
        k = rng.randint(1, max_k)
        if kind == H_BINOM:
            gens.append(cartan_binom(rng.randrange(d.rank), k, A.unit()))
        elif kind == L_GEN:
            gens.append(lambda_gen(rng.randrange(d.rank), rng.choice(nonunit), k, A.unit()))
        else:
            g = (kind, rng.randrange(len(d.pos_roots)), rng.choice(mons), k)
            gens.append(g)
    return tuple(gens)


def straighten_roundtrip_failure(o, gens):
    """None when collect(expand(gens)) re-expands to the envelope value, else a message."""
    direct = expand_word(o, gens)
    try:
        h = straighten(o, gens)
    except NotInZFormError as err:
        return f"non-integral collection: {err}"
    back = o.zero()
    for m, c in h.items():
        back = back + c * expand_monomial(o, m)
    if back != direct:
        return "re-expansion differs from the envelope normal form"
    return None


def _check_gAforms_integrality(o, p):
    count = p.get("count", 50)
    rng = random.Random(p.get("seed", 0))
    failure = ""
    for _ in range(count):
        gens = random_gen_word(o, rng, p.get("max_k", 3), p.get("max_deg", 2), p.get("max_len", 3))
        failure = straighten_roundtrip_failure(o, gens) or ""
        if failure:
            failure = f"{failure} at {' '.join(format_gensym(o, g) for g in gens)}"
            break
    return {
        "params": dict(p),
        "pass": not failure,
        "lhs": f"{count} random generator products",
        "rhs": "integer coefficients and exact round-trip",
        "residual": failure,
    }


_IDENTITIES = {
    "basicrel": _check_basicrel,
    "commutrels1": _check_commutrels1,
    "commutrels2": _check_commutrels2,
    "commutrels3": _check_commutrels3,
    "commutrels4": _check_commutrels4,
    "commutrels5": _check_commutrels5,
    "a_k_reduction": _check_a_k_reduction,
    "gAforms_integrality": _check_gAforms_integrality,
}

IDENTITY_IDS = tuple(sorted(_IDENTITIES))


def verify_identity(o, which, params):
    """Build both sides of a named straightening identity; report the residual."""
    fn = _IDENTITIES.get(which)
    if fn is None:
        raise ValueError(f"unknown identity id {which!r}; known: {', '.join(IDENTITY_IDS)}")
    rep = fn(o, params)
    rep["id"] = which
    return rep
