"""Rational PBW oracle for the universal envelope of g tensor a coefficient algebra.

Basis vectors of g are Chevalley generators realized as matrix units (A series
only); a Lie word is a tuple of letters

    letter = (block, idx, deg, exps)

with block 0 = lowering x^-_alpha, 1 = Cartan h_i, 2 = raising x^+_alpha,
idx the positive-root (or node) index, and exps the coefficient-algebra basis
element tensored on.  Tuple comparison of letters is exactly the PBW order:
lowering, then Cartan, then raising, each block by (index, graded basis order).

Normal form is the naive rewriting x y -> y x + [x, y] applied until every
word is weakly increasing; all structure constants are integers, so words
carry integer coefficients and rationals enter only through divided powers.
"""
from __future__ import annotations

from fractions import Fraction

LOWER, CARTAN, RAISE = 0, 1, 2


def _mat_mul(a, b):
    out = {}
    for (i, k), va in a.items():
        for (k2, j), vb in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _mat_commutator(a, b):
    out = dict(_mat_mul(a, b))
    for k, v in _mat_mul(b, a).items():
        out[k] = out.get(k, 0) - v
        if not out[k]:
            del out[k]
    return out


class ChevalleyTable:
    """Integer structure constants of the Chevalley basis, A series.

    Realized through (rank+1) x (rank+1) matrix units: x^+ of the root
    alpha_i + ... + alpha_{j-1} is E_{ij}, its negative is E_{ji}, and
    h_i = E_{ii} - E_{i+1,i+1}.  This fixes the sign convention
    [x^+_{a1}, x^+_{a2}] = +x^+_{a1+a2}.
    """

    def __init__(self, datum):
        if datum.series != "A":
            raise ValueError(f"structure constants implemented for type A only, got {datum.type_string()}")
        self.datum = datum
        n = datum.rank
        self._gmat = {}
        spans = {}
        for idx, beta in enumerate(datum.pos_roots):
            i = beta.index(1)
            j = i + sum(beta)
            spans[idx] = (i, j)
            self._gmat[(RAISE, idx)] = {(i, j): 1}
            self._gmat[(LOWER, idx)] = {(j, i): 1}
        for i in range(n):
            self._gmat[(CARTAN, i)] = {(i, i): 1, (i + 1, i + 1): -1}
        self._cache = {}

    def _decompose(self, mat):
        """Write an sl-matrix in the Chevalley basis; returns ((gsym, int), ...)."""
        n = self.datum.rank
        out = []
        diag = [0] * (n + 1)
        for (i, j), v in mat.items():
            if i == j:
                diag[i] = v
            else:
                coords = tuple(1 if min(i, j) <= k < max(i, j) else 0 for k in range(n))
                idx = self.datum.root_index[coords]
                out.append(((RAISE if i < j else LOWER, idx), v))
        assert sum(diag) == 0
        acc = 0
        for k in range(n):
            acc += diag[k]
            if acc:
                out.append((((CARTAN, k)), acc))
        return tuple(out)

    def bracket(self, g1, g2):
        """[g1, g2] as an integer combination of Chevalley symbols."""
        key = (g1, g2)
        if key not in self._cache:
            self._cache[key] = self._decompose(_mat_commutator(self._gmat[g1], self._gmat[g2]))
        return self._cache[key]


class OracleElt:
    """A rational linear combination of normal-ordered Lie words."""

    __slots__ = ("oracle", "terms")

    def __init__(self, oracle, terms):
        self.oracle = oracle
        self.terms = {w: c for w, c in terms.items() if c}

    def _check(self, other):
        if self.oracle is not other.oracle:
            raise ValueError("elements of different envelopes")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return OracleElt(self.oracle, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, OracleElt):
            self._check(other)
            return self.oracle.mul(self, other)
        return OracleElt(self.oracle, {w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return isinstance(other, OracleElt) and self.oracle is other.oracle and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"OracleElt({self.oracle.format_elt(self)})"


class Oracle:
    """Envelope of g tensor A with exact normal form; g of type A, A a monomial algebra."""

    def __init__(self, datum, algebra):
        self.datum = datum
        self.algebra = algebra
        self.table = ChevalleyTable(datum)
        self._insert_cache = {}
        self._bracket_cache = {}

    # -- letters and constructors -------------------------------------------

    def letter(self, block, idx, exps):
        self.algebra.validate(exps)
        return (block, idx, self.algebra.deg(exps), exps)

    def zero(self):
        return OracleElt(self, {})

    def one(self):
        return OracleElt(self, {(): Fraction(1)})

    def of_word(self, word, coeff=1):
        """The element coeff * (normal form of the product of the letters in word)."""
        return self.nf_word(word) * Fraction(coeff)

    def x_plus(self, root_idx, exps):
        return OracleElt(self, {(self.letter(RAISE, root_idx, exps),): Fraction(1)})

    def x_minus(self, root_idx, exps):
        return OracleElt(self, {(self.letter(LOWER, root_idx, exps),): Fraction(1)})

    def h(self, node, exps):
        return OracleElt(self, {(self.letter(CARTAN, node, exps),): Fraction(1)})

    # -- Lie bracket ----------------------------------------------------------

    def bracket_letters(self, l1, l2):
        """[l1, l2] as a tuple of (letter, int)."""
        key = (l1, l2)
        got = self._bracket_cache.get(key)
        if got is None:
            exps = self.algebra.mul(l1[3], l2[3])
            got = tuple((self.letter(g[0], g[1], exps), c)
                        for g, c in self.table.bracket((l1[0], l1[1]), (l2[0], l2[1])))
            self._bracket_cache[key] = got
        return got

    def lie_bracket(self, e1, e2):
        """Bracket of two degree-one elements (single-letter combinations)."""
        out = {}
        for w1, c1 in e1.terms.items():
            for w2, c2 in e2.terms.items():
                if len(w1) != 1 or len(w2) != 1:
                    raise ValueError("lie_bracket takes Lie elements, not envelope products")
                for letter, cz in self.bracket_letters(w1[0], w2[0]):
                    key = (letter,)
                    s = out.get(key, 0) + c1 * c2 * cz
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return OracleElt(self, out)

    # -- normal form ----------------------------------------------------------

    def _insert(self, x, word):
        """Normal form of x * word (word already normal); dict word -> int."""
        if not word or x <= word[0]:
            return {(x,) + word: 1}
        key = (x, word)
        got = self._insert_cache.get(key)
        if got is not None:
            return got
        y, rest = word[0], word[1:]
        out = {}
        for w, c in self._insert(x, rest).items():
            for w2, c2 in self._insert(y, w).items():
                s = out.get(w2, 0) + c * c2
                if s:
                    out[w2] = s
                else:
                    del out[w2]
        for z, cz in self.bracket_letters(x, y):
            for w, c in self._insert(z, rest).items():
                s = out.get(w, 0) + cz * c
                if s:
                    out[w] = s
                else:
                    del out[w]
        self._insert_cache[key] = out
        return out

    def nf_word(self, word):
        """Normal form of an arbitrary word as an OracleElt."""
        cur = {(): 1}
        for x in reversed(tuple(word)):
            nxt = {}
            for w, c in cur.items():
                for w2, c2 in self._insert(x, w).items():
                    s = nxt.get(w2, 0) + c * c2
                    if s:
                        nxt[w2] = s
                    else:
                        del nxt[w2]
            cur = nxt
        return OracleElt(self, {w: Fraction(c) for w, c in cur.items()})

    def mul(self, e1, e2):
        out = {}
        for w1, c1 in e1.terms.items():
            cur = {w1: c1}
            for w2, c2 in e2.terms.items():
                # fold the letters of w1 into w2 right to left
                part = {w2: 1}
                for x in reversed(w1):
                    nxt = {}
                    for w, c in part.items():
                        for wz, cz in self._insert(x, w).items():
                            s = nxt.get(wz, 0) + c * cz
                            if s:
                                nxt[wz] = s
                            else:
                                del nxt[wz]
                    part = nxt
                for w, c in part.items():
                    s = out.get(w, 0) + c1 * c2 * c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return OracleElt(self, out)

    # -- gradings and formatting ----------------------------------------------

    def word_weight_drop(self, word):
        """Weight drop of a word in simple-root coordinates (lowering counts +)."""
        drop = [0] * self.datum.rank
        for block, idx, _deg, _exps in word:
            if block == CARTAN:
                continue
            sign = 1 if block == LOWER else -1
            for i, c in enumerate(self.datum.pos_roots[idx]):
                drop[i] += sign * c
        return tuple(drop)

    def word_adeg(self, word):
        return sum(l[2] for l in word)

    def format_letter(self, l):
        block, idx, _deg, exps = l
        b = self.algebra.format(exps)
        if block == CARTAN:
            return f"h{idx + 1}({b})"
        name = "f" if block == LOWER else "e"
        return f"{name}({self.datum.format_root(idx)},{b})"

    def format_elt(self, e):
        if not e.terms:
            return "0"
        bits = []
        for w in sorted(e.terms, key=lambda w: (len(w), w)):
            c = e.terms[w]
            body = "*".join(self.format_letter(l) for l in w) if w else "1"
            bits.append(f"{c}*{body}" if w else f"{c}")
        return " + ".join(bits)


_ORACLE_CACHE = {}


def get_oracle(datum, algebra):
    """Shared Oracle instance per (type, coefficient algebra): memo caches persist."""
    key = (datum.series, datum.rank, algebra.kind, algebra.nvars)
    if key not in _ORACLE_CACHE:
        _ORACLE_CACHE[key] = Oracle(datum, algebra)
    return _ORACLE_CACHE[key]
