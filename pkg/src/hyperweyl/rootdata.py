"""Root systems of the finite simple types: roots, coroots, weights, Weyl orbits.

Conventions.  The Cartan matrix is stored as a[i][j] = <alpha_j, alpha_i^vee>,
i.e. the value of the simple root alpha_j on the simple coroot h_i.  Weights
are tuples of integers in fundamental-weight coordinates (mu[i] = mu(h_i));
roots are tuples of integers in simple-root coordinates.  Everything is exact.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce


def _cartan_matrix(series, rank):
    n = rank
    if n < 1:
        raise ValueError("rank must be >= 1")
    lower = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}
    if series not in lower:
        raise ValueError(f"unknown series {series!r}")
    if series in ("E", "F", "G"):
        allowed = {"E": (6, 7, 8), "F": (4,), "G": (2,)}[series]
        if n not in allowed:
            raise ValueError(f"{series}{n} is not a simple type")
    elif n < lower[series]:
        raise ValueError(f"{series}{n} is not a simple type (rank too small)")

    a = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if series in ("A", "B", "C"):
        for i in range(n - 1):
            link(i, i + 1)
        if series == "B" and n >= 2:
            link(n - 2, n - 1, -1, -2)  # alpha_n short
        if series == "C" and n >= 2:
            link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif series == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif series == "E":
        for i, j in ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7))[: n - 2]:
            link(i, j)
        link(1, 3)
    elif series == "F":
        link(0, 1)
        link(1, 2, -1, -2)  # alpha_3, alpha_4 short
        link(2, 3)
    elif series == "G":
        link(0, 1, -3, -1)  # alpha_1 short
    return tuple(tuple(row) for row in a)


def _weyl_order(series, rank):
    if series == "A":
        return math.factorial(rank + 1)
    if series in ("B", "C"):
        return 2 ** rank * math.factorial(rank)
    if series == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if series == "G":
        return 12
    if series == "F":
        return 1152
    return {6: 51840, 7: 2903040, 8: 696729600}[rank]


class RootDatum:
    """Positive roots, coroots and weight operations of one simple type."""

    def __init__(self, series, rank):
        self.series = series
        self.rank = rank
        self.cartan = _cartan_matrix(series, rank)
        self.pos_roots = self._generate_positive_roots()
        self.root_index = {r: i for i, r in enumerate(self.pos_roots)}
        self._symmetrizer = self._compute_symmetrizer()
        self.coroots = tuple(self._coroot(r) for r in self.pos_roots)
        self.weyl_order = _weyl_order(series, rank)

    def __repr__(self):
        return f"RootDatum({self.series}{self.rank})"

    def type_string(self):
        return f"{self.series}{self.rank}"

    # -- construction ------------------------------------------------------

    def root_pairing(self, beta, i):
        """beta(h_i) for beta in root coordinates."""
        return sum(self.cartan[i][j] * beta[j] for j in range(self.rank))

    def _generate_positive_roots(self):
        simple = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(self.rank):
                    refl = list(beta)
                    refl[i] -= self.root_pairing(beta, i)
                    refl = tuple(refl)
                    if refl not in seen:
                        seen.add(refl)
                        nxt.append(refl)
            frontier = nxt
        pos = [r for r in seen if all(c >= 0 for c in r)]
        pos.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
        return tuple(pos)

    def _compute_symmetrizer(self):
        # minimal positive integers d with d_i a_ij = d_j a_ji
        n = self.rank
        d = [None] * n
        d[0] = Fraction(1)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                for j in range(n):
                    if self.cartan[i][j] and d[i] is not None and d[j] is None:
                        d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                        changed = True
        assert all(x is not None for x in d), "Dynkin diagram must be connected"
        scale = reduce(lambda a, b: a * b.denominator // math.gcd(a, b.denominator), d, 1)
        d = [int(x * scale) for x in d]
        g = reduce(math.gcd, d)
        return tuple(x // g for x in d)

    def _coroot(self, beta):
        # h_beta = sum c_i h_i with c_i = k_i d_i / d_beta, d_beta = (beta,beta)/2
        d = self._symmetrizer
        n = self.rank
        norm = Fraction(0)
        for i in range(n):
            for j in range(n):
                norm += beta[i] * beta[j] * d[i] * self.cartan[i][j]
        d_beta = norm / 2
        coeff = tuple(Fraction(beta[i] * d[i]) / d_beta for i in range(n))
        assert all(c.denominator == 1 for c in coeff)
        return tuple(int(c) for c in coeff)

    # -- weights -----------------------------------------------------------

    def validate_weight(self, mu):
        if len(mu) != self.rank or not all(isinstance(c, int) for c in mu):
            raise ValueError(f"{mu!r} is not an integral weight of {self.type_string()}")
        return tuple(mu)

    def is_dominant(self, mu):
        return all(c >= 0 for c in mu)

    def pairing(self, mu, beta):
        """mu(h_beta) for a weight mu and a positive root beta (coords or index)."""
        idx = beta if isinstance(beta, int) else self.root_index[tuple(beta)]
        c = self.coroots[idx]
        return sum(c[i] * mu[i] for i in range(self.rank))

    def simple_reflection(self, i, mu):
        """s_i(mu) = mu - mu(h_i) alpha_i in fundamental-weight coordinates."""
        return tuple(mu[j] - mu[i] * self.cartan[j][i] for j in range(self.rank))

    def weyl_orbit(self, mu):
        """The full Weyl orbit of mu, sorted descending."""
        mu = self.validate_weight(mu)
        seen = {mu}
        frontier = [mu]
        while frontier:
            nxt = []
            for nu in frontier:
                for i in range(self.rank):
                    r = self.simple_reflection(i, nu)
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        return sorted(seen, reverse=True)

    def dominant_representative(self, mu):
        mu = self.validate_weight(mu)
        while True:
            for i in range(self.rank):
                if mu[i] < 0:
                    mu = self.simple_reflection(i, mu)
                    break
            else:
                return mu

    def weight_to_root_coords(self, mu):
        """Solve mu = sum x_j alpha_j exactly; returns Fractions."""
        n = self.rank
        aug = [[Fraction(self.cartan[i][j]) for j in range(n)] + [Fraction(mu[i])]
               for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [inv * v for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
        return tuple(aug[i][n] for i in range(n))

    def dominance_leq(self, mu, lam):
        """True iff lam - mu is a nonnegative integer combination of simple roots."""
        diff = tuple(l - m for l, m in zip(lam, mu))
        coords = self.weight_to_root_coords(diff)
        return all(c.denominator == 1 and c >= 0 for c in coords)

    def lambda_minus_w0_lambda(self, lam):
        """lam - w0(lam) in simple-root coordinates (integer tuple)."""
        lam = self.validate_weight(lam)
        if not self.is_dominant(lam):
            raise ValueError(f"{lam!r} is not dominant")
        neg_w0 = self.dominant_representative(tuple(-c for c in lam))
        total = tuple(a + b for a, b in zip(lam, neg_w0))
        coords = self.weight_to_root_coords(total)
        assert all(c.denominator == 1 and c >= 0 for c in coords)
        return tuple(int(c) for c in coords)

    def weyl_dimension(self, lam):
        """dim of the irreducible highest-weight module in characteristic 0."""
        lam = self.validate_weight(lam)
        if not self.is_dominant(lam):
            raise ValueError(f"{lam!r} is not dominant")
        num, den = 1, 1
        rho = (1,) * self.rank
        for idx in range(len(self.pos_roots)):
            num *= self.pairing(tuple(l + 1 for l in lam), idx)
            den *= self.pairing(rho, idx)
        q = Fraction(num, den)
        assert q.denominator == 1
        return int(q)

    # -- root formatting (used by the divided-power monomial syntax) --------

    def format_root(self, idx):
        coords = self.pos_roots[idx]
        parts = []
        for i, c in enumerate(coords):
            if c == 0:
                continue
            parts.append(f"a{i + 1}" if c == 1 else f"{c}a{i + 1}")
        return "+".join(parts)

    def parse_root(self, s):
        coords = [0] * self.rank
        for part in s.split("+"):
            part = part.strip()
            m = re.fullmatch(r"(\d*)a(\d+)", part)
            if not m:
                raise ValueError(f"bad root syntax {s!r}")
            c = int(m.group(1)) if m.group(1) else 1
            i = int(m.group(2)) - 1
            if not 0 <= i < self.rank:
                raise ValueError(f"root index out of range in {s!r}")
            coords[i] += c
        coords = tuple(coords)
        if coords not in self.root_index:
            raise ValueError(f"{s!r} is not a positive root of {self.type_string()}")
        return self.root_index[coords]


_DATUM_CACHE = {}


def build_root_datum(series, rank):
    """Root datum for a simple type, e.g. build_root_datum("A", 2); cached."""
    key = (series, rank)
    if key not in _DATUM_CACHE:
        _DATUM_CACHE[key] = RootDatum(series, rank)
    return _DATUM_CACHE[key]


def parse_type_string(s):
    m = re.fullmatch(r"([A-G])(\d+)", s.strip())
    if not m:
        raise ValueError(f"bad type string {s!r}")
    return m.group(1), int(m.group(2))
