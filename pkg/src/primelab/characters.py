"""Dirichlet characters mod q as exponent vectors on fixed group generators.

The unit group (Z/q)* is decomposed through the CRT: one cyclic component per
odd prime power (smallest primitive root as generator), and for the 2-part
either nothing (2^0, 2^1), the order-2 group generated by -1 (2^2), or the
pair {+-1} x <5> (2^nu, nu >= 3). A character is the vector of its exponents
on those generators, indexed in little-endian mixed radix so that index 0 is
always the principal character.

Values are exact roots of unity: chi(n) = exp(2 pi i * m / L) with integer
phase numerator m and L the group exponent. Phase numerators are what every
structural predicate (parity, conductor, orthogonality bookkeeping) works on;
complex floats are materialized only at use sites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import factorize

__all__ = [
    "CharacterGroup",
    "DirichletCharacter",
    "character_group",
    "gauss_sum",
    "orthogonality_residuals",
    "polya_vinogradov_margin",
    "export_character_table",
]

MODULUS_CAP = 10**6


@dataclass(frozen=True)
class _Component:
    modulus: int
    generator: int
    order: int


def _primitive_root_mod_p(p: int) -> int:
    if p == 2:
        return 1
    fac = [f for f, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fac):
            return g
    raise RuntimeError(f"no primitive root found for prime {p}")  # unreachable


def _odd_component(p: int, v: int) -> _Component:
    g = _primitive_root_mod_p(p)
    if v >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    m = p**v
    order = m // p * (p - 1)
    return _Component(m, g % m, order)


class CharacterGroup:
    """The character group mod q; builds discrete-log tables once per modulus."""

    def __init__(self, q: int):
        if not 1 <= q <= MODULUS_CAP:
            raise ValueError(f"modulus must lie in [1, {MODULUS_CAP}]")
        self.modulus = q
        comps: list[_Component] = []
        two_power = 0
        m = q
        while m % 2 == 0:
            m //= 2
            two_power += 1
        if two_power == 2:
            comps.append(_Component(4, 3, 2))
        elif two_power >= 3:
            mod2 = 1 << two_power
            comps.append(_Component(mod2, mod2 - 1, 2))
            comps.append(_Component(mod2, 5, 1 << (two_power - 2)))
        for p, v in factorize(m) if m > 1 else []:
            comps.append(_odd_component(p, v))
        self.components = tuple(comps)
        self.orders = tuple(c.order for c in comps)
        self.exponent = math.lcm(*self.orders) if comps else 1
        self.size = math.prod(self.orders) if comps else 1  # = phi(q)
        self._dlogs = self._build_dlogs()

    def _build_dlogs(self) -> list[np.ndarray]:
        tables: list[np.ndarray] = []
        i = 0
        comps = self.components
        while i < len(comps):
            c = comps[i]
            if c.modulus % 2 == 0 and c.modulus >= 8 and c.generator == c.modulus - 1:
                # joint table for the {+-1} x <5> pair
                m = c.modulus
                sign = np.full(m, -1, dtype=np.int64)
                five = np.full(m, -1, dtype=np.int64)
                half = comps[i + 1].order
                x = 1
                for t in range(half):
                    sign[x] = 0
                    five[x] = t
                    sign[m - x] = 1
                    five[m - x] = t
                    x = x * 5 % m
                tables.append(sign)
                tables.append(five)
                i += 2
                continue
            tbl = np.full(c.modulus, -1, dtype=np.int64)
            x = 1
            for e in range(c.order):
                tbl[x] = e
                x = x * c.generator % c.modulus
            tables.append(tbl)
            i += 1
        return tables

    def __len__(self) -> int:
        return self.size

    def exponents_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise ValueError(f"character index must lie in [0, {self.size})")
        out = []
        for o in self.orders:
            index, e = divmod(index, o)
            out.append(e)
        return tuple(out)

    def index_of(self, exponents) -> int:
        idx = 0
        for e, o in zip(reversed(exponents), reversed(self.orders)):
            idx = idx * o + (e % o)
        return idx

    def character(self, index: int) -> DirichletCharacter:
        return DirichletCharacter(self, self.exponents_of(index))

    def characters(self):
        for index in range(self.size):
            yield self.character(index)

    def phase_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """(phi(q) x q) integer phase numerators and the coprime mask.

        Row i holds the numerators of character i at n = 0..q-1 (mod the
        group exponent L); non-coprime columns are masked False.
        """
        q = self.modulus
        ns = np.arange(q)
        mask = np.gcd(ns, q) == 1
        if not self.components:
            return np.zeros((1, q), dtype=np.int64), mask
        dl = np.stack([tbl[ns % tbl.size] for tbl in self._dlogs])
        weights = np.array([self.exponent // o for o in self.orders], dtype=np.int64)
        exps = np.array([self.exponents_of(i) for i in range(self.size)], dtype=np.int64)
        nums = (exps * weights) @ dl % self.exponent
        return nums, mask

    def value_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        nums, mask = self.phase_matrix()
        vals = np.exp(2j * np.pi * nums / self.exponent)
        vals[:, ~mask] = 0.0
        return vals, mask


@lru_cache(maxsize=64)
def character_group(q: int) -> CharacterGroup:
    return CharacterGroup(q)


class DirichletCharacter:
    def __init__(self, group: CharacterGroup, exponents: tuple[int, ...]):
        if len(exponents) != len(group.orders):
            raise ValueError("exponent vector length does not match the group")
        self.group = group
        self.exponents = tuple(e % o for e, o in zip(exponents, group.orders))
        self.index = group.index_of(self.exponents)
        self._phase: np.ndarray | None = None

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.modulus}, index={self.index})"

    def angle(self, n: int) -> Fraction | None:
        """Exact angle a with chi(n) = exp(2 pi i a), or None when gcd(n, q) > 1."""
        q = self.modulus
        n %= q
        if math.gcd(n, q) != 1 and q > 1:
            return None
        num = 0
        L = self.group.exponent
        for e, o, tbl in zip(self.exponents, self.group.orders, self.group._dlogs):
            num += e * (L // o) * int(tbl[n % tbl.size])
        return Fraction(num % L, L)

    def __call__(self, n: int) -> complex:
        a = self.angle(n)
        if a is None:
            return 0j
        return complex(np.exp(2j * np.pi * (float(a))))

    def phase_numerators(self) -> np.ndarray:
        """Integer phases at n = 0..q-1 (mod group exponent); -1 marks gcd > 1."""
        if self._phase is None:
            q = self.modulus
            ns = np.arange(q)
            L = self.group.exponent
            num = np.zeros(q, dtype=np.int64)
            for e, o, tbl in zip(self.exponents, self.group.orders, self.group._dlogs):
                num += e * (L // o) * tbl[ns % tbl.size]
            num %= L
            num[np.gcd(ns, q) != 1] = -1
            if q == 1:
                num[0] = 0
            self._phase = num
        return self._phase

    def value_table(self) -> np.ndarray:
        """chi(n) for n = 0..q-1 as complex128 (0 on non-coprime classes)."""
        num = self.phase_numerators()
        vals = np.exp(2j * np.pi * np.maximum(num, 0) / self.group.exponent)
        vals[num < 0] = 0.0
        return vals

    @property
    def parity(self) -> int:
        """0 for even (chi(-1) = 1), 1 for odd (chi(-1) = -1)."""
        a = self.angle(self.modulus - 1)
        return 0 if a == 0 or a is None else 1

    def order(self) -> int:
        return math.lcm(
            *(o // math.gcd(e, o) for e, o in zip(self.exponents, self.group.orders))
        ) if self.exponents else 1

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(
            self.group, tuple(-e % o for e, o in zip(self.exponents, self.group.orders))
        )

    def conductor(self) -> int:
        """Smallest f | q through which the character factors (exhaustive)."""
        q = self.modulus
        if q == 1:
            return 1
        num = self.phase_numerators()
        divs = [1]
        for p, e in factorize(q):
            divs = [d * p**k for d in divs for k in range(e + 1)]
        for f in sorted(divs):
            ns = np.arange(1, q + 1, f)
            sel = num[ns % q]
            ok = sel[sel >= 0]
            if ok.size == 0 or not ok.any():
                return f
        return q

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus


def gauss_sum(chi: DirichletCharacter, a: int = 1) -> complex:
    """tau_a(chi) = sum_{n mod q} chi(n) e^(2 pi i a n / q), by direct summation."""
    q = chi.modulus
    vals = chi.value_table()
    roots = np.exp(2j * np.pi * (a % q) * np.arange(q) / q)
    return complex(np.sum(vals * roots))


def orthogonality_residuals(q: int) -> tuple[float, float]:
    """Max deviation of the two orthogonality relations for the full group.

    Row relation: sum_n chi(n) = phi(q) [chi principal].
    Column relation: sum_chi chi(n) conj(chi(a)) = phi(q) [n = a], restricted
    to coprime n, a.
    """
    group = character_group(q)
    V, mask = group.value_matrix()
    phi = group.size
    row = V.sum(axis=1)
    expected_row = np.zeros(phi, dtype=complex)
    expected_row[0] = phi
    row_dev = float(np.abs(row - expected_row).max())
    G = V.conj().T @ V
    idx = np.flatnonzero(mask)
    sub = G[np.ix_(idx, idx)]
    col_dev = float(np.abs(sub - phi * np.eye(idx.size)).max())
    return row_dev, col_dev


def polya_vinogradov_margin(chi: DirichletCharacter) -> tuple[float, float]:
    """(max_x |sum_{n<=x} chi(n)| over x <= q, sqrt(q) log q)."""
    q = chi.modulus
    vals = chi.value_table()
    seq = vals[np.arange(1, q + 1) % q]
    peak = float(np.abs(np.cumsum(seq)).max())
    return peak, math.sqrt(q) * math.log(q)


def export_character_table(q: int, include_values: bool = True) -> dict:
    """JSON-ready table of every character mod q."""
    group = character_group(q)
    chars = []
    for chi in group.characters():
        entry = {
            "index": chi.index,
            "exponents": list(chi.exponents),
            "order": chi.order(),
            "parity": chi.parity,
            "conductor": chi.conductor(),
            "primitive": chi.is_primitive(),
        }
        if include_values:
            vals = chi.value_table()
            entry["values"] = [[round(v.real, 12), round(v.imag, 12)] for v in vals]
        chars.append(entry)
    return {
        "modulus": q,
        "size": group.size,
        "group_exponent": group.exponent,
        "generators": [
            {"modulus": c.modulus, "generator": c.generator, "order": c.order}
            for c in group.components
        ],
        "characters": chars,
    }
