"""Exact rings behind the characteristic polynomial.

* :class:`LaurentPoly` -- integer Laurent polynomials in ``z = e^{i theta}``.
  Matrix entries of ``H_theta`` are ``1``, ``z`` and ``z^-1``, so every
  characteristic-polynomial coefficient lives here exactly.
* :class:`CosPoly` -- integer polynomials in ``c = cos theta``; a
  self-conjugate Laurent polynomial converts through ``z^k + z^-k = 2 T_k(c)``.
* :class:`CyclotomicElement` -- residues in ``Z[x] / Phi_n(x)``, i.e. exact
  values at a primitive ``n``-th root of unity.

All integers are Python ints, so nothing overflows.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from mixedspec.errors import ContractError, InputError

logger = logging.getLogger(__name__)


class LaurentPoly:
    """Integer Laurent polynomial ``sum c_e z^e`` with sparse storage.

    Zero coefficients are never stored, so the zero polynomial has no terms.
    Instances are treated as immutable values.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | int = 0):
        if isinstance(coeffs, int):
            self._c = {0: coeffs} if coeffs else {}
        else:
            self._c = {int(e): int(c) for e, c in coeffs.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, d: dict[int, int]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj._c = d
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def cos_pair(cls, k: int, coeff: int = 1) -> LaurentPoly:
        """``coeff * (z^k + z^-k)``, i.e. ``2 coeff cos(k theta)``."""
        if k == 0:
            return cls(2 * coeff)
        return cls({k: coeff, -k: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def terms(self) -> list[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs sorted by exponent."""
        return sorted(self._c.items())

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    @property
    def constant(self) -> int:
        return self._c.get(0, 0)

    def max_abs_exponent(self) -> int:
        return max((abs(e) for e in self._c), default=0)

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self._c.values())

    # ring operations -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._c:
            return self
        if not self._c:
            return o
        d = dict(self._c)
        for e, c in o._c.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return LaurentPoly._raw({})
        d: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in o._c.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._c) != 1:
                raise ContractError("only monomials can be raised to negative powers")
            (e, c), = self._c.items()
            if abs(c) != 1:
                raise ContractError("monomial with non-unit coefficient is not invertible")
            return LaurentPoly({e * k: c ** (-k)})
        result = LaurentPoly(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # conjugation and evaluation --------------------------------------------

    def conjugate(self) -> LaurentPoly:
        """Complex conjugation on the unit circle: ``z -> z^-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    def is_real(self) -> bool:
        return all(self._c.get(-e, 0) == c for e, c in self._c.items())

    def __call__(self, z: complex) -> complex:
        return sum(c * z**e for e, c in self._c.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self._c.items()))})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                mono = str(mag)
            else:
                power = "z" if e == 1 else f"z^{e}"
                mono = power if mag == 1 else f"{mag}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data: Iterable[Sequence[int]]) -> LaurentPoly:
        d: dict[int, int] = {}
        for e, c in data:
            d[int(e)] = d.get(int(e), 0) + int(c)
        return cls(d)


Z = LaurentPoly.monomial(1)
Z_INV = LaurentPoly.monomial(-1)
ONE = LaurentPoly(1)
ZERO = LaurentPoly(0)


def laurent_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def laurent_conjugate(a: LaurentPoly) -> LaurentPoly:
    return a.conjugate()


def is_real(a: LaurentPoly) -> bool:
    return a.is_real()


# --------------------------------------------------------------------------
# polynomials in cos(theta)
# --------------------------------------------------------------------------


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class CosPoly:
    """Dense integer polynomial in ``c = cos theta``, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim(int(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, c: float):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * c + a
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CosPoly([other])
        if not isinstance(other, CosPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: CosPoly) -> CosPoly:
        if isinstance(other, int):
            other = CosPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return CosPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> CosPoly:
        return CosPoly(-c for c in self.coeffs)

    def __sub__(self, other: CosPoly) -> CosPoly:
        return self + (-other)

    def __mul__(self, other) -> CosPoly:
        if isinstance(other, int):
            return CosPoly(other * c for c in self.coeffs)
        out = [0] * max(0, len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return CosPoly(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"CosPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                mono = str(mag)
            else:
                power = "c" if d == 1 else f"c^{d}"
                mono = power if mag == 1 else f"{mag}*{power}"
            parts.append(("-" if c < 0 else "+", mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def to_json(self) -> list[int]:
        return list(self.coeffs)


@lru_cache(maxsize=None)
def chebyshev_t(k: int) -> CosPoly:
    """First-kind Chebyshev polynomial: ``T_k(cos t) = cos(k t)``."""
    if k < 0:
        return chebyshev_t(-k)
    if k == 0:
        return CosPoly([1])
    if k == 1:
        return CosPoly([0, 1])
    two_c = CosPoly([0, 2])
    return two_c * chebyshev_t(k - 1) - chebyshev_t(k - 2)


def to_cos_poly(a: LaurentPoly) -> CosPoly:
    """Rewrite a self-conjugate Laurent polynomial as a polynomial in cos(theta)."""
    if not a.is_real():
        raise ContractError(f"{a} is not self-conjugate; it has no cos-polynomial form")
    result = CosPoly([a.constant])
    for e, c in a.terms():
        if e > 0:
            result = result + chebyshev_t(e) * (2 * c)
    return result


def eval_numeric(a: LaurentPoly, theta: float) -> float:
    """Value of a self-conjugate Laurent polynomial at ``z = e^{i theta}``."""
    if not a.is_real():
        raise ContractError(f"{a} is not self-conjugate; its value is not real")
    return float(sum(c * math.cos(e * theta) for e, c in a.terms()))


def cos_sum_form(a: LaurentPoly) -> tuple[int, dict[int, int]]:
    """Split a self-conjugate ``a`` as ``c0 + sum_k w_k cos(k theta)``.

    Returns ``(c0, {k: w_k})`` with ``w_k = 2 * coeff(z^k)``.
    """
    if not a.is_real():
        raise ContractError(f"{a} is not self-conjugate")
    return a.constant, {e: 2 * c for e, c in a.terms() if e > 0}


def format_cos_sum(a: LaurentPoly, var: str = "θ") -> str:
    """Human form such as ``-2(1 + cos θ + cos 2θ + cos 3θ)``.

    The gcd of the cosine weights is factored out and absorbs the constant
    term when it divides it.
    """
    c0, weights = cos_sum_form(a)
    ks = sorted(weights)
    if not ks:
        return str(c0)

    def cos_term(k: int) -> str:
        return f"cos {var}" if k == 1 else f"cos {k}{var}"

    g = 0
    for k in ks:
        g = math.gcd(g, weights[k])
    if weights[ks[0]] < 0:
        g = -g
    items = []
    outer = c0
    if c0 % g == 0:
        if c0:
            items.append((c0 // g, "1"))
        outer = 0
    items.extend((weights[k] // g, cos_term(k)) for k in ks)
    inner = _signed_join(items)
    if g == 1:
        return f"{outer} + {inner}" if outer else inner
    scale = "" if abs(g) == 1 else str(abs(g))
    if outer:
        return f"{outer} {'-' if g < 0 else '+'} {scale}({inner})"
    return f"{'-' if g < 0 else ''}{scale}({inner})"


def _signed_join(items: list[tuple[int, str]]) -> str:
    out = ""
    for coef, body in items:
        mag = abs(coef)
        if body == "1":
            txt = str(mag)
        else:
            txt = body if mag == 1 else f"{mag} {body}"
        if not out:
            out = ("-" if coef < 0 else "") + txt
        else:
            out += f" {'-' if coef < 0 else '+'} {txt}"
    return out


# --------------------------------------------------------------------------
# cyclotomic residues
# --------------------------------------------------------------------------


def totient(n: int) -> int:
    if n < 1:
        raise InputError(f"totient needs n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_monic(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder for a monic integer divisor (ascending coefficients)."""
    rem = list(num)
    dd = len(den) - 1
    if len(rem) - 1 < dd:
        return [0], rem
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * den[j]
    return quot, rem[:dd]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n`` (ascending), from ``x^n - 1 = prod_{d | n} Phi_d``."""
    if n < 1:
        raise InputError(f"cyclotomic polynomial index must be >= 1, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_monic(num, cyclotomic_poly(d))
            assert not any(rem)
    return tuple(num)


@lru_cache(maxsize=None)
def _power_residues(n: int) -> tuple[tuple[int, ...], ...]:
    """Residue of ``x^k mod Phi_n`` for ``0 <= k < n`` (each of length phi(n))."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    out = []
    for k in range(n):
        mono = [0] * k + [1]
        _, rem = _poly_divmod_monic(mono, phi)
        rem = rem + [0] * (deg - len(rem))
        out.append(tuple(rem))
    return tuple(out)


def power_residue_l1_bound(n: int) -> int:
    """Largest coefficient 1-norm among the residues of ``x^k``, ``0 <= k < n``."""
    return max(sum(abs(c) for c in r) for r in _power_residues(n))


class CyclotomicElement:
    """Element of ``Z[x] / Phi_n(x)`` in the power basis ``1, x, .., x^{phi(n)-1}``.

    Equivalently an element of ``Z[zeta_n]``; it is zero exactly when the
    represented algebraic integer vanishes.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[int]):
        if n < 1:
            raise InputError(f"modulus index must be >= 1, got {n}")
        deg = totient(n)
        cs = [int(c) for c in coeffs]
        if len(cs) > deg:
            _, rem = _poly_divmod_monic(cs, cyclotomic_poly(n))
            cs = rem
        cs = cs + [0] * (deg - len(cs))
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, n: int) -> CyclotomicElement:
        return cls(n, ())

    @classmethod
    def one(cls, n: int) -> CyclotomicElement:
        return cls(n, (1,))

    @classmethod
    def root_power(cls, n: int, k: int) -> CyclotomicElement:
        """``zeta_n^k`` for any integer ``k``."""
        obj = cls.__new__(cls)
        obj.n = n
        obj.coeffs = _power_residues(n)[k % n]
        return obj

    @classmethod
    def from_exponent_map(cls, n: int, exps: Mapping[int, int]) -> CyclotomicElement:
        """``sum c * zeta_n^e`` over the items of ``exps``."""
        res = _power_residues(n)
        acc = [0] * totient(n)
        for e, c in exps.items():
            if c:
                for i, r in enumerate(res[e % n]):
                    if r:
                        acc[i] += c * r
        obj = cls.__new__(cls)
        obj.n = n
        obj.coeffs = tuple(acc)
        return obj

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other) -> CyclotomicElement | None:
        if isinstance(other, int):
            return CyclotomicElement(self.n, (other,))
        if isinstance(other, CyclotomicElement):
            if other.n != self.n:
                raise ContractError(f"mixing moduli {self.n} and {other.n}")
            return other
        return None

    def _new(self, coeffs) -> CyclotomicElement:
        obj = CyclotomicElement.__new__(CyclotomicElement)
        obj.n = self.n
        obj.coeffs = tuple(coeffs)
        return obj

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self._new(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self) -> CyclotomicElement:
        return self._new(-a for a in self.coeffs)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self._new(a - b for a, b in zip(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        _, rem = _poly_divmod_monic(prod, cyclotomic_poly(self.n))
        return CyclotomicElement(self.n, rem)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def to_complex(self, k: int = 1) -> complex:
        """Numeric value with ``x = exp(2 pi i k / n)``."""
        w = complex(math.cos(2 * math.pi * k / self.n), math.sin(2 * math.pi * k / self.n))
        return sum(c * w**i for i, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicElement(n={self.n}, coeffs={list(self.coeffs)})"

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": list(self.coeffs)}


def eval_at_root_of_unity(a: LaurentPoly, l: int, n: int) -> CyclotomicElement:
    """Exact value of ``a`` at ``z = zeta_n^l`` where ``zeta_n = e^{2 pi i / n}``.

    Exponents are mapped through ``e * l mod n`` before the reduction modulo
    ``Phi_n``, so no large intermediate degrees appear.
    """
    if n < 1:
        raise InputError(f"root-of-unity order must be >= 1, got {n}")
    folded: dict[int, int] = {}
    for e, c in a.terms():
        k = (e * l) % n
        folded[k] = folded.get(k, 0) + c
    return CyclotomicElement.from_exponent_map(n, folded)


# --------------------------------------------------------------------------
# rational angles
# --------------------------------------------------------------------------


def normalize_angle(l: int, m: int) -> tuple[int, int]:
    """Normalize ``theta = l pi / m`` to ``gcd(l, m) = 1`` and ``0 < l/m <= 1``.

    ``theta`` and ``2 pi - theta`` give conjugate matrices with equal spectra,
    so angles in ``(pi, 2 pi)`` fold back.  A multiple of ``2 pi`` is rejected.
    Changing the input logs a warning.
    """
    if m == 0:
        raise InputError("angle denominator must be nonzero")
    l0, m0 = l, m
    if m < 0:
        l, m = -l, -m
    g = math.gcd(l, m)
    if g:
        l, m = l // g, m // g
    l %= 2 * m
    if l == 0:
        raise InputError(f"angle {l0}pi/{m0} is a multiple of 2pi; H_theta is then the plain adjacency matrix")
    if l > m:
        l = 2 * m - l
    if (l, m) != (l0, m0):
        logger.warning("angle %d*pi/%d normalized to %d*pi/%d", l0, m0, l, m)
    return l, m
