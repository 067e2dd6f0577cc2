"""Exact sparse multivariate polynomials and rational functions over Q.

Coefficients are `fractions.Fraction` throughout; nothing in this module ever
touches floating point.  Polynomials are immutable and hashable so they can be
shared freely between workers and used as dictionary keys (the recurrence
module tracks factored denominators in a Counter keyed by polynomial).
"""
from __future__ import annotations

import hashlib
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


def grlex_key(exps: Exponents):
    """Sort key for graded lexicographic order (ascending)."""
    return (sum(exps), exps)


class MultiPoly:
    """Sparse multivariate polynomial: exponent vectors -> nonzero Fractions."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Fraction]):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = _as_fraction(coeff)
            if coeff != 0:
                clean[exps] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: _as_fraction(c)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): _ONE})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff) -> "MultiPoly":
        return cls(nvars, {tuple(exps): _as_fraction(coeff)})

    # -- predicates / accessors -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, _ZERO)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), _ZERO)

    def total_degree(self) -> int:
        """Max total degree over terms; 0 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, var: int) -> int:
        """Max exponent of `var`; 0 for the zero polynomial."""
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range for {self.nvars} variables")
        return max((e[var] for e in self.terms), default=0)

    def leading_term(self) -> tuple[Exponents, Fraction]:
        """Term maximal in graded lex order; raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, _ZERO) + coeff
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, _ZERO) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self.terms.items()))))
        return self._hash

    # -- evaluation and calculus ------------------------------------------

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point length {len(point)} != nvars {self.nvars}")
        point = [_as_fraction(p) for p in point]
        total = _ZERO
        for exps, coeff in self.terms.items():
            value = coeff
            for p, e in zip(point, exps):
                if e:
                    value *= p ** e
            total += value
        return total

    def diff(self, var: int) -> "MultiPoly":
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range")
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[var]
            if e:
                new = list(exps)
                new[var] = e - 1
                key = tuple(new)
                terms[key] = terms.get(key, _ZERO) + coeff * e
        return MultiPoly(self.nvars, terms)

    # -- the three variable transforms ------------------------------------

    def shift(self, offsets: Sequence[Fraction]) -> "MultiPoly":
        """Substitute x_i -> x_i + offsets[i], expanded exactly."""
        if len(offsets) != self.nvars:
            raise ValueError(f"offsets length {len(offsets)} != nvars {self.nvars}")
        result = self
        for i, mu in enumerate(offsets):
            mu = _as_fraction(mu)
            if mu == 0:
                continue
            result = result._shift_one(i, mu)
        return result

    def _shift_one(self, var: int, mu: Fraction) -> "MultiPoly":
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[var]
            base = list(exps)
            for j in range(e + 1):
                base[var] = j
                key = tuple(base)
                terms[key] = terms.get(key, _ZERO) + coeff * comb(e, j) * mu ** (e - j)
        return MultiPoly(self.nvars, terms)

    def invert_var(self, var: int) -> "MultiPoly":
        """Substitute x_var -> 1/x_var and clear by x_var^degree_in(var).

        The zero polynomial maps to itself.
        """
        d = self.degree_in(var)
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            new = list(exps)
            new[var] = d - exps[var]
            terms[tuple(new)] = coeff
        return MultiPoly(self.nvars, terms)

    def box_map(self, bounds: Sequence[tuple[Fraction, Fraction]]) -> "MultiPoly":
        """Map a box prod [a_i, b_i] onto the positive orthant.

        Per dimension substitutes x_i -> 1/(x_i + 1/(b_i-a_i)) + a_i, clearing
        denominators by (x_i + 1/(b_i-a_i))^d_i where d_i is the degree of the
        intermediate polynomial at that stage.  The result is non-negative on
        the orthant iff the input is non-negative on the box.
        """
        if len(bounds) != self.nvars:
            raise ValueError(f"bounds length {len(bounds)} != nvars {self.nvars}")
        result = self
        for i, (a, b) in enumerate(bounds):
            a, b = _as_fraction(a), _as_fraction(b)
            if not 0 <= a < b:
                raise ValueError(f"degenerate box bounds ({a}, {b}) in dimension {i}")
            if a != 0:
                result = result._shift_one(i, a)
            result = result.invert_var(i)
            result = result._shift_one(i, 1 / (b - a))
        return result

    # -- content / exact division -----------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients.

        Returns 1 for the zero polynomial.
        """
        if not self.terms:
            return _ONE
        num_gcd = 0
        den_lcm = 1
        for coeff in self.terms.values():
            num_gcd = gcd(num_gcd, coeff.numerator)
            den_lcm = den_lcm * coeff.denominator // gcd(den_lcm, coeff.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> tuple[Fraction, "MultiPoly"]:
        """Split into (c, q) with self = c*q, q primitive with positive leading coeff."""
        if not self.terms:
            return _ONE, self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return c, self * (1 / c)

    def divide_exact(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Exact multivariate division; None if divisor does not divide self."""
        self._check_compatible(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        lead_e, lead_c = divisor.leading_term()
        quotient: dict[Exponents, Fraction] = {}
        remainder = self
        while not remainder.is_zero():
            r_e, r_c = remainder.leading_term()
            q_e = tuple(a - b for a, b in zip(r_e, lead_e))
            if any(e < 0 for e in q_e):
                return None
            q_c = r_c / lead_c
            quotient[q_e] = q_c
            remainder = remainder - divisor * MultiPoly.monomial(self.nvars, q_e, q_c)
        return MultiPoly(self.nvars, quotient)

    # -- canonical text form ----------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            monos = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e]
            mono = "*".join(monos)
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self!s})"

    def digest(self) -> str:
        """Stable SHA-256 digest of the canonical term list."""
        canon = f"nvars={self.nvars};" + ";".join(
            f"{','.join(map(str, e))}:{c}" for e, c in self.sorted_terms()
        )
        return hashlib.sha256(canon.encode()).hexdigest()


class RatFun:
    """Quotient of two MultiPoly, content-normalized.

    The denominator is normalized to be primitive with positive leading
    coefficient (graded lex).  The proof pipeline additionally maintains the
    stronger invariant that every denominator coefficient is positive; use
    `has_positive_den` to check it.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        num._check_compatible(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFun denominator is zero")
        c, den_norm = den.primitive()
        object.__setattr__(self, "num", num * (1 / c))
        object.__setattr__(self, "den", den_norm)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFun":
        return cls(p, MultiPoly.constant(p.nvars, 1))

    @classmethod
    def constant(cls, nvars: int, c) -> "RatFun":
        return cls.from_poly(MultiPoly.constant(nvars, c))

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_poly():
            raise ValueError("rational function has a non-constant denominator")
        return self.num * (1 / self.den.constant_term())

    def has_positive_den(self) -> bool:
        return all(c > 0 for c in self.den.terms.values())

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(point) / d

    def __add__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        return RatFun(self.num ** n, self.den ** n)

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, MultiPoly):
            return RatFun.from_poly(other)
        return RatFun.constant(self.nvars, other)

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        n_c, n_p = self.num.primitive()
        return hash((n_c, n_p, self.den))

    def diff(self, var: int) -> "RatFun":
        return RatFun(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def __str__(self):
        if self.is_poly():
            return str(self.as_poly())
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFun({self!s})"
