"""Linear local rules over Z_m and their Laurent-polynomial algebra.

A rule is a mod-m linear combination of the cells at offsets -l..r:

    f(x_{-l}, ..., x_r) = sum_i lambda_i * x_i  (mod m)

Composition and iteration of the induced cellular automata correspond to
multiplication and powers of the associated Laurent polynomial
F(X) = sum_i lambda_i X^{-i}, which is how :func:`compose` and
:func:`iterate` are implemented.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from math import gcd

from .errors import (
    DEFAULT_CAP,
    ModulusMismatchError,
    WidthExceededError,
    check_cap,
)

# Widest coefficient support iterate/compose may produce before bailing out.
DEFAULT_MAX_WIDTH = 1 << 16


class PermutativityClass(Enum):
    NONE = "non-permutative"
    LEFT_ONLY = "left-permutative only"
    RIGHT_ONLY = "right-permutative only"
    BIPERMUTATIVE = "bipermutative"


@dataclass(frozen=True)
class LocalRule:
    """Coefficients lambda_{-l..r} of a linear local rule over Z_m.

    Coefficients are stored as canonical residues in [0, m-1], listed
    left-to-right from offset -l to +r.  Construction reduces inputs mod m
    and trims zero coefficients at the ends (shrinking l and r, which stay
    >= 0) so the radii are tight support bounds.  The rule that collapses
    to zero is represented as l = r = 0, coeffs = (0,).
    """

    m: int
    l: int
    r: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise ValueError(f"modulus m must be an integer >= 2, got {self.m!r}")
        if not isinstance(self.l, int) or self.l < 0:
            raise ValueError(f"left radius l must be an integer >= 0, got {self.l!r}")
        if not isinstance(self.r, int) or self.r < 0:
            raise ValueError(f"right radius r must be an integer >= 0, got {self.r!r}")
        coeffs = tuple(int(c) % self.m for c in self.coeffs)
        if len(coeffs) != self.l + self.r + 1:
            raise ValueError(
                f"need l+r+1 = {self.l + self.r + 1} coefficients, got {len(coeffs)}"
            )
        l, r = self.l, self.r
        while l > 0 and coeffs[0] == 0:
            coeffs = coeffs[1:]
            l -= 1
        while r > 0 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
            r -= 1
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def span(self) -> int:
        """Neighbourhood width minus one: l + r."""
        return self.l + self.r

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coeff(self, offset: int) -> int:
        """Coefficient at the given offset, 0 outside [-l, r]."""
        if -self.l <= offset <= self.r:
            return self.coeffs[offset + self.l]
        return 0

    def __call__(self, neighborhood) -> int:
        """Evaluate f on one neighbourhood of l+r+1 symbols."""
        if len(neighborhood) != self.span + 1:
            raise ValueError(f"expected {self.span + 1} symbols")
        return sum(c * x for c, x in zip(self.coeffs, neighborhood)) % self.m

    @classmethod
    def from_spec(cls, obj: dict) -> "LocalRule":
        """Build a rule from the JSON literal {"m":..,"l":..,"r":..,"coeffs":[..]}."""
        if not isinstance(obj, dict):
            raise ValueError("rule spec must be a JSON object")
        for field in ("m", "l", "r", "coeffs"):
            if field not in obj:
                raise ValueError(f"rule spec is missing field {field!r}")
        for field in ("m", "l", "r"):
            if not isinstance(obj[field], int):
                raise ValueError(f"rule spec field {field!r} must be an integer")
        if not isinstance(obj["coeffs"], (list, tuple)):
            raise ValueError("rule spec field 'coeffs' must be a list")
        return cls(obj["m"], obj["l"], obj["r"], tuple(obj["coeffs"]))

    def spec(self) -> dict:
        """JSON-ready literal of this rule."""
        return {"m": self.m, "l": self.l, "r": self.r, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial over Z_m; ``terms`` maps exponent -> nonzero residue.

    A rule's polynomial carries coefficient lambda_i on exponent -i.
    """

    m: int
    terms: dict

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be >= 2")
        clean = {}
        for e, c in self.terms.items():
            c = int(c) % self.m
            if c:
                clean[int(e)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def one(cls, m: int) -> "LaurentPoly":
        return cls(m, {0: 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def width(self) -> int:
        """Number of exponent slots spanned by the support (0 for zero)."""
        if not self.terms:
            return 0
        return max(self.terms) - min(self.terms) + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.m != other.m:
            raise ModulusMismatchError(
                f"cannot multiply polynomials over Z_{self.m} and Z_{other.m}"
            )
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = (out.get(e, 0) + c1 * c2) % self.m
        return LaurentPoly(self.m, out)

    def __pow__(self, n: int, max_width: int = DEFAULT_MAX_WIDTH) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        if n == 0:
            return LaurentPoly.one(self.m)
        # square-and-multiply, reducing mod m at every product
        result = None
        base = self
        k = n
        while k:
            if k & 1:
                result = base if result is None else result * base
                if result.width > max_width:
                    raise WidthExceededError(
                        f"support width {result.width} exceeds maximum {max_width}"
                    )
            k >>= 1
            if k:
                base = base * base
                if base.width > max_width:
                    raise WidthExceededError(
                        f"support width {base.width} exceeds maximum {max_width}"
                    )
        return result


def to_laurent(rule: LocalRule) -> LaurentPoly:
    """Polynomial F(X) = sum_i lambda_i X^{-i} of a rule."""
    return LaurentPoly(
        rule.m, {-(i - rule.l): c for i, c in enumerate(rule.coeffs) if c}
    )


def from_laurent(poly: LaurentPoly) -> LocalRule:
    """Rule whose polynomial is ``poly``; zero polynomial gives the zero rule."""
    if poly.is_zero:
        return LocalRule(poly.m, 0, 0, (0,))
    offsets = {-e: c for e, c in poly.terms.items()}
    lo, hi = min(offsets), max(offsets)
    l = max(0, -lo)
    r = max(0, hi)
    coeffs = tuple(offsets.get(i, 0) for i in range(-l, r + 1))
    return LocalRule(poly.m, l, r, coeffs)


def classify(rule: LocalRule) -> PermutativityClass:
    """Permutativity class from the end-coefficient gcd conditions.

    The rule is permutative in its leftmost (rightmost) variable iff
    gcd(lambda_{-l}, m) = 1 (resp. gcd(lambda_r, m) = 1).  For l = r = 0
    the two conditions coincide.
    """
    left = gcd(rule.coeffs[0], rule.m) == 1
    right = gcd(rule.coeffs[-1], rule.m) == 1
    if left and right:
        return PermutativityClass.BIPERMUTATIVE
    if left:
        return PermutativityClass.LEFT_ONLY
    if right:
        return PermutativityClass.RIGHT_ONLY
    return PermutativityClass.NONE


def brute_force_permutative(
    rule: LocalRule, offset: int, cap: int = DEFAULT_CAP
) -> bool:
    """Independent oracle: is the rule bijective in the variable at ``offset``?

    Enumerates every fixing of the other l+r variables and checks that
    x_offset -> f(...) hits all of Z_m.  Table size is m^(l+r+1); raises
    :class:`CapExceededError` above ``cap``.
    """
    if not -rule.l <= offset <= rule.r:
        raise ValueError(f"offset {offset} outside [{-rule.l}, {rule.r}]")
    m = rule.m
    check_cap(m ** (rule.span + 1), cap)
    idx = offset + rule.l
    others = [i for i in range(rule.span + 1) if i != idx]
    cells = [0] * (rule.span + 1)
    for fixing in itertools.product(range(m), repeat=len(others)):
        for i, v in zip(others, fixing):
            cells[i] = v
        seen = set()
        for v in range(m):
            cells[idx] = v
            seen.add(rule(cells))
        if len(seen) != m:
            return False
    return True


def compose(a: LocalRule, b: LocalRule, max_width: int = DEFAULT_MAX_WIDTH) -> LocalRule:
    """Rule of the composed map: product of the two polynomials mod m."""
    if a.m != b.m:
        raise ModulusMismatchError(f"moduli differ: {a.m} != {b.m}")
    prod = to_laurent(a) * to_laurent(b)
    if prod.width > max_width:
        raise WidthExceededError(
            f"support width {prod.width} exceeds maximum {max_width}"
        )
    return from_laurent(prod)


def iterate(rule: LocalRule, n: int, max_width: int = DEFAULT_MAX_WIDTH) -> LocalRule:
    """Rule of the n-th iterate, via the n-th polynomial power mod m.

    Resulting radii are at most (n*l, n*r) and tight after zero-trimming.
    """
    if n < 1:
        raise ValueError(f"iteration count must be >= 1, got {n}")
    return from_laurent(to_laurent(rule).__pow__(n, max_width))
