"""Exact ground fields carrying two marked index-2 subfields.

A :class:`FieldTowerInstance` bundles a field ``F``, two involutions
``tau_0, tau_1`` whose fixed fields are the subfields ``K_0, K_1``, and
anti-invariant elements ``w_0, w_1``.  Every other module in the package
does its scalar arithmetic through this interface.

Two families of fields are provided:

* :class:`NumberField`, built from commuting radicals.  Elements are stored
  as coordinate vectors in the power basis of a primitive element, so a
  product is one polynomial multiplication followed by reduction modulo the
  minimal polynomial.
* :class:`RationalFunctionField`, the field ``Q(t)``.  Elements are reduced
  fractions of integer polynomials with positive leading denominator
  coefficient, and automorphisms are affine substitutions ``t -> +-t + c``.

Indices of subfields and involutions are always read modulo 2.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce

from flint import fmpq, fmpq_mat, fmpq_poly, fmpz_poly

__all__ = [
    "FieldElement",
    "NumberField",
    "NumberFieldElement",
    "RationalFunctionField",
    "RationalFunction",
    "AutomorphismWord",
    "FieldTowerInstance",
    "Finite",
    "ExceedsBound",
    "CertifiedInfinite",
    "Algebraicity",
    "INSTANCE_KEYS",
    "get_instance",
    "biquadratic",
    "d4_quartic",
    "rational_function",
]


def _to_fmpq(value):
    if isinstance(value, fmpq):
        return value
    if isinstance(value, int):
        return fmpq(value)
    if isinstance(value, Fraction):
        return fmpq(value.numerator, value.denominator)
    return None


def _format_rational(q):
    return str(q)


class FieldElement:
    """Shared operator plumbing; concrete classes implement the ``_op`` hooks."""

    __slots__ = ()

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other
        q = _to_fmpq(other)
        if q is None:
            return None
        return self.field.from_rational(q)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._add(other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._add(other._neg())

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._add(self._neg())

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._mul(other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._mul(self.inverse())

    def __neg__(self):
        return self._neg()

    def __pos__(self):
        return self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.field is self.field and self._key() == other._key()
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{type(self).__name__}({self})"


# ---------------------------------------------------------------------------
# number fields


class NumberFieldElement(FieldElement):
    __slots__ = ("field", "poly", "_hash_key")

    def __init__(self, field, poly):
        self.field = field
        self.poly = poly
        self._hash_key = None

    def _key(self):
        if self._hash_key is None:
            self._hash_key = tuple(self.poly.coeffs())
        return self._hash_key

    def _add(self, other):
        return NumberFieldElement(self.field, self.poly + other.poly)

    def _neg(self):
        return NumberFieldElement(self.field, -self.poly)

    def _mul(self, other):
        return NumberFieldElement(self.field, (self.poly * other.poly) % self.field.modulus)

    def __bool__(self):
        return not self.poly.is_zero()

    def is_zero(self):
        return self.poly.is_zero()

    def inverse(self):
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = self.poly.xgcd(self.field.modulus)
        if not g.is_one():
            raise ArithmeticError("modulus is not irreducible")
        return NumberFieldElement(self.field, s)

    def coordinates(self):
        """Coordinates over the rationals in the primitive power basis."""
        cs = self.poly.coeffs()
        return cs + [fmpq(0)] * (self.field.degree - len(cs))

    def natural_coordinates(self):
        """Coordinates over the rationals in the radical monomial basis."""
        return self.field.to_natural(self.coordinates())

    def __str__(self):
        return self.field.format(self)


class NumberFieldAutomorphism:
    """Field automorphism acting by a rational matrix on power-basis coordinates."""

    __slots__ = ("field", "matrix", "_key")

    def __init__(self, field, matrix):
        self.field = field
        self.matrix = matrix
        d = field.degree
        self._key = tuple(matrix[r, c] for r in range(d) for c in range(d))

    def __call__(self, x):
        d = self.field.degree
        column = fmpq_mat(d, 1, x.coordinates())
        image = self.matrix * column
        return NumberFieldElement(self.field, fmpq_poly([image[r, 0] for r in range(d)]))

    def compose(self, other):
        """``self o other``: apply ``other`` first."""
        return NumberFieldAutomorphism(self.field, self.matrix * other.matrix)

    def is_identity(self):
        return self == self.field.identity_automorphism()

    def __eq__(self, other):
        return isinstance(other, NumberFieldAutomorphism) and self._key == other._key

    def __hash__(self):
        return hash(self._key)


class NumberField:
    """A multi-radical number field ``Q(r_1, ..., r_k)`` with ``r_m^(n_m) = c_m``.

    The radical monomials form the natural basis used for input and display.
    A primitive element (the sum of the radicals) gives the internal power
    basis; ``to_natural``/``from_natural`` convert between the two.
    """

    def __init__(self, symbols, orders, values):
        self.symbols = tuple(symbols)
        self.orders = tuple(orders)
        self.values = tuple(fmpq(v) for v in values)
        self.exponents = list(itertools.product(*(range(n) for n in self.orders)))
        self.degree = len(self.exponents)
        self._index = {e: k for k, e in enumerate(self.exponents)}

        d = self.degree
        theta = [fmpq(0)] * d
        for m in range(len(self.symbols)):
            theta[self._index[self._unit_exponent(m)]] = fmpq(1)
        powers = [[fmpq(1)] + [fmpq(0)] * (d - 1)]
        for _ in range(d):
            powers.append(self._natural_mul(powers[-1], theta))
        basis_change = fmpq_mat(d, d, [powers[c][r] for r in range(d) for c in range(d)])
        if basis_change.rank() != d:
            raise ValueError("sum of radicals is not a primitive element")
        self._to_natural = basis_change
        self._from_natural = basis_change.inv()
        relation = self._from_natural * fmpq_mat(d, 1, powers[d])
        self.modulus = fmpq_poly([-relation[r, 0] for r in range(d)] + [1])
        self._identity = NumberFieldAutomorphism(self, fmpq_mat(d, d, [int(r == c) for r in range(d) for c in range(d)]))

    def _unit_exponent(self, m):
        return tuple(int(k == m) for k in range(len(self.symbols)))

    def _natural_mul(self, u, v):
        out = [fmpq(0)] * self.degree
        for a, ua in enumerate(u):
            if ua == 0:
                continue
            ea = self.exponents[a]
            for b, vb in enumerate(v):
                if vb == 0:
                    continue
                eb = self.exponents[b]
                coeff = ua * vb
                target = []
                for m, n in enumerate(self.orders):
                    s = ea[m] + eb[m]
                    if s >= n:
                        coeff *= self.values[m]
                        s -= n
                    target.append(s)
                out[self._index[tuple(target)]] += coeff
        return out

    # element construction -------------------------------------------------

    def from_rational(self, q):
        return NumberFieldElement(self, fmpq_poly([_to_fmpq(q)]))

    def zero(self):
        return NumberFieldElement(self, fmpq_poly([]))

    def one(self):
        return self.from_rational(1)

    def from_natural(self, coords):
        d = self.degree
        col = self._from_natural * fmpq_mat(d, 1, [_to_fmpq(c) for c in coords])
        return NumberFieldElement(self, fmpq_poly([col[r, 0] for r in range(d)]))

    def to_natural(self, coords):
        d = self.degree
        col = self._to_natural * fmpq_mat(d, 1, coords)
        return [col[r, 0] for r in range(d)]

    def from_coordinates(self, coords):
        return NumberFieldElement(self, fmpq_poly([_to_fmpq(c) for c in coords]))

    def monomial(self, exponent):
        coords = [0] * self.degree
        coords[self._index[tuple(exponent)]] = 1
        return self.from_natural(coords)

    def radical(self, m):
        return self.monomial(self._unit_exponent(m))

    def generators(self):
        return [self.radical(m) for m in range(len(self.symbols))]

    def random_element(self, rng, height=3):
        return self.from_natural([rng.randint(-height, height) for _ in range(self.degree)])

    # automorphisms --------------------------------------------------------

    def identity_automorphism(self):
        return self._identity

    def radical_automorphism(self, signs):
        """Automorphism sending each radical ``r_m`` to ``signs[m] * r_m``."""
        d = self.degree
        diagonal = []
        for e in self.exponents:
            diagonal.append(reduce(lambda acc, m: acc * (signs[m] ** e[m]), range(len(signs)), 1))
        natural = fmpq_mat(d, d, [diagonal[r] if r == c else 0 for r in range(d) for c in range(d)])
        return NumberFieldAutomorphism(self, self._from_natural * natural * self._to_natural)

    # display --------------------------------------------------------------

    def monomial_name(self, exponent):
        parts = []
        for sym, e in zip(self.symbols, exponent):
            if e == 1:
                parts.append(sym)
            elif e > 1:
                parts.append(f"{sym}^{e}")
        return "*".join(parts)

    def format(self, x):
        terms = []
        for e, c in zip(self.exponents, x.natural_coordinates()):
            if c == 0:
                continue
            name = self.monomial_name(e)
            terms.append((c, name))
        return _join_terms(terms)

    def describe(self):
        rels = ", ".join(f"{s}^{n} = {v}" for s, n, v in zip(self.symbols, self.orders, self.values))
        return f"Q({', '.join(self.symbols)}) with {rels}"


def _join_terms(terms):
    if not terms:
        return "0"
    out = []
    for k, (c, name) in enumerate(terms):
        negative = c < 0
        mag = -c if negative else c
        if name:
            body = name if mag == 1 else f"{_format_rational(mag)}*{name}"
        else:
            body = _format_rational(mag)
        if k == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# rational functions


def _normalize_fraction(num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return fmpz_poly([]), fmpz_poly([1])
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    if den.coeffs()[-1] < 0:
        num, den = -num, -den
    return num, den


class RationalFunction(FieldElement):
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, reduced=False):
        if not reduced:
            num, den = _normalize_fraction(num, den)
        self.field = field
        self.num = num
        self.den = den

    def _key(self):
        return (tuple(self.num.coeffs()), tuple(self.den.coeffs()))

    def _add(self, other):
        if self.den == other.den:
            return RationalFunction(self.field, self.num + other.num, self.den)
        return RationalFunction(self.field, self.num * other.den + other.num * self.den, self.den * other.den)

    def _neg(self):
        return RationalFunction(self.field, -self.num, self.den, reduced=True)

    def _mul(self, other):
        return RationalFunction(self.field, self.num * other.num, self.den * other.den)

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.field, self.den, self.num)

    def substitute(self, image):
        """Compose with ``t -> image`` for an integer polynomial ``image``."""
        return RationalFunction(self.field, self.num(image), self.den(image))

    def __str__(self):
        num = _format_poly(self.num, self.field.variable)
        if self.den.is_one():
            return num
        den = _format_poly(self.den, self.field.variable)
        if len(self.num.coeffs()) > 1 and sum(1 for c in self.num.coeffs() if c != 0) > 1:
            num = f"({num})"
        if sum(1 for c in self.den.coeffs() if c != 0) > 1 or self.den.degree() > 0 and self.den.coeffs()[-1] != 1:
            den = f"({den})"
        return f"{num}/{den}"


def _format_poly(p, var):
    coeffs = p.coeffs()
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        name = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        terms.append((c, name))
    return _join_terms(terms)


class AffineSubstitution:
    """Automorphism of ``Q(t)`` determined by ``t -> sign*t + shift``."""

    __slots__ = ("field", "sign", "shift")

    def __init__(self, field, sign, shift):
        self.field = field
        self.sign = sign
        self.shift = shift

    def __call__(self, x):
        image = fmpz_poly([self.shift, self.sign])
        num, den = x.num(image), x.den(image)
        if den.coeffs()[-1] < 0:
            num, den = -num, -den
        return RationalFunction(x.field, num, den, reduced=True)

    def compose(self, other):
        """``self o other``: apply ``other`` first."""
        return AffineSubstitution(self.field, self.sign * other.sign, other.sign * self.shift + other.shift)

    def is_identity(self):
        return self.sign == 1 and self.shift == 0

    def __eq__(self, other):
        return isinstance(other, AffineSubstitution) and (self.sign, self.shift) == (other.sign, other.shift)

    def __hash__(self):
        return hash((self.sign, self.shift))

    def __str__(self):
        return f"{self.field.variable} -> {_format_poly(fmpz_poly([self.shift, self.sign]), self.field.variable)}"


class RationalFunctionField:
    def __init__(self, variable="t"):
        self.variable = variable
        self._identity = AffineSubstitution(self, 1, 0)

    def from_rational(self, q):
        q = _to_fmpq(q)
        return RationalFunction(self, fmpz_poly([int(q.p)]), fmpz_poly([int(q.q)]))

    def zero(self):
        return self.from_rational(0)

    def one(self):
        return self.from_rational(1)

    def from_polynomials(self, num, den=(1,)):
        return RationalFunction(self, fmpz_poly(list(num)), fmpz_poly(list(den)))

    def gen(self):
        return self.from_polynomials([0, 1])

    def generators(self):
        return [self.gen()]

    def identity_automorphism(self):
        return self._identity

    def affine_automorphism(self, sign, shift):
        return AffineSubstitution(self, sign, shift)

    def random_element(self, rng, height=3):
        num = [rng.randint(-height, height) for _ in range(rng.randint(1, 3))]
        if rng.random() < 0.5:
            den = [1]
        else:
            den = [rng.randint(-height, height), rng.choice([1, 2])]
            if all(c == 0 for c in den):
                den = [1]
        return self.from_polynomials(num, den)

    def describe(self):
        return f"Q({self.variable})"


# ---------------------------------------------------------------------------
# the tower


@dataclass(frozen=True)
class AutomorphismWord:
    """A word in ``tau_0, tau_1``; the rightmost letter acts first."""

    letters: tuple = ()

    def __mul__(self, other):
        return AutomorphismWord(self.letters + other.letters)

    def reduced(self):
        stack = []
        for letter in self.letters:
            if stack and stack[-1] == letter:
                stack.pop()
            else:
                stack.append(letter)
        return AutomorphismWord(tuple(stack))

    @classmethod
    def of(cls, *letters):
        return cls(tuple(letter % 2 for letter in letters))

    def __str__(self):
        return "".join(f"tau{c}" for c in self.letters) or "id"


SIGMA = AutomorphismWord.of(1, 0)


@dataclass(frozen=True)
class Finite:
    order: int


@dataclass(frozen=True)
class ExceedsBound:
    bound: int


@dataclass(frozen=True)
class CertifiedInfinite:
    reason: str


class Algebraicity(Enum):
    ALGEBRAIC = "Algebraic"
    NON_ALGEBRAIC = "NonAlgebraic"
    UNKNOWN = "Unknown"


class FieldTowerInstance:
    """A field with two marked involutions and anti-invariant elements.

    Parameters
    ----------
    key:
        registry name.
    field:
        a :class:`NumberField` or :class:`RationalFunctionField`.
    involutions:
        pair ``(tau_0, tau_1)`` of automorphism objects.
    anti_invariants:
        pair ``(w_0, w_1)`` with ``tau_i(w_i) = -w_i``.
    subfield_generators:
        pair of elements generating ``K_0`` and ``K_1`` as fields over Q.
    common_subfield_basis:
        a basis over Q of ``K_0 ∩ K_1`` when that is finite dimensional.
    infinite_order_certificate:
        optional callable taking the instance and returning a reason string
        when ``tau_1 tau_0`` provably has infinite order, else ``None``.
    """

    def __init__(self, key, field, involutions, anti_invariants, subfield_generators,
                 description="", common_subfield_basis=None, infinite_order_certificate=None):
        self.key = key
        self.field = field
        self.involutions = tuple(involutions)
        self.w = tuple(anti_invariants)
        self.subfield_generators = tuple(subfield_generators)
        self.description = description
        self.common_subfield_basis = common_subfield_basis
        self._certificate = infinite_order_certificate
        self._automorphisms = {}
        self._inverse_w = tuple(w.inverse() for w in self.w)

    def __repr__(self):
        return f"FieldTowerInstance({self.key!r})"

    @property
    def finite_dimensional(self):
        return isinstance(self.field, NumberField)

    @property
    def degree(self):
        return self.field.degree if self.finite_dimensional else None

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one()

    def scalar(self, q):
        return self.field.from_rational(q)

    def generators(self):
        return self.field.generators()

    def anti_invariant(self, i):
        return self.w[i % 2]

    def anti_invariant_inverse(self, i):
        return self._inverse_w[i % 2]

    def subfield_generator(self, i):
        return self.subfield_generators[i % 2]

    # involutions ----------------------------------------------------------

    def tau(self, i, x):
        return self.involutions[i % 2](x)

    def is_in_subfield(self, i, x):
        return self.tau(i, x) == x

    def trace(self, i, x):
        return (x + self.tau(i, x)) * fmpq(1, 2)

    def decompose_over_subfield(self, i, x):
        """Return ``(c0, c1)`` in ``K_i`` with ``x = c0 + c1 * w_i``."""
        tx = self.tau(i, x)
        c0 = (x + tx) * fmpq(1, 2)
        c1 = (x - tx) * fmpq(1, 2) * self._inverse_w[i % 2]
        return c0, c1

    def compose_from_subfield(self, i, c0, c1):
        return c0 + c1 * self.w[i % 2]

    def automorphism(self, word):
        """Composite automorphism for a word (cached on its reduced form)."""
        word = word.reduced()
        auto = self._automorphisms.get(word.letters)
        if auto is None:
            auto = self.field.identity_automorphism()
            for letter in reversed(word.letters):
                auto = self.involutions[letter].compose(auto)
            self._automorphisms[word.letters] = auto
        return auto

    def eval_word(self, word, x):
        return self.automorphism(word)(x)

    # algebraicity ---------------------------------------------------------

    def sigma_automorphism(self):
        return self.automorphism(SIGMA)

    def sigma_order(self, bound):
        if bound < 1:
            raise ValueError("bound must be positive")
        sigma = self.sigma_automorphism()
        gens = self.generators()
        images = list(gens)
        for n in range(1, bound + 1):
            images = [sigma(x) for x in images]
            if images == gens:
                return Finite(n)
        if self._certificate is not None:
            reason = self._certificate(self)
            if reason:
                return CertifiedInfinite(reason)
        return ExceedsBound(bound)

    def classify_algebraic(self, bound=64):
        verdict = self.sigma_order(bound)
        if isinstance(verdict, Finite):
            return Algebraicity.ALGEBRAIC
        if isinstance(verdict, CertifiedInfinite):
            return Algebraicity.NON_ALGEBRAIC
        return Algebraicity.UNKNOWN

    # sampling -------------------------------------------------------------

    def random_element(self, rng, height=3):
        return self.field.random_element(rng, height)

    def random_nonzero(self, rng, height=3):
        while True:
            x = self.field.random_element(rng, height)
            if x:
                return x

    def random_subfield_element(self, i, rng, height=3):
        c0, c1 = self.decompose_over_subfield(i, self.random_element(rng, height))
        return c0 + c1 * self.w[i % 2] * self.w[i % 2]

    def text(self, x):
        return str(x)

    def check_axioms(self, rng, samples=8):
        """Return a list of violated tower axioms on seeded samples (empty if sound)."""
        failures = []
        xs = self.generators() + [self.random_element(rng) for _ in range(samples)]
        ys = [self.random_element(rng) for _ in range(samples)]
        for i in (0, 1):
            tau = self.involutions[i]
            if any(tau(tau(x)) != x for x in xs):
                failures.append(f"tau_{i} is not an involution")
            if any(tau(x * y) != tau(x) * tau(y) or tau(x + y) != tau(x) + tau(y) for x, y in zip(xs, ys)):
                failures.append(f"tau_{i} is not a ring homomorphism")
            if not self.is_in_subfield(i, self.subfield_generators[i]):
                failures.append(f"subfield generator {i} is not fixed by tau_{i}")
            w = self.w[i]
            if not w or tau(w) != -w:
                failures.append(f"w_{i} is not anti-invariant under tau_{i}")
            if not self.is_in_subfield(i, w * w):
                failures.append(f"w_{i}^2 is not in K_{i}")
            if self.is_in_subfield(1 - i, w):
                failures.append(f"w_{i} lies in K_{1 - i}, so h' and g' are dependent")
        if self.is_in_subfield(1, self.subfield_generators[0]) and self.is_in_subfield(0, self.subfield_generators[1]):
            failures.append("K_0 and K_1 coincide")
        for c in self.common_subfield_basis or ():
            if not (self.is_in_subfield(0, c) and self.is_in_subfield(1, c)):
                failures.append(f"{c} is not in both subfields")
        return failures


def _translation_certificate(instance):
    sigma = instance.sigma_automorphism()
    if isinstance(sigma, AffineSubstitution) and sigma.sign == 1 and sigma.shift != 0:
        return f"sigma is the translation {sigma}, which has infinite order in characteristic 0"
    return None


def biquadratic():
    """``Q(sqrt2, sqrt3)`` with ``K_0 = Q(sqrt2)`` and ``K_1 = Q(sqrt3)``."""
    field = NumberField(["sqrt2", "sqrt3"], [2, 2], [2, 3])
    r2, r3 = field.generators()
    tau0 = field.radical_automorphism([1, -1])
    tau1 = field.radical_automorphism([-1, 1])
    r6 = r2 * r3
    return FieldTowerInstance(
        "biquadratic", field, (tau0, tau1), (r6, r6), (r2, r3),
        description="F = Q(sqrt2, sqrt3), K0 = Q(sqrt2), K1 = Q(sqrt3)",
        common_subfield_basis=[field.one()],
    )


def d4_quartic():
    """``Q(i, q)`` with ``q^4 = 2``, ``K_0 = Q(q)`` and ``K_1 = Q(i q)``."""
    field = NumberField(["i", "q"], [2, 4], [-1, 2])
    i, q = field.generators()
    tau0 = field.radical_automorphism([-1, 1])
    tau1 = field.radical_automorphism([-1, -1])
    return FieldTowerInstance(
        "d4-quartic", field, (tau0, tau1), (i, i), (q, i * q),
        description="F = Q(i, q) with q = 2^(1/4), K0 = Q(q), K1 = Q(i*q)",
        common_subfield_basis=[field.one(), q * q],
    )


def rational_function():
    """``Q(t)`` with ``tau_0: t -> -t`` and ``tau_1: t -> 2 - t``."""
    field = RationalFunctionField("t")
    t = field.gen()
    tau0 = field.affine_automorphism(-1, 0)
    tau1 = field.affine_automorphism(-1, 2)
    return FieldTowerInstance(
        "rational-function", field, (tau0, tau1), (t, t - 1), (t * t, (t - 1) * (t - 1)),
        description="F = Q(t), K0 = Q(t^2), K1 = Q((t-1)^2)",
        common_subfield_basis=[field.one()],
        infinite_order_certificate=_translation_certificate,
    )


_FACTORIES = {
    "biquadratic": biquadratic,
    "d4-quartic": d4_quartic,
    "rational-function": rational_function,
}
INSTANCE_KEYS = tuple(_FACTORIES)
_CACHE = {}


def get_instance(key):
    """Shared instance for a registry key; raises ``KeyError`` for unknown keys."""
    if key not in _FACTORIES:
        raise KeyError(f"unknown instance {key!r}; expected one of {', '.join(INSTANCE_KEYS)}")
    if key not in _CACHE:
        _CACHE[key] = _FACTORIES[key]()
    return _CACHE[key]


def random_generator(seed):
    return random.Random(seed)
