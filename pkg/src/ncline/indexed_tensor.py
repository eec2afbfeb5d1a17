"""The decomposed tensor algebra of a field bimodule.

The degree ``n = j - i`` piece ``T_ij`` is the tensor product of ``n`` copies
of ``F`` over the alternating subfields.  It splits as a direct sum of
copies ``F_s`` of ``F`` labelled by sign patterns ``s``: one choice of
identity or ``tau`` for every intermediate index ``i+1, ..., j-1``.

Patterns are integers read little-endian: bit ``l`` set means the
involution ``tau_{i+l+1}`` is chosen.  The all-ones pattern is the top
pattern.  A :class:`TensorElement` is a sparse map from pattern to value
in ``F``; its data depends on ``i`` only through ``i mod 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from weakref import WeakKeyDictionary

from .field_tower import AutomorphismWord
from .linalg import EchelonBasis

__all__ = [
    "SignPattern",
    "TensorElement",
    "pattern_word",
    "mu",
    "mu_by_merge_order",
    "star_mul",
    "coords_over_start_field",
    "coordinate_vector",
    "from_coords",
    "h_prime",
    "g_prime",
    "unit",
    "scalar",
    "top_injection",
    "basis_over_start",
    "product_span_dim",
]


def _pattern_bits(start, end):
    return max(end - start - 1, 0)


def pattern_word(start, length, bits):
    """Automorphism word ``s_{i+1} o ... o s_{j-1}`` of a pattern."""
    letters = tuple((start + l + 1) % 2 for l in range(max(length - 1, 0)) if bits >> l & 1)
    return AutomorphismWord(letters)


@dataclass(frozen=True)
class SignPattern:
    start: int
    end: int
    bits: int = 0

    def __post_init__(self):
        if self.end < self.start:
            raise ValueError("pattern end precedes start")
        if self.bits < 0 or self.bits >> _pattern_bits(self.start, self.end):
            raise ValueError("pattern bits out of range")

    @property
    def size(self):
        return _pattern_bits(self.start, self.end)

    @classmethod
    def top(cls, start, end):
        return cls(start, end, (1 << _pattern_bits(start, end)) - 1)

    def is_top(self):
        return self.bits == (1 << self.size) - 1

    def word(self):
        return pattern_word(self.start, self.end - self.start, self.bits)

    def text(self):
        return "".join(str(self.bits >> l & 1) for l in range(self.size))

    @classmethod
    def from_text(cls, start, end, text):
        return cls(start, end, sum(int(ch) << l for l, ch in enumerate(text)))


class TensorElement:
    """Homogeneous element of ``T_ij``; absent patterns are zero."""

    __slots__ = ("instance", "start", "end", "components")

    def __init__(self, instance, start, end, components=None):
        if end < start:
            raise ValueError("end index precedes start index")
        self.instance = instance
        self.start = start
        self.end = end
        self.components = {p: x for p, x in (components or {}).items() if x}
        limit = 1 << _pattern_bits(start, end)
        if any(p < 0 or p >= limit for p in self.components):
            raise ValueError("pattern out of range for this degree")
        if start == end and self.components and not instance.is_in_subfield(start, self.components[0]):
            raise ValueError("degree-0 component must lie in the start subfield")

    @property
    def degree(self):
        return self.end - self.start

    def _check(self, other):
        if (other.instance, other.start, other.end) != (self.instance, self.start, self.end):
            raise ValueError("tensor elements live in different pieces")

    def __add__(self, other):
        self._check(other)
        out = dict(self.components)
        for p, x in other.components.items():
            out[p] = out[p] + x if p in out else x
        return TensorElement(self.instance, self.start, self.end, out)

    def __neg__(self):
        return TensorElement(self.instance, self.start, self.end, {p: -x for p, x in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Left multiplication of every component by ``c``."""
        return TensorElement(self.instance, self.start, self.end, {p: c * x for p, x in self.components.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def shift(self, offset):
        """The same data at indices moved by an even offset."""
        if offset % 2:
            raise ValueError("only even shifts preserve the pieces")
        return TensorElement(self.instance, self.start + offset, self.end + offset, self.components)

    def is_zero(self):
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.instance, self.start, self.end) == (other.instance, other.start, other.end) \
            and self.components == other.components

    def __hash__(self):
        return hash((self.start, self.end, frozenset(self.components.items())))

    def __repr__(self):
        parts = ", ".join(f"{SignPattern(self.start, self.end, p).text() or '-'}: {x}"
                          for p, x in sorted(self.components.items()))
        return f"TensorElement[{self.start},{self.end}]({{{parts}}})"

    def to_json(self):
        return {
            "start": self.start,
            "end": self.end,
            "components": {SignPattern(self.start, self.end, p).text(): str(x)
                           for p, x in sorted(self.components.items())},
        }


class _PatternTwists:
    """Per-instance cache of pattern automorphisms keyed by parity and size."""

    def __init__(self, instance):
        self.instance = instance
        self._cache = {}

    def get(self, start, length, bits):
        key = (start % 2, length, bits)
        auto = self._cache.get(key)
        if auto is None:
            auto = self.instance.automorphism(pattern_word(start, length, bits))
            self._cache[key] = auto
        return auto


_TWISTS = WeakKeyDictionary()


def _twists(instance):
    tw = _TWISTS.get(instance)
    if tw is None:
        tw = _PatternTwists(instance)
        _TWISTS[instance] = tw
    return tw


def twist(instance, start, end, bits):
    """The automorphism ``s-bar`` of a pattern, as a callable."""
    return _twists(instance).get(start, end - start, bits)


def mu(instance, start, factors):
    """Image of the pure tensor ``x_i (x) ... (x) x_{j-1}`` in the decomposition."""
    factors = list(factors)
    if not factors:
        raise ValueError("mu needs at least one factor")
    tw = _twists(instance)
    n = len(factors)
    layer = {0: factors[0]}
    for k in range(1, n):
        x = factors[k]
        nxt = {}
        for bits, value in layer.items():
            for b in (0, 1):
                p = bits | (b << (k - 1))
                nxt[p] = value * tw.get(start, k + 1, p)(x)
        layer = nxt
    return TensorElement(instance, start, start + n, layer)


def star_mul(a, b):
    """Product ``T_ij x T_jl -> T_il``."""
    if a.end != b.start:
        raise ValueError(f"index mismatch: left ends at {a.end}, right starts at {b.start}")
    if a.instance is not b.instance:
        raise ValueError("operands come from different instances")
    inst = a.instance
    if a.degree == 0:
        k = a.components.get(0)
        return b.scale(k) if k is not None else TensorElement(inst, a.start, b.end)
    tw = _twists(inst)
    if b.degree == 0:
        k = b.components.get(0)
        if k is None:
            return TensorElement(inst, a.start, b.end)
        out = {p: x * tw.get(a.start, a.degree, p)(k) for p, x in a.components.items()}
        return TensorElement(inst, a.start, b.end, out)
    na = a.degree
    j = a.end
    flipped = {q: inst.tau(j, y) for q, y in b.components.items()}
    by_auto = {}
    out = {}
    for p, x in a.components.items():
        auto = tw.get(a.start, na, p)
        images = by_auto.get(auto)
        if images is None:
            images = [(q, auto(y), auto(flipped[q])) for q, y in b.components.items()]
            by_auto[auto] = images
        for q, plain, twisted in images:
            base = p | (q << na)
            out[base] = x * plain
            out[base | (1 << (na - 1))] = x * twisted
    return TensorElement(inst, a.start, b.end, out)


def mu_by_merge_order(instance, start, factors, order):
    """Evaluate ``mu`` by collapsing adjacent blocks in the given order.

    ``order`` is a permutation of the junctions ``1 .. n-1``; junction ``k``
    sits between factors ``k-1`` and ``k``.  Each collapse is one ``star_mul``.
    """
    factors = list(factors)
    n = len(factors)
    if sorted(order) != list(range(1, n)):
        raise ValueError("order must be a permutation of the junctions")
    blocks = {k: (k + 1, mu(instance, start + k, [x])) for k, x in enumerate(factors)}
    for junction in order:
        left_key = max(k for k in blocks if k < junction)
        left_end, left = blocks[left_key]
        if left_end != junction:
            raise AssertionError("blocks out of sync")
        right_end, right = blocks.pop(junction)
        blocks[left_key] = (right_end, star_mul(left, right))
    (_, result), = blocks.values()
    return result


def unit(instance, i):
    return TensorElement(instance, i, i, {0: instance.one()})


def scalar(instance, i, k):
    return TensorElement(instance, i, i, {0: k})


def top_injection(instance, start, end, value):
    """Element concentrated on the top pattern of ``T_{start,end}``."""
    return TensorElement(instance, start, end, {(1 << _pattern_bits(start, end)) - 1: value})


def h_prime(instance, l):
    return TensorElement(instance, l, l + 2, {0: instance.scalar(2)})


def g_prime(instance, l):
    return TensorElement(instance, l, l + 2, {0: instance.anti_invariant(l + 1) * 2})


def coords_over_start_field(a):
    """Dense left ``K_i``-coordinates, two per pattern (basis ``1, w_i``)."""
    n = a.degree
    if n == 0:
        return [a.components.get(0, a.instance.zero())]
    out = []
    zero = a.instance.zero()
    for p in range(1 << (n - 1)):
        x = a.components.get(p)
        if x is None:
            out.extend((zero, zero))
        else:
            out.extend(a.instance.decompose_over_subfield(a.start, x))
    return out


def coordinate_vector(a):
    """Sparse form of :func:`coords_over_start_field` (column -> entry)."""
    if a.degree == 0:
        x = a.components.get(0)
        return {0: x} if x else {}
    inst = a.instance
    out = {}
    for p, x in a.components.items():
        c0, c1 = inst.decompose_over_subfield(a.start, x)
        if c0:
            out[2 * p] = c0
        if c1:
            out[2 * p + 1] = c1
    return out


def from_coords(instance, start, end, coords):
    """Inverse of :func:`coords_over_start_field`; accepts dense or sparse input."""
    if isinstance(coords, dict):
        items = coords.items()
    else:
        items = enumerate(coords)
    if end == start:
        value = dict(items).get(0)
        return TensorElement(instance, start, end, {0: value} if value else {})
    w = instance.anti_invariant(start)
    comps = {}
    for col, c in items:
        if not c:
            continue
        p, slot = divmod(col, 2)
        term = c if slot == 0 else c * w
        comps[p] = comps[p] + term if p in comps else term
    return TensorElement(instance, start, end, comps)


def basis_over_start(instance, start, end):
    """Left ``K_start``-basis of ``T_{start,end}``: value ``1`` or ``w`` per pattern."""
    if end == start:
        return [unit(instance, start)]
    w = instance.anti_invariant(start)
    one = instance.one()
    out = []
    for p in range(1 << _pattern_bits(start, end)):
        out.append(TensorElement(instance, start, end, {p: one}))
        out.append(TensorElement(instance, start, end, {p: w}))
    return out


def product_span_dim(instance, i, j, l, middles=None):
    """Dimension over ``K_i`` of the span of ``basis(T_il) * m * basis(T_{l+2,j})``.

    ``middles`` defaults to ``(h'_l, g'_l)``, which span the untwisted summand
    of ``T_{l,l+2}``.
    """
    if not i <= l <= j - 2:
        raise ValueError("need i <= l <= j - 2")
    if middles is None:
        middles = (h_prime(instance, l), g_prime(instance, l))
    span = EchelonBasis()
    lefts = basis_over_start(instance, i, l)
    rights = basis_over_start(instance, l + 2, j)
    for m in middles:
        for x in lefts:
            xm = star_mul(x, m)
            for y in rights:
                span.add(coordinate_vector(star_mul(xm, y)))
    return span.rank
