"""The noncommutative symmetric algebra ``A = T / R`` in closed normal form.

``R`` is the two-sided ideal of the tensor algebra generated in degree 2 by
the elements ``h'_l = (2, 0)``.  Modulo ``R`` the piece ``A_ij`` of degree
``n = j - i`` has exactly ``n + 1`` dimensions over ``K_i``, organised in
``k + 1`` slots with ``k = n // 2``:

* slot ``m`` holds a field element realised in the tensor algebra as the
  top-pattern injection of degree ``n % 2 + 2m`` followed by the chain
  ``g'_{.} * ... * g'_{j-2}``;
* for even ``n`` slot 0 is a scalar of ``K_i``, otherwise every slot is in ``F``.

With this normalisation the chain ``g_i g_{i+2} ... g_{j-2}`` is the element
with slot 0 equal to 1 and all other slots zero.

Everything is computed by exact linear algebra over ``K_i``.  Relation bases
and projection data are cached per ``(i mod 2, j - i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from weakref import WeakKeyDictionary

from . import indexed_tensor as it
from .indexed_tensor import TensorElement, coordinate_vector, star_mul
from .linalg import EchelonBasis, SquareSolver, solve

__all__ = [
    "SymElement",
    "RelationSpace",
    "NotDivisible",
    "relation_space",
    "relation_piece",
    "intersection_dim",
    "eulerian_check",
    "section",
    "project",
    "sym_mul",
    "g_chain",
    "g_bar",
    "sym_basis",
    "sym_unit",
    "check_g_normality",
    "left_divide_by_g",
    "right_divide_by_g",
    "quotient_B_dim",
    "conjugate_by_g",
    "conjugate_by_g_inverse",
    "g_product_columns",
    "span_rank",
]


def slot_count(degree):
    return degree // 2 + 1


def slot_degree(degree, m):
    """Tensor degree of the top-pattern injection realising slot ``m``."""
    return degree % 2 + 2 * m


class SymElement:
    """Element of ``A_ij`` as its slot list ``(a_0, ..., a_k)``."""

    __slots__ = ("instance", "start", "end", "slots")

    def __init__(self, instance, start, end, slots):
        if end < start:
            raise ValueError("end index precedes start index")
        n = end - start
        slots = tuple(slots)
        if len(slots) != slot_count(n):
            raise ValueError(f"degree {n} needs {slot_count(n)} slots, got {len(slots)}")
        if n % 2 == 0 and slots[0] and not instance.is_in_subfield(start, slots[0]):
            raise ValueError("leading slot of an even-degree element must lie in K_start")
        self.instance = instance
        self.start = start
        self.end = end
        self.slots = slots

    @classmethod
    def zero(cls, instance, start, end):
        z = instance.zero()
        return cls(instance, start, end, [z] * slot_count(end - start))

    @property
    def degree(self):
        return self.end - self.start

    def _check(self, other):
        if (other.instance, other.start, other.end) != (self.instance, self.start, self.end):
            raise ValueError("elements live in different pieces")

    def __add__(self, other):
        self._check(other)
        return SymElement(self.instance, self.start, self.end, [x + y for x, y in zip(self.slots, other.slots)])

    def __sub__(self, other):
        self._check(other)
        return SymElement(self.instance, self.start, self.end, [x - y for x, y in zip(self.slots, other.slots)])

    def __neg__(self):
        return SymElement(self.instance, self.start, self.end, [-x for x in self.slots])

    def scale(self, c):
        """Left multiplication by a scalar of ``K_start``."""
        return SymElement(self.instance, self.start, self.end, [c * x for x in self.slots])

    def __rmul__(self, c):
        return self.scale(c)

    def shift(self, offset):
        if offset % 2:
            raise ValueError("only even shifts preserve the pieces")
        return SymElement(self.instance, self.start + offset, self.end + offset, self.slots)

    def is_zero(self):
        return not any(self.slots)

    def __bool__(self):
        return any(self.slots)

    def nonzero_slots(self):
        return [m for m, x in enumerate(self.slots) if x]

    def coordinates(self):
        """Left ``K_start``-coordinates (length ``degree + 1``)."""
        inst = self.instance
        out = []
        for m, x in enumerate(self.slots):
            if m == 0 and self.degree % 2 == 0:
                out.append(x)
            else:
                out.extend(inst.decompose_over_subfield(self.start, x))
        return out

    def coordinate_vector(self):
        return {k: x for k, x in enumerate(self.coordinates()) if x}

    @classmethod
    def from_coordinates(cls, instance, start, end, coords):
        n = end - start
        w = instance.anti_invariant(start)
        zero = instance.zero()
        dense = [zero] * (n + 1)
        items = coords.items() if isinstance(coords, dict) else enumerate(coords)
        for k, x in items:
            dense[k] = dense[k] + x
        slots = []
        pos = 0
        for m in range(slot_count(n)):
            if m == 0 and n % 2 == 0:
                slots.append(dense[0])
                pos = 1
            else:
                slots.append(dense[pos] + dense[pos + 1] * w)
                pos += 2
        return cls(instance, start, end, slots)

    def __eq__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return (self.instance, self.start, self.end, self.slots) == (other.instance, other.start, other.end, other.slots)

    def __hash__(self):
        return hash((self.start, self.end, self.slots))

    def __repr__(self):
        return f"SymElement[{self.start},{self.end}]({', '.join(str(x) for x in self.slots)})"

    def to_json(self):
        return {"start": self.start, "end": self.end, "slots": [str(x) for x in self.slots]}


@dataclass(frozen=True)
class NotDivisible:
    """Returned by the division routines when no quotient exists."""

    divisor: str
    target: str


class RelationSpace:
    """Row-reduced left ``K_i``-basis of ``R_ij`` in tensor coordinates."""

    def __init__(self, start, end, echelon, generators_used):
        self.start = start
        self.end = end
        self.echelon = echelon
        self.generators_used = generators_used

    @property
    def dimension(self):
        return self.echelon.rank

    @property
    def ambient_dimension(self):
        return 1 << (self.end - self.start)

    def basis(self, instance):
        """Basis vectors decoded to tensor elements at ``(start, end)``."""
        return [it.from_coords(instance, self.start, self.end, row) for _, row in sorted(self.echelon.rows.items())]

    def contains(self, t):
        return self.echelon.contains(coordinate_vector(t))


class _SymCache:
    def __init__(self, instance):
        self.instance = instance
        self.pieces = {}
        self.relations = {}
        self.projectors = {}
        self.g_chain_tensors = {}
        self.divisors = {}


_CACHES = WeakKeyDictionary()


def _cache(instance):
    c = _CACHES.get(instance)
    if c is None:
        c = _SymCache(instance)
        _CACHES[instance] = c
    return c


def relation_piece(instance, i, j, l):
    """Echelon basis of ``R^(l)_ij = T_il * K h'_l * T_{l+2,j}``."""
    if not i <= l <= j - 2:
        raise ValueError("need i <= l <= j - 2")
    key = (i % 2, j - i, l - i)
    cache = _cache(instance)
    piece = cache.pieces.get(key)
    if piece is None:
        p = i % 2
        jj, ll = p + (j - i), p + (l - i)
        piece = EchelonBasis()
        h = it.h_prime(instance, ll)
        rights = it.basis_over_start(instance, ll + 2, jj)
        for x in it.basis_over_start(instance, p, ll):
            xh = star_mul(x, h)
            for y in rights:
                piece.add(coordinate_vector(star_mul(xh, y)))
        cache.pieces[key] = piece
    return piece


def relation_space(instance, i, j):
    """The relation space ``R_ij`` (requires ``j - i >= 2``)."""
    n = j - i
    if n < 2:
        raise ValueError("relations start in degree 2")
    cache = _cache(instance)
    key = (i % 2, n)
    space = cache.relations.get(key)
    if space is None:
        total = EchelonBasis()
        used = 0
        for l in range(i, j - 1):
            for row in relation_piece(instance, i, j, l).rows.values():
                used += 1
                total.add(row)
        space = RelationSpace(i % 2, i % 2 + n, total, used)
        cache.relations[key] = space
    if space.start == i:
        return space
    return RelationSpace(i, j, space.echelon, space.generators_used)


def _relation_echelon(instance, i, n):
    if n < 2:
        return EchelonBasis()
    return relation_space(instance, i, i + n).echelon


def intersection_dim(instance, i, j, l, l2):
    """``dim_{K_i}`` of ``R^(l)_ij ∩ R^(l2)_ij`` via ranks of the pieces and their sum."""
    if not (i <= l < l2 <= j - 2):
        raise ValueError("need i <= l < l2 <= j - 2")
    a = relation_piece(instance, i, j, l)
    b = relation_piece(instance, i, j, l2)
    total = EchelonBasis()
    total.extend(a.rows.values())
    total.extend(b.rows.values())
    return a.rank + b.rank - total.rank


def eulerian_check(n):
    """Both sides of ``2^n - n - 1 = sum_m (-1)^(m-1) C(n-m, m) 2^(n-2m)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    lhs = 2 ** n - n - 1
    rhs = sum((-1) ** (m - 1) * math.comb(n - m, m) * 2 ** (n - 2 * m) for m in range(1, n // 2 + 1))
    return lhs, rhs


# ---------------------------------------------------------------------------
# section and projection


def _g_chain_tensor(instance, start, end):
    """``g'_start * g'_{start+2} * ... * g'_{end-2}`` (unit when equal)."""
    cache = _cache(instance)
    key = (start % 2, end - start)
    t = cache.g_chain_tensors.get(key)
    if t is None:
        p = start % 2
        t = it.unit(instance, p)
        for l in range(p, p + end - start, 2):
            t = star_mul(t, it.g_prime(instance, l))
        cache.g_chain_tensors[key] = t
    return t.shift(start - start % 2) if start % 2 != start else t


def section(a):
    """Lift ``a`` to the tensor algebra by the g'-recursion of the normal form."""
    inst, i, j = a.instance, a.start, a.end
    n = j - i
    if n <= 1:
        return TensorElement(inst, i, j, {0: a.slots[0]})
    lower = SymElement(inst, i, j - 2, a.slots[:-1])
    lifted = star_mul(section(lower), it.g_prime(inst, j - 2))
    return lifted + it.top_injection(inst, i, j, a.slots[-1])


def slot_lift(instance, i, j, m, value):
    """Tensor realising a single slot: top injection then the g'-chain."""
    d = slot_degree(j - i, m)
    return star_mul(it.top_injection(instance, i, i + d, value), _g_chain_tensor(instance, i + d, j))


class _Projector:
    def __init__(self, instance, parity, n):
        self.n = n
        self.relations = _relation_echelon(instance, parity, n)
        size = 1 << n if n > 0 else 1
        self.free = [c for c in range(size) if c not in self.relations.rows]
        if len(self.free) != n + 1:
            raise AssertionError(f"relation space has wrong codimension {len(self.free)} at degree {n}")
        position = {c: k for k, c in enumerate(self.free)}
        columns = []
        for e in sym_basis(instance, parity, parity + n):
            residual = self.relations.reduce(coordinate_vector(section(e)))
            columns.append({position[c]: x for c, x in residual.items()})
        self.position = position
        self.solver = SquareSolver(columns, n + 1)

    def coordinates(self, t):
        residual = self.relations.reduce(coordinate_vector(t))
        return self.solver.solve({self.position[c]: x for c, x in residual.items()})


def _projector(instance, i, n):
    cache = _cache(instance)
    key = (i % 2, n)
    proj = cache.projectors.get(key)
    if proj is None:
        proj = _Projector(instance, i % 2, n)
        cache.projectors[key] = proj
    return proj


def project(t):
    """The unique normal-form element ``a`` with ``t - section(a)`` in ``R``."""
    inst, i, j = t.instance, t.start, t.end
    n = j - i
    if n <= 1:
        return SymElement(inst, i, j, [t.components.get(0, inst.zero())])
    coords = _projector(inst, i, n).coordinates(t)
    return SymElement.from_coordinates(inst, i, j, coords)


def sym_basis(instance, i, j):
    """Left ``K_i``-basis of ``A_ij``: one slot set to ``1`` or ``w_i``."""
    n = j - i
    one, w, zero = instance.one(), instance.anti_invariant(i), instance.zero()
    out = []
    for m in range(slot_count(n)):
        values = (one,) if (m == 0 and n % 2 == 0) else (one, w)
        for v in values:
            slots = [zero] * slot_count(n)
            slots[m] = v
            out.append(SymElement(instance, i, j, slots))
    return out


def sym_unit(instance, i):
    return SymElement(instance, i, i, [instance.one()])


def sym_scalar(instance, i, k):
    return SymElement(instance, i, i, [k])


def sym_mul(a, b):
    """Product in ``A``: ``project(section(a) * section(b))``."""
    if a.end != b.start:
        raise ValueError(f"index mismatch: left ends at {a.end}, right starts at {b.start}")
    if a.instance is not b.instance:
        raise ValueError("operands come from different instances")
    return project(star_mul(section(a), section(b)))


def g_chain(instance, i, k):
    """Image in ``A`` of ``g'_i * g'_{i+2} * ... * g'_{i+2k-2}``."""
    if k < 0:
        raise ValueError("chain length must be nonnegative")
    if k == 0:
        return sym_unit(instance, i)
    return project(_g_chain_tensor(instance, i, i + 2 * k))


def g_bar(instance, i):
    return g_chain(instance, i, 1)


def span_rank(elements):
    basis = EchelonBasis()
    for e in elements:
        basis.add(e.coordinate_vector())
    return basis.rank


def check_g_normality(instance, i, j):
    """Whether ``g_i A_{i+2,j+2}`` and ``A_ij g_j`` coincide inside ``A_{i,j+2}``."""
    if j < i:
        raise ValueError("need j >= i")
    left = [sym_mul(g_bar(instance, i), b) for b in sym_basis(instance, i + 2, j + 2)]
    right = [sym_mul(b, g_bar(instance, j)) for b in sym_basis(instance, i, j)]
    rl, rr, both = span_rank(left), span_rank(right), span_rank(left + right)
    return rl == rr == both


def g_product_columns(instance, side, i, m):
    cache = _cache(instance)
    key = (side, i % 2, m - i)
    cols = cache.divisors.get(key)
    if cols is None:
        p = i % 2
        mm = p + (m - i)
        if side == "left":
            g = g_bar(instance, p)
            elems = [sym_mul(g, b) for b in sym_basis(instance, p + 2, mm)]
        else:
            g = g_bar(instance, mm - 2)
            elems = [sym_mul(b, g) for b in sym_basis(instance, p, mm - 2)]
        cols = [e.coordinate_vector() for e in elems]
        cache.divisors[key] = cols
    return cols


def left_divide_by_g(i, c):
    """``y`` in ``A_{i+2,m}`` with ``g_i y = c``, or :class:`NotDivisible`."""
    inst, m = c.instance, c.end
    if c.start != i:
        raise ValueError("dividend must start at the divisor's start index")
    if m < i + 2:
        raise ValueError("dividend degree must be at least 2")
    coeffs = solve(g_product_columns(inst, "left", i, m), c.coordinate_vector())
    if coeffs is None:
        return NotDivisible(f"g_{i} (left)", repr(c))
    return SymElement.from_coordinates(inst, i + 2, m, coeffs)


def right_divide_by_g(i, c):
    """``y`` in ``A_{i,m-2}`` with ``y g_{m-2} = c``, or :class:`NotDivisible`."""
    inst, m = c.instance, c.end
    if c.start != i:
        raise ValueError("dividend must start at index i")
    if m < i + 2:
        raise ValueError("dividend degree must be at least 2")
    coeffs = solve(g_product_columns(inst, "right", i, m), c.coordinate_vector())
    if coeffs is None:
        return NotDivisible(f"g_{m - 2} (right)", repr(c))
    return SymElement.from_coordinates(inst, i, m - 2, coeffs)


def quotient_B_dim(instance, i, n):
    """``dim_{K_i}`` of ``A_{i,i+n}`` modulo ``A_{i,i+n-2} g``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < 2:
        return n + 1
    image = [sym_mul(b, g_bar(instance, i + n - 2)) for b in sym_basis(instance, i, i + n - 2)]
    return (n + 1) - span_rank(image)


def conjugate_by_g(a):
    """The element ``phi(a)`` of ``A_{i+2,j+2}`` with ``a g_j = g_i phi(a)``."""
    inst = a.instance
    y = left_divide_by_g(a.start, sym_mul(a, g_bar(inst, a.end)))
    if isinstance(y, NotDivisible):
        raise AssertionError("g failed to be normal")
    return y


def conjugate_by_g_inverse(a):
    """The element ``psi(a)`` of ``A_{i-2,j-2}`` with ``g_{i-2} a = psi(a) g_{j-2}``."""
    inst = a.instance
    c = sym_mul(g_bar(inst, a.start - 2), a)
    y = right_divide_by_g(a.start - 2, c)
    if isinstance(y, NotDivisible):
        raise AssertionError("g failed to be normal")
    return y
