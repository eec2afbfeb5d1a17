"""The degree-zero ring ``Lambda_00`` of the localization ``A[g^-1]``.

An element ``a g^-r`` is stored as its level ``r`` and numerator ``a`` in
``A_{0,2r}``, where ``g^-r`` inverts the chain ``g_0 g_2 ... g_{2r-2}``.
Multiplication moves a numerator past a denominator with the conjugation
``phi`` determined by ``a g_j = g_i phi(a)``.

Also here: the associated graded dimensions of the level filtration, the
normal-element decision procedure for non-algebraic instances, the ideal
window used by the simplicity probe, and the center probe.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import count
from weakref import WeakKeyDictionary

from flint import fmpq

from .field_tower import Algebraicity
from .indexed_tensor import pattern_word
from .linalg import EchelonBasis
from .sym_algebra import (
    NotDivisible,
    SymElement,
    g_product_columns,
    conjugate_by_g,
    conjugate_by_g_inverse,
    g_bar,
    g_chain,
    right_divide_by_g,
    slot_degree,
    span_rank,
    sym_basis,
    sym_mul,
)

__all__ = [
    "LocElement",
    "loc_canonicalize",
    "loc_add",
    "loc_sub",
    "loc_mul",
    "loc_one",
    "loc_scalar",
    "loc_from_g_inverse",
    "raise_level",
    "filtration_dims",
    "filtration_spans_agree",
    "IsScalarTimesGChain",
    "Witness",
    "normal_element_test",
    "verify_witness",
    "IdealWindow",
    "ReachedGPower",
    "Inconclusive",
    "ideal_saturation_probe",
    "CenterReport",
    "center_probe",
]


class LocElement:
    """``numerator * g^-level`` with the numerator in ``A_{0,2*level}``."""

    __slots__ = ("level", "numerator")

    def __init__(self, level, numerator):
        if level < 0:
            raise ValueError("level must be nonnegative")
        if (numerator.start, numerator.end) != (0, 2 * level):
            raise ValueError(f"numerator must lie in A_(0,{2 * level})")
        self.level = level
        self.numerator = numerator

    @property
    def instance(self):
        return self.numerator.instance

    def __eq__(self, other):
        if not isinstance(other, LocElement):
            return NotImplemented
        top = max(self.level, other.level)
        return raise_level(self, top).numerator == raise_level(other, top).numerator

    def __hash__(self):
        c = loc_canonicalize(self)
        return hash((c.level, c.numerator))

    def __add__(self, other):
        return loc_add(self, other)

    def __sub__(self, other):
        return loc_sub(self, other)

    def __mul__(self, other):
        return loc_mul(self, other)

    def __neg__(self):
        return LocElement(self.level, -self.numerator)

    def is_zero(self):
        return self.numerator.is_zero()

    def __repr__(self):
        return f"LocElement(level={self.level}, numerator={self.numerator!r})"

    def to_json(self):
        return {"level": self.level, "numerator": [str(x) for x in self.numerator.slots]}


def loc_one(instance):
    return LocElement(0, SymElement(instance, 0, 0, [instance.one()]))


def loc_scalar(instance, k):
    return LocElement(0, SymElement(instance, 0, 0, [k]))


def loc_from_g_inverse(instance, numerator):
    """``numerator * g^-level`` for a numerator in ``A_{0,2*level}``."""
    return LocElement(numerator.end // 2, numerator)


def raise_level(x, level):
    """Same element rewritten with denominator ``g^-level``."""
    if level < x.level:
        raise ValueError("cannot lower the level this way; use loc_canonicalize")
    a = x.numerator
    inst = a.instance
    for r in range(x.level, level):
        a = sym_mul(a, g_bar(inst, 2 * r))
    return LocElement(level, a)


def loc_canonicalize(x):
    """Minimal-level representative, by stripping right factors of ``g``."""
    a, r = x.numerator, x.level
    while r > 0:
        y = right_divide_by_g(0, a)
        if isinstance(y, NotDivisible):
            break
        a, r = y, r - 1
    return LocElement(r, a)


def loc_add(x, y):
    top = max(x.level, y.level)
    s = raise_level(x, top).numerator + raise_level(y, top).numerator
    return loc_canonicalize(LocElement(top, s))


def loc_sub(x, y):
    return loc_add(x, -y)


def conjugate_power(b, r):
    """``phi^r(b)``: the element with ``b g-chain = g-chain phi^r(b)``."""
    for _ in range(r):
        b = conjugate_by_g(b)
    return b


def loc_mul(x, y, canonical=True):
    """``(a g^-r)(b g^-s) = a phi^r(b) g^-(r+s)``."""
    moved = conjugate_power(y.numerator, x.level)
    out = LocElement(x.level + y.level, sym_mul(x.numerator, moved))
    return loc_canonicalize(out) if canonical else out


# ---------------------------------------------------------------------------
# filtration


def filtration_dims(instance, top_level):
    """``dim_{K_0}`` of the pieces ``Lambda^n / Lambda^(n-1)`` for ``n <= top_level``."""
    if top_level < 0:
        raise ValueError("level must be nonnegative")
    dims = [1]
    for n in range(1, top_level + 1):
        previous = [sym_mul(b, g_bar(instance, 2 * n - 2)) for b in sym_basis(instance, 0, 2 * n - 2)]
        dims.append((2 * n + 1) - span_rank(previous))
    return dims


def _level_basis(instance, level):
    return [LocElement(level, b) for b in sym_basis(instance, 0, 2 * level)]


def filtration_spans_agree(instance, level):
    """Whether ``Lambda^i Lambda^1`` and ``Lambda^1 Lambda^i`` both equal ``Lambda^(i+1)``."""
    target = 2 * level + 3
    ones = _level_basis(instance, 1)
    lower = _level_basis(instance, level)
    right = [loc_mul(x, y, canonical=False).numerator for x in lower for y in ones]
    left = [loc_mul(y, x, canonical=False).numerator for x in lower for y in ones]
    return span_rank(right) == target and span_rank(left) == target


# ---------------------------------------------------------------------------
# normal elements


@dataclass(frozen=True)
class IsScalarTimesGChain:
    scalar: object


@dataclass(frozen=True)
class Witness:
    """``b`` in ``K_i`` such that no ``c`` in ``K_{i+delta}`` gives ``b x = x c``."""

    b: object
    forced: object
    reason: str


def _top_twist(instance, start, degree):
    if degree < 2:
        return instance.field.identity_automorphism()
    return instance.automorphism(pattern_word(start, degree, (1 << (degree - 1)) - 1))


def verify_witness(x, b):
    """Re-check a witness; returns ``(holds, forced, reason)``.

    Comparing the first nonzero slot of ``x c`` and ``b x`` forces
    ``c = tau-bar(b)``.  The witness holds when that forced value leaves
    ``K_{i+delta}`` or fails the full equation.
    """
    inst, i = x.instance, x.start
    slots = x.nonzero_slots()
    if not slots:
        return False, None, "zero element"
    m0 = slots[0]
    forced = _top_twist(inst, i, slot_degree(x.degree, m0))(b)
    if not inst.is_in_subfield(x.end, forced):
        return True, forced, f"forced right scalar leaves K_{x.end % 2}"
    right = sym_mul(x, SymElement(inst, x.end, x.end, [forced]))
    left = x.scale(b)
    if right != left:
        return True, forced, "forced right scalar fails on another slot"
    return False, forced, "commutes"


def _witness_candidates(instance, i):
    w2 = instance.anti_invariant(i) ** 2
    c = instance.subfield_generator(i)
    return [w2, c, w2 + 1, c + 1, w2 * w2, c * c + c]


def normal_element_test(x):
    """Decide whether ``x`` is a scalar times a g-chain, else return a witness."""
    inst = x.instance
    if inst.classify_algebraic() is not Algebraicity.NON_ALGEBRAIC:
        raise ValueError("normal_element_test requires a non-algebraic instance")
    if x.degree % 2:
        raise ValueError("normal elements have even degree")
    slots = x.nonzero_slots()
    if not slots:
        return IsScalarTimesGChain(inst.zero())
    if slots == [0]:
        c = x.slots[0]
        if g_chain(inst, x.start, x.degree // 2).scale(c) != x:
            raise AssertionError("slot 0 failed to match the g-chain")
        return IsScalarTimesGChain(c)
    for b in _witness_candidates(inst, x.start):
        holds, forced, reason = verify_witness(x, b)
        if holds:
            return Witness(b, forced, reason)
    raise ArithmeticError("no witness among the candidate scalars")


# ---------------------------------------------------------------------------
# ideal windows


class _ActionTables:
    """Coordinates of basis products with degree-0 and degree-1 elements."""

    def __init__(self, instance):
        self.instance = instance
        self._right = {}
        self._left = {}

    def right(self, a, b, kind):
        key = (a % 2, b - a, kind)
        cols = self._right.get(key)
        if cols is None:
            inst = self.instance
            p = a % 2
            q = p + (b - a)
            if kind == "scalar":
                u = SymElement(inst, q, q, [inst.subfield_generator(q)])
            else:
                u = SymElement(inst, q, q + 1, [inst.one() if kind == "one" else inst.anti_invariant(q)])
            cols = [sym_mul(e, u).coordinate_vector() for e in sym_basis(inst, p, q)]
            self._right[key] = cols
        return cols

    def left(self, a, b):
        key = (a % 2, b - a)
        pair = self._left.get(key)
        if pair is None:
            inst = self.instance
            p = a % 2 + 2
            q = p + (b - a)
            one = SymElement(inst, p - 1, p, [inst.one()])
            w = SymElement(inst, p - 1, p, [inst.anti_invariant(p - 1)])
            basis = sym_basis(inst, p, q)
            pair = ([sym_mul(one, e).coordinate_vector() for e in basis],
                    [sym_mul(w, e).coordinate_vector() for e in basis])
            self._left[key] = pair
        return pair


_TABLES = WeakKeyDictionary()


def _tables(instance):
    t = _TABLES.get(instance)
    if t is None:
        t = _ActionTables(instance)
        _TABLES[instance] = t
    return t


def _combine(coords, columns):
    out = {}
    for k, c in coords.items():
        for col, x in columns[k].items():
            y = out.get(col)
            y = c * x if y is None else y + c * x
            if y:
                out[col] = y
            else:
                out.pop(col, None)
    return out


class IdealWindow:
    """Finite window of a two-sided ideal of ``A``.

    Pieces ``J_ab`` are kept for ``min_start <= a <= max_start`` and
    ``b - a <= degree_bound`` as row-reduced left ``K_a``-spans.  Closure
    multiplies by the degree-1 basis ``1, w`` on both sides and by a
    generator of the right scalar field, which together generate ``A``.
    """

    def __init__(self, instance, min_start, max_start, degree_bound):
        self.instance = instance
        self.min_start = min_start
        self.max_start = max_start
        self.degree_bound = degree_bound
        self.pieces = {}
        self._queue = []
        self._order = count()
        self._tables = _tables(instance)

    def _inside(self, a, b):
        return self.min_start <= a <= self.max_start and 0 <= b - a <= self.degree_bound

    def piece(self, a, b):
        return self.pieces.setdefault((a, b), EchelonBasis())

    def dimension(self, a, b):
        p = self.pieces.get((a, b))
        return p.rank if p else 0

    def add_vector(self, a, b, coords):
        if not self._inside(a, b) or not coords:
            return False
        if self.piece(a, b).add(coords):
            heapq.heappush(self._queue, (b - a, next(self._order), a, b, coords))
            return True
        return False

    def add(self, element):
        return self.add_vector(element.start, element.end, element.coordinate_vector())

    def contains(self, element):
        p = self.pieces.get((element.start, element.end))
        coords = element.coordinate_vector()
        if not coords:
            return True
        return p is not None and p.contains(coords)

    def close(self, through_degree=None):
        """Close under the generating actions; returns the number of new vectors.

        Work is done in order of degree, and every action keeps or raises
        degree, so after ``close(d)`` the pieces of degree at most ``d`` are
        final until new vectors arrive from outside.
        """
        inst = self.instance
        added = 0
        while self._queue and (through_degree is None or self._queue[0][0] <= through_degree):
            _, _, a, b, v = heapq.heappop(self._queue)
            tables = self._tables
            added += self.add_vector(a, b, _combine(v, tables.right(a, b, "scalar")))
            if self._inside(a, b + 1):
                added += self.add_vector(a, b + 1, _combine(v, tables.right(a, b, "one")))
                added += self.add_vector(a, b + 1, _combine(v, tables.right(a, b, "w")))
            if self._inside(a - 1, b):
                ones, ws = tables.left(a, b)
                for u in (inst.one(), inst.anti_invariant(a - 1)):
                    out = {}
                    for k, c in v.items():
                        c0, c1 = inst.decompose_over_subfield(a - 1, u * c)
                        for coeff, cols in ((c0, ones), (c1, ws)):
                            if coeff:
                                for col, x in cols[k].items():
                                    y = out.get(col)
                                    y = coeff * x if y is None else y + coeff * x
                                    if y:
                                        out[col] = y
                                    else:
                                        out.pop(col, None)
                    added += self.add_vector(a - 1, b, out)
        return added

    def elements(self, a, b):
        p = self.pieces.get((a, b))
        if p is None:
            return []
        return [SymElement.from_coordinates(self.instance, a, b, row) for row in p.rows.values()]

    def saturate_once(self):
        """Add the g-quotients of every piece; returns the number of new vectors.

        The new vectors are queued; call :meth:`close` afterwards.

        ``g`` commutes with left scalars, so preimage coefficients are
        already coordinates of the quotient.
        """
        quotients = []
        for (a, b), piece in sorted(self.pieces.items()):
            if b - a < 2 or piece.rank == 0:
                continue
            for coords in _preimage(piece, g_product_columns(self.instance, "right", a, b)):
                quotients.append((a, b - 2, coords))
            for coords in _preimage(piece, g_product_columns(self.instance, "left", a, b)):
                quotients.append((a + 2, b, coords))
        # all quotients are taken from the same snapshot, so one pass divides once
        return sum(self.add_vector(a, b, coords) for a, b, coords in quotients)


def _preimage(piece, images):
    """Coefficient vectors ``l`` with ``sum l_k images_k`` inside ``piece``."""
    if not images:
        return []
    width = 1 + max([c for r in piece.rows.values() for c in r] +
                    [c for v in images for c in v] + [0])
    combined = EchelonBasis()
    combined.extend(piece.rows.values())
    for k, img in enumerate(images):
        aug = dict(img)
        aug[width + k] = 1
        combined.add(aug)
    return [{col - width: lam for col, lam in row.items()}
            for p, row in combined.rows.items() if p >= width]


@dataclass(frozen=True)
class ReachedGPower:
    k: int
    start: int
    passes: int


@dataclass(frozen=True)
class Inconclusive:
    depth: int
    level_bound: int
    passes: int


def conjugate_family(x, depth):
    """``x`` at start 0 together with ``psi^d(x)`` at starts ``-2d``."""
    family = [x]
    for _ in range(depth):
        family.append(conjugate_by_g_inverse(family[-1]))
    return family


def _close_and_search(window, level_bound):
    """Finish closure degree by degree; return the first ``(k, start)`` found."""
    inst = window.instance
    for k in range(1, level_bound + 1):
        window.close(2 * k)
        for a in range(window.max_start, window.min_start - 1, -1):
            if window.contains(g_chain(inst, a, k)):
                return k, a
    window.close()
    return None


def ideal_saturation_probe(x, depth=4, level_bound=6, max_passes=None):
    """Look for a g-chain in the g-saturated ideal generated by ``x`` and its conjugates.

    The window keeps starts ``-2*depth .. 0`` and degrees up to
    ``2*level_bound``.  A :class:`ReachedGPower` verdict certifies that the
    localized ideal contains a unit; otherwise the probe is inconclusive.
    Returns the verdict together with the window.
    """
    if x.is_zero():
        raise ValueError("the probe needs a nonzero element")
    if (x.start, x.end) != (0, 2):
        raise ValueError("the probe expects an element of A_(0,2)")
    window = IdealWindow(x.instance, -2 * depth, 0, 2 * level_bound)
    for member in conjugate_family(x, depth):
        window.add(member)
    limit = 2 * level_bound if max_passes is None else max_passes
    passes = 0
    while True:
        found = _close_and_search(window, level_bound)
        if found is not None:
            return ReachedGPower(found[0], found[1], passes), window
        if passes >= limit or not window.saturate_once():
            return Inconclusive(depth, level_bound, passes), window
        passes += 1


# ---------------------------------------------------------------------------
# center


@dataclass
class CenterReport:
    level: int
    dimension_over_rationals: int
    basis: list = field(default_factory=list)
    contains_common_subfield: bool = False


def _rational_coords(instance, x):
    return x.coordinates()


def _loc_rational_vector(inst, x, level):
    out = {}
    pos = 0
    for coord in raise_level(x, level).numerator.coordinates():
        for q in _rational_coords(inst, coord):
            if q:
                out[pos] = q
            pos += 1
    return out


def center_probe(instance, level):
    """Rational basis of the elements of ``Lambda^level`` commuting with generators.

    The generators are a generator of ``K_0`` and a ``K_0``-basis of
    ``Lambda^1``; these generate ``Lambda_00`` as a ring.
    """
    if not instance.finite_dimensional:
        raise ValueError("the center probe needs an instance of finite degree over Q")
    if level < 0:
        raise ValueError("level must be nonnegative")
    c0 = instance.subfield_generator(0)
    half = instance.degree // 2
    rational_basis = [c0 ** e for e in range(half)]
    generators = [loc_scalar(instance, c0)] + _level_basis(instance, 1)
    unknowns = []
    for e in sym_basis(instance, 0, 2 * level):
        for q in rational_basis:
            unknowns.append(LocElement(level, e.scale(q)))
    compare_level = level + 1
    kernel = EchelonBasis()
    width = 10 ** 9
    for k, z in enumerate(unknowns):
        vec = {}
        offset = 0
        for v in generators:
            comm = loc_sub(loc_mul(z, v, canonical=False), loc_mul(v, z, canonical=False))
            part = _loc_rational_vector(instance, comm, compare_level)
            for col, q in part.items():
                vec[offset + col] = q
            offset += instance.degree * (2 * compare_level + 1)
        vec[width + k] = fmpq(1)
        kernel.add(vec)
    solutions = []
    for p, row in kernel.rows.items():
        if p >= width:
            total = None
            for col, lam in row.items():
                term = unknowns[col - width].numerator.scale(instance.scalar(lam))
                total = term if total is None else total + term
            solutions.append(LocElement(level, total))
    report = CenterReport(level, len(solutions), solutions)
    span = EchelonBasis()
    for s in solutions:
        span.add(_loc_rational_vector(instance, s, level))
    report.contains_common_subfield = all(
        span.contains(_loc_rational_vector(instance, loc_scalar(instance, c), level))
        for c in instance.common_subfield_basis or [])
    return report
