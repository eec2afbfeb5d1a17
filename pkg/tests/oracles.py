"""Slow, direct re-implementations used as second opinions in the tests.

Nothing here reuses the pattern caches, the incremental echelon bookkeeping
of the relation spaces, or the closed-form products of the package.
"""

from __future__ import annotations

from itertools import combinations, product

from ncline.field_tower import AutomorphismWord
from ncline.indexed_tensor import TensorElement, basis_over_start, coordinate_vector, h_prime, scalar, star_mul
from ncline.linalg import EchelonBasis, solve
from ncline.sym_algebra import SymElement, project, section, slot_lift


def word_for(start, choices):
    """Automorphism word of an explicit choice list (``True`` = take the involution)."""
    letters = tuple((start + 1 + k) % 2 for k, flip in enumerate(choices) if flip)
    return AutomorphismWord(letters)


def naive_mu(instance, start, factors):
    """Componentwise definition: product of prefix-twisted factors, per pattern."""
    n = len(factors)
    out = {}
    for choices in product((False, True), repeat=n - 1):
        value = factors[0]
        for k in range(1, n):
            value = value * instance.eval_word(word_for(start, choices[:k]), factors[k])
        bits = sum(1 << k for k, flip in enumerate(choices) if flip)
        out[bits] = value
    return TensorElement(instance, start, start + n, out)


def naive_star(a, b):
    """Product straight from the twisted concatenation rule, one pair at a time."""
    inst = a.instance
    if a.degree == 0:
        return b.scale(a.components.get(0, inst.zero()))
    na = a.degree
    choices_of = lambda bits, size: [bool(bits >> k & 1) for k in range(size)]  # noqa: E731
    out = {}
    for p, x in a.components.items():
        bar = word_for(a.start, choices_of(p, na - 1))
        if b.degree == 0:
            out[p] = out.get(p, inst.zero()) + x * inst.eval_word(bar, b.components[0])
            continue
        for q, y in b.components.items():
            for flip in (0, 1):
                letters = bar.letters + ((a.end % 2,) if flip else ())
                pattern = p | (flip << (na - 1)) | (q << na)
                out[pattern] = out.get(pattern, inst.zero()) + x * inst.eval_word(AutomorphismWord(letters), y)
    return TensorElement(inst, a.start, b.end, out)


def relation_piece_basis(instance, i, j, l):
    """Spanning set of the l-th relation piece, built with :func:`naive_star`."""
    vectors = []
    middle = h_prime(instance, l)
    for right in basis_over_start(instance, l + 2, j):
        mid_right = naive_star(middle, right)
        for left in basis_over_start(instance, i, l):
            vectors.append(coordinate_vector(naive_star(left, mid_right)))
    return vectors


def reduced_basis(vectors):
    echelon = EchelonBasis()
    echelon.extend(vectors)
    return list(echelon.rows.values())


def kernel_dimension(vectors):
    """Dimension of the space of linear relations among ``vectors``."""
    width = 1 + max([c for v in vectors for c in v] + [0])
    echelon = EchelonBasis()
    for k, v in enumerate(vectors):
        aug = dict(v)
        aug[width + k] = 1
        echelon.add(aug)
    return sum(1 for p in echelon.rows if p >= width)


def brute_intersection_dim(instance, i, j, l, l2):
    """``dim (U cap V)`` as the kernel of ``[basis U | basis V]``."""
    u = reduced_basis(relation_piece_basis(instance, i, j, l))
    v = reduced_basis(relation_piece_basis(instance, i, j, l2))
    return kernel_dimension(u + v)


def independent_relation_basis(instance, i, j):
    """Relation basis assembled in reverse piece order."""
    vectors = []
    for l in range(j - 2, i - 1, -1):
        vectors.extend(relation_piece_basis(instance, i, j, l))
    return reduced_basis(vectors)


def brute_project(t):
    """Normal form of ``t`` by one solve against relations plus closed-form slot lifts."""
    inst, i, j = t.instance, t.start, t.end
    n = j - i
    lifts = []
    for e in _unit_slots(inst, i, j):
        m, value = e
        lifts.append(coordinate_vector(slot_lift(inst, i, j, m, value)))
    relations = independent_relation_basis(inst, i, j) if n >= 2 else []
    coeffs = solve(lifts + relations, coordinate_vector(t))
    if coeffs is None:
        raise AssertionError("relations and lifts do not span")
    return SymElement.from_coordinates(inst, i, j, coeffs[:len(lifts)])


def _unit_slots(instance, i, j):
    n = j - i
    out = []
    for m in range(n // 2 + 1):
        out.append((m, instance.one()))
        if not (m == 0 and n % 2 == 0):
            out.append((m, instance.anti_invariant(i)))
    return out


def eulerian_by_strings(n):
    """Inclusion-exclusion over binary strings with nonconsecutive ones, counted by enumeration."""
    total = 0
    for m in range(1, n // 2 + 1):
        strings = sum(1 for ones in combinations(range(n - 1), m)
                      if all(b - a > 1 for a, b in zip(ones, ones[1:])))
        total += (-1) ** (m - 1) * strings * 2 ** (n - 2 * m)
    return total


def witness_by_tensor_product(x, b):
    """No right scalar c in K_end makes b x = x c; checked through the tensor product."""
    inst = x.instance
    slots = x.nonzero_slots()
    candidates = set()
    for m in slots:
        degree = x.degree % 2 + 2 * m
        if degree == 0:
            candidates.add(b)
            continue
        # the twist of the top pattern is an alternating palindrome, so it is its own inverse
        word_letters = tuple((x.start + 1 + k) % 2 for k in range(degree - 1))
        candidates.add(inst.eval_word(AutomorphismWord(word_letters), b))
    for c in candidates:
        if not inst.is_in_subfield(x.end, c):
            continue
        right = project(star_mul(section(x), scalar(inst, x.end, c)))
        if right == x.scale(b):
            return False
    return True
