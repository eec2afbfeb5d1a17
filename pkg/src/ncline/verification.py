"""Randomized property suites, one per algebra layer, run by ``ncline verify``.

Each suite is a list of named checks.  A check returns ``True`` on success,
or a string describing the failure; exceptions count as failures.  All
randomness comes from one seeded :class:`random.Random` per suite.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .field_tower import Algebraicity, CertifiedInfinite, Finite
from .indexed_tensor import (
    TensorElement,
    coordinate_vector,
    from_coords,
    g_prime,
    h_prime,
    mu,
    mu_by_merge_order,
    product_span_dim,
    star_mul,
)
from .linalg import EchelonBasis
from .localization import (
    IdealWindow,
    IsScalarTimesGChain,
    LocElement,
    Witness,
    filtration_dims,
    filtration_spans_agree,
    loc_canonicalize,
    loc_mul,
    loc_one,
    normal_element_test,
    verify_witness,
)
from .sym_algebra import (
    SymElement,
    check_g_normality,
    conjugate_by_g,
    g_chain,
    project,
    quotient_B_dim,
    relation_space,
    section,
    sym_basis,
    sym_mul,
)

SUITE_ORDER = ("field_tower", "indexed_tensor", "sym_algebra", "localization")


# ---------------------------------------------------------------------------
# samplers


def random_pure_tensor(instance, rng, length):
    return [instance.random_nonzero(rng, height=2) for _ in range(length)]


def random_tensor(instance, rng, start, end):
    if end == start:
        return TensorElement(instance, start, start, {0: instance.random_subfield_element(start, rng, height=2)})
    size = 1 << (end - start - 1)
    return TensorElement(instance, start, end, {p: instance.random_element(rng, height=2) for p in range(size)})


def random_sym(instance, rng, start, end):
    coords = [instance.random_subfield_element(start, rng, height=2) for _ in range(end - start + 1)]
    return SymElement.from_coordinates(instance, start, end, coords)


def random_loc(instance, rng, level):
    return LocElement(level, random_sym(instance, rng, 0, 2 * level))


def random_levels(rng, count, top, total):
    while True:
        levels = [rng.randint(0, top) for _ in range(count)]
        if sum(levels) <= total:
            return levels


# ---------------------------------------------------------------------------
# suites


def _field_tower_checks(inst, nmax, rng):
    def axioms():
        failures = inst.check_axioms(rng, samples=12)
        return True if not failures else "; ".join(failures)

    def trace_properties():
        for i in (0, 1):
            for _ in range(10):
                x, y = inst.random_element(rng), inst.random_element(rng)
                k = inst.random_subfield_element(i, rng)
                if inst.trace(i, k * x + y) != k * inst.trace(i, x) + inst.trace(i, y):
                    return f"trace_{i} is not K_{i}-linear"
                if inst.trace(i, inst.trace(i, x)) != inst.trace(i, x):
                    return f"trace_{i} is not idempotent"
        return True

    def decompose_round_trip():
        for i in (0, 1):
            w = inst.anti_invariant(i)
            for _ in range(10):
                x = inst.random_element(rng)
                c0, c1 = inst.decompose_over_subfield(i, x)
                if not (inst.is_in_subfield(i, c0) and inst.is_in_subfield(i, c1)) or c0 + c1 * w != x:
                    return f"decomposition over K_{i} fails on {x}"
        return True

    def common_subfield():
        for c in inst.common_subfield_basis or ():
            if not (inst.is_in_subfield(0, c) and inst.is_in_subfield(1, c)):
                return f"{c} is not fixed by both involutions"
        return True

    def dichotomy_evidence():
        order = inst.sigma_order(64)
        label = inst.classify_algebraic()
        if isinstance(order, Finite):
            return True if label is Algebraicity.ALGEBRAIC else "finite sigma order but not algebraic"
        if isinstance(order, CertifiedInfinite):
            return True if label is Algebraicity.NON_ALGEBRAIC else "infinite sigma order but not non-algebraic"
        return True if label is Algebraicity.UNKNOWN else "bound exceeded but a verdict was given"

    return [axioms, trace_properties, decompose_round_trip, common_subfield, dichotomy_evidence]


def _indexed_tensor_checks(inst, nmax, rng):
    def merge_order_invariance():
        for _ in range(20):
            n = rng.randint(2, 6)
            start = rng.randint(-3, 3)
            xs = random_pure_tensor(inst, rng, n)
            order = list(range(1, n))
            rng.shuffle(order)
            if mu_by_merge_order(inst, start, xs, order) != mu(inst, start, xs):
                return f"merge order {order} disagrees at start {start}"
        return True

    def multiplicative():
        for _ in range(20):
            n1, n2 = rng.randint(1, 4), rng.randint(1, 4)
            start = rng.randint(-3, 3)
            xs, ys = random_pure_tensor(inst, rng, n1), random_pure_tensor(inst, rng, n2)
            if star_mul(mu(inst, start, xs), mu(inst, start + n1, ys)) != mu(inst, start, xs + ys):
                return f"mu fails to be multiplicative for degrees {n1}, {n2}"
        return True

    def bijective():
        for start in (0, 1):
            for n in range(1, min(nmax, 6) + 1):
                choices = [(inst.one(), inst.anti_invariant(start + k)) for k in range(n)]
                span = EchelonBasis()
                for factors in itertools.product(*choices):
                    span.add(coordinate_vector(mu(inst, start, factors)))
                if span.rank != 1 << n:
                    return f"mu image has rank {span.rank} in degree {n}"
        return True

    def associative_and_bilinear():
        for _ in range(10):
            i = rng.randint(-2, 2)
            j = i + rng.randint(0, 3)
            k = j + rng.randint(0, 3)
            l = k + rng.randint(0, 3)
            a, b, c = random_tensor(inst, rng, i, j), random_tensor(inst, rng, j, k), random_tensor(inst, rng, k, l)
            if star_mul(star_mul(a, b), c) != star_mul(a, star_mul(b, c)):
                return "star product is not associative"
            b2 = random_tensor(inst, rng, j, k)
            if star_mul(a, b + b2) != star_mul(a, b) + star_mul(a, b2):
                return "star product is not additive"
            s = inst.random_subfield_element(i, rng)
            if star_mul(a.scale(s), b) != star_mul(a, b).scale(s):
                return "star product is not left-linear"
        return True

    def relation_generators():
        for l in (-1, 0, 1, 2):
            one, w = inst.one(), inst.anti_invariant(l + 1)
            h = mu(inst, l, [one, one]) + mu(inst, l, [w ** -1, w])
            g = mu(inst, l, [w, one]) + mu(inst, l, [one, w])
            if h != h_prime(inst, l):
                return f"h_{l} maps to {h}"
            if g != g_prime(inst, l):
                return f"g_{l} maps to {g}"
        return True

    def product_spans():
        for start in (0, 1):
            for n in range(2, min(nmax, 6) + 1):
                for l in range(start, start + n - 1):
                    d = product_span_dim(inst, start, start + n, l)
                    if d != 1 << (n - 1):
                        return f"span dimension {d} for n={n}, l={l}"
        return True

    return [merge_order_invariance, multiplicative, bijective, associative_and_bilinear, relation_generators,
            product_spans]


def _sym_algebra_checks(inst, nmax, rng):
    def hilbert_functions():
        for start in (0, 1):
            for n in range(0, nmax + 1):
                dim_r = relation_space(inst, start, start + n).dimension if n >= 2 else 0
                dim_a = (1 << n) - dim_r
                if (dim_a, dim_r) != (n + 1, (1 << n) - n - 1):
                    return f"degree {n}, start {start}: dim A = {dim_a}, dim R = {dim_r}"
        return True

    def splitting():
        for start in (0, 1):
            for n in range(2, min(nmax, 8) + 1):
                span = EchelonBasis()
                span.extend(relation_space(inst, start, start + n).echelon.rows.values())
                for e in sym_basis(inst, start, start + n):
                    span.add(coordinate_vector(section(e)))
                if span.rank != 1 << n:
                    return f"relations plus section do not span degree {n}"
        return True

    def projection_inverts_section():
        for start in (0, 1):
            for n in range(0, min(nmax, 8) + 1):
                for e in sym_basis(inst, start, start + n):
                    if project(section(e)) != e:
                        return f"project(section(e)) != e in degree {n}"
        return True

    def associativity():
        for _ in range(100):
            i = rng.randint(-2, 2)
            cuts = sorted(rng.randint(0, rng.randint(0, nmax)) for _ in range(2))
            top = max(cuts[1], rng.randint(cuts[1], nmax))
            degrees = [cuts[0], cuts[1] - cuts[0], top - cuts[1]]
            j = i + degrees[0]
            k = j + degrees[1]
            l = k + degrees[2]
            a, b, c = random_sym(inst, rng, i, j), random_sym(inst, rng, j, k), random_sym(inst, rng, k, l)
            if sym_mul(sym_mul(a, b), c) != sym_mul(a, sym_mul(b, c)):
                return f"associativity fails for degrees {degrees}"
        return True

    def g_normality():
        for start in (0, 1):
            for n in range(0, nmax - 1):
                if not check_g_normality(inst, start, start + n):
                    return f"g is not normal on the window ({start}, {start + n})"
        return True

    def relations_form_ideal():
        for _ in range(10):
            i = rng.randint(-1, 1)
            n = rng.randint(2, min(nmax, 6) - 1)
            rel = relation_space(inst, i, i + n)
            rows = list(rel.echelon.rows.values())
            if not rows:
                continue
            coeffs = [inst.random_subfield_element(i, rng) for _ in rows[:4]]
            r = sum((from_coords(inst, i, i + n, row).scale(c) for c, row in zip(coeffs, rows[:4])),
                    TensorElement(inst, i, i + n))
            left = random_tensor(inst, rng, i - 1, i)
            right = random_tensor(inst, rng, i + n, i + n + 1)
            if not relation_space(inst, i - 1, i + n).contains(star_mul(left, r)):
                return "left multiple of a relation leaves the relation space"
            if not relation_space(inst, i, i + n + 1).contains(star_mul(r, right)):
                return "right multiple of a relation leaves the relation space"
        return True

    def conjugation_is_homomorphism():
        for _ in range(10):
            i = rng.randint(-2, 2)
            d1, d2 = rng.randint(0, 2), rng.randint(0, 2)
            a, b = random_sym(inst, rng, i, i + d1), random_sym(inst, rng, i + d1, i + d1 + d2)
            a2 = random_sym(inst, rng, i, i + d1)
            if conjugate_by_g(a + a2) != conjugate_by_g(a) + conjugate_by_g(a2):
                return "conjugation is not additive"
            if conjugate_by_g(sym_mul(a, b)) != sym_mul(conjugate_by_g(a), conjugate_by_g(b)):
                return "conjugation is not multiplicative"
        return True

    def point_quotient_series():
        for start in (0, 1):
            dims = [quotient_B_dim(inst, start, n) for n in range(0, nmax + 1)]
            if dims != [1] + [2] * nmax:
                return f"quotient dimensions {dims}"
        return True

    return [hilbert_functions, splitting, projection_inverts_section, associativity, g_normality,
            relations_form_ideal, conjugation_is_homomorphism, point_quotient_series]


def _localization_checks(inst, nmax, rng):
    total_level = max(nmax // 2, 1)

    def ring_axioms():
        for _ in range(100):
            r1, r2, r3 = random_levels(rng, 3, 3, total_level)
            x, y, z = random_loc(inst, rng, r1), random_loc(inst, rng, r2), random_loc(inst, rng, r3)
            if loc_mul(loc_mul(x, y), z) != loc_mul(x, loc_mul(y, z)):
                return f"associativity fails at levels {(r1, r2, r3)}"
            y2 = random_loc(inst, rng, r2)
            if loc_mul(x, y + y2) != loc_mul(x, y) + loc_mul(x, y2):
                return "left distributivity fails"
            if loc_mul(y + y2, z) != loc_mul(y, z) + loc_mul(y2, z):
                return "right distributivity fails"
            if loc_mul(loc_one(inst), x) != x or loc_mul(x, loc_one(inst)) != x:
                return "unit law fails"
        return True

    def canonical_forms():
        for _ in range(20):
            r, s = random_levels(rng, 2, 3, total_level)
            a = random_sym(inst, rng, 0, 2 * r)
            chain = g_chain(inst, 2 * r, s)
            built = LocElement(r + s, sym_mul(a, chain))
            direct = loc_canonicalize(LocElement(r, a))
            c = loc_canonicalize(built)
            if (c.level, c.numerator) != (direct.level, direct.numerator):
                return f"two constructions canonicalize differently at levels {r}, {s}"
            if loc_canonicalize(c).numerator != c.numerator:
                return "canonicalization is not idempotent"
        return True

    def saturation():
        bound = min(nmax, 6)
        for power in range(1, bound // 2 + 1):
            windows = []
            for k in (power, power - 1):
                w = IdealWindow(inst, -2, 0, bound)
                for a in range(-2, 1):
                    w.add(g_chain(inst, a, k))
                w.close()
                windows.append(w)
            high, low = windows
            high.saturate_once()
            high.close()
            for a in range(-2, 1):
                for b in range(a, a + bound + 1):
                    if high.dimension(a, b) != low.dimension(a, b):
                        return f"dividing (g^{power}) by g misses piece ({a}, {b})"
        return True

    def filtration():
        top = max(nmax // 2, 1)
        dims = filtration_dims(inst, top)
        if dims != [1] + [2] * top:
            return f"filtration dimensions {dims}"
        for level in range(1, top):
            if not filtration_spans_agree(inst, level):
                return f"span equality fails at level {level}"
        return True

    def normal_elements():
        if inst.classify_algebraic() is not Algebraicity.NON_ALGEBRAIC:
            try:
                normal_element_test(g_chain(inst, 0, 1))
            except ValueError:
                return True
            return "normal_element_test accepted an algebraic instance"
        for _ in range(20):
            i, k = rng.randint(-1, 1), rng.randint(1, 2)
            c = inst.random_subfield_element(i, rng) or inst.one()
            verdict = normal_element_test(g_chain(inst, i, k).scale(c))
            if verdict != IsScalarTimesGChain(c):
                return f"scalar multiple of a g-chain not recognised: {verdict}"
        for _ in range(20):
            x = random_multi_slot(inst, rng)
            verdict = normal_element_test(x)
            if not isinstance(verdict, Witness) or not verify_witness(x, verdict.b)[0]:
                return f"no verified witness for {x}"
        return True

    return [ring_axioms, canonical_forms, saturation, filtration, normal_elements]


def random_multi_slot(inst, rng):
    """Even-degree element with at least two nonzero slots."""
    i = rng.randint(-1, 1)
    n = 2 * rng.randint(1, 3)
    while True:
        x = random_sym(inst, rng, i, i + n)
        if len(x.nonzero_slots()) >= 2:
            return x


_SUITES = {
    "field_tower": _field_tower_checks,
    "indexed_tensor": _indexed_tensor_checks,
    "sym_algebra": _sym_algebra_checks,
    "localization": _localization_checks,
}


@dataclass
class SuiteResult:
    name: str
    seed: int
    passed: list = field(default_factory=list)
    failed: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failed

    def to_json(self):
        return {
            "seed": self.seed,
            "passed": len(self.passed),
            "failed": len(self.failed),
            "checks": {**{n: "pass" for n in self.passed}, **self.failed},
        }


def run_suite(name, instance, nmax, seed):
    rng = random.Random(f"{seed}:{name}")
    result = SuiteResult(name, seed)
    began = time.perf_counter()
    for check in _SUITES[name](instance, nmax, rng):
        try:
            outcome = check()
        except Exception as exc:  # noqa: BLE001 - a crashing check is a failed check
            outcome = f"{type(exc).__name__}: {exc}"
        if outcome is True:
            result.passed.append(check.__name__)
        else:
            result.failed[check.__name__] = str(outcome)
    result.seconds = time.perf_counter() - began
    return result


def run_suites(instance, nmax, seed, names=SUITE_ORDER):
    return [run_suite(name, instance, nmax, seed) for name in names]
