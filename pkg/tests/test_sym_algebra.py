import pytest

from ncline.indexed_tensor import TensorElement, g_prime, h_prime, mu, scalar, star_mul, top_injection
from ncline.linalg import EchelonBasis
from ncline.sym_algebra import (
    NotDivisible,
    SymElement,
    check_g_normality,
    conjugate_by_g,
    conjugate_by_g_inverse,
    eulerian_check,
    g_bar,
    g_chain,
    intersection_dim,
    left_divide_by_g,
    project,
    quotient_B_dim,
    relation_space,
    right_divide_by_g,
    section,
    slot_lift,
    sym_basis,
    sym_mul,
    sym_unit,
)

from oracles import brute_intersection_dim, brute_project, eulerian_by_strings, independent_relation_basis


def random_sym(inst, rng, start, end):
    coords = [inst.random_subfield_element(start, rng, height=2) for _ in range(end - start + 1)]
    return SymElement.from_coordinates(inst, start, end, coords)


def random_pure(inst, rng, n):
    return [inst.random_nonzero(rng, height=2) for _ in range(n)]


def test_relation_space_examples(instance):
    r02 = relation_space(instance, 0, 2)
    assert r02.dimension == 1 and r02.contains(h_prime(instance, 0))
    assert not r02.contains(g_prime(instance, 0))
    assert relation_space(instance, 0, 4).dimension == 11
    assert relation_space(instance, 0, 3).dimension == 4


@pytest.mark.parametrize("start", [0, 1, -3])
def test_relation_dimensions(instance, start):
    for n in range(2, 8):
        assert relation_space(instance, start, start + n).dimension == 2 ** n - n - 1


def test_relation_space_agrees_with_independent_construction(instance):
    for start in (0, 1):
        for n in range(2, 6):
            ours = relation_space(instance, start, start + n).echelon
            theirs = independent_relation_basis(instance, start, start + n)
            assert len(theirs) == ours.rank
            assert all(ours.contains(v) for v in theirs)


def test_intersection_examples(instance):
    assert intersection_dim(instance, 0, 4, 0, 1) == 0
    assert intersection_dim(instance, 0, 4, 0, 2) == 1
    assert intersection_dim(instance, 0, 6, 0, 3) == 4


def test_intersection_matches_brute_force(instance):
    for start in (0, 1):
        for n in range(3, 6):
            for l in range(start, start + n - 1):
                for l2 in range(l + 1, start + n - 1):
                    assert intersection_dim(instance, start, start + n, l, l2) == \
                        brute_intersection_dim(instance, start, start + n, l, l2)


def test_eulerian_examples():
    assert eulerian_check(4) == (11, 11)
    assert eulerian_check(2) == (1, 1)
    assert eulerian_check(8) == (247, 247)
    for n in range(2, 15):
        lhs, rhs = eulerian_check(n)
        assert lhs == rhs == eulerian_by_strings(n)


def test_section_examples(instance):
    c = instance.subfield_generator(0)
    assert section(SymElement(instance, 0, 0, [c])) == scalar(instance, 0, c)
    w1 = instance.anti_invariant(1)
    assert section(SymElement(instance, 0, 2, [instance.one(), instance.zero()])).components == {0: 2 * w1}
    assert section(SymElement(instance, 0, 2, [instance.zero(), c])) == top_injection(instance, 0, 2, c)


def test_section_agrees_with_closed_form_lifts(instance, rng):
    for start in (0, 1, -1):
        for n in range(0, 7):
            for m in range(n // 2 + 1):
                value = instance.random_subfield_element(start, rng) if (m == 0 and n % 2 == 0) \
                    else instance.random_element(rng)
                slots = [instance.zero()] * (n // 2 + 1)
                slots[m] = value
                a = SymElement(instance, start, start + n, slots)
                assert section(a) == slot_lift(instance, start, start + n, m, value)


def test_projection_inverts_section(instance):
    for start in (0, 1, -3):
        for n in range(0, 8):
            for e in sym_basis(instance, start, start + n):
                assert project(section(e)) == e


def test_project_matches_independent_solve(instance, rng):
    for _ in range(6):
        start = rng.choice([0, 1])
        n = rng.randint(2, 5)
        t = mu(instance, start, random_pure(instance, rng, n))
        assert project(t) == brute_project(t)
    padded = star_mul(star_mul(mu(instance, 0, [instance.one()]), h_prime(instance, 1)),
                      mu(instance, 3, random_pure(instance, rng, 1)))
    assert project(padded).is_zero()


def test_splitting_is_invertible(instance):
    from ncline.indexed_tensor import coordinate_vector

    for start in (0, 1):
        for n in range(2, 7):
            span = EchelonBasis()
            span.extend(relation_space(instance, start, start + n).echelon.rows.values())
            for e in sym_basis(instance, start, start + n):
                span.add(coordinate_vector(section(e)))
            assert span.rank == 2 ** n


def test_products(instance, rng):
    a = random_sym(instance, rng, 0, 3)
    assert sym_mul(sym_unit(instance, 0), a) == a == sym_mul(a, sym_unit(instance, 3))
    assert sym_mul(g_bar(instance, 0), g_bar(instance, 2)) == project(star_mul(g_prime(instance, 0), g_prime(instance, 2)))
    with pytest.raises(ValueError):
        sym_mul(a, a)


def test_associativity_and_distributivity(instance, rng):
    for _ in range(25):
        i = rng.randint(-2, 2)
        d = [rng.randint(0, 3) for _ in range(3)]
        j, k = i + d[0], i + d[0] + d[1]
        l = k + d[2]
        a, b, c = random_sym(instance, rng, i, j), random_sym(instance, rng, j, k), random_sym(instance, rng, k, l)
        assert sym_mul(sym_mul(a, b), c) == sym_mul(a, sym_mul(b, c))
        b2 = random_sym(instance, rng, j, k)
        assert sym_mul(a, b + b2) == sym_mul(a, b) + sym_mul(a, b2)


def test_g_chain_examples(instance):
    assert g_chain(instance, 0, 0) == sym_unit(instance, 0)
    assert g_chain(instance, 1, 1) == project(g_prime(instance, 1))
    chain = g_chain(instance, 0, 2)
    expanded = project(star_mul(g_prime(instance, 0), g_prime(instance, 2)))
    assert chain == expanded and not chain.is_zero()
    assert chain.slots[-1] == 0 and instance.is_in_subfield(0, chain.slots[0])


def test_g_normality_windows(instance):
    assert check_g_normality(instance, 0, 0)
    assert check_g_normality(instance, 0, 1)
    assert check_g_normality(instance, 0, 3)
    for start in (0, 1):
        for n in range(0, 7):
            assert check_g_normality(instance, start, start + n)


def test_division_examples(instance, rng):
    for i in (0, 1, -2):
        y = random_sym(instance, rng, i + 2, i + 5)
        assert left_divide_by_g(i, sym_mul(g_bar(instance, i), y)) == y
        z = random_sym(instance, rng, i, i + 3)
        assert right_divide_by_g(i, sym_mul(z, g_bar(instance, i + 3))) == z
        assert left_divide_by_g(i, g_chain(instance, i, 2)) == g_chain(instance, i + 2, 1)
    top_only = SymElement(instance, 0, 2, [instance.zero(), instance.one()])
    assert isinstance(left_divide_by_g(0, top_only), NotDivisible)
    assert isinstance(right_divide_by_g(0, top_only), NotDivisible)


def test_point_quotient_dimensions(instance):
    assert quotient_B_dim(instance, 0, 0) == 1
    assert quotient_B_dim(instance, 0, 1) == 2
    assert quotient_B_dim(instance, 0, 5) == 2
    for start in (0, 1):
        assert [quotient_B_dim(instance, start, n) for n in range(8)] == [1] + [2] * 7


def test_point_quotient_by_left_multiplication(instance):
    # second route: the left ideal g A has the same image as A g
    for start in (0, 1):
        for n in range(2, 8):
            images = [sym_mul(g_bar(instance, start), e) for e in sym_basis(instance, start + 2, start + n)]
            span = EchelonBasis()
            for e in images:
                span.add(e.coordinate_vector())
            assert (n + 1) - span.rank == quotient_B_dim(instance, start, n)


def test_conjugation(instance, rng):
    assert conjugate_by_g(sym_unit(instance, 0)) == sym_unit(instance, 2)
    assert conjugate_by_g(g_bar(instance, 1)) == g_bar(instance, 3)
    for _ in range(6):
        i = rng.randint(-2, 2)
        a = random_sym(instance, rng, i, i + 1)
        phi = conjugate_by_g(a)
        assert sym_mul(g_bar(instance, i), phi) == sym_mul(a, g_bar(instance, i + 1))
        assert conjugate_by_g_inverse(phi) == a
        b = random_sym(instance, rng, i + 1, i + 3)
        assert conjugate_by_g(sym_mul(a, b)) == sym_mul(phi, conjugate_by_g(b))


def test_relations_form_two_sided_ideal(instance, rng):
    from ncline.indexed_tensor import from_coords

    for start in (0, 1):
        for n in (2, 3, 4):
            rows = list(relation_space(instance, start, start + n).echelon.rows.values())
            r = from_coords(instance, start, start + n, rows[rng.randrange(len(rows))])
            left = TensorElement(instance, start - 1, start, {0: instance.random_nonzero(rng)})
            right = TensorElement(instance, start + n, start + n + 2,
                                  {p: instance.random_element(rng) for p in (0, 1)})
            assert relation_space(instance, start - 1, start + n).contains(star_mul(left, r))
            assert relation_space(instance, start, start + n + 2).contains(star_mul(r, right))


def test_even_leading_slot_is_checked(instance):
    with pytest.raises(ValueError):
        SymElement(instance, 0, 2, [instance.anti_invariant(0), instance.zero()])
