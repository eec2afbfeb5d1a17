import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncline.field_tower import INSTANCE_KEYS, get_instance
from ncline.indexed_tensor import (
    SignPattern,
    TensorElement,
    coordinate_vector,
    coords_over_start_field,
    from_coords,
    g_prime,
    h_prime,
    mu,
    mu_by_merge_order,
    product_span_dim,
    scalar,
    star_mul,
    top_injection,
    unit,
)
from ncline.linalg import EchelonBasis

from oracles import naive_mu, naive_star
from test_field_tower import element

coeff_lists = st.lists(st.integers(-4, 4), min_size=1, max_size=6)


def factors_strategy(max_len=5):
    return st.lists(coeff_lists, min_size=1, max_size=max_len)


def nonzero(inst, coeffs):
    x = element(inst, coeffs)
    return x if x else inst.one()


def random_tensor(inst, rng, start, end):
    if end == start:
        return scalar(inst, start, inst.random_subfield_element(start, rng, height=2))
    return TensorElement(inst, start, end,
                         {p: inst.random_element(rng, height=2) for p in range(1 << (end - start - 1))})


def test_sign_pattern_text_and_top():
    p = SignPattern.from_text(0, 4, "101")
    assert p.bits == 0b101 and p.text() == "101"
    assert SignPattern.top(0, 4).is_top() and SignPattern.top(0, 4).text() == "111"
    assert SignPattern.top(2, 3).size == 0
    with pytest.raises(ValueError):
        SignPattern(0, 3, 4)


def test_mu_examples(qt):
    one = qt.one()
    assert mu(qt, 0, [one, one]).components == {0: one, 1: one}
    t = qt.field.gen()
    assert mu(qt, 0, [t, t]).components == {0: t * t, 1: t * (2 - t)}
    with pytest.raises(ValueError):
        mu(qt, 0, [])


@pytest.mark.parametrize("key", INSTANCE_KEYS)
def test_relation_generators_land_on_the_documented_values(key):
    inst = get_instance(key)
    for l in (0, 1, -3):
        one, w = inst.one(), inst.anti_invariant(l + 1)
        h = mu(inst, l, [one, one]) + mu(inst, l, [1 / w, w])
        g = mu(inst, l, [w, one]) + mu(inst, l, [one, w])
        assert h == h_prime(inst, l) == TensorElement(inst, l, l + 2, {0: inst.scalar(2)})
        assert g == g_prime(inst, l) == TensorElement(inst, l, l + 2, {0: 2 * w})


def test_g_prime_values_in_the_function_field(qt):
    t = qt.field.gen()
    assert g_prime(qt, 0).components == {0: 2 * (t - 1)}
    assert g_prime(qt, 1).components == {0: 2 * t}


@pytest.mark.parametrize("key", INSTANCE_KEYS)
@given(raw=factors_strategy(6), start=st.integers(-3, 3))
def test_mu_matches_componentwise_definition(key, raw, start):
    inst = get_instance(key)
    xs = [nonzero(inst, c) for c in raw]
    assert mu(inst, start, xs) == naive_mu(inst, start, xs)


@pytest.mark.parametrize("key", INSTANCE_KEYS)
@given(raw=factors_strategy(6), start=st.integers(-3, 3), data=st.data())
def test_mu_is_independent_of_merge_order(key, raw, start, data):
    inst = get_instance(key)
    xs = [nonzero(inst, c) for c in raw]
    order = data.draw(st.permutations(list(range(1, len(xs)))))
    assert mu_by_merge_order(inst, start, xs, order) == mu(inst, start, xs)


@pytest.mark.parametrize("key", INSTANCE_KEYS)
@given(left=factors_strategy(4), right=factors_strategy(4), start=st.integers(-3, 3))
def test_mu_is_multiplicative(key, left, right, start):
    inst = get_instance(key)
    xs, ys = [nonzero(inst, c) for c in left], [nonzero(inst, c) for c in right]
    product = star_mul(mu(inst, start, xs), mu(inst, start + len(xs), ys))
    assert product == mu(inst, start, xs + ys)


def test_star_matches_naive_rule(instance, rng):
    for _ in range(30):
        i = rng.randint(-2, 2)
        j = i + rng.randint(0, 3)
        l = j + rng.randint(0, 3)
        a, b = random_tensor(instance, rng, i, j), random_tensor(instance, rng, j, l)
        assert star_mul(a, b) == naive_star(a, b)


def test_star_is_associative_and_bilinear(instance, rng):
    for _ in range(20):
        i = rng.randint(-2, 2)
        j = i + rng.randint(0, 3)
        k = j + rng.randint(0, 3)
        l = k + rng.randint(0, 2)
        a, b, c = (random_tensor(instance, rng, i, j), random_tensor(instance, rng, j, k),
                   random_tensor(instance, rng, k, l))
        assert star_mul(star_mul(a, b), c) == star_mul(a, star_mul(b, c))
        b2 = random_tensor(instance, rng, j, k)
        assert star_mul(a, b + b2) == star_mul(a, b) + star_mul(a, b2)
        s = instance.random_subfield_element(i, rng)
        assert star_mul(a.scale(s), b) == star_mul(a, b).scale(s)


def test_star_examples(instance, rng):
    a = random_tensor(instance, rng, 0, 3)
    assert star_mul(unit(instance, 0), a) == a
    c = instance.subfield_generator(0)
    assert star_mul(h_prime(instance, 0), scalar(instance, 2, c)).components == {0: 2 * c}
    with pytest.raises(ValueError):
        star_mul(a, a)


def test_coordinates_round_trip(instance, rng):
    zero = TensorElement(instance, 0, 3)
    assert all(not x for x in coords_over_start_field(zero))
    assert coords_over_start_field(h_prime(instance, 0)) == [2, 0, 0, 0]
    for n in range(0, 5):
        a = random_tensor(instance, rng, 1, 1 + n)
        dense = coords_over_start_field(a)
        assert len(dense) == (1 << n if n else 1)
        assert from_coords(instance, 1, 1 + n, dense) == a
        assert from_coords(instance, 1, 1 + n, coordinate_vector(a)) == a


@pytest.mark.parametrize("start", [0, 1])
def test_mu_is_bijective_on_product_basis(instance, start):
    for n in range(1, 7):
        choices = [(instance.one(), instance.anti_invariant(start + k)) for k in range(n)]
        span = EchelonBasis()
        for factors in itertools.product(*choices):
            span.add(coordinate_vector(mu(instance, start, factors)))
        assert span.rank == 1 << n


@pytest.mark.parametrize("start", [0, 1])
def test_spans_around_both_degree_two_generators(instance, start):
    for n in range(2, 7):
        for l in range(start, start + n - 1):
            assert product_span_dim(instance, start, start + n, l) == 2 * 2 ** (l - start) * 2 ** (n - (l - start) - 2)


def test_two_periodicity(instance, rng):
    a = random_tensor(instance, rng, 1, 4)
    b = random_tensor(instance, rng, 4, 6)
    assert star_mul(a, b).shift(-4) == star_mul(a.shift(-4), b.shift(-4))
    with pytest.raises(ValueError):
        a.shift(1)


def test_degree_zero_must_lie_in_start_field(instance):
    with pytest.raises(ValueError):
        scalar(instance, 0, instance.anti_invariant(0))
    assert top_injection(instance, 0, 3, instance.one()).components == {3: instance.one()}


def test_json_tree(qt):
    t = qt.field.gen()
    assert mu(qt, 0, [t, t]).to_json() == {"start": 0, "end": 2, "components": {"0": "t^2", "1": "-t^2 + 2*t"}}
