import random
from fractions import Fraction as F

import pytest

from purediff.errors import SpecValidationError, UnsupportedForm
from purediff.oracle import different_monogenic, is_unramified_irreducible, unramified_root_count
from purediff.valfield import Poly, RationalPadic, build_extension, build_model
from purediff.valfield.generator import find_generator, fp_factor
from purediff.valfield.linalg import char_poly_rational

Q2, Q3, Q5 = RationalPadic(2), RationalPadic(3), RationalPadic(5)


def P(K, *cs):
    return Poly([F(c) for c in cs], K)


def test_fp_factor():
    assert fp_factor(2, (1, 1, 1)) == (((1, 1, 1), 1),)
    assert fp_factor(2, (1, 0, 1)) == (((1, 1), 2),)
    assert fp_factor(3, (0, 0, 1)) == (((0, 1), 2),)
    assert set(fp_factor(5, (1, 0, 0, 0, 1))) == {((2, 0, 1), 1), ((3, 0, 1), 1)}


def test_fp_factor_reconstructs():
    rng = random.Random(3)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        coeffs = tuple(rng.randrange(p) for _ in range(rng.randint(1, 5))) + (1,)
        prod = [1]
        for f, m in fp_factor(p, coeffs):
            for _ in range(m):
                prod = [sum(prod[i] * f[k - i] for i in range(len(prod)) if 0 <= k - i < len(f)) % p
                        for k in range(len(prod) + len(f) - 1)]
        assert tuple(prod) == coeffs


def test_generator_for_root_of_five():
    theta, chi = find_generator(Q2, P(Q2, -5, 0, 1))
    assert theta == P(Q2, F(1, 2), F(1, 2))
    assert chi == P(Q2, -1, -1, 1)
    model = build_model(Q2, P(Q2, -5, 0, 1))
    assert not model.uses_eta and model.L.kind == "inertial"
    assert different_monogenic(model.L) == 0


def test_generator_is_a_root_of_its_minimal_polynomial():
    g = P(Q2, -5, 0, 1)
    theta, chi = find_generator(Q2, g)
    assert chi(theta).divmod(g)[1].is_zero()
    assert char_poly_rational(theta, g) == list(chi.coeffs)


def test_build_model_prefers_eta():
    model = build_model(Q2, P(Q2, 1, 1, 1))
    assert model.uses_eta and model.L.g == P(Q2, 1, 1, 1)


@pytest.mark.parametrize("K,g", [(Q2, (-17, 0, 1)), (Q3, (-10, 0, 1)), (Q3, (1, 0, 3, 0, 1)), (Q2, (1, 0, 2, 0, 1))])
def test_generator_detects_reducible(K, g):
    with pytest.raises(SpecValidationError):
        find_generator(K, P(K, *g))


@pytest.mark.parametrize("K,g", [(Q2, (-3, 0, 1)), (Q2, (7, 0, 0, 0, 1))])
def test_generator_rejects_ramified(K, g):
    with pytest.raises(UnsupportedForm):
        build_model(K, P(K, *g))


def test_root_counts():
    assert unramified_root_count((-17, 0, 1), 2, 1) == 2
    assert unramified_root_count((-5, 0, 1), 2, 1) == 0
    assert unramified_root_count((-5, 0, 1), 2, 2) == 2
    assert unramified_root_count((1, 1, 1, 1, 1), 2, 4) == 4
    assert unramified_root_count((-2, 0, 1), 2, 2) == 0


@pytest.mark.parametrize("p,g,want", [
    (2, (-5, 0, 1), True), (2, (1, 1, 1), True), (2, (-17, 0, 1), False), (2, (-2, 0, 1), False),
    (3, (-10, 0, 1), False), (3, (1, 0, 3, 0, 1), False), (2, (1, 2, 1), False), (5, (-2, 0, 1), True),
])
def test_unramified_irreducible_examples(p, g, want):
    assert is_unramified_irreducible(g, p) is want


def test_library_agrees_with_root_count_oracle():
    """build_model yields an unramified field exactly when the oracle says g is irreducible with e = 1."""
    rng = random.Random(5)
    seen = {True: 0, False: 0}
    for _ in range(600):
        p = rng.choice([2, 3, 5])
        n = rng.randint(2, 4)
        ints = tuple(rng.randint(-30, 30) for _ in range(n)) + (1,)
        K = RationalPadic(p)
        want = is_unramified_irreducible(ints, p)
        try:
            model = build_model(K, P(K, *ints))
            got = model.L.e == 1
        except SpecValidationError:
            got = False
        except UnsupportedForm:
            # only ramified or otherwise unsupported shapes may end here, never an unramified field
            assert not want, ints
            continue
        assert got == want, (p, ints)
        seen[want] += 1
    assert seen[True] > 50 and seen[False] > 50
