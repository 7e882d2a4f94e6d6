import random

import pytest

from doublegon.expansion import (
    HORIZONTAL,
    VERTICAL,
    ExpansionError,
    Hyperbolic,
    Parabolic,
    Unresolved,
    certify,
    classify,
    direction_key,
    gcd_step,
    locate_sector,
    normalize_direction,
    replay_word,
    result_json,
    verify_stabilizer,
    word_matrix,
)
from doublegon.linalg import Mat2, Vec2
from doublegon.model import staircase_model
from doublegon.survey import height_values


@pytest.fixture(scope="module")
def m7():
    return staircase_model(7)


def K7():
    return staircase_model(7).ctx


def test_normalize_direction():
    K = K7()
    one = K.one
    assert normalize_direction(2 * one, 4) == normalize_direction(one, 2)
    assert normalize_direction(-one, -2) == normalize_direction(one, 2)
    # quarter rotation brings (1, -s) to (s, 1)
    assert normalize_direction(one, -2) == normalize_direction(2 * one, 1)
    assert normalize_direction(0, -3 * one).is_vertical()
    assert normalize_direction(K.gen, 0).is_horizontal()
    with pytest.raises(ExpansionError):
        normalize_direction(K.zero, 0)
    with pytest.raises(ExpansionError):
        normalize_direction(1, 2)


def test_sector_boundaries_lower_inclusive(m7):
    for i, D in enumerate(m7.diagonals[1:-1], start=1):
        assert locate_sector(D, m7) == i
    assert locate_sector(Vec2(K7().one, K7().zero), m7) == HORIZONTAL
    assert locate_sector(Vec2(K7().zero, K7().one), m7) == VERTICAL


def test_gcd_step_pulls_back(m7):
    K = K7()
    i, w = gcd_step((1, 1), m7)
    assert i == 3 and w.is_horizontal()
    with pytest.raises(ExpansionError):
        gcd_step((1, 0), m7)


def test_simple_parabolic(m7):
    res = classify((1, 1), m7)
    assert isinstance(res, Parabolic) and res.sector_word == [3] and res.terminal == HORIZONTAL
    res = classify((0, 1), m7)
    assert isinstance(res, Parabolic) and res.terminal == VERTICAL and res.steps == 0


def test_two_step_cycle(m7):
    K = K7()
    res = classify((1, K("a^2 - 1")), m7)
    assert isinstance(res, Hyperbolic)
    assert res.preperiod == [] and res.period == [5, 0]
    assert res.stabilizer == Mat2(*(K(s) for s in ("1", "a", "a", "a^2 + 1")))
    assert res.eigenvalue == K("a^2 + a")
    assert res.trace == K("a^2 + 2")
    assert certify((1, K("a^2 - 1")), res, m7)


def test_printed_matrix_eigendirection(m7):
    K = K7()
    v = (K("22*a^2 + 21*a - 14"), K("35*a^2 + 27*a - 19"))
    res = classify(v, m7)
    assert isinstance(res, Hyperbolic)
    assert res.preperiod == [4, 4] and res.period == [5, 0]
    assert res.eigenvalue == K("a^2 + a")
    full = res.full_stabilizer(m7)
    assert verify_stabilizer(full, normalize_direction(v)).is_fixed


def test_verify_stabilizer_examples(m7):
    K = K7()
    I = Mat2.identity(K.one)
    chk = verify_stabilizer(I, normalize_direction(1, K.gen))
    assert chk.is_fixed and chk.eigenvalue == 1 and not chk.hyperbolic
    assert not verify_stabilizer(m7.sectors[0], normalize_direction(K.zero, 1)).is_fixed


def test_model_mismatch(m7):
    K11 = staircase_model(11).ctx
    with pytest.raises(ExpansionError):
        classify((K11.one, K11.gen), m7)


def test_word_matrix(m7):
    assert word_matrix([], m7) == Mat2.identity(K7().one)
    assert word_matrix([2], m7) == m7.sectors[2]
    with pytest.raises(ExpansionError):
        word_matrix([6], m7)


def test_unresolved_when_budget_small(m7):
    K = K7()
    res = classify((1, K("(3/13)*a^2 + (6/13)*a - 1/13")), m7, max_steps=2)
    assert isinstance(res, Unresolved) and res.steps == 2
    assert certify((1, 0), res, m7)
    with pytest.raises(ExpansionError):
        classify((1, 1), m7, max_steps=0)


def test_direction_key_scale_invariant(m7):
    K = K7()
    v = Vec2(K("a + 3"), K("2*a^2 - 1"))
    s = K("5*a^2 - a + 2")
    assert direction_key(v, 7) == direction_key(Vec2(v.x * s, v.y * s), 7)


def test_result_json_shape(m7):
    K = K7()
    out = result_json((1, K("a^2 - 1")), classify((1, K("a^2 - 1")), m7), 7)
    assert out == {
        "N": 7,
        "x": "1",
        "y": "a^2 - 1",
        "class": "hyperbolic",
        "steps": 2,
        "preperiod": [],
        "period": [5, 0],
        "periodic_direction": ["1", "a^2 - 1"],
        "stabilizer": [["1", "a"], ["a", "a^2 + 1"]],
        "eigenvalue": "a^2 + a",
        "trace": "a^2 + 2",
    }


def test_replay_word_parabolic(m7):
    K = K7()
    v = (1, K("a^2 + a"))
    res = classify(v, m7)
    assert replay_word(v, res.sector_word, m7).is_horizontal()


def test_positive_words_have_trace_above_two(m7):
    rng = random.Random(3)
    for _ in range(60):
        w = [rng.randrange(6) for _ in range(rng.randint(2, 6))]
        if len(set(w)) < 2:
            continue
        M = word_matrix(w, m7)
        assert all(c.sign() > 0 for c in M)
        assert M.det() == 1
        assert (M.trace() - 2).sign() > 0


def test_quadrant_preservation_random(m7):
    K = K7()
    rng = random.Random(11)
    for _ in range(40):
        v = normalize_direction(1, K.from_coeffs([rng.randint(-3, 3) for _ in range(3)]))
        for _ in range(30):
            if v.is_horizontal() or v.is_vertical():
                break
            i = locate_sector(v, m7)
            raw = m7.inverses[i] @ v.vec()
            assert raw.x.sign() >= 0 and raw.y.sign() >= 0
            _, v = gcd_step(v, m7)


def test_determinism(m7):
    K = K7()
    v = (1, K("(2/3)*a^2 - a"))
    assert result_json(v, classify(v, m7), 7) == result_json(v, classify(v, m7), 7)


@pytest.mark.parametrize("N", [5, 9, 13])
def test_other_N_simple(N):
    m = staircase_model(N)
    for D in m.diagonals:
        res = classify(D, m)
        assert isinstance(res, Parabolic)
        assert certify(D, res, m)


@pytest.mark.parametrize("N", [7, 11])
def test_hinted_sector_matches_exact_signs(N):
    # follow long expansions and compare against exact cross-product signs
    m = staircase_model(N)
    K = m.ctx
    rng = random.Random(N)
    for _ in range(6):
        y = K.from_coeffs([rng.choice(height_values(2)) for _ in range(K.degree)])
        if y.sign() <= 0:
            continue
        cur = normalize_direction(K.one, y).vec()
        hint = [128]
        for _ in range(400):
            i = locate_sector(cur, m, hint)
            if isinstance(i, str):
                break
            signs = [(D[0] * cur[1] - D[1] * cur[0]).sign() for D in m.diagonals]
            exact = max(k for k in range(len(m.sectors)) if signs[k] >= 0)
            assert i == exact
            cur = m.inverses[i] @ cur


def test_certify_rejects_out_of_sector_word(m7):
    K = K7()
    v = (1, K("a^2 + a"))
    res = classify(v, m7)
    bogus = Parabolic(sector_word=[0] + res.sector_word, steps=res.steps + 1, terminal=res.terminal)
    assert certify(v, res, m7)
    assert not certify(v, bogus, m7)
