import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subdirac.clifford import (AlgebraElement, Dims, Gaussian, all_generators, cf, chat,
                               generator, mul, trace, volume_element)
from subdirac.oracle import (ResourceError, build_rep, exterior_operators, leaf_gammas,
                             oracle_trace, rep_of, sequence_matrix)
from subdirac.verify import random_word

DIMS = [Dims(1, 2), Dims(1, 4), Dims(2, 2)]
REPS = {d: build_rep(d) for d in DIMS}


def test_sizes_and_cap():
    assert REPS[Dims(1, 2)].size == 8
    with pytest.raises(ResourceError):
        build_rep(Dims(4, 4), cap=2 ** 6)


def test_building_blocks():
    gammas, chi = leaf_gammas(2)
    for g in gammas:
        assert np.allclose(g @ g, -np.eye(4))
        assert np.allclose(g @ chi, -chi @ g)
    wedges, contr = exterior_operators(3)
    for i, (w, a) in enumerate(zip(wedges, contr)):
        for j, (w2, a2) in enumerate(zip(wedges, contr)):
            anti = a @ w2 + w2 @ a
            assert np.allclose(anti, np.eye(8) * (i == j))


@pytest.mark.parametrize("d", DIMS, ids=str)
def test_relation_table_numeric(d):
    r = REPS[d]
    n = r.size
    gens = all_generators(d)
    for g in gens:
        for h in gens:
            anti = r[g] @ r[h] + r[h] @ r[g]
            expected = 2 * g.square * np.eye(n) if g == h else 0
            assert np.abs(anti - expected).max() <= 1e-12


def test_examples():
    d = Dims(1, 2)
    r = REPS[d]
    assert np.allclose(rep_of(AlgebraElement.identity(d), r), np.eye(8))
    t = rep_of(volume_element(d), r)
    assert np.abs(t @ t - np.eye(8)).max() <= 1e-12
    assert oracle_trace(AlgebraElement.identity(d), r) == 8
    e = AlgebraElement.from_word(d, [chat(1), chat(2), chat(1), chat(2)])
    assert oracle_trace(e, r) == pytest.approx(-8)
    d22 = Dims(2, 2)
    assert oracle_trace(AlgebraElement.from_word(d22, [cf(1), cf(2)]), REPS[d22]) == 0


def test_seed_42_word():
    d = Dims(1, 2)
    w = random_word(np.random.default_rng(42), d)
    sym = complex(trace(AlgebraElement.from_word(d, w)))
    assert complex(np.trace(sequence_matrix(REPS[d], w))) == pytest.approx(sym, abs=1e-12)


@pytest.mark.parametrize("d", DIMS, ids=str)
def test_homomorphism(d):
    r = REPS[d]
    rng = np.random.default_rng(5)
    gens = all_generators(d)
    worst = 0.0
    for _ in range(500):
        a, b = (AlgebraElement.from_terms(d, [(Gaussian(int(rng.integers(-2, 3)), int(rng.integers(-2, 3))),
                                               random_word(rng, d, 4)) for _ in range(3)])
                for _ in range(2))
        worst = max(worst, np.abs(rep_of(mul(a, b), r) - rep_of(a, r) @ rep_of(b, r)).max())
    assert worst <= 1e-10
    assert len(gens) == 2 * d.p + 2 * d.q


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(DIMS))
@settings(max_examples=200, deadline=None)
def test_word_trace_matches(seed, d):
    w = random_word(np.random.default_rng(seed), d)
    sym = complex(trace(AlgebraElement.from_word(d, w)))
    assert abs(complex(np.trace(sequence_matrix(REPS[d], w))) - sym) <= 1e-10


def test_generator_matrices_unitary():
    d = Dims(2, 2)
    r = REPS[d]
    for g in all_generators(d):
        m = rep_of(generator(d, g), r)
        assert np.allclose(m @ m.conj().T, np.eye(r.size))
        # c-type generators anti-Hermitian, hat-type Hermitian
        assert np.allclose(m.conj().T, g.square * m)
