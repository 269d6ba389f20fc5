import random

import pytest

import plse
from plse.core import (
    DuplicateCellError,
    FormatError,
    GenerationError,
    LatinConflictError,
    PlsInstance,
    cyclic_latin_square,
)


def test_hamming_distance():
    assert plse.hamming_distance((1, 2, 3), (1, 2, 3)) == 0
    assert plse.hamming_distance((1, 1, 1), (2, 1, 1)) == 1
    assert plse.hamming_distance((1, 1, 1), (2, 2, 2)) == 3
    assert plse.hamming_distance((1, 2, 3), (1, 3, 2)) == 2


def test_is_pls_set():
    assert plse.is_pls_set(2, {(1, 1, 1), (2, 2, 1)})
    assert not plse.is_pls_set(2, {(1, 1, 1), (1, 2, 1)})
    assert plse.is_pls_set(2, set())
    with pytest.raises(ValueError):
        plse.is_pls_set(2, {(1, 1, 3)})


def test_are_compatible():
    assert plse.are_compatible({(2, 2, 1)}, {(1, 1, 1)})
    assert not plse.are_compatible({(2, 1, 1)}, {(1, 1, 1)})
    assert plse.are_compatible(set(), {(1, 1, 1)})
    with pytest.raises(ValueError):
        plse.are_compatible({(1, 1, 1)}, {(1, 1, 1)})


def test_instance_validation_errors():
    with pytest.raises(DuplicateCellError):
        PlsInstance(3, frozenset({(1, 1, 1), (1, 1, 2)}))
    with pytest.raises(LatinConflictError, match="row"):
        PlsInstance(3, frozenset({(1, 1, 1), (1, 2, 1)}))
    with pytest.raises(LatinConflictError, match="column"):
        PlsInstance(3, frozenset({(1, 1, 1), (2, 1, 1)}))
    with pytest.raises(ValueError):
        PlsInstance(1, frozenset())


def test_cyclic_latin_square_order2():
    assert cyclic_latin_square(2) == {(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)}


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_random_latin_square(n):
    sq = plse.random_latin_square(n, seed=n * 11)
    assert len(sq) == n * n
    assert plse.is_pls_set(n, sq)
    for s in range(1, n + 1):
        assert sum(1 for t in sq if t[2] == s) == n


def test_generate_qwh_counts_and_completability():
    inst = plse.generate_qwh(3, 1.0, 5)
    assert inst.cell_count == 9 and inst.is_complete()

    inst = plse.generate_qwh(40, 0.5, 7)
    assert inst.cell_count == 800
    assert plse.is_pls_set(40, inst.triples)

    # holes come from a complete square: restoring them recreates it
    inst = plse.generate_qwh(6, 0.4, 9)
    square = plse.random_latin_square(6, 9)
    assert inst.triples <= square
    assert plse.is_pls_set(6, square)


def test_generate_qc_counts():
    inst = plse.generate_qc(2, 0.0, 1)
    assert inst.cell_count == 0
    inst = plse.generate_qc(40, 0.3, 2)
    assert inst.cell_count == 480
    inst = plse.generate_qc(5, 0.4, 3)
    assert inst.cell_count == 10
    assert plse.is_pls_set(5, inst.triples)


@pytest.mark.parametrize("scheme", ["qc", "qwh"])
def test_generators_reproducible(scheme):
    gen = plse.GenScheme(scheme, 0.45, 123)
    assert gen.build(9).triples == gen.build(9).triples


def test_generators_valid_across_seeds():
    for seed in range(25):
        r = random.Random(seed).choice([0.2, 0.4, 0.6, 0.8])
        assert plse.is_pls_set(7, plse.generate_qc(7, r, seed).triples)
        assert plse.is_pls_set(7, plse.generate_qwh(7, r, seed).triples)


def test_parse_basic():
    inst = plse.parse_instance("2\n1 0\n0 0\n")
    assert inst.n == 2
    assert inst.triples == frozenset({(1, 1, 1)})


def test_parse_errors_are_distinct():
    with pytest.raises(FormatError):
        plse.parse_instance("")
    with pytest.raises(FormatError):
        plse.parse_instance("2\n1 0\n")
    with pytest.raises(FormatError):
        plse.parse_instance("2\n1 x\n0 0\n")
    with pytest.raises(FormatError):
        plse.parse_instance("2\n3 0\n0 0\n")
    with pytest.raises(LatinConflictError):
        plse.parse_instance("2\n1 1\n0 0\n")


def test_serialize_round_trip():
    for seed in range(10):
        inst = plse.generate_qc(6, 0.5, seed)
        assert plse.parse_instance(plse.serialize_instance(inst)) == inst
    text = "3\n1 0 2\n0 2 0\n0 0 0\n"
    assert plse.serialize_instance(plse.parse_instance(text)) == text


def test_qc_restart_failure_is_reported():
    # r=1.0 forces a complete square via uniform random placement; dead ends
    # are near-certain for n=6, so the bounded restarts must trip
    with pytest.raises(GenerationError):
        plse.generate_qc(6, 1.0, seed=0, max_restarts=3)
