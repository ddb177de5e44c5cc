import pytest

from bookbind.counters import OpCounter
from bookbind.errors import DegreeViolation, EulerViolation, ParseError
from bookbind.instances import gen_hamantasch, gen_kframed_random
from bookbind.witness import (
    augment_planar_maximal,
    format_witness,
    half_square,
    is_planar_maximal,
    parse_witness,
    planar_skeleton,
    validate_witness,
)

from conftest import instance, small_corpus

TRIANGLE = """WITNESS k=3 n=3
P 3 0 1 2
ROT 0 3
ROT 1 3
ROT 2 3
"""

CYCLE = """WITNESS k=2 n=4
P 4 0 1
P 5 1 2
P 6 2 3
P 7 3 0
ROT 0 7 4
ROT 1 4 5
ROT 2 5 6
ROT 3 6 7
"""


def test_parse_single_three_point():
    w = parse_witness(TRIANGLE)
    assert (w.k, w.n) == (3, 3)
    validate_witness(w)
    assert sorted(half_square(w).edges) == [(0, 1), (0, 2), (1, 2)]


def test_degree_above_k_is_rejected():
    text = "WITNESS k=4 n=5\nP 5 0 1 2 3 4\n" + "".join(f"ROT {v} 5\n" for v in range(5))
    with pytest.raises(DegreeViolation) as exc:
        validate_witness(parse_witness(text))
    assert exc.value.degree == 5 and exc.value.k == 4


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as exc:
        parse_witness("WITNESS k=3 n=3\nP 3 0 x 2\n")
    assert exc.value.line == 2


def test_bad_rotation_fails_euler():
    # K4 drawn with both diagonals as 2-points but rotations of a crossing
    crossed = """WITNESS k=2 n=4
P 4 0 2
P 5 1 3
P 6 0 1
P 7 1 2
P 8 2 3
P 9 3 0
ROT 0 4 6 9
ROT 1 5 7 6
ROT 2 4 8 7
ROT 3 5 9 8
"""
    with pytest.raises(EulerViolation):
        validate_witness(parse_witness(crossed))


def test_hamantasch_k4_is_k6():
    w = gen_hamantasch(4)
    validate_witness(w)
    assert w.n == 6 and len(w.points) == 3
    mg = half_square(w)
    assert mg.m == 15


def test_two_point_cycle_half_square_is_the_cycle():
    mg = half_square(parse_witness(CYCLE))
    assert sorted(mg.edges) == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_format_roundtrip_is_bit_exact():
    w = gen_kframed_random(5, 40, 1)
    text = format_witness(w)
    assert format_witness(parse_witness(text)) == text


def test_augmenting_a_triangle_adds_wedge_points():
    w = augment_planar_maximal(parse_witness(TRIANGLE))
    assert is_planar_maximal(w)
    twos = [p for p, vs in w.points.items() if len(vs) == 2]
    assert len(twos) == 3
    g, faces, _ = w.faces()
    assert all(f.length in (4, 6) for f in faces)


def test_augment_is_idempotent():
    w = augment_planar_maximal(gen_kframed_random(4, 30, 2))
    assert format_witness(augment_planar_maximal(w)) == format_witness(w)


TRI_CYCLE = """WITNESS k=2 n=3
P 3 0 1
P 4 1 2
P 5 2 0
ROT 0 5 3
ROT 1 3 4
ROT 2 4 5
"""


def test_cycle_skeleton_has_no_cliques():
    w = parse_witness(TRI_CYCLE)
    assert is_planar_maximal(w)
    sk = planar_skeleton(w)
    assert sorted(sk.simple_edges()) == [(0, 1), (0, 2), (1, 2)]
    assert all(p is None for p in sk.face_point)


def test_long_two_point_cycle_gets_split():
    # an octagonal witness face is not allowed; augmentation cuts it by a 2-path
    aug = augment_planar_maximal(parse_witness(CYCLE))
    assert is_planar_maximal(aug)
    assert len(planar_skeleton(aug).simple_edges()) == 5


@pytest.mark.parametrize("key", small_corpus()[::7], ids=lambda k: "-".join(map(str, k)))
def test_skeleton_and_cliques_cover_the_map_graph(key):
    w = instance(*key)
    aug = augment_planar_maximal(w)
    sk = planar_skeleton(aug)
    assert half_square(w).edge_set() <= half_square(aug).edge_set()
    assert sk.map_edges() == half_square(aug).edge_set()
    n, k = w.n, w.k
    if n >= 3:
        big = sum(1 for vs in aug.points.values() if len(vs) >= 3)
        assert big <= 3 * n - 6
    if k >= 2 and n > 2:
        assert half_square(aug).m <= k * n - 2 * k
    for f in sk.faces:
        if f.id != sk.outer:
            assert f.degree <= k


def test_augmentation_is_linear():
    rates = []
    for n in (100, 200, 400, 800):
        w = gen_kframed_random(6, n, 0)
        ops = OpCounter()
        with ops.run("augment"):
            augment_planar_maximal(w, ops)
        rates.append(ops.total / (w.n + len(w.points) + w.num_links))
    assert max(rates) <= 1.25 * min(rates)
