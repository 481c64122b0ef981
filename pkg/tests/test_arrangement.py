import itertools
import os
import random

import pytest

from milnorcount.arrangement.arrangement import (
    CentralArrangement,
    Hyperplane,
    change_coordinates,
    essentialize,
    is_essential,
    parse_arrangement,
    product,
    require_essential,
    serialize_arrangement,
)
from milnorcount.arrangement.builtins import (
    builtin_arrangement,
    random_arrangement,
    random_product_arrangement,
    random_unimodular,
)
from milnorcount.arrangement.serialized_data import SerializedArrangement
from milnorcount.exceptions import ArrangementError, PreconditionError
from milnorcount.linalg import determinant, rank

DATA_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "data")


def load(filename: str) -> CentralArrangement:
    return parse_arrangement(SerializedArrangement.from_file(os.path.join(DATA_DIR, filename)))


def test_rational_normals_are_canonicalized():
    arrangement = load("scaled_lines.yaml")
    assert arrangement.name == "scaled_lines"
    assert arrangement.normals == [(1, 0, 0), (0, 1, 0), (3, 2, 6), (0, 0, 1)]


def test_json_document():
    arrangement = load("g2xg4.json")
    assert arrangement.dim == 8
    assert arrangement.d == 10
    assert arrangement.normals[3] == (1, 1, 1, 0, 0, 0, 0, 0)


@pytest.mark.parametrize(
    "filename", ["ragged.yaml", "duplicate.yaml"]
)
def test_invalid_documents(filename):
    with pytest.raises(ArrangementError):
        load(filename)


def test_invalid_rows():
    with pytest.raises(ArrangementError):
        parse_arrangement({"hyperplanes": [["0", "0"], ["1", "0"]]})
    with pytest.raises(ArrangementError):
        parse_arrangement({"hyperplanes": []})
    with pytest.raises(ArrangementError):
        parse_arrangement({"hyperplanes": [["1", "x"]]})
    with pytest.raises(ArrangementError):
        parse_arrangement(["not", "a", "mapping"])


def test_unknown_extension():
    with pytest.raises(ArrangementError):
        SerializedArrangement.from_file(os.path.join(DATA_DIR, "g2xg4.txt"))


def test_hyperplane_requires_canonical_normal():
    with pytest.raises(ArrangementError):
        Hyperplane(normal=(-1, 2))
    with pytest.raises(ArrangementError):
        Hyperplane(normal=(2, 4))
    assert Hyperplane.from_rationals(["-1/2", "1"]).normal == (1, -2)


def test_serialization_is_idempotent():
    arrangement = load("scaled_lines.yaml")
    document = serialize_arrangement(arrangement)
    assert document["hyperplanes"][2] == ["3", "2", "6"]
    assert parse_arrangement(document) == arrangement


def test_yaml_round_trip(tmp_path):
    arrangement = builtin_arrangement("@a11")
    path = str(tmp_path / "a11.yaml")
    arrangement.to_serialized().to_yaml(path)
    assert parse_arrangement(SerializedArrangement.from_file(path)) == arrangement


def test_essential():
    arrangement = load("non_essential.yaml")
    assert not is_essential(arrangement)
    with pytest.raises(PreconditionError):
        require_essential(arrangement)
    essential = essentialize(arrangement)
    assert essential.dim == 2
    assert essential.normals == [(1, 0), (0, 1), (1, 1)]
    assert is_essential(essential)
    assert essentialize(essential) == essential


def test_product():
    first = builtin_arrangement("@g2")
    second = builtin_arrangement("@boolean:2")
    result = product(first, second)
    assert result.dim == 5
    assert result.d == 6
    assert result.normals[4] == (0, 0, 0, 1, 0)
    assert is_essential(result)


def test_change_coordinates():
    arrangement = builtin_arrangement("@g2")
    changed = change_coordinates(arrangement, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert changed.normals == [(1, 1, 0), (0, 1, 0), (0, 0, 1), (1, 2, 1)]
    with pytest.raises(PreconditionError):
        change_coordinates(arrangement, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])


@pytest.mark.parametrize(
    "spec, dim, d",
    [
        ("@g2", 3, 4),
        ("@g4", 5, 6),
        ("@g:3", 4, 5),
        ("@a11", 8, 10),
        ("@a:2,1", 11, 14),
        ("@boolean:3", 3, 3),
        ("@nearpencil:5", 3, 5),
    ],
)
def test_builtins(spec, dim, d):
    arrangement = builtin_arrangement(spec)
    assert (arrangement.dim, arrangement.d) == (dim, d)
    assert is_essential(arrangement)


def test_near_pencil():
    assert builtin_arrangement("@nearpencil:4").normals == [
        (1, 0, 0),
        (0, 1, 0),
        (1, 1, 0),
        (0, 0, 1),
    ]


@pytest.mark.parametrize("spec", ["@unknown", "@g:0", "@nearpencil:2", "@a:0,0"])
def test_unknown_builtins(spec):
    with pytest.raises(ArrangementError):
        builtin_arrangement(spec)


def test_random_generators_are_seeded():
    first = random_arrangement(random.Random(7), 3, 5)
    second = random_arrangement(random.Random(7), 3, 5)
    assert first == second
    assert is_essential(first)
    assert abs(determinant(random_unimodular(random.Random(3), 4))) == 1
    reducible = random_product_arrangement(random.Random(5), [(1, 1), (2, 3)])
    assert (reducible.dim, reducible.d) == (3, 4)
    assert is_essential(reducible)


def test_essentialize_planes_through_a_line():
    arrangement = CentralArrangement.from_normals([[1, 0, 1], [0, 1, 1]])
    assert not is_essential(arrangement)
    essential = essentialize(arrangement)
    assert essential.dim == 2
    assert essential.normals == [(1, 0), (0, 1)]


@pytest.mark.parametrize("seed", range(25))
def test_essentialize_keeps_dependences(seed):
    rng = random.Random(6000 + seed)
    span = rng.randint(2, 3)
    core = random_arrangement(rng, span, rng.randint(span, 6))
    padded = [list(normal) + [0] * rng.randint(1, 2) for normal in core.normals]
    arrangement = change_coordinates(
        CentralArrangement.from_normals(padded), random_unimodular(rng, len(padded[0]))
    )
    assert not is_essential(arrangement)
    essential = essentialize(arrangement)
    assert is_essential(essential)
    assert essential.dim == span
    for size in range(1, arrangement.d + 1):
        for subset in itertools.combinations(range(arrangement.d), size):
            assert rank([essential.normals[i] for i in subset]) == rank(
                [arrangement.normals[i] for i in subset]
            )
