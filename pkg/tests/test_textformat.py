import pytest

from artifact.errors import FNotCompatible, ParseError
from artifact.gwsa import preset
from artifact.gwsa import q3k_data
from artifact.textformat import parse, serialize

Q3K = """
# Q(3K) with m = (2, 2, 2)
[vertices]
1 2 3
[arrows]
a1 1 2
a2 2 3
a3 3 1
b1 1 3
b2 2 1
b3 3 2
[f]
(a1 a2 a3) (b1 b3 b2)
[m]
a1 2
a2 2
a3 2
[t]
a1 1 0
b1 1 0
[Z]
b2 a1 a2
a2 b3 b2
a3 b1 b3
"""


def test_parse_q3k():
    data = parse(Q3K)
    assert data.quiver.g_orbits() == [("a1", "b2"), ("a2", "b3"), ("a3", "b1")]
    assert data.m == {"a1": 2, "a2": 2, "a3": 2}
    assert data.t_of("a2") == (1, 0)
    assert len(data.Z) == 3


@pytest.mark.parametrize("data", [preset("Q(3K)", 2, 2, 2), preset("D(2B)", 2, 1, v=1), q3k_data((1, 1, 1), Z=False)])
def test_round_trip(data):
    again = parse(serialize(data))
    assert serialize(again) == serialize(data)
    assert again.quiver.f == data.quiver.f


def test_errors_carry_positions():
    with pytest.raises(ParseError) as exc:
        parse("[vertices]\n1\n[arrows]\na 1\n")
    assert exc.value.line == 4
    with pytest.raises(ParseError) as exc:
        parse("[vertices]\n1\n[arrows]\na 1 1\nb 1 1\n[f]\n(a b\n")
    assert exc.value.line == 7
    with pytest.raises(ParseError):
        parse("[bogus]\n")
    with pytest.raises(ParseError):
        parse("[vertices]\n1\n")
    with pytest.raises(ParseError):
        parse(Q3K.replace("[m]\na1 2", "[m]\nb2 2"))


def test_incompatible_f():
    text = "[vertices]\n1 2\n[arrows]\na1 1 2\na2 2 1\nb1 1 1\nb2 2 2\n[f]\n(a1 b1 a2) (b2)\n"
    with pytest.raises(FNotCompatible):
        parse(text)
