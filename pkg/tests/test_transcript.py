from fractions import Fraction

from interactive_cover.transcript import Step, Transcript


def test_transcript():
    transcript = Transcript()
    step = transcript.append(2, 1, Fraction(1, 2))
    assert step == Step(2, 1, Fraction(1, 2))
    transcript.append(0, 0, Fraction(3))
    transcript.append(2, 1, Fraction(1, 2))

    assert len(transcript) == 3
    assert transcript.queries == (2, 0, 2)
    assert list(transcript) == [(2, 1), (0, 0), (2, 1)]
    assert transcript.pairs == frozenset({(2, 1), (0, 0)})
    assert transcript.total_cost == 4
    assert transcript.to_dict() == {
        'steps': [[2, 1], [0, 0], [2, 1]],
        'total_cost': [4, 1],
        'queries': 3,
    }


def test_transcript_equality():
    steps = [Step(1, 0, Fraction(1)), Step(0, 1, Fraction(2))]
    assert Transcript(steps) == Transcript(steps)
    assert Transcript(steps) != Transcript(steps[:1])
    assert repr(Transcript(steps)) == 'Transcript(steps=2, total_cost=3)'
