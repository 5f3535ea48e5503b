from fractions import Fraction

import mock

from interactive_cover.reporter import (
    CompositeReporter, InMemoryReporter, LoggingReporter, NullReporter,
)
from interactive_cover.transcript import Step, Transcript


STEP = Step(3, 1, Fraction(2))


async def test_null_reporter():
    reporter = NullReporter()
    reporter.start_run('greedy', 'adversarial(h0)')
    reporter.report_step(0, STEP)
    reporter.finish_run(Transcript())
    await reporter.close()


async def test_in_memory_reporter():
    reporter = InMemoryReporter()
    reporter.start_run('greedy', 'adversarial(h0)')
    reporter.report_step(0, STEP)
    await reporter.close()
    assert reporter.get_steps() == [(0, STEP)]
    assert reporter.runs == [('greedy', 'adversarial(h0)')]


async def test_logging_reporter():
    log_mock = mock.MagicMock()
    reporter = LoggingReporter(logger=log_mock)
    reporter.report_step(4, STEP)
    log_mock.info.assert_called_with(
        'Step %d: q%d -> r%d (cost %s)', 4, 3, 1, Fraction(2)
    )
    transcript = Transcript([STEP])
    reporter.finish_run(transcript)
    log_mock.info.assert_called_with(
        'Finished after %d questions, total cost %s', 1, Fraction(2)
    )
    await reporter.close()


async def test_composite_reporter():
    first, second = InMemoryReporter(), InMemoryReporter()
    closing = mock.MagicMock()

    class ClosingReporter(NullReporter):
        async def close(self):
            closing()

    reporter = CompositeReporter(first, second, ClosingReporter())
    reporter.start_run('cover-all', 'table(1 entries)')
    reporter.report_step(0, STEP)
    reporter.finish_run(Transcript([STEP]))
    await reporter.close()

    for inner in (first, second):
        assert inner.get_steps() == [(0, STEP)]
        assert inner.runs == [('cover-all', 'table(1 entries)')]
        assert len(inner.transcripts) == 1
    closing.assert_called_once_with()
