import asyncio
import logging
from abc import ABC, abstractmethod
from typing import List, Optional, Tuple

from .transcript import Step, Transcript


default_logger = logging.getLogger(__name__)


class BaseReporter(ABC):
    """Receives every step of a run_policy loop."""

    def start_run(self, policy_name: str, oracle_name: str) -> None:
        pass

    @abstractmethod
    def report_step(self, index: int, step: Step) -> None:
        pass

    def finish_run(self, transcript: Transcript) -> None:
        pass

    async def close(self) -> None:
        pass


class NullReporter(BaseReporter):
    """Ignores all steps."""
    def report_step(self, index: int, step: Step) -> None:
        pass


class InMemoryReporter(BaseReporter):
    """Stores steps and finished transcripts in memory."""
    def __init__(self) -> None:
        super().__init__()
        self.steps: List[Tuple[int, Step]] = []
        self.transcripts: List[Transcript] = []
        self.runs: List[Tuple[str, str]] = []

    def start_run(self, policy_name: str, oracle_name: str) -> None:
        self.runs.append((policy_name, oracle_name))

    def report_step(self, index: int, step: Step) -> None:
        self.steps.append((index, step))

    def finish_run(self, transcript: Transcript) -> None:
        self.transcripts.append(transcript)

    def get_steps(self) -> List[Tuple[int, Step]]:
        return self.steps[:]


class LoggingReporter(NullReporter):
    def __init__(self, logger: Optional[logging.Logger] = None) -> None:
        self.logger = logger if logger else default_logger

    def start_run(self, policy_name: str, oracle_name: str) -> None:
        self.logger.info('Starting %s against %s', policy_name, oracle_name)

    def report_step(self, index: int, step: Step) -> None:
        self.logger.info(
            'Step %d: q%d -> r%d (cost %s)',
            index, step.query, step.response, step.cost,
        )

    def finish_run(self, transcript: Transcript) -> None:
        self.logger.info(
            'Finished after %d questions, total cost %s',
            len(transcript), transcript.total_cost,
        )


class CompositeReporter(BaseReporter):
    """Delegates reporting to one or more underlying reporters."""
    def __init__(self, *reporters: BaseReporter) -> None:
        self.reporters = reporters

    def start_run(self, policy_name: str, oracle_name: str) -> None:
        for reporter in self.reporters:
            reporter.start_run(policy_name, oracle_name)

    def report_step(self, index: int, step: Step) -> None:
        for reporter in self.reporters:
            reporter.report_step(index, step)

    def finish_run(self, transcript: Transcript) -> None:
        for reporter in self.reporters:
            reporter.finish_run(transcript)

    async def close(self) -> None:
        await asyncio.gather(*(
            reporter.close() for reporter in self.reporters
        ))
