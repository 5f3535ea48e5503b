from .instance import Instance
from .instance import ResponseTable
from .instance import validate_instance
from .instance import version_space
from .objectives import f_bar_satisfied
from .objectives import f_bar_scaled
from .oracles import AdversarialOracle
from .oracles import RandomConsistentOracle
from .oracles import TableOracle
from .policies import CoverAllPolicy
from .policies import GreedyPolicy
from .policies import LearnThenCoverPolicy
from .policies import NaiveGreedyPolicy
from .runner import run_policy
from .transcript import Transcript
from .version import __version__

__all__ = (
    'AdversarialOracle',
    'CoverAllPolicy',
    'GreedyPolicy',
    'Instance',
    'LearnThenCoverPolicy',
    'NaiveGreedyPolicy',
    'RandomConsistentOracle',
    'ResponseTable',
    'TableOracle',
    'Transcript',
    'f_bar_satisfied',
    'f_bar_scaled',
    'run_policy',
    'validate_instance',
    'version_space',
    '__version__'
)
