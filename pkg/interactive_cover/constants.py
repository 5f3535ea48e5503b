from fractions import Fraction


# Policy names accepted by the CLI and by policies.make_policy()
POLICY_GREEDY = 'greedy'
POLICY_NAIVE_GREEDY = 'naive-greedy'
POLICY_LEARN_THEN_COVER = 'learn-then-cover'
POLICY_COVER_ALL = 'cover-all'

POLICY_NAMES = (
    POLICY_GREEDY,
    POLICY_NAIVE_GREEDY,
    POLICY_LEARN_THEN_COVER,
    POLICY_COVER_ALL,
)

# Oracle names; random and table oracles take a ':<seed>' / ':<file>' suffix
ORACLE_ADVERSARIAL = 'adversarial'
ORACLE_RANDOM = 'random'
ORACLE_TABLE = 'table'

# Default costs used by the counterexample generators
DEFAULT_CHEAP = Fraction(1)
DEFAULT_EXPENSIVE = Fraction(10)

# run_policy aborts after this many questions
DEFAULT_STEP_LIMIT = 10000

# Partition sizes of the Clusters hypothesis class
DEFAULT_CLUSTER_SIZES = (10, 20, 30, 40)

# Number of target variants in the Noisy Clusters class
DEFAULT_NOISY_VARIANTS = 100

DEFAULT_BALL_COUNT = 100
DEFAULT_BALL_RADIUS = 2
DEFAULT_NOISY_BALL_CORES = 2
DEFAULT_NOISY_BALL_VARIANTS = 50
DEFAULT_EXPANDED_CLUSTERS = 100

# Brute-force limits, see config.BruteForceLimits
DEFAULT_MAX_GROUND = 12
DEFAULT_GCC_MAX_QUERIES = 8
DEFAULT_GCC_MAX_RESPONSES = 3
DEFAULT_ADAPTIVE_MAX_QUERIES = 16
DEFAULT_MAX_STATES = 500000
DEFAULT_NONADAPTIVE_MAX_QUERIES = 16
DEFAULT_MAX_ASSIGNMENTS = 4096

# Two-sided critical values of Student's t at p=.01, keyed by degrees of
# freedom. Missing degrees of freedom use the next lower key.
T_CRITICAL_P01 = (
    (1, 63.657), (2, 9.925), (3, 5.841), (4, 4.604), (5, 4.032),
    (6, 3.707), (7, 3.499), (8, 3.355), (9, 3.250), (10, 3.169),
    (11, 3.106), (12, 3.055), (13, 3.012), (14, 2.977), (15, 2.947),
    (16, 2.921), (17, 2.898), (18, 2.878), (19, 2.861), (20, 2.845),
    (21, 2.831), (22, 2.819), (23, 2.807), (24, 2.797), (25, 2.787),
    (26, 2.779), (27, 2.771), (28, 2.763), (29, 2.756), (30, 2.750),
    (40, 2.704), (50, 2.678), (60, 2.660), (80, 2.639), (100, 2.626),
    (120, 2.617), (1000, 2.581),
)

# Leading columns of the experiment CSV; pairwise t columns follow
CSV_COLUMNS = ('dataset', 'class', 'policy', 'trials', 'mean', 'std')

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2
