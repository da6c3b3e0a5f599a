"""
Core constants for the Groebner selection-strategy toolkit.

*** CONFIGURATION CONSTANTS ***
This file contains all the centralized configuration values, magic numbers,
and default settings used throughout the application.

To modify application behavior:
1. Update values in this file rather than hardcoding them elsewhere
2. Add new constants here when introducing new features
3. Use descriptive names and organize by functional area
"""


class FieldConstants:
    """Constants related to the coefficient field."""

    # Z/32003Z is the standard benchmark field
    DEFAULT_PRIME = 32003


class GroebnerConstants:
    """Constants related to Buchberger runs and pair selection."""

    FIRST = "first"
    DEGREE = "degree"
    NORMAL = "normal"
    SUGAR = "sugar"
    RANDOM = "random"
    TRUE_DEGREE = "truedegree"
    MONOMIAL_FIRST = "monomialfirst"

    # Order matters: benchmark tables list strategies in this order
    BENCHMARK_STRATEGIES = [FIRST, DEGREE, NORMAL, SUGAR, RANDOM]
    ALL_STRATEGIES = [FIRST, DEGREE, NORMAL, SUGAR, RANDOM, TRUE_DEGREE, MONOMIAL_FIRST]
    DETERMINISTIC_STRATEGIES = [FIRST, DEGREE, NORMAL, SUGAR, TRUE_DEGREE, MONOMIAL_FIRST]

    # Pair elimination modes
    GEBAUER_MOELLER = "gebauer_moeller"
    NAIVE = "naive"
    ELIMINATION_MODES = [GEBAUER_MOELLER, NAIVE]

    # Step cap used by the environment ("max episode length")
    DEFAULT_STEP_CAP = 500

    # Largest variable count for the exhaustive dimension computation
    MAX_DIMENSION_VARIABLES = 20

    # Sentinel returned by the dimension computation for the unit ideal
    UNIT_IDEAL_DIMENSION = -1


class DistributionConstants:
    """Constants related to random ideal distributions."""

    WEIGHTED = "weighted"
    UNIFORM = "uniform"
    FLAVORS = [WEIGHTED, UNIFORM]

    DEFAULT_SPEC = "3-20-10 weighted"


class EnvConstants:
    """Constants related to the Buchberger environment."""

    FULL = "full"
    LEAD_ONLY = "lead_only"
    OBSERVATION_MODES = [FULL, LEAD_ONLY]

    # Resampling attempts before giving up on an empty initial pair set
    MAX_RESAMPLE_ATTEMPTS = 1000


class TrainingConstants:
    """Defaults for the policy-gradient trainer."""

    GAMMA = 0.99
    LAM = 0.97
    CLIP_EPSILON = 0.2
    LEARNING_RATE = 1e-4
    EPISODES_PER_EPOCH = 100
    MAX_UPDATES_PER_EPOCH = 80
    KL_LIMIT = 0.01
    EPOCHS = 2500
    MAX_EPISODE_LENGTH = 500
    HIDDEN_SIZE = 128

    # Adam constants (standard published defaults)
    ADAM_BETA1 = 0.9
    ADAM_BETA2 = 0.999
    ADAM_EPSILON = 1e-8

    # Weight init: uniform(-gain/sqrt(fan_in), gain/sqrt(fan_in))
    INIT_GAIN = 1.0

    # Value functions
    DEGREE_ROLLOUT = "degree_rollout"
    PAIRS_LEFT = "pairs_left"
    NO_VALUE = "none"
    VALUE_KINDS = [DEGREE_ROLLOUT, PAIRS_LEFT, NO_VALUE]

    # Hard cap on the length of a value rollout
    MAX_ROLLOUT_STEPS = 100000

    CHECKPOINT_EVERY = 100
    SMOOTHING_WINDOW = 20

    MODEL_FORMAT_VERSION = 1


class LoggingConstants:
    """Logging configuration constants."""

    # Log levels
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"
    VALID_LEVELS = [DEBUG, INFO, WARNING, ERROR, CRITICAL]

    # Log file settings
    MAX_LOG_SIZE = 10 * 1024 * 1024  # 10MB
    BACKUP_COUNT = 5

    # Log formats
    DETAILED_FORMAT = (
        "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
    )
    SIMPLE_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

    # Logger names
    MAIN_LOGGER = "groebner_rl"
    MAIN_LOG_FILE = "groebner_rl.log"
    ERROR_LOG_FILE = "errors.log"


class ExitCodes:
    """Process exit codes of the command-line surface."""

    SUCCESS = 0
    USAGE = 1
    DATA_ERROR = 2


class EnvironmentConstants:
    """Environment variable names."""

    LOG_LEVEL = "GROEBNER_RL_LOG_LEVEL"
    LOG_DIR = "GROEBNER_RL_LOG_DIR"
    LOG_TO_FILE = "GROEBNER_RL_LOG_TO_FILE"
    WORKERS = "GROEBNER_RL_WORKERS"
    SEED = "GROEBNER_RL_SEED"
    PRIME = "GROEBNER_RL_PRIME"
