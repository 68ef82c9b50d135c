PROJECT_NAME = 'typelattice'
SCHEMA_VERSION = 'typelattice/1'

# Run log is off unless a path is given (--log-db or the session file)
LOG_DATABASE_FILE_PATH = None
RUN_LOG_TABLE = 'run_log'


# Session defaults
DEFAULT_MODULUS = 16
DEFAULT_M_MAX = 8
DEFAULT_K_MAX = 8
DEFAULT_PRIME_COUNT = 40
DEFAULT_SEED = 42
DEFAULT_OUTPUT = 'text'
DEFAULT_WORKERS = 1


# Sieve grows by doubling from the initial limit; primes beyond the ceiling are rejected
SIEVE_INITIAL_LIMIT = 1 << 12
SIEVE_MAX_LIMIT = 50_000_000


EXIT_CODES = {
    "OK": 0,
    "USAGE": 1,
    "PARSE": 2,
    "VERIFICATION": 3,
    "INTERNAL": 4,
}


# Random sampling shape used by the self-test suites
SAMPLING = {
    "max_modulus": 8,
    "value_pool": [0, 1, 2, 3, None],   # None is infinity
    "max_distinct_values": 4,
    "max_exceptions": 2,
    "exception_prime_count": 30,
}


# Self-test suites - run in ordinal order
SELFTEST_SUITES = {
    "SETS": {
        "suite_name": "prime set boolean algebra",
        "ordinal": 0,
        "trials": 500,
    },
    "LAT": {
        "suite_name": "lattice axioms",
        "ordinal": 1,
        "trials": 1000,
    },
    "ORC": {
        "suite_name": "oracle equivalence",
        "ordinal": 2,
        "trials": 10000,
    },
    "MONO": {
        "suite_name": "first-argument monotonicity",
        "ordinal": 3,
        "trials": 1000,
        "inner_trials": 100,
    },
    "WELL": {
        "suite_name": "well-definedness on classes",
        "ordinal": 4,
        "trials": 500,
    },
    "JOIN": {
        "suite_name": "join and meet laws",
        "ordinal": 5,
        "trials": 1000,
    },
    "SEP": {
        "suite_name": "strict separation",
        "ordinal": 6,
        "trials": 1000,
    },
    "CD": {
        "suite_name": "finite-rank shadow",
        "ordinal": 7,
        "trials": 1000,
    },
    "NP": {
        "suite_name": "half-integer exponent arithmetic",
        "ordinal": 8,
        "trials": 40,
    },
    "EMB": {
        "suite_name": "power set embedding",
        "ordinal": 9,
        "trials": 8,
    },
}

# Largest power set the embed command builds (2**n elements, 4**n ordered pairs)
MAX_POWERSET_ATOMS = 10
