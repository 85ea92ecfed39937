import os
from pathlib import Path

# --- Project Paths ---
BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"
os.makedirs(DATA_DIR, exist_ok=True)

SWEEP_DIR = DATA_DIR / "sweeps"
GOLDEN_DIR = BASE_DIR / "tests" / "golden"

DB_NAME = "l2polytopes.db"
DB_PATH = f"sqlite:///{DATA_DIR / DB_NAME}"

# --- Logging ---
LOG_LEVEL = os.environ.get("L2POLY_LOG_LEVEL", "INFO")

# --- Field / Group Bounds ---
FIELD_ORDER_BOUND = 2 ** 20     # largest p^r accepted by field_new
GROUP_Q_BOUND = 128             # largest q materialized as a permutation group
CHUNK_ROWS = 1 << 16            # row block for vectorized passes over the element table

# --- Search ---
SWEEP_Q_GUARD = 128
SEARCH_RANKS = (3, 4, 5)
MAX_IP_FIXTURES = 64            # rejected tuples kept per search report


def _default_workers() -> int:
    override = os.environ.get("L2POLY_WORKERS")
    if override:
        try:
            return max(1, int(override))
        except ValueError:
            pass
    return os.cpu_count() or 1


DEFAULT_WORKERS = _default_workers()

# --- Polytope ---
DIAMOND_SAMPLES = 10 ** 4
RANDOM_SEED = 42

# --- Coset Enumeration ---
DEFAULT_MAX_COSETS = 10 ** 6
TC_LOG_EVERY = 100_000          # progress line every N coset definitions

# --- Census ---
SMALL_SUBGROUP_CAP = 61         # closure cap when bucketing A4 / S4 / A5
STRUCTURE_PROBE_LIMIT = 120     # largest order for brute-force structure probes

# --- Sweep Persistence ---
DB_BATCH_SIZE = 50
