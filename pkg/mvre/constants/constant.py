# mvre/constants/constant.py

# snapshot file layout
SNAPSHOT_MAGIC = b"MVRE"
SNAPSHOT_VERSION = 1

# web-mercator
EARTH_RADIUS_M = 6378137.0
TILE_SIZE_PX = 256
MAX_LATITUDE = 85.05113
MIN_LEVEL = 1
MAX_LEVEL = 23
DEFAULT_TILE_LEVEL = 16
REFERENCE_FOOTPRINT_NOTE = "paper: ≈600m"

# exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_INTERPRETABLE = 2
EXIT_DATA = 3

# strategy catalog, in report order
STRATEGY_ORDER = (
    "baseline",
    "m1_multikernel",
    "m2_concat_rf",
    "m3_boosted",
    "m4_hybrid",
    "m5_blackbox",
)
STRATEGY_ALIASES = {
    "baseline": "baseline",
    "m1": "m1_multikernel",
    "m2": "m2_concat_rf",
    "m3": "m3_boosted",
    "m4": "m4_hybrid",
    "m5": "m5_blackbox",
}
STRATEGY_FAMILY = {
    "baseline": ("Hedonic linear regression", True),
    "m1_multikernel": ("A: Multi-kernel learning", False),
    "m2_concat_rf": ("B: Concatenation by feature extraction", False),
    "m3_boosted": ("B*: Concatenation by boosting", True),
    "m4_hybrid": ("C: Hybrid multi-view network", True),
    "m5_blackbox": ("C*: Multi-view network", False),
}
IMAGE_STRATEGIES = frozenset(STRATEGY_ORDER[1:])
SATELLITE_COEFFICIENT = "satellite_image"
INTERCEPT_NAME = "const"

# full-scale Asheville results (MAE, RMSE in USD); not reproducible at desk scale
REFERENCE_ROWS = {
    "baseline": (40303, 71518),
    "m1_multikernel": (49019, 78983),
    "m2_concat_rf": (38395, 61663),
    "m3_boosted": (43173, 68362),
    "m4_hybrid": (37225, 61429),
    "m5_blackbox": (34890, 56099),
}

# file names inside an artifact directory
MANIFEST_FILE = "manifest.json"
PARAMS_FILE = "params.mvre"
FOREST_FILE = "forest.json"
NORM_STATS_FILE = "norm_stats.json"
COEFFICIENTS_FILE = "coefficients.json"

# synthetic dataset output
SYNTH_CSV = "houses.csv"
SYNTH_SCHEMA = "schema.json"
SYNTH_TRUTH = "truth.json"
SYNTH_TILES = "tiles"
