"""Python bindings for the autochaos C++ core."""

from ._autochaos import (  # noqa: F401
    SOURCE_LENGTH,
    ConfigError,
    IngestError,
    chaosnet_features,
    cosine_similarity,
    digits,
    evaluate,
    extract,
    find_pattern,
    firing_time_bound,
    load_dataset,
    macro_f1,
    manifest_ids,
    orbit_value,
    position_of,
    skew_tent,
    trace,
)

__version__ = "0.1.0"
