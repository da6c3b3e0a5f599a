"""
Utilities module: input validation and file formats.
"""

from .validation import (
    validate_positive_int,
    validate_probability,
    validate_prime,
    validate_strategy_name,
    validate_distribution_string,
    validate_observation_mode,
    validate_value_kind,
)

from .file_utils import (
    BENCHMARK_COLUMNS,
    IdealFile,
    append_epoch_log,
    benchmark_frame,
    parse_ideal_text,
    read_ideal_file,
    read_json,
    read_jsonl,
    write_benchmark_csv,
    write_ideal_file,
    write_json,
    write_jsonl,
)

__all__ = [
    # Validation functions
    "validate_positive_int",
    "validate_probability",
    "validate_prime",
    "validate_strategy_name",
    "validate_distribution_string",
    "validate_observation_mode",
    "validate_value_kind",

    # File formats
    "BENCHMARK_COLUMNS",
    "IdealFile",
    "append_epoch_log",
    "benchmark_frame",
    "parse_ideal_text",
    "read_ideal_file",
    "read_json",
    "read_jsonl",
    "write_benchmark_csv",
    "write_ideal_file",
    "write_json",
    "write_jsonl",
]
