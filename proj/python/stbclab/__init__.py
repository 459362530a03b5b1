"""Python bindings for the stbc-lab core library."""

from ._stbclab import (
    CodeError,
    DecodeError,
    LinalgError,
    WeightSet,
    decode,
    equivalent_channel,
    f_rank,
    make_code,
    numerical_rank,
    predict_rank,
    rank_monte_carlo,
    run_cli,
    sample_channel,
    simulate,
    table_exponent,
    validate_weight_set,
)

__all__ = [
    "CodeError",
    "DecodeError",
    "LinalgError",
    "WeightSet",
    "decode",
    "equivalent_channel",
    "f_rank",
    "make_code",
    "numerical_rank",
    "predict_rank",
    "rank_monte_carlo",
    "run_cli",
    "sample_channel",
    "simulate",
    "table_exponent",
    "validate_weight_set",
]
