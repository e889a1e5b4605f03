"""Exact and approximate analysis of repeated independent gambles."""

from ._stpete import (
    GambleTable,
    SimResult,
    bracketed,
    clt_params,
    contour_prob_pos,
    decimal,
    erf,
    expected_value,
    extend_prob,
    fit_recurrence,
    g_family_table,
    min_repeats,
    min_repeats_clt,
    prob_pos,
    prob_pos_clt,
    prob_pos_decimal,
    prob_pos_sweep,
    shot_win_probability,
    simulate,
    st_pete_table,
    table_from_json,
    table_to_json,
    variance,
)

__all__ = [
    "GambleTable",
    "SimResult",
    "bracketed",
    "clt_params",
    "contour_prob_pos",
    "decimal",
    "erf",
    "expected_value",
    "extend_prob",
    "fit_recurrence",
    "g_family_table",
    "min_repeats",
    "min_repeats_clt",
    "prob_pos",
    "prob_pos_clt",
    "prob_pos_decimal",
    "prob_pos_sweep",
    "shot_win_probability",
    "simulate",
    "st_pete_table",
    "table_from_json",
    "table_to_json",
    "variance",
]
