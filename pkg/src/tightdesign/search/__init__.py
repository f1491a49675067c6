"""Exhaustive search over small beta for tight 2s-designs."""

from .exact import alpha_count, g_alpha, g_from_t, g_is_integer, n_max, n_min, scan_brute, scan_exact, v_from_n
from .runner import AlphaTask, CheckpointError, SearchConfig, SearchReport, read_checkpoint, run_search, scan_alpha, scan_chunk, scan_task

__all__ = [
    "alpha_count",
    "g_alpha",
    "g_from_t",
    "g_is_integer",
    "n_max",
    "n_min",
    "scan_brute",
    "scan_exact",
    "v_from_n",
    "AlphaTask",
    "CheckpointError",
    "SearchConfig",
    "SearchReport",
    "read_checkpoint",
    "run_search",
    "scan_alpha",
    "scan_chunk",
    "scan_task",
]
