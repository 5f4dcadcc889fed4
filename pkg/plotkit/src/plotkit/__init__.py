"""Experiment CSV chart generation."""

from .core import (
    CsvError,
    eta_stats,
    load_rows,
    main,
    plot_eta_sweep,
    plot_solved_within,
    solved_stats,
    trial_cap,
)

__version__ = "0.1.0"
