#!/usr/bin/env python3
"""Thin entry point: plot.py <csv> -o <fig> [--style eta|solved] [--dump-stats]."""

from plotkit.core import main

if __name__ == "__main__":
    raise SystemExit(main())
