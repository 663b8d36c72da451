"""
Configuration Module
Runtime limits, defaults and console logging setup for the toolkit
"""
import logging
import os
import sys


VERSION = "1.0.0"

# Enumeration and oracle limits
ENUM_CAP = int(os.getenv("MATCHPOLY_ENUM_CAP", "14"))  # largest two_n for regular enumeration
BRUTEFORCE_EDGE_CAP = int(os.getenv("MATCHPOLY_BRUTEFORCE_CAP", "24"))  # edge slots
MEMO_CACHE_SIZE = int(os.getenv("MATCHPOLY_MEMO_SIZE", "4096"))  # component polynomials
EXACT_BOUND_LIMIT = int(os.getenv("MATCHPOLY_EXACT_LIMIT", "1000"))  # n for exact bounds

# Run defaults
DEFAULT_SEED = int(os.getenv("MATCHPOLY_SEED", "20240601"))
DEFAULT_THREADS = int(os.getenv("MATCHPOLY_THREADS", str(os.cpu_count() or 1)))
OUTPUT_DIR = os.getenv("MATCHPOLY_OUTPUT_DIR", "output")
LOG_LEVEL = os.getenv("MATCHPOLY_LOG_LEVEL", "WARNING")

LOG_FORMAT = "[%(levelname)s] %(message)s"


def configure_logging(level=None):
    """
    Route all toolkit logging to stderr with tagged lines

    Args:
        level: Level name or number; defaults to LOG_LEVEL

    Returns:
        The configured root logger
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level if level is not None else LOG_LEVEL.upper())
    return root
