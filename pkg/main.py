"""
Matching Polynomial Toolkit
Command-line entry point for matching polynomials of regular bipartite
graphs: polynomials, enumeration, extremum scans, bounds and verification runs

Usage:
    python main.py poly "K3,3*2"
    python main.py --report output/umc.json verify umc 10 3
"""
import sys

from modules.cli import run


def main():
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
