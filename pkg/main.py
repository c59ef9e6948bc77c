"""
Super-parametric density estimator - command-line entry point

    python main.py fit --in samples.txt --method pbezier --out model.json

See ``python main.py --help`` or README.md for every subcommand.
"""
import sys

from src.superparametric.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
