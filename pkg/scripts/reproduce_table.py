#!/usr/bin/env python3
"""Recompute every headline number and print the pass/fail table."""

import sys

from tribell.cli import main

if __name__ == "__main__":
    sys.exit(main(["reproduce", *sys.argv[1:]]))
