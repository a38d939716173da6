#!/usr/bin/env python
"""Convenience script to run the ergolab command line."""

import sys

from src.app import main

if __name__ == "__main__":
    sys.exit(main())
