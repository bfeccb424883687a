#!/usr/bin/env python3

"""congtool entry point for running from a source checkout"""

import sys

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
