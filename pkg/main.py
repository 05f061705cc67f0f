#!/usr/bin/env python3
"""
Main entry point for the berkcrucial toolkit.
Dispatches to the command-line front end and returns its exit status.
"""

import os
import sys

# Add project root to path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from berkcrucial.cli import run


def main() -> int:
    """Main entry point."""
    try:
        return run(sys.argv[1:])
    except KeyboardInterrupt:
        return 130


if __name__ == '__main__':
    sys.exit(main())
