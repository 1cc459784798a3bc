#!/usr/bin/env python3
"""Module entry point: python -m skeintrace"""

from skeintrace.cli.main import main

if __name__ == "__main__":
    main()
