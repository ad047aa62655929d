#!/usr/bin/env python3
"""
Command-line entry for discordlab

Usage:
    python run.py make-state --family werner --m 8 --z -1 --out werner.json
    python run.py check werner.json --inequality eq4 --repartition 2x32
    python run.py werner-scan --m 8 --z-from -1 --z-to 0 --steps 101 --bipartition 2x32 --out scan.csv
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from discordlab.app import main

if __name__ == '__main__':
    sys.exit(main())
