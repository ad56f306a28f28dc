import sys
from pathlib import Path

# make genutil importable regardless of how pytest inserts paths
sys.path.insert(0, str(Path(__file__).parent))
