"""
Test suite for the Groebner selection-strategy toolkit.
Contains unit tests and shared fixtures.
"""

import sys
from pathlib import Path

# Add the repository root to the Python path so `src` imports resolve
root_path = Path(__file__).parent.parent
if str(root_path) not in sys.path:
    sys.path.insert(0, str(root_path))
