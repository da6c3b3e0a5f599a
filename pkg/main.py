"""
Main entry point for the Groebner selection-strategy toolkit.
"""

import sys
from pathlib import Path

# Add the repository root to the Python path
root_path = Path(__file__).parent
sys.path.insert(0, str(root_path))

try:
    from src.core import get_logger
    from src.core.config import check_python_version
    from src.cli import main as cli_main

    logger = get_logger("main")

    def main():
        """Main application entry point."""
        try:
            # Check Python version first
            check_python_version()
            sys.exit(cli_main(sys.argv[1:]))

        except KeyboardInterrupt:
            logger.info("Interrupted by user")
            sys.exit(130)

    if __name__ == "__main__":
        main()

except ImportError as e:
    print(f"Import Error: {e}", file=sys.stderr)
    print("Please ensure all dependencies are installed:", file=sys.stderr)
    print("pip install -r requirements/base.txt", file=sys.stderr)
    sys.exit(1)
