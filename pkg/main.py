#!/usr/bin/env python3
"""
Tame lattice toolkit - default run

Sweeps every built-in field family: for each admissible m the sublattice
is built, its minimum is enumerated exactly and the images of the
Lagrangian basis are checked to be a basis of minimal vectors.

Usage:
    python main.py              # Verify every catalog entry
    python cli.py sweep --n 4 --h 16
    python cli.py --help        # See all available commands
"""

import sys
from pathlib import Path

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent / "src"))

try:
    from src.catalog import named_entries
    from src.logger import setup_logger
    from src.main_app import TameLatticeToolkit
    from src.models import STATUS_PASS
except ImportError as e:
    print(f"Import error: {e}")
    print("Make sure all dependencies are installed: pip install -r requirements.txt")
    sys.exit(1)


def main():
    """Main entry point."""
    logger = setup_logger("main")

    try:
        logger.info("Starting catalog verification")
        app = TameLatticeToolkit()

        total = passed = 0
        for entry in named_entries():
            documents = app.sweep(entry.tame_params)
            ok = sum(doc.status == STATUS_PASS for doc in documents)
            total += len(documents)
            passed += ok
            ms = ", ".join(doc.inputs["m"] for doc in documents) or "none"
            icon = "✅" if ok == len(documents) else "❌"
            print(f"{icon} {entry.label}: {ok}/{len(documents)} (m = {ms})")

        if passed == total:
            logger.info(f"Catalog verification passed ({passed}/{total})")
            print(f"✅ All {total} sublattices have a basis of minimal vectors")
        else:
            logger.error(f"Catalog verification failed ({passed}/{total})")
            print(f"❌ {total - passed} of {total} checks did not pass. Check logs for details.")
            sys.exit(1)

    except KeyboardInterrupt:
        logger.info("Process interrupted by user")
        print("\n⚠️  Process interrupted by user")
        sys.exit(0)
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        print(f"❌ Unexpected error: {e}")
        print("Check logs for detailed error information.")
        sys.exit(1)


if __name__ == "__main__":
    main()
