"""Allow ``python -m arctest``."""

from arctest.cli import main

if __name__ == "__main__":
    main()
