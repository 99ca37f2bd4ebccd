"""Entry point for running artintool as a module."""

from artintool.cli import main

if __name__ == "__main__":
    main()
