"""
Run the CLI as a module: ``python -m src reduce --samples samples.json``.
"""

from src.main import main

if __name__ == "__main__":
    main()
