# ensures the tests directory itself is importable (for oracles.py)
