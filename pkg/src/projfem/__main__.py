"""Allow running projfem as a module: python -m projfem"""

from projfem.main import app

if __name__ == "__main__":
    app()
