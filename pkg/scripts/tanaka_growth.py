"""Dimensions of Tanaka prolongations with and without the complex structure.

    python3 scripts/tanaka_growth.py --max-level 3
"""

import argparse
import time

from cartanforge import tanaka
from cartanforge.liealg import abelian, heisenberg_complex_structure, heisenberg_negative


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-level", type=int, default=3)
    args = parser.parse_args()
    m = heisenberg_negative()
    cases = {
        "Heisenberg with J": (m, heisenberg_complex_structure(m)),
        "Heisenberg without J": (m, None),
        "abelian line": (abelian(1, grading=[-1]), None),
    }
    for name, (algebra, J) in cases.items():
        start = time.perf_counter()
        result = tanaka.prolongation(algebra, J, max_level=args.max_level)
        tail = " (truncated)" if result.truncated else ""
        print(f"{name}: dims {result.dims()}{tail}, {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
