"""Print the level-2 cohomology of the bundled CR algebra, with H^2 representatives.

    python3 scripts/cohomology_report.py [--algebra NAME_OR_FILE]
"""

import argparse

from cartanforge import cohomology
from cartanforge.cli import load_algebra_file


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--algebra", default=None)
    args = parser.parse_args()
    algebra, _ = load_algebra_file(args.algebra, "heisenberg_prolonged")
    low, high = cohomology.homogeneity_range(algebra, 2)
    print(f"{'h':>3} {'C':>4} {'Z':>4} {'B':>4} {'H':>4} {'ker d*':>7}")
    for h in range(low, high + 1):
        dims = cohomology.space_dims(algebra, 2, h)
        kernel = cohomology.kernel_codifferential_dim(algebra, 2, h)
        print(f"{h:>3} {dims.cochains:>4} {dims.cocycles:>4} {dims.coboundaries:>4} {dims.cohomology:>4} {kernel:>7}")
        for rep in cohomology.h2_basis(algebra, h) if dims.cohomology else []:
            terms = " + ".join(f"{coeff} {args_[0]}*^{args_[1]}* (x) {value}" for args_, value, coeff in rep.to_json(algebra))
            print(f"      representative: {terms}")
    print("cocycle equations:")
    for row in cohomology.cocycle_equations(algebra):
        print("   " + " + ".join(f"{v} {k}" for k, v in row.items()) + " = 0")


if __name__ == "__main__":
    main()
