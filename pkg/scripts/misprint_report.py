"""List every place where a transcribed formula differs from the recomputed one.

    python3 scripts/misprint_report.py
"""

from cartanforge.cartan.connection import diff_alpha_tj_display, diff_closed_forms
from cartanforge.jetcalc.printed import diff_printed_A1
from cartanforge.jetcalc.verify import verify_identity
from cartanforge.jetcalc.words import curvature_raw, essential_symmetric, literal_form


def main() -> None:
    print("expanded A_1, monomials that disagree (induction formula vs printed):")
    for mono, (exact, printed) in diff_printed_A1().items():
        print(f"   {mono}: {exact} vs {printed}")
    print("closed forms of the connection, template minus printed form:")
    for key, diff in diff_closed_forms().items():
        for mono, value in diff.items():
            print(f"   alpha_{key[0]}{key[1]} at fiber monomial {mono}: {value}")
    print(f"printed alpha_tj: {len(diff_alpha_tj_display())} fiber monomials differ")
    checks = {
        "symmetric Delta_1 literal form vs corrected": literal_form("essential1") - essential_symmetric("Delta1"),
        "Delta_3 + 2 Delta_4 with literal Delta_3": literal_form("curvature3") + 2 * curvature_raw("Delta4"),
        "Delta_3 + 2 Delta_4 with corrected Delta_3": curvature_raw("Delta3") + 2 * curvature_raw("Delta4"),
    }
    for name, expr in checks.items():
        report = verify_identity(expr, n_points=3, seed=1)
        print(f"{name}: {'zero' if report.zero else 'nonzero, e.g. ' + str(report.witness_value)}")


if __name__ == "__main__":
    main()
