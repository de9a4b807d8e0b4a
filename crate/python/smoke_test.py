"""Quick check that the extension imports and agrees with known values."""

from fractions import Fraction

import voaf


def main():
    rows = voaf.table41()
    assert len(rows) == 5
    minus = {r["module"]: r for r in rows}["Mtheta-"]
    assert Fraction(minus["a"]) == Fraction(9, 16)
    assert Fraction(minus["b"]) == Fraction(-45, 128)

    # M+ and M- split the partition numbers 1, 1, 2, 3, 5, 7, 11
    plus = [int(c) for c in voaf.char_series("M+", "6")["coeffs"]]
    minus = [int(c) for c in voaf.char_series("M-", "6")["coeffs"]]
    assert [a + b for a, b in zip(plus, minus)] == [1, 1, 2, 3, 5, 7, 11]

    assert voaf.fusion_rule("M(s=2)", "Mtheta+", "Mtheta+") == 1
    assert voaf.fusion_rule("Mtheta+", "Mtheta+", "Mtheta+") == 0
    csv = voaf.fusion_table_csv(["2"])
    assert len(csv.splitlines()) == 1 + 6 ** 3

    r = voaf.reduce("M-", "h(-1)^3|0>")
    assert len(r["coordinates"]) == 2

    report = voaf.verify_suite("characters", char_cutoff="10")
    assert all(c["status"] == "pass" for c in report["checks"]), report

    try:
        voaf.fusion_rule("nope", "M+", "M+")
    except ValueError:
        pass
    else:
        raise AssertionError("bad label accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
