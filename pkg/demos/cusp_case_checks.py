"""Print every numeric check behind the equality case for three cusps.

The case (b) length scan takes about ten seconds.
Run with ``python3 demos/cusp_case_checks.py``.
"""

from orbirad.yamada import cusp_case_report


def main():
    rep = cusp_case_report()
    for block in rep["reports"]:
        print(f"[{block['name']}] pass={block['pass']}")
        for c in block["checks"]:
            mark = "ok" if c["pass"] else "FAILED"
            print(f"    {c['name']}: {c['lhs']:.9g} {c['relation']} {c['rhs']:.9g}  {mark}")
    print("overall:", rep["pass"])


if __name__ == "__main__":
    main()
