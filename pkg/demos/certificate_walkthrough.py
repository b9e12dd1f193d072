"""Classify a handful of orbifolds and print their certificates.

Run with ``python3 demos/certificate_walkthrough.py``.
"""

import math

from orbirad.certify import OrbifoldSignature, certify

SIGNATURES = [
    (0, (2, 3, 7)),
    (0, (2, 3, 8)),
    (0, (2, 2, 2, 3)),
    (0, (2, 2, 2, 2, 2)),
    (0, (3, 3, 3, 3)),
    (1, (5,)),
    (2, ()),
    (0, (math.inf, math.inf, math.inf)),
]


def main():
    for genus, orders in SIGNATURES:
        cert = certify(OrbifoldSignature(genus, orders))
        label = ",".join("inf" if o == math.inf else str(o) for o in orders) or "-"
        print(f"genus {genus}, orders {label}: {cert.branch.value}, {cert.verdict.value}, pass={cert.passed}")
        for c in cert.checks:
            print(f"    {c.name}: {c.lhs:.9g} {c.relation} {c.rhs:.9g}  {'ok' if c.passed else 'FAILED'}")


if __name__ == "__main__":
    main()
