"""Compare the two readings of the cusp conjugation for a given Q.

In the zero-frame presentation, (Y + c/x, V0, W0) commutes with the Y-shift
theta_0, so the conjugate is theta_0 itself and is integral.  Acting on
(y, z, u) by y -> y + c/x instead gives a map whose y-image is y + Q(v, w) at
y -> xy + c, but whose z- and u-images keep poles at x = 0.  This prints their
polar parts.
"""

import argparse

from venlab.arith import render
from venlab.maps import is_integral_map
from venlab.parser import parse_expr
from venlab import venereau as ven


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", default="v", help="Q in x, v, w (no term free of v and w)")
    ap.add_argument("--terms", type=int, default=12)
    args = ap.parse_args()
    q = parse_expr(args.q, "presentation")

    cert = ven.cusp_checks(q)
    print(cert.summary())
    m = ven.translated_conjugate(q)
    print("translated conjugate integral:", is_integral_map(m, ("y", "z", "u")))
    for name in ("z", "u"):
        polar = m[name].truncate_x(0)
        if polar:
            print(f"polar part of {name}-image ({len(polar)} terms):")
            print("  " + render(polar, args.terms))


if __name__ == "__main__":
    main()
