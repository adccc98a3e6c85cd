#!/usr/bin/env python3
"""Regenerate crates/core/data/steam_saturation_if97.csv.

Saturation-line properties from the IAPWS-IF97 industrial formulation as
implemented by the `iapws` package (pinned: iapws==1.5.5). Units are SI:
Pa, kg/m^3, m/s, J/(kg K), J/kg. Rows: the triple point, then 274 K to 647 K
in 1 K steps.
"""
import sys

from iapws import IAPWS97

HEADER = "T_K,p_sat_Pa,rho_V,rho_L,a_V,a_L,s_V,s_L,e_V,e_L,cp_L"


def main(out):
    temps = [273.16] + [float(t) for t in range(274, 648)]
    with open(out, "w", newline="\n") as fh:
        fh.write(HEADER + "\n")
        for t in temps:
            liq = IAPWS97(T=t, x=0)
            vap = IAPWS97(T=t, x=1)
            row = [
                t,
                liq.P * 1e6,
                vap.rho,
                liq.rho,
                vap.w,
                liq.w,
                vap.s * 1e3,
                liq.s * 1e3,
                vap.u * 1e3,
                liq.u * 1e3,
                liq.cp * 1e3,
            ]
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/data/steam_saturation_if97.csv")
