"""Monte Carlo study of both estimators on the b=10 planar walk, next to exact moments.

Usage: python3 scripts/planar_study.py [--paths 10000] [--seed 2012]
"""
import argparse
import time

from stopwalk import LinearRegion, OutcomeModel, StudyConfig, run_study
from stopwalk.moments import exact_moments

ROWS = {
    "row1": (0.4, 0.15, 0.3, 0.15),
    "row2": (0.7, 0.1, 0.1, 0.1),
}
# truncation orders chosen so the unabsorbed mass is below 1e-6
EXACT_ORDER = {"row1": 1500, "row2": 300}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--paths", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=2012)
    args = ap.parse_args()
    region = LinearRegion((1, 0, -1, 0), 10, 10**6)
    for name, p in ROWS.items():
        model = OutcomeModel(p)
        start = time.perf_counter()
        summary = run_study(StudyConfig(model, region, args.paths, args.seed,
                                        estimator="lattice2d"))
        elapsed = time.perf_counter() - start
        exact, absorbed = exact_moments(model, 10, EXACT_ORDER[name])
        print(f"{name} p={p}  ({elapsed:.2f} s, exact absorbed mass {absorbed:.8f})")
        print(f"  {'est':9s}{'cat':>4s}{'MC mean':>10s}{'MC sd':>9s}{'exact mean':>12s}{'exact sd':>10s}")
        for fam in ("ml", "unbiased"):
            for i in range(3):
                st = summary.stats[(fam, i)]
                em, es = exact[(fam, i)]
                print(f"  {fam:9s}{'p' + str(i + 1):>4s}{st.mean:10.4f}{st.sd:9.4f}{em:12.4f}{es:10.4f}")


if __name__ == "__main__":
    main()
