"""Regenerates tests/nct_oracle_table.hpp: Monte Carlo values of the
non-central t CDF from numpy's generator, independent of the library."""
import numpy as np

SEED = 20160518
DRAWS = 10_000_000
CHUNK = 1_000_000
POINTS = [
    (1.5, 9, 1.0), (-1.0, 1, 0.0), (0.0, 1, 1.0), (3.0, 1, 2.0), (-2.0, 2, -1.0),
    (0.5, 2, 0.5), (4.0, 3, 3.0), (1.0, 4, 0.0), (-0.5, 5, 0.25), (2.0, 6, 2.5),
    (6.0, 9, 4.0), (0.3, 9, 0.316), (-3.0, 9, -2.0), (1.0, 14, 1.5), (2.5, 19, 2.0),
    (-1.2, 29, -0.8), (5.5, 29, 5.477), (0.0, 29, -1.0), (10.0, 49, 8.0), (-0.7, 99, 0.1),
]


def main():
    rng = np.random.default_rng(SEED)
    rows = []
    for t, dof, delta in POINTS:
        hits = 0
        for _ in range(DRAWS // CHUNK):
            z = rng.standard_normal(CHUNK) + delta
            v = rng.chisquare(dof, CHUNK)
            hits += int(np.count_nonzero(z / np.sqrt(v / dof) <= t))
        p = hits / DRAWS
        rows.append((t, dof, delta, p, (p * (1 - p) / DRAWS) ** 0.5))
    print("#pragma once\n")
    print("// Generated by tools/oracles/nct_oracle.py (numpy, seed %d, %d draws per point)." % (SEED, DRAWS))
    print("\nnamespace iminfer::testing {\n")
    print("struct NctOracleRow {\n  double t;\n  int dof;\n  double delta;\n  double p;\n  double se;\n};\n")
    print("inline constexpr NctOracleRow kNctOracle[] = {")
    for t, dof, delta, p, se in rows:
        print("    {%r, %d, %r, %.7f, %.3e}," % (t, dof, delta, p, se))
    print("};\n\n}  // namespace iminfer::testing")


if __name__ == "__main__":
    main()
