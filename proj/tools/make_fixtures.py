"""Writes the CSV fixtures under tests/data."""
import sys

import numpy as np

rng = np.random.default_rng(20240611)
n = 512
means = np.array([[-2.0, -1.0], [2.0, 1.5]])
scales = np.array([0.5, 0.7])
labels = rng.random(n) < 0.4
points = np.where(labels[:, None], means[0] + scales[0] * rng.standard_normal((n, 2)),
                  means[1] + scales[1] * rng.standard_normal((n, 2)))
out = sys.argv[1] if len(sys.argv) > 1 else "tests/data/mixture_target.csv"
np.savetxt(out, points, fmt="%.17g", delimiter=",")

# Small 5D pair used by the CLI determinism tests.
pair_rng = np.random.default_rng(42)
np.savetxt("tests/data/pair_a.csv", pair_rng.standard_normal((24, 5)), fmt="%.17g", delimiter=",")
np.savetxt("tests/data/pair_b.csv", 0.5 + pair_rng.standard_normal((24, 5)), fmt="%.17g", delimiter=",")
