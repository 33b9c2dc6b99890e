#!/usr/bin/env python3
# Regenerates data/separable300.arff (two well-separated Gaussian classes,
# one weakly informative nominal attribute, one noise attribute, ~2% missing).
import numpy as np

rng = np.random.default_rng(20240611)
n_pos, n_neg = 120, 180
rows = []
for label, n, mu in (("pos", n_pos, 2.0), ("neg", n_neg, -2.0)):
    x1 = rng.normal(mu, 1.0, n)
    x2 = rng.normal(mu / 2, 1.0, n)
    noise = rng.normal(0.0, 1.0, n)
    colour = rng.choice(["red", "green", "blue"], n,
                        p=[0.5, 0.3, 0.2] if label == "pos" else [0.2, 0.3, 0.5])
    for i in range(n):
        rows.append([f"{x1[i]:.4f}", f"{x2[i]:.4f}", f"{noise[i]:.4f}", colour[i], label])
order = rng.permutation(len(rows))
rows = [rows[i] for i in order]
for r in rows:
    for j in range(4):
        if rng.random() < 0.02:
            r[j] = "?"
with open("data/separable300.arff", "w") as f:
    f.write("% Two Gaussian classes, linearly separable up to ~2% overlap.\n")
    f.write("@relation separable300\n\n")
    f.write("@attribute x1 numeric\n@attribute x2 numeric\n@attribute noise numeric\n")
    f.write("@attribute colour {red,green,blue}\n@attribute class {pos,neg}\n\n@data\n")
    for r in rows:
        f.write(",".join(r) + "\n")
