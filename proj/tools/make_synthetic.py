# Copyright 2026 The ttcmarket Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the synthetic evaluation fixtures under data/.

Accuracy rises with compute and saturates while the token count doubles per
level, so the value offered to users is concave in compute.
"""

import argparse
import csv
import itertools
import json
import math
from pathlib import Path

HEADER = ["model", "dataset", "method", "level_ordinal", "level_label",
          "accuracy_pct", "avg_output_tokens"]


def synthetic_9x7():
    rows, pricing = [], {}
    for m in range(9):
        model = f"synth_{m}"
        pricing[model] = round(0.5 + 1.5 * m / 8, 4)
        # The last model leads every other model at every level.
        ceiling = 72.0 + 2.3 * m + (10.0 if m == 8 else 0.0)
        floor = ceiling - 24.0 - 1.1 * m
        tau = 1.4 + 0.15 * m
        base_tokens = 1500 * (1.0 + 0.07 * m)
        for k in range(7):
            acc = ceiling - (ceiling - floor) * math.exp(-k / tau)
            tokens = round(base_tokens * 2 ** k)
            rows.append([model, "gsm8k", "best_of_n", k, f"n={2 ** k}",
                         f"{acc:.4f}", tokens])
    return rows, pricing


def chain_of_thought_3x5():
    rows, pricing = [], {}
    for m in range(3):
        model = f"reasoner_{m}"
        pricing[model] = [0.6, 1.1, 1.9][m]
        for k in range(5):
            acc = 80.0 + 4.0 * m - (30.0 - 3.0 * m) * math.exp(-k / (1.2 + 0.3 * m))
            tokens = round((900 + 250 * m) * 1.9 ** k)
            rows.append([model, "gsm8k", "chain_of_thought", k, f"q{k + 1}",
                         f"{acc:.4f}", tokens])
    return rows, pricing


def min_value_gap(rows, pricing, vpp, margin=0.25):
    values = {}
    for model, _, _, _, _, acc, tokens in rows:
        price = tokens * pricing[model] / 1e6
        values.setdefault(model, []).append(vpp * float(acc) - price)
    gap = math.inf
    for a, b in itertools.combinations(values.values(), 2):
        gap = min(gap, min(abs(x - y) for x in a for y in b))
    return gap


def write(out_dir, stem, rows, pricing):
    with open(out_dir / f"{stem}.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(HEADER)
        w.writerows(rows)
    with open(out_dir / f"{stem}_pricing.json", "w") as f:
        json.dump(pricing, f, indent=2)
        f.write("\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path,
                        default=Path(__file__).resolve().parent.parent / "data")
    args = parser.parse_args()
    for stem, (rows, pricing) in [("synthetic_9x7", synthetic_9x7()),
                                  ("cot_3x5", chain_of_thought_3x5())]:
        gap = min_value_gap(rows, pricing, 0.008)
        if gap < 1e-6:
            raise SystemExit(f"{stem}: value gap {gap} too small")
        write(args.out, stem, rows, pricing)
        print(f"{stem}: {len(rows)} rows, min cross-provider value gap {gap:.3g}")


if __name__ == "__main__":
    main()
