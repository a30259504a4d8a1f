#!/usr/bin/env python3
# Copyright 2026 The lexdist Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Computes fixtures/manifest.json from the fixture files.

Deliberately shares no code with the C++ library: it re-reads the CSVs with
the csv module and recomputes every expected value with plain Python math.
"""

import csv
import json
import math
import os
from collections import defaultdict

HERE = os.path.dirname(os.path.abspath(__file__))


def read(name):
    with open(os.path.join(HERE, name), newline="") as f:
        return list(csv.DictReader(f))


def ranked(counts_by_token, min_count):
    kept = [(t, c) for t, c in counts_by_token.items() if c >= min_count]
    kept.sort(key=lambda tc: (-tc[1], tc[0]))
    return kept


def totals(rows, key=None):
    out = defaultdict(int)
    for r in rows:
        out[r[key] if key else "all"] += int(r["count"])
    return dict(out)


def per_token(rows, pred=lambda r: True):
    out = defaultdict(int)
    for r in rows:
        if pred(r):
            out[r["token"]] += int(r["count"])
    return out


def pearson_r2(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    return sxy * sxy / (sxx * syy)


def entropy_bits(counts):
    total = sum(counts)
    return -sum(c / total * math.log2(c / total) for c in counts if c > 0)


def fit_r2(counts, power_law):
    ys = [math.log(c) for c in counts]
    xs = [math.log(k) if power_law else float(k) for k in range(1, len(counts) + 1)]
    return pearson_r2(xs, ys)


def paired_t(a, b):
    d = [x - y for x, y in zip(a, b)]
    n = len(d)
    m = sum(d) / n
    sd = math.sqrt(sum((v - m) ** 2 for v in d) / (n - 1))
    return m / (sd / math.sqrt(n))


def main():
    manifest = {}

    for name in ("korean_shaped", "vietnamese_shaped"):
        rows = read(name + ".csv")
        tok = per_token(rows)
        r40 = ranked(tok, 40)
        manifest[name] = {
            "total": sum(tok.values()),
            "n_min40": len(r40),
            "top_token": r40[0][0],
            "top_count": r40[0][1],
            "n_min1": len(ranked(tok, 1)),
            "zero_count_tokens": sum(1 for c in tok.values() if c == 0),
        }

    kr = [c for _, c in ranked(per_token(read("korean_shaped.csv")), 1)]
    vn = [c for _, c in ranked(per_token(read("vietnamese_shaped.csv")), 1)]
    pk = [c / sum(kr) for c in kr][:50]
    pv = [c / sum(vn) for c in vn][:50]
    manifest["korean_vs_vietnamese_top50"] = {
        "probability": pearson_r2(pk, pv),
        "log_probability": pearson_r2([math.log(x) for x in pk], [math.log(x) for x in pv]),
    }

    parish = read("four_parish.csv")
    manifest["four_parish"] = {
        "total": totals(parish)["all"],
        "group_totals": totals(parish, "group"),
    }

    dela = read("delaware_decades.csv")
    pop = {int(r["period"]): float(r["value"]) for r in read("delaware_population.csv")}
    decades = sorted({int(r["period"]) for r in dela})
    cumulative = defaultdict(int)
    cum_perplexity, geo_r2, pl_r2 = [], [], []
    for d in decades:
        this = per_token(dela, lambda r, d=d: int(r["period"]) == d)
        for t, c in this.items():
            cumulative[t] += c
        cum_counts = [c for _, c in ranked(cumulative, 5)]
        cum_perplexity.append(2 ** entropy_bits(cum_counts))
        counts = [c for _, c in ranked(this, 5)]
        geo_r2.append(fit_r2(counts, False))
        pl_r2.append(fit_r2(counts, True))
    manifest["delaware"] = {
        "decades": decades,
        "total": totals(dela)["all"],
        "final_cumulative_total": sum(cumulative.values()),
        "cumulative_perplexity_min5": cum_perplexity,
        "perplexity_vs_population_r2": pearson_r2([pop[d] for d in decades], cum_perplexity),
        "per_decade_geometric_r2_min5": geo_r2,
        "per_decade_power_law_r2_min5": pl_r2,
        "paired_t_geometric_minus_power_law": paired_t(geo_r2, pl_r2),
    }

    throw_rows = read("throw_verbs.csv")
    with open(os.path.join(HERE, "throw_verbs.txt")) as f:
        members = [l.strip().lower() for l in f if l.strip() and not l.startswith("#")]
    folded = defaultdict(int)
    present = set()
    for r in throw_rows:
        t = r["token"].lower()
        if t in members:
            folded[t] += int(r["count"])
            present.add(t)
    kept = ranked({t: folded[t] for t in present}, 1)
    manifest["throw_verbs"] = {
        "list_size": len(members),
        "n_min1": len(kept),
        "top_token": kept[0][0],
        "missing": sorted(m for m in members if m not in present),
        "excluded_min1": sorted(t for t in present if folded[t] < 1),
    }

    with open(os.path.join(HERE, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
