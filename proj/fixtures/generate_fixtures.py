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
"""Writes the synthetic fixtures under fixtures/.

Every fixture is a pure function of the seeds below (stdlib `random` only),
so rerunning the script reproduces the committed files byte for byte.
Run make_manifests.py afterwards to refresh the expected values.
"""

import csv
import itertools
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))


def geometric_counts(rng, ratio, n_types, n_draws):
    weights = [ratio ** k for k in range(n_types)]
    counts = [0] * n_types
    for k in rng.choices(range(n_types), weights=weights, k=n_draws):
        counts[k] += 1
    return counts


def syllable_names(rng, syllables, n):
    names = ["-".join(p).capitalize() for p in itertools.product(syllables, repeat=2)
             if p[0] != p[1]]
    rng.shuffle(names)
    return names[:n]


def write_rows(name, header, rows):
    with open(os.path.join(HERE, name), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def first_name_fixture(name, seed, syllables):
    rng = random.Random(seed)
    tokens = syllable_names(rng, syllables, 300)
    counts = geometric_counts(rng, 0.955, 300, 150000)
    rows = sorted((t, c) for t, c in zip(tokens, counts))
    write_rows(name, ["token", "count"], rows)


KOREAN = ["min", "ji", "seo", "hyun", "jun", "woo", "yeon", "eun", "su", "young",
          "ho", "jin", "hee", "sung", "kyung", "mi", "ha", "do", "yun", "chan"]
VIETNAMESE = ["anh", "minh", "lan", "hoa", "thu", "linh", "tuan", "hung", "mai", "nga",
              "duc", "phuong", "trang", "quang", "hai", "long", "thanh", "binh", "huong", "nam"]

MALE = ["John", "William", "James", "Robert", "Thomas", "Alexander", "David", "Hugh",
        "Andrew", "George", "Archibald", "Matthew", "Peter", "Walter", "Adam", "Patrick",
        "Allan", "Charles", "Daniel", "Gilbert", "Henry", "Duncan", "Michael", "Neil",
        "Samuel", "Francis", "Joseph", "Richard", "Edward", "Gavin", "Ninian", "Quintin",
        "Colin", "Donald", "Ebenezer", "Claud", "Malcolm", "Zacharias", "Lachlan", "Ronald"]
FEMALE = ["Margaret", "Janet", "Agnes", "Elizabeth", "Mary", "Jean", "Marion", "Isobel",
          "Helen", "Catherine", "Christian", "Anne", "Grizel", "Barbara", "Euphemia",
          "Katherine", "Bethia", "Sarah", "Rachel", "Susanna", "Lilias", "Mausie", "Elspeth",
          "Jacobina", "Cecilia", "Martha", "Rebecca", "Esther", "Violet", "Alison",
          "Beatrix", "Joanna", "Dorothy", "Sophia", "Amelia", "Rosina", "Henrietta", "Lucy",
          "Clementina", "Williamina"]
PARISHES = ["Beith", "Dalry", "Kilbirnie", "Largs"]


def four_parish(seed):
    rng = random.Random(seed)
    rows = []
    for parish in PARISHES:
        for gender, stock in (("M", MALE), ("F", FEMALE)):
            order = stock[:]
            # Neighbouring ranks swap occasionally between parishes.
            for i in range(len(order) - 1):
                if rng.random() < 0.2:
                    order[i], order[i + 1] = order[i + 1], order[i]
            counts = geometric_counts(rng, 0.86, len(order), 1500 + rng.randrange(500))
            rows += [(t, c, f"{gender}:{parish}") for t, c in zip(order, counts) if c > 0]
    rows.sort()
    write_rows("four_parish.csv", ["token", "count", "group"], rows)


def delaware(seed):
    rng = random.Random(seed)
    stock = {"M": [f"{n}" for n in MALE] + [f"M{i:03d}" for i in range(260)],
             "F": [f"{n}" for n in FEMALE] + [f"F{i:03d}" for i in range(260)]}
    decades = list(range(1910, 2010, 10))
    population = [round(200000 * 1.16 ** i) for i in range(len(decades))]
    rows = []
    for i, (decade, pop) in enumerate(zip(decades, population)):
        for gender in ("M", "F"):
            names = stock[gender][:]
            # Fashion drift: a decade-dependent slice of the stock rotates to
            # the top, and the decay flattens as the population grows.
            shift = 7 * i
            names = names[shift:] + names[:shift]
            ratio = 0.90 + 0.007 * i
            counts = geometric_counts(rng, ratio, len(names), pop // 40)
            rows += [(t, c, gender, decade) for t, c in zip(names, counts) if c > 0]
    rows.sort(key=lambda r: (r[3], r[2], r[0]))
    write_rows("delaware_decades.csv", ["token", "count", "group", "period"], rows)
    write_rows("delaware_population.csv", ["period", "value"],
               list(zip(decades, population)))


THROW = ("bash bat bunt cast catapult chuck fire flick fling flip hit hurl kick knock "
         "lob loft nudge pass pitch punt shoot shove slam slap sling smash tap throw tip "
         "toss").split()


def throw_verbs(seed):
    rng = random.Random(seed)
    with open(os.path.join(HERE, "throw_verbs.txt"), "w") as f:
        f.write("# \"throw\" alternation class\n")
        for v in THROW:
            f.write(v + "\n")
    present = [v for v in THROW if v not in ("bunt", "loft")]
    rng.shuffle(present)
    rows = []
    for k, verb in enumerate(present):
        if verb == "lob":
            rows.append((verb, 0))
            continue
        rows.append((verb, max(1, round(60000 * 0.78 ** k * rng.uniform(0.9, 1.1)))))
    # Case variant that folds onto an existing member.
    rows.append(("Throw", 17))
    for distractor in ("table", "run", "blue", "quickly"):
        rows.append((distractor, rng.randrange(1000, 90000)))
    rows.sort()
    write_rows("throw_verbs.csv", ["token", "count"], rows)


def exact_fixtures():
    write_rows("exact_geometric.csv", ["token", "count"],
               [(f"g{k:02d}", 2048 >> k) for k in range(1, 11)])
    write_rows("exact_zipf.csv", ["token", "count"],
               [(f"z{k:03d}", round(2 ** 50 / k)) for k in range(1, 101)])


def affine_trend():
    rows = []
    covariate = []
    for i in range(6):
        period = 2001 + i
        rows += [(f"w{j:02d}", 1, "", period) for j in range(2 * i + 3)]
        covariate.append((period, 5 * i + 7))
    write_rows("affine_tables.csv", ["token", "count", "group", "period"], rows)
    write_rows("affine_covariate.csv", ["period", "value"], covariate)
    write_rows("disjoint_covariate.csv", ["period", "value"],
               [(1990 + i, 10 + i) for i in range(6)])


def sim_configs():
    configs = {
        "sim_founder.cfg": dict(seed=7, generations=50, births_per_generation=20,
                                innovation_rate=0, mortality_rate=0, migration_rate=0,
                                founders=1, founder_types=1),
        "sim_high_alpha.cfg": dict(seed=2024, generations=200, births_per_generation=500,
                                   innovation_rate=0.05, mortality_rate=0.02,
                                   migration_rate=0, founders=100, founder_types=100),
        "sim_low_alpha.cfg": dict(seed=2024, generations=200, births_per_generation=500,
                                  innovation_rate=0.0005, mortality_rate=0.02,
                                  migration_rate=0, founders=100, founder_types=100),
        "sim_extinct.cfg": dict(seed=1, generations=3, birth_schedule="0",
                                innovation_rate=0, mortality_rate=1, migration_rate=0,
                                founders=10, founder_types=2),
        "sim_migration.cfg": dict(seed=99, generations=30, births_per_generation=100,
                                  innovation_rate=0.01, mortality_rate=0.03,
                                  migration_rate=0.1,
                                  migrant_pool="Ali:0.5,Omar:0.3,Yusuf:0.2",
                                  founders=50, founder_types=10),
    }
    for name, cfg in configs.items():
        with open(os.path.join(HERE, name), "w") as f:
            f.write("# name-stock evolution config\n")
            for k, v in cfg.items():
                f.write(f"{k} = {v}\n")


if __name__ == "__main__":
    first_name_fixture("korean_shaped.csv", 2000, KOREAN)
    first_name_fixture("vietnamese_shaped.csv", 2009, VIETNAMESE)
    four_parish(1701)
    delaware(1910)
    throw_verbs(1993)
    exact_fixtures()
    affine_trend()
    sim_configs()
