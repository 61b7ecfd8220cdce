#!/usr/bin/env python3
# Copyright 2026 The pmatch Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes a synthetic taxi-trip CSV in the public Chicago trips schema.

Trips are spread over one day with a morning and an evening peak, between a
few dozen fixed community-area centroids. Timestamps are rounded to 15
minutes like the public data. A handful of rows lack centroids so the reader's
drop rule is exercised.
"""

import argparse
import csv
import datetime as dt
import random


def centroids(rng, count):
    return [(round(-87.65 + rng.uniform(-0.12, 0.12), 9),
             round(41.85 + rng.uniform(-0.15, 0.15), 9)) for _ in range(count)]


def stamp(t):
    return t.strftime("%m/%d/%Y %I:%M:%S %p")


def round15(t):
    minutes = (t.hour * 60 + t.minute) // 15 * 15
    return t.replace(hour=minutes // 60, minute=minutes % 60, second=0)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/taxi_fixture.csv")
    ap.add_argument("--trips", type=int, default=2400)
    ap.add_argument("--date", default="2023-10-19")
    ap.add_argument("--seed", type=int, default=20231019)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    areas = centroids(rng, 48)
    day = dt.datetime.fromisoformat(args.date)
    rows = []
    for i in range(args.trips):
        # Mixture of a flat base load and two rush-hour bumps (in hours).
        pick = rng.random()
        if pick < 0.4:
            hour = rng.uniform(-1.0, 24.0)
        elif pick < 0.7:
            hour = rng.gauss(8.5, 1.5)
        else:
            hour = rng.gauss(17.5, 2.0)
        start = day + dt.timedelta(hours=min(max(hour, -1.0), 23.9))
        end = start + dt.timedelta(minutes=rng.uniform(4, 55))
        a, b = rng.choice(areas), rng.choice(areas)
        row = {
            "Trip ID": f"t{i:05d}",
            "Trip Start Timestamp": stamp(round15(start)),
            "Trip End Timestamp": stamp(round15(end)),
            "Trip Seconds": str(int((end - start).total_seconds())),
            "Fare": f"{rng.uniform(5, 60):.2f}",
            "Pickup Centroid Latitude": f"{a[1]}",
            "Pickup Centroid Longitude": f"{a[0]}",
            "Dropoff Centroid Latitude": f"{b[1]}",
            "Dropoff Centroid Longitude": f"{b[0]}",
            "Company": rng.choice(["Flash Cab", "Taxi Affiliation Services",
                                   "Sun Taxi", "City Service, Inc."]),
        }
        if rng.random() < 0.02:
            row[rng.choice(["Pickup Centroid Latitude",
                            "Dropoff Centroid Longitude"])] = ""
        rows.append(row)
    rows.sort(key=lambda r: r["Trip ID"])
    with open(args.out, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0].keys()))
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    main()
