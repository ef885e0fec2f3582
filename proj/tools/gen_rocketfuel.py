#!/usr/bin/env python3
# Copyright 2026 The r2sim Authors.
#
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
"""Generate the bundled 282-node ISP-style topology.

16 backbone routers sit at US metro locations, 89 gateways hang off them
and 177 end devices hang off the gateways. Propagation delays come from
great-circle distance inflated for fiber routing; bandwidths are left for
the simulator to draw per seed.

    python3 tools/gen_rocketfuel.py > fixtures/rocketfuel282.topo
"""

import argparse
import math
import random
import sys

LICENSE_HEADER = """\
# Copyright 2026 The r2sim Authors.
#
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

"""

BACKBONES = [
    ("seattle", 47.61, -122.33),
    ("sanjose", 37.34, -121.89),
    ("losangeles", 34.05, -118.24),
    ("denver", 39.74, -104.99),
    ("dallas", 32.78, -96.80),
    ("houston", 29.76, -95.37),
    ("kansascity", 39.10, -94.58),
    ("chicago", 41.88, -87.63),
    ("atlanta", 33.75, -84.39),
    ("miami", 25.76, -80.19),
    ("washington", 38.91, -77.04),
    ("newyork", 40.71, -74.01),
    ("boston", 42.36, -71.06),
    ("stlouis", 38.63, -90.20),
    ("saltlake", 40.76, -111.89),
    ("phoenix", 33.45, -112.07),
]

# Long-haul adjacencies, roughly following a national fiber footprint.
BACKBONE_LINKS = [
    ("seattle", "sanjose"), ("seattle", "saltlake"), ("sanjose", "losangeles"),
    ("sanjose", "saltlake"), ("losangeles", "phoenix"), ("phoenix", "dallas"),
    ("saltlake", "denver"), ("denver", "kansascity"), ("denver", "dallas"),
    ("dallas", "houston"), ("dallas", "kansascity"), ("houston", "atlanta"),
    ("kansascity", "stlouis"), ("stlouis", "chicago"), ("chicago", "newyork"),
    ("chicago", "washington"), ("stlouis", "atlanta"), ("atlanta", "miami"),
    ("atlanta", "washington"), ("washington", "newyork"), ("newyork", "boston"),
    ("chicago", "boston"),
]

N_GATEWAYS = 89
N_CLIENTS = 177

# light in fiber covers ~200 km per ms; cable routes run longer than the geodesic
US_PER_KM = 5.0
ROUTE_INFLATION = 1.5
# fixed cost of the access equipment on each end-device link
ACCESS_OVERHEAD_US = 300

CLIENT_HOME = "boston"
PRODUCER_HOME = "seattle"


def km_between(a, b):
    lat1, lon1 = map(math.radians, a)
    lat2, lon2 = map(math.radians, b)
    h = (math.sin((lat2 - lat1) / 2) ** 2
         + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2)
    return 2 * 6371.0 * math.asin(math.sqrt(h))


def prop_us(km, overhead=0):
    return overhead + int(round(km * ROUTE_INFLATION * US_PER_KM))


def offset(pos, rng, lo_km, hi_km):
    dist = rng.uniform(lo_km, hi_km)
    bearing = rng.uniform(0, 2 * math.pi)
    dlat = dist * math.cos(bearing) / 111.0
    dlon = dist * math.sin(bearing) / (111.0 * math.cos(math.radians(pos[0])))
    return (pos[0] + dlat, pos[1] + dlon)


def generate(seed):
    rng = random.Random(seed)
    nodes = []   # (id, class, label)
    links = []   # (a, b, prop_us)
    pos = {}

    bb_id = {}
    for i, (name, lat, lon) in enumerate(BACKBONES):
        bb_id[name] = i
        pos[i] = (lat, lon)
        nodes.append((i, "backbone", name))
    for a, b in BACKBONE_LINKS:
        x, y = bb_id[a], bb_id[b]
        links.append((x, y, prop_us(km_between(pos[x], pos[y]))))

    next_id = len(BACKBONES)
    gateways = []
    home = {}
    for g in range(N_GATEWAYS):
        # every backbone gets at least five gateways, the rest go anywhere
        bb = g % len(BACKBONES) if g < 5 * len(BACKBONES) else rng.randrange(len(BACKBONES))
        gid = next_id
        next_id += 1
        pos[gid] = offset(pos[bb], rng, 20, 250)
        home[gid] = bb
        gateways.append(gid)
        nodes.append((gid, "gateway", BACKBONES[bb][0]))
        links.append((bb, gid, prop_us(km_between(pos[bb], pos[gid]))))
    # a third of the gateways are dual-homed to a sibling in the same metro
    for gid in gateways:
        if rng.random() < 1 / 3:
            siblings = [x for x in gateways if x != gid and home[x] == home[gid]]
            other = rng.choice(siblings)
            if not any({gid, other} == {a, b} for a, b, _ in links):
                links.append((gid, other, prop_us(km_between(pos[gid], pos[other]))))

    clients = []
    for c in range(N_CLIENTS):
        gid = gateways[c % len(gateways)] if c < len(gateways) else rng.choice(gateways)
        cid = next_id
        next_id += 1
        pos[cid] = offset(pos[gid], rng, 2, 40)
        home[cid] = home[gid]
        clients.append(cid)
        nodes.append((cid, "client", BACKBONES[home[gid]][0]))
        links.append((gid, cid, prop_us(km_between(pos[gid], pos[cid]), ACCESS_OVERHEAD_US)))

    client = next(c for c in clients if BACKBONES[home[c]][0] == CLIENT_HOME)
    producer = next(c for c in clients if BACKBONES[home[c]][0] == PRODUCER_HOME)
    return nodes, links, client, producer


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=282)
    args = ap.parse_args()

    nodes, links, client, producer = generate(args.seed)
    out = sys.stdout
    counts = {k: sum(1 for _, c, _ in nodes if c == k) for k in ("backbone", "gateway", "client")}
    out.write(LICENSE_HEADER)
    out.write("# ISP-style topology: %d backbones, %d gateways, %d end devices\n"
              % (counts["backbone"], counts["gateway"], counts["client"]))
    out.write("# generated by tools/gen_rocketfuel.py --seed %d; do not edit by hand\n" % args.seed)
    out.write("# link <a> <b> <bandwidth_bps|-> <propagation_us>; '-' bandwidths are drawn per run\n\n")
    for nid, cls, label in nodes:
        out.write("node %d %s  # %s\n" % (nid, cls, label))
    out.write("\n")
    for a, b, p in links:
        out.write("link %d %d - %d\n" % (a, b, p))
    out.write("\nclient %d\nproducer %d\n" % (client, producer))


if __name__ == "__main__":
    main()
