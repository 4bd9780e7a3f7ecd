# Copyright 2026 The geoscout Authors
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

"""Checks that docs/template.schema.json agrees with `geoscout validate --draft`."""

import copy
import json
import subprocess
import sys
import tempfile

import jsonschema

BASE = {
    "version": 1,
    "name": "parity",
    "crs_id": "EPSG:32735",
    "target_resolution": 30.0,
    "regions": {
        "query": {"type": "Polygon",
                  "coordinates": [[[0, 0], [600, 0], [600, 600], [0, 600], [0, 0]]]},
        "reference": {"type": "Feature", "geometry": {
            "type": "MultiPolygon",
            "coordinates": [[[[0, 0], [60, 0], [60, 60], [0, 0]]]]}},
    },
    "landcover": {"product": "lc", "band": "class", "start": "01/01/2020",
                  "end": "31/12/2020", "classes": [1, 2]},
    "aliases": ["n1:s2:ndvi:01/01/2020:31/12/2020:MEAN"],
    "features": ["f1:n1*2"],
    "operation": {"cluster": {"k": 3, "seed": 7, "max_iters": 50,
                              "rel_tol": 0.0001, "standardize": True}},
    "output": {"raster": "out.raster", "report": "out.json"},
}

DELETE = object()


def mutate(path, value):
    doc = copy.deepcopy(BASE)
    node = doc
    for key in path[:-1]:
        node = node[key]
    if value is DELETE:
        del node[path[-1]]
    else:
        node[path[-1]] = value
    return doc


def cases():
    yield "base", BASE
    yield "minimal", {"version": 1, "name": "m", "crs_id": "EPSG:4326"}
    for key in ["version", "name", "crs_id", "target_resolution", "regions", "landcover",
                "aliases", "features", "operation", "output"]:
        doc = mutate([key], DELETE)
        if key == "aliases":
            del doc["features"]  # features reference aliases
        yield f"drop {key}", doc
    yield "extra top", mutate(["extra"], 1)
    yield "version 2", mutate(["version"], 2)
    yield "version string", mutate(["version"], "1")
    yield "name number", mutate(["name"], 5)
    yield "crs null", mutate(["crs_id"], None)
    yield "resolution string", mutate(["target_resolution"], "30")
    yield "regions extra", mutate(["regions", "other"], BASE["regions"]["query"])
    yield "regions array", mutate(["regions"], [])
    yield "geometry point", mutate(["regions", "query"], {"type": "Point", "coordinates": [0, 0]})
    yield "geometry no type", mutate(["regions", "query"], {"coordinates": [[[0, 0], [1, 0], [1, 1]]]})
    yield "polygon no coords", mutate(["regions", "query"], {"type": "Polygon"})
    yield "polygon empty", mutate(["regions", "query"], {"type": "Polygon", "coordinates": []})
    yield "ring short", mutate(["regions", "query"], {"type": "Polygon", "coordinates": [[[0, 0], [1, 1]]]})
    yield "position short", mutate(["regions", "query"],
                                   {"type": "Polygon", "coordinates": [[[0], [1, 0], [1, 1], [0, 1]]]})
    yield "position string", mutate(["regions", "query"],
                                    {"type": "Polygon", "coordinates": [[["a", 0], [1, 0], [1, 1], [0, 1]]]})
    yield "position 3d", mutate(["regions", "query"],
                                {"type": "Polygon", "coordinates": [[[0, 0, 5], [9, 0, 5], [9, 9, 5], [0, 9, 5]]]})
    yield "feature no geometry", mutate(["regions", "query"], {"type": "Feature"})
    yield "collection", mutate(["regions", "query"],
                               {"type": "FeatureCollection", "features": [BASE["regions"]["reference"]]})
    yield "collection empty", mutate(["regions", "query"], {"type": "FeatureCollection", "features": []})
    for key in ["product", "band", "start", "end", "classes"]:
        yield f"landcover drop {key}", mutate(["landcover", key], DELETE)
    yield "landcover extra", mutate(["landcover", "x"], 1)
    yield "landcover classes empty", mutate(["landcover", "classes"], [])
    yield "landcover classes float", mutate(["landcover", "classes"], [1.5])
    yield "landcover iso dates", mutate(["landcover", "start"], "2020-01-01")
    yield "landcover date junk", mutate(["landcover", "start"], "Jan 2020")
    yield "aliases string", mutate(["aliases"], "n1:s2:ndvi:01/01/2020:31/12/2020:MEAN")
    yield "aliases number item", mutate(["aliases"], [1])
    yield "features object", mutate(["features"], {})
    yield "operation both", mutate(["operation", "similarity"], {"metric": "cosine"})
    yield "operation empty", mutate(["operation"], {})
    yield "operation unknown", mutate(["operation"], {"regress": {}})
    for metric in ["euclidean", "manhattan", "cosine", "chebyshev"]:
        yield f"similarity {metric}", mutate(["operation"], {"similarity": {"metric": metric}})
    yield "similarity no metric", mutate(["operation"], {"similarity": {"standardize": False}})
    yield "similarity extra", mutate(["operation"], {"similarity": {"metric": "cosine", "k": 2}})
    yield "cluster no k", mutate(["operation", "cluster", "k"], DELETE)
    for k in [1, 2, 100000, 100001, 2.5, "3"]:
        yield f"cluster k {k!r}", mutate(["operation", "cluster", "k"], k)
    for it in [0, 1, 1000000, 1000001]:
        yield f"cluster max_iters {it}", mutate(["operation", "cluster", "max_iters"], it)
    yield "cluster seed negative", mutate(["operation", "cluster", "seed"], -1)
    yield "cluster rel_tol negative", mutate(["operation", "cluster", "rel_tol"], -0.1)
    yield "cluster rel_tol zero", mutate(["operation", "cluster", "rel_tol"], 0)
    yield "cluster standardize int", mutate(["operation", "cluster", "standardize"], 1)
    yield "cluster extra", mutate(["operation", "cluster", "metric"], "cosine")
    yield "output extra", mutate(["output", "png"], "x.png")
    yield "output number", mutate(["output", "raster"], 3)


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        validator = jsonschema.Draft202012Validator(json.load(f))
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        path = f"{tmp}/t.json"
        for label, doc in cases():
            with open(path, "w") as f:
                json.dump(doc, f)
            by_schema = validator.is_valid(doc)
            proc = subprocess.run([cli, "validate", "--draft", "--template", path],
                                  capture_output=True, text=True)
            by_cli = proc.returncode == 0
            status = "ok" if by_schema == by_cli else "MISMATCH"
            if by_schema != by_cli:
                failures += 1
            print(f"{status:8} {label}: schema={by_schema} cli={by_cli} {proc.stderr.strip()}")
    print(f"{failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
