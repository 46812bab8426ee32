# Copyright 2026 The finmeas Authors
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

import os
from fractions import Fraction as F

import pytest

import finmeas as fm

SOURCE = os.environ.get("FINMEAS_SOURCE_DIR", os.path.join(os.path.dirname(__file__), "..", ".."))


def two_points():
    return fm.Space.discrete(["a", "b"])


def test_radon_nikodym_density():
    s = two_points()
    mu = fm.Measure(s, ["1/5", "4/5"])
    nu = fm.Measure(s, [F(1, 2), F(1, 2)])
    assert fm.radon_nikodym(mu, nu) == [F(2, 5), F(8, 5)]
    assert mu(["b"]) == F(4, 5)


def test_absolute_continuity_error_carries_code():
    s = two_points()
    with pytest.raises(fm.Error) as info:
        fm.radon_nikodym(fm.Measure(s, [1, 0]), fm.Measure(s, [0, 1]))
    assert info.value.code == "AbsoluteContinuityViolated"
    assert info.value.witness == [0]


def test_sigma_from_generator():
    s = fm.sigma_from_generator(["a", "b", "c"], [[0, 1]])
    assert s.atoms == [[0, 1], [2]]


def test_metrics():
    s = two_points()
    d = fm.FiniteMetric(s, [[0, "1/2"], ["1/2", 0]])
    da, db = fm.Measure(s, [1, 0]), fm.Measure(s, [0, 1])
    assert fm.prohorov_distance(da, db, d) == F(1, 2)
    value, witness = fm.hutchinson_distance(da, db, d, gamma=1)
    assert value == F(1, 2)
    assert witness[0] - witness[1] == value


def test_logic_and_bisimulation():
    s = fm.Space.discrete(["a", "b", "c"])
    k = fm.Kernel(s, s, [["1/2", 0, 0], [0, 0, 1], [0, "1/2", "1/2"]])
    assert k.kind == "submarkov"
    assert fm.logical_classes(k) == [["a"], ["b", "c"]]
    assert fm.validity_set(k, "dia>=1 T") == ["b", "c"]
    t = fm.Space.discrete(["x", "y"])
    assert fm.bisimilar(k, fm.Kernel(t, t, [["1/2", 0], [0, 1]]))


def test_coupling():
    s = two_points()
    mu = fm.Measure(s, ["1/2", "1/2"])
    ok = fm.solve_coupling(mu, mu, [(0, 0), (1, 1)])
    assert ok["feasible"] and ok["coupling"].weights == [F(1, 2), 0, 0, F(1, 2)]
    bad = fm.solve_coupling(mu, mu, [(0, 0), (1, 0)])
    assert not bad["feasible"] and bad["cut"] == ([0, 1], [0])


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        fm.Measure(two_points(), [0.5, 0.5])


def test_cli_in_process():
    model = os.path.join(SOURCE, "docs", "models", "measures.json")
    code, out, err = fm.cli("rn", "--num", "mu", "--den", "nu", "-m", model)
    assert code == 0 and err == ""
    assert "a: 2/5" in out
    code, _, err = fm.cli("rn", "--num", "nope", "--den", "nu", "-m", model)
    assert code == 2 and "UnknownReference" in err


@pytest.mark.parametrize("name", ["measures", "metrics", "kernels"])
def test_bundled_models_match_schema(name):
    jsonschema = pytest.importorskip("jsonschema")
    import json

    with open(os.path.join(SOURCE, "docs", "model-schema.json")) as f:
        schema = json.load(f)
    with open(os.path.join(SOURCE, "docs", "models", name + ".json")) as f:
        jsonschema.validate(json.load(f), schema)
