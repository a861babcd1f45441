# Copyright 2026 The npovm Authors.
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

import json
import math
import os
import pathlib

import numpy as np
import pytest

import npovm

DATA = pathlib.Path(os.environ.get("NPOVM_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def test_version():
    assert npovm.__version__ == "0.1.0"


def test_demo_cli():
    code, out, _ = npovm.run_cli(["demo-pt"])
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_implement_from_file():
    dec = json.loads((DATA / "pt_decomposition.json").read_text())
    res = npovm.implement(dec, "2")
    assert res["c"] == pytest.approx(2.0)
    assert res["domain_dim"] == 12


def test_partial_transpose_and_classify():
    swap = np.eye(4)[[0, 2, 1, 3]]
    pt = npovm.partial_transpose(swap, 2, 2)
    assert np.allclose(pt, np.outer([1, 0, 0, 1], [1, 0, 0, 1]))
    assert not npovm.is_povm([swap, np.eye(4) - swap])
    assert npovm.is_povm([pt / 2, np.eye(4) - pt / 2])


def test_covariant_z2():
    res = npovm.covariant(np.array([[1, 1], [1, -1]], dtype=complex), [math.sqrt(1.6), math.sqrt(0.4)])
    assert res["c_psi"] == pytest.approx(0.625, abs=1e-12)
    assert res["shortcut_c"] == pytest.approx(0.625, abs=1e-12)
    assert res["acceptance_spread"] <= 1e-10


def test_asd_c_orthonormal_and_errors():
    assert npovm.asd_c([np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)]) == pytest.approx(1.0)
    with pytest.raises(npovm.NpovmError):
        npovm.asd_c([np.array([1, 0], dtype=complex), np.array([1, 1e-13], dtype=complex)])
