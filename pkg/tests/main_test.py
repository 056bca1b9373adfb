import json
import os

import numpy as np
import pytest

from symquiv.__main__ import main
from symquiv.config import Flavor
from symquiv.files import representation_to_dict, write_json
from symquiv.quiver_core import null_root
from symquiv.representations import FormSpace

A11_02 = ['--type', 'A11', '--k', '0', '--l', '2']


def _json(capsys, argv):
    assert main(['--format', 'json'] + argv) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "symquiv/1"
    return payload["result"]


def test_classify(capsys):
    assert main(A11_02 + ['quiver', 'classify']) == 0
    assert "Ã^{1,1}_{0,2}" in capsys.readouterr().out
    result = _json(capsys, A11_02 + ['quiver', 'classify'])
    assert result == {"kind": "A11", "params": [0, 2], "type": [1, 1, 0, 2]}


def test_quiver_build_and_validate(capsys):
    result = _json(capsys, A11_02 + ['quiver', 'build'])
    assert [a["id"] for a in result["arrows"]] == ["a", "b", "σ(a)"]
    result = _json(capsys, A11_02 + ['quiver', 'validate'])
    assert result["canonical"]


def test_dimension_commands(capsys):
    assert _json(capsys, A11_02 + ['--dim', '[1,1,1]', '--other', '[1,1,1]', 'dim', 'euler']) == {"euler": 0}
    assert _json(capsys, A11_02 + ['--dim', '[0,1,0]', 'dim', 'coxeter']) == {"1": 1, "2": 0, "σ(1)": 1}
    assert _json(capsys, A11_02 + ['--dim', '[1,1,2]', 'dim', 'delta']) == {"1": 2, "2": 1, "σ(1)": 1}
    result = _json(capsys, A11_02 + ['--dim', '[1,1,2]', 'dim', 'defect'])
    assert result == {"defect": -1, "region": "preprojective"}


def test_tube_data(capsys):
    assert main(['--type', 'A11', '--k', '0', '--l', '6', 'tube', 'data']) == 0
    assert capsys.readouterr().out.startswith("h = ")


def test_decompositions_from_files(capsys, data_dir):
    files = ['--quiver', os.path.join(data_dir, 'a11_0_6.json'), '--dim', os.path.join(data_dir, 'a11_0_6_dim.json')]
    result = _json(capsys, files + ['decomp', 'regular'])
    assert result == {"p": 2, "labels": {"Δ": [4, 3, 0, 2, 0, 3]}}
    result = _json(capsys, files + ['decomp', 'symplectic'])
    assert result["expression"] == "h^{⊕2} ⊕ ((e₂+δe₂)+e₁)^{⊕3} ⊕ e₁ ⊕ 2e₄"
    assert main(files + ['decomp', 'orthogonal']) == 0
    assert "2((e₂+δe₂)+e₁)" in capsys.readouterr().out


def test_generators(capsys):
    result = _json(capsys, A11_02 + ['--dim', '[2,2,2]', '--flavor', 'orthogonal', 'gens', 'list'])
    assert {g["label"] for g in result["generators"]} == {"det V(a)", "pf V(b)", "c_0", "c_2"}
    assert main(A11_02 + ['--dim', '[3,3,3]', '--flavor', 'symplectic', 'gens', 'list']) == 0
    assert "trivial ring" in capsys.readouterr().out


def test_gens_eval(capsys, tmp_path, a11_02):
    W = FormSpace(a11_02, null_root(a11_02) * 2, Flavor.ORTHOGONAL).random_point(np.random.default_rng(6))
    path = str(tmp_path / 'w.json')
    write_json(representation_to_dict(W), path=path)
    result = _json(capsys, A11_02 + ['--flavor', 'orthogonal', '--rep', path, 'gens', 'eval'])
    assert result["pf V(b)"] == str(W.mats["b"][0, 1])


def test_verify_commands(capsys):
    argv = A11_02 + ['--dim', '[2,2,2]', '--flavor', 'orthogonal', '--trials', '5']
    assert main(argv + ['--negative-control', 'verify', 'invariance']) == 0
    out = capsys.readouterr().out
    assert "caught" in out
    assert "MISSED" not in out
    assert main(argv + ['verify', 'oracle']) == 0
    assert main(['--size', '4', '--trials', '3', 'verify', 'pf']) == 0


def test_errors_map_to_exit_codes(capsys):
    assert main(A11_02 + ['--dim', '[1,1,1]', '--flavor', 'symplectic', 'decomp', 'symplectic']) == 2
    assert capsys.readouterr().err.startswith("error:")
    assert main(A11_02 + ['--dim', 'nonsense', 'dim', 'delta']) == 1
    assert main(['quiver', 'classify']) == 1


def test_usage_errors():
    with pytest.raises(SystemExit):
        main(A11_02 + ['quiver', 'explode'])
    with pytest.raises(SystemExit):
        main(['--trials', '0', 'verify', 'pf'])
