import pytest

from cbcd.datasets import FOOTBALL_ENV, football_path, load_football, load_gml_with_truth, load_karate

GML = """Creator "test"
graph
[
  directed 0
  node [ id 0 label "A" value 0 ]
  node [ id 1 label "B" value 0 ]
  node [ id 2 label "C" value 1 ]
  node [ id 3 label "D" value 1 ]
  edge [ source 0 target 1 ]
  edge [ source 1 target 2 ]
  edge [ source 2 target 3 ]
]
"""


def test_karate():
    g, truth = load_karate()
    assert (g.n, g.m) == (34, 78)
    assert len(set(truth.values())) == 2


def test_gml_loader(tmp_path):
    path = tmp_path / "toy.gml"
    path.write_text(GML)
    g, truth = load_gml_with_truth(path)
    assert (g.n, g.m) == (4, 3)
    assert dict(truth) == {0: 0, 1: 0, 2: 1, 3: 1}


def test_football_lookup(tmp_path, monkeypatch):
    path = tmp_path / "football.gml"
    path.write_text(GML)
    monkeypatch.setenv(FOOTBALL_ENV, str(path))
    assert football_path() == path
    g, _ = load_football()
    assert g.n == 4
    monkeypatch.setenv(FOOTBALL_ENV, str(tmp_path / "nope.gml"))
    if football_path() is None:
        with pytest.raises(FileNotFoundError):
            load_football()
