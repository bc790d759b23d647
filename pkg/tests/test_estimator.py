import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from hyperpm import FormatError, HyperPatternMatcher, io
from hyperpm.benchmarks import build_counting_naa

from conftest import BIG_GOLDEN, BIG_WORD


def test_params_round_trip():
    est = HyperPatternMatcher(algorithm="fjs", tail_bound=True)
    params = est.get_params()
    assert params == {"algorithm": "fjs", "queue_mode": "filtered", "tail_bound": True,
                      "prune": True, "n_jobs": 1}
    other = clone(est).set_params(algorithm="naive")
    assert other.algorithm == "naive" and est.algorithm == "fjs"


@pytest.mark.parametrize("algorithm", ["naive", "fjs", "proj", "fjs-proj", "oracle"])
def test_fit_transform(algorithm):
    est = HyperPatternMatcher(algorithm=algorithm).fit(build_counting_naa())
    assert est.n_directions_ == 2
    assert est.transform([BIG_WORD]) == sorted(BIG_GOLDEN)
    assert est.stats_.matches == 7
    assert est.predict(["# a # b"])
    assert not est.predict(["# a b"])


def test_accepts_dict_and_path(tmp_path):
    naa = build_counting_naa()
    path = tmp_path / "n.json"
    io.dump_naa(naa, path)
    assert HyperPatternMatcher().fit(str(path)).naa_ == naa
    assert HyperPatternMatcher().fit(io.naa_to_dict(naa)).naa_ == naa


def test_format_and_string_words():
    est = HyperPatternMatcher().fit(build_counting_naa())
    assert est.format("# a # b") == ["[(0,1,3),(0,3,4)]"]


def test_validation_errors():
    with pytest.raises(NotFittedError):
        HyperPatternMatcher().transform(["a"])
    with pytest.raises(ValueError):
        HyperPatternMatcher(algorithm="magic").fit(build_counting_naa())
    with pytest.raises(ValueError):
        HyperPatternMatcher(queue_mode="fuzzy").fit(build_counting_naa())
    est = HyperPatternMatcher().fit(build_counting_naa())
    with pytest.raises(FormatError):
        est.transform([""])
    with pytest.raises(FormatError):
        est.transform([3])
