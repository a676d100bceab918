"""Smoke tests for the python bindings."""

import math
import os

import numpy as np
import pytest

import stylepredict as sp

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def test_catalog():
    ids = sp.catalog()
    assert len(ids) == 60
    assert len(set(ids)) == 60
    assert "avg_variable_name_length" in ids
    assert sp.CATALOG_VERSION == "catalog_v1"


def test_compute_metrics():
    src = "void f() { for (;;) {} while (x) {} }\n"
    m = sp.compute_metrics(src)
    assert len(m) == 60
    assert m["pct_for_loops"] == pytest.approx(50.0)
    assert m["pct_while_loops"] == pytest.approx(50.0)
    assert all(math.isfinite(v) for v in m.values())


def test_tokenize_roundtrip():
    src = '#include <vector>\nint x = "for"; // not a loop\n'
    toks = sp.tokenize(src)
    assert "".join(t[1] for t in toks) == src
    kinds = {t[0] for t in toks}
    assert "preprocessor" in kinds
    assert "line_comment" in kinds


def test_is_bug_fixing():
    hit, kws = sp.is_bug_fixing("Fixed overflow, see #12")
    assert hit and kws == ["fixed", "#12"]
    hit, kws = sp.is_bug_fixing("Add prefix support")
    assert not hit and kws == []


def test_label_archive():
    rows = sp.label_archive(
        os.path.join(FIXTURES, "minirepo.jsonl"),
        os.path.join(FIXTURES, "minirepo_releases.json"),
    )
    labels = {r["path"]: r["label"] for r in rows}
    assert labels == {"f.cpp": "buggy", "g.cpp": "clean"}


def test_smote_balances():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(12, 3))
    y = [1, 1, 1] + [0] * 9
    x2, y2 = sp.smote(x, y, k=2, seed=7)
    assert sum(y2) == len(y2) - sum(y2)
    assert x2.shape == (18, 3)
    # originals unchanged
    assert np.allclose(x2[:12], x)


def test_vif_duplicated_column():
    rng = np.random.default_rng(1)
    base = rng.normal(size=(40, 2))
    x = np.column_stack([base[:, 0], base[:, 0], base[:, 1]])
    scores = sp.vif_scores(x)
    assert math.isinf(scores[0]) and math.isinf(scores[1])
    rep = sp.vif_filter(x, 5.0)
    assert len(rep["removed"]) == 1
    assert rep["kept"] == ["c0", "c2"]


def test_train_predict_roundtrip():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(100, 2))
    x[:50, 0] = np.abs(x[:50, 0]) + 0.5
    x[50:, 0] = -np.abs(x[50:, 0]) - 0.5
    y = [1 if v > 0 else 0 for v in x[:, 0]]
    for algo in ("nb", "dt", "svm", "lr"):
        model = sp.train(algo, x, y, seed=1)
        pred = model.predict(x)
        ev = sp.evaluate(pred, y)
        assert ev["f1"] == pytest.approx(100.0), algo
        clone = sp.Model.from_json(model.to_json())
        assert clone.predict(x) == pred


def test_wilcoxon():
    b = [10.0, 20.0, 30.0, 40.0, 50.0, 60.0]
    a = [v + 1 for v in b]
    w = sp.wilcoxon_signed_rank(a, b)
    assert w["p_one_sided"] == pytest.approx(1.0 / 64.0)
    assert w["significant_at_0_05"]
