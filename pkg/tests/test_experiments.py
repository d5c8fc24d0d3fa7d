import json

import numpy as np
import pytest

from comonotone import experiments as ex
from comonotone.errors import CertificationFailed
from comonotone.periodic_fn import cos_model, trig_model
from comonotone.trig_poly import ExtremaCycle, TrigPolynomial


@pytest.mark.parametrize("r, k, s, expected", [(1, 3, 1, "plus"), (2, 3, 2, "oplus"),
                                               (0, 3, 1, "minus"), (0, 3, 3, "minus"),
                                               (1, 4, 2, "minus"), (5, 1, 3, "plus")])
def test_expected_class_examples(r, k, s, expected):
    assert ex.expected_class(r, k, s) == expected


def test_golden_tables_match_rule():
    golden = ex.golden_tables()
    assert sorted(golden) == [1, 2, 3]
    for s, rows in golden.items():
        assert sorted(rows) == list(range(7))
        for r, row in rows.items():
            assert [ex.expected_class(r, k, s) for k in range(1, 7)] == row


def test_expected_class_rejects_bad_input():
    with pytest.raises(ValueError):
        ex.expected_class(-1, 1, 1)


def test_family_assignment():
    assert ex.family_for(0, 2, 2) == "T2_7"
    assert ex.family_for(2, 3, 2) == "T2_2"
    assert ex.family_for(3, 4, 2) == "T2_4"
    assert ex.family_for(2, 2, 2) is None


def test_config_hash_is_order_independent(tmp_path):
    cfg = ex.load_config()
    shuffled = json.loads(json.dumps(cfg))
    shuffled = dict(reversed(list(shuffled.items())))
    assert ex.config_hash(cfg) == ex.config_hash(shuffled)
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"bounded_threshold": 5.0}))
    assert ex.load_config(str(p))["bounded_threshold"] == 5.0
    p.write_text(json.dumps({"typo": 1}))
    with pytest.raises(ValueError):
        ex.load_config(str(p))


def test_sweep_of_comonotone_polynomial_is_exact():
    Y = ExtremaCycle((-np.pi, 0.0), anchor=-1)
    rows = ex.ratio_sweep(cos_model(), Y, 0, 2, [16, 8])
    assert [row.n for row in rows] == [8, 16]
    assert all(row.E_estimate <= 1e-8 and row.ratio <= 1e-6 for row in rows)


def test_sweep_flags_zero_modulus():
    const = trig_model(TrigPolynomial.constant(2.0, 2))
    rows = ex.ratio_sweep(const, ExtremaCycle((-1.0, 1.0)), 0, 3, [8])
    assert rows[0].flagged and rows[0].ratio == ex.INF_SENTINEL


def test_sweep_rejects_non_members():
    with pytest.raises(CertificationFailed):
        ex.ratio_sweep(cos_model(), ExtremaCycle((-1.0, 1.0)), 0, 2, [8])


def test_corpus_sweep_bounded():
    f, Y = ex.corpus_model(1, 1, 3)
    rows = ex.ratio_sweep(f, Y, 1, 3, [8, 16, 32, 64])
    R = [row.ratio for row in rows]
    assert max(R) / min(R) <= 50


def test_is_bounded():
    assert ex.is_bounded([1, 2, 3], 10)
    assert not ex.is_bounded([1, 1, 100], 10)
    assert not ex.is_bounded([np.inf], 10)


def test_table_cells(tmp_path):
    res = ex.table_run(2, [8, 16, 32], cells=[(0, 2), (2, 2), (1, 3)])
    by = {(c.r, c.k): c for c in res.cells}
    assert by[(0, 2)].observed == "divergent" and by[(0, 2)].source == "T2_7"
    assert by[(2, 2)].observed == "bounded"
    assert by[(1, 3)].observed == "unknown" and not by[(1, 3)].asserted
    assert res.mismatches == []
    summary = res.summary
    assert set(summary) == {"config_hash", "seed", "cells", "constants"}
    assert summary["constants"]["bounded_threshold"] == 10.0
    rows = ex.table_rows(res)
    assert len(rows) == 3 + 3 + 1


def test_table_with_worker_pool_matches_serial():
    a = ex.table_run(1, [8, 16, 32], cells=[(0, 1), (1, 2)], workers=2)
    b = ex.table_run(1, [8, 16, 32], cells=[(0, 1), (1, 2)], workers=1)
    assert a.summary == b.summary


def test_lemma_checks():
    rep = ex.check_all_lemmas(seed=1, count=300)
    assert rep.passed, [c.name for c in rep.checks if not c.passed]
    bad = ex.check_all_lemmas(seed=1, count=300, corrupt="dd")
    assert not bad.passed
    with pytest.warns(UserWarning):
        empty = ex.check_all_lemmas(seed=1, count=0)
    assert empty.passed and empty.warnings
