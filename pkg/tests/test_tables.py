"""Construction, validation and file format of conditional tables."""

import json

import numpy as np
import pytest

from entrobound import ConditionalTable, Context, load_table, table_from_json_dict, uniform_table


def test_empty_table_rejected():
    with pytest.raises(ValueError, match="at least one context"):
        ConditionalTable([])


def test_mismatched_alphabets_rejected():
    with pytest.raises(ValueError, match="alphabet"):
        ConditionalTable(
            [
                Context("k", "0", 0.5, (1.0, 0.0)),
                Context("k", "1", 0.5, (0.5, 0.25, 0.25)),
            ]
        )


def test_negative_weight_rejected():
    with pytest.raises(ValueError, match="weight"):
        ConditionalTable(
            [
                Context("k", "0", -0.25, (1.0, 0.0)),
                Context("k", "1", 1.25, (0.5, 0.5)),
            ]
        )


def test_weight_sum_violation_rejected():
    with pytest.raises(ValueError, match="weights sum"):
        ConditionalTable(
            [
                Context("k", "0", 0.6, (1.0, 0.0)),
                Context("k", "1", 0.6, (0.5, 0.5)),
            ]
        )


def test_row_sum_violation_rejected():
    with pytest.raises(ValueError, match=r"p_x sums"):
        ConditionalTable([Context("k", "0", 1.0, (0.7, 0.2))])


def test_entry_above_one_rejected():
    with pytest.raises(ValueError, match="not a probability"):
        ConditionalTable([Context("k", "0", 1.0, (1.3, -0.3))])


def test_small_drift_is_renormalised():
    # 1e-10 drift is float noise, not a construction bug.
    table = ConditionalTable(
        [
            Context("k", "0", 0.5 + 5e-11, (1.0, 1e-10)),
            Context("k", "1", 0.5, (0.5, 0.5)),
        ]
    )
    assert table.weight_vector.sum() == pytest.approx(1.0, abs=1e-15)
    assert table.prob_matrix[0].sum() == pytest.approx(1.0, abs=1e-15)


def test_tiny_probabilities_snapped_to_zero():
    table = ConditionalTable([Context("k", "0", 1.0, (1.0, 1e-16))])
    assert table.prob_matrix[0, 1] == 0.0


def test_arrays_are_read_only():
    table = uniform_table(2, 2)
    with pytest.raises(ValueError):
        table.weight_vector[0] = 0.9
    with pytest.raises(ValueError):
        table.prob_matrix[0, 0] = 0.9


def test_subtables_by_k_renormalise():
    table = ConditionalTable(
        [
            Context("a", "0", 0.25, (1.0, 0.0)),
            Context("a", "1", 0.25, (0.5, 0.5)),
            Context("b", "0", 0.25, (0.0, 1.0)),
            Context("b", "1", 0.25, (0.5, 0.5)),
        ]
    )
    subs = table.subtables_by_k()
    assert set(subs) == {"a", "b"}
    for sub in subs.values():
        assert len(sub) == 2
        assert sub.weight_vector.sum() == pytest.approx(1.0)
        assert all(c.weight == pytest.approx(0.5) for c in sub.contexts)


def test_json_round_trip():
    table = ConditionalTable(
        [
            Context("a", "01", 0.5, (0.25, 0.75)),
            Context("b", "10", 0.5, (0.75, 0.25)),
        ]
    )
    back = table_from_json_dict(table.to_json_dict())
    assert back.contexts == table.contexts


@pytest.mark.parametrize(
    "doc, field",
    [
        ({}, "contexts"),
        ({"contexts": 3}, '"contexts"'),
        ({"contexts": [1]}, r"contexts\[0\]"),
        ({"contexts": [{"theta": "0", "weight": 1.0, "p_x": [1.0, 0.0]}]}, r"contexts\[0\].*'k'"),
        (
            {"contexts": [{"k": "a", "theta": "0", "weight": "x", "p_x": [1.0, 0.0]}]},
            r"contexts\[0\]\.weight",
        ),
        (
            {"contexts": [{"k": "a", "theta": "0", "weight": 1.0, "p_x": [1.0, "y"]}]},
            r"contexts\[0\]\.p_x",
        ),
        (
            {"contexts": [{"k": "a", "theta": 0, "weight": 1.0, "p_x": [1.0, 0.0]}]},
            r"contexts\[0\]\.theta",
        ),
    ],
)
def test_malformed_documents_name_the_field(doc, field):
    with pytest.raises(ValueError, match=field):
        table_from_json_dict(doc)


def test_load_table(tmp_path):
    path = tmp_path / "table.json"
    doc = {
        "contexts": [
            {"k": "k", "theta": "0", "weight": 0.5, "p_x": [1.0, 0.0]},
            {"k": "k", "theta": "1", "weight": 0.5, "p_x": [0.5, 0.5]},
        ]
    }
    path.write_text(json.dumps(doc))
    table = load_table(str(path))
    assert len(table) == 2
    assert table.num_outcomes == 2


def test_load_table_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValueError, match="not valid JSON"):
        load_table(str(path))


def test_uniform_table():
    table = uniform_table(3, 2)
    assert len(table) == 3
    assert np.allclose(table.prob_matrix, 0.5)
