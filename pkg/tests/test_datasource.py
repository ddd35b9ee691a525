import math

import pytest

from riskbench import (
    CsvSource,
    DataCompletenessError,
    EncodingError,
    NotFoundError,
    ParseError,
    ValidationError,
    generate_synthetic,
    risk_probability,
    write_pool_csv,
)

from helpers import make_model


class TestSyntheticPool:
    def test_same_seed_same_pool(self, registry):
        a = generate_synthetic(11, 30, registry)
        b = generate_synthetic(11, 30, registry)
        assert [r.values for r in a.records] == [r.values for r in b.records]
        assert [r.entity_id for r in a.records] == [r.entity_id for r in b.records]

    def test_different_seed_differs(self, registry):
        a = generate_synthetic(11, 30, registry)
        b = generate_synthetic(12, 30, registry)
        assert [r.values for r in a.records] != [r.values for r in b.records]

    def test_entity_ids_are_sequential(self, registry):
        src = generate_synthetic(1, 3, registry)
        assert [r.entity_id for r in src.records] == ["p000001", "p000002", "p000003"]

    def test_values_respect_declared_shapes(self, registry, pool):
        for record in pool.records:
            for spec in registry:
                v = record.values[spec.id]
                if spec.is_integer and spec.goal_eligible:
                    assert v in (0, 1)
                elif spec.is_integer:
                    assert 0 <= v < 100
                elif spec.is_multivalued:
                    assert v <= frozenset(spec.value_domain)
                else:
                    assert v in spec.value_domain

    def test_n_must_be_positive(self, registry):
        with pytest.raises(ValidationError):
            generate_synthetic(0, 0, registry)

    def test_fetch_subset_and_order(self, pool, registry):
        specs = [registry.get("sex")]
        out = pool.fetch(["p000003", "p000001"], specs)
        assert [r.entity_id for r in out] == ["p000003", "p000001"]
        assert set(out[0].values) == {"sex"}

    def test_fetch_unknown_id(self, pool, registry):
        with pytest.raises(NotFoundError):
            pool.fetch(["ghost"], [registry.get("sex")])


class TestPlantedPool:
    def planted(self, registry):
        # diabetesEQyes weighs +4, previous_transplants +1, bias 2
        return make_model(
            (
                "rejection_within_1y",
                "diabetesEQno",
                "diabetesEQyes",
                "previous_transplants",
            ),
            2,
            (0, 4, 1),
        )

    def test_goal_tracks_planted_risk(self, registry):
        model = self.planted(registry)
        src = generate_synthetic(5, 4000, registry, planted_model=model)
        hits = bucket = 0
        for r in src.records:
            total = 4 * (r.values["diabetes"] == "yes") + r.values[
                "previous_transplants"
            ]
            # previous_transplants is uniform on [0, 100); pin one cell
            if r.values["diabetes"] == "yes" and r.values["previous_transplants"] == 0:
                bucket += 1
                hits += r.values["rejection_within_1y"]
            assert r.values["rejection_within_1y"] in (0, 1)
        # p = sigmoid(4 - 2) ~ 0.88; with ~20 samples expect a clear majority
        assert bucket > 5
        assert hits / bucket > 0.6

    def test_planted_is_deterministic(self, registry):
        model = self.planted(registry)
        a = generate_synthetic(5, 50, registry, planted_model=model)
        b = generate_synthetic(5, 50, registry, planted_model=model)
        assert [r.values for r in a.records] == [r.values for r in b.records]

    def test_rejects_header_not_matching_registry(self, registry):
        bad = make_model(("rejection_within_1y", "made_up_column"), 0, (1,))
        with pytest.raises(ValidationError, match="matches no registry"):
            generate_synthetic(1, 5, registry, planted_model=bad)

    def test_rejects_partial_encoding_block(self, registry):
        # one-hot block for sex must appear whole and in domain order
        bad = make_model(("rejection_within_1y", "sexEQmale"), 0, (1,))
        with pytest.raises(ValidationError, match="encoding"):
            generate_synthetic(1, 5, registry, planted_model=bad)

    def test_rejects_non_goal_first_column(self, registry):
        bad = make_model(("age_at_transplant", "previous_transplants"), 0, (1,))
        with pytest.raises(ValidationError, match="goal"):
            generate_synthetic(1, 5, registry, planted_model=bad)


class TestPoolCsv:
    def test_round_trip_through_file(self, tmp_path, registry, pool):
        p = tmp_path / "pool.csv"
        write_pool_csv(pool, registry, p)
        src = CsvSource(p)
        assert len(src) == len(pool)
        specs = list(registry)
        for a, b in zip(pool.fetch(None, specs), src.fetch(None, specs)):
            assert a.entity_id == b.entity_id
            assert a.values == b.values

    def test_header_row(self, tmp_path, registry, pool):
        p = tmp_path / "pool.csv"
        write_pool_csv(pool, registry, p)
        first = p.read_text(encoding="utf-8").splitlines()[0]
        assert first.split(",")[0] == "entity_id"
        assert first.split(",")[1:] == [s.id for s in registry]

    def test_multi_cells_use_semicolons(self, tmp_path, registry, pool):
        p = tmp_path / "pool.csv"
        write_pool_csv(pool, registry, p)
        text = p.read_text(encoding="utf-8")
        assert ";" in text  # 200 entities virtually guarantee a 2+ token cell


def write_lines(path, lines):
    path.write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


class TestCsvSourceStrictness:
    def test_missing_final_newline(self, tmp_path):
        p = tmp_path / "pool.csv"
        p.write_bytes(b"entity_id,age\ne1,4")
        with pytest.raises(ParseError, match="newline"):
            CsvSource(p)

    def test_first_column_must_be_entity_id(self, tmp_path):
        p = tmp_path / "pool.csv"
        write_lines(p, ["id,age", "e1,4"])
        with pytest.raises(ParseError, match="entity_id"):
            CsvSource(p)

    def test_duplicate_entity_id(self, tmp_path):
        p = tmp_path / "pool.csv"
        write_lines(p, ["entity_id,age", "e1,4", "e1,5"])
        with pytest.raises(ParseError, match="duplicate entity id"):
            CsvSource(p)

    def test_duplicate_column(self, tmp_path):
        p = tmp_path / "pool.csv"
        write_lines(p, ["entity_id,age,age", "e1,4,5"])
        with pytest.raises(ParseError, match="duplicate column"):
            CsvSource(p)

    def test_ragged_row(self, tmp_path):
        p = tmp_path / "pool.csv"
        write_lines(p, ["entity_id,age", "e1,4,9"])
        with pytest.raises(ParseError, match="expected 2 cells"):
            CsvSource(p)


class TestCsvSourceFetch:
    def build(self, tmp_path, registry, rows):
        p = tmp_path / "pool.csv"
        cols = ["entity_id", "age_at_transplant", "sex", "biopsy_findings"]
        write_lines(p, [",".join(cols)] + rows)
        return CsvSource(p), registry

    def test_values_parsed_by_feature_kind(self, tmp_path, registry):
        src, reg = self.build(
            tmp_path, registry, ["e1,40,male,fibrosis;arteritis"]
        )
        specs = [reg.get(f) for f in ("age_at_transplant", "sex", "biopsy_findings")]
        (rec,) = src.fetch(["e1"], specs)
        assert rec.values["age_at_transplant"] == 40
        assert rec.values["sex"] == "male"
        assert rec.values["biopsy_findings"] == frozenset({"fibrosis", "arteritis"})

    def test_empty_multivalued_cell_is_empty_set(self, tmp_path, registry):
        src, reg = self.build(tmp_path, registry, ["e1,40,male,"])
        (rec,) = src.fetch(["e1"], [reg.get("biopsy_findings")])
        assert rec.values["biopsy_findings"] == frozenset()

    def test_empty_scalar_cell_is_incomplete_data(self, tmp_path, registry):
        src, reg = self.build(tmp_path, registry, ["e1,,male,"])
        with pytest.raises(DataCompletenessError, match="age_at_transplant"):
            src.fetch(["e1"], [reg.get("age_at_transplant")])

    def test_non_integer_cell(self, tmp_path, registry):
        src, reg = self.build(tmp_path, registry, ["e1,old,male,"])
        with pytest.raises(ParseError, match="non-integer"):
            src.fetch(["e1"], [reg.get("age_at_transplant")])

    def test_token_outside_domain(self, tmp_path, registry):
        src, reg = self.build(tmp_path, registry, ["e1,40,robot,"])
        with pytest.raises(EncodingError, match="robot"):
            src.fetch(["e1"], [reg.get("sex")])

    def test_unknown_entity(self, tmp_path, registry):
        src, reg = self.build(tmp_path, registry, ["e1,40,male,"])
        with pytest.raises(NotFoundError):
            src.fetch(["e9"], [reg.get("sex")])

    def test_missing_source_column(self, tmp_path, registry):
        src, reg = self.build(tmp_path, registry, ["e1,40,male,"])
        with pytest.raises(DataCompletenessError, match="diabetes"):
            src.fetch(["e1"], [reg.get("diabetes")])

    def test_fetch_all_preserves_file_order(self, tmp_path, registry):
        src, reg = self.build(
            tmp_path, registry, ["e2,41,male,", "e1,40,female,"]
        )
        out = src.fetch(None, [reg.get("sex")])
        assert [r.entity_id for r in out] == ["e2", "e1"]


class TestPlantedRecoverability:
    def test_positive_rate_moves_with_bias(self, registry):
        low = make_model(("rejection_within_1y", "previous_transplants"), 20, (0,))
        high = make_model(("rejection_within_1y", "previous_transplants"), -20, (0,))
        rate = lambda src: sum(
            r.values["rejection_within_1y"] for r in src.records
        ) / len(src)
        assert rate(generate_synthetic(3, 500, registry, planted_model=low)) < 0.05
        assert rate(generate_synthetic(3, 500, registry, planted_model=high)) > 0.95

    def test_coin_flip_rate_within_three_sigma(self, registry):
        model = make_model(("rejection_within_1y", "previous_transplants"), 0, (0,))
        n = 10_000
        src = generate_synthetic(9, n, registry, planted_model=model)
        rate = sum(r.values["rejection_within_1y"] for r in src.records) / n
        assert abs(rate - 0.5) <= 3 * math.sqrt(0.25 / n)

    def test_conditional_rate_matches_sigmoid(self, registry):
        # +5 on the yes indicator, bias 0: P(y=1 | diabetes=yes) = sigmoid(5)
        model = make_model(
            ("rejection_within_1y", "diabetesEQno", "diabetesEQyes"), 0, (0, 5)
        )
        src = generate_synthetic(21, 10_000, registry, planted_model=model)
        yes = [r for r in src.records if r.values["diabetes"] == "yes"]
        rate = sum(r.values["rejection_within_1y"] for r in yes) / len(yes)
        p = risk_probability(0, 5)
        assert rate == pytest.approx(p, abs=3 * math.sqrt(p * (1 - p) / len(yes)))
