import json
import logging

import pytest

from diffseq.bounds import choose_level, construction_bound
from diffseq.colorings import CapacityError, Coloring, GapSet, POWERS_OF_TWO
from diffseq.ramsey import (
    RamseyResult,
    avoids,
    gapset_from_description,
    load_cached_values,
    ramsey_number,
    ramsey_table,
)

from oracles import enumerate_threshold

# exact thresholds for powers-of-two gaps, cross-checked by enumeration
# below for k <= 4 and frozen from the solver beyond
KNOWN = {1: 1, 2: 3, 3: 7, 4: 11, 5: 17, 6: 25}


class TestAvoids:
    def test_examples(self):
        assert avoids("10", POWERS_OF_TWO, 2)
        assert not avoids("11", POWERS_OF_TWO, 2)
        assert avoids("11000011", POWERS_OF_TWO, 5)
        assert not avoids("11000011", POWERS_OF_TWO, 4)

    def test_accepts_colorings_and_lists(self):
        assert avoids(Coloring("10"), POWERS_OF_TWO, 2)
        assert avoids([0, 1, 2, 0, 1, 2], POWERS_OF_TWO, 2)
        assert not avoids([0, 1, 0], POWERS_OF_TWO, 2)

    def test_k1(self):
        assert not avoids("0", POWERS_OF_TWO, 1)
        assert avoids("", POWERS_OF_TWO, 1)

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            avoids("10", POWERS_OF_TWO, 0)


class TestRamseyNumber:
    def test_k1(self):
        res = ramsey_number(POWERS_OF_TWO, 1)
        assert res.value == 1
        assert res.certificate == ""
        assert res.nodes == 0

    def test_k2(self):
        res = ramsey_number(POWERS_OF_TWO, 2)
        assert res.value == 3
        assert res.certificate == "01"

    def test_k3(self):
        res = ramsey_number(POWERS_OF_TWO, 3)
        assert res.value == 7
        assert res.certificate == "011001"
        assert res.max_depth == 6

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_matches_enumeration(self, k):
        assert ramsey_number(POWERS_OF_TWO, k).value == enumerate_threshold(k, 2**k - 1)

    @pytest.mark.parametrize("k", sorted(KNOWN))
    def test_known_values(self, k):
        res = ramsey_number(POWERS_OF_TWO, k)
        assert res.value == KNOWN[k]

    def test_monotone_in_k(self):
        values = [ramsey_number(POWERS_OF_TWO, k).value for k in sorted(KNOWN)]
        assert values == sorted(values)

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_sandwich(self, k):
        value = ramsey_number(POWERS_OF_TWO, k).value
        assert construction_bound(choose_level(k)) <= value <= 2**k - 1

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_certificate_sound_and_maximal(self, k):
        res = ramsey_number(POWERS_OF_TWO, k)
        assert len(res.certificate) == res.value - 1
        assert avoids(res.certificate, POWERS_OF_TWO, k)

    def test_certificate_color_swap_still_avoids(self):
        res = ramsey_number(POWERS_OF_TWO, 5)
        swapped = "".join("1" if c == "0" else "0" for c in res.certificate)
        assert avoids(swapped, POWERS_OF_TWO, 5)

    def test_exceeds_n_max(self):
        res = ramsey_number(POWERS_OF_TWO, 5, n_max=10)
        assert res.exceeded
        assert res.value is None
        assert len(res.certificate) == 10
        assert avoids(res.certificate, POWERS_OF_TWO, 5)

    def test_three_colors_never_forced(self):
        # the mod-3 coloring dodges every power-of-two step
        res = ramsey_number(POWERS_OF_TWO, 2, r=3, n_max=10)
        assert res.exceeded
        assert res.certificate == "0120120120"

    def test_explicit_gap_set(self):
        res = ramsey_number(GapSet.explicit([1]), 2, n_max=16)
        assert res.exceeded
        assert res.certificate == "01" * 8

    def test_explicit_gaps_need_n_max(self):
        with pytest.raises(ValueError):
            ramsey_number(GapSet.explicit([1, 2]), 3)

    def test_parallel_matches_sequential(self):
        seq = ramsey_number(POWERS_OF_TWO, 5)
        par = ramsey_number(POWERS_OF_TWO, 5, jobs=2, split_depth=4)
        assert par == seq

    def test_parallel_exceeds_case(self):
        seq = ramsey_number(POWERS_OF_TWO, 5, n_max=12)
        par = ramsey_number(POWERS_OF_TWO, 5, n_max=12, jobs=2, split_depth=3)
        assert par == seq

    def test_capacity(self):
        with pytest.raises(CapacityError):
            ramsey_number(POWERS_OF_TWO, 25)
        with pytest.raises(CapacityError):
            ramsey_number(POWERS_OF_TWO, 3, n_max=100, max_positions=50)

    def test_validation(self):
        with pytest.raises(ValueError):
            ramsey_number(POWERS_OF_TWO, 0)
        with pytest.raises(ValueError):
            ramsey_number(POWERS_OF_TWO, 2, r=1)
        with pytest.raises(ValueError):
            ramsey_number(POWERS_OF_TWO, 2, r=11)

    def test_json_round_trip(self):
        res = ramsey_number(POWERS_OF_TWO, 4)
        assert RamseyResult.from_json_dict(res.to_json_dict()) == res


class TestGapsetDescription:
    def test_round_trip(self):
        for gs in (POWERS_OF_TWO, GapSet.powers_of(3), GapSet.explicit([1, 5, 9])):
            assert gapset_from_description(gs.describe()) == gs

    def test_rejects_junk(self):
        with pytest.raises(ValueError):
            gapset_from_description("everything")


class TestCache:
    def test_cold_then_warm(self, tmp_path):
        cache = tmp_path / "delta.jsonl"
        cold = ramsey_table(POWERS_OF_TWO, [2, 3], cache_path=cache)
        assert [r.value for r in cold] == [3, 7]
        assert cache.exists()

        warm = ramsey_table(POWERS_OF_TWO, [2, 3], cache_path=cache)
        assert [r.value for r in warm] == [3, 7]
        assert [r.certificate for r in warm] == [r.certificate for r in cold]
        assert all(r.nodes == 0 for r in warm)  # served from cache

    def test_missing_cache_same_results(self, tmp_path):
        plain = ramsey_table(POWERS_OF_TWO, [2, 3])
        cached = ramsey_table(POWERS_OF_TWO, [2, 3], cache_path=tmp_path / "c.jsonl")
        assert [(r.value, r.certificate) for r in plain] == [
            (r.value, r.certificate) for r in cached
        ]

    def test_empty_cache_file_same_as_cold(self, tmp_path):
        cache = tmp_path / "empty.jsonl"
        cache.write_text("")
        res = ramsey_table(POWERS_OF_TWO, [1, 2], cache_path=cache)
        assert [r.value for r in res] == [1, 3]
        assert all(r.nodes == ramsey_number(POWERS_OF_TWO, r.k).nodes for r in res)

    def test_tampered_certificate_recomputed(self, tmp_path, caplog):
        cache = tmp_path / "delta.jsonl"
        ramsey_table(POWERS_OF_TWO, [3], cache_path=cache)
        records = [json.loads(line) for line in cache.read_text().splitlines()]
        records[0]["certificate"] = "111111"  # not avoiding
        cache.write_text("\n".join(json.dumps(r) for r in records) + "\n")

        with caplog.at_level(logging.WARNING, logger="diffseq.ramsey"):
            again = ramsey_table(POWERS_OF_TWO, [3], cache_path=cache)
        assert again[0].value == 7
        assert again[0].certificate == "011001"
        assert again[0].nodes > 0  # actually recomputed
        assert any("avoidance" in rec.message for rec in caplog.records)
        # rewritten cache is valid again
        final = ramsey_table(POWERS_OF_TWO, [3], cache_path=cache)
        assert final[0].nodes == 0

    def test_corrupt_line_recovered(self, tmp_path, caplog):
        cache = tmp_path / "delta.jsonl"
        cache.write_text("this is not json\n")
        with caplog.at_level(logging.WARNING, logger="diffseq.ramsey"):
            res = ramsey_table(POWERS_OF_TWO, [2], cache_path=cache)
        assert res[0].value == 3
        assert any("corrupt" in rec.message for rec in caplog.records)
        assert "this is not json" not in cache.read_text()

    def test_exceeded_record_reused_and_truncated(self, tmp_path):
        cache = tmp_path / "delta.jsonl"
        first = ramsey_table(POWERS_OF_TWO, [5], n_max=12, cache_path=cache)
        assert first[0].exceeded
        # shorter horizon is answerable straight from the cached certificate
        shorter = ramsey_table(POWERS_OF_TWO, [5], n_max=8, cache_path=cache)
        assert shorter[0].exceeded
        assert len(shorter[0].certificate) == 8
        assert shorter[0].nodes == 0
        # longer horizon forces recomputation
        longer = ramsey_table(POWERS_OF_TWO, [5], n_max=16, cache_path=cache)
        assert longer[0].exceeded
        assert longer[0].nodes > 0

    def test_load_cached_values(self, tmp_path):
        cache = tmp_path / "delta.jsonl"
        ramsey_table(POWERS_OF_TWO, [2, 3, 4], cache_path=cache)
        assert load_cached_values(cache, POWERS_OF_TWO) == {2: 3, 3: 7, 4: 11}
        assert load_cached_values(tmp_path / "absent.jsonl", POWERS_OF_TWO) == {}

    def test_cache_records_match_spec_shape(self, tmp_path):
        cache = tmp_path / "delta.jsonl"
        ramsey_table(POWERS_OF_TWO, [2], cache_path=cache)
        rec = json.loads(cache.read_text().splitlines()[0])
        assert rec == {
            "D": "powers-of-2",
            "k": 2,
            "r": 2,
            "value": 3,
            "certificate": "01",
        }

    def test_empty_ks_rejected(self):
        with pytest.raises(ValueError):
            ramsey_table(POWERS_OF_TWO, [])
