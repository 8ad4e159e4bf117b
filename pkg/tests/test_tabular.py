# tests/test_tabular.py

"""
Code file for TestEncoding, TestTarget, TestSplitting and TestIngestion.
"""

import math
import unittest

import numpy as np

from mvre.objects.errors import SchemaError, SplitError, ValidationError
from mvre.objects.house import DatasetSchema, HouseRecord
from mvre.services.tabular import (fit_transform, transform, log_target, inv_log_target,
    split_geographic, split_random, parse_split, plan_split, load_records, GeocodingTable)
from tests.base_setup import BaseUnitSetup


def records_of(values: list[dict], localities: list[str] | None = None) -> list[HouseRecord]:
    localities = localities or [None] * len(values)
    return [HouseRecord(str(i), v, target=100.0 + i, locality=loc)
        for i, (v, loc) in enumerate(zip(values, localities))]


class TestEncoding(BaseUnitSetup):
    """
    Tests min-max normalization and one-hot encoding.
    """

    def setUp(self):
        super().setUp()
        self.schema = DatasetSchema(("area",), {"grade": ("A", "B", "C")})


    def test_min_max_endpoints(self):
        """ [10, 20, 30] -> [0, 0.5, 1] """
        # Vars
        records = records_of([{"area": 10, "grade": "A"}, {"area": 20, "grade": "A"},
            {"area": 30, "grade": "A"}])

        # Test
        fm, stats = fit_transform(records, self.schema)

        # Validate
        self.assertAllClose([0.0, 0.5, 1.0], fm.values[:, 0])
        self.assertEqual(10.0, stats.minimum["area"])
        self.assertEqual(30.0, stats.maximum["area"])


    def test_constant_column(self):
        records = records_of([{"area": 5, "grade": "A"}, {"area": 5, "grade": "B"}])
        fm, _ = fit_transform(records, self.schema)
        self.assertAllClose([0.0, 0.0], fm.values[:, 0])


    def test_one_hot(self):
        """ Record B under vocabulary {A, B, C} -> [0, 1, 0] """
        fm, _ = fit_transform(records_of([{"area": 1, "grade": "B"}]), self.schema)
        self.assertAllClose([0.0, 1.0, 0.0], fm.values[0, 1:])
        self.assertEqual(["area", "grade=A", "grade=B", "grade=C"], fm.columns)


    def test_transform_uses_train_stats(self):
        """ min 10 max 30: 40 -> 1.5 (not clamped), 10 -> 0, unseen D -> zeros """
        # Vars
        train = records_of([{"area": 10, "grade": "A"}, {"area": 30, "grade": "C"}])
        _, stats = fit_transform(train, self.schema)
        test = records_of([{"area": 40, "grade": "D"}, {"area": 10, "grade": "A"}])

        # Test
        fm = transform(test, self.schema, stats)

        # Validate
        self.assertAllClose([1.5, 0.0], fm.values[:, 0])
        self.assertAllClose([0.0, 0.0, 0.0], fm.values[0, 1:])


    def test_missing_field(self):
        with self.assertRaises(SchemaError):
            fit_transform(records_of([{"area": 1}]), self.schema)
        with self.assertRaises(SchemaError):
            fit_transform([], self.schema)


class TestTarget(BaseUnitSetup):
    """
    Tests the log price transform.
    """

    def test_values(self):
        self.assertAlmostEqual(12.5246, log_target(275049.91), places=4)
        self.assertEqual(0.0, log_target(1.0))


    def test_inverse(self):
        prices = np.array([1.0, 999.5, 275049.91])
        self.assertAllClose(prices, inv_log_target(log_target(prices)), atol=1e-6)


    def test_non_positive_price(self):
        for bad in (0.0, -5.0, math.nan):
            with self.assertRaises(ValidationError, msg=f"price {bad}"):
                log_target(bad)


class TestSplitting(BaseUnitSetup):
    """
    Tests the geographic and random splits and their composition.
    """

    def localized(self, n: int = 50) -> list[HouseRecord]:
        return records_of([{"area": i} for i in range(n)], [f"L{i % 5}" for i in range(n)])


    def test_random_sizes_and_determinism(self):
        """ |pool| 10 at 0.8 -> (8, 2); the same seed gives the same partition """
        # Vars
        pool = self.localized(10)

        # Test
        first = split_random(pool, 0.8, 3)
        second = split_random(pool, 0.8, 3)

        # Validate
        self.assertEqual((8, 2), (len(first[0]), len(first[1])))
        self.assertEqual([r.record_id for r in first[0]], [r.record_id for r in second[0]])
        ids = {r.record_id for r in first[0]} | {r.record_id for r in first[1]}
        self.assertEqual({r.record_id for r in pool}, ids)


    def test_random_synthetic_size(self):
        """ fraction 0.8 on 2000 records -> (1600, 400) """
        train, val = split_random(self.localized(2000), 0.8, 7)
        self.assertEqual((1600, 400), (len(train), len(val)))


    def test_random_degenerate(self):
        with self.assertRaises(SplitError):
            split_random(self.localized(1), 0.8, 0)
        with self.assertRaises(ValidationError):
            split_random(self.localized(10), 1.0, 0)


    def test_geographic_counts(self):
        """ Holding out L4 puts exactly the L4 rows in test """
        # Vars
        records = self.localized(50)

        # Test
        pool, test = split_geographic(records, {"L4"})

        # Validate
        self.assertEqual(10, len(test))
        self.assertTrue(all(r.locality == "L4" for r in test))
        self.assertEqual(50, len(pool) + len(test))


    def test_geographic_empty_holdout(self):
        with self.assertRaises(SplitError):
            split_geographic(self.localized(), set())
        with self.assertRaises(SplitError):
            split_geographic(self.localized(), {"nowhere"})


    def test_parse_split(self):
        self.assertEqual(("random", set()), parse_split("random"))
        self.assertEqual(("geo", {"L3", "L4"}), parse_split("geo:L4, L3"))
        with self.assertRaises(SplitError):
            parse_split("geo:")
        with self.assertRaises(ValidationError):
            parse_split("spatial")


    def test_plan_is_a_partition(self):
        """ train, val and test are disjoint and cover every record """
        for split in ("random", "geo:L1,L4"):
            # Vars
            records = self.localized(60)

            # Test
            plan = plan_split(records, split, 0.8, 11)

            # Validate
            parts = [{r.record_id for r in p} for p in (plan.train, plan.val, plan.test)]
            self.assertEqual(60, sum(len(p) for p in parts), msg=split)
            self.assertEqual({r.record_id for r in records}, set().union(*parts), msg=split)

        self.assertEqual("geo:L1,L4", plan.split_id)
        self.assertEqual("random:0.8", plan_split(records, "random", 0.8, 11).split_id)


class TestIngestion(BaseUnitSetup):
    """
    Tests CSV loading and the geocoding table.
    """

    def setUp(self):
        super().setUp()
        self.schema = DatasetSchema(("sqft",), {"style": ("ranch", "colonial")})


    def test_load_with_geocoder(self):
        # Vars
        (self.root / "geo.csv").write_text(
            "address,lat,lon\n12 Main St,35.6,-82.55\n", encoding="utf-8")
        (self.root / "houses.csv").write_text(
            "id,sqft,style,locality,address,totalmarketvalue\n"
            "a,1500,ranch,Candler,12  main st,250000\n"
            "b,2100,colonial,Woodfin,,310000\n", encoding="utf-8")

        # Test
        records = load_records(self.root / "houses.csv", self.schema,
            GeocodingTable.load(self.root / "geo.csv"))

        # Validate
        self.assertEqual(["a", "b"], [r.record_id for r in records])
        self.assertAlmostEqual(35.6, records[0].geo.lat)
        self.assertIsNone(records[1].geo)
        self.assertEqual(310000.0, records[1].target)
        self.assertEqual("Woodfin", records[1].locality)


    def test_missing_values_are_not_imputed(self):
        (self.root / "houses.csv").write_text(
            "sqft,style,totalmarketvalue\n,ranch,1000\n", encoding="utf-8")
        with self.assertRaises(SchemaError):
            load_records(self.root / "houses.csv", self.schema)


    def test_missing_column(self):
        (self.root / "houses.csv").write_text("sqft,totalmarketvalue\n1,2\n", encoding="utf-8")
        with self.assertRaises(SchemaError):
            load_records(self.root / "houses.csv", self.schema)


if __name__ == "__main__":
    unittest.main()
