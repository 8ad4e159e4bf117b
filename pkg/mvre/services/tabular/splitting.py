# mvre/services/tabular/splitting.py

"""
Split protocol: a geographic holdout (or a random holdout) for testing, and
a seeded random train/validation split of the remaining pool.
"""

# Default libs
import math
from dataclasses import dataclass

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import SchemaError, SplitError, ValidationError
from ...objects.house import HouseRecord


@dataclass
class SplitPlan:
    train: list[HouseRecord]
    val: list[HouseRecord]
    test: list[HouseRecord]
    split_id: str


def split_geographic(records: list[HouseRecord],
                     holdout_localities: set[str]) -> tuple[list[HouseRecord], list[HouseRecord]]:
    """
    Records whose locality is in the holdout set form the test set; the rest
    form the pool. Order within each part follows the input.
    """
    unlabeled = [r.record_id for r in records if r.locality is None]
    if unlabeled:
        raise SchemaError(f"{len(unlabeled)} records have no locality label "
            f"(first: {unlabeled[0]})")

    test = [r for r in records if r.locality in holdout_localities]
    pool = [r for r in records if r.locality not in holdout_localities]
    if not test:
        raise SplitError(f"Geographic holdout {sorted(holdout_localities)} selects no records")
    if not pool:
        raise SplitError(f"Geographic holdout {sorted(holdout_localities)} leaves no training pool")
    return pool, test


def split_random(pool: list[HouseRecord], train_fraction: float,
                 seed: int) -> tuple[list[HouseRecord], list[HouseRecord]]:
    """
    Seeded shuffle, then the first floor(fraction * n) records train.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValidationError(f"train_fraction must lie in (0, 1), got {train_fraction}")

    n_train = math.floor(train_fraction * len(pool))
    if n_train < 1 or n_train >= len(pool):
        raise SplitError(f"A pool of {len(pool)} records cannot be split "
            f"{train_fraction:.2f}/{1 - train_fraction:.2f} into two non-empty parts")

    order = np.random.default_rng(seed).permutation(len(pool))
    train = [pool[i] for i in order[:n_train]]
    val = [pool[i] for i in order[n_train:]]
    return train, val


def parse_split(split: str) -> tuple[str, set[str]]:
    """
    "random" or "geo:<name>[,<name>...]" -> (kind, holdout names)
    """
    split = (split or "").strip()
    if split == "random":
        return "random", set()
    if split.startswith("geo:"):
        names = {n.strip() for n in split[4:].split(",") if n.strip()}
        if not names:
            raise SplitError("geo split needs at least one locality, e.g. geo:L4")
        return "geo", names
    raise ValidationError(f"Unknown split '{split}', expected 'random' or 'geo:<names>'")


def plan_split(records: list[HouseRecord], split: str, train_fraction: float,
               seed: int) -> SplitPlan:
    """
    Three pairwise-disjoint parts whose union is the input.

    geo:<names> holds out those localities; random holds out a seeded
    (1 - fraction) share. The pool is then split train/val with seed + 1.
    """
    kind, names = parse_split(split)
    if kind == "geo":
        pool, test = split_geographic(records, names)
        split_id = "geo:" + ",".join(sorted(names))
    else:
        pool, test = split_random(records, train_fraction, seed)
        split_id = f"random:{train_fraction:g}"
    train, val = split_random(pool, train_fraction, seed + 1)
    return SplitPlan(train, val, test, split_id)
