"""Condition-grouped cross-validation splits.

Folds are defined by (temperature, velocity) combinations: each fold
evaluates on one combination and trains on all the others, so training and
evaluation never share a drying condition. With the full 3 x 2 grid this
yields the six-fold split; any dataset spanning at least two combinations
degrades gracefully to one fold per combination.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..domain import DryingRecord


class FoldError(ValueError):
    """Raised when the dataset cannot support grouped cross-validation."""


@dataclass(frozen=True)
class FoldSplit:
    """One grouped split: ``fold_id`` is the held-out (T, v) combination."""

    fold_id: tuple[float, float]
    train_ids: tuple[str, ...]
    eval_ids: tuple[str, ...]

    @property
    def key(self) -> str:
        return f"T{self.fold_id[0]:g}-v{self.fold_id[1]:g}"


def make_folds(records: list[DryingRecord]) -> list[FoldSplit]:
    """Grouped splits ordered by (temperature, velocity).

    Raises:
        FoldError: fewer than two condition combinations, or a combination
            with fewer than two records (an unevaluable fold).
    """
    by_combo: dict[tuple[float, float], list[str]] = {}
    for record in records:
        combo = record.conditions.combo()
        by_combo.setdefault(combo, []).append(record.sample.sample_id)

    if len(by_combo) < 2:
        raise FoldError(
            f"grouped cross-validation needs >= 2 (T, v) combinations, "
            f"found {len(by_combo)}"
        )
    for combo, ids in sorted(by_combo.items()):
        if len(ids) < 2:
            raise FoldError(
                f"combination T={combo[0]:g}, v={combo[1]:g} has only "
                f"{len(ids)} record(s); folds need >= 2"
            )

    folds: list[FoldSplit] = []
    for combo in sorted(by_combo):
        eval_ids = tuple(by_combo[combo])
        train_ids = tuple(
            sample_id
            for other, ids in sorted(by_combo.items())
            if other != combo
            for sample_id in ids
        )
        folds.append(FoldSplit(fold_id=combo, train_ids=train_ids, eval_ids=eval_ids))
    return folds
