"""Agreement metrics for comparing labelings against a gold set or
against another labeler (per-class F1 and Cohen's kappa over the
three-way stance)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .types import STANCES, ArgumentLabel


@dataclass
class ClassScores:
    precision: float
    recall: float
    f1: float
    support: int  # gold instances of the class

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1, "support": self.support}


@dataclass
class F1Report:
    per_class: dict[str, ClassScores]
    macro_f1: float

    def to_dict(self) -> dict:
        return {
            "per_class": {c: s.to_dict() for c, s in self.per_class.items()},
            "macro_f1": self.macro_f1,
        }


def _paired_stances(a: Sequence[ArgumentLabel], b: Sequence[ArgumentLabel]) -> list[tuple[str, str]]:
    by_a = {l.post_id: l.stance for l in a}
    by_b = {l.post_id: l.stance for l in b}
    if len(by_a) != len(a) or len(by_b) != len(b):
        raise ValueError("duplicate post ids in a labeling")
    if set(by_a) != set(by_b):
        raise ValueError("labelings cover different post id sets")
    return [(by_a[pid], by_b[pid]) for pid in sorted(by_a)]


def eval_f1(predicted: Sequence[ArgumentLabel], gold: Sequence[ArgumentLabel]) -> F1Report:
    """Per-class precision/recall/F1 over {none, for, against} plus the
    unweighted macro mean.  Classes absent from both gold and predictions
    are left out of the macro average."""
    pairs = _paired_stances(predicted, gold)
    pred_counts = Counter(p for p, _ in pairs)
    gold_counts = Counter(g for _, g in pairs)

    per_class: dict[str, ClassScores] = {}
    macro_terms = []
    for cls in STANCES:
        tp = sum(1 for p, g in pairs if p == cls and g == cls)
        fp = pred_counts[cls] - tp
        fn = gold_counts[cls] - tp
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[cls] = ClassScores(precision, recall, f1, support=gold_counts[cls])
        if pred_counts[cls] or gold_counts[cls]:
            macro_terms.append(f1)
    macro = sum(macro_terms) / len(macro_terms) if macro_terms else 0.0
    return F1Report(per_class=per_class, macro_f1=macro)


def eval_kappa(labels_a: Sequence[ArgumentLabel], labels_b: Sequence[ArgumentLabel]) -> float:
    """Cohen's kappa over the 3-class stances: (p_o - p_e) / (1 - p_e).

    When both labelers are constant and identical, p_e = 1 and kappa is
    defined as 1 (perfect agreement)."""
    pairs = _paired_stances(labels_a, labels_b)
    n = len(pairs)
    if n == 0:
        raise ValueError("empty labelings")
    p_o = sum(1 for a, b in pairs if a == b) / n
    marg_a = Counter(a for a, _ in pairs)
    marg_b = Counter(b for _, b in pairs)
    p_e = sum((marg_a[c] / n) * (marg_b[c] / n) for c in STANCES)
    if p_e >= 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)
