"""Labeled trial scores: the input to every fit and metric."""

import numpy as np

from .errors import DomainError, EmptyClassError


class TrialScores:
    """Target and non-target scores.

    Scores may be raw recognizer outputs or calibrated LLRs; the type does not
    care. Element order carries no meaning. Arrays are stored read-only.
    """

    __slots__ = ("targets", "nontargets")

    def __init__(self, targets=(), nontargets=()):
        tar = np.array(targets, dtype=float).ravel()
        non = np.array(nontargets, dtype=float).ravel()
        for name, arr in (("target", tar), ("non-target", non)):
            if not np.all(np.isfinite(arr)):
                raise DomainError(f"{name} scores must be finite")
            arr.flags.writeable = False
        object.__setattr__(self, "targets", tar)
        object.__setattr__(self, "nontargets", non)

    def __setattr__(self, name, value):
        raise AttributeError("TrialScores is immutable")

    @property
    def n_targets(self):
        return self.targets.size

    @property
    def n_nontargets(self):
        return self.nontargets.size

    def require_both(self):
        """Raise EmptyClassError unless both classes have at least one score."""
        if self.n_targets == 0:
            raise EmptyClassError("no target scores")
        if self.n_nontargets == 0:
            raise EmptyClassError("no non-target scores")
        return self

    def map(self, fn):
        """Apply an elementwise function to both classes."""
        return TrialScores(fn(self.targets), fn(self.nontargets))

    def __eq__(self, other):
        if not isinstance(other, TrialScores):
            return NotImplemented
        return (np.array_equal(self.targets, other.targets)
                and np.array_equal(self.nontargets, other.nontargets))

    def __hash__(self):
        return hash((self.targets.tobytes(), self.nontargets.tobytes()))

    def __repr__(self):
        return f"TrialScores(n_targets={self.n_targets}, n_nontargets={self.n_nontargets})"
