"""Monomial orders as sort-key functions on exponent vectors.

Every order exposes ``key(exps)`` returning a tuple that compares the way
the order does: bigger key = bigger monomial.  All four kinds are total,
multiplicative and have 1 as the minimal monomial (weight vectors are
required to be nonnegative).
"""

from __future__ import annotations


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MonomialOrder:
    name = "order"

    def key(self, exps):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self._params() == other._params()

    def __hash__(self):
        return hash((type(self).__name__, self._params()))

    def _params(self):
        return ()


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps):
        return exps


class GRevLex(MonomialOrder):
    name = "grevlex"

    def key(self, exps):
        return _grevlex_key(exps)


class Block(MonomialOrder):
    """Eliminates the first ``block_size`` variables; grevlex inside blocks."""

    def __init__(self, block_size: int):
        if block_size < 0:
            raise ValueError("block size must be nonnegative")
        self.block_size = block_size
        self.name = f"block({block_size})"

    def key(self, exps):
        k = self.block_size
        return (_grevlex_key(exps[:k]), _grevlex_key(exps[k:]))

    def _params(self):
        return (self.block_size,)


class Weighted(MonomialOrder):
    """Weight-vector order with grevlex tiebreak; weights must be >= 0."""

    def __init__(self, weights):
        weights = tuple(int(w) for w in weights)
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        self.weights = weights
        self.name = f"weighted{weights}"

    def key(self, exps):
        w = sum(a * b for a, b in zip(self.weights, exps))
        return (w, _grevlex_key(exps))

    def _params(self):
        return (self.weights,)


lex = Lex()
grevlex = GRevLex()
