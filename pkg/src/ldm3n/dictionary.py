"""Bidirectional term <-> id encoding with parity-typed ids.

Literals get odd ids (1, 3, 5, ...) and every other term gets even ids
(2, 4, 6, ...), so a single parity check tells traversal whether an id can
ever have outgoing pairs. Id 0 is reserved as the "no node" sentinel and is
never issued. Blank nodes can be subjects, so they count as non-literals.
"""

from __future__ import annotations

from .errors import CapacityExhausted, UnknownId
from .terms import Literal, Term

MAX_ID = 2**64 - 1


def is_literal_id(term_id: int) -> bool:
    """True iff the id encodes a literal (odd parity). Requires id >= 1."""
    if term_id < 1:
        raise ValueError(f"id {term_id} was never issued (0 is the sentinel)")
    return term_id & 1 == 1


class Dictionary:
    """Exact two-way map between terms and dense parity-typed integer ids.

    Encoding is idempotent and deterministic: feeding the same term sequence
    to a fresh dictionary always yields the same assignment. Mutable only
    while loading; afterwards it is shared read-only by query workers.
    """

    def __init__(self) -> None:
        self._forward: dict[Term, int] = {}
        self._reverse: dict[int, Term] = {}
        self._next_even = 2
        self._next_odd = 1

    def __len__(self) -> int:
        return len(self._forward)

    def __contains__(self, term: Term) -> bool:
        return term in self._forward

    def encode(self, term: Term) -> int:
        """Return the id for ``term``, issuing the next one of its parity if new."""
        existing = self._forward.get(term)
        if existing is not None:
            return existing
        if isinstance(term, Literal):
            new_id = self._next_odd
            if new_id > MAX_ID:
                raise CapacityExhausted("odd id counter exhausted")
            self._next_odd += 2
        else:
            new_id = self._next_even
            if new_id > MAX_ID:
                raise CapacityExhausted("even id counter exhausted")
            self._next_even += 2
        self._forward[term] = new_id
        self._reverse[new_id] = term
        return new_id

    def decode(self, term_id: int) -> Term:
        """Return the unique term with this id; UnknownId if never issued."""
        try:
            return self._reverse[term_id]
        except KeyError:
            raise UnknownId(f"id {term_id} was never issued") from None

    def lookup(self, term: Term) -> int | None:
        """Non-mutating encode: the id if the term is known, else None."""
        return self._forward.get(term)

    def is_issued(self, term_id: int) -> bool:
        return term_id in self._reverse

    def ids(self):
        return self._reverse.keys()

    def items(self):
        """(id, term) pairs in issue order."""
        return self._reverse.items()

    def literal_count(self) -> int:
        return (self._next_odd - 1) // 2

    def _restore(self, term_id: int, term: Term) -> None:
        """Re-insert a persisted (id, term) pair; advances the parity counters."""
        self._forward[term] = term_id
        self._reverse[term_id] = term
        if term_id & 1:
            self._next_odd = max(self._next_odd, term_id + 2)
        else:
            self._next_even = max(self._next_even, term_id + 2)
