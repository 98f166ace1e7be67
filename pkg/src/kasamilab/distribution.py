"""Integer value distributions and the error type shared across modules."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

__all__ = ["VerificationError", "ValueDistribution", "pack_bits_hex"]


def pack_bits_hex(bits):
    """Pack a 0/1 sequence into hex, bit i of the word at byte i//8 bit i%8."""
    val = 0
    for i, b in enumerate(bits):
        val |= int(b) << i
    nbytes = (len(bits) + 7) // 8
    return val.to_bytes(nbytes, "little").hex()


class VerificationError(Exception):
    """A measured quantity disagrees with its closed-form prediction."""


@dataclass(frozen=True)
class ValueDistribution:
    """Multiset of integers, e.g. an exponential-sum spectrum or weight table.

    entries are (value, count) pairs sorted by value ascending, zero counts
    dropped. notes carry human-readable flags (e.g. reconciled misprints in a
    published table); they never participate in equality.
    """

    entries: tuple[tuple[int, int], ...]
    total: int
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_counts(cls, counts, notes=()):
        items = tuple(sorted((int(v), int(c)) for v, c in dict(counts).items() if c))
        return cls(entries=items, total=sum(c for _, c in items), notes=tuple(notes))

    def as_dict(self):
        return dict(self.entries)

    def count(self, value):
        return self.as_dict().get(value, 0)

    @property
    def values(self):
        return tuple(v for v, _ in self.entries)

    def with_notes(self, notes):
        return ValueDistribution(self.entries, self.total, tuple(notes))

    def map_values(self, fn, notes=()):
        """Pushforward under fn, merging counts that land on the same value."""
        out = {}
        for v, c in self.entries:
            w = fn(v)
            out[w] = out.get(w, 0) + c
        return ValueDistribution.from_counts(out, notes=notes or self.notes)

    def diff(self, other):
        """(value, count_self, count_other) for every value where they differ."""
        vals = sorted(set(self.as_dict()) | set(other.as_dict()))
        return [(v, self.count(v), other.count(v))
                for v in vals if self.count(v) != other.count(v)]

    def to_json_dict(self):
        return {"values": [{"v": v, "count": c} for v, c in self.entries],
                "total": self.total}

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_csv(self):
        return "\n".join(["value,count"] + [f"{v},{c}" for v, c in self.entries]) + "\n"

    def digest(self):
        """Short deterministic fingerprint for report records."""
        body = ",".join(f"{v}:{c}" for v, c in self.entries) + f"|total={self.total}"
        if len(body) <= 96:
            return body
        return "sha256:" + hashlib.sha256(body.encode()).hexdigest()[:16]
