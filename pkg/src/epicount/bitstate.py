"""Packed-lane automaton state and its constant-mask transition.

The scan state assigns to every trie node i a counter l_i = length of the
shortest suffix of the consumed text that contains the node's path word as
a subsequence (a reserved all-ones code stands for "no such suffix yet" /
"too long to matter").  All k counters live in one bit vector laid out as
k big blocks of omega+1 bits each::

    | 0 : l_k |  ...  | 0 : l_2 | 0 : l_1 |      (block 1 is least significant)

The low omega bits of a big block (the small block) hold the counter; the
top bit is an overflow bit that is zero between transitions.  omega is
sized so that w+1 is still representable and the all-ones code is strictly
larger than any countable value.

Reading one text byte updates every lane at once with a handful of
full-width operations: lanes whose node label matches the byte take their
parent lane's value (brought in place by shifting whole big blocks and
masking), all other lanes keep their own value, every small block gets +1,
and lanes that overflowed are clamped back to the all-ones code.  The
masks consumed by that transition are precomputed here per byte value.

Two representations back the same arithmetic: scanning code works on plain
Python integers (arbitrary width comes for free), while :class:`BitVector`
stores the vector as little-endian fixed-width limbs with explicit carry
and shift propagation.  The limb form makes the width semantics testable:
results must not depend on how the vector is chopped into limbs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .trie import TrieTables


def compute_omega(w: int) -> int:
    """Small-block width for window size ``w``.

    The smallest omega with 2**omega >= w + 2: counters 1..w+1 fit and the
    all-ones code 2**omega - 1 is left over as the "no suffix" marker.
    """
    if w < 1:
        raise ValueError("window size must be >= 1")
    return (w + 1).bit_length()


class BitVector:
    """Fixed-width bit vector stored as little-endian limbs.

    All operations are width-exact: operands must share width and limb
    size, addition and subtraction wrap modulo 2**width, shifts discard
    bits moved out and shift zeros in.  Big blocks of the automaton state
    may straddle limb boundaries; nothing here assumes alignment.
    """

    __slots__ = ("width", "limb_bits", "limbs")

    def __init__(self, width: int, limb_bits: int = 64, limbs: list[int] | None = None):
        if width < 1:
            raise ValueError("width must be >= 1")
        if limb_bits < 1:
            raise ValueError("limb_bits must be >= 1")
        self.width = width
        self.limb_bits = limb_bits
        n = -(-width // limb_bits)
        if limbs is None:
            limbs = [0] * n
        elif len(limbs) != n:
            raise ValueError(f"expected {n} limbs, got {len(limbs)}")
        self.limbs = limbs

    # -- construction / conversion -------------------------------------

    @classmethod
    def from_int(cls, value: int, width: int, limb_bits: int = 64) -> "BitVector":
        if value < 0:
            raise ValueError("value must be non-negative")
        value &= (1 << width) - 1
        out = cls(width, limb_bits)
        mask = (1 << limb_bits) - 1
        for i in range(len(out.limbs)):
            out.limbs[i] = value & mask
            value >>= limb_bits
        return out

    def to_int(self) -> int:
        value = 0
        for limb in reversed(self.limbs):
            value = (value << self.limb_bits) | limb
        return value

    def _top_mask(self) -> int:
        rem = self.width - (len(self.limbs) - 1) * self.limb_bits
        return (1 << rem) - 1

    def _check_compat(self, other: "BitVector") -> None:
        if self.width != other.width or self.limb_bits != other.limb_bits:
            raise ValueError("operands must share width and limb size")

    # -- width-exact operations ----------------------------------------

    def band(self, other: "BitVector") -> "BitVector":
        self._check_compat(other)
        out = [a & b for a, b in zip(self.limbs, other.limbs)]
        return BitVector(self.width, self.limb_bits, out)

    def add(self, other: "BitVector") -> "BitVector":
        self._check_compat(other)
        base = 1 << self.limb_bits
        out = []
        carry = 0
        for a, b in zip(self.limbs, other.limbs):
            s = a + b + carry
            if s >= base:
                s -= base
                carry = 1
            else:
                carry = 0
            out.append(s)
        out[-1] &= self._top_mask()  # wrap modulo 2**width
        return BitVector(self.width, self.limb_bits, out)

    def sub(self, other: "BitVector") -> "BitVector":
        self._check_compat(other)
        base = 1 << self.limb_bits
        out = []
        borrow = 0
        for a, b in zip(self.limbs, other.limbs):
            s = a - b - borrow
            if s < 0:
                s += base
                borrow = 1
            else:
                borrow = 0
            out.append(s)
        out[-1] &= self._top_mask()
        return BitVector(self.width, self.limb_bits, out)

    def shl(self, nbits: int) -> "BitVector":
        if nbits < 0:
            raise ValueError("shift must be non-negative")
        lb = self.limb_bits
        n = len(self.limbs)
        out = [0] * n
        loff, boff = divmod(nbits, lb)
        if loff < n:
            src = self.limbs
            if boff == 0:
                for i in range(n - 1, loff - 1, -1):
                    out[i] = src[i - loff]
            else:
                mask = (1 << lb) - 1
                inv = lb - boff
                for i in range(n - 1, loff - 1, -1):
                    v = (src[i - loff] << boff) & mask
                    if i - loff > 0:
                        v |= src[i - loff - 1] >> inv
                    out[i] = v
            out[-1] &= self._top_mask()
        return BitVector(self.width, lb, out)

    def shr(self, nbits: int) -> "BitVector":
        if nbits < 0:
            raise ValueError("shift must be non-negative")
        lb = self.limb_bits
        n = len(self.limbs)
        out = [0] * n
        loff, boff = divmod(nbits, lb)
        if loff < n:
            src = self.limbs
            if boff == 0:
                for i in range(n - loff):
                    out[i] = src[i + loff]
            else:
                mask = (1 << lb) - 1
                inv = lb - boff
                for i in range(n - loff):
                    v = src[i + loff] >> boff
                    if i + loff + 1 < n:
                        v = (v | (src[i + loff + 1] << inv)) & mask
                    out[i] = v
        return BitVector(self.width, lb, out)

    def extract_bits(self, offset: int, nbits: int) -> int:
        """Integer held in bits [offset, offset+nbits), zero past the end."""
        if offset < 0 or nbits < 0:
            raise ValueError("offset and nbits must be non-negative")
        lb = self.limb_bits
        end = min(offset + nbits, self.width)
        value = 0
        shift = 0
        pos = offset
        while pos < end:
            idx, bo = divmod(pos, lb)
            take = min(lb - bo, end - pos)
            value |= ((self.limbs[idx] >> bo) & ((1 << take) - 1)) << shift
            shift += take
            pos += take
        return value

    def is_zero(self) -> bool:
        return not any(self.limbs)

    def __eq__(self, other: object) -> bool:
        # value equality; deliberately ignores the limb chopping
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.width == other.width and self.to_int() == other.to_int()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"BitVector(width={self.width}, limb_bits={self.limb_bits}, value={self.to_int():#x})"


#: The automaton state is nothing but a bit vector of width k*(omega+1).
StateVector = BitVector


class _LimbedMasks:
    """Mask set materialized as BitVectors for one limb size."""

    __slots__ = ("first_type", "second_type", "n_other", "e1", "e2")

    def __init__(self, masks: "MaskSet", limb_bits: int):
        width = masks.width
        self.first_type = {
            sigma: tuple(
                (j * (masks.omega + 1), BitVector.from_int(m, width, limb_bits))
                for j, m in pairs
            )
            for sigma, pairs in masks.first_type.items()
        }
        self.second_type = {
            sigma: BitVector.from_int(m, width, limb_bits)
            for sigma, m in masks.second_type.items()
        }
        self.n_other = BitVector.from_int(masks.n_other, width, limb_bits)
        self.e1 = BitVector.from_int(masks.e1, width, limb_bits)
        self.e2 = BitVector.from_int(masks.e2, width, limb_bits)


@dataclass(eq=False)
class MaskSet:
    """Precomputed constants driving the packed transition.

    first_type maps a pattern byte to (j, mask) pairs: the mask selects the
    small blocks of nodes labelled with that byte whose parent sits j big
    blocks lower, i.e. the lanes that grab their parent's counter when the
    byte is read.  second_type holds, per pattern byte, the small blocks of
    all other nodes (the lanes that keep their own counter); n_other is the
    keep-everything mask shared by every byte absent from the patterns.
    e1 adds one to every small block, e2 selects every overflow bit, i0 is
    the all-lanes-at-infinity start state.  A pattern is present in the
    current window exactly when the small block at its final node holds a
    value below ``threshold`` (= w + 1).
    """

    omega: int
    width: int
    k: int
    w: int
    threshold: int
    first_type: dict[int, tuple[tuple[int, int], ...]]
    second_type: dict[int, int]
    n_other: int
    e1: int
    e2: int
    i0: int
    final_offsets: tuple[int, ...]
    _limb_cache: dict[int, _LimbedMasks] = field(
        default_factory=dict, repr=False, init=False
    )

    def limbed(self, limb_bits: int) -> _LimbedMasks:
        lm = self._limb_cache.get(limb_bits)
        if lm is None:
            lm = _LimbedMasks(self, limb_bits)
            self._limb_cache[limb_bits] = lm
        return lm


def build_masks(tables: TrieTables, w: int) -> MaskSet:
    """Build the mask set for ``tables`` at window size ``w``.

    One left-to-right pass over the nodes, placing each contribution with a
    running block shift.
    """
    if w < 1:
        raise ValueError("window size must be >= 1")
    omega = compute_omega(w)
    big = omega + 1
    k = tables.k
    small = (1 << omega) - 1
    e1 = 0
    e2 = 0
    i0 = 0
    by_sigma_j: dict[int, dict[int, int]] = {}
    sigma_lanes: dict[int, int] = {}
    off = 0
    for i in range(1, k + 1):
        e1 |= 1 << off
        e2 |= 1 << (off + omega)
        i0 |= small << off
        sigma = tables.tr[i - 1]
        j = i - tables.pr[i - 1]
        by_sigma_j.setdefault(sigma, {})
        by_sigma_j[sigma][j] = by_sigma_j[sigma].get(j, 0) | (small << off)
        sigma_lanes[sigma] = sigma_lanes.get(sigma, 0) | (small << off)
        off += big
    n_other = i0  # every small block set
    first_type = {
        sigma: tuple(sorted(jmap.items())) for sigma, jmap in by_sigma_j.items()
    }
    second_type = {sigma: n_other ^ lanes for sigma, lanes in sigma_lanes.items()}
    return MaskSet(
        omega=omega,
        width=k * big,
        k=k,
        w=w,
        threshold=w + 1,
        first_type=first_type,
        second_type=second_type,
        n_other=n_other,
        e1=e1,
        e2=e2,
        i0=i0,
        final_offsets=tuple(big * (fn - 1) for fn in tables.f),
    )


def initial_state(masks: MaskSet, limb_bits: int = 64) -> StateVector:
    """State with every lane at the all-ones "no suffix" code."""
    return BitVector.from_int(masks.i0, masks.width, limb_bits)


def encode(
    values: Sequence[int], masks: MaskSet, limb_bits: int = 64
) -> StateVector:
    """Pack per-node counter values into a state vector."""
    if len(values) != masks.k:
        raise ValueError(f"expected {masks.k} values, got {len(values)}")
    limit = 1 << masks.omega
    acc = 0
    off = 0
    for v in values:
        if not 0 <= v < limit:
            raise ValueError(f"value {v} does not fit in {masks.omega} bits")
        acc |= v << off
        off += masks.omega + 1
    return BitVector.from_int(acc, masks.width, limb_bits)


def decode(state: StateVector, masks: MaskSet) -> tuple[int, ...]:
    """Unpack a state vector into its per-node counter values."""
    _check_state(state, masks)
    if not state.band(masks.limbed(state.limb_bits).e2).is_zero():
        raise ValueError("corrupt state: overflow bit set")
    big = masks.omega + 1
    return tuple(
        state.extract_bits(big * i, masks.omega) for i in range(masks.k)
    )


def step(state: StateVector, sigma: int, masks: MaskSet) -> StateVector:
    """Consume one text byte, returning the successor state."""
    nxt, _ = step_trace(state, sigma, masks)
    return nxt


def step_trace(
    state: StateVector, sigma: int, masks: MaskSet
) -> tuple[StateVector, StateVector]:
    """Like :func:`step`, also returning the pre-repair overflow pattern.

    The second element flags the big blocks whose counter overflowed on the
    +1 and that were clamped back to the all-ones code.
    """
    _check_state(state, masks)
    lm = masks.limbed(state.limb_bits)
    pairs = lm.first_type.get(sigma)
    if pairs is None:
        # byte absent from all patterns: every lane keeps its own counter
        t = state.band(lm.n_other).add(lm.e1)
    else:
        t = state.band(lm.second_type[sigma]).add(lm.e1)
        for shift, mask in pairs:
            # lanes at parent distance j grab the parent counter; lanes at
            # path starts receive shifted-in zeros and restart at 1
            t = t.add(state.shl(shift).band(mask))
    overflow = t.band(lm.e2)
    return t.sub(overflow.shr(masks.omega)), overflow


def contained(state: StateVector, pattern: int, masks: MaskSet) -> bool:
    """Whether input pattern ``pattern`` (0-based) fits in the current window.

    Extracts the final node's small block and compares it against the
    threshold; only that one lane matters, so no full-width comparison is
    needed.
    """
    off = masks.final_offsets[pattern]
    return state.extract_bits(off, masks.omega) < masks.threshold


def all_contained(state: StateVector, masks: MaskSet) -> bool:
    """Whether every input pattern fits in the current window."""
    thr = masks.threshold
    om = masks.omega
    return all(state.extract_bits(off, om) < thr for off in masks.final_offsets)


def render_state(state: StateVector, masks: MaskSet) -> str:
    """Debug rendering as big blocks, most significant lane first.

    Each lane prints as ``o:bbbb`` with o the overflow bit and bbbb the
    small block in binary, e.g. ``0:1111|0:0110|0:0001``.
    """
    _check_state(state, masks)
    om = masks.omega
    big = om + 1
    small = (1 << om) - 1
    parts = []
    for i in range(masks.k - 1, -1, -1):
        block = state.extract_bits(big * i, big)
        parts.append(f"{block >> om}:{block & small:0{om}b}")
    return "|".join(parts)


def _check_state(state: StateVector, masks: MaskSet) -> None:
    if state.width != masks.width:
        raise ValueError(
            f"state width {state.width} does not match mask width {masks.width}"
        )
