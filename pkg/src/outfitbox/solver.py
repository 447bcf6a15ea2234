"""Budget-constrained outfit packing.

Given preferred outfits (sets of item ids), a price lookup and a budget B,
pick a maximum-cardinality subset whose distinct-item total price stays
within B. The problem is NP-complete, so the production path is the
Overload-and-Remove heuristic refined by three-stage decantation; an
exhaustive oracle is provided for small instances.

Boxes are plain lists of outfit index positions into the input sequence;
outfit sets may be any size (engine outfits are the 3-item special case).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class SolverError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Notation calculus over a box (a collection of outfit sets)
# ---------------------------------------------------------------------------


def multiplicity(box: Sequence[frozenset[str]], item: str) -> int:
    """Number of outfits in the box containing the item."""
    return sum(1 for o in box if item in o)


def relative_size(outfit: Iterable[str], box: Sequence[frozenset[str]]) -> float:
    """Sum over the outfit's items of 1 / multiplicity within the box.

    The outfit is expected to be a member of the box; a zero multiplicity
    therefore signals a corrupted box.
    """
    total = 0.0
    for item in outfit:
        mu = multiplicity(box, item)
        if mu == 0:
            raise SolverError(f"item {item!r} has zero multiplicity in its own box")
        total += 1.0 / mu
    return total


def candidate_relative_size(outfit: frozenset[str], box: Sequence[frozenset[str]]) -> float:
    """Relative size the outfit would have after insertion into the box."""
    return relative_size(outfit, list(box) + [outfit])


def distinct_items(box: Sequence[frozenset[str]]) -> frozenset[str]:
    out: set[str] = set()
    for o in box:
        out |= o
    return frozenset(out)


def card(box: Sequence[frozenset[str]]) -> int:
    """Total number of items, distinct or not."""
    return sum(len(o) for o in box)


def total_price(box: Sequence[frozenset[str]], prices: Mapping[str, int]) -> int:
    return sum(prices[item] for item in distinct_items(box))


def is_feasible(box: Sequence[frozenset[str]], prices: Mapping[str, int], budget: int) -> bool:
    return total_price(box, prices) <= budget


def connected_components(box: Sequence[frozenset[str]]) -> list[list[frozenset[str]]]:
    """Partition of the box's outfits under the transitive closure of the
    shares-an-item relation, ordered by first appearance."""
    n = len(box)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    owner: dict[str, int] = {}
    for i, o in enumerate(box):
        for item in o:
            if item in owner:
                union(owner[item], i)
            else:
                owner[item] = i
    groups: dict[int, list[frozenset[str]]] = {}
    for i, o in enumerate(box):
        groups.setdefault(find(i), []).append(o)
    return [groups[root] for root in sorted(groups)]


# ---------------------------------------------------------------------------
# Instance plumbing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """A solver instance: outfit sets, item prices and a budget."""

    outfits: tuple[frozenset[str], ...]
    prices: Mapping[str, int]
    budget: int

    def __post_init__(self):
        if self.budget <= 0:
            raise SolverError(f"budget must be positive, got {self.budget}")
        for i, o in enumerate(self.outfits):
            if not o:
                raise SolverError(f"outfit {i} is empty")
            for item in o:
                if item not in self.prices:
                    raise SolverError(f"no price for item {item!r}")
                if self.prices[item] <= 0:
                    raise SolverError(f"price of {item!r} must be positive")

    @classmethod
    def from_json(cls, path: str | Path) -> "Instance":
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        prices = {str(rec["id"]): int(rec["price"]) for rec in obj["items"]}
        outfits = tuple(frozenset(str(i) for i in o) for o in obj["outfits"])
        return cls(outfits=outfits, prices=prices, budget=int(obj["budget"]))


Collection = list[list[int]]  # boxes of outfit indices


def _box_sets(box: list[int], sets: Sequence[frozenset[str]]) -> list[frozenset[str]]:
    return [sets[i] for i in box]


def _collection_snapshot(coll: Collection, sets: Sequence[frozenset[str]]) -> list[list[frozenset[str]]]:
    return [[sets[i] for i in box] for box in coll]


# ---------------------------------------------------------------------------
# Overload and Remove
# ---------------------------------------------------------------------------


def _olr_pack(
    order: Sequence[int],
    sets: Sequence[frozenset[str]],
    prices: Mapping[str, int],
    budget: int,
) -> Collection:
    """Queue-driven packing with temporary overload and selective removal.

    An outfit never re-enters a box it was once put on; the seed collection
    holds a single empty box, which accepts the first outfit.
    """
    queue: deque[int] = deque(order)
    boxes: Collection = [[]]
    put_on: set[tuple[int, int]] = set()
    guard = 10 * max(1, len(order)) ** 2 + 100
    steps = 0
    while queue:
        steps += 1
        if steps > guard:
            raise SolverError("packing failed to terminate within the step guard")
        i = queue.popleft()
        o = sets[i]
        admissible: list[tuple[float, int]] = []
        for b, box in enumerate(boxes):
            if (i, b) in put_on:
                continue
            if not box:
                admissible.append((float(len(o)) - 1.0, b))  # empty box accepts
                continue
            rel = candidate_relative_size(o, _box_sets(box, sets))
            if rel < len(o):
                admissible.append((rel, b))
        if not admissible:
            boxes.append([i])
            put_on.add((i, len(boxes) - 1))
            continue
        _, b = min(admissible)
        boxes[b].append(i)
        put_on.add((i, b))
        while total_price(_box_sets(boxes[b], sets), prices) > budget:
            members = _box_sets(boxes[b], sets)
            ratios = [len(o2) / relative_size(o2, members) for o2 in members]
            pos = min(range(len(ratios)), key=lambda k: (ratios[k], k))
            removed = boxes[b].pop(pos)
            queue.append(removed)
    return boxes


# ---------------------------------------------------------------------------
# Decantation
# ---------------------------------------------------------------------------


def _sweep_to_fixpoint(coll: Collection, move_once) -> None:
    cap = max(4, (len(coll) + 1) ** 2)
    for _ in range(cap):
        if not move_once(coll):
            return
    raise SolverError("decantation failed to reach a fixpoint within the sweep cap")


def _lowest_feasible_destination(
    coll: Collection,
    j: int,
    unit: list[int],
    sets: Sequence[frozenset[str]],
    prices: Mapping[str, int],
    budget: int,
) -> int | None:
    unit_sets = _box_sets(unit, sets)
    for i in range(j):
        if total_price(_box_sets(coll[i], sets) + unit_sets, prices) <= budget:
            return i
    return None


def _decant_boxes(coll: Collection, sets, prices, budget) -> None:
    def move_once(coll: Collection) -> bool:
        for j in range(len(coll) - 1, 0, -1):
            dest = _lowest_feasible_destination(coll, j, coll[j], sets, prices, budget)
            if dest is not None:
                coll[dest].extend(coll[j])
                del coll[j]
                return True
        return False

    _sweep_to_fixpoint(coll, move_once)


def _global_components(coll: Collection, sets) -> list[list[tuple[int, int]]]:
    """Connected components of the shares-an-item relation across the whole
    collection; members are (box index, position) references."""
    flat: list[tuple[int, int]] = [(b, k) for b, box in enumerate(coll) for k in range(len(box))]
    index = {ref: n for n, ref in enumerate(flat)}
    parent = list(range(len(flat)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    owner: dict[str, int] = {}
    for n, (b, k) in enumerate(flat):
        for item in sets[coll[b][k]]:
            if item in owner:
                union(owner[item], n)
            else:
                owner[item] = n
    groups: dict[int, list[tuple[int, int]]] = {}
    for n, ref in enumerate(flat):
        groups.setdefault(find(n), []).append(ref)
    return [groups[root] for root in sorted(groups)]


def _decant_components(coll: Collection, sets, prices, budget) -> None:
    """Move whole connected components that sit entirely inside one box.

    Components are maximal under the global shares-an-item relation; a
    component spanning several boxes has no single source box and stays put
    until the finer outfit pass.
    """

    def move_once(coll: Collection) -> bool:
        for j in range(len(coll) - 1, 0, -1):
            for comp in _global_components(coll, sets):
                if any(b != j for b, _ in comp):
                    continue
                unit = [coll[j][k] for _, k in sorted(comp, key=lambda r: r[1])]
                dest = _lowest_feasible_destination(coll, j, unit, sets, prices, budget)
                if dest is None:
                    continue
                coll[dest].extend(unit)
                keep = [idx for k, idx in enumerate(coll[j]) if (j, k) not in set(comp)]
                coll[j] = keep
                if not coll[j]:
                    del coll[j]
                return True
        return False

    _sweep_to_fixpoint(coll, move_once)


def _decant_outfits(coll: Collection, sets, prices, budget) -> None:
    def move_once(coll: Collection) -> bool:
        for j in range(len(coll) - 1, 0, -1):
            for k, idx in enumerate(coll[j]):
                dest = _lowest_feasible_destination(coll, j, [idx], sets, prices, budget)
                if dest is None:
                    continue
                coll[dest].append(idx)
                del coll[j][k]
                if not coll[j]:
                    del coll[j]
                return True
        return False

    _sweep_to_fixpoint(coll, move_once)


def _decant_indexed(
    coll: Collection,
    sets: Sequence[frozenset[str]],
    prices: Mapping[str, int],
    budget: int,
) -> tuple[list[list[frozenset[str]]], ...]:
    """Run the three passes in place; returns a snapshot after each."""
    stages: list[list[list[frozenset[str]]]] = []
    _decant_boxes(coll, sets, prices, budget)
    stages.append(_collection_snapshot(coll, sets))
    _decant_components(coll, sets, prices, budget)
    stages.append(_collection_snapshot(coll, sets))
    _decant_outfits(coll, sets, prices, budget)
    stages.append(_collection_snapshot(coll, sets))
    return tuple(stages)


@dataclass
class DecantResult:
    collection: list[list[frozenset[str]]]
    stages: tuple[list[list[frozenset[str]]], ...]  # after boxes, components, outfits


def decantate(
    collection: Sequence[Sequence[Iterable[str]]],
    prices: Mapping[str, int],
    budget: int,
) -> DecantResult:
    """Refine a box collection by shifting content toward earlier boxes.

    Three passes run in order, each to a fixpoint: whole boxes, connected
    components (fully contained in one box), then single outfits. A move is
    legal when the destination stays within budget; emptied boxes are
    dropped. Boxes are assumed feasible on input but are not re-checked, so
    collections from external sources pass through unchanged content-wise.
    """
    sets: list[frozenset[str]] = []
    coll: Collection = []
    for box in collection:
        indices = []
        for o in box:
            sets.append(frozenset(o))
            indices.append(len(sets) - 1)
        coll.append(indices)
    stages = _decant_indexed(coll, sets, prices, budget)
    return DecantResult(collection=stages[-1], stages=stages)


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------


@dataclass
class BoxResult:
    """A solved box: chosen outfit positions in the input order, their sets,
    the distinct items and their total price."""

    indices: tuple[int, ...]
    outfits: tuple[frozenset[str], ...]
    items: frozenset[str]
    total: int
    dropped: tuple[int, ...] = ()
    decant_stages: tuple[list[list[frozenset[str]]], ...] = ()


def olr_solve(
    outfits: Sequence[Iterable[str]],
    prices: Mapping[str, int],
    budget: int,
) -> BoxResult:
    """Heuristic solve: pack with Overload-and-Remove, decantate, return the
    largest box (ties: lower total price, then lower box index).

    Outfits individually priced over budget are dropped up front and
    reported in the result.
    """
    sets = [frozenset(o) for o in outfits]
    inst = Instance(outfits=tuple(sets), prices=prices, budget=budget)
    affordable = [i for i, o in enumerate(sets) if total_price([o], prices) <= budget]
    dropped = tuple(i for i in range(len(sets)) if i not in set(affordable))
    if not affordable:
        return BoxResult(indices=(), outfits=(), items=frozenset(), total=0, dropped=dropped)

    coll = _olr_pack(affordable, sets, prices, budget)
    coll = [box for box in coll if box]
    stages = _decant_indexed(coll, sets, prices, budget)

    best: tuple[int, int, int] | None = None
    best_box: list[int] = []
    for b, box in enumerate(coll):
        t = total_price(_box_sets(box, sets), prices)
        key = (-len(box), t, b)
        if best is None or key < best:
            best = key
            best_box = box
    chosen = tuple(best_box)
    chosen_sets = tuple(sets[i] for i in chosen)
    return BoxResult(
        indices=chosen,
        outfits=chosen_sets,
        items=distinct_items(chosen_sets),
        total=total_price(chosen_sets, prices),
        dropped=dropped,
        decant_stages=stages,
    )


EXACT_LIMIT = 20


def exact_solve(
    outfits: Sequence[Iterable[str]],
    prices: Mapping[str, int],
    budget: int,
) -> BoxResult:
    """Exhaustive oracle: maximum-cardinality feasible subset, ties broken by
    the lexicographically smallest index tuple. Guarded for small instances."""
    sets = [frozenset(o) for o in outfits]
    Instance(outfits=tuple(sets), prices=prices, budget=budget)
    n = len(sets)
    if n > EXACT_LIMIT:
        raise SolverError(f"exact solver limited to {EXACT_LIMIT} outfits, got {n}")
    item_ids = sorted({x for o in sets for x in o})
    bit_of = {x: 1 << k for k, x in enumerate(item_ids)}
    price_of_bit = {1 << k: prices[x] for k, x in enumerate(item_ids)}
    masks = [sum(bit_of[x] for x in o) for o in sets]

    best_size = 0
    best_tuple: tuple[int, ...] = ()
    for subset in range(1 << n):
        indices = tuple(i for i in range(n) if subset >> i & 1)
        union = 0
        for i in indices:
            union |= masks[i]
        t = 0
        bits = union
        while bits:
            low = bits & -bits
            t += price_of_bit[low]
            bits ^= low
        if t > budget:
            continue
        if len(indices) > best_size or (len(indices) == best_size and indices < best_tuple):
            best_size = len(indices)
            best_tuple = indices
    chosen_sets = tuple(sets[i] for i in best_tuple)
    return BoxResult(
        indices=best_tuple,
        outfits=chosen_sets,
        items=distinct_items(chosen_sets),
        total=total_price(chosen_sets, prices),
    )
