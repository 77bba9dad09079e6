"""Finite abstract argumentation: frameworks, complete/grounded labelings,
framework composition, acceptance decisions, and graded informedness.

An argumentation framework is a pair (arguments, attacks) where attacks is a
binary relation on the arguments; it is evaluated by assigning each argument
one of three labels (IN = accepted, OUT = rejected, UNDEC = abstained) subject
to the usual completeness constraints.  Arguments are plain non-negative
integers; chain frameworks use the 1-based index of the i-th link.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping

#: Enumeration cost of complete_labelings is O(2^n); keep it desk-scale.
MAX_ENUMERATION_ARGS = 16
#: The informedness comparison quantifies over all 2^n induced subframeworks.
MAX_UNIVERSE_ARGS = 12


class ArgumentNotFoundError(LookupError):
    """An argument id was not part of the framework it was used with."""


class SizeLimitError(ValueError):
    """A framework exceeds the enumeration bound of the requested operation."""


class ApxParseError(ValueError):
    """An apx framework file could not be parsed; carries the 1-based line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Label(Enum):
    IN = "IN"
    OUT = "OUT"
    UNDEC = "UNDEC"


@dataclass(frozen=True)
class ArgumentationFramework:
    """Immutable framework (arguments, attacks); hashable, safe to share."""

    arguments: frozenset[int]
    attacks: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "arguments", frozenset(self.arguments))
        object.__setattr__(
            self, "attacks", frozenset((int(a), int(b)) for a, b in self.attacks)
        )
        for attacker, target in self.attacks:
            if attacker not in self.arguments or target not in self.arguments:
                raise ValueError(
                    f"attack ({attacker},{target}) has an endpoint outside the argument set"
                )

    def attackers_of(self, arg: int) -> frozenset[int]:
        if arg not in self.arguments:
            raise ArgumentNotFoundError(arg)
        return frozenset(a for a, b in self.attacks if b == arg)

    def attacker_map(self) -> dict[int, tuple[int, ...]]:
        """Argument -> sorted tuple of its attackers, for every argument."""
        amap: dict[int, list[int]] = {a: [] for a in self.arguments}
        for attacker, target in self.attacks:
            amap[target].append(attacker)
        return {a: tuple(sorted(v)) for a, v in amap.items()}


@dataclass(frozen=True)
class Labeling:
    """Total IN/OUT/UNDEC assignment, stored sorted by argument id."""

    entries: tuple[tuple[int, Label], ...]

    @classmethod
    def from_dict(cls, assignment: Mapping[int, Label]) -> "Labeling":
        return cls(tuple(sorted(assignment.items())))

    def as_dict(self) -> dict[int, Label]:
        return dict(self.entries)

    def label_of(self, arg: int) -> Label:
        for a, lab in self.entries:
            if a == arg:
                return lab
        raise ArgumentNotFoundError(arg)

    def args_with(self, label: Label) -> frozenset[int]:
        return frozenset(a for a, lab in self.entries if lab is label)

    @property
    def in_args(self) -> frozenset[int]:
        return self.args_with(Label.IN)

    @property
    def out_args(self) -> frozenset[int]:
        return self.args_with(Label.OUT)

    @property
    def undec_args(self) -> frozenset[int]:
        return self.args_with(Label.UNDEC)


def chain_framework(n: int) -> ArgumentationFramework:
    """Linear framework A_1 <- A_2 <- ... <- A_n (each link defeats its
    predecessor); n = 0 gives the empty framework."""
    if n < 0:
        raise ValueError("chain length must be non-negative")
    return ArgumentationFramework(
        arguments=frozenset(range(1, n + 1)),
        attacks=frozenset((i, i - 1) for i in range(2, n + 1)),
    )


def is_complete_labeling(af: ArgumentationFramework, lab: Labeling) -> bool:
    """True iff `lab` is total over `af` and satisfies the three completeness
    constraints: IN needs all attackers OUT, OUT needs an IN attacker, UNDEC
    needs no IN attacker and not all attackers OUT."""
    labels = lab.as_dict()
    if set(labels) != af.arguments:
        raise ValueError("labeling is not a total map over the framework's arguments")
    amap = af.attacker_map()
    for arg, label in labels.items():
        attackers = amap[arg]
        if label is Label.IN:
            if not all(labels[b] is Label.OUT for b in attackers):
                return False
        elif label is Label.OUT:
            if not any(labels[b] is Label.IN for b in attackers):
                return False
        else:
            if all(labels[b] is Label.OUT for b in attackers):
                return False
            if any(labels[b] is Label.IN for b in attackers):
                return False
    return True


def complete_labelings(af: ArgumentationFramework) -> set[Labeling]:
    """All complete labelings of `af`.

    Enumerates candidate IN-sets as bitmasks (a subset S is the IN-set of a
    complete labeling iff S is conflict-free w.r.t. the arguments S attacks
    and S is exactly the set of arguments all of whose attackers are attacked
    by S); this is O(2^n) rather than O(3^n) over raw labelings.
    """
    n = len(af.arguments)
    if n > MAX_ENUMERATION_ARGS:
        raise SizeLimitError(
            f"framework has {n} arguments, enumeration bound is {MAX_ENUMERATION_ARGS}"
        )
    args = sorted(af.arguments)
    index = {a: i for i, a in enumerate(args)}
    attacker_bits = [0] * n
    target_bits = [0] * n
    for attacker, target in af.attacks:
        attacker_bits[index[target]] |= 1 << index[attacker]
        target_bits[index[attacker]] |= 1 << index[target]

    result: set[Labeling] = set()
    for s in range(1 << n):
        out = 0
        m = s
        while m:
            low = m & -m
            out |= target_bits[low.bit_length() - 1]
            m ^= low
        if s & out:
            continue
        defended = 0
        for i in range(n):
            if attacker_bits[i] & ~out == 0:
                defended |= 1 << i
        if defended != s:
            continue
        assignment = {}
        for i, a in enumerate(args):
            bit = 1 << i
            if s & bit:
                assignment[a] = Label.IN
            elif out & bit:
                assignment[a] = Label.OUT
            else:
                assignment[a] = Label.UNDEC
        result.add(Labeling.from_dict(assignment))
    return result


def grounded_labeling(af: ArgumentationFramework) -> Labeling:
    """Least-committed complete labeling via the standard fixpoint: repeatedly
    label IN every argument whose attackers are all OUT, label OUT every
    argument with an IN attacker; the remainder is UNDEC."""
    amap = af.attacker_map()
    in_set: set[int] = set()
    out_set: set[int] = set()
    changed = True
    while changed:
        changed = False
        for arg in af.arguments:
            if arg in in_set or arg in out_set:
                continue
            attackers = amap[arg]
            if all(b in out_set for b in attackers):
                in_set.add(arg)
                changed = True
            elif any(b in in_set for b in attackers):
                out_set.add(arg)
                changed = True
    assignment = {}
    for arg in af.arguments:
        if arg in in_set:
            assignment[arg] = Label.IN
        elif arg in out_set:
            assignment[arg] = Label.OUT
        else:
            assignment[arg] = Label.UNDEC
    return Labeling.from_dict(assignment)


def framework_union(
    a: ArgumentationFramework, b: ArgumentationFramework
) -> ArgumentationFramework:
    return ArgumentationFramework(a.arguments | b.arguments, a.attacks | b.attacks)


def is_subframework(a: ArgumentationFramework, b: ArgumentationFramework) -> bool:
    return a.arguments <= b.arguments and a.attacks <= b.attacks


@lru_cache(maxsize=8192)
def _grounded_status(af: ArgumentationFramework, arg: int) -> Label:
    return grounded_labeling(af).label_of(arg)


def can_defend(af: ArgumentationFramework, arg: int) -> bool:
    """True iff the proponent of `arg` has a winning strategy, i.e. `arg` is
    IN in the grounded labeling (skeptical acceptance under complete
    semantics coincides with grounded membership)."""
    if arg not in af.arguments:
        raise ArgumentNotFoundError(arg)
    return _grounded_status(af, arg) is Label.IN


def can_deny(af: ArgumentationFramework, arg: int) -> bool:
    """True iff the opponent of `arg` has a winning strategy, i.e. `arg` is
    OUT in the grounded labeling.  Never true together with can_defend."""
    if arg not in af.arguments:
        raise ArgumentNotFoundError(arg)
    return _grounded_status(af, arg) is Label.OUT


def induced_subframework(
    af: ArgumentationFramework, keep: Iterable[int]
) -> ArgumentationFramework:
    """Subframework on `keep` with every attack of `af` between kept arguments."""
    kept = frozenset(keep)
    missing = kept - af.arguments
    if missing:
        raise ArgumentNotFoundError(sorted(missing)[0])
    return ArgumentationFramework(
        kept, frozenset((a, b) for a, b in af.attacks if a in kept and b in kept)
    )


def _induced_subframeworks(af: ArgumentationFramework):
    args = sorted(af.arguments)
    for r in range(len(args) + 1):
        for subset in itertools.combinations(args, r):
            yield induced_subframework(af, subset)


def _satisfies_informedness_conditions(
    x: ArgumentationFramework,
    y: ArgumentationFramework,
    arg: int,
    universe: ArgumentationFramework,
) -> bool:
    """The four graded-informedness conditions, with the universal quantifier
    ranging over induced subframeworks of `universe`."""
    x_in = can_defend(x, arg)
    x_out = can_deny(x, arg)
    y_in = can_defend(y, arg)
    y_out = can_deny(y, arg)

    if x_in and y_out:
        return can_defend(framework_union(x, y), arg)
    if x_out and y_in:
        return can_deny(framework_union(x, y), arg)
    if x_in and y_in:
        return all(
            can_defend(framework_union(x, z), arg)
            for z in _induced_subframeworks(universe)
            if can_defend(framework_union(y, z), arg)
        )
    if x_out and y_out:
        return all(
            can_deny(framework_union(x, z), arg)
            for z in _induced_subframeworks(universe)
            if can_deny(framework_union(y, z), arg)
        )
    return False


def at_least_as_informed(
    x: ArgumentationFramework,
    y: ArgumentationFramework,
    arg: int,
    universe: ArgumentationFramework,
) -> bool:
    """Whether agent X (holding framework `x`) is at least as informed about
    `arg` as agent Y (holding `y`), relative to a finite `universe` of
    conceivable criticism.

    Holds when either (a) y is a subframework of x and both decide `arg`
    (framework inclusion dominates informedness outright), or (b) one of the
    four graded conditions holds: X's position is confirmed when the two
    disagree and their frameworks are combined, or the two agree and every
    induced-subframework criticism Y survives, X survives as well.
    """
    if len(universe.arguments) > MAX_UNIVERSE_ARGS:
        raise SizeLimitError(
            f"universe has {len(universe.arguments)} arguments, "
            f"quantifier bound is {MAX_UNIVERSE_ARGS}"
        )
    if arg not in x.arguments or arg not in y.arguments:
        raise ArgumentNotFoundError(arg)
    if not (is_subframework(x, universe) and is_subframework(y, universe)):
        raise ValueError("both frameworks must be subframeworks of the universe")

    if is_subframework(y, x):
        x_status = _grounded_status(x, arg)
        y_status = _grounded_status(y, arg)
        if x_status is not Label.UNDEC and y_status is not Label.UNDEC:
            return True
    return _satisfies_informedness_conditions(x, y, arg, universe)


_APX_ARG = re.compile(r"^arg\(\s*([A-Za-z0-9_]+)\s*\)\.$")
_APX_ATT = re.compile(r"^att\(\s*([A-Za-z0-9_]+)\s*,\s*([A-Za-z0-9_]+)\s*\)\.$")


def parse_apx(text: str) -> tuple[ArgumentationFramework, dict[int, str]]:
    """Parse apx-style framework text: `arg(<name>).` and `att(<a>,<b>).`
    statements, one per line, `#` starting a comment.  Returns the framework
    plus the id -> original-name mapping (ids assigned in declaration order).
    """
    ids: dict[str, int] = {}
    attacks: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _APX_ARG.match(line)
        if m:
            name = m.group(1)
            if name in ids:
                raise ApxParseError(line_no, f"argument '{name}' declared twice")
            ids[name] = len(ids)
            continue
        m = _APX_ATT.match(line)
        if m:
            a, b = m.group(1), m.group(2)
            for name in (a, b):
                if name not in ids:
                    raise ApxParseError(line_no, f"unknown argument '{name}' in attack")
            attacks.add((ids[a], ids[b]))
            continue
        raise ApxParseError(line_no, f"unparseable statement: {line!r}")
    af = ArgumentationFramework(frozenset(ids.values()), frozenset(attacks))
    return af, {i: name for name, i in ids.items()}
