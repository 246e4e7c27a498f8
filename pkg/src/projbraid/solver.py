"""Decision procedures built on proof-producing elimination of ``b(k+1)``.

The pipeline: a word with empty obstruction image lies in the subgroup
generated by ``b1 .. bk``, and an explicit rewrite into that subgroup can be
extracted.  Between two consecutive occurrences of ``b(k+1)`` whose index
strings agree, the enclosed block has all alias counts of equal parity; such
a block is removed by palindrome-window surgery that shortens the distance
between the occurrences by two per round.  Every step is recorded as a
primitive move, so the whole derivation replays under ``check_trace``.

For k = 3 the residue left after elimination lives in a free product of
three order-two groups, which decides the word problem outright; that final
step leans on an unpublished presentation result and is flagged on every
verdict that uses it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .invariants import (
    ObstructionWord,
    ParityVector,
    f_image,
    format_obstruction,
    occurrence_index,
    parity_vector,
)
from .words import (
    CancelPair,
    GroupParams,
    IllegalMoveError,
    InsertPair,
    Letter,
    Move,
    ReverseWindow,
    Word,
    apply_move,
    concat,
    free_reduce,
    free_reduce_with_trace,
    inverse,
)

H3_FLAG = "H3-freeness (Karpov, unpublished)"


class NotInSubgroupError(ValueError):
    """Elimination was requested for a word with a nonempty obstruction."""

    def __init__(self, obstruction: ObstructionWord):
        self.obstruction = obstruction
        super().__init__(f"word is not in the b(k+1)-free subgroup: {format_obstruction(obstruction)}")


class ParityMismatchError(ValueError):
    """The block between two occurrences fails the equal-parity precondition."""


@dataclass(frozen=True)
class EliminationTrace:
    """A replayable sequence of primitive moves."""

    steps: tuple[Move, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


class Status(Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Decision outcome with its witness.

    Exactly one witness field is populated: a full trace to the empty word
    for TRIVIAL, a nonempty obstruction or residue (or nonzero parity) for
    NONTRIVIAL, and the post-elimination residue for UNKNOWN.  Verdicts that
    rely on an unproven presentation carry that assumption by name.
    """

    status: Status
    trace: EliminationTrace | None = None
    obstruction: ObstructionWord | None = None
    residue: Word | None = None
    parity: ParityVector | None = None
    assumption_flags: frozenset[str] = field(default_factory=frozenset)


def check_trace(input_word: Word, trace: EliminationTrace, output_word: Word) -> bool:
    """Replay ``trace`` from ``input_word``; True iff it lands on ``output_word``.

    Every step is validated; an illegal step raises ``IllegalMoveError`` with
    its index.  A legal trace with the wrong endpoint returns False.
    """
    current = input_word
    for step_index, move in enumerate(trace):
        try:
            current = apply_move(current, move)
        except IllegalMoveError as exc:
            raise IllegalMoveError(f"{exc.args[0]}", step=step_index) from exc
    return current.letters == output_word.letters


def _insert_mirrored(word: Word, at: int, letters: list[Letter], moves: list[Move]) -> Word:
    """Insert reverse(letters) + letters at position ``at`` via pair moves.

    Built inside out:  for letters p1..pr the j-th move inserts the pair
    p_{r-j+1} at offset at+j-1, producing  pr .. p1 p1 .. pr.
    """
    current = word
    for j, letter in enumerate(reversed(letters)):
        move = InsertPair(at + j, letter)
        moves.append(move)
        current = apply_move(current, move)
    return current


def inner_eliminate(block: Word) -> tuple[Word, EliminationTrace]:
    """Remove a matched pair of ``b(k+1)`` letters around ``block``.

    Input: a block with no ``b(k+1)`` whose alias counts all share one
    parity.  Output: a word V over ``b1 .. bk`` equal in the group to
    b(k+1) . block . b(k+1), plus a trace transforming that word into V.

    Each round frees the leftmost repeated alias: with the block starting
    b_{i_1} .. b_{i_{p-1}} b_{i_p} and i_p = i_q the first repeat, two
    palindrome windows are reversed.  The first, P b(k+1) b_{i_1}..b_{i_{p-1}}
    with P the aliases missing from the prefix, drags b(k+1) rightward; the
    second, Q b(k+1) reverse(P) b_{i_p} with Q the prefix aliases other than
    b_{i_q}, drags it back past the repeat.  The distance between the two
    b(k+1) occurrences drops by exactly two per round, which bounds the loop.
    """
    params = block.params
    params.require_square()
    k = params.k
    last = params.b_letter(k + 1)
    if any(letter == last for letter in block.letters):
        raise ValueError("block must not contain the last alias")
    counts = [0] * k
    for letter in block.letters:
        counts[letter.b_index(params) - 1] += 1
    if len({c % 2 for c in counts}) > 1:
        raise ParityMismatchError(f"alias counts {counts} are not of equal parity")

    word = concat(Word(params, (last,)), block, Word(params, (last,)))
    moves: list[Move] = []
    first = 0          # position of the left b(k+1)
    second = len(word) - 1

    while True:
        # keep the enclosed block freely reduced
        reduced = True
        while reduced:
            reduced = False
            letters = word.letters
            for j in range(first + 1, second - 1):
                if letters[j] == letters[j + 1]:
                    move = CancelPair(j, letters[j])
                    moves.append(move)
                    word = apply_move(word, move)
                    second -= 2
                    reduced = True
                    break

        inner = word.letters[first + 1 : second]
        if not inner:
            move = CancelPair(first, last)
            moves.append(move)
            word = apply_move(word, move)
            break

        indices = [letter.b_index(params) for letter in inner]
        repeat = next((p for p in range(len(indices)) if indices[p] in indices[:p]), None)

        if repeat is None:
            # the block is a once-each arrangement of b1..bk: one window
            move = ReverseWindow(first)
            moves.append(move)
            word = apply_move(word, move)
            move = CancelPair(first + k, last)
            moves.append(move)
            word = apply_move(word, move)
            break

        p = repeat + 1            # 1-based position of the first repeated alias
        prefix = indices[: p - 1]
        i_p = indices[p - 1]
        missing = [j for j in range(1, k + 1) if j not in prefix]
        p_letters = [params.b_letter(j) for j in missing]
        q_letters = [params.b_letter(j) for j in sorted(set(prefix) - {i_p})]
        r = len(p_letters)

        distance_before = second - first

        # window 1: P b(k+1) b_{i_1} .. b_{i_{p-1}}
        word = _insert_mirrored(word, first, p_letters, moves)
        move = ReverseWindow(first + r)
        moves.append(move)
        word = apply_move(word, move)
        first = first + r + (p - 1)
        second = second + 2 * r

        # window 2: Q b(k+1) reverse(P) b_{i_p}
        word = _insert_mirrored(word, first, q_letters, moves)
        move = ReverseWindow(first + len(q_letters))
        moves.append(move)
        word = apply_move(word, move)
        first = first + len(q_letters) + 1 + r
        second = second + 2 * len(q_letters)

        assert second - first == distance_before - 2, "window surgery must shorten the gap by 2"

    return word, EliminationTrace(tuple(moves))


def eliminate_last(word: Word, rng: random.Random | None = None) -> tuple[Word, EliminationTrace]:
    """Rewrite a word with empty obstruction image into one avoiding b(k+1).

    Repeatedly picks a pair of consecutive ``b(k+1)`` occurrences with equal
    index strings (one exists whenever the unreduced obstruction word reduces
    to the identity) and removes it with ``inner_eliminate``.  When ``rng``
    is given, the pair is chosen at random among the candidates; the result
    is equal in the group either way.
    """
    params = word.params
    params.require_square()
    obstruction = f_image(word)
    if obstruction:
        raise NotInSubgroupError(obstruction)
    k = params.k
    last = params.b_letter(k + 1)
    moves: list[Move] = []
    current = word

    while True:
        positions = [i for i, letter in enumerate(current.letters) if letter == last]
        if not positions:
            break
        indices = [occurrence_index(current, i) for i in positions]
        candidates = [j for j in range(len(positions) - 1) if indices[j] == indices[j + 1]]
        assert candidates, "an adjacent equal-index pair must exist when the image is empty"
        choice = candidates[0] if rng is None else rng.choice(candidates)
        left, right = positions[choice], positions[choice + 1]
        block = Word(params, current.letters[left + 1 : right])
        replacement, trace = inner_eliminate(block)
        for move in trace:
            moves.append(_shift_move(move, left))
        current = Word(
            params,
            current.letters[:left] + replacement.letters + current.letters[right + 1 :],
        )
    return current, EliminationTrace(tuple(moves))


def _shift_move(move: Move, offset: int) -> Move:
    if isinstance(move, CancelPair):
        return CancelPair(move.pos + offset, move.letter)
    if isinstance(move, InsertPair):
        return InsertPair(move.pos + offset, move.letter)
    if isinstance(move, ReverseWindow):
        return ReverseWindow(move.pos + offset)
    return move


@dataclass(frozen=True)
class SubgroupMembership:
    """Outcome of the membership test for the b(k+1)-free subgroup."""

    member: bool
    rewritten: Word | None = None
    trace: EliminationTrace | None = None
    obstruction: ObstructionWord | None = None


def is_in_H(word: Word, rng: random.Random | None = None) -> SubgroupMembership:
    """Membership in the subgroup of words avoiding the last alias."""
    obstruction = f_image(word)
    if obstruction:
        return SubgroupMembership(False, obstruction=obstruction)
    rewritten, trace = eliminate_last(word, rng=rng)
    return SubgroupMembership(True, rewritten=rewritten, trace=trace)


def solve_k3(word: Word) -> Verdict:
    """Decide the word problem for k = 3, n = 4.

    Nonempty obstruction image: NONTRIVIAL with the image as witness.
    Otherwise the word is rewritten over ``b1 .. b3`` and freely reduced;
    an empty residue is TRIVIAL with a full trace, a nonempty one is
    NONTRIVIAL under the flagged presentation assumption for the subgroup.
    """
    if word.params != GroupParams(4, 3):
        raise ValueError("solve_k3 requires n=4, k=3")
    obstruction = f_image(word)
    if obstruction:
        return Verdict(Status.NONTRIVIAL, obstruction=obstruction)
    eliminated, trace = eliminate_last(word)
    residue, cancels = free_reduce_with_trace(eliminated)
    full_trace = EliminationTrace(trace.steps + tuple(cancels))
    if not residue.letters:
        return Verdict(Status.TRIVIAL, trace=full_trace)
    return Verdict(
        Status.NONTRIVIAL,
        residue=residue,
        assumption_flags=frozenset({H3_FLAG}),
    )


def equal_k3(w1: Word, w2: Word) -> Verdict:
    """Equality via triviality of the freely reduced difference word."""
    return solve_k3(free_reduce(concat(w1, inverse(w2))))


def solve_semi(word: Word) -> Verdict:
    """Semi-decision for any k >= 3 with n = k + 1, using no unproven input.

    NONTRIVIAL on a nonempty obstruction image or a nonzero parity vector;
    TRIVIAL when elimination plus free reduction empties the word; UNKNOWN
    otherwise, carrying the residue (no presentation of the subgroup is
    assumed for k >= 4).
    """
    word.params.require_square()
    obstruction = f_image(word)
    if obstruction:
        return Verdict(Status.NONTRIVIAL, obstruction=obstruction)
    parity = parity_vector(word)
    if any(parity):
        return Verdict(Status.NONTRIVIAL, parity=parity)
    eliminated, trace = eliminate_last(word)
    residue, cancels = free_reduce_with_trace(eliminated)
    if not residue.letters:
        return Verdict(Status.TRIVIAL, trace=EliminationTrace(trace.steps + tuple(cancels)))
    return Verdict(Status.UNKNOWN, residue=residue)
