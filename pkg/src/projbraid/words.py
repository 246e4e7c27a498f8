"""Words over subset-indexed involutive generators, and the moves that rewrite them.

A group in this family is parametrized by ``(n, k)`` with ``n > k >= 2``.  Its
generators are indexed by the k-element subsets of ``{1, ..., n}`` and every
generator squares to the identity.  Two generators commute when their index
subsets share fewer than ``k - 1`` elements, and any ``k + 1`` generators whose
subsets are exactly the k-subsets of a common (k+1)-set satisfy a palindrome
relation: the product read left to right equals the product read right to left.

For the square case ``n = k + 1`` (the only case the rest of the package
decides anything about) the generators carry short aliases ``b1 .. b(k+1)``,
assigned in lexicographic order of the subsets: ``b1 = a{1..k}`` up to
``b(k+1) = a{2..k+1}``.  In that case the commutation relation is void, since
any two distinct k-subsets of a (k+1)-set share exactly k - 1 elements.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations


class WordSyntaxError(ValueError):
    """A word string failed to parse; carries the offending token position."""

    def __init__(self, message: str, token_index: int | None = None, token: str | None = None):
        self.token_index = token_index
        self.token = token
        if token_index is not None:
            message = f"token {token_index + 1} ({token!r}): {message}"
        super().__init__(message)


class RelationError(ValueError):
    """A relation was applied at a position where it is not legal."""


@dataclass(frozen=True, order=True)
class GroupParams:
    """Group parameters: generators are the k-subsets of {1, ..., n}."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.n <= self.k:
            raise ValueError(f"n must exceed k, got n={self.n}, k={self.k}")

    @property
    def is_square(self) -> bool:
        """True when n = k + 1, the case with b-aliases and the sign action."""
        return self.n == self.k + 1

    def require_square(self) -> None:
        if not self.is_square:
            raise ValueError(f"operation requires n = k + 1, got n={self.n}, k={self.k}")

    def all_letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(s) for s in combinations(range(1, self.n + 1), self.k))

    def b_letter(self, j: int) -> Letter:
        """The j-th aliased generator (1-based), defined only when n = k + 1."""
        self.require_square()
        if not 1 <= j <= self.k + 1:
            raise ValueError(f"b-index out of range: {j}")
        omitted = self.k + 2 - j
        return Letter(tuple(i for i in range(1, self.n + 1) if i != omitted))


@dataclass(frozen=True, order=True)
class Letter:
    """A single generator, identified by its sorted index subset."""

    subset: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.subset)) != len(self.subset):
            raise ValueError(f"subset has repeated indices: {self.subset}")
        if tuple(sorted(self.subset)) != self.subset:
            raise ValueError(f"subset must be sorted: {self.subset}")
        if self.subset and self.subset[0] < 1:
            raise ValueError(f"indices are 1-based: {self.subset}")

    def omitted_index(self, params: GroupParams) -> int:
        """The unique element of {1, ..., n} missing from the subset (n = k+1 only)."""
        params.require_square()
        (c,) = set(range(1, params.n + 1)) - set(self.subset)
        return c

    def b_index(self, params: GroupParams) -> int:
        """Position of this letter in the b-alias order (n = k + 1 only)."""
        return params.k + 2 - self.omitted_index(params)

    def __str__(self) -> str:
        return "a{" + ",".join(str(i) for i in self.subset) + "}"


@dataclass(frozen=True)
class Word:
    """An immutable word in the generators of the group given by ``params``."""

    params: GroupParams
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        for letter in self.letters:
            if len(letter.subset) != self.params.k:
                raise ValueError(f"letter {letter} has wrong cardinality for k={self.params.k}")
            if letter.subset[-1] > self.params.n:
                raise ValueError(f"letter {letter} out of range for n={self.params.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


_B_TOKEN = re.compile(r"b(\d+)\Z")
_A_TOKEN = re.compile(r"a\{(\d+(?:,\d+)*)\}\Z")


def parse_word(text: str, params: GroupParams) -> Word:
    """Parse a word from whitespace-separated tokens.

    Tokens are either ``bJ`` (only when n = k + 1) or ``a{i1,...,ik}`` with no
    spaces inside the braces.  The empty string denotes the empty word.
    """
    letters: list[Letter] = []
    for index, token in enumerate(text.split()):
        m = _B_TOKEN.match(token)
        if m:
            if not params.is_square:
                raise WordSyntaxError("b-aliases require n = k + 1", index, token)
            j = int(m.group(1))
            if not 1 <= j <= params.k + 1:
                raise WordSyntaxError(f"b-index must lie in 1..{params.k + 1}", index, token)
            letters.append(params.b_letter(j))
            continue
        m = _A_TOKEN.match(token)
        if m:
            indices = tuple(int(part) for part in m.group(1).split(","))
            if len(set(indices)) != len(indices):
                raise WordSyntaxError("repeated index in subset", index, token)
            if len(indices) != params.k:
                raise WordSyntaxError(f"subset must have exactly k={params.k} indices", index, token)
            if any(i < 1 or i > params.n for i in indices):
                raise WordSyntaxError(f"index out of range 1..{params.n}", index, token)
            letters.append(Letter(tuple(sorted(indices))))
            continue
        raise WordSyntaxError("expected 'bJ' or 'a{i1,...,ik}'", index, token)
    return Word(params, tuple(letters))


def format_word(word: Word, style: str = "subset") -> str:
    """Render a word as tokens; ``style`` is 'subset' or 'b-index'."""
    if style == "subset":
        return " ".join(str(letter) for letter in word.letters)
    if style == "b-index":
        return " ".join(f"b{letter.b_index(word.params)}" for letter in word.letters)
    raise ValueError(f"unknown style: {style!r}")


def free_reduce(word: Word) -> Word:
    """Cancel adjacent equal letters until none remain.

    The result is independent of cancellation order, so a single left-to-right
    stack pass suffices.
    """
    stack: list[Letter] = []
    for letter in word.letters:
        if stack and stack[-1] == letter:
            stack.pop()
        else:
            stack.append(letter)
    return Word(word.params, tuple(stack))


def inverse(word: Word) -> Word:
    """The inverse word: letters reversed (every generator is an involution)."""
    return Word(word.params, tuple(reversed(word.letters)))


def concat(*words: Word) -> Word:
    if not words:
        raise ValueError("concat needs at least one word")
    params = words[0].params
    letters: list[Letter] = []
    for w in words:
        if w.params != params:
            raise ValueError("cannot concatenate words over different groups")
        letters.extend(w.letters)
    return Word(params, tuple(letters))


# --- relation applications ------------------------------------------------

def _window_is_palindromic(letters: tuple[Letter, ...], k: int) -> bool:
    """A window of k+1 distinct letters qualifies when its subsets are exactly
    the k-subsets of a single (k+1)-set, i.e. their union has k+1 elements."""
    if len(set(letters)) != k + 1:
        return False
    union: set[int] = set()
    for letter in letters:
        union.update(letter.subset)
    return len(union) == k + 1


def apply_relation3_at(word: Word, start: int) -> Word:
    """Reverse the palindrome window of k+1 letters beginning at ``start``."""
    k = word.params.k
    if not 0 <= start <= len(word) - (k + 1):
        raise RelationError(f"window [{start}, {start + k + 1}) out of bounds for length {len(word)}")
    window = word.letters[start : start + k + 1]
    if not _window_is_palindromic(window, k):
        raise RelationError(f"letters at [{start}, {start + k + 1}) do not cover a common (k+1)-set once each")
    return Word(word.params, word.letters[:start] + tuple(reversed(window)) + word.letters[start + k + 1 :])


def apply_relation2_at(word: Word, i: int) -> Word:
    """Swap the far-commuting letters at positions i and i+1.

    Legal only when the two subsets share fewer than k - 1 indices; for
    n = k + 1 there is no such pair and the move is never legal.
    """
    if not 0 <= i <= len(word) - 2:
        raise RelationError(f"position {i} out of bounds for length {len(word)}")
    a, b = word.letters[i], word.letters[i + 1]
    if len(set(a.subset) & set(b.subset)) >= word.params.k - 1:
        raise RelationError(f"{a} and {b} do not far-commute")
    return Word(word.params, word.letters[:i] + (b, a) + word.letters[i + 2 :])


# --- primitive moves and traces --------------------------------------------

@dataclass(frozen=True)
class CancelPair:
    """Delete the equal adjacent letters at positions pos, pos+1."""

    pos: int
    letter: Letter


@dataclass(frozen=True)
class InsertPair:
    """Insert two copies of ``letter`` so they occupy positions pos, pos+1."""

    pos: int
    letter: Letter


@dataclass(frozen=True)
class ReverseWindow:
    """Reverse the palindrome window of k+1 letters starting at ``pos``."""

    pos: int


@dataclass(frozen=True)
class SwapAdjacent:
    """Swap the far-commuting letters at positions pos, pos+1."""

    pos: int


Move = CancelPair | InsertPair | ReverseWindow | SwapAdjacent


class IllegalMoveError(ValueError):
    """Raised when a recorded move cannot be replayed on the current word."""

    def __init__(self, message: str, step: int | None = None):
        self.step = step
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)


def apply_move(word: Word, move: Move) -> Word:
    """Apply a single primitive move, validating its legality."""
    letters = word.letters
    if isinstance(move, CancelPair):
        if not 0 <= move.pos <= len(letters) - 2:
            raise IllegalMoveError(f"cancel position {move.pos} out of bounds")
        if letters[move.pos] != letters[move.pos + 1]:
            raise IllegalMoveError(f"letters at {move.pos}, {move.pos + 1} differ")
        if letters[move.pos] != move.letter:
            raise IllegalMoveError(f"recorded letter {move.letter} does not match {letters[move.pos]}")
        return Word(word.params, letters[: move.pos] + letters[move.pos + 2 :])
    if isinstance(move, InsertPair):
        if not 0 <= move.pos <= len(letters):
            raise IllegalMoveError(f"insert position {move.pos} out of bounds")
        return Word(word.params, letters[: move.pos] + (move.letter, move.letter) + letters[move.pos :])
    if isinstance(move, ReverseWindow):
        try:
            return apply_relation3_at(word, move.pos)
        except RelationError as exc:
            raise IllegalMoveError(str(exc)) from exc
    if isinstance(move, SwapAdjacent):
        try:
            return apply_relation2_at(word, move.pos)
        except RelationError as exc:
            raise IllegalMoveError(str(exc)) from exc
    raise IllegalMoveError(f"unknown move {move!r}")


def invert_move(move: Move) -> Move:
    if isinstance(move, CancelPair):
        return InsertPair(move.pos, move.letter)
    if isinstance(move, InsertPair):
        return CancelPair(move.pos, move.letter)
    return move  # window reversal and far-commutation swaps are involutions


def free_reduce_with_trace(word: Word) -> tuple[Word, list[Move]]:
    """Left-to-right reduction, recording each cancellation as a move."""
    stack: list[Letter] = []
    moves: list[Move] = []
    for letter in word.letters:
        if stack and stack[-1] == letter:
            moves.append(CancelPair(len(stack) - 1, letter))
            stack.pop()
        else:
            stack.append(letter)
    return Word(word.params, tuple(stack)), moves


# --- bounded equality oracle ------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    """Outcome of the bounded search: Equal with a trace, or Unknown.

    ``equal=False`` never means "not equal"; it only reports that the search
    bounds were exhausted first.
    """

    equal: bool
    trace: tuple[Move, ...] | None
    states: int


def _reduce_ids(ids: tuple[int, ...]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in ids:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class _Searcher:
    """Bidirectional search over freely reduced words.

    States are freely reduced letter-id tuples.  Edges apply one palindrome
    reversal, optionally preceded by one pair insertion overlapping the window
    (an insertion elsewhere cancels straight back on a reduced word), or one
    far-commutation swap; trailing cancellations are folded into the edge.
    Each edge expands to a short list of primitive moves during trace replay,
    so every Equal answer remains certified move by move.
    """

    def __init__(self, params: GroupParams, max_len: int, max_states: int):
        self.params = params
        self.k = params.k
        self.max_len = max_len
        self.max_states = max_states
        self.table = params.all_letters()
        self.ids = {letter: i for i, letter in enumerate(self.table)}
        self.square = params.is_square
        if not self.square:
            n_ids = len(self.table)
            self.commutes = [
                [
                    len(set(self.table[i].subset) & set(self.table[j].subset)) < self.k - 1
                    for j in range(n_ids)
                ]
                for i in range(n_ids)
            ]
            self.window_sets = {
                frozenset(self.ids[Letter(s)] for s in combinations(u, self.k))
                for u in combinations(range(1, params.n + 1), self.k + 1)
            }

    def encode(self, word: Word) -> tuple[int, ...]:
        return tuple(self.ids[letter] for letter in word.letters)

    def _window_ok(self, window: tuple[int, ...]) -> bool:
        if self.square:
            return len(set(window)) == self.k + 1
        return frozenset(window) in self.window_sets and len(set(window)) == self.k + 1

    def successors(self, state: tuple[int, ...]):
        """Yield (next_state, edge) pairs; an edge is (insert_pos, insert_id, window_pos)
        with insert_pos = -1 when no insertion happens, or ('swap', pos)."""
        k = self.k
        length = len(state)
        # plain window reversal
        for pos in range(length - k):
            window = state[pos : pos + k + 1]
            if self._window_ok(window):
                nxt = _reduce_ids(state[:pos] + tuple(reversed(window)) + state[pos + k + 1 :])
                yield nxt, (-1, -1, pos)
        # one pair insertion feeding a window that uses exactly one inserted copy
        if length + 2 <= self.max_len and length >= k:
            for ins in range(length + 1):
                variants = [(ins + 1, state[ins : ins + k])]
                if ins - k >= 0:
                    variants.append((ins - k, state[ins - k : ins]))
                for wpos, present in variants:
                    if len(present) != k or len(set(present)) != k:
                        continue
                    candidates = [x for x in range(len(self.table)) if x not in present]
                    for ins_id in candidates:
                        grown = state[:ins] + (ins_id, ins_id) + state[ins:]
                        window = grown[wpos : wpos + k + 1]
                        if len(window) == k + 1 and self._window_ok(window):
                            nxt = _reduce_ids(
                                grown[:wpos] + tuple(reversed(window)) + grown[wpos + k + 1 :]
                            )
                            yield nxt, (ins, ins_id, wpos)
        # far commutation (void when n = k + 1)
        if not self.square:
            for pos in range(length - 1):
                if self.commutes[state[pos]][state[pos + 1]]:
                    yield state[:pos] + (state[pos + 1], state[pos]) + state[pos + 2 :], ("swap", pos)

    def edge_moves(self, state: tuple[int, ...], edge) -> tuple[list[Move], tuple[int, ...]]:
        """Expand one search edge into primitive moves starting at ``state``."""
        moves: list[Move] = []
        if edge[0] == "swap":
            moves.append(SwapAdjacent(edge[1]))
            pos = edge[1]
            current = state[:pos] + (state[pos + 1], state[pos]) + state[pos + 2 :]
            return moves, current
        ins, ins_id, wpos = edge
        current = state
        if ins >= 0:
            moves.append(InsertPair(ins, self.table[ins_id]))
            current = current[:ins] + (ins_id, ins_id) + current[ins:]
        moves.append(ReverseWindow(wpos))
        window = current[wpos : wpos + self.k + 1]
        current = current[:wpos] + tuple(reversed(window)) + current[wpos + self.k + 1 :]
        stack: list[int] = []
        for x in current:
            if stack and stack[-1] == x:
                moves.append(CancelPair(len(stack) - 1, self.table[x]))
                stack.pop()
            else:
                stack.append(x)
        return moves, tuple(stack)


def _rebuild_moves(searcher: _Searcher, parents, state) -> list[Move]:
    """Reconstruct the primitive-move path from a search root to ``state``."""
    chain = []
    cur = state
    while True:
        parent, edge = parents[cur]
        if parent is None:
            break
        chain.append((parent, edge))
        cur = parent
    chain.reverse()
    moves: list[Move] = []
    for parent, edge in chain:
        edge_moves, landed = searcher.edge_moves(parent, edge)
        moves.extend(edge_moves)
    return moves


def bfs_equal_oracle(w1: Word, w2: Word, max_len: int = 12, max_states: int = 100_000) -> OracleResult:
    """Bounded bidirectional search for a rewrite path from ``w1`` to ``w2``.

    Returns Equal together with a primitive-move trace replayable by
    ``apply_move``, or Unknown when the state or length bound is exhausted.
    """
    if w1.params != w2.params:
        raise ValueError("words live in different groups")
    if w1.letters == w2.letters:
        return OracleResult(True, (), 0)

    searcher = _Searcher(w1.params, max_len, max_states)
    start_raw, end_raw = searcher.encode(w1), searcher.encode(w2)
    reduce1, cancels1 = free_reduce_with_trace(w1)
    reduce2, cancels2 = free_reduce_with_trace(w2)
    start, end = searcher.encode(reduce1), searcher.encode(reduce2)

    def finish(fwd_moves: list[Move], bwd_moves: list[Move], states: int) -> OracleResult:
        trace = list(cancels1) + fwd_moves
        trace += [invert_move(m) for m in reversed(bwd_moves)]
        trace += [invert_move(m) for m in reversed(cancels2)]
        return OracleResult(True, tuple(trace), states)

    if start == end:
        return finish([], [], 0)

    fwd_parents = {start: (None, None)}
    bwd_parents = {end: (None, None)}
    fwd_frontier: deque = deque([start])
    bwd_frontier: deque = deque([end])
    states = 0

    while fwd_frontier or bwd_frontier:
        # an empty side has fully explored its component; keep growing the
        # other side toward the explored set
        if not bwd_frontier or (fwd_frontier and len(fwd_frontier) <= len(bwd_frontier)):
            frontier, parents, other = fwd_frontier, fwd_parents, bwd_parents
            forward = True
        else:
            frontier, parents, other = bwd_frontier, bwd_parents, fwd_parents
            forward = False
        next_frontier: deque = deque()
        while frontier:
            state = frontier.popleft()
            for nxt, edge in searcher.successors(state):
                if nxt in parents:
                    continue
                parents[nxt] = (state, edge)
                states += 1
                if nxt in other:
                    fwd_moves = _rebuild_moves(searcher, fwd_parents, nxt)
                    bwd_moves = _rebuild_moves(searcher, bwd_parents, nxt)
                    return finish(fwd_moves, bwd_moves, states)
                next_frontier.append(nxt)
                if states >= max_states:
                    return OracleResult(False, None, states)
        if forward:
            fwd_frontier = next_frontier
        else:
            bwd_frontier = next_frontier

    return OracleResult(False, None, states)
