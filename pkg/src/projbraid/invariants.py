"""Conjugation-stable invariants of words in the square case n = k + 1.

Three invariants live here.  All of them are unchanged when a defining
relation is applied anywhere in a word, which is what makes them usable as
obstructions.

* ``f_image`` maps a word to the free product of 2^(k-1) order-two groups.
  Each occurrence of the last alias ``b(k+1)`` contributes one generator of
  the free product, selected by the pattern of letter counts accumulated
  before it; a nonempty image certifies that the word avoids the subgroup
  generated by ``b1 .. bk``.

* ``parity_vector`` counts each generator modulo 2.

* ``sign_action`` pushes a word through its permutation action on the
  2^(k-1) sign strings, the base points of the geometric realization.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import GroupParams, Letter, Word

IndexString = tuple[int, ...]     # k-1 bits naming a free-product generator
ObstructionWord = tuple[IndexString, ...]
ParityVector = tuple[int, ...]    # one bit per generator, b-alias order
SignString = tuple[int, ...]      # k-1 entries from {+1, -1}


def occurrence_index(word: Word, pos: int) -> IndexString:
    """Index string of the ``b(k+1)`` occurrence at position ``pos``.

    The raw string has one bit per alias ``b1 .. bk``: the count of that
    alias strictly before ``pos``, mod 2 (other ``b(k+1)`` occurrences do not
    count).  Opposite strings name the same free-product generator, so the
    string is normalized by flipping all bits when the last bit is 1, after
    which the last bit is redundant and dropped: k-1 bits remain.
    """
    params = word.params
    params.require_square()
    k = params.k
    if not 0 <= pos < len(word):
        raise ValueError(f"position {pos} out of bounds")
    if word.letters[pos] != params.b_letter(k + 1):
        raise ValueError(f"letter at {pos} is {word.letters[pos]}, not the last alias")
    counts = [0] * k
    for letter in word.letters[:pos]:
        j = letter.b_index(params)
        if j <= k:
            counts[j - 1] ^= 1
    if counts[k - 1] == 1:
        counts = [1 - c for c in counts]
    return tuple(counts[: k - 1])


def free_product_reduce(obstruction: ObstructionWord) -> ObstructionWord:
    """Reduce in the free product: adjacent equal generators cancel."""
    stack: list[IndexString] = []
    for gen in obstruction:
        if stack and stack[-1] == gen:
            stack.pop()
        else:
            stack.append(gen)
    return tuple(stack)


def f_image(word: Word) -> ObstructionWord:
    """Image of the word in the free product, reduced.

    Applying any defining relation to the word leaves this value unchanged,
    and it is empty on every word of the subgroup avoiding ``b(k+1)``.
    """
    params = word.params
    params.require_square()
    k = params.k
    last = params.b_letter(k + 1)
    counts = [0] * k
    raw: list[IndexString] = []
    for letter in word.letters:
        if letter == last:
            bits = list(counts)
            if bits[k - 1] == 1:
                bits = [1 - c for c in bits]
            raw.append(tuple(bits[: k - 1]))
        else:
            counts[letter.b_index(params) - 1] ^= 1
    return free_product_reduce(tuple(raw))


def parity_vector(word: Word) -> ParityVector:
    """Letter counts mod 2, ordered by alias index (length k+1 when n = k+1)."""
    params = word.params
    table = params.all_letters()
    index = {letter: i for i, letter in enumerate(table)}
    counts = [0] * len(table)
    for letter in word.letters:
        counts[index[letter]] ^= 1
    return tuple(counts)


def sign_action(word: Word, signs: SignString) -> SignString:
    """Act on a sign string of length k-1, letter by letter, left to right.

    A letter whose subset omits index c flips the c-th sign when c <= k - 1
    and flips every sign when c is k or k + 1.  The letters act by commuting
    involutions, so the image depends only on the parity data of the word.
    """
    params = word.params
    params.require_square()
    k = params.k
    if len(signs) != k - 1 or any(s not in (-1, 1) for s in signs):
        raise ValueError(f"sign string must have k-1 = {k - 1} entries from +-1")
    current = list(signs)
    for letter in word.letters:
        c = letter.omitted_index(params)
        if c <= k - 1:
            current[c - 1] = -current[c - 1]
        else:
            current = [-s for s in current]
    return tuple(current)


def reference_signs(params: GroupParams) -> SignString:
    params.require_square()
    return (1,) * (params.k - 1)


def in_tilde_subgroup(word: Word) -> bool:
    """Whether the word fixes the all-plus sign string (finite-index test)."""
    ref = reference_signs(word.params)
    return sign_action(word, ref) == ref


def sign_orbit(params: GroupParams) -> list[SignString]:
    """Orbit of the all-plus string under all generators; size 2^(k-1)."""
    params.require_square()
    letters = params.all_letters()
    seen: set[SignString] = set()
    frontier = [reference_signs(params)]
    seen.add(frontier[0])
    order: list[SignString] = [frontier[0]]
    while frontier:
        nxt: list[SignString] = []
        for s in frontier:
            for letter in letters:
                image = sign_action(Word(params, (letter,)), s)
                if image not in seen:
                    seen.add(image)
                    order.append(image)
                    nxt.append(image)
        frontier = nxt
    return order


def format_sign_string(signs: SignString) -> str:
    return "(" + ",".join("+" if s > 0 else "-" for s in signs) + ")"


def parse_sign_string(text: str, params: GroupParams) -> SignString:
    """Accept ``(+,-)`` or the compact ``+-`` form."""
    params.require_square()
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1].replace(",", "")
    signs: list[int] = []
    for ch in body:
        if ch == "+":
            signs.append(1)
        elif ch == "-":
            signs.append(-1)
        else:
            raise ValueError(f"unexpected character {ch!r} in sign string")
    if len(signs) != params.k - 1:
        raise ValueError(f"sign string must have k-1 = {params.k - 1} entries")
    return tuple(signs)


def format_obstruction(obstruction: ObstructionWord) -> str:
    """Render free-product generators as ``c(bits)``; identity prints as 1."""
    if not obstruction:
        return "1"
    return " ".join("c(" + ",".join(str(b) for b in gen) + ")" for gen in obstruction)


@dataclass(frozen=True)
class MoveInvariants:
    """Snapshot of all three invariants, for move-stability checks."""

    obstruction: ObstructionWord
    parity: ParityVector
    action: SignString

    @classmethod
    def of(cls, word: Word, signs: SignString) -> "MoveInvariants":
        return cls(f_image(word), parity_vector(word), sign_action(word, signs))
