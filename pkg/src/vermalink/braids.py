"""Braid words, Markov moves and the ladder words that close a braid."""
import random
import re
from dataclasses import dataclass


class BraidParseError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise BraidParseError("strand count must be at least 1")
        for g in self.letters:
            if g == 0 or abs(g) > self.n - 1:
                raise BraidParseError(f"generator {g} out of range for n={self.n}")

    @property
    def writhe(self):
        return sum(1 if g > 0 else -1 for g in self.letters)

    @property
    def positives(self):
        return sum(1 for g in self.letters if g > 0)

    @property
    def negatives(self):
        return sum(1 for g in self.letters if g < 0)

    def mirror(self):
        return BraidWord(self.n, tuple(-g for g in self.letters))

    def components(self):
        perm = list(range(self.n))
        for g in self.letters:
            i = abs(g) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        seen, count = set(), 0
        for s in range(self.n):
            if s in seen:
                continue
            count += 1
            k = s
            while k not in seen:
                seen.add(k)
                k = perm[k]
        return count

    def to_text(self):
        toks = [f"n={self.n}"]
        for g in self.letters:
            toks.append(f"s{g}" if g > 0 else f"s{-g}^-1")
        return " ".join(toks)

    def to_json(self):
        return {"n": self.n, "letters": list(self.letters), "writhe": self.writhe}

    def __str__(self):
        return self.to_text()


_TOKEN = re.compile(r"^s(\d+)(\^-1|\^\(-1\)|\^1)?$")


def parse_braid(text):
    """Parse 'n=<k>' followed by tokens s<i>, s<i>^-1 or signed integers."""
    toks = text.replace(",", " ").split()
    n = None
    letters = []
    for tok in toks:
        if tok.startswith("n="):
            if n is not None:
                raise BraidParseError("duplicate strand header")
            try:
                n = int(tok[2:])
            except ValueError:
                raise BraidParseError(f"bad strand header {tok!r}") from None
            continue
        m = _TOKEN.match(tok)
        if m:
            i = int(m.group(1))
            letters.append(-i if m.group(2) in ("^-1", "^(-1)") else i)
            continue
        try:
            i = int(tok)
        except ValueError:
            raise BraidParseError(f"unknown token {tok!r}") from None
        if i == 0:
            raise BraidParseError("generator 0 does not exist")
        letters.append(i)
    if n is None:
        if not letters:
            raise BraidParseError("missing strand header n=<k>")
        n = max(abs(g) for g in letters) + 1
    return BraidWord(n, tuple(letters))


def free_reduce(letters):
    out = []
    for g in letters:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


# Closure ladders.  Labels are simple roots i, acting on positions (i, i+1)
# of a weight indexed by -n+1..n (full) or -n+2..n (reduced).

def full_pattern(n):
    """F-labels in application order: 0 1 -1 2 -2 ... (n-1) (1-n) | ... | 0."""
    word = []
    for k in range(n, 0, -1):
        word.append(0)
        for j in range(1, k):
            word.extend([j, -j])
    return word


@dataclass(frozen=True)
class ClosureLadder:
    variant: str
    n: int
    bottom_word: tuple
    top_word: tuple
    positions: tuple
    start: tuple
    braid_weight: tuple


def closure_ladders(n, variant="full"):
    if variant == "full":
        if n < 1:
            raise ValueError("full closure needs n >= 1")
        bottom = tuple(full_pattern(n))
        positions = tuple(range(-n + 1, n + 1))
        start = tuple([(1, 0)] * n + [(0, 0)] * n)
        target = tuple([(1, -1)] * n + [(0, 1)] * n)
    elif variant == "reduced":
        if n < 2:
            raise ValueError("reduced closure needs n >= 2")
        bottom = tuple(list(range(1, n)) + full_pattern(n - 1))
        positions = tuple(range(-n + 2, n + 1))
        start = tuple([(1, 0)] * (n - 1) + [(0, 1)] + [(0, 0)] * (n - 1))
        target = tuple([(1, -1)] * (n - 1) + [(0, 1)] * n)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    top = tuple(reversed(bottom))
    return ClosureLadder(variant, n, bottom, top, positions, start, target)


def apply_root(weight, positions, i, sign=-1):
    """Add sign * alpha_i to a weight given as a tuple of (shifted, offset)."""
    k = positions.index(i)
    w = list(weight)
    s, o = w[k]
    w[k] = (s, o + sign)
    s, o = w[k + 1]
    w[k + 1] = (s, o - sign)
    return tuple(w)


def in_lambda_beta(weight):
    return all((o <= 0) if s else (o >= 0) for s, o in weight)


def check_ladder(ladder):
    """Weight bookkeeping: the bottom word maps start to braid weight inside
    Lambda^beta, and the top word maps it back."""
    w = ladder.start
    for i in ladder.bottom_word:
        w = apply_root(w, ladder.positions, i, -1)
        if not in_lambda_beta(w):
            return False
    if w != ladder.braid_weight:
        return False
    for i in ladder.top_word:
        w = apply_root(w, ladder.positions, i, +1)
        if not in_lambda_beta(w):
            return False
    return w == ladder.start


# Markov moves

@dataclass(frozen=True)
class MarkovMove:
    kind: str  # conjugation | stabilize_positive | stabilize_negative | destabilize
    generator: int = 0
    position: int = -1

    def inverse_for(self, braid):
        """The move undoing self when applied to the result on ``braid``."""
        if self.kind == "conjugation":
            return MarkovMove("conjugation", -self.generator)
        if self.kind in ("stabilize_positive", "stabilize_negative"):
            return MarkovMove("destabilize")
        if self.kind == "destabilize":
            top = braid.n - 1
            for pos, g in enumerate(braid.letters):
                if abs(g) == top:
                    kind = "stabilize_positive" if g > 0 else "stabilize_negative"
                    return MarkovMove(kind, position=pos)
        raise ValueError("no inverse")


class MarkovError(ValueError):
    pass


def markov_apply(b, move):
    if move.kind == "conjugation":
        g = move.generator
        if g == 0 or abs(g) > b.n - 1:
            raise MarkovError("conjugating generator out of range")
        return BraidWord(b.n, free_reduce((g,) + b.letters + (-g,)))
    if move.kind in ("stabilize_positive", "stabilize_negative"):
        g = b.n if move.kind == "stabilize_positive" else -b.n
        letters = list(b.letters)
        pos = len(letters) if move.position < 0 else move.position
        letters.insert(pos, g)
        return BraidWord(b.n + 1, tuple(letters))
    if move.kind == "destabilize":
        top = b.n - 1
        hits = [p for p, g in enumerate(b.letters) if abs(g) == top]
        if b.n < 2 or len(hits) != 1:
            raise MarkovError("last strand must be used exactly once to destabilize")
        letters = list(b.letters)
        del letters[hits[0]]
        return BraidWord(b.n - 1, tuple(letters))
    raise MarkovError(f"unknown move {move.kind!r}")


def random_braid(rng, max_n=4, max_len=8, min_n=1, reduced=True):
    n = rng.randint(min_n, max_n)
    if n == 1:
        return BraidWord(1, ())
    length = rng.randint(0, max_len)
    letters = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)]
    if reduced:
        letters = free_reduce(letters)
    return BraidWord(n, tuple(letters))


def random_move(rng, b):
    """A random applicable Markov move for ``b``."""
    options = ["stabilize_positive", "stabilize_negative"]
    if b.n >= 2:
        options.append("conjugation")
    top = b.n - 1
    if b.n >= 2 and sum(1 for g in b.letters if abs(g) == top) == 1:
        options.append("destabilize")
    kind = rng.choice(options)
    if kind == "conjugation":
        return MarkovMove(kind, rng.choice([1, -1]) * rng.randint(1, b.n - 1))
    if kind.startswith("stabilize"):
        return MarkovMove(kind, position=rng.randint(0, len(b.letters)))
    return MarkovMove(kind)


def make_rng(seed):
    return random.Random(seed)
