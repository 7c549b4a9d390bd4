"""Consistency suites behind ``vermalink selftest``."""
import tempfile

from .braids import BraidWord, make_rng, markov_apply, random_braid, random_move
from .cache import ResultCache
from .hecke import homfly_oracle
from .scalars import QQ, UNKNOT, QFrac
from .verma import braid_value, homfly


def skein_defects(rng, count, max_n=4, max_len=8):
    """Braids where P(w1 s w2) - P(w1 s^-1 w2) != (q^-1 - q) P(w1 w2)."""
    bad = []
    for _ in range(count):
        b = random_braid(rng, max_n=max_n, max_len=max_len, min_n=2, reduced=False)
        pos = rng.randint(0, len(b.letters))
        i = rng.randint(1, b.n - 1)
        plus = BraidWord(b.n, b.letters[:pos] + (i,) + b.letters[pos:])
        minus = BraidWord(b.n, b.letters[:pos] + (-i,) + b.letters[pos:])
        lhs = braid_value(plus) - braid_value(minus)
        rhs = QFrac.coerce(braid_value(b)) * QFrac.coerce(-QQ)
        if not (lhs - rhs).is_zero():
            bad.append(b.to_text())
    return bad


def markov_defects(rng, count, max_n=4, max_len=8):
    bad = []
    for _ in range(count):
        b = random_braid(rng, max_n=max_n, max_len=max_len)
        move = random_move(rng, b)
        c = markov_apply(b, move)
        if not (homfly(b) - homfly(c)).is_zero():
            bad.append((b.to_text(), move.kind))
    return bad


def oracle_defects(rng, count, max_n=4, max_len=6):
    bad = []
    for _ in range(count):
        b = random_braid(rng, max_n=max_n, max_len=max_len)
        if not (homfly(b) - homfly_oracle(b)).is_zero():
            bad.append(b.to_text())
    return bad


def cache_roundtrip():
    """A cached homology report equals a freshly computed one."""
    from .braids import parse_braid
    from .cli import homology_report
    b = parse_braid("n=2 s1 s1")
    with tempfile.TemporaryDirectory() as tmp:
        cache = ResultCache(tmp)
        key = {"kind": "selftest", "braid": b.to_text()}
        fresh = homology_report(b, "full", 4)
        cache.put(key, fresh)
        hit = cache.get(key)
    return hit == homology_report(b, "full", 4)


def run_suites(level="quick", seed=0, threads=1):
    from .oracle import check_relations
    count = 25 if level == "quick" else 100
    rng = make_rng(seed)
    results = []
    unknot = homfly(BraidWord(1, ()))
    results.append(("unknot", (unknot - UNKNOT).is_zero(), unknot.to_text()))
    bad = skein_defects(rng, count)
    results.append(("skein", not bad, f"{count} braids, {len(bad)} failures"))
    bad = markov_defects(rng, count)
    results.append(("markov", not bad, f"{count} moves, {len(bad)} failures"))
    bad = oracle_defects(rng, count)
    results.append(("hecke-oracle", not bad, f"{count} braids, {len(bad)} failures"))
    qmax = 4 if level == "quick" else 8
    strands = 2 if level == "quick" else 3
    if threads > 1:
        from .cli import pmap
        report = check_relations(max_strands=strands, qmax=qmax,
                                 mapper=lambda fn, xs: pmap(fn, xs, threads))
    else:
        report = check_relations(max_strands=strands, qmax=qmax)
    failed = sum(v[1] for v in report.values())
    checked = sum(v[0] for v in report.values())
    results.append(("relations", not failed, f"{checked} instances, {failed} failures"))
    results.append(("cache", cache_roundtrip(), "cached report equals fresh report"))
    return results
