import random

from xint import chordal as ch
from xint import graph as gc
from xint import search as se
from xint.families import SetFamily, enumerate_independent


def fixture_graphs(n_max=9):
    """Named graph classes plus a few seeded random graphs, all with n <= n_max."""
    out = []
    for n in range(1, n_max + 1):
        out.append((f"empty:{n}", gc.empty(n)))
        out.append((f"path:{n}", gc.path(n)))
        out.append((f"clique:{n}", gc.clique(n)))
        if n >= 2:
            out.append((f"cycle:{n}", gc.cycle(n)))
    for n in range(1, n_max // 2 + 1):
        out.append((f"matching:{n}", gc.matching(n)))
    for sizes in ([2, 3], [2, 2, 2], [1, 3, 4], [3, 3, 3]):
        if sum(sizes) <= n_max:
            out.append((f"cliques:{sizes}", gc.clique_union(sizes)))
    rng = random.Random(7)
    for i in range(12):
        n = rng.randint(2, n_max)
        out.append((f"gnp:{i}", ch.random_graph(n, rng.random(), rng)))
        out.append((f"chordal:{i}", ch.random_chordal(n, rng.random(), rng)))
    return out


def random_cross_pair(g, r, rng, tries=4):
    """A random cross-intersecting pair: sample A, then keep the B-candidates
    meeting all of A, then subsample."""
    universe = list(enumerate_independent(g, r).members)
    if not universe:
        return SetFamily(g, r, ()), SetFamily(g, r, ())
    for _ in range(tries):
        a = [s for s in universe if rng.random() < rng.random()]
        ok = [t for t in universe if all(s & t for s in a)]
        b = [t for t in ok if rng.random() < 0.7]
        if a or b:
            break
    return SetFamily.of(g, r, a), SetFamily.of(g, r, b)


def random_family(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    g = ch.random_graph(n, rng.random() * 0.6, rng)
    r = rng.randint(1, max(1, n // 2))
    fam = enumerate_independent(g, r)
    if len(fam) > se.NAIVE_LIMIT:
        keep = sorted(rng.sample(range(len(fam)), se.NAIVE_LIMIT))
        fam = SetFamily(g, r, tuple(fam.members[i] for i in keep))
    return fam, rng.randint(2, 4)
