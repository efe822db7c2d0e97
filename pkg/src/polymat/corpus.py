"""Built-in polymatroids and representations used by the tests and demos."""

from __future__ import annotations

from itertools import combinations

from .linrep import LinearRep, make_rep, rep_rank_function, restrict_rep
from .setfn import GroundSet, SetFunction
from .tensor import u23, u23_rep, uniform

VAMOS_LABELS = ("a", "a'", "b", "b'", "c", "c'", "d", "d'")


def vamos() -> SetFunction:
    """Vamos matroid: rank 4 on four pairs; the unions of two pairs other than
    ``cc'dd'`` are the five 4-point planes (rank 3)."""
    ground = GroundSet(VAMOS_LABELS)
    pairs = {p: ground.mask([p, p + "'"]) for p in "abcd"}
    planes = {pairs[x] | pairs[y] for x, y in combinations("abcd", 2) if {x, y} != {"c", "d"}}

    def rank(m):
        if m in planes:
            return 3
        return min(m.bit_count(), 4)

    return SetFunction(ground, tuple(rank(m) for m in range(1 << 8)))


def ingleton_violator_4() -> SetFunction:
    """Four elements, singletons of rank 2, pairs of rank 3 except ``cd`` (rank
    4), triples and the whole set of rank 4."""
    ground = GroundSet(("a", "b", "c", "d"))
    cd = ground.mask(["c", "d"])

    def rank(m):
        k = m.bit_count()
        if k == 2:
            return 4 if m == cd else 3
        return (0, 2, None, 4, 4)[k]

    return SetFunction(ground, tuple(rank(m) for m in range(16)))


def fano_rep() -> LinearRep:
    """The seven nonzero vectors of GF(2)^3 as lines; element ``i`` is the
    vector of binary digits of ``i``."""
    vecs = [[((i >> 2) & 1, (i >> 1) & 1, i & 1)] for i in range(1, 8)]
    return make_rep([str(i) for i in range(1, 8)], 2, 3, vecs)


def fano() -> SetFunction:
    return rep_rank_function(fano_rep())


def pair_rep() -> LinearRep:
    """``V_a = <e1, e2>`` and ``V_b = <e2, e3>`` in GF(2)^3."""
    return make_rep(("a", "b"), 2, 3, {"a": [(1, 0, 0), (0, 1, 0)], "b": [(0, 1, 0), (0, 0, 1)]})


def free_rep(n: int = 2, p: int = 2) -> LinearRep:
    """Free matroid on ``n`` elements: the standard basis of GF(p)^n."""
    return make_rep([chr(ord("a") + i) for i in range(n)], p, n,
                    [[tuple(int(i == j) for j in range(n))] for i in range(n)])


def corpus(name: str, *args) -> SetFunction:
    """Named built-in rank table: ``u23``, ``uniform k n``, ``fano``, ``vamos``,
    ``ingleton-violator-4``, ``pair``, ``free [n]``."""
    builders = {
        "u23": u23,
        "uniform": lambda k, n: uniform(int(k), int(n)),
        "fano": fano,
        "vamos": vamos,
        "ingleton-violator-4": ingleton_violator_4,
        "pair": lambda: rep_rank_function(pair_rep()),
        "free": lambda n=2: rep_rank_function(free_rep(int(n))),
    }
    if name not in builders:
        raise ValueError(f"unknown corpus entry {name!r}; known: {sorted(builders)}")
    try:
        return builders[name](*args)
    except TypeError:
        raise ValueError(f"wrong arguments for corpus entry {name!r}: {args}") from None


def corpus_rep(name: str, p: int = 2) -> LinearRep:
    if name in ("fano", "pair") and p != 2:
        raise ValueError(f"the built-in {name!r} representation is over GF(2)")
    reps = {"u23": lambda: u23_rep(p), "fano": fano_rep, "pair": pair_rep,
            "free": lambda: free_rep(2, p)}
    if name not in reps:
        raise ValueError(f"no built-in representation {name!r}; known: {sorted(reps)}")
    return reps[name]()


CORPUS_NAMES = ("u23", "fano", "vamos", "ingleton-violator-4", "pair", "free")


def linear_corpus(max_n: int = 4) -> dict[str, LinearRep]:
    """Named representations with at most ``max_n`` elements.

    The Fano plane itself is too large for a tensor product with U(2,3), so
    it enters through restrictions: a line, a basis, a line plus a point and
    four points in general position.
    """
    fr = fano_rep()
    reps = {
        "u23/GF(2)": u23_rep(2),
        "u23/GF(3)": u23_rep(3),
        "pair": pair_rep(),
    }
    for n in range(1, max_n + 1):
        reps[f"free{n}"] = free_rep(n)
    for name in ("123", "124", "1234", "1247"):
        reps[f"fano|{name}"] = restrict_rep(fr, fr.ground.mask(list(name)))
    return {k: r for k, r in reps.items() if r.ground.n <= max_n}
