"""Deterministic example builders and the randomized test corpus.

The engineered instances were designed by hand around the transfer
machinery: a dg Lie algebra whose transferred structure has a nonzero
ternary bracket, a degeneration instance whose homology lifts commute
while the algebra does not, and a seven-dimensional weak differential BV
algebra built from one Hodge square plus harmonic classes so that the
formality predicate holds with a nonzero quadratic twisting-cochain
component.  Randomized dg Lie algebras come from structured families
composed with random degreewise basis changes, so denominators and dense
constants appear while exactness is preserved.
"""

import random
from fractions import Fraction

from . import linalg
from .bv import BVData, GerstenhaberAlgebra, bracket_from_generator
from .complexes import ChainComplex
from .dgla import DgLieAlgebra
from .graded import GradedMap, GradedVectorSpace, ONE, ZERO


def abelian_dgla(degrees=(0, 1)):
    space = GradedVectorSpace(
        [("a%d" % i, d) for i, d in enumerate(degrees)])
    return DgLieAlgebra(ChainComplex(space), {})


def sl2():
    space = GradedVectorSpace([("e", 0), ("f", 0), ("h", 0)])
    return DgLieAlgebra(
        ChainComplex(space),
        {(0, 1): {2: ONE}, (0, 2): {0: Fraction(-2)}, (1, 2): {1: Fraction(2)}})


def _lie3_tables():
    return {
        "sl2": {("e", "f"): {"h": 1}, ("e", "h"): {"e": -2},
                ("f", "h"): {"f": 2}},
        "b2x": {("e", "f"): {"f": 1}},
        "heis": {("e", "f"): {"h": 1}},
    }


def lie_tensor_dgla(kind="sl2"):
    """g (x) (c, u, v) with d(u) = v and u, v products vanishing.

    A three-dimensional Lie algebra tensored with the three-dimensional
    commutative algebra spanned by an idempotent-free unit-like element c
    and an acyclic pair u -> v whose products with everything vanish.  The
    result has nonzero differential and nonzero brackets with homology
    equal to the original Lie algebra.
    """
    base = _lie3_tables()[kind]
    gens = ("e", "f", "h")
    space = GradedVectorSpace(
        [("%s_%s" % (g, a), 1 if a == "u" else 0)
         for g in gens for a in ("c", "u", "v")])
    idx = space.index

    def br(g1, g2):
        if (g1, g2) in base:
            return base[(g1, g2)]
        if (g2, g1) in base:
            return {k: -c for k, c in base[(g2, g1)].items()}
        return {}

    table = {}
    for g1 in gens:
        for g2 in gens:
            for a1, a2, a3 in (("c", "c", "c"), ("c", "u", "u"),
                               ("c", "v", "v")):
                i, j = idx["%s_%s" % (g1, a1)], idx["%s_%s" % (g2, a2)]
                if i == j:
                    continue
                val = {idx["%s_%s" % (k, a3)]: Fraction(c)
                       for k, c in br(g1, g2).items()}
                if not val:
                    continue
                if i > j:
                    i, j = j, i
                    val = {k: -c for k, c in val.items()}
                table[(i, j)] = val
    d_ent = {}
    for g in gens:
        d_ent[(idx["%s_v" % g], idx["%s_u" % g])] = ONE
    return DgLieAlgebra(
        ChainComplex(space, GradedMap(space, space, -1, d_ent)), table)


def nonzero_l3_dgla():
    """Six-dimensional dg Lie algebra with l_2 = 0 but l_3 != 0 on homology.

    Basis x, y, w, v in degree 0 and u, z in degree 1 with d(u) = v and the
    brackets [x, y] = v, [w, u] = z.  The recursion gives
    tau^2(sx sy) = -(1/2) h([x,y] + [y,x]-term) = u-valued, and
    lambda_3(sw sx sy) picks up pi([w, tau^2]) = a nonzero multiple of the
    degree-1 class of z.
    """
    space = GradedVectorSpace(
        [("x", 0), ("y", 0), ("w", 0), ("v", 0), ("u", 1), ("z", 1)])
    d = GradedMap(space, space, -1, {(3, 4): ONE})
    table = {(0, 1): {3: ONE}, (2, 4): {5: ONE}}
    return DgLieAlgebra(ChainComplex(space, d), table)


def commuting_lifts_dgla(kind="sl2"):
    """Nonabelian dg Lie algebra whose homology lifts commute.

    g (x) B where B is spanned by c, u, v with d(u) = v, v v = v,
    u v = u, and c orthogonal to everything.  Homology is carried by the
    c-slice, whose brackets vanish (c c = 0), while the u, v slices carry
    nonzero brackets.  Both degeneration hypotheses (projected bracket
    zero; lifted brackets zero) hold exactly.
    """
    base = _lie3_tables()[kind]
    gens = ("e", "f", "h")
    space = GradedVectorSpace(
        [("%s_%s" % (g, a), 1 if a == "u" else 0)
         for g in gens for a in ("c", "u", "v")])
    idx = space.index

    def br(g1, g2):
        if (g1, g2) in base:
            return base[(g1, g2)]
        if (g2, g1) in base:
            return {k: -c for k, c in base[(g2, g1)].items()}
        return {}

    # products on B: v v = v, u v = u, everything with c zero
    table = {}
    for g1 in gens:
        for g2 in gens:
            for a1, a2, a3 in (("v", "v", "v"), ("u", "v", "u")):
                i, j = idx["%s_%s" % (g1, a1)], idx["%s_%s" % (g2, a2)]
                if i == j:
                    continue
                val = {idx["%s_%s" % (k, a3)]: Fraction(c)
                       for k, c in br(g1, g2).items()}
                if not val:
                    continue
                if i > j:
                    i, j = j, i
                    sign = -ONE
                    if space.degrees[i] % 2 and space.degrees[j] % 2:
                        sign = ONE
                    val = {k: sign * c for k, c in val.items()}
                # ordered (g1, g2) pairs hit each symmetric-slot key twice
                # with the same value, so plain assignment deduplicates
                table[(i, j)] = val
    d_ent = {}
    for g in gens:
        d_ent[(idx["%s_v" % g], idx["%s_u" % g])] = ONE
    return DgLieAlgebra(
        ChainComplex(space, GradedMap(space, space, -1, d_ent)), table)


def kahler_bv_instance():
    """Seven-dimensional weak differential BV algebra with nonzero tau_2.

    Cohomological basis: 1 (degree 0); alpha, c (degree 1); beta, p, e
    (degree 2); t (degree 3).  The only nontrivial product is
    alpha beta = -t; the differential is c -> e, p -> t; the generator is
    p -> c, t -> -e.  The harmonic part {1, alpha, beta} maps
    isomorphically onto both homologies and {p, t, c, e} is a single
    Hodge square, so the formality predicate holds.  The generated bracket
    is [alpha, beta] = -e, so the transferred twisting cochain has the
    nonzero quadratic component h(-e) with value in im(Delta).
    """
    space = GradedVectorSpace(
        [("1", 0), ("alpha", 1), ("c", 1), ("beta", 2), ("p", 2),
         ("e", 2), ("t", 3)])
    ix = space.index
    prod = {(ix["alpha"], ix["beta"]): {ix["t"]: -ONE}}
    d = GradedMap(space, space, 1,
                  {(ix["e"], ix["c"]): ONE, (ix["t"], ix["p"]): ONE})
    delta = GradedMap(space, space, -1,
                      {(ix["c"], ix["p"]): ONE, (ix["e"], ix["t"]): -ONE})
    alg0 = GerstenhaberAlgebra(space, prod, d=d, unit_index=ix["1"])
    table = bracket_from_generator(alg0, delta)
    alg = GerstenhaberAlgebra(space, prod, table, d=d, unit_index=ix["1"])
    return BVData(alg, delta)


# -- randomized corpus -------------------------------------------------------

def random_dgla(seed):
    """A random valid dg Lie algebra of total dimension <= 6.

    Families: abelian with a random two-layer differential, classical Lie
    algebras in degree zero, a Lie algebra tensored with a small
    differential coefficient algebra, and the engineered ternary-bracket
    instance; each is composed with a random degreewise basis change so
    that nontrivial rational constants appear.  Deterministic per seed.
    """
    rng = random.Random(seed)
    family = rng.randrange(4)
    if family == 0:
        g = _random_two_layer(rng)
    elif family == 1:
        kind = rng.choice(sorted(_lie3_tables()))
        base = _lie3_tables()[kind]
        space = GradedVectorSpace([("e", 0), ("f", 0), ("h", 0)])
        table = {}
        names = {"e": 0, "f": 1, "h": 2}
        for (g1, g2), val in base.items():
            table[(names[g1], names[g2])] = {names[k]: Fraction(c)
                                             for k, c in val.items()}
        g = DgLieAlgebra(ChainComplex(space), table)
    elif family == 2:
        g = nonzero_l3_dgla()
    else:
        # heisenberg in a shifted degree plus an acyclic abelian pair
        shift = rng.choice([-1, 0, 1])
        space = GradedVectorSpace(
            [("e", 2 * shift), ("f", -2 * shift), ("h", 0),
             ("u", shift + 1), ("v", shift)])
        d = GradedMap(space, space, -1, {(4, 3): ONE})
        g = DgLieAlgebra(ChainComplex(space, d), {(0, 1): {2: ONE}})
    return change_basis(g, rng)


def _random_two_layer(rng):
    dim = rng.randrange(2, 7)
    degrees = sorted(rng.choice(range(-2, 4)) for _ in range(dim))
    space = GradedVectorSpace(
        [("a%d" % i, d) for i, d in enumerate(degrees)])
    # split indices into sources and sinks so that d o d = 0 by shape
    sources = [i for i in range(dim) if rng.random() < 0.5]
    ent = {}
    for s in sources:
        for t in range(dim):
            if t in sources or space.degrees[t] != space.degrees[s] - 1:
                continue
            c = rng.randrange(-2, 3)
            if c:
                ent[(t, s)] = Fraction(c)
    return DgLieAlgebra(
        ChainComplex(space, GradedMap(space, space, -1, ent)), {})


def change_basis(g, rng, denominator_pool=(1, 1, 2, 3)):
    """Conjugate a dg Lie algebra by a random degreewise basis change."""
    space = g.space
    dim = space.dim
    S = linalg.identity(dim)
    for deg in sorted(set(space.degrees)):
        idx = space.indices_in_degree(deg)
        n = len(idx)
        while True:
            block = [[Fraction(rng.randrange(-2, 3),
                               rng.choice(denominator_pool))
                      for _ in range(n)] for _ in range(n)]
            for k in range(n):
                if all(c == 0 for c in block[k]):
                    block[k][k] = ONE
            if linalg.rank(block) == n:
                break
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                S[i][j] = block[a][b]
    Sinv = _invert(S)
    cols = linalg.columns(S)

    def to_new(vec):
        return [sum(Sinv[t][k] * vec[k] for k in range(dim))
                for t in range(dim)]

    d_ent = {}
    for s in range(dim):
        img = to_new(g.d(cols[s]))
        for t, c in enumerate(img):
            if c != 0:
                d_ent[(t, s)] = c
    new_space = GradedVectorSpace(
        [("b%d" % i, space.degrees[i]) for i in range(dim)])
    table = {}
    for i in range(dim):
        for j in range(i, dim):
            if i == j and space.degrees[i] % 2 == 0:
                continue
            img = to_new(g.bracket(cols[i], cols[j]))
            val = {k: c for k, c in enumerate(img) if c != 0}
            if val:
                table[(i, j)] = val
    return DgLieAlgebra(
        ChainComplex(new_space, GradedMap(new_space, new_space, -1, d_ent)),
        table)


def _invert(M):
    n = len(M)
    aug = [M[i][:] + [ONE if j == i else ZERO for j in range(n)]
           for i in range(n)]
    R, pivots = linalg.rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in R]


def corpus(count=50, start_seed=0):
    """The deterministic randomized corpus used by the acceptance tests."""
    return [random_dgla(start_seed + k) for k in range(count)]
