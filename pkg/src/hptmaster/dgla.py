"""Differential graded Lie algebras, cup brackets, and twisting cochains.

Structure constants are stored only for source index pairs i <= j; the
values for i > j are derived through graded antisymmetry, so inconsistent
input cannot be represented.  All degrees are homological.
"""

from fractions import Fraction

from . import linalg
from .complexes import ChainComplex
from .graded import (GradedMap, GradedVectorSpace, suspend_space, suspend_map,
                     ONE, ZERO)
from .words import (TruncatedSymCoalgebra, CoderivationSpec, EMPTY,
                    word_degree)


class DgLieAlgebra:
    """A chain complex with a degree-0 graded Lie bracket.

    bracket_table maps (i, j) with i <= j to a sparse dict k -> Fraction
    meaning [e_i, e_j] = sum c^k_ij e_k.
    """

    def __init__(self, complex_, bracket_table):
        self.complex = complex_
        space = complex_.space
        self.bracket_table = {}
        for (i, j), val in bracket_table.items():
            if i > j:
                raise ValueError("structure constants must have i <= j")
            val = {k: Fraction(c) for k, c in val.items() if c != 0}
            if not val:
                continue
            if i == j and space.degrees[i] % 2 == 0:
                raise ValueError(
                    "[x,x] must vanish for even |x| (%s)" % space.labels[i])
            for k in val:
                if space.degrees[k] != space.degrees[i] + space.degrees[j]:
                    raise ValueError("bracket constant not of degree zero")
            self.bracket_table[(i, j)] = val

    @property
    def space(self):
        return self.complex.space

    @property
    def d(self):
        return self.complex.d

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a sparse dict, for any index order."""
        degs = self.space.degrees
        if i <= j:
            return dict(self.bracket_table.get((i, j), {}))
        sign = -ONE if not (degs[i] % 2 and degs[j] % 2) else ONE
        # [e_i, e_j] = -(-1)^{|i||j|} [e_j, e_i]
        return {k: sign * c for k, c in self.bracket_table.get((j, i), {}).items()}

    def bracket(self, u, v):
        """Bracket of dense coefficient vectors."""
        out = [ZERO] * self.space.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += a * b * c
        return out

    def is_abelian(self):
        return not self.bracket_table

    def sub_algebra(self, vectors):
        """Sub-dgLa spanned by the given homogeneous dense vectors.

        Returns (sub: DgLieAlgebra, inclusion: GradedMap).  Raises when the
        span is not closed under d or the bracket.
        """
        space = self.space
        by_deg = {}
        for v in vectors:
            degs = {space.degrees[i] for i, c in enumerate(v) if c != 0}
            if not degs:
                continue
            if len(degs) != 1:
                raise ValueError("sub-algebra generator is inhomogeneous")
            by_deg.setdefault(degs.pop(), []).append(list(v))
        basis_vecs = []
        basis_degs = []
        for deg in sorted(by_deg):
            rows, _ = linalg.rref(by_deg[deg])
            for r in rows:
                if any(c != 0 for c in r):
                    basis_vecs.append(r)
                    basis_degs.append(deg)
        sub_space = GradedVectorSpace(
            [("m%d" % i, d) for i, d in enumerate(basis_degs)])
        M = [[basis_vecs[c][r] for c in range(len(basis_vecs))]
             for r in range(space.dim)]

        def coords(v):
            x = linalg.solve(M, list(v))
            if x is None:
                raise ValueError("subspace is not closed")
            return x

        d_ent = {}
        for s, bv in enumerate(basis_vecs):
            for t, c in enumerate(coords(self.d(bv))):
                if c != 0:
                    d_ent[(t, s)] = c
        table = {}
        for i in range(len(basis_vecs)):
            for j in range(i, len(basis_vecs)):
                if i == j and basis_degs[i] % 2 == 0:
                    continue
                br = self.bracket(basis_vecs[i], basis_vecs[j])
                val = {k: c for k, c in enumerate(coords(br)) if c != 0}
                if val:
                    table[(i, j)] = val
        sub = DgLieAlgebra(
            ChainComplex(sub_space, GradedMap(sub_space, sub_space, -1, d_ent)),
            table)
        incl = GradedMap.from_columns(sub_space, space, 0, basis_vecs)
        return sub, incl


def validate_dgla(g):
    """Exact report on antisymmetry, Jacobi, and the chain-map condition."""
    space = g.space
    degs = space.degrees
    antisym = True   # canonical storage plus the even-diagonal guard
    jacobi = True
    jacobi_witness = None
    for i in range(space.dim):
        for j in range(space.dim):
            for k in range(space.dim):
                lhs = _bracket_sparse(g, {i: ONE}, g.bracket_basis(j, k))
                rhs1 = _bracket_sparse(g, g.bracket_basis(i, j), {k: ONE})
                sgn = -ONE if (degs[i] % 2 and degs[j] % 2) else ONE
                rhs2 = _bracket_sparse(g, {j: ONE}, g.bracket_basis(i, k))
                bad = dict(lhs)
                for t, c in rhs1.items():
                    bad[t] = bad.get(t, ZERO) - c
                for t, c in rhs2.items():
                    bad[t] = bad.get(t, ZERO) - sgn * c
                if any(c != 0 for c in bad.values()):
                    jacobi = False
                    if jacobi_witness is None:
                        jacobi_witness = (space.labels[i], space.labels[j],
                                          space.labels[k])
    leibniz = True
    leibniz_witness = None
    for i in range(space.dim):
        for j in range(space.dim):
            d_br = {}
            for k, c in g.bracket_basis(i, j).items():
                for t, c2 in g.d.apply_basis(k).items():
                    d_br[t] = d_br.get(t, ZERO) + c * c2
            rhs = {}
            for t, c in g.d.apply_basis(i).items():
                for k, c2 in g.bracket_basis(t, j).items():
                    rhs[k] = rhs.get(k, ZERO) + c * c2
            sgn = -ONE if degs[i] % 2 else ONE
            for t, c in g.d.apply_basis(j).items():
                for k, c2 in g.bracket_basis(i, t).items():
                    rhs[k] = rhs.get(k, ZERO) + sgn * c * c2
            bad = dict(d_br)
            for t, c in rhs.items():
                bad[t] = bad.get(t, ZERO) - c
            if any(c != 0 for c in bad.values()):
                leibniz = False
                if leibniz_witness is None:
                    leibniz_witness = (space.labels[i], space.labels[j])
    return {
        "antisymmetry": antisym,
        "jacobi": jacobi,
        "jacobi_witness": jacobi_witness,
        "chain_map": leibniz,
        "chain_map_witness": leibniz_witness,
        "passed": antisym and jacobi and leibniz,
    }


def _bracket_sparse(g, u, v):
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in g.bracket_basis(i, j).items():
                out[k] = out.get(k, ZERO) + a * b * c
    return out


class DgAlgebra:
    """Augmented differential graded algebra with explicit constants."""

    def __init__(self, complex_, product_table, unit_index, augmentation=None):
        self.complex = complex_
        space = complex_.space
        self.product_table = {}
        for (i, j), val in product_table.items():
            val = {k: Fraction(c) for k, c in val.items() if c != 0}
            for k in val:
                if space.degrees[k] != space.degrees[i] + space.degrees[j]:
                    raise ValueError("product constant not of degree zero")
            if val:
                self.product_table[(i, j)] = val
        self.unit_index = unit_index
        if augmentation is None:
            augmentation = {unit_index: ONE}
        self.augmentation = {i: Fraction(c) for i, c in augmentation.items()
                             if c != 0}

    @property
    def space(self):
        return self.complex.space

    @property
    def d(self):
        return self.complex.d

    def product_basis(self, i, j):
        u = self.unit_index
        if i == u:
            return {j: ONE}
        if j == u:
            return {i: ONE}
        return dict(self.product_table.get((i, j), {}))

    def multiply(self, u, v):
        out = [ZERO] * self.space.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for k, c in self.product_basis(i, j).items():
                    out[k] += a * b * c
        return out


class TwistingCochainHom:
    """A degree -1 map from a truncated symmetric coalgebra to g (or A).

    hom is a single GradedMap from the word space; components by word
    length are views of it.  The composite with the coaugmentation must be
    zero (no entries on the empty word).
    """

    def __init__(self, source, target, hom):
        self.source = source
        self.target = target
        self.hom = hom
        if hom.degree != -1:
            raise ValueError("twisting cochain must have degree -1")
        unit = source.windex[EMPTY]
        if any(s == unit for (_, s) in hom.entries):
            raise ValueError("composite with the coaugmentation is nonzero")

    def component(self, b):
        return self.hom.restrict_source(lambda s: self.source.word_length(s) == b)

    def component_lengths(self):
        return sorted({self.source.word_length(s)
                       for (_, s) in self.hom.entries})

    def value(self, word):
        return self.hom.apply_basis(self.source.windex[tuple(word)])


def cup_bracket(a, b, coalg, target):
    """[a, b] = bracket o (a (x) b) o Delta, with Koszul signs.

    a, b are GradedMaps from the coalgebra word space into the target Lie
    algebra's space.
    """
    return _cup(a, b, coalg, target.bracket)


def cup_product(a, b, coalg, target):
    """a ~ b = mu o (a (x) b) o Delta for an algebra target."""
    return _cup(a, b, coalg, target.multiply)


def _cup(a, b, coalg, pairing):
    tgt = a.target
    ent = {}
    deg = a.degree + b.degree
    odd_b = b.degree % 2
    for wi, w in enumerate(coalg.words):
        acc = None
        for A, B, sign in coalg.diagonal(w):
            va = a.apply_basis(coalg.windex[A])
            if not va:
                continue
            vb = b.apply_basis(coalg.windex[B])
            if not vb:
                continue
            sgn = sign
            if odd_b and word_degree(A, coalg.gen_space) % 2:
                sgn = -sgn
            ua = [ZERO] * tgt.dim
            for t, c in va.items():
                ua[t] = c
            ub = [ZERO] * tgt.dim
            for t, c in vb.items():
                ub[t] = c
            val = pairing(ua, ub)
            if acc is None:
                acc = [ZERO] * tgt.dim
            for t, c in enumerate(val):
                if c != 0:
                    acc[t] += sgn * c
        if acc:
            for t, c in enumerate(acc):
                if c != 0:
                    ent[(t, wi)] = c
    return GradedMap(coalg.space, tgt, deg, ent)


def universal_twisting_cochain(g, coalg=None, N=4):
    """tau_g: C[g] -> g, the desuspension on word length 1 and zero else."""
    if coalg is None:
        coalg = ce_coalgebra(g, N)
    ent = {}
    for wi, w in enumerate(coalg.words):
        if len(w) == 1:
            lab = w[0]
            base = lab[1:] if lab.startswith("s") else lab
            ent[(g.space.index[base], wi)] = ONE
    hom = GradedMap(coalg.space, g.space, -1, ent)
    return TwistingCochainHom(coalg, g, hom)


def ce_coalgebra(g, N):
    """The generalized Chevalley-Eilenberg coalgebra C[g], truncated at N.

    Sigma^c[s g] with the differential induced by d plus the coderivation
    whose quadratic component is pinned by requiring the universal twisting
    cochain to satisfy the Lie master equation at word length two.
    """
    sV = suspend_space(g.space)
    d_s = suspend_map(g.d)
    coalg = TruncatedSymCoalgebra(sV, N, gen_differential=d_s)
    comp2 = {}
    for w in coalg.words:
        if len(w) != 2:
            continue
        val = _half_self_bracket(w, coalg, g)
        spar = {i: c for i, c in enumerate(val) if c != 0}
        if spar:
            comp2[w] = spar  # target indices coincide under s
    spec = CoderivationSpec(sV)
    spec.set_component(2, comp2)
    coalg.perturbation = spec
    coalg._pert_op = None
    return coalg


def _half_self_bracket(w, coalg, g):
    """(1/2)[tau^1, tau^1] evaluated on a length-2 word, valued in g."""
    acc = [ZERO] * g.space.dim
    for A, B, sign in _length_one_splittings(w, coalg):
        x = A[0][1:] if A[0].startswith("s") else A[0]
        y = B[0][1:] if B[0].startswith("s") else B[0]
        sgn = sign
        if word_degree(A, coalg.gen_space) % 2:
            sgn = -sgn
        for k, c in g.bracket_basis(g.space.index[x], g.space.index[y]).items():
            acc[k] += Fraction(1, 2) * sgn * c
    return acc


def _length_one_splittings(w, coalg):
    for A, B, sign in coalg.diagonal(w, reduced=True):
        if len(A) == 1 and len(B) == 1:
            yield A, B, sign


def is_twisting_cochain(t, mode="lie", max_len=None):
    """Exact check of Dt = (1/2)[t,t] (lie) or Dt = t ~ t (algebra).

    The Hom-differential uses the full source differential (including any
    perturbation).  Returns a report with the first failing word length.
    """
    coalg = t.source
    target = t.target
    D_src = coalg.differential
    Dt = target.d.compose(t.hom) + t.hom.compose(D_src)
    if mode == "lie":
        rhs = cup_bracket(t.hom, t.hom, coalg, target).scale(Fraction(1, 2))
    elif mode == "algebra":
        rhs = cup_product(t.hom, t.hom, coalg, target)
    else:
        raise ValueError("mode must be 'lie' or 'algebra'")
    diff = Dt - rhs
    bad_lengths = sorted({coalg.word_length(s) for (_, s) in diff.entries
                          if max_len is None or coalg.word_length(s) <= max_len})
    return {
        "passed": not bad_lengths,
        "first_failure": bad_lengths[0] if bad_lengths else None,
        "failing_lengths": bad_lengths,
    }


def twisted_differential(gamma, target, mode="lie"):
    """d_Gamma(a) = d a - [Gamma, a] (or d a - Gamma a) for a MC solution.

    gamma is a dense degree -1 element of the target; refuses input that
    does not solve the master equation, since the result would not square
    to zero.
    """
    space = target.space
    pair = target.bracket if mode == "lie" else target.multiply
    d_gamma = target.d(gamma)
    gg = pair(gamma, gamma)
    half = Fraction(1, 2) if mode == "lie" else ONE
    if any(a - half * b != 0 for a, b in zip(d_gamma, gg)):
        raise ValueError("element does not solve the master equation")
    ent = {}
    for s in range(space.dim):
        e = [ONE if i == s else ZERO for i in range(space.dim)]
        col = [a - b for a, b in zip(target.d(e), pair(gamma, e))]
        for tix, c in enumerate(col):
            if c != 0:
                ent[(tix, s)] = c
    out = GradedMap(space, space, -1, ent)
    assert out.compose(out).is_zero()
    return out
