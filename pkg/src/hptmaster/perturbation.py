"""Coalgebra lifts of contractions and the basic perturbation lemma.

A contraction of complexes lifts to the tensor coalgebra by the side
homotopy formula and descends to the symmetric coalgebra through the
invariants embedding.  The perturbation lemma then transfers a word-length
lowering perturbation of the big differential across any contraction, with
all series finite by the filtration argument.
"""

from fractions import Fraction

from .complexes import ChainComplex, Contraction, normalize_homotopy
from .graded import (GradedMap, GradedVectorSpace, koszul_sign, suspend_map,
                     ONE, ZERO)
from .words import TruncatedSymCoalgebra, sort_factors

from itertools import permutations, product as iproduct
from math import factorial


def tensor_word_label(word):
    return "<" + "|".join(word) + ">" if word else "<>"


class TruncatedTensorCoalgebra:
    """T^c[gen_space] truncated at word length N.

    Basis words are arbitrary sequences of generator labels (repeats of odd
    generators are allowed here, unlike the symmetric quotient).
    """

    def __init__(self, gen_space, max_word_length):
        self.gen_space = gen_space
        self.N = int(max_word_length)
        words = [()]
        layer = [()]
        for _ in range(self.N):
            layer = [w + (lab,) for w in layer for lab in gen_space.labels]
            words.extend(layer)
        self.words = words
        self.windex = {w: i for i, w in enumerate(words)}
        self.space = GradedVectorSpace(
            [(tensor_word_label(w),
              sum(gen_space.degree_of(lab) for lab in w)) for w in words])

    def word_length(self, index):
        return len(self.words[index])


def tensor_lift(f, src_tc, tgt_tc):
    """T^c f for a degree-0 generator map f: applies f in every slot."""
    if f.degree != 0:
        raise ValueError("only degree-0 maps lift slotwise without signs")
    ent = {}
    tgt_labels = f.target.labels
    for wi, w in enumerate(src_tc.words):
        images = []
        for lab in w:
            img = f.apply_basis(f.source.index[lab])
            images.append(list(img.items()))
        for combo in iproduct(*images):
            word = tuple(tgt_labels[g] for g, _ in combo)
            coeff = ONE
            for _, c in combo:
                coeff *= c
            key = (tgt_tc.windex[word], wi)
            ent[key] = ent.get(key, ZERO) + coeff
    ent = {k: v for k, v in ent.items() if v != 0}
    return GradedMap(src_tc.space, tgt_tc.space, 0, ent)


def tensor_homotopy(h, nabla_pi, tc):
    """The side homotopy T^c h = sum_k Id^{k} (x) h (x) (nabla pi)^{rest}.

    h is the degree +1 homotopy on the generators and nabla_pi the
    composite nabla o pi (both endomorphisms of tc.gen_space).
    """
    space = tc.gen_space
    ent = {}
    for wi, w in enumerate(tc.words):
        if not w:
            continue
        for k in range(len(w)):
            front_deg = sum(space.degree_of(lab) for lab in w[:k])
            sign = -ONE if front_deg % 2 else ONE
            slot_imgs = []
            for pos, lab in enumerate(w):
                g = space.index[lab]
                if pos < k:
                    slot_imgs.append([(g, ONE)])
                elif pos == k:
                    slot_imgs.append(list(h.apply_basis(g).items()))
                else:
                    slot_imgs.append(list(nabla_pi.apply_basis(g).items()))
            for combo in iproduct(*slot_imgs):
                word = tuple(space.labels[g] for g, _ in combo)
                coeff = sign
                for _, c in combo:
                    coeff *= c
                if coeff == 0:
                    continue
                key = (tc.windex[word], wi)
                ent[key] = ent.get(key, ZERO) + coeff
    ent = {k: v for k, v in ent.items() if v != 0}
    return GradedMap(tc.space, tc.space, 1, ent)


def sym_to_tensor(sym, tc):
    """The invariants embedding e_w -> sum of distinct arrangements."""
    space = sym.gen_space
    ent = {}
    for wi, w in enumerate(sym.words):
        degs = [space.degree_of(lab) for lab in w]
        seen = set()
        for perm in permutations(range(len(w))):
            arr = tuple(w[p] for p in perm)
            if arr in seen:
                continue
            seen.add(arr)
            sign = koszul_sign(list(perm), degs)
            ent[(tc.windex[arr], wi)] = sign
    return GradedMap(sym.space, tc.space, 0, ent)


def tensor_to_sym(tc, sym):
    """The invariant projection, inverse to the embedding on invariants.

    A tensor word maps to (prod multiplicities! / len!) times the sorted
    symmetric word with the sorting Koszul sign; words with a repeated odd
    generator die.
    """
    space = sym.gen_space
    ent = {}
    for wi, w in enumerate(tc.words):
        word, sign = sort_factors(w, space)
        if word is None:
            continue
        mult = ONE
        run = 1
        for i in range(1, len(word) + 1):
            if i < len(word) and word[i] == word[i - 1]:
                run += 1
            else:
                mult *= factorial(run)
                run = 1
        coeff = sign * mult / factorial(max(len(word), 1))
        ent[(sym.windex[word], wi)] = coeff
    return GradedMap(tc.space, sym.space, 0, ent)


def symmetric_coalgebra_contraction(con, N, fix_side_conditions=True):
    """Lift a contraction of complexes to the truncated symmetric coalgebras.

    The input contracts (M, d) onto (H, d_H); the output contracts
    Sigma^c[sM] with the coderivation of the suspended differential onto
    Sigma^c[sH].  The homotopy is the symmetrization of the tensor side
    homotopy; when a side condition fails after symmetrization the standard
    normalization is applied (the projections and inclusion are unchanged).

    Returns (contraction on word spaces, big_sym, small_sym).
    """
    nabla_s = suspend_map(con.nabla)
    pi_s = suspend_map(con.pi)
    h_s = suspend_map(con.h)
    sV = nabla_s.target
    sH = nabla_s.source

    big_sym = TruncatedSymCoalgebra(sV, N, gen_differential=suspend_map(con.big.d))
    small_sym = TruncatedSymCoalgebra(sH, N, gen_differential=suspend_map(con.small.d))
    big_tc = TruncatedTensorCoalgebra(sV, N)
    small_tc = TruncatedTensorCoalgebra(sH, N)

    incl_big = sym_to_tensor(big_sym, big_tc)
    proj_big = tensor_to_sym(big_tc, big_sym)
    incl_small = sym_to_tensor(small_sym, small_tc)
    proj_small = tensor_to_sym(small_tc, small_sym)

    nabla_c = proj_big.compose(tensor_lift(nabla_s, small_tc, big_tc)).compose(incl_small)
    pi_c = proj_small.compose(tensor_lift(pi_s, big_tc, small_tc)).compose(incl_big)
    h_tensor = tensor_homotopy(h_s, nabla_s.compose(pi_s), big_tc)
    h_c = proj_big.compose(h_tensor).compose(incl_big)

    big_cx = ChainComplex(big_sym.space, big_sym.d1)
    small_cx = ChainComplex(small_sym.space, small_sym.d1)
    out = Contraction(big_cx, small_cx, nabla_c, pi_c, h_c, check=False)
    errs = out.identity_failures()
    if errs and fix_side_conditions:
        out = normalize_homotopy(out)
        errs = out.identity_failures()
    if errs:
        raise ValueError("coalgebra lift failed: " + ", ".join(errs))
    return out, big_sym, small_sym


def geometric_series(step, max_terms):
    """Id + step + step^2 + ... , requiring nilpotence within max_terms."""
    space = step.source
    acc = GradedMap.identity(space)
    power = GradedMap.identity(space)
    for _ in range(max_terms):
        power = step.compose(power)
        if power.is_zero():
            return acc + power
        acc = acc + power
    raise ValueError("perturbation series does not terminate")


def perturbation_lemma(con, delta, max_terms=None):
    """Transfer a nilpotent perturbation of the big differential.

    delta is a degree -1 endomorphism of the big space with
    (d + delta)^2 = 0 and h delta nilpotent (automatic for word-length
    lowering perturbations of a word-length preserving homotopy).  Returns
    (perturbed contraction, small perturbation).
    """
    big, small = con.big, con.small
    d_new = big.d + delta
    if not d_new.compose(d_new).is_zero():
        raise ValueError("perturbed differential does not square to zero")
    if max_terms is None:
        max_terms = big.space.dim + 1
    series = geometric_series(con.h.compose(delta), max_terms)
    series_r = geometric_series(delta.compose(con.h), max_terms)
    nabla_p = series.compose(con.nabla)
    pi_p = con.pi.compose(series_r)
    h_p = series.compose(con.h)
    delta_small = con.pi.compose(delta).compose(series).compose(con.nabla)
    big_p = ChainComplex(big.space, d_new)
    small_p = ChainComplex(small.space, small.d + delta_small)
    return Contraction(big_p, small_p, nabla_p, pi_p, h_p), delta_small
