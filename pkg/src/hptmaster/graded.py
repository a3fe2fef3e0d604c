"""Z-graded vector spaces, homogeneous linear maps, and Koszul signs.

Everything is exact over the rationals (fractions.Fraction).  Degrees are
homological throughout the library; cohomological input is converted at the
boundary via deg_hom = -deg_cohom.

Sign conventions used everywhere (single point of truth):

  * the suspension s has degree +1, (sM)_j = M_{j-1};
  * the differential induced on sM is  -s d s^{-1};
  * operator interchanges follow the Koszul rule, with the degree of a
    homogeneous map counted like the degree of an element.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class GradedVectorSpace:
    """Finite ordered basis of (label, degree) pairs; labels are unique."""

    def __init__(self, basis):
        self.basis = [(str(lab), int(deg)) for lab, deg in basis]
        self.index = {}
        for i, (lab, _) in enumerate(self.basis):
            if lab in self.index:
                raise ValueError(f"duplicate basis label {lab!r}")
            self.index[lab] = i
        self.degrees = [deg for _, deg in self.basis]
        self.labels = [lab for lab, _ in self.basis]

    @property
    def dim(self):
        return len(self.basis)

    def degree_of(self, label):
        return self.degrees[self.index[label]]

    def dims_by_degree(self):
        out = {}
        for _, deg in self.basis:
            out[deg] = out.get(deg, 0) + 1
        return out

    def indices_in_degree(self, deg):
        return [i for i, d in enumerate(self.degrees) if d == deg]

    def __eq__(self, other):
        return isinstance(other, GradedVectorSpace) and self.basis == other.basis

    def __repr__(self):
        return f"GradedVectorSpace({self.basis!r})"


class GradedMap:
    """Degree-homogeneous linear map, stored sparsely.

    entries maps (target_index, source_index) -> Fraction.  Every nonzero
    entry must satisfy deg(target) = deg(source) + degree.
    """

    def __init__(self, source, target, degree, entries=None, check=True):
        self.source = source
        self.target = target
        self.degree = int(degree)
        self.entries = {}
        if entries:
            for (t, s), c in entries.items():
                c = Fraction(c)
                if c != 0:
                    self.entries[(t, s)] = c
        if check:
            for (t, s) in self.entries:
                if target.degrees[t] != source.degrees[s] + self.degree:
                    raise ValueError(
                        "inhomogeneous entry %r -> %r for degree %d map"
                        % (source.basis[s], target.basis[t], self.degree))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, source, target, degree):
        return cls(source, target, degree, {}, check=False)

    @classmethod
    def identity(cls, space):
        ent = {(i, i): ONE for i in range(space.dim)}
        return cls(space, space, 0, ent, check=False)

    @classmethod
    def from_columns(cls, source, target, degree, cols):
        """cols[s] is the image of source basis vector s as a dense column."""
        ent = {}
        for s, col in enumerate(cols):
            for t, c in enumerate(col):
                if c != 0:
                    ent[(t, s)] = Fraction(c)
        return cls(source, target, degree, ent)

    # -- basic algebra -----------------------------------------------------

    def __call__(self, vec):
        """Apply to a dense coefficient vector over the source basis."""
        out = [ZERO] * self.target.dim
        for (t, s), c in self.entries.items():
            if vec[s] != 0:
                out[t] += c * vec[s]
        return out

    def apply_basis(self, s):
        """Image of the s-th source basis vector as a sparse dict t -> coeff."""
        return {t: c for (t, ss), c in self.entries.items() if ss == s}

    def column(self, s):
        col = [ZERO] * self.target.dim
        for t, c in self.apply_basis(s).items():
            col[t] = c
        return col

    def compose(self, other):
        """self o other (apply other first)."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition mismatch")
        ent = {}
        by_source = {}
        for (t, s), c in self.entries.items():
            by_source.setdefault(s, []).append((t, c))
        for (m, s), c in other.entries.items():
            for (t, c2) in by_source.get(m, ()):
                key = (t, s)
                ent[key] = ent.get(key, ZERO) + c * c2
        ent = {k: v for k, v in ent.items() if v != 0}
        return GradedMap(other.source, self.target, self.degree + other.degree,
                         ent, check=False)

    def __add__(self, other):
        if (other.source != self.source or other.target != self.target
                or other.degree != self.degree):
            raise ValueError("sum of incompatible maps")
        ent = dict(self.entries)
        for k, c in other.entries.items():
            ent[k] = ent.get(k, ZERO) + c
        ent = {k: v for k, v in ent.items() if v != 0}
        return GradedMap(self.source, self.target, self.degree, ent, check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        ent = {k: c * v for k, v in self.entries.items() if c * v != 0}
        return GradedMap(self.source, self.target, self.degree, ent, check=False)

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, GradedMap)
                and self.source == other.source and self.target == other.target
                and self.degree == other.degree and self.entries == other.entries)

    def to_dense(self):
        M = [[ZERO] * self.source.dim for _ in range(self.target.dim)]
        for (t, s), c in self.entries.items():
            M[t][s] = c
        return M

    def restrict_source(self, predicate):
        """Zero out columns whose source index fails the predicate."""
        ent = {k: c for k, c in self.entries.items() if predicate(k[1])}
        return GradedMap(self.source, self.target, self.degree, ent, check=False)

    def __repr__(self):
        return (f"GradedMap(deg={self.degree}, "
                f"{len(self.entries)} entries)")


def hom_differential(phi, d_src, d_tgt):
    """D(phi) = d_tgt o phi - (-1)^{|phi|} phi o d_src."""
    if d_src.source != phi.source or d_tgt.source != phi.target:
        raise ValueError("differential/space mismatch")
    sign = -1 if phi.degree % 2 == 0 else 1
    return d_tgt.compose(phi) + phi.compose(d_src).scale(sign)


def koszul_sign(permutation, degrees):
    """Sign of permuting homogeneous factors of the given degrees.

    permutation[i] = original position of the element now at slot i.  Each
    adjacent transposition of two odd-degree factors contributes -1; all
    other transpositions contribute +1.
    """
    perm = list(permutation)
    if sorted(perm) != list(range(len(degrees))):
        raise ValueError("malformed permutation")
    sign = 1
    # bubble sort; each adjacent swap of originals a, b contributes
    # (-1)^{deg(a) deg(b)}
    arr = perm[:]
    n = len(arr)
    for i in range(n):
        for j in range(n - 1 - i):
            if arr[j] > arr[j + 1]:
                if (degrees[arr[j]] % 2) and (degrees[arr[j + 1]] % 2):
                    sign = -sign
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
    return Fraction(sign)


def suspend_space(space, shift=1, prefix="s"):
    """The suspension (shift=+1) or desuspension (shift=-1) of a space.

    Labels are prefixed so that sM and M never collide.
    """
    return GradedVectorSpace([(prefix + lab, deg + shift)
                              for lab, deg in space.basis])


def suspension_iso(space, shift=1, prefix="s"):
    """The canonical degree-`shift` isomorphism M -> sM (entries all 1)."""
    target = suspend_space(space, shift, prefix)
    ent = {(i, i): ONE for i in range(space.dim)}
    return GradedMap(space, target, shift, ent, check=False)


def suspend_map(phi, prefix="s"):
    """Induced map s o phi o s^{-1} on the suspended spaces.

    The Koszul rule for moving phi past one s contributes (-1)^{|phi|}, so
    the induced map is (-1)^{|phi|} with the same matrix; in particular a
    differential d acquires a global -1, matching the convention that the
    differential on sM is -s d s^{-1}.
    """
    src = suspend_space(phi.source, 1, prefix)
    tgt = suspend_space(phi.target, 1, prefix)
    sign = -1 if phi.degree % 2 else 1
    ent = {k: c * sign for k, c in phi.entries.items()}
    return GradedMap(src, tgt, phi.degree, ent, check=False)
