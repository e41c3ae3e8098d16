"""Finite-per-degree simplicial sets: enumeration, faces, degeneracies.

Four builders share one interface:

* ENVELOPE   -- degree-k simplices are tail-free normal-form words with
  positions below k, for a pre-crossed module (GROUP_SYLLABLE letters) or
  for the free pre-crossed module of an augmented rack (FREE_LETTER).
* CLAUWENS   -- the same word machinery in MONOID_LETTER mode.
* COSKELETON -- matching families of vertices and connecting edges for a
  pre-crossed module, coset-normalized so the last vertex is the identity.
* NERVE      -- the bar model of a finite group.

Faces act letterwise on words; a letter at the top position maps to a group
element, which is pushed into the tail, and the quotient by the right group
action simply forgets the tail.  Degree-k truncation by total letter count
is closed under faces, so every length bound yields a simplicial subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .algebra import AugmentedRack, FiniteGroup, PreCrossedModule, conjugation_module
from .errors import IndexOutOfRange, ModeMismatch, ResourceBound
from .words import (
    EnvelopeWord,
    Letter,
    WordContext,
    WordMode,
    context_from_precrossed,
    context_from_rack,
    degeneracy_word,
    encode,
    face_word,
    reduce,
    sort_key,
    strip_tail,
)

SIMPLEX_CAP = 200_000


class SpecKind(Enum):
    ENVELOPE = "envelope"
    CLAUWENS = "clauwens"
    COSKELETON = "coskeleton"
    NERVE = "nerve"


@dataclass(frozen=True)
class Simplex:
    degree: int
    payload: object


class SimplicialSpec:
    """Common contract: enumerate simplices per degree, plus face/degeneracy."""

    kind: SpecKind
    finite_per_degree: bool

    def simplices(self, k: int, length_bound: int | None = None, cap: int | None = None) -> list[Simplex]:
        raise NotImplementedError

    def face(self, simplex: Simplex, i: int) -> Simplex:
        raise NotImplementedError

    def degeneracy(self, simplex: Simplex, i: int) -> Simplex:
        raise NotImplementedError

    def encode(self, simplex: Simplex) -> str:
        raise NotImplementedError

    def sort_key(self, simplex: Simplex):
        return self.encode(simplex)

    def describe(self) -> str:
        return self.kind.value


class WordSpec(SimplicialSpec):
    """Envelope and Clauwens quotients: simplices are pure normal-form words."""

    finite_per_degree = False

    def __init__(self, kind: SpecKind, ctx: WordContext, source):
        self.kind = kind
        self.ctx = ctx
        self.source = source

    def _alphabet(self, k: int) -> list[Letter]:
        ctx = self.ctx
        letters = []
        for j in range(k):
            for b in range(ctx.alphabet_size):
                if ctx.mode is WordMode.GROUP_SYLLABLE:
                    if b != ctx.x_identity:
                        letters.append(Letter(b, 1, j))
                elif ctx.mode is WordMode.FREE_LETTER:
                    letters.append(Letter(b, 1, j))
                    letters.append(Letter(b, -1, j))
                else:
                    letters.append(Letter(b, 1, j))
        return letters

    def _may_follow(self, prev: Letter, nxt: Letter) -> bool:
        if self.ctx.mode is WordMode.GROUP_SYLLABLE:
            return prev.position != nxt.position
        if self.ctx.mode is WordMode.FREE_LETTER:
            return not (prev.base == nxt.base and prev.position == nxt.position and prev.sign == -nxt.sign)
        return True

    def simplices(self, k, length_bound=None, cap=None):
        if length_bound is None:
            raise ResourceBound(f"{self.kind.value} enumeration needs a length bound")
        cap = SIMPLEX_CAP if cap is None else cap
        alphabet = self._alphabet(k)
        ident = self.ctx.group.identity
        words: list[tuple[Letter, ...]] = [()]
        frontier: list[tuple[Letter, ...]] = [()]
        for _ in range(length_bound):
            nxt = []
            for w in frontier:
                for lt in alphabet:
                    if not w or self._may_follow(w[-1], lt):
                        nxt.append(w + (lt,))
            words.extend(nxt)
            if len(words) > cap:
                raise ResourceBound(
                    f"{self.kind.value} degree {k} exceeds {cap} simplices at length {length_bound}"
                )
            frontier = nxt
            if not frontier:
                break
        out = [
            Simplex(k, EnvelopeWord(self.ctx.mode, k, w, ident)) for w in words
        ]
        out.sort(key=self.sort_key)
        return out

    def face(self, simplex, i):
        w = face_word(self.ctx, simplex.payload, i)
        return Simplex(simplex.degree - 1, strip_tail(self.ctx, w))

    def degeneracy(self, simplex, i):
        w = degeneracy_word(self.ctx, simplex.payload, i)
        return Simplex(simplex.degree + 1, strip_tail(self.ctx, w))

    def encode(self, simplex):
        return encode(self.ctx, simplex.payload)

    def sort_key(self, simplex):
        return sort_key(self.ctx, simplex.payload)

    def describe(self):
        return f"{self.kind.value}[{self.ctx.mode.value}]"


@dataclass(frozen=True)
class CoskeletonFamily:
    """Vertices v_0..v_k (v_k = identity) plus one connecting letter per pair a<b."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]  # x_{ab} in lexicographic pair order


def _pairs(k: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(k + 1) for b in range(a + 1, k + 1)]


class CoskeletonSpec(SimplicialSpec):
    """Matching families for the degree-one truncation of a pre-crossed module.

    An edge from vertex a to vertex b is a carrier element x with
    pi(x) = v_a v_b^{-1}; faces delete a vertex with its incident edges and
    degeneracies insert the identity edge over a repeated vertex.
    """

    kind = SpecKind.COSKELETON
    finite_per_degree = True

    def __init__(self, module: PreCrossedModule):
        self.module = module
        g = module.group
        self.preimages: list[list[int]] = [[] for _ in range(g.order)]
        for x, v in enumerate(module.pi):
            self.preimages[v].append(x)

    def simplices(self, k, length_bound=None, cap=None):
        cap = SIMPLEX_CAP if cap is None else cap
        g = self.module.group
        pairs = _pairs(k)
        out = []
        for base in itertools.product(range(g.order), repeat=k):
            vertices = base + (g.identity,)
            choices = []
            ok = True
            for a, b in pairs:
                pre = self.preimages[g.mul(vertices[a], g.inv(vertices[b]))]
                if not pre:
                    ok = False
                    break
                choices.append(pre)
            if not ok:
                continue
            for edges in itertools.product(*choices):
                out.append(Simplex(k, CoskeletonFamily(vertices, edges)))
                if len(out) > cap:
                    raise ResourceBound(f"coskeleton degree {k} exceeds {cap} simplices")
        out.sort(key=self.sort_key)
        return out

    def face(self, simplex, i):
        k = simplex.degree
        if k == 0 or not 0 <= i <= k:
            raise IndexOutOfRange(f"face {i} undefined in degree {k}")
        fam = simplex.payload
        g = self.module.group
        old_index = {p: n for n, p in enumerate(_pairs(k))}

        def delta(a):
            return a if a < i else a + 1

        edges = tuple(fam.edges[old_index[(delta(a), delta(b))]] for a, b in _pairs(k - 1))
        vertices = tuple(v for n, v in enumerate(fam.vertices) if n != i)
        if i == k and vertices[-1] != g.identity:
            tinv = g.inv(vertices[-1])
            vertices = tuple(g.mul(v, tinv) for v in vertices)
        return Simplex(k - 1, CoskeletonFamily(vertices, edges))

    def degeneracy(self, simplex, i):
        k = simplex.degree
        if not 0 <= i <= k:
            raise IndexOutOfRange(f"degeneracy {i} undefined in degree {k}")
        fam = simplex.payload
        old_index = {p: n for n, p in enumerate(_pairs(k))}
        vertices = fam.vertices[: i + 1] + fam.vertices[i:]

        def sigma(a):
            return a if a <= i else a - 1

        edges = []
        for a, b in _pairs(k + 1):
            sa, sb = sigma(a), sigma(b)
            if sa == sb:
                edges.append(self.module.x_group.identity)
            else:
                edges.append(fam.edges[old_index[(sa, sb)]])
        return Simplex(k + 1, CoskeletonFamily(vertices, tuple(edges)))

    def encode(self, simplex):
        fam = simplex.payload
        g = self.module.group
        x = self.module.x_group
        verts = ",".join(g.label(v) for v in fam.vertices)
        edges = ",".join(x.label(e) for e in fam.edges)
        return f"{verts};{edges}"


class NerveSpec(SimplicialSpec):
    """The bar model of a finite group: degree k holds all k-tuples."""

    kind = SpecKind.NERVE
    finite_per_degree = True

    def __init__(self, group: FiniteGroup):
        self.group = group

    def simplices(self, k, length_bound=None, cap=None):
        cap = SIMPLEX_CAP if cap is None else cap
        if self.group.order**k > cap:
            raise ResourceBound(f"nerve degree {k} exceeds {cap} simplices")
        out = [Simplex(k, t) for t in itertools.product(range(self.group.order), repeat=k)]
        out.sort(key=self.sort_key)
        return out

    def face(self, simplex, i):
        k = simplex.degree
        if k == 0 or not 0 <= i <= k:
            raise IndexOutOfRange(f"face {i} undefined in degree {k}")
        t = simplex.payload
        if i == 0:
            new = t[1:]
        elif i == k:
            new = t[:-1]
        else:
            new = t[: i - 1] + (self.group.mul(t[i - 1], t[i]),) + t[i + 1 :]
        return Simplex(k - 1, new)

    def degeneracy(self, simplex, i):
        k = simplex.degree
        if not 0 <= i <= k:
            raise IndexOutOfRange(f"degeneracy {i} undefined in degree {k}")
        t = simplex.payload
        return Simplex(k + 1, t[:i] + (self.group.identity,) + t[i:])

    def encode(self, simplex):
        return "(" + ",".join(self.group.label(v) for v in simplex.payload) + ")"


def build_envelope(obj, mode: WordMode) -> WordSpec:
    """Envelope quotient of a pre-crossed module, or of the free module of a rack."""
    if mode is WordMode.GROUP_SYLLABLE:
        if not isinstance(obj, PreCrossedModule):
            raise ModeMismatch("GROUP_SYLLABLE envelope requires a pre-crossed module")
        return WordSpec(SpecKind.ENVELOPE, context_from_precrossed(obj), obj)
    if mode is WordMode.FREE_LETTER:
        rack = obj.as_augmented_rack() if isinstance(obj, PreCrossedModule) else obj
        if not isinstance(rack, AugmentedRack):
            raise ModeMismatch("FREE_LETTER envelope requires an augmented rack")
        return WordSpec(SpecKind.ENVELOPE, context_from_rack(rack, mode), rack)
    raise ModeMismatch("monoid words belong to the Clauwens builder")


def build_clauwens(obj) -> WordSpec:
    """Quotient of the simplicial free monoid on the rack graph by the group relations."""
    rack = obj.as_augmented_rack() if isinstance(obj, PreCrossedModule) else obj
    if not isinstance(rack, AugmentedRack):
        raise ModeMismatch("the Clauwens builder requires an augmented rack")
    return WordSpec(SpecKind.CLAUWENS, context_from_rack(rack, WordMode.MONOID_LETTER), rack)


def build_coskeleton(module: PreCrossedModule) -> CoskeletonSpec:
    return CoskeletonSpec(module)


def build_nerve(group: FiniteGroup) -> NerveSpec:
    return NerveSpec(group)


def is_degenerate(spec: SimplicialSpec, simplex: Simplex) -> bool:
    """True iff the simplex equals s_i(d_i simplex) for some i (degree >= 1)."""
    if simplex.degree == 0:
        return False
    for i in range(simplex.degree):
        if spec.degeneracy(spec.face(simplex, i), i) == simplex:
            return True
    return False


def enumerate_simplices(spec: SimplicialSpec, k: int, length_bound: int | None = None,
                        cap: int | None = None) -> list[Simplex]:
    """All normal-form simplices of one degree, in canonical text-encoding order."""
    return spec.simplices(k, length_bound=length_bound, cap=cap)


@dataclass
class IdentityReport:
    passed: bool
    simplices_checked: int
    identities_checked: int
    violation: str | None = None


def _subsample(items, sample_size):
    if sample_size is None or len(items) <= sample_size:
        return items
    step = (len(items) + sample_size - 1) // sample_size
    return items[::step]


def check_simplicial_identities(spec: SimplicialSpec, k_max: int, length_bound: int | None = None,
                                sample_size: int | None = None) -> IdentityReport:
    """Verify the five simplicial identity families on enumerated simplices."""
    simplices_checked = 0
    identities = 0
    for k in range(k_max + 1):
        for s in _subsample(spec.simplices(k, length_bound), sample_size):
            simplices_checked += 1
            label = f"{spec.describe()} degree {k} simplex {spec.encode(s)}"
            if k >= 2:
                for j in range(1, k + 1):
                    dj = spec.face(s, j)
                    for i in range(j):
                        identities += 1
                        if spec.face(dj, i) != spec.face(spec.face(s, i), j - 1):
                            return IdentityReport(False, simplices_checked, identities,
                                                  f"d_{i} d_{j} != d_{j-1} d_{i} on {label}")
            for j in range(k + 1):
                sj = spec.degeneracy(s, j)
                for i in range(k + 2):
                    identities += 1
                    got = spec.face(sj, i)
                    if i < j:
                        want = spec.degeneracy(spec.face(s, i), j - 1)
                    elif i in (j, j + 1):
                        want = s
                    else:
                        want = spec.degeneracy(spec.face(s, i - 1), j)
                    if got != want:
                        return IdentityReport(False, simplices_checked, identities,
                                              f"d_{i} s_{j} mismatch on {label}")
                for i in range(j + 1):
                    identities += 1
                    if spec.degeneracy(sj, i) != spec.degeneracy(spec.degeneracy(s, i), j + 1):
                        return IdentityReport(False, simplices_checked, identities,
                                              f"s_{i} s_{j} != s_{j+1} s_{i} on {label}")
    return IdentityReport(True, simplices_checked, identities)


@dataclass
class SimplicialMap:
    """A per-simplex rule between two specs, expected to commute with structure maps."""

    source: SimplicialSpec
    target: SimplicialSpec
    rule: Callable[[Simplex], Simplex]

    def apply(self, simplex: Simplex) -> Simplex:
        return self.rule(simplex)

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        return SimplicialMap(self.source, other.target, lambda s: other.rule(self.rule(s)))

    def check_commutes(self, k_max: int, length_bound: int | None = None,
                       sample_size: int | None = None) -> IdentityReport:
        checked = 0
        identities = 0
        for k in range(k_max + 1):
            for s in _subsample(self.source.simplices(k, length_bound), sample_size):
                checked += 1
                fs = self.apply(s)
                label = f"degree {k} simplex {self.source.encode(s)}"
                for i in range(k + 1):
                    if k >= 1:
                        identities += 1
                        if self.apply(self.source.face(s, i)) != self.target.face(fs, i):
                            return IdentityReport(False, checked, identities,
                                                  f"map fails d_{i} on {label}")
                    identities += 1
                    if self.apply(self.source.degeneracy(s, i)) != self.target.degeneracy(fs, i):
                        return IdentityReport(False, checked, identities,
                                              f"map fails s_{i} on {label}")
        return IdentityReport(True, checked, identities)


def canonical_to_coskeleton(module: PreCrossedModule) -> SimplicialMap:
    """Evaluate each envelope word on the vertices and edges of its simplex.

    Vertex a is the iterated face keeping only vertex a; the edge over a < b
    is the iterated face keeping the pair.  Evaluations are taken with tails
    (before the group quotient) so the family matches, then coset-normalized.
    """
    source = build_envelope(module, WordMode.GROUP_SYLLABLE)
    target = build_coskeleton(module)
    ctx = source.ctx
    g = module.group

    def evaluate(word: EnvelopeWord, keep: tuple[int, ...]) -> EnvelopeWord:
        w = word
        for idx in range(word.degree, -1, -1):
            if idx not in keep:
                w = face_word(ctx, w, idx)
        return w

    def rule(simplex: Simplex) -> Simplex:
        k = simplex.degree
        word = simplex.payload
        verts = [evaluate(word, (a,)).tail for a in range(k + 1)]
        edges = []
        for a, b in _pairs(k):
            w = evaluate(word, (a, b))
            x = w.letters[0].base if w.letters else module.x_group.identity
            if w.tail != verts[b] or g.mul(module.pi[x], w.tail) != verts[a]:
                raise AssertionError("vertex/edge evaluations do not match")
            edges.append(x)
        t = verts[k]
        if t != g.identity:
            tinv = g.inv(t)
            verts = [g.mul(v, tinv) for v in verts]
        return Simplex(k, CoskeletonFamily(tuple(verts), tuple(edges)))

    return SimplicialMap(source, target, rule)


def envelope_pi_map(obj) -> SimplicialMap:
    """Push envelope letters through pi into the conjugation module of the base group.

    For an augmented rack this realizes the natural comparison from the free
    envelope to the envelope of id: G -> G; composing with
    canonical_to_coskeleton lands in a finite coskeleton model.
    """
    if isinstance(obj, PreCrossedModule):
        source = build_envelope(obj, WordMode.GROUP_SYLLABLE)
        pi = obj.pi
        group = obj.group
    elif isinstance(obj, AugmentedRack):
        source = build_envelope(obj, WordMode.FREE_LETTER)
        pi = obj.pi
        group = obj.group
    else:
        raise ModeMismatch("envelope_pi_map requires a module or augmented rack")
    target_module = conjugation_module(group)
    target = build_envelope(target_module, WordMode.GROUP_SYLLABLE)
    tctx = target.ctx

    def rule(simplex: Simplex) -> Simplex:
        letters = []
        for b, s, j in simplex.payload.letters:
            base = pi[b] if s > 0 else group.inv(pi[b])
            letters.append(Letter(base, 1, j))
        return Simplex(simplex.degree, reduce(tctx, simplex.degree, letters))

    return SimplicialMap(source, target, rule)
