"""The Zeiger property embedding of Rh_Y(M^I) into an iterated wreath
product and its verification suite.

Tree vertices are the classes of the Chiswell tree of the H length
function; the chain stored in a vertex is the least chain of its class,
which is in minimal representation.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .elliptic import chiswell_build, is_minimal
from .exceptions import LabelingError, SequentialError
from .length import AxiomReport, HLength
from .monoid import adjoin_identity, compute_green
from .rees import Rees
from .rhodes import build_rh_y, chain_product, zeiger_encode
from .wreath import PartialMap, SequentialMap, check_locally_injective, \
    closure, ray_encoding, wreath_length_table


@dataclass(frozen=True, order=True)
class Symbol:
    """A letter of one of the alphabets X_i.

    kind is 'down', 'A', 'A*', 'G*' or 'GQ'.  Every letter is tagged by the
    R-class id of the element it was built from; b is a global L-class id.
    """

    kind: str
    tag: int = -1
    a: int = -1
    g: int = -1
    b: int = -1

    def __str__(self):
        if self.kind == 'down':
            return 'v'
        if self.kind == 'A':
            return 'R%s:%s' % (self.tag, self.a + 1)
        if self.kind == 'A*':
            return 'R%s:(%s,*)' % (self.tag, self.a + 1)
        if self.kind == 'G*':
            return 'R%s:(%s,*)' % (self.tag, self.g + 1)
        return 'R%s:(%s,L%s)' % (self.tag, self.g + 1, self.b)


DOWN = Symbol('down')


class USets(object):
    """The sets U_0(k) to U_4(k) of M^I."""

    def __init__(self, rees, hlength):
        """Classify every element of M^I."""
        self.rees = rees
        self.hlength = hlength
        self.top = int(hlength.h.max())
        self.sets = dict(((i, k), set()) for i in range(5)
                         for k in range(self.top + 1))
        for m in range(rees.monoid.size):
            k = int(hlength.h[m])
            view = rees.view(m)
            local = rees.local_sets(m)
            n_a, n_g = len(view.A), view.group_order
            n_q = len(local.q_set)
            if m in hlength.w:
                if n_a > 1:
                    self.sets[(0, k)].add(m)
                if n_g * (1 + n_q) > 1:
                    self.sets[(2, k)].add(m)
            else:
                if n_a + len(local.a_prime) > 1:
                    self.sets[(1, k)].add(m)
                if n_g > 1:
                    self.sets[(3, k)].add(m)
                if n_g * n_q > 1:
                    self.sets[(4, k)].add(m)

    def __call__(self, i, k):
        return self.sets.get((i, k), set())

    def check_r_closed(self):
        """Return None if every U-set is a union of R-classes."""
        green = self.rees.green
        for (i, k), members in sorted(self.sets.items()):
            for m in members:
                for other in green.R_class(m):
                    if other not in members:
                        return (i, k, m, other)
        return None


def build_alphabets(rees, hlength, usets=None):
    """Return X_1 .. X_delta, each a sorted tuple of Symbols."""
    usets = usets or USets(rees, hlength)
    green = rees.green
    alphabets = []
    for k in range(usets.top + 1):
        odd = {DOWN}
        for m in usets(0, k) | usets(1, k):
            view = rees.view(m)
            odd.update(Symbol('A', int(green.R[m]), a=a)
                       for a in range(len(view.A)))
        for m in usets(1, k):
            odd.update(Symbol('A*', int(green.R[m]), a=a)
                       for a in rees.local_sets(m).a_prime)
        even = {DOWN}
        for m in usets(2, k) | usets(3, k) | usets(4, k):
            tag = int(green.R[m])
            groups = range(rees.view(m).group_order)
            q_set = rees.local_sets(rees.anchor(m)).q_set
            if m in usets(2, k) or m in usets(3, k):
                even.update(Symbol('G*', tag, g=g) for g in groups)
            if m in usets(2, k) or m in usets(4, k):
                even.update(Symbol('GQ', tag, g=g, b=q)
                            for g in groups for q in q_set)
        alphabets.append(tuple(sorted(odd)))
        alphabets.append(tuple(sorted(even)))
    logging.debug("Alphabet sizes: %s" % [len(x) for x in alphabets])
    return alphabets


class Labeling(object):
    """The labels f(w) of the non-root vertices and the case used."""

    def __init__(self, f, cases):
        """Keep the labels and the case names F1 to F6."""
        self.f = f
        self.cases = cases

    def __getitem__(self, w):
        return self.f[w]

    def __contains__(self, w):
        return w in self.f

    def symbols_at(self, tree, level):
        """Return the labels used at one depth."""
        return set(self.f[w] for w in tree.level(level))


def son_label(rees, hlength, n, sigma, tau):
    """Label the son [n+1, tau] of the vertex [n, sigma].

    Both chains are in minimal representation at their levels.
    """
    green = rees.green
    k = n // 2
    l = sigma.length
    if n % 2 == 0:
        tag = int(green.R[sigma.term(l)])
        if tau.length == l:
            return Symbol('A', tag, a=rees.coords(tau.term(l))[0]), 'F2'
        if tau.length == l + 1:
            return Symbol('A*', tag, a=rees.coords(tau.term(l))[0]), 'F3'
    else:
        eps = zeiger_encode(rees, tau)
        if int(hlength.h[sigma.top]) == k:
            x = eps.term(l)
            if tau.length == l:
                return Symbol('G*', int(green.R[x]),
                              g=rees.coords(x)[1]), 'F4'
            if tau.length == l + 1:
                return Symbol('GQ', int(green.R[x]), g=rees.coords(x)[1],
                              b=int(green.L[eps.term(l + 1)])), 'F5'
        elif l >= 1 and tau.length == l:
            x = eps.term(l - 1)
            return Symbol('GQ', int(green.R[x]), g=rees.coords(x)[1],
                          b=int(green.L[eps.term(l)])), 'F6'
    raise LabelingError("No labeling case applies to the son %s of %s at "
                        "level %s" % (tau.terms, sigma.terms, n),
                        witness=(n, sigma.terms, tau.terms))


def label_tree(chi, rh, rees, hlength):
    """Label every non-root vertex of the H tree by (F1) to (F6)."""
    tree = chi.tree
    f, cases = {}, {}
    for v in tree.vertices:
        sons = tree.sons(v)
        if len(sons) == 1:
            f[sons[0]], cases[sons[0]] = DOWN, 'F1'
            continue
        sigma = rh.chain(v[1])
        for w in sons:
            f[w], cases[w] = son_label(rees, hlength, tree.depth[v],
                                       sigma, rh.chain(w[1]))
    bad = check_locally_injective(tree, f)
    if bad is not None:
        raise LabelingError("Labels are not injective on the sons of %s"
                            % (bad,), witness=bad)
    return Labeling(f, cases)


def embedding_generators(monoid, generators=None):
    """Return Y, adding 1 when it is not a non-empty product."""
    if generators is None:
        generators = [g for _, g in monoid.generators] or \
            list(range(monoid.size))
    generators = sorted(set(int(y) for y in generators))
    if monoid.identity not in monoid.closure(generators, generators):
        logging.debug("Adding the identity to the generators")
        generators.append(monoid.identity)
    return sorted(generators)


class ZeigerEmbedding(object):
    """phi: Rh_Y(M^I) -> (X_delta, M_delta) o ... o (X_1, M_1)."""

    def __init__(self, monoid, generators=None):
        """Run the whole construction for a finite monoid M."""
        self.monoid = monoid
        self.generators = embedding_generators(monoid, generators)
        self.base = adjoin_identity(monoid)
        self.green = compute_green(self.base)
        self.rees = Rees(self.base, self.green, self.generators)
        self.hlength = HLength(self.base, self.green)
        self.rh = build_rh_y(self.base, self.generators, self.green)
        self.H = self.hlength.table(self.rh)
        names = [self.rh.name(i) for i in range(self.rh.size)]
        self.chi = chiswell_build(self.H, self.rh.identity, names)
        self.tree = self.chi.tree
        self.depth = self.tree.height
        self.usets = USets(self.rees, self.hlength)
        self.declared = build_alphabets(self.rees, self.hlength, self.usets)
        self.labels = label_tree(self.chi, self.rh, self.rees, self.hlength)
        self.alphabets = []
        for i in range(1, self.depth + 1):
            used = self.labels.symbols_at(self.tree, i)
            self.alphabets.append(tuple(sorted(set(self.declared[i - 1]) |
                                               used)))
        self.psi = ray_encoding(self.tree, self.labels.f)
        self.maps = [self.phi(s) for s in range(self.rh.size)]
        self.local_monoids = self._local_monoids()
        logging.debug("Zeiger embedding: %s chains, depth %s, local orders "
                      "%s" % (self.rh.size, self.depth,
                              [len(m) for m in self.local_monoids]))

    def phi(self, s):
        """Return phi_sigma for the chain with id s."""
        tree, chi, psi = self.tree, self.chi, self.psi
        mapping = dict((psi[v], psi[chi.act(v, s)]) for v in tree.vertices)
        for u in tree.vertices:
            i = tree.depth[u] + 1
            if i > self.depth:
                continue
            if len(set(chi.act(w, s) for w in tree.sons(u))) < 2:
                continue
            target = psi[chi.act(u, s)]
            for x in self.alphabets[i - 1]:
                mapping.setdefault((x,) + psi[u], (x,) + target)
        return SequentialMap(self.alphabets, mapping)

    def _local_monoids(self):
        """Close the local components of every phi_sigma level by level."""
        monoids = []
        for i in range(1, self.depth + 1):
            found = set()
            for phi in self.maps:
                for prefix in phi.domain_at(i - 1):
                    found.add(phi.local_component(prefix, i))
            reached = closure(found, self.alphabets[i - 1])
            reached.add(PartialMap())
            monoids.append(reached)
        return monoids

    def chain_of(self, v):
        """Return the minimal chain stored in a vertex."""
        return self.rh.chain(v[1])

    def acting_index(self, v):
        """Return d with m_d the term deciding whether Sons(v) moves."""
        n = self.tree.depth[v]
        sigma = self.chain_of(v)
        if n % 2 == 1 and int(self.hlength.h[sigma.top]) > (n - 1) // 2:
            return sigma.length - 1
        return sigma.length


def zeiger_embed(monoid, generators=None):
    """Build the Zeiger embedding of Rh_Y(M^I)."""
    return ZeigerEmbedding(monoid, generators)


def son_map_report(emb):
    """Return None if the son maps behave as the R-condition predicts."""
    tree, chi, green = emb.tree, emb.chi, emb.green
    table = emb.base.table
    labels = emb.labels
    for v in tree.vertices:
        sons = tree.sons(v)
        if len(sons) < 2:
            continue
        m = emb.chain_of(v).term(emb.acting_index(v))
        odd_sons = (tree.depth[v] + 1) % 2 == 1
        for s in range(emb.rh.size):
            y = emb.rh.chain(s).top
            moved = set(chi.act(w, s) for w in sons)
            kept = green.R[table[m, y]] == green.R[m]
            if (len(moved) > 1) != kept:
                return ('iff', v, s)
            if not kept:
                continue
            target = chi.act(v, s)
            if moved != set(tree.sons(target)) or len(moved) != len(sons):
                return ('bijection', v, s)
            if odd_sons:
                if any(labels[chi.act(w, s)] != labels[w] for w in sons):
                    return ('labels', v, s)
            elif set(labels[w] for w in tree.sons(target)) != \
                    set(labels[w] for w in sons):
                return ('labels', v, s)
    return None


def check_minimal_preserved(emb):
    """Return None if v sigma stays minimal whenever some m_j sigma R m_j."""
    tree, green = emb.tree, emb.green
    table = emb.base.table
    for v in tree.vertices:
        rho = emb.chain_of(v)
        n = tree.depth[v]
        for s in range(emb.rh.size):
            sigma = emb.rh.chain(s)
            y = sigma.top
            if not any(green.R[table[rho.term(j), y]] == green.R[rho.term(j)]
                       for j in range(rho.length)):
                continue
            if not is_minimal(emb.hlength, n,
                              chain_product(green, rho, sigma)):
                return (v, s)
    return None


def _block_shift(rees, green, x, y):
    """Return g0 with y = x shifted by g0, or None if y is not a shift."""
    if (x.kind, x.tag, x.a, x.b) != (y.kind, y.tag, y.a, y.b):
        return None
    view = rees.view(green.R_classes[x.tag][0])
    return view.g_mul(view.g_inv(x.g), y.g)


def permutation_blocks(emb, xi):
    """Split a permutation into per R-class shifts g -> g g0.

    The G* and GQ letters of one R-class share their g0.  Returns the
    dict R-class id -> g0, or None if xi is not of that form.
    """
    shifts = {}
    for x, y in xi.items():
        if x.kind == 'down' or x.kind in ('A', 'A*'):
            if x != y:
                return None
            continue
        g0 = _block_shift(emb.rees, emb.green, x, y)
        if g0 is None or shifts.setdefault(x.tag, g0) != g0:
            return None
    return shifts


def _is_local_permutation(xi, alphabet):
    return xi.is_permutation(alphabet) and len(alphabet) > 1


def verify_embedding(emb, skip_recover=False):
    """Run every check on a Zeiger embedding; return an AxiomReport."""
    report = AxiomReport()
    maps, rh = emb.maps, emb.rh

    witness = None
    for s, phi in enumerate(maps):
        try:
            phi.validate()
        except SequentialError as e:
            witness = (s, getattr(e, 'witness', None))
            break
    report.record('sequential', witness)

    witness = None
    for s in range(rh.size):
        for t in range(rh.size):
            if maps[s].compose(maps[t]) != maps[rh.mul(s, t)]:
                witness = (s, t)
                break
        if witness is not None:
            break
    report.record('homomorphism', witness)

    seen = {}
    witness = None
    for s, phi in enumerate(maps):
        if seen.setdefault(phi, s) != s:
            witness = (seen[phi], s)
            break
    report.record('injective', witness)

    witness = None
    for i in range(1, emb.depth + 1):
        extra = emb.labels.symbols_at(emb.tree, i) - \
            set(emb.declared[i - 1])
        if extra:
            witness = (i, str(sorted(extra)[0]))
            break
    report.record('alphabets', witness)
    report.record('u_sets', emb.usets.check_r_closed())

    odd, even, blocks = None, None, None
    for i, monoid in enumerate(emb.local_monoids, start=1):
        alphabet = emb.alphabets[i - 1]
        for xi in sorted(monoid, key=repr):
            if i % 2 == 1:
                if odd is None and not (xi.is_identity(alphabet) or
                                        xi.is_constant()):
                    odd = (i, repr(xi))
            elif xi.is_constant():
                continue
            elif not xi.is_permutation(alphabet):
                even = even or (i, repr(xi))
            elif blocks is None and permutation_blocks(emb, xi) is None:
                blocks = (i, repr(xi))
    report.record('odd_levels', odd)
    report.record('even_levels', even)
    report.record('permutation_blocks', blocks)
    report.record('Zeiger', check_zeiger(emb))
    report.record('son_maps', son_map_report(emb))
    report.record('minimal_reps', check_minimal_preserved(emb))

    if not skip_recover:
        D = wreath_length_table(maps, rh.table)
        diff = np.argwhere(D.values != emb.H.values)
        report.record('recover', tuple(int(i) for i in diff[0])
                      if len(diff) else None)
    logging.debug("Embedding report: %r" % report)
    return report


def check_zeiger(emb):
    """Return None if a permutation at level 2k+2 fixes all deeper labels."""
    tree, psi = emb.tree, emb.psi
    for s, phi in enumerate(emb.maps):
        for u in tree.vertices:
            depth = tree.depth[u]
            if depth % 2 == 0 or depth + 1 > emb.depth:
                continue
            xi = phi.local_component(psi[u], depth + 1)
            if not _is_local_permutation(xi, emb.alphabets[depth]):
                continue
            for w in tree.descendants(u):
                if tree.depth[w] >= emb.depth:
                    continue
                below = phi.local_component(psi[w], tree.depth[w] + 1)
                if not below.is_partial_identity():
                    return (s, u, w)
    return None


def local_permutation_groups(emb):
    """Return level -> set of non-identity permutations in M_level."""
    groups = {}
    for i, monoid in enumerate(emb.local_monoids, start=1):
        alphabet = emb.alphabets[i - 1]
        perms = [xi for xi in monoid if xi.is_permutation(alphabet) and
                 not xi.is_identity(alphabet)]
        if perms:
            groups[i] = perms
    return groups
