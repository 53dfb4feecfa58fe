"""The Rhodes expansion, its cut-down to generators and the Phi_3 expansion.

Chains are stored leftmost term first, so the chain
m_k <_L ... <_L m_1 <_L m_0 = I is the tuple (m_k, ..., m_1, I).
"""
import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from .exceptions import BurnsideError, OrderError
from .monoid import FiniteMonoid, adjoin_identity, check_homomorphism, \
    check_identity, compute_green, is_aperiodic_morphism


@dataclass(frozen=True)
class LChain:
    """A strict L-chain ending at I, leftmost term first."""

    terms: tuple

    @property
    def length(self):
        """Return k for the chain m_k < ... < m_0."""
        return len(self.terms) - 1

    @property
    def top(self):
        """Return the leftmost term m_k."""
        return self.terms[0]

    def term(self, i):
        """Return m_i."""
        return self.terms[len(self.terms) - 1 - i]

    def prefix(self, i):
        """Return the chain m_i < ... < m_0."""
        return LChain(self.terms[len(self.terms) - 1 - i:])

    def extend(self, m):
        """Return the chain with m stacked on top."""
        return LChain((m,) + self.terms)


@dataclass(frozen=True)
class JChain:
    """A strict J-chain x_k <_J ... <_J x_0 = I, leftmost first."""

    terms: tuple

    def prefix(self, i):
        """Return the chain x_i < ... < x_0."""
        return JChain(self.terms[len(self.terms) - 1 - i:])

    def term(self, i):
        """Return x_i."""
        return self.terms[len(self.terms) - 1 - i]


def chain_name(monoid, chain):
    """Render a chain as 'm_k<...<I'."""
    return '<'.join(monoid.names[m] for m in chain.terms)


def lm_reduce(green, weak):
    """Keep the leftmost term of each L-class of a <=_L chain."""
    weak = [int(m) for m in weak]
    identity = green.monoid.identity
    if not weak or weak[-1] != identity:
        raise OrderError("Chain does not end at the identity", witness=weak)
    for i in range(len(weak) - 1):
        if not green.leq_L[weak[i], weak[i + 1]]:
            raise OrderError("Chain is not <=_L descending at position %s"
                             % i, witness=(weak[i], weak[i + 1]))
    kept = [weak[0]]
    for m in weak[1:]:
        if green.L[m] != green.L[kept[-1]]:
            kept.append(m)
    return LChain(tuple(kept))


def chain_product(green, sigma, tau):
    """Multiply two chains in the Rhodes expansion."""
    table = green.monoid.table
    y = tau.top
    weak = [table[m, y] for m in sigma.terms] + list(tau.terms[1:])
    return lm_reduce(green, weak)


def wedge_index(green, sigma, tau):
    """Return r, the index of the maximum L-point of agreement."""
    r = 0
    for i in range(min(sigma.length, tau.length) + 1):
        m, n = sigma.term(i), tau.term(i)
        if green.L[m] == green.L[n]:
            r = i
        else:
            break
        if m != n:
            break
    return r


def wedge_L(green, sigma, tau):
    """Return sigma ^_L tau, a term of sigma."""
    return sigma.term(wedge_index(green, sigma, tau))


def eta_project(sigma):
    """Return the leftmost term of a chain."""
    return sigma.top


class RhodesMonoid(object):
    """A finite set of L-chains closed under the Rhodes product."""

    def __init__(self, base, green, chains, cut_to=None):
        """Sort the chains and tabulate the product."""
        self.base = base
        self.green = green
        self.cut_to = tuple(cut_to) if cut_to is not None else None
        self.elements = sorted(chains, key=lambda c: (c.length, c.terms))
        self._index = dict((c, i) for i, c in enumerate(self.elements))
        n = len(self.elements)
        self.size = n
        self.table = np.empty((n, n), dtype=np.int64)
        for i, sigma in enumerate(self.elements):
            for j, tau in enumerate(self.elements):
                self.table[i, j] = self._index[chain_product(green, sigma,
                                                             tau)]
        self.identity = self._index[LChain((base.identity,))]
        self.eta = np.array([c.top for c in self.elements], dtype=np.int64)
        logging.debug("Rhodes monoid with %s chains (cut to %s)"
                      % (n, self.cut_to))

    def index(self, chain):
        """Return the id of a chain."""
        return self._index[chain]

    def __contains__(self, chain):
        return chain in self._index

    def mul(self, i, j):
        """Multiply two chain ids."""
        return int(self.table[i, j])

    def chain(self, i):
        """Return the chain with id i."""
        return self.elements[i]

    def name(self, i):
        """Return the display form of chain i."""
        return chain_name(self.base, self.elements[i])

    def as_monoid(self):
        """Return the expansion as a FiniteMonoid."""
        generators = []
        if self.cut_to is not None:
            for y in self.cut_to:
                chain = LChain((y, self.base.identity))
                if chain not in self._index:
                    continue
                generators.append((self.base.names[y], self._index[chain]))
        names = [self.name(i) for i in range(self.size)]
        return FiniteMonoid(self.table, self.identity, generators, names)


def _close(green, start, generators):
    """Close a set of chains under right multiplication by generators."""
    seen = set(start)
    queue = deque(start)
    while queue:
        sigma = queue.popleft()
        for g in generators:
            rho = chain_product(green, sigma, g)
            if rho not in seen:
                seen.add(rho)
                queue.append(rho)
    return seen


def build_rh(monoid, green=None):
    """Enumerate every strict L-chain of M^I ending at I."""
    green = green or compute_green(monoid)
    identity = monoid.identity
    chains = []
    stack = [LChain((identity,))]
    while stack:
        chain = stack.pop()
        chains.append(chain)
        for m in np.flatnonzero(green.lt_L[:, chain.top]):
            stack.append(chain.extend(int(m)))
    singles = [LChain((m, identity)) for m in range(monoid.size)
               if green.lt_L[m, identity]]
    closure = _close(green, [LChain((identity,))], singles)
    if closure != set(chains):
        raise OrderError("Chains (m <_L I) do not generate every chain",
                         witness=sorted(set(chains) ^ closure,
                                        key=lambda c: c.terms)[0])
    return RhodesMonoid(monoid, green, chains)


def build_rh_y(monoid, generators, green=None):
    """Close the chains (y <_L I) for y in the given generators."""
    green = green or compute_green(monoid)
    identity = monoid.identity
    generators = sorted(set(int(y) for y in generators))
    singles = [LChain((y, identity)) for y in generators
               if green.lt_L[y, identity]]
    closure = _close(green, [LChain((identity,))], singles)
    return RhodesMonoid(monoid, green, closure, generators)


def zeiger_encode(rees, sigma):
    """Return the J-chain x_i = m_i m*_(i-1), x_0 = I."""
    table = rees.monoid.table
    xs = [sigma.term(0)]
    for i in range(1, sigma.length + 1):
        xs.append(int(table[sigma.term(i), rees.star[sigma.term(i - 1)]]))
    return JChain(tuple(reversed(xs)))


def check_expansion_properties(rh):
    """Check that eta is an aperiodic morphism reflecting idempotents.

    Returns a dict of named results; failures carry a witness.
    """
    base = rh.base
    report = {}
    as_monoid = rh.as_monoid()
    witness = check_homomorphism(as_monoid, base, rh.eta)
    report['homomorphism'] = (witness is None, witness)
    image = set(int(m) for m in rh.eta)
    if rh.cut_to is None:
        expected = set(range(base.size))
    else:
        expected = base.closure([base.identity], rh.cut_to)
    missing = sorted(expected - image)
    report['surjective'] = (not missing, missing[0] if missing else None)
    if witness is None:
        report['aperiodic'] = (is_aperiodic_morphism(as_monoid, base,
                                                     rh.eta), None)
    else:
        report['aperiodic'] = (False, witness)
    bad = None
    for i in range(rh.size):
        if as_monoid.is_idempotent(i) != base.is_idempotent(int(rh.eta[i])):
            bad = i
            break
    report['idempotents'] = (bad is None, bad)
    if rh.cut_to is None and \
            all(base.is_regular(m) for m in range(base.size)):
        bad = None
        for i in range(rh.size):
            if not as_monoid.is_regular(i):
                bad = i
                break
        report['regularity'] = (bad is None, bad)
    return report


def _note(first, key, witness):
    if first[key] is None:
        first[key] = witness


def check_encoding(rees, rh):
    """Check the properties of the Zeiger encoding on every chain."""
    green = rees.green
    table = rees.monoid.table
    report = {}
    encoded = {}
    first = {'coordinates': None, 'sequential': None}
    for sigma in rh.elements:
        eps = zeiger_encode(rees, sigma)
        encoded[sigma] = eps
        for i in range(sigma.length + 1):
            x, m = eps.term(i), sigma.term(i)
            if green.R[x] != green.R[m]:
                _note(first, 'coordinates', ('i', sigma.terms, i))
            if i == 0:
                continue
            prev = eps.term(i - 1)
            anchor = rees.anchor(prev)
            if not green.lt_L[x, anchor]:
                _note(first, 'coordinates', ('ii', sigma.terms, i))
            if not green.lt_J[x, prev]:
                _note(first, 'coordinates', ('iii', sigma.terms, i))
            if table[x, rees.sharp[sigma.term(i - 1)]] != m:
                _note(first, 'coordinates', ('iv', sigma.terms, i))
        if sigma.length > 0:
            if zeiger_encode(rees, sigma.prefix(sigma.length - 1)) != \
                    eps.prefix(sigma.length - 1):
                _note(first, 'sequential', sigma.terms)
    report['coordinates'] = (first['coordinates'] is None,
                             first['coordinates'])
    report['sequential'] = (first['sequential'] is None,
                            first['sequential'])
    images = {}
    clash = None
    for sigma, eps in encoded.items():
        if eps in images and clash is None:
            clash = (images[eps].terms, sigma.terms)
        images[eps] = sigma
    report['injective'] = (clash is None, clash)
    report['splice'] = (True, None)
    witness = check_splice(rees, rh, encoded)
    if witness is not None:
        report['splice'] = (False, witness)
    return report


def check_splice(rees, rh, encoded=None):
    """Return None if encodings splice over R-preserving products."""
    green = rees.green
    if encoded is None:
        encoded = dict((s, zeiger_encode(rees, s)) for s in rh.elements)
    for longer in rh.elements:
        for tau in rh.elements:
            whole = zeiger_encode(rees, chain_product(green, longer, tau))
            for k in range(longer.length + 1):
                sigma = longer.prefix(k)
                product = chain_product(green, sigma, tau)
                if green.R[sigma.top] != green.R[product.top]:
                    continue
                p = longer.length - k
                head = encoded[longer].terms[:p]
                expected = head + zeiger_encode(rees, product).terms
                if whole.terms != expected:
                    return (longer.terms, k, tau.terms)
    return None


def check_wedge_translation(rh):
    """Return None if left translation never raises the L-wedge."""
    green = rh.green
    elements = rh.elements
    for rho in range(rh.size):
        for s in range(rh.size):
            for t in range(rh.size):
                lhs = wedge_L(green, elements[rh.mul(rho, s)],
                              elements[rh.mul(rho, t)])
                rhs = wedge_L(green, elements[s], elements[t])
                if not green.leq_L[lhs, rhs]:
                    return (rho, s, t)
    return None


def check_cut_membership(rh):
    """Return None if Rh_Y is closed under prefixes and L-moves on top."""
    green = rh.green
    for sigma in rh.elements:
        for i in range(sigma.length):
            if sigma.prefix(i) not in rh:
                return ('prefix', sigma.terms, i)
        if sigma.length == 0:
            continue
        rest = sigma.prefix(sigma.length - 1)
        for m in green.L_class(sigma.top):
            if rest.extend(m) not in rh:
                return ('top', sigma.terms, m)
    return None


def burnside_identity_check(rh, p, q):
    """Return True if sigma^(p+q) = sigma^p on every chain."""
    witness = check_identity(rh.base, p, q)
    if witness is not None:
        raise BurnsideError("x^%s = x^%s fails for x = %s"
                            % (p + q, p, rh.base.names[witness]),
                            witness=witness)
    as_monoid = rh.as_monoid()
    for i in range(rh.size):
        if as_monoid.power(i, p + q) != as_monoid.power(i, p):
            logging.debug("Chain %s breaks the identity" % rh.name(i))
            return False
    return True


def eta_injective(rh):
    """Return True if eta separates the chains."""
    return len(set(int(m) for m in rh.eta)) == rh.size


class Phi3(object):
    """The Phi_3 expansion with the empty factorization as identity."""

    def __init__(self, monoid, elements, table, generators):
        """Store the closure and its projection to M^I."""
        self.base = monoid
        self.elements = elements
        identity = monoid.identity
        self.eta = np.empty(len(elements), dtype=np.int64)
        for i, triples in enumerate(elements):
            for x, y, z in triples:
                if y == identity and z == identity:
                    self.eta[i] = x
        names = ['{' + ' '.join('(%s,%s,%s)' % tuple(monoid.names[t]
                                                    for t in triple)
                                for triple in triples) + '}'
                 for triples in elements]
        self.monoid = FiniteMonoid(table, 0, generators, names,
                                   validate=False)

    @property
    def size(self):
        """Return the number of elements."""
        return len(self.elements)


def phi3_product(monoid, left, right):
    """Multiply two triple sets F_3(w) F_3(w')."""
    table = monoid.table
    identity = monoid.identity
    p = next(x for x, y, z in left if y == identity and z == identity)
    p2 = next(x for x, y, z in right if y == identity and z == identity)
    result = set()
    for x, y, z in left:
        result.add((x, y, int(table[z, p2])))
    for x, y, z in right:
        result.add((int(table[p, x]), y, z))
    splits_left = [(x, z) for x, y, z in left if y == identity]
    splits_right = [(x, z) for x, y, z in right if y == identity]
    for a, b in splits_left:
        for c, d in splits_right:
            result.add((a, int(table[b, c]), d))
    return tuple(sorted(result))


def phi3_build(monoid, generators=None):
    """Close F_3(m) (or F_3(y) for y in generators) in M^I.

    monoid is the semigroup M; triples live in M^I with I as the empty
    product.
    """
    base = adjoin_identity(monoid)
    I = base.identity
    letters = range(monoid.size) if generators is None \
        else sorted(set(generators))
    singles = [tuple(sorted({(m, I, I), (I, m, I), (I, I, m)}))
               for m in letters]
    identity = ((I, I, I),)
    index = {identity: 0}
    elements = [identity]
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for s in singles:
            prod = phi3_product(base, current, s)
            if prod not in index:
                index[prod] = len(elements)
                elements.append(prod)
                queue.append(prod)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, left in enumerate(elements):
        for j, right in enumerate(elements):
            table[i, j] = index[phi3_product(base, left, right)]
    gens = [(base.names[m], index[s]) for m, s in zip(letters, singles)]
    logging.debug("Phi_3 closure has %s elements" % n)
    return Phi3(base, elements, table, gens)


def check_phi3(phi3):
    """Check eta is an aperiodic morphism onto the image."""
    report = {}
    witness = check_homomorphism(phi3.monoid, phi3.base, phi3.eta)
    report['homomorphism'] = (witness is None, witness)
    if witness is None:
        report['aperiodic'] = (is_aperiodic_morphism(phi3.monoid, phi3.base,
                                                     phi3.eta), None)
    return report
