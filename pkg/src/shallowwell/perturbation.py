"""Energy corrections E(2)..E(6) as cluster-term sums.

Every correction order reduces to a sum of terms of the form

    coeff * (product of single-site moments mu_k) * (product of chains)

where a chain is the multi-variable integral of alternating potential
factors and |x_i - x_j|^k kernels along a simple path of sites. The
fourth and fifth orders are short enough to write as closed-form code;
the sixth order ships as a static data table of ClusterTerms so that it
can be audited and cross-checked term by term. Tables for orders 2-5 are
shipped too and are tested for equivalence with the closed forms.

Table dump format (one term per line, '#' comments):

    coeff | p1 p2 ... pn | i-j:k i-j:k ...

coeff is an exact rational, p1..pn are per-site polynomial powers (the
site count is the number of powers listed), and each link i-j:k stands
for a factor |x_i - x_j|^k. Links must form disjoint simple paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import NonPathComponent, UnsupportedChain
from .potential import Potential
from .quadrature import QuadratureGrid, build_grid, contract, default_grid, integrate

_MAX_MOMENT = 4
_MAX_CHAIN_LINKS = 4
_MAX_LINK_POWER = 3


@dataclass(frozen=True)
class ClusterTerm:
    """One additive term of a correction order.

    coefficient: exact rational prefactor.
    site_powers: per-site exponent of x_i (length = site count).
    links: (i, j, k) factors |x_i - x_j|^k with 1-based site indices.
    """

    coefficient: Fraction
    site_powers: tuple
    links: tuple

    @property
    def site_count(self) -> int:
        return len(self.site_powers)

    @property
    def degree(self) -> int:
        return sum(self.site_powers) + sum(k for _, _, k in self.links)

    def components(self):
        """Split sites into link paths and isolated sites.

        Returns (paths, isolated) where each path is an ordered site
        tuple and carries the list of link powers along it.

        Raises:
            NonPathComponent: links branch or close a cycle.
        """
        n = self.site_count
        neighbors = {i: [] for i in range(1, n + 1)}
        power = {}
        for i, j, k in self.links:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise NonPathComponent(f"bad link endpoints ({i},{j}) for {n} sites")
            key = (min(i, j), max(i, j))
            if key in power:
                raise NonPathComponent(f"duplicate link {key}")
            neighbors[i].append(j)
            neighbors[j].append(i)
            power[key] = k
        for i, nb in neighbors.items():
            if len(nb) > 2:
                raise NonPathComponent(f"site {i} has {len(nb)} links (branching)")
        seen = set()
        paths = []
        isolated = []
        for start in range(1, n + 1):
            if start in seen:
                continue
            if not neighbors[start]:
                seen.add(start)
                isolated.append(start)
                continue
            if len(neighbors[start]) != 1:
                continue  # interior of a path; reached from an endpoint
            path = [start]
            seen.add(start)
            cur, prev = start, None
            while True:
                nxt = [j for j in neighbors[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                path.append(cur)
                seen.add(cur)
            powers = [power[(min(a, b), max(a, b))] for a, b in zip(path, path[1:])]
            paths.append((tuple(path), tuple(powers)))
        if len(seen) != n:
            raise NonPathComponent("links contain a cycle")
        return paths, isolated


def parse_terms(text: str, expected_degree: int | None = None):
    """Parse the textual dump format into validated ClusterTerms."""
    terms = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [part.strip() for part in line.split("|")]
        if len(fields) != 3:
            raise ValueError(f"malformed term line: {raw!r}")
        coeff = Fraction(fields[0])
        powers = tuple(int(tok) for tok in fields[1].split())
        links = []
        for tok in fields[2].split():
            sites, _, kpow = tok.partition(":")
            i, _, j = sites.partition("-")
            links.append((int(i), int(j), int(kpow)))
        term = ClusterTerm(coeff, powers, tuple(links))
        term.components()  # path validation
        if expected_degree is not None and term.degree != expected_degree:
            raise ValueError(
                f"term degree {term.degree} != expected {expected_degree}: {raw!r}"
            )
        terms.append(term)
    return tuple(terms)


@lru_cache(maxsize=None)
def load_terms(order: int):
    """Load the shipped term table for one correction order (2..6).

    The stored per-term degree rule is degree = order - 2: each extra
    power of the coupling beyond second order brings one power of length
    from either a kernel or a site monomial.
    """
    if order not in (2, 3, 4, 5, 6):
        raise ValueError(f"no term table for order {order}")
    text = (
        resources.files("shallowwell")
        .joinpath(f"data/terms_order{order}.txt")
        .read_text()
    )
    return parse_terms(text, expected_degree=order - 2)


def moment(p: Potential, g: QuadratureGrid, k: int) -> float:
    """mu_k = integral of V(x) x^k dx on the grid (k <= 4)."""
    if not (0 <= k <= _MAX_MOMENT):
        raise ValueError(f"moment power must lie in 0..{_MAX_MOMENT}, got {k}")
    x = g.nodes
    return integrate(g, np.asarray(p.evaluate(x)) * x**k)


def _weighted_chain(p, g, site_powers, link_powers) -> float:
    """Chain integral with x^m weights attached at each site."""
    x = g.nodes
    f = np.ones_like(x)
    for k, mpow in zip(reversed(link_powers), reversed(site_powers[1:])):
        f = contract(g, p, k, mpow, f)
    return integrate(g, np.asarray(p.evaluate(x)) * x ** site_powers[0] * f)


def chain(p: Potential, g: QuadratureGrid, link_powers) -> float:
    """Pure chain integral over len(link_powers)+1 sites.

    Computed by successive kernel contractions, never by tensor
    quadrature.

    Raises:
        UnsupportedChain: length or link power outside the supported set.
    """
    link_powers = tuple(int(k) for k in link_powers)
    if not (1 <= len(link_powers) <= _MAX_CHAIN_LINKS):
        raise UnsupportedChain(
            f"chain length must lie in 1..{_MAX_CHAIN_LINKS}, got {len(link_powers)}"
        )
    if any(not (1 <= k <= _MAX_LINK_POWER) for k in link_powers):
        raise UnsupportedChain(
            f"link powers must lie in 1..{_MAX_LINK_POWER}, got {link_powers}"
        )
    return _weighted_chain(p, g, (0,) * (len(link_powers) + 1), link_powers)


def evaluate_term(t: ClusterTerm, p: Potential, g: QuadratureGrid, cache=None) -> float:
    """coefficient x product of component factors of one ClusterTerm."""
    paths, isolated = t.components()
    value = float(t.coefficient)
    for path, link_powers in paths:
        powers = tuple(t.site_powers[s - 1] for s in path)
        # a chain read backwards is the same integral; canonicalize for caching
        if (powers[::-1], link_powers[::-1]) < (powers, link_powers):
            powers, link_powers = powers[::-1], link_powers[::-1]
        key = ("wchain", powers, link_powers)
        if cache is None or key not in cache:
            factor = _weighted_chain(p, g, powers, link_powers)
            if cache is not None:
                cache[key] = factor
        else:
            factor = cache[key]
        value *= factor
    for site in isolated:
        k = t.site_powers[site - 1]
        key = ("moment", k)
        if cache is None or key not in cache:
            factor = moment(p, g, k)
            if cache is not None:
                cache[key] = factor
        else:
            factor = cache[key]
        value *= factor
    return value


def evaluate_terms(terms, p: Potential, g: QuadratureGrid) -> float:
    cache = {}
    return math.fsum(evaluate_term(t, p, g, cache) for t in terms)


def e2(p: Potential, g: QuadratureGrid) -> float:
    mu0 = moment(p, g, 0)
    return -mu0 * mu0 / 4.0


def e3(p: Potential, g: QuadratureGrid) -> float:
    return -(moment(p, g, 0) / 4.0) * chain(p, g, [1])


def e4(p: Potential, g: QuadratureGrid) -> float:
    mu0 = moment(p, g, 0)
    c1 = chain(p, g, [1])
    return (
        -(mu0 * mu0 / 16.0) * chain(p, g, [2])
        - (mu0 / 8.0) * chain(p, g, [1, 1])
        - c1 * c1 / 16.0
    )


def e5(p: Potential, g: QuadratureGrid) -> float:
    mu0 = moment(p, g, 0)
    c1 = chain(p, g, [1])
    return (
        -(mu0**3 / 96.0) * chain(p, g, [3])
        - (mu0 * mu0 / 16.0) * chain(p, g, [1, 2])
        - (mu0 / 16.0) * chain(p, g, [1, 1, 1])
        - (mu0 / 16.0) * c1 * chain(p, g, [2])
        - (c1 / 16.0) * chain(p, g, [1, 1])
    )


def e6(p: Potential, g: QuadratureGrid) -> float:
    return evaluate_terms(load_terms(6), p, g)


_ORDER_FUNCS = {2: e2, 3: e3, 4: e4, 5: e5, 6: e6}


@dataclass(frozen=True)
class EnergySeries:
    """Coefficients c1..c_order of E(s) ~ sum c_n s^n for a unit shape.

    error_estimates holds per-coefficient relative coarse/fine grid
    discrepancies (0.0 for the identically-zero c1).
    """

    coefficients: tuple
    shape_kind: str
    grid_spec: tuple
    error_estimates: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def evaluate(self, s: float) -> float:
        return math.fsum(c * s**n for n, c in enumerate(self.coefficients, start=1))


def energy_series(p: Potential, order: int = 6, g: QuadratureGrid | None = None) -> EnergySeries:
    """Weak-coupling series of the bound-state energy for p's shape.

    The coefficients are computed at unit strength (they depend on the
    shape only); E(s) ~ sum c_n s^n. Each coefficient carries a relative
    error estimate from a coarse/fine grid pair (P vs 2P); the fine-grid
    values are the ones reported.
    """
    if order not in (2, 3, 4, 5, 6):
        raise ValueError(f"order must lie in 2..6, got {order}")
    unit = replace(p, s=1.0)
    if g is None:
        g = default_grid(unit)
    g_fine = build_grid(g.L, 2 * g.P, g.q)
    coarse = [_ORDER_FUNCS[n](unit, g) for n in range(2, order + 1)]
    fine = [_ORDER_FUNCS[n](unit, g_fine) for n in range(2, order + 1)]
    estimates = [0.0]
    for c, f in zip(coarse, fine):
        scale = max(abs(f), 1e-300)
        estimates.append(abs(f - c) / scale)
    return EnergySeries(
        coefficients=(0.0, *fine),
        shape_kind=p.kind,
        grid_spec=(g.L, g.P, g.q),
        error_estimates=tuple(estimates),
    )


__all__ = [
    "ClusterTerm",
    "EnergySeries",
    "parse_terms",
    "load_terms",
    "moment",
    "chain",
    "evaluate_term",
    "evaluate_terms",
    "e2",
    "e3",
    "e4",
    "e5",
    "e6",
    "energy_series",
]
