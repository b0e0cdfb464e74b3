"""Frame-presented manifolds with constant structure coefficients.

All data live on a global frame ``e_1..e_n`` with ``[e_i, e_j] = c^k_ij e_k``
and constant ``g(e_i, e_j)``. Because nothing varies along the frame, the
derivative terms of the Koszul formula and of the curvature commutator drop
and every quantity is a finite rational computation.

Storage conventions (0-based slots):

* structure coefficients ``c[k, i, j] = c^k_ij``
* connection ``gamma[k, i, j] = Gamma^k_ij`` with ``nabla_{e_i} e_j = Gamma^k_ij e_k``
* curvature ``riemann[l, i, j, k] = R^l_ijk`` with ``R(e_i, e_j) e_k = R^l_ijk e_l``
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .exact import (
    Matrix,
    Q,
    RankError,
    Tensor,
    invert,
    matrix,
    tensor_contract,
)
from .report import FAIL, PASS, Check, Report, Witness, label

LEVI_CIVITA = "LeviCivita"
GENERAL = "General"
PRESET = "Preset"


@dataclass(frozen=True)
class FrameManifold:
    n: int
    g: Tensor
    c: Tensor

    @classmethod
    def from_data(cls, metric, brackets: dict[tuple[int, int], dict[int, object]] | None = None,
                  *, structure: Optional[Tensor] = None) -> "FrameManifold":
        """Build from a metric matrix and either a sparse bracket table or a full ``c``.

        ``brackets[(i, j)] = {k: value}`` encodes ``[e_i, e_j] = sum value e_k``
        (0-based); the antisymmetric partner ``(j, i)`` is filled in.
        """
        g = Tensor.from_nested("ll", matrix(metric))
        n = g.dim
        if structure is None:
            vals: dict[tuple[int, int, int], Fraction] = {}
            for (i, j), row in (brackets or {}).items():
                for k, v in row.items():
                    vals[(k, i, j)] = Q(v)
                    vals.setdefault((k, j, i), -vals[(k, i, j)])
            structure = Tensor.build("ull", n, lambda k, i, j: vals.get((k, i, j), 0))
        return cls(n, g, structure)

    @cached_property
    def g_inv(self) -> Tensor:
        inv = invert(self.metric_matrix)
        return Tensor.from_nested("uu", inv)

    @property
    def metric_matrix(self) -> Matrix:
        return tuple(tuple(self.g[i, j] for j in range(self.n)) for i in range(self.n))

    def bracket(self, x: Tensor, y: Tensor) -> Tensor:
        """Bracket of two constant-coefficient vector fields."""
        n = self.n
        pairs = [(i, j, x[i] * y[j]) for i in range(n) if x[i] for j in range(n) if y[j]]
        return Tensor.build("u", n, lambda k: sum(
            (w * self.c[k, i, j] for i, j, w in pairs), Fraction(0)))

    def inner(self, x: Tensor, y: Tensor) -> Fraction:
        n = self.n
        return sum((self.g[i, j] * x[i] * y[j] for i in range(n) for j in range(n)), Fraction(0))

    def basis(self, i: int) -> Tensor:
        return Tensor.vector(1 if k == i else 0 for k in range(self.n))


@dataclass(frozen=True)
class Connection:
    gamma: Tensor
    kind: str = LEVI_CIVITA
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    name: Optional[str] = None

    @property
    def provenance(self) -> dict[str, object]:
        d: dict[str, object] = {"kind": self.kind}
        if self.kind != LEVI_CIVITA:
            d["a"] = str(self.a)
            d["b"] = str(self.b)
        if self.name:
            d["name"] = self.name
        return d

    @property
    def dim(self) -> int:
        return self.gamma.dim

    def covariant(self, i: int, x: Tensor) -> Tensor:
        """``nabla_{e_i} X`` for a constant-coefficient vector ``X``."""
        n = self.dim
        nz = [m for m in range(n) if x[m]]
        return Tensor.build("u", n, lambda l: sum(
            (x[m] * self.gamma[l, i, m] for m in nz), Fraction(0)))


@dataclass(frozen=True)
class CurvatureData:
    riemann: Tensor
    ricci: Tensor
    ricci_op: Tensor
    scalar: Fraction


def validate_manifold(M: FrameManifold) -> Report:
    rep = Report("manifold", parameters={"n": M.n})
    n = M.n
    if n < 2:
        rep.add(Check("dimension", FAIL, Witness((), ">= 2", str(n))))
        return rep
    rep.add(Check("dimension", PASS))
    if M.g.variance != ("l", "l") or M.g.dim != n or M.c.variance != ("u", "l", "l") or M.c.dim != n:
        rep.add(Check("shapes", FAIL, Witness((), "g:(l,l), c:(u,l,l)",
                                              f"g:{M.g.variance}, c:{M.c.variance}")))
        return rep

    sym = next(((i, j) for i in range(n) for j in range(n) if M.g[i, j] != M.g[j, i]), None)
    rep.add(Check("metric_symmetric", PASS) if sym is None else Check(
        "metric_symmetric", FAIL, Witness(label(sym), str(M.g[sym[1], sym[0]]), str(M.g[sym]))))

    try:
        invert(M.metric_matrix)
        rep.add(Check("metric_invertible", PASS))
    except RankError as exc:
        rep.add(Check("metric_invertible", FAIL, Witness((), "nonsingular", "singular"), note=str(exc)))

    anti = [
        (i, j, k) for i in range(n) for j in range(n) for k in range(n)
        if M.c[k, i, j] != -M.c[k, j, i]
    ]
    if anti:
        i, j, k = anti[0]
        rep.add(Check("brackets_antisymmetric", FAIL,
                      Witness(label((i, j, k)), str(-M.c[k, j, i]), str(M.c[k, i, j])),
                      note=f"{len(anti)} offending (i, j, k) triples"))
    else:
        rep.add(Check("brackets_antisymmetric", PASS))

    bad = None
    for i, j, k, l in itertools.product(range(n), repeat=4):
        s = sum((M.c[m, i, j] * M.c[l, m, k] + M.c[m, j, k] * M.c[l, m, i]
                 + M.c[m, k, i] * M.c[l, m, j]) for m in range(n))
        if s != 0:
            bad = (i, j, k, l, s)
            break
    if bad is None:
        rep.add(Check("jacobi", PASS))
    else:
        rep.add(Check("jacobi", FAIL, Witness(label(bad[:4]), "0", str(bad[4])),
                      note="component l of the cyclic sum over (i, j, k)"))
    return rep


def koszul_levi_civita(M: FrameManifold) -> Connection:
    """Levi-Civita connection from the Koszul formula with constant metric.

    ``2 g(nabla_i e_j, e_k) = g([e_i,e_j],e_k) - g([e_i,e_k],e_j) - g([e_j,e_k],e_i)``
    """
    n = M.n
    g, c = M.g, M.c
    ginv = M.g_inv

    def lowered(i, j, k):
        return sum((c[m, i, j] * g[m, k] - c[m, i, k] * g[m, j] - c[m, j, k] * g[m, i])
                   for m in range(n)) / 2

    low = {(i, j, k): lowered(i, j, k) for i, j, k in itertools.product(range(n), repeat=3)}
    gamma = Tensor.build("ull", n, lambda l, i, j: sum(
        (ginv[l, k] * low[i, j, k] for k in range(n)), Fraction(0)))
    return Connection(gamma, LEVI_CIVITA)


def torsion(M: FrameManifold, C: Connection) -> Tensor:
    """``T^k_ij = Gamma^k_ij - Gamma^k_ji - c^k_ij``."""
    G = C.gamma
    return Tensor.build("ull", M.n, lambda k, i, j: G[k, i, j] - G[k, j, i] - M.c[k, i, j])


def metricity(M: FrameManifold, C: Connection) -> Tensor:
    """``(nabla g)[i, j, k] = (nabla_{e_i} g)(e_j, e_k)``; zero iff metric-compatible."""
    n, G, g = M.n, C.gamma, M.g
    return Tensor.build("lll", n, lambda i, j, k: -sum(
        (G[m, i, j] * g[m, k] + G[m, i, k] * g[j, m]) for m in range(n)))


def curvature(M: FrameManifold, C: Connection) -> CurvatureData:
    n = M.n
    G, c = C.gamma.to_nested(), M.c.to_nested()
    rng = range(n)
    # sparse lists of (m, value) so products with zero entries are skipped
    G_jk = [[[(m, G[m][j][k]) for m in rng if G[m][j][k]] for k in rng] for j in rng]
    c_ij = [[[(m, c[m][i][j]) for m in rng if c[m][i][j]] for j in rng] for i in rng]

    def comp(l, i, j, k):
        total = Fraction(0)
        for m, v in G_jk[j][k]:
            total += v * G[l][i][m]
        for m, v in G_jk[i][k]:
            total -= v * G[l][j][m]
        for m, v in c_ij[i][j]:
            total -= v * G[l][m][k]
        return total

    riemann = Tensor.build("ulll", n, comp)
    return curvature_from_riemann(M, riemann)


def curvature_from_riemann(M: FrameManifold, riemann: Tensor) -> CurvatureData:
    """Ricci ``S_jk = R^i_ijk``, operator ``Q^j_k = g^jm S_mk`` and scalar ``g^jk S_jk``."""
    ricci = tensor_contract(riemann, 0, 1)
    ricci_op = ricci_operator(M, ricci)
    scalar = tensor_contract(ricci_op, 0, 1).scalar()
    return CurvatureData(riemann, ricci, ricci_op, scalar)


def ricci_operator(M: FrameManifold, ricci: Tensor) -> Tensor:
    n, ginv = M.n, M.g_inv.to_nested()
    S = ricci.to_nested()
    return Tensor.build("ul", n, lambda j, k: sum((ginv[j][m] * S[m][k] for m in range(n)
                                                   if ginv[j][m] and S[m][k]), Fraction(0)))
