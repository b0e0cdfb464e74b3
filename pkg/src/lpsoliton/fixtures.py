"""Concrete frame manifolds.

``example_manifold`` is the 4-dimensional LP-Sasakian example on
``{x in R^4 : x4 != 0}`` with frame ``e_i = exp(x_i + x_4) d/dx_i`` (i = 1, 2, 3),
``e_4 = d/dx_4``. Expanding the brackets of those coordinate fields gives
``[e_i, e_4] = -e_i`` and ``[e_i, e_j] = 0`` otherwise.

``warped_frame`` generalises it: ``[e_i, e_n] = -s_i e_i`` with signs
``s_i = +-1`` and ``phi e_i = -s_i e_i`` gives an LP-Sasakian structure for
every sign pattern, with ``trace phi = -sum(s_i)``. ``change_frame`` re-expresses
any frame manifold and structure in a new constant frame, which produces
non-diagonal metrics and dense structure coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import Q, Tensor, invert, matrix
from .frame import FrameManifold
from .paracontact import ParacontactStructure


def warped_frame(signs: Sequence[int]) -> tuple[FrameManifold, ParacontactStructure]:
    n = len(signs) + 1
    if n < 2 or any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be a non-empty sequence of +1/-1")
    t = n - 1
    metric = [[(1 if i == j else 0) if i < t else (-1 if j == t else 0) for j in range(n)]
              for i in range(n)]
    brackets = {(i, t): {i: -s} for i, s in enumerate(signs)}
    M = FrameManifold.from_data(metric, brackets)
    phi = Tensor.build("ul", n, lambda j, k: -signs[k] if j == k and k < t else 0)
    xi = Tensor.vector(1 if k == t else 0 for k in range(n))
    eta = Tensor.covector(-1 if k == t else 0 for k in range(n))
    return M, ParacontactStructure(phi, xi, eta)


def example_manifold() -> tuple[FrameManifold, ParacontactStructure]:
    return warped_frame((1, 1, 1))


def change_frame(M: FrameManifold, P: ParacontactStructure | None, A
                 ) -> tuple[FrameManifold, ParacontactStructure | None]:
    """Rewrite in the frame ``f_a = sum_i A[i][a] e_i`` (columns of ``A`` are the new fields)."""
    A = matrix(A)
    Ainv = invert(A)
    n = M.n
    rng = range(n)

    def col(i, a):
        return A[i][a]

    g = Tensor.build("ll", n, lambda a, b: sum(
        (col(i, a) * col(j, b) * M.g[i, j] for i in rng for j in rng), Fraction(0)))
    # constant A: [f_a, f_b] = A^i_a A^j_b c^k_ij e_k
    old = {(k, a, b): sum((col(i, a) * col(j, b) * M.c[k, i, j] for i in rng for j in rng),
                          Fraction(0))
           for k in rng for a in rng for b in rng}
    c = Tensor.build("ull", n, lambda cc, a, b: sum((Ainv[cc][k] * old[k, a, b] for k in rng),
                                                    Fraction(0)))
    M2 = FrameManifold(n, g, c)
    if P is None:
        return M2, None
    phi = Tensor.build("ul", n, lambda cc, b: sum(
        (Ainv[cc][k] * P.phi[k, j] * col(j, b) for k in rng for j in rng), Fraction(0)))
    xi = Tensor.build("u", n, lambda cc: sum((Ainv[cc][k] * P.xi[k] for k in rng), Fraction(0)))
    eta = Tensor.build("l", n, lambda a: sum((P.eta[i] * col(i, a) for i in rng), Fraction(0)))
    return M2, ParacontactStructure(phi, xi, eta)


def vector(spec: str | Sequence, P: ParacontactStructure) -> Tensor:
    """Parse ``"xi"`` or a sequence / comma-separated list of rationals into a vector."""
    if isinstance(spec, str):
        if spec.strip().lower() == "xi":
            return P.xi
        parts = [p for p in spec.split(",")]
    else:
        parts = list(spec)
    comps = [Q(p.strip() if isinstance(p, str) else p) for p in parts]
    if len(comps) != P.n:
        raise ValueError(f"vector needs {P.n} components, got {len(comps)}")
    return Tensor.vector(comps)
