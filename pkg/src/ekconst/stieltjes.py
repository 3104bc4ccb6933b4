"""Generalized Euler constants in arithmetic progressions,

    gamma_k(a,q) = lim_N [ sum_{m<=N, m=a mod q} log(m)^k/m
                           - log(N)^{k+1}/(q(k+1)) ]
                 = -(1/q) [ log(q)^{k+1}/(k+1)
                            + sum_{n<=k} C(k,n) log(q)^{k-n} psi_n(a/q) ],

evaluated through the generalized digamma values.  k = 0 and k = 1 have
dedicated closed forms in psi and T."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import specfun
from .specfun import DEFAULT_CONFIG, EULER_GAMMA, GAMMA1, EvalConfig

K_MAX = 20
Q_MAX = 100


@dataclass(frozen=True)
class StieltjesTable:
    q: int
    k_max: int
    values: dict = field(repr=False)  # (k, a) -> gamma_k(a, q)

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self.values[key]


def _check_range(a: int, q: int) -> None:
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if not 1 <= a <= q:
        raise ValueError(f"a must satisfy 1 <= a <= q, got a={a}, q={q}")


def gamma0_aq(a: int, q: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """gamma_0(a, q) = -(log q + psi(a/q))/q; the a = q row collapses to
    (gamma - log q)/q since psi(1) = -gamma."""
    _check_range(a, q)
    lq = math.log(q)
    if a == q:
        return (EULER_GAMMA - lq) / q
    return -(lq + specfun.digamma(a / q)) / q


def gamma1_aq(a: int, q: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """gamma_1(a, q) = (gamma1 - log(q)^2/2 - log(q) psi(a/q) - T(a/q))/q."""
    _check_range(a, q)
    lq = math.log(q)
    if a == q:
        return (GAMMA1 + EULER_GAMMA * lq - lq * lq / 2) / q
    return (GAMMA1 - lq * lq / 2 - lq * specfun.digamma(a / q)
            - specfun.t_function(a / q, cfg)) / q


def gammak_aq(k: int, a: int, q: int,
              cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """gamma_k(a, q) by the binomial formula over psi_0..psi_k."""
    if not 0 <= k <= K_MAX:
        raise ValueError(f"k must satisfy 0 <= k <= {K_MAX}, got {k}")
    if q > Q_MAX:
        raise ValueError(f"q must satisfy q <= {Q_MAX}, got {q}")
    _check_range(a, q)
    lq = math.log(q)
    x = a / q
    total = lq ** (k + 1) / (k + 1)
    for n in range(k + 1):
        total += math.comb(k, n) * lq ** (k - n) * specfun.psi_n(n, x, cfg)
    return -total / q


def build_table(q: int, k_max: int,
                cfg: EvalConfig = DEFAULT_CONFIG) -> StieltjesTable:
    """All gamma_k(a, q) for 0 <= k <= k_max, 1 <= a <= q."""
    values = {
        (k, a): gammak_aq(k, a, q, cfg)
        for k in range(k_max + 1)
        for a in range(1, q + 1)
    }
    return StieltjesTable(q=q, k_max=k_max, values=values)
