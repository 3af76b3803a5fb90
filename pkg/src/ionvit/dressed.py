"""Exact diagonalization of the sideband Hamiltonians on small Fock bases.

Kets are ``(m_a, m_b, n)``: occupations of collective modes A, B and the
vibrational mode. Only states with ``m_a + m_b + n <= cap`` are kept;
ladder-operator matrix elements leaving the basis are dropped.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import Case, ModelParams

DEFAULT_CAP = {Case.RED: 1, Case.BLUE: 2}


class FockState(NamedTuple):
    m_a: int
    m_b: int
    n: int

    def ket(self) -> str:
        return f"|{self.m_a}{self.m_b}{self.n}>"


@dataclass(frozen=True)
class TruncatedHamiltonian:
    basis: tuple
    matrix: np.ndarray

    def index(self, state) -> int:
        return self.basis.index(FockState(*state))

    def block(self, states) -> np.ndarray:
        idx = [self.index(s) for s in states]
        return self.matrix[np.ix_(idx, idx)]


def build_basis(case, cap: int | None = None) -> list[FockState]:
    """All kets with total excitation at most ``cap``, in lexicographic order."""
    case = Case.parse(case)
    cap = DEFAULT_CAP[case] if cap is None else cap
    if cap < 0:
        raise ValueError("cap must be non-negative")
    return [FockState(*s) for s in itertools.product(range(cap + 1), repeat=3) if sum(s) <= cap]


# Mode slots in a FockState.
_A, _B, _C = 0, 1, 2


def _apply(ops, state):
    """Apply a product of ladder operators (rightmost first).

    ``ops`` is a sequence of ``(mode, +1 | -1)``; returns ``(amplitude,
    new_state)`` or ``None`` when the state is annihilated.
    """
    occ = list(state)
    amp = 1.0
    for mode, sign in reversed(ops):
        if sign > 0:
            occ[mode] += 1
            amp *= math.sqrt(occ[mode])
        else:
            if occ[mode] == 0:
                return None
            amp *= math.sqrt(occ[mode])
            occ[mode] -= 1
    return amp, FockState(*occ)


def _terms(p: ModelParams, delta: float, include_drive: bool):
    """``(coefficient, operator product)`` list for the chosen case."""
    up, dn = +1, -1
    sgn_c = 1.0 if p.case is Case.RED else -1.0
    terms = [
        (delta, [(_A, up), (_A, dn)]),
        (delta, [(_B, up), (_B, dn)]),
        (sgn_c * delta, [(_C, up), (_C, dn)]),
    ]
    if include_drive:
        terms += [(p.chi, [(_A, up)]), (p.chi, [(_A, dn)])]
    # red: i g (Y^dag c - Y c^dag); blue: i g (Y^dag c^dag - Y c)
    c_with_dag, c_with_y = ((_C, dn), (_C, up)) if p.case is Case.RED else ((_C, up), (_C, dn))
    for mode, g in ((_A, p.g_a), (_B, p.g_b)):
        terms.append((1j * g, [(mode, up), c_with_dag]))
        terms.append((-1j * g, [(mode, dn), c_with_y]))
    return terms


def build_hamiltonian(p: ModelParams, delta: float, basis, include_drive: bool = False
                      ) -> TruncatedHamiltonian:
    basis = tuple(FockState(*s) for s in basis)
    pos = {s: i for i, s in enumerate(basis)}
    h = np.zeros((len(basis), len(basis)), dtype=complex)
    for coeff, ops in _terms(p, delta, include_drive):
        if coeff == 0:
            continue
        for j, s in enumerate(basis):
            out = _apply(ops, s)
            if out is None:
                continue
            amp, t = out
            i = pos.get(t)
            if i is not None:
                h[i, j] += coeff * amp
    return TruncatedHamiltonian(basis, h)


def _fix_phase(vecs: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    vecs = vecs.copy()
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        first = np.flatnonzero(np.abs(col) > tol)[0]
        vecs[:, k] = col * (abs(col[first]) / col[first])
    return vecs


def pair_states(case) -> tuple:
    """The two kets coupled by ``g_b`` when ``g_a = 0``."""
    case = Case.parse(case)
    if case is Case.RED:
        return FockState(0, 1, 0), FockState(0, 0, 1)
    return FockState(0, 0, 0), FockState(0, 1, 1)


def dressed_pair(p: ModelParams, delta: float, case=None):
    """Eigenpairs of the two-level block coupled by ``g_b`` at ``g_a = 0``.

    Red case: ``{|010>, |001>}``, eigenvalues ``delta -/+ g_b``. Blue case:
    ``{|000>, |011>}``, eigenvalues ``-/+ g_b`` (both kets have zero bare
    energy in the blue frame). Eigenvalues ascend; each eigenvector has its
    first nonzero component real and positive.

    Returns ``(eigenvalues, eigenvectors, states)`` with eigenvectors as
    columns over ``states``.
    """
    case = p.case if case is None else Case.parse(case)
    if p.g_a != 0:
        raise ValueError("dressed_pair isolates the B-vibration block and needs g_a = 0")
    p = p.with_(case=case)
    ham = build_hamiltonian(p, delta, build_basis(case), include_drive=False)
    states = pair_states(case)
    idx = [ham.index(s) for s in states]
    rest = [i for i in range(len(ham.basis)) if i not in idx]
    if rest and np.max(np.abs(ham.matrix[np.ix_(rest, idx)])) > 0:
        raise RuntimeError("pair block is not decoupled from the rest of the basis")
    vals, vecs = np.linalg.eigh(ham.matrix[np.ix_(idx, idx)])
    return vals, _fix_phase(vecs), states
