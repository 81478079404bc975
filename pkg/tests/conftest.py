import numpy as np
import pytest

from ptdiscord import qmat
from ptdiscord.oracles import states

SIGMA = states.PAULI

_acceptance_lines: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    _acceptance_lines.append(line)
    print(line)


@pytest.fixture
def criterion():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def pt_by_loops(a, m, n):
    """Partial transpose on A written straight from the index definition."""
    out = np.zeros_like(a)
    for i in range(m):
        for j in range(m):
            for k in range(n):
                for l in range(n):
                    out[j * n + k, i * n + l] = a[i * n + k, j * n + l]
    return out


def two_qubit_gqd(rho):
    """Closed-form geometric discord of a two-qubit state (measurement on A).

    ``(|x|^2 + |T|^2 - k_max)/4`` with ``x_i = Tr rho (s_i x I)``,
    ``T_ij = Tr rho (s_i x s_j)`` and ``k_max`` the top eigenvalue of
    ``x x^T + T T^T``.
    """
    a = rho.entries if hasattr(rho, "entries") else rho
    eye = np.eye(2)
    x = np.array([np.trace(a @ np.kron(s, eye)).real for s in SIGMA])
    t = np.array([[np.trace(a @ np.kron(si, sj)).real for sj in SIGMA] for si in SIGMA])
    k = np.outer(x, x) + t @ t.T
    return (x @ x + np.sum(t * t) - np.linalg.eigvalsh(k)[-1]) / 4


def random_states(count, dims_cycle, seed):
    """Seeded mix of Ginibre states of every rank, cycling through dims."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        dims = dims_cycle[i % len(dims_cycle)]
        rank = int(rng.integers(1, dims[0] * dims[1] + 1))
        out.append(states.random_ginibre(dims, rank, seed=int(rng.integers(2**31))))
    return out


def random_hermitian(dim, rng):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2


def random_unitary(dim, rng):
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def bell_projector():
    return qmat.projector(np.array([1, 0, 0, 1]) / np.sqrt(2))
