"""Fixed graph suites shared by tests, the verify command and the acceptance run."""

from __future__ import annotations

import numpy as np

from .graphs import (
    ErdosRenyiSpec,
    Graph,
    circular_ladder,
    complete_graph,
    cycle_graph,
    petersen_graph,
    random_regular,
    sample_erdos_renyi,
)

SUITE_SEED = 20240601


def deterministic_suite() -> dict[str, Graph]:
    out = {f"C{k}": cycle_graph(k) for k in range(3, 9)}
    out["K4"] = complete_graph(4)
    out["Petersen"] = petersen_graph()
    out["ladder4"] = circular_ladder(4)
    return out


def random_small_suite(count: int = 20, seed: int = SUITE_SEED, n_max: int = 12, m_max: int = 30) -> dict[str, Graph]:
    """Connected graphs with min degree >= 2, n <= n_max and m <= m_max.

    Parameters and samples come from one seeded stream, so the suite is fixed.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    out = {}
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 100_000:
            raise RuntimeError("could not assemble the random suite")
        n = int(rng.integers(4, n_max + 1))
        rho = float(rng.uniform(2.5, min(5.5, n - 0.5)))
        s = int(rng.integers(0, 2**63))
        g = sample_erdos_renyi(ErdosRenyiSpec(n, rho, s))
        if g.m > m_max or g.degrees.min() < 2 or not g.is_connected():
            continue
        out[f"er{len(out)}_n{n}_s{s}"] = g
    return out


def zeta_suite() -> dict[str, Graph]:
    out = deterministic_suite()
    out.update(random_small_suite())
    return out


def random_regular_suite(count: int = 50, seed: int = SUITE_SEED, n_max: int = 24) -> dict[str, Graph]:
    """Connected d-regular graphs, d in {3, 4, 5}, n <= n_max."""
    rng = np.random.Generator(np.random.Philox(key=seed + 1))
    out = {}
    while len(out) < count:
        d = int(rng.choice([3, 4, 5]))
        choices = [n for n in range(d + 1, n_max + 1) if (n * d) % 2 == 0]
        n = int(rng.choice(choices))
        s = int(rng.integers(0, 2**63))
        g = random_regular(n, d, s)
        if not g.is_connected():
            continue
        out[f"reg{len(out)}_d{d}_n{n}_s{s}"] = g
    return out
