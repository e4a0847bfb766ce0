"""Shared helpers for optimizer and acceptance tests.

The tiny instances are built so that every decoded solution lands on a small
finite lattice (grid-snapped positions, discrete weight levels, zero minimum
separation so the repair step never moves points). That makes the search
space exhaustively enumerable, and the enumeration below computes the exact
objective table with its own vectorized link-budget formulas rather than by
calling the library's evaluators.
"""

import math

import numpy as np

from swarmbeam.emcore import ChannelParams, Vec3
from swarmbeam.scenarios import (
    Box,
    Cluster,
    Eavesdropper,
    RelayScenario,
    Terminal,
    TwoWayScenario,
)

SPEED_OF_LIGHT = 299_792_458.0

RELAY_WEIGHT_LEVELS = [0.5, 1.0]


def tiny_relay_scenario() -> RelayScenario:
    """3 UAVs, one 2-terminal cluster, 1 known eavesdropper, enumerable grid."""
    return RelayScenario(
        channel=ChannelParams(900e6, 2.7, -155.0, 20e6, 0.1),
        swarm_initial=(Vec3(-2, -2, 100), Vec3(0, 0, 100), Vec3(2, 2, 100)),
        swarm_box=Box((-4, 4), (-4, 4), (100, 100)),
        clusters=(
            Cluster(0, (Terminal(0, Vec3(500, 0, 0)), Terminal(1, Vec3(450, 210, 0)))),
        ),
        eavesdroppers=(Eavesdropper(0, Vec3(330, 90, 0)),),
        min_separation_m=0.0,
        sll_grid_deg=15.0,
        sll_exclusion_deg=15.0,
    )


def tiny_twoway_scenario() -> TwoWayScenario:
    """two 2-UAV swarms on 3x3 grids, 1 colluding eavesdropper."""
    return TwoWayScenario(
        channel=ChannelParams(2.4e9, 2.0, -155.0, 20e6, 0.1),
        swarm_a_initial=(Vec3(-4, 0, 100), Vec3(4, 0, 100)),
        swarm_b_initial=(Vec3(296, 0, 100), Vec3(304, 0, 100)),
        box_a=Box((-4, 4), (-4, 4), (100, 100)),
        box_b=Box((296, 304), (-4, 4), (100, 100)),
        eavesdroppers=(Eavesdropper(0, Vec3(150, 40, 100)),),
        min_separation_m=0.0,
        sll_grid_deg=15.0,
        sll_exclusion_deg=15.0,
    )


def mc_hypervolume(points, ref, n=1_000_000, seed=0):
    """Monte-Carlo dominated-volume estimate and its standard error."""
    pts = np.asarray(points, dtype=float)
    ref = np.asarray(ref, dtype=float)
    lo = pts.min(axis=0)
    vol_box = float(np.prod(ref - lo))
    rng = np.random.default_rng(seed)
    hits, done, chunk = 0, 0, 200_000
    while done < n:
        m = min(chunk, n - done)
        samples = rng.uniform(lo, ref, size=(m, pts.shape[1]))
        dominated = (pts[None, :, :] <= samples[:, None, :]).all(axis=2).any(axis=1)
        hits += int(dominated.sum())
        done += m
    p = hits / n
    return p * vol_box, vol_box * math.sqrt(max(p * (1.0 - p), 1e-12) / n)


RELAY_GRID = 5
TWOWAY_GRID = 3


class CountingProblem:
    """Wraps a problem to count and log objective evaluations."""

    def __init__(self, inner):
        self.inner = inner
        self.schema = inner.schema
        self.calls = 0
        self.log: list[tuple[float, float, float]] = []

    def evaluate(self, genome):
        self.calls += 1
        obj = self.inner.evaluate(genome)
        self.log.append(tuple(obj))
        return obj

    def initial_genome(self):
        return self.inner.initial_genome()


def fast_front_indices(objs: np.ndarray) -> list[int]:
    """Nondominated indices of a large 3-column objective table.

    Independent of the library: lexicographic presort, then each point is
    vectorized-checked against the running front only.
    """
    arr = np.asarray(objs, dtype=float)
    order = np.lexsort((arr[:, 2], arr[:, 1], arr[:, 0]))
    front = np.empty((0, arr.shape[1]))
    keep: list[int] = []
    for i in order:
        p = arr[i]
        if front.shape[0]:
            dom = np.all(front <= p, axis=1) & np.any(front < p, axis=1)
            if dom.any():
                continue
        keep.append(int(i))
        front = np.vstack([front, p[None, :]])
    return sorted(keep)


# ------------------------------------------------------ link-budget helpers


def _noise_w(ch: ChannelParams) -> float:
    return 10.0 ** ((ch.noise_density_dbm_hz - 30.0) / 10.0) * ch.bandwidth_hz


def _loss(d: np.ndarray, ch: ChannelParams) -> np.ndarray:
    lam = SPEED_OF_LIGHT / ch.carrier_hz
    return (4.0 * math.pi / lam) ** 2 * d**ch.pathloss_exponent


def _rate(p_rx: np.ndarray, ch: ChannelParams) -> np.ndarray:
    return ch.bandwidth_hz * np.log2(1.0 + p_rx / _noise_w(ch))


def _scan_lattice(grid_deg: float) -> np.ndarray:
    n_theta = int(round(180.0 / grid_deg)) + 1
    n_phi = int(round(360.0 / grid_deg))
    thetas = np.radians(np.arange(n_theta) * grid_deg)
    phis = np.radians(np.arange(n_phi) * grid_deg)
    st, ct = np.sin(thetas), np.cos(thetas)
    units = np.empty((n_theta, n_phi, 3))
    units[:, :, 0] = st[:, None] * np.cos(phis)[None, :]
    units[:, :, 1] = st[:, None] * np.sin(phis)[None, :]
    units[:, :, 2] = ct[:, None] * np.ones_like(phis)[None, :]
    return units.reshape(-1, 3)


def _sidelobe_db_table(
    rel: np.ndarray,  # (C, N, 3) element offsets from centroid
    steer: np.ndarray,  # (C, T, 3) unit steering vectors
    weight_combos: np.ndarray,  # (W, N)
    ch: ChannelParams,
    grid_deg: float,
    exclusion_deg: float,
    chunk: int = 512,
) -> np.ndarray:
    """Max normalized sidelobe in dB for every (combo, target, weights)."""
    k = 2.0 * math.pi * ch.carrier_hz / SPEED_OF_LIGHT
    units = _scan_lattice(grid_deg)  # (D, 3)
    cos_cap = math.cos(math.radians(exclusion_deg))
    n_c, n_t = steer.shape[0], steer.shape[1]
    n_w = weight_combos.shape[0]
    out = np.empty((n_c, n_t, n_w))
    sums = weight_combos.sum(axis=1)  # (W,)
    for start in range(0, n_c, chunk):
        sl = slice(start, start + chunk)
        geom = k * np.einsum("cne,de->cnd", rel[sl], units)  # (c, N, D)
        for t in range(n_t):
            phases = -k * np.einsum("cne,ce->cn", rel[sl], steer[sl, t])  # (c, N)
            field = np.exp(1j * (geom + phases[:, :, None]))  # (c, N, D)
            mags = np.abs(np.einsum("wn,cnd->cwd", weight_combos, field))
            keep = np.einsum("de,ce->cd", units, steer[sl, t]) < cos_cap  # (c, D)
            mags = np.where(keep[:, None, :], mags, 0.0)
            best = mags.max(axis=2)  # (c, W)
            out[sl, t, :] = np.maximum(20.0 * np.log10(best / sums[None, :]), -120.0)
    return out


# ------------------------------------------------------- relay enumeration


def enumerate_relay_objectives(scn: RelayScenario) -> np.ndarray:
    """Exact objective table of every decodable tiny-relay solution.

    Rows iterate positions (25^3 ordered grid combos), then receiver choice,
    then the 2^3 weight-level combos, matching reshape order (C, R, W).
    """
    ch = scn.channel
    axis = np.linspace(scn.swarm_box.x[0], scn.swarm_box.x[1], RELAY_GRID)
    ay = np.linspace(scn.swarm_box.y[0], scn.swarm_box.y[1], RELAY_GRID)
    gx, gy = np.meshgrid(axis, ay, indexing="ij")
    grid = np.column_stack(
        [gx.ravel(), gy.ravel(), np.full(gx.size, scn.swarm_box.z[0])]
    )  # (25, 3)
    n_uavs = scn.n_uavs
    combos = np.indices((grid.shape[0],) * n_uavs).reshape(n_uavs, -1).T  # (C, N)
    pos = grid[combos]  # (C, N, 3)
    cen = pos.mean(axis=1)  # (C, 3)
    rel = pos - cen[:, None, :]

    bits = np.indices((2,) * n_uavs).reshape(n_uavs, -1).T  # (W, N)
    weight_combos = np.array(RELAY_WEIGHT_LEVELS, dtype=float)[bits]  # (W, N)
    sums = weight_combos.sum(axis=1)

    cluster = scn.clusters[0]
    targets = np.array([[t.position.x, t.position.y, t.position.z] for t in cluster.terminals])
    eve = scn.known_eavesdroppers()[0]
    eve_p = np.array([eve.position.x, eve.position.y, eve.position.z])

    k = 2.0 * math.pi * ch.carrier_hz / SPEED_OF_LIGHT
    steer = np.empty((pos.shape[0], targets.shape[0], 3))
    d_rx = np.empty((pos.shape[0], targets.shape[0]))
    for t in range(targets.shape[0]):
        v = targets[t] - cen
        d_rx[:, t] = np.linalg.norm(v, axis=1)
        steer[:, t] = v / d_rx[:, t][:, None]

    v_e = eve_p - cen
    d_e = np.linalg.norm(v_e, axis=1)
    u_e = v_e / d_e[:, None]

    n_c, n_t, n_w = pos.shape[0], targets.shape[0], weight_combos.shape[0]
    f1 = np.empty((n_c, n_t, n_w))
    for t in range(n_t):
        # steered response is sum(w) at the target; explicit field at the eve
        arg = k * np.einsum("cne,ce->cn", rel, u_e - steer[:, t])
        af_e = np.exp(1j * arg) @ weight_combos.T  # (C, W)
        p_rx = ch.element_tx_power_w * sums[None, :] ** 2 / _loss(d_rx[:, t], ch)[:, None]
        p_e = ch.element_tx_power_w * np.abs(af_e) ** 2 / _loss(d_e, ch)[:, None]
        f1[:, t, :] = -np.maximum(0.0, _rate(p_rx, ch) - _rate(p_e, ch))

    f2 = _sidelobe_db_table(
        rel, steer, weight_combos, ch, scn.sll_grid_deg, scn.sll_exclusion_deg
    )

    init = np.array([[p.x, p.y, p.z] for p in scn.swarm_initial])
    f3 = np.linalg.norm(pos - init[None, :, :], axis=2).sum(axis=1)  # (C,)

    table = np.empty((n_c, n_t, n_w, 3))
    table[:, :, :, 0] = f1
    table[:, :, :, 1] = f2
    table[:, :, :, 2] = f3[:, None, None]
    return table.reshape(-1, 3)


def relay_genome_for(problem, combo_idx: int, receiver: int, weight_idx: int):
    """Genome whose decode reproduces one enumeration row (same index order)."""
    from swarmbeam.moea import Genome

    scn = problem.scenario
    axis = np.linspace(scn.swarm_box.x[0], scn.swarm_box.x[1], RELAY_GRID)
    ay = np.linspace(scn.swarm_box.y[0], scn.swarm_box.y[1], RELAY_GRID)
    gx, gy = np.meshgrid(axis, ay, indexing="ij")
    grid = np.column_stack([gx.ravel(), gy.ravel()])
    n = scn.n_uavs
    combos = np.indices((grid.shape[0],) * n).reshape(n, -1).T
    bits = np.indices((2,) * n).reshape(n, -1).T
    cont = grid[combos[combo_idx]].ravel()
    ints = np.concatenate([bits[weight_idx], [receiver]]).astype(np.int64)
    return Genome(cont.astype(float), ints, np.array([0]))


# ------------------------------------------------------ twoway enumeration


def _twoway_side_tables(initial, box, other_grid, eve_p, scn):
    """Per-swarm tables over (own position combos, steered target points)."""
    ch = scn.channel
    ax = np.linspace(box.x[0], box.x[1], TWOWAY_GRID)
    ay = np.linspace(box.y[0], box.y[1], TWOWAY_GRID)
    gx, gy = np.meshgrid(ax, ay, indexing="ij")
    grid = np.column_stack([gx.ravel(), gy.ravel(), np.full(gx.size, box.z[0])])
    n = len(initial)
    combos = np.indices((grid.shape[0],) * n).reshape(n, -1).T  # (C, N)
    pos = grid[combos]
    cen = pos.mean(axis=1)
    rel = pos - cen[:, None, :]
    weights = np.ones((1, n))

    k = 2.0 * math.pi * ch.carrier_hz / SPEED_OF_LIGHT
    n_c, n_t = pos.shape[0], other_grid.shape[0]
    steer = np.empty((n_c, n_t, 3))
    d_rx = np.empty((n_c, n_t))
    for t in range(n_t):
        v = other_grid[t] - cen
        d_rx[:, t] = np.linalg.norm(v, axis=1)
        steer[:, t] = v / d_rx[:, t][:, None]
    v_e = eve_p - cen
    d_e = np.linalg.norm(v_e, axis=1)
    u_e = v_e / d_e[:, None]

    sec = np.empty((n_c, n_t))
    for t in range(n_t):
        arg = k * np.einsum("cne,ce->cn", rel, u_e - steer[:, t])
        af_e = np.exp(1j * arg).sum(axis=1)  # unit weights
        p_rx = ch.element_tx_power_w * float(n) ** 2 / _loss(d_rx[:, t], ch)
        p_e = ch.element_tx_power_w * np.abs(af_e) ** 2 / _loss(d_e, ch)
        sec[:, t] = np.maximum(0.0, _rate(p_rx, ch) - _rate(p_e, ch))

    sll = _sidelobe_db_table(
        rel, steer, weights, ch, scn.sll_grid_deg, scn.sll_exclusion_deg
    )[:, :, 0]

    init = np.array([[p.x, p.y, p.z] for p in initial])
    f3 = np.linalg.norm(pos - init[None, :, :], axis=2).sum(axis=1)
    return grid, combos, sec, sll, f3


def enumerate_twoway_objectives(scn: TwoWayScenario) -> np.ndarray:
    """Exact objective table over (A combos, B combos, receiver_a, receiver_b)."""
    eve = scn.known_eavesdroppers()[0]
    eve_p = np.array([eve.position.x, eve.position.y, eve.position.z])
    ax = np.linspace(scn.box_a.x[0], scn.box_a.x[1], TWOWAY_GRID)
    ay = np.linspace(scn.box_a.y[0], scn.box_a.y[1], TWOWAY_GRID)
    bx = np.linspace(scn.box_b.x[0], scn.box_b.x[1], TWOWAY_GRID)
    by = np.linspace(scn.box_b.y[0], scn.box_b.y[1], TWOWAY_GRID)
    gxa, gya = np.meshgrid(ax, ay, indexing="ij")
    grid_a = np.column_stack([gxa.ravel(), gya.ravel(), np.full(gxa.size, scn.box_a.z[0])])
    gxb, gyb = np.meshgrid(bx, by, indexing="ij")
    grid_b = np.column_stack([gxb.ravel(), gyb.ravel(), np.full(gxb.size, scn.box_b.z[0])])

    _, combos_a, sec_a, sll_a, f3_a = _twoway_side_tables(
        scn.swarm_a_initial, scn.box_a, grid_b, eve_p, scn
    )
    _, combos_b, sec_b, sll_b, f3_b = _twoway_side_tables(
        scn.swarm_b_initial, scn.box_b, grid_a, eve_p, scn
    )

    n_a, n_b = combos_a.shape[0], combos_b.shape[0]
    n_ra, n_rb = combos_b.shape[1], combos_a.shape[1]
    # target grid index of swarm B's receiver UAV ra, per B combo (and mirrored)
    tgt_in_b = combos_b  # (n_b, n_ra) grid-point index of each B UAV
    tgt_in_a = combos_a  # (n_a, n_rb)

    # the receiver axes are tiny, so loop them and vectorize over combos
    f1 = np.empty((n_a, n_b, n_ra, n_rb))
    f2 = np.empty((n_a, n_b, n_ra, n_rb))
    for ra in range(n_ra):
        t_b = tgt_in_b[:, ra]  # (n_b,) grid index steered at in swarm B
        for rb in range(n_rb):
            t_a = tgt_in_a[:, rb]  # (n_a,)
            sa = sec_a[:, t_b]  # (n_a, n_b)
            sb = sec_b[:, t_a].T  # (n_a, n_b)
            f1[:, :, ra, rb] = -(sa + sb)
            f2[:, :, ra, rb] = np.maximum(sll_a[:, t_b], sll_b[:, t_a].T)
    f3 = f3_a[:, None, None, None] + f3_b[None, :, None, None]

    table = np.stack(
        [f1, f2, np.broadcast_to(f3, f1.shape)], axis=-1
    )
    return table.reshape(-1, 3)


def twoway_genome_for(problem, combo_a: int, combo_b: int, ra: int, rb: int):
    from swarmbeam.moea import Genome

    scn = problem.scenario
    ax = np.linspace(scn.box_a.x[0], scn.box_a.x[1], TWOWAY_GRID)
    ay = np.linspace(scn.box_a.y[0], scn.box_a.y[1], TWOWAY_GRID)
    bx = np.linspace(scn.box_b.x[0], scn.box_b.x[1], TWOWAY_GRID)
    by = np.linspace(scn.box_b.y[0], scn.box_b.y[1], TWOWAY_GRID)
    gxa, gya = np.meshgrid(ax, ay, indexing="ij")
    grid_a = np.column_stack([gxa.ravel(), gya.ravel()])
    gxb, gyb = np.meshgrid(bx, by, indexing="ij")
    grid_b = np.column_stack([gxb.ravel(), gyb.ravel()])
    n_a, n_b = len(scn.swarm_a_initial), len(scn.swarm_b_initial)
    combos_a = np.indices((grid_a.shape[0],) * n_a).reshape(n_a, -1).T
    combos_b = np.indices((grid_b.shape[0],) * n_b).reshape(n_b, -1).T
    cont = np.concatenate(
        [grid_a[combos_a[combo_a]].ravel(), grid_b[combos_b[combo_b]].ravel()]
    )
    return Genome(cont.astype(float), np.array([ra, rb], dtype=np.int64), None)
