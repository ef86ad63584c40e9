import pytest  # type: ignore
import logging

import numpy as np

from diffusion_game import (
    BoundId,
    BoundInapplicable,
    Family,
    Graph,
    InvalidParams,
    InvalidSize,
    NotAStar,
    NotBipartite,
    as_config,
    bound_monitor,
    check_bound,
    complete_bipartite_two_value_predict,
    complete_two_value_predict,
    detect_period,
    fire,
    from_edge_list,
    full_degree_config,
    generate,
    infinite_path_word,
    layer_decomposition,
    millpond_config,
    millpond_predict,
    path_full_degree_predict,
    path_table_word,
    qf_config,
    qf_predict,
    star_preperiod_bound,
    trajectory,
    two_group_predict,
)
from diffusion_game.oracles import star_centre

########################################################
#
# Test Plan
#
########################################################

# 1) Preset configurations
# 2) Mill-pond and QF predictions against the firing engine
# 3) Path words, path table and full-degree paths
# 4) Star centre and pre-period bound
# 5) Two-valued complete and complete bipartite graphs
# 6) Bound monitors on handmade and simulated trajectories

logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug


BIPARTITE_GRAPHS: list[tuple[Family, int | tuple[int, int]]] = [
    (Family.path, 5),
    (Family.cycle, 6),
    (Family.grid, (3, 4)),
    (Family.complete_bipartite, (2, 3)),
    (Family.star, 5),
]


def test_1_preset_configs() -> None:
    s5 = generate(Family.star, 5)
    assert full_degree_config(s5).tolist() == [4, 1, 1, 1, 1], "full degree on S5"
    assert millpond_config(s5, 2).tolist() == [0, 0, 1, 0, 0], "mill-pond at 2"
    assert qf_config(s5, 0).tolist() == [-4, 1, 1, 1, 1], "QF at the centre"
    assert qf_config(s5, 3).tolist() == [1, 0, 0, -1, 0], "QF at a leaf"
    assert sum(qf_config(generate(Family.grid, (3, 3)), 4).tolist()) == 0, "QF sums to 0"
    k4 = generate(Family.complete, 4)
    assert fire(k4, qf_config(k4, 0)).tolist() == [0, 0, 0, 0], "QF on K4 fires to zero"


def test_2_millpond_cycle() -> None:
    c6 = generate(Family.cycle, 6)
    d = layer_decomposition(c6, 0)
    assert millpond_predict(d, c6, 0).tolist() == [1, 0, 0, 0, 0, 0], "t=0"
    assert millpond_predict(d, c6, 1).tolist() == [-1, 1, 0, 0, 0, 1], "t=1"
    assert millpond_predict(d, c6, 2).tolist() == [1, -1, 1, 0, 1, -1], "t=2"
    assert millpond_predict(d, c6, 3).tolist() == [-1, 1, -1, 2, -1, 1], "t=3"
    res = detect_period(c6, millpond_config(c6, 0))
    assert res.unwrap().pre_period == 2, "mill-pond on C6 enters its cycle at t=2"


@pytest.mark.parametrize("family,params", BIPARTITE_GRAPHS)
def test_3_millpond_matches_engine(family: Family, params: int | tuple[int, int]) -> None:
    g = generate(family, params)
    for v in range(g.n):
        d = layer_decomposition(g, v)
        traj = trajectory(g, millpond_config(g, v), d.eccentricity + 4)
        for t, c in enumerate(traj):
            assert (
                millpond_predict(d, g, t).tolist() == c.tolist()
            ), f"{family}{params} from {v} differs at t={t}"


def test_4_millpond_errors() -> None:
    c5 = generate(Family.cycle, 5)
    with pytest.raises(NotBipartite):
        millpond_predict(layer_decomposition(c5, 0), c5, 1)
    p4 = generate(Family.path, 4)
    with pytest.raises(InvalidParams):
        millpond_predict(layer_decomposition(p4, 0), p4, -1)


def test_5_qf() -> None:
    p5 = generate(Family.path, 5)
    d = layer_decomposition(p5, 0)
    assert qf_predict(d, p5, 0).tolist() == [-1, 1, 0, 0, 0], "QF on P5 at t=0"
    assert qf_predict(d, p5, 1).tolist() == [0, -1, 1, 0, 0], "QF on P5 at t=1"
    for t, c in enumerate(trajectory(p5, qf_config(p5, 0), 8)):
        assert qf_predict(d, p5, t).tolist() == c.tolist(), f"QF on P5 differs at t={t}"

    grid = generate(Family.grid, (3, 4))
    d = layer_decomposition(grid, 0)
    for t, c in enumerate(trajectory(grid, qf_config(grid, 0), 10)):
        assert qf_predict(d, grid, t).tolist() == c.tolist(), f"QF on grid differs at t={t}"

    p3 = generate(Family.path, 3)
    with pytest.raises(BoundInapplicable):
        qf_predict(layer_decomposition(p3, 1), p3, 0)
    k4 = generate(Family.complete, 4)
    with pytest.raises(NotBipartite):
        qf_predict(layer_decomposition(k4, 0), k4, 0)


def test_6_path_words() -> None:
    assert infinite_path_word(0, 4) == [1, 2, 2, 2], "t=0"
    assert infinite_path_word(1, 4) == [2, 1, 2, 2], "t=1"
    assert infinite_path_word(2, 5) == [1, 3, 1, 2, 2], "t=2"
    assert infinite_path_word(3, 6) == [2, 1, 3, 1, 2, 2], "t=3"
    assert infinite_path_word(4, 3) == [1, 3, 1], "truncated word"
    with pytest.raises(InvalidParams):
        infinite_path_word(-1, 3)

    assert path_table_word(3) == (0, [1, 2, 1]), "P3 row"
    assert path_table_word(4) == (0, [1, 2, 2, 1]), "P4 row"
    assert path_table_word(5) == (1, [2, 1, 2, 1, 2]), "P5 row"
    assert path_table_word(6) == (1, [2, 1, 2, 2, 1, 2]), "P6 row"
    assert path_table_word(7) == (2, [1, 3, 1, 2, 1, 3, 1]), "P7 row"
    for n in range(3, 40):
        T, word = path_table_word(n)
        assert len(word) == n, f"P{n} word has length {len(word)}"
        assert sum(word) == 2 * (n - 1), f"P{n} word does not conserve chips"
    with pytest.raises(InvalidSize):
        path_table_word(2)


def test_7_path_full_degree() -> None:
    assert path_full_degree_predict(7, 2).tolist() == [1, 3, 1, 2, 1, 3, 1], "P7 at t=2"
    assert path_full_degree_predict(7, 3).tolist() == [2, 1, 3, 0, 3, 1, 2], "P7 at t=3"
    assert path_full_degree_predict(7, 4).tolist() == [1, 3, 1, 2, 1, 3, 1], "P7 at t=4"
    for n in range(3, 16):
        g = generate(Family.path, n)
        for t, c in enumerate(trajectory(g, full_degree_config(g), n + 4)):
            assert (
                path_full_degree_predict(n, t).tolist() == c.tolist()
            ), f"P{n} differs at t={t}"
        T, _ = path_table_word(n)
        report = detect_period(g, full_degree_config(g)).unwrap()
        assert report.pre_period == T, f"P{n}: pre-period {report.pre_period} != {T}"


def test_8_star() -> None:
    s4 = generate(Family.star, 4)
    assert star_centre(s4) == 0, "star centre is 0"
    assert star_preperiod_bound(s4, as_config([0, 9, 1, 5])) == 17, "S4 bound"
    s5 = generate(Family.star, 5)
    assert star_preperiod_bound(s5, millpond_config(s5, 0)) == 1, "S5 mill-pond bound"
    assert star_preperiod_bound(s5, as_config([3] * 5)) == 0, "constant star"
    assert star_preperiod_bound(generate(Family.star, 1), as_config([4])) == 0, "S1"
    relabelled = from_edge_list(4, [(2, 0), (2, 1), (2, 3)])
    assert star_centre(relabelled) == 2, "centre found at any index"

    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(2, 12))
        g = generate(Family.star, n)
        c0 = as_config(rng.integers(-20, 20, size=n, endpoint=True))
        report = detect_period(g, c0).unwrap()
        assert report.tight, f"star S{n} from {c0.tolist()} is not tight"
        assert report.pre_period <= star_preperiod_bound(
            g, c0
        ), f"S{n} from {c0.tolist()}: pre-period above the bound"

    for bad in (generate(Family.path, 4), generate(Family.cycle, 4)):
        with pytest.raises(NotAStar):
            star_centre(bad)


def test_9_two_group() -> None:
    assert complete_two_value_predict(2, 1, 0, 2, 1) == (1, 1), "K2 meets in the middle"
    assert complete_two_value_predict(4, 2, 0, 10, 1) == (2, 8), "K4 one step"
    assert complete_two_value_predict(3, 1, 0, 0, 5) == (0, 0), "equal groups are fixed"
    assert two_group_predict(1, 1, 0, 3, 2) == (2, 1), "K2 order flipped"
    assert two_group_predict(1, 1, 0, 3, 3) == (1, 2), "K2 alternates"
    assert two_group_predict(1, 1, 0, 3, 4) == (2, 1), "K2 alternates"
    assert two_group_predict(1, 1, 0, 2, 9) == (1, 1), "zero gap freezes"
    with pytest.raises(InvalidParams):
        complete_two_value_predict(3, 0, 0, 1, 1)
    with pytest.raises(InvalidParams):
        complete_bipartite_two_value_predict(0, 3, 0, 1, 1)


def test_10_two_group_matches_engine() -> None:
    for n in range(2, 7):
        g = generate(Family.complete, n)
        for d in range(1, n):
            for alpha, beta in ((0, 7), (5, -4), (3, 3), (-2, 11)):
                c0 = as_config([alpha] * d + [beta] * (n - d))
                for t, c in enumerate(trajectory(g, c0, 12)):
                    assert complete_two_value_predict(n, d, alpha, beta, t) == (
                        int(c[0]),
                        int(c[-1]),
                    ), f"K{n} d={d} ({alpha},{beta}) differs at t={t}"
    for m, n in ((1, 3), (2, 2), (3, 4)):
        g = generate(Family.complete_bipartite, (m, n))
        for alpha, beta in ((0, 9), (8, 1), (4, 4)):
            c0 = as_config([alpha] * m + [beta] * n)
            for t, c in enumerate(trajectory(g, c0, 12)):
                assert complete_bipartite_two_value_predict(m, n, alpha, beta, t) == (
                    int(c[0]),
                    int(c[-1]),
                ), f"K{m},{n} ({alpha},{beta}) differs at t={t}"


def test_11_bound_handmade() -> None:
    p3 = generate(Family.path, 3)
    report = check_bound(BoundId.deg2_edge, p3, [[0, 0, 0], [0, 5, 0]])
    assert not report.holds, "jump from 0 to 5 breaks max(3, d)"
    v = report.first_violation
    assert v is not None, "violation not recorded"
    assert (v.time, v.u, v.v, v.observed, v.bound) == (1, 0, 1, 5, 3), f"violation {v}"
    assert report.pairs == 2, f"P3 has two checked edges: {report.pairs}"

    k3 = generate(Family.complete, 3)
    report = check_bound("twin_lock", k3, [[1, 1, 0], [2, 1, 0]])
    assert not report.holds, "twins separated"
    assert report.first_violation is not None and report.first_violation.time == 1

    with pytest.raises(BoundInapplicable):
        check_bound(BoundId.wheel_rim, generate(Family.cycle, 5), [[0] * 5])
    with pytest.raises(BoundInapplicable):
        check_bound(BoundId.twin_pair, generate(Family.path, 4), [[0] * 4])
    with pytest.raises(BoundInapplicable):
        check_bound(BoundId.deg2_edge, generate(Family.complete, 4), [[0] * 4])
    with pytest.raises(ValueError):
        check_bound("no_such_bound", p3, [[0, 0, 0]])


def test_12_bound_simulated(sample: Graph) -> None:
    p3 = generate(Family.path, 3)
    report = check_bound(BoundId.deg2_edge, p3, trajectory(p3, [1, 2, 1], 4))
    assert report.holds, f"full degree P3: {report.first_violation}"
    assert report.max_observed == 2, f"max observed {report.max_observed}"

    kp = generate(Family.clique_with_pendants, (4, 3))
    c0 = as_config(np.arange(kp.n, dtype=np.int64) % 5 - 2)
    report = check_bound(BoundId.twin_lock, kp, trajectory(kp, c0, 30))
    assert report.holds, f"twin lock broken: {report.first_violation}"

    traj = trajectory(sample, [6, 10, 5, 0, 4, 8], 11)
    report = check_bound(BoundId.edge_difference, sample, traj)
    assert report.holds, "edge difference is informational"
    assert (
        report.max_observed == bound_monitor(sample, traj).max_edge_difference
    ), "edge difference disagrees with the bound monitor"
    assert report.obj_src()["schema"] == "diffusion-game/bound/1", "schema tag"

    w6 = generate(Family.wheel, 6)
    flat = trajectory(w6, [2] * 6, 3)
    for bound_id in (BoundId.wheel_rim, BoundId.wheel_hub):
        report = check_bound(bound_id, w6, flat)
        assert report.holds and report.max_observed == 0, f"{bound_id} on a fixed wheel"
