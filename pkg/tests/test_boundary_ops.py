import numpy as np
import pytest

from diracop.boundary_ops import (
    Density,
    HopfCauchy,
    assemble_cauchy,
    circle_mode,
    exact_szego_circle,
    exterior_vanishing,
    fourier_cauchy_circle,
    interior_eval,
    projection_defect,
    szego_projection,
)
from diracop.clifford import build_dirac
from diracop.geometry import make_circle_grid, make_disc_grid, make_s3_grid


@pytest.fixture(scope="module")
def circle256():
    op = build_dirac(1)
    grid = make_circle_grid(256)
    C = assemble_cauchy(op, grid)
    return op, grid, C


def test_circle_fourier_modes(circle256):
    op, grid, C = circle256
    for k in range(0, 65, 8):
        u = circle_mode(grid, k)
        out = C.apply(u).values[:, 0]
        assert np.abs(out - 0.5 * u.values[:, 0]).max() < 1e-10
    for k in (-1, -5, -64):
        u = circle_mode(grid, k)
        out = C.apply(u).values[:, 0]
        assert np.abs(out + 0.5 * u.values[:, 0]).max() < 1e-10


def test_circle_constants_exact(circle256):
    op, grid, C = circle256
    u = Density(grid, np.full(grid.size, 2.0 - 1.0j))
    out = C.apply(u).values[:, 0]
    assert np.abs(out - 0.5 * u.values[:, 0]).max() < 1e-14


def test_circle_projection_defect(circle256):
    _, _, C = circle256
    assert projection_defect(C) < 1e-8


def test_fourier_oracle_is_exact_involution():
    C = fourier_cauchy_circle(128)
    assert projection_defect(C) < 1e-12


def test_projection_matches_fourier_oracle(circle256):
    _, _, C = circle256
    Pi = szego_projection(C)
    oracle = exact_szego_circle(256, 64)
    assert np.linalg.norm(Pi.matrix - oracle.matrix, 2) < 1e-8


def test_projection_defect_identity(circle256):
    _, _, C = circle256
    Pi = szego_projection(C)
    lhs = np.linalg.norm(Pi.matrix @ Pi.matrix - Pi.matrix, 2)
    rhs = projection_defect(C)
    assert abs(lhs - rhs) < 1e-13


def test_exact_szego_circle_action():
    oracle = exact_szego_circle(64, 16)
    g = oracle.grid
    up = circle_mode(g, 3)
    um = circle_mode(g, -1)
    assert np.abs(oracle.apply(up).values - up.values).max() < 1e-13
    assert np.abs(oracle.apply(um).values).max() < 1e-13


def test_exact_szego_circle_aliasing_guard():
    with pytest.raises(ValueError):
        exact_szego_circle(64, 40)


def test_interior_reproduction_polynomial(circle256):
    op, grid, _ = circle256
    zs = grid.nodes_complex()[:, 0]
    u = Density(grid, zs ** 2)
    rng = np.random.default_rng(1)
    for _ in range(10):
        r = 0.8 * rng.random() ** 0.5
        t = 2 * np.pi * rng.random()
        z = r * np.exp(1j * t)
        val = interior_eval(op, grid, u, [z])[0]
        assert abs(val - z ** 2) < 1e-10


def test_interior_guard_band(circle256):
    op, grid, _ = circle256
    u = Density(grid, np.ones(grid.size))
    with pytest.raises(ValueError):
        interior_eval(op, grid, u, [0.999 + 0j])
    with pytest.raises(ValueError):
        exterior_vanishing(op, grid, u, [1.001 + 0j])


def test_full_reproduction_with_volume_term(circle256):
    op, grid, _ = circle256
    vol = make_disc_grid(48, 48)
    zs = grid.nodes_complex()[:, 0]
    u = Density(grid, np.conj(zs))       # not a solution: d/dzbar of conj(z) is 1
    samples = np.ones(vol.weights.size)
    for z in (0.3 + 0.1j, -0.2 + 0.45j, 0.05 - 0.6j):
        val = interior_eval(op, grid, u, [z], volume=(vol, samples))[0]
        assert abs(val - np.conj(z)) < 1e-6


def test_volume_term_nonconstant_image():
    # u = conj(z)^2 / 2 has Au = conj(z); checks the interpolated subtraction
    op = build_dirac(1)
    grid = make_circle_grid(256)
    vol = make_disc_grid(64, 64)
    zs = grid.nodes_complex()[:, 0]
    u = Density(grid, 0.5 * np.conj(zs) ** 2)
    samples = np.conj(vol.nodes_complex())
    z = 0.25 - 0.15j
    val = interior_eval(op, grid, u, [z], volume=(vol, samples))[0]
    assert abs(val - 0.5 * np.conj(z) ** 2) < 1e-3


def test_exterior_point_with_volume_gives_zero(circle256):
    op, grid, _ = circle256
    vol = make_disc_grid(48, 48)
    zs = grid.nodes_complex()[:, 0]
    u = Density(grid, np.conj(zs))
    val = interior_eval(op, grid, u, [2.0 + 0.5j], volume=(vol, np.ones(vol.weights.size)),
                        allow_exterior=True)[0]
    assert abs(val) < 1e-6


def test_exterior_vanishing_hardy_traces(circle256):
    op, grid, _ = circle256
    zs = grid.nodes_complex()[:, 0]
    for m in range(6):
        u = Density(grid, zs ** m)
        assert exterior_vanishing(op, grid, u, [2.0 + 0j]) < 1e-10


def test_exterior_vanishing_detects_nonmember(circle256):
    op, grid, _ = circle256
    u = circle_mode(grid, -1)
    res = exterior_vanishing(op, grid, u, [2.0 + 0j])
    assert res > 0.1
    assert res == pytest.approx(0.5, abs=1e-10)   # equals 1/|w| at w = 2


def test_exterior_vanishing_of_projected_density(circle256):
    _, grid, C = circle256
    Pi = szego_projection(C)
    rng = np.random.default_rng(3)
    v = Density(grid, rng.standard_normal(grid.size)
                + 1j * rng.standard_normal(grid.size))
    op = build_dirac(1)
    res = exterior_vanishing(op, grid, Pi.apply(v), [2.0 + 0j])
    assert res <= 10 * max(projection_defect(C), 1e-12)


def test_jump_relation_near_boundary(circle256):
    op, grid, _ = circle256
    h = grid.spacing()
    zs = grid.nodes_complex()[:, 0]
    u = Density(grid, zs ** 2)
    for i in (0, 40, 171):
        z = (1 - 3 * h) * zs[i]
        val = interior_eval(op, grid, u, [z])[0]
        assert abs(val - z ** 2) < 1e-6


def test_interior_error_decreases_under_refinement_circle():
    # trace of 1/(z - 2): quadrature error decays like 2^-N, visible on
    # three rungs without hitting the floating-point floor
    op = build_dirac(1)
    errs = []
    z = 0.15 + 0.05j
    for N in (16, 24, 32):
        grid = make_circle_grid(N)
        zs = grid.nodes_complex()[:, 0]
        u = Density(grid, 1.0 / (zs - 2.0))
        errs.append(abs(interior_eval(op, grid, u, [z])[0] - 1.0 / (z - 2.0)))
    assert errs[2] < errs[1] < errs[0]


# ---------------------------------------------------------------------------
# three-sphere
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def hopf10():
    op = build_dirac(2)
    grid = make_s3_grid(10, 10, 10)
    C = assemble_cauchy(op, grid)
    return op, grid, C


def test_s3_constants_exact(hopf10):
    op, grid, C = hopf10
    vals = np.tile(np.array([1.0 + 0.5j, -2.0j]), (grid.size, 1))
    out = C.apply(Density(grid, vals)).values
    assert np.abs(out - 0.5 * vals).max() < 1e-13


def test_s3_interior_reproduction_trend():
    op = build_dirac(2)
    z = np.array([0.2, 0.1], complex)
    errs = []
    for s in (8, 10, 12):
        grid = make_s3_grid(s, s, s)
        zc = grid.nodes_complex()
        u = Density(grid, np.stack([zc[:, 0], np.zeros(grid.size)], axis=-1))
        val = interior_eval(op, grid, u, z)
        errs.append(np.abs(val - np.array([0.2, 0.0])).max())
    assert errs[2] < errs[1] < errs[0]
    assert errs[2] < 1e-5


def test_s3_exterior_vanishing_trend():
    op = build_dirac(2)
    errs = []
    for s in (8, 10, 12):
        grid = make_s3_grid(s, s, s)
        zc = grid.nodes_complex()
        u = Density(grid, np.stack([zc[:, 0], np.zeros(grid.size)], axis=-1))
        errs.append(exterior_vanishing(op, grid, u, np.array([1.8, 0.3], complex)))
    assert errs[2] < errs[1] < errs[0]
    assert errs[2] < 1e-3


def test_hopf_momentum_matches_dense(hopf10):
    op, grid, C = hopf10
    fast = HopfCauchy(op, grid)
    dense_defect = projection_defect(C)
    assert abs(fast.defect() - dense_defect) < 1e-10
    # random-density action through the reference-row table
    rng = np.random.default_rng(5)
    prof = rng.standard_normal((10, 2)) + 1j * rng.standard_normal((10, 2))
    mode = (3, -2)
    t1 = 2 * np.pi * np.arange(10) / 10
    t2 = 2 * np.pi * np.arange(10) / 10
    E, T1, T2 = np.meshgrid(np.arange(10), t1, t2, indexing="ij")
    phase = np.exp(1j * (mode[0] * T1 + mode[1] * T2))
    vals = phase.reshape(-1)[:, None] * np.repeat(prof, 100, axis=0)
    out_dense = C.apply(Density(grid, vals)).values
    ref = np.arange(10) * 100
    out_fast = fast.apply_torus_mode(prof, mode)
    assert np.abs(out_dense[ref] - out_fast).max() < 1e-11


def test_s3_defect_decreases_small_ladder():
    op = build_dirac(2)
    d1 = HopfCauchy(op, make_s3_grid(12, 12, 12)).defect()
    d2 = HopfCauchy(op, make_s3_grid(16, 16, 16)).defect()
    assert d2 < d1


def test_hopf_momentum_matches_dense_unequal_counts():
    op = build_dirac(2)
    grid = make_s3_grid(4, 6, 8)
    C = assemble_cauchy(op, grid)
    fast = HopfCauchy(op, grid)
    assert abs(fast.defect() - projection_defect(C)) < 1e-12
    rng = np.random.default_rng(0)
    prof = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    t1 = 2 * np.pi * np.arange(6) / 6
    t2 = 2 * np.pi * np.arange(8) / 8
    _, T1, T2 = np.meshgrid(np.arange(4), t1, t2, indexing="ij")
    phase = np.exp(1j * (2 * T1 - 3 * T2))
    vals = phase.reshape(-1)[:, None] * np.repeat(prof, 48, axis=0)
    out_dense = C.apply(Density(grid, vals)).values
    out_fast = fast.apply_torus_mode(prof, (2, -3))
    assert np.abs(out_dense[np.arange(4) * 48] - out_fast).max() < 1e-13


def test_assemble_rejects_dimension_mismatch():
    op2 = build_dirac(2)
    grid = make_circle_grid(16)
    with pytest.raises(ValueError):
        assemble_cauchy(op2, grid)


def test_density_shape_checks():
    grid = make_circle_grid(16)
    with pytest.raises(ValueError):
        Density(grid, np.ones(8))
    d = Density.from_function(grid, lambda z: z[0] ** 2)
    assert d.values.shape == (16, 1)


def test_operator_and_density_serialization():
    import json
    op = build_dirac(1)
    grid = make_circle_grid(8)
    C = assemble_cauchy(op, grid)
    doc = json.loads(C.to_json())
    assert doc["label"] == "C" and doc["N"] == 8 and doc["k"] == 1
    entries = np.array([complex(re, im) for re, im in doc["entries"]])
    np.testing.assert_allclose(entries, C.matrix.reshape(-1))
    u = Density(grid, np.arange(8) * (1 + 1j))
    d = json.loads(u.to_json())
    assert d["k"] == 1 and len(d["values"]) == 8
    gdoc = json.loads(grid.to_json())
    assert gdoc["type"] == "circle" and len(gdoc["nodes"]) == 8


def test_s3_conjugate_branch_solution_reproduced():
    # the Hardy space here also contains conjugate-type traces like
    # (conj z2, 0); both branches must reproduce from the boundary
    op = build_dirac(2)
    grid = make_s3_grid(12, 12, 12)
    zc = grid.nodes_complex()
    u = Density(grid, np.stack([np.conj(zc[:, 1]), np.zeros(grid.size)], axis=-1))
    z = np.array([0.15, 0.2], complex)
    val = interior_eval(op, grid, u, z)
    assert np.abs(val - np.array([0.2, 0.0])).max() < 1e-6
    assert exterior_vanishing(op, grid, u, np.array([1.9, 0.1], complex)) < 1e-4
