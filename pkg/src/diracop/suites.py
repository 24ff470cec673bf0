"""Named verification suites run by the command-line tool.

Each suite exercises one block of the library against its exactly known
answers and returns per-check metrics with pinned tolerances.  The suites
are deterministic for a fixed config and seed.
"""
from __future__ import annotations

import numpy as np

from .boundary_ops import (
    Density,
    HopfCauchy,
    assemble_cauchy,
    circle_mode,
    exact_szego_circle,
    exterior_vanishing,
    interior_eval,
    projection_defect,
    szego_projection,
)
from .cayley import (
    DicksonMatrix,
    Octonion,
    Quaternion,
    RealLinearMap,
    alternativity_check,
    commutant_multiplier,
    octonion_dirac,
    octonion_mult,
    x_form_multiplier,
    x_invertibility,
)
from .clifford import build_dirac, check_identities, principal_symbol
from .geometry import make_circle_grid, make_disc_grid, make_s3_grid
from .reporting import Check, SuiteResult
from .symbols import (
    CosphereSample,
    calibrate_kappa,
    cauchy_symbol,
    cosphere_samples,
    ellipticity_scan,
    numeric_symbol_extraction,
    projection_symbol,
    pv_integral_check,
)
from .toeplitz import (
    Multiplier,
    extension_op,
    hardy_basis,
    numeric_kernel_count,
    semicommutator,
    toeplitz_op,
    winding_index,
)

__all__ = ["run_suite", "SUITES", "convergence_table"]


def _tangent_samples(op, rng, count):
    dim = 2 * op.n
    out = []
    for _ in range(count):
        nu = rng.standard_normal(dim)
        nu /= np.linalg.norm(nu)
        v = rng.standard_normal(dim)
        v -= (v @ nu) * nu
        v /= np.linalg.norm(v)
        out.append(CosphereSample(z=nu, nu=nu, xi=v))
    return out


# ---------------------------------------------------------------------------


def suite_clifford(config) -> SuiteResult:
    n_max = max(int(config.get("n", 5)), 5)
    rng = np.random.default_rng(config["seed"])
    checks = []
    rows = []
    residuals = []
    for n in range(1, n_max + 1):
        op = build_dirac(n)
        rep = check_identities(op)
        residuals.append(rep.max_residual)
        checks.append(Check.equals(f"identities_n{n}", rep.max_residual, 0.0))
        sym_res = 0.0
        if n <= 4:
            for _ in range(100):
                xi = rng.standard_normal(2 * n)
                s = principal_symbol(op, xi)
                target = 0.25 * (xi @ xi) * np.eye(op.k)
                sym_res = max(sym_res, float(np.abs(s.conj().T @ s - target).max()))
            checks.append(Check.leq(f"symbol_factorization_n{n}", sym_res, 1e-12))
        rows.append((n, op.k, rep.max_residual, sym_res))

    op2 = build_dirac(2)
    verbatim = (np.array_equal(op2.alpha[0], [[0, 0], [0, 1]])
                and np.array_equal(op2.alpha[1], [[0, 0], [1, 0]])
                and np.array_equal(op2.beta[0], [[1, 0], [0, 0]])
                and np.array_equal(op2.beta[1], [[0, -1], [0, 0]]))
    checks.append(Check.flag("two_variable_family_canonical", verbatim))

    return SuiteResult(
        suite="clifford", checks=checks,
        tables={"clifford": (("n", "k", "identity_residual", "symbol_residual"), rows)},
        figures={"clifford_residuals": {
            "kind": "bar",
            "series": [("identity residual", list(range(1, n_max + 1)),
                        [max(r, 1e-18) for r in residuals])],
            "xlabel": "complex dimension n", "ylabel": "max residual",
            "title": "coefficient identity residuals"}},
    )


def suite_green(config) -> SuiteResult:
    nodes = int(config.get("nodes", 256))
    op = build_dirac(1)
    grid = make_circle_grid(nodes)
    vol = make_disc_grid(48, 48)
    zs = grid.nodes_complex()[:, 0]
    checks = []

    # disc quadrature sanity
    checks.append(Check.leq("disc_area", abs(vol.weights.sum() - np.pi), 1e-12))
    checks.append(Check.leq("disc_first_moment",
                            abs((vol.weights * vol.nodes_complex()).sum()), 1e-12))
    checks.append(Check.leq(
        "disc_radial_moment",
        abs((vol.weights * np.abs(vol.nodes_complex()) ** 2).sum() - np.pi / 2), 1e-10))

    # divergence-theorem consistency of the weighted normals
    surf = (grid.weights * grid.nodes[:, 0] * grid.normals[:, 0]).sum()
    checks.append(Check.leq("normal_pullback_disc", abs(surf - np.pi), 1e-12))
    g3 = make_s3_grid(16, 12, 12)
    surf3 = (g3.weights * g3.nodes[:, 0] * g3.normals[:, 0]).sum()
    checks.append(Check.leq("normal_pullback_four_ball",
                            abs(surf3 - np.pi ** 2 / 2), 1e-8))

    # full reproduction of the non-solution conj(z) with the volume term
    u = Density(grid, np.conj(zs))
    worst = 0.0
    rows = []
    for z in (0.3 + 0.1j, -0.2 + 0.45j, 0.05 - 0.6j, 0.5 + 0.0j):
        val = interior_eval(op, grid, u, [z],
                            volume=(vol, np.ones(vol.weights.size)))[0]
        err = abs(val - np.conj(z))
        rows.append((f"{z:.2f}", err))
        worst = max(worst, err)
    checks.append(Check.leq("green_formula_nonsolution", worst, 1e-6))

    return SuiteResult(
        suite="green", checks=checks,
        tables={"green": (("point", "reproduction_error"), rows)},
        figures={"green_errors": {
            "kind": "bar",
            "series": [("error", [r[0] for r in rows],
                        [max(r[1], 1e-18) for r in rows])],
            "xlabel": "evaluation point", "ylabel": "abs error",
            "title": "volume-corrected reproduction of conj(z)"}},
    )


def suite_cauchy(config) -> SuiteResult:
    n = int(config.get("n", 1))
    checks = []
    tables = {}
    figures = {}
    if n == 1:
        nodes = int(config.get("nodes", 256))
        op = build_dirac(1)
        grid = make_circle_grid(nodes)
        C = assemble_cauchy(op, grid)
        Pi = szego_projection(C)

        defect = projection_defect(C)
        checks.append(Check.leq("projection_defect", defect, 1e-8))
        oracle = exact_szego_circle(nodes, min(64, nodes // 4))
        dist = float(np.linalg.norm(Pi.matrix - oracle.matrix, 2))
        checks.append(Check.leq("szego_vs_fourier_oracle", dist, 1e-8))

        mode_errs = []
        ks = list(range(0, nodes // 4 + 1, max(nodes // 32, 1)))
        for k in ks:
            u = circle_mode(grid, k)
            err = float(np.abs(C.apply(u).values[:, 0] - 0.5 * u.values[:, 0]).max())
            mode_errs.append(err)
        checks.append(Check.leq("positive_mode_error", max(mode_errs), 1e-10))

        const = Density(grid, np.ones(nodes))
        cerr = float(np.abs(C.apply(const).values - 0.5).max())
        checks.append(Check.leq("constant_exactness", cerr, 1e-14))

        zs = grid.nodes_complex()[:, 0]
        rng = np.random.default_rng(config["seed"])
        u2 = Density(grid, zs ** 2)
        worst = 0.0
        for _ in range(10):
            r = 0.8 * rng.random() ** 0.5
            t = 2 * np.pi * rng.random()
            z = r * np.exp(1j * t)
            worst = max(worst, abs(interior_eval(op, grid, u2, [z])[0] - z ** 2))
        checks.append(Check.leq("interior_reproduction", worst, 1e-10))

        ext = 0.0
        for m in range(6):
            ext = max(ext, exterior_vanishing(op, grid, Density(grid, zs ** m),
                                              [2.0 + 0j]))
        checks.append(Check.leq("exterior_vanishing", ext, 1e-10))

        tables["cauchy_modes"] = (("mode", "abs_error"),
                                  list(zip(ks, mode_errs)))
        figures["cauchy_mode_errors"] = {
            "kind": "semilogy",
            "series": [("mode error", ks, [max(e, 1e-18) for e in mode_errs])],
            "xlabel": "Fourier mode", "ylabel": "max abs error",
            "title": f"eigenmode errors at N = {nodes}"}
    else:
        op = build_dirac(2)
        hopf = config.get("hopf") or (16, 16, 16)
        fine = tuple(int(round(1.5 * c)) for c in hopf)
        d_coarse = HopfCauchy(op, make_s3_grid(*hopf)).defect()
        d_fine = HopfCauchy(op, make_s3_grid(*fine)).defect()
        checks.append(Check.flag("s3_defect_decreases", d_fine < d_coarse))
        grid = make_s3_grid(8, 8, 8)
        C = assemble_cauchy(op, grid)
        vals = np.tile(np.array([1.0, -0.5j]), (grid.size, 1))
        cerr = float(np.abs(C.apply(Density(grid, vals)).values - 0.5 * vals).max())
        checks.append(Check.leq("constant_exactness", cerr, 1e-13))
        tables["s3_defect"] = (("grid", "defect"),
                               [("x".join(map(str, hopf)), d_coarse),
                                ("x".join(map(str, fine)), d_fine)])
        figures["s3_defect"] = {
            "kind": "bar",
            "series": [("defect", ["x".join(map(str, hopf)),
                                   "x".join(map(str, fine))],
                        [d_coarse, d_fine])],
            "xlabel": "Hopf grid", "ylabel": "projection defect",
            "title": "projection identity defect under refinement"}
    return SuiteResult(suite="cauchy", checks=checks, tables=tables,
                       figures=figures)


def suite_symbol(config) -> SuiteResult:
    rng = np.random.default_rng(config["seed"])
    checks = []
    kappa = calibrate_kappa()
    checks.append(Check.flag("kappa_calibration", True))
    checks.append(Check.leq("kappa_value_deviation", abs(kappa - 2j), 1e-12))

    worst = 0.0
    for n in (1, 2):
        op = build_dirac(n)
        for sample in _tangent_samples(op, rng, 100):
            P = projection_symbol(op, sample, kappa)
            worst = max(worst, float(np.abs(P @ P - P).max()))
    checks.append(Check.leq("projection_symbol_idempotency", worst, 1e-12))

    worst_pv = max(pv_integral_check(r) for r in (0.5, 1.0, 2.0))
    checks.append(Check.leq("pv_normalization", worst_pv, 1e-10))

    op1 = build_dirac(1)
    grid = make_circle_grid(1024)
    C = assemble_cauchy(op1, grid)
    ref = CosphereSample(z=[1.0, 0.0], nu=[1.0, 0.0], xi=[0.0, 1.0])
    exact = cauchy_symbol(op1, ref, kappa)[0, 0]
    errs = []
    omegas = (20.0, 40.0)
    for omega in omegas:
        val = numeric_symbol_extraction(C, 0, [0.0, 1.0], omega)[0]
        errs.append(abs(val - exact))
    checks.append(Check.leq("symbol_extraction_omega20", errs[0], 0.1))
    checks.append(Check.flag("symbol_extraction_improves", errs[1] < errs[0]))

    # Fredholm verdicts from the symbol of the extended operator
    grid256 = make_circle_grid(256)
    samples = cosphere_samples(grid256)

    def mult_exp(zpt):
        return np.array([[zpt[0] + 1j * zpt[1]]])

    def mult_cos(zpt):
        return np.array([[zpt[0]]])

    rep_exp = ellipticity_scan(op1, mult_exp, samples, kappa)
    rep_cos = ellipticity_scan(op1, mult_cos, samples, kappa)
    rep_eye = ellipticity_scan(op1, np.eye(1), samples, kappa)
    checks.append(Check.flag("nonvanishing_symbol_elliptic", rep_exp.elliptic))
    checks.append(Check.flag("vanishing_symbol_flagged", not rep_cos.elliptic))
    wz = rep_cos.witness.z
    wt = abs(abs(np.arctan2(wz[1], wz[0])) - np.pi / 2)
    checks.append(Check.leq("witness_near_zero_of_symbol", wt, 0.05))
    checks.append(Check.equals("identity_multiplier_min_sv",
                               rep_eye.min_singular_value, 1.0))

    # orthogonality of the projection symbol: measured, not asserted
    dev = 0.0
    op2 = build_dirac(2)
    for sample in _tangent_samples(op2, rng, 20):
        P = projection_symbol(op2, sample, kappa)
        dev = max(dev, float(np.abs(P - P.conj().T).max()))

    return SuiteResult(
        suite="symbol", checks=checks, kappa=kappa,
        json_docs={"ellipticity_cos": rep_cos.to_json_dict(),
                   "ellipticity_exp": rep_exp.to_json_dict()},
        tables={"symbol_extraction": (("omega", "abs_error"),
                                      list(zip(omegas, errs))),
                "symbol_selfadjointness": (("quantity", "value"),
                                           [("max |P - P*| over samples", dev)])},
        figures={"symbol_extraction": {
            "kind": "loglog",
            "series": [("extraction error", omegas, errs)],
            "xlabel": "probe frequency", "ylabel": "abs error",
            "title": "discrete symbol vs calibrated formula"}},
    )


_INDEX_RANGE = range(-3, 4)


def suite_toeplitz_index(config) -> SuiteResult:
    nodes = int(config.get("nodes", 256))
    sym_k = config.get("k")
    ks = [int(sym_k)] if sym_k is not None else list(_INDEX_RANGE)
    op = build_dirac(1)
    grid = make_circle_grid(nodes)
    theta = grid.params["theta"]
    C = assemble_cauchy(op, grid)
    Pi = szego_projection(C)
    Q = hardy_basis(Pi)
    checks = []
    rows = []
    tau = float(config.get("tol") or 1e-6)
    eta = float(config.get("eta") or 0.9)
    for k in ks:
        mult = Multiplier(grid, np.exp(1j * k * theta), f"exp({k}i theta)")
        wind = winding_index(mult.values[:, 0, 0])
        T = toeplitz_op(Pi, mult)
        est = numeric_kernel_count(Q.conj().T @ T.matrix @ Q, Q, nodes,
                                   tau=tau, eta=eta)
        E = extension_op(T, Pi)
        est_ext = numeric_kernel_count(E.matrix, None, nodes, tau=tau,
                                       eta=eta, full_space=True)
        agree = (not est.inconclusive and not est_ext.inconclusive
                 and est.index == wind.index == est_ext.index == -k)
        checks.append(Check.flag(f"index_agreement_k{k}", agree))
        rows.append({"symbol": mult.descriptor, "winding": wind.winding,
                     "ker": est.kernel_dim, "coker": est.cokernel_dim,
                     "index": est.index, "extension_index": est_ext.index,
                     "agree": bool(agree)})

    m1 = Multiplier(grid, np.exp(1j * theta), "exp(i theta)")
    m2 = Multiplier(grid, np.exp(-1j * theta), "exp(-i theta)")
    rep = semicommutator(Pi, C, m1, m2)
    checks.append(Check.leq("semicommutator_identity",
                            rep.identity_residual / rep.scale, 1e-9))
    above = int((rep.singular_values > 1e-6).sum())
    checks.append(Check.equals("semicommutator_rank", above, 1))

    sv = rep.singular_values[:64]
    return SuiteResult(
        suite="toeplitz-index", checks=checks,
        tables={"index_report": (("symbol", "winding", "ker", "coker",
                                  "index", "extension_index", "agree"),
                                 [tuple(r.values()) for r in rows]),
                "semicommutator_sv": (("j", "sigma_j"),
                                      list(enumerate(sv, start=1)))},
        json_docs={"index_report": rows},
        figures={"semicommutator_sv": {
            "kind": "semilogy",
            "series": [("singular values", list(range(1, len(sv) + 1)),
                        [max(v, 1e-18) for v in sv])],
            "xlabel": "index j", "ylabel": "sigma_j",
            "title": "semicommutator singular values"}},
        kappa=None,
    )


def suite_octonion(config) -> SuiteResult:
    rng = np.random.default_rng(config["seed"])
    checks = []

    worst_alt = 0.0
    for _ in range(1000):
        D = DicksonMatrix(Quaternion.random_rational(rng),
                          Quaternion.random_rational(rng))
        P = DicksonMatrix(Quaternion.random_rational(rng),
                          Quaternion.random_rational(rng))
        r1, r2 = alternativity_check(D, P)
        worst_alt = max(worst_alt, r1, r2)
    checks.append(Check.equals("alternativity_residual", worst_alt, 0.0))

    worst_comp = 0.0
    for _ in range(1000):
        x = Octonion(Quaternion(*rng.standard_normal(4)),
                     Quaternion(*rng.standard_normal(4)))
        y = Octonion(Quaternion(*rng.standard_normal(4)),
                     Quaternion(*rng.standard_normal(4)))
        lhs = octonion_mult(x, y).norm()
        rel = abs(lhs - x.norm() * y.norm()) / max(x.norm() * y.norm(), 1e-300)
        worst_comp = max(worst_comp, rel)
    checks.append(Check.leq("composition_law", worst_comp, 1e-12))

    one = Quaternion(1, 0, 0, 0)
    i, j = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0)
    zero = Quaternion(0, 0, 0, 0)
    lhs = octonion_mult(octonion_mult(Octonion(i, zero), Octonion(j, zero)),
                        Octonion(zero, one))
    rhs = octonion_mult(Octonion(i, zero),
                        octonion_mult(Octonion(j, zero), Octonion(zero, one)))
    checks.append(Check.flag("nonassociativity_witness", lhs != rhs))
    witness_doc = {"left": [float(c) for c in lhs.components()],
                   "right": [float(c) for c in rhs.components()]}

    od = octonion_dirac()
    Y0 = RealLinearMap.linear(np.zeros((2, 2)))
    worst_fwd = 0.0
    for _ in range(20):
        w1 = complex(rng.standard_normal(), rng.standard_normal())
        w2 = complex(rng.standard_normal(), rng.standard_normal())
        M = commutant_multiplier(x_form_multiplier(w1, w2), Y0)
        for _ in range(5):
            worst_fwd = max(worst_fwd, M.commutator(od.symbol(rng.standard_normal(8))).norm())
    checks.append(Check.leq("commutant_forward", worst_fwd, 1e-12))

    Mbad = commutant_multiplier(RealLinearMap.linear(np.diag([1.0, 2.0])), Y0)
    best_conv = max(Mbad.commutator(od.symbol(rng.standard_normal(8))).norm()
                    for _ in range(20))
    checks.append(Check.flag("commutant_converse", best_conv > 0.1))

    min_sv = np.inf
    lap_defect = 0.0
    for _ in range(1000):
        xi = rng.standard_normal(8)
        sv = od.symbol(xi).min_singular_value() / np.linalg.norm(xi)
        min_sv = min(min_sv, sv)
        lap_defect = max(lap_defect, od.laplacian_defect(xi / np.linalg.norm(xi)))
    checks.append(Check.flag("symbol_full_rank_random", min_sv > 1e-8))

    inv_rows = []
    for w1, w2 in ((0.0, 0.0), (1.0, 0.0), (1j, 0.0), (0.5 + 0.5j, -1.0j)):
        r = x_invertibility(w1, w2)
        inv_rows.append((str(w1), str(w2), r.invertible, r.real_determinant,
                         str(r.stated_expression), r.consistent_when_real))

    return SuiteResult(
        suite="octonion", checks=checks,
        json_docs={"nonassociativity_witness": witness_doc},
        tables={"x_invertibility": (("w1", "w2", "invertible", "real_det",
                                     "stated_det", "consistent_when_real"),
                                    inv_rows),
                "symbol_diagnostics": (("quantity", "value"),
                                       [("min sv / |xi| over random sample", min_sv),
                                        ("max quarter-Laplacian defect", lap_defect)])},
        figures={"octonion_symbol_rank": {
            "kind": "bar",
            "series": [("value", ["min sv ratio", "Laplacian defect"],
                        [min_sv, lap_defect])],
            "xlabel": "diagnostic", "ylabel": "value",
            "title": "conjugation-mixed symbol diagnostics"}},
    )


SUITES = {
    "clifford": suite_clifford,
    "green": suite_green,
    "cauchy": suite_cauchy,
    "symbol": suite_symbol,
    "toeplitz-index": suite_toeplitz_index,
    "octonion": suite_octonion,
}


def run_suite(name: str, config: dict) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    result = SUITES[name](config)
    if result.kappa is None:
        result.kappa = calibrate_kappa()
    return result


# ---------------------------------------------------------------------------
# convergence tables
# ---------------------------------------------------------------------------

CONVERGED_FLOOR = 1e-12


def _monotone(values) -> bool:
    """Strictly decreasing, treating values at the rounding floor as converged."""
    for a, b in zip(values, values[1:]):
        if b >= a and b > CONVERGED_FLOOR:
            return False
    return True


def convergence_table(suite: str, ladder, config) -> tuple:
    """Rows (size, metrics...) over a grid refinement ladder plus verdicts.

    Returns (header, rows, monotone_flags) where the flags name the columns
    whose monotone decrease is asserted.
    """
    if len(ladder) < 3 and suite == "cauchy":
        raise ValueError("need a ladder of at least three sizes")
    op1 = build_dirac(1)
    if suite == "cauchy":
        header = ("N", "projection_defect", "reproduction_error", "constant_error")
        rows = []
        for N in ladder:
            grid = make_circle_grid(int(N))
            C = assemble_cauchy(op1, grid)
            zs = grid.nodes_complex()[:, 0]
            u = Density(grid, 1.0 / (zs - 2.0))
            z0 = 0.15 + 0.05j
            rep = abs(interior_eval(op1, grid, u, [z0])[0] - 1.0 / (z0 - 2.0))
            const = Density(grid, np.ones(grid.size))
            cerr = float(np.abs(C.apply(const).values - 0.5).max())
            rows.append((int(N), projection_defect(C), float(rep), cerr))
        flags = {"projection_defect": _monotone([r[1] for r in rows]),
                 "reproduction_error": _monotone([r[2] for r in rows])}
        return header, rows, flags
    if suite == "s3-defect":
        op2 = build_dirac(2)
        header = ("size", "projection_defect")
        rows = []
        for s in ladder:
            rows.append((int(s), HopfCauchy(op2, make_s3_grid(int(s), int(s),
                                                              int(s))).defect()))
        flags = {"projection_defect": _monotone([r[1] for r in rows])}
        return header, rows, flags
    raise KeyError(f"no convergence table for suite {suite!r}")
