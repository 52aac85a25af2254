"""Smoke test for the kahler_contact extension module."""

import math

import kahler_contact as kc


def main():
    q = kc.Ambient.quadric(3, 1)
    ric = q.ricci()
    assert all(abs(ric[i][i] - 6.0) < 1e-12 for i in range(6))
    st = q.selftest(200, 7)
    assert max(st["pair_symmetry"], st["bianchi"], st["kahler_invariance"], st["skew"]) < 1e-12

    p = kc.Profile.theorem1(3, 0.3)
    assert abs(p.alpha - (-math.sqrt(2) / math.tan(math.sqrt(2) * 0.3))) < 1e-12
    assert abs(p.alpha * p.rho + 1.0) < 1e-12
    res = p.contact_residuals()
    assert max(res.values()) < 1e-10, res

    h = kc.Profile.theorem2(2, 4)
    assert abs(h.trace() - 4 * math.sqrt(2)) < 1e-12

    f, fp = kc.jacobi_solution(2.0, 1.0, 0.0, 0.5)
    g, gp = kc.jacobi_ode_oracle(2.0, 1.0, 0.0, 0.5)
    assert abs(f - g) < 1e-8 and abs(fp - gp) < 1e-8

    zeros = kc.focal_distances([(2.0, 0.0)], 2.0)
    assert abs(zeros[0] - kc.COMPACT_FOCAL_RADIUS) < 1e-10

    label, t = kc.classify_normal(2, [1.0, 0.0, 0.0, 0.0])
    assert label == "a-principal" and abs(t) < 1e-12
    c = math.cos(math.pi / 4)
    label, t = kc.classify_normal(2, [c, 0.0, 0.0, c])
    assert label == "a-isotropic", (label, t)

    sphere = kc.sphere_check(3, 2.0, 1e-3)
    assert sphere["xi_residual"] < 1e-8 and sphere["contact_defect"] < 1e-5

    tube = kc.c2_tube_check(0.5, 1e-3)
    hi, lo = tube["center_curvatures"]
    assert abs(hi - 2.0) < 1e-4 and abs(lo + 2.0 / 3.0) < 1e-4

    reports = kc.run_suite("theorem1", n=3, r=0.3)
    assert reports and all(r["pass"] for r in reports)

    try:
        kc.run_suite("no-such-suite")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown suite accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
