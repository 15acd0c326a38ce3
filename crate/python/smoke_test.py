"""Smoke test for the nacf extension module.

Build and install first:  maturin develop --release -m crates/py/Cargo.toml
"""

import nacf


def main() -> None:
    f = nacf.Polynomial.f1n(4)
    assert f.coeffs == [4, 3, 2, 1]
    assert f.discriminant() == -200

    report = nacf.discriminant(4)
    assert report["squarefree_part"] == -2 and report["quad_field"] == -2
    assert report["factors"] == [(2, 3), (5, 2)]

    # exact big integers come back as Python ints
    big = nacf.closed_form_disc_f1n(80)
    assert big == nacf.Polynomial.f1n(80).discriminant() and abs(big) > 2**200

    f5 = nacf.Polynomial.f1n(5)
    assert f5.cycle_type(7) == [4]
    assert f5.cycle_type(11) == [3, 1]
    assert f5.certify()["verdict"] == "Irreducible"

    roots = nacf.Polynomial.f1n(12).roots()
    bound = nacf.check_bounds_f1n(12)
    assert len(roots) == 11 and bound["bound_ok"]
    assert all(1 - 1e-9 <= abs(z) < bound["upper_bound"] for z in roots)

    assert nacf.check_bounds_fpn(3, 100)["bound_ok"]
    assert all(nacf.binom_identity_check(n, k) for n in range(4, 30) for k in range(2, n))

    scan = nacf.conjecture_scan(2, 40)
    assert all(row["verdict"] == "Irreducible" for row in scan)

    g = nacf.classify_galois(7, 2, 20000)
    assert g["group"] == "PGL(2,5)", g
    assert nacf.group_order([[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]]) == 120

    theta = nacf.theta_coefficients(50)
    t51 = nacf.theorem51(2000)
    assert not t51["violations"]
    assert all(theta[p - 1] == 2 for p in t51["split_primes"] if p <= 50)

    eta = nacf.eta_product_mismatch(50)
    assert eta[0] == (1, 23, 2, -1, 0)
    assert all(row[2] is not None for row in eta)

    assert {nacf.ray_class(1, 1), nacf.ray_class(1, -1)} <= {0, 1, 2}
    try:
        nacf.ray_class(5, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("ideal not coprime to the modulus was accepted")

    print("nacf smoke test: ok")


if __name__ == "__main__":
    main()
