"""Smoke test for the gaussmix_py extension.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/gaussmix_py-*.whl
"""

import json
import math

import gaussmix_py as gm


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def main():
    sq = gm.SingleModeState(1.0, 0.0)
    close(sq.nonclassical_depth(), math.sqrt(2) - 1, 1e-12)
    assert not sq.p_classical()
    value, tau_star = sq.effective_nc()
    close(value, 1 + math.sqrt(2), 1e-8)
    close(tau_star, 0.5, 0.0)

    out = gm.mix(sq, 0.0, 0.5)
    inv = out.invariants()
    lp, lm = inv.symplectic_eigenvalues()
    close(lp, 0.5, 1e-12)
    close(lm, 0.5, 1e-12)
    assert inv.ppt_eigenvalues()[1] < 0.5
    close(out.to_list()[0][0], 1 + math.sqrt(2) / 2, 1e-12)

    emin, _, _ = out.emin_oracle(measured=2)
    close(emin, inv.emin(), 1e-6)

    r = gm.measures(0.0, 1.0, 0.0, 0.5)
    assert not r["entangled"] and r["discord_1g2"] > 0.0
    rb = gm.measures(0.0, 1.0, 0.0, 0.5, bits=True)
    close(rb["discord_1g2"], r["discord_1g2"] / math.log(2), 1e-15)

    close(gm.p_threshold_ns(1.0), 1 / 3, 1e-15)
    close(gm.sep_threshold_ns(2.0, 0.0, 0.3), 0.8, 1e-14)

    try:
        gm.SingleModeState(-1.0, 0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative photon number accepted")

    spec = {"version": 1, "kind": "tau_scan", "family": "thermal", "N": 10,
            "tau": {"min": 0, "max": 1, "count": 11}}
    table = json.loads(gm.run_sweep(json.dumps(spec), fmt="json"))
    assert len(table["rows"]) == 11
    assert table["rows"][0]["discord_1g2"] == 0.0
    csv = gm.run_sweep(json.dumps(spec))
    assert csv.startswith("# {") and len(csv.strip().splitlines()) == 13

    passed, samples, worst, tol = gm.run_check("depth-identity", 50)
    assert passed and samples == 50 and worst <= tol
    assert "emin-oracle" in gm.check_names()

    print(f"gaussmix_py {gm.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
