"""Smoke test for the interfero extension module."""

import math

import interfero


def main() -> None:
    assert interfero.details_factor(4, 0.0) == 4.0
    assert abs(interfero.details_factor(3, 0.3) - (1 + 2 * math.cos(0.6))) < 1e-12

    homi = interfero.SpectralModeConfig(4, 5.0, 2.0)
    assert homi.well_separated()
    assert interfero.homi_probability(homi, 0.0) == 0.0
    taus, values = interfero.homi_pattern(homi, -1.5, 1.5, 301)
    assert len(taus) == len(values) == 301
    assert all(0.0 <= v <= 1.0 for v in values)

    oracle = interfero.coincidence_numeric(homi, [0.0, 0.37, 1.1])
    for tau, p in zip([0.0, 0.37, 1.1], oracle):
        assert abs(p - interfero.homi_probability(homi, tau)) < 1e-4

    slits = interfero.SlitConfig(4, 1e-5, 5e-4)
    assert interfero.msi_intensity(slits, 0.0) == 16.0

    mzi = interfero.SingleSpectrumConfig(3, 5.0, 2.0)
    assert mzi.center_frequency == 50.0
    assert abs(interfero.mzi_probability(mzi, 0.0) - 1.0) < 1e-15

    noon = interfero.SpectralModeConfig(2, 5.0, 2.0, 50.0)
    assert abs(interfero.noon_probability(noon, 0.0) - 1.0) < 1e-15

    single = interfero.SpectralModeConfig(1, 5.0, 2.0)
    assert abs(interfero.fisher_information(single, 0.0) - 2.0) < 1e-12
    tau_star, fi_max = interfero.max_fisher(single)
    assert abs(fi_max - 2.0) < 1e-9

    fit = interfero.sqrt_fi_vs_n_fit(5.0, 2.0, 1, 8)
    assert fit["slope"] > 0 and len(fit["points"]) == 8

    report = interfero.crlb_monte_carlo(single, 0.5, 2000, 100, 3)
    assert 0.5 < report["efficiency_ratio"] < 1.5

    checks = interfero.run_validation()
    assert all(c["pass"] for c in checks), [c for c in checks if not c["pass"]]

    try:
        interfero.SpectralModeConfig(0, 5.0, 2.0)
    except ValueError:
        pass
    else:
        raise AssertionError("invalid config accepted")

    print(f"ok: {len(checks)} checks, slope {fit['slope']:.4f}, {homi!r}")


if __name__ == "__main__":
    main()
