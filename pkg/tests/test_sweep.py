import numpy as np
import pytest

from ionvit.model import Case, ModelParams, response_intensity, steady_state
from ionvit.spectra import collective_spectrum
from ionvit.workbench import Axis, Quantity, SweepSpec, run_sweep
from ionvit.workbench.lineshape import find_windows
from ionvit.workbench.scenarios import SCENARIOS, scenario
from ionvit.workbench.sweep import evaluate_line, fluctuation_dataset, response_dataset

BLUE = ModelParams(Case.BLUE, g_b=1, gamma_a=5, gamma_b=5)


def test_two_point_sweep():
    spec = SweepSpec(ModelParams(Case.RED, g_a=1), Axis("delta", -1, 1, 2), "ResponseA")
    ds = run_sweep(spec)
    assert ds.columns == ("delta", "abs2_A", "pole")
    assert len(ds) == 2
    assert [r[0] for r in ds.rows] == [-1.0, 1.0]


def test_row_order_axis2_major():
    spec = SweepSpec(BLUE, Axis("delta", -1, 1, 3), "ResponseB", Axis("g_a", 0, 1, 2))
    ds = run_sweep(spec)
    assert ds.columns == ("g_a", "delta", "abs2_B", "pole")
    assert [(r[0], r[1]) for r in ds.rows] == [(0, -1), (0, 0), (0, 1), (1, -1), (1, 0), (1, 1)]


def test_values_match_closed_form():
    p = ModelParams(Case.RED, g_a=2, g_b=3, gamma_a=4, gamma_b=5)
    ds = run_sweep(SweepSpec(p, Axis("delta", -5, 5, 11), "ResponseA"))
    expected = response_intensity(steady_state(p, np.linspace(-5, 5, 11)), p.chi)[0]
    np.testing.assert_array_equal(ds.column("abs2_A"), expected)


def test_pole_rows_flagged():
    spec = SweepSpec(BLUE, Axis("delta", -1, 1, 3), "ResponseA", Axis("g_a", 1, 3, 3))
    ds = run_sweep(spec)
    poles = [r for r in ds.rows if r[-1]]
    assert [(r[0], r[1]) for r in poles] == [(2.0, 0.0)]
    assert poles[0][2] is None
    assert all(r[2] is not None for r in ds.rows if not r[-1])


def test_parameter_axis_sweep():
    spec = SweepSpec(BLUE, Axis("g_a", 0, 4, 5), "ResponseA", delta=0.0)
    ds = run_sweep(spec)
    assert ds.columns == ("g_a", "abs2_A", "pole")
    assert [r[-1] for r in ds.rows] == [False, False, True, False, False]


def test_spectrum_sweep_over_omega():
    p = ModelParams(Case.RED, g_a=10, g_b=10, gamma_a=5, gamma_b=5)
    spec = SweepSpec(p, Axis("omega", -20, 20, 41), "SpectrumA", delta=0.5)
    ds = run_sweep(spec)
    np.testing.assert_array_equal(ds.column("S_A"),
                                  collective_spectrum(p, 0.5, np.linspace(-20, 20, 41), "A"))


def test_spectrum_over_delta_at_fixed_omega():
    p = ModelParams(Case.RED, g_a=1, g_b=2, gamma_a=3, gamma_b=4)
    vals, pole = evaluate_line(p, Quantity.SPECTRUM_C, "delta", np.array([-1.0, 0.0, 2.0]),
                               {"omega": 0.3})
    for d, v in zip([-1.0, 0.0, 2.0], vals):
        ref = run_sweep(SweepSpec(p, Axis("omega", 0.3, 0.4, 2), "SpectrumC", delta=d))
        assert v == ref.rows[0][1]
    assert not pole.any()


def test_fig2a_central_dip_deepens():
    ds = run_sweep(scenario("fig2a"))
    g = ds.column("g_a")
    y = ds.column("abs2_A")
    proms = []
    for gv in np.unique(g):
        line = y[g == gv]
        idx, prom = find_windows(line)
        centre = np.argmin(np.abs(idx - 1000))
        assert abs(idx[centre] - 1000) <= 2
        proms.append(prom[centre])
    assert np.all(np.diff(proms) > 0)


def test_fig5a_dataset():
    ds = run_sweep(scenario("fig5a"))
    assert ds.columns == ("g_a", "omega", "S_A", "pole")
    assert len(ds) == 5 * 2001


def test_all_scenarios_valid():
    for name, spec in SCENARIOS.items():
        assert isinstance(spec, SweepSpec), name


def test_workers_do_not_change_values():
    spec = SweepSpec(BLUE, Axis("delta", -3, 3, 61), "ResponseA", Axis("g_a", 0, 6, 7))
    assert run_sweep(spec, workers=1).rows == run_sweep(spec, workers=3).rows


@pytest.mark.parametrize("build", [
    lambda: Axis("bogus", 0, 1, 3),
    lambda: Axis("delta", 1, 0, 3),
    lambda: Axis("delta", 0, 1, 1),
    lambda: Axis.parse("delta", "0:1"),
    lambda: SweepSpec(BLUE, Axis("delta", 0, 1, 3), "Nope"),
    lambda: SweepSpec(BLUE, Axis("delta", 0, 1, 3), "ResponseA", Axis("delta", 0, 1, 3)),
    lambda: SweepSpec(BLUE, Axis("omega", 0, 1, 3), "ResponseA"),
    lambda: SweepSpec(BLUE, Axis("gamma_a", -1, 1, 3), "ResponseA"),
    lambda: SweepSpec(BLUE, Axis("g_b", -1, 1, 3), "ResponseA"),
    lambda: scenario("fig9z"),
])
def test_invalid_specs(build):
    with pytest.raises(ValueError):
        build()


def test_response_dataset_columns():
    p = ModelParams(Case.BLUE, g_a=2, g_b=1, gamma_a=5, gamma_b=5)
    ds = response_dataset(p, [-1.0, 0.0, 1.0])
    assert ds.columns[0] == "delta" and ds.columns[-1] == "pole"
    assert ds.rows[1][1:9] == (None,) * 8 and ds.rows[1][-1] is True
    a = steady_state(p, 1.0).a_s
    assert ds.rows[2][3:5] == (a.real, a.imag)


def test_fluctuation_dataset(fig4a):
    ds = fluctuation_dataset(fig4a, 0.0, np.linspace(-1, 1, 5))
    assert ds.columns == ("omega", "S_A", "S_B", "S_c") and len(ds) == 5
