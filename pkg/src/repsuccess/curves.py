"""Long-format curve data (curve_label, x, y) for re-plotting the figures."""

from __future__ import annotations

import csv
import io
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError
from .numkernel import normal_isf
from .power import PowerSpec, TWO_TRIALS, power
from .projects import ProjectRecord, dinf_sweep, group_by_project
from .rates import (
    ProjectPowerSpec,
    project_power_rs,
    project_power_two_trials,
    t1e_closed_c1,
    t1e_quadrature,
    t1e_two_trials,
)
from .sceptical import alpha_prime, d_inf, d_min, golden_level, nominal_level

Row = Tuple[str, float, float]
FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig7")


def _grid(start: float, stop: float, step: float) -> List[float]:
    n = int(round((stop - start) / step))
    return [round(start + i * step, 12) for i in range(n + 1)]


def c_grid() -> List[float]:
    """Log-spaced relative sample sizes from 0.1 to 20, containing 1 exactly."""
    return [round(10 ** (k / 20), 12) for k in range(-20, 27)]


def fig2(alpha: float = 0.025, cs: Sequence[float] = (0.5, 1, 2, 5, 10)) -> List[Row]:
    """Minimum relative effect size against p_o for both methods."""
    golden = golden_level(alpha)
    rows: List[Row] = []
    p_rs = sorted(set(_grid(0.0005, 0.06, 0.0005) + [alpha]))
    p_rs = [p for p in p_rs if p < golden.alpha_s]
    for p_o in p_rs:
        rows.append(("rs_golden;d_inf", p_o, d_inf(normal_isf(p_o), golden)))
    for c in cs:
        for p_o in p_rs:
            rows.append((f"rs_golden;c={c:g}", p_o, d_min(normal_isf(p_o), c, golden)))
    z_a = normal_isf(alpha)
    for c in cs:
        for p_o in p_rs:
            if p_o <= alpha:
                rows.append((f"2tr;c={c:g}", p_o, z_a / (normal_isf(p_o) * c ** 0.5)))
    return rows


def fig3(alpha: float = 0.025, cs: Sequence[float] = (1, 5), shrinkages: Sequence[float] = (0.0, 0.2)) -> List[Row]:
    """Conditional power against p_o; exact zeros are left out."""
    methods = (
        ("2tr", golden_level(alpha), TWO_TRIALS),
        ("rs_golden", golden_level(alpha), "replication-success"),
        ("rs_nominal", nominal_level(alpha), "replication-success"),
    )
    rows: List[Row] = []
    p_grid = _grid(0.0001, 0.07, 0.0001)
    for c in cs:
        for name, level, method in methods:
            for s in shrinkages:
                label = f"c={c:g};{name};s={s:g}"
                for p_o in p_grid:
                    value = power(PowerSpec(normal_isf(p_o), c, level, s, method=method))
                    if value > 0.0:
                        rows.append((label, p_o, value))
    return rows


def fig4(alpha: float = 0.025, beta: float = 0.1, cs: Optional[Sequence[float]] = None) -> List[Row]:
    """Type-I error rate and project power against c."""
    cs = list(cs) if cs is not None else c_grid()
    golden, nominal = golden_level(alpha), nominal_level(alpha)
    rows: List[Row] = []
    for c in cs:
        rows.append(("t1e;2tr", c, t1e_two_trials(alpha).value))
    for name, level in (("golden", golden), ("nominal", nominal)):
        for c in cs:
            value = t1e_closed_c1(level).value if c == 1 else t1e_quadrature(c, level).value
            rows.append((f"t1e;{name}", c, value))
    for c in cs:
        rows.append(("pp;2tr", c, project_power_two_trials(ProjectPowerSpec(alpha, beta, c, golden)).value))
    for name, level in (("golden", golden), ("nominal", nominal)):
        for c in cs:
            rows.append((f"pp;{name}", c, project_power_rs(ProjectPowerSpec(alpha, beta, c, level)).value))
    for c in cs:
        spec = ProjectPowerSpec(alpha, beta, c, golden, restrict_to_significant=True)
        rows.append(("pp;golden_restricted", c, project_power_rs(spec).value))
    return rows


def fig5(alphas: Optional[Sequence[float]] = None) -> List[Row]:
    """Type-I error rate at c = 1 against alpha."""
    alphas = list(alphas) if alphas is not None else _grid(0.001, 0.1, 0.001)
    rows: List[Row] = []
    for a in alphas:
        rows.append(("2tr", a, t1e_two_trials(a).value))
    for a in alphas:
        rows.append(("golden", a, t1e_closed_c1(golden_level(a)).value))
    for a in alphas:
        rows.append(("nominal", a, t1e_closed_c1(nominal_level(a)).value))
    return rows


def fig7(records: Sequence[ProjectRecord], alpha: float = 0.025, grid: Optional[Sequence[float]] = None) -> List[Row]:
    """Success proportions against the limiting relative effect size, per project."""
    grid = list(grid) if grid is not None else _grid(0.5, 1.1, 0.01)
    rows: List[Row] = [("alpha_prime", d, alpha_prime(alpha, d)) for d in grid]
    for project, recs in group_by_project(records).items():
        sweep = dinf_sweep(recs, alpha, grid)
        rows += [(f"{project};RS", r.d_inf, r.rs_rate) for r in sweep]
        rows += [(f"{project};2TR", r.d_inf, r.ttr_rate_at_alpha_prime) for r in sweep]
        rows += [(f"{project};both", r.d_inf, r.both_rate) for r in sweep]
    return rows


def curve_rows(figure: str, records: Optional[Sequence[ProjectRecord]] = None, **params) -> List[Row]:
    if figure == "fig7":
        if not records:
            raise DomainError("fig7 needs project records")
        return fig7(records, **params)
    builders = {"fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5}
    if figure not in builders:
        raise DomainError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")
    return builders[figure](**params)


def write_curves(rows: Iterable[Row], fh: io.TextIOBase) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["curve_label", "x", "y"])
    for label, x, y in rows:
        writer.writerow([label, repr(float(x)), repr(float(y))])
