# mvre/services/coef_service.py

"""
Code file for housing CoefService. Backs `mvre coef`.
"""

# Default libs
from pathlib import Path

# Dependencies
from rich.table import Table
from rich import box

# Deps from this project
from ..objects.app_context import AppContext
from ..objects.config import Config
from ..objects.strategy import CoefficientReport
from ..utilities.functions_utility import render_renderable
from .strategies import extract_coefficients, load_artifact


def _significance(p: float | None) -> str:
    if p is None:
        return ""
    return "***" if p < 0.01 else "**" if p < 0.05 else "*" if p < 0.1 else ""


class CoefService:
    """
    Prints the coefficient report of an interpretable artifact. Black-box
    strategies raise NotInterpretableError, which main turns into exit code 2.
    """

    @staticmethod
    def run(ctx: AppContext, config: Config) -> CoefficientReport:
        artifact = load_artifact(Path(config.artifact))
        report = extract_coefficients(artifact)

        ctx.output_buffer.write(f"{artifact.name}: {artifact.strategy.family} "
            f"(interpretable, coefficients from the {report.source})")
        ctx.output_buffer.write(render_renderable(CoefService._table(report)))
        if report.dropped:
            ctx.output_buffer.write(f"dropped: {', '.join(report.dropped)}")
        if report.source == "regression":
            ctx.output_buffer.write("standard errors in parentheses; * p<0.1, ** p<0.05, *** p<0.01")
        return report


    @staticmethod
    def _table(report: CoefficientReport) -> Table:
        """
        Variable | coefficient (standard error), with t- and p-values for
        regression stages.
        """
        table = Table(box=box.SIMPLE_HEAD)
        table.add_column("Variable")
        table.add_column("Coefficient", justify="right")
        regression = report.source == "regression"
        if regression:
            table.add_column("t", justify="right")
            table.add_column("p", justify="right")

        for c in report.coefficients:
            estimate = f"{c.value:.4f}{_significance(c.p_value)}"
            if c.std_error is not None:
                estimate += f" ({c.std_error:.4f})"
            if regression:
                table.add_row(c.name, estimate,
                    "" if c.t_value is None else f"{c.t_value:.2f}",
                    "" if c.p_value is None else f"{c.p_value:.4f}")
            else:
                table.add_row(c.name, estimate)
        return table
