"""
Main entry point for fsscoex - 5G / C-band FSS coexistence engine
"""

import argparse
import logging
import os
import sys
from pathlib import Path

# Add the parent directory to Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.config import config
from app.tools.assessment import assess
from app.tools.figures import FIGURES, build_figure
from app.tools.propagation import ClutterName
from app.tools.report import (
    ReportRow,
    format_row,
    frame_records,
    output_path,
    write_csv,
    write_json,
)
from app.tools.scenario import Scenario, load_scenario
from app.tools.solver import SeparationSolution, min_separation_distance
from app.tools.sweep import SweepSpec, SweptParameter, run_sweep, sweep_grid
from app.utils.errors import CoexistenceError, InfeasibleScenarioError
from app.utils.units import DistanceKm

# Configure logging
logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INFEASIBLE = 2

MAIN_LOBE_CAVEAT = (
    "The base station lies inside the earth station main lobe; "
    "even filters would not be effective in mitigating interference."
)


class CoexCLI:
    """Command-line interface for fsscoex"""

    def __init__(self, scenario_path: str | None = None):
        self.scenario_path = scenario_path
        self._scenario: Scenario | None = None

    @property
    def scenario(self) -> Scenario:
        if self._scenario is None:
            if self.scenario_path:
                self._scenario = load_scenario(self.scenario_path)
            else:
                logger.info("No scenario file given; using the study defaults")
                self._scenario = Scenario()
        return self._scenario

    def cmd_assess(self, distance_km: float, json_path: str | None = None) -> ReportRow:
        """Evaluate the scenario at one distance and print the report row"""
        result = assess(self.scenario, DistanceKm(distance_km))
        row = ReportRow.from_assessment(distance_km, result)
        print(format_row(row))
        print(f"Margin to protection criterion: {result.margin_to_protection_db:.2f} dB")
        print(f"Margin to saturation:           {result.margin_to_saturation_db:.2f} dB")
        if result.separation is not None and result.separation.main_lobe_flag:
            print(MAIN_LOBE_CAVEAT)
        if json_path:
            write_json([row.model_dump()], json_path)
        return row

    def cmd_solve(self, json_path: str | None = None) -> SeparationSolution:
        """Solve for the coordination distance and print it"""
        solution = min_separation_distance(self.scenario)
        print(f"Minimum separation distance: {solution.distance_km:.6g} km")
        print(f"Binding limit:               {solution.binding_limit} ({solution.limit_kind.value})")
        print(f"Off-axis angle:              {solution.off_axis_deg:.6g} deg")
        print(f"Earth station gain:          {solution.gain_dbi:.6g} dBi")
        if solution.main_lobe_flag:
            print(MAIN_LOBE_CAVEAT)
        if json_path:
            write_json([solution.model_dump(mode="json")], json_path)
        return solution

    def cmd_figure(self, figure_id: int, out: str | None = None) -> list[Path]:
        """Write the table behind one figure and print the output path"""
        figure = build_figure(figure_id, self.scenario)
        path = write_csv(figure.table, output_path(f"{figure.name}.csv", out))
        paths = [path]
        if figure.crossings is not None:
            crossings = path.with_name(f"{path.stem}_crossings.csv")
            paths.append(write_csv(figure.crossings, crossings))
        for written in paths:
            print(written)
        return paths

    def cmd_sweep(
        self,
        parameter: str,
        values: list[float | str],
        distance_km: float,
        out: str | None = None,
        json_path: str | None = None,
    ) -> Path:
        """Run a sweep and write its report table"""
        spec = SweepSpec(
            swept_parameter=SweptParameter(parameter),
            values=tuple(values),
            fixed_scenario=self.scenario,
            evaluation_distance_km=distance_km,
        )
        frame = run_sweep(spec)
        path = write_csv(frame, output_path(f"sweep_{spec.swept_parameter.value.lower()}.csv", out))
        print(path)
        if json_path:
            write_json(frame_records(frame), json_path)
        return path


def sweep_values(args: argparse.Namespace) -> list[float | str]:
    """Values for the sweep command, from --values or from the grid options"""
    if args.values:
        items = [item.strip() for item in args.values.split(",") if item.strip()]
        if args.param == SweptParameter.CLUTTER_CATEGORY.value:
            return items
        return [float(item) for item in items]
    if args.param == SweptParameter.CLUTTER_CATEGORY.value:
        return [name.value for name in ClutterName if name != ClutterName.CUSTOM]
    if args.start is None or args.stop is None:
        raise CoexistenceError("sweep needs --values or both --from and --to")
    return sweep_grid(args.start, args.stop, args.steps, log=args.log)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsscoex",
        description="5G / C-band FSS earth station coexistence engine",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    assess_cmd = commands.add_parser("assess", help="evaluate a scenario at one distance")
    assess_cmd.add_argument("--scenario", help="scenario YAML file")
    assess_cmd.add_argument("--distance-km", type=float, required=True)
    assess_cmd.add_argument("--json", help="also write the row as JSON")

    solve_cmd = commands.add_parser("solve", help="minimum separation distance")
    solve_cmd.add_argument("--scenario", help="scenario YAML file")
    solve_cmd.add_argument("--json", help="also write the solution as JSON")

    figure_cmd = commands.add_parser("figure", help="write the table behind a figure")
    figure_cmd.add_argument("--id", type=int, required=True, choices=sorted(FIGURES))
    figure_cmd.add_argument("--out", help="CSV path (default: output directory)")
    figure_cmd.add_argument("--scenario", help="scenario YAML file overriding the defaults")

    sweep_cmd = commands.add_parser("sweep", help="sweep one parameter")
    sweep_cmd.add_argument("--param", required=True, choices=[p.value for p in SweptParameter])
    sweep_cmd.add_argument("--from", dest="start", type=float)
    sweep_cmd.add_argument("--to", dest="stop", type=float)
    sweep_cmd.add_argument("--steps", type=int, default=10)
    sweep_cmd.add_argument("--log", action="store_true", help="geometric spacing")
    sweep_cmd.add_argument("--values", help="comma separated values")
    sweep_cmd.add_argument("--distance-km", type=float, default=10.0)
    sweep_cmd.add_argument("--scenario", help="scenario YAML file")
    sweep_cmd.add_argument("--out", help="CSV path (default: output directory)")
    sweep_cmd.add_argument("--json", help="also write the rows as JSON")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)
    cli = CoexCLI(scenario_path=args.scenario)

    try:
        config.validate()
        if args.command == "assess":
            cli.cmd_assess(args.distance_km, args.json)
        elif args.command == "solve":
            solution = cli.cmd_solve(args.json)
            if solution.main_lobe_flag:
                return EXIT_INFEASIBLE
        elif args.command == "figure":
            cli.cmd_figure(args.id, args.out)
        elif args.command == "sweep":
            cli.cmd_sweep(args.param, sweep_values(args), args.distance_km, args.out, args.json)
    except InfeasibleScenarioError as e:
        logger.error(f"Infeasible scenario: {e}")
        print(f"Infeasible scenario: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as e:
        # covers CoexistenceError and pydantic ValidationError
        logger.error(f"Validation failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
