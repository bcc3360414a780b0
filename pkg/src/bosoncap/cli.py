"""Command-line interface.

Two commands: ``sweep`` evaluates the bound family (optionally with oracle
curves) over an input-energy grid and emits CSV, plus a rendered figure when
writing to a file; ``check`` runs the sandwich consistency harness.

Exit codes: 0 success, 1 usage error, 2 consistency failure (an attenuator
point violated the bound ordering), 3 truncation failure.

Sweep parameters come from, in increasing precedence: built-in defaults, a
JSON config file (``--config``), a figure preset (``--preset``), explicit
flags. A preset fixes the channel and environment; combining it with
channel/environment flags is rejected rather than silently reinterpreted.
"""

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .errors import TruncationError, UnsupportedOracleError
from .models import Attenuator, Amplifier, Thermal, SqueezedThermal, Fock, Generic
from .sweep import (
    ORACLE_CHOICES,
    UNIT_CHOICES,
    GridSpec,
    SweepConfig,
    amplifier_check_grid,
    attenuator_check_grid,
    consistency_report,
    preset_config,
    PRESETS,
    render_csv,
    report_exit_code,
    sweep_exit_code,
    sweep_rows,
    ConsistencyReport,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONSISTENCY = 2
EXIT_TRUNCATION = 3

_ENV_KINDS = ("thermal", "squeezed_thermal", "fock", "generic")
_CHANNEL_PARAM_KEYS = ("channel", "tau", "kappa", "env", "nth", "r", "fock_n", "ne", "se")
_SETTING_KEYS = _CHANNEL_PARAM_KEYS + (
    "preset",
    "n_grid",
    "units",
    "oracle",
    "fock_dim",
    "out",
    "plot",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with status 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bosoncap",
        description="Energy-constrained quantum-capacity bounds for bosonic "
        "attenuators and amplifiers with general environments.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="evaluate bounds over an input-energy grid")
    sw.add_argument("--preset", choices=sorted(PRESETS), help="figure preset")
    sw.add_argument("--config", help="JSON file with sweep settings")
    sw.add_argument("--channel", choices=("attenuator", "amplifier"))
    sw.add_argument("--tau", type=float, help="attenuator transmissivity in [0, 1]")
    sw.add_argument("--kappa", type=float, help="amplifier gain >= 1")
    sw.add_argument("--env", choices=_ENV_KINDS, help="environment model")
    sw.add_argument("--nth", type=float, help="thermal occupation of the environment")
    sw.add_argument("--r", type=float, help="squeezing parameter")
    sw.add_argument("--fock-n", type=int, help="Fock level of the environment")
    sw.add_argument("--ne", type=float, help="generic environment mean photon number")
    sw.add_argument("--se", type=float, help="generic environment entropy in nats")
    sw.add_argument("--n-grid", help="input photon grid as start:stop:count")
    sw.add_argument("--units", choices=UNIT_CHOICES)
    sw.add_argument("--oracle", choices=ORACLE_CHOICES)
    sw.add_argument("--fock-dim", type=int, help="pin the Fock-oracle truncation")
    sw.add_argument("--out", help="CSV output path (default: stdout)")
    sw.add_argument(
        "--plot",
        action="store_true",
        default=None,
        help="force figure rendering (default: on when --out is set)",
    )
    sw.add_argument(
        "--no-plot",
        action="store_true",
        help="skip figure rendering",
    )

    ck = sub.add_parser("check", help="run the bound-ordering consistency harness")
    ck.add_argument(
        "--grid",
        choices=("attenuator", "amplifier", "full"),
        default="full",
        help="which built-in parameter grid to check",
    )
    ck.add_argument("--oracle", choices=ORACLE_CHOICES, default="both")
    ck.add_argument("--fock-dim", type=int, help="override the harness truncation")
    ck.add_argument("--out", help="CSV report path (default: stdout)")
    return parser


def _parse_n_grid(value) -> tuple[float, float, int]:
    if isinstance(value, (list, tuple)) and len(value) == 3:
        return float(value[0]), float(value[1]), int(value[2])
    if isinstance(value, str):
        parts = value.split(":")
        if len(parts) == 3:
            try:
                return float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError:
                pass
    raise _UsageError(f"n_grid must look like start:stop:count, got {value!r}")


def _load_config_file(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as err:
        raise _UsageError(f"cannot read config file: {err}")
    except json.JSONDecodeError as err:
        raise _UsageError(f"config file is not valid JSON: {err}")
    if not isinstance(data, dict):
        raise _UsageError("config file must hold a JSON object")
    unknown = set(data) - set(_SETTING_KEYS)
    if unknown:
        raise _UsageError(
            f"unknown config keys {sorted(unknown)}; known keys: {', '.join(_SETTING_KEYS)}"
        )
    return data


def _require(settings: dict, key: str, context: str):
    if settings.get(key) is None:
        raise _UsageError(f"{context} requires --{key.replace('_', '-')}")
    return settings[key]


def _build_channel(settings: dict):
    kind = settings.get("channel")
    if kind is None:
        raise _UsageError("a channel is required: pass --preset, or --channel with its parameter")
    if kind == "attenuator":
        return Attenuator(float(_require(settings, "tau", "an attenuator")))
    if kind == "amplifier":
        return Amplifier(float(_require(settings, "kappa", "an amplifier")))
    raise _UsageError(f"unknown channel {kind!r}")


def _build_env(settings: dict):
    kind = settings.get("env")
    if kind is None:
        raise _UsageError("an environment is required: pass --preset, or --env with its parameters")
    if kind == "thermal":
        return Thermal(float(_require(settings, "nth", "a thermal environment")))
    if kind == "squeezed_thermal":
        return SqueezedThermal(
            float(_require(settings, "nth", "a squeezed thermal environment")),
            float(_require(settings, "r", "a squeezed thermal environment")),
        )
    if kind == "fock":
        return Fock(int(_require(settings, "fock_n", "a Fock environment")))
    if kind == "generic":
        return Generic(
            float(_require(settings, "ne", "a generic environment")),
            float(_require(settings, "se", "a generic environment")),
        )
    raise _UsageError(f"unknown environment {kind!r}")


def _merged_settings(args) -> dict:
    settings = {key: None for key in _SETTING_KEYS}
    settings.update({"n_grid": "0:5:101", "units": "bits", "oracle": "none"})
    if args.config:
        settings.update(_load_config_file(args.config))
    cli = {
        key: getattr(args, key)
        for key in _SETTING_KEYS
        if getattr(args, key, None) is not None
    }
    preset_name = cli.get("preset", settings.get("preset"))
    if preset_name is not None:
        fixed = [k for k in _CHANNEL_PARAM_KEYS if cli.get(k) is not None]
        if fixed:
            raise _UsageError(
                f"preset {preset_name!r} fixes the channel and environment; "
                f"drop {', '.join('--' + k.replace('_', '-') for k in fixed)} or the preset"
            )
    settings.update(cli)
    settings["preset"] = preset_name
    return settings


def _sweep_config(args) -> tuple[SweepConfig, str | None]:
    settings = _merged_settings(args)
    n_grid = _parse_n_grid(settings["n_grid"])
    fock_dim = None if settings["fock_dim"] is None else int(settings["fock_dim"])

    if settings["preset"] is not None:
        config = preset_config(
            settings["preset"],
            units=settings["units"],
            oracles=settings["oracle"],
            fock_dim=fock_dim,
            n_grid=n_grid,
            out=settings["out"],
        )
    else:
        config = SweepConfig(
            channel=_build_channel(settings),
            env=_build_env(settings),
            n_grid=n_grid,
            units=settings["units"],
            oracles=settings["oracle"],
            fock_dim=fock_dim,
            out=settings["out"],
        )

    force_plot = bool(settings.get("plot")) and not args.no_plot
    auto_plot = config.out is not None and not args.no_plot
    if force_plot and config.out is None:
        raise _UsageError("--plot needs --out to know where the figure goes")
    plot_path = str(Path(config.out).with_suffix(".png")) if (force_plot or auto_plot) else None
    return config, plot_path


def _cmd_sweep(args) -> int:
    config, plot_path = _sweep_config(args)
    rows = sweep_rows(config)
    text = render_csv(config, rows)
    if config.out is not None:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
    if plot_path is not None:
        from .plotting import plot_sweep

        plot_sweep(config, rows, plot_path)
    return sweep_exit_code(config, rows)


def _cmd_check(args) -> int:
    grids = []
    if args.grid in ("attenuator", "full"):
        grids.append(attenuator_check_grid())
    if args.grid in ("amplifier", "full"):
        grids.append(amplifier_check_grid())
    rows = []
    for grid in grids:
        grid = replace(grid, oracles=args.oracle)
        if args.fock_dim is not None:
            grid = replace(grid, fock_dim=args.fock_dim)
        rows.extend(consistency_report(grid).rows)
    report = ConsistencyReport(rows)
    text = report.to_csv()
    if args.out is not None:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    summary = (
        f"checked {len(report.rows)} points: "
        f"{'PASS' if report.passed else 'FAIL'}"
        f" ({report.truncation_failures} truncation failures)"
    )
    print(summary, file=sys.stderr)
    return report_exit_code(report)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_check(args)
    except _UsageError as err:
        print(f"bosoncap: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, UnsupportedOracleError) as err:
        print(f"bosoncap: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except TruncationError as err:
        hint = f" (suggested dimension: {err.suggested_dim})" if err.suggested_dim else ""
        print(f"bosoncap: truncation failure: {err}{hint}", file=sys.stderr)
        return EXIT_TRUNCATION


if __name__ == "__main__":
    sys.exit(main())
