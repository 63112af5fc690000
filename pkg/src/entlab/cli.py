"""Command-line front end.

One logical command per process: build a request, run it (in-process against
the same handlers the HTTP service uses, or remotely with --server URL) and
write the canonical CSV. Identical configurations produce byte-identical
files either way.

Units: times are gamma*t, rates are ratios to gamma, temperature enters as
x = hbar*omega0/(kB*T) ("inf" = T = 0). A flat key=value config file can seed
any flag (keys are the flag names with dashes replaced by underscores);
explicit flags override the file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import pydantic

from .analysis import PARAM_NAMES
from .envmodels import MODEL_NAMES
from .errors import EntlabError, ValidationError
from .service import handlers, schemas

DEFAULT_STEPS = 2000
DEFAULT_PARAM_POINTS = 201


# --- parser ------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, with_state: bool = True) -> None:
    sub.add_argument("--config", metavar="FILE", help="key=value file seeding these flags")
    sub.add_argument("--server", metavar="URL", help="run against a service instead of in-process")
    sub.add_argument("--env", choices=MODEL_NAMES, required=True, help="environment model")
    sub.add_argument("--lambda-over-gamma", type=float, help="spectral width ratio (strong-t0)")
    sub.add_argument("--x", type=float, help="hbar*omega0/(kB*T); inf for T=0 (thermal models)")
    sub.add_argument("--omega0-over-gamma", type=float, default=10.0)
    if with_state:
        sub.add_argument("--r", type=float, required=True, help="purity in [0, 1]")
        sub.add_argument("--alpha-sq", type=float, required=True, help="alpha^2 in [0, 1]")
        sub.add_argument("--delta", type=float, default=0.0, help="phase of beta (default 0)")
    sub.add_argument("--tmax-gamma", type=float, help="scan horizon (default: model-dependent)")
    sub.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="grid points (>= 2)")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="entlab",
        description="Concurrence dynamics of two independent qubits under local noise.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)
    by_name: dict[str, argparse.ArgumentParser] = {}

    p = subs.add_parser("trajectory", help="both-family concurrence vs gamma*t, as CSV")
    _add_common(p)
    p.add_argument("--out", default="trajectory.csv", help="output CSV path")
    by_name["trajectory"] = p

    p = subs.add_parser("sweep", help="concurrence over (gamma*t, parameter), long-format CSV")
    _add_common(p)
    p.add_argument("--param", choices=PARAM_NAMES, required=True)
    p.add_argument("--param-min", type=float, required=True)
    p.add_argument("--param-max", type=float, required=True)
    p.add_argument("--param-points", type=int, default=DEFAULT_PARAM_POINTS)
    p.add_argument("--out", default="sweep.csv", help="output CSV path")
    by_name["sweep"] = p

    p = subs.add_parser("esd", help="ESD onset, dark intervals and touch points, as CSV")
    _add_common(p)
    p.add_argument("--family", choices=("phi", "psi"), required=True)
    p.add_argument("--zero-tol", type=float, default=1e-12)
    p.add_argument("--out", help="also write the CSV here (always printed to stdout)")
    by_name["esd"] = p

    p = subs.add_parser("figure", help="write a preset CSV (fig<N>.csv)")
    p.add_argument("--config", metavar="FILE", help="key=value file seeding these flags")
    p.add_argument("--server", metavar="URL")
    p.add_argument("--id", type=int, required=True, dest="fig_id", help="preset 1..6")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--param-points", type=int, default=DEFAULT_PARAM_POINTS)
    p.add_argument("--out-dir", default=".")
    by_name["figure"] = p

    p = subs.add_parser("validate", help="run the invariant suite; exit 0 iff all checks pass")
    p.add_argument("--config", metavar="FILE", help="key=value file seeding these flags")
    p.add_argument("--server", metavar="URL")
    p.add_argument("--checks", help="comma-separated subset of check names")
    p.add_argument("--seed", type=int, default=20240811)
    by_name["validate"] = p

    return parser, by_name


# --- config file ---------------------------------------------------------------


def load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def apply_config_defaults(sub: argparse.ArgumentParser, values: dict[str, str]) -> None:
    by_dest = {action.dest: action for action in sub._actions}
    defaults = {}
    for key, raw in values.items():
        action = by_dest.get(key)
        if action is None:
            raise ValidationError(f"unknown config key {key!r}")
        convert = action.type or str
        try:
            defaults[key] = convert(raw)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"config key {key!r}: {exc}") from exc
        if action.choices is not None and defaults[key] not in action.choices:
            raise ValidationError(
                f"config key {key!r}: {defaults[key]!r} not in {tuple(action.choices)}"
            )
        action.required = False
    sub.set_defaults(**defaults)


# --- remote client ---------------------------------------------------------------


class _Remote:
    def __init__(self, server: str):
        import httpx  # deferred: only --server runs need it at runtime

        self._httpx = httpx
        self._base = server.rstrip("/")

    def post(self, path: str, payload: pydantic.BaseModel, model):
        resp = self._httpx.post(
            f"{self._base}{path}", json=payload.model_dump(mode="python"), timeout=600.0
        )
        self._raise_for_status(resp)
        return model.model_validate(resp.json())

    def get_text(self, path: str, params: dict) -> str:
        resp = self._httpx.get(f"{self._base}{path}", params=params, timeout=600.0)
        self._raise_for_status(resp)
        return resp.text

    def _raise_for_status(self, resp) -> None:
        if resp.status_code >= 400:
            try:
                detail = resp.json().get("detail", resp.text)
            except ValueError:
                detail = resp.text
            raise ValidationError(f"server rejected request ({resp.status_code}): {detail}")


# --- dispatch ---------------------------------------------------------------------


def _env_spec(args: argparse.Namespace) -> schemas.EnvironmentSpec:
    return schemas.EnvironmentSpec(
        model=args.env,
        lambda_over_gamma=args.lambda_over_gamma,
        x=args.x,
        omega0_over_gamma=args.omega0_over_gamma,
    )


def _grid_spec(args: argparse.Namespace) -> schemas.GridSpec:
    return schemas.GridSpec(tmax_gamma=args.tmax_gamma, steps=args.steps)


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)
    print(f"wrote {path}")


def _cmd_trajectory(args) -> int:
    req = schemas.TrajectoryRequest(
        env=_env_spec(args), r=args.r, alpha_sq=args.alpha_sq, delta=args.delta,
        grid=_grid_spec(args),
    )
    if args.server:
        resp = _Remote(args.server).post("/api/trajectory", req, schemas.TrajectoryResponse)
    else:
        resp = handlers.run_trajectory(req)
    _write(args.out, resp.csv)
    return 0


def _cmd_sweep(args) -> int:
    req = schemas.SweepRequest(
        env=_env_spec(args), r=args.r, alpha_sq=args.alpha_sq, delta=args.delta,
        grid=_grid_spec(args), param=args.param, param_min=args.param_min,
        param_max=args.param_max, param_points=args.param_points,
    )
    if args.server:
        resp = _Remote(args.server).post("/api/sweep", req, schemas.SweepResponse)
    else:
        resp = handlers.run_sweep(req)
    _write(args.out, resp.csv)
    return 0


def _cmd_esd(args) -> int:
    req = schemas.EsdRequest(
        env=_env_spec(args), family=args.family, r=args.r, alpha_sq=args.alpha_sq,
        delta=args.delta, grid=_grid_spec(args), zero_tol=args.zero_tol,
    )
    if args.server:
        resp = _Remote(args.server).post("/api/esd", req, schemas.EsdResponse)
    else:
        resp = handlers.run_esd(req)
    sys.stdout.write(resp.csv)
    if args.out:
        _write(args.out, resp.csv)
    return 0


def _cmd_figure(args) -> int:
    req = schemas.FigureRequest(
        fig_id=args.fig_id, steps=args.steps, param_points=args.param_points
    )
    if args.server:
        csv = _Remote(args.server).get_text(
            f"/api/figures/{req.fig_id}",
            {"steps": req.steps, "param_points": req.param_points},
        )
        filename = f"fig{req.fig_id}.csv"
    else:
        resp = handlers.run_figure(req)
        csv, filename = resp.csv, resp.filename
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write(str(out / filename), csv)
    return 0


def _cmd_validate(args) -> int:
    names = [n.strip() for n in args.checks.split(",") if n.strip()] if args.checks else None
    req = schemas.ValidateRequest(checks=names, seed=args.seed)
    if args.server:
        resp = _Remote(args.server).post("/api/validate", req, schemas.ValidateResponse)
    else:
        resp = handlers.run_validate(req)
    for check in resp.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name}: {check.detail}")
    print(f"{'all checks passed' if resp.passed else 'SOME CHECKS FAILED'}")
    return 0 if resp.passed else 1


_COMMANDS = {
    "trajectory": _cmd_trajectory,
    "sweep": _cmd_sweep,
    "esd": _cmd_esd,
    "figure": _cmd_figure,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, by_name = build_parser()
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config:
            sub = next((a for a in argv if not a.startswith("-")), None)
            if sub in by_name:
                apply_config_defaults(by_name[sub], load_config_file(known.config))
        args = parser.parse_args(argv)
        return _COMMANDS[args.subcommand](args)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first.get("loc", ()))
        print(f"entlab: invalid value for {loc}: {first.get('msg')}", file=sys.stderr)
        return 1
    except EntlabError as exc:
        print(f"entlab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
