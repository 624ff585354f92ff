"""Command-line front end for throughput sweeps.

Exit codes: 0 success, 1 configuration error, 2 runtime error (including
max-rounds aborts unless ``--allow-aborts``).
"""

import argparse
import logging
import sys

from . import harness
from .errors import ConfigError, IndexARQError

log = logging.getLogger("indexarq")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off", ""}
_FLAGS = {"allow-aborts", "quiet"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser():
    p = _Parser(prog="indexarq", description="Broadcast ARQ throughput simulator (CSV output).")
    p.add_argument("--config", help="key=value file; command-line flags override it")
    p.add_argument("--protocol", default="all", choices=[*harness.PROTOCOLS, "all"])
    p.add_argument("--m", type=int, help="number of receivers")
    p.add_argument("--n", type=int, help="number of packets")
    p.add_argument("--epsilon", help="erasure probability: value, comma list, or a:b:step")
    p.add_argument("--n-sweep", help="comma list of packet counts (single epsilon only)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0, help="master seed (unsigned 64-bit)")
    p.add_argument("--mode", default="counting", choices=["counting", "payload"])
    p.add_argument("--payload-len", type=int, default=64)
    p.add_argument("--max-rounds-factor", type=int, default=50)
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    p.add_argument("--allow-aborts", action="store_true")
    p.add_argument("--quiet", action="store_true", help="no progress on stderr")
    return p


def read_config(path):
    """Turn a key=value file into argv tokens."""
    tokens = []
    try:
        fh = open(path)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("_", "-")
            if key == "config":
                raise ConfigError(f"{path}:{lineno}: nested config files are not supported")
            if key in _FLAGS:
                if value.lower() in _TRUE:
                    tokens.append(f"--{key}")
                elif value.lower() not in _FALSE:
                    raise ConfigError(f"{path}:{lineno}: {key} expects a boolean")
            else:
                tokens.append(f"--{key}={value}")
    return tokens


def parse_args(argv):
    parser = build_parser()
    first = parser.parse_args(argv)
    if first.config:
        args = parser.parse_args(read_config(first.config) + list(argv))
    else:
        args = first

    if args.m is None:
        raise ConfigError("--m is required")
    if args.epsilon is None:
        raise ConfigError("--epsilon is required")
    args.epsilons = harness.parse_epsilons(args.epsilon)
    if args.n_sweep:
        if len(args.epsilons) > 1:
            raise ConfigError("--n-sweep cannot be combined with an epsilon list")
        try:
            args.n_values = [int(v) for v in args.n_sweep.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"cannot parse --n-sweep {args.n_sweep!r}") from None
    elif args.n is not None:
        args.n_values = [args.n]
    else:
        raise ConfigError("--n or --n-sweep is required")
    if not 0 <= args.seed < 2**64:
        raise ConfigError(f"--seed must be an unsigned 64-bit integer, got {args.seed}")
    if args.trials < 1:
        raise ConfigError("--trials must be at least 1")
    if args.max_rounds_factor < 1:
        raise ConfigError("--max-rounds-factor must be at least 1")
    if args.payload_len < 1:
        raise ConfigError("--payload-len must be at least 1")
    args.protocols = list(harness.PROTOCOLS) if args.protocol == "all" else [args.protocol]
    return args


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse_args(argv)
    except ConfigError as exc:
        print(f"indexarq: config error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr)
    out = sys.stdout if args.out == "-" else args.out
    try:
        harness.sweep(args.protocols, args.m, args.n_values, args.epsilons, trials=args.trials,
                      master_seed=args.seed, mode=args.mode, payload_len=args.payload_len,
                      max_rounds_factor=args.max_rounds_factor, allow_aborts=args.allow_aborts,
                      out=out)
    except ConfigError as exc:
        print(f"indexarq: config error: {exc}", file=sys.stderr)
        return 1
    except (IndexARQError, OSError) as exc:
        print(f"indexarq: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
