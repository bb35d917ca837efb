"""Batch command-line front end.

Every command emits a single JSON report with a fixed key order, embedding
the tool version and the SHA-256 of the raw input bytes, so identical
invocations produce byte-identical output.  ``--pretty`` switches to a
plain-text table (no color is ever emitted, so NO_COLOR is honored
trivially).  Exit codes: 0 success, 1 degenerate-input verdict under
``--strict``, 2 usage or input errors.
"""

import argparse
import hashlib
import json
import sys

from . import __version__
from .errors import DegenerateInputError, SloccGeoError
from .linalg import DEFAULT_PRIMES
from .states import parse_state, random_state, state_to_json
from .geometry import smoothness_scan, section_count
from .invariants import (
    SMOOTH_GENERIC,
    BOTH_DEGENERATE,
    classify,
    moduli_dimension,
    slocc_compare,
    _frac_str,
)
from .zalgebra import cubic_hilbert, quadratic_hilbert, roundtrip_check

TOOL = "sloccgeo"


def _read_input(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(f"{TOOL}: cannot read {path}: {exc.strerror}")


def _hash(data):
    return hashlib.sha256(data).hexdigest()


def _parse_primes(text):
    try:
        primes = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise SystemExit(f"{TOOL}: bad prime list {text!r}")
    if not primes:
        raise SystemExit(f"{TOOL}: empty prime list")
    return primes


def _cmd_classify(args):
    data = _read_input(args.state)
    t = parse_state(data)
    verdict = classify(t, args.primes)
    payload = {"format": [t.n, t.d]}
    payload.update(verdict.to_json_dict())
    return payload, _hash(data), verdict.status != SMOOTH_GENERIC


def _cmd_jinv(args):
    data = _read_input(args.state)
    t = parse_state(data)
    verdict = classify(t, args.primes)
    payload = {
        "format": [t.n, t.d],
        "status": verdict.status,
        "j": verdict.to_json_dict()["j"],
        "projections": [pr.to_json_dict() for pr in verdict.projections],
    }
    return payload, _hash(data), verdict.status != SMOOTH_GENERIC


def _cmd_equiv(args):
    data_a = _read_input(args.state_a)
    data_b = _read_input(args.state_b)
    result = slocc_compare(parse_state(data_a), parse_state(data_b), args.primes)
    return (
        result.to_json_dict(),
        [_hash(data_a), _hash(data_b)],
        result.outcome == BOTH_DEGENERATE,
    )


def _cmd_hyperdet(args):
    data = _read_input(args.state)
    t = parse_state(data)
    from .invariants import cayley_hyperdet, schlaefli_hyperdet

    if (t.n, t.d) == (3, 2):
        kind, value = "cayley", cayley_hyperdet(t)
    elif (t.n, t.d) == (4, 2):
        kind, value = "schlaefli", schlaefli_hyperdet(t)
    else:
        raise SloccGeoError(f"no hyperdeterminant for format {(t.n, t.d)}")
    payload = {
        "format": [t.n, t.d],
        "kind": kind,
        "value": _frac_str(value),
        "vanishes": value == 0,
    }
    return payload, _hash(data), value == 0


def _cmd_smoothness(args):
    data = _read_input(args.state)
    t = parse_state(data)
    report = smoothness_scan(t, args.primes)
    payload = {"format": [t.n, t.d]}
    payload.update(report.to_json_dict())
    return payload, _hash(data), report.verdict == "SingularFound"


def _cmd_hilbert(args):
    data = _read_input(args.state)
    t = parse_state(data)
    if (t.n, t.d) == (3, 3):
        runner, default_k = quadratic_hilbert, 4
    elif (t.n, t.d) == (4, 2):
        runner, default_k = cubic_hilbert, 5
    else:
        raise SloccGeoError(f"no Hilbert profile for format {(t.n, t.d)}")
    k_max = args.k_max if args.k_max is not None else default_k
    profiles = []
    degenerate = False
    for p in args.primes:
        try:
            profile = runner(t, p, k_max)
            profiles.append(profile.to_json_dict())
            degenerate = degenerate or not profile.matches()
        except (DegenerateInputError, SloccGeoError) as exc:
            profiles.append({"prime": p, "error": str(exc)})
            degenerate = True
    payload = {"format": [t.n, t.d], "k_max": k_max, "profiles": profiles}
    return payload, _hash(data), degenerate


def _cmd_roundtrip(args):
    data = _read_input(args.state)
    t = parse_state(data)
    results = []
    degenerate = False
    for p in args.primes:
        try:
            ok = roundtrip_check(t, p)
            results.append({"prime": p, "ok": ok})
            degenerate = degenerate or not ok
        except (DegenerateInputError, SloccGeoError) as exc:
            results.append({"prime": p, "error": str(exc)})
            degenerate = True
    payload = {"format": [t.n, t.d], "results": results}
    return payload, _hash(data), degenerate


def _cmd_sample(args):
    t = random_state(args.n, args.d, args.bound, args.seed)
    text = state_to_json(t) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return None, None, False


def _cmd_moduli_dim(args):
    payload = {
        "format": [args.n, args.d],
        "dimension": moduli_dimension(args.n, args.d),
        "sections": section_count(args.n, args.d),
    }
    return payload, None, False


def _pretty(payload):
    """Flatten the report into `dotted.key: value` lines (never colored)."""
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}{k}.", v)
        elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
            for i, v in enumerate(value):
                walk(f"{prefix}{i}.", v)
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    walk("", payload)
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(
        prog=TOOL,
        description="exact SLOCC classification through curve and surface models",
    )
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, state=True):
        if state:
            p.add_argument("state", help="state file (JSON)")
        p.add_argument(
            "--primes",
            type=_parse_primes,
            default=DEFAULT_PRIMES,
            help="comma-separated primes (default %(default)s)",
        )
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--pretty", action="store_true", help="text output instead of JSON")
        p.add_argument(
            "--strict",
            action="store_true",
            help="exit 1 when the verdict signals degenerate input",
        )

    common(sub.add_parser("classify", help="full verdict for a state"))
    common(sub.add_parser("jinv", help="projection j-invariants"))
    p_equiv = sub.add_parser("equiv", help="compare two states")
    p_equiv.add_argument("state_a")
    p_equiv.add_argument("state_b")
    common(p_equiv, state=False)
    common(sub.add_parser("hyperdet", help="Cayley or Schlaefli hyperdeterminant"))
    common(sub.add_parser("smoothness", help="finite-field smoothness sweep"))
    p_hil = sub.add_parser("hilbert", help="graded dimension profile")
    common(p_hil)
    p_hil.add_argument("--k-max", type=int, default=None, help="top degree (format default)")
    common(sub.add_parser("roundtrip", help="reconstruct the flattening image from points"))

    p_sample = sub.add_parser("sample", help="write a deterministic random state file")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--d", type=int, required=True)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--bound", type=int, default=5)
    p_sample.add_argument("--out", help="write the state to this path")

    p_dim = sub.add_parser("moduli-dim", help="orbit-space dimension for a format")
    p_dim.add_argument("--n", type=int, required=True)
    p_dim.add_argument("--d", type=int, required=True)
    p_dim.add_argument("--out", help="write the report to this path")
    p_dim.add_argument("--pretty", action="store_true")
    p_dim.add_argument("--strict", action="store_true")

    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "jinv": _cmd_jinv,
    "equiv": _cmd_equiv,
    "hyperdet": _cmd_hyperdet,
    "smoothness": _cmd_smoothness,
    "hilbert": _cmd_hilbert,
    "roundtrip": _cmd_roundtrip,
    "sample": _cmd_sample,
    "moduli-dim": _cmd_moduli_dim,
}


def run(argv):
    """Parse arguments, run one command, print its report; returns the
    exit code instead of raising SystemExit (except for usage errors)."""
    args = build_parser().parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        payload, input_hash, degenerate = handler(args)
    except DegenerateInputError as exc:
        payload = {"error": type(exc).__name__, "detail": str(exc)}
        input_hash = None
        degenerate = True
    except (SloccGeoError, IndexError, ValueError) as exc:
        print(f"{TOOL}: {exc}", file=sys.stderr)
        return 2
    if payload is None:  # sample writes the state file itself
        return 0
    report = {"tool": TOOL, "version": __version__, "command": args.command}
    report["input_hash"] = input_hash
    report.update(payload)
    text = _pretty(report) if getattr(args, "pretty", False) else json.dumps(report, indent=2) + "\n"
    out_path = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if degenerate and getattr(args, "strict", False):
        return 1
    return 0


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
