"""Command-line front end: ``horolift <group> <command> [options]``.

Every invocation is first turned into a :class:`RunConfig`, a flat record of
the literal option values.  ``--dump-config`` prints it as JSON and
``--config FILE`` replays one, so a run can be reproduced from its record.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, fields

from . import __version__
from . import experiments as ex
from . import iet as iet_mod
from . import pairing, perm, surface
from .errors import ERROR_CODES, HorolifError, ParseError
from .numbers import format_scalar, parse_scalar, parse_vector, vector_kind

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_POSITIVE = 2

COMMANDS = {
    "perm": ("info",),
    "iet": ("eval", "orbit", "eps", "connections"),
    "pair": ("q", "cone", "null", "positive"),
    "surface": ("suspend", "flow", "phi", "horiz", "rel"),
    "exp": ("line-scan", "mahler", "trace", "diagnose"),
}


@dataclass
class RunConfig:
    """Literal option values of one run; vectors and scalars stay as text."""

    group: str = ""
    command: str = ""
    sigma: str | None = None
    lengths: str | None = None
    heights: str | None = None
    point: str | None = None
    n: int | None = None
    mmax: int | None = None
    backward: bool = False
    include_origin: bool = False
    seeds: int | None = None
    orbit: int | None = None
    g: str | None = None
    h: str | None = None
    r: str | None = None
    rho: str | None = None
    rel_dir: str | None = None
    t: str | None = None
    d: int | None = None
    samples: int | None = None
    sampler: str = "lebesgue"
    window: str | None = None
    depth: int = 20
    schedule_cap: int | None = None
    zeta: str | None = None
    tgrid: str | None = None
    seed: int = 0
    threads: int | None = None
    exact: bool = False
    require_positive: bool = False
    out: str | None = None
    svg: str | None = None

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"config is not valid JSON: {exc}") from None
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ParseError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)


# --- argument parsing ------------------------------------------------------------


def _common(sp):
    sp.add_argument("--sigma", help="permutation, e.g. 4,3,2,1")
    sp.add_argument("--exact", action="store_true", help="reject float literals")
    sp.add_argument("--threads", type=int, help="worker threads for scans")
    sp.add_argument("--config", help="read the run configuration from a JSON file")
    sp.add_argument("--dump-config", action="store_true", help="print the run configuration and exit")


def _vectors(sp, lengths="--lengths"):
    sp.add_argument(lengths, dest="lengths", help="comma separated lengths (p/q, decimals, phi)")


def build_parser():
    ap = argparse.ArgumentParser(prog="horolift", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"horolift {__version__}")
    groups = ap.add_subparsers(dest="group", required=True)

    g = groups.add_parser("perm", help="permutation combinatorics").add_subparsers(dest="command", required=True)
    _common(g.add_parser("info", help="stratum data of the suspension"))

    g = groups.add_parser("iet", help="interval exchanges").add_subparsers(dest="command", required=True)
    for name in COMMANDS["iet"]:
        sp = g.add_parser(name)
        _common(sp)
        _vectors(sp)
        if name in ("eval", "orbit"):
            sp.add_argument("--x", dest="point", required=True, help="point of the interval")
        if name in ("orbit", "eps"):
            sp.add_argument("--n", type=int, required=True)
        if name == "orbit":
            sp.add_argument("--backward", action="store_true")
        if name == "connections":
            sp.add_argument("--mmax", type=int, default=1000)
            sp.add_argument("--include-origin", action="store_true", help="also report landings on x_0")

    g = groups.add_parser("pair", help="the form Q and positive pairs").add_subparsers(dest="command", required=True)
    for name in COMMANDS["pair"]:
        sp = g.add_parser(name)
        _common(sp)
        if name == "positive":
            _vectors(sp, "--a")
        if name in ("cone", "positive"):
            sp.add_argument("--b", dest="heights")
        if name == "positive":
            sp.add_argument("--seeds", type=int, default=32)
            sp.add_argument("--orbit", type=int, default=10**6)
            sp.add_argument("--mmax", type=int, default=10**4)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--require-positive", action="store_true")

    g = groups.add_parser("surface", help="Masur suspensions").add_subparsers(dest="command", required=True)
    for name in COMMANDS["surface"]:
        sp = g.add_parser(name)
        _common(sp)
        _vectors(sp, "--a")
        sp.add_argument("--b", dest="heights")
        sp.add_argument("--svg", help="write the polygon as SVG")
        if name == "flow":
            sp.add_argument("--g", help="geodesic time t")
            sp.add_argument("--h", help="horocycle parameter s")
            sp.add_argument("--r", help="rotation angle")
        if name == "phi":
            sp.add_argument("--rho", help="also list saddle connections up to this length")
        if name == "rel":
            sp.add_argument("--rel-dir", required=True)
            sp.add_argument("--t", required=True)

    g = groups.add_parser("exp", help="experiments").add_subparsers(dest="command", required=True)
    for name in COMMANDS["exp"]:
        sp = g.add_parser(name)
        _common(sp)
        if name == "mahler":
            sp.add_argument("--d", type=int, required=True)
        else:
            _vectors(sp, "--a")
        if name in ("line-scan", "trace"):
            sp.add_argument("--b", dest="heights")
        if name in ("line-scan", "mahler"):
            sp.add_argument("--samples", type=int, default=200)
            sp.add_argument("--sampler", choices=("lebesgue", "cantor", "grid"), default="lebesgue")
            sp.add_argument("--window", required=True, help="LO,HI")
            sp.add_argument("--depth", type=int, default=20, help="Cantor digits")
            sp.add_argument("--seed", type=int, default=0)
        if name != "trace":
            sp.add_argument("--schedule-cap", type=int, default=2**20)
            sp.add_argument("--zeta")
        else:
            sp.add_argument("--tgrid", default="0,8,0.5", help="LO,HI,STEP")
        sp.add_argument("--out", help="CSV path; a summary JSON is written next to it")
    return ap


def config_from_args(ns):
    if getattr(ns, "config", None):
        with open(ns.config) as fh:
            cfg = RunConfig.from_json(fh.read())
        if ns.threads is not None:
            cfg.threads = ns.threads
        return cfg
    values = {f.name: getattr(ns, f.name) for f in fields(RunConfig) if hasattr(ns, f.name)}
    return RunConfig(**values)


# --- helpers -----------------------------------------------------------------------


class _Ctx:
    def __init__(self, cfg, stderr):
        self.cfg = cfg
        self.stderr = stderr
        self.warned = False

    def vector(self, text, name):
        if text is None:
            raise ParseError(f"--{name} is required")
        v = parse_vector(text)
        self._check_kind(vector_kind(v), name)
        return v

    def scalar(self, text, name):
        v = parse_scalar(text)
        self._check_kind("float" if isinstance(v, float) else "exact", name)
        return v

    def _check_kind(self, kind, name):
        if kind != "float":
            return
        if self.cfg.exact:
            raise ParseError(f"--{name} contains a float literal but --exact was given")
        if not self.warned:
            self.stderr.write("warning: float literal given, using the float backend\n")
            self.warned = True

    def perm(self):
        if self.cfg.sigma is None:
            raise ParseError("--sigma is required")
        return perm.Permutation.parse(self.cfg.sigma)

    def window(self):
        lo, hi = _floats(self.cfg.window, 2, "window")
        return (lo, hi)


def _floats(text, count, name):
    if text is None:
        raise ParseError(f"--{name} is required")
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise ParseError(f"malformed --{name} {text!r}") from None
    if len(vals) != count:
        raise ParseError(f"--{name} needs {count} comma separated numbers")
    return vals


def _emit(out, obj):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _schedule(cfg):
    return ex.geometric_schedule(cfg.schedule_cap or 2**20)


def _scan_config(cfg):
    zeta = None if cfg.zeta is None else float(cfg.zeta)
    return ex.ScanConfig(schedule=_schedule(cfg), zeta=zeta, threads=cfg.threads)


def _finish_scan(ctx, out, records, d, extra):
    summary = ex.summarize(records)
    summary.update(extra)
    if ctx.cfg.out:
        ex.write_artifacts(ctx.cfg.out, records, d, summary)
        _emit(out, summary)
    else:
        out.write(ex.records_to_csv(records, d))
    return EXIT_OK


# --- commands ----------------------------------------------------------------------


def _perm_info(ctx, out):
    p = ctx.perm()
    rec = {"sigma": list(p.sigma), "d": p.d, "irreducible": perm.is_irreducible(p)}
    if rec["irreducible"]:
        st = perm.singularity_data(p)
        rec.update(
            admissible=perm.is_admissible(p), k=st.k, orders=list(st.orders), genus=st.genus
        )
    else:
        rec.update(admissible=False, k=None, orders=None, genus=None)
    _emit(out, rec)
    return EXIT_OK


def _iet(ctx, out):
    cfg = ctx.cfg
    p = ctx.perm()
    T = iet_mod.Iet(p, ctx.vector(cfg.lengths, "lengths"))
    cmd = cfg.command
    if cmd in ("eval", "orbit"):
        x = ctx.scalar(cfg.point, "x")
        if T.exact and isinstance(x, float):
            T = T.as_float()
        if cmd == "eval":
            _emit(out, {"x": format_scalar(x), "T(x)": format_scalar(T(x))})
        else:
            pts = T.orbit(x, cfg.n, "backward" if cfg.backward else "forward")
            _emit(out, {"orbit": [format_scalar(v) for v in pts]})
    elif cmd == "eps":
        e = T.epsilon_n(cfg.n)
        _emit(out, {"n": cfg.n, "eps_n": format_scalar(e) if e != math.inf else None})
    else:
        conns = T.detect_connections(cfg.mmax, cfg.include_origin)
        _emit(
            out,
            {
                "mmax": cfg.mmax,
                "connections": [
                    {"i": c.i, "j": c.j, "m": c.m, "approximate": c.approximate} for c in conns
                ],
            },
        )
    return EXIT_OK


def _pair(ctx, out):
    cfg = ctx.cfg
    p = ctx.perm()
    cmd = cfg.command
    if cmd == "q":
        Q = pairing.q_matrix(p)
        _emit(out, {"matrix": [list(r) for r in Q.matrix], "rank": Q.rank(), "nullity": Q.nullity()})
        return EXIT_OK
    if cmd == "null":
        _emit(out, {"basis": [list(v) for v in pairing.null_space(p)]})
        return EXIT_OK
    b = ctx.vector(cfg.heights, "b")
    if cmd == "cone":
        _emit(out, {"in_cone": pairing.cone_contains(p, b)})
        return EXIT_OK
    a = ctx.vector(cfg.lengths, "a")
    pc = pairing.PositivityConfig(seeds=cfg.seeds, orbit_len=cfg.orbit, m_max=cfg.mmax, rng_seed=cfg.seed)
    verdict = pairing.is_positive_pair(p, a, b, pc)
    _emit(out, verdict.to_dict())
    if cfg.require_positive and verdict.status == "NotPositive":
        return EXIT_NOT_POSITIVE
    return EXIT_OK


def _surface(ctx, out):
    cfg = ctx.cfg
    p = ctx.perm()
    q = surface.suspend(p, ctx.vector(cfg.lengths, "a"), ctx.vector(cfg.heights, "b"))
    cmd = cfg.command
    if cmd == "flow":
        given = [(k, v) for k, v in (("g", cfg.g), ("h", cfg.h), ("r", cfg.r)) if v is not None]
        if len(given) != 1:
            raise ParseError("surface flow needs exactly one of --g, --h, --r")
        kind, val = given[0]
        val = ctx.scalar(val, kind)
        mat = {"g": surface.geodesic, "h": surface.horocycle, "r": surface.rotation}[kind]
        if kind != "h":
            val = float(val)
        q = surface.apply_matrix(q, mat(val))
        rec = q.to_dict()
    elif cmd == "phi":
        length, sc = surface.shortest_sc(q)
        rec = {"phi": format_scalar(length), "witness": sc.to_dict()}
        if cfg.rho is not None:
            rho = ctx.scalar(cfg.rho, "rho")
            rec["saddle_connections"] = [s.to_dict() for s in surface.saddle_connections_up_to(q, rho)]
    elif cmd == "horiz":
        rec = {"horizontal": [s.to_dict() for s in surface.horizontal_saddle_connections(q)]}
    elif cmd == "rel":
        r = ctx.vector(cfg.rel_dir, "rel-dir")
        q = surface.rel_deform(q, r, ctx.scalar(cfg.t, "t"))
        rec = q.to_dict()
    else:
        rec = q.to_dict()
    if cfg.svg:
        with open(cfg.svg, "w") as fh:
            fh.write(q.to_svg())
    _emit(out, rec)
    return EXIT_OK


def _exp(ctx, out):
    cfg = ctx.cfg
    cmd = cfg.command
    if cmd == "mahler":
        sampler = ex.MeasureSampler(cfg.sampler, ctx.window(), cfg.depth, cfg.seed)
        recs = ex.mahler_scan(cfg.d, sampler, cfg.samples, _scan_config(cfg))
        extra = {"cone_fraction": sum(r.verdict == "InCone" for r in recs) / len(recs), "d": cfg.d}
        return _finish_scan(ctx, out, recs, cfg.d, extra)
    p = ctx.perm()
    a = ctx.vector(cfg.lengths, "a")
    if cmd == "diagnose":
        sc = _scan_config(cfg)
        rec = ex.recurrence_diagnostic(p, a, sc.schedule, sc.zeta)
        return _finish_scan(ctx, out, [rec], p.d, {})
    b = ctx.vector(cfg.heights, "b") if cfg.heights is not None else pairing.universal_direction(p)
    if cmd == "line-scan":
        sampler = ex.MeasureSampler(cfg.sampler, ctx.window(), cfg.depth, cfg.seed)
        recs = ex.line_scan(p, a, b, sampler, cfg.samples, _scan_config(cfg))
        return _finish_scan(ctx, out, recs, p.d, {})
    lo, hi, step = _floats(cfg.tgrid, 3, "tgrid")
    if not step > 0:
        raise ParseError("--tgrid step must be positive")
    ts = [lo + k * step for k in range(int(math.floor((hi - lo) / step + 1e-9)) + 1)]
    rec = ex.geodesic_compactness_trace(p, a, b, ts)
    extra = {"thresholds": rec.to_dict()["thresholds"], "first": rec.extra["first"]}
    return _finish_scan(ctx, out, [rec], p.d, extra)


DISPATCH = {"perm": _perm_info, "iet": _iet, "pair": _pair, "surface": _surface, "exp": _exp}


def run(cfg, out=None, err=None):
    """Execute ``cfg``; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if cfg.group not in COMMANDS or cfg.command not in COMMANDS[cfg.group]:
            raise ParseError(f"unknown command {cfg.group} {cfg.command}")
        return DISPATCH[cfg.group](_Ctx(cfg, err), out)
    except HorolifError as exc:
        _emit(err, {"error": exc.code, "code": ERROR_CODES[exc.code], "message": str(exc)})
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        _emit(err, {"error": type(exc).__name__, "code": EXIT_ERROR, "message": str(exc)})
        return EXIT_ERROR


_VALUE_OPTS = {"--lengths", "--a", "--b", "--x", "--rel-dir", "--t", "--g", "--h", "--r", "--window", "--tgrid"}


def _join_negative(argv):
    """Turn ``--b -1,1`` into ``--b=-1,1`` so argparse does not see an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            if nxt is not None and nxt[:1] == "-" and nxt[1:2] in set("0123456789.p"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    ns = build_parser().parse_args(_join_negative(argv))
    try:
        cfg = config_from_args(ns)
    except (HorolifError, OSError) as exc:
        name = getattr(exc, "code", type(exc).__name__)
        _emit(sys.stderr, {"error": name, "code": ERROR_CODES.get(name, EXIT_ERROR), "message": str(exc)})
        return EXIT_ERROR
    if getattr(ns, "dump_config", False):
        sys.stdout.write(cfg.to_json() + "\n")
        return EXIT_OK
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
