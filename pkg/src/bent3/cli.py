"""bent3 command line.

Subcommands: construct, verify, spectrum, mm-check, sweep, expand.
Exit codes: 0 the checked property holds, 1 it fails, 2 usage or
parameter error.  --plot renders figures next to the text outputs.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass

from . import __version__
from .analysis import check_bent
from .eisenstein import EisensteinInt
from .families import FAMILIES, formal_expand, make_family
from .formats import (read_table, regularity_token, spectrum_sha256,
                      write_certificate, write_spectrum, write_sweep,
                      write_table, write_transcript)
from .gf import (FieldError, InternalInconsistencyError, ctx_new,
                 format_elem, parse_elem, parse_modulus)
from .mm import (Subspace, binomial_subspace, check_mm_regular,
                 check_mm_self_orthogonal, trinomial_subspace)
from .spectrum import spectrum_fast, spectrum_naive, walsh_at

__all__ = ["main", "RunConfig", "EXIT_OK", "EXIT_FAIL", "EXIT_USAGE"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_QUARTIC_FAMILIES = ("binomial-k3mod4", "exceptional-a-a5",
                     "exceptional-a5-a", "exceptional-a5-ainv5")


@dataclass
class RunConfig:
    """Resolved invocation: every randomized choice is a pure function of
    seed, and n stays within the cap unless force_large lifts it."""
    command: str
    n: int | None = None
    modulus: tuple | None = None
    family: str | None = None
    k: int | None = None
    a1: str | None = None
    sign: str = "+"
    out: str | None = None
    plot: bool = False
    force_naive: bool = False
    force_large: bool = False
    threads: int = 1
    spot_checks: int = 0
    seed: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls(command=args.command)
        for name in ("n", "family", "k", "a1", "sign", "out", "plot",
                     "force_naive", "force_large", "threads",
                     "spot_checks", "seed"):
            if hasattr(args, name) and getattr(args, name) is not None:
                setattr(cfg, name, getattr(args, name))
        if getattr(args, "modulus", None):
            cfg.modulus = parse_modulus(args.modulus)
        return cfg


def _max_n(cfg: RunConfig, n: int | None = None):
    if cfg.force_large:
        return max(n or 0, 64)
    return None


def _family_n(family: str, k: int) -> int:
    return 2 * k if family == "trinomial" else 4 * k


def _spectrum(f, cfg: RunConfig):
    if cfg.force_naive:
        return spectrum_naive(f, force=True)
    return spectrum_fast(f)


def _out_prefix(cfg: RunConfig, default: str) -> str:
    return cfg.out if cfg.out else default


def _sibling(table_path: str, suffix: str) -> str:
    stem, _ = os.path.splitext(table_path)
    return stem + suffix


# ----------------------------------------------------------------------
# construct

def cmd_construct(cfg: RunConfig) -> int:
    if cfg.family is None or cfg.k is None:
        raise FieldError("construct needs --family and --k")
    n = cfg.n if cfg.n is not None else _family_n(cfg.family, cfg.k)
    if cfg.n is not None and cfg.n != _family_n(cfg.family, cfg.k):
        raise FieldError(f"--n {cfg.n} contradicts --family/--k "
                         f"(expected n={_family_n(cfg.family, cfg.k)})")
    ctx = ctx_new(n, cfg.modulus, max_n=_max_n(cfg, n))
    a1 = parse_elem(ctx, cfg.a1) if cfg.a1 is not None else None
    f = make_family(ctx, cfg.family, cfg.k, a1, cfg.sign)

    spec = _spectrum(f, cfg)
    cert = check_bent(f, spectrum=spec)
    prefix = _out_prefix(cfg, _default_prefix(cfg, ctx, a1))
    table_path, cert_path = prefix + ".tbf", prefix + ".cert"
    write_table(table_path, f)
    write_certificate(cert_path, cert, f)
    if cfg.plot:
        from .plots import spectrum_figure
        spectrum_figure(prefix + ".spectrum.png", spec,
                        title=f"{cfg.family} k={cfg.k}, n={n}")
    print(f"table={table_path}")
    print(f"certificate={cert_path}")
    print(f"bent={'true' if cert.is_bent else 'false'} "
          f"regularity={regularity_token(cert.regularity)} "
          f"degree={cert.degree}")
    return EXIT_OK if cert.is_bent else EXIT_FAIL


def _default_prefix(cfg: RunConfig, ctx, a1) -> str:
    parts = [cfg.family, f"k{cfg.k}"]
    if a1 is not None:
        parts.append(format_elem(ctx, a1).replace("^", ""))
    if cfg.family in ("binomial-general", "trinomial"):
        parts.append("p" if cfg.sign in ("+", "plus", 1) else "m")
    return "-".join(parts)


# ----------------------------------------------------------------------
# verify

def cmd_verify(cfg: RunConfig, table_path: str, cert_out: str | None) -> int:
    f = read_table(table_path, max_n=_max_n(cfg))
    spec = _spectrum(f, cfg)
    cert = check_bent(f, spectrum=spec)
    if cfg.spot_checks:
        cert.transcript.extend(_spot_check(f, spec, cfg))
    cert_path = cert_out or _sibling(table_path, ".verify.cert")
    write_certificate(cert_path, cert, f)
    if cfg.plot:
        from .plots import spectrum_figure
        spectrum_figure(_sibling(table_path, ".spectrum.png"), spec)
    print(f"certificate={cert_path}")
    print(f"bent={'true' if cert.is_bent else 'false'} "
          f"regularity={regularity_token(cert.regularity)} "
          f"degree={cert.degree}")
    return EXIT_OK if cert.is_bent else EXIT_FAIL


def _spot_check(f, spec, cfg: RunConfig):
    """Recompute S_f(b) at seeded random points by direct summation and
    compare with the transform output."""
    rng = random.Random(cfg.seed)
    lines = [f"INFO: spot-check count={cfg.spot_checks} seed={cfg.seed}"]
    for _ in range(cfg.spot_checks):
        b = rng.randrange(f.ctx.q)
        direct = walsh_at(f, b)
        fast = EisensteinInt(int(spec.u[b]), int(spec.v[b]))
        if direct == fast:
            lines.append(f"PASS: spot-check b={b} S={direct}")
        else:
            lines.append(f"FAIL: spot-check b={b} transform={fast} "
                         f"direct={direct}")
    return lines


# ----------------------------------------------------------------------
# spectrum export

def cmd_spectrum(cfg: RunConfig, table_path: str) -> int:
    f = read_table(table_path, max_n=_max_n(cfg))
    spec = _spectrum(f, cfg)
    out = cfg.out or _sibling(table_path, ".spectrum.tsv")
    write_spectrum(out, spec)
    if cfg.plot:
        from .plots import spectrum_figure
        spectrum_figure(_sibling(out, ".png"), spec)
    print(f"spectrum={out}")
    print(f"spectrum_sha256={spectrum_sha256(spec)}")
    return EXIT_OK


# ----------------------------------------------------------------------
# mm-check

def _load_basis_file(ctx, path: str) -> Subspace:
    basis = []
    with open(path, "r", encoding="ascii") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                basis.append(parse_elem(ctx, line))
    return Subspace.from_basis(ctx, basis)


def cmd_mm_check(cfg: RunConfig, table_path: str, source: str) -> int:
    f = read_table(table_path, max_n=_max_n(cfg))
    ctx = f.ctx
    lines = [f"INFO: table={table_path} n={ctx.n}"]
    if source == "binomial":
        if ctx.n % 4:
            raise FieldError("binomial subspace needs 4 | n")
        if cfg.a1 is None:
            raise FieldError("--subspace binomial needs --a1")
        a1 = parse_elem(ctx, cfg.a1)
        V, _ = binomial_subspace(ctx, ctx.n // 4, a1, cfg.sign)
        lines.append(f"INFO: subspace=binomial a1={cfg.a1} sign={cfg.sign}")
    elif source == "trinomial":
        if ctx.n % 2:
            raise FieldError("trinomial subspace needs 2 | n")
        V, _ = trinomial_subspace(ctx, ctx.n // 2, cfg.sign)
        lines.append(f"INFO: subspace=trinomial sign={cfg.sign}")
    elif source.startswith("file:"):
        V = _load_basis_file(ctx, source[len("file:"):])
        lines.append(f"INFO: subspace=file dim={V.dim}")
    else:
        raise FieldError(f"bad subspace source {source!r}: use binomial, "
                         f"trinomial, or file:<path>")
    if 2 * V.dim != ctx.n:
        raise FieldError(f"subspace dimension {V.dim} != n/2")

    if V.is_self_orthogonal():
        lines.append("INFO: V is self-orthogonal, using the "
                     "permutation-pairing criterion")
        ok, witness, sub = check_mm_self_orthogonal(f, V, V.complement())
    else:
        lines.append("INFO: V meets its orthogonal trivially, using the "
                     "regular-bent criterion")
        ok, witness, sub = check_mm_regular(f, V)
    lines.extend(sub)
    lines.append(("PASS: Maiorana-McFarland structure established"
                  if ok else "FAIL: criterion not satisfied"))
    out = cfg.out or _sibling(table_path, ".mm.txt")
    write_transcript(out, lines)
    for line in lines:
        print(line)
    print(f"transcript={out}")
    return EXIT_OK if ok else EXIT_FAIL


# ----------------------------------------------------------------------
# sweep

_SWEEP_CTX = None


def _sweep_init(n: int, modulus):
    global _SWEEP_CTX
    _SWEEP_CTX = ctx_new(n, modulus)


def _sweep_one(job):
    log_a1, sign = job
    ctx = _SWEEP_CTX
    a1 = int(ctx.exp[log_a1])
    f = make_family(ctx, "binomial-general", ctx.n // 4, a1, sign)
    spec = spectrum_fast(f)
    cert = check_bent(f, spectrum=spec)
    return (f"g^{log_a1}", sign, "true" if cert.is_bent else "false",
            regularity_token(cert.regularity), cert.degree,
            spectrum_sha256(spec))


def cmd_sweep(cfg: RunConfig) -> int:
    n = cfg.n if cfg.n is not None else 4
    if n not in (4, 8):
        raise FieldError(f"sweep is bounded to n in {{4, 8}}, got {n}")
    _sweep_init(n, cfg.modulus)
    ctx = _SWEEP_CTX
    jobs = [(log_a1, sign)
            for log_a1 in range(1, ctx.mult_order, 2)  # odd log = nonsquare
            for sign in ("+", "-")]
    if cfg.threads > 1:
        import multiprocessing as mp
        with mp.Pool(cfg.threads, initializer=_sweep_init,
                     initargs=(n, cfg.modulus)) as pool:
            rows = pool.map(_sweep_one, jobs)
    else:
        rows = [_sweep_one(job) for job in jobs]

    bent_rows = sum(1 for r in rows if r[2] == "true")
    reg_counts: dict = {}
    deg_counts: dict = {}
    for r in rows:
        reg_counts[r[3]] = reg_counts.get(r[3], 0) + 1
        deg_counts[r[4]] = deg_counts.get(r[4], 0) + 1
    summary = [f"rows={len(rows)}", f"bent={bent_rows}"]
    summary += [f"regularity[{k}]={v}" for k, v in sorted(reg_counts.items())]
    summary += [f"degree[{k}]={v}" for k, v in sorted(deg_counts.items())]
    summary.append(f"n={n} modulus={','.join(map(str, ctx.modulus))} "
                   f"seed={cfg.seed}")

    out = cfg.out or f"sweep-n{n}.tsv"
    write_sweep(out, ("a1", "sign", "bent", "regularity", "degree",
                      "spectrum_sha256"), rows, summary)
    if cfg.plot:
        from .plots import sweep_figure
        sweep_figure(_sibling(out, ".png"), rows, n)
    print(f"results={out}")
    for line in summary:
        print(line)
    return EXIT_OK


# ----------------------------------------------------------------------
# expand

def cmd_expand(cfg: RunConfig) -> int:
    if cfg.family is None or cfg.k is None:
        raise FieldError("expand needs --family and --k")
    if cfg.family not in _QUARTIC_FAMILIES:
        raise FieldError(f"no formal expansion for {cfg.family!r}; "
                         f"choose from {_QUARTIC_FAMILIES}")
    poly = formal_expand(cfg.family, cfg.k)
    lines = [f"family={cfg.family}", f"k={cfg.k}", f"polynomial={poly}"]
    lines += [f"term e=({','.join(map(str, mono))}) c={c}"
              for mono, c in poly.terms]
    if cfg.out:
        write_transcript(cfg.out, lines)
    for line in lines:
        print(line)
    return EXIT_OK


# ----------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bent3",
        description="construct and verify ternary bent functions")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, *, field=True):
        if field:
            sp.add_argument("--modulus", help="field modulus, ascending "
                            "comma-separated trits (e.g. 2,1,0,0,1)")
        sp.add_argument("--out", help="output path or prefix")
        sp.add_argument("--plot", action="store_true",
                        help="render figures next to the text output")
        sp.add_argument("--force-naive", action="store_true",
                        dest="force_naive",
                        help="use the direct-summation transform")
        sp.add_argument("--force-large", action="store_true",
                        dest="force_large",
                        help="lift the n <= 14 safety cap")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker processes (sweep only)")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized cross-checks")

    sp = sub.add_parser("construct", help="build a family member and "
                        "certify it")
    sp.add_argument("--family", required=True, choices=FAMILIES)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, help="override (must match family)")
    sp.add_argument("--a1", help="coefficient literal g^<k> or t:<trits>")
    sp.add_argument("--sign", default="+", choices=("+", "-", "plus",
                                                    "minus"))
    add_common(sp)

    sp = sub.add_parser("verify", help="re-verify a table file")
    sp.add_argument("table")
    sp.add_argument("--certificate", help="certificate output path")
    sp.add_argument("--spot-check", type=int, default=0, dest="spot_checks",
                    metavar="COUNT", help="direct-summation samples")
    add_common(sp, field=False)

    sp = sub.add_parser("spectrum", help="export the full Walsh spectrum")
    sp.add_argument("table")
    add_common(sp, field=False)

    sp = sub.add_parser("mm-check", help="derivative-based "
                        "Maiorana-McFarland check")
    sp.add_argument("table")
    sp.add_argument("--subspace", required=True,
                    help="binomial | trinomial | file:<basis path>")
    sp.add_argument("--a1", help="coefficient for --subspace binomial")
    sp.add_argument("--sign", default="+", choices=("+", "-", "plus",
                                                    "minus"))
    add_common(sp, field=False)

    sp = sub.add_parser("sweep", help="exhaust all nonsquare a1 and both "
                        "signs of the general binomial")
    sp.add_argument("--n", type=int, default=4, choices=(4, 8))
    add_common(sp)

    sp = sub.add_parser("expand", help="formal 4-variable expansion over "
                        "the subfield")
    sp.add_argument("--family", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out", help="also write the expansion to a file")
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        if args.command == "construct":
            return cmd_construct(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.table, args.certificate)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, args.table)
        if args.command == "mm-check":
            return cmd_mm_check(cfg, args.table, args.subspace)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "expand":
            return cmd_expand(cfg)
        raise FieldError(f"unknown command {args.command!r}")
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
