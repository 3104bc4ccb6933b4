"""Command-line surface.

    ek compute 101 --method both
    ek scan 3 300 --out rows.csv --with-vq
    ek precompute 101 --tag S_PAIR --cache DIR --range 0 50
    ek merge 101 --tag S_PAIR --cache DIR
    ek checksum 101 --tag S_PAIR --cache DIR
    ek stieltjes 7 --kmax 3
    ek gamma-n 10
    ek offsets 20
    ek vq 964477901

Exit codes: 0 success, 1 computation failure, 2 usage error.  The cache
directory defaults to $EK_CACHE_DIR.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import os
import sys
from pathlib import Path

from . import cache as cache_mod
from . import ek as ek_mod
from . import offsets as offsets_mod
from . import specfun
from . import stieltjes as stieltjes_mod
from .cache import FunctionTag
from .multgroup import build_context, is_prime
from .specfun import DEFAULT_CONFIG, gamma_n

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

CSV_HEADER = ("q,ek,ek_plus,ek_diff,mq,mq_odd,mq_even,"
              "ek_norm,ek_plus_norm,mq_norm,v_q")


class UsageError(Exception):
    pass


def _fmt(x: float, digits: int) -> str:
    return f"{x:.{digits - 1}e}"


def _check_odd_prime(q: int) -> None:
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise UsageError(f"{q} is not an odd prime")


def _cache_dir(args) -> Path | None:
    path = args.cache or os.environ.get("EK_CACHE_DIR")
    return Path(path) if path else None


def _load_cached_tables(q: int, cache_dir: Path, tags,
                        verify: bool = True) -> dict:
    """Load (merging chunked parts) every requested tag found on disk.

    Full-range tables must pass their closed-form checksum before use
    unless verify is disabled (the checksum command reports the residual
    itself).
    """
    tables = {}
    for tag in tags:
        paths = sorted(cache_dir.glob(f"{tag.value}_q{q}_part*.ekc"))
        if not paths:
            continue
        parts = [cache_mod.load(p, verify_checksum=False) for p in paths]
        table = parts[0] if len(parts) == 1 else cache_mod.merge(parts)
        if verify and table.is_full_range:
            tol = (10 * (q - 1) * DEFAULT_CONFIG.target_abs_error
                   + 0.5 * 10.0 ** (1 - table.digits)
                   * float(abs(table.values).sum()))
            residual = table.checksum_residual()
            if residual > tol:
                raise cache_mod.ChecksumMismatchError(
                    f"{tag.value} cache for q={q}: closed-form residual "
                    f"{residual:.3e} exceeds {tol:.3e}"
                )
        tables[tag] = table
    return tables


def _result_caches(args, ctx, method):
    cache_dir = _cache_dir(args)
    tags = []
    if method in (ek_mod.METHOD_S, ek_mod.METHOD_BOTH):
        tags += [FunctionTag.LOGGAMMA, FunctionTag.S_PAIR]
    if method in (ek_mod.METHOD_T, ek_mod.METHOD_BOTH):
        tags += [FunctionTag.T, FunctionTag.PSI]
    caches = {}
    if cache_dir is not None and cache_dir.is_dir():
        caches = _load_cached_tables(ctx.q, cache_dir, tags)
    for tag in tags:
        if tag not in caches:
            caches[tag] = cache_mod.precompute(ctx, tag, cfg=DEFAULT_CONFIG)
    return caches


def cmd_compute(args) -> int:
    q = args.q
    _check_odd_prime(q)
    ctx = build_context(q)
    caches = _result_caches(args, ctx, args.method)
    res = ek_mod.compute_ek(ctx, caches, method=args.method)
    d = args.digits
    print(f"q = {res.q}")
    print(f"ek = {_fmt(res.ek, d)}")
    print(f"ek_plus = {_fmt(res.ek_plus, d)}")
    print(f"ek_diff = {_fmt(res.ek_diff, d)}")
    print(f"mq = {_fmt(res.mq, d)}")
    print(f"mq_odd = {_fmt(res.mq_odd, d)}")
    print(f"mq_even = {_fmt(res.mq_even, d)}")
    print(f"ek_norm = {_fmt(res.ek_norm, d)}")
    print(f"ek_plus_norm = {_fmt(res.ek_plus_norm, d)}")
    print(f"mq_norm = {_fmt(res.mq_norm, d)}")
    print(f"method = {res.method}")
    if res.method_discrepancy is not None:
        print(f"method_discrepancy = {_fmt(res.method_discrepancy, d)}")
    return EXIT_OK


def _scan_row(q: int, args) -> str:
    ctx = build_context(q)
    caches = _result_caches(args, ctx, args.method)
    res = ek_mod.compute_ek(ctx, caches, method=args.method)
    vq = _fmt(offsets_mod.v_of_q(q), args.digits) if args.with_vq else ""
    cells = [str(q)] + [
        _fmt(v, args.digits)
        for v in (res.ek, res.ek_plus, res.ek_diff, res.mq, res.mq_odd,
                  res.mq_even, res.ek_norm, res.ek_plus_norm, res.mq_norm)
    ] + [vq]
    return ",".join(cells)


def cmd_scan(args) -> int:
    if args.q_min > args.q_max:
        raise UsageError(f"empty range [{args.q_min}, {args.q_max}]")
    primes = [q for q in range(max(3, args.q_min) | 1, args.q_max + 1, 2)
              if is_prime(q)]
    rows: list[str]
    if args.threads > 1:
        with concurrent.futures.ThreadPoolExecutor(args.threads) as pool:
            rows = list(pool.map(lambda q: _scan_row(q, args), primes))
    else:
        rows = [_scan_row(q, args) for q in primes]
    text = "\n".join([CSV_HEADER] + rows) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_precompute(args) -> int:
    q = args.q
    _check_odd_prime(q)
    cache_dir = _cache_dir(args)
    if cache_dir is None:
        raise UsageError("precompute needs --cache DIR or EK_CACHE_DIR")
    cache_dir.mkdir(parents=True, exist_ok=True)
    ctx = build_context(q)
    tag = FunctionTag(args.tag)
    k_range = tuple(args.range) if args.range else None
    table = cache_mod.precompute(ctx, tag, k_range=k_range)
    path = cache_dir / cache_mod.part_filename(tag, q, table.k_lo)
    cache_mod.save(table, path)
    print(path)
    return EXIT_OK


def cmd_merge(args) -> int:
    q = args.q
    cache_dir = _cache_dir(args)
    if cache_dir is None:
        raise UsageError("merge needs --cache DIR or EK_CACHE_DIR")
    tag = FunctionTag(args.tag)
    paths = sorted(cache_dir.glob(f"{tag.value}_q{q}_part*.ekc"))
    if not paths:
        raise UsageError(f"no {tag.value} parts for q={q} under {cache_dir}")
    merged = cache_mod.merge([cache_mod.load(p, verify_checksum=False)
                              for p in paths])
    if args.out:
        out = Path(args.out)
        cache_mod.save(merged, out)
    else:
        # replace the constituent chunks so later loads see one table
        out = cache_dir / cache_mod.part_filename(tag, q, merged.k_lo)
        cache_mod.save(merged, out)
        for p in paths:
            if p != out:
                p.unlink()
    print(out)
    return EXIT_OK


def cmd_checksum(args) -> int:
    q = args.q
    _check_odd_prime(q)
    cache_dir = _cache_dir(args)
    tag = FunctionTag(args.tag)
    if cache_dir is not None and cache_dir.is_dir():
        tables = _load_cached_tables(q, cache_dir, [tag], verify=False)
    else:
        tables = {}
    if tag in tables:
        table = tables[tag]
    else:
        table = cache_mod.precompute(build_context(q), tag)
    if not table.is_full_range:
        raise UsageError(f"{tag.value} cache for q={q} is not full-range")
    residual = table.checksum_residual()
    tol = (10 * (q - 1) * DEFAULT_CONFIG.target_abs_error
           + 0.5 * 10.0 ** (1 - table.digits) * float(abs(table.values).sum()))
    print(f"residual = {residual:.6e} (tolerance {tol:.6e})")
    return EXIT_OK if residual <= tol else EXIT_FAILURE


def cmd_stieltjes(args) -> int:
    if not 1 <= args.q <= stieltjes_mod.Q_MAX:
        raise UsageError(f"q must be in [1, {stieltjes_mod.Q_MAX}]")
    if not 0 <= args.kmax <= stieltjes_mod.K_MAX:
        raise UsageError(f"kmax must be in [0, {stieltjes_mod.K_MAX}]")
    table = stieltjes_mod.build_table(args.q, args.kmax)
    lines = ["k,a,value"]
    for k in range(table.k_max + 1):
        for a in range(1, table.q + 1):
            lines.append(f"{k},{a},{_fmt(table[(k, a)], args.digits)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gamma_n(args) -> int:
    if not 0 <= args.n <= specfun.GAMMA_N_MAX:
        raise UsageError(f"n must be in [0, {specfun.GAMMA_N_MAX}]")
    print(_fmt(gamma_n(args.n), args.digits))
    return EXIT_OK


def cmd_offsets(args) -> int:
    if not 1 <= args.count <= offsets_mod.GREEDY_COUNT:
        raise UsageError(f"count must be in [1, {offsets_mod.GREEDY_COUNT}]")
    seq = offsets_mod.greedy_offsets(args.count)
    text = "\n".join(str(b) for b in seq.b) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_vq(args) -> int:
    if args.q < 3:
        raise UsageError("q must be >= 3")
    print(_fmt(offsets_mod.v_of_q(args.q), args.digits))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ek",
        description="Euler-Kronecker constants of prime cyclotomic fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cache=True):
        p.add_argument("--digits", type=int, default=15,
                       help="significant digits in printed values")
        if cache:
            p.add_argument("--cache", default=None,
                           help="cache directory (default $EK_CACHE_DIR)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker bound; results do not depend on it")

    p = sub.add_parser("compute", help="constants for one odd prime")
    p.add_argument("q", type=int)
    p.add_argument("--method", choices=["s", "t", "both"], default="s")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("scan", help="CSV of constants over a prime range")
    p.add_argument("q_min", type=int)
    p.add_argument("q_max", type=int)
    p.add_argument("--method", choices=["s", "t", "both"], default="s")
    p.add_argument("--out", default=None)
    p.add_argument("--with-vq", action="store_true", dest="with_vq")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("precompute", help="write a value-table chunk")
    p.add_argument("q", type=int)
    p.add_argument("--tag", required=True,
                   choices=[t.value for t in FunctionTag])
    p.add_argument("--range", type=int, nargs=2, metavar=("K0", "K1"))
    common(p)
    p.set_defaults(func=cmd_precompute)

    p = sub.add_parser("merge", help="merge cached chunks of one table")
    p.add_argument("q", type=int)
    p.add_argument("--tag", required=True,
                   choices=[t.value for t in FunctionTag])
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("checksum", help="closed-form residual of a cache")
    p.add_argument("q", type=int)
    p.add_argument("--tag", required=True,
                   choices=[t.value for t in FunctionTag])
    common(p)
    p.set_defaults(func=cmd_checksum)

    p = sub.add_parser("stieltjes", help="gamma_k(a,q) table")
    p.add_argument("q", type=int)
    p.add_argument("--kmax", type=int, default=1)
    p.add_argument("--out", default=None)
    common(p, cache=False)
    p.set_defaults(func=cmd_stieltjes)

    p = sub.add_parser("gamma-n", help="generalized Euler constant")
    p.add_argument("n", type=int)
    common(p, cache=False)
    p.set_defaults(func=cmd_gamma_n)

    p = sub.add_parser("offsets", help="greedy prime-offset sequence")
    p.add_argument("count", type=int)
    p.add_argument("--out", default=None)
    common(p, cache=False)
    p.set_defaults(func=cmd_offsets)

    p = sub.add_parser("vq", help="offset score v(q)")
    p.add_argument("q", type=int)
    common(p, cache=False)
    p.set_defaults(func=cmd_vq)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def app() -> None:
    raise SystemExit(main())
