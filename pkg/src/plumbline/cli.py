"""Command-line entry point.

Exit codes: 0 success, 1 certification declined, 2 input error,
3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import links, surfaces, theorems, trees
from .knotdata import load_knot_csv

EXIT_OK, EXIT_DECLINED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_tree(path: str) -> trees.LBTree:
    try:
        t = trees.parse_tree_text(_read(path))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep = trees.validate_lbtree(t)
    if not rep.ok:
        raise InputError(str(rep))
    return t


def cmd_assoc_link(args) -> int:
    t = _load_tree(args.tree)
    L = links.associated_link(t)
    pd = links.to_pd_text(L)
    if args.pd:
        Path(args.pd).write_text(pd)
    else:
        sys.stdout.write(pd)
    if args.svg:
        Path(args.svg).write_text(links.associated_link_svg(t))
    return EXIT_OK


def cmd_bicolour(args) -> int:
    t = _load_tree(args.tree)
    colour = trees.compatible_bicolouring(t)
    sys.stdout.write(trees.format_tree_text(t.tree, colour))
    return EXIT_OK


def cmd_embed(args) -> int:
    try:
        p = surfaces.parse_plumbing_text(_read(args.plumbing))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    s = surfaces.make_plumbing(p)
    try:
        tree, emb = surfaces.embed_in_plumbing(s)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep = surfaces.verify_embedding(emb)
    out = {"tree": tree.to_json(), "embedding": emb.to_json(), "report": rep.to_json()}
    sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if rep.ok else EXIT_INTERNAL


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name) or "knot"


def _certify_one(job):
    rec, manifold_spec = job
    cert = theorems.certify(rec, theorems.parse_manifold(manifold_spec))
    return cert.verdict, cert.dumps()


def cmd_certify(args) -> int:
    try:
        table = load_knot_csv(args.knots)
        theorems.parse_manifold(args.manifold)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    for rej in table.rejects:
        print(f"reject row {rej.row}: {rej.reason}", file=sys.stderr)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    jobs = [(rec, args.manifold) for rec in table.records]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_certify_one, jobs))
    else:
        results = [_certify_one(j) for j in jobs]
    code = EXIT_OK
    used = set()
    for (rec, _), (verdict, text) in zip(jobs, results):
        stem = _safe_name(rec.name)
        while stem in used:
            stem += "_"
        used.add(stem)
        (out / f"{stem}.json").write_text(text)
        print(f"{rec.name}\t{verdict}")
        if verdict == "failed":
            code = EXIT_INTERNAL
        elif verdict == "not-certified" and code == EXIT_OK:
            code = EXIT_DECLINED
    if table.rejects and code == EXIT_OK:
        code = EXIT_INPUT
    return code


def cmd_verify(args) -> int:
    try:
        data = json.loads(_read(args.file))
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.file}: not JSON: {exc}") from exc
    rep = theorems.verify_certificate(data)
    print(rep)
    return EXIT_OK if rep.ok else EXIT_INTERNAL


def cmd_invariants(args) -> int:
    try:
        L = links.parse_pd_text(_read(args.pd))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(f"crossings: {len(L.crossings)}")
    print(f"components: {links.component_count(L)}")
    if args.bracket or not args.jones:
        print(f"bracket: {links.kauffman_bracket(L).to_text()}")
    if args.jones:
        oriented = L if L.oriented else links.orient(L)
        if not L.oriented:
            print("note: diagram unoriented; using the default orientation")
        print(f"jones: {links.jones(oriented).to_text()}")
    return EXIT_OK


def _bench_rows(suite: str):
    rows = []
    if suite in ("bracket", "all"):
        for k in (2, 4, 6, 7):
            t = next(iter(trees.enumerate_lbtrees(k)))
            L = links.associated_link(t)
            t0 = time.perf_counter()
            links.state_sum_bracket(L)
            t1 = time.perf_counter()
            links.kauffman_bracket(L)
            t2 = time.perf_counter()
            rows.append((f"bracket {2 * k} crossings naive", t1 - t0))
            rows.append((f"bracket {2 * k} crossings fast", t2 - t1))
    if suite in ("pipeline", "all"):
        from .knotdata import KnotRecord
        for spec in ("K3", "E:5", "zero-sphere:3"):
            t0 = time.perf_counter()
            theorems.certify(KnotRecord("bench", u_upper=20), theorems.parse_manifold(spec))
            rows.append((f"certify {spec}", time.perf_counter() - t0))
    if not rows:
        raise InputError(f"unknown suite {suite!r}; use bracket, pipeline or all")
    return rows


def cmd_bench(args) -> int:
    rows = _bench_rows(args.suite)
    width = max(len(name) for name, _ in rows)
    for name, secs in rows:
        print(f"{name:<{width}}  {secs * 1000:10.2f} ms")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plumbline", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("assoc-link", help="associated link of a tree as PD code / SVG")
    a.add_argument("--tree", required=True)
    a.add_argument("--svg")
    a.add_argument("--pd")
    a.set_defaults(func=cmd_assoc_link)

    b = sub.add_parser("bicolour", help="compatible edge bicolouring of a tree")
    b.add_argument("--tree", required=True)
    b.set_defaults(func=cmd_bicolour)

    e = sub.add_parser("embed", help="tree and embedding for a plumbing")
    e.add_argument("--plumbing", required=True)
    e.set_defaults(func=cmd_embed)

    c = sub.add_parser("certify", help="certificates for every knot in a CSV")
    c.add_argument("--knots", required=True)
    c.add_argument("--manifold", required=True, help="K3, E:n or zero-sphere:g")
    c.add_argument("--out", required=True)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify-certificate", help="re-check a certificate file")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("invariants", help="bracket / Jones polynomial of a PD file")
    i.add_argument("--pd", required=True)
    i.add_argument("--jones", action="store_true")
    i.add_argument("--bracket", action="store_true")
    i.set_defaults(func=cmd_invariants)

    s = sub.add_parser("bench", help="timing table")
    s.add_argument("--suite", default="all")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except links.ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
