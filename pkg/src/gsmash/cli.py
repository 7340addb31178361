"""``gsmash`` command line.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import CharacteristicError, NonSplitBasicError
from .bounds import SRC_HINT, SRC_TRANSFER, Bound, bounds_report
from .document import DocumentError, WorkbenchDocument, load_document, serialize_document
from .examples import EXAMPLES, GRADED_EXAMPLES, build_example
from .field import FieldError
from .graded import GradingError, separable_grading_solve, verify_witness
from .groups import trivial_group
from .modules import DecompositionError
from .oppermann import GENERIC, default_points, family_ext_probe, lattice_pull_up, o1_scan, transfer_check
from .suites import (
    SUITE_ALIASES,
    SUITES,
    SuiteReport,
    exterior_pipeline_suite,
    injective_equivalence_suite,
    ext_oracle_suite,
    opp_transfer_suite,
    pull_push_suite,
    selfinj_transfer_suite,
    suite_field,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


def _load(args, required: bool = True, field: str | None = None) -> WorkbenchDocument | None:
    if not args.input:
        if required:
            raise UsageError("--input FILE is required for this command")
        return None
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    return load_document(text, field if field is not None else args.field)


def _write_json(args, payload) -> None:
    if args.json_out:
        text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
        Path(args.json_out).write_text(text)


def _parse_hints(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"hint {item!r} must look like KEY=VALUE")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


# --- commands ----------------------------------------------------------------


def cmd_build_example(args) -> int:
    doc = build_example(args.name, n=args.n, field=args.field or "Q")
    text = serialize_document(doc)
    if args.json_out:
        _write_json(args, text)
        print(f"wrote {args.json_out}: {doc.name}, dim A = {doc.algebra.dim}, |G| = {doc.group.order}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_smash(args) -> int:
    doc = _load(args)
    sp = doc.smash()
    A, B, G = doc.algebra, sp.algebra, doc.group
    F = doc.field
    print(f"{doc.name}: dim A = {A.dim}, |G| = {G.order}, dim B = {B.dim}")
    fmt = lambda v: [F.format(x) for x in v]  # noqa: E731
    idem = {G.elements[g]: fmt(p) for g, p in enumerate(sp.p)}
    emb = {lab: fmt(sp.embed(A.basis_vector(i))) for i, lab in enumerate(A.labels)}
    for g, v in idem.items():
        nz = [B.labels[k] for k, x in enumerate(v) if x != "0"]
        print(f"  p_{g} = " + " + ".join(nz))
    for lab, v in emb.items():
        nz = [B.labels[k] for k, x in enumerate(v) if x != "0"]
        print(f"  embed({lab}) = " + " + ".join(nz))
    if G.is_trivial():
        same = bool((B.constants == A.constants).all()) and bool((B.unit == A.unit).all())
        print(f"  certificate: b_i -> b_i#{G.elements[0]} identifies B with A "
              f"(structure constants {'identical' if same else 'DIFFER'})")
        if not same:
            return EXIT_FAIL
    out = WorkbenchDocument(f"{doc.name}#smash", F, trivial_group(), B, [0] * B.dim,
                            meta={"source": doc.name, "idempotents": idem, "embed": emb})
    _write_json(args, serialize_document(out))
    return EXIT_OK


def _run_suite(args) -> SuiteReport | list[SuiteReport]:
    suite = SUITE_ALIASES.get(args.suite, args.suite)
    field = suite_field(suite, args.field)
    if suite == "exterior-pipeline":
        return exterior_pipeline_suite(tuple(range(1, args.n + 1)), field=field or "Q")
    if suite == "ext-oracle":
        doc = _load(args, required=False, field=field)
        docs = [doc] if doc else [build_example(n, field=field or "Q") for n in ("kronecker", "kronecker-z2", "loop-square-z2")]
        return ext_oracle_suite(docs, seed=args.seed, count=args.count or 30)
    if suite == "selfinj-transfer":
        doc = _load(args, required=False, field=field)
        if doc:
            return selfinj_transfer_suite(doc)
        return [selfinj_transfer_suite(build_example(n, field=field or "Q", **kw)) for n, kw in GRADED_EXAMPLES]
    doc = _load(args, field=field)
    if suite == "pull-push":
        return pull_push_suite(doc, seed=args.seed, count=args.count or 25, max_dim=args.max_dim)
    if suite == "injective-equivalence":
        return injective_equivalence_suite(doc, seed=args.seed, count=args.count or 10, max_dim=args.max_dim)
    if suite == "opp-transfer":
        return opp_transfer_suite(doc, samples=args.samples, generic=True)
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args) -> int:
    reports = _run_suite(args)
    if isinstance(reports, SuiteReport):
        reports = [reports]
    for r in reports:
        print("\n".join(r.lines()))
    failed = [c for r in reports for c in r.failures]
    if failed:
        print(f"FAILED: {len(failed)} case(s); counterexamples:")
        for c in failed:
            print(f"  {c.name}: {c.detail}")
    _write_json(args, {"reports": [r.to_json() for r in reports], "ok": not failed})
    return EXIT_FAIL if failed else EXIT_OK


def cmd_separable(args) -> int:
    doc = _load(args)
    w = separable_grading_solve(doc.graded)
    G, F, A = doc.group, doc.field, doc.algebra
    if w is None:
        print(f"{doc.name}: none (no separability witness over {F.spec()})")
        _write_json(args, {"witness": None})
        return EXIT_OK
    payload = {}
    for g, x in enumerate(w.vectors):
        terms = [f"{F.format(c)}*{A.labels[k]}" for k, c in enumerate(x) if not F.is_zero(c)]
        print(f"  x^{G.elements[g]} = " + (" + ".join(terms) if terms else "0"))
        payload[G.elements[g]] = [F.format(c) for c in x]
    print(f"  verified independently: {verify_witness(doc.graded, w)}; strictly central: {w.strictly_central}")
    _write_json(args, {"witness": payload, "strictly_central": w.strictly_central})
    return EXIT_OK


def _fmt_points(F, pts) -> str:
    return "{" + ", ".join(F.format(p) for p in pts) + "}"


def cmd_oppermann(args) -> int:
    doc = _load(args)
    F = doc.field
    if args.lattice and args.lattice not in doc.lattices:
        raise UsageError(f"no lattice named {args.lattice!r}; have {sorted(doc.lattices)}")
    names = [args.lattice] if args.lattice else list(doc.lattices)
    if not names:
        raise UsageError("document has no lattices")
    pts = default_points(F, args.samples)
    graded = not doc.group.is_trivial()
    sep = False
    if graded:
        w = separable_grading_solve(doc.graded)
        sep = w is not None and verify_witness(doc.graded, w)
    status = EXIT_OK
    out = {}
    for name in names:
        L = doc.lattices[name]
        nz = o1_scan(L, pts)
        entry = {"nonzero": [F.format(p) for p in nz], "samples": len(pts)}
        print(f"lattice {name} (rank {L.rank}): {len(nz)}/{len(pts)} sampled points nonzero {_fmt_points(F, nz)}")
        if args.generic:
            gen = family_ext_probe(L, GENERIC).nonzero
            entry["generic"] = gen
            print(f"  generic point (density surrogate): {'nonzero' if gen else 'zero'}")
            if gen:
                print("  Odim ≥ 1 certified (generic-point surrogate); rep.dim ≥ 3 via Odim + 2 <= rep.dim")
                if len(nz) != len(pts):
                    print("  finding: generic class nonzero but some sampled points vanish")
            else:
                print("  no certificate")
            entry["certificate"] = bool(gen)
        else:
            print("  generic point not run (use --generic); no certificate")
        if graded:
            tr = transfer_check(doc.smash(), L, pts, separable=sep, include_generic=args.generic)
            print(f"  pull-up nonzero {len(tr.nonzero_B)}/{len(pts)}, push-down of pull-up nonzero {len(tr.nonzero_pushdown)}/{len(pts)}")
            print(f"  inclusion O_B(L') in O_A(push-down L'): {'holds' if not tr.direction1_violations else 'VIOLATED'}")
            if sep:
                print(f"  inclusion O_A(L) in O_B(pull-up L): {'holds' if not tr.direction2_violations else 'VIOLATED'}")
            else:
                print("  inclusion O_A(L) in O_B(pull-up L): not checked (no separability witness)")
            if tr.generic:
                print(f"  generic point: A {tr.generic['A']}, B {tr.generic['B']}")
            entry["transfer"] = {
                "direction1_violations": tr.direction1_violations,
                "direction2_checked": sep,
                "direction2_violations": tr.direction2_violations,
                "generic": tr.generic,
            }
            if not tr.ok:
                status = EXIT_FAIL
                print(f"  counterexample: {tr.direction1_violations + tr.direction2_violations}")
        out[name] = entry
    _write_json(args, {"document": doc.name, "field": F.spec(), "lattices": out})
    return status


def cmd_bounds(args) -> int:
    doc = _load(args)
    hints = _parse_hints(args.hint)
    unknown = set(hints) - {"stable-dim"}
    if unknown:
        raise UsageError(f"unknown hint key(s) {sorted(unknown)}; supported: stable-dim")
    st = None
    if "stable-dim" in hints:
        try:
            st = int(hints["stable-dim"])
        except ValueError:
            raise UsageError("stable-dim hint must be an integer") from None
    A = doc.algebra
    cert_A = any(family_ext_probe(L, GENERIC).nonzero for L in doc.lattices.values())
    hint_A = Bound(st, SRC_HINT) if st is not None else None
    reports = [bounds_report(A, f"{doc.name} (A)", hint_A, hint_A, cert_A)]
    if not doc.group.is_trivial():
        sp = doc.smash()
        cert_B = any(family_ext_probe(lattice_pull_up(sp, L), GENERIC).nonzero for L in doc.lattices.values())
        w = separable_grading_solve(doc.graded)
        sep = w is not None and verify_witness(doc.graded, w)
        lo = hi = None
        if st is not None and reports[0].self_injective:
            hi = Bound(st, SRC_TRANSFER.format(sep=""))
            if sep:
                lo = Bound(st, SRC_TRANSFER.format(sep=", separably graded"))
        reports.append(bounds_report(sp.algebra, f"{doc.name} (B = A#k[G]*)", lo, hi, cert_B))
    for r in reports:
        print("\n".join(r.lines()))
    _write_json(args, {"reports": [r.to_json() for r in reports]})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gsmash", description="Graded algebras, smash products and their homological checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, input_=True):
        if input_:
            sp.add_argument("--input", help="workbench document (JSON)")
        sp.add_argument("--field", help="override the field: Q or Fp:P")
        sp.add_argument("--seed", type=int, default=1)
        sp.add_argument("--json-out", dest="json_out", help="write machine-readable output here")

    b = sub.add_parser("build-example", help="emit a built-in example document")
    b.add_argument("name", choices=EXAMPLES)
    b.add_argument("--n", type=int, default=2, help="number of generators for exterior-n")
    common(b, input_=False)
    b.set_defaults(func=cmd_build_example)

    s = sub.add_parser("smash", help="construct B = A#k[G]*")
    common(s)
    s.set_defaults(func=cmd_smash)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + tuple(SUITE_ALIASES))
    common(v)
    v.add_argument("--count", type=int, default=None, help="number of random modules or probes")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--max-dim", dest="max_dim", type=int, default=6)
    v.add_argument("--n", type=int, default=3, help="exterior-pipeline runs n = 1..N")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("separable", help="solve for a separability witness")
    common(e)
    e.set_defaults(func=cmd_separable)

    o = sub.add_parser("oppermann", help="scan a lattice for nonzero family extension classes")
    common(o)
    o.add_argument("--lattice", help="lattice name (default: all)")
    o.add_argument("--samples", type=int, default=20)
    o.add_argument("--generic", action="store_true", help="also probe the generic point")
    o.set_defaults(func=cmd_oppermann)

    r = sub.add_parser("bounds", help="bracket the representation dimension")
    common(r)
    r.add_argument("--hint", action="append", help="externally known value, e.g. stable-dim=1")
    r.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, DocumentError, FieldError, GradingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonSplitBasicError, CharacteristicError, DecompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
