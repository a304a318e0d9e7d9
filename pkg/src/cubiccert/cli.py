"""Command-line front door.

Subcommands:
  certify    parse a cubic form, check smoothness, emit validated certificates
  sk-verify  build the degree-3 correspondence and verify its identity
  sk-fibers  sample fiber sizes over GF(p) (optionally plot the histogram)
  lines      the 27 lines and 9 Eckardt groups of f - t^3 = 0 over GF(p)
  planes     the disjoint-plane rationality witness for f - g = 0 in P^5
  spaces     disjoint linear spaces for a sum of binary cubic blocks

Exit codes: 0 success, 1 parse error, 2 mathematical-hypothesis failure,
3 out of theorem scope, 4 internal red alert.
"""

import argparse
import json
import sys

from . import certs, fourfold, skmap, surface
from .errors import CubicCertError
from .forms import parse_form


def _emit(report, fmt, text_renderer=None):
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        if text_renderer:
            text_renderer(report)
        else:
            print(json.dumps(report, indent=2))


def _load_form(args):
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as handle:
            return parse_form(handle.read())
    if not args.form:
        raise SystemExit("a form (inline or --file) is required")
    return parse_form(args.form)


def cmd_certify(args):
    form = _load_form(args)
    result = certs.certify_form(form, use_uct_route=(args.route == "hauptsatz2"))
    a0 = result["a0_certificate"]
    uct_cert = result["uct_certificate"]
    for cert in (a0, uct_cert):
        check = certs.validate_certificate(cert)
        if not check:
            raise CubicCertError(
                f"engine produced an invalid certificate: {check.reason}")
    report = {
        "form": str(form),
        "type": list(result["type"].sizes),
        "smoothness": result["smoothness"].to_json(),
        "route": args.route,
        "uct_certificate": certs.certificate_to_json(uct_cert),
        "a0_certificate": certs.certificate_to_json(a0),
    }
    if args.route == "haupsatz1":
        report["gcd_degrees"] = sorted(
            p.conclusion.degree for p in a0.premises)

    def render_text(rep):
        print(f"form: {rep['form']}")
        print(f"type: ({','.join(map(str, rep['type']))})")
        print(f"smoothness: {rep['smoothness']['verdict']} "
              f"[{rep['smoothness']['witness']['kind']}]")
        _print_cert_tree(uct_cert, "UCT")
        _print_cert_tree(a0, "A0")

    _emit(report, args.format, render_text)
    return 0


def _print_cert_tree(cert, label, depth=0):
    pad = "  " * depth
    head = f"{pad}{label + ': ' if depth == 0 else ''}"
    print(f"{head}{cert.conclusion}  [{cert.rule}]")
    for prem in cert.premises:
        _print_cert_tree(prem, label, depth + 1)


def _two_forms(args):
    f = parse_form(args.f)
    g = parse_form(args.g)
    return f, g


def cmd_sk_verify(args):
    f, g = _two_forms(args)
    spec = skmap.build_sk_map(f, g)
    outcome = skmap.verify_sk_identity(spec)
    report = {
        "f": str(f),
        "g": str(g),
        "target": str(spec.target),
        "holds": outcome["holds"],
        "identity": str(outcome["lhs"]),
    }
    _emit(report, args.format)
    return 0 if outcome["holds"] else 4


def cmd_sk_fibers(args):
    f, g = _two_forms(args)
    spec = skmap.build_sk_map(f, g)
    fiber_report = skmap.fiber_statistics(spec, args.prime, args.samples,
                                          seed=args.seed)
    report = fiber_report.to_json()
    if args.plot:
        _plot_histogram(fiber_report, args.plot)
        report["plot"] = args.plot
    if args.csv:
        _write_histogram_csv(fiber_report, args.csv)
        report["csv"] = args.csv
    _emit(report, args.format)
    return 0


def _plot_histogram(fiber_report, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    sizes = sorted(fiber_report.histogram)
    counts = [fiber_report.histogram[s] for s in sizes]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar([str(s) for s in sizes], counts, color="#4878a8")
    ax.set_xlabel("fiber size")
    ax.set_ylabel("samples")
    ax.set_title(f"fiber sizes over GF({fiber_report.prime}), "
                 f"{fiber_report.samples} samples "
                 f"(mean {fiber_report.mean})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _write_histogram_csv(fiber_report, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("fiber_size,count\n")
        for size in sorted(fiber_report.histogram):
            handle.write(f"{size},{fiber_report.histogram[size]}\n")


def cmd_lines(args):
    f = parse_form(args.f)
    lines = surface.find_lines(f, args.prime)
    groups = surface.group_by_eckardt(lines)
    report = {
        "f": str(f),
        "prime": args.prime,
        "line_count": len(lines),
        "lines": [l.to_json() for l in lines],
        "eckardt_groups": [grp.to_json() for grp in groups],
    }

    def render_text(rep):
        print(f"{rep['line_count']} lines on {rep['f']} - t^3 over "
              f"GF({rep['prime']}), {len(rep['eckardt_groups'])} "
              "Eckardt groups:")
        for grp in rep["eckardt_groups"]:
            print(f"  base point {tuple(grp['base_point'])}")
            for line in grp["lines"]:
                print(f"    direction {tuple(line['direction'])} "
                      f"offset {tuple(line['offset'])}")

    _emit(report, args.format, render_text)
    return 0


def cmd_planes(args):
    f, g = _two_forms(args)
    lines_s = surface.find_lines(f, args.prime)
    lines_t = surface.find_lines(g, args.prime)
    witness = fourfold.find_disjoint_witness(lines_s, lines_t, f, g)
    _emit(witness.to_json(), args.format)
    return 0


def cmd_spaces(args):
    blocks = [parse_form(b) for b in args.block]
    if args.prime:
        result = fourfold.disjoint_linear_spaces_2type(blocks, args.prime)
    else:
        result = None
        last_error = None
        from .forms import candidate_screen_primes
        for p in candidate_screen_primes(blocks[0].poly, count=25):
            try:
                result = fourfold.disjoint_linear_spaces_2type(blocks, p)
                break
            except CubicCertError as exc:
                last_error = exc
        if result is None:
            raise last_error
    _emit(result, args.format)
    return 0 if result["full_rank"] and result["contained"] else 4


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cubiccert",
        description="certificates and geometric checks for almost-diagonal "
                    "cubic hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("certify", help="certificate pipeline for a cubic form")
    p.add_argument("form", nargs="?", help="inline form, e.g. 'x0^3+x1^3+...'")
    p.add_argument("--file", help="read the form from a file")
    p.add_argument("--route", choices=["hauptsatz2", "haupsatz1"],
                   default="hauptsatz2")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sk-verify", help="verify the correspondence identity")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    common(p)
    p.set_defaults(func=cmd_sk_verify)

    p = sub.add_parser("sk-fibers", help="fiber-size statistics over GF(p)")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--samples", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", help="write a histogram figure (PNG) here")
    p.add_argument("--csv", help="write the histogram as CSV here")
    common(p)
    p.set_defaults(func=cmd_sk_fibers)

    p = sub.add_parser("lines", help="27 lines and Eckardt groups")
    p.add_argument("--f", required=True)
    p.add_argument("--prime", type=int, default=13)
    common(p)
    p.set_defaults(func=cmd_lines)

    p = sub.add_parser("planes", help="disjoint-plane rationality witness")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--prime", type=int, default=13)
    common(p)
    p.set_defaults(func=cmd_planes)

    p = sub.add_parser("spaces", help="disjoint linear spaces for 2-blocks")
    p.add_argument("--block", action="append", required=True,
                   help="a binary cubic in x0, x1 (repeat per block)")
    p.add_argument("--prime", type=int)
    common(p)
    p.set_defaults(func=cmd_spaces)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CubicCertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
