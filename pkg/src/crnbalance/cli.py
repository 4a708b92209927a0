"""Command line front end.

Subcommands: analyze, kinetics, tmatrix, decompose, starmsc, equilibria,
acb, pff. Every subcommand reads the network/kinetics text format, prints a
human-readable summary by default and the versioned JSON report with
``--json``. Exit codes: 0 success, 1 analysis error, 2 parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import report as rpt
from .decomposition import check_decomposition, linkage_class_parts, search_decompositions
from .equilibria import (KineticSystem, SolveConfig, acb_verdict, analyze_acb,
                         poly_pl_equilibrated_check, sample_coset_counts,
                         sample_positive_states, star_msc_acb_evidence)
from .fileformat import ParseError, parse_crn
from .kinetic_matrices import NotRDKError, build_t_matrices, kinetic_order_subspace
from .kinetics import (HillKinetics, PolyPLKinetics, PowerLawKinetics,
                       RationalKinetics, classify, species_formation_rate)
from .network import CrnError, is_conservative, stoichiometric_basis, structural_invariants
from .transform import pff_check, star_msc


def _family(kin) -> str:
    if isinstance(kin, PowerLawKinetics):
        return "powerlaw"
    if isinstance(kin, PolyPLKinetics):
        return "polypl"
    if isinstance(kin, HillKinetics):
        return "hill"
    if isinstance(kin, RationalKinetics):
        return "rational"
    return type(kin).__name__


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_crn(fh.read())


def _config(args) -> SolveConfig:
    return SolveConfig(seeds=args.seeds, rng_seed=args.rng, tol=args.tol)


def _t_matrices_or_none(net, kin):
    if not isinstance(kin, PowerLawKinetics):
        return None
    try:
        return build_t_matrices(net, kin)
    except NotRDKError:
        return None


def _resolve_flux_basis(value, net, tmat):
    """--flux-space S | Stilde | <file with one basis row per line>."""
    if value is None or value == "S":
        basis = stoichiometric_basis(net)
        return np.array(basis, dtype=float), tuple(tuple(r) for r in basis)
    if value == "Stilde":
        if tmat is None:
            raise CrnError("Stilde flux space needs reactant-determined power-law kinetics")
        if tmat.exact_s_tilde_basis is not None:
            basis = tmat.exact_s_tilde_basis
            return np.array(basis, dtype=float), tuple(tuple(r) for r in basis)
        return tmat.s_tilde_basis, None
    rows = []
    with open(value, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([Fraction(tok) for tok in line.split()])
    if not rows:
        raise CrnError(f"flux-space file {value!r} contains no rows")
    return np.array([[float(v) for v in row] for row in rows]), tuple(
        tuple(row) for row in rows)


def _print_verdict_lines(out, verdict):
    out.write(f"ACB verdict: {verdict['status']}\n")
    for item in verdict["justification"]:
        out.write(f"  [{item['rule']}] {item['citation']}\n")
    if verdict.get("witness"):
        out.write(f"  witness x = ({', '.join(verdict['witness']['x'])}), "
                  f"cfrf residual {verdict['witness']['cfrf_residual']}\n")


def _emit(args, out, report: dict, text_lines: list[str]) -> None:
    if args.json:
        out.write(rpt.dumps_report(report))
    else:
        for line in text_lines:
            out.write(line + "\n")


def _cmd_analyze(args, out):
    net, kin = _load(args.file)
    cfg = _config(args)
    inv = structural_invariants(net)
    conservative, witness = is_conservative(net)
    tmat = _t_matrices_or_none(net, kin)
    cls = classify(kin, net, tmat)
    report = rpt.base_report("analyze", cfg)
    report["network"] = rpt.network_json(net)
    report["structural"] = rpt.structural_json(inv, witness)
    report["kinetics"] = rpt.classification_json(cls, _family(kin))
    if tmat is not None:
        report["t_matrices"] = rpt.tmatrices_json(tmat)
    lines = [
        f"species {inv.m}, complexes {inv.n} ({inv.n_r} reactant), reactions {inv.r}",
        f"linkage classes {inv.l}, strong {inv.sl}, terminal {inv.t}",
        f"rank S = {inv.s} (exact), deficiency = {inv.delta}",
        f"weakly reversible: {inv.weakly_reversible}, t-minimal: {inv.t_minimal}, "
        f"cycle terminal: {inv.cycle_terminal}",
        f"conservative: {conservative}"
        + (f" (witness {[str(w) for w in witness]})" if witness else ""),
        f"kinetics family: {_family(kin)}, classification: "
        + ", ".join(f"{k}={v}" for k, v in rpt.classification_json(cls, _family(kin)).items()
                    if k != "family" and v is not None),
    ]
    if tmat is not None:
        lines.append(f"kinetic reactant rank {tmat.q_tilde}, T-hat rank {tmat.q_hat}, "
                     f"kinetic reactant deficiency {tmat.delta_hat}"
                     + (" (exact)" if tmat.ranks_exact else " (numeric)"))
    _emit(args, out, report, lines)
    return 0


def _cmd_kinetics(args, out):
    net, kin = _load(args.file)
    cfg = _config(args)
    tmat = _t_matrices_or_none(net, kin)
    cls = classify(kin, net, tmat)
    report = rpt.base_report("kinetics", cfg)
    report["kinetics"] = rpt.classification_json(cls, _family(kin))
    lines = [f"{k} = {v}" for k, v in report["kinetics"].items() if v is not None]
    _emit(args, out, report, lines)
    return 0


def _cmd_tmatrix(args, out):
    net, kin = _load(args.file)
    cfg = _config(args)
    if not isinstance(kin, PowerLawKinetics):
        raise CrnError("T matrices are defined for power-law kinetics")
    tmat = build_t_matrices(net, kin)
    sub = kinetic_order_subspace(tmat, net)
    report = rpt.base_report("tmatrix", cfg)
    report["t_matrices"] = rpt.tmatrices_json(tmat)
    report["order_subspace"] = {
        "dim": sub.dim,
        "basis": [[rpt.sig12(v) for v in row] for row in np.atleast_2d(sub.basis)]
        if sub.dim else [],
        "not_cycle_terminal_warning": sub.not_cycle_terminal,
        "exact": sub.exact,
    }
    lines = ["T-hat ="]
    lines += ["  " + "  ".join(f"{v:8.3g}" for v in row) for row in tmat.that]
    lines.append(f"ranks: T {tmat.q_tilde}, T-hat {tmat.q_hat} "
                 + ("(exact)" if tmat.ranks_exact else "(numeric)"))
    lines.append(f"kinetic reactant deficiency = {tmat.delta_hat}; "
                 f"PL-TIK: {report['t_matrices']['pl_tik']}")
    lines.append(f"kinetic order subspace dim = {sub.dim}"
                 + (" [warning: not cycle terminal]" if sub.not_cycle_terminal else ""))
    _emit(args, out, report, lines)
    return 0


def _cmd_decompose(args, out):
    net, kin = _load(args.file)
    cfg = _config(args)
    parts = linkage_class_parts(net)
    verdict = check_decomposition(net, parts)
    report = rpt.base_report("decompose", cfg)
    report["linkage_decomposition"] = {
        "parts": [list(p) for p in parts],
        "independent": verdict.independent,
        "incidence_independent": verdict.incidence_independent,
        "bi_independent": verdict.bi_independent,
        "deficiency": verdict.deficiency,
        "deficiency_sum": verdict.deficiency_sum,
        "relation": verdict.relation,
    }
    lines = [
        f"linkage-class decomposition into {len(parts)} parts",
        f"independent: {verdict.independent}, incidence independent: "
        f"{verdict.incidence_independent}, bi-independent: {verdict.bi_independent}",
        f"deficiency {verdict.deficiency} vs part sum {verdict.deficiency_sum}"
        + (f" ({verdict.relation})" if verdict.relation else ""),
    ]
    if args.max_parts is not None:
        found = search_decompositions(net, "bi_independent", args.max_parts)
        report["search"] = {
            "predicate": "bi_independent",
            "max_parts": args.max_parts,
            "found": [[list(p) for p in d.parts] for d in found],
        }
        lines.append(f"bi-independent decompositions with <= {args.max_parts} parts: "
                     f"{len(found)}")
    _emit(args, out, report, lines)
    return 0


def _cmd_starmsc(args, out):
    net, kin = _load(args.file)
    cfg = _config(args)
    if not isinstance(kin, PolyPLKinetics):
        raise CrnError("the replica transform needs poly-PL kinetics")
    star = star_msc(net, kin)
    states = sample_positive_states(net.num_species, 20, cfg.rng_seed)
    deviation = 0.0
    for x in states:
        f0 = species_formation_rate(net, kin, x)
        f1 = species_formation_rate(star.network, star.kinetics, x)
        deviation = max(deviation, float(np.max(np.abs(f0 - f1))
                                         / max(1.0, np.max(np.abs(f0)))))
    parts = linkage_class_parts(star.network)
    verdict = check_decomposition(star.network, parts)
    evidence = star_msc_acb_evidence(star, net, kin, cfg)
    star_system = KineticSystem(star.network, star.kinetics)
    analysis = analyze_acb(star_system, cfg)
    analysis.decomposition = evidence if evidence is not None else analysis.decomposition
    acb = acb_verdict(analysis, cfg)
    report = rpt.base_report("starmsc", cfg)
    report["transform"] = {
        "shift": star.shift,
        "length": star.length,
        "complexes": star.network.num_complexes,
        "reactions": star.network.num_reactions,
        "predicted_deficiency": star.predicted_delta,
        "computed_deficiency": star.computed_delta,
        "sfrf_max_relative_deviation": rpt.residual_str(deviation),
        "replica_decomposition": {
            "incidence_independent": verdict.incidence_independent,
            "bi_independent": verdict.bi_independent,
            "deficiency_sum": verdict.deficiency_sum,
        },
    }
    report["verdicts"] = {"acb": rpt.verdict_json(acb)}
    lines = [
        f"shift M = {star.shift}, length h = {star.length}",
        f"transform: {star.network.num_complexes} complexes, "
        f"{star.network.num_reactions} reactions",
        f"deficiency: predicted {star.predicted_delta}, computed {star.computed_delta}",
        f"SFRF max relative deviation over {len(states)} states: {deviation:.3e}",
        f"replica decomposition incidence independent: {verdict.incidence_independent}, "
        f"bi-independent: {verdict.bi_independent}",
    ]
    _emit(args, out, report, lines)
    if not args.json:
        _print_verdict_lines(out, report["verdicts"]["acb"])
    return 0


def _solve_both(system, cfg):
    from .equilibria import solve_equilibria
    e = solve_equilibria(system, "positive", config=cfg)
    z = solve_equilibria(system, "complex_balanced", config=cfg)
    return e, z


def _cmd_equilibria(args, out):
    net, kin = _load(args.file)
    cfg = _config(args)
    system = KineticSystem(net, kin)
    e, z = _solve_both(system, cfg)
    report = rpt.base_report("equilibria", cfg)
    report["equilibria"] = {
        "positive": [rpt.point_json(p) for p in e.points],
        "complex_balanced": [rpt.point_json(p) for p in z.points],
        "diagnostics": {"positive": e.diagnostics, "complex_balanced": z.diagnostics},
    }
    lines = [f"positive equilibria found: {len(e.points)} "
             f"(attempts {e.diagnostics['attempts']})",
             f"complex balanced equilibria found: {len(z.points)}"]
    for p in e.points[:10]:
        lines.append("  E: (" + ", ".join(rpt.sig12(v) for v in p.x)
                     + f")  sfrf {p.sfrf_residual:.2e} cfrf {p.cfrf_residual:.2e}")
    for p in z.points[:10]:
        lines.append("  Z: (" + ", ".join(rpt.sig12(v) for v in p.x)
                     + f")  cfrf {p.cfrf_residual:.2e}")
    if args.flux_space is not None and (e.points or z.points):
        tmat = _t_matrices_or_none(net, kin)
        basis, _ = _resolve_flux_basis(args.flux_space, net, tmat)
        ref = (z.points[0].x if z.points else e.points[0].x)
        samples = sample_coset_counts(system, basis, ref, cfg)
        inv = structural_invariants(net)
        cls = classify(kin, net, tmat)
        e_exact = bool(args.assume_concordant and inv.conservative
                       and inv.weakly_reversible and cls.pl_nik)
        report["coset_counts"] = rpt.coset_counts_json(samples, e_exact)
        lines.append(f"coset intersection counts over {len(samples)} sampled classes "
                     f"(E side exact: {e_exact}):")
        for anchor, counts in samples:
            lines.append(f"  anchor (" + ", ".join(rpt.sig12(v) for v in anchor)
                         + f"): |E| >= {counts.e_found}, |Z| >= {counts.z_found}")
    _emit(args, out, report, lines)
    return 0


def _cmd_acb(args, out):
    net, kin = _load(args.file)
    cfg = _config(args)
    system = KineticSystem(net, kin)
    tmat = _t_matrices_or_none(net, kin)
    flux = None
    if args.flux_space is not None:
        flux, _ = _resolve_flux_basis(args.flux_space, net, tmat)
    analysis = analyze_acb(system, cfg, flux_spec_basis=flux)
    verdict = acb_verdict(analysis, cfg)
    report = rpt.base_report("acb", cfg)
    report["structural"] = rpt.structural_json(analysis.structural)
    report["kinetics"] = rpt.classification_json(analysis.classification, _family(kin))
    if analysis.t_matrices is not None:
        report["t_matrices"] = rpt.tmatrices_json(analysis.t_matrices)
    report["equilibria"] = {
        "positive": [rpt.point_json(p) for p in analysis.e_points],
        "complex_balanced": [rpt.point_json(p) for p in analysis.z_points],
    }
    report["verdicts"] = {
        "acb": rpt.verdict_json(verdict),
        "clp": rpt.lp_json(analysis.clp),
        "plp": rpt.lp_json(analysis.plp),
        "bilp": analysis.bilp,
        "kse": rpt.kse_json(analysis.kse),
    }
    if isinstance(kin, PolyPLKinetics):
        report["verdicts"]["poly_pl_balance"] = rpt.poly_pl_balance_json(
            poly_pl_equilibrated_check(net, kin, cfg))
    report["assumptions"] = {"concordant": bool(args.assume_concordant)}
    lines = [
        f"deficiency {analysis.structural.delta}, weakly reversible: "
        f"{analysis.structural.weakly_reversible}",
        f"complex balanced: {analysis.complex_balanced or bool(analysis.z_points)} "
        f"({len(analysis.z_points)} point(s) found)",
        f"positive equilibria found: {len(analysis.e_points)}",
    ]
    if analysis.clp is not None:
        lines.append(f"CLP: {analysis.clp.holds}"
                     + (f", PLP: {analysis.plp.holds}" if analysis.plp else "")
                     + (f", bi-LP: {analysis.bilp}" if analysis.bilp is not None else ""))
    if analysis.kse is not None:
        lines.append(f"kinetic image span: {analysis.kse.sampled_span_dim} of "
                     f"r - s = {analysis.kse.r_minus_s} (KSE: {analysis.kse.kse})")
    _emit(args, out, report, lines)
    if not args.json:
        _print_verdict_lines(out, report["verdicts"]["acb"])
    return 0


def _cmd_pff(args, out):
    net_a, kin_a = _load(args.file)
    net_b, kin_b = _load(args.file_b)
    cfg = _config(args)
    if net_a.num_reactions != net_b.num_reactions:
        raise CrnError("the two files define different reaction counts")
    states = sample_positive_states(net_a.num_species, 20, cfg.rng_seed)
    cert = pff_check(kin_a, kin_b, states)
    report = rpt.base_report("pff", cfg)
    report["pff"] = {
        "equivalent": cert.equivalent,
        "factor_kind": cert.factor_kind,
        "sampled_max_spread": rpt.residual_str(cert.sampled_max_spread),
        "rate_ratio": None if cert.rate_ratio is None else rpt.sig12(cert.rate_ratio),
        "order_shift": None if cert.order_shift is None
        else [rpt.sig12(v) for v in cert.order_shift],
    }
    lines = [f"PFF equivalent: {cert.equivalent} (factor kind: {cert.factor_kind}, "
             f"max spread {cert.sampled_max_spread:.3e})"]
    _emit(args, out, report, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crnbalance",
        description="Reaction network structure, kinetics and complex-balancing analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, two_files=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="network/kinetics file")
        if two_files:
            p.add_argument("file_b", help="second kinetics file on the same network")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument("--tol", type=float, default=1e-9, help="solver residual tolerance")
        p.add_argument("--seeds", type=int, default=64, help="multistart seed count")
        p.add_argument("--rng", type=int, default=42, help="random seed")
        p.add_argument("--max-parts", type=int, default=None, dest="max_parts",
                       help="search decompositions up to this many parts")
        p.add_argument("--assume-concordant", action="store_true",
                       dest="assume_concordant",
                       help="treat the network as concordant (user assertion)")
        p.add_argument("--flux-space", default=None, dest="flux_space",
                       help="S, Stilde, or a file with one basis row per line")
        p.set_defaults(handler=fn)
        return p

    add("analyze", _cmd_analyze, "structural invariants and classification")
    add("kinetics", _cmd_kinetics, "kinetics classification flags")
    add("tmatrix", _cmd_tmatrix, "kinetic order matrices and ranks")
    add("decompose", _cmd_decompose, "decomposition independence verdicts")
    add("starmsc", _cmd_starmsc, "replica transform of a poly-PL system")
    add("equilibria", _cmd_equilibria, "multistart equilibria search")
    add("acb", _cmd_acb, "absolute complex balancing verdict")
    add("pff", _cmd_pff, "positive-function-factor comparison", two_files=True)
    return parser


def run_cli(argv, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args, out)
    except (ParseError, OSError) as exc:
        err.write(f"parse error: {exc}\n")
        return 2
    except CrnError as exc:
        err.write(f"analysis error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
