"""Command-line front end.

Subcommands bind the library modules one to one: classify, present,
garside, enumerate, abelianize, affine, delpezzo, tacnode, and verify,
which runs the theorem checks as a suite.  Output is deterministic for a
fixed argument list (timings are never printed); --json switches every
subcommand to a machine-readable form.  Exit codes: 0 on success, 1 on a
domain or usage error, 2 when verify finds a failing check.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from math import cos, factorial, pi

from .affine import check_affine_identities, realize, special_structure
from .affine import nonspecial_blowup_candidates
from .delpezzo import (
    classify_two_component_structures,
    exceptional_difference_roots,
    exceptional_vectors,
    limit_marking_check,
    roots,
    theta_torsor_check,
)
from .garside import (
    factor_words,
    garside_delta,
    inverse_word,
    normal_form,
    parse_word,
    word_text,
    words_equal,
)
from .graphs import INF, catalogue_entries, classify, coxeter_graph, parse_graph
from .presentations import (
    DEFAULT_MAX_COSETS,
    abelianization,
    artin_presentation,
    coset_enumerate,
    coxeter_quotient,
    extension_quotient,
    parse_presentation,
    presentation_text,
    presentation_to_json,
    reduced_artin_presentation,
    sart_presentation,
    theorem_presentation,
)
from .presentations import THEOREM_NAMES
from .tacnode import branch_sign_trials
from .weylrep import canonical_involution, group_order, longest_element, reflection_rep

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1, not argparse's default 2
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Presentation selection shared by present, enumerate and abelianize

_KINDS = ("artin", "coxeter", "sart", "reduced", "reduced-coxeter", "extension")


def _parse_toric(g, spec: str):
    if spec == "full":
        return special_structure(realize(g)).minuscule_pairs
    if spec == "none":
        return ()
    pairs = []
    for part in spec.split(","):
        i, _, j = part.partition("-")
        pairs.append((int(i), int(j)))
    return pairs


def _parse_blowup(g, spec: str):
    if spec == "full":
        return special_structure(realize(g)).special
    if spec == "none":
        return ()
    return [int(part) for part in spec.split(",")]


def _selected_presentation(args):
    if args.theorem is not None:
        if args.graph is not None:
            raise ValueError("give either --theorem or --graph, not both")
        return theorem_presentation(args.theorem)
    if args.graph is None:
        raise ValueError("one of --theorem or --graph is required")
    g = parse_graph(args.graph)
    kind = args.kind
    if kind == "artin":
        return artin_presentation(g)
    if kind == "coxeter":
        return coxeter_quotient(artin_presentation(g))
    if kind == "sart":
        return sart_presentation(g)
    if kind == "reduced":
        return reduced_artin_presentation(g)
    if kind == "reduced-coxeter":
        return coxeter_quotient(reduced_artin_presentation(g))
    return extension_quotient(
        g, _parse_toric(g, args.toric), _parse_blowup(g, args.blowup)
    )


# ---------------------------------------------------------------------------
# Subcommand handlers

def _cmd_classify(args) -> int:
    g = parse_graph(args.graph)
    dtype = classify(g)
    count = g.vertex_count
    plural = "vertex" if count == 1 else "vertices"
    if dtype.kind == "finite":
        head = f"Finite {dtype.name}"
    elif dtype.kind == "affine":
        head = f"Affine {dtype.name[:-1]}"
    elif dtype.kind == "indefinite":
        head = "Indefinite"
    else:
        head = f"Reducible {dtype.name}"
    payload = {
        "kind": dtype.kind,
        "name": dtype.name,
        "vertices": count,
    }
    _emit(args, payload, f"{head}, {count} {plural}")
    return 0


def _cmd_present(args) -> int:
    p = _selected_presentation(args)
    _emit(args, presentation_to_json(p), presentation_text(p))
    return 0


def _cmd_garside(args) -> int:
    g = parse_graph(args.graph)
    word = parse_word(g, args.word)
    nf = normal_form(g, word)
    factors = [
        word_text(g, tuple((v, 1) for v in w)) for w in factor_words(g, nf)
    ]
    payload = {"delta_power": nf.delta_power, "factors": factors}
    lines = [
        f"delta power: {nf.delta_power}",
        "factors: " + (" | ".join(factors) if factors else "(none)"),
    ]
    if args.word2 is not None:
        equal = words_equal(g, word, parse_word(g, args.word2))
        payload["equal"] = equal
        lines.append(f"equal: {'yes' if equal else 'no'}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_enumerate(args) -> int:
    p = _selected_presentation(args)
    result = coset_enumerate(p, max_cosets=args.max_cosets)
    payload = {
        "finished": result.finished,
        "order": result.order,
        "cosets_defined": result.cosets_defined,
    }
    text = "\n".join(
        [
            f"finished: {'yes' if result.finished else 'no'}",
            f"order: {result.order if result.order is not None else 'unknown'}",
            f"cosets defined: {result.cosets_defined}",
        ]
    )
    _emit(args, payload, text)
    return 0


def _cmd_abelianize(args) -> int:
    invariants = abelianization(_selected_presentation(args))
    payload = {
        "free_rank": invariants.free_rank,
        "torsion": list(invariants.torsion),
    }
    parts = []
    if invariants.free_rank == 1:
        parts.append("Z")
    elif invariants.free_rank > 1:
        parts.append(f"Z^{invariants.free_rank}")
    parts.extend(f"Z/{n}" for n in invariants.torsion)
    _emit(args, payload, " x ".join(parts) if parts else "trivial")
    return 0


def _cmd_affine(args) -> int:
    checks = check_affine_identities(realize(parse_graph(args.graph)))
    payload = [{"identity": c.identity, "pass": c.passed} for c in checks]
    lines = [
        f"{'ok  ' if c.passed else 'FAIL'} {c.identity}" for c in checks
    ]
    good = sum(c.passed for c in checks)
    lines.append(f"{good} of {len(checks)} identities hold")
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))
    return 0 if good == len(checks) else 2


def _rank_for_degree(degree: int | None, what: str) -> int:
    if what in ("marking", "theta"):
        if degree not in (None, 2):
            raise ValueError(f"{what} is specific to degree 2")
        return 7
    if degree is None:
        raise ValueError(f"--degree is required for {what}")
    if not 1 <= degree <= 6:
        raise ValueError("degree must lie between 1 and 6")
    return 9 - degree


def _cmd_delpezzo(args) -> int:
    rank = _rank_for_degree(args.degree, args.what)
    degree = 9 - rank
    if args.what == "exceptional":
        vectors = exceptional_vectors(rank)
        payload = {
            "degree": degree,
            "rank": rank,
            "count": len(vectors),
            "vectors": [list(v) for v in vectors],
        }
        text = f"{len(vectors)} exceptional vectors in rank {rank} (degree {degree})"
    elif args.what == "roots":
        system = roots(rank)
        payload = {
            "degree": degree,
            "rank": rank,
            "count": len(system.vectors),
            "type": system.dtype.name,
            "roots": [list(v) for v in system.vectors],
        }
        text = f"{len(system.vectors)} roots of type {system.dtype.name} in rank {rank} (degree {degree})"
    elif args.what == "nodal-classes":
        classes = classify_two_component_structures(degree)
        payload = {
            "degree": degree,
            "classes": [
                {
                    "representative": [list(v) for v in c.representative],
                    "weights": [list(w) for w in c.weights],
                    "kernel": c.kernel_type.name,
                    "orbit_size": c.orbit_size,
                }
                for c in classes
            ],
        }
        text = "\n".join(
            f"representative {tuple(c.representative[0])}: kernel {c.kernel_type.name}, "
            f"orbit size {c.orbit_size}"
            for c in classes
        )
    elif args.what == "marking":
        report = limit_marking_check()
        payload = {
            "ok": report.ok,
            "checks": report.checks,
            "sign_rule": report.sign_rule_ok,
            "beta_type": report.beta_type.name,
            "violations": list(report.violations),
        }
        text = (
            f"{report.checks} checks, {len(report.violations)} violations, "
            f"sign rule {'holds' if report.sign_rule_ok else 'fails'}, "
            f"beta basis of type {report.beta_type.name}"
        )
    else:  # theta
        report = theta_torsor_check()
        payload = {
            "ok": report.ok,
            "torsor_size": report.torsor_size,
            "classes_hit": report.classes_hit,
            "pairs_collapse": report.pairs_collapse,
        }
        text = (
            f"torsor of size {report.torsor_size}, {report.classes_hit} classes "
            f"hit by exceptional vectors, opposite pairs "
            f"{'collapse' if report.pairs_collapse else 'do not collapse'}"
        )
    _emit(args, payload, text)
    return 0


def _cmd_tacnode(args) -> int:
    report = branch_sign_trials(
        trials=args.trials,
        truncation=args.truncation,
        seed=args.seed,
        k=args.k,
    )
    payload = {
        "trials": report.trials,
        "failures": report.failures,
        "examples": list(report.examples),
    }
    print(json.dumps(payload, indent=2))
    return 0 if report.ok else 2


# ---------------------------------------------------------------------------
# The verify suite

def _gram_min_eigenvalue(g) -> float:
    """Smallest eigenvalue of the cosine matrix, by cyclic Jacobi sweeps."""
    n = g.vertex_count
    b = [[1.0 if i == j else -cos(pi / g.mults[i][j]) for j in range(n)]
         for i in range(n)]
    for _ in range(40):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off = max(off, abs(b[p][q]))
                if abs(b[p][q]) < 1e-12:
                    continue
                theta = 0.5 * (b[q][q] - b[p][p]) / b[p][q]
                t = (1 if theta >= 0 else -1) / (
                    abs(theta) + (theta * theta + 1) ** 0.5
                )
                c = 1 / (t * t + 1) ** 0.5
                s = t * c
                for k in range(n):
                    bkp, bkq = b[k][p], b[k][q]
                    b[k][p] = c * bkp - s * bkq
                    b[k][q] = s * bkp + c * bkq
                for k in range(n):
                    bpk, bqk = b[p][k], b[q][k]
                    b[p][k] = c * bpk - s * bqk
                    b[q][k] = s * bpk + c * bqk
        if off < 1e-12:
            break
    return min(b[i][i] for i in range(n))


def _random_connected_graph(rng: random.Random):
    n = rng.randint(3, 7)
    labels = tuple(str(i + 1) for i in range(n))
    edges = {}
    order = list(range(1, n))
    rng.shuffle(order)
    for v in order:
        w = rng.randrange(v)
        edges[(w, v)] = rng.choice((3, 3, 3, 4, 6))
    for _ in range(rng.randint(0, 3)):
        i, j = sorted(rng.sample(range(n), 2))
        if (i, j) not in edges:
            edges[(i, j)] = rng.choice((3, 4, 6, INF))
    return coxeter_graph(labels, [(i, j, m) for (i, j), m in edges.items()])


def _check_catalogue() -> str | None:
    for name, g in catalogue_entries(9):
        got = classify(g).name
        if got != name:
            return f"{name} classified as {got}"
    rng = random.Random(20260816)
    found = 0
    while found < 50:
        g = _random_connected_graph(rng)
        if _gram_min_eigenvalue(g) >= -1e-6:
            continue
        found += 1
        got = classify(g).name
        if got != "Indefinite":
            return f"an indefinite random graph classified as {got}"
    return None


def _check_longest_lengths() -> str | None:
    for name, expect in (("A7", 28), ("D5", 20), ("E6", 36), ("E7", 63)):
        c = reflection_rep(parse_graph(name))
        _, word = longest_element(c)
        positives = len(c.positive_roots)
        if len(word) != expect or positives != expect:
            return (
                f"{name}: longest word {len(word)}, positive roots "
                f"{positives}, expected {expect}"
            )
    return None


def _check_symmetric_quotients(max_cosets: int) -> str | None:
    for l in (2, 3, 4):
        p = reduced_artin_presentation(parse_graph(f"A{l}~"))
        result = coset_enumerate(p, max_cosets=max_cosets)
        want = factorial(l + 1)
        if not result.finished or result.order != want:
            return (
                f"A{l}~: finished={result.finished} order={result.order}, "
                f"expected {want}"
            )
    return None


def _reflection_quotient_detail(name: str, finite: str, want: int,
                                max_cosets: int) -> str | None:
    p = coxeter_quotient(reduced_artin_presentation(parse_graph(name)))
    result = coset_enumerate(p, max_cosets=max_cosets)
    if not result.finished or result.order != want:
        return (
            f"{name}: finished={result.finished} order={result.order}, "
            f"expected {want}"
        )
    c = reflection_rep(parse_graph(finite))
    order = group_order(c, cap=2 * want + 1)
    involution = canonical_involution(c)
    center = 2 if all(i == j for i, j in enumerate(involution)) else 1
    if order is None or order // center != want:
        return f"{name}: matrix orbit oracle {order}//{center} != {want}"
    return None


def _check_reflection_quotients(max_cosets: int) -> str | None:
    for name, finite, want in (
        ("A4~", "A4", 120),
        ("D5~", "D5", 1920),
        ("E6~", "E6", 51840),
    ):
        detail = _reflection_quotient_detail(name, finite, want, max_cosets)
        if detail:
            return detail
    return None


def _check_e7_reflection_quotient(max_cosets: int) -> str | None:
    return _reflection_quotient_detail("E7~", "E7", 1451520, max_cosets)


def _check_garside_relations() -> str | None:
    for name in ("A2", "A3", "A4", "D4", "D5"):
        g = parse_graph(name)
        delta = garside_delta(g)
        square = delta + delta
        involution = canonical_involution(reflection_rep(g))
        for i in range(g.vertex_count):
            letter = ((i, 1),)
            if not words_equal(g, square + letter, letter + square):
                return f"{name}: Delta^2 does not commute with t{g.labels[i]}"
            conjugate = delta + letter + inverse_word(delta)
            if not words_equal(g, conjugate, ((involution[i], 1),)):
                return f"{name}: Delta t{g.labels[i]} Delta^-1 is not the involution image"
    return None


def _check_affine_identities() -> str | None:
    for name in ("A2~", "A3~", "A4~", "D4~", "D5~", "E6~", "E7~"):
        for check in check_affine_identities(realize(parse_graph(name))):
            if not check.passed:
                return f"{name}: {check.identity}"
    return None


def _check_extension_bookkeeping() -> str | None:
    g6 = parse_graph("E6~")
    full = extension_quotient(g6, toric=[(0, 1), (0, 6), (1, 6)],
                              blowup=[0, 1, 6])
    if full != reduced_artin_presentation(g6):
        return "E6~ full boundary data does not reproduce the reduced presentation"
    g7 = parse_graph("E7~")
    ext = extension_quotient(g7, toric=[(0, 7)], blowup=[0, 7, 2])
    red = reduced_artin_presentation(g7)
    if not set(red.relators) <= set(ext.relators):
        return "E7~ extension loses reduced relators"
    extra = set(ext.relators) - set(red.relators)
    want = parse_presentation(
        "gens: " + " ".join(ext.generators) + " ; rels: D(A7) g(0,7) ;",
        graph=g7,
    ).relators[0]
    if extra != {want}:
        return f"E7~ extra relators number {len(extra)}, expected exactly D(A7) g(0,7)"
    return None


def _check_mcg_abelianization() -> str | None:
    invariants = abelianization(theorem_presentation("mcg-3-1"))
    if invariants.free_rank or invariants.torsion:
        return f"rank {invariants.free_rank}, torsion {invariants.torsion}"
    return None


_EXCEPTIONAL_COUNTS = {3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}
_ROOT_COUNTS = {3: 8, 4: 20, 5: 40, 6: 72, 7: 126, 8: 240}
_ROOT_TYPES = {3: "A2 + A1", 4: "A4", 5: "D5", 6: "E6", 7: "E7", 8: "E8"}


def _root_detail(rank: int) -> str | None:
    system = roots(rank)
    if len(exceptional_vectors(rank)) != _EXCEPTIONAL_COUNTS[rank]:
        return f"rank {rank}: {len(exceptional_vectors(rank))} exceptional vectors"
    if len(system.vectors) != _ROOT_COUNTS[rank]:
        return f"rank {rank}: {len(system.vectors)} roots"
    if system.dtype.name != _ROOT_TYPES[rank]:
        return f"rank {rank}: root type {system.dtype.name}"
    return None


def _check_lattice_counts() -> str | None:
    for rank in range(3, 8):
        detail = _root_detail(rank)
        if detail:
            return detail
        if set(exceptional_difference_roots(rank)) != set(roots(rank).vectors):
            return f"rank {rank}: orthogonal exceptional differences miss roots"
    return None


def _check_rank_eight_counts() -> str | None:
    return _root_detail(8)


def _check_two_component_table() -> str | None:
    rows = [
        (d, c.representative[0], c.weights[0], c.kernel_type.name, c.orbit_size)
        for d in (2, 3, 4, 5)
        for c in classify_two_component_structures(d)
    ]
    want = [
        (2, (0, 0, 0, 0, 0, 0, 0, -1), (0, 0, 0, 0, 0, 0, 1), "E6", 28),
        (3, (0, 0, 0, 0, 0, 0, -1), (0, 0, 0, 0, 0, 1), "D5", 27),
        (4, (0, 0, 0, 0, 0, -1), (0, 0, 0, 0, 1), "A4", 16),
        (4, (1, 1, 0, 0, 0, 0), (0, 1, 0, 0, 0), "D4", 5),
        (5, (0, 0, 0, 0, -1), (0, 0, 0, 1), "A2 + A1", 10),
        (5, (1, 1, 0, 0, 0), (0, 1, 0, 0), "A3", 5),
    ]
    if rows != want:
        return f"classification table has {len(rows)} rows and differs"
    return None


def _check_limit_marking() -> str | None:
    report = limit_marking_check()
    if not report.ok or report.checks != 1596:
        return f"{len(report.violations)} violations in {report.checks} checks"
    if not report.sign_rule_ok:
        return "sign parity rule fails"
    if report.beta_type.name != "A7":
        return f"beta basis has type {report.beta_type.name}"
    return None


def _check_theta_torsor() -> str | None:
    report = theta_torsor_check()
    if report.torsor_size != 64 or report.classes_hit != 28:
        return f"torsor {report.torsor_size}, classes {report.classes_hit}"
    if not report.pairs_collapse or not report.ok:
        return "exceptional classes do not collapse in opposite pairs"
    return None


def _check_tacnodal_signs() -> str | None:
    report = branch_sign_trials(trials=100, truncation=16, seed=0)
    if report.failures:
        return f"{report.failures} of {report.trials} trials violate the sign rule"
    return None


def _verify_checks(max_cosets: int | None):
    fast = max_cosets if max_cosets is not None else DEFAULT_MAX_COSETS
    extended = max_cosets if max_cosets is not None else 4 * 10**6
    return (
        ("1", "fast",
         "catalogue soundness: rank <= 9 diagrams classify to their own "
         "names and random non-catalogue graphs are indefinite",
         _check_catalogue),
        ("2", "fast",
         "longest-element length equals the positive-root count for "
         "A7, D5, E6, E7",
         _check_longest_lengths),
        ("3", "fast",
         "reduced Artin groups of types A2~ A3~ A4~ enumerate to the "
         "symmetric-group orders 6, 24, 120",
         lambda: _check_symmetric_quotients(fast)),
        ("4", "fast",
         "squared-generator quotients of types A4~ D5~ E6~ enumerate to "
         "120, 1920, 51840, matching the matrix orbit orders",
         lambda: _check_reflection_quotients(fast)),
        ("4x", "extended",
         "squared-generator quotient of type E7~ enumerates to 1451520",
         lambda: _check_e7_reflection_quotient(extended)),
        ("5", "fast",
         "Delta^2 is central and Delta t_i Delta^-1 hits the canonical "
         "involution in normal form for A2, A3, A4, D4, D5",
         _check_garside_relations),
        ("6", "fast",
         "alcove identities iota_j = w_j g_j, tau = iota_ij iota_i and "
         "simple transitivity hold for the seven affine families",
         _check_affine_identities),
        ("7", "fast",
         "extension relators: full boundary data over E6~ gives the reduced "
         "presentation; blowup vertex 2 over E7~ adds exactly D(A7) g(0,7)",
         _check_extension_bookkeeping),
        ("8", "fast",
         "the genus-three mapping class presentation abelianizes to the "
         "trivial group",
         _check_mcg_abelianization),
        ("9", "fast",
         "exceptional and root counts for ranks 3..7 with roots the "
         "differences of orthogonal exceptional pairs",
         _check_lattice_counts),
        ("9x", "extended",
         "rank-8 search: 240 exceptional vectors and 240 roots of type E8",
         _check_rank_eight_counts),
        ("10", "fast",
         "two-component anticanonical classes: orbits, representatives and "
         "kernel types for degrees 2 to 5",
         _check_two_component_table),
        ("11", "fast",
         "degeneration marking: 1596 intersection checks, the sign parity "
         "rule, and the A7 beta basis",
         _check_limit_marking),
        ("12", "fast",
         "theta torsor of size 64 with exceptional vectors in 28 opposite "
         "pairs",
         _check_theta_torsor),
        ("13", "fast",
         "tacnodal branch sign rule over 100 random split families",
         _check_tacnodal_signs),
    )


def _cmd_verify(args) -> int:
    checks = _verify_checks(args.max_cosets)
    suite = "all" if args.extended else args.suite
    if suite != "all":
        checks = tuple(c for c in checks if c[1] == suite)
    if args.only:
        wanted = [part.strip() for part in args.only.split(",")]
        known = {c[0] for c in checks}
        for cid in wanted:
            if cid not in known:
                raise ValueError(f"unknown check id {cid!r} in suite {suite!r}")
        checks = tuple(c for c in checks if c[0] in wanted)
    results = []
    for cid, _, label, func in checks:
        detail = func()
        results.append({"id": cid, "label": label,
                        "ok": detail is None,
                        "detail": detail})
    passed = sum(r["ok"] for r in results)
    if args.json:
        print(json.dumps({
            "suite": suite,
            "checks": results,
            "passed": passed,
            "total": len(results),
        }, indent=2))
    else:
        for r in results:
            print(f"{'ok  ' if r['ok'] else 'FAIL'} {r['id']:>2}  {r['label']}")
            if not r["ok"]:
                print(f"         {r['detail']}")
        print(f"{passed} of {len(results)} checks passed")
    return 0 if passed == len(results) else 2


# ---------------------------------------------------------------------------
# Argument plumbing

def _build_parser() -> _Parser:
    parser = _Parser(prog="artifact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON")

    selection = argparse.ArgumentParser(add_help=False)
    selection.add_argument("--theorem", choices=sorted(THEOREM_NAMES),
                           help="a named theorem presentation")
    selection.add_argument("--graph", help="a catalogue name or graph literal")
    selection.add_argument("--kind", choices=_KINDS, default="reduced",
                           help="presentation attached to --graph")
    selection.add_argument("--toric", default="full",
                           help="minuscule pairs for --kind extension: "
                                "'full', 'none' or pairs like 0-1,0-6")
    selection.add_argument("--blowup", default="full",
                           help="blowup vertices for --kind extension: "
                                "'full', 'none' or vertices like 0,7,2")

    p = sub.add_parser("classify", parents=[shared],
                       help="classify a Coxeter graph")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("present", parents=[shared, selection],
                       help="print a presentation")
    p.set_defaults(func=_cmd_present)

    p = sub.add_parser("garside", parents=[shared],
                       help="Garside normal form of a word")
    p.add_argument("--graph", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--word2", help="second word to compare for equality")
    p.set_defaults(func=_cmd_garside)

    p = sub.add_parser("enumerate", parents=[shared, selection],
                       help="Todd-Coxeter enumeration of a presentation")
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("abelianize", parents=[shared, selection],
                       help="abelian invariants of a presentation")
    p.set_defaults(func=_cmd_abelianize)

    p = sub.add_parser("affine", parents=[shared],
                       help="verify the alcove symmetry identities")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_affine)

    p = sub.add_parser("delpezzo", parents=[shared],
                       help="Picard lattice tables")
    p.add_argument("--degree", type=int)
    p.add_argument("--what", required=True,
                   choices=("roots", "exceptional", "nodal-classes",
                            "marking", "theta"))
    p.set_defaults(func=_cmd_delpezzo)

    p = sub.add_parser("tacnode",
                       help="randomized checks of the branch sign rule")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--truncation", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int)
    p.set_defaults(func=_cmd_tacnode)

    p = sub.add_parser("verify", parents=[shared],
                       help="run the theorem check suite")
    p.add_argument("--suite", choices=("fast", "extended", "all"),
                   default="fast")
    p.add_argument("--extended", action="store_true",
                   help="shorthand for --suite all")
    p.add_argument("--only", help="comma-separated check ids to run")
    p.add_argument("--max-cosets", type=int)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
