"""Command-line surface: present, verify, find-ample, random-suite.

Exit codes: 0 pass, 1 violation, 2 input error, 3 inconclusive.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import groebner, hodge, suite
from .coxeter import CoxeterError, CoxeterMatrix, CoxeterWord
from .numeric import DEFAULT_PRECISION_BITS, DEFAULT_TOLERANCE, RATIONAL, BackendError, get_backend
from .ring import build_presentation, is_complement_permutation, presentation_to_dict

EXIT = {hodge.PASS: 0, hodge.FAIL: 1, hodge.INCONCLUSIVE: 3}
EXIT_INPUT = 2


class InputError(ValueError):
    pass


class Job:
    def __init__(self, word, backend, seed=0, c=None):
        self.word = word
        self.backend = backend
        self.seed = seed
        self.c = c
        self.found = None


def _load_job(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _split(text):
    return [t for t in text.replace(",", " ").split() if t]


def build_job(args, need_word=True):
    doc = _load_job(args.input) if args.input else {}
    if not isinstance(doc, dict):
        raise InputError("job file must be a JSON object")
    word = None
    if need_word:
        if "coxeter_matrix" not in doc:
            raise InputError("job file needs a coxeter_matrix (use --input)")
        try:
            cm = CoxeterMatrix(tuple(map(tuple, doc["coxeter_matrix"])),
                               tuple(doc["generators"]) if "generators" in doc else None)
            names = _split(args.word) if args.word is not None else doc.get("word", [])
            word = CoxeterWord.from_names(cm, names)
        except (CoxeterError, TypeError) as e:
            raise InputError(str(e)) from None
    bits = args.precision_bits if args.precision_bits is not None else doc.get(
        "precision_bits", DEFAULT_PRECISION_BITS)
    tol = args.tolerance if args.tolerance is not None else doc.get("tolerance", DEFAULT_TOLERANCE)
    name = args.backend or doc.get("backend")
    try:
        tol = float(tol)
        bits = int(bits)
        if name is None:
            backend = suite.pick_backend(word, bits, tol) if word is not None else None
        else:
            backend = get_backend(name, bits, tol)
    except (BackendError, TypeError, ValueError) as e:
        raise InputError(str(e)) from None
    if backend is RATIONAL and word is not None:
        bad = sorted(m for m in word.relevant_orders() if not RATIONAL.has_cosine(m))
        if bad:
            raise InputError(f"rational backend cannot represent cos(pi/m) for m in {bad}")
    seed = args.seed if args.seed is not None else doc.get("seed", 0)
    c = getattr(args, "c", None)
    if c is None:
        c = doc.get("c")
    elif isinstance(c, str):
        c = _split(c)
    if c is not None and backend is not None:
        try:
            c = hodge.LefschetzVector(tuple(backend.scalar(x) for x in c), backend)
        except (BackendError, TypeError, ValueError) as e:
            raise InputError(f"bad Lefschetz vector: {e}") from None
        if word is not None and c.n != word.n:
            raise InputError(f"Lefschetz vector has {c.n} entries for a word of length {word.n}")
    return Job(word, backend, int(seed), c)


# --- commands ------------------------------------------------------------------


def cmd_present(job):
    p = build_presentation(job.word, job.backend)
    d = presentation_to_dict(p)
    rows = [["kind", "k", "i", "j", "value"]]
    for k, t in enumerate(d["raw"], start=1):
        rows += [["raw", k, i, j, c] for i, j, c in t]
    for k, t in enumerate(d["reduced"], start=1):
        rows += [["reduced", k, i, j, c] for i, j, c in t]
    for l, row in enumerate(d["q"], start=1):
        rows += [["q", l, l, m, v] for m, v in enumerate(row, start=1)]
    text = [f"word: {' '.join(d['word']) or '(empty)'}", f"backend: {d['backend']}"]
    text += [f"q_{k} = {r}" for k, r in enumerate(d["relations"], start=1)]
    text += [f"q'_{k} = {r}" for k, r in enumerate(d["reduced_relations"], start=1)]
    if not d["relations"]:
        text.append("trivial ring: R")
    return d, hodge.PASS, rows, text


def _verify_pd(p):
    res = []
    for k in range(p.n + 1):
        ok = is_complement_permutation(p, k)
        res.append({"k": k, "verdict": hodge.PASS if ok else hodge.FAIL})
    return {"check": "pd", "verdict": hodge.combine(r["verdict"] for r in res), "degrees": res}


def _verify_gb(p):
    prior = [groebner.spair_reduce_all(p), groebner.reducedness_check(p)]
    out = {"check": "gb", "spair": prior[0].to_dict(), "reducedness": prior[1].to_dict()}
    try:
        cert = groebner.ci_koszul_certificate(p, prior)
        out["certificate"] = cert.to_dict()
        out["verdict"] = hodge.PASS if cert.passed else hodge.FAIL
    except groebner.CertificationRefused as e:
        out["certificate"] = {"status": "refused", "failed": [c.name for c in e.failed]}
        out["verdict"] = hodge.FAIL
    return out


def _vector(job, p):
    if job.c is not None:
        return job.c, None
    if job.found is None:
        job.found = hodge.find_ample(job.word, job.backend)
    return job.found.vector, job.found.log


def _verify_hl(job, p):
    try:
        lvec, log = _vector(job, p)
    except hodge.AmpleSearchError as e:
        return {"check": "hl", "verdict": hodge.FAIL, "search_error": str(e), "witness": e.step}
    rows = hodge.verify_hl(p, lvec)
    out = {"check": "hl", "c": lvec.formatted(), "verdict": hodge.combine(r["verdict"] for r in rows),
           "degrees": rows}
    if log is not None:
        out["search_log"] = log
    return out


def _verify_hr(job, p):
    try:
        lvec, log = _vector(job, p)
    except hodge.AmpleSearchError as e:
        return {"check": "hr", "verdict": hodge.FAIL, "search_error": str(e), "witness": e.step}
    rep = hodge.verify_hr(p, lvec)
    out = {"check": "hr", **rep.to_dict()}
    if log is not None:
        out["search_log"] = log
    return out


def _verify_oracle(p):
    a = suite.check_oracle(p)
    b = suite.check_qmatrix(p)
    parts = [x for x in (a, b) if x["verdict"] != "skipped"]
    return {"check": "oracle", "verdict": hodge.combine(x["verdict"] for x in parts),
            "oracle": a, "qmatrix": b}


def cmd_verify(job, which):
    p = build_presentation(job.word, job.backend)
    names = ["pd", "gb", "oracle", "hl", "hr"] if which == "all" else [which]
    results = []
    for name in names:
        if name == "pd":
            results.append(_verify_pd(p))
        elif name == "gb":
            results.append(_verify_gb(p))
        elif name == "oracle":
            results.append(_verify_oracle(p))
        elif name == "hl":
            results.append(_verify_hl(job, p))
        elif name == "hr":
            results.append(_verify_hr(job, p))
    verdict = hodge.combine(r["verdict"] for r in results)
    report = {**job.word.descriptor(), **job.backend.describe(), "verdict": verdict,
              "results": results}
    rows = [["check", "verdict"]] + [[r["check"], r["verdict"]] for r in results]
    text = [f"{r['check']}: {r['verdict']}" for r in results] + [f"verdict: {verdict}"]
    return report, verdict, rows, text


def cmd_find_ample(job):
    try:
        res = hodge.find_ample(job.word, job.backend)
    except hodge.AmpleSearchError as e:
        report = {**job.word.descriptor(), "verdict": hodge.FAIL, "error": str(e), "witness": e.step}
        return report, hodge.FAIL, [["verdict"], [hodge.FAIL]], [f"search failed: {e}"]
    verdict = res.report.verdict
    report = {**job.word.descriptor(), **job.backend.describe(), "verdict": verdict,
              "c": res.vector.formatted(), "log": res.log, "report": res.report.to_dict()}
    rows = [["j", "c_j", "tries", "verdict"]] + [[r["j"], r["c_j"], r["tries"], r["verdict"]]
                                                  for r in res.log]
    text = [f"c = ({', '.join(res.vector.formatted())})", f"verdict: {verdict}"]
    return report, verdict, rows, text


def cmd_random_suite(job, count, max_len):
    if count < 0 or max_len < 1:
        raise InputError("--count must be >= 0 and --max-len >= 1")
    bits = job.backend.precision_bits if job.backend is not None and not job.backend.exact else None
    tol = job.backend.tolerance if job.backend is not None and not job.backend.exact else None
    report = suite.random_suite(job.seed, count, max_len, bits, tol)
    rows = [["index", "word", "backend", "check", "verdict"]]
    for it in report["items"]:
        for c in it["checks"]:
            rows.append([it["index"], " ".join(it["word"]), it["backend"], c["check"], c["verdict"]])
    text = [f"{it['index']}: {' '.join(it['word'])} [{it['backend']}] {it['verdict']}"
            for it in report["items"]] + [f"verdict: {report['verdict']}"]
    return report, report["verdict"], rows, text


# --- rendering -----------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def render(fmt, report, rows, text):
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in rows:
            w.writerow(r)
        return buf.getvalue()
    return "\n".join(text) + "\n"


def _common(p):
    p.add_argument("--input", help="JSON job file (use - for stdin)")
    p.add_argument("--word", help="generator names, comma or space separated; overrides the job file")
    p.add_argument("--backend", choices=["rational", "float"])
    p.add_argument("--tolerance", type=float)
    p.add_argument("--precision-bits", type=int, dest="precision_bits")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")


def make_parser():
    ap = argparse.ArgumentParser(prog="bottsamelson",
                                 description="Presentations and Hodge checks for Bott-Samelson rings.")
    sub = ap.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("present", help="quadratic presentation of a word"))
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("which", choices=["pd", "gb", "hl", "hr", "oracle", "all"])
    v.add_argument("--c", help="explicit Lefschetz vector, e.g. 1,1/2,1/4")
    _common(v)
    _common(sub.add_parser("find-ample", help="search for a Lefschetz vector"))
    r = sub.add_parser("random-suite", help="seeded randomized cross-validation")
    r.add_argument("--count", type=int, default=20)
    r.add_argument("--max-len", type=int, default=6, dest="max_len")
    _common(r)
    return ap


def main(argv=None):
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else 0
    try:
        if args.command == "random-suite":
            job = build_job(args, need_word=False)
            out = cmd_random_suite(job, args.count, args.max_len)
        else:
            job = build_job(args)
            if args.command == "present":
                out = cmd_present(job)
            elif args.command == "verify":
                if args.which in ("hl", "hr", "all") and job.c is None and not job.backend.exact:
                    print("note: searching for a Lefschetz vector in floating point", file=sys.stderr)
                out = cmd_verify(job, args.which)
            else:
                out = cmd_find_ample(job)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    report, verdict, rows, text = out
    sys.stdout.write(render(args.format, report, rows, text))
    if verdict != hodge.PASS:
        print(f"verdict: {verdict}", file=sys.stderr)
    return EXIT[verdict]


if __name__ == "__main__":
    sys.exit(main())
