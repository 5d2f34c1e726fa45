"""Built-in example corpus and the instance runner shared by the CLI and tests."""

import fnmatch
import math
import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from importlib import resources

from . import checks
from .reducing import search_reducing_sequence, verify_reducing_sequence
from .session import DescriptionError, Session, parse_description

__all__ = [
    "corpus_files", "load_corpus_file", "corpus_session", "corpus_instances", "run_instance",
    "run_corpus", "exit_code", "SUCCESS", "FAILURE", "resolve_file",
]

SUCCESS = {"holds", "consistent", "verified", "found", "agree", "torsion", "not-torsion"}
FAILURE = {"violated", "inconsistent", "failed", "disagree"}


def exit_code(verdict):
    """0 for a positive answer, 1 for a mathematical failure, 3 for a refusal."""
    if verdict in SUCCESS:
        return 0
    if verdict in FAILURE:
        return 1
    return 3


def corpus_files():
    """``{name: text}`` for every shipped description, sorted by name."""
    root = resources.files("depthlab") / "corpus"
    out = {}
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".txt"):
            out[entry.name[:-4]] = entry.read_text(encoding="utf-8")
    return out


def load_corpus_file(name):
    files = corpus_files()
    if name not in files:
        raise DescriptionError(f"no corpus file named {name!r}")
    return parse_description(files[name], f"corpus/{name}.txt")


@lru_cache(maxsize=None)
def corpus_session(name):
    return Session(load_corpus_file(name))


def resolve_file(path):
    """A description from a path, or from the corpus when ``path`` names a shipped file."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return parse_description(fh.read(), path)
    stem = os.path.splitext(os.path.basename(path))[0]
    if stem in corpus_files() and os.sep not in path:
        return load_corpus_file(stem)
    raise DescriptionError(f"no such file: {path}")


def corpus_instances(pattern=None):
    """``[(file name, instance spec)]`` in deterministic order, filtered by a glob on the instance name."""
    out = []
    for fname in corpus_files():
        desc = load_corpus_file(fname)
        for inst in desc.instances:
            if pattern is None or fnmatch.fnmatchcase(inst.name, pattern):
                out.append((fname, inst))
    return out


def _int(inst, key, default):
    v = inst.get(key)
    return default if v is None else int(v)


def _certificate(session, inst, default="auto"):
    name = inst.get("certificate", default)
    if name == "none":
        return None, None
    if name == "auto":
        return "auto", None
    return session.certificate(name)


def _plain(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def run_instance(session, inst):
    """Evaluate one instance; returns a JSON-ready dict with ``verdict`` and ``passed``."""
    kind = inst.get("check")
    ring = session.ring
    bound = _int(inst, "bound", ring.dim + 6)
    report = {"instance": inst.name, "check": kind, "ring": session.name}
    M = session.module(inst.get("M")) if inst.get("M") else None
    N = session.module(inst.get("N")) if inst.get("N") else None

    if kind == "depth-formula":
        cert, _ = _certificate(session, inst)
        rep = checks.depth_formula_check(M, N, bound, inst.get("mode", "derived"), cert, inst.get("method", "auto"))
        report["report"] = rep.to_json()
        verdict = rep.verdict
    elif kind == "auslander":
        cert, _ = _certificate(session, inst)
        rep = checks.auslander_tor_check(M, N, bound, cert)
        report["report"] = rep.to_json()
        verdict = rep.verdict
    elif kind == "dependency-bounds":
        cert, _ = _certificate(session, inst)
        rep = checks.dependency_bounds_check(M, N, bound, cert)
        report["report"] = rep.to_json()
        verdict = rep.verdict
    elif kind == "one-dim":
        cert, _ = _certificate(session, inst)
        rep = checks.one_dim_equivalence_check(M, N, bound, cert)
        report["report"] = rep.to_json()
        verdict = rep.verdict
    elif kind == "torsion":
        T = session.module(inst.get("T"))
        verdict = checks.torsion_check(T, inst.get("domain") == "yes")
    elif kind == "tor-torsion":
        res = checks.tor_torsion_check(M, N, bound, inst.get("domain") == "yes")
        report["report"] = res
        if res["all_torsion"] is None:
            verdict = "unsupported"
        else:
            verdict = "torsion" if res["all_torsion"] else "not-torsion"
    elif kind == "reducing":
        seq, pd_bound = _certificate(session, inst, default="none")
        if seq is None or seq == "auto":
            verdict = "refused"
        else:
            res = verify_reducing_sequence(seq, pd_bound)
            report["report"] = res.to_json()
            report["sequence"] = seq.to_json()
            verdict = "verified" if res.ok else "failed"
    elif kind == "search":
        budgets = dict(max_r=_int(inst, "max_r", 1), max_n=_int(inst, "max_n", 1), max_ab=_int(inst, "max_ab", 4),
                       class_budget=_int(inst, "class_budget", 256), min_n=_int(inst, "min_n", 0))
        pd_bound = inst.get("pd_bound")
        seq = search_reducing_sequence(M, pd_bound=None if pd_bound is None else int(pd_bound), **budgets)
        report["budgets"] = budgets
        if seq is None:
            report["report"] = "no certificate within budgets"
            verdict = "not-found"
        else:
            report["report"] = seq.to_json()
            report["middle_free"] = seq.pd_tail == 0
            verdict = "found"
    elif kind == "regular-reduction":
        cert, _ = _certificate(session, inst)
        res = checks.regular_element_reduction(M, N, inst.get("element"), bound, cert)
        report["report"] = res
        if not res["applicable"]:
            verdict = "not-applicable"
        else:
            verdict = "agree" if res["agree"] else "disagree"
    else:
        raise DescriptionError(f"unknown check {kind!r}", inst.line)
    report["bound_B"] = bound
    report["verdict"] = verdict
    expect = inst.get("expect")
    report["expect"] = expect
    report["passed"] = verdict == expect if expect else verdict in SUCCESS
    return report


def _run_one(args):
    fname, inst_name = args
    session = corpus_session(fname)
    return run_instance(session, session.desc.instance(inst_name))


def workers():
    try:
        return max(1, int(os.environ.get("DEPTHLAB_THREADS", "1")))
    except ValueError:
        return 1


def run_corpus(pattern=None):
    """Run matching corpus instances; reports come back in corpus order."""
    jobs = [(f, inst.name) for f, inst in corpus_instances(pattern)]
    n = min(workers(), len(jobs))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            return list(pool.map(_run_one, jobs))
    return [_run_one(j) for j in jobs]
