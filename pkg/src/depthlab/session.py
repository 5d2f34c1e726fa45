"""Plain-text description files: rings, modules, instances and certificates.

Grammar (one directive per line, ``#`` starts a comment)::

    field 101
    order grevlex                  # or grlex
    var a 3                        # name and positive weight (default 1)
    ideal b^2 - a*c, c^2 - a^2*b   # repeatable; comma separated
    name R4

    module NAME                    # kinds: twists/rel, ideal, cyclic, residue
      twists 0 0
      rel x | y                    # one relation; components split by '|'
    end
    module NAME
      ideal a, b, c                # the ideal as a module
    end
    module NAME
      cyclic x^2                   # R/(x^2); optional 'twist T' line
    end
    module k
      residue
    end

    certificate NAME
      module k
      pd-bound 0
      step
        a 4
        b 1
        n 1
        shifts 2 2 2 2
        middle F                   # a module defined in the file
        alpha x | 0 ; y | 0        # images, one vector per ';'
        beta 1 | 0 ; 0 | 1
      end
    end

    instance NAME
      check depth-formula
      M Mx
      N Nxy
      bound 8
      expect holds
    end

Polynomials use ``3*x^2*y + 5*z``.  Every error carries a line and column.
"""

from dataclasses import dataclass, field

from .algebra import InhomogeneousError, Polynomial, PolynomialSyntaxError, StructuralError
from .groebner import GradedRing
from .reducing import ReducingSequence, ReducingStep, omega
from .resolve import PresentedModule

__all__ = [
    "DescriptionError", "ModuleSpec", "StepSpec", "CertificateSpec", "InstanceSpec", "SessionDescription",
    "Session", "parse_description", "serialize_description", "load_description", "certificate_spec",
    "INSTANCE_KEYS",
]

INSTANCE_KEYS = (
    "check", "M", "N", "T", "mode", "bound", "certificate", "element", "domain", "method",
    "max_r", "max_n", "max_ab", "min_n", "pd_bound", "class_budget", "expect", "note",
)
CHECKS = (
    "depth-formula", "auslander", "dependency-bounds", "one-dim", "torsion", "tor-torsion",
    "reducing", "search", "regular-reduction",
)


class DescriptionError(ValueError):
    def __init__(self, message, line=0, column=0, source=None):
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.bare = message


@dataclass(frozen=True)
class ModuleSpec:
    name: str
    kind: str                     # presented | ideal | cyclic | residue
    twists: tuple = ()
    relations: tuple = ()         # tuple of component tuples (polynomial strings)
    gens: tuple = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class StepSpec:
    a: int
    b: int
    n: int
    shifts: tuple
    middle: str
    alpha: tuple
    beta: tuple


@dataclass(frozen=True)
class CertificateSpec:
    name: str
    module: str
    pd_bound: object
    steps: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class InstanceSpec:
    name: str
    options: tuple                # ((key, value), ...) in file order
    line: int = field(default=0, compare=False)

    def get(self, key, default=None):
        for k, v in self.options:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class SessionDescription:
    modulus: int = 101
    order: str = "grevlex"
    variables: tuple = ()         # ((name, weight), ...)
    ideal: tuple = ()
    name: str = None
    modules: tuple = ()
    certificates: tuple = ()
    instances: tuple = ()

    def module(self, name):
        for m in self.modules:
            if m.name == name:
                return m
        raise KeyError(name)

    def instance(self, name):
        for i in self.instances:
            if i.name == name:
                return i
        raise KeyError(name)

    def certificate(self, name):
        for c in self.certificates:
            if c.name == name:
                return c
        raise KeyError(name)


# -- parsing ----------------------------------------------------------------------------

class _Lines:
    def __init__(self, text):
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].rstrip()
            if body.strip():
                self.items.append((no, body))
        self.i = 0

    def next(self):
        if self.i >= len(self.items):
            return None
        item = self.items[self.i]
        self.i += 1
        return item


def _split_head(body):
    stripped = body.lstrip()
    col = len(body) - len(stripped) + 1
    parts = stripped.split(None, 1)
    key = parts[0]
    rest = parts[1] if len(parts) > 1 else ""
    rest_col = col + len(key) + (len(stripped[len(key):]) - len(stripped[len(key):].lstrip()))
    return key, rest, col, rest_col


class _Parser:
    def __init__(self, text, source=None):
        self.lines = _Lines(text)
        self.source = source
        self.amb = None

    def err(self, msg, line, column=1):
        raise DescriptionError(msg, line, column, self.source)

    def _int(self, text, line, col, positive=False, minimum=None):
        try:
            v = int(text)
        except ValueError:
            self.err(f"expected an integer, got {text!r}", line, col)
        if positive and v <= 0:
            self.err(f"expected a positive integer, got {v}", line, col)
        if minimum is not None and v < minimum:
            self.err(f"expected an integer >= {minimum}, got {v}", line, col)
        return v

    def _ambient(self, line):
        if self.amb is None:
            if not self.variables:
                self.err("no variables declared before the first polynomial", line)
            names = [v for v, _ in self.variables]
            weights = [w for _, w in self.variables]
            try:
                self.amb = GradedRing.polynomial_ring(names, weights, self.modulus, self.order).ambient
            except (ValueError, StructuralError) as e:
                self.err(str(e), line)
        return self.amb

    def _poly(self, text, line, col):
        amb = self._ambient(line)
        try:
            return str(amb.parse(text))
        except PolynomialSyntaxError as e:
            self.err(f"polynomial syntax: {e.args[0]}", line, col + e.column)
        except (ValueError, KeyError) as e:
            self.err(f"polynomial: {e}", line, col)

    def _poly_list(self, text, line, col, sep=","):
        out = []
        offset = 0
        for piece in text.split(sep):
            lead = len(piece) - len(piece.lstrip())
            if not piece.strip():
                self.err("empty entry", line, col + offset)
            out.append(self._poly(piece.strip(), line, col + offset + lead))
            offset += len(piece) + 1
        return tuple(out)

    def _vectors(self, text, line, col):
        out = []
        offset = 0
        for piece in text.split(";"):
            lead = len(piece) - len(piece.lstrip())
            if not piece.strip():
                self.err("empty vector", line, col + offset)
            out.append(self._poly_list(piece.strip(), line, col + offset + lead, sep="|"))
            offset += len(piece) + 1
        return tuple(out)

    def parse(self):
        self.modulus, self.order, self.variables = 101, "grevlex", []
        ideal, name = [], None
        modules, certs, instances = [], [], []
        seen = set()
        while True:
            item = self.lines.next()
            if item is None:
                break
            no, body = item
            key, rest, col, rcol = _split_head(body)
            if key == "field":
                if self.amb is not None:
                    self.err("'field' must precede all polynomials", no, col)
                self.modulus = self._int(rest, no, rcol, positive=True)
            elif key == "order":
                if rest not in ("grevlex", "grlex"):
                    self.err(f"unknown order {rest!r}", no, rcol)
                if self.amb is not None:
                    self.err("'order' must precede all polynomials", no, col)
                self.order = rest
            elif key == "var":
                if self.amb is not None:
                    self.err("'var' must precede all polynomials", no, col)
                parts = rest.split()
                if not parts or len(parts) > 2 or not parts[0].isidentifier():
                    self.err("expected 'var NAME [WEIGHT]'", no, rcol)
                if parts[0] in [v for v, _ in self.variables]:
                    self.err(f"variable {parts[0]!r} declared twice", no, rcol)
                w = self._int(parts[1], no, rcol + len(parts[0]) + 1, positive=True) if len(parts) == 2 else 1
                self.variables.append((parts[0], w))
            elif key == "ideal":
                ideal.extend(self._poly_list(rest, no, rcol))
            elif key == "name":
                name = rest.strip()
            elif key in ("module", "certificate", "instance"):
                nm = rest.strip()
                if not nm or len(nm.split()) != 1:
                    self.err(f"expected '{key} NAME'", no, rcol)
                if (key, nm) in seen:
                    self.err(f"{key} {nm!r} defined twice", no, rcol)
                seen.add((key, nm))
                if key == "module":
                    modules.append(self._module(nm, no))
                elif key == "certificate":
                    certs.append(self._certificate(nm, no))
                else:
                    instances.append(self._instance(nm, no))
            else:
                self.err(f"unknown directive {key!r}", no, col)
        if not self.variables:
            self.err("no variables declared", 0)
        self._ambient(0)
        desc = SessionDescription(self.modulus, self.order, tuple(self.variables), tuple(ideal), name,
                                  tuple(modules), tuple(certs), tuple(instances))
        self._cross_check(desc)
        return desc

    def _block(self, what, start):
        while True:
            item = self.lines.next()
            if item is None:
                self.err(f"{what} opened here is missing 'end'", start)
            no, body = item
            key, rest, col, rcol = _split_head(body)
            if key == "end":
                return
            yield no, key, rest, col, rcol

    def _module(self, name, start):
        kind, twists, rels, gens = None, None, [], ()
        twist_line = None

        def set_kind(k, no, col):
            nonlocal kind
            if kind is not None and kind != k:
                self.err(f"module {name!r} mixes '{kind}' and '{k}' descriptions", no, col)
            kind = k

        for no, key, rest, col, rcol in self._block(f"module {name!r}", start):
            if key == "twists":
                twists = tuple(self._int(t, no, rcol) for t in rest.split())
                twist_line = no
                if kind == "cyclic":
                    continue
                set_kind("presented", no, col)
            elif key == "rel":
                set_kind("presented", no, col)
                rels.append((self._poly_list(rest, no, rcol, sep="|"), no, rcol))
            elif key == "ideal":
                set_kind("ideal", no, col)
                gens = self._poly_list(rest, no, rcol)
            elif key == "cyclic":
                if kind == "presented" and not rels:
                    kind = None
                set_kind("cyclic", no, col)
                gens = self._poly_list(rest, no, rcol)
            elif key == "twist":
                twists = (self._int(rest, no, rcol),)
            elif key == "residue":
                set_kind("residue", no, col)
            else:
                self.err(f"unknown module directive {key!r}", no, col)
        if kind is None:
            self.err(f"module {name!r} is empty", start)
        if kind == "presented":
            if twists is None:
                self.err(f"module {name!r} needs a 'twists' line", start)
            for comps, no, rcol in rels:
                if len(comps) != len(twists):
                    self.err(f"relation has {len(comps)} components, module has {len(twists)} generators",
                             no, rcol)
            return ModuleSpec(name, kind, twists, tuple(c for c, _, _ in rels), (), start)
        if kind == "cyclic":
            return ModuleSpec(name, kind, twists or (0,), (), gens, start)
        if twists is not None and twist_line is not None:
            self.err(f"'twists' is not allowed for a {kind} module", twist_line)
        return ModuleSpec(name, kind, (), (), gens, start)

    def _certificate(self, name, start):
        module, pd_bound, steps = None, None, []
        for no, key, rest, col, rcol in self._block(f"certificate {name!r}", start):
            if key == "module":
                module = rest.strip()
            elif key == "pd-bound":
                pd_bound = self._int(rest, no, rcol, minimum=0)
            elif key == "step":
                steps.append(self._step(no))
            else:
                self.err(f"unknown certificate directive {key!r}", no, col)
        if module is None:
            self.err(f"certificate {name!r} needs a 'module' line", start)
        return CertificateSpec(name, module, pd_bound, tuple(steps), start)

    def _step(self, start):
        vals = {}
        for no, key, rest, col, rcol in self._block("step", start):
            if key in ("a", "b"):
                vals[key] = self._int(rest, no, rcol, positive=True)
            elif key == "n":
                vals[key] = self._int(rest, no, rcol, minimum=0)
            elif key == "shifts":
                vals[key] = tuple(self._int(t, no, rcol) for t in rest.split())
            elif key == "middle":
                vals[key] = rest.strip()
            elif key in ("alpha", "beta"):
                vals[key] = self._vectors(rest, no, rcol)
            else:
                self.err(f"unknown step directive {key!r}", no, col)
        for k in ("a", "b", "n", "shifts", "middle", "alpha", "beta"):
            if k not in vals:
                self.err(f"step is missing {k!r}", start)
        if len(vals["shifts"]) != vals["a"]:
            self.err("need one shift per copy (a of them)", start)
        return StepSpec(vals["a"], vals["b"], vals["n"], vals["shifts"], vals["middle"], vals["alpha"], vals["beta"])

    def _instance(self, name, start):
        opts = []
        for no, key, rest, col, rcol in self._block(f"instance {name!r}", start):
            if key not in INSTANCE_KEYS:
                self.err(f"unknown instance key {key!r}", no, col)
            if key == "check" and rest not in CHECKS:
                self.err(f"unknown check {rest!r}", no, rcol)
            if key == "element":
                rest = self._poly(rest, no, rcol)
            opts.append((key, rest.strip()))
        spec = InstanceSpec(name, tuple(opts), start)
        if spec.get("check") is None:
            self.err(f"instance {name!r} needs a 'check' line", start)
        return spec

    def _cross_check(self, desc):
        names = {m.name for m in desc.modules}
        certs = {c.name for c in desc.certificates}
        for c in desc.certificates:
            if c.module not in names:
                self.err(f"certificate {c.name!r} names unknown module {c.module!r}", c.line)
            for s in c.steps:
                if s.middle not in names:
                    self.err(f"certificate {c.name!r} names unknown module {s.middle!r}", c.line)
        for inst in desc.instances:
            for k in ("M", "N", "T"):
                v = inst.get(k)
                if v is not None and v not in names:
                    self.err(f"instance {inst.name!r} names unknown module {v!r}", inst.line)
            cert = inst.get("certificate")
            if cert not in (None, "auto", "none") and cert not in certs:
                self.err(f"instance {inst.name!r} names unknown certificate {cert!r}", inst.line)


def parse_description(text, source=None):
    return _Parser(text, source).parse()


def load_description(path):
    with open(path, encoding="utf-8") as fh:
        return parse_description(fh.read(), str(path))


# -- serialization ---------------------------------------------------------------------------

def _vec_text(vecs):
    return " ; ".join(" | ".join(v) for v in vecs)


def serialize_description(desc):
    out = [f"field {desc.modulus}", f"order {desc.order}"]
    out += [f"var {v} {w}" for v, w in desc.variables]
    if desc.ideal:
        out.append("ideal " + ", ".join(desc.ideal))
    if desc.name:
        out.append(f"name {desc.name}")
    for m in desc.modules:
        out += ["", f"module {m.name}"]
        if m.kind == "presented":
            out.append("  twists " + " ".join(str(t) for t in m.twists))
            out += ["  rel " + " | ".join(r) for r in m.relations]
        elif m.kind == "ideal":
            out.append("  ideal " + ", ".join(m.gens))
        elif m.kind == "cyclic":
            out.append("  cyclic " + ", ".join(m.gens))
            if m.twists and m.twists != (0,):
                out.append(f"  twist {m.twists[0]}")
        else:
            out.append("  residue")
        out.append("end")
    for c in desc.certificates:
        out += ["", f"certificate {c.name}", f"  module {c.module}"]
        if c.pd_bound is not None:
            out.append(f"  pd-bound {c.pd_bound}")
        for s in c.steps:
            out += ["  step", f"    a {s.a}", f"    b {s.b}", f"    n {s.n}",
                    "    shifts " + " ".join(str(t) for t in s.shifts), f"    middle {s.middle}",
                    f"    alpha {_vec_text(s.alpha)}", f"    beta {_vec_text(s.beta)}", "  end"]
        out.append("end")
    for inst in desc.instances:
        out += ["", f"instance {inst.name}"]
        out += [f"  {k} {v}" for k, v in inst.options]
        out.append("end")
    return "\n".join(out) + "\n"


# -- building -------------------------------------------------------------------------------

class Session:
    """Concrete ring, modules and certificates for a description."""

    def __init__(self, desc):
        self.desc = desc
        names = [v for v, _ in desc.variables]
        weights = [w for _, w in desc.variables]
        try:
            self.ring = GradedRing.polynomial_ring(names, weights, desc.modulus, desc.order, desc.ideal, desc.name)
        except InhomogeneousError as e:
            raise DescriptionError(f"ideal generator {e.index} is not homogeneous") from None
        self._modules = {}

    @property
    def name(self):
        return self.desc.name

    def _vec(self, comps):
        amb = self.ring.ambient
        out = {}
        for pos, text in enumerate(comps):
            for e, c in amb.parse(text)._d.items():
                out[(pos, e)] = c
        return out

    def module(self, name):
        hit = self._modules.get(name)
        if hit is not None:
            return hit
        try:
            spec = self.desc.module(name)
        except KeyError:
            raise DescriptionError(f"unknown module {name!r}") from None
        try:
            if spec.kind == "presented":
                M = PresentedModule(self.ring, spec.twists, [self._vec(r) for r in spec.relations], name)
            elif spec.kind == "ideal":
                M = PresentedModule.ideal(self.ring, list(spec.gens), name)
            elif spec.kind == "cyclic":
                M = PresentedModule.cyclic(self.ring, list(spec.gens), spec.twists[0], name)
            else:
                M = PresentedModule.residue_field(self.ring)
                M.name = name
        except InhomogeneousError as e:
            raise DescriptionError(f"module {name!r}: {e}", spec.line) from None
        self._modules[name] = M
        return M

    def certificate(self, name):
        """The certificate as a ReducingSequence plus its pd bound."""
        try:
            spec = self.desc.certificate(name)
        except KeyError:
            raise DescriptionError(f"unknown certificate {name!r}") from None
        mods = [self.module(spec.module)]
        steps = []
        for s in spec.steps:
            E = self.module(s.middle)
            steps.append(ReducingStep(s.a, s.b, s.n, s.shifts, E,
                                      [self._vec(v) for v in s.alpha], [self._vec(v) for v in s.beta]))
            mods.append(E)
        return ReducingSequence(mods, steps), spec.pd_bound


def _vec_strings(ring, vec, rank):
    comps = [{} for _ in range(rank)]
    for (pos, e), c in vec.items():
        comps[pos][e] = c
    return tuple(str(Polynomial(ring.ambient, c)) for c in comps)


def certificate_spec(seq, name, module_name, middle_names, pd_bound=None):
    """Turn a found ReducingSequence into description blocks.

    Returns ``(modules, certificate)`` where ``modules`` are ModuleSpecs for
    the middle terms, named by ``middle_names``.
    """
    ring = seq.modules[0].ring
    modules, steps = [], []
    for i, (step, mname) in enumerate(zip(seq.steps, middle_names)):
        E = step.middle
        rels = tuple(_vec_strings(ring, r, E.rank) for r in E.relations)
        modules.append(ModuleSpec(mname, "presented", tuple(E.twists), rels))
        alpha = tuple(_vec_strings(ring, v, E.rank) for v in step.alpha)
        C_rank = omega(seq.modules[i], step.n).rank * step.b
        beta = tuple(_vec_strings(ring, v, C_rank) for v in step.beta)
        steps.append(StepSpec(step.a, step.b, step.n, tuple(step.shifts), mname, alpha, beta))
    return modules, CertificateSpec(name, module_name, pd_bound, tuple(steps))

