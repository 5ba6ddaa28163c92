"""Run records, scripted demonstrations, candidate search and the replayable suite."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .content import (
    PolyOverRing,
    SeriesDescriptor,
    TowerId,
    compose_content,
    localize_content,
    orc_by_intersection,
    orc_poly,
    poly_content,
    smallest_fg_cover,
)
from .errors import ConfigError, UnknownDemo
from .ideals import DEFAULT_BOUND, DEFAULT_POWBOUND, Ideal, ideal_equal, ideal_intersect, membership
from .parser import parse_coeffs, parse_descriptor, parse_element, parse_group, parse_ideal, parse_ring
from .propcheck import (
    DEFAULT_COEFF,
    DEFAULT_SAMPLES,
    canonical_pair,
    case_rng,
    check_gaussian,
    check_prime_extension,
    check_primary_extension,
    check_weak_content_pair,
    dm_exponent,
    field_case,
    pruefer_gauss_suite,
    semicontent_witness,
    transitivity_suite,
    valuation_verdict,
)
from .rings import QQ, ZZ, BiPolyQ, GF, HahnVal, Integers, UniPoly
from .serialize import jsonable
from .valgroup import LexZ, Quad, Z, glb
from .verdicts import FAILS


@dataclass
class RunRecord:
    """One logged run.  ``result`` keeps the live objects, so witnesses replay without the parser."""

    command: str
    inputs: dict
    result: object
    seed: Optional[int] = None
    bounds: dict = field(default_factory=dict)
    ring: Optional[str] = None
    group: Optional[str] = None
    wall_time: Optional[float] = None
    version: str = __version__

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "ring": self.ring,
            "group": self.group,
            "inputs": jsonable(self.inputs),
            "result": jsonable(self.result),
            "seed": self.seed,
            "bounds": jsonable(self.bounds),
            "version": self.version,
        }
        if self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @property
    def failed(self) -> bool:
        return _has_fails(self.result)


def _has_fails(x) -> bool:
    status = getattr(x, "status", None)
    if status == FAILS:
        return True
    if isinstance(x, dict):
        return any(_has_fails(v) for v in x.values())
    if isinstance(x, (list, tuple)):
        return any(_has_fails(v) for v in x)
    return False


def append_log(path: str, records) -> None:
    """Append records as JSON lines, in the order given."""
    with open(path, "a", encoding="utf-8") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")


def timed(fn, *args, timing: bool = False, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, (time.perf_counter() - start) if timing else None


# --- demos --------------------------------------------------------------------------

DEMOS = ("gauss-fails-bipoly", "dm2-bipoly", "prufer-gauss", "valuation-trichotomy", "field-case",
         "localization-example")


def localization_example(N: int = 20) -> dict:
    """S = Q[X], T = S localized at the powers of X.

    In T every X^n is a unit, so 1 = X^n * X^-n lies in X^n T and orc_TS(1)
    sits inside X^n S for all n.  For each N the intersection of X^n S over
    n <= N is (X^N), which contains no nonzero element of degree below N and
    does not contain 1.  A bounded illustration of the intersection being (0).
    """
    S = UniPoly(QQ, "X")
    X = S.gen()
    rows = []
    inter = Ideal.of(S, [S.one()])
    for n in range(1, N + 1):
        inter = ideal_intersect(inter, Ideal.of(S, [X ** n]))
        one = membership(S.one(), inter)
        rows.append({
            "N": n,
            "intersection": inter,
            "unit_identity": f"X^{n} * X^-{n} = 1 in T",
            "one_in_intersection": one,
            "least_degree_of_nonzero_element": S.degree(inter.normal),
        })
    return {"ring_S": str(S), "localization": "T = S[1/X]", "rows": rows,
            "note": "bounded illustration for N <= 20, not a proof over all n",
            "conclusion": "orc_TS(1_T) is (0_S) while 1_T is nonzero: T is not Ohm-Rush over S"}


def run_demo(name: str, timing: bool = False) -> RunRecord:
    if name not in DEMOS:
        raise UnknownDemo(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
    start = time.perf_counter()
    seed, bounds, ring, group = None, {}, None, None
    if name == "gauss-fails-bipoly":
        f, g = canonical_pair()
        result = {"f": f, "g": g, "gaussian": check_gaussian(f, g)}
        ring = "Q[x,y]"
    elif name == "dm2-bipoly":
        f, g = canonical_pair()
        rep = dm_exponent(f, g, max_n=3)
        result = {"f": f, "g": g, "exponent": rep.exponent, "report": rep,
                  "weak": check_weak_content_pair(f, g)}
        ring, bounds = "Q[x,y]", {"max_n": 3, "degree": 6}
    elif name == "prufer-gauss":
        seed = 0
        result = {
            "Int": pruefer_gauss_suite(ZZ, 100, seed),
            "Q[x]": pruefer_gauss_suite(UniPoly(QQ, "x"), 50, seed, degree=2, coeff=3),
            "Hahn(Z,Q)": pruefer_gauss_suite(HahnVal(Z, QQ), 50, seed, degree=2, coeff=3),
            "Q[x,y]": pruefer_gauss_suite(BiPolyQ()),
        }
        bounds = {"pairs": {"Int": 100, "Q[x]": 50, "Hahn(Z,Q)": 50}, "degree": 3, "coeff": DEFAULT_COEFF}
    elif name == "valuation-trichotomy":
        seed = 0
        result = {str(G): valuation_verdict(G, seed=seed) for G in (Z, LexZ(2), Quad(2))}
        bounds = {"samples": 50, "window": 50}
    elif name == "field-case":
        seed = 0
        result = field_case(100, seed)
        ring, bounds = "Q[x]/(x^2)", {"samples": 100}
    else:
        result = localization_example(20)
        ring, bounds = "Q[X]", {"N": 20}
    wall = time.perf_counter() - start if timing else None
    return RunRecord("demo", {"demo": name}, result, seed, bounds, ring, group, wall)


# --- single commands ------------------------------------------------------------------

#: every bound a command reads, with its default; logged records carry all of them
BOUNDS = {
    "content": {},
    "orc": {"degree": DEFAULT_BOUND},
    "cover": {},
    "compose": {"degree": DEFAULT_BOUND},
    "localize": {},
    "dm": {"max_n": 4, "degree": DEFAULT_BOUND},
    "gaussian": {"degree": DEFAULT_BOUND},
    "weak": {"powbound": DEFAULT_POWBOUND, "degree": DEFAULT_BOUND},
    "semicontent": {"degree": DEFAULT_BOUND},
    "prime-ext": {"samples": 100, "degree": 3, "coeff": DEFAULT_COEFF},
    "primary-ext": {"samples": DEFAULT_SAMPLES, "degree": 3, "coeff": DEFAULT_COEFF},
    "valuation-verdict": {"samples": 50, "window": 50},
    "transitivity": {"cases": 100},
    "pruefer-suite": {"pairs": 100, "degree": 3, "coeff": DEFAULT_COEFF},
    "search": {"degree": 1, "coeff": 1, "samples": 0, "enumerate": True},
    "demo": {},
}
COMMANDS = tuple(BOUNDS)
_SEEDED = {"prime-ext", "primary-ext", "valuation-verdict", "transitivity", "pruefer-suite", "search"}
_GROUPED = {"cover", "valuation-verdict"}
_RINGLESS = {"cover", "valuation-verdict", "demo"}


def _resolve_bounds(command: str, given: Optional[dict]) -> dict:
    allowed = BOUNDS[command]
    given = dict(given or {})
    unknown = set(given) - set(allowed)
    if unknown:
        raise ConfigError(f"{command} takes no bound {', '.join(sorted(unknown))}")
    out = dict(allowed, **given)
    for k, v in out.items():
        if isinstance(allowed[k], bool):
            if not isinstance(v, bool):
                raise ConfigError(f"bound {k} must be true or false")
        elif not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ConfigError(f"bound {k} must be a non-negative integer")
    return out


def _poly_input(inputs: dict, key: str, R):
    return PolyOverRing(R, tuple(parse_coeffs(str(inputs[key]), R, inputs["var"])), inputs["var"])


def _need(inputs: dict, *keys):
    missing = [k for k in keys if k not in inputs]
    if missing:
        raise ConfigError(f"missing inputs: {', '.join(missing)}")


def execute(command: str, inputs: dict, *, ring: Optional[str] = None, group: Optional[str] = None,
            bounds: Optional[dict] = None, seed: Optional[int] = None, timing: bool = False) -> RunRecord:
    """Run one command from plain inputs.  The returned record replays to itself through :func:`replay`."""
    if command not in BOUNDS:
        raise ConfigError(f"unknown command {command!r}")
    if command == "demo":
        _need(inputs, "demo")
        return run_demo(inputs["demo"], timing=timing)
    b = _resolve_bounds(command, bounds)
    inputs = dict(inputs)
    seed = (0 if seed is None else seed) if command in _SEEDED else None
    G = parse_group(group or "Z") if command in _GROUPED else None
    R = None if command in _RINGLESS else parse_ring(ring or "Int")
    if command in ("content", "orc", "dm", "gaussian", "weak", "semicontent", "localize", "search"):
        inputs.setdefault("var", "T")
    start = time.perf_counter()
    result = _run(command, inputs, R, G, b, seed)
    wall = time.perf_counter() - start if timing else None
    return RunRecord(command, inputs, result, seed, b, None if R is None else str(R),
                     None if G is None else str(G), wall)


def _run(command, inputs, R, G, b, seed):
    """Compute the result; canonicalizes ``inputs`` in place so the log holds printed forms."""
    if command in ("content", "orc"):
        _need(inputs, "f")
        f = _poly_input(inputs, "f", R)
        inputs["f"] = str(f)
        c = poly_content(f)
        checks = []
        if command == "orc":
            o = orc_poly(f)
            checks.append({"lemma": "orc equals c on finite support", "verdict": ideal_equal(o, c, b["degree"])})
            if isinstance(R, Integers):
                checks.append({"lemma": "orc as an intersection of covers",
                               "verdict": ideal_equal(o, orc_by_intersection(f))})
            c = o
        return {"ideal": c, "normal_form": None if c.normal is None else str(c.normal), "lemma_checks": checks}
    if command == "cover":
        _need(inputs, "descriptor")
        V = HahnVal(G, QQ)
        s = parse_descriptor(str(inputs["descriptor"]), G)
        inputs["descriptor"] = str(s)
        cover = smallest_fg_cover(SeriesDescriptor(V, s))
        return {"ideal": cover, "normal_form": None if cover is None else str(cover.normal), "glb": glb(s)}
    if command == "compose":
        _need(inputs, "f")
        inputs.setdefault("vars", ["T", "U"])
        tower = TowerId(R, tuple(inputs["vars"]))
        f = parse_element(str(inputs["f"]), tower.levels[-1])
        inputs["f"] = str(f)
        direct, composed = compose_content(tower, f)
        return {"direct": direct, "composed": composed, "equal": ideal_equal(direct, composed, b["degree"])}
    if command == "localize":
        _need(inputs, "f", "P")
        f = _poly_input(inputs, "f", R)
        inputs["f"] = str(f)
        return localize_content(f, int(inputs["P"]))
    if command in ("dm", "gaussian", "weak", "semicontent", "search"):
        _need(inputs, "f", "g")
        f, g = _poly_input(inputs, "f", R), _poly_input(inputs, "g", R)
        inputs["f"], inputs["g"] = str(f), str(g)
        if command == "dm":
            return dm_exponent(f, g, b["max_n"], b["degree"])
        if command == "gaussian":
            return check_gaussian(f, g, b["degree"])
        if command == "weak":
            return check_weak_content_pair(f, g, b["powbound"], b["degree"])
        if command == "search":
            inputs.setdefault("target", TARGETS[0])
            if inputs["target"] not in TARGETS:
                raise ConfigError(f"target must be one of {', '.join(TARGETS)}")
            other, gauss = _pair_properties(inputs["target"], f, g)
            return {"target": inputs["target"], "weaker": other, "gaussian": gauss,
                    "claim": "candidate for review; sample-level only"}
        _need(inputs, "P")
        P = Ideal.of(R, parse_ideal(str(inputs["P"]), R))
        inputs["P"] = str(P)
        t = semicontent_witness(P, f, g, b["degree"])
        return {"t": t, "found": t is not None}
    if command in ("prime-ext", "primary-ext"):
        key = "P" if command == "prime-ext" else "Q"
        _need(inputs, key)
        I = Ideal.of(R, parse_ideal(str(inputs[key]), R))
        inputs[key] = str(I)
        check = check_prime_extension if command == "prime-ext" else check_primary_extension
        return check(I, b["samples"], seed, b["degree"], b["coeff"])
    if command == "valuation-verdict":
        return valuation_verdict(G, b["samples"], seed, b["window"])
    if command == "transitivity":
        inputs.setdefault("primes", [2, 3, 5, 7])
        primes = tuple(int(p) for p in inputs["primes"])
        return transitivity_suite(seed, b["cases"], primes, None if isinstance(R, Integers) else R)
    if command == "pruefer-suite":
        return pruefer_gauss_suite(R, b["pairs"], seed, b["degree"], b["coeff"])
    raise ConfigError(f"unknown command {command!r}")  # pragma: no cover


def replay(record) -> RunRecord:
    """Re-run a logged record (a dict or one JSON line)."""
    d = json.loads(record) if isinstance(record, str) else record
    return execute(d["command"], d["inputs"], ring=d.get("ring"), group=d.get("group"),
                   bounds=d.get("bounds"), seed=d.get("seed"), timing="wall_time" in d)


# --- search -------------------------------------------------------------------------

TARGETS = ("weak-vs-gaussian", "dm1-vs-gaussian")
_CONFIG_KEYS = {"target", "ring", "degree", "coeff", "samples", "seed", "enumerate"}


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as ex:
        raise ConfigError(f"cannot read config {path}: {ex}") from None
    return resolve_config(data)


def resolve_config(data: dict) -> dict:
    """Validate a flat config and fill in every default explicitly."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a flat key-value object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for k, v in data.items():
        if isinstance(v, (dict, list)):
            raise ConfigError(f"config value {k} must be a scalar")
    if "degree" not in data or "coeff" not in data:
        raise ConfigError("config must declare bounds: degree and coeff")
    cfg = {"target": "weak-vs-gaussian", "ring": "Int", "samples": 100, "seed": 0, "enumerate": True}
    cfg.update(data)
    if cfg["target"] not in TARGETS:
        raise ConfigError(f"target must be one of {', '.join(TARGETS)}")
    for k in ("degree", "coeff", "samples", "seed"):
        if not isinstance(cfg[k], int) or isinstance(cfg[k], bool) or cfg[k] < 0:
            raise ConfigError(f"{k} must be a non-negative integer")
    if not isinstance(cfg["enumerate"], bool):
        raise ConfigError("enumerate must be true or false")
    if cfg["degree"] < 1 or cfg["coeff"] < 1:
        raise ConfigError("bounds are empty: degree and coeff must be at least 1")
    try:
        cfg["ring"] = str(parse_ring(cfg["ring"]))
    except Exception as ex:
        raise ConfigError(f"bad ring {cfg['ring']!r}: {ex}") from None
    return cfg


def _enumerated_pairs(R):
    """Pairs with T-degree 1 and coefficients among the ring's variables (or 1, 2)."""
    if isinstance(R, BiPolyQ):
        atoms = list(R.gens())
    elif isinstance(R, UniPoly):
        atoms = [R.gen(), R.one()]
    else:
        atoms = [R.one(), R(2)]
    polys = [PolyOverRing(R, (a, b)) for a, b in itertools.product(atoms, repeat=2)]
    return list(itertools.product(polys, repeat=2))


def _pair_properties(target: str, f, g) -> tuple:
    gauss = check_gaussian(f, g)
    if target == "weak-vs-gaussian":
        other = check_weak_content_pair(f, g)
    else:
        other = dm_exponent(f, g, max_n=1).per_n[0]
    return other, gauss


def search(config: dict, seed: Optional[int] = None) -> list:
    """Pairs where the weaker property holds and the Gaussian one fails, as candidate records."""
    cfg = resolve_config(config)
    if seed is not None:
        cfg = dict(cfg, seed=seed)
    R = parse_ring(cfg["ring"])
    pairs = _enumerated_pairs(R) if cfg["enumerate"] else []
    for i in range(cfg["samples"]):
        rng = case_rng(cfg["seed"], i)
        pairs.append((PolyOverRing.random(R, rng, cfg["degree"], cfg["coeff"]),
                      PolyOverRing.random(R, rng, cfg["degree"], cfg["coeff"])))
    bounds = {k: cfg[k] for k in ("degree", "coeff", "samples", "enumerate")}
    records = []
    for i, (f, g) in enumerate(pairs):
        rec = execute("search", {"case": i, "f": str(f), "g": str(g), "target": cfg["target"]},
                      ring=cfg["ring"], bounds=bounds, seed=cfg["seed"])
        if rec.result["weaker"].ok and rec.result["gaussian"].failed:
            records.append(rec)
    return records


# --- the replayable suite ------------------------------------------------------------

def run_suite(seed: int = 0, timing: bool = False) -> list:
    """A fixed battery across every module; the JSON log is a function of the seed."""
    recs = []

    def add(command, inputs, **kw):
        recs.append(execute(command, inputs, seed=seed, timing=timing, **kw))

    f, g = (str(h) for h in canonical_pair())
    add("gaussian", {"f": f, "g": g}, ring="Q[x,y]")
    add("weak", {"f": f, "g": g}, ring="Q[x,y]")
    add("dm", {"f": f, "g": g}, ring="Q[x,y]", bounds={"max_n": 3})
    add("semicontent", {"P": "(x)", "f": f, "g": g}, ring="Q[x,y]")
    for i in range(20):
        rng = case_rng(seed, i)
        for B in (ZZ, GF(5)):
            a, b = PolyOverRing.random(B, rng, 4, 9), PolyOverRing.random(B, rng, 4, 9)
            add("dm", {"f": str(a), "g": str(b)}, ring=str(B), bounds={"max_n": 5})
    for p in (0, 2, 3, 5, 7):
        add("prime-ext", {"P": str(p)}, bounds={"samples": 50})
    for q in (4, 8, 9, 25):
        add("primary-ext", {"Q": str(q)}, bounds={"samples": 100})
    for G in ("Z", "LexZ(2)", "Quad(2)"):
        add("valuation-verdict", {}, group=G)
    add("cover", {"descriptor": "affine(2;3)"}, group="Z")
    add("cover", {"descriptor": "affine((1,0);(0,-1))"}, group="LexZ(2)")
    add("transitivity", {}, bounds={"cases": 50})
    add("pruefer-suite", {}, ring="Int")
    for i in range(20):
        rng = case_rng(seed, 1000 + i)
        a = PolyOverRing.random(ZZ, rng, 3, 60)
        add("orc", {"f": str(a)})
        add("localize", {"f": str(a), "P": (2, 3, 5)[i % 3]})
        t = PolyOverRing.random(UniPoly(ZZ, "T"), rng, 2, 9, var="U")
        add("compose", {"f": str(t)})
    for name in DEMOS:
        add("demo", {"demo": name})
    return recs
