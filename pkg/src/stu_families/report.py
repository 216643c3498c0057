"""Analysis reports and their deterministic JSON rendering."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .classifier import case_label, classify_family, group_signature
from .invariants import acin_invariants, cayley_hyperdet, delta, entropy, three_tangle
from .schmidt import SchmidtForm, charges_to_state, schmidt_decompose
from .state import ChargeVector, normalize

DEFAULT_DIGITS = 17


@dataclass(frozen=True)
class AnalysisReport:
    charges: ChargeVector
    family: object
    case_label: str
    schmidt: SchmidtForm
    delta: int
    det_psi: int
    three_tangle: float
    entropy: float
    invariants: object
    signature: object

    @property
    def bps_flag(self) -> str:
        return "BPS" if self.charges.is_bps() else "non-BPS"

    def to_dict(self) -> dict:
        c, f, j, sig = self.charges, self.schmidt, self.invariants, self.signature
        return {
            "charges": {"q0": c.q0, "p1": c.p1, "p2": c.p2, "p3": c.p3},
            "bps_flag": self.bps_flag,
            "family": {"id": self.family.id, "criteria_trace": list(self.family.criteria_trace)},
            "case_label": self.case_label,
            "schmidt": {
                **{f"lambda{i}": lam for i, lam in enumerate(f.lambdas)},
                "phi": f.phi,
                "phase_factor": int(round(f.phase_factor.real)),
                "norm_factor": f.norm_factor,
                "unnormalized_etas": list(f.unnormalized_etas),
            },
            "invariants": {
                "delta": self.delta,
                "det_psi": self.det_psi,
                "three_tangle": self.three_tangle,
                "entropy": self.entropy,
                "entropy_over_pi": self.entropy / math.pi,
                "J1": j.j1,
                "J2": j.j2,
                "J3": j.j3,
                "J4": j.j4,
            },
            "group_signature": {
                "J1_zero": sig.j1_zero,
                "J2_zero": sig.j2_zero,
                "J3_zero": sig.j3_zero,
            },
        }


def analyze(c: ChargeVector) -> AnalysisReport:
    form = schmidt_decompose(c)
    state = charges_to_state(c)
    return AnalysisReport(
        charges=c,
        family=classify_family(c),
        case_label=case_label(c),
        schmidt=form,
        delta=delta(c),
        det_psi=cayley_hyperdet(state),
        three_tangle=three_tangle(normalize(state)),
        entropy=entropy(c),
        invariants=acin_invariants(form),
        signature=group_signature(form),
    )


def dumps(obj, digits: int = DEFAULT_DIGITS) -> str:
    """Compact JSON with floats written to ``digits`` significant digits.

    Key order is preserved, so identical input gives byte-identical output.
    """
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot encode non-finite float {obj}")
        text = format(obj, f".{digits}g")
        return text if any(ch in text for ch in ".e") else text + ".0"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k), ensure_ascii=False)}:{dumps(v, digits)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v, digits) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def load_schema() -> dict:
    text = resources.files(__package__).joinpath("schemas/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def render_text(report: AnalysisReport, digits: int = DEFAULT_DIGITS) -> str:
    d = report.to_dict()
    c, s, inv = d["charges"], d["schmidt"], d["invariants"]
    fmt = lambda x: format(x, f".{digits}g")  # noqa: E731
    lines = [
        f"charges      q0={c['q0']} p1={c['p1']} p2={c['p2']} p3={c['p3']} ({d['bps_flag']})",
        f"family       {d['family']['id']}  [{'; '.join(d['family']['criteria_trace'])}]",
        f"case         {d['case_label']}",
        "lambdas      " + ", ".join(fmt(s[f"lambda{i}"]) for i in range(5)),
        f"phase        phi={fmt(s['phi'])}  e^(i phi)={s['phase_factor']:+d}",
        f"norm         {fmt(s['norm_factor'])}",
        "|eta|        " + ", ".join(fmt(x) for x in s["unnormalized_etas"]),
        f"delta        {inv['delta']}",
        f"det psi      {inv['det_psi']}",
        f"3-tangle     {fmt(inv['three_tangle'])}",
        f"entropy      {fmt(inv['entropy'])}  (= {fmt(inv['entropy_over_pi'])} pi)",
        "J1..J4       " + ", ".join(fmt(inv[k]) for k in ("J1", "J2", "J3", "J4")),
    ]
    sig = d["group_signature"]
    zero = lambda v: "0" if v else "!=0"  # noqa: E731
    lines.append(f"signature    J1 {zero(sig['J1_zero'])}, J2 {zero(sig['J2_zero'])}, J3 {zero(sig['J3_zero'])}")
    return "\n".join(lines)
