"""Report document assembly and deterministic serialization.

JSON output writes every float with 17 significant digits so that repeated
runs diff byte-for-byte; CSV is used for tabular data such as gauge scans.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

from . import __version__
from .gauge import GaugeScanResult, certify_unique_root
from .moments import (
    PREDICTION_COUPLING,
    G2Comparison,
    MomentResult,
    g_minus_2_comparison,
    lepton_table,
)
from .quadrature import QuadratureConfig
from .renorm import BARE_ALPHA_INV, Coupling, ZRatioReport, renormalized_alpha_inv
from .specfun import HALF_PI


@dataclass(frozen=True)
class ReportOptions:
    alpha_inv: float | None = None
    rel_tol: float = 1e-10
    gauge_min: float = 0.01
    gauge_max: float = 50.0
    gauge_points: int = 500

    @property
    def bare_coupling(self) -> Coupling:
        return Coupling(BARE_ALPHA_INV if self.alpha_inv is None else self.alpha_inv)

    @property
    def prediction_coupling(self) -> Coupling:
        return PREDICTION_COUPLING if self.alpha_inv is None else Coupling(self.alpha_inv)

    @property
    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(rel_tol=self.rel_tol)


@dataclass(frozen=True)
class GaugeSummary:
    m_min: float
    m_max: float
    points: int
    max_value_on_grid: float
    max_residual: float
    brackets: list
    unique_root_at_zero: bool

    @classmethod
    def from_scan(cls, scan: GaugeScanResult) -> "GaugeSummary":
        ms = [m for m, _ in scan.grid]
        return cls(
            m_min=ms[0],
            m_max=ms[-1],
            points=len(ms),
            max_value_on_grid=scan.max_value_on_grid,
            max_residual=scan.max_value_on_grid - HALF_PI,
            brackets=[list(b) for b in scan.brackets],
            unique_root_at_zero=scan.unique_root_at_zero,
        )


@dataclass(frozen=True)
class ReportDocument:
    coupling_bare_inv: float
    z_ratios: ZRatioReport
    gauge_scan: GaugeSummary
    lepton_moments: list
    g2_comparison: G2Comparison
    tool_version: str
    config_echo: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.z_ratios.converged and all(m.converged for m in self.lepton_moments)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ReportDocument":
        return cls(
            coupling_bare_inv=data["coupling_bare_inv"],
            z_ratios=ZRatioReport(**data["z_ratios"]),
            gauge_scan=GaugeSummary(**data["gauge_scan"]),
            lepton_moments=[MomentResult(**m) for m in data["lepton_moments"]],
            g2_comparison=G2Comparison(**data["g2_comparison"]),
            tool_version=data["tool_version"],
            config_echo=dict(data["config_echo"]),
        )


def run_report(options: ReportOptions = ReportOptions()) -> ReportDocument:
    """Run every flow; a non-converged integral is marked, never fatal."""
    cfg = options.quadrature
    bare = options.bare_coupling
    pred = options.prediction_coupling
    scan = certify_unique_root(options.gauge_min, options.gauge_max, options.gauge_points)
    echo = asdict(options)
    echo.update(bare_alpha_inv=bare.alpha_inv, prediction_alpha_inv=pred.alpha_inv, gauge_spacing="log")
    return ReportDocument(
        coupling_bare_inv=bare.alpha_inv,
        z_ratios=renormalized_alpha_inv(bare, cfg=cfg),
        gauge_scan=GaugeSummary.from_scan(scan),
        lepton_moments=lepton_table(pred, cfg),
        g2_comparison=g_minus_2_comparison(pred),
        tool_version=__version__,
        config_echo=echo,
    )


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"refusing to serialize non-finite value {x!r}")
    text = f"{x:.17g}"
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{_emit(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj) -> str:
    """JSON text with 17-significant-digit floats and a trailing newline."""
    if hasattr(obj, "__dataclass_fields__"):
        obj = asdict(obj)
    return _emit(obj, 2, 0) + "\n"


def document_from_json(text: str) -> ReportDocument:
    return ReportDocument.from_dict(json.loads(text))


def gauge_csv(scan: GaugeScanResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "g_value", "residual"])
    for m, g in scan.grid:
        writer.writerow([format_float(m), format_float(g), format_float(g - HALF_PI)])
    return buf.getvalue()


def records_csv(records: list[dict]) -> str:
    """Flat dict records as CSV; missing values become empty cells."""
    if not records:
        return ""
    header = list(records[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for rec in records:
        writer.writerow(["" if rec[k] is None else format_float(rec[k]) if isinstance(rec[k], float) else rec[k]
                         for k in header])
    return buf.getvalue()


def _fmt(x) -> str:
    return "-" if x is None else f"{x:.10g}"


def document_text(doc: ReportDocument) -> str:
    z = doc.z_ratios
    g = doc.gauge_scan
    c = doc.g2_comparison
    lines = [
        f"nlqed {doc.tool_version}",
        "",
        f"Charge renormalization (bare 1/alpha = {doc.coupling_bare_inv:.10g})",
        f"  Z1/Z2                    {z.z1_over_z2:.12f}",
        f"  Z4/Z3                    {z.z4_over_z3:.12f}",
        f"  (Z2/Z1)^2 Z3/Z4, 1st ord {z.combined_first_order:.12f}",
        f"  same, product form       {z.combined_exact_product:.12f}",
        f"  renormalized 1/alpha     {z.renormalized_alpha_inv:.6f}",
        "",
        f"Gauge condition on [{g.m_min:g}, {g.m_max:g}] with {g.points} points",
        f"  max G(m)                 {g.max_value_on_grid:.10f}  (pi/2 = {HALF_PI:.10f})",
        f"  sign changes             {len(g.brackets)}",
        f"  only root at m = 0       {'yes' if g.unique_root_at_zero else 'NO'}",
        "",
        "Anomalous magnetic moment",
        f"  {'lepton':<10}{'mass':>10}{'quadrature':>20}{'small m':>20}{'large m':>20}",
    ]
    for m in doc.lepton_moments:
        flag = "" if m.converged else "  (not converged)"
        lines.append(f"  {m.name:<10}{m.mass:>10g}{_fmt(m.exact):>20}{_fmt(m.small_m):>20}{_fmt(m.large_m):>20}{flag}")
    lines += [
        "",
        f"Muon (g-2)/2 comparison at 1/alpha = {c.alpha_inv:.10g}",
        f"  local theory             {c.theory_local:.10f}   printed {c.printed_theory:.10f}",
        f"  experiment               {c.experiment:.9f}",
        f"  difference               {c.difference:.3e}   printed {c.printed_difference:.3e}",
        f"  non-local correction     {c.nonlocal_correction:.3e}",
        f"  adjusted difference      {c.adjusted_difference:.3e}   printed {c.printed_adjusted:.3e}",
    ]
    return "\n".join(lines) + "\n"

