"""Command-line front end.

Commands (exit codes: 0 pass, 1 hypothesis or check failure, 2 input error):

    maxsurf check CONFIG            run the diagnostic suite, print JSON
    maxsurf eval CONFIG --at u,v    print X, N and the conformal factor
    maxsurf extend CONFIG -o OUT    extend across the configured plane
    maxsurf mesh CONFIG --grid NxM -o OUT.obj   triangulated export
    maxsurf catenoid                print the built-in reference config

Config files are flat key = value text; see the README for the schema.
Expression values use the library's expression syntax, complex constants may
be written with that syntax too (e.g. ``z0 = 1+2*i``).  All outputs are
deterministic byte for byte for identical inputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass

from . import __version__
from .expr import EvalError, ParseError, evaluate, format_expr, parse
from .extension import ExtendedSurface, ExtensionError, extend, measure_contact
from .minkowski import LVector, Plane
from .verify import full_diagnostics, GridSpec
from .weierstrass import (
    DegenerateMetricError,
    Domain,
    DomainKind,
    QuadratureConfig,
    SurfaceError,
    WeierstrassData,
    conformal_factor,
    evaluate_surface,
    gauss_map,
)

__all__ = ["ConfigError", "SurfaceConfig", "SurfaceMesh", "build_mesh", "main"]


class ConfigError(Exception):
    def __init__(self, fieldname: str, message: str):
        super().__init__(f"field '{fieldname}': {message}")
        self.fieldname = fieldname


_KNOWN_KEYS = {
    "f",
    "g",
    "f_minus",
    "g_minus",
    "reflected",
    "domain",
    "radius",
    "inner_radius",
    "boundary_circle",
    "punctures",
    "g_poles",
    "z0",
    "X0",
    "tol",
    "plane",
    "mask_eps",
    "mesh_range",
}


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(key, "unknown key")
        if key in out:
            raise ConfigError(key, "duplicate key")
        out[key] = value
    return out


def _get_expr(raw: dict, key: str, required: bool = True):
    if key not in raw:
        if required:
            raise ConfigError(key, "missing")
        return None
    try:
        return parse(raw[key])
    except ParseError as exc:
        raise ConfigError(key, str(exc)) from None


def _get_complex(raw_value: str, key: str) -> complex:
    try:
        return evaluate(parse(raw_value), 0j)
    except (ParseError, EvalError) as exc:
        raise ConfigError(key, f"not a complex constant: {exc}") from None


def _get_float(raw: dict, key: str, default: float | None = None) -> float | None:
    if key not in raw:
        return default
    try:
        return float(raw[key])
    except ValueError:
        raise ConfigError(key, "not a number") from None


@dataclass
class SurfaceConfig:
    """Parsed configuration; builds the surface and optional plane/extension."""

    data: WeierstrassData
    tol: float
    plane: Plane | None = None
    mask_eps: float = 1e-8
    mesh_range: tuple[float, float, float, float] | None = None
    minus_exprs: tuple | None = None  # (f_minus, g_minus, reflected) for extended configs
    source_bytes: bytes = b""

    @property
    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(tol=self.tol)

    @classmethod
    def from_text(cls, text: str) -> "SurfaceConfig":
        raw = parse_config_text(text)
        f = _get_expr(raw, "f")
        g = _get_expr(raw, "g")
        if "domain" not in raw:
            raise ConfigError("domain", "missing")
        try:
            kind = DomainKind(raw["domain"])
        except ValueError:
            names = ", ".join(k.value for k in DomainKind)
            raise ConfigError("domain", f"must be one of: {names}") from None
        punctures = ()
        if "punctures" in raw and raw["punctures"]:
            punctures = tuple(
                _get_complex(part.strip(), "punctures")
                for part in raw["punctures"].split(",")
            )
        g_poles = ()
        if "g_poles" in raw and raw["g_poles"]:
            entries = []
            for part in raw["g_poles"].split(","):
                if ":" not in part:
                    raise ConfigError("g_poles", "entries must be 'location:order'")
                loc, order = part.rsplit(":", 1)
                try:
                    entries.append((_get_complex(loc.strip(), "g_poles"), int(order)))
                except ValueError:
                    raise ConfigError("g_poles", "order must be an integer") from None
            g_poles = tuple(entries)
        bc = _get_float(raw, "boundary_circle")
        try:
            domain = Domain(
                kind,
                radius=_get_float(raw, "radius", 1.0),
                inner_radius=_get_float(raw, "inner_radius", 0.0),
                punctures=punctures,
                boundary_circle=bc,
            )
        except ValueError as exc:
            raise ConfigError("domain", str(exc)) from None
        if "z0" not in raw:
            raise ConfigError("z0", "missing")
        z0 = _get_complex(raw["z0"], "z0")
        X0 = LVector(0, 0, 0)
        if "X0" in raw:
            parts = raw["X0"].split(",")
            if len(parts) != 3:
                raise ConfigError("X0", "expected three comma-separated numbers")
            try:
                X0 = LVector(*(float(p) for p in parts))
            except ValueError:
                raise ConfigError("X0", "not numbers") from None
        try:
            data = WeierstrassData(f, g, domain, z0, X0, g_poles)
        except ValueError as exc:
            raise ConfigError("z0", str(exc)) from None
        plane = None
        if "plane" in raw:
            parts = raw["plane"].split(",")
            if len(parts) != 4:
                raise ConfigError("plane", "expected nx,ny,nz,d")
            try:
                nx, ny, nz, d = (float(p) for p in parts)
                plane = Plane(LVector(nx, ny, nz), d)
            except ValueError as exc:
                raise ConfigError("plane", str(exc)) from None
        minus = None
        if "f_minus" in raw or "g_minus" in raw:
            fm = _get_expr(raw, "f_minus")
            gm = _get_expr(raw, "g_minus")
            minus = (fm, gm, raw.get("reflected", ""))
        mesh_range = None
        if "mesh_range" in raw:
            parts = raw["mesh_range"].split(",")
            if len(parts) != 4:
                raise ConfigError("mesh_range", "expected a0,a1,b0,b1")
            try:
                mesh_range = tuple(float(p) for p in parts)
            except ValueError:
                raise ConfigError("mesh_range", "not numbers") from None
        tol = _get_float(raw, "tol", 1e-10)
        if tol <= 0:
            raise ConfigError("tol", "must be positive")
        return cls(
            data=data,
            tol=tol,
            plane=plane,
            mask_eps=_get_float(raw, "mask_eps", 1e-8),
            mesh_range=mesh_range,
            minus_exprs=minus,
            source_bytes=text.encode(),
        )

    @classmethod
    def from_file(cls, path: str) -> "SurfaceConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError("config", str(exc)) from None
        return cls.from_text(text)

    def extended_surface(self) -> ExtendedSurface | None:
        """Rebuild the extension from a config carrying minus formulas."""
        if self.minus_exprs is None:
            return None
        if self.plane is None:
            raise ConfigError("plane", "extended config needs the plane")
        fm, gm, reflected = self.minus_exprs
        contact = measure_contact(self.data, self.plane)
        from .extension import _case_shift, _match_report

        matching = _match_report(self.data, fm, gm, contact.boundary, 1e-7)
        return ExtendedSurface(
            original=self.data,
            contact=contact,
            g_minus=gm,
            f_minus=fm,
            reflected=reflected or {"x3": "x3"}.get(reflected, "x3"),
            shift=_case_shift(contact.plane_kind, contact.offset),
            matching=matching,
        )


def _f17(x: float) -> str:
    return f"{x:.17g}"


CATENOID_CONFIG = """\
# Lorentzian catenoid patch (inner sheet, |g| < 1)
f = 1/z^2
g = z
domain = punctured-disk
radius = 1
punctures = 0
z0 = 1
X0 = 0,0,0
tol = 1e-10
# A spacelike plane x3 = b (b < 0) meets this patch in the circle |z| = e^b.
# For an extension across it, add for example:
#   plane = 0,0,1,0.7
#   boundary_circle = 0.49658530379140951
"""


# ---------------------------------------------------------------------------
# meshes

@dataclass
class SurfaceMesh:
    vertices: list[LVector]
    gauss: list[LVector | None]
    conformal: list[float]
    triangles: list[tuple[int, int, int]]  # 0-based
    masked_cells: list[tuple[int, int]]
    shape: tuple[int, int]


def _mesh_parameters(domain: Domain, mesh_range):
    polar = domain.kind in (DomainKind.ANNULUS, DomainKind.PUNCTURED_DISK)
    if mesh_range is not None:
        return polar, mesh_range
    R = domain.radius
    if polar:
        r0 = domain.inner_radius if domain.inner_radius > 0 else 0.05 * R
        return True, (r0, R, -math.pi, math.pi)
    if domain.kind in (DomainKind.HALF_DISK, DomainKind.HALF_ANNULUS):
        return False, (-0.7 * R, 0.7 * R, 0.05 * R, 0.7 * R)
    s = 0.7 * R
    return False, (-s, s, -s, s)


def build_mesh(
    data: WeierstrassData,
    nu: int,
    nv: int,
    mask_eps: float = 1e-8,
    q: QuadratureConfig | None = None,
    mesh_range=None,
) -> SurfaceMesh:
    """Evaluate an nu x nv parameter grid and triangulate unmasked cells.

    Cells touching a vertex with conformal factor below mask_eps (the
    degenerate locus |g| = 1) or a vertex outside the domain closure are
    masked and carry no triangles.
    """
    if nu < 2 or nv < 2:
        raise ValueError("grid must be at least 2x2")
    q = q or QuadratureConfig()
    polar, (a0, a1, b0, b1) = _mesh_parameters(data.domain, mesh_range)
    vertices: list[LVector] = []
    gauss: list[LVector | None] = []
    conformal: list[float] = []
    valid: list[bool] = []
    for i in range(nu):
        a = a0 + (a1 - a0) * i / (nu - 1)
        for j in range(nv):
            b = b0 + (b1 - b0) * j / (nv - 1)
            z = complex(a * math.cos(b), a * math.sin(b)) if polar else complex(a, b)
            inside = data.domain.contains(z, closed=True)
            if not inside:
                vertices.append(LVector(0, 0, 0))
                gauss.append(None)
                conformal.append(0.0)
                valid.append(False)
                continue
            X = evaluate_surface(data, z, q)
            lam = conformal_factor(data, z)
            try:
                N = gauss_map(data, z)
            except DegenerateMetricError:
                N = None
            vertices.append(X)
            gauss.append(N)
            conformal.append(lam)
            valid.append(True)
    triangles: list[tuple[int, int, int]] = []
    masked: list[tuple[int, int]] = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            k00 = i * nv + j
            k01 = k00 + 1
            k10 = k00 + nv
            k11 = k10 + 1
            corners = (k00, k01, k10, k11)
            if not all(valid[k] for k in corners) or any(
                conformal[k] < mask_eps for k in corners
            ):
                masked.append((i, j))
                continue
            triangles.append((k00, k01, k11))
            triangles.append((k00, k11, k10))
    return SurfaceMesh(vertices, gauss, conformal, triangles, masked, (nu, nv))


def write_obj(mesh: SurfaceMesh, path: str, config_sha: str, mask_eps: float) -> None:
    lines = [
        f"# maxsurf {__version__}",
        f"# config sha256 {config_sha}",
        f"# grid {mesh.shape[0]}x{mesh.shape[1]} mask_eps {_f17(mask_eps)}",
    ]
    for v in mesh.vertices:
        lines.append(f"v {_f17(v.x1)} {_f17(v.x2)} {_f17(v.x3)}")
    for t in mesh.triangles:
        lines.append(f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_sidecar(mesh: SurfaceMesh, path: str, config_sha: str) -> None:
    payload = {
        "format": "maxsurf-mesh-attributes/1",
        "config_sha256": config_sha,
        "note": "vertices are listed in OBJ order (1-based index = position + 1)",
        "vertices": [
            {
                "conformal_factor": lam,
                "gauss": list(N.as_tuple()) if N is not None else None,
            }
            for N, lam in zip(mesh.gauss, mesh.conformal)
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


# ---------------------------------------------------------------------------
# commands

def _config_sha(cfg: SurfaceConfig) -> str:
    return hashlib.sha256(cfg.source_bytes).hexdigest()


def cmd_check(args) -> int:
    cfg = SurfaceConfig.from_file(args.config)
    grid = GridSpec()
    if args.grid:
        n1, n2 = _parse_grid(args.grid)
        grid = GridSpec(n_radial=n1, n_angular=n2)
    q = QuadratureConfig(tol=args.tol if args.tol else cfg.tol)
    target = cfg.extended_surface() or cfg.data
    report = full_diagnostics(target, grid, q)
    sys.stdout.write(report.to_json() + "\n")
    return 0 if report.passed else 1


def cmd_eval(args) -> int:
    cfg = SurfaceConfig.from_file(args.config)
    try:
        u_s, v_s = args.at.split(",")
        z = complex(float(u_s), float(v_s))
    except ValueError:
        raise ConfigError("--at", "expected u,v") from None
    q = QuadratureConfig(tol=args.tol if args.tol else cfg.tol)
    ext = cfg.extended_surface()
    if ext is not None:
        inside = cfg.data.domain.contains(z) or cfg.data.domain.contains(ext.reflect(z))
        if not inside:
            sys.stderr.write(f"error: point {z} outside the assembled domain\n")
            return 1
        X = ext.evaluate(z, q)
    else:
        if not cfg.data.domain.contains(z):
            sys.stderr.write(f"error: point {z} outside the domain\n")
            return 1
        X = evaluate_surface(cfg.data, z, q)
    sys.stdout.write(f"X = ({_f17(X.x1)}, {_f17(X.x2)}, {_f17(X.x3)})\n")
    if ext is not None and not ext.on_original_side(z):
        fv = evaluate(ext.f_minus, z)
        gv = evaluate(ext.g_minus, z)
    else:
        fv = evaluate(cfg.data.f, z)
        gv = evaluate(cfg.data.g, z)
    try:
        from .weierstrass import gauss_from_g

        N = gauss_from_g(gv)
        sys.stdout.write(f"N = ({_f17(N.x1)}, {_f17(N.x2)}, {_f17(N.x3)})\n")
    except DegenerateMetricError:
        sys.stdout.write("N = degenerate (|g| = 1)\n")
    g2 = gv * gv
    p1, p2, p3 = 0.5 * fv * (1 + g2), 0.5j * fv * (1 - g2), fv * gv
    lam = abs(p1) ** 2 + abs(p2) ** 2 - abs(p3) ** 2
    sys.stdout.write(f"conformal_factor = {_f17(lam)}\n")
    return 0


def _extended_config_text(cfg: SurfaceConfig, ext: ExtendedSurface) -> str:
    data = ext.original
    dom = data.domain
    lines = [
        "# extended surface emitted by maxsurf extend",
        f"f = {format_expr(data.f)}",
        f"g = {format_expr(data.g)}",
        f"domain = {dom.kind.value}",
        f"radius = {_f17(dom.radius)}",
    ]
    if dom.inner_radius:
        lines.append(f"inner_radius = {_f17(dom.inner_radius)}")
    if dom.boundary_circle is not None:
        lines.append(f"boundary_circle = {_f17(dom.boundary_circle)}")
    if dom.punctures:
        lines.append(
            "punctures = " + ", ".join(_fmt_complex(p) for p in dom.punctures)
        )
    if data.g_poles:
        lines.append(
            "g_poles = " + ", ".join(f"{_fmt_complex(p)}:{m}" for p, m in data.g_poles)
        )
    lines.append(f"z0 = {_fmt_complex(data.z0)}")
    lines.append(f"X0 = {_f17(data.X0.x1)},{_f17(data.X0.x2)},{_f17(data.X0.x3)}")
    lines.append(f"tol = {_f17(cfg.tol)}")
    p = ext.contact.plane
    lines.append(
        f"plane = {_f17(p.n.x1)},{_f17(p.n.x2)},{_f17(p.n.x3)},{_f17(p.d)}"
    )
    lines.append(f"f_minus = {format_expr(ext.f_minus)}")
    lines.append(f"g_minus = {format_expr(ext.g_minus)}")
    lines.append(f"reflected = {ext.reflected}")
    return "\n".join(lines) + "\n"


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return _f17(z.real)
    if z.real == 0:
        return f"{_f17(z.imag)}*i"
    sign = "+" if z.imag > 0 else "-"
    return f"{_f17(z.real)}{sign}{_f17(abs(z.imag))}*i"


def _extend_report(ext: ExtendedSurface) -> dict:
    c = ext.contact
    return {
        "format": "maxsurf-extension/1",
        "contact": {
            "c": c.c,
            "deviation": c.deviation,
            "plane_kind": c.plane_kind.value,
            "theta": c.theta,
            "lam": c.lam,
            "sheet": c.sheet,
            "locus": c.locus.describe(),
            "locus_mismatch": c.locus_mismatch,
            "boundary": c.boundary.kind,
        },
        "matching": {
            "passed": ext.matching.passed,
            "tolerance": ext.matching.tol,
            "gaps": dict(sorted(ext.matching.gaps.items())),
        },
        "reflected_coordinate": ext.reflected,
    }


def cmd_extend(args) -> int:
    cfg = SurfaceConfig.from_file(args.config)
    plane = cfg.plane
    if args.plane:
        parts = args.plane.split(",")
        if len(parts) != 4:
            raise ConfigError("--plane", "expected nx,ny,nz,d")
        nx, ny, nz, d = (float(p) for p in parts)
        plane = Plane(LVector(nx, ny, nz), d)
    if plane is None:
        raise ConfigError("plane", "missing (config key or --plane)")
    try:
        ext = extend(cfg.data, plane)
    except ExtensionError as exc:
        sys.stderr.write(f"extension failed: {exc}\n")
        return 1
    report = _extend_report(ext)
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    out = args.output or (args.config + ".extended")
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(_extended_config_text(cfg, ext))
    except OSError as exc:
        sys.stderr.write(f"error: cannot write {out}: {exc}\n")
        return 2
    return 0 if ext.matching.passed else 1


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        n1, n2 = text.lower().split("x")
        return int(n1), int(n2)
    except ValueError:
        raise ConfigError("--grid", "expected NxM") from None


def cmd_mesh(args) -> int:
    cfg = SurfaceConfig.from_file(args.config)
    if cfg.minus_exprs is not None:
        raise ConfigError("config", "mesh supports plain surface configs only")
    nu, nv = _parse_grid(args.grid)
    if nu < 2 or nv < 2:
        raise ConfigError("--grid", "grid must be at least 2x2")
    q = QuadratureConfig(tol=args.tol if args.tol else cfg.tol)
    mesh = build_mesh(cfg.data, nu, nv, cfg.mask_eps, q, cfg.mesh_range)
    sha = _config_sha(cfg)
    try:
        write_obj(mesh, args.output, sha, cfg.mask_eps)
        write_sidecar(mesh, args.output + ".attrs.json", sha)
    except OSError as exc:
        sys.stderr.write(f"error: cannot write {args.output}: {exc}\n")
        return 2
    sys.stdout.write(
        f"wrote {args.output}: {len(mesh.vertices)} vertices, "
        f"{len(mesh.triangles)} triangles, {len(mesh.masked_cells)} masked cells\n"
    )
    return 0


def cmd_catenoid(args) -> int:
    sys.stdout.write(CATENOID_CONFIG)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="maxsurf",
        description="Maximal surfaces in Lorentz-Minkowski 3-space from Weierstrass data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the diagnostic suite on a config")
    p_check.add_argument("config")
    p_check.add_argument("--tol", type=float, default=None)
    p_check.add_argument("--grid", default=None, help="diagnostic grid NxM")
    p_check.set_defaults(fn=cmd_check)

    p_eval = sub.add_parser("eval", help="evaluate the surface at a point")
    p_eval.add_argument("config")
    p_eval.add_argument("--at", required=True, help="parameter point u,v")
    p_eval.add_argument("--tol", type=float, default=None)
    p_eval.set_defaults(fn=cmd_eval)

    p_ext = sub.add_parser("extend", help="extend across the configured plane")
    p_ext.add_argument("config")
    p_ext.add_argument("-o", "--output", default=None)
    p_ext.add_argument("--plane", default=None, help="override plane nx,ny,nz,d")
    p_ext.set_defaults(fn=cmd_extend)

    p_mesh = sub.add_parser("mesh", help="export a triangulated OBJ mesh")
    p_mesh.add_argument("config")
    p_mesh.add_argument("--grid", default="17x17", help="grid NxM")
    p_mesh.add_argument("-o", "--output", required=True)
    p_mesh.add_argument("--tol", type=float, default=None)
    p_mesh.set_defaults(fn=cmd_mesh)

    p_cat = sub.add_parser("catenoid", help="print the built-in reference config")
    p_cat.set_defaults(fn=cmd_catenoid)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.fn(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except (ParseError, EvalError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ExtensionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except SurfaceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
