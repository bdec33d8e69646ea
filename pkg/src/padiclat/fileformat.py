"""Line-structured lattice description files.

Example::

    # the worked rank-3 example over Q2
    field Qp 2
    basis
    1 0 0 0
    0 2 0 0
    0 0 16 16
    end
    norm extension 1 1 1 1 1
    target 1 0 0 0
    depth 4
    seed 7

One line per basis column, entries in the scalar grammar ("a/b" over Qp,
"(poly)/(poly)" over FpT).  Norm variants: ``sup``, ``weighted`` followed
by m weights in "p^q" syntax, ``extension`` followed by the m+1 monic
polynomial coefficients (ascending).  Scalars are always strings, never
native numbers, so files round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, Vector
from .norms import ExtensionNorm, SupNorm, WeightedSupNorm
from .scalars import FieldConfig, NormValue, ParseError, parse_scalar


@dataclass
class LatticeFile:
    """Parsed description: field, basis columns, norm spec and options."""

    cfg: FieldConfig
    basis: Matrix
    norm_variant: str
    norm_params: tuple
    target: Vector | None
    depth: int | None
    seed: int | None

    def make_norm(self):
        """Instantiate the norm; mathematical validation happens here."""
        if self.norm_variant == "sup":
            return SupNorm(self.cfg)
        if self.norm_variant == "weighted":
            return WeightedSupNorm(self.cfg, self.norm_params)
        return ExtensionNorm(self.cfg, self.norm_params)


def _parse_int(token, what):
    try:
        return int(token)
    except ValueError as exc:
        raise ParseError(f"bad {what}: {token!r}") from exc


def parse_lattice_file(text: str) -> LatticeFile:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)

    cfg = None
    basis_cols = None
    norm_variant = None
    norm_tokens = None
    target_tokens = None
    depth = None
    seed = None

    i = 0
    while i < len(lines):
        tokens = lines[i].split()
        head = tokens[0].lower()
        if head == "field":
            if len(tokens) not in (3, 4):
                raise ParseError("field line must be: field <Qp|FpT> <p> [display_depth]")
            kind = {"qp": "Qp", "fpt": "FpT"}.get(tokens[1].lower())
            if kind is None:
                raise ParseError(f"unknown field kind {tokens[1]!r}")
            p = _parse_int(tokens[2], "prime")
            dd = _parse_int(tokens[3], "display_depth") if len(tokens) == 4 else 8
            try:
                cfg = FieldConfig(kind, p, dd)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
            i += 1
        elif head == "basis":
            if cfg is None:
                raise ParseError("field block must come before basis")
            basis_cols = []
            i += 1
            while i < len(lines) and lines[i].lower() != "end":
                basis_cols.append([parse_scalar(tok, cfg) for tok in lines[i].split()])
                i += 1
            if i == len(lines):
                raise ParseError("basis block not closed with 'end'")
            if not basis_cols:
                raise ParseError("empty basis block")
            i += 1
        elif head == "norm":
            if len(tokens) < 2:
                raise ParseError("norm line needs a variant")
            norm_variant = tokens[1].lower()
            if norm_variant not in ("sup", "weighted", "extension"):
                raise ParseError(f"unknown norm variant {tokens[1]!r}")
            norm_tokens = tokens[2:]
            i += 1
        elif head == "target":
            target_tokens = tokens[1:]
            i += 1
        elif head == "depth":
            if len(tokens) != 2:
                raise ParseError("depth line must be: depth <n>")
            depth = _parse_int(tokens[1], "depth")
            i += 1
        elif head == "seed":
            if len(tokens) != 2:
                raise ParseError("seed line must be: seed <n>")
            seed = _parse_int(tokens[1], "seed")
            i += 1
        else:
            raise ParseError(f"unknown directive {tokens[0]!r}")

    if cfg is None:
        raise ParseError("missing field block")
    if basis_cols is None:
        raise ParseError("missing basis block")
    m = len(basis_cols[0])
    if any(len(c) != m for c in basis_cols):
        raise ParseError("basis columns have inconsistent lengths")
    basis = Matrix.from_cols(cfg, basis_cols)

    if norm_variant is None:
        norm_variant, norm_params = "sup", ()
    elif norm_variant == "sup":
        if norm_tokens:
            raise ParseError("sup norm takes no parameters")
        norm_params = ()
    elif norm_variant == "weighted":
        if len(norm_tokens) != m:
            raise ParseError(f"weighted norm needs {m} weights, got {len(norm_tokens)}")
        norm_params = tuple(NormValue.parse(tok, cfg.p) for tok in norm_tokens)
        if any(w.is_zero for w in norm_params):
            raise ParseError("weights must be nonzero")
    else:
        if len(norm_tokens) != m + 1:
            raise ParseError(
                f"extension norm needs {m + 1} coefficients for dimension {m},"
                f" got {len(norm_tokens)}"
            )
        norm_params = tuple(parse_scalar(tok, cfg) for tok in norm_tokens)

    target = None
    if target_tokens is not None:
        if len(target_tokens) != m:
            raise ParseError(f"target needs {m} entries, got {len(target_tokens)}")
        target = Vector(cfg, [parse_scalar(tok, cfg) for tok in target_tokens])

    return LatticeFile(
        cfg=cfg,
        basis=basis,
        norm_variant=norm_variant,
        norm_params=norm_params,
        target=target,
        depth=depth,
        seed=seed,
    )
