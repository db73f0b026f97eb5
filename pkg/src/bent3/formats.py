"""File formats: function tables, certificates, spectra, sweep results.

Everything is line-oriented plain text so outputs diff cleanly and can be
parsed without this library.  The canonical table serialization doubles
as the hashing preimage: table_sha256 is the digest of the exact bytes
write_table emits.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .analysis import (NOT_BENT, NOT_WEAKLY_REGULAR, REGULAR, WEAK_MINUS,
                       Certificate)
from .gf import FieldCtx, FieldError, ctx_new, format_modulus, parse_modulus
from .spectrum import TernaryFn, WalshSpectrum

__all__ = ["TABLE_MAGIC", "table_to_text", "write_table", "read_table",
           "table_sha256", "regularity_token", "certificate_to_text",
           "write_certificate", "read_certificate", "spectrum_lines",
           "write_spectrum", "spectrum_sha256", "write_sweep", "read_sweep",
           "write_transcript", "CERT_KEYS"]

TABLE_MAGIC = "TBF v1"
_WRAP = 81  # table digits per line

#: certificate keys in their fixed output order
CERT_KEYS = ("bent", "regularity", "degree", "dual_sha256", "counterexample",
             "table_sha256", "n", "modulus", "unit")


# ----------------------------------------------------------------------
# function tables

def table_to_text(f: TernaryFn) -> str:
    ctx = f.ctx
    digits = "".join("012"[v] for v in f.table)
    body = "\n".join(digits[i:i + _WRAP]
                     for i in range(0, len(digits), _WRAP))
    return (f"{TABLE_MAGIC}\n"
            f"n={ctx.n} modulus={format_modulus(ctx.modulus)}\n"
            f"{body}\n")


def write_table(path, f: TernaryFn) -> str:
    """Writes the table file and returns its sha256 hex digest."""
    text = table_to_text(f)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def table_sha256(f: TernaryFn) -> str:
    return hashlib.sha256(table_to_text(f).encode("ascii")).hexdigest()


def read_table(path, *, max_n: int | None = None,
               ctx: FieldCtx | None = None) -> TernaryFn:
    """Parse a table file.  An existing ctx is reused when its n and
    modulus agree (table files are self-describing)."""
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != TABLE_MAGIC:
        raise FieldError(f"{path}: not a {TABLE_MAGIC} table file")
    try:
        fields = dict(tok.split("=", 1) for tok in lines[1].split())
        n = int(fields["n"])
        modulus = parse_modulus(fields["modulus"])
    except (KeyError, ValueError, IndexError) as exc:
        raise FieldError(f"{path}: bad header line {lines[1]!r}") from exc
    digits = "".join(lines[2:])
    if ctx is not None and (ctx.n != n or tuple(ctx.modulus) != modulus):
        raise FieldError(f"{path}: table is over a different field")
    if ctx is None:
        ctx = ctx_new(n, modulus, max_n=max_n)
    if len(digits) != ctx.q or set(digits) - set("012"):
        raise FieldError(f"{path}: expected {ctx.q} ternary digits")
    table = np.frombuffer(digits.encode("ascii"), dtype=np.uint8) - ord("0")
    return TernaryFn(ctx, table)


# ----------------------------------------------------------------------
# certificates

def regularity_token(regularity: str) -> str:
    """Certificate-file token: both not-weakly-regular and not-bent
    collapse to 'none' (the file also carries bent= separately)."""
    if regularity == REGULAR:
        return "regular"
    if regularity == WEAK_MINUS:
        return "weak-minus"
    if regularity in (NOT_WEAKLY_REGULAR, NOT_BENT):
        return "none"
    raise FieldError(f"unknown regularity {regularity!r}")


def certificate_to_text(cert: Certificate, f: TernaryFn) -> str:
    ctx = f.ctx
    dual_hash = table_sha256(cert.dual) if cert.dual is not None else "none"
    counter = "none" if cert.counterexample is None \
        else str(cert.counterexample)
    unit = "none" if cert.unit is None else f"{cert.unit:+d}"
    lines = [
        f"bent={'true' if cert.is_bent else 'false'}",
        f"regularity={regularity_token(cert.regularity)}",
        f"degree={cert.degree}",
        f"dual_sha256={dual_hash}",
        f"counterexample={counter}",
        f"table_sha256={table_sha256(f)}",
        f"n={ctx.n}",
        f"modulus={format_modulus(ctx.modulus)}",
        f"unit={unit}",
    ]
    lines.extend(cert.transcript)
    return "\n".join(lines) + "\n"


def write_certificate(path, cert: Certificate, f: TernaryFn) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(certificate_to_text(cert, f))


def read_certificate(path):
    """-> (dict of key=value fields, list of transcript lines)."""
    fields = {}
    transcript = []
    with open(path, "r", encoding="ascii") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            key, eq, val = line.partition("=")
            if eq and key in CERT_KEYS and not transcript:
                fields[key] = val
            elif line:
                transcript.append(line)
    if "bent" not in fields:
        raise FieldError(f"{path}: not a certificate file")
    return fields, transcript


# ----------------------------------------------------------------------
# spectra

def spectrum_lines(spec: WalshSpectrum):
    norms = spec.norms()
    for b in range(spec.ctx.q):
        yield f"{b} {spec.u[b]} {spec.v[b]} {norms[b]}"


def write_spectrum(path, spec: WalshSpectrum) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# b_index u v norm\n")
        for line in spectrum_lines(spec):
            fh.write(line + "\n")


def spectrum_sha256(spec: WalshSpectrum) -> str:
    h = hashlib.sha256()
    for line in spectrum_lines(spec):
        h.update(line.encode("ascii"))
        h.update(b"\n")
    return h.hexdigest()


# ----------------------------------------------------------------------
# sweep results and transcripts

def write_sweep(path, header, rows, summary) -> None:
    """Tab-separated rows under a '#'-prefixed header, then '#'-prefixed
    summary footer lines.  Fully deterministic: byte-identical for equal
    inputs."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("#" + "\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(str(c) for c in row) + "\n")
        for line in summary:
            fh.write(f"# {line}\n")


def read_sweep(path):
    """-> (header list, data rows as string lists, summary lines)."""
    header, rows, summary = None, [], []
    with open(path, "r", encoding="ascii") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("# "):
                summary.append(line[2:])
            elif line.startswith("#"):
                header = line[1:].split("\t")
            else:
                rows.append(line.split("\t"))
    return header, rows, summary


def write_transcript(path, lines) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for line in lines:
            fh.write(line + "\n")
