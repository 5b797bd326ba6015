"""System description files (JSON) and delimited output (CSV).

A system file looks like

    {
      "a": 1,
      "channels": [
        {"offset": 0, "re": [1.0], "im": [0.0]},
        {"offset": 0, "re": [0.7071, 0.7071]}
      ],
      "normalize": true
    }

or, for a Gabor system,

    {"a": 2, "gabor": {"window": {"offset": 0, "re": [0.5, 0.5, 0.5, 0.5]},
                       "M": 4}}

Floats are rendered with 17 significant digits so that a written file
re-reads to the bit-identical decimal text. Files are written atomically
(temp file in the target directory, then rename).
"""

from __future__ import annotations

import csv
import json
import os
import tempfile

import numpy as np

from .errors import SpecFileError
from .sequences import FiniteSeq
from .systems import make_gabor_system, make_system

__all__ = ["load_system", "format_float", "write_sequences_csv",
           "read_sequences_csv", "write_convergence_csv", "atomic_write_text"]


def _parse_channel(obj, what="channel"):
    try:
        offset = int(obj["offset"])
        re = [float(v) for v in obj["re"]]
        im = [float(v) for v in obj.get("im", [0.0] * len(re))]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFileError("malformed {}: {}".format(what, exc)) from exc
    if len(im) != len(re):
        raise SpecFileError("{}: re and im lengths differ".format(what))
    return FiniteSeq(offset, np.array(re) + 1j * np.array(im))


def load_system(path):
    """Parse a system description file into a ShiftSystem."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecFileError("cannot read {}: {}".format(path, exc)) from exc
    if not isinstance(doc, dict) or "a" not in doc:
        raise SpecFileError("system file must be an object with an 'a' field")
    try:
        a = int(doc["a"])
    except (TypeError, ValueError) as exc:
        raise SpecFileError("bad shift step: {}".format(doc["a"])) from exc
    normalize = bool(doc.get("normalize", False))

    def maybe_normalize(seq):
        if not normalize:
            return seq
        n = seq.norm()
        if n == 0.0:
            raise SpecFileError("cannot normalize an all-zero channel")
        return seq.scale(1.0 / n)

    if "gabor" in doc:
        gab = doc["gabor"]
        if not isinstance(gab, dict) or "window" not in gab or "M" not in gab:
            raise SpecFileError("gabor block needs 'window' and 'M'")
        window = maybe_normalize(_parse_channel(gab["window"], "gabor window"))
        return make_gabor_system(window, a, int(gab["M"]))
    channels = doc.get("channels")
    if not channels:
        raise SpecFileError("system file needs a non-empty 'channels' list")
    gens = [maybe_normalize(_parse_channel(c, "channel {}".format(i)))
            for i, c in enumerate(channels)]
    return make_system(gens, a)


def format_float(x):
    """17 significant digits; enough to round-trip any double exactly."""
    return format(float(x), ".17g")


def atomic_write_text(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header, rows):
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_sequences_csv(path, duals):
    """One row per stored sample: channel, k, re, im."""
    rows = []
    for m, d in enumerate(duals):
        if d.is_zero:
            continue
        for i, v in enumerate(d.values):
            rows.append([m, d.offset + i, format_float(v.real),
                         format_float(v.imag)])
    atomic_write_text(path, _csv_text(["channel", "k", "re", "im"], rows))


def read_sequences_csv(path):
    """Inverse of write_sequences_csv; returns a list of FiniteSeq."""
    per_channel = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            m = int(row["channel"])
            per_channel.setdefault(m, []).append(
                (int(row["k"]), float(row["re"]) + 1j * float(row["im"])))
    out = []
    for m in sorted(per_channel):
        samples = sorted(per_channel[m])
        lo, hi = samples[0][0], samples[-1][0]
        vals = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in samples:
            vals[k - lo] = v
        out.append(FiniteSeq(lo, vals))
    return out


def write_convergence_csv(path, rows):
    """ConvergenceRow records sorted by (N, channel)."""
    data = [[r.N, r.channel, format_float(r.measured_err), format_float(r.bound),
             format_float(r.cond_N), format_float(r.lam)]
            for r in sorted(rows, key=lambda r: (r.N, r.channel))]
    atomic_write_text(path, _csv_text(
        ["N", "channel", "measured_err", "bound", "cond_N", "lambda"], data))
