"""NMEA 0183 sentence parsing for GGA, GSA and GSV.

Sentences are split into a :class:`RawSentence` (framing, checksum) and then
decoded into typed records. Anything other than the three handled tags comes
back as :class:`Unhandled` so a log can be re-emitted byte for byte.

Field values that are present but out of range (an elevation of 95 degrees, a
negative signal reading) do not reject the sentence: the value is dropped and
a :class:`Diagnostic` is attached to the record instead.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

__all__ = [
    "NmeaError",
    "MalformedFrame",
    "ChecksumMismatch",
    "Diagnostic",
    "ParsePolicy",
    "RawSentence",
    "SatelliteObservation",
    "DopValues",
    "FixData",
    "GGA",
    "GSA",
    "GSV",
    "Unhandled",
    "compute_checksum",
    "format_sentence",
    "split_sentence",
    "parse_sentence",
    "iter_sentences",
    "assemble_gsv",
    "DOP_SENTINEL",
]

DOP_SENTINEL = 99.99

CONSTELLATIONS = {
    "GP": "GPS",
    "GL": "GLONASS",
    "GA": "Galileo",
    "GB": "BeiDou",
    "BD": "BeiDou",
    "GQ": "QZSS",
    "GN": "multi",
}


class NmeaError(ValueError):
    """Base class for sentence-level parse failures."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class MalformedFrame(NmeaError):
    pass


class ChecksumMismatch(NmeaError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    line_number: Optional[int] = None

    def __str__(self) -> str:
        where = f"line {self.line_number}: " if self.line_number is not None else ""
        return f"{where}[{self.code}] {self.message}"


@dataclass(frozen=True)
class ParsePolicy:
    """How forgiving the parser is.

    ``strict`` requires every sentence to carry a checksum; lenient mode
    tolerates a missing one. A checksum that is present and wrong is rejected
    in both modes. ``talkers`` lists the accepted talker IDs; sentences from
    other talkers are returned as :class:`Unhandled`.
    """

    strict: bool = True
    talkers: frozenset = frozenset({"GP"})

    @classmethod
    def lenient(cls, **kwargs) -> "ParsePolicy":
        return cls(strict=False, **kwargs)

    @classmethod
    def multi_constellation(cls, strict: bool = True) -> "ParsePolicy":
        return cls(strict=strict, talkers=frozenset(CONSTELLATIONS))


@dataclass(frozen=True)
class RawSentence:
    talker: str
    type_tag: str
    fields: tuple
    checksum: Optional[str] = None
    line_number: int = 0

    @property
    def address(self) -> str:
        return self.talker + self.type_tag

    @property
    def constellation(self) -> str:
        return CONSTELLATIONS.get(self.talker, "unknown")

    def to_line(self) -> str:
        body = ",".join((self.address,) + tuple(self.fields))
        if self.checksum is None:
            return "$" + body
        return f"${body}*{self.checksum}"


@dataclass(frozen=True)
class SatelliteObservation:
    prn: int
    elevation_deg: Optional[int] = None
    azimuth_deg: Optional[int] = None
    cn0_dbhz: Optional[float] = None
    constellation: str = "GPS"


@dataclass(frozen=True)
class DopValues:
    pdop: Optional[float] = None
    hdop: Optional[float] = None
    vdop: Optional[float] = None


@dataclass(frozen=True)
class FixData:
    utc_time: Optional[datetime.time]
    fix_quality: int
    satellites_used: int
    latitude: Optional[float] = None
    longitude: Optional[float] = None
    altitude: Optional[float] = None

    @property
    def has_position(self) -> bool:
        return self.latitude is not None and self.longitude is not None


@dataclass(frozen=True)
class GGA:
    raw: RawSentence
    fix: FixData
    diagnostics: tuple = ()


@dataclass(frozen=True)
class GSA:
    raw: RawSentence
    mode: str
    fix_type: Optional[int]
    prns_used: tuple
    dop: DopValues
    diagnostics: tuple = ()


@dataclass(frozen=True)
class GSV:
    raw: RawSentence
    total_messages: int
    message_number: int
    satellites_in_view: int
    satellites: tuple
    diagnostics: tuple = ()


@dataclass(frozen=True)
class Unhandled:
    raw: RawSentence
    diagnostics: tuple = ()


Record = Union[GGA, GSA, GSV, Unhandled]


def compute_checksum(payload: str) -> str:
    """XOR of every byte in ``payload`` as two uppercase hex digits."""
    value = 0
    for byte in payload.encode("ascii"):
        value ^= byte
    return f"{value:02X}"


def format_sentence(address: str, fields: Iterable[str]) -> str:
    """Serialize an address and field list into a checksummed sentence (no line ending)."""
    payload = ",".join([address, *fields])
    return f"${payload}*{compute_checksum(payload)}"


_HEX = set("0123456789ABCDEFabcdef")


def split_sentence(line: str, policy: ParsePolicy = ParsePolicy(), line_number: int = 0) -> RawSentence:
    """Check framing and checksum and split a line into a :class:`RawSentence`."""
    text = line.rstrip("\r\n")
    if not text.isascii():
        raise MalformedFrame("non-ASCII bytes in sentence", line_number)
    if not text.startswith("$"):
        raise MalformedFrame("sentence does not start with '$'", line_number)

    body = text[1:]
    checksum = None
    if "*" in body:
        body, checksum = body.split("*", 1)
        if len(checksum) != 2 or not set(checksum) <= _HEX:
            raise MalformedFrame(f"bad checksum field {checksum!r}", line_number)
    if "$" in body or "*" in body:
        raise MalformedFrame("stray framing character inside payload", line_number)

    if checksum is None:
        if policy.strict:
            raise ChecksumMismatch("missing checksum (strict policy)", line_number)
    else:
        expected = compute_checksum(body)
        if checksum.upper() != expected:
            raise ChecksumMismatch(f"checksum {checksum} != computed {expected}", line_number)

    parts = body.split(",")
    address = parts[0]
    if len(address) < 3 or not address.isalnum():
        raise MalformedFrame(f"bad address field {address!r}", line_number)
    if address.startswith("P"):
        # proprietary sentences have no standard talker/tag split
        talker, tag = address[:2], address[2:]
    else:
        talker, tag = address[:-3], address[-3:]
    return RawSentence(talker, tag, tuple(parts[1:]), checksum, line_number)


def _diag(out: list, raw: RawSentence, code: str, message: str) -> None:
    out.append(Diagnostic(code, f"{raw.address}: {message}", raw.line_number))


def _int_field(raw: RawSentence, idx: int, name: str, diags: list,
               lo: Optional[int] = None, hi: Optional[int] = None) -> Optional[int]:
    text = raw.fields[idx].strip() if idx < len(raw.fields) else ""
    if not text:
        return None
    try:
        value = int(text)
    except ValueError:
        try:
            value = int(float(text))
        except ValueError:
            _diag(diags, raw, "FieldRange", f"{name} {text!r} is not numeric")
            return None
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        _diag(diags, raw, "FieldRange", f"{name} {value} outside [{lo}, {hi}]")
        return None
    return value


def _float_field(raw: RawSentence, idx: int, name: str, diags: list,
                 lo: Optional[float] = None) -> Optional[float]:
    text = raw.fields[idx].strip() if idx < len(raw.fields) else ""
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        _diag(diags, raw, "FieldRange", f"{name} {text!r} is not numeric")
        return None
    if value != value or value in (float("inf"), float("-inf")):
        _diag(diags, raw, "FieldRange", f"{name} is not finite")
        return None
    if lo is not None and value < lo:
        _diag(diags, raw, "FieldRange", f"{name} {value} below {lo}")
        return None
    return value


def _parse_time(raw: RawSentence, text: str, diags: list) -> Optional[datetime.time]:
    if not text:
        return None
    try:
        hh, mm, ss = int(text[0:2]), int(text[2:4]), int(text[4:6])
        micro = 0
        if "." in text:
            frac = text.split(".", 1)[1]
            micro = int((frac + "000000")[:6])
        return datetime.time(hh, mm, ss, micro)
    except ValueError:
        _diag(diags, raw, "FieldRange", f"bad UTC time {text!r}")
        return None


def _parse_coord(raw: RawSentence, value: str, hemi: str, deg_len: int, diags: list) -> Optional[float]:
    if not value or not hemi:
        return None
    try:
        degrees = float(value[:deg_len])
        minutes = float(value[deg_len:])
    except ValueError:
        _diag(diags, raw, "FieldRange", f"bad coordinate {value!r}")
        return None
    limit = 90.0 if deg_len == 2 else 180.0
    dec = degrees + minutes / 60.0
    if minutes >= 60.0 or dec > limit or hemi not in "NSEW":
        _diag(diags, raw, "FieldRange", f"coordinate {value},{hemi} out of range")
        return None
    return -dec if hemi in ("S", "W") else dec


def _parse_gga(raw: RawSentence) -> GGA:
    f = raw.fields
    if len(f) < 9:
        raise MalformedFrame(f"GGA needs at least 9 fields, got {len(f)}", raw.line_number)
    diags: list = []
    fix = FixData(
        utc_time=_parse_time(raw, f[0], diags),
        fix_quality=_int_field(raw, 5, "fix quality", diags, lo=0) or 0,
        satellites_used=_int_field(raw, 6, "satellites used", diags, lo=0) or 0,
        latitude=_parse_coord(raw, f[1], f[2], 2, diags),
        longitude=_parse_coord(raw, f[3], f[4], 3, diags),
        altitude=_float_field(raw, 8, "altitude", diags),
    )
    return GGA(raw, fix, tuple(diags))


def _parse_gsa(raw: RawSentence) -> GSA:
    f = raw.fields
    if len(f) < 17:
        raise MalformedFrame(f"GSA needs at least 17 fields, got {len(f)}", raw.line_number)
    diags: list = []
    prns = tuple(p for p in (_int_field(raw, i, "PRN", diags, lo=1) for i in range(2, 14)) if p is not None)
    dop = DopValues(
        pdop=_float_field(raw, 14, "PDOP", diags, lo=0.0),
        hdop=_float_field(raw, 15, "HDOP", diags, lo=0.0),
        vdop=_float_field(raw, 16, "VDOP", diags, lo=0.0),
    )
    if dop.pdop is not None and dop.hdop is not None and dop.hdop > dop.pdop:
        # receiver rounding can produce this; keep the values
        _diag(diags, raw, "DopOrder", f"HDOP {dop.hdop} exceeds PDOP {dop.pdop}")
    return GSA(raw, f[0], _int_field(raw, 1, "fix type", diags, lo=1, hi=3), prns, dop, tuple(diags))


def _parse_gsv(raw: RawSentence) -> GSV:
    f = raw.fields
    if len(f) < 3:
        raise MalformedFrame(f"GSV needs at least 3 fields, got {len(f)}", raw.line_number)
    diags: list = []
    total = _int_field(raw, 0, "total messages", diags, lo=1)
    number = _int_field(raw, 1, "message number", diags, lo=1)
    in_view = _int_field(raw, 2, "satellites in view", diags, lo=0)
    if total is None or number is None or in_view is None:
        raise MalformedFrame("GSV header fields missing or invalid", raw.line_number)

    sats = []
    # trailing odd field is the NMEA 4.10 signal ID
    for start in range(3, len(f) - 3, 4):
        prn = _int_field(raw, start, "PRN", diags, lo=1)
        if prn is None:
            continue
        cn0 = _int_field(raw, start + 3, "C/N0", diags, lo=0, hi=99)
        sats.append(SatelliteObservation(
            prn=prn,
            elevation_deg=_int_field(raw, start + 1, "elevation", diags, lo=0, hi=90),
            azimuth_deg=_int_field(raw, start + 2, "azimuth", diags, lo=0, hi=359),
            cn0_dbhz=None if cn0 is None else float(cn0),
            constellation=raw.constellation,
        ))
    return GSV(raw, total, number, in_view, tuple(sats), tuple(diags))


_DECODERS = {"GGA": _parse_gga, "GSA": _parse_gsa, "GSV": _parse_gsv}


def parse_sentence(line: str, policy: ParsePolicy = ParsePolicy(), line_number: int = 0) -> Record:
    """Parse one NMEA line into a GGA, GSA, GSV or Unhandled record.

    Raises :class:`ChecksumMismatch` or :class:`MalformedFrame` when the line
    cannot be trusted at all.
    """
    raw = split_sentence(line, policy, line_number)
    decoder = _DECODERS.get(raw.type_tag)
    if decoder is None:
        return Unhandled(raw)
    if raw.talker not in policy.talkers:
        return Unhandled(raw, (Diagnostic("TalkerFiltered", f"talker {raw.talker!r} not accepted", line_number),))
    return decoder(raw)


def iter_sentences(lines: Iterable[str], policy: ParsePolicy = ParsePolicy(),
                   errors: Optional[list] = None) -> Iterator[Record]:
    """Parse a stream of lines, skipping blank ones.

    Lines that fail to parse are reported as diagnostics appended to
    ``errors`` (when given) and otherwise dropped; the stream keeps going.
    """
    for n, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield parse_sentence(line, policy, n)
        except NmeaError as exc:
            if errors is not None:
                errors.append(Diagnostic(type(exc).__name__, str(exc), n))


def assemble_gsv(group: Iterable[GSV]) -> tuple:
    """Join the parts of one multi-sentence GSV report.

    Returns ``(satellites, diagnostics)``. Satellites keep sentence order. A
    gap or reordering in message numbers, or parts that disagree on the
    totals, yields whatever was received plus an ``IncompleteGroup`` or
    ``InconsistentTotals`` diagnostic.
    """
    parts = list(group)
    diags: list = []
    if not parts:
        return [], diags

    first = parts[0]
    for p in parts[1:]:
        if (p.total_messages, p.satellites_in_view) != (first.total_messages, first.satellites_in_view):
            diags.append(Diagnostic(
                "InconsistentTotals",
                f"GSV parts disagree: {first.total_messages}/{first.satellites_in_view} vs "
                f"{p.total_messages}/{p.satellites_in_view}",
                p.raw.line_number,
            ))
            break

    numbers = [p.message_number for p in parts]
    if numbers != list(range(1, first.total_messages + 1)):
        diags.append(Diagnostic(
            "IncompleteGroup",
            f"GSV parts {numbers} of {first.total_messages}",
            first.raw.line_number,
        ))

    sats = [s for p in parts for s in p.satellites]
    if len(sats) > first.satellites_in_view:
        diags.append(Diagnostic(
            "InconsistentTotals",
            f"{len(sats)} satellites listed but {first.satellites_in_view} declared in view",
            first.raw.line_number,
        ))
        sats = sats[: first.satellites_in_view]
    return sats, diags
