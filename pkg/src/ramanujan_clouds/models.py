"""Pydantic models for coefficient files, function files and output documents."""

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, Field, ValidationError

from ramanujan_clouds.arith import TabulatedFunction, divisors, euler_phi
from ramanujan_clouds.coefficients import (
    CoefficientSpec,
    Conductors,
    DefaultRule,
    FlatPowerLaw,
    GeometricTail,
    OneEverywhere,
    OneTail,
    PowerLaw,
    PrimeClassification,
    PrimeEntry,
    TailRule,
    ZeroOnPrimes,
    ZeroTail,
)
from ramanujan_clouds.exceptions import SpecParseError
from ramanujan_clouds.scalars import Scalar, encode_scalar, normalize, parse_pair
from ramanujan_clouds.series import ConvergedEstimate, Diverging, SeriesTrace, Verdict

Component = float | int | str
Pair = tuple[Component, Component]


class ZeroTailDocument(BaseModel):
    """G(p^k) = 0 past the table."""

    tag: Literal["zero"] = "zero"


class GeometricTailDocument(BaseModel):
    """G(p^k) continues geometrically past the table."""

    tag: Literal["geometric"] = "geometric"
    ratio: Pair = Field(description="Ratio of the geometric continuation as [re, im]")


class OneTailDocument(BaseModel):
    """G(p^k) = 1 past the table."""

    tag: Literal["one"] = "one"


TailChoice = ZeroTailDocument | GeometricTailDocument | OneTailDocument
TailDocument = Annotated[TailChoice, Field(discriminator="tag")]


class ZeroOnPrimesDocument(BaseModel):
    """Unlisted primes carry G = 0."""

    tag: Literal["zero_on_primes"] = "zero_on_primes"


class PowerLawDocument(BaseModel):
    """Unlisted primes carry G(p^k) = +-p^(-ks)."""

    tag: Literal["power_law"] = "power_law"
    s: Pair = Field(description="Exponent s as [re, im]")
    negate: bool = Field(default=False, description="Use -p^(-ks) instead of p^(-ks)")


class FlatPowerLawDocument(BaseModel):
    """Unlisted primes carry G(p^k) = +-p^(-s) for every k >= 1."""

    tag: Literal["flat_power_law"] = "flat_power_law"
    s: Pair = Field(description="Exponent s as [re, im]")
    negate: bool = Field(default=False, description="Use -p^(-s) instead of p^(-s)")


class OneEverywhereDocument(BaseModel):
    """Unlisted primes carry G = 1 at every power."""

    tag: Literal["one_everywhere"] = "one_everywhere"


DefaultChoice = ZeroOnPrimesDocument | PowerLawDocument | FlatPowerLawDocument | OneEverywhereDocument
DefaultDocument = Annotated[DefaultChoice, Field(discriminator="tag")]


class PrimeEntryDocument(BaseModel):
    """Table of one listed prime."""

    values: list[Pair] = Field(min_length=1, description="G(p), G(p^2), ... as [re, im] pairs")
    tail: TailDocument = Field(default_factory=ZeroTailDocument, description="Rule past the table")


class SpecDocument(BaseModel):
    """Coefficient file: default rule plus tables keyed by decimal prime strings."""

    default: DefaultDocument = Field(default_factory=ZeroOnPrimesDocument, description="Rule for unlisted primes")
    primes: dict[str, PrimeEntryDocument] = Field(default_factory=dict, description="Listed prime tables")

    def to_spec(self, *, exact: bool) -> CoefficientSpec:
        """Build the coefficient in the requested numeric regime."""
        entries: dict[int, PrimeEntry] = {}
        for key, entry in self.primes.items():
            location = f"primes.{key}"
            try:
                p = int(key)
            except ValueError as e:
                raise SpecParseError(f"prime key {key!r} is not an integer", location=location) from e
            values = tuple(
                parse_pair(pair, exact=exact, location=f"{location}.values.{i}") for i, pair in enumerate(entry.values)
            )
            entries[p] = PrimeEntry(values, _tail_rule(entry.tail, exact=exact, location=f"{location}.tail"))
        return CoefficientSpec(entries, _default_rule(self.default, exact=exact))

    @classmethod
    def from_spec(cls, g: CoefficientSpec) -> "SpecDocument":
        """Document describing ``g``."""
        primes = {
            str(p): PrimeEntryDocument(values=[scalar_pair(v) for v in entry.values], tail=_tail_document(entry.tail))
            for p, entry in g.prime_entries.items()
        }
        return cls(default=_default_document(g.default), primes=primes)


def scalar_pair(value: Scalar) -> Pair:
    """Encode a scalar as a JSON [re, im] pair."""
    re, im = encode_scalar(value)
    return (re, im)


def _tail_rule(doc: TailChoice, *, exact: bool, location: str) -> TailRule:
    match doc:
        case GeometricTailDocument(ratio=ratio):
            return GeometricTail(parse_pair(ratio, exact=exact, location=f"{location}.ratio"))
        case OneTailDocument():
            return OneTail()
        case _:
            return ZeroTail()


def _tail_document(rule: TailRule) -> TailChoice:
    match rule:
        case GeometricTail(ratio=ratio):
            return GeometricTailDocument(ratio=scalar_pair(ratio))
        case OneTail():
            return OneTailDocument()
        case _:
            return ZeroTailDocument()


def _default_rule(doc: DefaultChoice, *, exact: bool) -> DefaultRule:
    match doc:
        case PowerLawDocument(s=s, negate=negate):
            return PowerLaw(parse_pair(s, exact=exact, location="default.s"), negate)
        case FlatPowerLawDocument(s=s, negate=negate):
            return FlatPowerLaw(parse_pair(s, exact=exact, location="default.s"), negate)
        case OneEverywhereDocument():
            return OneEverywhere()
        case _:
            return ZeroOnPrimes()


def _default_document(rule: DefaultRule) -> DefaultChoice:
    match rule:
        case PowerLaw(s=s, negate=negate):
            return PowerLawDocument(s=scalar_pair(s), negate=negate)
        case FlatPowerLaw(s=s, negate=negate):
            return FlatPowerLawDocument(s=scalar_pair(s), negate=negate)
        case OneEverywhere():
            return OneEverywhereDocument()
        case _:
            return ZeroOnPrimesDocument()


Builtin = Literal["id", "phi", "sigma", "sigma_minus_one", "one", "unit"]


def _builtin_value(name: Builtin, a: int) -> Scalar:
    match name:
        case "id":
            return a
        case "phi":
            return euler_phi(a)
        case "sigma":
            return sum(divisors(a))
        case "sigma_minus_one":
            return normalize(sum((Fraction(1, d) for d in divisors(a)), start=Fraction(0)))
        case "one":
            return 1
        case "unit":
            return 1 if a == 1 else 0


class FunctionDocument(BaseModel):
    """Tabulated function file: explicit values on 1..len(values) or a builtin on 1..a_max."""

    builtin: Builtin | None = Field(default=None, description="Name of a builtin arithmetic function")
    a_max: int | None = Field(default=None, ge=1, description="Domain size of a builtin")
    values: list[Pair | Component] | None = Field(default=None, min_length=1, description="F(1), F(2), ...")

    def to_function(self, *, exact: bool) -> TabulatedFunction:
        """Tabulate the function in the requested numeric regime."""
        if self.values is not None:
            parsed = []
            for i, raw in enumerate(self.values):
                pair = raw if isinstance(raw, tuple) else (raw, 0)
                parsed.append(parse_pair(pair, exact=exact, location=f"values.{i}"))
            return TabulatedFunction(tuple(parsed))
        if self.builtin is None or self.a_max is None:
            raise SpecParseError("give either values or builtin with a_max", location="builtin")
        name = self.builtin
        table = TabulatedFunction.from_callable(lambda a: _builtin_value(name, a), self.a_max)
        if exact:
            return table
        return TabulatedFunction(tuple(complex(v) for v in table.values))


def _read_json(path: Path) -> Any:
    try:
        with path.open() as f:
            return json.load(f)
    except OSError as e:
        raise SpecParseError(f"cannot read file: {e}", location=str(path)) from e
    except json.JSONDecodeError as e:
        raise SpecParseError(f"invalid JSON: {e.msg}", location=f"{path}:{e.lineno}:{e.colno}") from e


def _validation_location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"])


def load_spec(path: Path, *, exact: bool) -> CoefficientSpec:
    """Parse a coefficient file.

    Raises:
        SpecParseError: With the location of the first malformed field.

    """
    try:
        document = SpecDocument.model_validate(_read_json(path))
    except ValidationError as e:
        raise SpecParseError(e.errors()[0]["msg"], location=f"{path}:{_validation_location(e)}") from e
    return document.to_spec(exact=exact)


def load_function(path: Path, *, exact: bool) -> TabulatedFunction:
    """Parse a tabulated function file.

    Raises:
        SpecParseError: With the location of the first malformed field.

    """
    try:
        document = FunctionDocument.model_validate(_read_json(path))
    except ValidationError as e:
        raise SpecParseError(e.errors()[0]["msg"], location=f"{path}:{_validation_location(e)}") from e
    return document.to_function(exact=exact)


def _index(value: int | float) -> int | None:
    return None if math.isinf(value) else int(value)


class PrimeClassDocument(BaseModel):
    """Classification of one listed prime; infinite indices are null."""

    p: int
    value: Pair
    w: int | None = Field(description="Completely multiplicative index, null when infinite")
    v: int | None = Field(description="Transparency index, null when infinite")
    prime_class: str

    @classmethod
    def from_classification(cls, c: PrimeClassification) -> "PrimeClassDocument":
        """Document for one classification."""
        return cls(p=c.p, value=scalar_pair(c.value), w=_index(c.w), v=_index(c.v), prime_class=c.prime_class.value)


class ClassificationReport(BaseModel):
    """Conductors and per-prime classes of a coefficient."""

    n: int = Field(description="Ramanujan conductor N(G)")
    n_t: int = Field(description="Transparency conductor N_T(G)")
    default_hypertransparent: bool
    primes: list[PrimeClassDocument]

    @classmethod
    def from_conductors(cls, cond: Conductors) -> "ClassificationReport":
        """Report for computed conductors."""
        return cls(
            n=cond.n,
            n_t=cond.n_t,
            default_hypertransparent=cond.default_hypertransparent,
            primes=[PrimeClassDocument.from_classification(c) for c in cond.classifications],
        )


class VerdictDocument(BaseModel):
    """Convergence verdict of a trace."""

    kind: Literal["converged", "diverging", "inconclusive"]
    value: Pair | None = None
    error_bound: float | None = None
    exponent: float | None = None
    fit_quality: float | None = None
    reason: str | None = None

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "VerdictDocument":
        """Document for a verdict."""
        match verdict:
            case ConvergedEstimate(value=value, error_bound=bound):
                return cls(kind="converged", value=scalar_pair(value), error_bound=float(bound))
            case Diverging(exponent=exponent, fit_quality=quality):
                return cls(kind="diverging", exponent=exponent, fit_quality=quality)
            case _:
                return cls(kind="inconclusive", reason=verdict.reason)


class TraceDocument(BaseModel):
    """Checkpoints of a partial-sum trace with its verdict."""

    kind: str
    a: int
    b: int
    c: int
    checkpoints: list[tuple[float, Pair]]
    verdict: VerdictDocument
    exact_value: Pair | None = None
    heuristic: bool = True

    @classmethod
    def from_trace(cls, trace: SeriesTrace) -> "TraceDocument":
        """Document for a trace."""
        return cls(
            kind=trace.kind.value,
            a=trace.params.a,
            b=trace.params.b,
            c=trace.params.c,
            checkpoints=[(float(x), scalar_pair(v)) for x, v in trace.checkpoints],
            verdict=VerdictDocument.from_verdict(trace.verdict),
            exact_value=None if trace.exact is None else scalar_pair(trace.exact),
            heuristic=trace.heuristic,
        )


class ErrorBody(BaseModel):
    """Structured error naming the violated condition."""

    type: str
    condition: str
    message: str


class ErrorDocument(BaseModel):
    """Output document of a failed run."""

    toolkit_version: str
    numeric_mode: str
    exercises: str = Field(description="Result the failed command exercises")
    seed: int
    error: ErrorBody


class Envelope(BaseModel):
    """Output document of a successful run."""

    toolkit_version: str
    numeric_mode: str
    exercises: str = Field(description="Result exercised by the command")
    seed: int
    result: dict[str, Any]
