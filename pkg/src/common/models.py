# serializable records shared by the library and the cli
from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from typing import Dict, List, Optional

from common.errors import InputError


def rational_to_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def rational_to_float(value: Fraction) -> float:
    # 12 significant digits, report formatting only
    return float(f"{float(value):.12g}")


def parse_fraction(text: str) -> Fraction:
    """Parse '2/3', '1' or '0.75' exactly; never through a float."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact fraction: {text!r}")


@dataclass(frozen=True)
class ExtremaSummary:
    a_plus: int
    a_minus: int
    height: int
    max_jump: int

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class BoundReport:
    p: int
    q: int
    r: int
    alpha: int
    beta: int
    beta_star: int
    bound_a_plus: int
    bound_a_minus: int
    bound_new: int
    bound_bachman: int
    bound_beiter: int
    bound_bang: int
    exact_a_plus: Optional[int] = None
    exact_a_minus: Optional[int] = None
    exact_a: Optional[int] = None

    @property
    def tight(self) -> Optional[bool]:
        if self.exact_a is None:
            return None
        return self.exact_a == self.bound_new

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["tight"] = self.tight
        return data


@dataclass(frozen=True)
class DensitySummary:
    p: int
    c: Fraction
    empirical_fraction: Fraction
    closed_form_lower: Fraction

    def to_dict(self) -> Dict:
        return {
            "p": self.p,
            "c": rational_to_str(self.c),
            "empirical_fraction": rational_to_str(self.empirical_fraction),
            "empirical_fraction_float": rational_to_float(self.empirical_fraction),
            "closed_form_lower": rational_to_str(self.closed_form_lower),
            "closed_form_lower_float": rational_to_float(self.closed_form_lower),
        }


@dataclass
class SweepRow:
    # column order is the csv column order
    p: int
    q: int
    r: int
    deg: int
    alpha: int
    beta: int
    beta_star: int
    a_plus: int
    a_minus: int
    a: int
    max_jump: int
    bound_new: int
    bound_bachman: int
    bound_beiter: int
    bound_bang: int
    tight_flag: bool
    corollary_s_guarantee: Optional[int] = None
    elapsed_ms: Optional[float] = None

    @classmethod
    def columns(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> "SweepRow":
        return cls(**{name: data.get(name) for name in cls.columns()})


@dataclass
class CheckResult:
    check: str
    passed: int = 0
    failed: int = 0
    first_counterexample: Optional[str] = None

    def record(self, ok: bool, counterexample: str) -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if self.first_counterexample is None:
            self.first_counterexample = counterexample

    def merge(self, other: "CheckResult") -> None:
        self.passed += other.passed
        self.failed += other.failed
        if self.first_counterexample is None:
            self.first_counterexample = other.first_counterexample

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class RunConfig:
    command: str
    triple: Optional[tuple] = None
    pqr_limit: Optional[int] = None
    p_limit: Optional[int] = None
    thresholds: List[Fraction] = field(default_factory=list)
    output_format: str = "csv"
    output_path: Optional[str] = None
    worker_count: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.pqr_limit is not None and self.pqr_limit > 1 << 40:
            raise InputError(f"pqr limit {self.pqr_limit} exceeds 2^40")
        if self.worker_count < 1:
            raise InputError(f"worker count must be >= 1, got {self.worker_count}")

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["thresholds"] = [rational_to_str(c) for c in self.thresholds]
        return data


@dataclass
class BenchRow:
    p: int
    q: int
    r: int
    deg: int
    method: str
    repeats: int
    median_ms: float
    coefficients: int
    coefficients_per_s: float

    @classmethod
    def columns(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    def to_dict(self) -> Dict:
        return asdict(self)
