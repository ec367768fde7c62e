"""
report and command models shared by the library and the cli
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from core.exactnum import format_rational


@dataclass
class IdentityReport:
    """one exact identity: both sides rendered in full"""
    name: str
    passed: bool
    lhs: str
    rhs: str
    detail: str = ''

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'detail': self.detail,
            'pass': self.passed,
        }


@dataclass
class FGLAxiomReport:
    """formal group law axioms, one flag each"""
    order: int
    associativity: bool
    commutativity: bool
    unit: bool
    linearization: bool
    failures: Dict[str, Tuple[str, str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.associativity and self.commutativity and self.unit and self.linearization

    def as_identities(self) -> List[IdentityReport]:
        """flatten into identity reports (both sides only kept for failures)"""
        reports = []
        for axiom in ('associativity', 'commutativity', 'unit', 'linearization'):
            lhs, rhs = self.failures.get(axiom, ('', ''))
            reports.append(IdentityReport(
                name=f"fgl-{axiom}",
                passed=getattr(self, axiom),
                lhs=lhs,
                rhs=rhs,
                detail=f"order={self.order}",
            ))
        return reports

    def to_dict(self) -> Dict:
        return {
            'order': self.order,
            'associativity': self.associativity,
            'commutativity': self.commutativity,
            'unit': self.unit,
            'linearization': self.linearization,
            'pass': self.passed,
        }


@dataclass
class CobordismClass:
    """homogeneous element of the lazard ring standing for a cobordism class"""
    value: 'object'
    degree: int

    def __str__(self):
        return str(self.value)


@dataclass
class DecompositionReport:
    """coordinates of a class in the milnor basis and the chern numbers behind them"""
    degree: int
    basis: List[Tuple[int, ...]]  # partitions, rendered "2+1"
    coordinates: List[Fraction]
    residual: Fraction
    chern_input: Dict[Tuple[int, ...], Fraction]
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    passed: bool = True

    def to_dict(self) -> Dict:
        payload = {
            'degree': self.degree,
            'basis': [str(p) for p in self.basis],
            'coordinates': [format_rational(c) for c in self.coordinates],
            'residual': format_rational(self.residual),
            'chern_input': {str(p): format_rational(v) for p, v in self.chern_input.items()},
        }
        if self.lhs is not None:
            payload['lhs'] = self.lhs
        if self.rhs is not None:
            payload['rhs'] = self.rhs
        payload['pass'] = self.passed
        return payload


@dataclass
class RiemannRochReport:
    """hrr / hrrc check: integral side against the cobordism side"""
    name: str
    variety: str
    bundles: List[str]
    order: int
    lhs: 'object'
    rhs: 'object'
    decomposition: Optional[DecompositionReport] = None

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def as_identity(self) -> IdentityReport:
        target = self.variety if not self.bundles else f"{self.variety} {' '.join(self.bundles)}"
        return IdentityReport(
            name=f"{self.name}[{target}]",
            passed=self.passed,
            lhs=str(self.lhs),
            rhs=str(self.rhs),
            detail=f"order={self.order}",
        )

    def to_dict(self) -> Dict:
        payload = self.decomposition.to_dict() if self.decomposition else {}
        payload.update({
            'variety': self.variety,
            'bundles': list(self.bundles),
            'order': self.order,
            'lhs': str(self.lhs),
            'rhs': str(self.rhs),
            'pass': self.passed,
        })
        return payload


@dataclass
class Command:
    """validated cli invocation"""
    subcommand: str
    order: int = 8
    variety: Optional[str] = None
    bundles: List[str] = field(default_factory=list)
    spec: Optional[str] = None
    format: str = 'text'
