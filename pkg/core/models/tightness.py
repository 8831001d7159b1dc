from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

from core.analytic import RadialProfile
from core.cube import CubeFunction
from core.enums import EvaluationMode, TightnessKind


@dataclass(frozen=True)
class TightnessResult:
	"""One sphere-mixture instance and how close it comes to its bound.

	renyi2: achieved = Ent_2(T_eps f) / n, target = psi_{2,q}(x, eps).
	nhc: achieved = the exponent p with ||f||_p = ||T_eps f||_2,
	target = kappa_{2,q}(x, eps).
	slack is always per coordinate and nonnegative when the bound holds.
	delta is the per-coordinate log2 correction that brings Ent_q(f)/n under x;
	blend is the weight of the constant function mixed in when that is not enough.
	"""

	kind: TightnessKind
	mode: EvaluationMode
	n: int
	q: float
	eps: float
	x: float
	profile: RadialProfile
	entropy_rate: float
	achieved: float
	target: float
	slack: float
	delta: Optional[float] = None
	kappa: Optional[float] = None
	blend: float = 0.0
	function: Optional[CubeFunction] = None

	def to_dict(self) -> Dict[str, Any]:
		return {
			"kind": self.kind.value,
			"mode": self.mode.value,
			"n": self.n,
			"q": self.q,
			"eps": self.eps,
			"x": self.x,
			"profile": self.profile.to_dict(),
			"entropy_rate": self.entropy_rate,
			"achieved": self.achieved,
			"target": self.target,
			"slack": self.slack,
			"delta": self.delta,
			"kappa": self.kappa,
			"blend": self.blend,
		}
