"""Second-order-section cascades and the recursive difference equation.

Coefficients follow the usual transfer-function convention

    H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)

so a section computes ``y[m] = b0 x[m] + b1 x[m-1] + b2 x[m-2] - a1 y[m-1] - a2 y[m-2]``.
A feedback coefficient written with a plus sign in the recursion is the
negation of the stored ``a1``/``a2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConjugateSymmetryError, StateShapeError
from .transform import DigitalFilter

_CONJ_TOL = 1e-9


@dataclass(frozen=True)
class SOSCascade:
    """Rows of ``[b0, b1, b2, 1, a1, a2]``; ``overall_gain`` scales the first section's input."""

    sections: np.ndarray
    overall_gain: float = 1.0
    sample_rate: float = 8000.0

    def __post_init__(self):
        sos = np.array(self.sections, dtype=float).reshape(-1, 6)
        if np.any(sos[:, 3] != 1.0):
            raise ValueError("section a0 coefficients must be 1")
        sos.setflags(write=False)
        object.__setattr__(self, "sections", sos)
        object.__setattr__(self, "overall_gain", float(self.overall_gain))

    def __len__(self) -> int:
        return len(self.sections)


@dataclass
class FilterState:
    """Direct-form II transposed delay registers, two per section."""

    registers: np.ndarray
    sample_rate: float = 8000.0

    @classmethod
    def for_cascade(cls, cascade: SOSCascade) -> FilterState:
        return cls(np.zeros((len(cascade), 2)), cascade.sample_rate)

    def reset(self) -> None:
        self.registers[:] = 0.0


def _pair_conjugates(roots: np.ndarray):
    """Split into (upper-half-plane representatives, real roots)."""
    scale = np.maximum(1.0, np.abs(roots))
    is_real = np.abs(roots.imag) <= _CONJ_TOL * scale
    reals = list(roots[is_real].real)
    upper = [r for r in roots[~is_real] if r.imag > 0]
    lower = [r for r in roots[~is_real] if r.imag < 0]
    if len(upper) != len(lower):
        raise ConjugateSymmetryError("complex roots do not come in conjugate pairs")
    reps = []
    for r in upper:
        j = int(np.argmin([abs(r - q.conjugate()) for q in lower]))
        q = lower.pop(j)
        if abs(r - q.conjugate()) > _CONJ_TOL * max(1.0, abs(r)) * 1e3:
            raise ConjugateSymmetryError(f"root {r} has no conjugate partner")
        reps.append(0.5 * (r + q.conjugate()))
    return reps, reals


def _section_row(poles: list, zeros: list) -> np.ndarray:
    m, d = len(poles), len(zeros)
    a = np.real(np.poly(poles)) if m else np.array([1.0])
    b = np.real(np.poly(zeros)) if d else np.array([1.0])
    b = np.concatenate([np.zeros(max(m - d, 0)), b])
    row = np.zeros(6)
    row[: len(b)] = b
    row[3 : 3 + len(a)] = a
    return row


def zpk_to_sos(filt: DigitalFilter) -> SOSCascade:
    """Group a digital zpk filter into real second-order sections.

    Pole groups (conjugate pairs, or two real poles) are visited by
    descending modulus and take the nearest remaining zeros; the cascade is
    then ordered by ascending pole modulus.  An odd real pole becomes a
    first-order section (``b2 = a2 = 0``).
    """
    poles = np.asarray(filt.poles, dtype=complex).reshape(-1)
    zeros = np.asarray(filt.zeros, dtype=complex).reshape(-1)
    if len(zeros) > len(poles):
        # causal realization: surplus zeros get delay poles at the origin
        poles = np.concatenate([poles, np.zeros(len(zeros) - len(poles), dtype=complex)])

    pole_pairs, pole_reals = _pair_conjugates(poles)
    zero_pairs, zero_reals = _pair_conjugates(zeros)

    groups = [[p, p.conjugate()] for p in pole_pairs]
    pole_reals.sort(key=abs, reverse=True)
    while len(pole_reals) >= 2:
        groups.append([complex(pole_reals.pop(0)), complex(pole_reals.pop(0))])
    reserved: list[complex] = []
    if pole_reals:
        lone = complex(pole_reals.pop())
        groups.append([lone])
        # the first-order section can only hold a real zero, so claim it before
        # the pairs do; otherwise a zero pair could be stranded
        if zero_reals:
            j = int(np.argmin([abs(lone - r) for r in zero_reals]))
            reserved = [complex(zero_reals.pop(j))]
    groups.sort(key=lambda g: max(abs(p) for p in g), reverse=True)

    rows = []
    for group in groups:
        target = group[0]
        if len(group) == 1:
            rows.append(_section_row(group, reserved))
            continue
        chosen: list[complex] = []
        candidates = [(abs(target - z), "pair", i) for i, z in enumerate(zero_pairs)]
        candidates += [(abs(target - z), "real", i) for i, z in enumerate(zero_reals)]
        if candidates:
            _, kind, i = min(candidates)
            if kind == "pair":
                z = zero_pairs.pop(i)
                chosen = [z, z.conjugate()]
            else:
                chosen = [complex(zero_reals.pop(i))]
                if zero_reals:
                    j = int(np.argmin([abs(target - r) for r in zero_reals]))
                    chosen.append(complex(zero_reals.pop(j)))
        rows.append(_section_row(group, chosen))

    leftover = [z for pair in zero_pairs for z in (pair, pair.conjugate())] + [complex(r) for r in zero_reals]
    if leftover:
        raise ConjugateSymmetryError(f"{len(leftover)} zeros could not be assigned to a section")
    if not rows:
        rows.append(np.array([1.0, 0.0, 0.0, 1.0, 0.0, 0.0]))
    return SOSCascade(np.array(rows[::-1]), float(filt.gain), filt.sample_rate)


def section_roots(cascade: SOSCascade) -> tuple[np.ndarray, np.ndarray]:
    """Zeros and poles of the cascade, section by section.

    Trailing coefficients that vanish in both numerator and denominator are
    common factors of ``z`` and cancel, so an identity section contributes
    nothing.
    """
    zeros, poles = [], []
    for b0, b1, b2, _, a1, a2 in cascade.sections:
        degree = 2 if (b2 != 0 or a2 != 0) else 1 if (b1 != 0 or a1 != 0) else 0
        num = np.trim_zeros(np.array([b0, b1, b2][: degree + 1]), "f")
        den = np.array([1.0, a1, a2][: degree + 1])
        if len(num) > 1:
            zeros.extend(np.roots(num))
        if len(den) > 1:
            poles.extend(np.roots(den))
    return np.array(zeros, dtype=complex), np.array(poles, dtype=complex)


def filter_stream(state: FilterState, cascade: SOSCascade, samples) -> np.ndarray:
    """Run ``samples`` through the cascade, updating ``state`` in place.

    Splitting a signal into chunks and feeding them in order gives the same
    output, bit for bit, as one call on the whole signal.
    """
    regs = state.registers
    if regs.shape != (len(cascade), 2):
        raise StateShapeError(f"state has shape {regs.shape}, cascade needs ({len(cascade)}, 2)")
    g = cascade.overall_gain
    x = [g * v for v in np.asarray(samples, dtype=float).tolist()]
    for i, (b0, b1, b2, _, a1, a2) in enumerate(cascade.sections.tolist()):
        s1, s2 = regs[i].tolist()
        out = []
        append = out.append
        for v in x:
            y = b0 * v + s1
            s1 = b1 * v - a1 * y + s2
            s2 = b2 * v - a2 * y
            append(y)
        regs[i, 0] = s1
        regs[i, 1] = s2
        x = out
    return np.array(x, dtype=float)


def impulse_response(cascade: SOSCascade, length: int) -> np.ndarray:
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    impulse = np.zeros(length)
    impulse[0] = 1.0
    return filter_stream(FilterState.for_cascade(cascade), cascade, impulse)


@dataclass(frozen=True)
class Stability:
    stable: bool
    margin: float = field(default=0.0)

    def __bool__(self) -> bool:
        return self.stable


def is_stable(filt) -> Stability:
    """Stable iff every pole lies strictly inside the unit circle; margin is ``1 - max|pole|``."""
    if isinstance(filt, SOSCascade):
        _, poles = section_roots(filt)
    else:
        poles = np.asarray(filt.poles, dtype=complex)
    radius = float(np.max(np.abs(poles))) if len(poles) else 0.0
    return Stability(radius < 1.0, max(0.0, 1.0 - radius))
