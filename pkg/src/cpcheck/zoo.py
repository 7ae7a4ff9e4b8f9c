"""Named channels used by the tests, the docs and ``cpcheck zoo``."""
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

import numpy as np

from .channels import KrausSet, SuperOperator, superop_from_function, superop_from_kraus
from .errors import ParameterOutOfRange, SingularNormalization
from .linalg import _rng, hermitian_eigen

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

# remix taking {I, E_12, E_21, sigma_z} Kraus matrices to the Pauli set
PAULI_REMIX = np.array(
    [
        [1, 0, 0, 0],
        [0, 1 / np.sqrt(2), -1j / np.sqrt(2), 0],
        [0, 1 / np.sqrt(2), 1j / np.sqrt(2), 0],
        [0, 0, 0, 1],
    ],
    dtype=np.complex128,
)


def transpose_map(n: int) -> SuperOperator:
    if n < 2:
        raise ParameterOutOfRange("transpose needs n >= 2")
    return superop_from_function(lambda x: x.T, n)


def depolarizing(lam: float, mu: float) -> SuperOperator:
    """Qubit map ``X -> (lam/2) tr(X) I + mu X``; CP iff ``lam >= 0`` and ``lam/2 + 2 mu >= 0``."""
    lam, mu = float(lam), float(mu)
    return superop_from_function(lambda x: lam / 2 * np.trace(x) * IDENTITY_2 + mu * x, 2)


def identity_channel(n: int) -> SuperOperator:
    if n < 1:
        raise ParameterOutOfRange("identity needs n >= 1")
    return SuperOperator(n, np.eye(n * n, dtype=np.complex128))


def dephasing_kraus(p: float) -> KrausSet:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange(f"dephasing probability {p} outside [0, 1]")
    return KrausSet(2, (np.sqrt(1 - p) * IDENTITY_2, np.sqrt(p) * SIGMA_Z))


def dephasing(p: float) -> SuperOperator:
    return superop_from_kraus(dephasing_kraus(p))


def random_cptp(n: int, k: int, seed: int, max_attempts: int = 8) -> KrausSet:
    """``k`` Ginibre matrices whitened by ``(sum_p G_p^dagger G_p)^{-1/2}``."""
    if n < 2 or k < 1:
        raise ParameterOutOfRange("random_cptp needs n >= 2 and k >= 1")
    rng = _rng(seed)
    for _ in range(max_attempts):
        g = rng.standard_normal((k, n, n)) + 1j * rng.standard_normal((k, n, n))
        total = np.einsum("pji,pjk->ik", g.conj(), g)
        eig = hermitian_eigen(total)
        w = eig.eigenvalues
        if w[-1] <= 1e-12 * w[0]:
            continue
        p = eig.eigenvectors
        inv_sqrt = (p / np.sqrt(w)) @ p.conj().T
        return KrausSet(n, tuple(gp @ inv_sqrt for gp in g))
    raise SingularNormalization(f"could not normalize {k} random {n}x{n} matrices in {max_attempts} attempts")


@dataclass(frozen=True, eq=False)
class ZooEntry:
    name: str
    parameters: Dict[str, float]
    channel: SuperOperator


@dataclass(frozen=True)
class _Spec:
    build: Callable[..., SuperOperator]
    params: Tuple[Tuple[str, type], ...]
    defaults: Dict[str, float] = field(default_factory=dict)


REGISTRY: Dict[str, _Spec] = {
    "transpose": _Spec(transpose_map, (("n", int),), {"n": 2}),
    "depolarizing": _Spec(depolarizing, (("lambda", float), ("mu", float)), {"lambda": 0.5, "mu": 0.5}),
    "identity": _Spec(identity_channel, (("n", int),), {"n": 2}),
    "dephasing": _Spec(dephasing, (("p", float),), {"p": 0.5}),
    "random_cptp": _Spec(
        lambda n, k, seed: superop_from_kraus(random_cptp(n, k, seed)),
        (("n", int), ("k", int), ("seed", int)),
        {"n": 2, "k": 2, "seed": 0},
    ),
}


def usage() -> str:
    lines = []
    for name, spec in REGISTRY.items():
        args = " ".join(f"{p}=<{t.__name__}>" for p, t in spec.params)
        lines.append(f"  {name} {args}")
    return "\n".join(lines)


def make(name: str, **params) -> ZooEntry:
    """Build a zoo channel by name; missing parameters take their defaults.

    Parameter values may be strings (as parsed from the command line).
    """
    if name not in REGISTRY:
        raise KeyError(f"unknown zoo channel {name!r}")
    spec = REGISTRY[name]
    known = {p for p, _ in spec.params}
    extra = set(params) - known
    if extra:
        raise ParameterOutOfRange(f"unknown parameter(s) for {name}: {', '.join(sorted(extra))}")
    values = {}
    for pname, ptype in spec.params:
        raw = params.get(pname, spec.defaults.get(pname))
        try:
            values[pname] = ptype(raw)
        except (TypeError, ValueError):
            raise ParameterOutOfRange(f"parameter {pname}={raw!r} is not a valid {ptype.__name__}") from None
        if ptype is float and not np.isfinite(values[pname]):
            raise ParameterOutOfRange(f"parameter {pname} must be finite")
    if name == "depolarizing":
        channel = spec.build(values["lambda"], values["mu"])
    else:
        channel = spec.build(**values)
    return ZooEntry(name, {k: float(v) for k, v in values.items()}, channel)
