"""
Analytic formulas checked against the dense oracle on small arrays.

Every check reports the largest absolute deviation it saw; a check passes
when that deviation stays under its tolerance.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence

import numpy as np

from src.models.encoding import EncodingScheme
from src.models.params import HoppingPattern, SystemParams
from src.physics.cavity import initial_state
from src.physics.dynamics import mode_system, populations, populations_uniform
from src.physics.encoding import decoding_targets, encoded_initial_state, transfer_probabilities
from src.physics.lattice import spectrum_residuals, staggered_spectrum, uniform_spectrum
from src.physics.oracle import build_hamiltonian, evolve_many, oracle_populations

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240611
DEFAULT_DRAWS = 50
DEFAULT_SIZES = tuple(range(2, 13))
ORACLE_TOLERANCE = 1e-9
LIMIT_TOLERANCE = 1e-10
LATTICE_SIZES = (2, 3, 5, 12, 51, 101, 401)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float
    cases: int

    @property
    def passed(self) -> bool:
        return math.isfinite(self.max_error) and self.max_error < self.tolerance


@dataclass(frozen=True)
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "max_error": c.max_error, "tolerance": c.tolerance,
                 "cases": c.cases, "passed": c.passed}
                for c in self.checks
            ]
        }


def random_params(rng: np.random.Generator, n_cavities: int, pattern: HoppingPattern) -> SystemParams:
    """lambda in [0, 5], xi in [0, 3], Delta in [-5, 5], beta in [0, pi/2]."""
    return SystemParams(
        n_cavities,
        coupling=rng.uniform(0.0, 5.0),
        hopping=rng.uniform(0.0, 3.0),
        detuning=rng.uniform(-5.0, 5.0),
        beta=rng.uniform(0.0, math.pi / 2),
        pattern=pattern
    )


def _draws(rng: np.random.Generator, sizes: Sequence[int], draws: int, staggered: bool) -> Iterator[SystemParams]:
    sizes = [n for n in sizes if n % 2 == 1 and n >= 3] if staggered else list(sizes)
    if not sizes:
        return
    for _ in range(draws):
        n = int(rng.choice(sizes))
        if staggered:
            pattern = HoppingPattern.staggered(rng.uniform(-0.9, 0.9))
        else:
            pattern = HoppingPattern.uniform()
        yield random_params(rng, n, pattern)


def _analytic(params: SystemParams, corrupt_coupling: Optional[float]) -> SystemParams:
    if corrupt_coupling is None:
        return params
    return params.with_changes(coupling=params.coupling * corrupt_coupling)


def check_lattice(sizes: Sequence[int] = LATTICE_SIZES, kappas=(-0.8, -0.2, 0.3)) -> CheckResult:
    worst = 0.0
    cases = 0
    for n in sizes:
        params = SystemParams(n, 1.0, 1.0)
        worst = max(worst, *spectrum_residuals(uniform_spectrum(n), params))
        cases += 1
        if n % 2 == 1 and n >= 3:
            for kappa in kappas:
                staggered = params.with_changes(pattern=HoppingPattern.staggered(kappa))
                worst = max(worst, *spectrum_residuals(staggered_spectrum(n, kappa), staggered))
                cases += 1
    return CheckResult("lattice residuals", worst, ORACLE_TOLERANCE, cases)


def check_populations(rng, sizes, draws, staggered: bool, corrupt_coupling=None) -> CheckResult:
    worst = 0.0
    cases = 0
    for params in _draws(rng, sizes, draws, staggered):
        times = np.sort(rng.uniform(0.0, 10.0, size=5))
        expected = oracle_populations(params, initial_state(params), times)
        actual = populations(_analytic(params, corrupt_coupling), times)
        worst = max(
            worst,
            float(np.max(np.abs(actual.p_atom - expected.p_atom))),
            float(np.max(np.abs(actual.p_photon - expected.p_photon)))
        )
        cases += 1
    name = "staggered populations vs oracle" if staggered else "uniform populations vs oracle"
    return CheckResult(name, worst, ORACLE_TOLERANCE, cases)


def check_spectra(rng, sizes, draws, corrupt_coupling=None) -> CheckResult:
    worst = 0.0
    cases = 0
    for staggered in (False, True):
        for params in _draws(rng, sizes, draws, staggered):
            _, eig = mode_system(_analytic(params, corrupt_coupling))
            expected = build_hamiltonian(params).eigenvalues
            worst = max(worst, float(np.max(np.abs(np.sort(eig.all_energies()) - expected))))
            cases += 1
    return CheckResult("block energies vs oracle", worst, ORACLE_TOLERANCE, cases)


def check_encoding(rng, sizes, draws, ks=(1, 2, 3), corrupt_coupling=None) -> CheckResult:
    worst = 0.0
    cases = 0
    for k in ks:
        fitting = [n for n in sizes if n >= 4 * k - 2]
        if not fitting:
            continue
        for params in _draws(rng, fitting, draws, staggered=False):
            scheme = EncodingScheme(k, params)
            times = np.sort(rng.uniform(0.0, 10.0, size=5))
            evolved = evolve_many(build_hamiltonian(params), encoded_initial_state(scheme), times)
            atom_target, photon_target = decoding_targets(scheme)
            expected_atom = np.abs(evolved @ atom_target.as_vector().conj()) ** 2
            expected_photon = np.abs(evolved @ photon_target.as_vector().conj()) ** 2
            actual_atom, actual_photon = transfer_probabilities(
                EncodingScheme(k, _analytic(params, corrupt_coupling)), times)
            worst = max(
                worst,
                float(np.max(np.abs(actual_atom - expected_atom))),
                float(np.max(np.abs(actual_photon - expected_photon)))
            )
            cases += 1
    return CheckResult("encoding overlaps vs oracle", worst, ORACLE_TOLERANCE, cases)


def check_kappa_zero(rng, sizes, draws) -> CheckResult:
    worst = 0.0
    cases = 0
    for params in _draws(rng, sizes, draws, staggered=True):
        uniform = params.with_changes(pattern=HoppingPattern.uniform())
        flat = params.with_changes(pattern=HoppingPattern.staggered(0.0))
        times = np.linspace(0.0, 10.0, 11)
        a = populations(flat, times)
        b = populations_uniform(uniform, times)
        worst = max(worst, float(np.max(np.abs(a.p_atom - b.p_atom))), float(np.max(np.abs(a.p_photon - b.p_photon))))
        cases += 1
    return CheckResult("kappa=0 staggered vs uniform", worst, LIMIT_TOLERANCE, cases)


def run_verification(
        sizes: Sequence[int] = DEFAULT_SIZES,
        draws: int = DEFAULT_DRAWS,
        seed: int = DEFAULT_SEED,
        corrupt_coupling: Optional[float] = None) -> VerificationReport:
    """
    The full suite. corrupt_coupling multiplies lambda in every analytic path
    (never in the oracle) so the suite can be seen to fail.
    """
    rng = np.random.default_rng(seed)
    checks = [
        check_lattice(),
        check_populations(rng, sizes, draws, staggered=False, corrupt_coupling=corrupt_coupling),
        check_populations(rng, sizes, draws, staggered=True, corrupt_coupling=corrupt_coupling),
        check_spectra(rng, sizes, draws, corrupt_coupling=corrupt_coupling),
        check_encoding(rng, sizes, draws, corrupt_coupling=corrupt_coupling),
        check_kappa_zero(rng, sizes, draws),
    ]
    for check in checks:
        logger.info("%s: max error %.3g over %d cases", check.name, check.max_error, check.cases)
    return VerificationReport(checks)
