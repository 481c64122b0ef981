"""
Orchestration of the library for the command line: load an arrangement, then run
structural computations or batches of point counts with their polynomial-count
verdicts.
"""
from __future__ import annotations

import re
import sys
from typing import List, Literal, Optional

from pydantic import BaseModel
from tqdm import tqdm

from milnorcount.arrangement.arrangement import CentralArrangement, parse_arrangement
from milnorcount.arrangement.builtins import builtin_arrangement
from milnorcount.arrangement.serialized_data import SerializedArrangement
from milnorcount.config import CountingConfig
from milnorcount.counting.ffcount import (
    CountResult,
    bad_primes,
    count_affine_complement,
    count_affine_complement_factored,
    count_milnor_fiber_bruteforce,
    count_milnor_fiber_factored,
    count_projective_complement,
)
from milnorcount.counting.field import PrimeField, primes_in_range
from milnorcount.counting.katz import Report, polynomial_count_check
from milnorcount.exceptions import PreconditionError
from milnorcount.lattice.lattice import (
    build_lattice,
    characteristic_polynomial,
    projective_count_polynomial,
)
from milnorcount.lattice.polynomial import IntPolynomial
from milnorcount.logger import logger
from milnorcount.model.decompose import Decomposition, irreducible_decomposition
from milnorcount.model.hodge import katz_candidate, milnor_fiber_table

Target = Literal["milnor", "complement", "projective"]
CountMethod = Literal["brute", "factored", "fast"]


class CountReport(BaseModel):
    """
    Point counts of one variety attached to an arrangement over a batch of primes,
    with the primes skipped for being bad and the verdict against the candidate
    count polynomial when one was requested.
    """

    arrangement: Optional[str]
    target: Target
    results: List[CountResult]
    skipped: List[int]
    report: Optional[Report] = None


def load_arrangement(source: str) -> CentralArrangement:
    """
    Load an arrangement from a "@name" built-in or a .json/.yaml document.
    """
    if source.startswith("@"):
        return builtin_arrangement(source)
    return parse_arrangement(SerializedArrangement.from_file(source))


def parse_primes(text: str) -> List[int]:
    """
    "a..b" for every prime in the closed range, or a comma-separated list of primes.
    """
    text = text.strip()
    interval = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if interval:
        return primes_in_range(int(interval[1]), int(interval[2]))
    try:
        primes = [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise PreconditionError(f"Invalid prime list {text!r}: expected a..b or p1,p2,...")
    for p in primes:
        PrimeField(p)
    return primes


def candidate_polynomial(arrangement: CentralArrangement, target: Target) -> IntPolynomial:
    """
    The only polynomial that may count the chosen variety: the characteristic
    polynomial for the affine complement, its quotient by t - 1 for the projective
    complement and the Katz candidate of the Milnor fiber table otherwise.
    """
    if target == "complement":
        return characteristic_polynomial(build_lattice(arrangement))
    if target == "projective":
        return projective_count_polynomial(build_lattice(arrangement))
    return katz_candidate(milnor_fiber_table(irreducible_decomposition(arrangement)))


def count_at_prime(
    arrangement: CentralArrangement,
    decomposition: Optional[Decomposition],
    field: PrimeField,
    target: Target,
    method: CountMethod,
    config: CountingConfig,
) -> CountResult:
    fast = method == "fast"
    if target == "milnor":
        if method == "brute":
            return count_milnor_fiber_bruteforce(arrangement, field, config)
        return count_milnor_fiber_factored(decomposition, field, config, fast)
    if method == "brute" and target == "complement":
        return count_affine_complement(arrangement, field, config)
    if method == "brute":
        return count_projective_complement(arrangement, field, config)
    result = count_affine_complement_factored(decomposition, field, config, fast)
    if target == "projective":
        return result.model_copy(update={"value": result.value // (field.p - 1)})
    return result


def count_at_primes(
    arrangement: CentralArrangement,
    primes: List[int],
    target: Target = "milnor",
    method: CountMethod = "fast",
    config: Optional[CountingConfig] = None,
    check_polynomial_count: bool = False,
) -> CountReport:
    """
    Count points over F_p for every good prime of the list, bad primes being skipped
    with a notice. With `check_polynomial_count`, the counts are compared with the
    candidate polynomial of the variety.
    """
    config = config if config is not None else CountingConfig()
    # brute force needs no essential input
    decomposition = irreducible_decomposition(arrangement) if method != "brute" else None
    bad = bad_primes(arrangement)
    results, skipped = [], []
    for p in tqdm(primes, disable=not config.progress, file=sys.stderr, desc="primes"):
        if p in bad:
            logger.warning(f"Skipping bad prime {p} for {arrangement.name or 'arrangement'}.")
            skipped.append(p)
            continue
        field = PrimeField(p)
        results.append(count_at_prime(arrangement, decomposition, field, target, method, config))
    report = None
    if check_polynomial_count:
        report = polynomial_count_check(results, candidate_polynomial(arrangement, target), bad)
    return CountReport(
        arrangement=arrangement.name,
        target=target,
        results=results,
        skipped=skipped,
        report=report,
    )
