"""Python front end of the sparse Hamiltonian compiler."""

import json

from ._core import (
    CompileResult,
    Hamiltonian,
    HsimError,
    ParseError,
    PreconditionViolated,
    StageError,
    chain_constants,
    code_hamiltonian,
    end_to_end_correlation,
    gadget_residuals,
    gentle_measurement,
    hw0,
    hw0_gap,
    overlap,
    policy_chain,
    random_sparse,
    w_state,
)
from ._core import compile as _compile

__all__ = [
    "CompileResult",
    "Hamiltonian",
    "HsimError",
    "ParseError",
    "PreconditionViolated",
    "StageError",
    "chain_constants",
    "code_hamiltonian",
    "compile",
    "end_to_end_correlation",
    "gadget_residuals",
    "gentle_measurement",
    "hw0",
    "hw0_gap",
    "overlap",
    "policy_chain",
    "random_sparse",
    "w_state",
]


def compile(hamiltonian, epsilon=0.1, eta=0.1, c_n=16.0):
    """Compile and return (simulator, report, layout, certificates) with the JSON parts decoded."""
    if isinstance(hamiltonian, str):
        hamiltonian = Hamiltonian.from_text(hamiltonian)
    r = _compile(hamiltonian, epsilon, eta, c_n)
    return r.simulator, json.loads(r.report_json), json.loads(r.layout_json), json.loads(r.certificates_json)
