"""Deterministic multi-agent swarm simulator.

GSO-selected communication domains, reputation-weighted behavior merging,
four-class threat classification, and adaptive per-agent alertness. The heavy
lifting lives in the compiled ``_core`` extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    AlertnessLevel,
    ConfigParseError,
    DegenerateAgreementError,
    EmptyNeighborhoodError,
    GsoParams,
    InvalidConfigError,
    SubjectMismatchError,
    ThreatLevel,
    UnknownReporterError,
    World,
    WorldConfig,
    __version__,
    assess_risk,
    classify_threat,
    distance,
    fleiss_kappa,
    inclusion_probabilities,
    load_config,
    merge_behavior_data,
    neighborhood,
    parse_config,
    run_experiment,
    select_communication_domain,
    update_alertness,
    update_domain_range,
    update_luciferin,
    update_reputation,
)
