"""Degree conditions, matching-compatible cycle machinery and exact oracles
for hamiltonicity of balanced bipartite digraphs."""

from .digraph import (
    MAX_A,
    BipartiteDigraph,
    DegreeProfile,
    DigraphError,
    InducedSubdigraph,
    ParseError,
    arc_order,
    degree,
    dumps_json,
    dumps_text,
    from_arc_bitmask,
    induced,
    is_strongly_connected,
    loads_auto,
    loads_json,
    loads_text,
    neighborhood,
    new_digraph,
    vertex_id,
    vertex_label,
)
from .matching import (
    ExpansionReport,
    HallViolator,
    Matching,
    all_complete_matchings,
    check_expansion,
    find_complete_matching,
)
from .compat import (
    CapExceeded,
    ContractedDigraph,
    CycleCertificate,
    PathCertificate,
    compatible_path,
    compatible_reach_set,
    contract,
    longest_compatible_cycle,
)
from .conditions import (
    ConditionReport,
    check_condition_A,
    check_condition_M,
    check_half_degrees,
    check_min_degree,
    check_woodall_bipartite,
)
from .hamilton import (
    ORACLE_CAP,
    BridgeTerminal,
    Decomposition,
    DecompositionError,
    HamiltonResult,
    MergePlan,
    decompose,
    find_bridge_path,
    find_hamiltonian_cycle,
    oracle_cycle,
    oracle_hamiltonian,
    splice,
    verify_cycle,
)
from .generators import (
    canonical_form,
    enumerate_all,
    fig1_digraph,
    gen_complete,
    gen_Dak,
    gen_Dprime,
    gen_random,
    gen_random_M,
    gen_random_M_log,
    gen_Tak,
)
from .report import SurveyResult, render_figures, survey, write_survey_csv

__version__ = "0.1.0"
