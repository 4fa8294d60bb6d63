"""Egalitarian values for cooperative games with a priori unions, with exact arithmetic."""

from .axioms import (
    AxiomId,
    AxiomReport,
    Verdict,
    Witness,
    axiom_matrix,
    check,
    check_bcpa,
    check_bcu,
    check_block_order,
    check_coalitional,
    check_dmiviu,
    check_efficiency,
    check_eiu,
    check_qgp,
    check_qstar_gp,
    recheck,
    search_counterexample,
)
from .base import Allocation, banzhaf, ed, esd, shapley
from .coalitional import (
    CoalitionalValueId,
    banzhaf_owen,
    ed_u,
    esd1_u,
    esd2_u,
    esd3_u,
    esd4_correction,
    esd4_u,
    esd5_correction,
    esd5_u,
    esd5_weight,
    modified_game,
    owen,
    owen_procedure,
    reduced_game,
)
from .game import (
    Game,
    UnionGame,
    bcpa_reduction,
    block_of,
    make_game,
    quotient_game,
    quotient_star_game,
    restrict_to,
    split_off,
    trivial_partition,
    zero_normalized,
)
from .gamefile import GameDocument, parse_game, serialize_game

__version__ = "0.1.0"
