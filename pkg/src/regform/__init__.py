"""Regular-form tree adjoining grammars: decision, extension, compilation, recognition, lexicalization."""
from .automaton import (
    CompiledState,
    TreeAutomaton,
    accepts,
    automaton_from_text,
    automaton_to_text,
    compile_regular_tag,
    enumerate_accepted,
    run_automaton,
)
from .errors import *  # noqa: F401,F403
from .formats import parse_cfg_file, parse_grammar_file, render_cfg, render_grammar
from .grammar import ProjectionMap, TagGrammar, Violation, eliminate_improper, validate_grammar
from .lexicalizer import (
    LEFTMOST,
    RIGHTMOST,
    Cfg,
    ExpansionStrategy,
    build_lcg,
    cfg_derivation_trees,
    cfg_to_regular_tag,
    cfg_to_tsg,
    close_substitution,
    lcg_aux_trees,
    lcg_initial_trees,
)
from .oracle import (
    DerivationBudget,
    enumerate_derived,
    enumerate_regular,
    is_derivable,
    is_regular_step,
    sample_language,
)
from .recognizer import recognize
from .spine_graph import (
    build_spine_graph,
    check_regular_form,
    extend_to_regular_form,
    simple_cycles,
    to_dot,
    trace_wfc,
)
from .trees import EPSILON, Tree, adjoin, format_tree, parse_tree, substitute
