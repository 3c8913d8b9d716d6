"""Memoryless computation in permutation groups over A^n."""
from .analysis import (
    ALL,
    ComplexityTable,
    FastnessReport,
    complexity,
    complexity_table,
    conjugacy_complexity_check,
    fastness,
    internal_computability,
    lary_closure_counterexample,
    lary_group,
)
from .core import (
    Alphabet,
    CycleDecomposition,
    Instruction,
    Permutation,
    Program,
    arity,
    as_instruction,
    compose,
    conjugate,
    cycle_decomposition,
    enumerate_instructions,
    essential_variables,
    index_state,
    inverse,
    is_unary_permutation,
    state_index,
    updated_registers,
)
from .generators import GeneratorFamily, alt_generators, sym_generators, unary_obstruction, verify_family
from .graycode import GraySequence, coxeter_instructions, gray_sequence
from .groups import GroupChain, GroupIdentity, build_chain, elements, identify_group, is_2transitive, is_member, is_transitive
from .routing import BipartiteMultigraph, EdgeColoring, edge_color, perm_to_routing_graph
from .synthesis import evaluate, optimal_program, program_to_perm, synthesize

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "Alphabet",
    "BipartiteMultigraph",
    "ComplexityTable",
    "CycleDecomposition",
    "EdgeColoring",
    "FastnessReport",
    "GeneratorFamily",
    "GraySequence",
    "GroupChain",
    "GroupIdentity",
    "Instruction",
    "Permutation",
    "Program",
    "alt_generators",
    "arity",
    "as_instruction",
    "build_chain",
    "complexity",
    "complexity_table",
    "compose",
    "conjugacy_complexity_check",
    "conjugate",
    "coxeter_instructions",
    "cycle_decomposition",
    "edge_color",
    "elements",
    "enumerate_instructions",
    "essential_variables",
    "evaluate",
    "fastness",
    "gray_sequence",
    "identify_group",
    "index_state",
    "internal_computability",
    "inverse",
    "is_2transitive",
    "is_member",
    "is_transitive",
    "is_unary_permutation",
    "lary_closure_counterexample",
    "lary_group",
    "optimal_program",
    "perm_to_routing_graph",
    "program_to_perm",
    "state_index",
    "sym_generators",
    "synthesize",
    "unary_obstruction",
    "updated_registers",
    "verify_family",
    "__version__",
]
