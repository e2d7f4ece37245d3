"""Automata layer: finite-word DFAs/NFAs, monoid algebra, omega languages."""

from .finite import (  # noqa: F401
    Atom,
    Concat,
    Dfa,
    Empty,
    Eps,
    EpsilonBodyError,
    Nfa,
    Plus,
    RatExpr,
    Union,
    accepts,
    ambiguous_concat_lang,
    ambiguous_plus_lang,
    complement,
    determinize,
    dfa_to_ratexpr,
    difference,
    format_regex,
    intersection,
    language_equiv,
    minimize,
    opt,
    parse_regex,
    power,
    rat_to_dfa,
    regex_node_unambiguity,
    regex_to_nfa,
    star,
    union,
)
