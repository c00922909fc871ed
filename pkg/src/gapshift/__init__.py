"""Exact and numerical tools for coloured gap shifts.

Symbol 0 is neutral; symbol ``s >= 1`` has colour ``ceil(s / nu)``. Coloured
blocks of adjacent colours must be separated by enough zeros, and different
colours may never touch. See :mod:`gapshift.core` for the parameters.
"""

from .core import (BlockDecomposition, ColorBlock, InvalidSymbolError, ShiftParams, ZeroRun,
                   decompose, format_word, parse_word)
from .enumeration import (arrangements_P, bicolored_count, closed_form_count, count_automaton,
                          count_brute, count_dp, count_series, entropy_estimate, gap_placements_Q)
from .language import GapAutomaton, finite_point_admissible, is_admissible, sample_admissible
from .measures import BernoulliMeasure, MarkovMeasure, empirical_block_entropy, sample_path
from .mixing import connecting_word, minimal_mixing_gap
from .pressure import (ExtendedPotential, Potential, base_pressure, equilibrium_states_report,
                       evaluate_g, partition_function, required_tau, variation_profile)

__version__ = "0.1.0"
