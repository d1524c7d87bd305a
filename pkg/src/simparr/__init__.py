"""Enumeration and analysis of simplicial arrangements of pseudolines."""
from .wiring import (AllowableSequence, IllegalMoveError, InvalidSizeError, MoveBoundsError,
                     MovePair, Violation, WiringError, WiringFragment, apply_move,
                     fragment_from_moves, is_complete, legal_moves, new_fragment,
                     recompute_fragment, validate_sequence)
from .cells import (CellComplex, InvariantVector, cell_complex, invariants, is_simplicial,
                    triangulation_graph, wiring_from_lines, wiring_invariants)
from .iso import (ArrangementRecord, Deduplicator, Fingerprint, automorphism_count, certificate,
                  dedup, fingerprint, isomorphic, projective_automorphism_count)
from .enumerator import (Beginning, EnumerationOptions, beginnings, check_obstructions,
                         enumerate_all, enumerate_from, enumerate_naive, is_near_pencil,
                         near_pencil)
from .stretch import (PappusWitness, Realization, delete_line, hasse_edges, pappus_obstruction,
                      realize_numeric)

__version__ = "0.1.0"
