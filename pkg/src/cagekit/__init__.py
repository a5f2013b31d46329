"""Finite-field constructions of girth-8 cages and an exact verifier."""

from .construct import (Stage, build_bq, build_gamma, build_gamma_dual, build_hq,
                        build_staged, check_isomorphism, sigma)
from .dominating import (build_pds, check_matching, closed_neighborhood,
                         common_second_neighborhood, remove_pds, verify_pds)
from .field import FieldElem, FieldSpec, NotPrimePower, make_field
from .graph import (BipartiteGraph, VerifyReport, degree_profile, diameter, distance,
                    girth, is_bipartite_consistent, moore_bound, verify)
from .labels import RHO, Label, LabelCodec

__version__ = "0.1.0"
