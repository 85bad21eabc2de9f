"""Finite Miquelian Moebius planes M(q) and their Steiner chains.

The package models the plane built from GF(q^2) plus a point at infinity,
classifies mutual positions of circles, predicts Steiner chains on tangent,
intersecting and disjoint carrier pairs from closed-form criteria, constructs
the chains where a construction is known, and checks every claim against an
exhaustive brute-force oracle at small field sizes.
"""
from .gf import (FieldSpec, Fq, Fq2, field_make, sqrt_in_ext,
                 parse_fq, parse_fq2)
from .plane import (Point, Circle, MobiusMap, INFINITY_TEXT,
                    circle_through, enumerate_circles, all_circles,
                    enumerate_points, mobius_from_three_points,
                    parse_circle, parse_point)
from .position import MutualPosition, IdenticalCircles, classify, capacitance
from .chains import (SteinerChain, ChainPrediction, ChainFamily,
                     ValidationReport, validate_chain,
                     predict_tangent, predict_intersecting, predict_disjoint,
                     construct_tangent_chains, construct_intersecting_chains,
                     reduce_tangent_pair, reduce_intersecting_pair,
                     tangent_pencil, standard_tangent_pair,
                     standard_intersecting_circles,
                     NotTangent, NotIntersecting, NotDisjoint,
                     NoChains, DegenerateGamma)
from .oracle import (ChainCensus, ComparisonReport,
                     common_tangents_bruteforce, chain_census_bruteforce,
                     compare)

__all__ = [name for name in dir() if not name.startswith("_")]
