"""Co-induced group actions, independence sets and maximal pattern entropy."""
from .coinduction import CoinducedSystem, DihedralPairSystem, coinduce, section_transport
from .dsl import parse_spec, print_spec
from .entropy import (covering_number, h_star_report, join_pullback, pattern_complexity,
                      seq_entropy_sample, weak_mixing_witness)
from .errors import BudgetError, CoinductError, SpecError
from .groups import (CosetSpace, CyclicGroup, DirectProduct, InfiniteDihedral, Integers,
                     Multiples, ProductSubgroup, TrivialSubgroup, WholeSubgroup, ball,
                     neumann_witness, normal_core, z_factor)
from .independence import (Certificate, RefutationRecord, coordinate_project,
                           independence_fold, is_independent, it_witness_stream,
                           max_independence, refute)
from .systems import (SFT, Cylinder, FullShift, PointSet, Pre, Product, ProductSystem,
                      TrivialFinite, Whole, make_query)
from .x1 import JumpTable, Nbhd, X1System, build_jump_table

__version__ = "0.1.0"
