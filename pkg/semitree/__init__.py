from .monoid import FiniteMonoid, GreenData, adjoin_identity, compute_green
from .rees import Rees, ReesView
from .rhodes import LChain, JChain, RhodesMonoid, Phi3, build_rh, \
                    build_rh_y, phi3_build, zeiger_encode
from .length import LengthTable, HLength, WeightFunction, \
                    check_length_axioms, holonomy_table, h_table
from .elliptic import RootedTree, Ray, EllipticMTree, build_uniform_tree, \
                      chiswell_build, d_chi, iso_check, to_dot
from .wreath import PartialMap, SequentialMap, WreathProduct, \
                    ell_wreath_iso, pointed_wreath_tree, generic_embed, \
                    wreath_length_table
from .zeiger import Symbol, ZeigerEmbedding, zeiger_embed, verify_embedding


version = "0.1"
