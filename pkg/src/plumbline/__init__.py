"""Locally bipartitioned trees, associated links, tubing and sliceness certificates."""

from .knotdata import KnotRecord, clasp_chain, load_knot_csv
from .laurent import LaurentPoly
from .links import (LinkDiagram, ResourceError, amphichiral_evidence, associated_link,
                    canonical_pd, component_count, connected_sum, hopf_link, jones,
                    kauffman_bracket, linking_matrix, mirror, orient, reverse_component,
                    state_sum_bracket, unknot)
from .surfaces import (AbstractSurface, DomainComponent, ImmersedSurface, PlumbingTree,
                       SuitableEmbedding, embed_in_connected, embed_in_plumbing, lift_forest,
                       link_of_embedding, make_immersed_disc, make_plumbing, verify_embedding)
from .theorems import (Certificate, Manifold, certify, certify_norman, certify_slice_in_plumbing,
                       elliptic, en_bound, k3, k3_plumbing, verify_certificate, zero_sphere)
from .trees import (LBTree, Tree, bipartitions_from_bicolouring, canonical_code,
                    compatible_bicolouring, enumerate_lbtrees, is_isomorphic, validate_lbtree)
from .tubing import classify, euler_characteristic, excise, orient_result, tube

__version__ = "0.1.0"
