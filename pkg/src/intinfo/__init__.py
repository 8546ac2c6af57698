"""Exact interaction information and causal orientation of three-variable networks."""

from .causal_strength import StrengthReport, causal_strength, interventional_distribution, strength_report
from .dist_core import (
    BayesNet,
    Cpt,
    JointDistribution,
    StructureError,
    VarSpec,
    conditional,
    joint_from_bayesnet,
    kl_divergence,
    marginalize,
    product_of_marginals,
)
from .info_measures import (
    InfoProfile,
    conditional_mutual_information,
    entropy,
    info_profile,
    interaction_forms3,
    interaction_information,
    mutual_information,
    yeung_bounds,
)
from .structure_inference import (
    P2Class,
    TriangleRoles,
    TriangleVerdict,
    classify_p2,
    classify_triangle,
    classify_triangle_with_root,
    roles_from_dag,
    check_weak_arrow,
)

__version__ = "0.1.0"
