"""Area-conditioned planar Brownian loop simulation and verification."""

__version__ = "0.1.0"

from .geometry import (ConvexPolygon, Disk, Point2, RasterRegion, Segment,
                       chebyshev_inradius_convex, convex_hull, dist_point_segment,
                       enclosed_region, hull_arclength, inradius, longest_facet,
                       max_local_roughness, outradius, signed_area)
from .mcmc import ChainConfig, ChainState, ChainSummary, ProposalRecord, init_state, run_chain, step
from .observables import (ObservableRecord, PolygonalApprox, ScalingFit, measure,
                          normalized_increments, polygonal_approx, scaling_fit)
from .sampler import (LoopPath, RngStream, TimeGrid, bridge_max_cdf_complement,
                      chi2_pdf, sample_bridge, sample_loop)
from .verify import CheckReport, run_suite

__all__ = [
    "__version__",
    "ConvexPolygon", "Disk", "Point2", "RasterRegion", "Segment",
    "chebyshev_inradius_convex", "convex_hull", "dist_point_segment",
    "enclosed_region", "hull_arclength", "inradius", "longest_facet",
    "max_local_roughness", "outradius", "signed_area",
    "ChainConfig", "ChainState", "ChainSummary", "ProposalRecord",
    "init_state", "run_chain", "step",
    "ObservableRecord", "PolygonalApprox", "ScalingFit", "measure",
    "normalized_increments", "polygonal_approx", "scaling_fit",
    "LoopPath", "RngStream", "TimeGrid", "bridge_max_cdf_complement",
    "chi2_pdf", "sample_bridge", "sample_loop",
    "CheckReport", "run_suite",
]
