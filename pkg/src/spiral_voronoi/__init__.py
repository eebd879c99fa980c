"""Voronoi tessellations of spiral point patterns and their polygon statistics."""

from .delaunay import Triangulation, delaunay
from .errors import (
    DegenerateInputError,
    DuplicatePointError,
    EmptyStatisticsError,
    InsufficientDataError,
    InternalError,
    ParameterError,
    ParseError,
    SpiralVoronoiError,
    SweepError,
)
from .seedgen import (
    EquidistantSpiralParams,
    ExternalDescriptor,
    LatticeDescriptor,
    LinearSpiralParams,
    SeedSet,
    TranslationDescriptor,
    bbox_offsets,
    gen_equidistant,
    gen_hex_lattice,
    gen_linear,
    gen_square_lattice,
    translate_tile,
)
from .stats import (
    CellFilterPolicy,
    aboav_report,
    analyze,
    defect_pairs,
    lewis_fit,
    polygon_histogram,
    shannon_entropy,
    voronoi_entropy,
)
from .sweep import SweepSchedule, run_sweep, trend_metrics
from .voronoi import VoronoiCell, VoronoiDiagram, Window, build_diagram, clip_to_window, default_window

__version__ = "0.1.0"
