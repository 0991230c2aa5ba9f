# Pectoral segmentation methods
from .fuzzy import FuzzyParams, default_params, defuzzify, fuzzify, fuzzy_pectoral, intensify
from .hybrid import MethodId, ccl_with_fuzzy, ccl_with_line, fuzzy_with_line, run_method
from .labeling import Connectivity, LabelMap, ccl_pectoral, component_sizes, label_components
from .line import BoundaryTrace, LineSegment, fit_line, line_pectoral, rasterize_line, trace_boundary

__all__ = [
    "FuzzyParams",
    "default_params",
    "defuzzify",
    "fuzzify",
    "fuzzy_pectoral",
    "intensify",
    "MethodId",
    "ccl_with_fuzzy",
    "ccl_with_line",
    "fuzzy_with_line",
    "run_method",
    "Connectivity",
    "LabelMap",
    "ccl_pectoral",
    "component_sizes",
    "label_components",
    "BoundaryTrace",
    "LineSegment",
    "fit_line",
    "line_pectoral",
    "rasterize_line",
    "trace_boundary",
]
