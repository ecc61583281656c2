"""Pareto-efficiency toolkit for weight vectors of pairwise comparison
matrices: weighting methods, dominance digraphs, efficiency linear
programs, dominating-vector extraction, and a JSON service/CLI on top."""

__version__ = "0.1.0"
