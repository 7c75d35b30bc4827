"""trusslab: 2D truss analysis, steel angle design and optimization."""

__version__ = "0.1.0"
