"""Rainbow tree embeddings in properly edge-colored graphs and hypercubes."""

__version__ = "0.1.0"
