"""Book embeddings of k-map graphs from planar witnesses."""

__version__ = "0.1.0"
