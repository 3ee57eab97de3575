"""ces-kit: completely entangled subspaces, orthonormal bases and NPT certificates"""

__version__ = "1.0.0"
