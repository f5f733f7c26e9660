"""
affine-weyl - Involutions in classical affine Weyl groups.

This package classifies involutions up to conjugacy and analyses their
commuting involution graphs.
"""

__version__ = "1.0.0"
__license__ = "MIT"
