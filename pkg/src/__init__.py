"""
Quaternionic / Octonionic Hyperbolic Geometry Toolkit - Source Code Package
"""
__version__ = "1.0.0"
