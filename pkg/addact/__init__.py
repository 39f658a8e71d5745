"""addact - Artinian local algebras and additive actions on hypersurfaces"""
__version__ = "0.1.0"
