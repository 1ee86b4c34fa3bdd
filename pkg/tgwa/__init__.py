"""
TGWA Workbench Package

Exact computation with twisted generalized Weyl algebras: data, fixed rings
under diagonal automorphisms, normal forms and weight modules.
"""

__version__ = "1.0.0"
__author__ = "Prathyusha Shetty"
__description__ = "Exact symbolic workbench for twisted generalized Weyl algebras"
