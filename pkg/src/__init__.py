"""
SopSim - Simulación fuerte de circuitos cuánticos por sumas de potencias
"""

__version__ = "0.1.0"
__author__ = "Usuario"
