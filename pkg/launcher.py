#!/usr/bin/env python3
"""
Launcher para SopSim
Punto de entrada de la línea de comandos: python launcher.py simulate ...
"""

import sys
from src.main import main

if __name__ == "__main__":
    sys.exit(main())
