#!/usr/bin/env python3
# lunes.py
# Punto de entrada de la línea de comandos

"""
Uso:
    python lunes.py gen --model er --nodes 200 --edges 400 --count 10 --out corpora/s1
    python lunes.py sim --corpus corpora/s1 --protocol fixed --prob 0.8
    python lunes.py analyze --trace runs/s1/*.trace --report coverage
    python lunes.py bench --scenarios table1
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from src.cli import main

if __name__ == '__main__':
    sys.exit(main())
