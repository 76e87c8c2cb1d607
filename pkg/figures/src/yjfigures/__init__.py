"""Figure scripts for yjgambles CSV outputs.

Pure file-to-file rendering: every script reads documented CSV schemas,
never recomputes model quantities, and produces byte-identical images on
reruns (fixed style, fixed size, no timestamps).
"""

__version__ = "0.1.0"
