"""Census and predictor tools for cubic fields and class-group 3-torsion."""

__version__ = "0.1.0"
