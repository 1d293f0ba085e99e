"""Census of finite semirings up to isomorphism and anti-isomorphism."""

__version__ = "0.1.0"
