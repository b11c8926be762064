"""linecensus: exact arithmetic for enumerating, classifying and auditing
lines on smooth surfaces in P^3."""

__version__ = "0.1.0"
