"""reflexive-mldeg: degrees and ML degrees of log-linear models from lattice polytopes."""

__version__ = "0.1.0"
