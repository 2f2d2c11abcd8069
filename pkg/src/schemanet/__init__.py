"""
schemanet - dynamic Bayesian network construction.

Compiles a background knowledge base of parameterized schemata, together with
the individuals known at run time, into a ground Bayesian network and answers
posterior queries by exact inference.
"""

__version__ = "0.1.0"
