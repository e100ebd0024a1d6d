"""semprobe: semantic perturbation test bench for black-box sentence encoders.

Evaluates any sentence encoder reachable over a small JSON wire protocol
against four unsupervised criteria (paraphrase separation, synonym
replacement, antonym replacement, sentence jumbling) and a 10-fold
logistic-regression probing benchmark, reproducibly from a single seed.
"""

__version__ = "0.1.0"
