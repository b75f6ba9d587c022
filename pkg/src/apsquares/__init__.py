"""Exact arithmetic for five-term arithmetic progressions of squares over quadratic fields.

The package is organized bottom-up:

* :mod:`apsquares.rationals`    -- integer factoring, squarefree parts, rational roots
* :mod:`apsquares.quadfield`    -- arithmetic in Q(sqrt(D)) and biquadratic towers
* :mod:`apsquares.polynomials`  -- dense polynomials, resultants, factorization
* :mod:`apsquares.curves`       -- elliptic curves: group law, torsion, halving, quartic models
* :mod:`apsquares.progressions` -- five-term progressions of squares and their pipeline
* :mod:`apsquares.datastore`    -- embedded reference tables
* :mod:`apsquares.verifier`     -- machine-checked reproduction of the reference tables
* :mod:`apsquares.cli`          -- command-line interface
"""

from fractions import Fraction

__version__ = "0.1.0"

__all__ = ["Fraction", "__version__"]
