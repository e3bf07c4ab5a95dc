"""lmkit: exact computations with braid-group representation functors.

The package implements, over the ring of rational Laurent polynomials in
t and q:

* braid words, the braid groupoid's monoidal structure, and Quillen's
  bracket category built on it (`braidcat`);
* free groups, group rings, right Fox calculus, and the classified braid
  actions on free groups (`freegroup`);
* computable functors to modules: Burau (both flavors), the Tong-Yang-Ma
  family, Lawrence-Krammer, atomic and truncation examples, with exact
  functor-criterion checking (`repfun`);
* the Long-Moody construction with coherence/reliability certification and
  its splitting morphisms (`longmoody`);
* the polynomiality calculus (translation, evanescence, difference),
  range-relative strong-degree estimation, and verification of the
  splitting and degree-growth theorems (`polyfun`);
* a deterministic CLI over all of it (`cli`).
"""

from .laurent import EvaluationPoint, LaurentPoly, PolyMatrix, parse_poly
from .freegroup import FreeWord, FreeGroupMap, fox_derivatives
from .braidcat import BracketMorphism, BraidWord, braid_equal, braiding
from .repfun import BraidFunctor, NaturalMap, builtin, check_functor, check_natural
from .longmoody import LongMoodyConfig, long_moody, standard_config
from .polyfun import estimate_strong_degree

__all__ = [
    "EvaluationPoint",
    "LaurentPoly",
    "PolyMatrix",
    "parse_poly",
    "FreeWord",
    "FreeGroupMap",
    "fox_derivatives",
    "BracketMorphism",
    "BraidWord",
    "braid_equal",
    "braiding",
    "BraidFunctor",
    "NaturalMap",
    "builtin",
    "check_functor",
    "check_natural",
    "LongMoodyConfig",
    "long_moody",
    "standard_config",
    "estimate_strong_degree",
]
