from .main import PancakeLab, VerificationReport
from .graph_core import PancakeGraph, build_pancake
from .permutations import Permutation, GeneratorSet
from .exceptions import PancakeLabError, DomainError, ScaleRefusal, TheoremViolation
from .version import __version__
