"""Fermionic Fock space, level-one affine sl2 action, and Fibonacci monomial bases."""

from .fock import ElementaryVector, FockVector, normalize, psi, psi_star
from .affine import apply_e, apply_f, apply_h, apply_lambda, bracket, verify_relation, vacuum_vector
from .basis import FibonacciMonomial, BidegreeCell, enumerate_fibonacci, independence_check, global_basis_check
from .qseries import BivariateSeries, QPolynomial, ch_L01, ch_W, ch_F, gaussian_binomial, pochhammer_inv

__version__ = "0.1.0"
