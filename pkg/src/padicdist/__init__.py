"""Exact p-adic distributions, Volkenborn integration and Gauss-sum interpolation."""

from .characters import DirichletCharacter, gauss_sum, inverse_gauss_sum
from .coherent_seq import NormCoherentSequence, act_by_measure, lambda_chi, lambda_from_sequence
from .cyclo_field import CycloElement, FieldContext, field, iwasawa_log
from .group_ring import GroupRingElement
from .padic_core import DEFAULT_PREC, PadicScalar, PrecisionError, Residual, log_one_unit, teichmuller
from .volkenborn import (
    MahlerFunction,
    TabulatedDistribution,
    check_distribution_relation,
    convolve,
    dirac,
    fourier_coefficient,
    fourier_eval_at_root,
    from_group_ring,
    haar,
    volkenborn_defect,
    volkenborn_integral,
)

__version__ = "0.1.0"
