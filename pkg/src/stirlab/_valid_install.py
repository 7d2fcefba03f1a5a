"""
Installation Validation (:mod:`~stirlab._valid_install`)
==========================================================================

Check whether the arithmetic back-ends have been installed correctly by
performing test computations.

It is not meant to replace the full `pytest` suite, and does not check the
correctness of the computed results beyond exact identities.

"""
from fractions import Fraction

from .classic_limits import stirling_ratio
from .convergence import SequenceSpec, build_report
from .exact_arith import PrecisionContext, constants
from .irwin_hall import quadrature_oracle_In_exact, truncated_moment_In


def _create_minimal_context():
    """Create a minimal precision context.

    Returns
    -------
    :class:`~stirlab.exact_arith.PrecisionContext`
        Minimal precision context.

    """
    return PrecisionContext(bits=64, guard=8)


def _define_minimal_sequence():
    """Define a minimal sequence.

    Returns
    -------
    :class:`~stirlab.convergence.SequenceSpec`
        Stirling ratio sequence.

    """
    return SequenceSpec(
        name='stirling', evaluator=stirling_ratio,
        target=lambda ctx: constants(ctx).sqrt2pi,
    )


def validate_installation():
    """Validate installation by computing a minimal test case.

    Returns
    -------
    True
        If the installation is valid.

    Raises
    ------
    RuntimeError
        If the exact and polynomial-algebra paths disagree.

    """
    ctx = _create_minimal_context()

    build_report(_define_minimal_sequence(), [1, 2, 4, 8], ctx)

    if truncated_moment_In(4) != quadrature_oracle_In_exact(4) \
            or truncated_moment_In(2) != Fraction(1, 3):
        raise RuntimeError("Exact truncated moments are inconsistent.")

    print("Installation of Stirlab has been validated.")

    return True
