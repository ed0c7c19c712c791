#!/usr/bin/env python3
"""
Errors - 异常层次

所有模块共享的异常类型。根类为 PairingError，CLI 根据类型决定退出码。

Author: Bobo (Sesquilinear Pairings)
"""


class PairingError(Exception):
    """Base class for every error raised by the pairing toolkit"""


# ---- field ----------------------------------------------------------------

class DivisionByZero(PairingError, ZeroDivisionError):
    """Inverse or division by the zero element"""


class FieldMismatch(PairingError, ValueError):
    """Operands belong to different prime fields"""


class FactorizationFailure(PairingError):
    """q - 1 could not be fully factored within the desk-scale bound"""


class NotInSubgroup(PairingError, ValueError):
    """Discrete logarithm has no solution in the cyclic subgroup"""


# ---- quadratic order ------------------------------------------------------

class OrderMismatch(PairingError, ValueError):
    """Operands belong to different quadratic orders"""


class ZeroModulus(PairingError, ValueError):
    """Residue ring requested for the zero element"""


class NotInvertible(PairingError, ValueError):
    """Element has no inverse modulo the given ideal"""


# ---- curve ----------------------------------------------------------------

class CurveMismatch(PairingError, ValueError):
    """Points belong to different curves"""


class OffCurve(PairingError, ValueError):
    """Coordinates do not satisfy the curve equation"""


class ScaleExceeded(PairingError):
    """Enumeration requested beyond desk scale"""


# ---- divisors / functions -------------------------------------------------

class NonzeroDegree(PairingError, ValueError):
    """Divisor of nonzero degree where degree zero is required"""


class ZeroEvaluation(PairingError):
    """A line or vertical vanished at an evaluation point"""


class SupportCollision(PairingError):
    """Function support meets the divisor it is evaluated at"""


class NonPrincipalDivisor(PairingError, ValueError):
    """Integer divisor whose points do not sum to O"""


# ---- values / pairings ----------------------------------------------------

class DlogFailure(PairingError):
    """Component outside the subgroup generated by h"""


class NotRootOfUnity(PairingError, ValueError):
    """Requested roots of unity are not available in F_q, or a value is not one"""


class NotInKernel(PairingError, ValueError):
    """Input is not killed by the required endomorphism"""


class RetriesExhausted(PairingError):
    """No auxiliary point gave disjoint supports within the retry bound"""


class HypothesisViolated(PairingError):
    """A coprimality or root-of-unity hypothesis of a scan does not hold"""


class ModulusMismatch(PairingError, TypeError):
    """Comparison of pairing values living in different quotients"""


class InvalidConfig(PairingError, ValueError):
    """Job configuration could not be loaded or validated"""
