"""
Extensions of finite abelian groups: class invariants, endomorphism rings and direct-sum decisions.
"""

__version__ = "0.3.0"
