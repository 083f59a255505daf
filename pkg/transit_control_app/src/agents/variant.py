#!/usr/bin/env python3.12
"""
variant

Enum for control policy variants

Author: transit-control maintainers

Date: 17.10.2026
"""

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__


class AgentVariant(StrEnum):
    NC = "nc"
    FH = "fh"
    IAC = "iac"
    IQNC_N = "iqnc-n"
    IQNC_UCF = "iqnc-ucf"
    IQNC_CF = "iqnc-cf"
    IQNC_M = "iqnc-m"

    @classmethod
    def list(cls) -> list[str]:
        return [c.value for c in cls]

    @classmethod
    def str(cls) -> str:
        return ", ".join(cls.list())

    @property
    def learns(self) -> bool:
        return self not in (AgentVariant.NC, AgentVariant.FH)

    @property
    def distributional(self) -> bool:
        return self.value.startswith("iqnc")
