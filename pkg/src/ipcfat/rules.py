from enum import Enum


class RuleId(str, Enum):
    # IPC
    BETA_IMP = "BetaImp"
    BETA_AND = "BetaAnd"
    BETA_OR = "BetaOr"
    ETA_IMP = "EtaImp"
    ETA_AND = "EtaAnd"
    ETA_OR = "EtaOr"
    PI_IMP = "PiImp"
    PI_AND = "PiAnd"
    PI_OR = "PiOr"
    PI_BOT = "PiBot"
    VARPI_IMP = "VarpiImp"
    VARPI_AND = "VarpiAnd"
    VARPI_OR = "VarpiOr"
    VARPI_BOT = "VarpiBot"
    # F_at
    BETA_IMP_F = "BetaImpF"
    BETA_AND_F = "BetaAndF"
    BETA_ALL = "BetaAll"
    ETA_IMP_F = "EtaImpF"
    ETA_AND_F = "EtaAndF"
    ETA_ALL = "EtaAll"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text):
        for r in cls:
            if text in (r.value, r.name, r.name.lower(), r.value.lower()):
                return r
        raise ValueError(f"unknown rule {text!r}")


R = RuleId

IPC_RULES = (
    R.BETA_IMP, R.BETA_AND, R.BETA_OR,
    R.ETA_IMP, R.ETA_AND, R.ETA_OR,
    R.PI_IMP, R.PI_AND, R.PI_OR, R.PI_BOT,
    R.VARPI_IMP, R.VARPI_AND, R.VARPI_OR, R.VARPI_BOT,
)
FAT_RULES = (R.BETA_IMP_F, R.BETA_AND_F, R.BETA_ALL, R.ETA_IMP_F, R.ETA_AND_F, R.ETA_ALL)

IPC_BETA = frozenset({R.BETA_IMP, R.BETA_AND, R.BETA_OR})
COMMUTING = frozenset({R.PI_IMP, R.PI_AND, R.PI_OR, R.PI_BOT,
                       R.VARPI_IMP, R.VARPI_AND, R.VARPI_OR, R.VARPI_BOT})
# simulation classes of the source rule
BETA_SIMULATED = frozenset({R.BETA_IMP, R.BETA_AND})
BETAETA_SIMULATED = frozenset({R.BETA_OR, R.ETA_IMP, R.ETA_AND, R.ETA_OR})

FAT_BETA = frozenset({R.BETA_IMP_F, R.BETA_AND_F, R.BETA_ALL})
FAT_ETA = frozenset({R.ETA_IMP_F, R.ETA_AND_F, R.ETA_ALL})
FAT_BETAETA = FAT_BETA | FAT_ETA
