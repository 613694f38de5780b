from enum import Enum


class Realization(str, Enum):
    """Block shape of the hermitian form of signature (n, n)"""

    DIAGONAL = "diagonal"
    ANTIDIAGONAL = "antidiagonal"


class Scenario(str, Enum):
    """Trajectories produced by the simulate command"""

    RICCATI = "riccati"
    KEPLER3D = "kepler3d"
    PERTURBED = "perturbed"


SCENARIO_VALUES = tuple(s.value for s in Scenario)


class OutputFormat(str, Enum):
    """Trajectory file formats"""

    CSV = "csv"
    JSON = "json"


FORMAT_VALUES = tuple(f.value for f in OutputFormat)


class ExitCode(int, Enum):
    """Process exit codes of the command-line surface"""

    OK = 0
    FAILURE = 1
    USAGE = 2
