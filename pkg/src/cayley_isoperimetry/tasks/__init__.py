from typing import Dict, Type

from cayley_isoperimetry.model.task.base import Task
from cayley_isoperimetry.tasks.cogrowth import CogrowthTask
from cayley_isoperimetry.tasks.colour import ColourTask
from cayley_isoperimetry.tasks.exponents import ExponentsTask
from cayley_isoperimetry.tasks.forest import ForestTask
from cayley_isoperimetry.tasks.invariants import InvariantsTask
from cayley_isoperimetry.tasks.littlewood import LittlewoodTask
from cayley_isoperimetry.tasks.spectral import SpectralTask
from cayley_isoperimetry.tasks.verify import VerifyTask

TASK_REGISTRY: Dict[str, Type[Task]] = {
    "invariants": InvariantsTask,
    "spectral": SpectralTask,
    "littlewood": LittlewoodTask,
    "cogrowth": CogrowthTask,
    "forest": ForestTask,
    "colour": ColourTask,
    "exponents": ExponentsTask,
    "verify": VerifyTask,
}
